//! Acceptance suite: one exact check per criterion, one PASS/FAIL line each.
//! Run with `cargo test -p webcalc --test acceptance` (optimized test profile).

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use webcalc::combinatorics::{enum_colored, enum_m, Object};
use webcalc::eval::Evaluator;
use webcalc::exact::{factorial, gbinom, q, Q};
use webcalc::howe::double_centralizer_check;
use webcalc::reduce::{verify_suite, Reducer};
use webcalc::schur::{check_web_schur_iso, schur_dim};
use webcalc::superalgebra::{builtin, AlgebraElement, GoodPair, BUILTIN_SUITE};
use webcalc::udot::verify_udot;
use webcalc::webcat::{compose, contract, eta, explode, Flavor, WebMorphism};
use webcalc::wreath::{schur_weyl_check, wreath_from_web};

struct Outcome {
    pass: bool,
    detail: String,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { pass: true, detail: String::new(), notes: Vec::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.pass = false;
            self.notes.push(format!("FAILED: {}", what.into()));
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    fn within(&mut self, start: Instant, limit: Duration) {
        let t = start.elapsed();
        self.check(t <= limit, format!("took {t:.1?}, limit {limit:?}"));
    }
}

fn pair(name: &str) -> GoodPair {
    builtin(name).expect("builtin")
}

fn thickness_bound(name: &str) -> i64 {
    if name == "trivial" {
        3
    } else {
        2
    }
}

/// Relations that have no instances on `p` for structural reasons: those
/// stated for two distinct colors, and odd annihilation without odd elements.
fn vacuous(p: &GoodPair, relation: &str) -> bool {
    match relation {
        "coxeter" | "split-intertwining" | "merge-intertwining" => p.ncolors() < 2,
        "odd-knothole" => p.graded_dim().1 == 0,
        _ => false,
    }
}

fn relation_grid(set: &str) -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let (mut total, mut equal) = (0, 0);
    let mut exercised: BTreeMap<String, usize> = BTreeMap::new();
    for name in BUILTIN_SUITE {
        let p = pair(name);
        let rep = verify_suite(&p, thickness_bound(name), 3, set).expect("suite runs");
        total += rep.instances;
        equal += rep.equal;
        for t in &rep.relations {
            *exercised.entry(t.relation.clone()).or_default() += t.instances;
            o.check(t.instances > 0 || vacuous(&p, &t.relation), format!("{name}: {} has no instances", t.relation));
            if let Some(w) = &t.first_witness {
                o.check(false, format!("{name}: {} {} at ({}, {}): {} vs {}", w.relation, w.params, w.row, w.col, w.lhs, w.rhs));
            }
        }
        o.note(format!("{name}: {}/{} across {} relations", rep.equal, rep.instances, rep.relations.len()));
    }
    for (rel, k) in &exercised {
        o.check(*k > 0, format!("{rel} is never exercised"));
    }
    o.check(total == equal, "not all instances equal");
    o.within(start, Duration::from_secs(300));
    o.detail = format!("{equal}/{total} instances equal in {:.1?}", start.elapsed());
    o
}

fn objects_up_to(p: &GoodPair, d: usize) -> Vec<Object> {
    (1..=d).flat_map(|k| enum_colored(k, k, p.ncolors())).collect()
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut spaces = 0;
    for name in ["trivial", "clifford1"] {
        let p = pair(name);
        let red = Reducer::new(&p);
        let objs = objects_up_to(&p, 3);
        for src in &objs {
            for dst in objs.iter().filter(|t| t.total() == src.total()) {
                spaces += 1;
                let (rank, size) = red.basis_rank(src, dst).expect("rank");
                o.check(rank == size, format!("{name} {src} -> {dst}: rank {rank} vs |M| {size}"));
                for (i, m) in enum_m(&p, src, dst).iter().enumerate() {
                    let c = red.reduce(&eta(&p, m, Flavor::A).expect("eta")).expect("reduce");
                    let unit = c.coords.entries.len() == 1 && c.coords.entries[0].0 == i && c.coords.entries[0].1 == q(1);
                    o.check(unit, format!("{name} {src} -> {dst}: reduce(eta) #{i} is not a unit vector"));
                }
            }
        }
    }
    o.within(start, Duration::from_secs(120));
    o.detail = format!("{spaces} hom spaces, rank = |M| and unit coordinates");
    o
}

fn scaled_identity(ev: &Evaluator, f: &WebMorphism, c: &Q) -> bool {
    let m = ev.eval(f);
    let id = ev.eval(&WebMorphism::id(&f.dom));
    m == id.scale(c)
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let mut checks = 0;
    for name in BUILTIN_SUITE {
        let p = pair(name);
        let ev = Evaluator::new(&p, 3);
        let red = Reducer::new(&p);
        for c in 0..p.ncolors() {
            for x in 1..=3 {
                for y in 1..=(4 - x) {
                    let f = compose(&WebMorphism::merge(c, x, y), &WebMorphism::split(c, x, y)).expect("compose");
                    let expect = gbinom(x + y, y as u64);
                    o.check(scaled_identity(&ev, &f, &expect), format!("{name}: merge∘split({x},{y}) on color {c}"));
                    let coords = red.reduce(&f).expect("reduce").coords.entries;
                    let id = red.reduce(&WebMorphism::id(&f.dom)).expect("reduce").coords.entries;
                    let diag = coords.len() == 1 && id.len() == 1 && coords[0].0 == id[0].0 && coords[0].1 == expect * &id[0].1;
                    o.check(diag, format!("{name}: reduced merge∘split({x},{y}) is not a multiple of the identity"));
                    checks += 2;
                }
            }
        }
        let objs = objects_up_to(&p, if name == "trivial" || name == "clifford1" { 3 } else { 2 });
        for src in &objs {
            for dst in objs.iter().filter(|t| t.total() == src.total()) {
                let scalar: Q = src.parts.iter().chain(&dst.parts).map(|&(_, x)| factorial(x as u64)).product();
                let ev = Evaluator::new(&p, src.total() as usize);
                for m in enum_m(&p, src, dst) {
                    let f = eta(&p, &m, Flavor::A).expect("eta");
                    let g = contract(&explode(&f).expect("explode"), src, dst).expect("contract");
                    let ok = ev.eval(&g) == ev.eval(&f).scale(&scalar);
                    o.check(ok, format!("{name}: contract∘explode on {}", m.display(&p)));
                    checks += 1;
                }
            }
        }
    }
    o.detail = format!("{checks} scalar identities exact");
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let mut compared = 0;
    for name in BUILTIN_SUITE {
        let p = pair(name);
        for (n, d) in [(1, 1), (1, 2), (2, 2)] {
            let rep = check_web_schur_iso(&p, n, d, 64).expect("iso check");
            compared += rep.compared;
            o.check(rep.all_equal, format!("{name} (n,d)=({n},{d}): {}/{} images, {}/{} samples", rep.equal, rep.compared, rep.structure_equal, rep.structure_samples));
            if let Some(w) = &rep.first_witness {
                o.note(format!("{name} ({n},{d}) witness: {} at ({}, {})", w.mu, w.row, w.col));
            }
            o.note(format!("{name} ({n},{d}): dim {}, {} images, {} structure samples", rep.dim, rep.compared, rep.structure_samples));
        }
    }
    let dim = schur_dim(&pair("trivial"), 2, 2);
    o.check(dim == 10, format!("dim T(2,2) for trivial is {dim}"));
    o.within(start, Duration::from_secs(300));
    o.detail = format!("{compared} basis images equal, dim T(2,2) = {dim}");
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let mut parts = Vec::new();
    for (name, dmax) in [("trivial", 3), ("clifford1", 2), ("zigzag", 2)] {
        let p = pair(name);
        for d in 1..=dmax {
            let rep = wreath_from_web(&p, d, 64).expect("wreath");
            o.check(rep.all_equal, format!("{name} d={d}: dim {} vs {}, rank {}, {}/{} samples", rep.wreath_dim, rep.web_dim, rep.image_rank, rep.samples_equal, rep.samples));
            if name == "trivial" {
                let fact: usize = (1..=d).product();
                o.check(rep.wreath_dim == fact, format!("trivial d={d}: dim {} vs {fact}", rep.wreath_dim));
            }
            if name == "clifford1" && d == 2 {
                o.check(rep.wreath_dim == 8, format!("clifford1 d=2: dim {}", rep.wreath_dim));
            }
            parts.push(format!("{name}/{d}:{}", rep.wreath_dim));
        }
    }
    o.detail = format!("dims {}", parts.join(" "));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let (mut total, mut equal) = (0, 0);
    for name in BUILTIN_SUITE {
        let p = pair(name);
        let rep = verify_udot(&p, 2, 2).expect("udot sweep");
        total += rep.instances;
        equal += rep.equal;
        for t in &rep.relations {
            if let Some(w) = &t.first_witness {
                o.check(false, format!("{name}: {} {} at ({}, {})", w.relation, w.params, w.row, w.col));
            }
        }
        o.note(format!("{name}: {}/{}", rep.equal, rep.instances));
    }
    o.check(total == equal && total > 0, "not all instances equal");
    o.detail = format!("{equal}/{total} instances equal in {:.1?}", start.elapsed());
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let mut parts = Vec::new();
    for name in ["trivial", "clifford1", "cyclic(3)", "zigzag"] {
        let p = pair(name);
        for (n, d) in [(1, 2), (2, 2)] {
            let r = schur_weyl_check(&p, n, d);
            let line = format!("{name} ({n},{d}): image {} vs commutant {}", r.image_rank, r.commutant_dim);
            if name == "zigzag" {
                o.note(format!("{line} (informational)"));
                continue;
            }
            o.check(r.image_in_commutant && r.equal, line.clone());
            parts.push(format!("{name}/{n},{d}:{}", r.image_rank));
        }
    }
    o.detail = format!("rank = commutant for {}", parts.join(" "));
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    for name in ["trivial", "clifford1"] {
        let p = pair(name);
        for (m, n, d) in [(1, 1, 2), (1, 2, 2), (2, 2, 2)] {
            let r = double_centralizer_check(&p, m, n, d);
            o.check(r.actions_commute, format!("{name} ({m},{n},{d}): actions do not commute"));
            o.check(r.right_centralizes_left, format!("{name} ({m},{n},{d}): C(R) {} vs L {}", r.dim_commutant_right, r.dim_left));
            o.check(r.left_centralizes_right, format!("{name} ({m},{n},{d}): C(L) {} vs R {}", r.dim_commutant_left, r.dim_right));
            o.note(format!(
                "{name} ({m},{n},{d}): dim {}, L {}, R {}, |multipartitions| {:?}, center blocks {}",
                r.space_dim, r.dim_left, r.dim_right, r.multipartitions, r.center_blocks
            ));
        }
    }
    o.within(start, Duration::from_secs(300));
    o.detail = format!("double centralizer holds on 6 cases in {:.1?}", start.elapsed());
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    let mut p = pair("clifford1");
    let one = p.basis_index("1").expect("unit");
    let c = p.basis_index("c").expect("odd generator");
    p.set_product(one, c, AlgebraElement::basis(c).scale(&q(2)));
    let rep = verify_suite(&p, 2, 3, "defining").expect("suite runs");
    o.check(!rep.all_equal, "corrupted table passed every relation");
    match rep.first_witness() {
        Some(w) => {
            o.detail = format!("{}/{} equal; witness {} {} at ({}, {}): {} vs {}", rep.equal, rep.instances, w.relation, w.params, w.row, w.col, w.lhs, w.rhs);
        }
        None => o.check(false, "no witness reported"),
    }
    o
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("defining relations", || relation_grid("defining")),
        ("implied relations", || relation_grid("implied")),
        ("basis theorem", criterion_3),
        ("scalar identities", criterion_4),
        ("web-schur isomorphism", criterion_5),
        ("wreath isomorphism", criterion_6),
        ("enveloping relations", criterion_7),
        ("schur-weyl surjectivity", criterion_8),
        ("howe double centralizer", criterion_9),
        ("negative control", criterion_10),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let k = i + 1;
        if !filter.is_empty() && !filter.contains(&k) {
            continue;
        }
        let start = Instant::now();
        let o = f();
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k:>2} {tag} {name}: {} [{:.1?}]", o.detail, start.elapsed());
        for n in &o.notes {
            println!("    {n}");
        }
        if !o.pass {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
