//! The relation registry: both sides of every defining and implied relation
//! of the web category, instantiated over a grid of parameters.

use num_traits::One;

use crate::combinatorics::Object;
use crate::exact::{gbinom, q, q_frac, Parity, Q};
use crate::superalgebra::{AlgebraElement, GoodPair};
use crate::webcat::{compose, compose_all, sum, tensor, Stack, WebError, WebMorphism};

/// One instance of a relation: lhs = rhs is expected to hold.
#[derive(Clone, Debug)]
pub struct RelationInstance {
    pub relation: &'static str,
    pub params: String,
    pub lhs: WebMorphism,
    pub rhs: WebMorphism,
}

pub const DEFINING: &[&str] = &[
    "web-associativity",
    "merge-split",
    "knothole",
    "coxeter",
    "split-intertwining",
    "merge-intertwining",
    "coupon-identity",
    "coupon-scalar",
    "coupon-composition",
    "coupon-sum",
    "odd-knothole",
    "coupon-split-merge",
    "coupon-crossing",
    "rung-swap",
    "monotone-crossing",
];

pub const IMPLIED: &[&str] = &[
    "reverse-rung-swap",
    "rung-coxeter",
    "crossing-absorption",
    "double-crossing",
    "monochrome-intertwining",
    "monochrome-braid",
    "arbitrary-colors",
];

pub fn all_ids() -> Vec<&'static str> {
    DEFINING.iter().chain(IMPLIED).copied().collect()
}

/// Resolves `defining`, `implied`, `all` or a comma separated list of ids.
pub fn resolve_set(spec: &str) -> Result<Vec<&'static str>, String> {
    match spec.trim() {
        "defining" => Ok(DEFINING.to_vec()),
        "implied" => Ok(IMPLIED.to_vec()),
        "all" => Ok(all_ids()),
        list => list
            .split(',')
            .map(|s| {
                let s = s.trim();
                all_ids().into_iter().find(|id| *id == s).ok_or_else(|| format!("unknown relation `{s}`"))
            })
            .collect(),
    }
}

/// Builds all instances of relation `id` with thicknesses in 1..=bound.
pub fn instances(pair: &GoodPair, id: &str, bound: i64) -> Result<Vec<RelationInstance>, WebError> {
    let mut g = Builder { pair, bound, out: Vec::new(), relation: "" };
    let Some(rel) = all_ids().into_iter().find(|r| *r == id) else {
        return Ok(Vec::new());
    };
    g.relation = rel;
    match rel {
        "web-associativity" => g.associativity(),
        "merge-split" => g.merge_split(),
        "knothole" => g.knothole(),
        "coxeter" => g.coxeter(|cs| distinct(cs)),
        "split-intertwining" => g.split_intertwining(|cs| distinct(cs)),
        "merge-intertwining" => g.merge_intertwining(|cs| distinct(cs)),
        "coupon-identity" => g.coupon_identity()?,
        "coupon-scalar" => g.coupon_scalar()?,
        "coupon-composition" => g.coupon_composition()?,
        "coupon-sum" => g.coupon_sum()?,
        "odd-knothole" => g.odd_knothole()?,
        "coupon-split-merge" => g.coupon_split_merge()?,
        "coupon-crossing" => g.coupon_crossing()?,
        "rung-swap" => g.rung_swap(),
        "monotone-crossing" => g.monotone_crossing(),
        "reverse-rung-swap" => g.reverse_rung_swap(),
        "rung-coxeter" => g.rung_coxeter(),
        "crossing-absorption" => g.crossing_absorption(),
        "double-crossing" => g.double_crossing(|cs| cs[0] == cs[1]),
        "monochrome-intertwining" => {
            g.split_intertwining(|cs| cs[0] == cs[1]);
            g.merge_intertwining(|cs| cs[0] == cs[1]);
        }
        "monochrome-braid" => g.braid(|cs| cs[0] == cs[1] && cs[1] == cs[2]),
        "arbitrary-colors" => {
            g.double_crossing(|_| true);
            g.braid(|_| true);
            g.split_intertwining(|_| true);
            g.merge_intertwining(|_| true);
        }
        _ => unreachable!(),
    }
    Ok(g.out)
}

fn distinct(cs: &[usize]) -> bool {
    (0..cs.len()).all(|a| (a + 1..cs.len()).all(|b| cs[a] != cs[b]))
}

/// Moves m from strand k to strand k+1: split k, then merge into k+1.
pub fn rung_right(st: &mut Stack, k: usize, m: i64) {
    let a = st.strands[k].1;
    st.split(k, a - m, m);
    st.merge(k + 1);
}

/// Moves m from strand k+1 to strand k.
pub fn rung_left(st: &mut Stack, k: usize, m: i64) {
    let b = st.strands[k + 1].1;
    st.split(k + 1, m, b - m);
    st.merge(k);
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|t| (0..n).map(move |c| [t.clone(), vec![c]].concat())).collect();
    }
    out
}

struct Builder<'a> {
    pair: &'a GoodPair,
    bound: i64,
    out: Vec<RelationInstance>,
    relation: &'static str,
}

impl Builder<'_> {
    fn range(&self) -> std::ops::RangeInclusive<i64> {
        1..=self.bound
    }

    fn grid(&self, k: usize) -> Vec<Vec<i64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out.into_iter().flat_map(|t| self.range().map(move |x| [t.clone(), vec![x]].concat())).collect();
        }
        out
    }

    fn push(&mut self, params: String, lhs: WebMorphism, rhs: WebMorphism) {
        if lhs.dom.is_degenerate() || lhs.cod.is_degenerate() {
            return;
        }
        self.out.push(RelationInstance { relation: self.relation, params, lhs, rhs });
    }

    fn color(&self, c: usize) -> &str {
        &self.pair.colors[c]
    }

    fn colors(&self, cs: &[usize]) -> String {
        cs.iter().map(|&c| self.color(c)).collect::<Vec<_>>().join(",")
    }

    fn elem(&self, b: usize) -> String {
        self.pair.basis[b].id.clone()
    }

    fn associativity(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(3) {
                let (x, y, z) = (v[0], v[1], v[2]);
                let mut l = Stack::new(vec![(c, x + y + z)]);
                l.split(0, x + y, z).split(0, x, y);
                let mut r = Stack::new(vec![(c, x + y + z)]);
                r.split(0, x, y + z).split(1, y, z);
                let p = format!("form=split color={} x={x} y={y} z={z}", self.color(c));
                self.push(p, l.finish(), r.finish());
                let mut l = Stack::mono(c, &[x, y, z]);
                l.merge(0).merge(0);
                let mut r = Stack::mono(c, &[x, y, z]);
                r.merge(1).merge(0);
                let p = format!("form=merge color={} x={x} y={y} z={z}", self.color(c));
                self.push(p, l.finish(), r.finish());
            }
        }
    }

    fn merge_split(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(3) {
                let (x, y, z) = (v[0], v[1], v[2]);
                let w = x + y - z;
                if w < 1 || w > self.bound {
                    continue;
                }
                let mut l = Stack::mono(c, &[x, y]);
                l.merge(0).split(0, z, w);
                let lhs = l.finish();
                let terms: Vec<WebMorphism> = (0..=x.min(w))
                    .map(|t| {
                        let mut s = Stack::mono(c, &[x, y]);
                        s.split(1, z - x + t, w - t).split(0, x - t, t).cross(1).merge(2).merge(0);
                        s.finish()
                    })
                    .collect();
                let rhs = sum(&lhs.dom, &lhs.cod, &terms).expect("terms share type");
                self.push(format!("color={} x={x} y={y} z={z} w={w}", self.color(c)), lhs, rhs);
            }
        }
    }

    fn knothole(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(2) {
                let (x, y) = (v[0], v[1]);
                let mut l = Stack::new(vec![(c, x + y)]);
                l.split(0, x, y).merge(0);
                let rhs = WebMorphism::id(&Object::mono(c, &[x + y])).scale(&gbinom(x + y, x as u64));
                self.push(format!("color={} x={x} y={y}", self.color(c)), l.finish(), rhs);
            }
        }
    }

    fn double_crossing(&mut self, keep: impl Fn(&[usize]) -> bool) {
        for cs in tuples(self.pair.ncolors(), 2) {
            if !keep(&cs) {
                continue;
            }
            for v in self.grid(2) {
                let mut l = Stack::new(vec![(cs[0], v[0]), (cs[1], v[1])]);
                l.cross(0).cross(0);
                let rhs = WebMorphism::id(&Object::new(l.strands.clone()));
                let p = format!("form=double colors={} x={} y={}", self.colors(&cs), v[0], v[1]);
                self.push(p, l.finish(), rhs);
            }
        }
    }

    fn braid(&mut self, keep: impl Fn(&[usize]) -> bool) {
        for cs in tuples(self.pair.ncolors(), 3) {
            if !keep(&cs) {
                continue;
            }
            for v in self.grid(3) {
                let strands = vec![(cs[0], v[0]), (cs[1], v[1]), (cs[2], v[2])];
                let mut l = Stack::new(strands.clone());
                l.cross(0).cross(1).cross(0);
                let mut r = Stack::new(strands);
                r.cross(1).cross(0).cross(1);
                let p = format!("form=braid colors={} x={} y={} z={}", self.colors(&cs), v[0], v[1], v[2]);
                self.push(p, l.finish(), r.finish());
            }
        }
    }

    fn coxeter(&mut self, keep: impl Fn(&[usize]) -> bool + Copy) {
        self.double_crossing(keep);
        self.braid(keep);
    }

    /// cs = [i, j]: the i strand splits, the j strand crosses it.
    fn split_intertwining(&mut self, keep: impl Fn(&[usize]) -> bool) {
        for cs in tuples(self.pair.ncolors(), 2) {
            if !keep(&cs) {
                continue;
            }
            let (i, j) = (cs[0], cs[1]);
            for v in self.grid(3) {
                let (x, y, z) = (v[0], v[1], v[2]);
                let (ci, cj) = (self.color(i).to_string(), self.color(j).to_string());
                let p = |form: &str| format!("form={form} i={ci} j={cj} x={x} y={y} z={z}");
                let mut l = Stack::new(vec![(i, x + y), (j, z)]);
                l.split(0, x, y).cross(1).cross(0);
                let mut r = Stack::new(vec![(i, x + y), (j, z)]);
                r.cross(0).split(1, x, y);
                let p1 = p("split-right");
                self.push(p1, l.finish(), r.finish());
                let mut l = Stack::new(vec![(j, z), (i, x + y)]);
                l.split(1, x, y).cross(0).cross(1);
                let mut r = Stack::new(vec![(j, z), (i, x + y)]);
                r.cross(0).split(0, x, y);
                let p2 = p("split-left");
                self.push(p2, l.finish(), r.finish());
            }
        }
    }

    fn merge_intertwining(&mut self, keep: impl Fn(&[usize]) -> bool) {
        for cs in tuples(self.pair.ncolors(), 2) {
            if !keep(&cs) {
                continue;
            }
            let (i, j) = (cs[0], cs[1]);
            for v in self.grid(3) {
                let (x, y, z) = (v[0], v[1], v[2]);
                let (ci, cj) = (self.color(i).to_string(), self.color(j).to_string());
                let p = |form: &str| format!("form={form} i={ci} j={cj} x={x} y={y} z={z}");
                let mut l = Stack::new(vec![(j, z), (i, x), (i, y)]);
                l.cross(0).cross(1).merge(0);
                let mut r = Stack::new(vec![(j, z), (i, x), (i, y)]);
                r.merge(1).cross(0);
                let p1 = p("merge-right");
                self.push(p1, l.finish(), r.finish());
                let mut l = Stack::new(vec![(i, x), (i, y), (j, z)]);
                l.cross(1).cross(0).merge(1);
                let mut r = Stack::new(vec![(i, x), (i, y), (j, z)]);
                r.merge(0).cross(0);
                let p2 = p("merge-left");
                self.push(p2, l.finish(), r.finish());
            }
        }
    }

    fn coupon_identity(&mut self) -> Result<(), WebError> {
        for c in 0..self.pair.ncolors() {
            let e = self.pair.units[c].clone();
            for x in self.range() {
                if !self.pair.allowed_on(&e, x) {
                    continue;
                }
                let lhs = WebMorphism::coupon_box(self.pair, &e, c, c, x)?;
                let rhs = WebMorphism::id(&Object::mono(c, &[x]));
                self.push(format!("color={} x={x}", self.color(c)), lhs, rhs);
            }
        }
        Ok(())
    }

    fn coupon_scalar(&mut self) -> Result<(), WebError> {
        for b in 0..self.pair.dim() {
            let (i, j) = (self.pair.basis[b].right, self.pair.basis[b].left);
            let f = AlgebraElement::basis(b);
            for x in self.range() {
                if !self.pair.allowed_on(&f, x) {
                    continue;
                }
                for alpha in [q(3), q_frac(-1, 2)] {
                    let lhs = WebMorphism::coupon(self.pair, &f.scale(&alpha), i, j, x)?;
                    let power = (0..x).fold(Q::one(), |acc, _| acc * &alpha);
                    let rhs = WebMorphism::coupon(self.pair, &f, i, j, x)?.scale(&power);
                    self.push(format!("f={} x={x} alpha={alpha}", self.elem(b)), lhs, rhs);
                }
            }
        }
        Ok(())
    }

    fn coupon_composition(&mut self) -> Result<(), WebError> {
        let pair = self.pair;
        for fb in 0..pair.dim() {
            for hb in 0..pair.dim() {
                if pair.basis[hb].right != pair.basis[fb].left {
                    continue;
                }
                let (i, j, k) = (pair.basis[fb].right, pair.basis[fb].left, pair.basis[hb].left);
                let (f, h) = (AlgebraElement::basis(fb), AlgebraElement::basis(hb));
                let hf = pair.multiply(&h, &f);
                for x in self.range() {
                    if !pair.allowed_on(&f, x) || !pair.allowed_on(&h, x) {
                        continue;
                    }
                    let lhs = compose(&WebMorphism::coupon(pair, &h, j, k, x)?, &WebMorphism::coupon(pair, &f, i, j, x)?)?;
                    let rhs = WebMorphism::coupon(pair, &hf, i, k, x)?;
                    self.push(format!("f={} h={} x={x}", self.elem(fb), self.elem(hb)), lhs, rhs);
                }
            }
        }
        Ok(())
    }

    fn coupon_sum(&mut self) -> Result<(), WebError> {
        let pair = self.pair;
        for fb in 0..pair.dim() {
            for gb in fb..pair.dim() {
                let (bf, bg) = (&pair.basis[fb], &pair.basis[gb]);
                if (bf.left, bf.right, bf.parity) != (bg.left, bg.right, bg.parity) {
                    continue;
                }
                let (i, j) = (bf.right, bf.left);
                let (f, g) = (AlgebraElement::basis(fb), AlgebraElement::basis(gb));
                let fg = f.add(&g);
                for x in self.range() {
                    if !pair.allowed_on(&f, x) || !pair.allowed_on(&g, x) {
                        continue;
                    }
                    let lhs = WebMorphism::coupon(pair, &fg, i, j, x)?;
                    let mut terms = Vec::new();
                    for t in 0..=x {
                        let pieces = tensor(&WebMorphism::coupon(pair, &f, i, j, t)?, &WebMorphism::coupon(pair, &g, i, j, x - t)?);
                        terms.push(compose_all(&[WebMorphism::split(i, t, x - t), pieces, WebMorphism::merge(j, t, x - t)])?);
                    }
                    let rhs = sum(&lhs.dom, &lhs.cod, &terms)?;
                    self.push(format!("f={} g={} x={x}", self.elem(fb), self.elem(gb)), lhs, rhs);
                }
            }
        }
        Ok(())
    }

    fn odd_knothole(&mut self) -> Result<(), WebError> {
        let pair = self.pair;
        for b in 0..pair.dim() {
            if pair.parity(b) != Parity::Odd {
                continue;
            }
            let (i, j) = (pair.basis[b].right, pair.basis[b].left);
            let f = WebMorphism::coupon(pair, &AlgebraElement::basis(b), i, j, 1)?;
            let mut s = Stack::new(vec![(i, 2)]);
            s.split(0, 1, 1).morphism(0, 2, &tensor(&f, &f)).merge(0);
            let lhs = s.finish();
            let rhs = WebMorphism::zero(&lhs.dom, &lhs.cod);
            self.push(format!("f={}", self.elem(b)), lhs, rhs);
        }
        Ok(())
    }

    fn coupon_split_merge(&mut self) -> Result<(), WebError> {
        let pair = self.pair;
        for b in 0..pair.dim() {
            let (i, j) = (pair.basis[b].right, pair.basis[b].left);
            let f = AlgebraElement::basis(b);
            for v in self.grid(2) {
                let (x, y) = (v[0], v[1]);
                if !pair.allowed_on(&f, x + y) {
                    continue;
                }
                let whole = WebMorphism::coupon(pair, &f, i, j, x + y)?;
                let pieces = tensor(&WebMorphism::coupon(pair, &f, i, j, x)?, &WebMorphism::coupon(pair, &f, i, j, y)?);
                let lhs = compose(&WebMorphism::split(j, x, y), &whole)?;
                let rhs = compose(&pieces, &WebMorphism::split(i, x, y))?;
                self.push(format!("form=split f={} x={x} y={y}", self.elem(b)), lhs, rhs);
                let lhs = compose(&whole, &WebMorphism::merge(i, x, y))?;
                let rhs = compose(&WebMorphism::merge(j, x, y), &pieces)?;
                self.push(format!("form=merge f={} x={x} y={y}", self.elem(b)), lhs, rhs);
            }
        }
        Ok(())
    }

    fn coupon_crossing(&mut self) -> Result<(), WebError> {
        let pair = self.pair;
        for b in 0..pair.dim() {
            let (i, j) = (pair.basis[b].right, pair.basis[b].left);
            let f = AlgebraElement::basis(b);
            for k in 0..pair.ncolors() {
                for v in self.grid(2) {
                    let (x, y) = (v[0], v[1]);
                    if !pair.allowed_on(&f, x) {
                        continue;
                    }
                    let (fe, ck) = (self.elem(b), self.color(k).to_string());
                    let p = |form: &str| format!("form={form} f={fe} k={ck} x={x} y={y}");
                    let mut l = Stack::new(vec![(i, x), (k, y)]);
                    l.coupon(pair, 0, &f, j)?.cross(0);
                    let mut r = Stack::new(vec![(i, x), (k, y)]);
                    r.cross(0).coupon(pair, 1, &f, j)?;
                    let p1 = p("left");
                    self.push(p1, l.finish(), r.finish());
                    let mut l = Stack::new(vec![(k, y), (i, x)]);
                    l.coupon(pair, 1, &f, j)?.cross(0);
                    let mut r = Stack::new(vec![(k, y), (i, x)]);
                    r.cross(0).coupon(pair, 0, &f, j)?;
                    let p2 = p("right");
                    self.push(p2, l.finish(), r.finish());
                }
            }
        }
        Ok(())
    }

    /// Σ_t coef(t) · steps(t) on the monochrome strands `xs`.
    fn rung_sum(c: usize, xs: &[i64], ts: std::ops::RangeInclusive<i64>, coef: impl Fn(i64) -> Q, steps: impl Fn(&mut Stack, i64)) -> Vec<WebMorphism> {
        ts.map(|t| {
            let mut s = Stack::mono(c, xs);
            steps(&mut s, t);
            s.finish().scale(&coef(t))
        })
        .filter(|m| !m.is_zero())
        .collect()
    }

    fn push_sum(&mut self, params: String, lhs: WebMorphism, terms: Vec<WebMorphism>) {
        if lhs.dom.is_degenerate() || lhs.cod.is_degenerate() {
            return;
        }
        let rhs = sum(&lhs.dom, &lhs.cod, &terms).expect("terms share type");
        self.push(params, lhs, rhs);
    }

    fn rung_swap(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(4) {
                let (x, y, r, s) = (v[0], v[1], v[2], v[3]);
                let mut l = Stack::mono(c, &[x, y]);
                rung_right(&mut l, 0, s);
                rung_left(&mut l, 0, r);
                let terms = Self::rung_sum(c, &[x, y], 0..=r.min(s), |t| gbinom(x - y + r - s, t as u64), |st, t| {
                    rung_left(st, 0, r - t);
                    rung_right(st, 0, s - t);
                });
                self.push_sum(format!("color={} x={x} y={y} r={r} s={s}", self.color(c)), l.finish(), terms);
            }
        }
    }

    fn reverse_rung_swap(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(4) {
                let (a, b, r, s) = (v[0], v[1], v[2], v[3]);
                let mut l = Stack::mono(c, &[a, b]);
                rung_left(&mut l, 0, r);
                rung_right(&mut l, 0, s);
                let terms = Self::rung_sum(c, &[a, b], 0..=r.min(s), |t| gbinom(-a + b - r + s, t as u64), |st, t| {
                    rung_right(st, 0, s - t);
                    rung_left(st, 0, r - t);
                });
                self.push_sum(format!("color={} a={a} b={b} r={r} s={s}", self.color(c)), l.finish(), terms);
            }
        }
    }

    fn monotone_crossing(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(2) {
                let (a, b) = (v[0], v[1]);
                let lhs = WebMorphism::cross(c, a, c, b);
                let terms = Self::rung_sum(
                    c,
                    &[a, b],
                    0..=a.min(b),
                    |t| if t % 2 == 0 { Q::one() } else { -Q::one() },
                    |st, t| {
                        rung_right(st, 0, a - t);
                        rung_left(st, 0, b - t);
                    },
                );
                self.push_sum(format!("color={} a={a} b={b}", self.color(c)), lhs, terms);
            }
        }
    }

    fn rung_coxeter(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(6) {
                let xs = [v[0], v[1], v[2]];
                let (s, s1, s2) = (v[3], v[4], v[5]);
                let base = format!("color={} a={} b={} c={}", self.color(c), xs[0], xs[1], xs[2]);
                let mut l = Stack::mono(c, &xs);
                rung_right(&mut l, 0, s);
                rung_right(&mut l, 1, s1);
                rung_right(&mut l, 0, s2);
                let terms = Self::rung_sum(c, &xs, 0..=s2, |t| gbinom(s - s1 + s2, t as u64), |st, t| {
                    rung_right(st, 1, s2 - t);
                    rung_right(st, 0, s + s2);
                    rung_right(st, 1, s1 - s2 + t);
                });
                self.push_sum(format!("form=rightward {base} s={s} s'={s1} s''={s2}"), l.finish(), terms);
                let mut l = Stack::mono(c, &xs);
                rung_left(&mut l, 0, s);
                rung_left(&mut l, 1, s1);
                rung_left(&mut l, 0, s2);
                let terms = Self::rung_sum(c, &xs, 0..=s2, |t| gbinom(s - s1 + s2, t as u64), |st, t| {
                    rung_left(st, 1, s2 - t);
                    rung_left(st, 0, s + s2);
                    rung_left(st, 1, s1 - s2 + t);
                });
                self.push_sum(format!("form=leftward {base} r={s} r'={s1} r''={s2}"), l.finish(), terms);
            }
        }
    }

    fn crossing_absorption(&mut self) {
        for c in 0..self.pair.ncolors() {
            for v in self.grid(2) {
                let (a, b) = (v[0], v[1]);
                let lhs = compose(&WebMorphism::merge(c, b, a), &WebMorphism::cross(c, a, c, b)).expect("types agree");
                self.push(format!("form=merge color={} a={a} b={b}", self.color(c)), lhs, WebMorphism::merge(c, a, b));
                let lhs = compose(&WebMorphism::cross(c, b, c, a), &WebMorphism::split(c, b, a)).expect("types agree");
                self.push(format!("form=split color={} a={a} b={b}", self.color(c)), lhs, WebMorphism::split(c, a, b));
            }
        }
    }
}
