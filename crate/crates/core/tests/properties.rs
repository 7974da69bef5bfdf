use num_traits::{One, Zero};
use proptest::prelude::*;

use webcalc::combinatorics::{enum_colored, enum_m, Object};
use webcalc::eval::Evaluator;
use webcalc::exact::{factorial, gbinom, q, q_frac, sparse_solve, Parity, SparseMat, SparseVec, Q};
use webcalc::howe::{build_space, Side};
use webcalc::reduce::Reducer;
use webcalc::schur::{eta_tilde, perm_act, schur_basis};
use webcalc::superalgebra::{builtin, AlgebraElement, GoodPair, BUILTIN_SUITE};
use webcalc::webcat::{compose, compose_all, e_generator, eta, eta_routed, tensor, Flavor, Routing, Stack, WebMorphism};
use webcalc::wreath::{permutations, rho, wreath_basis, wreath_mult, WreathElement};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn pick_pair(k: usize) -> GoodPair {
    builtin(BUILTIN_SUITE[k % BUILTIN_SUITE.len()]).unwrap()
}

fn naive_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                for k in 0..ncols {
                    let sub = &f * &m[rank][k];
                    m[r][k] -= sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Applies a list of (op, position, argument) seeds to a stack, skipping
/// seeds that do not fit the current strands. Returns the accumulated parity.
fn random_steps(pair: &GoodPair, st: &mut Stack, seeds: &[(u8, u8, u8)]) -> Parity {
    let mut parity = Parity::Even;
    for &(op, pos, arg) in seeds {
        let w = st.strands.len();
        let p = pos as usize % w;
        match op % 4 {
            0 => {
                let (_, t) = st.strands[p];
                if t >= 2 && t <= 3 {
                    let x = 1 + arg as i64 % (t - 1);
                    st.split(p, x, t - x);
                }
            }
            1 => {
                if p + 1 < w && st.strands[p].0 == st.strands[p + 1].0 && st.strands[p].1 + st.strands[p + 1].1 <= 3 {
                    st.merge(p);
                }
            }
            2 => {
                if p + 1 < w {
                    st.cross(p);
                }
            }
            _ => {
                let (c, t) = st.strands[p];
                let cands: Vec<usize> = (0..pair.dim()).filter(|&b| pair.basis[b].right == c && (t == 1 || pair.sub[b])).collect();
                if !cands.is_empty() {
                    let b = cands[arg as usize % cands.len()];
                    let to = pair.basis[b].left;
                    st.coupon(pair, p, &AlgebraElement::basis(b), to).unwrap();
                    if t % 2 == 1 {
                        parity = parity + pair.parity(b);
                    }
                }
            }
        }
    }
    parity
}

fn start_object(pair: &GoodPair, shape: &[(u8, u8)]) -> Vec<(usize, i64)> {
    shape.iter().map(|&(c, x)| (c as usize % pair.ncolors(), 1 + x as i64 % 2)).collect()
}

fn seeds() -> impl Strategy<Value = Vec<(u8, u8, u8)>> {
    prop::collection::vec(any::<(u8, u8, u8)>(), 0..6)
}

fn shape() -> impl Strategy<Value = Vec<(u8, u8)>> {
    prop::collection::vec(any::<(u8, u8)>(), 1..4)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn pascal_identity(n in -12i64..12, k in 1u64..8) {
        prop_assert_eq!(gbinom(n, k), gbinom(n - 1, k - 1) + gbinom(n - 1, k));
        prop_assert_eq!(gbinom(n, 0), Q::one());
    }

    #[test]
    fn rank_matches_naive_elimination(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 5), 1..6)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        prop_assert_eq!(SparseMat::from_i64(&refs).rank(), naive_rank(&rows));
    }

    #[test]
    fn solve_reproduces_rhs(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 4), 1..6), x in prop::collection::vec(-5i64..6, 4)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let a = SparseMat::from_i64(&refs);
        let b = a.apply(&SparseVec::from_dense(&x.iter().map(|&v| q(v)).collect::<Vec<_>>()));
        let sol = sparse_solve(&a, &b).expect("b lies in the column space");
        prop_assert_eq!(a.apply(&sol), b);
    }

    #[test]
    fn hom_counts_are_symmetric(k in 0usize..5, a in shape(), b in shape()) {
        let p = pick_pair(k);
        let src = Object::new(start_object(&p, &a));
        let mut dst_parts = start_object(&p, &b);
        // pad dst to the same total thickness
        let diff = src.total() - Object::new(dst_parts.clone()).total();
        if diff > 0 {
            dst_parts.push((0, diff));
        } else if diff < 0 {
            return Ok(());
        }
        let dst = Object::new(dst_parts);
        let ms = enum_m(&p, &src, &dst);
        prop_assert_eq!(ms.len(), enum_m(&p, &dst, &src).len());
        for m in &ms {
            prop_assert!(m.is_valid(&p));
        }
    }

    #[test]
    fn hom_sums_invariant_under_reordering(k in 0usize..5, a in shape(), rot in 0usize..3) {
        let p = pick_pair(k);
        let parts = start_object(&p, &a);
        let mut rotated = parts.clone();
        rotated.rotate_left(rot % parts.len());
        let (s1, s2) = (Object::new(parts), Object::new(rotated));
        let d = s1.total() as usize;
        let total = |s: &Object| enum_colored(d, d, p.ncolors()).iter().map(|t| enum_m(&p, s, t).len()).sum::<usize>();
        prop_assert_eq!(total(&s1), total(&s2));
    }

    #[test]
    fn random_diagrams_are_well_typed(k in 0usize..5, sh in shape(), sd in seeds()) {
        let p = pick_pair(k);
        let start = start_object(&p, &sh);
        let mut st = Stack::new(start.clone());
        let parity = random_steps(&p, &mut st, &sd);
        let f = st.finish();
        prop_assert_eq!(&f.dom, &Object::new(start).reduced());
        prop_assert_eq!(&f.cod, &Object::new(st.strands.clone()).reduced());
        prop_assert_eq!(f.dom.total(), f.cod.total());
        for (_, d) in &f.terms {
            prop_assert!(d.is_well_typed());
        }
        if !f.is_zero() {
            prop_assert_eq!(f.parity(&p), Some(parity));
        }
    }
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn evaluation_is_functorial(k in 0usize..5, sh in prop::collection::vec(any::<(u8, u8)>(), 1..3), s1 in seeds(), s2 in seeds()) {
        let p = pick_pair(k);
        let mut a = Stack::new(start_object(&p, &sh));
        random_steps(&p, &mut a, &s1);
        let mut b = Stack::new(a.strands.clone());
        random_steps(&p, &mut b, &s2);
        let (f, g) = (a.finish(), b.finish());
        let ev = Evaluator::new(&p, 2);
        let gf = compose(&g, &f).unwrap();
        prop_assert_eq!(ev.eval(&gf), ev.eval(&g).mul(&ev.eval(&f)));
    }

    #[test]
    fn super_interchange(k in 0usize..5, sh1 in prop::collection::vec(any::<(u8, u8)>(), 1..3), sh2 in prop::collection::vec(any::<(u8, u8)>(), 1..3), s1 in seeds(), s2 in seeds()) {
        let p = pick_pair(k);
        let mut a = Stack::new(start_object(&p, &sh1));
        let pf = random_steps(&p, &mut a, &s1);
        let mut b = Stack::new(start_object(&p, &sh2));
        let pg = random_steps(&p, &mut b, &s2);
        let (f, g) = (a.finish(), b.finish());
        let ev = Evaluator::new(&p, 2);
        let lhs = compose(&tensor(&WebMorphism::id(&f.cod), &g), &tensor(&f, &WebMorphism::id(&g.dom))).unwrap();
        let sign = if pf.is_odd() && pg.is_odd() { q(-1) } else { q(1) };
        prop_assert_eq!(ev.eval(&lhs), ev.eval(&tensor(&f, &g)).scale(&sign));
        let other = compose(&tensor(&f, &WebMorphism::id(&g.cod)), &tensor(&WebMorphism::id(&f.dom), &g)).unwrap();
        prop_assert_eq!(ev.eval(&other), ev.eval(&tensor(&f, &g)));
    }

    #[test]
    fn coupon_scalar_law(k in 0usize..5, bi in any::<u8>(), x in 1i64..4, num in -4i64..5, den in 1i64..4) {
        let p = pick_pair(k);
        let subs: Vec<usize> = (0..p.dim()).filter(|&b| p.sub[b]).collect();
        let b = subs[bi as usize % subs.len()];
        let (from, to) = (p.basis[b].right, p.basis[b].left);
        let alpha = q_frac(num, den);
        let ev = Evaluator::new(&p, 2);
        let f = WebMorphism::coupon(&p, &AlgebraElement::basis(b), from, to, x).unwrap();
        let g = WebMorphism::coupon(&p, &AlgebraElement::basis(b).scale(&alpha), from, to, x).unwrap();
        let pow = (0..x).fold(Q::one(), |acc, _| acc * &alpha);
        prop_assert_eq!(ev.eval(&g), ev.eval(&f).scale(&pow));
    }

    #[test]
    fn eta_independent_of_routing(k in 0usize..5, a in shape(), b in shape(), pick in any::<u16>()) {
        let p = pick_pair(k);
        let src = Object::new(start_object(&p, &a));
        let d = src.total() as usize;
        let dsts = enum_colored(b.len().max(1), d, p.ncolors());
        let dst = &dsts[pick as usize % dsts.len()];
        let ms = enum_m(&p, &src, dst);
        if ms.is_empty() {
            return Ok(());
        }
        let m = &ms[pick as usize % ms.len()];
        let ev = Evaluator::new(&p, d.min(3));
        let l = eta_routed(&p, m, Flavor::A, Routing::LeftmostDescent).unwrap();
        let r = eta_routed(&p, m, Flavor::A, Routing::RightmostDescent).unwrap();
        prop_assert_eq!(ev.eval(&l), ev.eval(&r));
    }

    #[test]
    fn reduction_is_linear(k in 0usize..5, sh in prop::collection::vec(any::<(u8, u8)>(), 1..3), sd in seeds(), pick in any::<u16>(), a in -3i64..4, b in 1i64..4) {
        let p = pick_pair(k);
        let mut st = Stack::new(start_object(&p, &sh));
        random_steps(&p, &mut st, &sd);
        let f = st.finish();
        let ms = enum_m(&p, &f.dom, &f.cod);
        let g = eta(&p, &ms[pick as usize % ms.len()], Flavor::A).unwrap();
        let (alpha, beta) = (q(a), q_frac(1, b));
        let red = Reducer::new(&p);
        let combo = f.scale(&alpha).add(&g.scale(&beta)).unwrap();
        let lhs = red.reduce(&combo).unwrap().coords.to_dense();
        let rf = red.reduce(&f).unwrap().coords.to_dense();
        let rg = red.reduce(&g).unwrap().coords.to_dense();
        let rhs: Vec<Q> = rf.iter().zip(&rg).map(|(x, y)| x * &alpha + y * &beta).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn schur_basis_elements_are_invariant(k in 0usize..5, n in 1usize..3, pick in any::<u16>(), tau_seed in any::<u8>()) {
        let p = pick_pair(k).collapse();
        let d = if p.dim() > 4 { 2 } else { 3 };
        let basis: Vec<_> = schur_basis(&p, n, d).into_iter().flat_map(|(_, _, ms)| ms).collect();
        let m = &basis[pick as usize % basis.len()];
        let x = eta_tilde(&p, m, n).unwrap();
        let perms = permutations(d);
        let tau = &perms[tau_seed as usize % perms.len()];
        prop_assert_eq!(perm_act(&p, &x, tau), x);
    }
}

fn random_wreath(pair: &GoodPair, d: usize, picks: &[(u16, i8)]) -> WreathElement {
    let basis = wreath_basis(pair, d);
    let mut x = WreathElement::zero(d);
    for &(i, c) in picks {
        let t = basis[i as usize % basis.len()].clone();
        x = x.add(&WreathElement::basis(t.0, t.1).scale(&q(c as i64)));
    }
    x
}

fn homogeneous_wreath(pair: &GoodPair, d: usize, i: u16) -> WreathElement {
    let basis = wreath_basis(pair, d);
    let t = basis[i as usize % basis.len()].clone();
    WreathElement::basis(t.0, t.1)
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn wreath_product_is_associative(k in 0usize..5, d in 1usize..4, a in prop::collection::vec(any::<(u16, i8)>(), 1..3), b in prop::collection::vec(any::<(u16, i8)>(), 1..3), c in prop::collection::vec(any::<(u16, i8)>(), 1..3)) {
        let p = pick_pair(k);
        let d = if p.dim() > 2 { d.min(2) } else { d };
        let (x, y, z) = (random_wreath(&p, d, &a), random_wreath(&p, d, &b), random_wreath(&p, d, &c));
        let l = wreath_mult(&p, &wreath_mult(&p, &x, &y), &z);
        let r = wreath_mult(&p, &x, &wreath_mult(&p, &y, &z));
        prop_assert_eq!(l, r);
    }

    // ρ is a right action with the Koszul convention: ρ(xy) = (−1)^{|x||y|} ρ(y)ρ(x).
    #[test]
    fn rho_is_a_signed_antihomomorphism(k in 0usize..5, n in 1usize..3, i in any::<u16>(), j in any::<u16>()) {
        let p = pick_pair(k);
        let d = 2;
        let (x, y) = (homogeneous_wreath(&p, d, i), homogeneous_wreath(&p, d, j));
        let sign = if x.parity(&p) == Some(true) && y.parity(&p) == Some(true) { q(-1) } else { q(1) };
        let lhs = rho(&p, &wreath_mult(&p, &x, &y), n);
        let rhs = rho(&p, &y, n).mul(&rho(&p, &x, n)).scale(&sign);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn thick_generator_is_divided_power(k in 0usize..5, l0 in 0i64..3, l1 in 0i64..3, t in 1i64..3, fi in any::<u8>(), forward in any::<bool>()) {
        let p = pick_pair(k);
        let lambda = vec![l0, l1];
        let (r, s) = if forward { (0, 1) } else { (1, 0) };
        if lambda[s] < t {
            return Ok(());
        }
        let c0: Vec<usize> = (0..p.dim()).filter(|&b| p.sub[b] && p.basis[b].left == 0 && p.basis[b].right == 0).collect();
        let f = AlgebraElement::basis(c0[fi as usize % c0.len()]);
        let thick = e_generator(&p, r, s, &lambda, &f, t).unwrap();
        let mut steps = Vec::new();
        let mut cur = lambda.clone();
        for _ in 0..t {
            steps.push(e_generator(&p, r, s, &cur, &f, 1).unwrap());
            cur[r] += 1;
            cur[s] -= 1;
        }
        let thin = compose_all(&steps).unwrap();
        let ev = Evaluator::new(&p, (l0 + l1).max(1) as usize);
        let scale = Q::one() / factorial(t as u64);
        prop_assert_eq!(ev.eval(&thick), ev.eval(&thin).scale(&scale));
    }
}

fn sym_dim(even: usize, odd: usize, k: usize) -> usize {
    (0..=k.min(odd)).map(|j| binom(even + k - j - 1, k - j) * binom(odd, j)).sum::<usize>().max(if k == 0 { 1 } else { 0 })
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn howe_actions_commute_and_preserve_weights(which in any::<bool>(), n in 1usize..3, d in 1usize..3, gi in any::<u16>(), hi in any::<u16>()) {
        let p = builtin(if which { "clifford1" } else { "trivial" }).unwrap();
        let sp = build_space(&p, 2, n, d);
        let lefts = sp.action_matrices(Side::Left);
        let rights = sp.action_matrices(Side::Right);
        let (x, _) = &lefts[gi as usize % lefts.len()];
        let (y, _) = &rights[hi as usize % rights.len()];
        prop_assert_eq!(x.mul(y), y.mul(x));

        let g = gi as usize % lefts.len();
        let per = sp.pair.dim();
        let (r, s) = (g / per / 2, (g / per) % 2);
        for (col, entries) in x.cols.iter().enumerate() {
            let (mut l, rw) = sp.weight(col);
            if entries.is_empty() {
                continue;
            }
            l[r] += 1;
            l[s] -= 1;
            for (row, _) in entries {
                prop_assert_eq!(sp.weight(*row), (l.clone(), rw.clone()));
            }
        }
    }

    #[test]
    fn weight_spaces_are_products_of_symmetric_powers(which in any::<bool>(), n in 1usize..3, a in 0usize..3, b in 0usize..3) {
        let p = builtin(if which { "clifford1" } else { "trivial" }).unwrap();
        let d = a + b;
        let sp = build_space(&p, 2, n, d);
        let count = (0..sp.dim()).filter(|&i| sp.weight(i).0 == vec![a, b]).count();
        let (e, o) = p.graded_dim();
        prop_assert_eq!(count, sym_dim(n * e, n * o, a) * sym_dim(n * e, n * o, b));
    }
}
