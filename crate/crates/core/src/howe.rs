//! The bigraded space S^d(V_m ⊗_A V_n) with its commuting gl_m(A) and
//! gl_n(A) actions, and exact double centralizer checks.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::enum_multipartitions;
use crate::eval::straighten;
use crate::exact::{nullity, Echelon, SparseMat, Q};
use crate::superalgebra::{AlgebraElement, GoodPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Degree d part of S^•(V_m ⊗_A V_n). V_m ⊗_A V_n is identified with
/// m × n matrices over A, with z^b_{p,q} the matrix unit at (p,q) with entry b.
pub struct HoweSpace {
    pub pair: GoodPair,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    /// (p, q, b) for each variable
    pub vars: Vec<(usize, usize, usize)>,
    pub monos: Vec<Vec<u16>>,
    index: HashMap<Vec<u16>, usize>,
    pub parity: Vec<bool>,
}

impl HoweSpace {
    pub fn dim(&self) -> usize {
        self.monos.len()
    }

    fn var(&self, p: usize, q: usize, b: usize) -> u16 {
        ((p * self.n + q) * self.pair.dim() + b) as u16
    }

    fn odd(&self, v: u16) -> bool {
        self.pair.parity(self.vars[v as usize].2).is_odd()
    }

    /// (gl_m-weight, gl_n-weight) of a basis monomial.
    pub fn weight(&self, idx: usize) -> (Vec<usize>, Vec<usize>) {
        let mut l = vec![0; self.m];
        let mut r = vec![0; self.n];
        for &v in &self.monos[idx] {
            let (p, q, _) = self.vars[v as usize];
            l[p] += 1;
            r[q] += 1;
        }
        (l, r)
    }

    /// Image of one variable under a generator: E^f_{r,s} z^b_{p,q} =
    /// δ_{s,p} z^{fb}_{r,q} on the left, z^b_{p,q} E^f_{r,s} = δ_{q,r} z^{bf}_{p,s}
    /// on the right.
    fn act_var(&self, side: Side, r: usize, s: usize, f: usize, v: u16) -> Vec<(u16, Q)> {
        let (p, q, b) = self.vars[v as usize];
        let (prod, tp, tq) = match side {
            Side::Left if s == p => (self.pair.product(f, b), r, q),
            Side::Right if q == r => (self.pair.product(b, f), p, s),
            _ => return Vec::new(),
        };
        prod.terms.iter().map(|(&c, x)| (self.var(tp, tq, c), x.clone())).collect()
    }

    /// Matrix of E^f_{r,s} acting as a super-derivation from the given side.
    pub fn action(&self, side: Side, r: usize, s: usize, f: usize) -> SparseMat {
        let fodd = self.pair.parity(f).is_odd();
        let mut cols = Vec::with_capacity(self.dim());
        for mono in &self.monos {
            let mut acc: Vec<(usize, Q)> = Vec::new();
            for k in 0..mono.len() {
                let passed = match side {
                    Side::Left => mono[..k].iter().filter(|&&v| self.odd(v)).count(),
                    Side::Right => mono[k + 1..].iter().filter(|&&v| self.odd(v)).count(),
                };
                let sign = if fodd && passed % 2 == 1 { -Q::one() } else { Q::one() };
                for (w, c) in self.act_var(side, r, s, f, mono[k]) {
                    let mut vs = mono.clone();
                    vs[k] = w;
                    if let Some(sg) = straighten(&mut vs, |v| self.odd(v)) {
                        let i = self.index[&vs];
                        acc.push((i, &c * &sign * Q::from_integer(sg.into())));
                    }
                }
            }
            cols.push(normalize(acc));
        }
        SparseMat { rows: self.dim(), cols }
    }

    /// Matrices of all generators E^f_{r,s} (f running over the basis) on one
    /// side, with their parities.
    pub fn action_matrices(&self, side: Side) -> Vec<(SparseMat, bool)> {
        let k = if side == Side::Left { self.m } else { self.n };
        let mut out = Vec::new();
        for r in 0..k {
            for s in 0..k {
                for f in 0..self.pair.dim() {
                    out.push((self.action(side, r, s, f), self.pair.parity(f).is_odd()));
                }
            }
        }
        out
    }

    /// Matrix of E^x_{r,s} for an arbitrary element x.
    pub fn action_element(&self, side: Side, r: usize, s: usize, x: &AlgebraElement) -> SparseMat {
        let mut out = SparseMat::zero(self.dim(), self.dim());
        for (&b, c) in &x.terms {
            out.add_assign_scaled(&self.action(side, r, s, b), c);
        }
        out
    }
}

fn normalize(mut v: Vec<(usize, Q)>) -> Vec<(usize, Q)> {
    v.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Q)> = Vec::with_capacity(v.len());
    for (i, x) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += x,
            _ => out.push((i, x)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn build_space(pair: &GoodPair, m: usize, n: usize, d: usize) -> HoweSpace {
    let p = pair.collapse();
    let w = p.dim();
    let mut vars = Vec::new();
    for a in 0..m {
        for b in 0..n {
            for f in 0..w {
                vars.push((a, b, f));
            }
        }
    }
    let odd: Vec<bool> = vars.iter().map(|&(_, _, f)| p.parity(f).is_odd()).collect();
    let mut monos = Vec::new();
    fn rec(start: usize, left: usize, odd: &[bool], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in start..odd.len() {
            cur.push(v as u16);
            rec(if odd[v] { v + 1 } else { v }, left - 1, odd, cur, out);
            cur.pop();
        }
    }
    rec(0, d, &odd, &mut Vec::new(), &mut monos);
    let index = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let parity = monos.iter().map(|mo| mo.iter().filter(|&&v| odd[v as usize]).count() % 2 == 1).collect();
    HoweSpace { pair: p, m, n, d, vars, monos, index, parity }
}

/// Homogeneous spanning set of the unital algebra generated by `gens`.
pub fn generated_algebra(dim: usize, gens: &[(SparseMat, bool)]) -> Vec<(SparseMat, bool)> {
    let mut ech = Echelon::new();
    let mut basis: Vec<(SparseMat, bool)> = Vec::new();
    let id = SparseMat::identity(dim);
    ech.insert(id.vectorize());
    basis.push((id, false));
    let mut frontier = 0;
    while frontier < basis.len() {
        let (b, bodd) = basis[frontier].clone();
        frontier += 1;
        for (g, godd) in gens {
            let prod = g.mul(&b);
            if ech.insert(prod.vectorize()) {
                basis.push((prod, bodd ^ godd));
            }
        }
    }
    basis
}

/// Dimension of {φ : φX = Xφ for all X in `ops`}.
pub fn commutant_dim(dim: usize, ops: &[(SparseMat, bool)]) -> usize {
    let mut eqs = Vec::new();
    for (x, _) in ops {
        let xt = x.transpose();
        for i in 0..dim {
            for j in 0..dim {
                let mut row: Vec<(usize, Q)> = Vec::new();
                for (k, c) in &x.cols[j] {
                    row.push((i * dim + k, c.clone()));
                }
                for (k, c) in &xt.cols[i] {
                    row.push((k * dim + j, -c.clone()));
                }
                if !row.is_empty() {
                    eqs.push(row);
                }
            }
        }
    }
    nullity(dim * dim, eqs)
}

fn commutes(a: &[(SparseMat, bool)], b: &[(SparseMat, bool)]) -> bool {
    a.iter().all(|(x, _)| b.iter().all(|(y, _)| x.mul(y) == y.mul(x)))
}

/// Dimension of the even part of the center of the span of `alg`.
fn even_center_dim(alg: &[(SparseMat, bool)], gens: &[(SparseMat, bool)]) -> usize {
    let even: Vec<&SparseMat> = alg.iter().filter(|(_, o)| !o).map(|(m, _)| m).collect();
    let mut eqs: Vec<Vec<(usize, Q)>> = Vec::new();
    for (g, _) in gens {
        let comms: Vec<Vec<(usize, Q)>> = even.iter().map(|b| b.mul(g).sub(&g.mul(b)).vectorize()).collect();
        let mut rows: HashMap<usize, Vec<(usize, Q)>> = HashMap::new();
        for (i, v) in comms.iter().enumerate() {
            for (k, c) in v {
                rows.entry(*k).or_default().push((i, c.clone()));
            }
        }
        eqs.extend(rows.into_values());
    }
    nullity(even.len(), eqs)
}

#[derive(Clone, Debug, Serialize)]
pub struct HoweReport {
    pub algebra: String,
    pub m: usize,
    pub n: usize,
    pub d: usize,
    pub space_dim: usize,
    pub dim_left: usize,
    pub dim_right: usize,
    pub dim_commutant_left: usize,
    pub dim_commutant_right: usize,
    pub actions_commute: bool,
    pub right_centralizes_left: bool,
    pub left_centralizes_right: bool,
    pub multipartitions: Option<usize>,
    pub center_blocks: usize,
    pub asserted: bool,
}

impl HoweReport {
    pub fn holds(&self) -> bool {
        self.actions_commute && self.right_centralizes_left && self.left_centralizes_right
    }

    pub fn passed(&self) -> bool {
        !self.asserted || self.holds()
    }
}

/// L and R are the algebras generated by the two actions. Checks C(R) = L
/// and C(L) = R; since L ⊆ C(R) once the actions commute, equality of
/// dimensions suffices.
pub fn double_centralizer_check(pair: &GoodPair, m: usize, n: usize, d: usize) -> HoweReport {
    let sp = build_space(pair, m, n, d);
    let dim = sp.dim();
    let lg = sp.action_matrices(Side::Left);
    let rg = sp.action_matrices(Side::Right);
    let la = generated_algebra(dim, &lg);
    let ra = generated_algebra(dim, &rg);
    let actions_commute = commutes(&lg, &rg);
    let cl = commutant_dim(dim, &lg);
    let cr = commutant_dim(dim, &rg);
    HoweReport {
        algebra: pair.name.clone(),
        m,
        n,
        d,
        space_dim: dim,
        dim_left: la.len(),
        dim_right: ra.len(),
        dim_commutant_left: cl,
        dim_commutant_right: cr,
        actions_commute,
        right_centralizes_left: actions_commute && cr == la.len(),
        left_centralizes_right: actions_commute && cl == ra.len(),
        multipartitions: pair.simple_data.as_ref().map(|s| enum_multipartitions(s, m.min(n), d).len()),
        center_blocks: even_center_dim(&la, &lg),
        asserted: pair.semisimple,
    }
}
