//! The defining representation: diagrams act on tensor products of
//! symmetric powers of V_n = A^n.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::combinatorics::Object;
use crate::exact::{Parity, SparseMat, Q};
use crate::superalgebra::{AlgebraElement, GoodPair};
use crate::webcat::{Diagram, Gen, Layer, WebMorphism};

/// Restricted monomials of a fixed degree in the variables v_k^b of iV_n.
#[derive(Debug)]
pub struct PartBasis {
    pub color: usize,
    pub degree: i64,
    pub monos: Vec<Vec<u16>>,
    pub index: HashMap<Vec<u16>, u32>,
    pub parity: Vec<u8>,
}

impl PartBasis {
    pub fn dim(&self) -> usize {
        self.monos.len()
    }
}

/// Sparse columns of a generator matrix.
type GenMat = Vec<Vec<(u32, Q)>>;

pub struct Evaluator<'a> {
    pub pair: &'a GoodPair,
    pub n: usize,
    /// For each color, the basis elements b with left(b) = color.
    rows: Vec<Vec<usize>>,
    /// Position of b within rows[left(b)].
    pos_in_row: Vec<usize>,
    parts: Mutex<HashMap<(usize, i64), Arc<PartBasis>>>,
    gens: Mutex<HashMap<Gen, Arc<GenMat>>>,
}

/// Sorts a product of variables into canonical order. Returns None when an
/// odd variable repeats, otherwise the sign of the reordering.
pub fn straighten(vars: &mut Vec<u16>, odd: impl Fn(u16) -> bool) -> Option<i64> {
    let mut inv = 0usize;
    for p in 0..vars.len() {
        if !odd(vars[p]) {
            continue;
        }
        for q in p + 1..vars.len() {
            if odd(vars[q]) && vars[q] < vars[p] {
                inv += 1;
            }
        }
    }
    vars.sort_unstable();
    for w in vars.windows(2) {
        if w[0] == w[1] && odd(w[0]) {
            return None;
        }
    }
    Some(if inv % 2 == 0 { 1 } else { -1 })
}

fn push_entry(col: &mut Vec<(u32, Q)>, i: u32, c: Q) {
    col.push((i, c));
}

fn finish_col(mut col: Vec<(u32, Q)>) -> Vec<(u32, Q)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, Q)> = Vec::with_capacity(col.len());
    for (i, c) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

fn finish_vec(mut col: Vec<(usize, Q)>) -> Vec<(usize, Q)> {
    col.sort_by_key(|e| e.0);
    let mut out: Vec<(usize, Q)> = Vec::with_capacity(col.len());
    for (i, c) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += c,
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

impl<'a> Evaluator<'a> {
    pub fn new(pair: &'a GoodPair, n: usize) -> Self {
        let rows: Vec<Vec<usize>> = (0..pair.ncolors()).map(|i| pair.left_row(i)).collect();
        let mut pos_in_row = vec![0; pair.dim()];
        for r in &rows {
            for (p, &b) in r.iter().enumerate() {
                pos_in_row[b] = p;
            }
        }
        Evaluator { pair, n, rows, pos_in_row, parts: Mutex::new(HashMap::new()), gens: Mutex::new(HashMap::new()) }
    }

    /// Number of variables of iV_n.
    pub fn nvars(&self, color: usize) -> usize {
        self.n * self.rows[color].len()
    }

    /// (slot, basis element) of a variable of iV_n.
    pub fn var_info(&self, color: usize, v: u16) -> (usize, usize) {
        let w = self.rows[color].len();
        (v as usize / w, self.rows[color][v as usize % w])
    }

    pub fn var_index(&self, slot: usize, b: usize) -> u16 {
        let color = self.pair.basis[b].left;
        (slot * self.rows[color].len() + self.pos_in_row[b]) as u16
    }

    fn var_odd(&self, color: usize) -> impl Fn(u16) -> bool + '_ {
        let w = self.rows[color].len();
        let row = &self.rows[color];
        move |v: u16| self.pair.parity(row[v as usize % w]).is_odd()
    }

    pub fn part(&self, color: usize, degree: i64) -> Arc<PartBasis> {
        if let Some(p) = self.parts.lock().unwrap().get(&(color, degree)) {
            return p.clone();
        }
        let nv = self.nvars(color);
        let odd = self.var_odd(color);
        let mut monos = Vec::new();
        if degree >= 0 {
            fn rec(start: usize, left: i64, nv: usize, odd: &dyn Fn(u16) -> bool, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
                if left == 0 {
                    out.push(cur.clone());
                    return;
                }
                for v in start..nv {
                    let step = if odd(v as u16) { v + 1 } else { v };
                    cur.push(v as u16);
                    rec(step, left - 1, nv, odd, cur, out);
                    cur.pop();
                }
            }
            rec(0, degree, nv, &odd, &mut Vec::new(), &mut monos);
        }
        let index = monos.iter().enumerate().map(|(k, m)| (m.clone(), k as u32)).collect();
        let parity = monos.iter().map(|m| (m.iter().filter(|&&v| odd(v)).count() % 2) as u8).collect();
        let p = Arc::new(PartBasis { color, degree, monos, index, parity });
        self.parts.lock().unwrap().insert((color, degree), p.clone());
        p
    }

    pub fn object_dim(&self, obj: &Object) -> usize {
        obj.parts.iter().map(|&(c, x)| self.part(c, x).dim()).product()
    }

    /// Parity of a basis vector of `obj` given by its mixed-radix index.
    pub fn basis_parity(&self, obj: &Object, mut idx: usize) -> Parity {
        let mut bits = 0u32;
        for &(c, x) in obj.parts.iter().rev() {
            let p = self.part(c, x);
            let d = p.dim();
            bits += p.parity[idx % d] as u32;
            idx /= d;
        }
        Parity::from_bit(bits)
    }

    /// Mixed-radix decomposition of a basis index into per-part monomials.
    pub fn decompose(&self, obj: &Object, mut idx: usize) -> Vec<Vec<u16>> {
        let mut out = Vec::with_capacity(obj.len());
        for &(c, x) in obj.parts.iter().rev() {
            let p = self.part(c, x);
            let d = p.dim();
            out.push(p.monos[idx % d].clone());
            idx /= d;
        }
        out.reverse();
        out
    }

    /// Index of a tuple of per-part monomials, if all are basis monomials.
    pub fn compose_index(&self, obj: &Object, monos: &[Vec<u16>]) -> Option<usize> {
        let mut idx = 0usize;
        for (&(c, x), m) in obj.parts.iter().zip(monos) {
            let p = self.part(c, x);
            idx = idx * p.dim() + *p.index.get(m)? as usize;
        }
        Some(idx)
    }

    pub fn describe_basis(&self, obj: &Object, idx: usize) -> String {
        let parts = self.decompose(obj, idx);
        let s: Vec<String> = obj
            .parts
            .iter()
            .zip(&parts)
            .map(|(&(c, _), m)| {
                if m.is_empty() {
                    "1".to_string()
                } else {
                    m.iter()
                        .map(|&v| {
                            let (k, b) = self.var_info(c, v);
                            format!("v{}^{}", k + 1, self.pair.basis[b].id)
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                }
            })
            .collect();
        s.join(" (x) ")
    }

    pub fn generator(&self, gen: &Gen) -> Arc<GenMat> {
        if let Some(m) = self.gens.lock().unwrap().get(gen) {
            return m.clone();
        }
        let m = Arc::new(self.build_generator(gen));
        self.gens.lock().unwrap().insert(gen.clone(), m.clone());
        m
    }

    fn build_generator(&self, gen: &Gen) -> GenMat {
        match gen {
            Gen::Split { color, x, y } => {
                let (src, a, b) = (self.part(*color, x + y), self.part(*color, *x), self.part(*color, *y));
                let odd = self.var_odd(*color);
                let total = (x + y) as usize;
                let subsets = position_subsets(total, *x as usize);
                src.monos
                    .iter()
                    .map(|m| {
                        let mut col = Vec::new();
                        for t in &subsets {
                            let mut mt = Vec::with_capacity(*x as usize);
                            let mut mu = Vec::with_capacity(*y as usize);
                            let mut eps = 0;
                            for p in 0..total {
                                if t & (1 << p) != 0 {
                                    mt.push(m[p]);
                                } else {
                                    mu.push(m[p]);
                                }
                            }
                            for tp in 0..total {
                                if t & (1 << tp) == 0 || !odd(m[tp]) {
                                    continue;
                                }
                                for up in 0..tp {
                                    if t & (1 << up) == 0 && odd(m[up]) {
                                        eps += 1;
                                    }
                                }
                            }
                            let (Some(&ia), Some(&ib)) = (a.index.get(&mt), b.index.get(&mu)) else { continue };
                            let sign = if eps % 2 == 0 { Q::one() } else { -Q::one() };
                            push_entry(&mut col, ia * b.dim() as u32 + ib, sign);
                        }
                        finish_col(col)
                    })
                    .collect()
            }
            Gen::Merge { color, x, y } => {
                let (a, b, dst) = (self.part(*color, *x), self.part(*color, *y), self.part(*color, x + y));
                let odd = self.var_odd(*color);
                let mut cols = Vec::with_capacity(a.dim() * b.dim());
                for ma in &a.monos {
                    for mb in &b.monos {
                        let mut v = ma.clone();
                        v.extend_from_slice(mb);
                        let col = match straighten(&mut v, &odd) {
                            Some(s) => vec![(dst.index[&v], Q::from_integer(s.into()))],
                            None => Vec::new(),
                        };
                        cols.push(col);
                    }
                }
                cols
            }
            Gen::Cross { c1, x, c2, y } => {
                let (a, b) = (self.part(*c1, *x), self.part(*c2, *y));
                let mut cols = Vec::with_capacity(a.dim() * b.dim());
                for ia in 0..a.dim() {
                    for ib in 0..b.dim() {
                        let sign = if a.parity[ia] == 1 && b.parity[ib] == 1 { -Q::one() } else { Q::one() };
                        cols.push(vec![((ib * a.dim() + ia) as u32, sign)]);
                    }
                }
                cols
            }
            Gen::Coupon { elem, from, to, z } => {
                let (src, dst) = (self.part(*from, *z), self.part(*to, *z));
                let odd = self.var_odd(*to);
                // image of each source variable as a combination of target variables
                let images: Vec<Vec<(u16, Q)>> = (0..self.nvars(*from) as u16)
                    .map(|v| {
                        let (k, b) = self.var_info(*from, v);
                        let prod = self.pair.multiply(elem, &AlgebraElement::basis(b));
                        prod.terms.iter().map(|(c, x)| (self.var_index(k, *c), x.clone())).collect()
                    })
                    .collect();
                src.monos
                    .iter()
                    .map(|m| {
                        let mut acc: Vec<(Vec<u16>, Q)> = vec![(Vec::new(), Q::one())];
                        for &v in m {
                            let mut next = Vec::new();
                            for (seq, c) in &acc {
                                for (w, cw) in &images[v as usize] {
                                    let mut s = seq.clone();
                                    s.push(*w);
                                    next.push((s, c * cw));
                                }
                            }
                            acc = next;
                        }
                        let mut col = Vec::new();
                        for (mut seq, c) in acc {
                            if let Some(s) = straighten(&mut seq, &odd) {
                                let c = if s < 0 { -c } else { c };
                                push_entry(&mut col, dst.index[&seq], c);
                            }
                        }
                        finish_col(col)
                    })
                    .collect()
            }
        }
    }

    fn apply_layer(&self, layer: &Layer, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let g = self.generator(&layer.gen);
        let gdom = self.object_dim(&layer.gen.dom());
        let gcod = self.object_dim(&layer.gen.cod());
        let r = self.object_dim(&layer.right);
        let odd_gen = layer.gen.parity(self.pair).is_odd();
        let mut out = Vec::with_capacity(v.len() * 2);
        for (idx, c) in v {
            let rr = idx % r;
            let m = (idx / r) % gdom;
            let l = idx / (r * gdom);
            let neg = odd_gen && self.basis_parity(&layer.left, l).is_odd();
            for (m2, c2) in &g[m] {
                let val = c * c2;
                out.push(((l * gcod + *m2 as usize) * r + rr, if neg { -val } else { val }));
            }
        }
        finish_vec(out)
    }

    pub fn apply_diagram(&self, d: &Diagram, v: Vec<(usize, Q)>) -> Vec<(usize, Q)> {
        let mut v = v;
        for l in &d.layers {
            if v.is_empty() {
                break;
            }
            v = self.apply_layer(l, &v);
        }
        v
    }

    pub fn eval_diagram(&self, d: &Diagram) -> SparseMat {
        let dom = self.object_dim(&d.dom);
        let cod = self.object_dim(&d.cod());
        let cols: Vec<Vec<(usize, Q)>> = (0..dom).into_par_iter().map(|i| self.apply_diagram(d, vec![(i, Q::one())])).collect();
        SparseMat { rows: cod, cols }
    }

    /// Matrix of a morphism in the canonical bases of its domain and codomain.
    pub fn eval(&self, m: &WebMorphism) -> SparseMat {
        let dom = self.object_dim(&m.dom);
        let cod = self.object_dim(&m.cod);
        let cols: Vec<Vec<(usize, Q)>> = (0..dom)
            .into_par_iter()
            .map(|i| {
                let mut acc = Vec::new();
                for (c, d) in &m.terms {
                    for (j, x) in self.apply_diagram(d, vec![(i, c.clone())]) {
                        acc.push((j, x));
                    }
                }
                finish_vec(acc)
            })
            .collect();
        SparseMat { rows: cod, cols }
    }

    pub fn eval_generator(&self, gen: &Gen) -> SparseMat {
        let g = self.generator(gen);
        SparseMat {
            rows: self.object_dim(&gen.cod()),
            cols: g.iter().map(|c| c.iter().map(|(i, x)| (*i as usize, x.clone())).collect()).collect(),
        }
    }
}

/// Bitmasks of all k-element subsets of {0..n-1}.
fn position_subsets(n: usize, k: usize) -> Vec<u32> {
    (0u32..(1 << n)).filter(|m| m.count_ones() as usize == k).collect()
}

/// Convenience wrapper: evaluates a morphism at rank n.
pub fn eval(pair: &GoodPair, m: &WebMorphism, n: usize) -> SparseMat {
    Evaluator::new(pair, n).eval(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::superalgebra::builtin;
    use crate::webcat::{compose, tensor};

    #[test]
    fn sym_basis_dims() {
        let c = builtin("clifford1").unwrap();
        let ev = Evaluator::new(&c, 1);
        assert_eq!(ev.part(0, 2).dim(), 2);
        let k = builtin("trivial").unwrap();
        let ev = Evaluator::new(&k, 2);
        assert_eq!(ev.part(0, 2).dim(), 3);
        assert_eq!(ev.part(0, 0).dim(), 1);
        assert_eq!(ev.part(0, -1).dim(), 0);
    }

    #[test]
    fn split_on_two_variables() {
        let k = builtin("trivial").unwrap();
        let ev = Evaluator::new(&k, 2);
        let m = ev.eval_generator(&Gen::Split { color: 0, x: 1, y: 1 });
        let src = ev.part(0, 2);
        let v1v2 = src.index[&vec![0u16, 1]] as usize;
        // v1 (x) v2 + v2 (x) v1 in the basis {v1, v2} (x) {v1, v2}
        assert_eq!(m.cols[v1v2], vec![(1, q(1)), (2, q(1))]);
    }

    #[test]
    fn odd_twist_sign() {
        let c = builtin("clifford1").unwrap();
        let ev = Evaluator::new(&c, 1);
        let m = ev.eval_generator(&Gen::Cross { c1: 0, x: 1, c2: 0, y: 1 });
        // basis of each factor is {v^1, v^c}; v^c (x) v^c has index 3
        assert_eq!(m.get(3, 3), q(-1));
        assert_eq!(m.get(1, 2), q(1));
    }

    #[test]
    fn clifford_thin_coupon() {
        let c = builtin("clifford1").unwrap();
        let ev = Evaluator::new(&c, 1);
        let m = ev.eval(&WebMorphism::basis_coupon(&c, 1, 1).unwrap());
        assert_eq!(m.to_dense(), vec![vec![q(0), q(1)], vec![q(1), q(0)]]);
    }

    #[test]
    fn knothole_is_two() {
        for name in crate::superalgebra::BUILTIN_SUITE {
            let p = builtin(name).unwrap();
            for color in 0..p.ncolors() {
                let m = compose(&WebMorphism::merge(color, 1, 1), &WebMorphism::split(color, 1, 1)).unwrap();
                let e = eval(&p, &m, 2);
                assert_eq!(e, SparseMat::identity(e.rows).scale(&q(2)), "{name}");
            }
        }
    }

    #[test]
    fn super_interchange() {
        let c = builtin("clifford1").unwrap();
        let f = WebMorphism::basis_coupon(&c, 1, 1).unwrap();
        let id = WebMorphism::id(&Object::mono(0, &[1]));
        let lhs = compose(&tensor(&id, &f), &tensor(&f, &id)).unwrap();
        let ev = Evaluator::new(&c, 2);
        assert_eq!(ev.eval(&lhs), ev.eval(&tensor(&f, &f)).scale(&q(-1)));
    }
}
