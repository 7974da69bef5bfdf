//! Elements of M_n(A)^{⊗d}, the Schur superalgebras S^A(n,d) ⊇ T^A_a(n,d),
//! and their comparison with the web algebra through actions on V_n^{⊗d}.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{bang, compositions, enum_m, MatrixComposition, Object};
use crate::eval::Evaluator;
use crate::exact::{fmt_q, Echelon, Parity, SparseMat, Q};
use crate::reduce::{ReduceError, Reducer};
use crate::superalgebra::{AlgebraElement, GoodPair};
use crate::webcat::{compose, eta, Flavor, WebMorphism};

/// The matrix unit E^b_{r,s}: row r, column s, entry b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Factor {
    pub r: usize,
    pub s: usize,
    pub b: usize,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SchurError {
    #[error("element is not invariant under the symmetric group")]
    NotInvariant,
    #[error("elements have different sizes: (n,d) = ({0},{1}) vs ({2},{3})")]
    SizeMismatch(usize, usize, usize, usize),
    #[error("invalid matrix composition")]
    InvalidComposition,
}

/// A sparse element of M_n(A)^{⊗d}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorMatrixElement {
    pub n: usize,
    pub d: usize,
    pub terms: BTreeMap<Vec<Factor>, Q>,
}

fn factors_parity(pair: &GoodPair, fs: &[Factor]) -> Vec<bool> {
    fs.iter().map(|f| pair.parity(f.b).is_odd()).collect()
}

/// Koszul sign of the signed place permutation taking position k to the
/// entry `src[k]` of the old tensor.
fn place_sign(odd: &[bool], src: &[usize]) -> bool {
    let mut neg = false;
    for a in 0..src.len() {
        for b in a + 1..src.len() {
            if src[a] > src[b] && odd[src[a]] && odd[src[b]] {
                neg = !neg;
            }
        }
    }
    neg
}

impl TensorMatrixElement {
    pub fn zero(n: usize, d: usize) -> Self {
        TensorMatrixElement { n, d, terms: BTreeMap::new() }
    }

    /// The unit of M_n(A)^{⊗0}.
    pub fn one(n: usize) -> Self {
        let mut t = BTreeMap::new();
        t.insert(Vec::new(), Q::one());
        TensorMatrixElement { n, d: 0, terms: t }
    }

    /// E^f_{r,s} for an arbitrary element f, expanded in the basis.
    pub fn unit_matrix(n: usize, r: usize, s: usize, f: &AlgebraElement) -> Self {
        let mut x = Self::zero(n, 1);
        for (&b, c) in &f.terms {
            x.add_term(vec![Factor { r, s, b }], c.clone());
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Vec<Factor>, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            let k: Vec<Factor> = self.terms.iter().find(|(_, v)| v.is_zero()).map(|(k, _)| k.clone()).unwrap();
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero(self.n, self.d);
        }
        TensorMatrixElement { n: self.n, d: self.d, terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect() }
    }

    /// Plain tensor product x ⊗ y in M_n(A)^{⊗(d1+d2)}.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n, self.d + other.d);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                out.add_term([k1.clone(), k2.clone()].concat(), c1 * c2);
            }
        }
        out
    }

    /// x^{⊗k}
    pub fn tensor_power(&self, k: usize) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.tensor(self))
    }

    pub fn parity(&self, pair: &GoodPair) -> Option<Parity> {
        let mut ps = self.terms.keys().map(|k| k.iter().fold(Parity::Even, |p, f| p + pair.parity(f.b)));
        let p = ps.next().unwrap_or(Parity::Even);
        ps.all(|x| x == p).then_some(p)
    }

    pub fn to_json(&self, pair: &GoodPair) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, c)| {
                json!({
                    "r": k.iter().map(|f| f.r + 1).collect::<Vec<_>>(),
                    "s": k.iter().map(|f| f.s + 1).collect::<Vec<_>>(),
                    "b": k.iter().map(|f| pair.basis[f.b].id.clone()).collect::<Vec<_>>(),
                    "coef": fmt_q(c),
                })
            })
            .collect();
        json!({ "n": self.n, "d": self.d, "terms": terms })
    }

    /// L^{n+m}_n: indices unchanged in the larger matrix algebra.
    pub fn embed_left(&self, m: usize) -> Self {
        TensorMatrixElement { n: self.n + m, d: self.d, terms: self.terms.clone() }
    }

    /// R^{n+m}_n: indices shifted by m.
    pub fn embed_right(&self, m: usize) -> Self {
        let terms = self.terms.iter().map(|(k, c)| (k.iter().map(|f| Factor { r: f.r + m, s: f.s + m, b: f.b }).collect(), c.clone())).collect();
        TensorMatrixElement { n: self.n + m, d: self.d, terms }
    }
}

/// Signed place permutation x.τ, where position k of the result holds the
/// old factor τ(k) (0-based one-line notation).
pub fn perm_act(pair: &GoodPair, x: &TensorMatrixElement, tau: &[usize]) -> TensorMatrixElement {
    let mut out = TensorMatrixElement::zero(x.n, x.d);
    for (k, c) in &x.terms {
        let odd = factors_parity(pair, k);
        let key: Vec<Factor> = tau.iter().map(|&t| k[t]).collect();
        out.add_term(key, if place_sign(&odd, tau) { -c.clone() } else { c.clone() });
    }
    out
}

pub fn is_invariant(pair: &GoodPair, x: &TensorMatrixElement) -> bool {
    (0..x.d.saturating_sub(1)).all(|p| {
        let mut tau: Vec<usize> = (0..x.d).collect();
        tau.swap(p, p + 1);
        perm_act(pair, x, &tau) == *x
    })
}

/// Shuffles of d1 + d2 positions: for each choice of d1 positions (in
/// lexicographic order) the one-line notation placing the first factors
/// there in order and the remaining factors in the complement.
pub fn coset_representatives(d1: usize, d2: usize) -> Vec<Vec<usize>> {
    let d = d1 + d2;
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(start: usize, d: usize, d1: usize, d2: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == d1 {
            let mut tau = vec![0; d];
            let (mut a, mut b) = (0, d1);
            for (p, slot) in tau.iter_mut().enumerate() {
                if chosen.contains(&p) {
                    *slot = a;
                    a += 1;
                } else {
                    *slot = b;
                    b += 1;
                }
            }
            out.push(tau);
            return;
        }
        for p in start..d {
            chosen.push(p);
            rec(p + 1, d, d1, d2, chosen, out);
            chosen.pop();
        }
    }
    rec(0, d, d1, d2, &mut chosen, &mut out);
    out
}

/// ξ1 * ξ2 = Σ_σ (ξ1 ⊗ ξ2)^σ over coset representatives.
pub fn star(pair: &GoodPair, x: &TensorMatrixElement, y: &TensorMatrixElement) -> Result<TensorMatrixElement, SchurError> {
    if x.n != y.n {
        return Err(SchurError::SizeMismatch(x.n, x.d, y.n, y.d));
    }
    if !is_invariant(pair, x) || !is_invariant(pair, y) {
        return Err(SchurError::NotInvariant);
    }
    Ok(star_unchecked(pair, x, y))
}

fn star_unchecked(pair: &GoodPair, x: &TensorMatrixElement, y: &TensorMatrixElement) -> TensorMatrixElement {
    let xy = x.tensor(y);
    let mut out = TensorMatrixElement::zero(x.n, x.d + y.d);
    for tau in coset_representatives(x.d, y.d) {
        out = out.add(&perm_act(pair, &xy, &tau));
    }
    out
}

pub fn shifted_star(pair: &GoodPair, x: &TensorMatrixElement, y: &TensorMatrixElement) -> Result<TensorMatrixElement, SchurError> {
    star(pair, &x.embed_left(y.n), &y.embed_right(x.n))
}

/// Factorwise product with the Koszul sign Σ_{q<p} |a_p||b_q|.
pub fn schur_mult(pair: &GoodPair, x: &TensorMatrixElement, y: &TensorMatrixElement) -> Result<TensorMatrixElement, SchurError> {
    if x.n != y.n || x.d != y.d {
        return Err(SchurError::SizeMismatch(x.n, x.d, y.n, y.d));
    }
    let mut out = TensorMatrixElement::zero(x.n, x.d);
    for (ka, ca) in &x.terms {
        let oa = factors_parity(pair, ka);
        for (kb, cb) in &y.terms {
            if ka.iter().zip(kb).any(|(a, b)| a.s != b.r) {
                continue;
            }
            let ob = factors_parity(pair, kb);
            let mut neg = false;
            for p in 0..x.d {
                for q in 0..p {
                    if oa[p] && ob[q] {
                        neg = !neg;
                    }
                }
            }
            let mut partial: Vec<(Vec<Factor>, Q)> = vec![(Vec::new(), if neg { -(ca * cb) } else { ca * cb })];
            for (a, b) in ka.iter().zip(kb) {
                let prod = pair.product(a.b, b.b);
                let mut next = Vec::new();
                for (k, c) in &partial {
                    for (&pb, pc) in &prod.terms {
                        let mut k2 = k.clone();
                        k2.push(Factor { r: a.r, s: b.s, b: pb });
                        next.push((k2, c * pc));
                    }
                }
                partial = next;
            }
            for (k, c) in partial {
                out.add_term(k, c);
            }
        }
    }
    Ok(out)
}

/// η̃^a_μ for μ over compositions with n parts (zero parts allowed).
pub fn eta_tilde(pair: &GoodPair, m: &MatrixComposition, n: usize) -> Result<TensorMatrixElement, SchurError> {
    if !m.is_valid(pair) || m.t() != n || m.u() != n {
        return Err(SchurError::InvalidComposition);
    }
    let not_sub: Vec<bool> = pair.sub.iter().map(|s| !s).collect();
    let mut acc = TensorMatrixElement::one(n);
    for r in 0..n {
        for s in 0..n {
            for (b, &k) in m.cell(r, s).iter().enumerate() {
                if k > 0 {
                    let e = TensorMatrixElement::unit_matrix(n, s, r, &AlgebraElement::basis(b)).tensor_power(k);
                    acc = star_unchecked(pair, &acc, &e);
                }
            }
        }
    }
    Ok(acc.scale(&bang(m, &not_sub)))
}

/// ξ for a colored composition with n parts: the star of (E^{i_k}_{k,k})^{⊗x_k}.
pub fn xi(pair: &GoodPair, obj: &Object) -> TensorMatrixElement {
    let n = obj.len();
    let mut acc = TensorMatrixElement::one(n);
    for (k, &(c, x)) in obj.parts.iter().enumerate() {
        let e = TensorMatrixElement::unit_matrix(n, k, k, &pair.units[c]).tensor_power(x.max(0) as usize);
        acc = star_unchecked(pair, &acc, &e);
    }
    acc
}

/// Basis of V_n^{⊗d}: tuples of (row r, basis element f), mixed radix with
/// the last factor fastest.
pub struct TensorSpace<'a> {
    pub pair: &'a GoodPair,
    pub n: usize,
    pub d: usize,
}

impl TensorSpace<'_> {
    pub fn dim(&self) -> usize {
        (self.n * self.pair.dim()).pow(self.d as u32)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<(usize, usize)> {
        let w = self.pair.dim();
        let mut out = vec![(0, 0); self.d];
        for g in (0..self.d).rev() {
            let x = idx % (self.n * w);
            idx /= self.n * w;
            out[g] = (x / w, x % w);
        }
        out
    }

    pub fn encode(&self, v: &[(usize, usize)]) -> usize {
        let w = self.pair.dim();
        v.iter().fold(0, |acc, &(r, f)| acc * self.n * w + r * w + f)
    }
}

/// τ̃(x): left multiplication on V_n^{⊗d}.
pub fn tau_tilde(pair: &GoodPair, x: &TensorMatrixElement) -> SparseMat {
    let sp = TensorSpace { pair, n: x.n, d: x.d };
    let dim = sp.dim();
    let mut cols = Vec::with_capacity(dim);
    for col in 0..dim {
        let v = sp.decode(col);
        let vodd: Vec<bool> = v.iter().map(|&(_, f)| pair.parity(f).is_odd()).collect();
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for (k, c) in &x.terms {
            if k.iter().zip(&v).any(|(fa, &(r, _))| fa.s != r) {
                continue;
            }
            let kodd = factors_parity(pair, k);
            let mut neg = false;
            for p in 0..x.d {
                for q in 0..p {
                    if kodd[p] && vodd[q] {
                        neg = !neg;
                    }
                }
            }
            let mut partial: Vec<(Vec<(usize, usize)>, Q)> = vec![(Vec::new(), if neg { -c.clone() } else { c.clone() })];
            for (fa, &(_, f)) in k.iter().zip(&v) {
                let prod = pair.product(fa.b, f);
                let mut next = Vec::new();
                for (w, cc) in &partial {
                    for (&g, pc) in &prod.terms {
                        let mut w2 = w.clone();
                        w2.push((fa.r, g));
                        next.push((w2, cc * pc));
                    }
                }
                partial = next;
            }
            for (w, cc) in partial {
                acc.push((sp.encode(&w), cc));
            }
        }
        cols.push(normalize(acc));
    }
    SparseMat { rows: dim, cols }
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

/// Σ_{γ<γ', r_γ' < r_γ} f̄_γ f̄_γ'
fn chi_sign(pair: &GoodPair, v: &[(usize, usize)]) -> bool {
    let mut neg = false;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[b].0 < v[a].0 && pair.parity(v[a].1).is_odd() && pair.parity(v[b].1).is_odd() {
                neg = !neg;
            }
        }
    }
    neg
}

/// τ(f) = χ⁻¹ ∘ eval(f) ∘ χ for a web morphism f : 1^(x) -> 1^(y) of the
/// single-colored pair, where x, y have n parts and total d. The symmetric
/// side is evaluated at rank d so that every tensor slot has its own variable.
pub fn tau_web(ev: &Evaluator, f: &WebMorphism, x: &[usize], y: &[usize]) -> SparseMat {
    let pair = ev.pair;
    let n = x.len();
    let d: usize = x.iter().sum();
    let sp = TensorSpace { pair, n, d };
    let dim = sp.dim();
    let dom = f.dom.clone();
    let cod = f.cod.clone();
    // unreduced part index of each reduced part
    let nonzero = |c: &[usize]| -> Vec<usize> { (0..c.len()).filter(|&a| c[a] > 0).collect() };
    let (xin, yin) = (nonzero(x), nonzero(y));
    let mut cols = Vec::with_capacity(dim);
    for col in 0..dim {
        let v = sp.decode(col);
        let counts: Vec<usize> = (0..n).map(|a| v.iter().filter(|e| e.0 == a).count()).collect();
        if counts != x {
            cols.push(Vec::new());
            continue;
        }
        let monos: Vec<Vec<u16>> = xin.iter().map(|&a| (0..d).filter(|&g| v[g].0 == a).map(|g| ev.var_index(g, v[g].1)).collect()).collect();
        let Some(idx) = ev.compose_index(&dom, &monos) else {
            cols.push(Vec::new());
            continue;
        };
        let sign = if chi_sign(pair, &v) { -Q::one() } else { Q::one() };
        let mut out = Vec::new();
        for (c, diag) in &f.terms {
            for (j, val) in ev.apply_diagram(diag, vec![(idx, c * &sign)]) {
                let parts = ev.decompose(&cod, j);
                let mut w = vec![(usize::MAX, 0); d];
                for (k, m) in parts.iter().enumerate() {
                    for &var in m {
                        let (g, b) = ev.var_info(0, var);
                        assert!(g < d && w[g].0 == usize::MAX, "web action left the multilinear subspace");
                        w[g] = (yin[k], b);
                    }
                }
                let s = if chi_sign(pair, &w) { -val } else { val };
                out.push((sp.encode(&w), s));
            }
        }
        cols.push(normalize(out));
    }
    SparseMat { rows: dim, cols }
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoWitness {
    pub source: Vec<usize>,
    pub target: Vec<usize>,
    pub mu: String,
    pub row: usize,
    pub col: usize,
    pub web: String,
    pub schur: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IsoReport {
    pub algebra: String,
    pub n: usize,
    pub d: usize,
    pub dim: usize,
    pub compared: usize,
    pub equal: usize,
    pub structure_samples: usize,
    pub structure_equal: usize,
    pub first_witness: Option<IsoWitness>,
    pub all_equal: bool,
}

/// All η̃ bases of T^A_a(n,d), grouped by (x, y) ∈ Ω(n,d)².
pub fn schur_basis(pair: &GoodPair, n: usize, d: usize) -> Vec<(Vec<usize>, Vec<usize>, Vec<MatrixComposition>)> {
    let p = pair.collapse();
    let comps = compositions(n, d);
    let mut out = Vec::new();
    for x in &comps {
        for y in &comps {
            let src = Object::mono(0, &x.iter().map(|&a| a as i64).collect::<Vec<_>>());
            let dst = Object::mono(0, &y.iter().map(|&a| a as i64).collect::<Vec<_>>());
            out.push((x.clone(), y.clone(), enum_m(&p, &src, &dst)));
        }
    }
    out
}

/// dim T^A_a(n,d) = Σ_{x,y ∈ Ω(n,d)} |M(1^(x), 1^(y))|.
pub fn schur_dim(pair: &GoodPair, n: usize, d: usize) -> usize {
    schur_basis(pair, n, d).iter().map(|(_, _, ms)| ms.len()).sum()
}

/// Compares τ(η_μ) with τ̃(η̃_μ) for every μ, then checks a sample of
/// structure constants computed in the web category against products in
/// T^A_a(n,d).
pub fn check_web_schur_iso(pair: &GoodPair, n: usize, d: usize, max_samples: usize) -> Result<IsoReport, ReduceError> {
    let p = pair.collapse();
    let ev = Evaluator::new(&p, d.max(1));
    let groups = schur_basis(pair, n, d);
    let mut report = IsoReport {
        algebra: pair.name.clone(),
        n,
        d,
        dim: groups.iter().map(|g| g.2.len()).sum(),
        compared: 0,
        equal: 0,
        structure_samples: 0,
        structure_equal: 0,
        first_witness: None,
        all_equal: true,
    };
    let mut webs: HashMap<(Vec<usize>, Vec<usize>), Vec<WebMorphism>> = HashMap::new();
    let mut tildes: HashMap<(Vec<usize>, Vec<usize>), Vec<TensorMatrixElement>> = HashMap::new();
    for (x, y, ms) in &groups {
        let mut ws = Vec::new();
        let mut ts = Vec::new();
        for m in ms {
            let w = eta(&p, m, Flavor::A)?;
            let t = eta_tilde(&p, m, n).map_err(|e| ReduceError::InvalidParams(e.to_string()))?;
            let a = tau_web(&ev, &w, x, y);
            let b = tau_tilde(&p, &t);
            report.compared += 1;
            match a.first_difference(&b) {
                None => report.equal += 1,
                Some((row, col, u, v)) => {
                    report.all_equal = false;
                    report.first_witness.get_or_insert(IsoWitness {
                        source: x.clone(),
                        target: y.clone(),
                        mu: m.display(&p),
                        row,
                        col,
                        web: fmt_q(&u),
                        schur: fmt_q(&v),
                    });
                }
            }
            ws.push(w);
            ts.push(t);
        }
        webs.insert((x.clone(), y.clone()), ws);
        tildes.insert((x.clone(), y.clone()), ts);
    }
    let reducer = Reducer::new(&p);
    let mut samples = 0;
    'outer: for (x, y, ms_top) in &groups {
        for (x0, y0, ms_bot) in &groups {
            if y0 != x {
                continue;
            }
            let target_basis = &tildes[&(x0.clone(), y.clone())];
            for a in 0..ms_top.len() {
                for b in 0..ms_bot.len() {
                    if samples >= max_samples {
                        break 'outer;
                    }
                    samples += 1;
                    let fw = &webs[&(x.clone(), y.clone())][a];
                    let gw = &webs[&(x0.clone(), x.clone())][b];
                    let prod = compose(fw, gw)?;
                    let web_coords = reducer.reduce(&prod)?.coords.entries;
                    let ft = &tildes[&(x.clone(), y.clone())][a];
                    let gt = &tildes[&(x0.clone(), x.clone())][b];
                    let st = schur_mult(&p, ft, gt).map_err(|e| ReduceError::InvalidParams(e.to_string()))?;
                    let schur_coords = express(&st, target_basis);
                    if schur_coords.as_ref() == Some(&web_coords) {
                        report.structure_equal += 1;
                    } else {
                        report.all_equal = false;
                    }
                }
            }
        }
    }
    report.structure_samples = samples;
    Ok(report)
}

/// Coordinates of x in the span of `basis`, if it lies there.
pub fn express(x: &TensorMatrixElement, basis: &[TensorMatrixElement]) -> Option<Vec<(usize, Q)>> {
    let mut keys: HashMap<Vec<Factor>, usize> = HashMap::new();
    let mut vec_of = |e: &TensorMatrixElement| -> Vec<(usize, Q)> {
        let mut v: Vec<(usize, Q)> = e
            .terms
            .iter()
            .map(|(k, c)| {
                let n = keys.len();
                (*keys.entry(k.clone()).or_insert(n), c.clone())
            })
            .collect();
        v.sort_by_key(|t| t.0);
        v
    };
    let mut ech = Echelon::tracking();
    for b in basis {
        let v = vec_of(b);
        ech.insert(v);
    }
    let v = vec_of(x);
    ech.express(v).map(|mut c| {
        c.sort_by_key(|t| t.0);
        c
    })
}

/// Rank of the η̃ elements of T^A_a(n,d) as vectors in M_n(A)^{⊗d}.
pub fn schur_basis_rank(pair: &GoodPair, n: usize, d: usize) -> usize {
    let p = pair.collapse();
    let mut keys: HashMap<Vec<Factor>, usize> = HashMap::new();
    let mut ech = Echelon::new();
    for (_, _, ms) in schur_basis(pair, n, d) {
        for m in ms {
            let t = eta_tilde(&p, &m, n).expect("enumerated compositions are valid");
            let mut v: Vec<(usize, Q)> = t
                .terms
                .iter()
                .map(|(k, c)| {
                    let l = keys.len();
                    (*keys.entry(k.clone()).or_insert(l), c.clone())
                })
                .collect();
            v.sort_by_key(|e| e.0);
            ech.insert(v);
        }
    }
    ech.rank()
}
