//! The wreath product superalgebra S_d ≀ A, its action on V_n^{⊗d}, the
//! comparison with thin-strand webs, and Schur–Weyl surjectivity.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{enum_m, Object};
use crate::exact::{fmt_q, Echelon, SparseMat, Q};
use crate::reduce::{ReduceError, Reducer};
use crate::schur::{eta_tilde, schur_basis, tau_tilde, TensorSpace};
use crate::superalgebra::GoodPair;
use crate::webcat::{compose, sum, tensor_all, thin_permutation, WebMorphism};

/// A term σ ⊗ f_1 ⊗ … ⊗ f_d: `sigma[k]` is the image of k, `f[k]` a basis
/// element of A.
pub type WreathTerm = (Vec<usize>, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathElement {
    pub d: usize,
    pub terms: BTreeMap<WreathTerm, Q>,
}

fn odd_mask(pair: &GoodPair, f: &[usize]) -> Vec<bool> {
    f.iter().map(|&b| pair.parity(b).is_odd()).collect()
}

/// Koszul sign of reordering so that position k holds old entry `perm[k]`.
fn place_sign(odd: &[bool], perm: &[usize]) -> bool {
    let mut neg = false;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] && odd[perm[a]] && odd[perm[b]] {
                neg = !neg;
            }
        }
    }
    neg
}

pub fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    fn rec(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == cur.len() {
            out.push(cur.clone());
            return;
        }
        for i in k..cur.len() {
            cur.swap(k, i);
            rec(k + 1, cur, out);
            cur.swap(k, i);
        }
    }
    rec(0, &mut cur, &mut out);
    out.sort();
    out
}

fn tuples(base: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..d {
        out = out.into_iter().flat_map(|t| (0..base).map(move |b| [t.clone(), vec![b]].concat())).collect();
    }
    out
}

impl WreathElement {
    pub fn zero(d: usize) -> Self {
        WreathElement { d, terms: BTreeMap::new() }
    }

    pub fn basis(sigma: Vec<usize>, f: Vec<usize>) -> Self {
        let d = sigma.len();
        let mut terms = BTreeMap::new();
        terms.insert((sigma, f), Q::one());
        WreathElement { d, terms }
    }

    pub fn identity(pair: &GoodPair, d: usize) -> Self {
        let mut x = Self::zero(d);
        for f in tuples(pair.dim(), d) {
            let c = f.iter().fold(Q::one(), |acc, &b| {
                let u = pair.unit();
                acc * u.terms.get(&b).cloned().unwrap_or_else(Q::zero)
            });
            x.add_term(((0..d).collect(), f), c);
        }
        x
    }

    pub fn add_term(&mut self, key: WreathTerm, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
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
        let mut out = Self::zero(self.d);
        for (k, x) in &self.terms {
            out.add_term(k.clone(), x * c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn parity(&self, pair: &GoodPair) -> Option<bool> {
        let mut it = self.terms.keys().map(|(_, f)| odd_mask(pair, f).iter().filter(|&&o| o).count() % 2 == 1);
        let p = it.next().unwrap_or(false);
        it.all(|x| x == p).then_some(p)
    }
}

/// Colors of the source and target thin objects of a term.
pub fn term_objects(pair: &GoodPair, t: &WreathTerm) -> (Vec<usize>, Vec<usize>) {
    let (sigma, f) = t;
    let src = f.iter().map(|&b| pair.basis[b].right).collect();
    let mut dst = vec![0; f.len()];
    for (k, &b) in f.iter().enumerate() {
        dst[sigma[k]] = pair.basis[b].left;
    }
    (src, dst)
}

/// (σ⊗f)(τ⊗g) = ± στ ⊗ f_{τ(1)}g_1 ⊗ … ⊗ f_{τ(d)}g_d, with the sign of the
/// signed place permutation of f by τ and the Koszul sign of the factorwise
/// product in A^{⊗d}.
pub fn wreath_mult(pair: &GoodPair, x: &WreathElement, y: &WreathElement) -> WreathElement {
    assert_eq!(x.d, y.d, "wreath elements of different degree");
    let d = x.d;
    let mut out = WreathElement::zero(d);
    for ((sigma, f), cx) in &x.terms {
        let fodd = odd_mask(pair, f);
        for ((tau, g), cy) in &y.terms {
            let godd = odd_mask(pair, g);
            let ft: Vec<usize> = tau.iter().map(|&t| f[t]).collect();
            let ftodd: Vec<bool> = tau.iter().map(|&t| fodd[t]).collect();
            let mut neg = place_sign(&fodd, tau);
            for p in 0..d {
                for q in 0..p {
                    if ftodd[p] && godd[q] {
                        neg = !neg;
                    }
                }
            }
            let st: Vec<usize> = tau.iter().map(|&t| sigma[t]).collect();
            let c = if neg { -(cx * cy) } else { cx * cy };
            let mut partial: Vec<(Vec<usize>, Q)> = vec![(Vec::new(), c)];
            for k in 0..d {
                let prod = pair.product(ft[k], g[k]);
                let mut next = Vec::new();
                for (h, c) in &partial {
                    for (&b, pc) in &prod.terms {
                        let mut h2 = h.clone();
                        h2.push(b);
                        next.push((h2, c * pc));
                    }
                }
                partial = next;
            }
            for (h, c) in partial {
                out.add_term((st.clone(), h), c);
            }
        }
    }
    out
}

/// All basis terms σ ⊗ f of S_d ≀ A.
pub fn wreath_basis(pair: &GoodPair, d: usize) -> Vec<WreathTerm> {
    let fs = tuples(pair.dim(), d);
    permutations(d).into_iter().flat_map(|s| fs.iter().map(move |f| (s.clone(), f.clone()))).collect()
}

pub fn wreath_dim(pair: &GoodPair, d: usize) -> usize {
    (1..=d).product::<usize>() * pair.dim().pow(d as u32)
}

/// ρ(x) on V_n^{⊗d}: v ↦ (-1)^{|x||v|} v.x, where S_d permutes factors with
/// the Koszul sign and A^{⊗d} acts by right multiplication on each factor.
/// The sign makes ρ(x) super-commute with the Schur algebra action, and
/// ρ(xy) = (-1)^{|x||y|} ρ(y)ρ(x).
pub fn rho(pair: &GoodPair, x: &WreathElement, n: usize) -> SparseMat {
    let sp = TensorSpace { pair, n, d: x.d };
    let dim = sp.dim();
    let d = x.d;
    let mut cols = Vec::with_capacity(dim);
    for col in 0..dim {
        let v = sp.decode(col);
        let vodd: Vec<bool> = v.iter().map(|&(_, g)| pair.parity(g).is_odd()).collect();
        let mut acc: Vec<(usize, Q)> = Vec::new();
        for ((sigma, f), c) in &x.terms {
            let w: Vec<(usize, usize)> = sigma.iter().map(|&s| v[s]).collect();
            let wodd: Vec<bool> = sigma.iter().map(|&s| vodd[s]).collect();
            let fodd = odd_mask(pair, f);
            let mut neg = place_sign(&vodd, sigma);
            for p in 0..d {
                for q in 0..=p {
                    if fodd[p] && wodd[q] {
                        neg = !neg;
                    }
                }
            }
            let mut partial: Vec<(Vec<(usize, usize)>, Q)> = vec![(Vec::new(), if neg { -c.clone() } else { c.clone() })];
            for k in 0..d {
                let prod = pair.product(w[k].1, f[k]);
                let mut next = Vec::new();
                for (u, cc) in &partial {
                    for (&b, pc) in &prod.terms {
                        let mut u2 = u.clone();
                        u2.push((w[k].0, b));
                        next.push((u2, cc * pc));
                    }
                }
                partial = next;
            }
            for (u, cc) in partial {
                acc.push((sp.encode(&u), cc));
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

/// The thin-strand web σ ∘ (f_1 ⊗ … ⊗ f_d) of a basis term.
pub fn term_to_web(pair: &GoodPair, t: &WreathTerm) -> Result<WebMorphism, ReduceError> {
    let (sigma, f) = t;
    let coupons = f.iter().map(|&b| WebMorphism::basis_coupon(pair, b, 1)).collect::<Result<Vec<_>, _>>()?;
    let mid: Vec<usize> = f.iter().map(|&b| pair.basis[b].left).collect();
    let bottom = if coupons.is_empty() { WebMorphism::id(&Object::empty()) } else { tensor_all(&coupons) };
    Ok(compose(&thin_permutation(&mid, sigma), &bottom)?)
}

pub fn element_to_web(pair: &GoodPair, x: &WreathElement, src: &[usize], dst: &[usize]) -> Result<WebMorphism, ReduceError> {
    let mut parts = Vec::new();
    for (t, c) in &x.terms {
        let (s, e) = term_objects(pair, t);
        if s == src && e == dst {
            parts.push(term_to_web(pair, t)?.scale(c));
        }
    }
    Ok(sum(&Object::thin(src), &Object::thin(dst), &parts)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathWitness {
    pub left: String,
    pub right: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WreathReport {
    pub algebra: String,
    pub d: usize,
    pub wreath_dim: usize,
    pub web_dim: usize,
    pub image_rank: usize,
    pub samples: usize,
    pub samples_equal: usize,
    pub first_witness: Option<WreathWitness>,
    pub all_equal: bool,
}

fn fmt_term(pair: &GoodPair, t: &WreathTerm) -> String {
    let s: Vec<String> = t.0.iter().map(|x| (x + 1).to_string()).collect();
    let f: Vec<&str> = t.1.iter().map(|&b| pair.basis[b].id.as_str()).collect();
    format!("[{}]⊗{}", s.join(","), f.join("⊗"))
}

/// Compares S_d ≀ A with the thin-strand endomorphism algebra: dimensions,
/// bijectivity of the basis map, and multiplicativity on up to
/// `max_samples` composable basis pairs.
pub fn wreath_from_web(pair: &GoodPair, d: usize, max_samples: usize) -> Result<WreathReport, ReduceError> {
    let reducer = Reducer::new(pair);
    let colorings = tuples(pair.ncolors(), d);
    let mut web_dim = 0;
    for i in &colorings {
        for j in &colorings {
            web_dim += enum_m(pair, &Object::thin(i), &Object::thin(j)).len();
        }
    }
    let basis = wreath_basis(pair, d);
    let mut by_block: BTreeMap<(Vec<usize>, Vec<usize>), Vec<WreathTerm>> = BTreeMap::new();
    for t in &basis {
        by_block.entry(term_objects(pair, t)).or_default().push(t.clone());
    }
    let mut image_rank = 0;
    for ((src, dst), ts) in &by_block {
        let mut ech = Echelon::new();
        for t in ts {
            let m = term_to_web(pair, t)?;
            debug_assert_eq!(m.dom, Object::thin(src));
            debug_assert_eq!(m.cod, Object::thin(dst));
            ech.insert(reducer.reduce(&m)?.coords.entries);
        }
        image_rank += ech.rank();
    }
    let mut pairs = Vec::new();
    for x in &basis {
        let (xs, _) = term_objects(pair, x);
        for y in &basis {
            let (_, yd) = term_objects(pair, y);
            if yd == xs {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    let stride = pairs.len().div_ceil(max_samples.max(1)).max(1);
    let mut report = WreathReport {
        algebra: pair.name.clone(),
        d,
        wreath_dim: wreath_dim(pair, d),
        web_dim,
        image_rank,
        samples: 0,
        samples_equal: 0,
        first_witness: None,
        all_equal: true,
    };
    for (x, y) in pairs.iter().step_by(stride) {
        report.samples += 1;
        let web = compose(&term_to_web(pair, x)?, &term_to_web(pair, y)?)?;
        let prod = wreath_mult(pair, &WreathElement::basis(x.0.clone(), x.1.clone()), &WreathElement::basis(y.0.clone(), y.1.clone()));
        let (src, _) = term_objects(pair, y);
        let (_, dst) = term_objects(pair, x);
        let alg = element_to_web(pair, &prod, &src, &dst)?;
        let a = reducer.reduce(&web)?.coords.entries;
        let b = reducer.reduce(&alg)?.coords.entries;
        if a == b {
            report.samples_equal += 1;
        } else {
            report.all_equal = false;
            report.first_witness.get_or_insert_with(|| WreathWitness {
                left: fmt_term(pair, x),
                right: fmt_term(pair, y),
                detail: format!(
                    "web {:?} vs wreath {:?}",
                    a.iter().map(|(i, c)| format!("{i}:{}", fmt_q(c))).collect::<Vec<_>>(),
                    b.iter().map(|(i, c)| format!("{i}:{}", fmt_q(c))).collect::<Vec<_>>()
                ),
            });
        }
    }
    report.all_equal &= report.web_dim == report.wreath_dim && report.image_rank == report.wreath_dim;
    Ok(report)
}

/// Dimension of the super-commutant of a family of homogeneous operators:
/// maps φ of either parity with φX = (-1)^{|φ||X|} Xφ for every X.
pub fn supercommutant_dim(dim: usize, vparity: &[bool], ops: &[(SparseMat, bool)]) -> (usize, usize) {
    let mut result = [0, 0];
    for (p, out) in result.iter_mut().enumerate() {
        let odd_phi = p == 1;
        // unknowns: entries (i, j) with parity(i) + parity(j) = p
        let mut var = vec![usize::MAX; dim * dim];
        let mut nvars = 0;
        for i in 0..dim {
            for j in 0..dim {
                if (vparity[i] != vparity[j]) == odd_phi {
                    var[i * dim + j] = nvars;
                    nvars += 1;
                }
            }
        }
        let mut eqs: Vec<Vec<(usize, Q)>> = Vec::new();
        for (x, xodd) in ops {
            let s = if odd_phi && *xodd { Q::one() } else { -Q::one() };
            let xt = x.transpose();
            // (φX)_{ij} = Σ_k φ_{ik} X_{kj};  (Xφ)_{ij} = Σ_k X_{ik} φ_{kj}
            for i in 0..dim {
                for j in 0..dim {
                    let mut row: Vec<(usize, Q)> = Vec::new();
                    for (k, c) in &x.cols[j] {
                        let v = var[i * dim + k];
                        if v != usize::MAX {
                            row.push((v, c.clone()));
                        }
                    }
                    for (k, c) in &xt.cols[i] {
                        let v = var[k * dim + j];
                        if v != usize::MAX {
                            row.push((v, c * &s));
                        }
                    }
                    if !row.is_empty() {
                        eqs.push(row);
                    }
                }
            }
        }
        *out = crate::exact::nullity(nvars, eqs);
    }
    (result[0], result[1])
}

#[derive(Clone, Debug, Serialize)]
pub struct SchurWeylReport {
    pub algebra: String,
    pub n: usize,
    pub d: usize,
    pub image_rank: usize,
    pub commutant_dim: usize,
    pub commutant_even: usize,
    pub commutant_odd: usize,
    pub image_in_commutant: bool,
    pub asserted: bool,
    pub equal: bool,
}

impl SchurWeylReport {
    /// Pass unless the pair is flagged semisimple and the check failed.
    pub fn passed(&self) -> bool {
        !self.asserted || (self.equal && self.image_in_commutant)
    }
}

/// Compares the image of ρ(S_d ≀ A) with the super-commutant of the Schur
/// algebra action τ̃(T^A_a(n,d)) on V_n^{⊗d}.
pub fn schur_weyl_check(pair: &GoodPair, n: usize, d: usize) -> SchurWeylReport {
    let p = pair.collapse();
    let sp = TensorSpace { pair: &p, n, d };
    let dim = sp.dim();
    let vparity: Vec<bool> = (0..dim).map(|i| sp.decode(i).iter().filter(|&&(_, f)| p.parity(f).is_odd()).count() % 2 == 1).collect();
    let mut ops = Vec::new();
    for (_, _, ms) in schur_basis(pair, n, d) {
        for m in ms {
            let t = eta_tilde(&p, &m, n).expect("enumerated compositions are valid");
            let odd = m.parity(&p).is_odd();
            ops.push((tau_tilde(&p, &t), odd));
        }
    }
    let (ce, co) = supercommutant_dim(dim, &vparity, &ops);
    let mut ech = Echelon::new();
    let mut inside = true;
    for t in wreath_basis(&p, d) {
        let odd = odd_mask(&p, &t.1).iter().filter(|&&o| o).count() % 2 == 1;
        let r = rho(&p, &WreathElement::basis(t.0, t.1), n);
        for (x, xodd) in &ops {
            let lhs = r.mul(x);
            let rhs = x.mul(&r);
            let ok = if odd && *xodd { lhs == rhs.scale(&-Q::one()) } else { lhs == rhs };
            inside &= ok;
        }
        ech.insert(r.vectorize());
    }
    let image_rank = ech.rank();
    SchurWeylReport {
        algebra: pair.name.clone(),
        n,
        d,
        image_rank,
        commutant_dim: ce + co,
        commutant_even: ce,
        commutant_odd: co,
        image_in_commutant: inside,
        asserted: pair.semisimple,
        equal: image_rank == ce + co,
    }
}
