//! The idempotented category U̇(gl_n(A)): weights, generator words, the
//! functor W_n into single-colored webs, and relation checks through eval.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::combinatorics::{enum_m, Object};
use crate::eval::Evaluator;
use crate::exact::{fmt_q, q, q_frac, Echelon, SparseMat, Q};
use crate::reduce::{RelationTally, Witness};
use crate::superalgebra::{AlgebraElement, GoodPair};
use crate::webcat::{compose, e_generator, WebError, WebMorphism};

pub type Weight = Vec<i64>;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum UdotError {
    #[error("index {0} out of range for n = {1}")]
    Index(usize, usize),
    #[error("weight entries must be nonnegative")]
    NegativeWeight,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Web(#[from] WebError),
}

/// E^f_{r,s} with 0-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct UdotGenerator {
    pub f: AlgebraElement,
    pub r: usize,
    pub s: usize,
}

/// A composite E^{f_1}_{r_1,s_1} ∘ … ∘ E^{f_k}_{r_k,s_k} λ; the last
/// generator acts first.
#[derive(Clone, Debug, PartialEq)]
pub struct UdotWord {
    pub lambda: Weight,
    pub gens: Vec<UdotGenerator>,
}

fn step(w: &[i64], r: usize, s: usize) -> Weight {
    let mut out = w.to_vec();
    out[r] += 1;
    out[s] -= 1;
    out
}

impl UdotWord {
    pub fn new(lambda: Weight, gens: Vec<UdotGenerator>) -> Result<Self, UdotError> {
        if lambda.iter().any(|&x| x < 0) {
            return Err(UdotError::NegativeWeight);
        }
        let n = lambda.len();
        for g in &gens {
            for i in [g.r, g.s] {
                if i >= n {
                    return Err(UdotError::Index(i + 1, n));
                }
            }
        }
        Ok(UdotWord { lambda, gens })
    }

    /// Weights after each generator, starting from λ; `None` once a weight
    /// leaves Λ_n.
    pub fn weights(&self) -> Vec<Option<Weight>> {
        let mut cur = Some(self.lambda.clone());
        let mut out = vec![cur.clone()];
        for g in self.gens.iter().rev() {
            cur = cur.and_then(|w| {
                let nw = step(&w, g.r, g.s);
                nw.iter().all(|&x| x >= 0).then_some(nw)
            });
            out.push(cur.clone());
        }
        out
    }

    pub fn codomain(&self) -> Option<Weight> {
        self.weights().pop().flatten()
    }

    /// Formal codomain, possibly with negative entries.
    pub fn formal_codomain(&self) -> Weight {
        self.gens.iter().rev().fold(self.lambda.clone(), |w, g| step(&w, g.r, g.s))
    }

    /// Parses `E(f;r,s) ∘ E(g;p,q) @ lambda=(a,b)` with 1-based indices;
    /// `*` is accepted in place of `∘`.
    pub fn parse(pair: &GoodPair, text: &str) -> Result<Self, UdotError> {
        let (word, lam) = text.split_once('@').ok_or_else(|| UdotError::Parse("missing `@ lambda=(...)`".into()))?;
        let lam = lam.trim();
        let lam = lam.strip_prefix("lambda").map(|s| s.trim_start().trim_start_matches('=')).unwrap_or(lam).trim();
        let inner = lam.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| UdotError::Parse(format!("bad weight `{lam}`")))?;
        let lambda: Weight = inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| UdotError::Parse(format!("bad weight entry `{x}`"))))
            .collect::<Result<_, _>>()?;
        let mut gens = Vec::new();
        for g in word.split(['∘', '*']).map(str::trim).filter(|s| !s.is_empty()) {
            let body = g
                .strip_prefix("E(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| UdotError::Parse(format!("bad generator `{g}`")))?;
            let (f, rs) = body.rsplit_once(';').ok_or_else(|| UdotError::Parse(format!("bad generator `{g}`")))?;
            let (r, s) = rs.split_once(',').ok_or_else(|| UdotError::Parse(format!("bad indices in `{g}`")))?;
            let idx = |x: &str| -> Result<usize, UdotError> {
                match x.trim().parse::<usize>() {
                    Ok(v) if v >= 1 => Ok(v - 1),
                    _ => Err(UdotError::Parse(format!("bad index `{x}`"))),
                }
            };
            let f = pair.parse_element(f).map_err(UdotError::Parse)?;
            gens.push(UdotGenerator { f, r: idx(r)?, s: idx(s)? });
        }
        UdotWord::new(lambda, gens)
    }
}

fn object(w: &[i64]) -> Object {
    Object::mono(0, w)
}

/// W_n(E^f_{r,s}λ) = e^{(f,1)}_{[r,s],λ}, extended linearly in f. Weights
/// leaving Λ_n give the zero morphism.
pub fn w_generator(pair: &GoodPair, g: &UdotGenerator, lambda: &[i64]) -> Result<WebMorphism, UdotError> {
    let cod = step(lambda, g.r, g.s);
    if lambda.iter().chain(&cod).any(|&x| x < 0) || g.f.is_zero() {
        return Ok(WebMorphism::zero(&object(lambda), &object(&cod)));
    }
    let mut acc = WebMorphism::zero(&object(lambda), &object(&cod));
    // split into homogeneous parts so that each coupon has a parity
    let mut even = AlgebraElement::zero();
    let mut odd = AlgebraElement::zero();
    for (&b, c) in &g.f.terms {
        if pair.parity(b).is_odd() {
            odd.add_term(b, c.clone());
        } else {
            even.add_term(b, c.clone());
        }
    }
    for part in [even, odd] {
        if !part.is_zero() {
            acc = acc.add(&e_generator(pair, g.r, g.s, lambda, &part, 1)?)?;
        }
    }
    Ok(acc)
}

pub fn w_n(pair: &GoodPair, word: &UdotWord) -> Result<WebMorphism, UdotError> {
    let mut cur = WebMorphism::id(&object(&word.lambda));
    let mut w = word.lambda.clone();
    for g in word.gens.iter().rev() {
        let m = w_generator(pair, g, &w)?;
        w = step(&w, g.r, g.s);
        cur = compose(&m, &cur)?;
    }
    Ok(cur)
}

pub const UDOT_RELATIONS: &[&str] = &["udot-scalar", "udot-additivity", "udot-weight", "udot-commutator", "udot-odd-square"];

#[derive(Clone, Debug, Serialize)]
pub struct UdotReport {
    pub algebra: String,
    pub n: usize,
    pub bound: i64,
    pub relations: Vec<RelationTally>,
    pub instances: usize,
    pub equal: usize,
    pub all_equal: bool,
}

type GenKey = (Weight, usize, usize, AlgebraElement);

struct Sweep<'a> {
    pair: &'a GoodPair,
    evaluators: HashMap<usize, Evaluator<'a>>,
    cache: HashMap<GenKey, Arc<SparseMat>>,
    tallies: Vec<RelationTally>,
}

impl<'a> Sweep<'a> {
    fn evaluator(&mut self, rank: usize) -> &Evaluator<'a> {
        let pair = self.pair;
        self.evaluators.entry(rank).or_insert_with(|| Evaluator::new(pair, rank))
    }

    fn dim(&mut self, rank: usize, w: &[i64]) -> usize {
        if w.iter().any(|&x| x < 0) {
            0
        } else {
            self.evaluator(rank).object_dim(&object(w))
        }
    }

    /// eval(W_n(E^f_{r,s}λ)) at the given rank.
    fn generator(&mut self, rank: usize, lambda: &[i64], r: usize, s: usize, f: &AlgebraElement) -> Result<Arc<SparseMat>, UdotError> {
        let key = (lambda.to_vec(), r, s, f.clone());
        if let Some(m) = self.cache.get(&key) {
            return Ok(m.clone());
        }
        let cod = step(lambda, r, s);
        let (rows, cols) = (self.dim(rank, &cod), self.dim(rank, lambda));
        let m = if rows == 0 || cols == 0 {
            SparseMat::zero(rows, cols)
        } else {
            let web = w_generator(self.pair, &UdotGenerator { f: f.clone(), r, s }, lambda)?;
            self.evaluator(rank).eval(&web)
        };
        let m = Arc::new(m);
        self.cache.insert(key, m.clone());
        Ok(m)
    }

    /// eval(W_n(word)) as a product of cached generator matrices.
    fn word(&mut self, rank: usize, lambda: &[i64], gens: &[(&AlgebraElement, usize, usize)]) -> Result<SparseMat, UdotError> {
        let mut w = lambda.to_vec();
        let d = self.dim(rank, lambda);
        let mut cur = SparseMat::identity(d);
        for &(f, r, s) in gens.iter().rev() {
            let g = self.generator(rank, &w, r, s, f)?;
            w = step(&w, r, s);
            cur = g.mul(&cur);
        }
        Ok(cur)
    }

    fn check(&mut self, rel: usize, params: String, rank: usize, dom: &[i64], cod: &[i64], lhs: SparseMat, rhs: SparseMat) {
        let t = &mut self.tallies[rel];
        t.instances += 1;
        match lhs.first_difference(&rhs) {
            None => t.equal += 1,
            Some((row, col, a, b)) => {
                t.unequal += 1;
                if t.first_witness.is_none() {
                    let ev = self.evaluator(rank);
                    let w = Witness {
                        relation: UDOT_RELATIONS[rel].to_string(),
                        params,
                        row,
                        col,
                        row_basis: ev.describe_basis(&object(cod), row),
                        col_basis: ev.describe_basis(&object(dom), col),
                        lhs: fmt_q(&a),
                        rhs: fmt_q(&b),
                    };
                    self.tallies[rel].first_witness = Some(w);
                }
            }
        }
    }
}

fn weights(n: usize, bound: i64) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|w: Weight| (0..=bound).map(move |x| [w.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Checks relations (1)–(5) of U̇(gl_n(A)) for all weights with entries at
/// most `bound`, all indices and all pairs of basis elements, evaluating
/// W_n at rank equal to the total weight (at least 1). Additivity is checked
/// for pairs of equal parity so that f + g is homogeneous.
pub fn verify_udot(pair: &GoodPair, n: usize, bound: i64) -> Result<UdotReport, UdotError> {
    let p = pair.collapse();
    let pair = &p;
    let mut sw = Sweep {
        pair,
        evaluators: HashMap::new(),
        cache: HashMap::new(),
        tallies: UDOT_RELATIONS
            .iter()
            .map(|r| RelationTally { relation: r.to_string(), instances: 0, equal: 0, unequal: 0, first_witness: None })
            .collect(),
    };
    let dim = pair.dim();
    let basis: Vec<AlgebraElement> = (0..dim).map(AlgebraElement::basis).collect();
    let id = |b: usize| pair.basis[b].id.clone();
    let unit = pair.unit();
    for lam in weights(n, bound) {
        let ls = format!("{lam:?}");
        let rank = lam.iter().sum::<i64>().max(1) as usize;
        for r in 0..n {
            for s in 0..n {
                let cod = step(&lam, r, s);
                for (b, f) in basis.iter().enumerate() {
                    let one = sw.word(rank, &lam, &[(f, r, s)])?;
                    for k in [q(3), q_frac(-1, 2)] {
                        let lhs = sw.word(rank, &lam, &[(&f.scale(&k), r, s)])?;
                        let params = format!("lambda={ls} r={} s={} f={} k={}", r + 1, s + 1, id(b), fmt_q(&k));
                        sw.check(0, params, rank, &lam, &cod, lhs, one.scale(&k));
                    }
                    for (c, g) in basis.iter().enumerate() {
                        if pair.parity(b) != pair.parity(c) {
                            continue;
                        }
                        let lhs = sw.word(rank, &lam, &[(&f.add(g), r, s)])?;
                        let rhs = one.add(&sw.word(rank, &lam, &[(g, r, s)])?);
                        sw.check(1, format!("lambda={ls} r={} s={} f={} g={}", r + 1, s + 1, id(b), id(c)), rank, &lam, &cod, lhs, rhs);
                    }
                    if pair.parity(b).is_odd() {
                        let cod2 = step(&cod, r, s);
                        let lhs = sw.word(rank, &lam, &[(f, r, s), (f, r, s)])?;
                        let rhs = if r == s {
                            sw.word(rank, &lam, &[(&pair.multiply(f, f), r, s)])?
                        } else {
                            SparseMat::zero(lhs.rows, lhs.ncols())
                        };
                        sw.check(4, format!("lambda={ls} r={} s={} f={}", r + 1, s + 1, id(b)), rank, &lam, &cod2, lhs, rhs);
                    }
                }
            }
            let lhs = sw.word(rank, &lam, &[(&unit, r, r)])?;
            let d = lhs.ncols();
            let rhs = SparseMat::identity(d).scale(&Q::from_integer(lam[r].into()));
            sw.check(2, format!("lambda={ls} r={}", r + 1), rank, &lam, &lam, lhs, rhs);
        }
        for pp in 0..n {
            for qq in 0..n {
                for r in 0..n {
                    for s in 0..n {
                        let cod = step(&step(&lam, r, s), pp, qq);
                        for (b, f) in basis.iter().enumerate() {
                            for (c, g) in basis.iter().enumerate() {
                                let sign = if pair.parity(b).is_odd() && pair.parity(c).is_odd() { q(-1) } else { q(1) };
                                let fg = sw.word(rank, &lam, &[(f, pp, qq), (g, r, s)])?;
                                let gf = sw.word(rank, &lam, &[(g, r, s), (f, pp, qq)])?;
                                let lhs = fg.sub(&gf.scale(&sign));
                                let mut rhs = SparseMat::zero(lhs.rows, lhs.ncols());
                                if qq == r {
                                    rhs = rhs.add(&sw.word(rank, &lam, &[(&pair.multiply(f, g), pp, s)])?);
                                }
                                if pp == s {
                                    rhs = rhs.sub(&sw.word(rank, &lam, &[(&pair.multiply(g, f), r, qq)])?.scale(&sign));
                                }
                                let params = format!("lambda={ls} p={} q={} r={} s={} f={} g={}", pp + 1, qq + 1, r + 1, s + 1, id(b), id(c));
                                sw.check(3, params, rank, &lam, &cod, lhs, rhs);
                            }
                        }
                    }
                }
            }
        }
    }
    let instances = sw.tallies.iter().map(|t| t.instances).sum();
    let equal = sw.tallies.iter().map(|t| t.equal).sum();
    Ok(UdotReport { algebra: p.name.clone(), n, bound, relations: sw.tallies, instances, equal, all_equal: instances == equal })
}

#[derive(Clone, Debug, Serialize)]
pub struct FullnessEntry {
    pub lambda: Weight,
    pub mu: Weight,
    pub image_rank: usize,
    pub hom_dim: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct FullnessReport {
    pub algebra: String,
    pub n: usize,
    pub d: usize,
    pub entries: Vec<FullnessEntry>,
    pub full: bool,
}

/// Closes the evaluated images of E^b_{r,s} (b a basis element) under
/// composition, for weights of Λ_n of total d, and compares the rank of each
/// hom space of the image with |𝓜(λ, μ)|. Evaluation at rank d is faithful on
/// these hom spaces, so equality everywhere means W_n is full there.
pub fn fullness_check(pair: &GoodPair, n: usize, d: usize) -> Result<FullnessReport, UdotError> {
    let p = pair.collapse();
    let pair = &p;
    let mut sw = Sweep { pair, evaluators: HashMap::new(), cache: HashMap::new(), tallies: Vec::new() };
    let rank = d.max(1);
    let basis: Vec<AlgebraElement> = (0..pair.dim()).map(AlgebraElement::basis).collect();
    let ws: Vec<Weight> = weights(n, d as i64).into_iter().filter(|w| w.iter().sum::<i64>() == d as i64).collect();
    let mut entries = Vec::new();
    for lam in &ws {
        let mut spans: HashMap<Weight, Echelon> = HashMap::new();
        let id = SparseMat::identity(sw.dim(rank, lam));
        spans.entry(lam.clone()).or_default().insert(id.vectorize());
        let mut queue = vec![(lam.clone(), id)];
        while let Some((mu, m)) = queue.pop() {
            for r in 0..n {
                for s in 0..n {
                    let nu = step(&mu, r, s);
                    if nu.iter().any(|&x| x < 0) {
                        continue;
                    }
                    for f in &basis {
                        let g = sw.generator(rank, &mu, r, s, f)?;
                        let prod = g.mul(&m);
                        if spans.entry(nu.clone()).or_default().insert(prod.vectorize()) {
                            queue.push((nu.clone(), prod));
                        }
                    }
                }
            }
        }
        for mu in &ws {
            let image_rank = spans.get(mu).map_or(0, Echelon::rank);
            let hom_dim = enum_m(pair, &object(lam).reduced(), &object(mu).reduced()).len();
            entries.push(FullnessEntry { lambda: lam.clone(), mu: mu.clone(), image_rank, hom_dim });
        }
    }
    let full = entries.iter().all(|e| e.image_rank == e.hom_dim);
    Ok(FullnessReport { algebra: p.name.clone(), n, d, entries, full })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval::eval;
    use crate::superalgebra::builtin;

    #[test]
    fn weight_generator_scalar() {
        let k = builtin("trivial").unwrap();
        let w = UdotWord::parse(&k, "E(1;1,1) @ lambda=(2,0)").unwrap();
        let m = w_n(&k, &w).unwrap();
        let id = WebMorphism::id(&object(&[2, 0]));
        assert_eq!(eval(&k, &m, 2), eval(&k, &id, 2).scale(&q(2)));
    }

    #[test]
    fn leaving_weights_is_zero() {
        let c = builtin("clifford1").unwrap();
        let w = UdotWord::parse(&c, "E(c;1,2) @ lambda=(1,0)").unwrap();
        assert_eq!(w.codomain(), None);
        assert!(w_n(&c, &w).unwrap().is_zero());
    }

    #[test]
    fn parse_composite() {
        let c = builtin("clifford1").unwrap();
        let w = UdotWord::parse(&c, "E(c;1,2) ∘ E(1;2,1) @ lambda=(1,1)").unwrap();
        assert_eq!(w.gens.len(), 2);
        assert_eq!(w.codomain(), Some(vec![1, 1]));
        assert_eq!(w.weights()[1], Some(vec![0, 2]));
        assert!(UdotWord::parse(&c, "E(c;1,3) @ lambda=(1,1)").is_err());
        assert!(UdotWord::parse(&c, "E(c;1,2)").is_err());
    }

    #[test]
    fn odd_square_on_clifford() {
        let c = builtin("clifford1").unwrap();
        let sq = UdotWord::parse(&c, "E(c;1,1) ∘ E(c;1,1) @ lambda=(2)").unwrap();
        let one = UdotWord::parse(&c, "E(1;1,1) @ lambda=(2)").unwrap();
        assert_eq!(eval(&c, &w_n(&c, &sq).unwrap(), 2), eval(&c, &w_n(&c, &one).unwrap(), 2));
    }

    #[test]
    fn generators_span_every_hom_space() {
        for name in crate::superalgebra::BUILTIN_SUITE {
            let p = builtin(name).unwrap();
            let top = if matches!(name, "trivial" | "clifford1" | "kxk") { 3 } else { 2 };
            for d in 1..=top {
                let r = fullness_check(&p, 2, d).unwrap();
                assert!(r.full, "{name} d={d}: {:?}", r.entries);
            }
        }
    }

    #[test]
    fn sweep_small() {
        let c = builtin("clifford1").unwrap();
        let r = verify_udot(&c, 2, 1).unwrap();
        assert!(r.all_equal, "{:?}", r.relations.iter().find_map(|t| t.first_witness.clone()));
    }
}
