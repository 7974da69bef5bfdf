//! Coordinates in the basis of η diagrams, and the relation verification suite.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::combinatorics::{enum_m, MatrixComposition, Object};
use crate::eval::Evaluator;
use crate::exact::{fmt_q, Echelon, SparseMat, SparseVec};
use crate::relations::{instances, resolve_set, RelationInstance};
use crate::superalgebra::GoodPair;
use crate::webcat::{eta, Flavor, WebError, WebMorphism};

#[derive(Debug, thiserror::Error)]
pub enum ReduceError {
    #[error("internal inconsistency: morphism is not in the span of the basis diagrams")]
    InternalInconsistency,
    #[error(transparent)]
    Web(#[from] WebError),
    #[error("{0}")]
    InvalidParams(String),
}

/// Coordinates of a morphism in the η^a basis of its hom space.
#[derive(Clone, Debug)]
pub struct BasisCoordinates {
    pub basis: Vec<MatrixComposition>,
    pub coords: SparseVec,
}

struct Space {
    basis: Vec<MatrixComposition>,
    echelon: Echelon,
    rank: usize,
}

/// Caches evaluators and basis images per hom space.
pub struct Reducer<'a> {
    pub pair: &'a GoodPair,
    evaluators: Mutex<HashMap<usize, Arc<Evaluator<'a>>>>,
    spaces: Mutex<HashMap<(Object, Object), Arc<Space>>>,
}

impl<'a> Reducer<'a> {
    pub fn new(pair: &'a GoodPair) -> Self {
        Reducer { pair, evaluators: Mutex::new(HashMap::new()), spaces: Mutex::new(HashMap::new()) }
    }

    pub fn evaluator(&self, n: usize) -> Arc<Evaluator<'a>> {
        self.evaluators.lock().unwrap().entry(n).or_insert_with(|| Arc::new(Evaluator::new(self.pair, n))).clone()
    }

    fn space(&self, dom: &Object, cod: &Object) -> Result<Arc<Space>, ReduceError> {
        let key = (dom.clone(), cod.clone());
        if let Some(s) = self.spaces.lock().unwrap().get(&key) {
            return Ok(s.clone());
        }
        let ev = self.evaluator(dom.total().max(1) as usize);
        let basis = enum_m(self.pair, dom, cod);
        let mut echelon = Echelon::tracking();
        for m in &basis {
            let img = ev.eval(&eta(self.pair, m, Flavor::A)?);
            echelon.insert(img.vectorize());
        }
        let rank = echelon.rank();
        let s = Arc::new(Space { basis, echelon, rank });
        self.spaces.lock().unwrap().insert(key, s.clone());
        Ok(s)
    }

    /// Rank of the η^a images at n = d, next to |M|.
    pub fn basis_rank(&self, dom: &Object, cod: &Object) -> Result<(usize, usize), ReduceError> {
        let s = self.space(&dom.reduced(), &cod.reduced())?;
        Ok((s.rank, s.basis.len()))
    }

    pub fn reduce(&self, m: &WebMorphism) -> Result<BasisCoordinates, ReduceError> {
        if m.dom.total() != m.cod.total() || m.dom.is_degenerate() || m.cod.is_degenerate() {
            return Ok(BasisCoordinates { basis: Vec::new(), coords: SparseVec::zero(0) });
        }
        let s = self.space(&m.dom, &m.cod)?;
        let ev = self.evaluator(m.dom.total().max(1) as usize);
        let v = ev.eval(m).vectorize();
        let entries = s.echelon.express(v).ok_or(ReduceError::InternalInconsistency)?;
        Ok(BasisCoordinates { basis: s.basis.clone(), coords: SparseVec { len: s.basis.len(), entries } })
    }
}

pub fn reduce_to_basis(pair: &GoodPair, m: &WebMorphism) -> Result<BasisCoordinates, ReduceError> {
    Reducer::new(pair).reduce(m)
}

/// An entry where the two sides of a relation differ.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub relation: String,
    pub params: String,
    pub row: usize,
    pub col: usize,
    pub row_basis: String,
    pub col_basis: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Unequal(Witness),
}

pub fn verify_instance(ev: &Evaluator, inst: &RelationInstance) -> Verdict {
    let witness = |row: usize, col: usize, a: String, b: String| {
        Verdict::Unequal(Witness {
            relation: inst.relation.to_string(),
            params: inst.params.clone(),
            row,
            col,
            row_basis: ev.describe_basis(&inst.lhs.cod, row),
            col_basis: ev.describe_basis(&inst.lhs.dom, col),
            lhs: a,
            rhs: b,
        })
    };
    if inst.lhs.dom != inst.rhs.dom || inst.lhs.cod != inst.rhs.cod {
        return Verdict::Unequal(Witness {
            relation: inst.relation.to_string(),
            params: inst.params.clone(),
            row: 0,
            col: 0,
            row_basis: format!("{} vs {}", inst.lhs.cod, inst.rhs.cod),
            col_basis: format!("{} vs {}", inst.lhs.dom, inst.rhs.dom),
            lhs: "type".into(),
            rhs: "type".into(),
        });
    }
    let (a, b): (SparseMat, SparseMat) = (ev.eval(&inst.lhs), ev.eval(&inst.rhs));
    match a.first_difference(&b) {
        None => Verdict::Equal,
        Some((r, c, x, y)) => witness(r, c, fmt_q(&x), fmt_q(&y)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationTally {
    pub relation: String,
    pub instances: usize,
    pub equal: usize,
    pub unequal: usize,
    pub first_witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub algebra: String,
    pub bound: i64,
    pub n: usize,
    pub relations: Vec<RelationTally>,
    pub instances: usize,
    pub equal: usize,
    pub all_equal: bool,
}

impl SuiteReport {
    pub fn first_witness(&self) -> Option<&Witness> {
        self.relations.iter().find_map(|r| r.first_witness.as_ref())
    }
}

/// Verifies every instance of one relation.
pub fn verify_relation(ev: &Evaluator, relation: &str, bound: i64) -> Result<RelationTally, ReduceError> {
    let insts = instances(ev.pair, relation, bound)?;
    let mut tally = RelationTally { relation: relation.to_string(), instances: insts.len(), equal: 0, unequal: 0, first_witness: None };
    for inst in &insts {
        match verify_instance(ev, inst) {
            Verdict::Equal => tally.equal += 1,
            Verdict::Unequal(w) => {
                tally.unequal += 1;
                tally.first_witness.get_or_insert(w);
            }
        }
    }
    Ok(tally)
}

pub fn verify_suite(pair: &GoodPair, bound: i64, n: usize, set: &str) -> Result<SuiteReport, ReduceError> {
    if bound < 1 || n < 1 {
        return Err(ReduceError::InvalidParams("bound and n must be at least 1".into()));
    }
    let ids = resolve_set(set).map_err(ReduceError::InvalidParams)?;
    let ev = Evaluator::new(pair, n);
    let relations = ids.iter().map(|id| verify_relation(&ev, id, bound)).collect::<Result<Vec<_>, _>>()?;
    let instances = relations.iter().map(|r| r.instances).sum();
    let equal = relations.iter().map(|r| r.equal).sum();
    Ok(SuiteReport { algebra: pair.name.clone(), bound, n, relations, instances, equal, all_equal: instances == equal })
}
