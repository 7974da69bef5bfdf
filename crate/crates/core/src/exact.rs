//! Exact rational scalars, parities and sparse linear algebra.

use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Formats as `p` or `p/q`.
pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Q::new(n, d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Parity {
    #[default]
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Parity {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// (-1)^(self*other)
    pub fn sign_with(self, other: Parity) -> i64 {
        if self.is_odd() && other.is_odd() {
            -1
        } else {
            1
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// n(n-1)...(n-k+1)/k! for any integer n.
pub fn gbinom(n: i64, k: u64) -> Q {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(n) - BigInt::from(j);
        den *= BigInt::from(j + 1);
    }
    Q::new(num, den)
}

pub fn factorial(k: u64) -> Q {
    (1..=k).fold(Q::one(), |acc, j| acc * q(j as i64))
}

/// Sparse vector as a sorted list of (index, nonzero value).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseVec {
    pub len: usize,
    pub entries: Vec<(usize, Q)>,
}

impl SparseVec {
    pub fn zero(len: usize) -> Self {
        SparseVec { len, entries: Vec::new() }
    }

    pub fn from_dense(v: &[Q]) -> Self {
        let entries = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect();
        SparseVec { len: v.len(), entries }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        SparseVec { len, entries: vec![(i, Q::one())] }
    }

    pub fn to_dense(&self) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.len];
        for (i, x) in &self.entries {
            out[*i] = x.clone();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        match self.entries.binary_search_by_key(&i, |e| e.0) {
            Ok(p) => self.entries[p].1.clone(),
            Err(_) => Q::zero(),
        }
    }
}

/// Column-major sparse matrix; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, Q)>>,
}

pub(crate) fn add_scaled(acc: &mut Vec<(usize, Q)>, col: &[(usize, Q)], c: &Q) {
    if c.is_zero() || col.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(acc.len() + col.len());
    let (mut i, mut j) = (0, 0);
    while i < acc.len() || j < col.len() {
        if j == col.len() || (i < acc.len() && acc[i].0 < col[j].0) {
            out.push(acc[i].clone());
            i += 1;
        } else if i == acc.len() || col[j].0 < acc[i].0 {
            out.push((col[j].0, &col[j].1 * c));
            j += 1;
        } else {
            let v = &acc[i].1 + &col[j].1 * c;
            if !v.is_zero() {
                out.push((acc[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    *acc = out;
}

impl SparseMat {
    pub fn zero(rows: usize, ncols: usize) -> Self {
        SparseMat { rows, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat { rows: n, cols: (0..n).map(|i| vec![(i, Q::one())]).collect() }
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn from_dense(m: &[Vec<Q>]) -> Self {
        let rows = m.len();
        let ncols = m.first().map_or(0, |r| r.len());
        let mut out = SparseMat::zero(rows, ncols);
        for (r, row) in m.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                if !x.is_zero() {
                    out.cols[c].push((r, x.clone()));
                }
            }
        }
        out
    }

    pub fn from_i64(m: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Q>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn to_dense(&self) -> Vec<Vec<Q>> {
        let mut out = vec![vec![Q::zero(); self.ncols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out[*r][c] = x.clone();
            }
        }
        out
    }

    pub fn get(&self, r: usize, c: usize) -> Q {
        match self.cols[c].binary_search_by_key(&r, |e| e.0) {
            Ok(p) => self.cols[c][p].1.clone(),
            Err(_) => Q::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn scale(&self, c: &Q) -> SparseMat {
        if c.is_zero() {
            return SparseMat::zero(self.rows, self.ncols());
        }
        SparseMat {
            rows: self.rows,
            cols: self.cols.iter().map(|col| col.iter().map(|(r, x)| (*r, x * c)).collect()).collect(),
        }
    }

    pub fn add_assign_scaled(&mut self, other: &SparseMat, c: &Q) {
        assert_eq!(self.rows, other.rows);
        assert_eq!(self.ncols(), other.ncols());
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            add_scaled(a, b, c);
        }
    }

    pub fn add(&self, other: &SparseMat) -> SparseMat {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Q::one());
        out
    }

    pub fn sub(&self, other: &SparseMat) -> SparseMat {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Q::one());
        out
    }

    pub fn apply_col(&self, v: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let mut acc = Vec::new();
        for (i, x) in v {
            add_scaled(&mut acc, &self.cols[*i], x);
        }
        acc
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        assert_eq!(v.len, self.ncols());
        SparseVec { len: self.rows, entries: self.apply_col(&v.entries) }
    }

    /// self * other
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.ncols(), other.rows, "dimension mismatch in product");
        SparseMat { rows: self.rows, cols: other.cols.iter().map(|c| self.apply_col(c)).collect() }
    }

    pub fn transpose(&self) -> SparseMat {
        let mut out = SparseMat::zero(self.ncols(), self.rows);
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out.cols[*r].push((c, x.clone()));
            }
        }
        out
    }

    /// Column-stacked vectorization.
    pub fn vectorize(&self) -> Vec<(usize, Q)> {
        let mut out = Vec::with_capacity(self.nnz());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                out.push((c * self.rows + r, x.clone()));
            }
        }
        out
    }

    /// First entry where the matrices differ, as (row, col, self, other).
    pub fn first_difference(&self, other: &SparseMat) -> Option<(usize, usize, Q, Q)> {
        for c in 0..self.ncols() {
            if self.cols[c] != other.cols[c] {
                let d = {
                    let mut d = self.cols[c].clone();
                    add_scaled(&mut d, &other.cols[c], &-Q::one());
                    d
                };
                let r = d[0].0;
                return Some((r, c, self.get(r, c), other.get(r, c)));
            }
        }
        None
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new();
        for c in &self.cols {
            e.insert(c.clone());
        }
        e.rank()
    }

    /// Coordinate-list export with rational entries.
    pub fn to_coo_string(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.ncols());
        for (c, col) in self.cols.iter().enumerate() {
            for (r, x) in col {
                s.push_str(&format!("{} {} {}\n", r, c, fmt_q(x)));
            }
        }
        s
    }
}

/// Incremental row-reduced set of sparse vectors. The pivot of a stored
/// vector is its first nonzero index and is normalized to 1.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: std::collections::BTreeMap<usize, usize>,
    rows: Vec<Vec<(usize, Q)>>,
    combos: Vec<Vec<(usize, Q)>>,
    inserted: usize,
    track: bool,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tracking() -> Self {
        Echelon { track: true, ..Self::default() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_with(&self, mut v: Vec<(usize, Q)>, mut combo: Option<&mut Vec<(usize, Q)>>) -> Vec<(usize, Q)> {
        let mut k = 0;
        while k < v.len() {
            let idx = v[k].0;
            if let Some(&ri) = self.pivots.get(&idx) {
                let c = -v[k].1.clone();
                add_scaled(&mut v, &self.rows[ri], &c);
                if let Some(cb) = combo.as_deref_mut() {
                    add_scaled(cb, &self.combos[ri], &c);
                }
                k = v.partition_point(|e| e.0 <= idx);
            } else {
                k += 1;
            }
        }
        v
    }

    /// Reduces `v` against the stored rows; returns whether it was independent.
    pub fn insert(&mut self, v: Vec<(usize, Q)>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let mut combo = if self.track { vec![(id, Q::one())] } else { Vec::new() };
        let r = self.reduce_with(v, if self.track { Some(&mut combo) } else { None });
        if r.is_empty() {
            return false;
        }
        let inv = Q::one() / &r[0].1;
        let r: Vec<_> = r.into_iter().map(|(i, x)| (i, x * &inv)).collect();
        if self.track {
            combo = combo.into_iter().map(|(i, x)| (i, x * &inv)).collect();
        }
        self.pivots.insert(r[0].0, self.rows.len());
        self.rows.push(r);
        self.combos.push(combo);
        true
    }

    pub fn contains(&self, v: Vec<(usize, Q)>) -> bool {
        self.reduce_with(v, None).is_empty()
    }

    /// Expresses `v` in terms of the inserted vectors, if possible.
    /// Only meaningful for a tracking echelon.
    pub fn express(&self, v: Vec<(usize, Q)>) -> Option<Vec<(usize, Q)>> {
        let mut combo = Vec::new();
        let mut k = 0;
        let mut v = v;
        while k < v.len() {
            let idx = v[k].0;
            if let Some(&ri) = self.pivots.get(&idx) {
                let c = v[k].1.clone();
                add_scaled(&mut v, &self.rows[ri], &-c.clone());
                add_scaled(&mut combo, &self.combos[ri], &c);
                k = v.partition_point(|e| e.0 <= idx);
            } else {
                return None;
            }
        }
        Some(combo)
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SolveError {
    #[error("no solution")]
    NoSolution,
    #[error("dimension mismatch: matrix has {rows} rows, vector has length {len}")]
    DimensionMismatch { rows: usize, len: usize },
}

/// Finds x with A x = b. For full column rank the solution is unique;
/// otherwise dependent columns get coordinate 0.
pub fn sparse_solve(a: &SparseMat, b: &SparseVec) -> Result<SparseVec, SolveError> {
    if b.len != a.rows {
        return Err(SolveError::DimensionMismatch { rows: a.rows, len: b.len });
    }
    let mut e = Echelon::tracking();
    for c in &a.cols {
        e.insert(c.clone());
    }
    let combo = e.express(b.entries.clone()).ok_or(SolveError::NoSolution)?;
    Ok(SparseVec { len: a.ncols(), entries: combo })
}

pub fn sparse_rank(a: &SparseMat) -> usize {
    a.rank()
}

/// Dimension of the solution space of a homogeneous system given by rows.
pub fn nullity(nvars: usize, equations: impl IntoIterator<Item = Vec<(usize, Q)>>) -> usize {
    let mut e = Echelon::new();
    for row in equations {
        let mut row = row;
        row.sort_by_key(|x| x.0);
        let mut merged: Vec<(usize, Q)> = Vec::with_capacity(row.len());
        for (i, x) in row {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += x,
                _ => merged.push((i, x)),
            }
        }
        merged.retain(|x| !x.1.is_zero());
        if !merged.is_empty() {
            e.insert(merged);
        }
        if e.rank() == nvars {
            break;
        }
    }
    nvars - e.rank()
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gbinom_examples() {
        assert_eq!(gbinom(5, 2), q(10));
        assert_eq!(gbinom(-1, 2), q(1));
        assert_eq!(gbinom(2, 5), q(0));
        assert_eq!(gbinom(-3, 0), q(1));
    }

    #[test]
    fn solve_examples() {
        let id = SparseMat::identity(3);
        let b = SparseVec::from_dense(&[q(1), q(-2), q_frac(1, 3)]);
        assert_eq!(sparse_solve(&id, &b).unwrap(), b);

        let a = SparseMat::from_i64(&[&[1, 0], &[0, 0]]);
        let b = SparseVec::from_dense(&[q(0), q(1)]);
        assert_eq!(sparse_solve(&a, &b), Err(SolveError::NoSolution));

        let a = SparseMat::from_i64(&[&[2, 1], &[1, 1]]);
        let b = SparseVec::from_dense(&[q(3), q(2)]);
        assert_eq!(sparse_solve(&a, &b).unwrap().to_dense(), vec![q(1), q(1)]);
    }

    #[test]
    fn rank_examples() {
        assert_eq!(SparseMat::zero(3, 4).rank(), 0);
        assert_eq!(SparseMat::identity(5).rank(), 5);
        assert_eq!(SparseMat::from_i64(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn rational_strings() {
        assert_eq!(fmt_q(&q_frac(6, -4)), "-3/2");
        assert_eq!(parse_q("-3/2"), Some(q_frac(-3, 2)));
        assert_eq!(parse_q(" 7 "), Some(q(7)));
        assert_eq!(parse_q("1/0"), None);
    }

    #[test]
    fn nullity_counts_free_variables() {
        let eqs = vec![vec![(0, q(1)), (1, q(-1))], vec![(1, q(2)), (0, q(-2))]];
        assert_eq!(nullity(3, eqs), 2);
    }
}
