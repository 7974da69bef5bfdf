//! Good pairs: locally unital superalgebras with an even subalgebra.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::exact::{fmt_q, parse_q, q, Parity, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub id: String,
    pub left: usize,
    pub right: usize,
    pub parity: Parity,
}

/// Sparse linear combination of basis elements, keyed by basis index.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash, PartialOrd, Ord)]
pub struct AlgebraElement {
    pub terms: BTreeMap<usize, Q>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(b, Q::one());
        AlgebraElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, b: usize, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(b).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&b);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (b, c) in &other.terms {
            out.add_term(*b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero();
        }
        AlgebraElement { terms: self.terms.iter().map(|(b, x)| (*b, x * c)).collect() }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimpleKind {
    M,
    Q,
}

/// Type and graded dimension of a simple supermodule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleData {
    pub kind: SimpleKind,
    pub even: usize,
    pub odd: usize,
}

#[derive(Clone, Debug)]
pub struct GoodPair {
    pub name: String,
    pub colors: Vec<String>,
    pub basis: Vec<BasisElement>,
    pub sub: Vec<bool>,
    /// Basis index of the idempotent of each color, when it is a basis element.
    pub idem_basis: Vec<Option<usize>>,
    /// Unit of each color as an element.
    pub units: Vec<AlgebraElement>,
    /// table[b1 * dim + b2] = b1 * b2
    pub table: Vec<AlgebraElement>,
    pub semisimple: bool,
    pub simple_data: Option<Vec<SimpleData>>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AlgebraError {
    #[error("{path}: {message}")]
    Field { path: String, message: String },
    #[error("unknown algebra family `{0}`")]
    UnknownFamily(String),
    #[error("invalid family parameter: {0}")]
    BadParameter(String),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

fn field_err(path: impl Into<String>, message: impl Into<String>) -> AlgebraError {
    AlgebraError::Field { path: path.into(), message: message.into() }
}

impl GoodPair {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ncolors(&self) -> usize {
        self.colors.len()
    }

    pub fn basis_index(&self, id: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.id == id)
    }

    pub fn color_index(&self, id: &str) -> Option<usize> {
        self.colors.iter().position(|c| c == id)
    }

    pub fn parity(&self, b: usize) -> Parity {
        self.basis[b].parity
    }

    pub fn product(&self, b1: usize, b2: usize) -> &AlgebraElement {
        &self.table[b1 * self.dim() + b2]
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (b1, c1) in &x.terms {
            for (b2, c2) in &y.terms {
                let c = c1 * c2;
                for (b, c3) in &self.product(*b1, *b2).terms {
                    out.add_term(*b, &c * c3);
                }
            }
        }
        out
    }

    pub fn mul_basis(&self, b1: usize, b2: usize) -> AlgebraElement {
        self.product(b1, b2).clone()
    }

    /// Parity of a nonzero homogeneous element, None if inhomogeneous or zero.
    pub fn element_parity(&self, x: &AlgebraElement) -> Option<Parity> {
        let mut it = x.support().map(|b| self.parity(b));
        let p = it.next()?;
        if it.all(|p2| p2 == p) {
            Some(p)
        } else {
            None
        }
    }

    /// (left, right) colors shared by every term, if any.
    pub fn element_colors(&self, x: &AlgebraElement) -> Option<(usize, usize)> {
        let mut it = x.support().map(|b| (self.basis[b].left, self.basis[b].right));
        let c = it.next()?;
        if it.all(|c2| c2 == c) {
            Some(c)
        } else {
            None
        }
    }

    pub fn in_sub(&self, x: &AlgebraElement) -> bool {
        x.support().all(|b| self.sub[b])
    }

    /// Whether `x` is allowed on a strand of thickness z (A if z = 1, a otherwise).
    pub fn allowed_on(&self, x: &AlgebraElement, z: i64) -> bool {
        z <= 1 || self.in_sub(x)
    }

    pub fn unit(&self) -> AlgebraElement {
        self.units.iter().fold(AlgebraElement::zero(), |acc, u| acc.add(u))
    }

    /// Basis elements in the block jB_i, in basis order.
    pub fn block(&self, j: usize, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].left == j && self.basis[b].right == i).collect()
    }

    /// Basis elements b with left(b) = i, i.e. a basis of iA.
    pub fn left_row(&self, i: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&b| self.basis[b].left == i).collect()
    }

    pub fn graded_dim(&self) -> (usize, usize) {
        let odd = self.basis.iter().filter(|b| b.parity.is_odd()).count();
        (self.dim() - odd, odd)
    }

    pub fn fmt_element(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (b, c)) in x.terms.iter().enumerate() {
            if k > 0 {
                s.push_str(" + ");
            }
            if c.is_one() {
                s.push_str(&self.basis[*b].id);
            } else {
                s.push_str(&format!("{}*{}", fmt_q(c), self.basis[*b].id));
            }
        }
        s
    }

    /// Parses a rational combination of basis ids such as `2*c - 1/2*g1`.
    /// The token `unit` denotes the sum of all idempotents.
    pub fn parse_element(&self, text: &str) -> Result<AlgebraElement, String> {
        let mut out = AlgebraElement::zero();
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err("empty element expression".into());
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (k, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('*') && !cur.ends_with('/') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-Q::one(), b.to_string()),
                None => (Q::one(), term.trim_start_matches('+').to_string()),
            };
            let (coef, id) = match body.rsplit_once('*') {
                Some((c, id)) => (parse_q(c).ok_or_else(|| format!("bad coefficient `{c}`"))?, id.to_string()),
                None => {
                    if let Some(c) = parse_q(&body) {
                        if self.basis_index(&body).is_none() {
                            return Err(format!("bare scalar `{}` is not an element; write it as a multiple of `unit`", fmt_q(&c)));
                        }
                    }
                    (Q::one(), body.clone())
                }
            };
            let c = sign * coef;
            if id == "unit" && self.basis_index("unit").is_none() {
                out = out.add(&self.unit().scale(&c));
            } else {
                let b = self.basis_index(&id).ok_or_else(|| format!("unknown basis element `{id}`"))?;
                out.add_term(b, c);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut v = Vec::new();
        let d = self.dim();
        let mut push = |path: String, message: String| v.push(Violation { path, message });
        for (i, c) in self.colors.iter().enumerate() {
            match self.idem_basis[i] {
                Some(b) => {
                    let e = &self.basis[b];
                    if e.left != i || e.right != i {
                        push(format!("idempotents[{i}]"), format!("idempotent {c} must lie in {c}A{c}"));
                    }
                    if e.parity.is_odd() {
                        push(format!("idempotents[{i}]"), format!("idempotent {c} must be even"));
                    }
                    if !self.sub[b] {
                        push(format!("sub"), format!("idempotent {c} must belong to the subalgebra"));
                    }
                }
                None => {
                    if self.units[i].is_zero() {
                        push(format!("idempotents[{i}]"), format!("color {c} has no unit"));
                    }
                }
            }
        }
        for b1 in 0..d {
            for b2 in 0..d {
                let prod = self.product(b1, b2);
                let e1 = &self.basis[b1];
                let e2 = &self.basis[b2];
                for (b, _) in &prod.terms {
                    let e = &self.basis[*b];
                    let path = format!("products[{},{}]", e1.id, e2.id);
                    if e1.right != e2.left {
                        push(path.clone(), format!("nonzero product across idempotents ({} has right {}, {} has left {})", e1.id, self.colors[e1.right], e2.id, self.colors[e2.left]));
                    } else if e.left != e1.left || e.right != e2.right {
                        push(path.clone(), format!("term {} lies outside the expected idempotent block", e.id));
                    }
                    if e.parity != e1.parity + e2.parity {
                        push(path, format!("parity violation: term {} has parity {}, expected {}", e.id, e.parity, e1.parity + e2.parity));
                    }
                }
            }
        }
        for b1 in 0..d {
            for b2 in 0..d {
                let p12 = self.product(b1, b2);
                for b3 in 0..d {
                    let lhs = self.multiply(p12, &AlgebraElement::basis(b3));
                    let rhs = self.multiply(&AlgebraElement::basis(b1), self.product(b2, b3));
                    if lhs != rhs {
                        push(
                            "products".into(),
                            format!("associativity fails on ({}, {}, {})", self.basis[b1].id, self.basis[b2].id, self.basis[b3].id),
                        );
                    }
                }
            }
        }
        let one = self.unit();
        for b in 0..d {
            let x = AlgebraElement::basis(b);
            if self.multiply(&one, &x) != x || self.multiply(&x, &one) != x {
                push(format!("basis[{b}]"), format!("unit law fails for {}", self.basis[b].id));
            }
        }
        for b in 0..d {
            if self.sub[b] && self.basis[b].parity.is_odd() {
                push("sub".into(), format!("subalgebra element {} is odd", self.basis[b].id));
            }
        }
        for b1 in (0..d).filter(|&b| self.sub[b]) {
            for b2 in (0..d).filter(|&b| self.sub[b]) {
                if !self.in_sub(self.product(b1, b2)) {
                    push("sub".into(), format!("subalgebra not closed: {}*{}", self.basis[b1].id, self.basis[b2].id));
                }
            }
        }
        v
    }

    /// The same algebra viewed with a single color whose unit is the sum of
    /// all idempotents. The basis and the subalgebra are unchanged.
    pub fn collapse(&self) -> GoodPair {
        if self.ncolors() == 1 {
            return self.clone();
        }
        let mut p = self.clone();
        p.name = format!("{}[collapsed]", self.name);
        p.colors = vec!["1".into()];
        for b in &mut p.basis {
            b.left = 0;
            b.right = 0;
        }
        p.idem_basis = vec![None];
        p.units = vec![self.unit()];
        p
    }

    fn derive_unit_products(&mut self) {
        let d = self.dim();
        for (i, ib) in self.idem_basis.clone().into_iter().enumerate() {
            let Some(ib) = ib else { continue };
            for b in 0..d {
                if self.basis[b].left == i && self.table[ib * d + b].is_zero() {
                    self.table[ib * d + b] = AlgebraElement::basis(b);
                }
                if self.basis[b].right == i && self.table[b * d + ib].is_zero() {
                    self.table[b * d + ib] = AlgebraElement::basis(b);
                }
            }
        }
    }

    pub fn to_json(&self) -> Value {
        let d = self.dim();
        let mut products = Vec::new();
        for b1 in 0..d {
            for b2 in 0..d {
                let p = self.product(b1, b2);
                if p.is_zero() {
                    continue;
                }
                let terms: Vec<Value> =
                    p.terms.iter().map(|(b, c)| json!({"b": self.basis[*b].id, "c": fmt_q(c)})).collect();
                products.push(json!({"l": self.basis[b1].id, "r": self.basis[b2].id, "terms": terms}));
            }
        }
        let mut out = json!({
            "name": self.name,
            "idempotents": self.colors,
            "basis": self.basis.iter().map(|b| json!({
                "id": b.id, "left": self.colors[b.left], "right": self.colors[b.right], "parity": b.parity.to_string()
            })).collect::<Vec<_>>(),
            "sub": (0..d).filter(|&b| self.sub[b]).map(|b| self.basis[b].id.clone()).collect::<Vec<_>>(),
            "products": products,
            "semisimple": self.semisimple,
        });
        if let Some(sd) = &self.simple_data {
            out["simples"] = sd
                .iter()
                .map(|s| json!({"type": if s.kind == SimpleKind::M {"M"} else {"Q"}, "even": s.even, "odd": s.odd}))
                .collect();
        }
        out
    }

    pub fn from_json_str(text: &str) -> Result<GoodPair, AlgebraError> {
        let v: Value = serde_json::from_str(text)?;
        Self::from_json(&v)
    }

    pub fn from_json(v: &Value) -> Result<GoodPair, AlgebraError> {
        let obj = v.as_object().ok_or_else(|| field_err("$", "expected an object"))?;
        let name = obj.get("name").and_then(|n| n.as_str()).unwrap_or("custom").to_string();
        let str_list = |key: &str| -> Result<Vec<String>, AlgebraError> {
            let arr = obj
                .get(key)
                .ok_or_else(|| field_err(key, "missing field"))?
                .as_array()
                .ok_or_else(|| field_err(key, "expected an array"))?;
            arr.iter()
                .enumerate()
                .map(|(k, x)| x.as_str().map(String::from).ok_or_else(|| field_err(format!("{key}[{k}]"), "expected a string")))
                .collect()
        };
        let colors = str_list("idempotents")?;
        if colors.is_empty() {
            return Err(field_err("idempotents", "at least one idempotent is required"));
        }
        let color_of = |path: String, x: Option<&Value>| -> Result<usize, AlgebraError> {
            let s = x.and_then(|x| x.as_str()).ok_or_else(|| field_err(path.clone(), "expected an idempotent id"))?;
            colors.iter().position(|c| c == s).ok_or_else(|| field_err(path, format!("unknown idempotent `{s}`")))
        };
        let raw_basis = obj
            .get("basis")
            .ok_or_else(|| field_err("basis", "missing field"))?
            .as_array()
            .ok_or_else(|| field_err("basis", "expected an array"))?;
        let mut basis = Vec::new();
        for (k, b) in raw_basis.iter().enumerate() {
            let p = format!("basis[{k}]");
            let bo = b.as_object().ok_or_else(|| field_err(p.clone(), "expected an object"))?;
            let id = bo
                .get("id")
                .and_then(|x| x.as_str())
                .ok_or_else(|| field_err(format!("{p}.id"), "expected a string"))?
                .to_string();
            let left = color_of(format!("{p}.left"), bo.get("left"))?;
            let right = color_of(format!("{p}.right"), bo.get("right"))?;
            let parity = match bo.get("parity") {
                Some(Value::String(s)) if s == "even" || s == "0" => Parity::Even,
                Some(Value::String(s)) if s == "odd" || s == "1" => Parity::Odd,
                Some(Value::Number(n)) if n.as_u64() == Some(0) => Parity::Even,
                Some(Value::Number(n)) if n.as_u64() == Some(1) => Parity::Odd,
                _ => return Err(field_err(format!("{p}.parity"), "expected \"even\", \"odd\", 0 or 1")),
            };
            if basis.iter().any(|e: &BasisElement| e.id == id) {
                return Err(field_err(format!("{p}.id"), format!("duplicate basis id `{id}`")));
            }
            basis.push(BasisElement { id, left, right, parity });
        }
        let mut implicit = Vec::new();
        for (i, c) in colors.iter().enumerate() {
            if !basis.iter().any(|e| &e.id == c) {
                implicit.push(BasisElement { id: c.clone(), left: i, right: i, parity: Parity::Even });
            }
        }
        implicit.extend(basis);
        let basis = implicit;
        let d = basis.len();
        let index = |path: String, x: Option<&Value>| -> Result<usize, AlgebraError> {
            let s = x.and_then(|x| x.as_str()).ok_or_else(|| field_err(path.clone(), "expected a basis id"))?;
            basis.iter().position(|e| e.id == s).ok_or_else(|| field_err(path, format!("unknown basis id `{s}`")))
        };
        let idem_basis: Vec<Option<usize>> =
            colors.iter().map(|c| basis.iter().position(|e| &e.id == c)).collect();
        let mut sub = vec![false; d];
        for (k, s) in str_list("sub")?.iter().enumerate() {
            let b = index(format!("sub[{k}]"), Some(&Value::String(s.clone())))?;
            sub[b] = true;
        }
        for ib in idem_basis.iter().flatten() {
            sub[*ib] = true;
        }
        let mut table = vec![AlgebraElement::zero(); d * d];
        if let Some(prods) = obj.get("products") {
            let prods = prods.as_array().ok_or_else(|| field_err("products", "expected an array"))?;
            for (k, pr) in prods.iter().enumerate() {
                let p = format!("products[{k}]");
                let po = pr.as_object().ok_or_else(|| field_err(p.clone(), "expected an object"))?;
                let l = index(format!("{p}.l"), po.get("l"))?;
                let r = index(format!("{p}.r"), po.get("r"))?;
                let terms = po
                    .get("terms")
                    .and_then(|t| t.as_array())
                    .ok_or_else(|| field_err(format!("{p}.terms"), "expected an array"))?;
                let mut e = AlgebraElement::zero();
                for (t, term) in terms.iter().enumerate() {
                    let tp = format!("{p}.terms[{t}]");
                    let b = index(format!("{tp}.b"), term.get("b"))?;
                    let c = match term.get("c") {
                        None => Q::one(),
                        Some(Value::String(s)) => parse_q(s).ok_or_else(|| field_err(format!("{tp}.c"), format!("bad rational `{s}`")))?,
                        Some(Value::Number(n)) => q(n.as_i64().ok_or_else(|| field_err(format!("{tp}.c"), "expected an integer or \"p/q\""))?),
                        Some(_) => return Err(field_err(format!("{tp}.c"), "expected an integer or \"p/q\"")),
                    };
                    e.add_term(b, c);
                }
                table[l * d + r] = e;
            }
        }
        let simple_data = match obj.get("simples") {
            None | Some(Value::Null) => None,
            Some(Value::Array(arr)) => {
                let mut out = Vec::new();
                for (k, s) in arr.iter().enumerate() {
                    let p = format!("simples[{k}]");
                    let kind = match s.get("type").and_then(|t| t.as_str()) {
                        Some("M") => SimpleKind::M,
                        Some("Q") => SimpleKind::Q,
                        _ => return Err(field_err(format!("{p}.type"), "expected \"M\" or \"Q\"")),
                    };
                    let num = |key: &str| {
                        s.get(key)
                            .and_then(|x| x.as_u64())
                            .map(|x| x as usize)
                            .ok_or_else(|| field_err(format!("{p}.{key}"), "expected a nonnegative integer"))
                    };
                    out.push(SimpleData { kind, even: num("even")?, odd: num("odd")? });
                }
                Some(out)
            }
            Some(_) => return Err(field_err("simples", "expected an array")),
        };
        let semisimple = obj.get("semisimple").and_then(|x| x.as_bool()).unwrap_or(false);
        let units = idem_basis.iter().map(|ib| ib.map(AlgebraElement::basis).unwrap_or_default()).collect();
        let mut pair = GoodPair { name, colors, basis, sub, idem_basis, units, table, semisimple, simple_data };
        pair.derive_unit_products();
        Ok(pair)
    }

    pub fn load(path: &str) -> Result<GoodPair, AlgebraError> {
        let text = std::fs::read_to_string(path).map_err(|source| AlgebraError::Io { path: path.into(), source })?;
        Self::from_json_str(&text)
    }

    /// Resolves a builtin family name or, failing that, a file path.
    pub fn resolve(spec: &str) -> Result<GoodPair, AlgebraError> {
        match builtin(spec) {
            Err(AlgebraError::UnknownFamily(_)) if std::path::Path::new(spec).exists() => Self::load(spec),
            other => other,
        }
    }

    /// Overwrites one product table entry. Intended for negative controls.
    pub fn set_product(&mut self, b1: usize, b2: usize, value: AlgebraElement) {
        let d = self.dim();
        self.table[b1 * d + b2] = value;
    }
}

struct Builder {
    name: String,
    colors: Vec<String>,
    basis: Vec<BasisElement>,
    products: Vec<(usize, usize, Vec<(usize, i64)>)>,
}

impl Builder {
    fn new(name: &str, colors: &[&str]) -> Self {
        Builder { name: name.into(), colors: colors.iter().map(|s| s.to_string()).collect(), basis: Vec::new(), products: Vec::new() }
    }

    fn elem(&mut self, id: &str, left: usize, right: usize, parity: Parity) -> usize {
        self.basis.push(BasisElement { id: id.into(), left, right, parity });
        self.basis.len() - 1
    }

    fn prod(&mut self, l: usize, r: usize, terms: &[(usize, i64)]) {
        self.products.push((l, r, terms.to_vec()));
    }

    fn finish(self, sub: impl Fn(&BasisElement) -> bool, semisimple: bool, simple_data: Option<Vec<SimpleData>>) -> GoodPair {
        let d = self.basis.len();
        let mut table = vec![AlgebraElement::zero(); d * d];
        for (l, r, terms) in self.products {
            let mut e = AlgebraElement::zero();
            for (b, c) in terms {
                e.add_term(b, q(c));
            }
            table[l * d + r] = e;
        }
        let idem_basis: Vec<Option<usize>> =
            self.colors.iter().map(|c| self.basis.iter().position(|e| &e.id == c)).collect();
        let units = idem_basis.iter().map(|ib| ib.map(AlgebraElement::basis).unwrap_or_default()).collect();
        let sub = self.basis.iter().map(|b| sub(b)).collect();
        let mut p = GoodPair {
            name: self.name,
            colors: self.colors,
            basis: self.basis,
            sub,
            idem_basis,
            units,
            table,
            semisimple,
            simple_data,
        };
        p.derive_unit_products();
        p
    }
}

fn parse_call(name: &str) -> (String, Vec<String>) {
    let name = name.trim();
    match name.split_once('(') {
        Some((head, rest)) => {
            let args = rest.trim_end_matches(')').split(',').map(|a| a.trim().to_string()).filter(|a| !a.is_empty()).collect();
            (head.trim().to_string(), args)
        }
        None => (name.to_string(), Vec::new()),
    }
}

/// Builtin families: `trivial`, `cyclic(r)`, `cyclic(r,full)`, `clifford1`,
/// `kxk`, `zigzag` and `zigzag(k)` (path with k vertices, default 2).
pub fn builtin(name: &str) -> Result<GoodPair, AlgebraError> {
    let (head, args) = parse_call(name);
    let int_arg = |k: usize, default: i64| -> Result<i64, AlgebraError> {
        match args.get(k) {
            None => Ok(default),
            Some(a) => a.parse().map_err(|_| AlgebraError::BadParameter(format!("`{a}` is not an integer"))),
        }
    };
    let m_simple = |n: usize| Some(vec![SimpleData { kind: SimpleKind::M, even: 1, odd: 0 }; n]);
    match head.as_str() {
        "trivial" => {
            let mut b = Builder::new("trivial", &["1"]);
            let one = b.elem("1", 0, 0, Parity::Even);
            b.prod(one, one, &[(one, 1)]);
            Ok(b.finish(|_| true, true, m_simple(1)))
        }
        "cyclic" => {
            let r = int_arg(0, 1)?;
            if r < 1 {
                return Err(AlgebraError::BadParameter(format!("cyclic order must be at least 1, got {r}")));
            }
            let full = match args.get(1).map(String::as_str) {
                None => false,
                Some("full") => true,
                Some(other) => return Err(AlgebraError::BadParameter(format!("unknown cyclic option `{other}`"))),
            };
            let r = r as usize;
            let label = if full { format!("cyclic({r},full)") } else { format!("cyclic({r})") };
            let mut b = Builder::new(&label, &["1"]);
            let ids: Vec<usize> = (0..r)
                .map(|k| if k == 0 { b.elem("1", 0, 0, Parity::Even) } else { b.elem(&format!("g{k}"), 0, 0, Parity::Even) })
                .collect();
            for x in 0..r {
                for y in 0..r {
                    b.prod(ids[x], ids[y], &[(ids[(x + y) % r], 1)]);
                }
            }
            let simple = if r == 1 { m_simple(1) } else { None };
            Ok(b.finish(|e| full || e.id == "1", true, simple))
        }
        "clifford1" => {
            let mut b = Builder::new("clifford1", &["1"]);
            let one = b.elem("1", 0, 0, Parity::Even);
            let c = b.elem("c", 0, 0, Parity::Odd);
            b.prod(c, c, &[(one, 1)]);
            Ok(b.finish(|e| e.id == "1", true, Some(vec![SimpleData { kind: SimpleKind::Q, even: 1, odd: 1 }])))
        }
        "kxk" => {
            let mut b = Builder::new("kxk", &["1", "2"]);
            b.elem("1", 0, 0, Parity::Even);
            b.elem("2", 1, 1, Parity::Even);
            Ok(b.finish(|_| true, true, m_simple(2)))
        }
        "zigzag" => {
            let k = int_arg(0, 2)?;
            if k < 2 {
                return Err(AlgebraError::BadParameter(format!("zigzag needs a path with at least 2 vertices, got {k}")));
            }
            let k = k as usize;
            let names: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
            let name_refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let label = if k == 2 { "zigzag".to_string() } else { format!("zigzag({k})") };
            let mut b = Builder::new(&label, &name_refs);
            let sep = if k >= 10 { "_" } else { "" };
            let mut cs = Vec::new();
            for i in 0..k {
                b.elem(&names[i], i, i, Parity::Even);
                cs.push(b.elem(&format!("c{}", names[i]), i, i, Parity::Even));
            }
            let mut arrows = BTreeMap::new();
            for i in 0..k {
                for j in [i.wrapping_sub(1), i + 1] {
                    if j < k {
                        let id = format!("a{}{sep}{}", names[i], names[j]);
                        arrows.insert((i, j), b.elem(&id, i, j, Parity::Odd));
                    }
                }
            }
            for (&(i, j), &a) in &arrows {
                let back = arrows[&(j, i)];
                b.prod(a, back, &[(cs[i], 1)]);
            }
            Ok(b.finish(|e| name_refs.contains(&e.id.as_str()), false, None))
        }
        _ => Err(AlgebraError::UnknownFamily(name.to_string())),
    }
}

pub const BUILTIN_SUITE: [&str; 5] = ["trivial", "cyclic(3)", "clifford1", "kxk", "zigzag"];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in BUILTIN_SUITE.iter().chain(["cyclic(3,full)", "zigzag(4)", "cyclic(1)"].iter()) {
            let p = builtin(name).unwrap();
            assert!(p.validate().is_empty(), "{name}: {:?}", p.validate());
            assert!(p.collapse().validate().is_empty(), "{name} collapsed");
        }
    }

    #[test]
    fn clifford_product() {
        let p = builtin("clifford1").unwrap();
        let c = AlgebraElement::basis(p.basis_index("c").unwrap());
        assert_eq!(p.multiply(&c, &c), AlgebraElement::basis(p.basis_index("1").unwrap()));
        assert_eq!(p.graded_dim(), (1, 1));
        assert_eq!(p.sub, vec![true, false]);
    }

    #[test]
    fn zigzag_products() {
        let p = builtin("zigzag").unwrap();
        let ids: Vec<&str> = p.basis.iter().map(|b| b.id.as_str()).collect();
        assert_eq!(ids, ["1", "c1", "2", "c2", "a12", "a21"]);
        let e = |s: &str| AlgebraElement::basis(p.basis_index(s).unwrap());
        assert_eq!(p.multiply(&e("a12"), &e("a21")), e("c1"));
        assert!(p.multiply(&e("c1"), &e("c1")).is_zero());
        assert!(p.multiply(&e("a12"), &e("a12")).is_zero());
        assert_eq!(p.multiply(&e("1"), &e("a12")), e("a12"));
        assert_eq!(p.multiply(&e("a12"), &e("2")), e("a12"));
    }

    #[test]
    fn bad_pairs_are_reported() {
        let mut p = builtin("clifford1").unwrap();
        p.sub[1] = true;
        assert!(p.validate().iter().any(|v| v.message.contains("odd")));
        let mut p = builtin("clifford1").unwrap();
        p.set_product(1, 1, AlgebraElement::basis(1));
        assert!(p.validate().iter().any(|v| v.message.contains("parity")));
    }

    #[test]
    fn json_round_trip() {
        for name in BUILTIN_SUITE {
            let p = builtin(name).unwrap();
            let back = GoodPair::from_json(&p.to_json()).unwrap();
            assert_eq!(back.basis, p.basis);
            assert_eq!(back.table, p.table);
            assert_eq!(back.sub, p.sub);
        }
    }

    #[test]
    fn json_diagnostics_name_fields() {
        let text = r#"{"idempotents":["1"],"basis":[{"id":"c","left":"1","right":"1","parity":"weird"}],"sub":[],"products":[]}"#;
        let err = GoodPair::from_json_str(text).unwrap_err().to_string();
        assert!(err.starts_with("basis[0].parity"), "{err}");
        let text = r#"{"idempotents":["1"],"basis":[],"sub":["x"],"products":[]}"#;
        let err = GoodPair::from_json_str(text).unwrap_err().to_string();
        assert!(err.starts_with("sub[0]"), "{err}");
    }

    #[test]
    fn implicit_idempotents_and_units() {
        let text = r#"{"idempotents":["1"],"basis":[{"id":"c","left":"1","right":"1","parity":1}],"sub":[],
            "products":[{"l":"c","r":"c","terms":[{"b":"1","c":"1"}]}]}"#;
        let p = GoodPair::from_json_str(text).unwrap();
        assert_eq!(p.basis[0].id, "1");
        assert!(p.validate().is_empty(), "{:?}", p.validate());
    }

    #[test]
    fn element_parsing() {
        let p = builtin("cyclic(3)").unwrap();
        let x = p.parse_element("2*g1 - 1/2*g2 + 1").unwrap();
        assert_eq!(x.terms.len(), 3);
        assert_eq!(x.terms[&2], crate::exact::q_frac(-1, 2));
        let z = builtin("zigzag").unwrap();
        let u = z.parse_element("unit").unwrap();
        assert_eq!(u, z.unit());
        assert!(z.parse_element("bogus").is_err());
    }

    #[test]
    fn collapse_keeps_basis() {
        let z = builtin("zigzag").unwrap().collapse();
        assert_eq!(z.ncolors(), 1);
        assert_eq!(z.dim(), 6);
        assert_eq!(z.unit().terms.len(), 2);
    }
}
