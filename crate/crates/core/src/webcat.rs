//! Diagrams of the web category: generators, composition, tensor product and
//! the named morphisms built from them.

use num_traits::{One, Zero};

use crate::combinatorics::{bang, MatrixComposition, Object};
use crate::exact::{Parity, Q};
use crate::superalgebra::{AlgebraElement, GoodPair};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Gen {
    /// i^(x+y) -> i^(x) i^(y)
    Split { color: usize, x: i64, y: i64 },
    /// i^(x) i^(y) -> i^(x+y)
    Merge { color: usize, x: i64, y: i64 },
    /// i^(x) j^(y) -> j^(y) i^(x)
    Cross { c1: usize, x: i64, c2: usize, y: i64 },
    /// i^(z) -> j^(z)
    Coupon { elem: AlgebraElement, from: usize, to: usize, z: i64 },
}

impl Gen {
    pub fn dom(&self) -> Object {
        match self {
            Gen::Split { color, x, y } => Object::new(vec![(*color, x + y)]),
            Gen::Merge { color, x, y } => Object::new(vec![(*color, *x), (*color, *y)]),
            Gen::Cross { c1, x, c2, y } => Object::new(vec![(*c1, *x), (*c2, *y)]),
            Gen::Coupon { from, z, .. } => Object::new(vec![(*from, *z)]),
        }
    }

    pub fn cod(&self) -> Object {
        match self {
            Gen::Split { color, x, y } => Object::new(vec![(*color, *x), (*color, *y)]),
            Gen::Merge { color, x, y } => Object::new(vec![(*color, x + y)]),
            Gen::Cross { c1, x, c2, y } => Object::new(vec![(*c2, *y), (*c1, *x)]),
            Gen::Coupon { to, z, .. } => Object::new(vec![(*to, *z)]),
        }
    }

    pub fn parity(&self, pair: &GoodPair) -> Parity {
        match self {
            Gen::Coupon { elem, .. } => pair.element_parity(elem).unwrap_or(Parity::Even),
            _ => Parity::Even,
        }
    }

    pub fn display(&self, pair: &GoodPair) -> String {
        let c = |i: &usize| pair.colors[*i].clone();
        match self {
            Gen::Split { color, x, y } => format!("split({};{},{})", c(color), x, y),
            Gen::Merge { color, x, y } => format!("merge({};{},{})", c(color), x, y),
            Gen::Cross { c1, x, c2, y } => format!("cross({}^({}),{}^({}))", c(c1), x, c(c2), y),
            Gen::Coupon { elem, from, to, z } => format!("coupon({}; {},{} -> {})", pair.fmt_element(elem), c(from), z, c(to)),
        }
    }
}

/// A generator whiskered by identities on both sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Layer {
    pub left: Object,
    pub gen: Gen,
    pub right: Object,
}

impl Layer {
    pub fn dom(&self) -> Object {
        self.left.concat(&self.gen.dom()).concat(&self.right)
    }

    pub fn cod(&self) -> Object {
        self.left.concat(&self.gen.cod()).concat(&self.right)
    }
}

/// Layers listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub dom: Object,
    pub layers: Vec<Layer>,
}

impl Diagram {
    pub fn identity(dom: Object) -> Self {
        Diagram { dom, layers: Vec::new() }
    }

    pub fn cod(&self) -> Object {
        self.layers.last().map_or_else(|| self.dom.clone(), |l| l.cod())
    }

    pub fn parity(&self, pair: &GoodPair) -> Parity {
        self.layers.iter().fold(Parity::Even, |p, l| p + l.gen.parity(pair))
    }

    pub fn is_well_typed(&self) -> bool {
        let mut cur = self.dom.clone();
        for l in &self.layers {
            if l.dom() != cur {
                return false;
            }
            cur = l.cod();
        }
        true
    }

    fn whiskered(&self, left: &Object, right: &Object) -> Diagram {
        Diagram {
            dom: left.concat(&self.dom).concat(right),
            layers: self
                .layers
                .iter()
                .map(|l| Layer { left: left.concat(&l.left), gen: l.gen.clone(), right: l.right.concat(right) })
                .collect(),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WebError {
    #[error("object mismatch: expected {expected}, found {found}")]
    ObjectMismatch { expected: String, found: String },
    #[error("coupon element must be homogeneous and nonzero in a single block jAi")]
    BadCouponElement,
    #[error("coupon on a strand of thickness {0} requires an element of the subalgebra")]
    ThickCoupon(i64),
    #[error("coupon element lies in {found_left}A{found_right}, expected {want_left}A{want_right}")]
    CouponColors { found_left: String, found_right: String, want_left: String, want_right: String },
    #[error("invalid matrix composition")]
    InvalidComposition,
    #[error("objects of different total thickness")]
    ThicknessMismatch,
}

/// A formal rational combination of diagrams with common domain and codomain.
/// An empty term list is the zero morphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WebMorphism {
    pub dom: Object,
    pub cod: Object,
    pub terms: Vec<(Q, Diagram)>,
}

impl WebMorphism {
    pub fn zero(dom: &Object, cod: &Object) -> Self {
        WebMorphism { dom: dom.reduced(), cod: cod.reduced(), terms: Vec::new() }
    }

    pub fn id(obj: &Object) -> Self {
        let o = obj.reduced();
        if o.is_degenerate() {
            return WebMorphism::zero(&o, &o);
        }
        WebMorphism { dom: o.clone(), cod: o.clone(), terms: vec![(Q::one(), Diagram::identity(o))] }
    }

    fn single(gen: Gen) -> Self {
        let dom = gen.dom();
        let cod = gen.cod();
        WebMorphism { dom: dom.clone(), cod, terms: vec![(Q::one(), Diagram { dom, layers: vec![Layer { left: Object::empty(), gen, right: Object::empty() }] })] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn split(color: usize, x: i64, y: i64) -> Self {
        let dom = Object::new(vec![(color, x + y)]);
        let cod = Object::new(vec![(color, x), (color, y)]);
        if x < 0 || y < 0 {
            return WebMorphism::zero(&dom, &cod);
        }
        if x == 0 || y == 0 {
            return WebMorphism::id(&dom);
        }
        Self::single(Gen::Split { color, x, y })
    }

    pub fn merge(color: usize, x: i64, y: i64) -> Self {
        let dom = Object::new(vec![(color, x), (color, y)]);
        let cod = Object::new(vec![(color, x + y)]);
        if x < 0 || y < 0 {
            return WebMorphism::zero(&dom, &cod);
        }
        if x == 0 || y == 0 {
            return WebMorphism::id(&cod);
        }
        Self::single(Gen::Merge { color, x, y })
    }

    pub fn cross(c1: usize, x: i64, c2: usize, y: i64) -> Self {
        let dom = Object::new(vec![(c1, x), (c2, y)]);
        let cod = Object::new(vec![(c2, y), (c1, x)]);
        if x < 0 || y < 0 {
            return WebMorphism::zero(&dom, &cod);
        }
        if x == 0 || y == 0 {
            return WebMorphism::id(&dom);
        }
        Self::single(Gen::Cross { c1, x, c2, y })
    }

    /// Coupon f : i^(z) -> j^(z). The element must lie in jA_i and be
    /// homogeneous; thick strands need f in the subalgebra.
    pub fn coupon(pair: &GoodPair, elem: &AlgebraElement, from: usize, to: usize, z: i64) -> Result<Self, WebError> {
        Self::coupon_impl(pair, elem, from, to, z, true)
    }

    /// As `coupon`, but an idempotent coupon is kept as a box instead of
    /// being replaced by the identity.
    pub fn coupon_box(pair: &GoodPair, elem: &AlgebraElement, from: usize, to: usize, z: i64) -> Result<Self, WebError> {
        Self::coupon_impl(pair, elem, from, to, z, false)
    }

    fn coupon_impl(pair: &GoodPair, elem: &AlgebraElement, from: usize, to: usize, z: i64, fold_units: bool) -> Result<Self, WebError> {
        let dom = Object::new(vec![(from, z)]);
        let cod = Object::new(vec![(to, z)]);
        if z < 0 || elem.is_zero() {
            return Ok(WebMorphism::zero(&dom, &cod));
        }
        if pair.element_parity(elem).is_none() {
            return Err(WebError::BadCouponElement);
        }
        match pair.element_colors(elem) {
            Some((l, r)) if l == to && r == from => {}
            Some((l, r)) => {
                return Err(WebError::CouponColors {
                    found_left: pair.colors[l].clone(),
                    found_right: pair.colors[r].clone(),
                    want_left: pair.colors[to].clone(),
                    want_right: pair.colors[from].clone(),
                })
            }
            None => return Err(WebError::BadCouponElement),
        }
        if !pair.allowed_on(elem, z) {
            return Err(WebError::ThickCoupon(z));
        }
        if z == 0 {
            return Ok(WebMorphism::id(&Object::empty()));
        }
        if fold_units && from == to && *elem == pair.units[from] {
            return Ok(WebMorphism::id(&dom));
        }
        Ok(Self::single(Gen::Coupon { elem: elem.clone(), from, to, z }))
    }

    /// Coupon labelled by a basis element, with colors read off the element.
    pub fn basis_coupon(pair: &GoodPair, b: usize, z: i64) -> Result<Self, WebError> {
        let e = &pair.basis[b];
        Self::coupon(pair, &AlgebraElement::basis(b), e.right, e.left, z)
    }

    pub fn parity(&self, pair: &GoodPair) -> Option<Parity> {
        let mut it = self.terms.iter().map(|(_, d)| d.parity(pair));
        let p = it.next().unwrap_or(Parity::Even);
        if it.all(|x| x == p) {
            Some(p)
        } else {
            None
        }
    }

    fn normalize(mut self) -> Self {
        let mut merged: Vec<(Q, Diagram)> = Vec::with_capacity(self.terms.len());
        for (c, d) in self.terms.drain(..) {
            if let Some(slot) = merged.iter_mut().find(|(_, d2)| *d2 == d) {
                slot.0 += c;
            } else {
                merged.push((c, d));
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        if self.dom.is_degenerate() || self.cod.is_degenerate() {
            merged.clear();
        }
        self.terms = merged;
        self
    }

    /// `self` followed by `top`: returns top ∘ self.
    pub fn then(&self, top: &WebMorphism) -> Result<WebMorphism, WebError> {
        compose(top, self)
    }

    pub fn scale(&self, c: &Q) -> WebMorphism {
        let terms = if c.is_zero() { Vec::new() } else { self.terms.iter().map(|(x, d)| (x * c, d.clone())).collect() };
        WebMorphism { dom: self.dom.clone(), cod: self.cod.clone(), terms }
    }

    pub fn add(&self, other: &WebMorphism) -> Result<WebMorphism, WebError> {
        check_same(&self.dom, &other.dom)?;
        check_same(&self.cod, &other.cod)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(WebMorphism { dom: self.dom.clone(), cod: self.cod.clone(), terms }.normalize())
    }

    pub fn sub(&self, other: &WebMorphism) -> Result<WebMorphism, WebError> {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn whisker(&self, left: &Object, right: &Object) -> WebMorphism {
        let (l, r) = (left.reduced(), right.reduced());
        let mut out = WebMorphism {
            dom: l.concat(&self.dom).concat(&r),
            cod: l.concat(&self.cod).concat(&r),
            terms: self.terms.iter().map(|(c, d)| (c.clone(), d.whiskered(&l, &r))).collect(),
        };
        if l.is_degenerate() || r.is_degenerate() {
            out.terms.clear();
        }
        out
    }
}

fn check_same(expected: &Object, found: &Object) -> Result<(), WebError> {
    if expected.reduced() != found.reduced() {
        return Err(WebError::ObjectMismatch { expected: expected.to_string(), found: found.to_string() });
    }
    Ok(())
}

/// top ∘ bottom
pub fn compose(top: &WebMorphism, bottom: &WebMorphism) -> Result<WebMorphism, WebError> {
    check_same(&bottom.cod, &top.dom)?;
    let mut terms = Vec::with_capacity(top.terms.len() * bottom.terms.len());
    for (c1, d1) in &bottom.terms {
        for (c2, d2) in &top.terms {
            let mut layers = d1.layers.clone();
            layers.extend(d2.layers.iter().cloned());
            terms.push((c1 * c2, Diagram { dom: d1.dom.clone(), layers }));
        }
    }
    Ok(WebMorphism { dom: bottom.dom.clone(), cod: top.cod.clone(), terms }.normalize())
}

/// Composes a bottom-to-top list of morphisms.
pub fn compose_all(steps: &[WebMorphism]) -> Result<WebMorphism, WebError> {
    let mut acc = steps[0].clone();
    for s in &steps[1..] {
        acc = compose(s, &acc)?;
    }
    Ok(acc)
}

/// f ⊗ g = (f ⊗ id) ∘ (id ⊗ g)
pub fn tensor(f: &WebMorphism, g: &WebMorphism) -> WebMorphism {
    let lower = g.whisker(&f.dom, &Object::empty());
    let upper = f.whisker(&Object::empty(), &g.cod);
    compose(&upper, &lower).expect("tensor factors always type-check")
}

pub fn tensor_all(fs: &[WebMorphism]) -> WebMorphism {
    fs.iter().fold(WebMorphism::id(&Object::empty()), |acc, f| tensor(&acc, f))
}

pub fn sum(dom: &Object, cod: &Object, fs: &[WebMorphism]) -> Result<WebMorphism, WebError> {
    fs.iter().try_fold(WebMorphism::zero(dom, cod), |acc, f| acc.add(f))
}

/// Builds a morphism step by step on an unreduced strand list, so that
/// positions stay stable while thicknesses may become zero or negative.
#[derive(Clone, Debug)]
pub struct Stack {
    pub strands: Vec<(usize, i64)>,
    pub morph: WebMorphism,
}

impl Stack {
    pub fn new(strands: Vec<(usize, i64)>) -> Self {
        let o = Object::new(strands.clone());
        Stack { morph: WebMorphism::id(&o), strands }
    }

    pub fn mono(color: usize, xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| (color, x)).collect())
    }

    fn apply(&mut self, pos: usize, width: usize, m: WebMorphism, new: Vec<(usize, i64)>) {
        let left = Object::new(self.strands[..pos].to_vec());
        let right = Object::new(self.strands[pos + width..].to_vec());
        let step = m.whisker(&left, &right);
        let mut strands = self.strands[..pos].to_vec();
        strands.extend(new);
        strands.extend_from_slice(&self.strands[pos + width..]);
        let cod = Object::new(strands.clone());
        self.morph = if self.morph.is_zero() || step.is_zero() {
            WebMorphism::zero(&self.morph.dom, &cod)
        } else {
            compose(&step, &self.morph).expect("stack steps type-check")
        };
        self.morph.cod = cod.reduced();
        self.strands = strands;
    }

    pub fn split(&mut self, pos: usize, x: i64, y: i64) -> &mut Self {
        let (c, t) = self.strands[pos];
        assert_eq!(t, x + y, "split must preserve thickness");
        self.apply(pos, 1, WebMorphism::split(c, x, y), vec![(c, x), (c, y)]);
        self
    }

    pub fn merge(&mut self, pos: usize) -> &mut Self {
        let (c, x) = self.strands[pos];
        let (c2, y) = self.strands[pos + 1];
        assert_eq!(c, c2, "merge needs equal colors");
        self.apply(pos, 2, WebMorphism::merge(c, x, y), vec![(c, x + y)]);
        self
    }

    pub fn cross(&mut self, pos: usize) -> &mut Self {
        let (c1, x) = self.strands[pos];
        let (c2, y) = self.strands[pos + 1];
        self.apply(pos, 2, WebMorphism::cross(c1, x, c2, y), vec![(c2, y), (c1, x)]);
        self
    }

    pub fn coupon(&mut self, pair: &GoodPair, pos: usize, elem: &AlgebraElement, to: usize) -> Result<&mut Self, WebError> {
        let (c, z) = self.strands[pos];
        let m = WebMorphism::coupon(pair, elem, c, to, z)?;
        self.apply(pos, 1, m, vec![(to, z)]);
        Ok(self)
    }

    pub fn morphism(&mut self, pos: usize, width: usize, m: &WebMorphism) -> &mut Self {
        let new = m.cod.parts.clone();
        assert_eq!(Object::new(self.strands[pos..pos + width].to_vec()).reduced(), m.dom, "stack morphism domain");
        self.apply(pos, width, m.clone(), new);
        self
    }

    pub fn finish(&self) -> WebMorphism {
        self.morph.clone()
    }
}

/// i^(Σx) -> i^(x1) ... i^(xk), splitting off the leftmost piece first.
pub fn multi_split(color: usize, xs: &[i64]) -> WebMorphism {
    let total: i64 = xs.iter().sum();
    let mut st = Stack::new(vec![(color, total)]);
    let mut rest = total;
    for (k, &x) in xs.iter().enumerate().take(xs.len().saturating_sub(1)) {
        rest -= x;
        st.split(k, x, rest);
    }
    if xs.is_empty() {
        return WebMorphism::id(&Object::empty());
    }
    st.finish()
}

/// i^(x1) ... i^(xk) -> i^(Σx), merging from the left.
pub fn multi_merge(color: usize, xs: &[i64]) -> WebMorphism {
    let mut st = Stack::new(xs.iter().map(|&x| (color, x)).collect());
    for _ in 1..xs.len() {
        st.merge(0);
    }
    st.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Routing {
    LeftmostDescent,
    RightmostDescent,
}

/// Crossing-only diagram taking the parts of `obj` to the order `target`,
/// where `target` lists input part indices in output order.
pub fn permutation_diagram(obj: &Object, target: &[usize], routing: Routing) -> WebMorphism {
    let mut rank = vec![0; target.len()];
    for (p, &a) in target.iter().enumerate() {
        rank[a] = p;
    }
    let mut cur: Vec<usize> = (0..obj.len()).collect();
    let mut st = Stack::new(obj.parts.clone());
    loop {
        let descents: Vec<usize> = (0..cur.len().saturating_sub(1)).filter(|&p| rank[cur[p]] > rank[cur[p + 1]]).collect();
        let p = match routing {
            Routing::LeftmostDescent => descents.first(),
            Routing::RightmostDescent => descents.last(),
        };
        let Some(&p) = p else { break };
        if st.strands[p].1 != 0 && st.strands[p + 1].1 != 0 {
            st.cross(p);
        } else {
            st.strands.swap(p, p + 1);
        }
        cur.swap(p, p + 1);
    }
    st.finish()
}

/// Permutation σ on thin strands with colors `colors`: strand k moves to σ(k).
pub fn thin_permutation(colors: &[usize], sigma: &[usize]) -> WebMorphism {
    let mut target = vec![0; sigma.len()];
    for (k, &p) in sigma.iter().enumerate() {
        target[p] = k;
    }
    permutation_diagram(&Object::thin(colors), &target, Routing::LeftmostDescent)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    A,
    Diamond,
}

/// b^⋄ on thickness x: explode into thin strands, b on each, merge back.
pub fn coupon_diamond(pair: &GoodPair, b: usize, x: i64) -> Result<WebMorphism, WebError> {
    let e = &pair.basis[b];
    if x <= 1 {
        return WebMorphism::basis_coupon(pair, b, x);
    }
    let ones = vec![1; x as usize];
    let thin = tensor_all(&(0..x).map(|_| WebMorphism::basis_coupon(pair, b, 1)).collect::<Result<Vec<_>, _>>()?);
    compose_all(&[multi_split(e.right, &ones), thin, multi_merge(e.left, &ones)])
}

/// b^a on thickness x: the plain coupon when allowed, else b^⋄.
pub fn coupon_a(pair: &GoodPair, b: usize, x: i64) -> Result<WebMorphism, WebError> {
    if x <= 1 || pair.sub[b] {
        WebMorphism::basis_coupon(pair, b, x)
    } else {
        coupon_diamond(pair, b, x)
    }
}

/// μ-coupon i^(|μ|) -> j^(|μ|) for a restricted composition over jB_i.
pub fn mu_coupon(pair: &GoodPair, mu: &[usize], from: usize, to: usize, flavor: Flavor) -> Result<WebMorphism, WebError> {
    let supp: Vec<usize> = (0..mu.len()).filter(|&b| mu[b] > 0).collect();
    let sizes: Vec<i64> = supp.iter().map(|&b| mu[b] as i64).collect();
    if supp.is_empty() {
        return Ok(WebMorphism::id(&Object::empty()));
    }
    let pieces = supp
        .iter()
        .map(|&b| match flavor {
            Flavor::A => coupon_a(pair, b, mu[b] as i64),
            Flavor::Diamond => coupon_diamond(pair, b, mu[b] as i64),
        })
        .collect::<Result<Vec<_>, _>>()?;
    compose_all(&[multi_split(from, &sizes), tensor_all(&pieces), multi_merge(to, &sizes)])
}

/// The basis diagram attached to a matrix composition.
pub fn eta(pair: &GoodPair, m: &MatrixComposition, flavor: Flavor) -> Result<WebMorphism, WebError> {
    eta_routed(pair, m, flavor, Routing::LeftmostDescent)
}

pub fn eta_routed(pair: &GoodPair, m: &MatrixComposition, flavor: Flavor, routing: Routing) -> Result<WebMorphism, WebError> {
    if !m.is_valid(pair) {
        return Err(WebError::InvalidComposition);
    }
    let (t, u) = (m.t(), m.u());
    let size = |r: usize, s: usize| m.cell_size(r, s) as i64;
    let splits: Vec<WebMorphism> = (0..t).map(|r| multi_split(m.src.parts[r].0, &(0..u).map(|s| size(r, s)).collect::<Vec<_>>())).collect();
    let mut coupons = Vec::new();
    let mut pieces = Vec::new();
    for r in 0..t {
        for s in 0..u {
            if size(r, s) > 0 {
                coupons.push(mu_coupon(pair, m.cell(r, s), m.src.parts[r].0, m.dst.parts[s].0, flavor)?);
                pieces.push((r, s));
            }
        }
    }
    let coupon_layer = tensor_all(&coupons);
    let mut order: Vec<usize> = (0..pieces.len()).collect();
    order.sort_by_key(|&k| (pieces[k].1, pieces[k].0));
    let z = permutation_diagram(&coupon_layer.cod, &order, routing);
    let merges: Vec<WebMorphism> = (0..u).map(|s| multi_merge(m.dst.parts[s].0, &(0..t).map(|r| size(r, s)).collect::<Vec<_>>())).collect();
    compose_all(&[tensor_all(&splits), coupon_layer, z, tensor_all(&merges)])
}

/// η^⋄ = [μ]!_b η^a, as an expected scalar.
pub fn diamond_scalar(pair: &GoodPair, m: &MatrixComposition) -> Q {
    bang(m, &pair.sub)
}

fn thin_version(obj: &Object) -> Object {
    Object::new(obj.parts.iter().flat_map(|&(c, x)| std::iter::repeat((c, 1)).take(x.max(0) as usize)).collect())
}

fn split_all(obj: &Object) -> WebMorphism {
    tensor_all(&obj.parts.iter().map(|&(c, x)| multi_split(c, &vec![1; x as usize])).collect::<Vec<_>>())
}

fn merge_all(obj: &Object) -> WebMorphism {
    tensor_all(&obj.parts.iter().map(|&(c, x)| multi_merge(c, &vec![1; x as usize])).collect::<Vec<_>>())
}

/// Thin-strand version of f: split the codomain, merge the domain.
pub fn explode(f: &WebMorphism) -> Result<WebMorphism, WebError> {
    compose_all(&[merge_all(&f.dom), f.clone(), split_all(&f.cod)])
}

/// Thick version of a morphism between the thin versions of src and dst.
pub fn contract(g: &WebMorphism, src: &Object, dst: &Object) -> Result<WebMorphism, WebError> {
    check_same(&thin_version(src), &g.dom)?;
    check_same(&thin_version(dst), &g.cod)?;
    compose_all(&[split_all(&src.reduced()), g.clone(), merge_all(&dst.reduced())])
}

/// e^{(f,t)}_{[r,s],λ} on the single-colored object λ (indices from 0).
pub fn e_generator(pair: &GoodPair, r: usize, s: usize, lambda: &[i64], f: &AlgebraElement, t: i64) -> Result<WebMorphism, WebError> {
    let c = 0;
    let mut st = Stack::mono(c, lambda);
    let ls = lambda[s];
    if r < s {
        st.split(s, t, ls - t);
        st.coupon(pair, s, f, c)?;
        for k in (r + 1..s).rev() {
            st.cross(k);
        }
        st.merge(r);
    } else if r > s {
        st.split(s, ls - t, t);
        st.coupon(pair, s + 1, f, c)?;
        for k in s + 1..r {
            st.cross(k);
        }
        st.merge(r);
    } else {
        st.split(s, ls - t, t);
        st.coupon(pair, s + 1, f, c)?;
        st.merge(s);
    }
    Ok(st.finish())
}

pub use crate::dsl::parse_diagram;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enum_m;
    use crate::superalgebra::builtin;

    #[test]
    fn compose_type_checks() {
        let m = compose(&WebMorphism::merge(0, 1, 1), &WebMorphism::split(0, 1, 1)).unwrap();
        assert_eq!(m.terms[0].1.layers.len(), 2);
        assert_eq!(m.dom, Object::mono(0, &[2]));
        let z = builtin("zigzag").unwrap();
        let a = WebMorphism::id(&Object::mono(1, &[1]));
        let b = WebMorphism::id(&Object::mono(0, &[1]));
        assert!(matches!(compose(&a, &b), Err(WebError::ObjectMismatch { .. })));
        let _ = z;
    }

    #[test]
    fn zero_and_negative_thickness() {
        assert_eq!(WebMorphism::split(0, 0, 2), WebMorphism::id(&Object::mono(0, &[2])));
        assert!(WebMorphism::split(0, -1, 3).is_zero());
    }

    #[test]
    fn thick_coupon_needs_sub() {
        let c = builtin("clifford1").unwrap();
        assert_eq!(WebMorphism::basis_coupon(&c, 1, 2), Err(WebError::ThickCoupon(2)));
        assert!(WebMorphism::basis_coupon(&c, 1, 1).is_ok());
    }

    #[test]
    fn eta_diagonal_is_identity() {
        let k = builtin("trivial").unwrap();
        let o = Object::mono(0, &[3]);
        let ms = enum_m(&k, &o, &o);
        assert_eq!(eta(&k, &ms[0], Flavor::A).unwrap(), WebMorphism::id(&o));
    }

    #[test]
    fn eta_antidiagonal_is_crossing() {
        let k = builtin("trivial").unwrap();
        let o = Object::mono(0, &[1, 1]);
        let ms = enum_m(&k, &o, &o);
        assert_eq!(ms.len(), 2);
        let anti = ms.iter().find(|m| m.cell(0, 1)[0] == 1).unwrap();
        assert_eq!(eta(&k, anti, Flavor::A).unwrap(), WebMorphism::cross(0, 1, 0, 1));
    }

    #[test]
    fn tensor_parity_adds() {
        let c = builtin("clifford1").unwrap();
        let f = WebMorphism::basis_coupon(&c, 1, 1).unwrap();
        assert_eq!(tensor(&f, &f).parity(&c), Some(Parity::Even));
        assert_eq!(tensor(&f, &WebMorphism::id(&Object::mono(0, &[1]))).parity(&c), Some(Parity::Odd));
        assert_eq!(tensor(&f, &WebMorphism::id(&Object::empty())), f);
    }
}
