//! Colored compositions, restricted basis-compositions and partitions.

use std::fmt;

use num_traits::One;

use crate::exact::{factorial, Q};
use crate::superalgebra::{GoodPair, SimpleData, SimpleKind};

/// A colored composition. Parts of thickness zero may appear in the
/// unreduced view and are dropped by `reduced`. A negative thickness marks a
/// formal object whose hom spaces are all zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Object {
    pub parts: Vec<(usize, i64)>,
}

impl Object {
    pub fn new(parts: Vec<(usize, i64)>) -> Self {
        Object { parts }
    }

    pub fn empty() -> Self {
        Object::default()
    }

    pub fn thin(colors: &[usize]) -> Self {
        Object { parts: colors.iter().map(|&c| (c, 1)).collect() }
    }

    /// Single-colored object with the given thicknesses (zeros kept).
    pub fn mono(color: usize, xs: &[i64]) -> Self {
        Object { parts: xs.iter().map(|&x| (color, x)).collect() }
    }

    pub fn reduced(&self) -> Object {
        Object { parts: self.parts.iter().copied().filter(|p| p.1 > 0).collect() }
    }

    pub fn is_reduced(&self) -> bool {
        self.parts.iter().all(|p| p.1 > 0)
    }

    pub fn total(&self) -> i64 {
        self.parts.iter().map(|p| p.1).sum()
    }

    pub fn is_degenerate(&self) -> bool {
        self.parts.iter().any(|p| p.1 < 0)
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn concat(&self, other: &Object) -> Object {
        let mut parts = self.parts.clone();
        parts.extend_from_slice(&other.parts);
        Object { parts }
    }

    pub fn slice(&self, a: usize, b: usize) -> Object {
        Object { parts: self.parts[a..b].to_vec() }
    }

    pub fn display(&self, pair: &GoodPair) -> String {
        if self.parts.is_empty() {
            return "()".into();
        }
        self.parts.iter().map(|(c, x)| format!("{}^({})", pair.colors[*c], x)).collect::<Vec<_>>().join(" ")
    }

    /// Parses `i^(x) j^(y) ...`; `()` is the empty object.
    pub fn parse(pair: &GoodPair, text: &str) -> Result<Object, String> {
        let t = text.trim();
        if t.is_empty() || t == "()" {
            return Ok(Object::empty());
        }
        let mut parts = Vec::new();
        let mut rest = t;
        while !rest.is_empty() {
            let (head, tail) = rest.split_once("^(").ok_or_else(|| format!("expected `color^(x)` in `{rest}`"))?;
            let (num, after) = tail.split_once(')').ok_or_else(|| format!("unclosed `(` in `{rest}`"))?;
            let color = head.trim().trim_start_matches(',').trim();
            let c = pair.color_index(color).ok_or_else(|| format!("unknown color `{color}`"))?;
            let x: i64 = num.trim().parse().map_err(|_| format!("bad thickness `{num}`"))?;
            parts.push((c, x));
            rest = after.trim_start().trim_start_matches(',').trim_start();
        }
        Ok(Object { parts })
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|(c, x)| format!("{}^({})", c + 1, x)).collect();
        write!(f, "{}", s.join(" "))
    }
}

/// Compositions of d into exactly n nonnegative parts, lexicographically descending.
pub fn compositions(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            if d == 0 {
                out.push(cur.clone());
            }
            return;
        }
        if n == 1 {
            cur.push(d);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in (0..=d).rev() {
            cur.push(x);
            rec(n - 1, d - x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// Reduced colored compositions with at most n parts totalling d.
pub fn enum_colored(n: usize, d: usize, ncolors: usize) -> Vec<Object> {
    fn rec(n: usize, d: usize, ncolors: usize, cur: &mut Vec<(usize, i64)>, out: &mut Vec<Object>) {
        if d == 0 {
            out.push(Object { parts: cur.clone() });
            return;
        }
        if n == 0 {
            return;
        }
        for x in 1..=d {
            for c in 0..ncolors {
                cur.push((c, x as i64));
                rec(n - 1, d - x, ncolors, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, d, ncolors, &mut Vec::new(), &mut out);
    out
}

/// Unreduced n-part colored compositions of d (each part carries a color,
/// zero parts included).
pub fn enum_colored_unreduced(n: usize, d: usize, ncolors: usize) -> Vec<Object> {
    let mut out = Vec::new();
    for comp in compositions(n, d) {
        let mut colorings: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            colorings = colorings
                .into_iter()
                .flat_map(|c| (0..ncolors).map(move |k| {
                    let mut c = c.clone();
                    c.push(k);
                    c
                }))
                .collect();
        }
        for col in colorings {
            out.push(Object { parts: col.into_iter().zip(comp.iter().map(|&x| x as i64)).collect() });
        }
    }
    out
}

/// Restricted composition over the basis: dense multiplicities, odd entries at most 1.
pub type RestrictedComposition = Vec<usize>;

/// The grid (mu_{r,s}) indexing basis diagrams from `src` to `dst`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatrixComposition {
    pub src: Object,
    pub dst: Object,
    /// cells[r * dst.len() + s]
    pub cells: Vec<RestrictedComposition>,
}

impl MatrixComposition {
    pub fn t(&self) -> usize {
        self.src.len()
    }

    pub fn u(&self) -> usize {
        self.dst.len()
    }

    pub fn cell(&self, r: usize, s: usize) -> &RestrictedComposition {
        &self.cells[r * self.u() + s]
    }

    pub fn cell_size(&self, r: usize, s: usize) -> usize {
        self.cell(r, s).iter().sum()
    }

    /// Checks the row/column sums and the block typing.
    pub fn is_valid(&self, pair: &GoodPair) -> bool {
        if self.cells.len() != self.t() * self.u() {
            return false;
        }
        for r in 0..self.t() {
            if (0..self.u()).map(|s| self.cell_size(r, s)).sum::<usize>() as i64 != self.src.parts[r].1 {
                return false;
            }
        }
        for s in 0..self.u() {
            if (0..self.t()).map(|r| self.cell_size(r, s)).sum::<usize>() as i64 != self.dst.parts[s].1 {
                return false;
            }
        }
        for r in 0..self.t() {
            for s in 0..self.u() {
                let (i, j) = (self.src.parts[r].0, self.dst.parts[s].0);
                for (b, &m) in self.cell(r, s).iter().enumerate() {
                    if m == 0 {
                        continue;
                    }
                    let e = &pair.basis[b];
                    if e.left != j || e.right != i || (e.parity.is_odd() && m > 1) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn parity(&self, pair: &GoodPair) -> crate::exact::Parity {
        let mut bits = 0;
        for c in &self.cells {
            for (b, &m) in c.iter().enumerate() {
                bits += (m as u32) * pair.parity(b).bit();
            }
        }
        crate::exact::Parity::from_bit(bits)
    }

    pub fn display(&self, pair: &GoodPair) -> String {
        let mut rows = Vec::new();
        for r in 0..self.t() {
            let mut cells = Vec::new();
            for s in 0..self.u() {
                let c: Vec<String> = self
                    .cell(r, s)
                    .iter()
                    .enumerate()
                    .filter(|(_, &m)| m > 0)
                    .map(|(b, &m)| if m == 1 { pair.basis[b].id.clone() } else { format!("{}^{}", pair.basis[b].id, m) })
                    .collect();
                cells.push(if c.is_empty() { "0".to_string() } else { c.join("+") });
            }
            rows.push(format!("[{}]", cells.join(", ")));
        }
        rows.join(" ")
    }
}

/// All matrix compositions from `src` to `dst`. Zero parts are allowed and
/// give zero rows or columns.
pub fn enum_m(pair: &GoodPair, src: &Object, dst: &Object) -> Vec<MatrixComposition> {
    let mut out = Vec::new();
    if src.total() != dst.total() || src.is_degenerate() || dst.is_degenerate() {
        return out;
    }
    let (t, u) = (src.len(), dst.len());
    let blocks: Vec<Vec<usize>> = (0..t * u).map(|k| pair.block(dst.parts[k % u].0, src.parts[k / u].0)).collect();
    let mut rowrem: Vec<usize> = src.parts.iter().map(|p| p.1 as usize).collect();
    let mut colrem: Vec<usize> = dst.parts.iter().map(|p| p.1 as usize).collect();
    let mut cells = vec![vec![0usize; pair.dim()]; t * u];

    struct Ctx<'a> {
        pair: &'a GoodPair,
        t: usize,
        u: usize,
        blocks: Vec<Vec<usize>>,
        src: &'a Object,
        dst: &'a Object,
    }

    fn rec(
        ctx: &Ctx,
        cell: usize,
        pos: usize,
        rowrem: &mut [usize],
        colrem: &mut [usize],
        cells: &mut Vec<Vec<usize>>,
        out: &mut Vec<MatrixComposition>,
    ) {
        if cell == ctx.t * ctx.u {
            if colrem.iter().all(|&c| c == 0) {
                out.push(MatrixComposition { src: ctx.src.clone(), dst: ctx.dst.clone(), cells: cells.clone() });
            }
            return;
        }
        let (r, s) = (cell / ctx.u, cell % ctx.u);
        let block = &ctx.blocks[cell];
        if pos == block.len() {
            if s == ctx.u - 1 && rowrem[r] != 0 {
                return;
            }
            rec(ctx, cell + 1, 0, rowrem, colrem, cells, out);
            return;
        }
        let b = block[pos];
        let mut cap = rowrem[r].min(colrem[s]);
        if ctx.pair.parity(b).is_odd() {
            cap = cap.min(1);
        }
        for m in (0..=cap).rev() {
            cells[cell][b] = m;
            rowrem[r] -= m;
            colrem[s] -= m;
            rec(ctx, cell, pos + 1, rowrem, colrem, cells, out);
            rowrem[r] += m;
            colrem[s] += m;
        }
        cells[cell][b] = 0;
    }

    if t == 0 || u == 0 {
        if src.total() == 0 {
            out.push(MatrixComposition { src: src.clone(), dst: dst.clone(), cells: vec![vec![0; pair.dim()]; t * u] });
        }
        return out;
    }
    let ctx = Ctx { pair, t, u, blocks, src, dst };
    rec(&ctx, 0, 0, &mut rowrem, &mut colrem, &mut cells, &mut out);
    out
}

/// Product of mu_{r,s}(b)! over cells and over b in the subset.
pub fn bang(m: &MatrixComposition, subset: &[bool]) -> Q {
    let mut acc = Q::one();
    for c in &m.cells {
        for (b, &k) in c.iter().enumerate() {
            if subset[b] && k > 1 {
                acc *= factorial(k as u64);
            }
        }
    }
    acc
}

/// Partitions of d into parts, largest first, with at most `max_parts` parts.
pub fn partitions(d: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rem: usize, maxp: usize, parts_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        for p in (1..=maxp.min(rem)).rev() {
            cur.push(p);
            rec(rem - p, p, parts_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(d, d, max_parts, &mut Vec::new(), &mut out);
    out
}

pub fn is_hook(lambda: &[usize], m: usize, n: usize) -> bool {
    lambda.get(m).map_or(true, |&x| x <= n)
}

pub fn is_strict(lambda: &[usize]) -> bool {
    lambda.windows(2).all(|w| w[0] > w[1])
}

pub type Multipartition = Vec<Vec<usize>>;

/// Multipartitions of d indexed by the simples, with hook shapes for type M
/// factors and strict shapes with at most n*odd parts for type Q factors.
pub fn enum_multipartitions(simple_data: &[SimpleData], n: usize, d: usize) -> Vec<Multipartition> {
    let shapes = |s: &SimpleData, k: usize| -> Vec<Vec<usize>> {
        match s.kind {
            SimpleKind::M => partitions(k, k).into_iter().filter(|l| is_hook(l, n * s.even, n * s.odd)).collect(),
            SimpleKind::Q => partitions(k, n * s.odd).into_iter().filter(|l| is_strict(l)).collect(),
        }
    };
    let mut out = Vec::new();
    for split in compositions(simple_data.len(), d) {
        let mut acc: Vec<Multipartition> = vec![vec![]];
        for (s, &k) in simple_data.iter().zip(&split) {
            let sh = shapes(s, k);
            acc = acc
                .into_iter()
                .flat_map(|mp| sh.iter().map(move |l| {
                    let mut mp = mp.clone();
                    mp.push(l.clone());
                    mp
                }))
                .collect();
        }
        out.extend(acc);
    }
    out
}
