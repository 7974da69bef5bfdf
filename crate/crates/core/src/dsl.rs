//! Text format for diagrams and formal sums of diagrams.
//!
//! ```text
//! dom: 1^(2)
//! layers: [split(1;1,1)] [coupon(c;1,1->1), id(1^(1))] [merge(1;1,1)]
//! ```
//!
//! A file may instead hold `terms:` followed by `term <coef>: [..] [..]` blocks.

use num_traits::One;

use crate::combinatorics::Object;
use crate::exact::{parse_q, Q};
use crate::superalgebra::GoodPair;
use crate::webcat::{compose, sum, tensor_all, WebMorphism};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum DslError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("type error in layer {layer}: {msg}")]
    Type { layer: usize, msg: String },
}

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { chars: src.chars().collect(), pos: 0, _src: src }
    }

    fn loc(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn err(&self, pos: usize, msg: impl Into<String>) -> DslError {
        let (line, col) = self.loc(pos);
        DslError::Parse { line, col, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if c == '#' {
                while self.pos < self.chars.len() && self.chars[self.pos] != '\n' {
                    self.pos += 1;
                }
            } else if c.is_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat_word(&mut self, w: &str) -> bool {
        self.skip_ws();
        let wc: Vec<char> = w.chars().collect();
        if self.chars[self.pos..].starts_with(&wc) {
            self.pos += wc.len();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_') {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    /// Text up to the next top-level occurrence of `stop`, tracking parentheses.
    fn until(&mut self, stop: &[char]) -> Result<(usize, String), DslError> {
        self.skip_ws();
        let start = self.pos;
        let mut depth = 0i32;
        while self.pos < self.chars.len() {
            let c = self.chars[self.pos];
            if depth == 0 && stop.contains(&c) {
                return Ok((start, self.chars[start..self.pos].iter().collect()));
            }
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            self.pos += 1;
        }
        Err(self.err(start, format!("expected one of {stop:?}")))
    }
}

fn parse_box(pair: &GoodPair, cur: &mut Cursor) -> Result<WebMorphism, DslError> {
    cur.skip_ws();
    let start = cur.pos;
    let name = cur.ident();
    cur.skip_ws();
    if cur.peek() != Some('(') {
        return Err(cur.err(cur.pos, format!("expected `(` after `{name}`")));
    }
    cur.pos += 1;
    let (_, full_args) = cur.until(&[')'])?;
    if cur.peek() != Some(')') {
        return Err(cur.err(start, "unclosed box"));
    }
    cur.pos += 1;
    let bad = |msg: String| cur.err(start, msg);
    let color = |s: &str| pair.color_index(s.trim()).ok_or_else(|| bad(format!("unknown color `{}`", s.trim())));
    let int = |s: &str| s.trim().parse::<i64>().map_err(|_| bad(format!("bad thickness `{}`", s.trim())));
    match name.as_str() {
        "id" => {
            let o = Object::parse(pair, &full_args).map_err(bad)?;
            Ok(WebMorphism::id(&o))
        }
        "split" | "merge" => {
            let (c, xy) = full_args.split_once(';').ok_or_else(|| bad(format!("{name} expects `color;x,y`")))?;
            let (x, y) = xy.split_once(',').ok_or_else(|| bad(format!("{name} expects `color;x,y`")))?;
            let (c, x, y) = (color(c)?, int(x)?, int(y)?);
            Ok(if name == "split" { WebMorphism::split(c, x, y) } else { WebMorphism::merge(c, x, y) })
        }
        "cross" => {
            let o = Object::parse(pair, &full_args).map_err(bad)?;
            if o.len() != 2 {
                return Err(bad("cross expects two strands".into()));
            }
            let ((c1, x), (c2, y)) = (o.parts[0], o.parts[1]);
            Ok(WebMorphism::cross(c1, x, c2, y))
        }
        "coupon" => {
            let (e, rest) = full_args.split_once(';').ok_or_else(|| bad("coupon expects `elem; i,x -> j`".into()))?;
            let (ix, j) = rest.split_once("->").ok_or_else(|| bad("coupon expects `elem; i,x -> j`".into()))?;
            let (i, x) = ix.split_once(',').ok_or_else(|| bad("coupon expects `elem; i,x -> j`".into()))?;
            let elem = pair.parse_element(e).map_err(bad)?;
            WebMorphism::coupon(pair, &elem, color(i)?, color(j)?, int(x)?).map_err(|err| bad(err.to_string()))
        }
        other => Err(bad(format!("unknown box `{other}`"))),
    }
}

fn parse_layers(pair: &GoodPair, cur: &mut Cursor, dom: Option<Object>) -> Result<WebMorphism, DslError> {
    let mut layers: Vec<WebMorphism> = Vec::new();
    loop {
        cur.skip_ws();
        if cur.peek() != Some('[') {
            break;
        }
        cur.pos += 1;
        let mut boxes = Vec::new();
        loop {
            boxes.push(parse_box(pair, cur)?);
            cur.skip_ws();
            match cur.peek() {
                Some(',') => cur.pos += 1,
                Some(']') => {
                    cur.pos += 1;
                    break;
                }
                _ => return Err(cur.err(cur.pos, "expected `,` or `]`")),
            }
        }
        layers.push(tensor_all(&boxes));
    }
    let dom = match dom {
        Some(d) => d.reduced(),
        None => match layers.first() {
            Some(l) => l.dom.clone(),
            None => return Err(cur.err(cur.pos, "expected at least one layer")),
        },
    };
    let mut acc = WebMorphism::id(&dom);
    for (k, l) in layers.iter().enumerate() {
        if acc.cod.is_degenerate() || l.dom.is_degenerate() {
            acc = WebMorphism::zero(&acc.dom, &l.cod);
            continue;
        }
        acc = compose(l, &acc).map_err(|e| DslError::Type { layer: k + 1, msg: e.to_string() })?;
    }
    Ok(acc)
}

/// Parses a diagram or a `terms:` list into a morphism.
pub fn parse_diagram(pair: &GoodPair, text: &str) -> Result<WebMorphism, DslError> {
    let mut cur = Cursor::new(text);
    let mut dom = None;
    if cur.eat_word("dom:") {
        let (p, s) = cur.until(&['\n'])?;
        dom = Some(Object::parse(pair, &s).map_err(|m| cur.err(p, m))?);
    }
    let out = if cur.eat_word("terms:") {
        let mut terms = Vec::new();
        while cur.eat_word("term") {
            let (p, c) = cur.until(&[':'])?;
            let coef: Q = parse_q(&c).ok_or_else(|| cur.err(p, format!("bad coefficient `{}`", c.trim())))?;
            cur.pos += 1;
            cur.eat_word("layers:");
            terms.push(parse_layers(pair, &mut cur, dom.clone())?.scale(&coef));
        }
        let Some(first) = terms.first() else { return Err(cur.err(cur.pos, "expected `term <coef>:`")) };
        let (d, c) = (first.dom.clone(), first.cod.clone());
        sum(&d, &c, &terms).map_err(|e| DslError::Type { layer: 0, msg: e.to_string() })?
    } else {
        cur.eat_word("layers:");
        parse_layers(pair, &mut cur, dom)?.scale(&Q::one())
    };
    cur.skip_ws();
    if cur.pos < cur.chars.len() {
        return Err(cur.err(cur.pos, "unexpected trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::superalgebra::builtin;

    #[test]
    fn odd_knothole_text() {
        let c = builtin("clifford1").unwrap();
        let m = parse_diagram(&c, "layers: [split(1;1,1)] [coupon(c;1,1->1), id(1^(1))] [merge(1;1,1)]").unwrap();
        assert_eq!(m.terms.len(), 1);
        assert_eq!(m.terms[0].1.layers.len(), 3);
        assert_eq!(m.dom, Object::mono(0, &[2]));
    }

    #[test]
    fn zero_and_negative() {
        let k = builtin("trivial").unwrap();
        assert_eq!(parse_diagram(&k, "[split(1;0,2)]").unwrap(), WebMorphism::id(&Object::mono(0, &[2])));
        assert!(parse_diagram(&k, "[split(1;-1,3)]").unwrap().is_zero());
    }

    #[test]
    fn errors_carry_positions() {
        let k = builtin("trivial").unwrap();
        match parse_diagram(&k, "layers:\n  [split(1;1,1)]\n  [frob(1)]") {
            Err(DslError::Parse { line, col, .. }) => assert_eq!((line, col), (3, 4)),
            other => panic!("{other:?}"),
        }
        match parse_diagram(&k, "[split(1;1,1)] [merge(1;2,1)]") {
            Err(DslError::Type { layer, .. }) => assert_eq!(layer, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn terms_list() {
        let k = builtin("trivial").unwrap();
        let m = parse_diagram(&k, "dom: 1^(2)\nterms:\n term 2: [split(1;1,1)] [merge(1;1,1)]\n term -1/2: [id(1^(2))]").unwrap();
        assert_eq!(m.terms.len(), 2);
    }
}
