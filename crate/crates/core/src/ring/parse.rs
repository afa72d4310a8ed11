//! The textual input language: ring declarations, ideals, and sequences.
//!
//! One statement per `;`, `#` starts a comment:
//!
//! ```text
//! ring QQ[x1..x5, y1..y5] xdeg x* ydeg y*;
//! ring GF(7)[x1] mod x1^2;
//! ideal I = x1*x2, x2*x3;
//! seq a = x2*x3, x1*x3 + x1*x2, x1*x2;
//! ```

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::field::{is_prime, FieldSpec};
use crate::ring::monomial::Monomial;
use crate::ring::poly::Polynomial;
use crate::ring::{Bidegree, Ring, RingDescriptor};

/// Everything declared by an input document.
#[derive(Debug, Clone)]
pub struct Session {
    pub ring: RingDescriptor,
    pub ideals: Vec<(String, Vec<Polynomial>)>,
    pub seqs: Vec<(String, Vec<Polynomial>)>,
}

impl Session {
    pub fn first_seq(&self) -> Option<&[Polynomial]> {
        self.seqs.first().map(|(_, v)| v.as_slice())
    }

    pub fn first_ideal(&self) -> Option<&[Polynomial]> {
        self.ideals.first().map(|(_, v)| v.as_slice())
    }

    /// The first seq when present, else the first ideal's generators.
    pub fn main_sequence(&self) -> Option<&[Polynomial]> {
        self.first_seq().or_else(|| self.first_ideal())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Punct(char),
    DotDot,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
        } else if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                bump(&mut chars);
            }
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let n = s.parse::<BigInt>().map_err(|_| err(tl, tc, "bad integer"))?;
            out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
        } else if c == '.' {
            bump(&mut chars);
            if chars.peek() == Some(&'.') {
                bump(&mut chars);
                out.push(Spanned { tok: Tok::DotDot, line: tl, col: tc });
            } else {
                return Err(err(tl, tc, "stray `.` (ranges use `..`)"));
            }
        } else if "+-*/^()[],;=".contains(c) {
            bump(&mut chars);
            out.push(Spanned { tok: Tok::Punct(c), line: tl, col: tc });
        } else {
            return Err(err(tl, tc, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn here(&self) -> (usize, usize) {
        match self.peek() {
            Some(s) => (s.line, s.col),
            None => self
                .toks
                .last()
                .map(|s| (s.line, s.col + 1))
                .unwrap_or((1, 1)),
        }
    }

    fn next(&mut self, what: &str) -> Result<Spanned> {
        let (l, c) = self.here();
        let s = self.toks.get(self.pos).cloned().ok_or_else(|| {
            err(l, c, format!("expected {what}, found end of input"))
        })?;
        self.pos += 1;
        Ok(s)
    }

    fn expect_punct(&mut self, ch: char) -> Result<()> {
        let s = self.next(&format!("`{ch}`"))?;
        if s.tok == Tok::Punct(ch) {
            Ok(())
        } else {
            Err(err(s.line, s.col, format!("expected `{ch}`")))
        }
    }

    fn eat_punct(&mut self, ch: char) -> bool {
        if let Some(s) = self.peek() {
            if s.tok == Tok::Punct(ch) {
                self.pos += 1;
                return true;
            }
        }
        false
    }

    fn ident(&mut self, what: &str) -> Result<(String, usize, usize)> {
        let s = self.next(what)?;
        match s.tok {
            Tok::Ident(name) => Ok((name, s.line, s.col)),
            _ => Err(err(s.line, s.col, format!("expected {what}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<(BigInt, usize, usize)> {
        let s = self.next(what)?;
        match s.tok {
            Tok::Int(n) => Ok((n, s.line, s.col)),
            _ => Err(err(s.line, s.col, format!("expected {what}"))),
        }
    }
}

fn split_numeric_suffix(name: &str) -> Option<(&str, u64)> {
    let bytes = name.as_bytes();
    let mut start = name.len();
    while start > 0 && bytes[start - 1].is_ascii_digit() {
        start -= 1;
    }
    if start == name.len() || start == 0 {
        return None;
    }
    name[start..].parse().ok().map(|n| (&name[..start], n))
}

fn parse_varlist(p: &mut Parser) -> Result<Vec<String>> {
    let mut vars = Vec::new();
    loop {
        let (name, l, c) = p.ident("variable name")?;
        if let Some(s) = p.peek() {
            if s.tok == Tok::DotDot {
                p.pos += 1;
                let (end, el, ec) = p.ident("range end")?;
                let (pre_a, a) = split_numeric_suffix(&name)
                    .ok_or_else(|| err(l, c, "range start needs a numeric suffix"))?;
                let (pre_b, b) = split_numeric_suffix(&end)
                    .ok_or_else(|| err(el, ec, "range end needs a numeric suffix"))?;
                if pre_a != pre_b {
                    return Err(err(el, ec, "range endpoints have different prefixes"));
                }
                if a > b {
                    return Err(err(el, ec, "empty variable range"));
                }
                for k in a..=b {
                    vars.push(format!("{pre_a}{k}"));
                }
                if !p.eat_punct(',') {
                    break;
                }
                continue;
            }
        }
        vars.push(name);
        if !p.eat_punct(',') {
            break;
        }
    }
    Ok(vars)
}

#[derive(Debug, Clone)]
struct Glob {
    prefix: String,
    star: bool,
}

impl Glob {
    fn matches(&self, name: &str) -> bool {
        if self.star {
            name.starts_with(&self.prefix)
        } else {
            name == self.prefix
        }
    }
}

fn parse_glob(p: &mut Parser) -> Result<Glob> {
    let (prefix, _, _) = p.ident("variable glob")?;
    let star = p.eat_punct('*');
    Ok(Glob { prefix, star })
}

fn parse_field(p: &mut Parser) -> Result<FieldSpec> {
    let (name, l, c) = p.ident("field (QQ or GF(p))")?;
    match name.as_str() {
        "QQ" => Ok(FieldSpec::Rational),
        "GF" => {
            p.expect_punct('(')?;
            let (n, nl, nc) = p.int("prime modulus")?;
            p.expect_punct(')')?;
            let p64 = n
                .to_u64()
                .filter(|&v| v < (1 << 31))
                .ok_or_else(|| err(nl, nc, "modulus must be below 2^31"))?;
            if !is_prime(p64) {
                return Err(err(nl, nc, format!("{p64} is not prime")));
            }
            Ok(FieldSpec::Prime(p64 as u32))
        }
        _ => Err(err(l, c, format!("unknown field `{name}`"))),
    }
}

fn parse_ring_stmt(p: &mut Parser, field_override: Option<FieldSpec>) -> Result<RingDescriptor> {
    let declared = parse_field(p)?;
    let field = field_override.unwrap_or(declared);
    p.expect_punct('[')?;
    let vars = parse_varlist(p)?;
    p.expect_punct(']')?;

    let mut bidegrees = vec![Bidegree::new(1, 0); vars.len()];
    let mut saw_deg = false;
    let mut mod_polys_pending = false;
    if let Some(s) = p.peek() {
        if s.tok == Tok::Ident("xdeg".into()) {
            p.pos += 1;
            let xglob = parse_glob(p)?;
            let (kw, kl, kc) = p.ident("ydeg")?;
            if kw != "ydeg" {
                return Err(err(kl, kc, "expected `ydeg` after the xdeg glob"));
            }
            let yglob = parse_glob(p)?;
            saw_deg = true;
            for (i, v) in vars.iter().enumerate() {
                let in_x = xglob.matches(v);
                let in_y = yglob.matches(v);
                bidegrees[i] = match (in_x, in_y) {
                    (true, true) => {
                        return Err(err(kl, kc, format!("variable `{v}` matches both globs")))
                    }
                    (_, true) => Bidegree::new(0, 1),
                    _ => Bidegree::new(1, 0),
                };
            }
        }
    }
    let _ = saw_deg;
    if let Some(s) = p.peek() {
        if s.tok == Tok::Ident("mod".into()) {
            p.pos += 1;
            mod_polys_pending = true;
        }
    }

    let (l, c) = p.here();
    let ring = Ring::new(vars, field, bidegrees).map_err(|e| match e {
        Error::Parse { msg, .. } => err(l, c, msg),
        other => other,
    })?;

    let mut quotient = Vec::new();
    if mod_polys_pending {
        loop {
            quotient.push(parse_poly(p, &ring)?);
            if !p.eat_punct(',') {
                break;
            }
        }
    }
    p.expect_punct(';')?;
    Ok(RingDescriptor { ring, quotient })
}

fn parse_factor(p: &mut Parser, ring: &Arc<Ring>) -> Result<Polynomial> {
    let s = p.next("coefficient or variable")?;
    match s.tok {
        Tok::Int(n) => {
            if p.eat_punct('/') {
                let (d, dl, dc) = p.int("denominator")?;
                let c = ring
                    .field()
                    .from_fraction(&n, &d)
                    .map_err(|_| err(dl, dc, "denominator is zero in this field"))?;
                Ok(Polynomial::constant(ring, c))
            } else {
                Ok(Polynomial::constant(ring, ring.field().from_int(&n)))
            }
        }
        Tok::Ident(name) => {
            let idx = ring
                .var_index(&name)
                .ok_or_else(|| err(s.line, s.col, format!("unknown identifier `{name}`")))?;
            let mut exp: u16 = 1;
            if p.eat_punct('^') {
                let (e, el, ec) = p.int("exponent")?;
                exp = e
                    .to_u16()
                    .ok_or_else(|| err(el, ec, "malformed exponent (must fit 16 bits)"))?;
            }
            Ok(Polynomial::from_monomial(ring, Monomial::var(ring.nvars(), idx, exp)))
        }
        _ => Err(err(s.line, s.col, "expected coefficient or variable")),
    }
}

fn parse_term(p: &mut Parser, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut f = parse_factor(p, ring)?;
    while p.eat_punct('*') {
        f = f.mul(&parse_factor(p, ring)?);
    }
    Ok(f)
}

fn parse_poly(p: &mut Parser, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut negate = false;
    if p.eat_punct('-') {
        negate = true;
    } else {
        let _ = p.eat_punct('+');
    }
    let mut acc = parse_term(p, ring)?;
    if negate {
        acc = acc.neg();
    }
    loop {
        if p.eat_punct('+') {
            acc = acc.add(&parse_term(p, ring)?);
        } else if p.eat_punct('-') {
            acc = acc.sub(&parse_term(p, ring)?);
        } else {
            break;
        }
    }
    Ok(acc)
}

fn parse_poly_list(p: &mut Parser, ring: &Arc<Ring>) -> Result<Vec<Polynomial>> {
    let mut out = vec![parse_poly(p, ring)?];
    while p.eat_punct(',') {
        out.push(parse_poly(p, ring)?);
    }
    Ok(out)
}

/// Parse a whole input document: one ring declaration followed by ideal/seq
/// declarations, all in that ring.
pub fn parse_session(text: &str) -> Result<Session> {
    parse_session_opts(text, None)
}

/// Like `parse_session`, optionally replacing the declared coefficient
/// field (the CLI's `--char p` switch).
pub fn parse_session_opts(text: &str, field_override: Option<FieldSpec>) -> Result<Session> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let mut session: Option<Session> = None;
    while !p.at_end() {
        let (kw, l, c) = p.ident("statement (ring/ideal/seq)")?;
        match kw.as_str() {
            "ring" => {
                if session.is_some() {
                    return Err(err(l, c, "ring already declared"));
                }
                let ring = parse_ring_stmt(&mut p, field_override)?;
                session = Some(Session { ring, ideals: Vec::new(), seqs: Vec::new() });
            }
            "ideal" | "seq" => {
                let sess = session
                    .as_mut()
                    .ok_or_else(|| err(l, c, "declare a ring before ideals/sequences"))?;
                let (name, _, _) = p.ident("name")?;
                p.expect_punct('=')?;
                let polys = parse_poly_list(&mut p, &sess.ring.ring)?;
                p.expect_punct(';')?;
                if kw == "ideal" {
                    sess.ideals.push((name, polys));
                } else {
                    sess.seqs.push((name, polys));
                }
            }
            _ => return Err(err(l, c, format!("unknown statement `{kw}`"))),
        }
    }
    session.ok_or_else(|| err(1, 1, "input declares no ring"))
}

/// Parse a single `ring ...;` statement.
pub fn parse_ring(text: &str) -> Result<RingDescriptor> {
    let session = parse_session(text)?;
    Ok(session.ring)
}

/// Parse one polynomial expression in an existing ring.
pub fn parse_polynomial(text: &str, ring: &Arc<Ring>) -> Result<Polynomial> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let poly = parse_poly(&mut p, ring)?;
    if !p.at_end() {
        let (l, c) = p.here();
        return Err(err(l, c, "trailing input after polynomial"));
    }
    Ok(poly)
}

/// Convenience for tests and family generators: polynomials from source
/// text, panicking on malformed input.
pub fn poly(text: &str, ring: &Arc<Ring>) -> Polynomial {
    parse_polynomial(text, ring).expect("malformed polynomial literal")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_with_default_grading() {
        let rd = parse_ring("ring QQ[x1..x5];").unwrap();
        assert_eq!(rd.ring.nvars(), 5);
        assert_eq!(rd.ring.vars()[0], "x1");
        assert_eq!(rd.ring.vars()[4], "x5");
        assert!(rd.ring.bidegrees().iter().all(|&b| b == Bidegree::new(1, 0)));
        assert!(rd.quotient.is_empty());
    }

    #[test]
    fn ring_with_bigrading() {
        let rd = parse_ring("ring QQ[x1..x5, y1..y5] xdeg x* ydeg y*;").unwrap();
        assert_eq!(rd.ring.nvars(), 10);
        for i in 0..5 {
            assert_eq!(rd.ring.bidegrees()[i], Bidegree::new(1, 0));
            assert_eq!(rd.ring.bidegrees()[5 + i], Bidegree::new(0, 1));
        }
    }

    #[test]
    fn duplicate_variable_rejected() {
        assert!(matches!(parse_ring("ring QQ[x,x];"), Err(Error::Parse { .. })));
    }

    #[test]
    fn non_prime_modulus_rejected() {
        let e = parse_ring("ring GF(6)[x];").unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("not prime")),
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn overlapping_degree_globs_rejected() {
        let e = parse_ring("ring QQ[x1,x2] xdeg x* ydeg x1;").unwrap_err();
        match e {
            Error::Parse { msg, .. } => assert!(msg.contains("matches both")),
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn quotient_ring() {
        let rd = parse_ring("ring QQ[x1] mod x1^2;").unwrap();
        assert_eq!(rd.quotient.len(), 1);
        assert_eq!(rd.quotient[0].to_string(), "x1^2");
    }

    #[test]
    fn polynomials_parse_canonically() {
        let rd = parse_ring("ring QQ[x1,x2,x3];").unwrap();
        let f = parse_polynomial("x1*x3 + x1*x2", &rd.ring).unwrap();
        assert_eq!(f.terms().len(), 2);
        assert_eq!(parse_polynomial("0", &rd.ring).unwrap(), Polynomial::zero(&rd.ring));
        let cancel = parse_polynomial("3/2*x1^2 - 3/2*x1^2", &rd.ring).unwrap();
        assert!(cancel.is_zero());
    }

    #[test]
    fn unknown_identifier_positioned() {
        let rd = parse_ring("ring QQ[x1];").unwrap();
        match parse_polynomial("x1 + z", &rd.ring).unwrap_err() {
            Error::Parse { line, col, msg } => {
                assert_eq!((line, col), (1, 6));
                assert!(msg.contains("unknown identifier"));
            }
            _ => panic!("expected parse error"),
        }
    }

    #[test]
    fn characteristic_divides_denominator() {
        let rd = parse_ring("ring GF(5)[x1];").unwrap();
        assert!(parse_polynomial("1/10*x1", &rd.ring).is_err());
        assert_eq!(parse_polynomial("1/2*x1", &rd.ring).unwrap().to_string(), "3*x1");
    }

    #[test]
    fn session_with_ideal_and_seq() {
        let s = parse_session(
            "# Note 2.4(2)\nring QQ[x1..x3];\nseq a = x2*x3, x1*x3 + x1*x2, x1*x2;\nideal I = x1*x2, x2*x3;\n",
        )
        .unwrap();
        assert_eq!(s.seqs.len(), 1);
        assert_eq!(s.ideals.len(), 1);
        assert_eq!(s.main_sequence().unwrap().len(), 3);
    }

    #[test]
    fn arbitrary_input_never_panics() {
        use proptest::prelude::*;
        proptest!(|(text in "[ -~\n]{0,80}")| {
            let _ = parse_session(&text); // errors are fine; panics are not
        });
        proptest!(|(text in "(ring|ideal|seq|QQ|GF|[a-z0-9^*+/,;()\\[\\]. -]){0,40}")| {
            let _ = parse_session(&text);
        });
    }

    #[test]
    fn print_parse_roundtrip() {
        let rd = parse_ring("ring QQ[x1..x4];").unwrap();
        for src in [
            "x1^2*x2 - x1*x2^2",
            "3/2*x1^2 - x2 + 1",
            "-x1 + 2*x3*x4 - 5/7*x2^3",
            "0",
            "42",
        ] {
            let f = parse_polynomial(src, &rd.ring).unwrap();
            let printed = f.to_string();
            let g = parse_polynomial(&printed, &rd.ring).unwrap();
            assert_eq!(f, g, "round trip failed for `{src}` -> `{printed}`");
            assert_eq!(printed, g.to_string());
        }
    }
}
