//! Knot expressions: connected sums and mirrors of iterated (2, q)-cables of
//! torus knots.
//!
//! Grammar (whitespace insensitive):
//!
//! ```text
//! expr := term ('#' term)*
//! term := '-' term | '(' expr ')' | 'T(' 2 ',' q (';' 2 ',' q)* ')'
//! ```

use std::fmt;

use crate::error::{Error, Result};

/// T(2, q₁; 2, q₂; …; 2, q_r): the (2, q_r)-cable of T(2, q₁; …; 2, q_{r−1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IteratedTorus {
    pub qs: Vec<u64>,
}

impl IteratedTorus {
    pub fn torus(q: u64) -> Self {
        IteratedTorus { qs: vec![q] }
    }

    /// The outermost pattern parameter d (the group H₁(Σ₂) is Z_d).
    pub fn pattern(&self) -> u64 {
        *self.qs.last().expect("nonempty")
    }

    /// The companion of the outermost cable, if any.
    pub fn companion(&self) -> Option<IteratedTorus> {
        (self.qs.len() > 1).then(|| IteratedTorus {
            qs: self.qs[..self.qs.len() - 1].to_vec(),
        })
    }
}

impl fmt::Display for IteratedTorus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.qs.iter().map(|q| format!("2,{q}")).collect();
        write!(f, "T({})", parts.join(";"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotExpr {
    Atom(IteratedTorus),
    Mirror(Box<KnotExpr>),
    Sum(Vec<KnotExpr>),
}

/// A connected summand with its orientation: sign −1 means −K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedSummand {
    pub sign: i32,
    pub knot: IteratedTorus,
}

impl fmt::Display for SignedSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        write!(f, "{}", self.knot)
    }
}

impl KnotExpr {
    pub fn parse(src: &str) -> Result<Self> {
        let mut p = Parser {
            chars: src.chars().collect(),
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(e)
    }

    pub fn mirror(self) -> Self {
        match self {
            KnotExpr::Mirror(inner) => *inner,
            e => KnotExpr::Mirror(Box::new(e)),
        }
    }

    /// Flatten to signed summands; −(A # B) becomes (−A) # (−B).
    pub fn summands(&self) -> Vec<SignedSummand> {
        let mut out = Vec::new();
        self.collect(1, &mut out);
        out
    }

    fn collect(&self, sign: i32, out: &mut Vec<SignedSummand>) {
        match self {
            KnotExpr::Atom(k) => out.push(SignedSummand {
                sign,
                knot: k.clone(),
            }),
            KnotExpr::Mirror(e) => e.collect(-sign, out),
            KnotExpr::Sum(es) => es.iter().for_each(|e| e.collect(sign, out)),
        }
    }

    /// Canonical rendering of the normalized expression.
    pub fn normalized_string(&self) -> String {
        let parts: Vec<String> = self.summands().iter().map(|s| s.to_string()).collect();
        parts.join(" # ")
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some('#') {
            self.pos += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            KnotExpr::Sum(terms)
        })
    }

    fn term(&mut self) -> Result<KnotExpr> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.term()?.mirror())
            }
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some('T') => {
                self.pos += 1;
                self.torus()
            }
            _ => Err(self.err("expected 'T', '-' or '('")),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse()
            .map_err(|_| Error::Parse(format!("number out of range at column {}", start + 1)))
    }

    fn torus(&mut self) -> Result<KnotExpr> {
        self.expect('(')?;
        let mut qs = Vec::new();
        loop {
            let col = self.pos;
            if self.number()? != 2 {
                self.pos = col;
                return Err(Error::Unsupported(format!(
                    "only (2, q) torus knots and cables are supported (column {})",
                    col + 1
                )));
            }
            self.expect(',')?;
            let col = self.pos;
            let q = self.number()?;
            if q % 2 == 0 || q < 3 {
                return Err(Error::InvalidInput(format!(
                    "q = {q} must be odd and at least 3 (column {})",
                    col + 1
                )));
            }
            qs.push(q);
            match self.peek() {
                Some(';') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.err("expected ';' or ')'")),
            }
        }
        Ok(KnotExpr::Atom(IteratedTorus { qs }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cable_sum() {
        let e = KnotExpr::parse("T(2,3;2,13) # T(2,15) # -T(2,3;2,15) # -T(2,13)").unwrap();
        let s = e.summands();
        assert_eq!(s.len(), 4);
        assert_eq!(s[0].knot.qs, vec![3, 13]);
        assert_eq!(s[2].sign, -1);
        assert_eq!(s[2].knot.companion(), Some(IteratedTorus::torus(3)));
        assert_eq!(s[3].knot.pattern(), 13);
    }

    #[test]
    fn mirror_distributes_and_is_involutive() {
        let e = KnotExpr::parse(" -( T(2,3) #-T(2, 5) )").unwrap();
        assert_eq!(e.normalized_string(), "-T(2,3) # T(2,5)");
        let f = KnotExpr::parse("--T(2,3)").unwrap();
        assert_eq!(f, KnotExpr::parse("T(2,3)").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(KnotExpr::parse("T(3,5)"), Err(Error::Unsupported(_))));
        assert!(matches!(KnotExpr::parse("T(2,4)"), Err(Error::InvalidInput(_))));
        let e = KnotExpr::parse("T(2,3) #").unwrap_err();
        assert!(e.to_string().contains("column 9"), "{e}");
        assert!(KnotExpr::parse("T(2,3))").is_err());
    }
}
