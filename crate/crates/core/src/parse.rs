//! Recursive-descent parser shared by every text format in the crate.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := atom ['^' exponent]
//! atom     := integer | variable | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```
//!
//! Division is only allowed by a constant. A parenthesised sum may only be
//! raised to a non-negative integer power; a single monomial with unit
//! coefficient may be raised to any rational power.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// Sparse polynomial with rational exponents, keyed by the exponent vector
/// (one slot per variable).
pub(crate) type Sparse = BTreeMap<Vec<Rat>, Rat>;

/// Parses `text` and returns its top-level summands separately, each with its
/// sign applied. Variables are matched against `vars` by name.
pub(crate) fn parse_summands(text: &str, vars: &[&str]) -> Result<Vec<Sparse>> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars };
    let out = p.expr_summands()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

/// Parses `text` into a single combined sparse polynomial.
pub(crate) fn parse_sum(text: &str, vars: &[&str]) -> Result<Sparse> {
    let mut acc = Sparse::new();
    for s in parse_summands(text, vars)? {
        add_into(&mut acc, &s);
    }
    Ok(acc)
}

/// Parses a bare rational `a`, `-a`, `a/b` or `(a/b)`.
pub(crate) fn parse_rational(text: &str) -> Result<Rat> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, vars: &[] };
    p.skip_ws();
    let paren = p.eat(b'(');
    let neg = p.eat(b'-');
    let start = p.pos;
    let n = p.integer()?;
    let mut r = Rat::from_integer(if neg { -n } else { n });
    if p.eat(b'/') {
        let dpos = p.pos;
        let d = p.integer()?;
        if d.is_zero() {
            return Err(Error::ZeroDenominator { pos: dpos });
        }
        r /= Rat::from_integer(d);
    }
    if paren && !p.eat(b')') {
        return Err(p.err("expected ')'"));
    }
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(Error::Syntax { pos: start, msg: "expected a rational number".into() });
    }
    Ok(r)
}

fn add_into(acc: &mut Sparse, other: &Sparse) {
    for (e, c) in other {
        let slot = acc.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            acc.remove(e);
        }
    }
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<Rat> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e.clone()).or_insert_with(Rat::zero);
            *slot += ca * cb;
            if slot.is_zero() {
                out.remove(&e);
            }
        }
    }
    out
}

fn constant(n: usize, c: Rat) -> Sparse {
    let mut s = Sparse::new();
    if !c.is_zero() {
        s.insert(vec![Rat::zero(); n], c);
    }
    s
}

fn as_constant(s: &Sparse) -> Option<Rat> {
    match s.len() {
        0 => Some(Rat::zero()),
        1 => {
            let (e, c) = s.iter().next().unwrap();
            e.iter().all(Zero::is_zero).then(|| c.clone())
        }
        _ => None,
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn expr_summands(&mut self) -> Result<Vec<Sparse>> {
        let mut out = Vec::new();
        let mut neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        loop {
            let mut t = self.term()?;
            if neg {
                for c in t.values_mut() {
                    *c = -c.clone();
                }
            }
            out.push(t);
            if self.eat(b'+') {
                neg = false;
            } else if self.eat(b'-') {
                neg = true;
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let f = self.factor()?;
                acc = mul(&acc, &f);
            } else if self.eat(b'/') {
                let pos = self.pos;
                let f = self.factor()?;
                let c = as_constant(&f).ok_or(Error::Syntax {
                    pos,
                    msg: "division by a non-constant".into(),
                })?;
                if c.is_zero() {
                    return Err(Error::ZeroDenominator { pos });
                }
                let inv = c.recip();
                for v in acc.values_mut() {
                    *v *= &inv;
                }
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let pos = self.pos;
        let e = self.exponent()?;
        self.power(base, e, pos)
    }

    fn power(&self, base: Sparse, e: Rat, pos: usize) -> Result<Sparse> {
        let n = self.vars.len();
        if base.len() == 1 {
            let (m, c) = base.into_iter().next().unwrap();
            let coeff = if let Some(k) = rat::to_i64(&e) {
                rat::pow(&c, k)
            } else if c.is_one() {
                c
            } else {
                return Err(Error::Syntax {
                    pos,
                    msg: "fractional power of a non-unit coefficient".into(),
                });
            };
            let mut s = Sparse::new();
            s.insert(m.iter().map(|x| x * &e).collect(), coeff);
            return Ok(s);
        }
        if base.is_empty() {
            if e.is_zero() {
                return Err(Error::Syntax { pos, msg: "0^0 is undefined".into() });
            }
            return Ok(base);
        }
        let k = rat::to_i64(&e).filter(|k| *k >= 0).ok_or(Error::Syntax {
            pos,
            msg: "a sum can only be raised to a non-negative integer power".into(),
        })?;
        let mut acc = constant(n, Rat::one());
        for _ in 0..k {
            acc = mul(&acc, &base);
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Rat> {
        if self.eat(b'(') {
            let neg = if self.eat(b'-') {
                true
            } else {
                self.eat(b'+');
                false
            };
            let n = self.integer()?;
            let mut r = Rat::from_integer(if neg { -n } else { n });
            if self.eat(b'/') {
                self.skip_ws();
                let dpos = self.pos;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(Error::ZeroDenominator { pos: dpos });
                }
                r /= Rat::from_integer(d);
            }
            if !self.eat(b')') {
                return Err(self.err("expected ')' after exponent"));
            }
            Ok(r)
        } else {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            Ok(Rat::from_integer(if neg { -n } else { n }))
        }
    }

    fn atom(&mut self) -> Result<Sparse> {
        let n = self.vars.len();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let mut acc = Sparse::new();
                for s in self.expr_summands()? {
                    add_into(&mut acc, &s);
                }
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_digit() => {
                let v = self.integer()?;
                Ok(constant(n, Rat::from_integer(v)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let idx = self.vars.iter().position(|v| *v == name).ok_or(Error::Syntax {
                    pos: start,
                    msg: format!("unknown variable '{name}' (expected one of {:?})", self.vars),
                })?;
                let mut e = vec![Rat::zero(); n];
                e[idx] = Rat::one();
                let mut s = Sparse::new();
                s.insert(e, Rat::one());
                Ok(s)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}
