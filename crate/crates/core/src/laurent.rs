//! Polynomials in `y` with Laurent polynomial coefficients in `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::display;
use crate::error::{Error, Result};
use crate::parse;
use crate::rat::{self, Rat};

/// An element of `Q[x, 1/x, y]`. Terms are keyed by `(x exponent, y exponent)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPolyXY {
    terms: BTreeMap<(i64, u32), Rat>,
}

impl LaurentPolyXY {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Rat::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(Rat::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Rat::one(), 0, 1)
    }

    /// `c * x^a * y^b`.
    pub fn monomial(c: Rat, a: i64, b: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn add_term(&mut self, a: i64, b: u32, c: Rat) {
        let slot = self.terms.entry((a, b)).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(i64, u32), Rat> {
        &self.terms
    }

    pub fn coeff(&self, a: i64, b: u32) -> Rat {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff no monomial has a negative power of `x`.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a >= 0)
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    /// Monic in `y`: the coefficient of the top power of `y` is exactly 1.
    pub fn is_monic_in_y(&self) -> bool {
        match self.deg_y() {
            None => false,
            Some(d) => {
                let top: Vec<_> = self.terms.iter().filter(|((_, b), _)| *b == d).collect();
                top.len() == 1 && top[0].0 .0 == 0 && top[0].1.is_one()
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPolyXY { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parses an expression in `x` and `y`. Exponents of `x` must be
    /// integers and exponents of `y` non-negative integers.
    pub fn parse(text: &str) -> Result<Self> {
        let sparse = parse::parse_sum(text, &["x", "y"])?;
        let mut p = Self::zero();
        for (e, c) in sparse {
            let a = rat::to_i64(&e[0]);
            let b = rat::to_i64(&e[1]).filter(|b| *b >= 0);
            match (a, b) {
                (Some(a), Some(b)) => p.add_term(a, b as u32, c),
                _ => {
                    return Err(Error::Precondition(format!(
                        "monomial x^{} y^{} is not a Laurent polynomial in x, polynomial in y",
                        e[0], e[1]
                    )))
                }
            }
        }
        Ok(p)
    }
}

impl fmt::Display for LaurentPolyXY {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|(a1, b1), (a2, b2)| b2.cmp(b1).then(a2.cmp(a1)));
        let s = display::sum(keys.iter().map(|&(a, b)| {
            let (ra, rb) = (rat::int(a), rat::int(b as i64));
            (&self.terms[&(a, b)], display::monomial(&[("x", &ra), ("y", &rb)]))
        }));
        f.write_str(&s)
    }
}

impl Add for &LaurentPolyXY {
    type Output = LaurentPolyXY;
    fn add(self, rhs: &LaurentPolyXY) -> LaurentPolyXY {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolyXY {
    type Output = LaurentPolyXY;
    fn sub(self, rhs: &LaurentPolyXY) -> LaurentPolyXY {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolyXY {
    type Output = LaurentPolyXY;
    fn neg(self) -> LaurentPolyXY {
        self.scale(&-Rat::one())
    }
}

impl Mul for &LaurentPolyXY {
    type Output = LaurentPolyXY;
    fn mul(self, rhs: &LaurentPolyXY) -> LaurentPolyXY {
        let mut out = LaurentPolyXY::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::int;

    #[test]
    fn parse_and_print() {
        let f = LaurentPolyXY::parse("y^5 - x^2 - 5*y^4*x^(-1)").unwrap();
        assert_eq!(f.coeff(-1, 4), int(-5));
        assert_eq!(f.to_string(), "y^5 - 5*x^(-1)*y^4 - x^2");
        assert_eq!(LaurentPolyXY::parse(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn polynomiality() {
        assert!(LaurentPolyXY::parse("y^5 - x^2").unwrap().is_polynomial());
        assert!(!LaurentPolyXY::parse("y^5 - x^2 - 5*y^4*x^(-1)").unwrap().is_polynomial());
        assert!(LaurentPolyXY::x().is_polynomial());
    }

    #[test]
    fn rejects_fractional_or_negative_y() {
        assert!(LaurentPolyXY::parse("x^(1/2)").is_err());
        assert!(LaurentPolyXY::parse("y^(-1)").is_err());
    }

    #[test]
    fn arithmetic() {
        let f = LaurentPolyXY::parse("y - x^3 - x^2").unwrap();
        let g = f.pow(2);
        assert_eq!(g, &f * &f);
        assert_eq!(g.coeff(5, 0), int(2));
        assert!((&g - &g).is_zero());
        assert!(g.is_monic_in_y());
        assert_eq!(g.deg_y(), Some(2));
        assert!(!LaurentPolyXY::parse("2*y").unwrap().is_monic_in_y());
    }
}
