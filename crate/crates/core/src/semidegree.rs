//! Generic degree-wise Puiseux series and the semidegree they define.
//!
//! A semidegree is evaluated by substituting `y = phi(x) + xi * x^r` with `xi`
//! an indeterminate and reading off the `x`-degree of the result.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::display;
use crate::error::{Error, Result};
use crate::laurent::LaurentPolyXY;
use crate::puiseux::{puiseux_pairs, CharacteristicData, Orientation, PuiseuxPair, PuiseuxPoly};
use crate::rat::{self, Rat};

/// A polynomial in `xi`, dense, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct XiPoly(Vec<Rat>);

impl XiPoly {
    pub fn constant(c: Rat) -> Self {
        XiPoly(vec![c]).trimmed()
    }

    pub fn xi() -> Self {
        XiPoly(vec![Rat::zero(), Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree in `xi`; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    /// The value if the polynomial does not involve `xi`.
    pub fn as_constant(&self) -> Option<Rat> {
        match self.0.len() {
            0 => Some(Rat::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        XiPoly(self.0.iter().map(|a| a * c).collect()).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(Zero::is_zero) {
            self.0.pop();
        }
        self
    }
}

impl Add for &XiPoly {
    type Output = XiPoly;
    fn add(self, rhs: &XiPoly) -> XiPoly {
        let n = self.0.len().max(rhs.0.len());
        let z = Rat::zero();
        XiPoly((0..n).map(|i| self.0.get(i).unwrap_or(&z) + rhs.0.get(i).unwrap_or(&z)).collect()).trimmed()
    }
}

impl Mul for &XiPoly {
    type Output = XiPoly;
    fn mul(self, rhs: &XiPoly) -> XiPoly {
        if self.is_zero() || rhs.is_zero() {
            return XiPoly::default();
        }
        let mut out = vec![Rat::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        XiPoly(out).trimmed()
    }
}

impl fmt::Display for XiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<_> = self.0.iter().enumerate().rev().filter(|(_, c)| !c.is_zero()).collect();
        let exps: Vec<Rat> = terms.iter().map(|(i, _)| rat::int(*i as i64)).collect();
        let s = display::sum(terms.iter().zip(&exps).map(|((_, c), e)| (*c, display::monomial(&[("xi", e)]))));
        f.write_str(&s)
    }
}

/// A finite series in rational powers of `x` with coefficients in `Q[xi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct XiSeries {
    terms: BTreeMap<Rat, XiPoly>,
}

impl XiSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::term(Rat::zero(), XiPoly::constant(Rat::one()))
    }

    pub fn term(exponent: Rat, coeff: XiPoly) -> Self {
        let mut s = Self::zero();
        s.add_term(exponent, coeff);
        s
    }

    pub fn add_term(&mut self, exponent: Rat, coeff: XiPoly) {
        let sum = match self.terms.get(&exponent) {
            Some(old) => old + &coeff,
            None => coeff,
        };
        if sum.is_zero() {
            self.terms.remove(&exponent);
        } else {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Rat, XiPoly> {
        &self.terms
    }

    pub fn coeff(&self, exponent: &Rat) -> XiPoly {
        self.terms.get(exponent).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exponent with a nonzero coefficient.
    pub fn deg_x(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    pub fn leading(&self) -> Option<(&Rat, &XiPoly)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = Self::zero();
        for (e, p) in &self.terms {
            out.add_term(e.clone(), p.scale(c));
        }
        out
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: &Rat) -> Self {
        XiSeries { terms: self.terms.iter().map(|(k, v)| (k + e, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for XiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let m = display::monomial(&[("x", e)]);
                let c = if c.degree() == Some(0) { display::sum([(&c.0[0], String::new())]) } else { format!("({c})") };
                if m.is_empty() {
                    c
                } else {
                    format!("{c}*{m}")
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl Add for &XiSeries {
    type Output = XiSeries;
    fn add(self, rhs: &XiSeries) -> XiSeries {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &XiSeries {
    type Output = XiSeries;
    fn sub(self, rhs: &XiSeries) -> XiSeries {
        self + &rhs.scale(&-Rat::one())
    }
}

impl Mul for &XiSeries {
    type Output = XiSeries;
    fn mul(self, rhs: &XiSeries) -> XiSeries {
        let mut out = XiSeries::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// `phi(x) + xi * x^r_delta` together with its formal Puiseux pairs.
///
/// The last formal pair records the exponent of the `xi` term and may have
/// `p = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericDPS {
    pub phi: PuiseuxPoly,
    pub r_delta: Rat,
    pub formal_pairs: CharacteristicData,
    pub delta_x: i64,
}

impl GenericDPS {
    /// Requires `phi` degree-wise with every exponent strictly above `r_delta`.
    pub fn new(phi: PuiseuxPoly, r_delta: Rat) -> Result<Self> {
        if phi.orientation() != Orientation::DegreeWise {
            return Err(Error::Precondition("generic series needs a degree-wise phi".into()));
        }
        if let Some(low) = phi.min_exponent() {
            if *low <= r_delta {
                return Err(Error::Precondition(format!(
                    "xi exponent {r_delta} must lie below every exponent of phi (lowest is {low})"
                )));
            }
        }
        let mut formal = puiseux_pairs(&phi);
        let big_p = formal.polydromy();
        let next = rat::lcm(big_p, rat::denom_i64(&r_delta));
        let q = rat::to_i64(&(&r_delta * rat::int(next))).expect("integral by construction");
        formal.pairs.push(PuiseuxPair { q, p: next / big_p });
        Ok(GenericDPS { phi, r_delta, formal_pairs: formal, delta_x: next })
    }

    /// `l`, so that there are `l + 1` formal pairs.
    pub fn l(&self) -> usize {
        self.formal_pairs.len() - 1
    }

    pub fn series(&self) -> XiSeries {
        let mut s = XiSeries::zero();
        for (e, c) in self.phi.terms() {
            s.add_term(e.clone(), XiPoly::constant(c.clone()));
        }
        s.add_term(self.r_delta.clone(), XiPoly::xi());
        s
    }

    /// The generic series of the `k`-th truncated semidegree: the terms of
    /// `phi` above the `k`-th characteristic exponent, with `xi` placed at
    /// that exponent.
    pub fn truncate(&self, k: usize) -> Result<Self> {
        let e = self.formal_pairs.exponent(k);
        GenericDPS::new(self.phi.filter(|x| *x > e), e)
    }
}

impl fmt::Display for GenericDPS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = display::monomial(&[("x", &self.r_delta)]);
        let xi = if m.is_empty() { "xi".to_string() } else { format!("xi*{m}") };
        if self.phi.is_zero() {
            f.write_str(&xi)
        } else {
            write!(f, "{} + {xi}", self.phi)
        }
    }
}

/// The generic series of the semidegree attached to a curve germ with
/// degree-wise expansion `psi` and `r` extra blow-ups: everything above
/// `(q - r)/p` is kept and `xi` sits at that exponent, where `q/p` is the last
/// characteristic exponent of `psi`.
pub fn generic_dps_from_curve(psi: &PuiseuxPoly, r: u32) -> Result<GenericDPS> {
    if psi.orientation() != Orientation::DegreeWise {
        return Err(Error::Precondition("expected a degree-wise series in x".into()));
    }
    let pairs = puiseux_pairs(psi);
    if pairs.is_empty() {
        return Err(Error::Precondition("series has no characteristic exponent".into()));
    }
    let big_p = pairs.polydromy();
    let last = pairs.exponent(pairs.len());
    let r_delta = &last - rat::rat(r as i64, big_p);
    GenericDPS::new(psi.filter(|e| *e > r_delta), r_delta)
}

/// `f(x, phi(x) + xi x^r_delta)`, expanded exactly.
pub fn substitute(f: &LaurentPolyXY, g: &GenericDPS) -> XiSeries {
    let s = g.series();
    let max_y = f.deg_y().unwrap_or(0);
    let mut powers = vec![XiSeries::one()];
    for i in 1..=max_y as usize {
        let next = &powers[i - 1] * &s;
        powers.push(next);
    }
    let mut out = XiSeries::zero();
    for (&(a, b), c) in f.terms() {
        out = &out + &powers[b as usize].shift(&rat::int(a)).scale(c);
    }
    out
}

/// `delta(f) = delta(x) * deg_x f(x, phi~(x, xi))`.
pub fn semidegree_eval(f: &LaurentPolyXY, g: &GenericDPS) -> Result<i64> {
    if f.is_zero() {
        return Err(Error::Precondition("the semidegree of 0 is undefined".into()));
    }
    let s = substitute(f, g);
    let d = s.deg_x().ok_or_else(|| Error::Invariant(format!("substitution of nonzero {f} vanished")))?;
    rat::to_i64(&(d * rat::int(g.delta_x)))
        .ok_or_else(|| Error::Invariant(format!("semidegree of {f} is not an integer (deg_x = {d})")))
}
