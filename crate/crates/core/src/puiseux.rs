//! Finite Puiseux polynomials and their characteristic data.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::display;
use crate::error::{Error, Result};
use crate::parse;
use crate::rat::{self, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// A series in `u` near a point, read in ascending order.
    Local,
    /// A series in `x` near infinity, read in descending order.
    DegreeWise,
}

impl Orientation {
    pub fn var(self) -> &'static str {
        match self {
            Orientation::Local => "u",
            Orientation::DegreeWise => "x",
        }
    }
}

/// A Puiseux series with finitely many terms and rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PuiseuxPoly {
    orientation: Orientation,
    terms: BTreeMap<Rat, Rat>,
}

impl PuiseuxPoly {
    pub fn zero(orientation: Orientation) -> Self {
        PuiseuxPoly { orientation, terms: BTreeMap::new() }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs, summing
    /// repeated exponents and dropping zero coefficients.
    pub fn from_terms(orientation: Orientation, terms: impl IntoIterator<Item = (Rat, Rat)>) -> Self {
        let mut p = Self::zero(orientation);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponent: Rat, coeff: Rat) {
        let slot = self.terms.entry(exponent.clone()).or_insert_with(Rat::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    /// Terms keyed by exponent, in ascending exponent order.
    pub fn terms(&self) -> &BTreeMap<Rat, Rat> {
        &self.terms
    }

    pub fn coeff(&self, exponent: &Rat) -> Rat {
        self.terms.get(exponent).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Smallest exponent (the order of a local series).
    pub fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    /// Largest exponent (the degree of a degree-wise series).
    pub fn max_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next_back()
    }

    /// Terms in reading order: ascending for local, descending for
    /// degree-wise series.
    pub fn iter(&self) -> Box<dyn Iterator<Item = (&Rat, &Rat)> + '_> {
        match self.orientation {
            Orientation::Local => Box::new(self.terms.iter()),
            Orientation::DegreeWise => Box::new(self.terms.iter().rev()),
        }
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Rat) -> bool) -> Self {
        PuiseuxPoly {
            orientation: self.orientation,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, c)| (e.clone(), c.clone())).collect(),
        }
    }

    /// Least common denominator of the exponents.
    pub fn polydromy(&self) -> i64 {
        self.terms.keys().fold(1, |m, e| rat::lcm(m, rat::denom_i64(e)))
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = self.orientation.var();
        let s = display::sum(self.iter().map(|(e, c)| (c, display::monomial(&[(v, e)]))));
        f.write_str(&s)
    }
}

/// Parses a sum of terms `c*t^e` in `u` (local) or `x` (degree-wise).
///
/// Repeated exponents are rejected rather than merged so that a typo in a
/// fixture does not silently change the curve.
pub fn parse_puiseux(text: &str, orientation: Orientation) -> Result<PuiseuxPoly> {
    let summands = parse::parse_summands(text, &[orientation.var()])?;
    let mut seen = BTreeMap::new();
    for s in summands {
        for (e, c) in s {
            let e = e.into_iter().next().unwrap();
            if seen.contains_key(&e) {
                return Err(Error::DuplicateExponent { exponent: e.to_string() });
            }
            seen.insert(e, c);
        }
    }
    Ok(PuiseuxPoly::from_terms(orientation, seen))
}

/// A Puiseux pair `(q, p)`: at this pair the exponent `q / (p_1 ... p_k)`
/// leaves the lattice of the previous denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PuiseuxPair {
    pub q: i64,
    pub p: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CharacteristicData {
    pub pairs: Vec<PuiseuxPair>,
}

impl CharacteristicData {
    /// Validates `p >= 2` and `gcd(q, p) = 1` for every pair.
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        for &(q, p) in &pairs {
            if p < 2 {
                return Err(Error::Precondition(format!("pair ({q},{p}) needs p >= 2")));
            }
            if rat::gcd(q, p) != 1 {
                return Err(Error::Precondition(format!("pair ({q},{p}) is not coprime")));
            }
        }
        Ok(CharacteristicData { pairs: pairs.into_iter().map(|(q, p)| PuiseuxPair { q, p }).collect() })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn polydromy(&self) -> i64 {
        self.pairs.iter().map(|pp| pp.p).product()
    }

    /// `p_1 ... p_k`, with `prefix_product(0) == 1`.
    pub fn prefix_product(&self, k: usize) -> i64 {
        self.pairs[..k].iter().map(|pp| pp.p).product()
    }

    /// The characteristic exponent `q_k / (p_1 ... p_k)` (1-based `k`).
    pub fn exponent(&self, k: usize) -> Rat {
        rat::rat(self.pairs[k - 1].q, self.prefix_product(k))
    }

    /// Converts local pairs `(q~, p)` to the pairs of the degree-wise
    /// expansion, `(p_1...p_k - q~_k, p_k)`.
    pub fn to_degreewise(&self) -> Self {
        self.map_q(|pk, q| pk - q)
    }

    pub fn to_local(&self) -> Self {
        self.map_q(|pk, q| pk - q)
    }

    fn map_q(&self, f: impl Fn(i64, i64) -> i64) -> Self {
        let mut pk = 1;
        let pairs = self
            .pairs
            .iter()
            .map(|pp| {
                pk *= pp.p;
                PuiseuxPair { q: f(pk, pp.q), p: pp.p }
            })
            .collect();
        CharacteristicData { pairs }
    }
}

impl fmt::Display for CharacteristicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|pp| format!("({},{})", pp.q, pp.p)).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// Puiseux pairs of `phi`, scanning terms in reading order.
pub fn puiseux_pairs(phi: &PuiseuxPoly) -> CharacteristicData {
    let mut big_p = 1;
    let mut pairs = Vec::new();
    for (e, _) in phi.iter() {
        if rat::in_lattice(e, big_p) {
            continue;
        }
        let next = rat::lcm(big_p, rat::denom_i64(e));
        let q = rat::to_i64(&(e * rat::int(next))).expect("integral by construction");
        pairs.push(PuiseuxPair { q, p: next / big_p });
        big_p = next;
    }
    CharacteristicData { pairs }
}

/// `c u^e -> c x^(1-e)`, the expansion of the same curve in the chart at
/// infinity.
pub fn local_to_degreewise(phi: &PuiseuxPoly) -> Result<PuiseuxPoly> {
    if phi.orientation != Orientation::Local {
        return Err(Error::Precondition("expected a local series in u".into()));
    }
    Ok(flip(phi, Orientation::DegreeWise))
}

pub fn degreewise_to_local(psi: &PuiseuxPoly) -> Result<PuiseuxPoly> {
    if psi.orientation != Orientation::DegreeWise {
        return Err(Error::Precondition("expected a degree-wise series in x".into()));
    }
    Ok(flip(psi, Orientation::Local))
}

fn flip(phi: &PuiseuxPoly, to: Orientation) -> PuiseuxPoly {
    PuiseuxPoly::from_terms(to, phi.terms.iter().map(|(e, c)| (Rat::one() - e, c.clone())))
}
