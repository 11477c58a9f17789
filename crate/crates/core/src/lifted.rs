//! Polynomials in `y_1..y_k` over Laurent polynomials in `x`, graded by a
//! weight vector.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::display;
use crate::rat::{self, Rat};

/// An element of `Q[x, 1/x, y_1, ..., y_k]`. Each key is the exponent vector
/// `[a, b_1, ..., b_k]` of `x^a y_1^b_1 ... y_k^b_k`.
///
/// `weights` holds `omega(x), omega(y_1), ..., omega(y_k)` and is used for the
/// weighted degree and for printing in descending weight.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LiftedPoly {
    k: usize,
    weights: Vec<i64>,
    terms: BTreeMap<Vec<i64>, Rat>,
}

impl LiftedPoly {
    pub fn zero(weights: Vec<i64>) -> Self {
        assert!(!weights.is_empty(), "weights must include x");
        LiftedPoly { k: weights.len() - 1, weights, terms: BTreeMap::new() }
    }

    /// `y_j^n` in the ring with the given weights.
    pub fn var_power(weights: Vec<i64>, j: usize, n: i64) -> Self {
        let mut p = Self::zero(weights);
        let mut e = vec![0; p.k + 1];
        e[j] = n;
        p.add_term(e, Rat::from_integer(1.into()));
        p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Rat> {
        &self.terms
    }

    pub fn coeff(&self, exps: &[i64]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Rat) {
        assert_eq!(exps.len(), self.k + 1, "exponent vector length");
        let slot = self.terms.entry(exps.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Weighted degree of a single exponent vector.
    pub fn omega_of(&self, exps: &[i64]) -> i64 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    /// Maximum weighted degree over the stored monomials.
    pub fn omega(&self) -> Option<i64> {
        self.terms.keys().map(|e| self.omega_of(e)).max()
    }

    /// Monomials ordered by descending weight; ties go to the larger power
    /// of the last variable.
    pub fn sorted_terms(&self) -> Vec<(&Vec<i64>, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| {
            let ya: Vec<i64> = a[1..].iter().rev().copied().collect();
            let yb: Vec<i64> = b[1..].iter().rev().copied().collect();
            self.omega_of(b).cmp(&self.omega_of(a)).then(yb.cmp(&ya)).then(b[0].cmp(&a[0]))
        });
        v
    }
}

impl fmt::Display for LiftedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> =
            std::iter::once("x".to_string()).chain((1..=self.k).map(|j| format!("y{j}"))).collect();
        let s = display::sum(self.sorted_terms().into_iter().map(|(e, c)| {
            let rs: Vec<Rat> = e.iter().map(|&a| rat::int(a)).collect();
            let factors: Vec<(&str, &Rat)> =
                (1..=self.k).chain(std::iter::once(0)).map(|i| (names[i].as_str(), &rs[i])).collect();
            (c, display::monomial(&factors))
        }));
        f.write_str(&s)
    }
}
