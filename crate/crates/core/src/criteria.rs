//! Contractibility and algebraicity decisions for a curve germ tangent to a
//! line, plus `r` extra blow-ups.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::display;
use crate::error::{Error, Result};
use crate::keyforms::{essential_key_forms, EssentialKeyForms};
use crate::laurent::LaurentPolyXY;
use crate::parse;
use crate::puiseux::{local_to_degreewise, puiseux_pairs, CharacteristicData, Orientation, PuiseuxPoly};
use crate::rat::{self, Rat};
use crate::semidegree::{generic_dps_from_curve, GenericDPS};

fn require_pairs(pairs: &CharacteristicData) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::Precondition("at least one Puiseux pair is required".into()));
    }
    if pairs.pairs.iter().any(|pp| pp.q <= 0) {
        return Err(Error::Precondition(format!("local pairs {pairs} must have positive q")));
    }
    Ok(())
}

/// `sum_{i<k} (p_i...p_{k-1} - p_{i+1}...p_{k-1}) q_i/P_i + q_k/P_k`, the
/// common shape of the intersection-number formulas. `k` is 1-based and may
/// be `len + 1` to sum every pair without a final term.
fn weighted_sum(pairs: &CharacteristicData, k: usize) -> Rat {
    let n = pairs.len();
    let tail = |from: usize, to: usize| -> i64 { pairs.pairs[from..to].iter().map(|pp| pp.p).product() };
    let upto = (k - 1).min(n);
    let mut s = Rat::zero();
    for i in 1..=upto {
        let coeff = tail(i - 1, upto) - tail(i, upto);
        s += rat::int(coeff) * pairs.exponent(i);
    }
    if k <= n {
        s += pairs.exponent(k);
    }
    s
}

/// Intersection multiplicity of the curve with a generic germ agreeing with
/// it up to the exponent `(q_last + r)/p`.
pub fn alpha_invariant(local_pairs: &CharacteristicData, r: u32) -> Result<i64> {
    require_pairs(local_pairs)?;
    let n = local_pairs.len();
    let big_p = local_pairs.polydromy();
    let v = rat::int(big_p) * weighted_sum(local_pairs, n + 1) + rat::int(local_pairs.pairs[n - 1].q + r as i64);
    rat::to_i64(&v).ok_or_else(|| Error::Invariant(format!("alpha = {v} is not an integer")))
}

/// Contractible iff the curve is tangent to the line (order below 1) and
/// `alpha < p^2`.
pub fn is_contractible(local_pairs: &CharacteristicData, r: u32) -> bool {
    let Some(first) = local_pairs.pairs.first() else {
        return false;
    };
    if first.q >= first.p || first.q <= 0 {
        return false;
    }
    let p = local_pairs.polydromy();
    alpha_invariant(local_pairs, r).is_ok_and(|a| a < p * p)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VirtualPoles {
    /// Generators of the semigroup of intersection numbers with the curve.
    pub tilde_omegas: Vec<i64>,
    /// `omega_0..omega_l`.
    pub omegas: Vec<i64>,
    /// `omega_{l+1}`.
    pub generic_pole: i64,
    pub l: usize,
    pub alpha: i64,
    pub p: i64,
}

impl VirtualPoles {
    /// `omega_0..omega_{l+1}`.
    pub fn all(&self) -> Vec<i64> {
        let mut v = self.omegas.clone();
        v.push(self.generic_pole);
        v
    }
}

pub fn virtual_poles(local_pairs: &CharacteristicData, r: u32) -> Result<VirtualPoles> {
    require_pairs(local_pairs)?;
    let n = local_pairs.len();
    let big_p = local_pairs.polydromy();
    let mut tilde = vec![big_p];
    for k in 1..=n {
        let v = rat::int(big_p) * weighted_sum(local_pairs, k);
        tilde.push(rat::to_i64(&v).ok_or_else(|| Error::Invariant(format!("tilde omega_{k} = {v}")))?);
    }
    let l = if r == 0 { n - 1 } else { n };
    let sq = |k: usize| -> i64 {
        let head: i64 = local_pairs.pairs[..k - 1].iter().map(|pp| pp.p * pp.p).product();
        let rest: i64 = local_pairs.pairs[k - 1..].iter().map(|pp| pp.p).product();
        head * rest
    };
    let omegas: Vec<i64> = std::iter::once(big_p).chain((1..=l).map(|k| sq(k) - tilde[k])).collect();
    let alpha = alpha_invariant(local_pairs, r)?;
    let generic_pole = if r == 0 {
        sq(n) - tilde[n]
    } else {
        big_p * big_p - local_pairs.pairs[n - 1].p * tilde[n] - r as i64
    };
    Ok(VirtualPoles { tilde_omegas: tilde, omegas, generic_pole, l, alpha, p: big_p })
}

/// Whether `n` is a non-negative integer combination of `gens`.
pub fn semigroup_membership(n: i64, gens: &[i64]) -> Result<bool> {
    if let Some(g) = gens.iter().find(|g| **g <= 0) {
        return Err(Error::Precondition(format!("semigroup generator {g} is not positive")));
    }
    if n < 0 {
        return Ok(false);
    }
    let n = n as usize;
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for i in 1..=n {
        reach[i] = gens.iter().any(|&g| g as usize <= i && reach[i - g as usize]);
    }
    Ok(reach[n])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    OnlyAlgebraic,
    Both,
    OnlyNonAlgebraic,
    NotContractible,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::OnlyAlgebraic => "OnlyAlgebraic",
            Classification::Both => "Both",
            Classification::OnlyNonAlgebraic => "OnlyNonAlgebraic",
            Classification::NotContractible => "NotContractible",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct S2Check {
    pub holds: bool,
    /// Largest integer in the interval that lies in the group but not in the
    /// semigroup.
    pub largest_gap: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemigroupReport {
    /// Indexed by `k - 1` for `k = 1..=l`.
    pub s1: Vec<bool>,
    pub s2: Vec<S2Check>,
    pub classification: Classification,
}

pub fn semigroup_conditions(local_pairs: &CharacteristicData, r: u32) -> Result<SemigroupReport> {
    let not_contractible = SemigroupReport { s1: vec![], s2: vec![], classification: Classification::NotContractible };
    if !is_contractible(local_pairs, r) {
        return Ok(not_contractible);
    }
    let vp = virtual_poles(local_pairs, r)?;
    if vp.generic_pole <= 0 {
        return Ok(not_contractible);
    }
    if let Some(k) = vp.omegas.iter().position(|w| *w <= 0) {
        return Err(Error::Invariant(format!(
            "virtual pole omega_{k} = {} is not positive although omega_{} = {} is",
            vp.omegas[k],
            vp.l + 1,
            vp.generic_pole
        )));
    }
    let w = vp.all();
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for k in 1..=vp.l {
        let pk = local_pairs.pairs[k - 1].p;
        s1.push(semigroup_membership(pk * w[k], &w[..k])?);
        let g = rat::gcd_all(&w[..=k]);
        let mut gap = None;
        for n in (w[k + 1] + 1..pk * w[k]).rev() {
            if n % g == 0 && !semigroup_membership(n, &w[..=k])? {
                gap = Some(n);
                break;
            }
        }
        s2.push(S2Check { holds: gap.is_none(), largest_gap: gap });
    }
    let classification = if s1.iter().any(|ok| !ok) {
        Classification::OnlyNonAlgebraic
    } else if s2.iter().any(|c| !c.holds) {
        Classification::Both
    } else {
        Classification::OnlyAlgebraic
    };
    Ok(SemigroupReport { s1, s2, classification })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Local expansion `v = phi(u)` of the witness curve.
    pub curve: PuiseuxPoly,
    pub expect_algebraic: bool,
}

/// Curves with the given pairs realising the classification: the curve with
/// every characteristic coefficient 1 and nothing else, and for `Both` a
/// second curve with one extra term placed at the largest semigroup gap.
pub fn witness_curves(local_pairs: &CharacteristicData, r: u32, classification: Classification) -> Result<Vec<Witness>> {
    let report = semigroup_conditions(local_pairs, r)?;
    if report.classification != classification {
        return Err(Error::Precondition(format!(
            "requested witnesses for {classification} but the pairs {local_pairs} with r = {r} are {}",
            report.classification
        )));
    }
    if classification == Classification::NotContractible {
        return Ok(Vec::new());
    }
    let base = PuiseuxPoly::from_terms(
        Orientation::Local,
        (1..=local_pairs.len()).map(|k| (local_pairs.exponent(k), Rat::one())),
    );
    let mut out = vec![Witness { curve: base.clone(), expect_algebraic: report.s1.iter().all(|ok| *ok) }];
    if classification == Classification::Both {
        let k = report.s2.iter().position(|c| !c.holds).expect("Both has an S2 failure") + 1;
        let gap = report.s2[k - 1].largest_gap.expect("failing S2 records its gap");
        let vp = virtual_poles(local_pairs, r)?;
        let pk = local_pairs.pairs[k - 1].p;
        let shift = pk * vp.all()[k] - gap;
        let delta_x = generic_dps_from_curve(&local_to_degreewise(&base)?, r)?.delta_x;
        let dw_pairs = local_pairs.to_degreewise();
        let e = dw_pairs.exponent(k) - rat::rat(shift, delta_x);
        let mut curve = base;
        curve.add_term(Rat::one() - e, Rat::one());
        out.push(Witness { curve, expect_algebraic: false });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraicityReport {
    pub pairs: CharacteristicData,
    pub alpha: Option<i64>,
    pub contractible: bool,
    /// Defined only for contractible input.
    pub algebraic: Option<bool>,
    pub generic: Option<GenericDPS>,
    /// Absent when the input is not contractible and forms were not forced.
    pub key_forms: Option<EssentialKeyForms>,
    /// The last key form, when it is a polynomial.
    pub witness_curve: Option<LaurentPolyXY>,
    /// `(1, omega_0, ..., omega_{l+1})` when algebraic.
    pub wp_weights: Option<Vec<i64>>,
}

/// Decides algebraic contractibility for the curve `v = curve(u)` by testing
/// whether the last essential key form is a polynomial.
pub fn is_algebraic(curve: &PuiseuxPoly, r: u32) -> Result<AlgebraicityReport> {
    analyze_curve(curve, r, false)
}

/// As [`is_algebraic`]; with `force_keyforms` the key forms are computed
/// even when the configuration is not contractible.
pub fn analyze_curve(curve: &PuiseuxPoly, r: u32, force_keyforms: bool) -> Result<AlgebraicityReport> {
    if curve.orientation() != Orientation::Local {
        return Err(Error::Precondition("expected a local series in u".into()));
    }
    match curve.min_exponent() {
        None => return Err(Error::Precondition("the curve series is zero".into())),
        Some(e) if *e <= Rat::zero() => {
            return Err(Error::Precondition(format!("series has exponent {e} <= 0; the curve must pass through the origin")))
        }
        _ => {}
    }
    let pairs = puiseux_pairs(curve);
    let contractible = is_contractible(&pairs, r);
    let alpha = if pairs.is_empty() { None } else { Some(alpha_invariant(&pairs, r)?) };
    let mut report = AlgebraicityReport {
        pairs,
        alpha,
        contractible,
        algebraic: None,
        generic: None,
        key_forms: None,
        witness_curve: None,
        wp_weights: None,
    };
    if !contractible && !force_keyforms {
        return Ok(report);
    }
    let g = generic_dps_from_curve(&local_to_degreewise(curve)?, r)?;
    let keys = essential_key_forms(&g)?;
    if contractible {
        let alg = keys.last().is_polynomial();
        report.algebraic = Some(alg);
        if alg {
            report.witness_curve = Some(keys.last().clone());
            report.wp_weights = Some(std::iter::once(1).chain(keys.omegas.iter().copied()).collect());
        }
    }
    report.generic = Some(g);
    report.key_forms = Some(keys);
    Ok(report)
}

/// Polynomial in `u, v` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct UVPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl UVPoly {
    pub fn parse(text: &str) -> Result<Self> {
        let sparse = parse::parse_sum(text, &["u", "v"])?;
        let mut terms = BTreeMap::new();
        for (e, c) in sparse {
            let a = rat::to_i64(&e[0]).filter(|a| *a >= 0);
            let b = rat::to_i64(&e[1]).filter(|b| *b >= 0);
            match (a, b) {
                (Some(a), Some(b)) => {
                    terms.insert((a as u32, b as u32), c);
                }
                _ => return Err(Error::Precondition(format!("u^{} v^{} is not a polynomial monomial", e[0], e[1]))),
            }
        }
        Ok(UVPoly { terms })
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(a, b)| a + b).max()
    }
}

impl fmt::Display for UVPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.keys().copied().collect();
        keys.sort_by(|(a1, b1), (a2, b2)| b2.cmp(b1).then(a2.cmp(a1)));
        let s = display::sum(keys.iter().map(|&(a, b)| {
            let (ra, rb) = (rat::int(a as i64), rat::int(b as i64));
            (&self.terms[&(a, b)], display::monomial(&[("v", &rb), ("u", &ra)]))
        }));
        f.write_str(&s)
    }
}

/// Truncation of `f` to monomials of weighted order below `p*q + r` (weights
/// `p` on `u`, `q` on `v`).
pub fn single_pair_truncation(f: &UVPoly, p: u32, q: u32, r: u32) -> Result<UVPoly> {
    let monic = f.terms.get(&(0, p)).is_some_and(|c| c.is_one());
    let others_below = f.terms.keys().all(|&(a, b)| b < p || (a, b) == (0, p));
    if !monic || !others_below {
        return Err(Error::Precondition(format!("{f} is not monic in v of degree {p}")));
    }
    let bound = p * q + r;
    Ok(UVPoly { terms: f.terms.iter().filter(|((a, b), _)| p * a + q * b < bound).map(|(k, c)| (*k, c.clone())).collect() })
}

/// Algebraicity test for a single Puiseux pair `(q, p)`: the truncation of
/// `f` below `alpha` has total degree at most `p`.
pub fn single_pair_test(f: &UVPoly, p: u32, q: u32, r: u32) -> Result<bool> {
    let t = single_pair_truncation(f, p, q, r)?;
    Ok(t.total_degree().is_none_or(|d| d <= p))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SinglePairVerdict {
    pub contractible: bool,
    pub nonalgebraic_exists: bool,
}

/// Closed form for one pair `(q, p)`: contractible iff `r < p(p-q)`, and some
/// curve gives a non-algebraic contraction iff also `r > 2p - q`.
pub fn single_pair_closed_form(q: i64, p: i64, r: i64) -> Result<SinglePairVerdict> {
    if q < 1 || p < 1 || rat::gcd(q, p) != 1 {
        return Err(Error::Precondition(format!("({q},{p}) is not a pair of coprime positive integers")));
    }
    let contractible = r < p * (p - q);
    Ok(SinglePairVerdict { contractible, nonalgebraic_exists: contractible && 2 * p - q < r })
}

/// A curve with the given local pairs and random small nonzero rational
/// coefficients, with optional extra terms on each characteristic lattice up
/// to one unit past the exponent where `r` places the generic term.
pub fn random_curve(local_pairs: &CharacteristicData, r: u32, rng: &mut impl Rng) -> PuiseuxPoly {
    let coeff = |rng: &mut dyn rand::RngCore| -> Rat {
        let n = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        rat::rat(n, rng.gen_range(1..=3))
    };
    let n = local_pairs.len();
    let big_p = local_pairs.polydromy();
    let end = rat::rat(local_pairs.pairs[n - 1].q + r as i64, big_p) + Rat::one();
    let mut curve = PuiseuxPoly::zero(Orientation::Local);
    for k in 1..=n {
        let start = local_pairs.exponent(k);
        curve.add_term(start.clone(), coeff(rng));
        let pk = local_pairs.prefix_product(k);
        let stop = if k < n { local_pairs.exponent(k + 1) } else { end.clone() };
        let mut e = start + rat::rat(1, pk);
        while e < stop {
            if rng.gen_bool(0.5) {
                curve.add_term(e.clone(), coeff(rng));
            }
            e += rat::rat(1, pk);
        }
    }
    curve
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puiseux::parse_puiseux;

    fn pairs(v: &[(i64, i64)]) -> CharacteristicData {
        CharacteristicData::new(v.to_vec()).unwrap()
    }

    fn local(s: &str) -> PuiseuxPoly {
        parse_puiseux(s, Orientation::Local).unwrap()
    }

    #[test]
    fn alpha_values() {
        for r in 0..12 {
            assert_eq!(alpha_invariant(&pairs(&[(3, 5)]), r).unwrap(), 15 + r as i64);
        }
        assert_eq!(alpha_invariant(&pairs(&[(3, 5), (23, 2)]), 1).unwrap(), 95);
        assert_eq!(alpha_invariant(&pairs(&[(1, 2)]), 0).unwrap(), 2);
        assert!(alpha_invariant(&CharacteristicData::default(), 0).is_err());
    }

    #[test]
    fn contractibility() {
        assert!(is_contractible(&pairs(&[(3, 5)]), 9));
        assert!(!is_contractible(&pairs(&[(3, 5)]), 10));
        assert!(!is_contractible(&pairs(&[(7, 5)]), 0));
        assert!(is_contractible(&pairs(&[(3, 5), (23, 2)]), 1));
    }

    #[test]
    fn poles() {
        let vp = virtual_poles(&pairs(&[(3, 5)]), 8).unwrap();
        assert_eq!((vp.tilde_omegas.clone(), vp.omegas.clone(), vp.generic_pole), (vec![5, 3], vec![5, 2], 2));
        let vp = virtual_poles(&pairs(&[(3, 5), (23, 2)]), 1).unwrap();
        assert_eq!((vp.tilde_omegas.clone(), vp.omegas.clone(), vp.generic_pole), (vec![10, 6, 47], vec![10, 4, 3], 5));
        let vp = virtual_poles(&pairs(&[(3, 5)]), 0).unwrap();
        assert_eq!((vp.l, vp.omegas.clone(), vp.generic_pole), (0, vec![5], 2));
    }

    #[test]
    fn membership() {
        assert!(!semigroup_membership(6, &[10, 4]).unwrap());
        assert!(semigroup_membership(0, &[7]).unwrap());
        assert!(!semigroup_membership(3, &[5, 2]).unwrap());
        assert!(semigroup_membership(7, &[5, 2]).unwrap());
        assert!(!semigroup_membership(-2, &[5, 2]).unwrap());
        assert!(semigroup_membership(4, &[0, 2]).is_err());
    }

    #[test]
    fn classifications() {
        let c = semigroup_conditions(&pairs(&[(3, 5), (23, 2)]), 1).unwrap();
        assert_eq!(c.s1, vec![true, false]);
        assert_eq!(c.classification, Classification::OnlyNonAlgebraic);
        let c = semigroup_conditions(&pairs(&[(3, 5)]), 8).unwrap();
        assert_eq!(c.s1, vec![true]);
        assert_eq!(c.s2, vec![S2Check { holds: false, largest_gap: Some(3) }]);
        assert_eq!(c.classification, Classification::Both);
        assert_eq!(semigroup_conditions(&pairs(&[(3, 5)]), 7).unwrap().classification, Classification::OnlyAlgebraic);
        assert_eq!(semigroup_conditions(&pairs(&[(3, 5)]), 10).unwrap().classification, Classification::NotContractible);
    }

    #[test]
    fn witnesses_for_both() {
        let w = witness_curves(&pairs(&[(3, 5)]), 8, Classification::Both).unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w[0].curve, local("u^(3/5)"));
        assert_eq!(local_to_degreewise(&w[1].curve).unwrap(), parse_puiseux("x^(2/5) + x^(-1)", Orientation::DegreeWise).unwrap());
        assert!(witness_curves(&pairs(&[(3, 5)]), 8, Classification::OnlyAlgebraic).is_err());
    }

    #[test]
    fn algebraicity_of_examples() {
        let c1 = is_algebraic(&local("u^(3/5)"), 8).unwrap();
        assert_eq!(c1.algebraic, Some(true));
        assert_eq!(c1.witness_curve, Some(LaurentPolyXY::parse("y^5 - x^2").unwrap()));
        assert_eq!(is_algebraic(&local("u^(3/5) + u^2"), 8).unwrap().algebraic, Some(false));
        assert_eq!(is_algebraic(&local("u^(3/5) + u^2"), 7).unwrap().algebraic, Some(true));
        let r0 = is_algebraic(&local("u^(3/5)"), 0).unwrap();
        assert_eq!(r0.wp_weights, Some(vec![1, 5, 2]));
        let nc = is_algebraic(&local("u^(3/5)"), 10).unwrap();
        assert!(!nc.contractible && nc.algebraic.is_none() && nc.key_forms.is_none());
        assert!(analyze_curve(&local("u^(3/5)"), 10, true).unwrap().key_forms.is_some());
        assert!(is_algebraic(&local("1 + u"), 0).is_err());
    }

    #[test]
    fn single_pair_truncations() {
        let f = UVPoly::parse("v^5 - u^3").unwrap();
        assert!(single_pair_test(&f, 5, 3, 9).unwrap());
        let f = UVPoly::parse("(v - u^2)^5 - u^3").unwrap();
        assert_eq!(single_pair_truncation(&f, 5, 3, 8).unwrap(), UVPoly::parse("v^5 - u^3 - 5*v^4*u^2").unwrap());
        assert!(!single_pair_test(&f, 5, 3, 8).unwrap());
        assert!(single_pair_test(&f, 5, 3, 0).unwrap());
        assert!(single_pair_test(&UVPoly::parse("2*v^5 - u^3").unwrap(), 5, 3, 0).is_err());
    }

    #[test]
    fn closed_forms() {
        assert!(single_pair_closed_form(3, 5, 9).unwrap().contractible);
        assert!(!single_pair_closed_form(3, 5, 10).unwrap().contractible);
        for r in 0..12 {
            assert_eq!(single_pair_closed_form(3, 5, r).unwrap().nonalgebraic_exists, (8..10).contains(&r));
            assert!(!single_pair_closed_form(1, 2, r).unwrap().nonalgebraic_exists);
        }
        assert!(single_pair_closed_form(2, 4, 0).is_err());
    }
}
