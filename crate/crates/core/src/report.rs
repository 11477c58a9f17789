//! Serializable reports built from a [`CurveSpec`], one per CLI command.
//! Rationals and polynomials are rendered as strings so the JSON is stable.

use std::fmt::{self, Write};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::criteria::{
    alpha_invariant, analyze_curve, is_algebraic, is_contractible, random_curve, semigroup_conditions,
    single_pair_closed_form, single_pair_test, single_pair_truncation, virtual_poles, witness_curves, Classification,
    SemigroupReport, SinglePairVerdict, UVPoly, VirtualPoles,
};
use crate::dualgraph::{build_dual_graph, DualGraph};
use crate::error::{Error, Result};
use crate::input::{CurveSource, CurveSpec};
use crate::keyforms::{essential_key_forms, EssentialKeyForms};
use crate::puiseux::{local_to_degreewise, parse_puiseux, CharacteristicData, Orientation, PuiseuxPoly};
use crate::semidegree::{generic_dps_from_curve, GenericDPS};

fn pair_list(pairs: &CharacteristicData) -> Vec<[i64; 2]> {
    pairs.pairs.iter().map(|pp| [pp.q, pp.p]).collect()
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Pairs of a curve that must be tangent to the line.
fn tangent_pairs(spec: &CurveSpec) -> Result<CharacteristicData> {
    let pairs = spec.pairs()?;
    match pairs.pairs.first() {
        None => Err(Error::Precondition("the curve has no characteristic exponent".into())),
        Some(pp) if pp.q <= 0 || pp.q >= pp.p => Err(Error::Precondition(format!(
            "order {}/{} is not in (0, 1); the curve must be tangent to the line",
            pp.q, pp.p
        ))),
        Some(_) => Ok(pairs),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InputSummary {
    pub series: Option<String>,
    pub pairs: Vec<[i64; 2]>,
    pub r: u32,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessReport {
    pub curve: String,
    pub expect_algebraic: bool,
    /// Verdict of the key-form test on the witness.
    pub algebraic: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub input: InputSummary,
    pub alpha: i64,
    pub p_squared: i64,
    pub contractible: bool,
    pub virtual_poles: Option<VirtualPoles>,
    pub semigroup: SemigroupReport,
    pub witnesses: Vec<WitnessReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KeyFormsReport {
    pub generic: String,
    pub formal_pairs: Vec<[i64; 2]>,
    pub delta_x: i64,
    /// `f_0 = x, f_1, ..., f_{l+1}`.
    pub forms: Vec<String>,
    /// `F_1 = y1, F_2, ..., F_{l+1}`.
    pub lifts: Vec<String>,
    pub omegas: Vec<i64>,
    pub alphas: Vec<i64>,
    pub last_is_polynomial: bool,
    pub all_forms: Option<Vec<String>>,
}

impl KeyFormsReport {
    fn new(g: &GenericDPS, keys: &EssentialKeyForms, all: bool) -> Self {
        KeyFormsReport {
            generic: g.to_string(),
            formal_pairs: pair_list(&g.formal_pairs),
            delta_x: g.delta_x,
            forms: keys.forms.iter().map(|f| f.to_string()).collect(),
            lifts: keys.lifts.iter().map(|f| f.to_string()).collect(),
            omegas: keys.omegas.clone(),
            alphas: keys.alphas.clone(),
            last_is_polynomial: keys.last().is_polynomial(),
            all_forms: if all { keys.all_forms.as_ref().map(|v| v.iter().map(|f| f.to_string()).collect()) } else { None },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    #[serde(flatten)]
    pub classify: ClassifyReport,
    /// Absent for pairs-only input or when not contractible.
    pub algebraic: Option<bool>,
    pub key_forms: Option<KeyFormsReport>,
    pub witness_curve: Option<String>,
    pub wp_weights: Option<Vec<i64>>,
}

fn witness_verdict(curve: &PuiseuxPoly, r: u32) -> Result<Option<bool>> {
    Ok(is_algebraic(curve, r)?.algebraic)
}

pub fn classify(spec: &CurveSpec) -> Result<ClassifyReport> {
    let pairs = tangent_pairs(spec)?;
    let r = spec.r;
    let alpha = alpha_invariant(&pairs, r)?;
    let big_p = pairs.polydromy();
    let semigroup = semigroup_conditions(&pairs, r)?;
    let mut witnesses = Vec::new();
    for w in witness_curves(&pairs, r, semigroup.classification)? {
        witnesses.push(WitnessReport {
            curve: w.curve.to_string(),
            expect_algebraic: w.expect_algebraic,
            algebraic: witness_verdict(&w.curve, r)?,
        });
    }
    Ok(ClassifyReport {
        input: InputSummary { series: spec.series().map(|s| s.to_string()), pairs: pair_list(&pairs), r },
        alpha,
        p_squared: big_p * big_p,
        contractible: is_contractible(&pairs, r),
        virtual_poles: virtual_poles(&pairs, r).ok(),
        semigroup,
        witnesses,
    })
}

pub fn analyze(spec: &CurveSpec, all: bool, force_keyforms: bool) -> Result<AnalyzeReport> {
    let classify = classify(spec)?;
    let mut out = AnalyzeReport { classify, algebraic: None, key_forms: None, witness_curve: None, wp_weights: None };
    if let Some(series) = spec.series() {
        let rep = analyze_curve(series, spec.r, force_keyforms)?;
        out.algebraic = rep.algebraic;
        if let (Some(g), Some(keys)) = (&rep.generic, &rep.key_forms) {
            out.key_forms = Some(KeyFormsReport::new(g, keys, all));
        }
        out.witness_curve = rep.witness_curve.map(|f| f.to_string());
        out.wp_weights = rep.wp_weights;
    }
    Ok(out)
}

/// Key forms of the generic series given directly or derived from a curve.
pub fn keyforms(spec: &CurveSpec, all: bool) -> Result<KeyFormsReport> {
    let g = match &spec.source {
        CurveSource::Generic(g) => g.clone(),
        CurveSource::Series(s) => generic_dps_from_curve(&local_to_degreewise(s)?, spec.r)?,
        CurveSource::Pairs(_) => {
            return Err(Error::Precondition("key forms need a series or a generic series, not just pairs".into()))
        }
    };
    Ok(KeyFormsReport::new(&g, &essential_key_forms(&g)?, all))
}

pub fn dualgraph(spec: &CurveSpec) -> Result<DualGraph> {
    build_dual_graph(&tangent_pairs(spec)?, spec.r)
}

#[derive(Debug, Clone, Serialize)]
pub struct SinglePairReport {
    pub q: i64,
    pub p: i64,
    pub r: u32,
    pub closed_form: SinglePairVerdict,
    pub classification: Classification,
    pub poly: Option<String>,
    pub truncation: Option<String>,
    /// Whether the truncation has total degree at most `p`.
    pub poly_algebraic: Option<bool>,
    /// Key-form verdict on the input series, if one was given.
    pub series_algebraic: Option<bool>,
}

pub fn singlepair(spec: &CurveSpec, poly: Option<&str>) -> Result<SinglePairReport> {
    let pairs = tangent_pairs(spec)?;
    if pairs.len() != 1 {
        return Err(Error::Precondition(format!("{pairs} has more than one Puiseux pair")));
    }
    let (q, p) = (pairs.pairs[0].q, pairs.pairs[0].p);
    let r = spec.r;
    let mut out = SinglePairReport {
        q,
        p,
        r,
        closed_form: single_pair_closed_form(q, p, r as i64)?,
        classification: semigroup_conditions(&pairs, r)?.classification,
        poly: None,
        truncation: None,
        poly_algebraic: None,
        series_algebraic: None,
    };
    if let Some(text) = poly {
        let f = UVPoly::parse(text)?;
        out.truncation = Some(single_pair_truncation(&f, p as u32, q as u32, r)?.to_string());
        out.poly_algebraic = Some(single_pair_test(&f, p as u32, q as u32, r)?);
        out.poly = Some(f.to_string());
    }
    if let Some(s) = spec.series() {
        out.series_algebraic = witness_verdict(s, r)?;
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub q: i64,
    pub p: i64,
    pub r: u32,
    pub closed_form: SinglePairVerdict,
    pub classification: Classification,
    pub graph_negative_definite: bool,
    /// Key-form verdicts on `u^(q/p)`, `u^(q/p) + u^2` and a random curve.
    pub monomial_algebraic: Option<bool>,
    pub perturbed_algebraic: Option<bool>,
    pub random_algebraic: Option<bool>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub max_p: i64,
    pub seed: u64,
    pub rows: Vec<SweepRow>,
    pub disagreements: usize,
}

/// Every coprime `0 < q < p <= max_p` and `0 <= r <= p(p-q)`, checking the
/// closed form against the semigroup classifier, the negative definiteness
/// of the dual graph and key-form decisions on sample curves.
pub fn sweep(max_p: i64, seed: u64) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for p in 2..=max_p {
        for q in (1..p).filter(|q| crate::rat::gcd(*q, p) == 1) {
            let pairs = CharacteristicData::new(vec![(q, p)])?;
            let monomial = parse_puiseux(&format!("u^({q}/{p})"), Orientation::Local)?;
            let perturbed = parse_puiseux(&format!("u^({q}/{p}) + u^2"), Orientation::Local)?;
            for r in 0..=(p * (p - q)) as u32 {
                let cf = single_pair_closed_form(q, p, r as i64)?;
                let class = semigroup_conditions(&pairs, r)?.classification;
                let nd = build_dual_graph(&pairs, r)?.is_negative_definite();
                let random = random_curve(&pairs, r, &mut rng);
                let mono = witness_verdict(&monomial, r)?;
                let pert = witness_verdict(&perturbed, r)?;
                let rand_v = witness_verdict(&random, r)?;
                let mut agrees = cf.contractible == (class != Classification::NotContractible)
                    && cf.contractible == nd
                    && cf.nonalgebraic_exists
                        == matches!(class, Classification::Both | Classification::OnlyNonAlgebraic);
                if cf.contractible {
                    agrees &= mono == Some(class != Classification::OnlyNonAlgebraic);
                    agrees &= pert == Some(!cf.nonalgebraic_exists);
                    agrees &= match class {
                        Classification::OnlyAlgebraic => rand_v == Some(true),
                        Classification::OnlyNonAlgebraic => rand_v == Some(false),
                        _ => rand_v.is_some(),
                    };
                } else {
                    agrees &= mono.is_none() && pert.is_none() && rand_v.is_none();
                }
                rows.push(SweepRow {
                    q,
                    p,
                    r,
                    closed_form: cf,
                    classification: class,
                    graph_negative_definite: nd,
                    monomial_algebraic: mono,
                    perturbed_algebraic: pert,
                    random_algebraic: rand_v,
                    agrees,
                });
            }
        }
    }
    let disagreements = rows.iter().filter(|row| !row.agrees).count();
    Ok(SweepReport { max_p, seed, rows, disagreements })
}

/// Pretty JSON; key order follows the struct fields.
pub fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

impl fmt::Display for ClassifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.input.pairs.iter().map(|[q, p]| format!("({q},{p})")).collect();
        if let Some(s) = &self.input.series {
            writeln!(f, "series          {s}")?;
        }
        writeln!(f, "pairs           [{}]", pairs.join(","))?;
        writeln!(f, "r               {}", self.input.r)?;
        writeln!(f, "alpha           {}", self.alpha)?;
        writeln!(f, "p^2             {}", self.p_squared)?;
        writeln!(f, "contractible    {}", yes_no(self.contractible))?;
        if let Some(vp) = &self.virtual_poles {
            writeln!(f, "virtual poles   {} | generic {}", join(&vp.omegas), vp.generic_pole)?;
        }
        if !self.semigroup.s1.is_empty() {
            writeln!(f, "  k  S1   S2   largest gap")?;
            for (k, (s1, s2)) in self.semigroup.s1.iter().zip(&self.semigroup.s2).enumerate() {
                writeln!(f, "  {:<2} {:<4} {:<4} {}", k + 1, yes_no(*s1), yes_no(s2.holds), opt(&s2.largest_gap))?;
            }
        }
        writeln!(f, "classification  {}", self.semigroup.classification)?;
        for w in &self.witnesses {
            writeln!(
                f,
                "witness         v = {}  (expected {}, key forms say {})",
                w.curve,
                if w.expect_algebraic { "algebraic" } else { "non-algebraic" },
                w.algebraic.map_or("-", |a| if a { "algebraic" } else { "non-algebraic" })
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for KeyFormsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<String> = self.formal_pairs.iter().map(|[q, p]| format!("({q},{p})")).collect();
        writeln!(f, "generic series  {}", self.generic)?;
        writeln!(f, "formal pairs    [{}]  delta(x) = {}", pairs.join(","), self.delta_x)?;
        for (k, form) in self.forms.iter().enumerate().skip(1) {
            writeln!(f, "f_{k} = {form}")?;
        }
        for (k, lift) in self.lifts.iter().enumerate().skip(1) {
            writeln!(f, "F_{} = {lift}", k + 1)?;
        }
        writeln!(f, "omega           {}", join(&self.omegas))?;
        writeln!(f, "last form is a polynomial: {}", yes_no(self.last_is_polynomial))?;
        if let Some(all) = &self.all_forms {
            writeln!(f, "all key forms:")?;
            for g in all {
                writeln!(f, "  {g}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for AnalyzeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.classify)?;
        if let Some(a) = self.algebraic {
            writeln!(f, "algebraic       {}", yes_no(a))?;
        }
        if let Some(k) = &self.key_forms {
            write!(f, "{k}")?;
        }
        if let Some(w) = &self.witness_curve {
            writeln!(f, "curve at infinity  {w} = 0")?;
        }
        if let Some(w) = &self.wp_weights {
            writeln!(f, "weights         P({})", join(w))?;
        }
        Ok(())
    }
}

impl fmt::Display for SinglePairReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pair ({},{}), r = {}", self.q, self.p, self.r)?;
        writeln!(f, "contractible         {}", yes_no(self.closed_form.contractible))?;
        writeln!(f, "non-algebraic exists {}", yes_no(self.closed_form.nonalgebraic_exists))?;
        writeln!(f, "classification       {}", self.classification)?;
        if let (Some(poly), Some(t), Some(a)) = (&self.poly, &self.truncation, self.poly_algebraic) {
            writeln!(f, "f = {poly}")?;
            writeln!(f, "truncation {t}, algebraic {}", yes_no(a))?;
        }
        if let Some(a) = self.series_algebraic {
            writeln!(f, "series algebraic     {}", yes_no(a))?;
        }
        Ok(())
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut bad = String::new();
        for row in self.rows.iter().filter(|row| !row.agrees) {
            writeln!(bad, "  disagreement at ({},{}), r = {}: {:?}", row.q, row.p, row.r, row).unwrap();
        }
        writeln!(f, "{} cases with p <= {}, seed {}", self.rows.len(), self.max_p, self.seed)?;
        f.write_str(&bad)?;
        writeln!(f, "disagreements: {}", self.disagreements)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_agrees() {
        let rep = sweep(4, 1).unwrap();
        assert_eq!(rep.disagreements, 0, "{rep}");
    }
}
