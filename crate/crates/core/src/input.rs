//! Curve specifications read from `key = value` files or command-line flags.
//!
//! ```text
//! # C2 with eight extra blow-ups
//! series = "u^(3/5) + u^2"
//! r = 8
//! ```
//!
//! Recognised keys are `series` (local expansion in `u`), `pairs` (a list
//! such as `[(3,5),(23,2)]`), `r`, and the pair `generic` / `xi` giving a
//! degree-wise series in `x` and the exponent of its generic term.

use crate::error::{Error, Result};
use crate::parse;
use crate::puiseux::{parse_puiseux, puiseux_pairs, CharacteristicData, Orientation, PuiseuxPoly};
use crate::semidegree::GenericDPS;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveSource {
    Series(PuiseuxPoly),
    Pairs(CharacteristicData),
    Generic(GenericDPS),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSpec {
    pub source: CurveSource,
    pub r: u32,
}

/// Raw text fields before validation.
#[derive(Debug, Clone, Default)]
pub struct SpecFields {
    pub series: Option<String>,
    pub pairs: Option<String>,
    pub generic: Option<String>,
    pub xi: Option<String>,
    pub r: Option<u32>,
}

impl SpecFields {
    /// Fills unset fields from `other`.
    pub fn or(self, other: SpecFields) -> SpecFields {
        SpecFields {
            series: self.series.or(other.series),
            pairs: self.pairs.or(other.pairs),
            generic: self.generic.or(other.generic),
            xi: self.xi.or(other.xi),
            r: self.r.or(other.r),
        }
    }
}

impl CurveSpec {
    pub fn from_fields(f: SpecFields) -> Result<Self> {
        let given = [f.series.is_some(), f.pairs.is_some(), f.generic.is_some()].iter().filter(|b| **b).count();
        if given != 1 {
            return Err(Error::Precondition("give exactly one of series, pairs or generic".into()));
        }
        if f.xi.is_some() != f.generic.is_some() {
            return Err(Error::Precondition("generic and xi must be given together".into()));
        }
        let source = if let Some(s) = &f.series {
            CurveSource::Series(parse_puiseux(s, Orientation::Local)?)
        } else if let Some(p) = &f.pairs {
            CurveSource::Pairs(parse_pairs(p)?)
        } else {
            let phi = parse_puiseux(f.generic.as_deref().unwrap(), Orientation::DegreeWise)?;
            let xi = parse::parse_rational(f.xi.as_deref().unwrap())?;
            CurveSource::Generic(GenericDPS::new(phi, xi)?)
        };
        let r = match (&source, f.r) {
            (_, Some(r)) => r,
            (CurveSource::Generic(_), None) => 0,
            _ => return Err(Error::Precondition("r is required".into())),
        };
        Ok(CurveSpec { source, r })
    }

    pub fn parse_file(text: &str) -> Result<Self> {
        Self::from_fields(parse_fields(text)?)
    }

    /// Local Puiseux pairs of the curve.
    pub fn pairs(&self) -> Result<CharacteristicData> {
        match &self.source {
            CurveSource::Series(s) => Ok(puiseux_pairs(s)),
            CurveSource::Pairs(p) => Ok(p.clone()),
            CurveSource::Generic(_) => {
                Err(Error::Precondition("a generic degree-wise series does not determine a curve".into()))
            }
        }
    }

    pub fn series(&self) -> Option<&PuiseuxPoly> {
        match &self.source {
            CurveSource::Series(s) => Some(s),
            _ => None,
        }
    }
}

/// Reads the `key = value` lines of a curve file. Values may be quoted.
pub fn parse_fields(text: &str) -> Result<SpecFields> {
    let mut f = SpecFields::default();
    let mut offset = 0;
    for (i, raw) in text.lines().enumerate() {
        let pos = offset;
        offset += raw.len() + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let syntax = |msg: String| Error::Syntax { pos, msg: format!("line {}: {msg}", i + 1) };
        let (key, value) = line.split_once('=').ok_or_else(|| syntax("expected key = value".into()))?;
        let value = value.trim();
        let value = value
            .strip_prefix('"')
            .and_then(|v| v.strip_suffix('"'))
            .unwrap_or(value)
            .to_string();
        let slot = match key.trim() {
            "series" => &mut f.series,
            "pairs" => &mut f.pairs,
            "generic" => &mut f.generic,
            "xi" => &mut f.xi,
            "r" => {
                let r = value.parse().map_err(|_| syntax(format!("r = {value} is not a non-negative integer")))?;
                if f.r.replace(r).is_some() {
                    return Err(syntax("r given twice".into()));
                }
                continue;
            }
            other => return Err(syntax(format!("unknown key '{other}'"))),
        };
        if slot.replace(value).is_some() {
            return Err(syntax(format!("{} given twice", key.trim())));
        }
    }
    Ok(f)
}

/// Parses `[(q1,p1),(q2,p2),...]`; the brackets are optional.
pub fn parse_pairs(text: &str) -> Result<CharacteristicData> {
    let t = text.trim();
    let t = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')).unwrap_or(t);
    let mut out = Vec::new();
    let mut rest = t.trim();
    while !rest.is_empty() {
        let pos = text.len() - rest.len();
        let err = || Error::Syntax { pos, msg: "expected a pair (q,p)".into() };
        let inner = rest.strip_prefix('(').ok_or_else(err)?;
        let (body, after) = inner.split_once(')').ok_or_else(err)?;
        let (q, p) = body.split_once(',').ok_or_else(err)?;
        let q: i64 = q.trim().parse().map_err(|_| err())?;
        let p: i64 = p.trim().parse().map_err(|_| err())?;
        out.push((q, p));
        rest = after.trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    if out.is_empty() {
        return Err(Error::Syntax { pos: 0, msg: "no pairs given".into() });
    }
    CharacteristicData::new(out)
}
