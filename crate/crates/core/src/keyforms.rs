//! Essential key forms of a semidegree, built from its generic degree-wise
//! Puiseux series by repeatedly absorbing leading terms.

use std::cmp::Ordering;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::laurent::LaurentPolyXY;
use crate::lifted::LiftedPoly;
use crate::rat::{self, Rat};
use crate::semidegree::{substitute, GenericDPS, XiSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EssentialKeyForms {
    /// `f_0 = x, f_1, ..., f_{l+1}`.
    pub forms: Vec<LaurentPolyXY>,
    /// `F_1 = y_1, F_2, ..., F_{l+1}`, with `F_{k+1}` in `x, y_1..y_k`.
    pub lifts: Vec<LiftedPoly>,
    /// `omega_k = delta(f_k)`.
    pub omegas: Vec<i64>,
    /// `p_1, ..., p_{l+1}`; `y_k^{p_k}` is the leading monomial of `F_{k+1}`.
    pub alphas: Vec<i64>,
    /// Every key form in order, including the intermediate ones produced
    /// while absorbing terms.
    pub all_forms: Option<Vec<LaurentPolyXY>>,
}

impl EssentialKeyForms {
    pub fn last(&self) -> &LaurentPolyXY {
        self.forms.last().expect("at least x and f_1")
    }

    /// `l`, so that the forms are `f_0..f_{l+1}`.
    pub fn l(&self) -> usize {
        self.forms.len() - 2
    }
}

pub fn is_polynomial(f: &LaurentPolyXY) -> bool {
    f.is_polynomial()
}

/// The unique `(alpha, beta_1..beta_k)` with `0 <= beta_j < p_j` and
/// `alpha*omega_0 + sum beta_j*omega_j = n`.
pub fn omega_decompose(n: i64, k: usize, keys: &EssentialKeyForms) -> Result<(i64, Vec<i64>)> {
    if k == 0 || k >= keys.omegas.len() {
        return Err(Error::Precondition(format!("k = {k} outside 1..={}", keys.omegas.len() - 1)));
    }
    decompose(n, k, &keys.omegas, &keys.alphas)
}

fn decompose(n: i64, k: usize, omegas: &[i64], ps: &[i64]) -> Result<(i64, Vec<i64>)> {
    let mut rest = n;
    let mut betas = vec![0; k];
    for j in (1..=k).rev() {
        let g = rat::gcd_all(&omegas[..j]);
        let b = (0..ps[j - 1]).find(|b| (rest - b * omegas[j]).rem_euclid(g) == 0).ok_or_else(|| {
            Error::Invariant(format!("no omega-decomposition of {n} at j = {j}: omegas {omegas:?}, p {ps:?}"))
        })?;
        betas[j - 1] = b;
        rest -= b * omegas[j];
    }
    if rest % omegas[0] != 0 {
        return Err(Error::Invariant(format!(
            "omega-decomposition of {n} leaves {rest}, not a multiple of {}",
            omegas[0]
        )));
    }
    Ok((rest / omegas[0], betas))
}

pub fn essential_key_forms(g: &GenericDPS) -> Result<EssentialKeyForms> {
    Builder::new(g)?.run()
}

/// The full chain of key forms; its last element is the last essential one.
pub fn all_key_forms(g: &GenericDPS) -> Result<Vec<LaurentPolyXY>> {
    Ok(essential_key_forms(g)?.all_forms.unwrap_or_default())
}

struct Builder<'a> {
    g: &'a GenericDPS,
    forms: Vec<LaurentPolyXY>,
    lifts: Vec<LiftedPoly>,
    omegas: Vec<i64>,
    ps: Vec<i64>,
    chain: Vec<LaurentPolyXY>,
    /// `subs[j][b] = f_j(x, phi~)^b` and `form_pows[j][b] = f_j^b` for `b < p_j`.
    subs: Vec<Vec<XiSeries>>,
    form_pows: Vec<Vec<LaurentPolyXY>>,
    /// `f_k(x, phi~)` for the newest form.
    last_sub: XiSeries,
}

impl<'a> Builder<'a> {
    fn new(g: &'a GenericDPS) -> Result<Self> {
        let ps: Vec<i64> = g.formal_pairs.pairs.iter().map(|pp| pp.p).collect();
        let e1 = g.formal_pairs.exponent(1);
        let mut chain = vec![LaurentPolyXY::x(), LaurentPolyXY::y()];
        let mut f1 = LaurentPolyXY::y();
        for (e, c) in g.phi.iter().filter(|(e, _)| **e > e1) {
            let a = rat::to_i64(e).ok_or_else(|| Error::Invariant(format!("exponent {e} above {e1} is not integral")))?;
            f1.add_term(a, 0, -c.clone());
            chain.push(f1.clone());
        }
        let omega1 = to_omega(&e1, g.delta_x)?;
        let last_sub = substitute(&f1, g);
        Ok(Builder {
            g,
            forms: vec![LaurentPolyXY::x(), f1.clone()],
            lifts: vec![LiftedPoly::var_power(vec![g.delta_x, omega1], 1, 1)],
            omegas: vec![g.delta_x, omega1],
            ps,
            chain,
            subs: vec![Vec::new()],
            form_pows: vec![Vec::new()],
            last_sub,
        })
    }

    fn run(mut self) -> Result<EssentialKeyForms> {
        for k in 1..=self.g.l() {
            self.step(k)?;
        }
        Ok(EssentialKeyForms {
            forms: self.forms,
            lifts: self.lifts,
            omegas: self.omegas,
            alphas: self.ps,
            all_forms: Some(self.chain),
        })
    }

    /// Caches powers of `f_k` and its substitution below `p_k`.
    fn cache_powers(&mut self, k: usize) {
        let pk = self.ps[k - 1] as usize;
        let mut s = vec![XiSeries::one()];
        let mut f = vec![LaurentPolyXY::one()];
        for b in 1..pk {
            s.push(&s[b - 1] * &self.last_sub);
            f.push(&f[b - 1] * &self.forms[k]);
        }
        self.subs.push(s);
        self.form_pows.push(f);
    }

    fn stop_exponent(&self, ft: &XiSeries, k: usize) -> Result<Rat> {
        let found = if k < self.g.l() {
            let pk = self.g.formal_pairs.prefix_product(k);
            ft.terms().keys().rev().find(|e| !rat::in_lattice(e, pk)).cloned()
        } else {
            ft.terms().iter().rev().find(|(_, c)| c.degree().unwrap_or(0) >= 1).map(|(e, _)| e.clone())
        };
        found.ok_or_else(|| Error::Invariant(format!("no stopping exponent for k = {k} in {ft}")))
    }

    fn step(&mut self, k: usize) -> Result<()> {
        self.cache_powers(k);
        let pk = self.ps[k - 1];
        let dx = self.g.delta_x;
        let mut big_f = LiftedPoly::var_power(self.omegas[..=k].to_vec(), k, pk);
        let mut ft = self.last_sub.pow(pk as u32);
        let mut pi = self.forms[k].pow(pk as u32);
        let stop = self.stop_exponent(&ft, k)?;
        let mut absorbed = false;
        loop {
            let (e, c) = ft.leading().ok_or_else(|| Error::Invariant(format!("f~ vanished at k = {k}")))?;
            match e.cmp(&stop) {
                Ordering::Equal => break,
                Ordering::Less => {
                    return Err(Error::Invariant(format!(
                        "x-degree {e} fell below the stopping exponent {stop} at k = {k}; F = {big_f}"
                    )))
                }
                Ordering::Greater => {}
            }
            let c = c.as_constant().ok_or_else(|| {
                Error::Invariant(format!("coefficient {c} of x^{e} depends on xi above {stop} at k = {k}; F = {big_f}"))
            })?;
            let e = e.clone();
            let (alpha, betas) = decompose(to_omega(&e, dx)?, k, &self.omegas, &self.ps)?;
            let mut sub = XiSeries::one().shift(&rat::int(alpha));
            let mut form = LaurentPolyXY::monomial(Rat::from_integer(1.into()), alpha, 0);
            for (j, &b) in betas.iter().enumerate() {
                sub = &sub * &self.subs[j + 1][b as usize];
                form = &form * &self.form_pows[j + 1][b as usize];
            }
            let lead = match sub.leading() {
                Some((se, sc)) if *se == e => sc.as_constant().filter(|v| !v.is_zero()),
                _ => None,
            }
            .ok_or_else(|| Error::Invariant(format!("monomial for x^{e} has leading term {:?}", sub.leading())))?;
            let coef = &c / &lead;
            let mut exps = vec![alpha];
            exps.extend(&betas);
            big_f.add_term(exps, -coef.clone());
            ft = &ft - &sub.scale(&coef);
            pi = &pi - &form.scale(&coef);
            self.chain.push(pi.clone());
            absorbed = true;
        }
        if !absorbed {
            self.chain.push(pi.clone());
        }
        self.omegas.push(to_omega(&stop, dx)?);
        self.forms.push(pi);
        self.lifts.push(big_f);
        self.last_sub = ft;
        Ok(())
    }
}

fn to_omega(e: &Rat, delta_x: i64) -> Result<i64> {
    rat::to_i64(&(e * rat::int(delta_x)))
        .ok_or_else(|| Error::Invariant(format!("{delta_x} * {e} is not an integer")))
}
