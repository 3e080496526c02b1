//! Rational zeta functions Σ coeff · Π L^{−ν}T^N / (1 − L^{−ν}T^N).

use std::collections::BTreeSet;

use num::integer::gcd;
use num::{BigRational, One, Zero};
use serde::Serialize;

use super::class::{ClassJson, GrothendieckClass};
use super::resolution::{Mode, ResolutionData};
use crate::error::{invalid, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Gate {
    pub nu: u64,
    #[serde(rename = "N")]
    pub mult: u64,
    pub exceptional: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaTerm {
    pub stratum: Vec<String>,
    /// (L−1)^{|I|−1}·[Ẽ]; `None` when the stratum only carries χ.
    pub coeff: Option<GrothendieckClass>,
    /// Euler realization of the coefficient in the zeta's mode.
    pub coeff_chi: Option<BigRational>,
    pub gates: Vec<Gate>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZetaFunction {
    pub mode: Mode,
    pub terms: Vec<ZetaTerm>,
}

/// Value of L under the Euler realization of a mode.
pub fn realization_point(mode: Mode) -> BigRational {
    match mode {
        Mode::Complex => BigRational::one(),
        Mode::Real(_) => -BigRational::one(),
    }
}

pub fn euler_realization(c: &GrothendieckClass, mode: Mode) -> BigRational {
    match mode {
        Mode::Complex => c.chi_complex(),
        Mode::Real(_) => c.chi_real(),
    }
}

fn bare(term: &ZetaTerm) -> Error {
    Error::Validation(format!("stratum {:?} carries only an Euler characteristic; a class is required", term.stratum))
}

pub fn zeta_from_resolution(res: &ResolutionData, mode: Mode) -> Result<ZetaFunction> {
    let l_minus_one = &GrothendieckClass::l() - &GrothendieckClass::one();
    let mut terms = Vec::new();
    for s in &res.strata {
        if !s.members.iter().any(|&k| res.is_exceptional(k)) {
            continue;
        }
        let size = s.members.len();
        let factor = l_minus_one.pow(size as u32 - 1);
        let cover = match mode {
            Mode::Complex => s.class.clone(),
            Mode::Real(sign) => s.class_signed.get(&sign).cloned(),
        };
        let coeff = cover.map(|c| &factor * &c);
        let coeff_chi = match (&coeff, mode) {
            (Some(c), _) => Some(euler_realization(c, mode)),
            (None, Mode::Complex) if size > 1 => Some(BigRational::zero()),
            (None, Mode::Complex) => res.cover_chi(s).map(|v| BigRational::from_integer(v.into())),
            (None, Mode::Real(_)) => None,
        };
        let gates = s
            .members
            .iter()
            .map(|&k| {
                let c = &res.components[k];
                Gate { nu: c.nu, mult: c.mult, exceptional: c.exceptional }
            })
            .collect();
        let stratum = s.members.iter().map(|&k| res.components[k].id.clone()).collect();
        terms.push(ZetaTerm { stratum, coeff, coeff_chi, gates });
    }
    Ok(ZetaFunction { mode, terms })
}

/// Multiply a truncated series (index = power of T) by Σ_{k≥1} w^k T^{kN}.
fn times_gate<R: Clone + Zero>(series: &[R], w: &R, n: usize, mul: impl Fn(&R, &R) -> R) -> Vec<R> {
    let len = series.len();
    let mut out = vec![R::zero(); len];
    let mut wk = w.clone();
    let mut shift = n;
    while shift < len {
        for d in 0..len - shift {
            if !series[d].is_zero() {
                out[d + shift] = out[d + shift].clone() + mul(&series[d], &wk);
            }
        }
        wk = mul(&wk, w);
        shift += n;
    }
    out
}

/// Coefficients of T^1..T^M.
pub fn expand_series(z: &ZetaFunction, m: usize) -> Result<Vec<GrothendieckClass>> {
    if m == 0 {
        return invalid("expansion order must be at least 1");
    }
    let mut total = vec![GrothendieckClass::zero(); m + 1];
    for t in &z.terms {
        let coeff = t.coeff.as_ref().ok_or_else(|| bare(t))?;
        let mut s = vec![GrothendieckClass::zero(); m + 1];
        s[0] = coeff.clone();
        for g in &t.gates {
            let w = GrothendieckClass::l_pow(-(g.nu as i64));
            s = times_gate(&s, &w, g.mult as usize, |a, b| a * b);
        }
        for (acc, c) in total.iter_mut().zip(s) {
            *acc = &*acc + &c;
        }
    }
    Ok(total.split_off(1))
}

/// Euler realizations of the coefficients of T^1..T^M, computed from the
/// realized term coefficients so that χ-only strata are usable.
pub fn expand_series_chi(z: &ZetaFunction, m: usize) -> Result<Vec<BigRational>> {
    if m == 0 {
        return invalid("expansion order must be at least 1");
    }
    let l = realization_point(z.mode);
    let mut total = vec![BigRational::zero(); m + 1];
    for t in &z.terms {
        let chi = t.coeff_chi.clone().ok_or_else(|| bare(t))?;
        let mut s = vec![BigRational::zero(); m + 1];
        s[0] = chi;
        for g in &t.gates {
            let w = num::pow(l.recip(), g.nu as usize);
            s = times_gate(&s, &w, g.mult as usize, |a, b| a * b);
        }
        for (acc, c) in total.iter_mut().zip(s) {
            *acc += c;
        }
    }
    Ok(total.split_off(1))
}

fn gate_sign(t: &ZetaTerm) -> i64 {
    if t.gates.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// S = −lim_{T→∞} Z(T): every gate tends to −1.
pub fn motivic_milnor_fibre(z: &ZetaFunction) -> Result<GrothendieckClass> {
    let mut s = GrothendieckClass::zero();
    for t in &z.terms {
        let c = t.coeff.as_ref().ok_or_else(|| bare(t))?;
        s = &s - &c.scale(&BigRational::from_integer(gate_sign(t).into()));
    }
    Ok(s)
}

/// Euler realization of S from the realized coefficients alone.
pub fn milnor_fibre_chi(z: &ZetaFunction) -> Result<BigRational> {
    let mut s = BigRational::zero();
    for t in &z.terms {
        let c = t.coeff_chi.clone().ok_or_else(|| bare(t))?;
        s -= c * BigRational::from_integer(gate_sign(t).into());
    }
    Ok(s)
}

/// Power series in u of num/den, `den[0]` a monomial unit.
fn series_div(num: &[GrothendieckClass], den: &[GrothendieckClass], order: usize) -> Result<Vec<GrothendieckClass>> {
    let d0 = &den[0];
    let mut it = d0.terms();
    let inv = match (it.next(), it.next()) {
        (Some((k, c)), None) => GrothendieckClass::monomial(-k, c.recip()),
        _ => return Err(Error::Numerical("series division by a non-unit constant term".into())),
    };
    let mut q: Vec<GrothendieckClass> = Vec::with_capacity(order);
    for k in 0..order {
        let mut r = num.get(k).cloned().unwrap_or_default();
        for j in 1..=k.min(den.len() - 1) {
            r = &r - &(&den[j] * &q[k - j]);
        }
        q.push(&r * &inv);
    }
    Ok(q)
}

fn series_mul(a: &[GrothendieckClass], b: &[GrothendieckClass]) -> Vec<GrothendieckClass> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| (0..=k).fold(GrothendieckClass::zero(), |acc, j| &acc + &(&a[j] * &b[k - j])))
        .collect()
}

/// S computed as the negated constant term of the expansion in u = 1/T:
/// each gate L^{−ν}T^N/(1 − L^{−ν}T^N) equals L^{−ν}/(u^N − L^{−ν}).
pub fn milnor_fibre_via_inverse_series(z: &ZetaFunction) -> Result<GrothendieckClass> {
    let mut s = GrothendieckClass::zero();
    for t in &z.terms {
        let c = t.coeff.as_ref().ok_or_else(|| bare(t))?;
        let order = t.gates.iter().map(|g| g.mult as usize).max().unwrap_or(0) + 1;
        let mut prod = vec![GrothendieckClass::zero(); order];
        prod[0] = GrothendieckClass::one();
        for g in &t.gates {
            let a = GrothendieckClass::l_pow(-(g.nu as i64));
            let mut den = vec![GrothendieckClass::zero(); g.mult as usize + 1];
            den[0] = -&a;
            den[g.mult as usize] = &den[g.mult as usize] + &GrothendieckClass::one();
            let series = series_div(&[a], &den, order)?;
            prod = series_mul(&prod, &series);
        }
        s = &s - &(c * &prod[0]);
    }
    Ok(s)
}

/// A gate of an exceptional divisor with its candidate monodromy eigenvalue
/// exp(2πi·p/q), p/q = ν/N in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PoleCandidate {
    pub nu: u64,
    #[serde(rename = "N")]
    pub mult: u64,
    pub p: u64,
    pub q: u64,
}

impl PoleCandidate {
    pub fn label(&self) -> String {
        if self.q == 1 {
            "1".into()
        } else {
            format!("exp(2*pi*i*{}/{})", self.p, self.q)
        }
    }
}

pub fn monodromy_pole_candidates(z: &ZetaFunction) -> Vec<PoleCandidate> {
    let set: BTreeSet<PoleCandidate> = z
        .terms
        .iter()
        .flat_map(|t| &t.gates)
        .filter(|g| g.exceptional)
        .map(|g| {
            let d = gcd(g.nu, g.mult);
            let (p, q) = (g.nu / d, g.mult / d);
            PoleCandidate { nu: g.nu, mult: g.mult, p, q }
        })
        .collect();
    set.into_iter().collect()
}

/// Rationals go out as JSON integers when integral, otherwise as "p/q".
pub fn rational_json(q: &BigRational) -> serde_json::Value {
    if q.is_integer() {
        if let Ok(v) = i64::try_from(q.to_integer()) {
            return v.into();
        }
    }
    q.to_string().into()
}

pub(crate) fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    rational_json(q).serialize(s)
}

#[derive(Debug, Serialize)]
struct TermJson {
    stratum: Vec<String>,
    coefficient: Option<ClassJson>,
    coefficient_chi: Option<serde_json::Value>,
    gates: Vec<Gate>,
}

impl ZetaFunction {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(TermJson {
                    stratum: t.stratum.clone(),
                    coefficient: t.coeff.as_ref().map(|c| c.to_json()).transpose()?,
                    coefficient_chi: t.coeff_chi.as_ref().map(rational_json),
                    gates: t.gates.clone(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let mode = match self.mode {
            Mode::Complex => "complex".to_string(),
            Mode::Real(s) => format!("real {}", s.label()),
        };
        Ok(serde_json::json!({ "mode": mode, "terms": terms }))
    }
}
