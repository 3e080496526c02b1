//! Relations between the real motivic Milnor fibres S^? and the signed
//! fibres of the germ, checked against oracle Euler characteristics.

use num::{BigRational, Zero};
use serde::Serialize;

use super::oracle::{Question, RealOracleValues};
use super::resolution::{Mode, ResolutionData, Sign};
use super::zeta::{euler_realization, ser_rational, motivic_milnor_fibre, zeta_from_resolution};
use crate::error::{invalid, Result};

/// Σ_{I∩𝒦≠∅} b^{|I|−1} χ_c(Ẽ_I^{0,?}) for b = 2 and b = −2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSums {
    #[serde(serialize_with = "ser_rational")]
    pub two: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub minus_two: BigRational,
}

pub fn power_sums(res: &ResolutionData, sign: Sign) -> Result<PowerSums> {
    let mut two = BigRational::zero();
    let mut minus_two = BigRational::zero();
    for s in &res.strata {
        if !s.members.iter().any(|&k| res.is_exceptional(k)) {
            continue;
        }
        let Some(c) = s.class_signed.get(&sign) else {
            return invalid(format!("stratum {:?} has no class for sign {}", s.members, sign.label()));
        };
        let chi = c.chi_real();
        let e = s.members.len() as i32 - 1;
        let p = BigRational::from_integer(2.into());
        two += &chi * num::pow(p.clone(), e as usize);
        minus_two += &chi * num::pow(-p, e as usize);
    }
    Ok(PowerSums { two, minus_two })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealSignRow {
    pub sign: Sign,
    pub closed: i64,
    pub open: i64,
    pub link: Option<i64>,
    /// χ(X̄^?) = (−1)^{n+1} χ(X^?).
    pub boundary_ok: bool,
    /// χ(G^?) = χ(X̄^{±}) with > ↦ +1, < ↦ −1.
    pub link_ok: Option<bool>,
    /// Real realization of S^?.
    pub chi_s: Option<serde_json::Value>,
    pub power_sums: Option<PowerSums>,
    /// χ(S^?) = χ(X̄^?).
    pub s_closed_ok: Option<bool>,
    /// χ(S^?) = −χ(G^?).
    pub s_link_ok: Option<bool>,
    /// χ(S^?) = Σ(−2)^{|I|−1} χ_c(Ẽ_I^{0,?}).
    pub minus_two_ok: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealReport {
    pub n: usize,
    pub rows: Vec<RealSignRow>,
    /// All pure oracle relations hold.
    pub oracle_pass: bool,
    /// χ(S^?) matches the oracle for every sign.
    pub motivic_pass: Option<bool>,
    pub minus_two_pass: Option<bool>,
}

pub fn real_chi_relations(res: Option<&ResolutionData>, oracle: &RealOracleValues) -> Result<RealReport> {
    let n = oracle.n;
    if let Some(r) = res {
        if r.n != n {
            return invalid(format!("resolution lives in dimension {} but the oracle in {n}", r.n));
        }
    }
    let bord = if n % 2 == 1 { 1 } else { -1 };
    let mut rows = Vec::new();
    for sign in Sign::ALL {
        let get = |q| oracle.get(q).ok_or_else(|| crate::Error::Validation(format!("oracle value {q:?} missing")));
        let closed = get(Question::Closed(sign))?;
        let open = get(Question::Open(sign))?;
        let link = if sign.is_fibre() { None } else { Some(get(Question::Link(sign))?) };
        let link_ok = match link {
            Some(g) => Some(g == get(Question::Closed(sign.fibre()))?),
            None => None,
        };
        let mut row = RealSignRow {
            sign,
            closed,
            open,
            link,
            boundary_ok: closed == bord * open,
            link_ok,
            chi_s: None,
            power_sums: None,
            s_closed_ok: None,
            s_link_ok: None,
            minus_two_ok: None,
        };
        if let Some(r) = res {
            let z = zeta_from_resolution(r, Mode::Real(sign))?;
            let chi = euler_realization(&motivic_milnor_fibre(&z)?, Mode::Real(sign));
            let sums = power_sums(r, sign)?;
            let int = |v: i64| BigRational::from_integer(v.into());
            row.s_closed_ok = Some(chi == int(closed));
            row.s_link_ok = link.map(|g| chi == -int(g));
            row.minus_two_ok = Some(chi == sums.minus_two);
            row.chi_s = Some(super::zeta::rational_json(&chi));
            row.power_sums = Some(sums);
        }
        rows.push(row);
    }
    let oracle_pass = rows.iter().all(|r| r.boundary_ok && r.link_ok.unwrap_or(true));
    let (motivic_pass, minus_two_pass) = if res.is_some() {
        (
            Some(rows.iter().all(|r| r.s_closed_ok == Some(true) && r.s_link_ok.unwrap_or(true))),
            Some(rows.iter().all(|r| r.minus_two_ok == Some(true))),
        )
    } else {
        (None, None)
    };
    Ok(RealReport { n, rows, oracle_pass, motivic_pass, minus_two_pass })
}
