//! Lefschetz numbers of monodromy iterates and their agreement with the
//! Euler realization of the zeta coefficients.

use std::collections::BTreeMap;

use num::integer::lcm;
use num::BigRational;
use serde::Serialize;

use super::resolution::{Mode, ResolutionData};
use super::zeta::{expand_series_chi, zeta_from_resolution};
use crate::error::{invalid, Result};

/// Λ(M^m) = Σ_{i exceptional, N_i | m} N_i · χ(E_i^0); every i counts at m = 0.
pub fn acampo_lefschetz(res: &ResolutionData, m: u64) -> Result<i64> {
    let mut total = 0;
    for (k, c) in res.components.iter().enumerate() {
        if !c.exceptional || (m != 0 && m % c.mult != 0) {
            continue;
        }
        let Some(chi) = res.singleton(k).and_then(|s| s.chi) else {
            return invalid(format!("exceptional component {} has no singleton Euler characteristic", c.id));
        };
        total += c.mult as i64 * chi;
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonodromyProfile {
    pub lefschetz: BTreeMap<u64, i64>,
    pub period: u64,
}

impl MonodromyProfile {
    pub fn new(lefschetz: BTreeMap<u64, i64>, period: u64) -> Result<MonodromyProfile> {
        if period == 0 {
            return invalid("period must be positive");
        }
        if lefschetz.contains_key(&0) {
            return invalid("profile entries start at m = 1");
        }
        for (&m, &v) in &lefschetz {
            if let Some(&w) = lefschetz.get(&(m + period)) {
                if w != v {
                    return invalid(format!("Λ(M^{}) = {w} differs from Λ(M^{m}) = {v} at period {period}", m + period));
                }
            }
        }
        Ok(MonodromyProfile { lefschetz, period })
    }

    /// Λ(M^1..M^upto) from A'Campo's formula with period lcm of the exceptional N_i.
    pub fn from_resolution(res: &ResolutionData, upto: u64) -> Result<MonodromyProfile> {
        let period = res.components.iter().filter(|c| c.exceptional).map(|c| c.mult).fold(1, lcm);
        let lefschetz = (1..=upto.max(period)).map(|m| Ok((m, acampo_lefschetz(res, m)?))).collect::<Result<_>>()?;
        MonodromyProfile::new(lefschetz, period)
    }
}

/// χ(Z)(T) = Σ_{m=1}^{N} Λ(M^m) T^m / (1 − T^N).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiZetaClosedForm {
    /// Coefficients of T^1..T^N in the numerator.
    pub numerator: Vec<i64>,
    pub period: u64,
}

impl ChiZetaClosedForm {
    pub fn is_zero(&self) -> bool {
        self.numerator.iter().all(|&v| v == 0)
    }

    /// Coefficients of T^1..T^M of the expansion.
    pub fn expand(&self, m: usize) -> Vec<i64> {
        (0..m).map(|k| self.numerator[k % self.numerator.len()]).collect()
    }
}

pub fn chi_zeta_closed_form(profile: &MonodromyProfile) -> Result<ChiZetaClosedForm> {
    let p = MonodromyProfile::new(profile.lefschetz.clone(), profile.period)?;
    let numerator = (1..=p.period)
        .map(|m| {
            p.lefschetz.get(&m).copied().ok_or_else(|| crate::Error::Validation(format!("Λ(M^{m}) missing from the profile")))
        })
        .collect::<Result<_>>()?;
    Ok(ChiZetaClosedForm { numerator, period: p.period })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyRow {
    pub m: u64,
    pub zeta_chi: i64,
    pub lefschetz: i64,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub rows: Vec<ConsistencyRow>,
    /// Strata whose class disagrees with χ(Ẽ_I^0) = m_I · χ(E_I^0).
    pub cover_mismatches: Vec<Vec<String>>,
    pub pass: bool,
}

/// χ of the T^m coefficient of the complex zeta function against Λ(M^m).
pub fn consistency_check_14(res: &ResolutionData, m: usize) -> Result<ConsistencyReport> {
    let z = zeta_from_resolution(res, Mode::Complex)?;
    let chi = expand_series_chi(&z, m)?;
    let mut rows = Vec::new();
    for (k, c) in chi.iter().enumerate() {
        let m = k as u64 + 1;
        let lefschetz = acampo_lefschetz(res, m)?;
        let zeta_chi = if c.is_integer() {
            i64::try_from(c.to_integer()).unwrap_or(i64::MAX)
        } else {
            return Err(crate::Error::Numerical(format!("non-integral χ {c} at T^{m}")));
        };
        rows.push(ConsistencyRow { m, zeta_chi, lefschetz, ok: *c == BigRational::from_integer(lefschetz.into()) });
    }
    let cover_mismatches = res.cover_mismatches();
    let pass = rows.iter().all(|r| r.ok) && cover_mismatches.is_empty();
    Ok(ConsistencyReport { rows, cover_mismatches, pass })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        let zero = MonodromyProfile::new((1..=4).map(|m| (m, 0)).collect(), 2).unwrap();
        assert!(chi_zeta_closed_form(&zero).unwrap().is_zero());
        let c = MonodromyProfile::new((1..=3).map(|m| (m, 5)).collect(), 1).unwrap();
        let f = chi_zeta_closed_form(&c).unwrap();
        assert_eq!(f.numerator, vec![5]);
        assert_eq!(f.expand(3), vec![5, 5, 5]);
    }

    #[test]
    fn non_periodic_profile_rejected() {
        let l: BTreeMap<u64, i64> = [(1, 1), (2, 0), (3, 2)].into_iter().collect();
        assert!(MonodromyProfile::new(l, 2).is_err());
    }

    #[test]
    fn single_stratum_toy_is_consistent() {
        let res = ResolutionData::from_str(
            r#"{"n": 1, "components": [{"id": "E", "N": 3, "nu": 1, "exceptional": true}],
                "strata": [{"I": ["E"], "chi": 1, "class": [[0, 3, 1]]}]}"#,
        )
        .unwrap();
        let r = consistency_check_14(&res, 7).unwrap();
        assert!(r.pass);
        assert_eq!(r.rows.iter().map(|r| r.lefschetz).collect::<Vec<_>>(), vec![0, 0, 3, 0, 0, 3, 0]);
    }
}
