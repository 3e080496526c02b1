//! Integer invariants of complex germs from supplied data: polar multiplicities
//! σ̃_i from Milnor numbers of plane sections, Euler obstructions and the
//! recursive E^k of a stratified germ.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// One stratum of a stratification of the germ at 0. `closure_of` lists the
/// strata whose closure contains this one; `sigma_tilde[i]` is σ̃_i of the
/// closure germ at 0, i = 0..=dim (entries past the dimension are zero).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    pub id: String,
    pub dim: usize,
    #[serde(default)]
    pub closure_of: Vec<String>,
    pub sigma_tilde: Vec<i64>,
}

/// `{ "mu": [...], "polar": [...], "strata": [...] }`. The germ is the closure
/// of the unique stratum of top dimension; the point stratum has dimension 0.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexGermData {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub mu: Vec<i64>,
    #[serde(default)]
    pub polar: Vec<i64>,
    pub strata: Vec<Stratum>,
}

/// σ̃_i = 1 + (−1)^{n−i−1} μ^{(n−i)} for a hypersurface with an isolated
/// singularity in C^n; `mu[k]` is μ^{(k)}. Returns σ̃_0..σ̃_{n−1} with σ̃_0 = 1.
pub fn sigma_tilde_from_mu(mu: &[i64], n: usize) -> Result<Vec<i64>> {
    if n == 0 || mu.len() != n + 1 {
        return invalid(format!("expected {} Milnor numbers μ^(0..={n})", n + 1));
    }
    if mu.iter().any(|&m| m < 0) {
        return invalid("Milnor numbers must be nonnegative");
    }
    let mut out = vec![1];
    for i in 1..n {
        let sign = if (n - i - 1) % 2 == 0 { 1 } else { -1 };
        out.push(1 + sign * mu[n - i]);
    }
    Ok(out)
}

/// Eu = Σ_i (−1)^i e(P^i).
pub fn euler_obstruction(polar: &[i64]) -> Result<i64> {
    if polar.iter().any(|&e| e < 0) {
        return invalid("polar multiplicities must be nonnegative");
    }
    Ok(polar.iter().enumerate().map(|(i, &e)| if i % 2 == 0 { e } else { -e }).sum())
}

struct Index<'a> {
    strata: &'a [Stratum],
    point: usize,
    top: usize,
}

impl ComplexGermData {
    fn index(&self) -> Result<Index<'_>> {
        let mut by_id = BTreeMap::new();
        for (k, s) in self.strata.iter().enumerate() {
            if by_id.insert(s.id.as_str(), k).is_some() {
                return invalid(format!("duplicate stratum id {}", s.id));
            }
            if s.sigma_tilde.len() < s.dim + 1 {
                return invalid(format!("stratum {} needs sigma_tilde entries 0..={}", s.id, s.dim));
            }
        }
        for s in &self.strata {
            for c in &s.closure_of {
                let Some(&k) = by_id.get(c.as_str()) else {
                    return invalid(format!("stratum {} refers to unknown stratum {c}", s.id));
                };
                if self.strata[k].dim <= s.dim {
                    return invalid(format!("stratum {} cannot lie in the closure of {c}: dimensions do not decrease", s.id));
                }
            }
        }
        let points: Vec<usize> = (0..self.strata.len()).filter(|&k| self.strata[k].dim == 0).collect();
        if points.len() != 1 {
            return invalid("exactly one zero-dimensional stratum (the origin) is required");
        }
        let d = self.strata.iter().map(|s| s.dim).max().unwrap();
        let tops: Vec<usize> = (0..self.strata.len()).filter(|&k| self.strata[k].dim == d).collect();
        if tops.len() != 1 {
            return invalid("the germ must be the closure of a single top-dimensional stratum");
        }
        Ok(Index { strata: &self.strata, point: points[0], top: tops[0] })
    }

    pub fn dim(&self) -> Result<usize> {
        Ok(self.strata[self.index()?.top].dim)
    }

    /// σ̃ table of the whole germ.
    pub fn sigma_tilde(&self) -> Result<Vec<i64>> {
        let ix = self.index()?;
        Ok(self.strata[ix.top].sigma_tilde.clone())
    }
}

impl Index<'_> {
    /// Strata of the closure germ of `s` with smaller dimension, point included.
    fn lower(&self, s: usize) -> Vec<usize> {
        let id = self.strata[s].id.as_str();
        let mut out: Vec<usize> = (0..self.strata.len())
            .filter(|&t| t != self.point && self.strata[t].closure_of.iter().any(|c| c == id))
            .collect();
        if s != self.point {
            out.push(self.point);
        }
        out
    }

    fn sigma(&self, s: usize, i: usize) -> i64 {
        let st = &self.strata[s];
        if i > st.dim {
            0
        } else {
            st.sigma_tilde[i]
        }
    }

    fn e(&self, s: usize, k: usize, memo: &mut BTreeMap<usize, i64>) -> i64 {
        if s == self.point {
            return 1;
        }
        if let Some(&v) = memo.get(&s) {
            return v;
        }
        let mut v = 0;
        for t in self.lower(s) {
            v += self.e(t, k, memo) * self.sigma(s, k + self.strata[t].dim + 1);
        }
        memo.insert(s, v);
        v
    }
}

/// E^k of the germ by the recursion E^k = Σ_T E^k(T̄) σ̃_{k + dim T + 1}, the
/// sum running over the lower strata T of the germ including the origin,
/// with E^k of the origin equal to 1.
pub fn kashiwara_e(data: &ComplexGermData, k: usize) -> Result<i64> {
    let ix = data.index()?;
    Ok(ix.e(ix.top, k, &mut BTreeMap::new()))
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub dim: usize,
    /// E^0..E^dim.
    pub e: Vec<i64>,
    pub euler_obstruction: Option<i64>,
    /// (−1)^i (E^{d−i−1} − E^{d−i}) for i = 0..d−1.
    pub polar_from_e: Vec<i64>,
    pub polar: Vec<i64>,
    pub sigma_tilde_from_mu: Option<Vec<i64>>,
    pub pass: bool,
}

/// Evaluate E^k for all k and compare with the supplied polar multiplicities
/// and, for hypersurface data, with σ̃ recomputed from μ.
pub fn complex_report(data: &ComplexGermData) -> Result<ComplexReport> {
    let d = data.dim()?;
    let e: Vec<i64> = (0..=d).map(|k| kashiwara_e(data, k)).collect::<Result<_>>()?;
    let polar_from_e: Vec<i64> = (0..d)
        .map(|i| {
            let diff = e[d - i - 1] - e[d - i];
            if i % 2 == 0 {
                diff
            } else {
                -diff
            }
        })
        .collect();
    let mut pass = true;
    let euler = if data.polar.is_empty() {
        None
    } else {
        if data.polar.len() != d {
            return invalid(format!("expected {d} polar multiplicities e(P^0..P^{})", d.saturating_sub(1)));
        }
        pass &= polar_from_e == data.polar;
        let eu = euler_obstruction(&data.polar)?;
        pass &= eu == e[0];
        Some(eu)
    };
    let from_mu = match (data.n, data.mu.is_empty()) {
        (Some(n), false) => {
            let s = sigma_tilde_from_mu(&data.mu, n)?;
            let top = data.sigma_tilde()?;
            pass &= (1..s.len()).all(|i| top.get(i).copied().unwrap_or(0) == s[i]);
            Some(s)
        }
        _ => None,
    };
    Ok(ComplexReport { dim: d, e, euler_obstruction: euler, polar_from_e, polar: data.polar.clone(), sigma_tilde_from_mu: from_mu, pass })
}
