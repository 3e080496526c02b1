//! The upper-triangular matrix relating local Lipschitz-Killing invariants to
//! polar invariants: Λ_i^loc = Σ_{j ≥ i} m_i^j σ_j for i ≥ 1.

use serde::Serialize;

use super::germ::{ball_weight, local_lk, ConicGerm};
use super::polar::polar_invariant;
use crate::error::{invalid, Result};
use crate::mc::McConfig;

/// `entries[i-1][j-1] = m_i^j`, for 1 ≤ i, j ≤ n.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MlccMatrix {
    pub n: usize,
    pub entries: Vec<Vec<f64>>,
}

impl MlccMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i - 1][j - 1]
    }
}

/// m_i^j = C(j,i) α_j/(α_{j−i} α_i) − C(j−1,i) α_{j−1}/(α_{j−1−i} α_i), reading
/// the stacked binomial as "j choose i".
pub fn mlcc_entry(i: usize, j: usize) -> f64 {
    if j < i || i == 0 {
        return 0.0;
    }
    ball_weight(j, i) - if j > i { ball_weight(j - 1, i) } else { 0.0 }
}

pub fn mlcc_matrix(n: usize) -> Result<MlccMatrix> {
    if n == 0 {
        return invalid("matrix size must be at least 1");
    }
    let entries = (1..=n).map(|i| (1..=n).map(|j| mlcc_entry(i, j)).collect()).collect();
    Ok(MlccMatrix { n, entries })
}

#[derive(Debug, Clone, Serialize)]
pub struct MlccRow {
    pub i: usize,
    pub lambda: f64,
    pub combination: f64,
    pub residual: f64,
    pub stderr: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MlccReport {
    pub rows: Vec<MlccRow>,
    pub sigma: Vec<f64>,
    pub sigma_stderr: Vec<f64>,
    pub pass: bool,
}

/// Compare Λ^loc (exact path) with M·σ (σ sampled over `mc.samples` planes).
pub fn mlcc_verify(germ: &ConicGerm, tolerance: f64, mc: McConfig) -> Result<MlccReport> {
    let n = germ.ambient_dim();
    let lam = local_lk(germ)?;
    let m = mlcc_matrix(n)?;
    let mut sigma = vec![0.0; n + 1];
    let mut sig_se = vec![0.0; n + 1];
    for j in 0..=n {
        let e = polar_invariant(germ, j, McConfig { seed: mc.seed.wrapping_add(j as u64), ..mc })?;
        sigma[j] = e.value;
        sig_se[j] = e.stderr;
    }
    let mut rows = Vec::new();
    for i in 1..=n {
        let combination: f64 = (i..=n).map(|j| m.get(i, j) * sigma[j]).sum();
        let var: f64 = (i..=n).map(|j| (m.get(i, j) * sig_se[j]).powi(2)).sum::<f64>() + lam.stderr[i].powi(2);
        let stderr = var.sqrt();
        let residual = (lam.values[i] - combination).abs();
        rows.push(MlccRow { i, lambda: lam.values[i], combination, residual, stderr, pass: residual < tolerance.max(3.0 * stderr) });
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(MlccReport { rows, sigma, sigma_stderr: sig_se, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn low_order_entries() {
        assert!((mlcc_entry(1, 2) - (PI / 2.0 - 1.0)).abs() < 1e-14);
        assert!((mlcc_entry(1, 3) - (2.0 - PI / 2.0)).abs() < 1e-14);
        assert!((mlcc_entry(2, 3) - 1.0).abs() < 1e-14);
        let m = mlcc_matrix(4).unwrap();
        for i in 1..=4 {
            assert_eq!(m.get(i, i), 1.0);
            for j in 1..i {
                assert_eq!(m.get(i, j), 0.0);
            }
        }
    }
}
