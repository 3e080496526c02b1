//! Valuations on spherical polytopes, read off the cone they generate.

use serde::Serialize;

use super::germ::{germ_intrinsic_volumes, local_lk, ConicGerm};
use super::polar::polar_invariant;
use crate::error::Result;
use crate::geom::{unit_ball_volume, Cone};
use crate::mc::{Estimate, McConfig};

#[derive(Debug, Clone, Serialize)]
pub struct SphericalValuations {
    /// Λ̂_i = Λ_i^loc of the cone, i = 0..n.
    pub lambda: Vec<f64>,
    /// Ξ_i = Σ_{i-faces F} Vol_i(F) γ(F̂, K̂), i = 0..n−1.
    pub xi: Vec<Estimate>,
    /// σ̂_i = σ_i of the cone, i = 0..n.
    pub sigma: Vec<Estimate>,
}

/// A spherical i-face F spans an (i+1)-face F̂ of the cone and its spherical
/// volume is the area (i+1)·α_{i+1} of S^i times the solid-angle share of F̂,
/// so Ξ_i = (i+1) α_{i+1} ν_{i+1}(K̂).
pub fn spherical_valuations(k: &Cone, mc: McConfig) -> Result<SphericalValuations> {
    let germ = ConicGerm::union(k.dim, vec![k.clone()])?;
    let n = k.dim;
    let lambda = local_lk(&germ)?.values;
    let nu = germ_intrinsic_volumes(&germ, mc)?;
    let xi = (0..n)
        .map(|i| {
            let area = (i + 1) as f64 * unit_ball_volume(i + 1);
            Estimate { value: area * nu[i + 1].value, stderr: area * nu[i + 1].stderr }
        })
        .collect();
    let sigma = (0..=n)
        .map(|i| polar_invariant(&germ, i, McConfig { seed: mc.seed.wrapping_add(i as u64), ..mc }))
        .collect::<Result<Vec<_>>>()?;
    Ok(SphericalValuations { lambda, xi, sigma })
}
