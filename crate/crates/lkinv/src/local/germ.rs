//! Conic germs as weighted unions of polyhedral cones, and their local
//! Lipschitz-Killing invariants through conic intrinsic volumes.
//!
//! A germ with pieces `K_j` of multiplicity `m_j` stands for the function
//! `x ↦ max{m_j : x ∈ K_j}`. By the max-min identity it equals
//! `Σ_S (−1)^{|S|+1} (min_{j∈S} m_j) 1_{K_S}` with `K_S = ∩_{j∈S} K_j`, so every
//! additive invariant reduces to convex cones.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::geom::{ball_intrinsic_volume, cone_fraction, unit_ball_volume, Cone, Polytope, MAX_DIM};
use crate::linalg::{coords, orthonormal_basis};
use crate::mc::{Estimate, McConfig};
use crate::tube::{exterior_angle, LkVector, ANGLE_SAMPLES};

/// Largest number of pieces; the expansion has 2^k − 1 terms.
pub const MAX_PIECES: usize = 12;

/// One convex term `coeff · 1_{K_S}` of the expansion.
#[derive(Debug, Clone)]
pub struct GermTerm {
    pub members: Vec<usize>,
    pub coeff: i64,
    pub cone: Cone,
    /// `K_S ∩ [−1, 1]^n`.
    pub truncated: Polytope,
    /// Nonzero vertices of the truncation; they generate `K_S`.
    pub generators: Vec<Vec<f64>>,
    pub span_dim: usize,
}

#[derive(Debug, Clone)]
pub struct ConicGerm {
    n: usize,
    pieces: Vec<(Cone, i64)>,
    terms: Vec<GermTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normals: Option<Vec<Vec<f64>>>,
    #[serde(default = "one")]
    pub mult: i64,
}

fn one() -> i64 {
    1
}

/// `{ "dim": n, "cones": [{ "generators": [[...]], "mult": 1 }] }`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConicGermJson {
    pub dim: usize,
    pub cones: Vec<ConeJson>,
}

impl ConicGerm {
    pub fn new(n: usize, pieces: Vec<(Cone, i64)>) -> Result<ConicGerm> {
        if n == 0 || n > MAX_DIM {
            return invalid(format!("ambient dimension {n} outside 1..={MAX_DIM}"));
        }
        if pieces.len() > MAX_PIECES {
            return invalid(format!("at most {MAX_PIECES} cones per germ"));
        }
        for (k, (c, m)) in pieces.iter().enumerate() {
            if c.dim != n {
                return invalid(format!("cone {k} has dimension {} in a germ of dimension {n}", c.dim));
            }
            if *m < 1 {
                return invalid(format!("cone {k} has multiplicity {m}; multiplicities must be positive"));
            }
        }
        let mut terms = Vec::new();
        for mask in 1u32..(1u32 << pieces.len()) {
            let members: Vec<usize> = (0..pieces.len()).filter(|j| mask & (1 << j) != 0).collect();
            let sign = if members.len() % 2 == 1 { 1 } else { -1 };
            let coeff = sign * members.iter().map(|&j| pieces[j].1).min().unwrap();
            let normals: Vec<Vec<f64>> = members.iter().flat_map(|&j| pieces[j].0.halfspace_normals()).collect();
            let cone = Cone::from_normals(n, normals)?;
            let Some(truncated) = cone.truncate()? else {
                return invalid("cone truncation is empty; the apex must be the origin");
            };
            let generators: Vec<Vec<f64>> =
                truncated.vertices().iter().filter(|v| crate::linalg::norm(v) > 1e-9).cloned().collect();
            let span_dim = truncated.dim();
            terms.push(GermTerm { members, coeff, cone, truncated, generators, span_dim });
        }
        Ok(ConicGerm { n, pieces, terms })
    }

    /// The plain union of `cones`.
    pub fn union(n: usize, cones: Vec<Cone>) -> Result<ConicGerm> {
        ConicGerm::new(n, cones.into_iter().map(|c| (c, 1)).collect())
    }

    pub fn from_generators(n: usize, generators: Vec<Vec<f64>>) -> Result<ConicGerm> {
        ConicGerm::union(n, vec![Cone::from_generators(n, generators)?])
    }

    pub fn from_json(j: &ConicGermJson) -> Result<ConicGerm> {
        let mut pieces = Vec::new();
        for (k, c) in j.cones.iter().enumerate() {
            let cone = match (&c.generators, &c.normals) {
                (Some(g), None) => Cone::from_generators(j.dim, g.clone())?,
                (None, Some(a)) => Cone::from_normals(j.dim, a.clone())?,
                _ => return invalid(format!("cone {k} needs exactly one of generators or normals")),
            };
            pieces.push((cone, c.mult));
        }
        ConicGerm::new(j.dim, pieces)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[(Cone, i64)] {
        &self.pieces
    }

    pub fn terms(&self) -> &[GermTerm] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Largest dimension of a piece.
    pub fn dim(&self) -> usize {
        self.terms.iter().filter(|t| t.members.len() == 1).map(|t| t.span_dim).max().unwrap_or(0)
    }

    /// Value of the germ's function at the origin.
    pub fn origin_value(&self) -> i64 {
        self.terms.iter().map(|t| t.coeff).sum()
    }
}

fn angle_config(mc: McConfig, salt: usize) -> McConfig {
    McConfig { seed: mc.seed ^ (0xa076_1d64_78bd_642fu64.wrapping_mul(salt as u64 + 1)), ..mc }
}

/// Conic intrinsic volumes ν_0..ν_n of a closed convex cone, from the faces of
/// its truncation that contain the apex: ν_k = Σ γ(G, Q) · (solid angle of G).
pub fn conic_intrinsic_volumes(q: &Polytope, mc: McConfig) -> Result<Vec<Estimate>> {
    let n = q.ambient_dim();
    let mut val = vec![0.0; n + 1];
    let mut var = vec![0.0; n + 1];
    for (idx, f) in q.faces().iter().enumerate() {
        let through_apex = f.facets.iter().all(|&fi| q.facets()[fi].offset.abs() <= 1e-9);
        if !through_apex {
            continue;
        }
        let g = exterior_angle(q, idx, angle_config(mc, idx))?;
        let pts: Vec<Vec<f64>> = f.vertices.iter().map(|&i| q.vertices()[i].clone()).collect();
        let basis = orthonormal_basis(&pts, 1e-9);
        if basis.len() != f.dim {
            return invalid("face through the apex does not span a linear subspace of its dimension");
        }
        let local: Vec<Vec<f64>> = pts.iter().map(|p| coords(p, &basis)).collect();
        let s = cone_fraction(&local, f.dim, angle_config(mc, idx + q.faces().len()));
        val[f.dim] += g.value * s.value;
        var[f.dim] += (g.stderr * s.value).powi(2) + (g.value * s.stderr).powi(2);
    }
    Ok(val.into_iter().zip(var).map(|(value, v)| Estimate { value, stderr: v.sqrt() }).collect())
}

/// Σ_S c_S ν_k(K_S) for every k.
pub fn germ_intrinsic_volumes(germ: &ConicGerm, mc: McConfig) -> Result<Vec<Estimate>> {
    let n = germ.n;
    let mut val = vec![0.0; n + 1];
    let mut var = vec![0.0; n + 1];
    for (t, term) in germ.terms.iter().enumerate() {
        let nu = conic_intrinsic_volumes(&term.truncated, angle_config(mc, 1000 + t))?;
        let c = term.coeff as f64;
        for k in 0..=n {
            val[k] += c * nu[k].value;
            var[k] += (c * nu[k].stderr).powi(2);
        }
    }
    Ok(val.into_iter().zip(var).map(|(value, v)| Estimate { value, stderr: v.sqrt() }).collect())
}

/// `C(k, j) α_k / (α_{k−j} α_j)`: Λ_j of the unit k-ball over α_j.
pub fn ball_weight(k: usize, j: usize) -> f64 {
    ball_intrinsic_volume(k, j) / unit_ball_volume(j)
}

/// Local Lipschitz-Killing invariants Λ_j^loc = Λ_j(X ∩ B̄(0,1)) / α_j. Exact
/// when every normal and face span has dimension at most 3.
pub fn local_lk(germ: &ConicGerm) -> Result<LkVector> {
    local_lk_with(germ, McConfig::new(ANGLE_SAMPLES, 0))
}

pub fn local_lk_with(germ: &ConicGerm, mc: McConfig) -> Result<LkVector> {
    let n = germ.n;
    let nu = germ_intrinsic_volumes(germ, mc)?;
    let mut out = LkVector::zeros(n, "exact");
    for j in 0..=n {
        let mut var = 0.0;
        for (k, e) in nu.iter().enumerate().skip(j) {
            let w = ball_weight(k, j);
            out.values[j] += w * e.value;
            var += (w * e.stderr).powi(2);
        }
        out.stderr[j] = var.sqrt();
        if var > 0.0 {
            out.method = "exact+mc-angle".to_string();
        }
    }
    Ok(out)
}

/// Θ_d = Vol_d(X ∩ B̄(0,1)) / α_d for a germ whose pieces all have dimension d.
pub fn density(germ: &ConicGerm) -> Result<Estimate> {
    density_with(germ, McConfig::new(ANGLE_SAMPLES, 0))
}

pub fn density_with(germ: &ConicGerm, mc: McConfig) -> Result<Estimate> {
    let singles: Vec<&GermTerm> = germ.terms.iter().filter(|t| t.members.len() == 1).collect();
    let d = germ.dim();
    if singles.iter().any(|t| t.span_dim != d) {
        return invalid("density needs a germ of pure dimension");
    }
    let mut value = 0.0;
    let mut var = 0.0;
    for (t, term) in germ.terms.iter().enumerate() {
        if term.span_dim != d {
            continue;
        }
        let f = term_fraction(term, d, angle_config(mc, t));
        value += term.coeff as f64 * f.value;
        var += (term.coeff as f64 * f.stderr).powi(2);
    }
    Ok(Estimate { value, stderr: var.sqrt() })
}

/// Solid-angle fraction of a term's cone inside its own d-dimensional span.
fn term_fraction(term: &GermTerm, d: usize, mc: McConfig) -> Estimate {
    if d == 0 {
        return Estimate::exact(1.0);
    }
    let basis = orthonormal_basis(&term.generators, 1e-9);
    let local: Vec<Vec<f64>> = term.generators.iter().map(|g| coords(g, &basis)).collect();
    cone_fraction(&local, d, mc)
}
