//! Polar invariants: push the germ's function forward along an orthogonal
//! projection onto an i-plane P and take the density at 0 of the result.
//!
//! Fibres are evaluated in the conic limit ‖y‖ → 0: for a convex cone K the
//! fibre `π_P^{-1}(y) ∩ K ∩ B̄(0,1)` is nonempty for small y exactly when
//! `y ∈ π_P(K)`, so the pushforward is `Σ_S c_S 1_{π_P(K_S)}` near 0.

use std::f64::consts::PI;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use super::germ::{germ_intrinsic_volumes, ConicGerm, GermTerm};
use crate::error::{invalid, Error, Result};
use crate::geom::{cone_fraction, sample_grassmannian, Cone};
use crate::linalg::{coords, norm};
use crate::mc::{run_sharded, Acc, Estimate, McConfig};
use crate::tube::ANGLE_SAMPLES;

/// Angular separation below which two region boundaries are non-generic.
pub const ANGLE_TOL: f64 = 1e-3;

/// A sector `[from, to)` of directions in P (radians, counter-clockwise) on
/// which the pushforward is constant. For a line, the two rays are the
/// degenerate sectors at angles 0 and π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sector {
    pub from: f64,
    pub to: f64,
    pub value: i64,
}

/// Germ at 0 of a constructible function on P, constant on conic sectors.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstructibleFn {
    pub dim: usize,
    pub origin_value: i64,
    pub sectors: Vec<Sector>,
}

impl ConstructibleFn {
    /// θ: the density at 0, Σ value · (angular share of the sector).
    pub fn theta(&self) -> f64 {
        match self.dim {
            0 => self.origin_value as f64,
            1 => self.sectors.iter().map(|s| 0.5 * s.value as f64).sum(),
            _ => self.sectors.iter().map(|s| s.value as f64 * (s.to - s.from) / (2.0 * PI)).sum(),
        }
    }
}

fn projected(term: &GermTerm, frame: &[Vec<f64>]) -> Vec<Vec<f64>> {
    term.generators.iter().map(|g| coords(g, frame)).collect()
}

fn value_at(germ: &ConicGerm, proj: &[Cone], u: &[f64]) -> i64 {
    germ.terms().iter().zip(proj).filter(|(_, c)| c.contains(u)).map(|(t, _)| t.coeff).sum()
}

/// Pushforward of the germ onto the plane spanned by `frame` (1 or 2 vectors).
/// Fails with a numerical error when P is not generic for the germ.
pub fn pushforward(germ: &ConicGerm, frame: &[Vec<f64>]) -> Result<ConstructibleFn> {
    let i = frame.len();
    if frame.iter().any(|v| v.len() != germ.ambient_dim()) {
        return invalid("frame dimension differs from the germ");
    }
    let origin_value = germ.origin_value();
    if i == 0 {
        return Ok(ConstructibleFn { dim: 0, origin_value, sectors: Vec::new() });
    }
    if i > 2 {
        return invalid("pushforward supports 1- and 2-dimensional targets");
    }
    let mut proj = Vec::new();
    let mut rays: Vec<(f64, f64)> = Vec::new();
    for t in germ.terms() {
        let p = projected(t, frame);
        for (g, q) in t.generators.iter().zip(&p) {
            let rel = norm(q) / norm(g);
            if i == 1 && rel < ANGLE_TOL {
                return Err(non_generic("a generator is nearly orthogonal to the line"));
            }
            if i == 2 && rel > 1e-12 {
                rays.push((q[1].atan2(q[0]).rem_euclid(2.0 * PI), rel));
            }
        }
        proj.push(Cone::from_generators(i, p)?);
    }
    if i == 1 {
        let plus = value_at(germ, &proj, &[1.0]);
        let minus = value_at(germ, &proj, &[-1.0]);
        let sectors = vec![Sector { from: 0.0, to: 0.0, value: plus }, Sector { from: PI, to: PI, value: minus }];
        return Ok(ConstructibleFn { dim: 1, origin_value, sectors });
    }

    // Region boundaries can only lie on projected extreme rays.
    rays.sort_by(|a, b| a.0.total_cmp(&b.0));
    rays.dedup_by(|b, a| {
        if (b.0 - a.0).abs() <= 1e-12 {
            a.1 = a.1.min(b.1);
            true
        } else {
            false
        }
    });
    if rays.is_empty() {
        let v = value_at(germ, &proj, &[1.0, 0.0]);
        return Ok(ConstructibleFn { dim: 2, origin_value, sectors: vec![Sector { from: 0.0, to: 2.0 * PI, value: v }] });
    }
    let m = rays.len();
    let arc_value = |k: usize| {
        let a = rays[k].0;
        let b = if k + 1 < m { rays[k + 1].0 } else { rays[0].0 + 2.0 * PI };
        let t = 0.5 * (a + b);
        value_at(germ, &proj, &[t.cos(), t.sin()])
    };
    let values: Vec<i64> = (0..m).map(arc_value).collect();
    // Boundary k separates arc k-1 from arc k.
    let cuts: Vec<usize> = (0..m).filter(|&k| values[(k + m - 1) % m] != values[k]).collect();
    for &k in &cuts {
        if rays[k].1 < ANGLE_TOL {
            return Err(non_generic("a region boundary comes from a generator nearly orthogonal to P"));
        }
    }
    for w in 0..cuts.len() {
        if cuts.len() < 2 {
            break;
        }
        let a = rays[cuts[w]].0;
        let b = rays[cuts[(w + 1) % cuts.len()]].0;
        let gap = (b - a).rem_euclid(2.0 * PI);
        if gap < ANGLE_TOL {
            return Err(non_generic("two region boundaries are closer than the angular tolerance"));
        }
    }
    if cuts.is_empty() {
        return Ok(ConstructibleFn {
            dim: 2,
            origin_value,
            sectors: vec![Sector { from: 0.0, to: 2.0 * PI, value: values[0] }],
        });
    }
    let mut sectors = Vec::new();
    for w in 0..cuts.len() {
        let k = cuts[w];
        let from = rays[k].0;
        let next = rays[cuts[(w + 1) % cuts.len()]].0;
        let to = if next > from { next } else { next + 2.0 * PI };
        sectors.push(Sector { from, to, value: values[k] });
    }
    Ok(ConstructibleFn { dim: 2, origin_value, sectors })
}

fn non_generic(msg: &str) -> Error {
    Error::Numerical(format!("non-generic plane: {msg}"))
}

/// θ_i(P) = Σ_S c_S · (solid-angle share of π_P(K_S) in P).
pub fn theta(germ: &ConicGerm, frame: &[Vec<f64>], mc: McConfig) -> Estimate {
    let i = frame.len();
    let mut value = 0.0;
    let mut var = 0.0;
    for t in germ.terms() {
        let f = cone_fraction(&projected(t, frame), i, mc);
        value += t.coeff as f64 * f.value;
        var += (t.coeff as f64 * f.stderr).powi(2);
    }
    Estimate { value, stderr: var.sqrt() }
}

/// σ_i: the average of θ_i over P ∈ G(i, n), sampled `mc.samples` times.
/// Exact for i = 0 and i = n.
pub fn polar_invariant(germ: &ConicGerm, i: usize, mc: McConfig) -> Result<Estimate> {
    let n = germ.ambient_dim();
    if i > n {
        return invalid(format!("index {i} exceeds ambient dimension {n}"));
    }
    if germ.is_empty() {
        return Ok(Estimate::exact(0.0));
    }
    if i == 0 {
        return Ok(Estimate::exact(germ.origin_value() as f64));
    }
    let inner = McConfig::new((ANGLE_SAMPLES / 50).max(1), mc.seed ^ 0x51ed_270b).with_workers(1);
    if i == n {
        let frame: Vec<Vec<f64>> = (0..n).map(|k| crate::linalg::unit(k, n)).collect();
        return Ok(theta(germ, &frame, McConfig::new(ANGLE_SAMPLES, mc.seed)));
    }
    let failed = AtomicBool::new(false);
    let acc = run_sharded(mc, |rng, count| {
        let mut a = Acc::default();
        for _ in 0..count {
            let frame = sample_grassmannian(i, n, rng);
            let t = theta(germ, &frame, inner);
            if !t.value.is_finite() {
                failed.store(true, Ordering::Relaxed);
            }
            a.push(t.value);
        }
        a
    });
    if failed.into_inner() {
        return Err(Error::Numerical("non-finite projected density".into()));
    }
    Ok(Estimate { value: acc.mean(), stderr: acc.stderr() })
}

/// σ_0..σ_n without plane sampling: the share of π_P(K) averaged over P
/// equals the tail Σ_{k≥i} ν_k(K) of the conic intrinsic volumes.
pub fn polar_invariants_exact(germ: &ConicGerm) -> Result<Vec<Estimate>> {
    let nu = germ_intrinsic_volumes(germ, McConfig::new(ANGLE_SAMPLES, 0))?;
    let n = germ.ambient_dim();
    let mut out = vec![Estimate::exact(0.0); n + 1];
    let (mut v, mut var) = (0.0, 0.0);
    for i in (0..=n).rev() {
        v += nu[i].value;
        var += nu[i].stderr.powi(2);
        out[i] = Estimate { value: v, stderr: var.sqrt() };
    }
    Ok(out)
}
