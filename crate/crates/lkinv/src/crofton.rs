//! Monte Carlo Cauchy-Crofton estimators.
//!
//! An affine (n−i)-flat is drawn as `π_P^{-1}(y)` with `P` uniform on G(i,n)
//! and `y` uniform in the i-ball of radius `R` around the projected window
//! centre, where `R` is the half-diagonal of the window. Every flat meeting
//! the window is reachable and each sample carries weight `α_i R^i`.

use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::geom::{crofton_constant, sample_grassmannian, unit_ball_volume, Polytope};
use crate::linalg::{self, coords, from_coords, hull_distance, solve};
use crate::mc::{run_sharded, Acc, McConfig};
use crate::tube::PlSet;

/// Barycentric coordinates closer than this to zero count as a tangential hit.
const GENERIC_TOL: f64 = 1e-9;
/// Largest tolerated share of resampled flats.
const MAX_REJECTED: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SliceStatistics {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: u64,
    /// Share of accepted flats that missed the set.
    pub zero_hit_fraction: f64,
    /// Flats discarded as non-generic and redrawn.
    pub rejected: u64,
}

impl SliceStatistics {
    fn zero(samples: u64) -> SliceStatistics {
        SliceStatistics { estimate: 0.0, stderr: 0.0, samples, zero_hit_fraction: 1.0, rejected: 0 }
    }

    pub fn within(&self, target: f64, k: f64) -> bool {
        (self.estimate - target).abs() <= k * self.stderr + 1e-12 * (1.0 + target.abs())
    }
}

/// Axis-aligned sampling window; must contain the set.
#[derive(Debug, Clone, PartialEq)]
pub struct Window {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl Window {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Window> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| !(a <= b) || !a.is_finite() || !b.is_finite()) {
            return invalid("window needs finite bounds with lo <= hi");
        }
        Ok(Window { lo, hi })
    }

    /// Bounding box of `x`, or `None` for the empty set.
    pub fn around(x: &PlSet) -> Option<Window> {
        x.bbox().map(|(lo, hi)| Window { lo, hi })
    }

    fn centre(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    fn radius(&self) -> f64 {
        0.5 * linalg::dist(&self.lo, &self.hi)
    }

    fn contains_set(&self, x: &PlSet) -> bool {
        match x.bbox() {
            None => true,
            Some((lo, hi)) => (0..lo.len()).all(|d| lo[d] >= self.lo[d] - 1e-9 && hi[d] <= self.hi[d] + 1e-9),
        }
    }
}

fn ball_point<R: Rng + ?Sized>(rng: &mut R, i: usize, r: f64) -> Vec<f64> {
    if i == 1 {
        return vec![r * (2.0 * rng.random::<f64>() - 1.0)];
    }
    let g: Vec<f64> = (0..i).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let len = linalg::norm(&g);
    let s = r * rng.random::<f64>().powf(1.0 / i as f64) / len;
    linalg::scale(&g, s)
}

fn resolve_window(x: &PlSet, window: Option<&Window>) -> Result<Option<Window>> {
    match window {
        Some(w) => {
            if w.lo.len() != x.ambient_dim() {
                return invalid("window dimension differs from the set");
            }
            if !w.contains_set(x) {
                return invalid("window does not contain the set");
            }
            Ok(Some(w.clone()))
        }
        None => Ok(Window::around(x)),
    }
}

/// Whether `y` lies in the simplex spanned by `pts` (coordinates in P).
/// `None` signals a tangential or degenerate configuration.
fn simplex_hit(pts: &[Vec<f64>], y: &[f64]) -> Option<bool> {
    let d = y.len();
    let base = &pts[0];
    let rows: Vec<Vec<f64>> = (0..d).map(|r| (1..=d).map(|c| pts[c][r] - base[r]).collect()).collect();
    let rhs = linalg::sub(y, base);
    let lam = solve(&rows, &rhs)?;
    let l0 = 1.0 - lam.iter().sum::<f64>();
    let mut inside = l0 >= 0.0;
    for &l in lam.iter().chain(std::iter::once(&l0)) {
        if l.abs() < GENERIC_TOL {
            return None;
        }
        inside &= l > 0.0;
    }
    Some(inside)
}

/// Vol_d of a set made of d-simplices meeting only along their boundaries,
/// from the expected number of hits by a random (n−d)-flat.
pub fn crofton_volume_mc(x: &PlSet, d: usize, window: Option<&Window>, mc: McConfig) -> Result<SliceStatistics> {
    let n = x.ambient_dim();
    if d == 0 || d > n {
        return invalid(format!("counting dimension {d} outside 1..={n}"));
    }
    for (k, p) in x.pieces().iter().enumerate() {
        if p.dim() != d || p.vertices().len() != d + 1 {
            return invalid(format!("piece {k} is not a {d}-simplex"));
        }
    }
    let Some(w) = resolve_window(x, window)? else {
        return Ok(SliceStatistics::zero(mc.samples));
    };
    let beta = crofton_constant(d, n)?;
    slice_mc(&w, d, n, mc, beta, |frame, y| {
        let mut hits = 0.0;
        for p in x.pieces() {
            let pts: Vec<Vec<f64>> = p.vertices().iter().map(|v| coords(v, frame)).collect();
            match simplex_hit(&pts, y) {
                Some(true) => hits += 1.0,
                Some(false) => {}
                None => return Ok(None),
            }
        }
        Ok(Some(hits))
    })
}

/// Λ_i from the mean Euler characteristic of random affine (n−i)-slices.
pub fn lk_via_slices_mc(x: &PlSet, i: usize, window: Option<&Window>, mc: McConfig) -> Result<SliceStatistics> {
    let n = x.ambient_dim();
    if i > n {
        return invalid(format!("index {i} exceeds ambient dimension {n}"));
    }
    if i == 0 {
        let chi = x.euler_characteristic()? as f64;
        let zero = if chi == 0.0 { 1.0 } else { 0.0 };
        return Ok(SliceStatistics { estimate: chi, stderr: 0.0, samples: mc.samples, zero_hit_fraction: zero, rejected: 0 });
    }
    let Some(w) = resolve_window(x, window)? else {
        return Ok(SliceStatistics::zero(mc.samples));
    };
    x.nerve()?;
    let beta = crofton_constant(i, n)?;
    slice_mc(&w, i, n, mc, beta, |frame, y| {
        let chi = x.chi_with(|q| meets_flat(q, frame, y))?;
        Ok(Some(chi as f64))
    })
}

/// Whether the flat `π_P^{-1}(y)` meets the convex polytope `q`.
fn meets_flat(q: &Polytope, frame: &[Vec<f64>], y: &[f64]) -> bool {
    let n = q.ambient_dim();
    if frame.len() == n {
        return q.contains(&from_coords(y, frame, n));
    }
    let pts: Vec<Vec<f64>> = q.vertices().iter().map(|v| coords(v, frame)).collect();
    if frame.len() == 1 {
        let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p[0]), b.max(p[0])));
        return y[0] >= lo - linalg::TOL && y[0] <= hi + linalg::TOL;
    }
    hull_distance(&pts, y) <= linalg::TOL
}

fn slice_mc(
    w: &Window,
    i: usize,
    n: usize,
    mc: McConfig,
    beta: f64,
    f: impl Fn(&[Vec<f64>], &[f64]) -> Result<Option<f64>> + Sync,
) -> Result<SliceStatistics> {
    let centre = w.centre();
    let r = w.radius().max(1e-12);
    let weight = unit_ball_volume(i) * r.powi(i as i32) / beta;
    let failed = AtomicBool::new(false);
    let budget = (MAX_REJECTED * mc.samples as f64).ceil() as u64 + 16;
    let acc = run_sharded(mc, |rng, count| {
        let mut a = Acc::default();
        while a.n < count {
            if a.rejected > budget {
                failed.store(true, Ordering::Relaxed);
                break;
            }
            let frame = sample_grassmannian(i, n, rng);
            let c = coords(&centre, &frame);
            let y = linalg::add(&c, &ball_point(rng, i, r));
            match f(&frame, &y) {
                Ok(Some(v)) => a.push(v),
                Ok(None) => a.rejected += 1,
                Err(_) => {
                    failed.store(true, Ordering::Relaxed);
                    break;
                }
            }
        }
        a
    });
    if failed.into_inner() || acc.rejected as f64 > MAX_REJECTED * acc.n.max(1) as f64 {
        return Err(Error::Numerical(format!(
            "too many non-generic flats: {} rejected against {} accepted",
            acc.rejected, acc.n
        )));
    }
    Ok(SliceStatistics {
        estimate: weight * acc.mean(),
        stderr: weight * acc.stderr(),
        samples: acc.n,
        zero_hit_fraction: if acc.n == 0 { 1.0 } else { acc.zeros as f64 / acc.n as f64 },
        rejected: acc.rejected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplex_hit_flags_tangency() {
        let pts = vec![vec![0.0], vec![1.0]];
        assert_eq!(simplex_hit(&pts, &[0.5]), Some(true));
        assert_eq!(simplex_hit(&pts, &[1.5]), Some(false));
        assert_eq!(simplex_hit(&pts, &[1.0]), None);
        let degenerate = vec![vec![0.3], vec![0.3]];
        assert_eq!(simplex_hit(&degenerate, &[0.3]), None);
    }

    #[test]
    fn empty_set_is_zero() {
        let x = PlSet::empty(2);
        let s = crofton_volume_mc(&x, 1, None, McConfig::new(100, 0)).unwrap();
        assert_eq!(s.estimate, 0.0);
        assert_eq!(s.stderr, 0.0);
    }

    #[test]
    fn slice_index_zero_is_exact_chi() {
        let a = Polytope::cuboid(&[0.0, 0.0], &[1.0, 1.0]).unwrap();
        let b = Polytope::cuboid(&[2.0, 0.0], &[3.0, 1.0]).unwrap();
        let x = PlSet::new(2, vec![a, b]).unwrap();
        let s = lk_via_slices_mc(&x, 0, None, McConfig::new(10, 0)).unwrap();
        assert_eq!(s.estimate, 2.0);
        assert_eq!(s.stderr, 0.0);
    }

    #[test]
    fn window_must_contain_set() {
        let x = PlSet::single(Polytope::unit_cube(2).unwrap());
        let w = Window::new(vec![0.0, 0.0], vec![0.5, 0.5]).unwrap();
        assert!(lk_via_slices_mc(&x, 1, Some(&w), McConfig::new(10, 0)).is_err());
    }
}
