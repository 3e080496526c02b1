//! Exterior angles, exact Lipschitz-Killing coefficients of polytopes and of
//! finite unions of them, and Monte Carlo tube volumes.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::geom::{cone_fraction, unit_ball_volume, Polytope};
use crate::linalg::{coords, orthonormal_basis};
use crate::mc::{run_sharded, Acc, Estimate, McConfig};

/// Default direction budget for exterior angles without a closed form.
pub const ANGLE_SAMPLES: u64 = 100_000;

/// (Λ_0, ..., Λ_n) with per-entry standard errors (zero on exact paths).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LkVector {
    pub values: Vec<f64>,
    pub stderr: Vec<f64>,
    pub method: String,
}

impl LkVector {
    pub fn zeros(n: usize, method: &str) -> LkVector {
        LkVector { values: vec![0.0; n + 1], stderr: vec![0.0; n + 1], method: method.to_string() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.values.len() - 1
    }

    fn add_scaled(&mut self, other: &LkVector, s: f64) {
        for i in 0..self.values.len() {
            self.values[i] += s * other.values[i];
            self.stderr[i] = (self.stderr[i].powi(2) + (s * other.stderr[i]).powi(2)).sqrt();
        }
    }

    /// Σ_i α_i Λ_{n-i} ε^i.
    pub fn steiner_polynomial(&self, eps: f64) -> f64 {
        let n = self.ambient_dim();
        (0..=n).map(|i| unit_ball_volume(i) * self.values[n - i] * eps.powi(i as i32)).sum()
    }
}

fn angle_seed(face: usize) -> u64 {
    0x9e37_79b9_7f4a_7c15u64.wrapping_mul(face as u64 + 1)
}

/// Exterior angle γ(F, P): the probability measure of the normal cone's
/// directions in its own linear span. γ(P, P) = 1.
pub fn exterior_angle(p: &Polytope, face: usize, mc: McConfig) -> Result<Estimate> {
    let Some(f) = p.faces().get(face) else {
        return invalid(format!("face {face} is not in the lattice"));
    };
    if face == p.top() {
        return Ok(Estimate::exact(1.0));
    }
    let normals: Vec<Vec<f64>> = f.facets.iter().map(|&i| p.facets()[i].normal.clone()).collect();
    let span = orthonormal_basis(&normals, 1e-9);
    if span.is_empty() || span.len() + f.dim != p.dim() {
        return Err(Error::Numerical(format!(
            "normal span of face {face} has dimension {} but the face has codimension {}",
            span.len(),
            p.dim() - f.dim
        )));
    }
    let local: Vec<Vec<f64>> = normals.iter().map(|v| coords(v, &span)).collect();
    Ok(cone_fraction(&local, span.len(), mc))
}

/// Λ_i(P) = Σ_{F ∈ F_i(P)} Vol_i(F) γ(F, P), using `ANGLE_SAMPLES` directions
/// where no closed form applies.
pub fn steiner_coefficients(p: &Polytope) -> Result<LkVector> {
    steiner_coefficients_with(p, McConfig::new(ANGLE_SAMPLES, 0))
}

pub fn steiner_coefficients_with(p: &Polytope, mc: McConfig) -> Result<LkVector> {
    let n = p.ambient_dim();
    let mut out = LkVector::zeros(n, "exact");
    let mut var = vec![0.0; n + 1];
    for (idx, f) in p.faces().iter().enumerate() {
        let g = exterior_angle(p, idx, McConfig { seed: mc.seed ^ angle_seed(idx), ..mc })?;
        out.values[f.dim] += f.volume * g.value;
        var[f.dim] += (f.volume * g.stderr).powi(2);
        if g.stderr > 0.0 {
            out.method = "exact+mc-angle".to_string();
        }
    }
    out.stderr = var.into_iter().map(f64::sqrt).collect();
    Ok(out)
}

/// Finite union of convex polytopes with a lazily built nerve.
#[derive(Debug, Clone)]
pub struct PlSet {
    n: usize,
    pieces: Vec<Polytope>,
    nerve: OnceLock<std::result::Result<Vec<NerveCell>, String>>,
}

/// A nonempty intersection of the pieces indexed by `members`.
#[derive(Debug, Clone)]
pub struct NerveCell {
    pub members: Vec<usize>,
    pub polytope: Polytope,
}

impl NerveCell {
    pub fn sign(&self) -> f64 {
        if self.members.len() % 2 == 1 {
            1.0
        } else {
            -1.0
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlSetJson {
    pub dim: usize,
    pub pieces: Vec<crate::geom::PolytopeJson>,
}

impl PlSet {
    pub fn new(n: usize, pieces: Vec<Polytope>) -> Result<PlSet> {
        if pieces.iter().any(|p| p.ambient_dim() != n) {
            return invalid("all pieces must share the ambient dimension");
        }
        Ok(PlSet { n, pieces, nerve: OnceLock::new() })
    }

    pub fn single(p: Polytope) -> PlSet {
        PlSet { n: p.ambient_dim(), pieces: vec![p], nerve: OnceLock::new() }
    }

    pub fn empty(n: usize) -> PlSet {
        PlSet { n, pieces: Vec::new(), nerve: OnceLock::new() }
    }

    pub fn from_json(j: &PlSetJson) -> Result<PlSet> {
        let pieces = j.pieces.iter().map(Polytope::from_json).collect::<Result<Vec<_>>>()?;
        PlSet::new(j.dim, pieces)
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn pieces(&self) -> &[Polytope] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Nonempty intersections of subfamilies, found depth first so that
    /// supersets of empty intersections are never formed.
    pub fn nerve(&self) -> Result<&[NerveCell]> {
        let r = self.nerve.get_or_init(|| {
            let mut cells = Vec::new();
            let mut stack: Vec<NerveCell> = self
                .pieces
                .iter()
                .enumerate()
                .map(|(i, p)| NerveCell { members: vec![i], polytope: p.clone() })
                .rev()
                .collect();
            while let Some(c) = stack.pop() {
                let last = *c.members.last().unwrap();
                for j in (last + 1..self.pieces.len()).rev() {
                    if !boxes_meet(&c.polytope, &self.pieces[j]) {
                        continue;
                    }
                    match c.polytope.intersect(&self.pieces[j]) {
                        Ok(Some(q)) => {
                            let mut m = c.members.clone();
                            m.push(j);
                            stack.push(NerveCell { members: m, polytope: q });
                        }
                        Ok(None) => {}
                        Err(e) => return Err(e.to_string()),
                    }
                }
                cells.push(c);
            }
            cells.sort_by(|a, b| a.members.len().cmp(&b.members.len()).then(a.members.cmp(&b.members)));
            Ok(cells)
        });
        r.as_deref().map_err(|e| Error::Numerical(format!("nerve construction failed: {e}")))
    }

    pub fn bbox(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let mut it = self.pieces.iter().map(|p| p.bbox());
        let (mut lo, mut hi) = it.next()?;
        for (l, h) in it {
            for d in 0..self.n {
                lo[d] = lo[d].min(l[d]);
                hi[d] = hi[d].max(h[d]);
            }
        }
        Some((lo, hi))
    }

    /// Whether some piece lies within `eps` of `x`.
    pub fn within(&self, x: &[f64], eps: f64) -> bool {
        self.pieces.iter().any(|p| p.distance(x) <= eps)
    }

    /// Euler characteristic of the set restricted by `meets`, which decides
    /// whether a convex intersection meets the probe region.
    pub fn chi_with(&self, meets: impl Fn(&Polytope) -> bool) -> Result<i64> {
        let mut chi = 0i64;
        for c in self.nerve()? {
            if meets(&c.polytope) {
                chi += if c.members.len() % 2 == 1 { 1 } else { -1 };
            }
        }
        Ok(chi)
    }

    pub fn euler_characteristic(&self) -> Result<i64> {
        self.chi_with(|_| true)
    }
}

fn boxes_meet(a: &Polytope, b: &Polytope) -> bool {
    let (al, ah) = a.bbox();
    let (bl, bh) = b.bbox();
    (0..al.len()).all(|d| al[d] <= bh[d] + 1e-9 && bl[d] <= ah[d] + 1e-9)
}

/// χ(X ∩ B̄(x, ε)) by the nerve: each convex intersection meeting the ball counts ±1.
pub fn chi_ball(x_set: &PlSet, x: &[f64], eps: f64) -> Result<i64> {
    x_set.chi_with(|q| q.distance(x) <= eps)
}

/// Λ(X) by inclusion-exclusion over the nerve.
pub fn lk_curvatures(x: &PlSet) -> Result<LkVector> {
    lk_curvatures_with(x, McConfig::new(ANGLE_SAMPLES, 0))
}

pub fn lk_curvatures_with(x: &PlSet, mc: McConfig) -> Result<LkVector> {
    let mut out = LkVector::zeros(x.ambient_dim(), "exact");
    for c in x.nerve()? {
        let l = steiner_coefficients_with(&c.polytope, mc)?;
        if l.method != "exact" {
            out.method = l.method.clone();
        }
        out.add_scaled(&l, c.sign());
    }
    Ok(out)
}

fn sample_box<R: Rng + ?Sized>(rng: &mut R, lo: &[f64], hi: &[f64], x: &mut [f64]) {
    for d in 0..lo.len() {
        x[d] = lo[d] + (hi[d] - lo[d]) * rng.random::<f64>();
    }
}

fn inflated_box(x: &PlSet, eps: f64) -> Option<(Vec<f64>, Vec<f64>, f64)> {
    let (mut lo, mut hi) = x.bbox()?;
    let mut vol = 1.0;
    for d in 0..lo.len() {
        lo[d] -= eps;
        hi[d] += eps;
        vol *= hi[d] - lo[d];
    }
    Some((lo, hi, vol))
}

fn box_estimate(x: &PlSet, eps: f64, mc: McConfig, f: impl Fn(&[f64]) -> Result<f64> + Sync) -> Result<Estimate> {
    if eps < 0.0 || !eps.is_finite() {
        return invalid("tube radius must be finite and nonnegative");
    }
    let Some((lo, hi, vol)) = inflated_box(x, eps) else {
        return Ok(Estimate::exact(0.0));
    };
    if vol == 0.0 {
        return Ok(Estimate::exact(0.0));
    }
    x.nerve()?;
    let failed = std::sync::atomic::AtomicBool::new(false);
    let acc = run_sharded(mc, |rng, count| {
        let mut a = Acc::default();
        let mut p = vec![0.0; lo.len()];
        for _ in 0..count {
            sample_box(rng, &lo, &hi, &mut p);
            match f(&p) {
                Ok(v) => a.push(v),
                Err(_) => failed.store(true, std::sync::atomic::Ordering::Relaxed),
            }
        }
        a
    });
    if failed.into_inner() {
        return Err(Error::Numerical("sample evaluation failed".into()));
    }
    Ok(Estimate { value: vol * acc.mean(), stderr: vol * acc.stderr() })
}

/// Vol_n of the closed ε-neighbourhood, by uniform sampling in the bounding box
/// inflated by ε.
pub fn tube_volume_mc(x: &PlSet, eps: f64, mc: McConfig) -> Result<Estimate> {
    box_estimate(x, eps, mc, |p| Ok(if x.within(p, eps) { 1.0 } else { 0.0 }))
}

/// ∫ χ(X ∩ B̄(x, ε)) dx over the tube.
pub fn weighted_tube_integral_mc(x: &PlSet, eps: f64, mc: McConfig) -> Result<Estimate> {
    box_estimate(x, eps, mc, |p| chi_ball(x, p, eps).map(|c| c as f64))
}

/// Closed-form benchmark shapes with known tube volumes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SmoothShape {
    /// Circle of radius r in R^2.
    Circle(f64),
    /// Round sphere of radius r in R^3.
    Sphere(f64),
    /// Closed disc of radius r in R^2.
    Disc(f64),
}

pub fn smooth_benchmark_tube(shape: SmoothShape, eps: f64) -> Result<f64> {
    use std::f64::consts::PI;
    if eps < 0.0 {
        return invalid("tube radius must be nonnegative");
    }
    match shape {
        SmoothShape::Circle(r) | SmoothShape::Sphere(r) if eps >= r => {
            invalid(format!("tube radius {eps} is not below the reach {r}"))
        }
        SmoothShape::Circle(r) => Ok(PI * (r + eps).powi(2) - PI * (r - eps).powi(2)),
        SmoothShape::Sphere(r) => Ok(4.0 * PI / 3.0 * ((r + eps).powi(3) - (r - eps).powi(3))),
        SmoothShape::Disc(r) => Ok(PI * (r + eps).powi(2)),
    }
}
