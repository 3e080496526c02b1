use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::{combinations, Polytope};
use crate::error::{invalid, Result};
use crate::linalg::{self, complement, coords, dot, from_coords, norm, orthonormal_basis};
use crate::mc::{run_sharded, Acc, Estimate, McConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConeRep {
    Generators,
    Normals,
}

/// Polyhedral cone with apex at the origin, either the nonnegative span of
/// `generators` or the set `{x : a . x <= 0}` over `normals`.
#[derive(Debug, Clone)]
pub struct Cone {
    pub dim: usize,
    pub rep: ConeRep,
    pub vectors: Vec<Vec<f64>>,
}

impl Cone {
    pub fn from_generators(dim: usize, generators: Vec<Vec<f64>>) -> Result<Cone> {
        if generators.iter().any(|g| g.len() != dim || g.iter().any(|c| !c.is_finite())) {
            return invalid("cone generator dimension mismatch");
        }
        Ok(Cone { dim, rep: ConeRep::Generators, vectors: generators })
    }

    pub fn from_normals(dim: usize, normals: Vec<Vec<f64>>) -> Result<Cone> {
        if normals.iter().any(|g| g.len() != dim || g.iter().any(|c| !c.is_finite())) {
            return invalid("cone normal dimension mismatch");
        }
        Ok(Cone { dim, rep: ConeRep::Normals, vectors: normals })
    }

    /// Membership, with nonnegative least squares for the generator form.
    pub fn contains(&self, x: &[f64]) -> bool {
        let tol = 1e-9 * norm(x).max(1.0);
        match self.rep {
            ConeRep::Normals => self.vectors.iter().all(|a| dot(a, x) <= tol),
            ConeRep::Generators => {
                if norm(x) <= 1e-12 {
                    return true;
                }
                linalg::nnls(&self.vectors, x).1 <= tol
            }
        }
    }

    /// Inequalities `a . x <= 0` describing the cone.
    pub fn halfspace_normals(&self) -> Vec<Vec<f64>> {
        match self.rep {
            ConeRep::Normals => self.vectors.clone(),
            ConeRep::Generators => generators_to_normals(self.dim, &self.vectors),
        }
    }

    /// Generators of the cone (lineality directions appear with both signs).
    pub fn generators(&self) -> Result<Vec<Vec<f64>>> {
        match self.rep {
            ConeRep::Generators => Ok(self.vectors.iter().filter(|g| norm(g) > 1e-12).cloned().collect()),
            ConeRep::Normals => {
                let q = self.truncate()?;
                Ok(q.map(|q| q.vertices().iter().filter(|v| norm(v) > 1e-9).cloned().collect()).unwrap_or_default())
            }
        }
    }

    /// The polytope `C ∩ [-1, 1]^n`.
    pub fn truncate(&self) -> Result<Option<Polytope>> {
        let mut cons: Vec<(Vec<f64>, f64)> = self.halfspace_normals().into_iter().map(|a| (a, 0.0)).collect();
        for i in 0..self.dim {
            cons.push((linalg::unit(i, self.dim), 1.0));
            cons.push((linalg::scale(&linalg::unit(i, self.dim), -1.0), 1.0));
        }
        Polytope::from_halfspaces(self.dim, &cons)
    }

    /// Dimension of the linear span.
    pub fn span_dim(&self) -> Result<usize> {
        Ok(orthonormal_basis(&self.generators()?, 1e-9).len())
    }
}

/// Outward facet normals of cone(gens) plus opposing pairs for the span's complement.
fn generators_to_normals(n: usize, gens: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let gens: Vec<Vec<f64>> = gens.iter().filter(|g| norm(g) > 1e-12).cloned().collect();
    let span = orthonormal_basis(&gens, 1e-9);
    let k = span.len();
    let mut out: Vec<Vec<f64>> = Vec::new();
    for w in complement(&span, n) {
        out.push(linalg::scale(&w, -1.0));
        out.push(w);
    }
    let local: Vec<Vec<f64>> = gens.iter().map(|g| coords(g, &span)).collect();
    let mut push = |a: Vec<f64>| {
        let a = from_coords(&a, &span, n);
        if !out.iter().any(|b| linalg::dist(b, &a) < 1e-9) {
            out.push(a);
        }
    };
    match k {
        0 => {}
        1 => {
            let pos = local.iter().any(|c| c[0] > 1e-12);
            let neg = local.iter().any(|c| c[0] < -1e-12);
            if pos && !neg {
                push(vec![-1.0]);
            } else if neg && !pos {
                push(vec![1.0]);
            }
        }
        _ => {
            for combo in combinations(local.len(), k - 1) {
                let sub: Vec<Vec<f64>> = combo.iter().map(|&i| local[i].clone()).collect();
                let b = orthonormal_basis(&sub, 1e-9);
                if b.len() != k - 1 {
                    continue;
                }
                let nrm = complement(&b, k).remove(0);
                let s: Vec<f64> = local.iter().map(|c| dot(c, &nrm)).collect();
                let scale = local.iter().map(|c| norm(c)).fold(1.0, f64::max);
                if s.iter().all(|&v| v <= 1e-9 * scale) {
                    push(nrm);
                } else if s.iter().all(|&v| v >= -1e-9 * scale) {
                    push(linalg::scale(&nrm, -1.0));
                }
            }
        }
    }
    out
}

/// Normal cone of `P` along face `face`: outward normals of the facets
/// containing the face, times the orthogonal complement of the hull.
pub fn normal_cone(p: &Polytope, face: usize) -> Result<Cone> {
    let Some(f) = p.faces().get(face) else {
        return invalid(format!("face {face} is not in the lattice"));
    };
    let mut gens: Vec<Vec<f64>> = f.facets.iter().map(|&i| p.facets()[i].normal.clone()).collect();
    for w in p.hull_complement() {
        gens.push(w.clone());
        gens.push(linalg::scale(w, -1.0));
    }
    Cone::from_generators(p.ambient_dim(), gens)
}

/// Fraction of the unit sphere of R^s covered by cone(gens), gens given in
/// coordinates of R^s. Closed forms for s <= 3; Monte Carlo with `mc` beyond.
pub fn cone_fraction(gens: &[Vec<f64>], s: usize, mc: McConfig) -> Estimate {
    if s == 0 {
        return Estimate::exact(1.0);
    }
    let g: Vec<Vec<f64>> = gens.iter().filter(|v| norm(v) > 1e-12).map(|v| linalg::scale(v, 1.0 / norm(v))).collect();
    if orthonormal_basis(&g, 1e-9).len() < s {
        return Estimate::exact(0.0);
    }
    match s {
        1 => {
            let pos = g.iter().any(|c| c[0] > 0.0);
            let neg = g.iter().any(|c| c[0] < 0.0);
            Estimate::exact(if pos && neg { 1.0 } else { 0.5 })
        }
        2 => Estimate::exact(planar_fraction(&g)),
        3 => Estimate::exact(spatial_fraction(&g)),
        _ => {
            let acc = run_sharded(mc, |rng, count| {
                let mut a = Acc::default();
                for _ in 0..count {
                    let x: Vec<f64> = (0..s).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
                    a.push(if linalg::nnls(&g, &x).1 <= 1e-9 * norm(&x).max(1.0) { 1.0 } else { 0.0 });
                }
                a
            });
            Estimate { value: acc.mean(), stderr: acc.stderr() }
        }
    }
}

/// Angular fraction of a full-dimensional planar cone given by unit generators.
fn planar_fraction(g: &[Vec<f64>]) -> f64 {
    let mut ang: Vec<f64> = g.iter().map(|v| v[1].atan2(v[0])).collect();
    ang.sort_by(f64::total_cmp);
    let mut gap: f64 = ang[0] + 2.0 * PI - ang[ang.len() - 1];
    for w in ang.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    if gap < PI - 1e-9 {
        1.0
    } else {
        (2.0 * PI - gap) / (2.0 * PI)
    }
}

fn cross(a: &[f64], b: &[f64]) -> Vec<f64> {
    vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Solid-angle fraction of a full-dimensional cone in R^3 given by unit generators.
fn spatial_fraction(g: &[Vec<f64>]) -> f64 {
    let normals = generators_to_normals(3, g);
    if normals.is_empty() {
        return 1.0;
    }
    let rank = orthonormal_basis(&normals, 1e-9).len();
    match rank {
        1 => 0.5,
        2 => {
            let c = dot(&normals[0], &normals[1]).clamp(-1.0, 1.0);
            (PI - c.acos()) / (2.0 * PI)
        }
        _ => {
            // Pointed: order the extreme rays around an axis from the interior
            // of the dual cone and sum the solid angles of the fan of
            // triangles. The sum of the generators is not safe here: a wide
            // cone can have generators at an obtuse angle to it.
            let mut axis = vec![0.0; 3];
            for a in &normals {
                linalg::axpy(&mut axis, -1.0 / norm(a), a);
            }
            let axis = linalg::scale(&axis, 1.0 / norm(&axis));
            let plane = complement(&[axis.clone()], 3);
            let pts: Vec<[f64; 2]> = g
                .iter()
                .map(|v| {
                    let t = dot(v, &axis);
                    let p = linalg::scale(v, 1.0 / t);
                    [dot(&p, &plane[0]), dot(&p, &plane[1])]
                })
                .collect();
            let hull = convex_hull_2d(&pts);
            let h: Vec<&Vec<f64>> = hull.iter().map(|&i| &g[i]).collect();
            let mut omega = 0.0;
            for i in 1..h.len() - 1 {
                omega += triangle_solid_angle(h[0], h[i], h[i + 1]);
            }
            omega / (4.0 * PI)
        }
    }
}

fn triangle_solid_angle(a: &[f64], b: &[f64], c: &[f64]) -> f64 {
    let num = dot(a, &cross(b, c)).abs();
    let den = 1.0 + dot(a, b) + dot(b, c) + dot(c, a);
    2.0 * num.atan2(den)
}

/// Indices of the convex hull in counter-clockwise order (monotone chain).
fn convex_hull_2d(p: &[[f64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..p.len()).collect();
    idx.sort_by(|&a, &b| p[a][0].total_cmp(&p[b][0]).then(p[a][1].total_cmp(&p[b][1])));
    let turn = |o: usize, a: usize, b: usize| (p[a][0] - p[o][0]) * (p[b][1] - p[o][1]) - (p[a][1] - p[o][1]) * (p[b][0] - p[o][0]);
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && turn(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 1e-12 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && turn(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 1e-12 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}
