//! Small dense helpers on `Vec<f64>` points. Dimensions here never exceed 6.

use nalgebra::{DMatrix, DVector};

/// Absolute tolerance for geometric predicates on unit-scale data.
pub const TOL: f64 = 1e-9;

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scale(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn axpy(y: &mut [f64], s: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += s * xi;
    }
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub fn centroid(points: &[&[f64]]) -> Vec<f64> {
    let n = points[0].len();
    let mut c = vec![0.0; n];
    for p in points {
        axpy(&mut c, 1.0, p);
    }
    scale(&c, 1.0 / points.len() as f64)
}

pub fn unit(i: usize, n: usize) -> Vec<f64> {
    let mut e = vec![0.0; n];
    e[i] = 1.0;
    e
}

/// Reduce `v` against an orthonormal `basis` (twice, for stability).
pub fn orthogonalize(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut w = v.to_vec();
    for _ in 0..2 {
        for b in basis {
            let c = dot(&w, b);
            axpy(&mut w, -c, b);
        }
    }
    w
}

/// Orthonormal basis of the span of `vectors`. A vector whose residual is below
/// `tol` times its own length is treated as dependent.
pub fn orthonormal_basis(vectors: &[Vec<f64>], tol: f64) -> Vec<Vec<f64>> {
    let mut basis: Vec<Vec<f64>> = Vec::new();
    for v in vectors {
        let len = norm(v);
        if len <= tol {
            continue;
        }
        let w = orthogonalize(v, &basis);
        let r = norm(&w);
        if r > tol * len.max(1.0) {
            basis.push(scale(&w, 1.0 / r));
        }
    }
    basis
}

/// Extend an orthonormal basis of a subspace of R^n by an orthonormal basis of
/// its orthogonal complement.
pub fn complement(basis: &[Vec<f64>], n: usize) -> Vec<Vec<f64>> {
    let mut all = basis.to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        let w = orthogonalize(&unit(i, n), &all);
        let r = norm(&w);
        if r > 1e-6 {
            let u = scale(&w, 1.0 / r);
            all.push(u.clone());
            out.push(u);
        }
        if all.len() == n {
            break;
        }
    }
    out
}

/// Coordinates of `v` in an orthonormal basis.
pub fn coords(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    basis.iter().map(|b| dot(v, b)).collect()
}

/// Point from coordinates in an orthonormal basis.
pub fn from_coords(c: &[f64], basis: &[Vec<f64>], n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n];
    for (ci, b) in c.iter().zip(basis) {
        axpy(&mut v, *ci, b);
    }
    v
}

/// Affine hull of a point set: an origin and an orthonormal direction basis.
#[derive(Debug, Clone)]
pub struct AffineHull {
    pub origin: Vec<f64>,
    pub basis: Vec<Vec<f64>>,
}

impl AffineHull {
    pub fn of(points: &[&[f64]]) -> AffineHull {
        let origin = points[0].to_vec();
        let diffs: Vec<Vec<f64>> = points[1..].iter().map(|p| sub(p, &origin)).collect();
        AffineHull { origin, basis: orthonormal_basis(&diffs, 1e-9) }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn project(&self, x: &[f64]) -> Vec<f64> {
        let d = sub(x, &self.origin);
        let mut p = self.origin.clone();
        for b in &self.basis {
            axpy(&mut p, dot(&d, b), b);
        }
        p
    }

    pub fn distance(&self, x: &[f64]) -> f64 {
        dist(x, &self.project(x))
    }
}

pub fn affine_dim(points: &[&[f64]]) -> usize {
    if points.is_empty() {
        return 0;
    }
    AffineHull::of(points).dim()
}

/// Solve a square system given by rows. `None` when numerically singular.
pub fn solve(rows: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let n = rows.len();
    let a = DMatrix::from_fn(n, n, |i, j| rows[i][j]);
    let scale = a.amax().max(1e-300);
    let lu = a.lu();
    let u = lu.u();
    let min_pivot = (0..n).map(|i| u[(i, i)].abs()).fold(f64::INFINITY, f64::min);
    if min_pivot < 1e-11 * scale {
        return None;
    }
    lu.solve(&DVector::from_column_slice(rhs)).map(|x| x.as_slice().to_vec())
}

/// Nonnegative least squares (Lawson-Hanson): minimize |A x - b| with x >= 0.
/// `cols` are the columns of A. Returns (x, residual norm).
pub fn nnls(cols: &[Vec<f64>], b: &[f64]) -> (Vec<f64>, f64) {
    let m = b.len();
    let k = cols.len();
    let mut x = vec![0.0; k];
    if k == 0 {
        return (x, norm(b));
    }
    let a = DMatrix::from_fn(m, k, |i, j| cols[j][i]);
    let bv = DVector::from_column_slice(b);
    let mut passive = vec![false; k];
    let tol = 1e-12 * (1.0 + a.amax()) * (1.0 + bv.amax());
    for _outer in 0..(3 * k + 10) {
        let xv = DVector::from_column_slice(&x);
        let w = a.transpose() * (&bv - &a * &xv);
        let mut best = None;
        for j in 0..k {
            if !passive[j] && w[j] > tol && best.is_none_or(|(_, wb)| w[j] > wb) {
                best = Some((j, w[j]));
            }
        }
        let Some((j, _)) = best else { break };
        passive[j] = true;
        for _inner in 0..(3 * k + 10) {
            let idx: Vec<usize> = (0..k).filter(|&i| passive[i]).collect();
            let ap = DMatrix::from_fn(m, idx.len(), |r, c| a[(r, idx[c])]);
            let z = ap.clone().svd(true, true).solve(&bv, 1e-13).unwrap_or_else(|_| DVector::zeros(idx.len()));
            if z.iter().all(|&v| v > 0.0) {
                for (c, &i) in idx.iter().enumerate() {
                    x[i] = z[c];
                }
                break;
            }
            let mut alpha = f64::INFINITY;
            for (c, &i) in idx.iter().enumerate() {
                if z[c] <= 0.0 {
                    let denom = x[i] - z[c];
                    if denom > 0.0 {
                        alpha = alpha.min(x[i] / denom);
                    }
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            for (c, &i) in idx.iter().enumerate() {
                x[i] += alpha * (z[c] - x[i]);
                if x[i] <= 1e-15 {
                    x[i] = 0.0;
                    passive[i] = false;
                }
            }
        }
    }
    let xv = DVector::from_column_slice(&x);
    let r = (&a * xv - bv).norm();
    (x, r)
}

/// Minimum-norm point of the convex hull of `points` (Wolfe's algorithm).
pub fn min_norm_point(points: &[Vec<f64>]) -> Vec<f64> {
    let n = points[0].len();
    let scale2 = points.iter().map(|p| dot(p, p)).fold(1e-300, f64::max);
    let start = (0..points.len())
        .min_by(|&a, &b| dot(&points[a], &points[a]).total_cmp(&dot(&points[b], &points[b])))
        .unwrap();
    let mut set = vec![start];
    let mut lam = vec![1.0];
    let mut x = points[start].clone();
    for _major in 0..(4 * points.len() + 20) {
        let (j, pj) = (0..points.len())
            .map(|j| (j, dot(&x, &points[j])))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if dot(&x, &x) - pj <= 1e-12 * scale2 || set.contains(&j) {
            break;
        }
        set.push(j);
        lam.push(0.0);
        for _minor in 0..(4 * points.len() + 20) {
            let s = set.len();
            let mut kkt = DMatrix::zeros(s + 1, s + 1);
            for a in 0..s {
                for b in 0..s {
                    kkt[(a, b)] = dot(&points[set[a]], &points[set[b]]);
                }
                kkt[(a, s)] = 1.0;
                kkt[(s, a)] = 1.0;
            }
            let mut rhs = DVector::zeros(s + 1);
            rhs[s] = 1.0;
            let mu = match kkt.clone().lu().solve(&rhs) {
                Some(m) => m,
                None => kkt.svd(true, true).solve(&rhs, 1e-14).unwrap_or_else(|_| DVector::zeros(s + 1)),
            };
            if (0..s).all(|a| mu[a] > 1e-14) {
                lam = (0..s).map(|a| mu[a]).collect();
                break;
            }
            let mut theta: f64 = 1.0;
            for a in 0..s {
                if mu[a] <= 1e-14 {
                    let d = lam[a] - mu[a];
                    if d > 0.0 {
                        theta = theta.min(lam[a] / d);
                    }
                }
            }
            for a in 0..s {
                lam[a] += theta * (mu[a] - lam[a]);
            }
            let mut a = 0;
            while a < set.len() {
                if lam[a] <= 1e-14 {
                    set.remove(a);
                    lam.remove(a);
                } else {
                    a += 1;
                }
            }
            if set.is_empty() {
                set.push(start);
                lam.push(1.0);
                break;
            }
        }
        let total: f64 = lam.iter().sum();
        x = vec![0.0; n];
        for (a, &i) in set.iter().enumerate() {
            axpy(&mut x, lam[a] / total, &points[i]);
        }
    }
    x
}

/// Euclidean distance from `y` to the convex hull of `points`.
pub fn hull_distance(points: &[Vec<f64>], y: &[f64]) -> f64 {
    let shifted: Vec<Vec<f64>> = points.iter().map(|p| sub(p, y)).collect();
    norm(&min_norm_point(&shifted))
}
