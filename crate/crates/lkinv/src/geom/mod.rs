//! Constants, polytopes with face lattices, polyhedral cones, Grassmannian
//! sampling and affine flats.

mod cone;
mod flat;
mod grassmann;
mod polytope;

pub use cone::{cone_fraction, normal_cone, Cone, ConeRep};
pub use flat::AffineFlat;
pub use grassmann::{sample_grassmannian, sample_grassmannian_seeded};
pub use polytope::{face_counts, Face, Facet, Polytope, PolytopeJson, MAX_DIM};

use crate::error::{invalid, Result};
use statrs::function::gamma::gamma;

/// Volume of the unit ball in R^i.
pub fn unit_ball_volume(i: usize) -> f64 {
    // α_i = α_{i-2} · 2π / i
    match i {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(i - 2) * 2.0 * std::f64::consts::PI / i as f64,
    }
}

/// The constant beta(d, n) relating d-volume to the mean number of hits by
/// random affine (n-d)-flats.
pub fn crofton_constant(d: usize, n: usize) -> Result<f64> {
    if d > n {
        return invalid(format!("crofton_constant: d = {d} exceeds n = {n}"));
    }
    if d == 0 || d == n {
        return Ok(1.0);
    }
    let g = |x: f64| gamma(x);
    let (d, n) = (d as f64, n as f64);
    Ok(g((n - d + 1.0) / 2.0) * g((d + 1.0) / 2.0) / (g((n + 1.0) / 2.0) * g(0.5)))
}

/// Binomial coefficient as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// i-th intrinsic volume of the unit k-ball.
pub fn ball_intrinsic_volume(k: usize, i: usize) -> f64 {
    if i > k {
        return 0.0;
    }
    binomial(k, i) * unit_ball_volume(k) / unit_ball_volume(k - i)
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        while i > 0 && idx[i - 1] == i - 1 + n - k {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn small_ball_volumes() {
        assert_eq!(unit_ball_volume(0), 1.0);
        assert_eq!(unit_ball_volume(1), 2.0);
        assert_eq!(unit_ball_volume(2), PI);
        assert!((unit_ball_volume(3) - 4.0 * PI / 3.0).abs() < 1e-14);
        assert!((unit_ball_volume(4) - PI * PI / 2.0).abs() < 1e-13);
    }

    #[test]
    fn crofton_constant_edges() {
        for n in 1..7 {
            assert_eq!(crofton_constant(n, n).unwrap(), 1.0);
            assert_eq!(crofton_constant(0, n).unwrap(), 1.0);
        }
        assert!(crofton_constant(3, 2).is_err());
    }

    #[test]
    fn crofton_constant_one_two() {
        // Gamma(1) Gamma(1) / (Gamma(3/2) Gamma(1/2)) with Gamma(3/2) = sqrt(pi)/2.
        let sp = PI.sqrt();
        let oracle = 1.0 / ((sp / 2.0) * sp);
        assert!((crofton_constant(1, 2).unwrap() - oracle).abs() < 1e-14);
        assert!((oracle - 2.0 / PI).abs() < 1e-15);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(4, 0), vec![Vec::<usize>::new()]);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert!(combinations(2, 3).is_empty());
        assert_eq!(combinations(6, 3).len(), 20);
    }
}
