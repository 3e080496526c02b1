use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{norm, orthogonalize, scale};
use crate::mc::shard_rng;

/// Orthonormal k-frame in R^n whose span is distributed by the rotation
/// invariant measure: Gram-Schmidt applied to independent Gaussian vectors.
pub fn sample_grassmannian<R: Rng + ?Sized>(k: usize, n: usize, rng: &mut R) -> Vec<Vec<f64>> {
    assert!(k <= n, "frame size exceeds ambient dimension");
    let mut frame: Vec<Vec<f64>> = Vec::with_capacity(k);
    while frame.len() < k {
        let g: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
        let w = orthogonalize(&g, &frame);
        let r = norm(&w);
        if r > 1e-8 * norm(&g) {
            frame.push(scale(&w, 1.0 / r));
        }
    }
    frame
}

pub fn sample_grassmannian_seeded(k: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    sample_grassmannian(k, n, &mut shard_rng(seed, 0))
}
