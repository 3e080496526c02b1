use crate::error::{invalid, Result};
use crate::linalg::{dot, from_coords};

/// Affine flat `offset + span(direction)`.
#[derive(Debug, Clone)]
pub struct AffineFlat {
    pub n: usize,
    pub direction: Vec<Vec<f64>>,
    pub offset: Vec<f64>,
}

impl AffineFlat {
    pub fn new(direction: Vec<Vec<f64>>, offset: Vec<f64>) -> Result<AffineFlat> {
        let n = offset.len();
        for (i, a) in direction.iter().enumerate() {
            if a.len() != n {
                return invalid("flat direction dimension mismatch");
            }
            for (j, b) in direction.iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                if (dot(a, b) - want).abs() >= 1e-10 {
                    return invalid("flat direction is not orthonormal");
                }
            }
        }
        Ok(AffineFlat { n, direction, offset })
    }

    /// The flat orthogonal to `frame` through the point with coordinates `y` in it.
    pub fn orthogonal_to(frame: &[Vec<f64>], y: &[f64], n: usize) -> AffineFlat {
        let offset = from_coords(y, frame, n);
        let direction = crate::linalg::complement(frame, n);
        AffineFlat { n, direction, offset }
    }

    pub fn dim(&self) -> usize {
        self.direction.len()
    }
}
