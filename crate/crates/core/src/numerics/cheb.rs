use alloc::vec::Vec;
use core::f64::consts::PI;

use super::Evaluable;
use crate::error::precondition;
use crate::Result;

/// Polynomial on `[0, 1]` in the Chebyshev basis `T_k(2x - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChebPoly {
    coeffs: Vec<f64>,
}

impl ChebPoly {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(precondition!(
                "a Chebyshev series needs at least one coefficient"
            ));
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Keep only the terms up to `degree`.
    pub fn truncate(&self, degree: usize) -> Self {
        let keep = (degree + 1).min(self.coeffs.len());
        Self {
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    /// Clenshaw recurrence at `t = 2x - 1`.
    pub fn eval(&self, x: f64) -> f64 {
        let t = 2.0 * x - 1.0;
        let (mut b1, mut b2) = (0.0, 0.0);
        for &c in self.coeffs[1..].iter().rev() {
            let b0 = 2.0 * t * b1 - b2 + c;
            b2 = b1;
            b1 = b0;
        }
        self.coeffs[0] + t * b1 - b2
    }
}

impl Evaluable for ChebPoly {
    fn eval(&self, x: f64) -> f64 {
        ChebPoly::eval(self, x)
    }
}

#[inline]
fn node_angle(j: usize, count: usize) -> f64 {
    // ascending nodes in x: j = 0 sits nearest x = 0 (t = -1)
    PI * ((count - j) as f64 - 0.5) / count as f64
}

/// The `count` Chebyshev points of the first kind mapped to `[0, 1]`, ascending.
pub fn chebyshev_nodes(count: usize) -> Vec<f64> {
    (0..count)
        .map(|j| 0.5 * (1.0 + libm::cos(node_angle(j, count))))
        .collect()
}

/// Interpolating Chebyshev series through samples taken at
/// [`chebyshev_nodes`]`(values.len())`.
pub fn cheb_coeffs_from_samples(values: &[f64]) -> Result<ChebPoly> {
    let count = values.len();
    if count == 0 {
        return Err(precondition!("need at least one sample"));
    }
    let scale = 2.0 / count as f64;
    let mut coeffs = Vec::with_capacity(count);
    for k in 0..count {
        let mut acc = 0.0;
        for (j, &v) in values.iter().enumerate() {
            // k * angle reduced through the integer numerator keeps cos accurate
            let num = (k * (2 * (count - j) - 1)) % (4 * count);
            acc += v * libm::cos(PI * num as f64 / (2 * count) as f64);
        }
        coeffs.push(scale * acc);
    }
    coeffs[0] *= 0.5;
    ChebPoly::new(coeffs)
}
