use alloc::vec::Vec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{cheb_coeffs_from_samples, chebyshev_nodes, trig_coeffs_from_samples, Evaluable};
use crate::error::precondition;
use crate::{Error, Result};

/// Number of fresh off-node points used to measure truncation residuals.
pub const FRESH_POINTS: usize = 512;

/// Outcome of an effective-degree probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeCheck {
    /// Largest coefficient above the claimed degree, relative to the largest
    /// coefficient overall. Diagnostic only; aliasing can hide content here.
    pub leak: f64,
    /// Largest `|h(x) - truncated(x)|` over fresh random points.
    pub residual: f64,
    /// Largest `|h|` seen while probing, for relative comparisons.
    pub scale: f64,
}

impl DegreeCheck {
    pub fn relative_residual(&self) -> f64 {
        self.residual / (1.0 + self.scale)
    }
}

/// `count` uniform points in `[0, 1)` from a seeded ChaCha8 stream.
pub fn fresh_points(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random::<f64>()).collect()
}

fn finite(x: f64, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

/// Certifies that `h` is (numerically) an algebraic polynomial of degree at
/// most `degree` on `[0, 1]`.
///
/// `h` is interpolated at `probe_count` Chebyshev nodes; the interpolant is cut
/// back to `degree` and compared against `h` on fresh points drawn from `seed`.
/// Any content above `degree` shows up in the residual whether or not it
/// aliases onto low coefficients.
pub fn effective_algebraic_degree(
    h: &impl Evaluable,
    degree: usize,
    probe_count: usize,
    seed: u64,
) -> Result<DegreeCheck> {
    if probe_count < 4 * degree + 1 {
        return Err(precondition!(
            "probe_count {probe_count} below 4n+1 = {}",
            4 * degree + 1
        ));
    }
    let nodes = chebyshev_nodes(probe_count);
    let values = nodes
        .iter()
        .map(|&x| finite(x, h.eval(x)))
        .collect::<Result<Vec<f64>>>()?;
    let full = cheb_coeffs_from_samples(&values)?;
    let leak = leak_ratio(full.coeffs().iter().map(|c| c.abs()), degree);
    let truncated = full.truncate(degree);

    let mut scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut residual: f64 = 0.0;
    for x in fresh_points(FRESH_POINTS, seed) {
        let v = finite(x, h.eval(x))?;
        scale = scale.max(v.abs());
        residual = residual.max((v - truncated.eval(x)).abs());
    }
    Ok(DegreeCheck {
        leak,
        residual,
        scale,
    })
}

/// Trigonometric analogue of [`effective_algebraic_degree`] for 1-periodic
/// `h`, sampled at `probe_count` (odd) equispaced points of `[0, 1)`.
pub fn effective_trig_degree(
    h: &impl Evaluable,
    degree: usize,
    probe_count: usize,
    seed: u64,
) -> Result<DegreeCheck> {
    if probe_count < 4 * degree + 1 {
        return Err(precondition!(
            "probe_count {probe_count} below 4n+1 = {}",
            4 * degree + 1
        ));
    }
    let values = (0..probe_count)
        .map(|j| {
            let x = j as f64 / probe_count as f64;
            finite(x, h.eval(x))
        })
        .collect::<Result<Vec<f64>>>()?;
    let full = trig_coeffs_from_samples(&values)?;
    let m = full.degree() as i64;
    let leak = leak_ratio(
        (0..=m).map(|k| full.coeff(k).norm().max(full.coeff(-k).norm())),
        degree,
    );
    let truncated = full.truncate(degree);

    let mut scale = values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut residual: f64 = 0.0;
    for x in fresh_points(FRESH_POINTS, seed) {
        let v = finite(x, h.eval(x))?;
        scale = scale.max(v.abs());
        residual = residual.max((v - truncated.eval(x)).abs());
    }
    Ok(DegreeCheck {
        leak,
        residual,
        scale,
    })
}

fn leak_ratio(magnitudes: impl Iterator<Item = f64>, degree: usize) -> f64 {
    let (mut top, mut tail) = (0.0f64, 0.0f64);
    for (k, c) in magnitudes.enumerate() {
        top = top.max(c);
        if k > degree {
            tail = tail.max(c);
        }
    }
    if top == 0.0 {
        0.0
    } else {
        tail / top
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ChebPoly;
    use core::f64::consts::PI;

    #[test]
    fn cubic_chebpoly_certifies() {
        let p = ChebPoly::new(alloc::vec![0.3, -1.0, 0.5, 2.0]).unwrap();
        let c = effective_algebraic_degree(&p, 3, 13, 1).unwrap();
        assert!(c.leak < 1e-12 && c.residual < 1e-12, "{c:?}");
    }

    #[test]
    fn quintic_fails_degree_three() {
        let c = effective_algebraic_degree(&|x: f64| x.powi(5), 3, 13, 1).unwrap();
        assert!(c.residual > 1e-3, "{c:?}");
    }

    #[test]
    fn trig_degree_examples() {
        let two = |x: f64| libm::cos(4.0 * PI * x);
        let c = effective_trig_degree(&two, 2, 9, 3).unwrap();
        assert!(c.residual < 1e-12);
        let four = |x: f64| libm::cos(8.0 * PI * x);
        let c = effective_trig_degree(&four, 2, 9, 3).unwrap();
        assert!(c.residual >= 0.5, "{c:?}");
    }

    #[test]
    fn probe_count_precondition() {
        assert!(effective_algebraic_degree(&|x: f64| x, 3, 12, 0).is_err());
        assert!(effective_trig_degree(&|x: f64| x, 3, 12, 0).is_err());
        // even probe counts are rejected by the Fourier step
        assert!(effective_trig_degree(&|x: f64| x, 3, 14, 0).is_err());
    }

    #[test]
    fn fresh_points_are_seeded() {
        assert_eq!(fresh_points(8, 42), fresh_points(8, 42));
        assert_ne!(fresh_points(8, 42), fresh_points(8, 43));
        assert!(fresh_points(512, 0).iter().all(|x| (0.0..1.0).contains(x)));
    }
}
