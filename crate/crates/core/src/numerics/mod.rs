//! Function representations, spectral coefficient extraction, norms and moduli
//! of continuity shared by the rest of the crate.

use alloc::vec::Vec;

mod cheb;
mod degree;
mod grid;
mod target;
mod trig;

pub use cheb::{cheb_coeffs_from_samples, chebyshev_nodes, ChebPoly};
pub use degree::{
    effective_algebraic_degree, effective_trig_degree, fresh_points, DegreeCheck, FRESH_POINTS,
};
pub use grid::{modulus_estimate, sup_distance, Grid, GridKind};
pub use target::{corpus, PiecewiseLinear, TargetFunction};
pub use trig::{trig_coeffs_from_samples, TrigPoly};

/// Anything that can be evaluated at a real point.
pub trait Evaluable {
    fn eval(&self, x: f64) -> f64;
}

impl<F: Fn(f64) -> f64> Evaluable for F {
    fn eval(&self, x: f64) -> f64 {
        self(x)
    }
}

/// Fractional part in `[0, 1)`.
#[inline]
pub fn frac(x: f64) -> f64 {
    let r = x - libm::floor(x);
    // x slightly below an integer can round up to exactly 1.0
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Distance between `a` and `b` on the circle `R/Z`, in `[0, 1/2]`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    let d = frac(b - a);
    if d > 0.5 {
        1.0 - d
    } else {
        d
    }
}

/// Middle value of three.
pub fn median3(a: f64, b: f64, c: f64) -> f64 {
    if a <= b {
        if b <= c {
            b
        } else if a <= c {
            c
        } else {
            a
        }
    } else if a <= c {
        a
    } else if b <= c {
        c
    } else {
        b
    }
}

/// `P(median of three i.i.d. draws <= v)` given `F = P(draw <= v)`.
#[inline]
pub fn median3_cdf(f: f64) -> f64 {
    f * f * (3.0 - 2.0 * f)
}

/// Law of the median of three i.i.d. draws from a discrete distribution whose
/// support is already sorted ascending (`probs[i]` is the mass of the `i`-th
/// support value). Returns the median's mass on each support value.
pub fn median3_law(sorted_probs: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(sorted_probs.len());
    let mut cdf = 0.0;
    let mut prev = 0.0;
    for &p in sorted_probs {
        cdf = (cdf + p).min(1.0);
        let h = median3_cdf(cdf);
        out.push((h - prev).max(0.0));
        prev = h;
    }
    out
}
