//! Exact outcome law of phase estimation and the Fejér/Jackson kernels.
//!
//! Phase estimation with precision `M` on an eigenphase `x` yields
//! `Z in {0, .., M-1}` with
//!
//! ```text
//! P[Z = z] = sin(M pi d)^2 / (M^2 sin(pi d)^2),   d = d(z/M, x),
//! ```
//!
//! and `P[Z = z] = 1` when `d = 0`. For `Mx` not an integer this is the Fejér
//! kernel `F_M(z/M - x) / M`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::precondition;
use crate::numerics::{circle_dist, frac, median3_law, Evaluable};
use crate::Result;

/// Circle distances below this are treated as an exact hit.
pub const EXACT_HIT: f64 = 1e-15;

/// Outcome distribution of phase estimation.
#[derive(Debug, Clone, PartialEq)]
pub struct PhasePmf {
    precision: usize,
    phase: f64,
    probs: Vec<f64>,
}

impl PhasePmf {
    /// Number of outcomes `M`; the circuit applies the unitary up to `M - 1` times.
    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Eigenphase, reduced to `[0, 1)`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_probs(self) -> Vec<f64> {
        self.probs
    }

    /// Circle distance from outcome `z` to the true phase.
    pub fn outcome_distance(&self, z: usize) -> f64 {
        circle_dist(z as f64 / self.precision as f64, self.phase)
    }
}

/// `sin(n pi d)^2 / sin(pi d)^2` for `d` in `[0, 1/2]`, with limit `n^2` at 0.
fn dirichlet_sq(n: usize, d: f64) -> f64 {
    if d < EXACT_HIT {
        return (n * n) as f64;
    }
    let s = libm::sin(n as f64 * PI * d) / libm::sin(PI * d);
    s * s
}

/// Outcome law of phase estimation with `precision` outcomes at eigenphase
/// `phase`. Phases outside `[0, 1)` are reduced mod 1.
pub fn pe_pmf(precision: usize, phase: f64) -> Result<PhasePmf> {
    if precision == 0 {
        return Err(precondition!("precision M must be at least 1"));
    }
    let phase = frac(phase);
    let m = precision as f64;
    let dists: Vec<f64> = (0..precision)
        .map(|z| circle_dist(z as f64 / m, phase))
        .collect();
    let probs = if let Some(hit) = dists.iter().position(|&d| d < EXACT_HIT) {
        let mut p = alloc::vec![0.0; precision];
        p[hit] = 1.0;
        p
    } else {
        dists
            .iter()
            .map(|&d| dirichlet_sq(precision, d) / (m * m))
            .collect()
    };
    Ok(PhasePmf {
        precision,
        phase,
        probs,
    })
}

/// `E[d(Z/M, x)]` under the pmf.
pub fn expected_circle_error(pmf: &PhasePmf) -> f64 {
    pmf.probs
        .iter()
        .enumerate()
        .map(|(z, p)| p * pmf.outcome_distance(z))
        .sum()
}

/// `E[median of d(Z_i/M, x)]` over three independent runs.
pub fn median3_circle_error(precision: usize, phase: f64) -> Result<f64> {
    let pmf = pe_pmf(precision, phase)?;
    let mut order: Vec<(f64, f64)> = pmf
        .probs
        .iter()
        .enumerate()
        .map(|(z, &p)| (pmf.outcome_distance(z), p))
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let probs: Vec<f64> = order.iter().map(|o| o.1).collect();
    Ok(median3_law(&probs)
        .iter()
        .zip(&order)
        .map(|(q, o)| q * o.0)
        .sum())
}

/// Fejér kernel `F_n(t) = (1/n) (sin(pi n t) / sin(pi t))^2`, 1-periodic, `F_n(0) = n`.
pub fn fejer_value(n: usize, t: f64) -> f64 {
    assert!(n >= 1, "Fejér kernel order must be positive");
    dirichlet_sq(n, circle_dist(t, 0.0)) / n as f64
}

/// Largest `|P[Z = z] - F_M(z/M - x)/M|`. Only defined when `Mx` is not an
/// integer; otherwise the law is a point mass, not a discretised kernel.
pub fn fejer_identity_check(precision: usize, phase: f64) -> Result<f64> {
    let pmf = pe_pmf(precision, phase)?;
    let m = precision as f64;
    if (0..precision).any(|z| pmf.outcome_distance(z) < EXACT_HIT) {
        return Err(precondition!(
            "M*x is an integer (M = {precision}, x = {phase}); the outcome is deterministic"
        ));
    }
    Ok(pmf
        .probs
        .iter()
        .enumerate()
        .map(|(z, p)| (p - fejer_value(precision, z as f64 / m - pmf.phase) / m).abs())
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Fejer,
    Jackson,
}

/// A normalised, nonnegative 1-periodic approximation kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSpec {
    pub kind: KernelKind,
    pub order: usize,
    /// Multiplier making the kernel integrate to one (1 for Fejér).
    pub norm_const: f64,
}

impl KernelSpec {
    pub fn fejer(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(precondition!("kernel order must be positive"));
        }
        Ok(Self {
            kind: KernelKind::Fejer,
            order,
            norm_const: 1.0,
        })
    }

    /// Degree of the kernel as a trigonometric polynomial.
    pub fn trig_degree(&self) -> usize {
        match self.kind {
            KernelKind::Fejer => self.order - 1,
            KernelKind::Jackson => 2 * (self.order - 1),
        }
    }

    pub fn value(&self, t: f64) -> f64 {
        let f = fejer_value(self.order, t);
        match self.kind {
            KernelKind::Fejer => f,
            KernelKind::Jackson => self.norm_const * f * f,
        }
    }

    /// `int_0^1 K`, exact via the uniform rule on `2 * degree + 1` nodes.
    pub fn integral(&self) -> f64 {
        let m = 2 * self.trig_degree() + 1;
        (0..m).map(|j| self.value(j as f64 / m as f64)).sum::<f64>() / m as f64
    }
}

impl Evaluable for KernelSpec {
    fn eval(&self, t: f64) -> f64 {
        self.value(t)
    }
}

/// Jackson kernel `J_n = c F_n^2` with `c` making it integrate to one.
///
/// `F_n^2` has degree `2(n-1)`, so its mean over `4n - 3` equispaced nodes is
/// its exact integral.
pub fn jackson_kernel(order: usize) -> Result<KernelSpec> {
    if order == 0 {
        return Err(precondition!("kernel order must be positive"));
    }
    let m = 4 * order - 3;
    let mean = (0..m)
        .map(|j| {
            let f = fejer_value(order, j as f64 / m as f64);
            f * f
        })
        .sum::<f64>()
        / m as f64;
    Ok(KernelSpec {
        kind: KernelKind::Jackson,
        order,
        norm_const: 1.0 / mean,
    })
}
