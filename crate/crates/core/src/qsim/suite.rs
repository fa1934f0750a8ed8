//! The oracle suite: every closed form checked against the simulator or a
//! brute-force enumeration.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::{
    counting_statevector_pmf, eigencheck, grover_unitary, pe_statevector_pmf, prefix_string,
    StateVector,
};
use crate::counting_model::{median3_amp_pmf, single_run_pmf};
use crate::numerics::median3;
use crate::phase_dist::{
    fejer_identity_check, jackson_kernel, median3_circle_error, pe_pmf, KernelSpec,
};
use crate::Result;

/// Outcome of one cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

impl OracleCheck {
    fn new(name: &'static str, max_residual: f64, tolerance: f64) -> Self {
        Self {
            name,
            max_residual,
            tolerance,
            // NaN residuals fail
            passed: max_residual < tolerance,
        }
    }
}

const GOLDEN: f64 = 0.618_033_988_749_894_8;

/// 12 generic phases and 4 exact hits `z / M`.
fn phases(m: usize) -> Vec<f64> {
    let mut xs: Vec<f64> = (0..12).map(|j| (j as f64 + GOLDEN) / 12.0).collect();
    xs.extend((0..4).map(|j| ((3 * j + 1) % m) as f64 / m as f64));
    xs
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

fn pe_statevector() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 2..=32 {
        for x in phases(m) {
            worst = worst.max(max_abs_diff(
                pe_pmf(m, x)?.probs(),
                &pe_statevector_pmf(m, x)?,
            ));
        }
    }
    Ok(worst)
}

fn pe_normalization() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 1..=64 {
        for x in phases(m.max(2)) {
            let total: f64 = pe_pmf(m, x)?.probs().iter().sum();
            worst = worst.max((total - 1.0).abs());
        }
    }
    Ok(worst)
}

/// Largest excess of a probability over `1 / (4 M^2 d^2)`, floored at 0.
fn pe_tail_bound() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 2..=64 {
        for x in phases(m) {
            let pmf = pe_pmf(m, x)?;
            for (z, &p) in pmf.probs().iter().enumerate() {
                let d = pmf.outcome_distance(z);
                if d > 0.0 {
                    worst = worst.max(p - 1.0 / (4.0 * (m * m) as f64 * d * d));
                }
            }
        }
    }
    Ok(worst)
}

fn fejer_identity() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 2..=64 {
        for j in 0..16 {
            worst = worst.max(fejer_identity_check(m, (j as f64 + GOLDEN) / 16.0)?);
        }
    }
    Ok(worst)
}

fn grover_eigenpairs() -> Result<f64> {
    let mut worst = 0.0f64;
    for len in [4, 8, 16] {
        for k in 1..len {
            let r = eigencheck(&prefix_string(len, k))?;
            worst = worst
                .max(r.max_residual())
                .max(r.overlap)
                .max(r.decomposition)
                .max((r.start_weight_plus - 0.5).abs());
        }
    }
    Ok(worst)
}

/// Weight 0 fixes the uniform state, weight `N` negates it.
fn grover_degenerate() -> Result<f64> {
    let mut worst = 0.0f64;
    for len in [4, 8, 16] {
        for (k, sign) in [(0, 1.0), (len, -1.0)] {
            let start = StateVector::uniform(len);
            let image = grover_unitary(&prefix_string(len, k))?.apply(&start);
            worst = worst.max(image.distance(&start.scaled(Complex64::new(sign, 0.0))));
        }
    }
    Ok(worst)
}

fn counting_mixture() -> Result<f64> {
    let mut worst = 0.0f64;
    for len in [4, 8, 16] {
        for k in 0..=len {
            let w = prefix_string(len, k);
            for m in 2..=8 {
                let sim = counting_statevector_pmf(&w, m)?;
                worst = worst.max(max_abs_diff(&sim, &single_run_pmf(k, len, m)?));
            }
        }
    }
    Ok(worst)
}

fn kernel_normalization() -> Result<f64> {
    let mut worst = 0.0f64;
    for n in 1..=32 {
        for kernel in [KernelSpec::fejer(n)?, jackson_kernel(n)?] {
            worst = worst.max((kernel.integral() - 1.0).abs());
        }
    }
    let c = jackson_kernel(2)?.norm_const;
    Ok(worst.max((c - 2.0 / 3.0).abs()))
}

/// Median-of-three amplitude law against `M^3` enumeration of outcomes.
fn median_amp_law() -> Result<f64> {
    let mut worst = 0.0f64;
    for len in [3, 8, 13] {
        for m in 1..=6 {
            for k in 0..=len {
                let p = single_run_pmf(k, len, m)?;
                let fold = |z: usize| z.min(m - z);
                let mut brute = alloc::vec![0.0; m / 2 + 1];
                for a in 0..m {
                    for b in 0..m {
                        for c in 0..m {
                            let j = median3(fold(a) as f64, fold(b) as f64, fold(c) as f64);
                            brute[j as usize] += p[a] * p[b] * p[c];
                        }
                    }
                }
                worst = worst.max(max_abs_diff(median3_amp_pmf(k, len, m)?.probs(), &brute));
            }
        }
    }
    Ok(worst)
}

/// Expected median circle error against `M^3` enumeration.
fn median_circle_error() -> Result<f64> {
    let mut worst = 0.0f64;
    for m in 1..=10 {
        for x in phases(m.max(2)) {
            let pmf = pe_pmf(m, x)?;
            let p = pmf.probs();
            let d = |z: usize| pmf.outcome_distance(z);
            let mut brute = 0.0;
            for a in 0..m {
                for b in 0..m {
                    for c in 0..m {
                        brute += p[a] * p[b] * p[c] * median3(d(a), d(b), d(c));
                    }
                }
            }
            worst = worst.max((median3_circle_error(m, x)? - brute).abs());
        }
    }
    Ok(worst)
}

/// Runs every cross-check. Deterministic; takes well under a second in
/// release builds.
pub fn oracle_suite() -> Result<Vec<OracleCheck>> {
    Ok(alloc::vec![
        OracleCheck::new("pe_pmf_vs_statevector", pe_statevector()?, 1e-12),
        OracleCheck::new("pe_pmf_normalization", pe_normalization()?, 1e-12),
        // the bound is exact; the slack only absorbs rounding
        OracleCheck::new("pe_pmf_tail_bound", pe_tail_bound()?.max(0.0), 1e-15),
        OracleCheck::new("fejer_identity", fejer_identity()?, 1e-12),
        OracleCheck::new("grover_eigenpairs", grover_eigenpairs()?, 1e-10),
        OracleCheck::new("grover_degenerate_weights", grover_degenerate()?, 1e-10),
        OracleCheck::new(
            "counting_mixture_vs_statevector",
            counting_mixture()?,
            1e-12
        ),
        OracleCheck::new("kernel_normalization", kernel_normalization()?, 1e-10),
        OracleCheck::new("median3_amp_law_vs_enumeration", median_amp_law()?, 1e-12),
        OracleCheck::new(
            "median3_circle_error_vs_enumeration",
            median_circle_error()?,
            1e-12
        ),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        for check in oracle_suite().unwrap() {
            assert!(check.passed, "{check:?}");
        }
    }

    #[test]
    fn nan_residual_fails() {
        assert!(!OracleCheck::new("x", f64::NAN, 1.0).passed);
    }
}
