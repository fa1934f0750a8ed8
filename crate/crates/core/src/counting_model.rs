//! Quantum counting conditioned on the Hamming weight of the input.
//!
//! For `w in {0,1}^N` of weight `k`, the Grover iterate has eigenphases
//! `+-theta/pi` with `theta = arcsin(sqrt(k/N))`, and the uniform start state
//! splits evenly between the two eigenvectors. Since those eigenvectors are
//! orthogonal, a run of phase estimation with precision `M` returns `Z` drawn
//! from the equal mixture of the two phase-estimation laws. The estimate of
//! `k/N` is `A = sin(pi Z / M)^2`.
//!
//! `A` depends on `Z` only through `j = min(Z, M - Z)`, and `sin^2(pi j/M)` is
//! strictly increasing in `j` on `0..=M/2`, so amplitude laws are indexed by
//! `j` and never by comparing floats.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::precondition;
use crate::numerics::{frac, median3_law};
use crate::phase_dist::pe_pmf;
use crate::Result;

/// `arcsin(sqrt(k/N))`, in `[0, pi/2]`.
pub fn theta_of_weight(weight: usize, len: usize) -> Result<f64> {
    if len == 0 || weight > len {
        return Err(precondition!("weight {weight} outside 0..={len}"));
    }
    Ok(libm::asin(libm::sqrt(weight as f64 / len as f64)))
}

/// Outcome law of one counting run over `z in 0..M`.
pub fn single_run_pmf(weight: usize, len: usize, precision: usize) -> Result<Vec<f64>> {
    let phase = theta_of_weight(weight, len)? / PI;
    let plus = pe_pmf(precision, phase)?;
    let minus = pe_pmf(precision, frac(1.0 - phase))?;
    Ok(plus
        .probs()
        .iter()
        .zip(minus.probs())
        .map(|(a, b)| 0.5 * a + 0.5 * b)
        .collect())
}

/// `sin(pi z / M)^2`.
pub fn amp_estimate(z: usize, precision: usize) -> f64 {
    let s = libm::sin(PI * z as f64 / precision as f64);
    s * s
}

/// Law of an amplitude estimate on its support `sin^2(pi j / M)`, `j = 0..=M/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct AmpLaw {
    precision: usize,
    probs: Vec<f64>,
}

impl AmpLaw {
    /// Folds an outcome law over `z` onto `j = min(z, M - z)`.
    fn fold(precision: usize, outcome: &[f64]) -> Self {
        let mut probs = alloc::vec![0.0; precision / 2 + 1];
        for (z, p) in outcome.iter().enumerate() {
            probs[z.min(precision - z)] += p;
        }
        Self { precision, probs }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Support values, ascending.
    pub fn support(&self) -> Vec<f64> {
        (0..self.probs.len())
            .map(|j| amp_estimate(j, self.precision))
            .collect()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// `E[f(A)]`.
    pub fn expect(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.probs
            .iter()
            .enumerate()
            .map(|(j, p)| p * f(amp_estimate(j, self.precision)))
            .sum()
    }

    fn median3(&self) -> Self {
        Self {
            precision: self.precision,
            probs: median3_law(&self.probs),
        }
    }
}

/// Law of `A` from a single counting run.
pub fn single_amp_pmf(weight: usize, len: usize, precision: usize) -> Result<AmpLaw> {
    Ok(AmpLaw::fold(
        precision,
        &single_run_pmf(weight, len, precision)?,
    ))
}

/// Law of `A' = median(A_1, A_2, A_3)` over three independent runs.
pub fn median3_amp_pmf(weight: usize, len: usize, precision: usize) -> Result<AmpLaw> {
    Ok(single_amp_pmf(weight, len, precision)?.median3())
}

/// `E|A' - k/N|`.
pub fn expected_amp_error(weight: usize, len: usize, precision: usize) -> Result<f64> {
    let target = weight as f64 / len as f64;
    Ok(median3_amp_pmf(weight, len, precision)?.expect(|a| (a - target).abs()))
}

/// Log binomial coefficients `ln C(N, k)` for a fixed `N`, reused across `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct BinomialTable {
    log_coeffs: Vec<f64>,
}

impl BinomialTable {
    pub fn new(len: usize) -> Self {
        let top = libm::lgamma(len as f64 + 1.0);
        let log_coeffs = (0..=len)
            .map(|k| top - libm::lgamma(k as f64 + 1.0) - libm::lgamma((len - k) as f64 + 1.0))
            .collect();
        Self { log_coeffs }
    }

    pub fn len(&self) -> usize {
        self.log_coeffs.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `C(N,k) x^k (1-x)^(N-k)` for `k = 0..=N`, renormalised to sum to one.
    pub fn weights(&self, x: f64) -> Result<Vec<f64>> {
        if !(0.0..=1.0).contains(&x) {
            return Err(precondition!("coin bias {x} outside [0, 1]"));
        }
        let n = self.len();
        let mut w = alloc::vec![0.0; n + 1];
        if x == 0.0 {
            w[0] = 1.0;
            return Ok(w);
        }
        if x == 1.0 {
            w[n] = 1.0;
            return Ok(w);
        }
        let (lx, l1x) = (libm::log(x), libm::log1p(-x));
        for (k, (slot, lc)) in w.iter_mut().zip(&self.log_coeffs).enumerate() {
            *slot = libm::exp(lc + k as f64 * lx + (n - k) as f64 * l1x);
        }
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= total);
        Ok(w)
    }

    /// `sum_k weights(x)[k] * values[k]`.
    pub fn expect(&self, x: f64, values: &[f64]) -> Result<f64> {
        if values.len() != self.log_coeffs.len() {
            return Err(precondition!(
                "expected {} values, got {}",
                self.log_coeffs.len(),
                values.len()
            ));
        }
        Ok(self
            .weights(x)?
            .iter()
            .zip(values)
            .map(|(w, v)| w * v)
            .sum())
    }
}

/// Binomial(N, x) probabilities of each Hamming weight.
pub fn binom_weights(len: usize, x: f64) -> Result<Vec<f64>> {
    BinomialTable::new(len).weights(x)
}

/// Per-weight counting laws for strings of length `N` at precision `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingModel {
    len: usize,
    precision: usize,
    single: Vec<Vec<f64>>,
    amp_single: Vec<AmpLaw>,
    amp_median: Vec<AmpLaw>,
}

impl CountingModel {
    pub fn new(len: usize, precision: usize) -> Result<Self> {
        if len == 0 || precision == 0 {
            return Err(precondition!(
                "need N >= 1 and M >= 1 (got N = {len}, M = {precision})"
            ));
        }
        let mut single = Vec::with_capacity(len + 1);
        let mut amp_single = Vec::with_capacity(len + 1);
        let mut amp_median = Vec::with_capacity(len + 1);
        for k in 0..=len {
            let pmf = single_run_pmf(k, len, precision)?;
            let law = AmpLaw::fold(precision, &pmf);
            amp_median.push(law.median3());
            amp_single.push(law);
            single.push(pmf);
        }
        Ok(Self {
            len,
            precision,
            single,
            amp_single,
            amp_median,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn single_run(&self, weight: usize) -> &[f64] {
        &self.single[weight]
    }

    pub fn single_amp(&self, weight: usize) -> &AmpLaw {
        &self.amp_single[weight]
    }

    pub fn median_amp(&self, weight: usize) -> &AmpLaw {
        &self.amp_median[weight]
    }
}
