//! Dense statevector simulation of phase estimation and quantum counting.
//!
//! Deliberately literal: operators are explicit matrices, the inverse Fourier
//! transform is a dense `M x M` matrix for any `M`, and a controlled `U^y` is
//! `y` successive applications of `U`. Used to cross-check the closed forms in
//! [`crate::phase_dist`] and [`crate::counting_model`].

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use crate::error::precondition;
use crate::numerics::frac;
use crate::{Error, Result};

mod suite;
pub use suite::{oracle_suite, OracleCheck};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Largest register handled by [`grover_unitary`] (`2^10`).
pub const MAX_GROVER_DIM: usize = 1 << 10;
/// Limits for [`counting_statevector_pmf`].
pub const MAX_COUNTING_DIM: usize = 1 << 8;
pub const MAX_COUNTING_PRECISION: usize = 32;

fn expi(angle: f64) -> Complex64 {
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Vec<Complex64>,
}

impl StateVector {
    pub fn new(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    /// `(1/sqrt(dim)) sum_i |i>`.
    pub fn uniform(dim: usize) -> Self {
        let a = Complex64::new(1.0 / libm::sqrt(dim as f64), 0.0);
        Self {
            amps: alloc::vec![a; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `|1 - <psi|psi>|`.
    pub fn norm_residual(&self) -> f64 {
        (1.0 - self.norm_sqr()).abs()
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `||self - other||_2`.
    pub fn distance(&self, other: &Self) -> f64 {
        libm::sqrt(
            self.amps
                .iter()
                .zip(&other.amps)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum(),
        )
    }

    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }
}

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseUnitary {
    dim: usize,
    entries: Vec<Complex64>,
}

impl DenseUnitary {
    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&alloc::vec![Complex64::new(1.0, 0.0); dim])
    }

    pub fn diagonal(diag: &[Complex64]) -> Self {
        let dim = diag.len();
        let mut entries = alloc::vec![ZERO; dim * dim];
        for (i, d) in diag.iter().enumerate() {
            entries[i * dim + i] = *d;
        }
        Self { dim, entries }
    }

    /// `F^dagger` over `Z_M`: entry `(z, y)` is `e^{-2 pi i y z / M} / sqrt(M)`.
    pub fn inverse_dft(m: usize) -> Self {
        let scale = 1.0 / libm::sqrt(m as f64);
        let mut entries = Vec::with_capacity(m * m);
        for z in 0..m {
            for y in 0..m {
                let r = (y * z) % m;
                entries.push(expi(-2.0 * PI * r as f64 / m as f64) * scale);
            }
        }
        Self { dim: m, entries }
    }

    /// Walsh-Hadamard transform `H^{(x) n}` on `2^n` basis states.
    pub fn hadamard(dim: usize) -> Self {
        let scale = 1.0 / libm::sqrt(dim as f64);
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let sign = if (i & j).count_ones() % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                entries.push(Complex64::new(sign * scale, 0.0));
            }
        }
        Self { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let n = self.dim;
        let mut out = alloc::vec![ZERO; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entries[i * n + k];
                if a == ZERO {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.entries[k * n + j];
                }
            }
        }
        Self {
            dim: n,
            entries: out,
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut entries = alloc::vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        Self { dim: n, entries }
    }

    pub fn apply(&self, v: &StateVector) -> StateVector {
        let n = self.dim;
        let amps = (0..n)
            .map(|i| {
                self.entries[i * n..(i + 1) * n]
                    .iter()
                    .zip(v.amps())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        StateVector::new(amps)
    }

    /// Largest entry of `|U U^dagger - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let prod = self.mul(&self.adjoint());
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((prod.entries[i * n + j] - Complex64::new(want, 0.0)).norm());
            }
        }
        worst
    }
}

/// Phase-estimation outcome law obtained by simulating the register.
pub fn pe_statevector_pmf(precision: usize, phase: f64) -> Result<Vec<f64>> {
    if precision == 0 {
        return Err(precondition!("precision M must be at least 1"));
    }
    let start = StateVector::uniform(precision);
    let kicks: Vec<Complex64> = (0..precision)
        .map(|y| expi(2.0 * PI * frac(phase * y as f64)))
        .collect();
    let kicked = DenseUnitary::diagonal(&kicks).apply(&start);
    let out = DenseUnitary::inverse_dft(precision).apply(&kicked);
    Ok(out.probabilities())
}

/// `U = -H O_0 H O_w`, with `O_w |i> = (-1)^{w_i} |i>` and `O_0` flipping the
/// sign of `|0...0>`.
pub fn grover_unitary(w: &[bool]) -> Result<DenseUnitary> {
    let dim = w.len();
    if !dim.is_power_of_two() {
        return Err(precondition!("string length {dim} is not a power of two"));
    }
    if dim > MAX_GROVER_DIM {
        return Err(Error::Resource(format!(
            "string length {dim} exceeds {MAX_GROVER_DIM}"
        )));
    }
    let one = Complex64::new(1.0, 0.0);
    let oracle: Vec<Complex64> = w.iter().map(|&b| if b { -one } else { one }).collect();
    let mut zero_flip = alloc::vec![one; dim];
    zero_flip[0] = -one;
    let h = DenseUnitary::hadamard(dim);
    let u = h
        .mul(&DenseUnitary::diagonal(&zero_flip))
        .mul(&h)
        .mul(&DenseUnitary::diagonal(&oracle))
        .scale(-one);
    Ok(u)
}

/// Uniform superpositions over the 1-bits and 0-bits of `w`.
fn weight_states(w: &[bool]) -> (StateVector, StateVector) {
    let ones = w.iter().filter(|&&b| b).count();
    let zeros = w.len() - ones;
    let a1 = Complex64::new(1.0 / libm::sqrt(ones as f64), 0.0);
    let a0 = Complex64::new(1.0 / libm::sqrt(zeros as f64), 0.0);
    let psi1 = w.iter().map(|&b| if b { a1 } else { ZERO }).collect();
    let psi0 = w.iter().map(|&b| if b { ZERO } else { a0 }).collect();
    (StateVector::new(psi1), StateVector::new(psi0))
}

/// Residuals of the two-eigenvector picture of the Grover iterate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenReport {
    /// `||U psi_+ - e^{2 i theta} psi_+||`.
    pub residual_plus: f64,
    /// `||U psi_- - e^{-2 i theta} psi_-||`.
    pub residual_minus: f64,
    /// `|<psi_+|psi_->|`.
    pub overlap: f64,
    /// `|| |u> - (sqrt(k/N) psi_1 + sqrt((N-k)/N) psi_0) ||`.
    pub decomposition: f64,
    /// `|<u|psi_+>|^2`, one half in theory.
    pub start_weight_plus: f64,
}

impl EigenReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_plus.max(self.residual_minus)
    }
}

pub fn eigencheck(w: &[bool]) -> Result<EigenReport> {
    let n = w.len();
    let k = w.iter().filter(|&&b| b).count();
    if k == 0 || k == n {
        return Err(precondition!(
            "weight {k} of {n} is degenerate: one of the weight states is undefined"
        ));
    }
    let u = grover_unitary(w)?;
    let theta = libm::asin(libm::sqrt(k as f64 / n as f64));
    let (psi1, psi0) = weight_states(w);
    let s = core::f64::consts::FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    let combine = |sign: f64| {
        StateVector::new(
            psi1.amps()
                .iter()
                .zip(psi0.amps())
                .map(|(a, b)| (a + i * sign * b) * s)
                .collect(),
        )
    };
    let plus = combine(1.0);
    let minus = combine(-1.0);
    let residual_plus = u.apply(&plus).distance(&plus.scaled(expi(2.0 * theta)));
    let residual_minus = u.apply(&minus).distance(&minus.scaled(expi(-2.0 * theta)));

    let start = StateVector::uniform(n);
    let (c1, c0) = (
        libm::sqrt(k as f64 / n as f64),
        libm::sqrt((n - k) as f64 / n as f64),
    );
    let recombined = StateVector::new(
        psi1.amps()
            .iter()
            .zip(psi0.amps())
            .map(|(a, b)| a * c1 + b * c0)
            .collect(),
    );
    Ok(EigenReport {
        residual_plus,
        residual_minus,
        overlap: plus.inner(&minus).norm(),
        decomposition: start.distance(&recombined),
        start_weight_plus: start.inner(&plus).norm_sqr(),
    })
}

/// Full simulation record of one counting run.
#[derive(Debug, Clone, PartialEq)]
pub struct CountingRun {
    /// Marginal outcome law of the first register.
    pub pmf: Vec<f64>,
    /// `|1 - ||psi||^2|` after preparation, controlled powers, and the inverse DFT.
    pub stage_norm_residuals: [f64; 3],
}

/// First-register outcome law of phase estimation on the Grover iterate of
/// `w`, started from the uniform superposition.
pub fn counting_statevector_pmf(w: &[bool], precision: usize) -> Result<Vec<f64>> {
    Ok(counting_statevector_run(w, precision)?.pmf)
}

/// Simulates the joint register (dimension `M * N`) of phase estimation on the
/// Grover iterate and records the state norm after each stage.
pub fn counting_statevector_run(w: &[bool], precision: usize) -> Result<CountingRun> {
    let n = w.len();
    if n > MAX_COUNTING_DIM || precision > MAX_COUNTING_PRECISION {
        return Err(Error::Resource(format!(
            "counting simulation limited to N <= {MAX_COUNTING_DIM}, M <= {MAX_COUNTING_PRECISION} (got N = {n}, M = {precision})"
        )));
    }
    if precision == 0 {
        return Err(precondition!("precision M must be at least 1"));
    }
    let u = grover_unitary(w)?;
    let start = StateVector::uniform(n);
    let weight = Complex64::new(1.0 / libm::sqrt(precision as f64), 0.0);

    let prepared: Vec<Complex64> = (0..precision)
        .flat_map(|_| start.amps().iter().map(move |a| a * weight))
        .collect();

    // |y> (x) U^y |u> / sqrt(M), stored block-wise by y
    let mut joint: Vec<Complex64> = Vec::with_capacity(precision * n);
    for y in 0..precision {
        let mut branch = StateVector::new(prepared[y * n..(y + 1) * n].to_vec());
        for _ in 0..y {
            branch = u.apply(&branch);
        }
        joint.extend_from_slice(branch.amps());
    }

    // inverse DFT on the first register, identity on the second
    let f = DenseUnitary::inverse_dft(precision);
    let mut out = alloc::vec![ZERO; precision * n];
    for z in 0..precision {
        for y in 0..precision {
            let c = f.entry(z, y);
            for i in 0..n {
                out[z * n + i] += c * joint[y * n + i];
            }
        }
    }
    let pmf = (0..precision)
        .map(|z| out[z * n..(z + 1) * n].iter().map(|a| a.norm_sqr()).sum())
        .collect();
    let residual = |v: Vec<Complex64>| StateVector::new(v).norm_residual();
    Ok(CountingRun {
        pmf,
        stage_norm_residuals: [residual(prepared), residual(joint), residual(out)],
    })
}

/// `w` with the first `weight` bits set.
pub fn prefix_string(len: usize, weight: usize) -> Vec<bool> {
    (0..len).map(|i| i < weight).collect()
}
