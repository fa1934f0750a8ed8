//! Approximants built from the outcome laws, and their error reports.
//!
//! | method             | budget use                          | degree bound      |
//! |--------------------|-------------------------------------|-------------------|
//! | `bernstein`        | `n` coins                           | `n`               |
//! | `counting_median3` | `N = n^2` coins, `M = n/6 + 1`, 3 runs | `6(M-1) <= n`  |
//! | `counting_single`  | `N = n^2` coins, `M = n/2 + 1`, 1 run  | `2(M-1) <= n`  |
//! | `phase_median3`    | `M = n/3 + 1`, 3 runs               | `3(M-1) <= n`     |
//! | `jackson_kernel`   | kernel `J_{n/2}`                    | `2(n/2 - 1) <= n` |
//!
//! All divisions round down, so no method exceeds its budget for any `n`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::counting_model::{BinomialTable, CountingModel};
use crate::error::precondition;
use crate::numerics::{
    cheb_coeffs_from_samples, chebyshev_nodes, median3_law, modulus_estimate, sup_distance,
    trig_coeffs_from_samples, ChebPoly, Evaluable, Grid, TargetFunction, TrigPoly,
};
use crate::phase_dist::{jackson_kernel, pe_pmf, KernelSpec};
use crate::{Error, Result};

/// Quadrature nodes per unit of kernel degree used by [`build`].
pub const KERNEL_QUAD_FACTOR: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Bernstein,
    CountingMedian3,
    CountingSingle,
    PhaseMedian3,
    JacksonKernel,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Bernstein,
        Method::CountingMedian3,
        Method::CountingSingle,
        Method::PhaseMedian3,
        Method::JacksonKernel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Bernstein => "bernstein",
            Method::CountingMedian3 => "counting_median3",
            Method::CountingSingle => "counting_single",
            Method::PhaseMedian3 => "phase_median3",
            Method::JacksonKernel => "jackson_kernel",
        }
    }

    /// Trigonometric methods need 1-periodic targets.
    pub fn is_trigonometric(self) -> bool {
        matches!(self, Method::PhaseMedian3 | Method::JacksonKernel)
    }

    pub fn listing() -> String {
        let mut s = String::new();
        for (i, m) in Self::ALL.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(m.name());
        }
        s
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| precondition!("unknown method `{s}` (valid: {})", Method::listing()))
    }
}

/// Degree budget `n` and method, with the derived sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub n: usize,
    pub method: Method,
}

impl ConstructionParams {
    pub fn new(method: Method, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(precondition!("degree budget n must be at least 1"));
        }
        Ok(Self { n, method })
    }

    /// Phase-estimation precision `M` (kernel order for `jackson_kernel`,
    /// coin count for `bernstein`).
    pub fn precision(&self) -> usize {
        let n = self.n;
        match self.method {
            Method::Bernstein => n,
            Method::CountingMedian3 => n / 6 + 1,
            Method::CountingSingle => n / 2 + 1,
            Method::PhaseMedian3 => n / 3 + 1,
            Method::JacksonKernel => (n / 2).max(1),
        }
    }

    /// Number of coins `N`.
    pub fn coins(&self) -> usize {
        match self.method {
            Method::CountingMedian3 | Method::CountingSingle => self.n * self.n,
            Method::Bernstein => self.n,
            Method::PhaseMedian3 | Method::JacksonKernel => 0,
        }
    }

    /// Degree the construction is guaranteed not to exceed.
    pub fn degree_bound(&self) -> usize {
        let m = self.precision();
        match self.method {
            Method::Bernstein => self.n,
            Method::CountingMedian3 => 6 * (m - 1),
            Method::CountingSingle => 2 * (m - 1),
            Method::PhaseMedian3 => 3 * (m - 1),
            Method::JacksonKernel => 2 * (m - 1),
        }
    }

    /// True when the budget is too small for the method to do anything but
    /// return the constant `g(0)`.
    pub fn is_degenerate(&self) -> bool {
        match self.method {
            Method::CountingMedian3 | Method::CountingSingle | Method::PhaseMedian3 => {
                self.precision() == 1
            }
            Method::Bernstein | Method::JacksonKernel => false,
        }
    }
}

/// `B_{g,n}(x) = sum_k C(n,k) x^k (1-x)^(n-k) g(k/n)`.
#[derive(Debug, Clone)]
pub struct BernsteinApprox {
    table: BinomialTable,
    values: Vec<f64>,
}

impl BernsteinApprox {
    pub fn new(g: &TargetFunction, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(precondition!("degree n must be at least 1"));
        }
        let values = (0..=n).map(|k| g.eval(k as f64 / n as f64)).collect();
        Ok(Self {
            table: BinomialTable::new(n),
            values,
        })
    }
}

impl Evaluable for BernsteinApprox {
    fn eval(&self, x: f64) -> f64 {
        self.table.expect(x, &self.values).unwrap_or(f64::NAN)
    }
}

/// `p(x) = E_w E[g(A) | |w|]` over `N` coins of bias `x`.
///
/// The conditional means `v_k = E[g(A) | k]` are fixed once per target, so an
/// evaluation costs one binomial sum.
#[derive(Debug, Clone)]
pub struct CountingApprox {
    table: BinomialTable,
    conditional: Vec<f64>,
    precision: usize,
}

impl CountingApprox {
    pub fn new(g: &TargetFunction, coins: usize, precision: usize, median: bool) -> Result<Self> {
        let model = CountingModel::new(coins, precision)?;
        let conditional = (0..=coins)
            .map(|k| {
                let law = if median {
                    model.median_amp(k)
                } else {
                    model.single_amp(k)
                };
                law.expect(|a| g.eval(a))
            })
            .collect();
        Ok(Self {
            table: BinomialTable::new(coins),
            conditional,
            precision,
        })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `E[g(A) | |w| = k]` for each weight.
    pub fn conditional_means(&self) -> &[f64] {
        &self.conditional
    }
}

impl Evaluable for CountingApprox {
    fn eval(&self, x: f64) -> f64 {
        self.table.expect(x, &self.conditional).unwrap_or(f64::NAN)
    }
}

/// `p(x) = E[median(g(Z_1/M), g(Z_2/M), g(Z_3/M))]` with `Z_i` from phase
/// estimation on the `1 x 1` unitary `e^{2 pi i x}`.
#[derive(Debug, Clone)]
pub struct PhaseApprox {
    precision: usize,
    /// Outcomes `z` ordered by `g(z/M)`.
    order: Vec<usize>,
    /// `(value, end)`: outcomes `order[start..end]` share `value`.
    groups: Vec<(f64, usize)>,
}

impl PhaseApprox {
    pub fn new(g: &TargetFunction, precision: usize) -> Result<Self> {
        if !g.is_periodic() {
            return Err(precondition!(
                "phase construction needs a 1-periodic target; `{}` is not",
                g.name()
            ));
        }
        if precision == 0 {
            return Err(precondition!("precision M must be at least 1"));
        }
        let values: Vec<f64> = (0..precision)
            .map(|z| g.eval(z as f64 / precision as f64))
            .collect();
        if let Some(z) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                x: z as f64 / precision as f64,
            });
        }
        let mut order: Vec<usize> = (0..precision).collect();
        order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
        let mut groups: Vec<(f64, usize)> = Vec::new();
        for (i, &z) in order.iter().enumerate() {
            match groups.last_mut() {
                Some((v, end)) if *v == values[z] => *end = i + 1,
                _ => groups.push((values[z], i + 1)),
            }
        }
        Ok(Self {
            precision,
            order,
            groups,
        })
    }

    pub fn precision(&self) -> usize {
        self.precision
    }
}

impl Evaluable for PhaseApprox {
    fn eval(&self, x: f64) -> f64 {
        let Ok(pmf) = pe_pmf(self.precision, x) else {
            return f64::NAN;
        };
        let probs = pmf.probs();
        let mut start = 0;
        let grouped: Vec<f64> = self
            .groups
            .iter()
            .map(|&(_, end)| {
                let mass = self.order[start..end].iter().map(|&z| probs[z]).sum();
                start = end;
                mass
            })
            .collect();
        median3_law(&grouped)
            .iter()
            .zip(&self.groups)
            .map(|(q, (v, _))| q * v)
            .sum()
    }
}

/// `(g * K)(x) = int_0^1 g(s) K(s - x) ds` by the uniform rule.
#[derive(Debug, Clone)]
pub struct KernelConvolution {
    kernel: KernelSpec,
    samples: Vec<f64>,
}

impl KernelConvolution {
    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn quad_points(&self) -> usize {
        self.samples.len()
    }
}

impl Evaluable for KernelConvolution {
    fn eval(&self, x: f64) -> f64 {
        let q = self.samples.len() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(|(j, g)| g * self.kernel.value(j as f64 / q - x))
            .sum::<f64>()
            / q
    }
}

/// Convolve a periodic target with `kernel` on `quad_points` uniform nodes.
///
/// The result is a trigonometric polynomial of degree at most the kernel's,
/// whatever the target.
pub fn kernel_convolve(
    g: &TargetFunction,
    kernel: KernelSpec,
    quad_points: usize,
) -> Result<KernelConvolution> {
    if !g.is_periodic() {
        return Err(precondition!(
            "kernel convolution needs a 1-periodic target; `{}` is not",
            g.name()
        ));
    }
    let need = 8 * (kernel.trig_degree() + 1);
    if quad_points < need {
        return Err(precondition!(
            "quad_points {quad_points} below 8 * (degree + 1) = {need}"
        ));
    }
    let samples: Vec<f64> = (0..quad_points)
        .map(|j| g.eval(j as f64 / quad_points as f64))
        .collect();
    if let Some(j) = samples.iter().position(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            x: j as f64 / quad_points as f64,
        });
    }
    Ok(KernelConvolution { kernel, samples })
}

/// A constructed approximant.
#[derive(Debug, Clone)]
pub enum Approximant {
    Bernstein(BernsteinApprox),
    Counting(CountingApprox),
    Phase(PhaseApprox),
    Kernel(KernelConvolution),
}

impl Evaluable for Approximant {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Approximant::Bernstein(a) => a.eval(x),
            Approximant::Counting(a) => a.eval(x),
            Approximant::Phase(a) => a.eval(x),
            Approximant::Kernel(a) => a.eval(x),
        }
    }
}

fn check_domain(g: &TargetFunction, method: Method) -> Result<()> {
    if method.is_trigonometric() && !g.is_periodic() {
        return Err(precondition!(
            "method {method} needs a 1-periodic target; `{}` is not periodic",
            g.name()
        ));
    }
    Ok(())
}

/// Build the approximant for `g` under `params`.
pub fn build(g: &TargetFunction, params: ConstructionParams) -> Result<Approximant> {
    check_domain(g, params.method)?;
    let m = params.precision();
    Ok(match params.method {
        Method::Bernstein => Approximant::Bernstein(BernsteinApprox::new(g, params.n)?),
        Method::CountingMedian3 => {
            Approximant::Counting(CountingApprox::new(g, params.coins(), m, true)?)
        }
        Method::CountingSingle => {
            Approximant::Counting(CountingApprox::new(g, params.coins(), m, false)?)
        }
        Method::PhaseMedian3 => Approximant::Phase(PhaseApprox::new(g, m)?),
        Method::JacksonKernel => {
            let kernel = jackson_kernel(m)?;
            let q = KERNEL_QUAD_FACTOR * (kernel.trig_degree() + 1);
            Approximant::Kernel(kernel_convolve(g, kernel, q)?)
        }
    })
}

pub fn bernstein_eval(g: &TargetFunction, n: usize, x: f64) -> Result<f64> {
    Ok(BernsteinApprox::new(g, n)?.eval(x))
}

/// One-off evaluation of a counting or phase construction. Prefer [`build`]
/// when evaluating many points: the per-target precomputation dominates.
pub fn construct_eval(g: &TargetFunction, params: ConstructionParams, x: f64) -> Result<f64> {
    Ok(build(g, params)?.eval(x))
}

pub fn counting_eval(g: &TargetFunction, n: usize, x: f64) -> Result<f64> {
    construct_eval(g, ConstructionParams::new(Method::CountingMedian3, n)?, x)
}

pub fn counting_single_eval(g: &TargetFunction, n: usize, x: f64) -> Result<f64> {
    construct_eval(g, ConstructionParams::new(Method::CountingSingle, n)?, x)
}

pub fn phase_eval(g: &TargetFunction, n: usize, x: f64) -> Result<f64> {
    construct_eval(g, ConstructionParams::new(Method::PhaseMedian3, n)?, x)
}

/// Fourier coefficients of the phase construction, recovered from `2n + 3`
/// equispaced samples (enough for degree `3(M-1) <= n`).
pub fn phase_to_trigpoly(g: &TargetFunction, n: usize) -> Result<TrigPoly> {
    let approx = build(g, ConstructionParams::new(Method::PhaseMedian3, n)?)?;
    sample_trigpoly(&approx, 2 * n + 3)
}

fn sample_trigpoly(h: &impl Evaluable, count: usize) -> Result<TrigPoly> {
    let values: Vec<f64> = (0..count)
        .map(|j| h.eval(j as f64 / count as f64))
        .collect();
    trig_coeffs_from_samples(&values)
}

/// Exact coefficients of an approximant in its natural basis: Chebyshev for
/// algebraic methods, Fourier for trigonometric ones.
#[derive(Debug, Clone, PartialEq)]
pub enum Coefficients {
    Chebyshev(ChebPoly),
    Fourier(TrigPoly),
}

/// Interpolates the approximant at `degree_bound + 1` Chebyshev nodes or
/// `2 * degree_bound + 1` equispaced nodes, which is exact for a polynomial of
/// that degree.
pub fn coefficients(approx: &Approximant, params: ConstructionParams) -> Result<Coefficients> {
    let d = params.degree_bound();
    if params.method.is_trigonometric() {
        Ok(Coefficients::Fourier(sample_trigpoly(approx, 2 * d + 1)?))
    } else {
        let values: Vec<f64> = chebyshev_nodes(d + 1)
            .iter()
            .map(|&x| approx.eval(x))
            .collect();
        Ok(Coefficients::Chebyshev(cheb_coeffs_from_samples(&values)?))
    }
}

/// Measured uniform error of a construction against `omega_{1/n}(g)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub method: Method,
    pub n: usize,
    pub precision: usize,
    pub sup_err: f64,
    pub omega_ref: f64,
    /// Whether `omega_ref` is the exact modulus or a grid estimate.
    pub omega_analytic: bool,
    /// `sup_err / omega_ref`, or 0 when `omega_ref` is 0.
    pub ratio: f64,
    pub grid_size: usize,
    pub degenerate: bool,
}

/// `omega_{1/n}(g)`: exact when the target carries its modulus, otherwise the
/// grid estimate (on a refined uniform grid if `grid` is too coarse).
pub fn reference_modulus(g: &TargetFunction, n: usize, grid: &Grid) -> Result<(f64, bool)> {
    let delta = 1.0 / n as f64;
    if let Some(w) = g.analytic_modulus(delta) {
        return Ok((w, true));
    }
    let est = if grid.max_spacing() <= delta / 8.0 {
        modulus_estimate(g, delta, grid)?
    } else {
        modulus_estimate(g, delta, &Grid::uniform(16 * n + 1)?)?
    };
    Ok((est, false))
}

pub fn error_report_for(
    g: &TargetFunction,
    params: ConstructionParams,
    approx: &Approximant,
    grid: &Grid,
) -> Result<ErrorReport> {
    check_domain(g, params.method)?;
    let sup_err = sup_distance(g, approx, grid)?;
    let (omega_ref, omega_analytic) = reference_modulus(g, params.n, grid)?;
    let ratio = if omega_ref > 0.0 {
        sup_err / omega_ref
    } else {
        0.0
    };
    Ok(ErrorReport {
        method: params.method,
        n: params.n,
        precision: params.precision(),
        sup_err,
        omega_ref,
        omega_analytic,
        ratio,
        grid_size: grid.len(),
        degenerate: params.is_degenerate(),
    })
}

/// Build the construction and measure it on `grid`.
pub fn error_report(
    g: &TargetFunction,
    params: ConstructionParams,
    grid: &Grid,
) -> Result<ErrorReport> {
    let approx = build(g, params)?;
    error_report_for(g, params, &approx, grid)
}

/// Default grid size for error reports.
pub const REPORT_GRID: usize = 4097;
