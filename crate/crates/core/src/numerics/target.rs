use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::{frac, Evaluable, Grid};
use crate::error::precondition;
use crate::Result;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A continuous function on `[0, 1]`, or on all of `R` when `periodic`.
///
/// Periodic evaluators are expected to reduce their argument mod 1 before doing
/// anything else so that `f(x) == f(x + 1)` holds bit-for-bit on dyadic grids.
#[derive(Clone)]
pub struct TargetFunction {
    name: String,
    periodic: bool,
    evaluator: RealFn,
    modulus: Option<RealFn>,
}

impl TargetFunction {
    pub fn new<F>(name: impl Into<String>, evaluator: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            periodic: false,
            evaluator: Arc::new(evaluator),
            modulus: None,
        }
    }

    pub fn periodic<F>(name: impl Into<String>, evaluator: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            periodic: true,
            ..Self::new(name, evaluator)
        }
    }

    /// Attach the exact modulus of continuity `delta -> omega_delta(f)`.
    pub fn with_modulus<F>(mut self, modulus: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.modulus = Some(Arc::new(modulus));
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn analytic_modulus(&self, delta: f64) -> Option<f64> {
        self.modulus.as_ref().map(|m| m(delta))
    }

    pub fn has_analytic_modulus(&self) -> bool {
        self.modulus.is_some()
    }

    /// Checks `f(x) == f(x + 1)` exactly at every grid point.
    pub fn check_periodicity(&self, grid: &Grid) -> Result<()> {
        if !self.periodic {
            return Err(precondition!("{} is not flagged periodic", self.name));
        }
        for &x in grid.points() {
            let (a, b) = (self.eval(x), self.eval(x + 1.0));
            if a != b {
                return Err(precondition!(
                    "{} is not 1-periodic at x = {x}: {a} != {b}",
                    self.name
                ));
            }
        }
        Ok(())
    }

    /// Checks `|f(x) - f(y)| <= omega(|x - y|)` for every pair of grid points.
    pub fn check_modulus(&self, grid: &Grid) -> Result<()> {
        let Some(modulus) = &self.modulus else {
            return Ok(());
        };
        let pts = grid.points();
        let vals: Vec<f64> = pts.iter().map(|&x| self.eval(x)).collect();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let bound = modulus(pts[j] - pts[i]);
                let diff = (vals[j] - vals[i]).abs();
                if diff > bound * (1.0 + 1e-12) + 1e-15 {
                    return Err(precondition!(
                        "{}: |f({}) - f({})| = {diff} exceeds modulus {bound}",
                        self.name,
                        pts[i],
                        pts[j]
                    ));
                }
            }
        }
        Ok(())
    }
}

impl Evaluable for TargetFunction {
    fn eval(&self, x: f64) -> f64 {
        (self.evaluator)(x)
    }
}

impl fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TargetFunction")
            .field("name", &self.name)
            .field("periodic", &self.periodic)
            .field("analytic_modulus", &self.modulus.is_some())
            .finish()
    }
}

/// Piecewise-linear interpolant through `(x_i, y_i)` knots spanning `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    xs: Vec<f64>,
    ys: Vec<f64>,
    periodic: bool,
}

impl PiecewiseLinear {
    /// Knots must be finite, strictly increasing in `x`, start at 0 and end at 1.
    /// Periodic data additionally needs `y(0) == y(1)`.
    pub fn new(xs: Vec<f64>, ys: Vec<f64>, periodic: bool) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(precondition!(
                "{} abscissae but {} ordinates",
                xs.len(),
                ys.len()
            ));
        }
        if xs.len() < 2 {
            return Err(precondition!("need at least two knots, got {}", xs.len()));
        }
        if let Some(i) = xs.iter().chain(&ys).position(|v| !v.is_finite()) {
            return Err(precondition!("non-finite value in knot data (entry {i})"));
        }
        if xs[0] != 0.0 || xs[xs.len() - 1] != 1.0 {
            return Err(precondition!(
                "knots must span [0, 1] exactly, got [{}, {}]",
                xs[0],
                xs[xs.len() - 1]
            ));
        }
        if let Some(w) = xs.windows(2).position(|w| w[1] <= w[0]) {
            return Err(precondition!(
                "abscissae must be strictly increasing (rows {} and {})",
                w + 1,
                w + 2
            ));
        }
        if periodic && ys[0] != ys[ys.len() - 1] {
            return Err(precondition!(
                "periodic target needs y(0) == y(1), got {} and {}",
                ys[0],
                ys[ys.len() - 1]
            ));
        }
        Ok(Self { xs, ys, periodic })
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = if self.periodic {
            frac(x)
        } else {
            x.clamp(0.0, 1.0)
        };
        let i = self
            .xs
            .partition_point(|&k| k <= x)
            .clamp(1, self.xs.len() - 1);
        let (x0, x1) = (self.xs[i - 1], self.xs[i]);
        let (y0, y1) = (self.ys[i - 1], self.ys[i]);
        y0 + (y1 - y0) * (x - x0) / (x1 - x0)
    }

    pub fn into_target(self, name: impl Into<String>) -> TargetFunction {
        let periodic = self.periodic;
        let f = move |x: f64| self.eval(x);
        if periodic {
            TargetFunction::periodic(name, f)
        } else {
            TargetFunction::new(name, f)
        }
    }
}

/// Built-in targets with exact moduli of continuity.
pub mod corpus {
    use super::*;
    use core::f64::consts::PI;

    pub const ALGEBRAIC: &[&str] = &["abs-half", "sqrt", "identity", "constant", "holder-cusp"];
    pub const PERIODIC: &[&str] = &["triangle", "cos", "constant-periodic"];

    /// Every corpus name, algebraic targets first.
    pub fn names() -> impl Iterator<Item = &'static str> {
        ALGEBRAIC.iter().chain(PERIODIC).copied()
    }

    pub fn by_name(name: &str) -> Option<TargetFunction> {
        let f = match name {
            "abs-half" => TargetFunction::new(name, |x: f64| (x - 0.5).abs())
                .with_modulus(|d: f64| d.min(0.5)),
            "sqrt" => TargetFunction::new(name, |x: f64| libm::sqrt(x.max(0.0)))
                .with_modulus(|d: f64| libm::sqrt(d.min(1.0))),
            "identity" => TargetFunction::new(name, |x: f64| x).with_modulus(|d: f64| d.min(1.0)),
            "constant" => TargetFunction::new(name, |_| 0.75).with_modulus(|_| 0.0),
            // |x - 1/3|^(1/2) reaches sqrt(2/3) at x = 1
            "holder-cusp" => TargetFunction::new(name, |x: f64| libm::sqrt((x - 1.0 / 3.0).abs()))
                .with_modulus(|d: f64| libm::sqrt(d.min(2.0 / 3.0))),
            "triangle" => {
                TargetFunction::periodic(name, |x: f64| 1.0 - 2.0 * (frac(x) - 0.5).abs())
                    .with_modulus(|d: f64| (2.0 * d).min(1.0))
            }
            "cos" => TargetFunction::periodic(name, |x: f64| libm::cos(2.0 * PI * frac(x)))
                .with_modulus(|d: f64| 2.0 * libm::sin(PI * d.min(0.5))),
            "constant-periodic" => TargetFunction::periodic(name, |_| -0.25).with_modulus(|_| 0.0),
            _ => return None,
        };
        Some(f)
    }

    pub fn algebraic() -> Vec<TargetFunction> {
        ALGEBRAIC.iter().filter_map(|n| by_name(n)).collect()
    }

    pub fn periodic() -> Vec<TargetFunction> {
        PERIODIC.iter().filter_map(|n| by_name(n)).collect()
    }

    pub fn all() -> Vec<TargetFunction> {
        names().filter_map(by_name).collect()
    }

    /// Comma-separated corpus names, for error messages.
    pub fn listing() -> String {
        let mut s = String::new();
        for (i, n) in names().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(n);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_moduli_hold_on_grid() {
        let grid = Grid::uniform(257).unwrap();
        for f in corpus::all() {
            f.check_modulus(&grid).unwrap();
        }
    }

    #[test]
    fn periodic_corpus_is_exactly_periodic() {
        let grid = Grid::uniform(4097).unwrap();
        for f in corpus::periodic() {
            f.check_periodicity(&grid).unwrap();
        }
        assert!(corpus::by_name("sqrt")
            .unwrap()
            .check_periodicity(&grid)
            .is_err());
    }

    #[test]
    fn every_name_resolves() {
        for n in corpus::names() {
            let f = corpus::by_name(n).unwrap();
            assert_eq!(f.name(), n);
            assert!(f.has_analytic_modulus());
        }
        assert!(corpus::by_name("nope").is_none());
    }

    #[test]
    fn piecewise_linear_validation() {
        use alloc::vec;
        let ok = PiecewiseLinear::new(vec![0.0, 0.5, 1.0], vec![0.0, 1.0, 0.0], true).unwrap();
        assert_eq!(ok.eval(0.25), 0.5);
        assert_eq!(ok.eval(1.25), 0.5);
        assert_eq!(ok.eval(1.0), 0.0);
        assert!(PiecewiseLinear::new(vec![0.0, 0.5, 0.5, 1.0], vec![0.0; 4], false).is_err());
        assert!(PiecewiseLinear::new(vec![0.1, 1.0], vec![0.0; 2], false).is_err());
        assert!(PiecewiseLinear::new(vec![0.0, 0.9], vec![0.0; 2], false).is_err());
        assert!(PiecewiseLinear::new(vec![0.0, 1.0], vec![0.0, 1.0], true).is_err());
        assert!(PiecewiseLinear::new(vec![0.0, 1.0], vec![0.0, 1.0], false).is_ok());
    }
}
