use alloc::vec::Vec;
use core::f64::consts::PI;
use num_complex::Complex64;

use super::{frac, Evaluable};
use crate::error::precondition;
use crate::Result;

/// `p(x) = sum_{k=-m}^{m} c_k e^{2 pi i k x}`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    /// `coeffs[k + m]` holds `c_k`.
    coeffs: Vec<Complex64>,
    real: bool,
}

impl TrigPoly {
    /// `coeffs` must have odd length `2m + 1`, lowest frequency first.
    pub fn new(coeffs: Vec<Complex64>, real: bool) -> Result<Self> {
        if coeffs.len().is_multiple_of(2) {
            return Err(precondition!(
                "coefficient vector must have odd length, got {}",
                coeffs.len()
            ));
        }
        Ok(Self { coeffs, real })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() / 2
    }

    pub fn is_real(&self) -> bool {
        self.real
    }

    /// Coefficient of frequency `k`; zero outside the stored band.
    pub fn coeff(&self, k: i64) -> Complex64 {
        let m = self.degree() as i64;
        if k.abs() > m {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(k + m) as usize]
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn max_coeff_magnitude(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Largest `|c_{-k} - conj(c_k)|`, relative to the largest coefficient.
    pub fn conjugate_asymmetry(&self) -> f64 {
        let m = self.degree() as i64;
        let scale = self.max_coeff_magnitude();
        if scale == 0.0 {
            return 0.0;
        }
        (0..=m)
            .map(|k| (self.coeff(-k) - self.coeff(k).conj()).norm())
            .fold(0.0, f64::max)
            / scale
    }

    pub fn truncate(&self, degree: usize) -> Self {
        let m = self.degree();
        if degree >= m {
            return self.clone();
        }
        let drop = m - degree;
        Self {
            coeffs: self.coeffs[drop..self.coeffs.len() - drop].to_vec(),
            real: self.real,
        }
    }

    pub fn eval_complex(&self, x: f64) -> Complex64 {
        let m = self.degree() as i64;
        let x = frac(x);
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = i as i64 - m;
            let phase = 2.0 * PI * frac(k as f64 * x);
            acc += c * Complex64::new(libm::cos(phase), libm::sin(phase));
        }
        acc
    }

    /// Real part of the evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.eval_complex(x).re
    }
}

impl Evaluable for TrigPoly {
    fn eval(&self, x: f64) -> f64 {
        TrigPoly::eval(self, x)
    }
}

/// Discrete Fourier analysis of samples at `j / m`, `j = 0..m`, with `m` odd.
///
/// Recovers a trigonometric polynomial of degree at most `(m - 1) / 2` exactly
/// up to rounding. The result is flagged real.
pub fn trig_coeffs_from_samples(values: &[f64]) -> Result<TrigPoly> {
    let m = values.len();
    if m.is_multiple_of(2) {
        return Err(precondition!(
            "sample count must be odd (got {m}); an even count leaves the Nyquist bin ambiguous"
        ));
    }
    let half = (m / 2) as i64;
    let mut coeffs = Vec::with_capacity(m);
    for k in -half..=half {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &v) in values.iter().enumerate() {
            let r = (k * j as i64).rem_euclid(m as i64);
            let phase = -2.0 * PI * r as f64 / m as f64;
            acc += Complex64::new(v * libm::cos(phase), v * libm::sin(phase));
        }
        coeffs.push(acc / m as f64);
    }
    TrigPoly::new(coeffs, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::phase_dist::fejer_value;

    fn samples(m: usize, f: impl Fn(f64) -> f64) -> Vec<f64> {
        (0..m).map(|j| f(j as f64 / m as f64)).collect()
    }

    #[test]
    fn cosine_coefficients() {
        let p = trig_coeffs_from_samples(&samples(9, |x| libm::cos(2.0 * PI * x))).unwrap();
        for k in -4..=4i64 {
            let want = if k.abs() == 1 { 0.5 } else { 0.0 };
            assert!((p.coeff(k) - Complex64::new(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn constant_one() {
        let p = trig_coeffs_from_samples(&[1.0; 5]).unwrap();
        assert!((p.coeff(0).re - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fejer_triangular_profile() {
        // F_3 expands to sum_{|k|<3} (3 - |k|)/3 e^{2 pi i k t}; samples scaled by 1/3
        let p = trig_coeffs_from_samples(&samples(11, |t| fejer_value(3, t) / 3.0)).unwrap();
        for k in -5..=5i64 {
            let want = if k.abs() <= 2 {
                (3 - k.abs()) as f64 / 9.0
            } else {
                0.0
            };
            assert!(
                (p.coeff(k) - Complex64::new(want, 0.0)).norm() < 1e-12,
                "k={k}"
            );
        }
    }

    #[test]
    fn even_count_rejected() {
        assert!(trig_coeffs_from_samples(&[1.0; 4]).is_err());
        assert!(TrigPoly::new(alloc::vec![Complex64::new(1.0, 0.0); 2], true).is_err());
    }

    #[test]
    fn round_trip_and_symmetry() {
        let f = |x: f64| libm::exp(libm::sin(2.0 * PI * x)) + 0.1 * libm::cos(6.0 * PI * x);
        let vals = samples(41, f);
        let p = trig_coeffs_from_samples(&vals).unwrap();
        assert!(p.conjugate_asymmetry() < 1e-10);
        let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        for (j, v) in vals.iter().enumerate() {
            let z = p.eval_complex(j as f64 / 41.0);
            assert!((z.re - v).abs() < 1e-12 * (1.0 + scale));
            assert!(z.im.abs() < 1e-10 * (1.0 + p.max_coeff_magnitude()));
        }
    }
}
