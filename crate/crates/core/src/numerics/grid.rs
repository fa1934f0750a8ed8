use alloc::collections::VecDeque;
use alloc::vec::Vec;

use super::{chebyshev_nodes, Evaluable};
use crate::error::precondition;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridKind {
    Uniform,
    Chebyshev,
    Explicit,
}

/// Strictly increasing, nonempty set of points in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    kind: GridKind,
}

impl Grid {
    /// `count` equispaced points `j / (count - 1)`, endpoints included.
    pub fn uniform(count: usize) -> Result<Self> {
        if count < 2 {
            return Err(precondition!(
                "uniform grid needs at least 2 points, got {count}"
            ));
        }
        let last = (count - 1) as f64;
        let points = (0..count).map(|j| j as f64 / last).collect();
        Ok(Self {
            points,
            kind: GridKind::Uniform,
        })
    }

    /// Chebyshev points of the first kind mapped to `[0, 1]`, ascending.
    pub fn chebyshev(count: usize) -> Result<Self> {
        if count == 0 {
            return Err(precondition!("chebyshev grid needs at least 1 point"));
        }
        Ok(Self {
            points: chebyshev_nodes(count),
            kind: GridKind::Chebyshev,
        })
    }

    pub fn explicit(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(precondition!("grid must be nonempty"));
        }
        if let Some(&p) = points.iter().find(|p| !(0.0..=1.0).contains(*p)) {
            return Err(precondition!("grid point {p} outside [0, 1]"));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(precondition!("grid points must be strictly increasing"));
        }
        Ok(Self {
            points,
            kind: GridKind::Explicit,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest gap between consecutive points.
    pub fn max_spacing(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(0.0, f64::max)
    }
}

fn sample(f: &impl Evaluable, x: f64) -> Result<f64> {
    let v = f.eval(x);
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite { x })
    }
}

/// `max |f(x) - h(x)|` over the grid; a lower bound on the sup-norm distance.
pub fn sup_distance(f: &impl Evaluable, h: &impl Evaluable, grid: &Grid) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &x in grid.points() {
        let d = (sample(f, x)? - sample(h, x)?).abs();
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Grid lower bound on the modulus of continuity `omega_delta(f)`.
///
/// The maximum of `|f(x) - f(y)|` over grid pairs at most `delta` apart equals
/// the largest `max - min` spread over windows of width `delta`, which a pair
/// of monotone deques tracks in one pass.
pub fn modulus_estimate(f: &impl Evaluable, delta: f64, grid: &Grid) -> Result<f64> {
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(precondition!("delta must lie in (0, 1], got {delta}"));
    }
    if grid.max_spacing() > delta / 8.0 {
        return Err(precondition!(
            "grid spacing {} too coarse for delta = {delta} (need <= delta/8)",
            grid.max_spacing()
        ));
    }
    let pts = grid.points();
    let vals = pts
        .iter()
        .map(|&x| sample(f, x))
        .collect::<Result<Vec<f64>>>()?;
    // pair spacings are differences of rounded points
    let reach = delta * (1.0 + 1e-12);

    let mut hi: VecDeque<usize> = VecDeque::new();
    let mut lo: VecDeque<usize> = VecDeque::new();
    let mut best: f64 = 0.0;
    let mut left = 0;
    for right in 0..pts.len() {
        while hi.back().is_some_and(|&i| vals[i] <= vals[right]) {
            hi.pop_back();
        }
        hi.push_back(right);
        while lo.back().is_some_and(|&i| vals[i] >= vals[right]) {
            lo.pop_back();
        }
        lo.push_back(right);
        while pts[right] - pts[left] > reach {
            left += 1;
            if hi.front() == Some(&(left - 1)) {
                hi.pop_front();
            }
            if lo.front() == Some(&(left - 1)) {
                lo.pop_front();
            }
        }
        let (&h, &l) = (hi.front().unwrap(), lo.front().unwrap());
        best = best.max(vals[h] - vals[l]);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::corpus;

    #[test]
    fn grid_constructors_validate() {
        assert!(Grid::uniform(1).is_err());
        assert!(Grid::explicit(alloc::vec![]).is_err());
        assert!(Grid::explicit(alloc::vec![0.1, 0.1]).is_err());
        assert!(Grid::explicit(alloc::vec![0.1, 1.2]).is_err());
        let g = Grid::chebyshev(9).unwrap();
        assert!(g.points().windows(2).all(|w| w[0] < w[1]));
        assert_eq!(
            Grid::uniform(5).unwrap().points(),
            &[0.0, 0.25, 0.5, 0.75, 1.0]
        );
    }

    #[test]
    fn sup_distance_examples() {
        let g = Grid::uniform(101).unwrap();
        let id = |x: f64| x;
        assert_eq!(sup_distance(&id, &id, &g).unwrap(), 0.0);
        let shifted = |x: f64| x + 0.25;
        assert!((sup_distance(&id, &shifted, &g).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn sup_distance_reports_bad_point() {
        let g = Grid::uniform(5).unwrap();
        let bad = |x: f64| if x == 0.5 { f64::NAN } else { x };
        let id = |x: f64| x;
        assert_eq!(
            sup_distance(&id, &bad, &g),
            Err(Error::NonFinite { x: 0.5 })
        );
    }

    #[test]
    fn modulus_examples() {
        let g = Grid::uniform(1001).unwrap();
        let id = |x: f64| x;
        assert!((modulus_estimate(&id, 0.1, &g).unwrap() - 0.1).abs() < 1e-12);
        let kink = corpus::by_name("abs-half").unwrap();
        assert!((modulus_estimate(&kink, 0.2, &g).unwrap() - 0.2).abs() < 1e-12);

        let fine = Grid::uniform(1_000_001).unwrap();
        let sqrt = corpus::by_name("sqrt").unwrap();
        let est = modulus_estimate(&sqrt, 0.01, &fine).unwrap();
        assert!((est - 0.1).abs() < 2e-3, "{est}");
        assert!(est <= sqrt.analytic_modulus(0.01).unwrap() + 1e-15);
    }

    #[test]
    fn modulus_matches_pairwise_scan() {
        let g = Grid::uniform(257).unwrap();
        for f in corpus::all() {
            for delta in [0.05, 0.1, 0.3] {
                let pts = g.points();
                let mut brute: f64 = 0.0;
                for i in 0..pts.len() {
                    for j in i..pts.len() {
                        if pts[j] - pts[i] <= delta * (1.0 + 1e-12) {
                            brute = brute.max((f.eval(pts[j]) - f.eval(pts[i])).abs());
                        }
                    }
                }
                assert_eq!(
                    modulus_estimate(&f, delta, &g).unwrap(),
                    brute,
                    "{}",
                    f.name()
                );
            }
        }
    }

    #[test]
    fn modulus_refuses_coarse_grid() {
        let g = Grid::uniform(11).unwrap();
        assert!(matches!(
            modulus_estimate(&|x: f64| x, 0.1, &g),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn modulus_monotone_and_subadditive() {
        let g = Grid::uniform(2049).unwrap();
        let finest = 8.0 * g.max_spacing();
        for f in corpus::all() {
            let deltas = [0.02, 0.05, 0.1, 0.2, 0.4];
            let w: alloc::vec::Vec<f64> = deltas
                .iter()
                .map(|&d| modulus_estimate(&f, d, &g).unwrap())
                .collect();
            assert!(w.windows(2).all(|p| p[0] <= p[1]), "{}", f.name());
            for (i, &a) in deltas.iter().enumerate() {
                for (j, &b) in deltas.iter().enumerate() {
                    if a + b <= 1.0 {
                        let sum = modulus_estimate(&f, a + b, &g).unwrap();
                        // grid slack: variation over the finest admissible window
                        let tol = modulus_estimate(&f, finest, &g).unwrap();
                        assert!(sum <= w[i] + w[j] + 2.0 * tol, "{} {a} {b}", f.name());
                    }
                }
            }
        }
    }
}
