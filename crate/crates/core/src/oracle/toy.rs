//! A two-variable concave function on which hard coordinate ascent stalls.
//!
//! `f(x1, x2) = min(-x1 + x2 + a(x1 + x2), x1 - x2 + a(x1 + x2))` with
//! `0 < a < 1`. From the origin every exact one-dimensional maximization
//! returns the current point, although `f` grows without bound along the
//! diagonal. The soft-min version does make progress.

use alloc::vec::Vec;

use crate::error::OracleError;
use crate::softmin::Temperature;

fn terms(x1: f64, x2: f64, a: f64) -> (f64, f64) {
    ((a - 1.0) * x1 + (1.0 + a) * x2, (1.0 + a) * x1 + (a - 1.0) * x2)
}

fn check_a(a: f64) -> Result<(), OracleError> {
    if a > 0.0 && a < 1.0 {
        Ok(())
    } else {
        Err(OracleError::ParameterOutOfRange)
    }
}

fn temperature(kappa: Option<f64>) -> Result<Temperature, OracleError> {
    match kappa {
        None => Ok(Temperature::Hard),
        Some(k) => Temperature::soft(k).map_err(|_| OracleError::ParameterOutOfRange),
    }
}

/// `f(x1, x2)`, or its soft-min version at inverse temperature `kappa`.
pub fn toy_a5(x1: f64, x2: f64, a: f64, kappa: Option<f64>) -> Result<f64, OracleError> {
    check_a(a)?;
    let t = temperature(kappa)?;
    let (p, q) = terms(x1, x2, a);
    Ok(t.min2(p, q))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToyIterate {
    pub x1: f64,
    pub x2: f64,
    pub value: f64,
}

/// Alternating exact coordinate maximization from the origin.
///
/// Each sweep maximizes over `x1`, then over `x2`, inside the square
/// `[lo, hi]²`. The one-dimensional maximizers are closed-form: `x1 = x2`
/// in the hard case and `x1 = x2 + ln((1+a)/(1-a)) / (2κ)` in the soft case
/// (symmetrically for `x2`), clamped to the box. The trajectory holds the
/// start point followed by one entry per sweep.
pub fn toy_a5_ascent(
    a: f64,
    kappa: Option<f64>,
    bounds: (f64, f64),
    sweeps: usize,
) -> Result<Vec<ToyIterate>, OracleError> {
    check_a(a)?;
    temperature(kappa)?;
    let (lo, hi) = bounds;
    if !(lo <= 0.0 && 0.0 <= hi && lo < hi) {
        return Err(OracleError::ParameterOutOfRange);
    }
    let shift = kappa.map_or(0.0, |k| libm::log((1.0 + a) / (1.0 - a)) / (2.0 * k));
    let (mut x1, mut x2) = (0.0, 0.0);
    let mut out = Vec::with_capacity(sweeps + 1);
    out.push(ToyIterate {
        x1,
        x2,
        value: toy_a5(x1, x2, a, kappa)?,
    });
    for _ in 0..sweeps {
        x1 = (x2 + shift).clamp(lo, hi);
        x2 = (x1 + shift).clamp(lo, hi);
        out.push(ToyIterate {
            x1,
            x2,
            value: toy_a5(x1, x2, a, kappa)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn value_examples() {
        assert_eq!(toy_a5(0.0, 0.0, 0.3, None).unwrap(), 0.0);
        for alpha in [-2.0, 0.5, 7.0] {
            assert_abs_diff_eq!(toy_a5(alpha, alpha, 0.3, None).unwrap(), 2.0 * 0.3 * alpha, epsilon = 1e-12);
        }
        assert_eq!(toy_a5(1.0, 0.0, 0.5, None).unwrap(), -0.5);
        assert!(toy_a5(0.0, 0.0, 1.0, None).is_err());
        assert!(toy_a5(0.0, 0.0, 0.0, None).is_err());
        assert!(toy_a5(0.0, 0.0, 0.5, Some(0.0)).is_err());
    }

    /// Exact 1-D maximizer by dense grid search.
    fn grid_line_max(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> f64 {
        let steps = 200_000;
        (0..=steps)
            .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
            .max_by(|p, q| f(*p).total_cmp(&f(*q)))
            .unwrap()
    }

    #[test]
    fn closed_form_maximizers_match_grid() {
        for kappa in [None, Some(1.0), Some(3.0)] {
            for &x2 in &[-1.3, 0.0, 2.2] {
                let shift = kappa.map_or(0.0, |k: f64| libm::log(1.5 / 0.5) / (2.0 * k));
                let best = grid_line_max(|x1| toy_a5(x1, x2, 0.5, kappa).unwrap(), -10.0, 10.0);
                assert_abs_diff_eq!(best, x2 + shift, epsilon = 2e-4);
            }
        }
    }

    #[test]
    fn hard_ascent_stalls() {
        let path = toy_a5_ascent(0.5, None, (-10.0, 10.0), 100).unwrap();
        assert_eq!(path.len(), 101);
        assert!(path.iter().all(|p| p.value == 0.0 && p.x1 == 0.0 && p.x2 == 0.0));
    }

    #[test]
    fn soft_ascent_progresses_within_box_maximum() {
        let path = toy_a5_ascent(0.5, Some(1.0), (-10.0, 10.0), 100).unwrap();
        assert!(path.iter().any(|p| p.value > 0.0));
        assert!(path.windows(2).all(|w| w[1].value >= w[0].value));
        for kappa in [None, Some(1.0)] {
            let grid = 400;
            let mut best = f64::NEG_INFINITY;
            for p in 0..=grid {
                for q in 0..=grid {
                    let x1 = -10.0 + 20.0 * p as f64 / grid as f64;
                    let x2 = -10.0 + 20.0 * q as f64 / grid as f64;
                    best = best.max(toy_a5(x1, x2, 0.5, kappa).unwrap());
                }
            }
            let path = toy_a5_ascent(0.5, kappa, (-10.0, 10.0), 100).unwrap();
            // The grid step is 0.05 and f is 1.5-Lipschitz per coordinate.
            assert!(path.iter().all(|p| p.value <= best + 0.15));
        }
    }
}
