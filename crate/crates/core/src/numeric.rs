//! Scalar root bracketing and finite-difference derivatives.

use crate::error::{Error, Result};

/// Number of sample points in the coarse sign scan preceding bisection.
pub const SCAN_POINTS: usize = 200;

/// Largest relative disagreement between the h and h/2 central differences.
pub const MAX_STEP_DISAGREEMENT: f64 = 0.05;

/// Sample points for a sign scan of [a, b]. Geometric when both ends share a
/// sign and span more than two decades, linear otherwise.
pub fn scan_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    let geometric = a * b > 0.0 && (b / a).abs().max((a / b).abs()) > 100.0;
    (0..n)
        .map(|k| {
            let t = k as f64 / (n - 1) as f64;
            if k == n - 1 {
                b
            } else if geometric {
                a * (b / a).powf(t)
            } else {
                a + (b - a) * t
            }
        })
        .collect()
}

/// Scans `f` over [a, b] and returns the first sub-interval on which it
/// changes sign, along with the function values at its ends.
pub fn first_sign_change<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let grid = scan_grid(a, b, SCAN_POINTS);
    let mut prev_x = grid[0];
    let mut prev_f = f(prev_x)?;
    if prev_f == 0.0 {
        return Ok((prev_x, prev_x, prev_f, prev_f));
    }
    for &x in &grid[1..] {
        let fx = f(x)?;
        if fx == 0.0 || fx.signum() != prev_f.signum() {
            return Ok((prev_x, x, prev_f, fx));
        }
        prev_x = x;
        prev_f = fx;
    }
    Err(Error::NoSignChange {
        lo: a.min(b),
        hi: a.max(b),
    })
}

/// Bisection on a bracket with f(lo) and f(hi) of opposite sign, stopping
/// when the bracket width drops below `rel_tol` times the midpoint magnitude.
/// Uses geometric midpoints when both ends are nonzero and share a sign.
pub fn bisect<F>(f: &F, mut lo: f64, mut hi: f64, mut f_lo: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if lo == hi {
        return Ok(lo);
    }
    for _ in 0..400 {
        let mid = if lo * hi > 0.0 {
            lo.signum() * (lo * hi).sqrt()
        } else {
            0.5 * (lo + hi)
        };
        if (hi - lo).abs() <= rel_tol * mid.abs() {
            return Ok(mid);
        }
        let f_mid = f(mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Root of `f` in [a, b]: coarse sign scan, then bisection.
pub fn find_root<F>(f: F, a: f64, b: f64, rel_tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (lo, hi, f_lo, _) = first_sign_change(&f, a, b)?;
    bisect(&f, lo, hi, f_lo, rel_tol)
}

/// A derivative together with its estimated truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlopeEstimate {
    pub slope: f64,
    pub error: f64,
}

fn central(f: &impl Fn(f64) -> Result<f64>, x: f64, h: f64) -> Result<f64> {
    Ok((f(x + h)? - f(x - h)?) / (2.0 * h))
}

/// Central difference at steps h and h/2 combined by Richardson
/// extrapolation. Errors with [`Error::StepTooCoarse`] when the two
/// differences disagree by more than [`MAX_STEP_DISAGREEMENT`].
pub fn central_slope<F>(f: F, x: f64, h: f64) -> Result<SlopeEstimate>
where
    F: Fn(f64) -> Result<f64>,
{
    assert!(h > 0.0, "step must be positive");
    let coarse = central(&f, x, h)?;
    let fine = central(&f, x, 0.5 * h)?;
    let diff = (fine - coarse).abs();
    let scale = coarse.abs().max(fine.abs());
    if scale > 0.0 && diff > MAX_STEP_DISAGREEMENT * scale {
        return Err(Error::StepTooCoarse {
            relative: diff / scale,
        });
    }
    Ok(SlopeEstimate {
        slope: fine + (fine - coarse) / 3.0,
        error: diff / 3.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_slope_is_exact() {
        let a = 3.25;
        for &x in &[-2.0, 0.0, 0.5, 7.0] {
            for &h in &[1e-3, 0.1, 1.0] {
                let s = central_slope(|t| Ok(a * t * t), x, h).unwrap();
                // exact up to cancellation in f(x+h) - f(x-h)
                let tol = 4.0 * f64::EPSILON * a * (x.abs() + h).powi(2) / h + 1e-15;
                assert!((s.slope - 2.0 * a * x).abs() <= tol, "{x} {h}");
            }
        }
    }

    #[test]
    fn richardson_improves_cubic() {
        let s = central_slope(|t: f64| Ok(t.powi(3)), 1.0, 0.1).unwrap();
        assert!((s.slope - 3.0).abs() < 1e-12);
        assert!(s.error > 0.0);
    }

    #[test]
    fn coarse_step_rejected() {
        let err = central_slope(|t: f64| Ok((50.0 * t).sin()), 0.0, 0.2).unwrap_err();
        assert_eq!(err.code(), "STEP_TOO_COARSE");
    }

    #[test]
    fn root_of_cosine() {
        let r = find_root(|x: f64| Ok(x.cos()), 0.0, 3.0, 1e-12).unwrap();
        assert!((r - std::f64::consts::FRAC_PI_2).abs() < 1e-11);
        let r = find_root(|x: f64| Ok(x - 2e-5), 1e-7, 1e-2, 1e-9).unwrap();
        assert!((r - 2e-5).abs() < 1e-13);
        let r = find_root(|x: f64| Ok(x + 2e-5), -1e-2, -1e-7, 1e-9).unwrap();
        assert!((r + 2e-5).abs() < 1e-13);
    }

    #[test]
    fn no_sign_change() {
        let err = find_root(|x: f64| Ok(1.0 + x * x), -1.0, 1.0, 1e-6).unwrap_err();
        assert_eq!(err.code(), "NO_SIGN_CHANGE");
    }

    #[test]
    fn scan_grid_ends() {
        let g = scan_grid(1e-7, 1e-3, 200);
        assert_eq!((g[0], g[199]), (1e-7, 1e-3));
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!((g[1] / g[0] - g[199] / g[198]).abs() < 1e-9);
        let g = scan_grid(-1.0, 1.0, 5);
        assert_eq!(g, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
    }
}
