//! Dense complex linear systems.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots smaller than this fraction of the largest entry of their original
/// column are treated as zero.
pub const PIVOT_THRESHOLD: f64 = 1e-14;

/// A square system `A x = b` with `A` stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProblem {
    n: usize,
    matrix: Vec<Complex64>,
    rhs: Vec<Complex64>,
}

impl LinearProblem {
    pub fn zeros(n: usize) -> Self {
        LinearProblem {
            n,
            matrix: vec![Complex64::new(0.0, 0.0); n * n],
            rhs: vec![Complex64::new(0.0, 0.0); n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Complex64>>, rhs: Vec<Complex64>) -> Self {
        let n = rhs.len();
        assert_eq!(rows.len(), n, "matrix must be square");
        let mut matrix = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "matrix must be square");
            matrix.extend(row);
        }
        LinearProblem { n, matrix, rhs }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn a(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[row * self.n + col]
    }

    pub fn a_mut(&mut self, row: usize, col: usize) -> &mut Complex64 {
        &mut self.matrix[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[Complex64] {
        &self.matrix[row * self.n..(row + 1) * self.n]
    }

    pub fn rhs(&self) -> &[Complex64] {
        &self.rhs
    }

    pub fn rhs_mut(&mut self) -> &mut [Complex64] {
        &mut self.rhs
    }

    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        (0..self.n)
            .map(|r| self.row(r).iter().zip(x).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `max|Ax - b| / max|b|` (absolute when `b` vanishes).
    pub fn relative_residual(&self, x: &[Complex64]) -> f64 {
        let ax = self.apply(x);
        let num = ax
            .iter()
            .zip(&self.rhs)
            .map(|(l, r)| (l - r).norm())
            .fold(0.0, f64::max);
        let den = self.rhs.iter().map(|b| b.norm()).fold(0.0, f64::max);
        if den > 0.0 {
            num / den
        } else {
            num
        }
    }
}

/// Gaussian elimination with partial pivoting.
pub fn solve_linear(lp: &LinearProblem) -> Result<Vec<Complex64>> {
    let n = lp.n;
    let mut a = lp.matrix.clone();
    let mut b = lp.rhs.clone();

    let col_scale: Vec<f64> = (0..n)
        .map(|c| (0..n).map(|r| a[r * n + c].norm()).fold(0.0, f64::max))
        .collect();

    for k in 0..n {
        let (p, pivot) = (k..n)
            .map(|r| (r, a[r * n + k].norm()))
            .fold(
                (k, -1.0),
                |best, cur| if cur.1 > best.1 { cur } else { best },
            );
        let threshold = PIVOT_THRESHOLD * col_scale[k];
        if pivot <= threshold || pivot == 0.0 {
            return Err(Error::Singular {
                column: k,
                pivot,
                threshold,
            });
        }
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            b.swap(k, p);
        }
        let inv = 1.0 / a[k * n + k];
        for r in k + 1..n {
            let factor = a[r * n + k] * inv;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            a[r * n + k] = Complex64::new(0.0, 0.0);
            for c in k + 1..n {
                let akc = a[k * n + c];
                a[r * n + c] -= factor * akc;
            }
            let bk = b[k];
            b[r] -= factor * bk;
        }
    }

    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut acc = b[k];
        for c in k + 1..n {
            acc -= a[k * n + c] * x[c];
        }
        x[k] = acc / a[k * n + k];
    }
    Ok(x)
}
