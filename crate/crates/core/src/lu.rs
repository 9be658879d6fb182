//! LU factorization with partial pivoting.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::tol::PIVOT_TOL;
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// `PA = LU` packed in one row-major buffer, unit lower triangle implied.
#[derive(Clone, Debug)]
pub struct LuFactors {
    n: usize,
    lu: Vec<Complex>,
    perm: Vec<usize>,
    one_norm: f64,
    min_pivot: f64,
}

impl LuFactors {
    /// Factors `a`, failing with `SingularMatrix` when a pivot magnitude
    /// drops below `PIVOT_TOL · max|a_ij|`.
    pub fn factor(a: &ComplexMatrix) -> Result<Self> {
        Self::factor_with(a, PIVOT_TOL, false)
    }

    /// Factors `a` without ever failing: pivots below the threshold are
    /// replaced by `PIVOT_TOL · max|a_ij|`. Used by inverse iteration, where
    /// an exactly singular shift is the point.
    pub(crate) fn factor_regularized(a: &ComplexMatrix) -> Result<Self> {
        Self::factor_with(a, PIVOT_TOL, true)
    }

    fn factor_with(a: &ComplexMatrix, rel_tol: f64, regularize: bool) -> Result<Self> {
        let n = a.require_square()?;
        let mut lu = a.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = a.max_abs();
        let threshold = rel_tol * scale;
        let mut min_pivot = f64::INFINITY;

        for k in 0..n {
            let (p, pmag) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold((k, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
            }
            if pmag <= threshold || pmag == 0.0 {
                if !regularize {
                    return Err(Error::SingularMatrix { pivot_index: k, pivot: pmag });
                }
                let tiny = if threshold > 0.0 { threshold } else { f64::MIN_POSITIVE };
                lu[k * n + k] = Complex::new(tiny, 0.0);
            }
            let pivot = lu[k * n + k];
            min_pivot = min_pivot.min(pivot.norm());
            let inv = pivot.inv();
            for i in (k + 1)..n {
                let factor = lu[i * n + k] * inv;
                lu[i * n + k] = factor;
                if factor == ZERO {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = lu[k * n + j];
                    lu[i * n + j] -= factor * u;
                }
            }
        }
        Ok(Self { n, lu, perm, one_norm: a.one_norm(), min_pivot })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest pivot magnitude encountered.
    pub fn min_pivot(&self) -> f64 {
        self.min_pivot
    }

    /// Solves `A x = b` for one right-hand side.
    pub fn solve_vec(&self, b: &[Complex]) -> Vec<Complex> {
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut x: Vec<Complex> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in (i + 1)..n {
                s -= self.lu[i * n + j] * x[j];
            }
            x[i] = s / self.lu[i * n + i];
        }
        x
    }

    /// Solves `A* x = b`.
    pub fn solve_adjoint_vec(&self, b: &[Complex]) -> Vec<Complex> {
        // A = Pᵀ L U, so A* = U* L* P and A* x = b becomes U* w = b, L* z = w, x = Pᵀ z.
        let n = self.n;
        assert_eq!(b.len(), n);
        let mut w = b.to_vec();
        for i in 0..n {
            let mut s = w[i];
            for j in 0..i {
                s -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = s / self.lu[i * n + i].conj();
        }
        for i in (0..n).rev() {
            let mut s = w[i];
            for j in (i + 1)..n {
                s -= self.lu[j * n + i].conj() * w[j];
            }
            w[i] = s;
        }
        let mut x = vec![ZERO; n];
        for (k, &p) in self.perm.iter().enumerate() {
            x[p] = w[k];
        }
        x
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &ComplexMatrix) -> Result<ComplexMatrix> {
        if b.rows() != self.n {
            return Err(Error::DimensionMismatch { op: "lu_solve", expected: (self.n, b.cols()), found: b.shape() });
        }
        let mut out = ComplexMatrix::zeros(self.n, b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(&b.column_vec(j));
            for (i, xi) in x.into_iter().enumerate() {
                out[(i, j)] = xi;
            }
        }
        Ok(out)
    }

    /// 1-norm condition number estimate `‖A‖₁ · est(‖A⁻¹‖₁)` (Hager–Higham).
    pub fn condition_estimate(&self) -> f64 {
        let n = self.n;
        if n == 1 {
            return self.one_norm * self.lu[0].inv().norm();
        }
        let mut x = vec![Complex::new(1.0 / n as f64, 0.0); n];
        let mut estimate = 0.0;
        let mut last_j = usize::MAX;
        for _ in 0..5 {
            let y = self.solve_vec(&x);
            let y_norm: f64 = y.iter().map(|z| z.norm()).sum();
            if !y_norm.is_finite() {
                return f64::INFINITY;
            }
            if y_norm <= estimate {
                break;
            }
            estimate = y_norm;
            let xi: Vec<Complex> = y
                .iter()
                .map(|&z| {
                    let m = z.norm();
                    if m == 0.0 {
                        Complex::new(1.0, 0.0)
                    } else {
                        z / m
                    }
                })
                .collect();
            let z = self.solve_adjoint_vec(&xi);
            let (j, zmax) = z.iter().enumerate().map(|(i, v)| (i, v.norm())).fold((0, -1.0), |best, cur| {
                if cur.1 > best.1 {
                    cur
                } else {
                    best
                }
            });
            let ztx: f64 = z.iter().zip(&x).map(|(a, b)| (a.conj() * b).re).sum();
            if zmax <= ztx || j == last_j {
                break;
            }
            last_j = j;
            x = vec![ZERO; n];
            x[j] = Complex::new(1.0, 0.0);
        }
        // Alternating-sign probe guards against the estimator's known blind spots.
        let alt: Vec<Complex> = (0..n)
            .map(|i| {
                let s = if i % 2 == 0 { 1.0 } else { -1.0 };
                Complex::new(s * (1.0 + i as f64 / (n - 1) as f64), 0.0)
            })
            .collect();
        let alt_est = 2.0 * self.solve_vec(&alt).iter().map(|z| z.norm()).sum::<f64>() / (3.0 * n as f64);
        self.one_norm * estimate.max(alt_est)
    }
}

/// Solution of `A x = b` together with a condition estimate of `A`.
#[derive(Clone, Debug)]
pub struct LuSolution {
    pub x: ComplexMatrix,
    pub condition_estimate: f64,
}

/// Solves `A x = b` by partial-pivoted LU.
pub fn lu_solve(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<LuSolution> {
    a.require_square()?;
    let lu = LuFactors::factor(a)?;
    let x = lu.solve(b)?;
    Ok(LuSolution { x, condition_estimate: lu.condition_estimate() })
}
