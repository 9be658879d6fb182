//! Direct solver: column-stacking vectorization
//! `vec(B^j H A^k) = ((A^k)ᵀ ⊗ B^j) vec(H)` and one dense LU solve.

use alloc::vec::Vec;

use super::{check_shapes, finish, LyapunovForm, SolveReport};
use crate::error::{Error, Result};
use crate::lu::LuFactors;
use crate::matrix::ComplexMatrix;
use crate::Complex;

/// `Σ a_jk (A^k)ᵀ ⊗ B^j`, an `mn × mn` matrix.
pub fn kronecker_operator(form: &LyapunovForm, b: &ComplexMatrix, a: &ComplexMatrix) -> ComplexMatrix {
    let m = b.rows();
    let n = a.rows();
    let order = form.effective_order();
    let a_pow = powers(a, order);
    let b_pow = powers(b, order);
    let dim = m * n;
    let mut k_op = ComplexMatrix::zeros(dim, dim);
    for (j, k, coef) in form.terms() {
        let ak = &a_pow[k];
        let bj = &b_pow[j];
        // row index i + col·m pairs with column index p + q·m
        for q in 0..n {
            for col in 0..n {
                let w = coef * ak[(q, col)];
                if w == Complex::new(0.0, 0.0) {
                    continue;
                }
                for i in 0..m {
                    for p in 0..m {
                        k_op[(i + col * m, p + q * m)] += w * bj[(i, p)];
                    }
                }
            }
        }
    }
    k_op
}

fn powers(x: &ComplexMatrix, order: usize) -> Vec<ComplexMatrix> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(ComplexMatrix::identity(x.rows()));
    for k in 1..=order {
        let next = &out[k - 1] * x;
        out.push(next);
    }
    out
}

/// Solves `Σ a_jk B^j H A^k = Y` through the vectorized system.
///
/// When `B = A*`, `Y = Y*` and the coefficients are real-symmetric the
/// result is replaced by its Hermitian part and the discarded asymmetry is
/// reported. A pivot failure is reported as `SingularSystem`, which means
/// the symbol vanishes (or nearly does) on `σ(B) × σ(A)`.
pub fn solve_kron(form: &LyapunovForm, b: &ComplexMatrix, a: &ComplexMatrix, y: &ComplexMatrix) -> Result<SolveReport> {
    let (m, n) = check_shapes(b, a, y)?;
    let k_op = kronecker_operator(form, b, a);
    let lu = LuFactors::factor(&k_op).map_err(|e| match e {
        Error::SingularMatrix { pivot_index, pivot } => Error::SingularSystem { pivot_index, pivot },
        other => other,
    })?;
    let mut rhs = Vec::with_capacity(m * n);
    for col in 0..n {
        for i in 0..m {
            rhs.push(y[(i, col)]);
        }
    }
    let x = lu.solve_vec(&rhs);
    let mut h = ComplexMatrix::zeros(m, n);
    for col in 0..n {
        for i in 0..m {
            h[(i, col)] = x[i + col * m];
        }
    }
    finish(form, b, a, y, h, lu.condition_estimate())
}
