#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::matrix::{hermitian_verdict, spectral_norm, ComplexMatrix};
use crate::tol::POSDEF_TOL;
use crate::Complex;

/// Lower-triangular `L` with `L L* = H`.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    pub l: ComplexMatrix,
    /// Smallest squared pivot `d_k = h_kk − Σ|l_kj|²`.
    pub min_pivot: f64,
}

/// Decides `H = H* ≻ 0` by Cholesky factorization.
///
/// The Hermitian test runs first (`NotHermitian`); a squared pivot at or
/// below `POSDEF_TOL · ‖H‖₂` gives `NotPositiveDefinite` with its index.
pub fn cholesky_posdef(h: &ComplexMatrix) -> Result<CholeskyFactor> {
    let n = h.require_square()?;
    let verdict = hermitian_verdict(h);
    if !verdict.is_hermitian {
        return Err(Error::NotHermitian { asymmetry: verdict.asymmetry, tolerance: verdict.tolerance });
    }
    let threshold = POSDEF_TOL * spectral_norm(h);
    // factor the Hermitian part so the upper triangle cannot leak asymmetry
    let h = h.hermitian_part();
    let mut l = ComplexMatrix::zeros(n, n);
    let mut min_pivot = f64::INFINITY;
    for j in 0..n {
        let d = h[(j, j)].re - (0..j).map(|k| l[(j, k)].norm_sqr()).sum::<f64>();
        min_pivot = min_pivot.min(d);
        if !(d > threshold) {
            return Err(Error::NotPositiveDefinite { pivot_index: j, pivot: d });
        }
        let ljj = d.sqrt();
        l[(j, j)] = Complex::new(ljj, 0.0);
        for i in (j + 1)..n {
            let mut s = h[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(CholeskyFactor { l, min_pivot })
}
