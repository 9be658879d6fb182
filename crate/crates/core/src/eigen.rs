//! Eigenvalue oracle: Householder reduction to Hessenberg form followed by
//! Wilkinson-shifted complex QR with deflation.
//!
//! Nothing here touches the Lyapunov solvers, so the spectra it produces can
//! be used to check their certificates independently.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::lu::LuFactors;
use crate::matrix::{mat_vec, vec_norm, ComplexMatrix};
use crate::tol::{EIGVEC_TOL, MAX_SWEEPS};
use crate::Complex;

const ZERO: Complex = Complex::new(0.0, 0.0);

/// Eigenvalues with multiplicity, sorted by real then imaginary part.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Complex>,
    /// Largest `‖(A − λI)x‖ / ‖A‖_F` over the computed `λ`, with `x` a unit
    /// vector from inverse iteration: each `λ` is an exact eigenvalue of a
    /// matrix within this relative distance of `A`.
    pub backward_error: f64,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Complex> {
        self.eigenvalues.iter()
    }

    /// Largest eigenvalue modulus.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Reduces a square matrix to upper-Hessenberg form `U* A U` by Householder
/// reflections. Columns that are already reduced are left untouched, so
/// triangular and 2×2 inputs come back bit-identical.
pub fn hessenberg(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let n = a.require_square()?;
    let mut h = a.clone();
    for k in 0..n.saturating_sub(2) {
        let tail: f64 = ((k + 2)..n).map(|i| h[(i, k)].norm_sqr()).sum();
        if tail == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let xnorm = (x0.norm_sqr() + tail).sqrt();
        let phase = if x0 == ZERO { Complex::new(1.0, 0.0) } else { x0 / x0.norm() };
        let alpha = -phase * xnorm;
        let mut v: Vec<Complex> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        let beta = 2.0 / vnorm2;

        // H ← P H on rows k+1.., P = I − β v v*
        for j in k..n {
            let w: Complex = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            let w = w * beta;
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= vr * w;
            }
        }
        // H ← H P on columns k+1..
        for i in 0..n {
            let w: Complex = v.iter().enumerate().map(|(r, vr)| h[(i, k + 1 + r)] * vr).sum();
            let w = w * beta;
            for (r, vr) in v.iter().enumerate() {
                h[(i, k + 1 + r)] -= w * vr.conj();
            }
        }
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = ZERO;
        }
    }
    Ok(h)
}

/// Unitary rotation `G = [[c̄, s̄], [−s, c]]` that maps `(x, y)` to `(r, 0)`.
fn givens(x: Complex, y: Complex) -> (Complex, Complex) {
    let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
    if r == 0.0 {
        (Complex::new(1.0, 0.0), ZERO)
    } else {
        (x / r, y / r)
    }
}

fn wilkinson_shift(a: Complex, b: Complex, c: Complex, d: Complex) -> Complex {
    let half_tr = (a + d) * 0.5;
    let disc = (((a - d) * 0.5).powi(2) + b * c).sqrt();
    let mu1 = half_tr + disc;
    let mu2 = half_tr - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Eigenvalues of an upper-Hessenberg matrix, in deflation order.
fn hessenberg_qr(mut h: ComplexMatrix) -> Result<Vec<Complex>> {
    let n = h.rows();
    let eps = f64::EPSILON;
    let norm = h.frobenius_norm();
    let max_total = MAX_SWEEPS * n;
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut total = 0usize;
    let mut its = 0usize;
    let mut rotations: Vec<(Complex, Complex)> = Vec::with_capacity(n);

    loop {
        if hi == 0 {
            eigs.push(h[(0, 0)]);
            break;
        }
        // deflation scan
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let mut s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if s == 0.0 {
                s = norm;
            }
            if sub <= eps * s || sub < f64::MIN_POSITIVE {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eigs.push(h[(hi, hi)]);
            hi -= 1;
            its = 0;
            continue;
        }
        if total >= max_total {
            return Err(Error::NoConvergence { iterations: total });
        }
        total += 1;
        its += 1;

        let shift = if its.is_multiple_of(10) {
            // exceptional shift breaks rare cycles of the Wilkinson shift
            h[(hi, hi)] + Complex::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        for k in lo..=hi {
            h[(k, k)] -= shift;
        }
        rotations.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            for j in k..=hi {
                let top = h[(k, j)];
                let bot = h[(k + 1, j)];
                h[(k, j)] = c.conj() * top + s.conj() * bot;
                h[(k + 1, j)] = -s * top + c * bot;
            }
            h[(k + 1, k)] = ZERO;
            rotations.push((c, s));
        }
        for (offset, &(c, s)) in rotations.iter().enumerate() {
            let k = lo + offset;
            for i in lo..=(k + 1).min(hi) {
                let left = h[(i, k)];
                let right = h[(i, k + 1)];
                h[(i, k)] = left * c + right * s;
                h[(i, k + 1)] = -left * s.conj() + right * c.conj();
            }
        }
        for k in lo..=hi {
            h[(k, k)] += shift;
        }
    }
    Ok(eigs)
}

fn sort_spectrum(eigs: &mut [Complex]) {
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

/// Residual `‖(A − λI)x‖` of a few inverse-iteration steps from a fixed start.
fn inverse_iteration(a: &ComplexMatrix, lambda: Complex, steps: usize) -> Result<(Vec<Complex>, f64)> {
    let n = a.rows();
    let shifted = a.shift_diagonal(-lambda);
    let lu = LuFactors::factor_regularized(&shifted)?;
    let mut x: Vec<Complex> = (0..n)
        .map(|i| {
            let t = i as f64;
            Complex::new(1.0 + 0.37 * (1.3 * t).sin(), 0.21 * (0.7 * t + 0.3).cos())
        })
        .collect();
    let nx = vec_norm(&x);
    x.iter_mut().for_each(|z| *z /= nx);
    let mut best = (x.clone(), vec_norm(&mat_vec(&shifted, &x)));
    for _ in 0..steps {
        let y = lu.solve_vec(&x);
        let ny = vec_norm(&y);
        if !(ny.is_finite() && ny > 0.0) {
            break;
        }
        x = y.into_iter().map(|z| z / ny).collect();
        let r = vec_norm(&mat_vec(&shifted, &x));
        if r < best.1 {
            best = (x.clone(), r);
        }
    }
    Ok(best)
}

/// All eigenvalues of a square matrix.
pub fn eig(a: &ComplexMatrix) -> Result<Spectrum> {
    let n = a.require_square()?;
    if !a.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut eigenvalues = if n == 1 { vec![a[(0, 0)]] } else { hessenberg_qr(hessenberg(a)?)? };
    sort_spectrum(&mut eigenvalues);

    let scale = a.frobenius_norm();
    let mut backward_error: f64 = 0.0;
    if scale > 0.0 {
        for &lambda in &eigenvalues {
            let (_, r) = inverse_iteration(a, lambda, 3)?;
            backward_error = backward_error.max(r / scale);
        }
    }
    Ok(Spectrum { eigenvalues, backward_error })
}

/// Unit eigenvector for `lambda` by inverse iteration.
///
/// The phase is fixed so that the largest-magnitude component is real and
/// positive. Fails with `NotAnEigenvalue` unless
/// `‖Av − λv‖ ≤ EIGVEC_TOL · ‖A‖_F`.
pub fn eigvec(a: &ComplexMatrix, lambda: Complex) -> Result<ComplexMatrix> {
    a.require_square()?;
    let (mut v, residual) = inverse_iteration(a, lambda, 8)?;
    if residual > EIGVEC_TOL * a.frobenius_norm() {
        return Err(Error::NotAnEigenvalue { residual });
    }
    let pivot = v.iter().copied().fold(ZERO, |best, z| if z.norm() > best.norm() { z } else { best });
    if pivot != ZERO {
        let phase = pivot.conj() / pivot.norm();
        v.iter_mut().for_each(|z| *z *= phase);
    }
    Ok(ComplexMatrix::column(&v))
}
