//! Generalized Lyapunov equations `Σ a_jk B^j H A^k = Y`.
//!
//! A [`LyapunovForm`] holds the coefficient grid `a_jk` and the sign of the
//! right-hand side. Its symbol `P(λ, μ) = Σ a_jk λ^j μ^k` decides unique
//! solvability (Krein's condition: `P` must not vanish on `σ(B) × σ(A)`).

pub mod contour;
pub mod kron;

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::eigen::Spectrum;
use crate::error::{Error, Result};
use crate::matrix::{hermitian_verdict, ComplexMatrix};
use crate::tol::KREIN_TOL;
use crate::Complex;

/// Largest supported equation order `N`.
pub const MAX_ORDER: usize = 8;

/// Sign in front of the right-hand side `C` of a region equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RhsSign {
    Plus,
    Minus,
}

impl RhsSign {
    pub fn value(self) -> f64 {
        match self {
            RhsSign::Plus => 1.0,
            RhsSign::Minus => -1.0,
        }
    }

    pub fn from_value(v: i32) -> Option<Self> {
        match v {
            1 => Some(RhsSign::Plus),
            -1 => Some(RhsSign::Minus),
            _ => None,
        }
    }
}

/// Coefficient grid `a_jk`, `0 ≤ j, k ≤ N`, plus right-hand-side sign.
#[derive(Clone, Debug, PartialEq)]
pub struct LyapunovForm {
    order: usize,
    coeffs: Vec<Complex>,
    rhs_sign: RhsSign,
}

impl LyapunovForm {
    /// `coeffs` is the `(N+1)×(N+1)` grid in row-major order, row index `j`
    /// (power of `B`), column index `k` (power of `A`).
    pub fn new(order: usize, coeffs: Vec<Complex>, rhs_sign: RhsSign) -> Result<Self> {
        if order > MAX_ORDER {
            return Err(Error::InvalidForm("order exceeds 8"));
        }
        if coeffs.len() != (order + 1) * (order + 1) {
            return Err(Error::InvalidForm("coefficient grid must be (N+1)x(N+1)"));
        }
        if coeffs.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidForm("coefficients must be finite"));
        }
        if coeffs.iter().all(|z| *z == Complex::new(0.0, 0.0)) {
            return Err(Error::InvalidForm("at least one coefficient must be nonzero"));
        }
        Ok(Self { order, coeffs, rhs_sign })
    }

    /// Builds a form from sparse real entries `(j, k, a_jk)`.
    pub fn from_terms(order: usize, terms: &[(usize, usize, f64)], rhs_sign: RhsSign) -> Result<Self> {
        let mut coeffs = vec![Complex::new(0.0, 0.0); (order + 1) * (order + 1)];
        for &(j, k, a) in terms {
            if j > order || k > order {
                return Err(Error::InvalidForm("term index exceeds order"));
            }
            coeffs[j * (order + 1) + k] += Complex::new(a, 0.0);
        }
        Self::new(order, coeffs, rhs_sign)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rhs_sign(&self) -> RhsSign {
        self.rhs_sign
    }

    pub fn with_rhs_sign(mut self, rhs_sign: RhsSign) -> Self {
        self.rhs_sign = rhs_sign;
        self
    }

    #[inline]
    pub fn coeff(&self, j: usize, k: usize) -> Complex {
        self.coeffs[j * (self.order + 1) + k]
    }

    /// Row-major coefficient grid.
    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Nonzero terms `(j, k, a_jk)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, Complex)> + '_ {
        let w = self.order + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != Complex::new(0.0, 0.0))
            .map(move |(idx, &a)| (idx / w, idx % w, a))
    }

    /// Highest power of `A` or `B` that actually appears.
    pub fn effective_order(&self) -> usize {
        self.terms().map(|(j, k, _)| j.max(k)).max().unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Real coefficients with `a_jk = a_kj`; then `P(λ̄, λ)` is real and the
    /// equation maps Hermitian data to Hermitian solutions when `B = A*`.
    pub fn is_real_symmetric(&self) -> bool {
        (0..=self.order).all(|j| {
            (0..=self.order).all(|k| {
                let a = self.coeff(j, k);
                a.im == 0.0 && a == self.coeff(k, j)
            })
        })
    }
}

/// `P(λ, μ) = Σ a_jk λ^j μ^k`, nested Horner in `μ` then `λ`.
pub fn symbol_eval(form: &LyapunovForm, lambda: Complex, mu: Complex) -> Complex {
    let n = form.order();
    let mut outer = Complex::new(0.0, 0.0);
    for j in (0..=n).rev() {
        let mut inner = Complex::new(0.0, 0.0);
        for k in (0..=n).rev() {
            inner = inner * mu + form.coeff(j, k);
        }
        outer = outer * lambda + inner;
    }
    outer
}

/// Scale-aware zero threshold for the symbol: `KREIN_TOL · max(1, max|a_jk| · R^(2N))`.
pub fn krein_tolerance(form: &LyapunovForm, radius: f64) -> f64 {
    let n = form.effective_order() as i32;
    KREIN_TOL * (form.max_abs_coeff() * radius.powi(2 * n)).max(1.0)
}

/// Pair of eigenvalue indices `(s, r)` with `|P(λ_s, μ_r)|` at or below tolerance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KreinPair {
    /// Index into `σ(B)`.
    pub s: usize,
    /// Index into `σ(A)`.
    pub r: usize,
    pub abs_symbol: f64,
}

/// Outcome of Krein's solvability test.
#[derive(Clone, Debug, PartialEq)]
pub struct KreinReport {
    pub min_abs_symbol: f64,
    pub tolerance: f64,
    pub offending: Vec<KreinPair>,
}

impl KreinReport {
    pub fn is_ok(&self) -> bool {
        self.offending.is_empty()
    }
}

/// Checks `P(λ_s, μ_r) ≠ 0` over all `λ_s ∈ σ(B)`, `μ_r ∈ σ(A)`.
pub fn krein_condition(form: &LyapunovForm, spec_b: &Spectrum, spec_a: &Spectrum) -> KreinReport {
    let radius = spec_a.spectral_radius().max(spec_b.spectral_radius());
    let tolerance = krein_tolerance(form, radius);
    let mut min_abs_symbol = f64::INFINITY;
    let mut offending = Vec::new();
    for (s, &lambda) in spec_b.eigenvalues.iter().enumerate() {
        for (r, &mu) in spec_a.eigenvalues.iter().enumerate() {
            let abs_symbol = symbol_eval(form, lambda, mu).norm();
            min_abs_symbol = min_abs_symbol.min(abs_symbol);
            if abs_symbol <= tolerance {
                offending.push(KreinPair { s, r, abs_symbol });
            }
        }
    }
    KreinReport { min_abs_symbol, tolerance, offending }
}

/// Solution of a generalized Lyapunov equation with diagnostics.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub h: ComplexMatrix,
    /// `‖Σ a_jk B^j H A^k − Y‖₂ / max(1, ‖Y‖₂)`, recomputed after the solve.
    pub residual: f64,
    /// Whether `H` was replaced by `(H + H*)/2`.
    pub hermitized: bool,
    /// `‖H − H*‖_F` before symmetrization (0 when not hermitized).
    pub asymmetry_dropped: f64,
    /// Condition estimate of the linear system that produced `H`.
    pub condition_estimate: f64,
}

pub(crate) fn check_shapes(b: &ComplexMatrix, a: &ComplexMatrix, y: &ComplexMatrix) -> Result<(usize, usize)> {
    let m = b.require_square()?;
    let n = a.require_square()?;
    if y.shape() != (m, n) {
        return Err(Error::DimensionMismatch { op: "lyapunov", expected: (m, n), found: y.shape() });
    }
    Ok((m, n))
}

/// `B = A*`, `Y = Y*` and real-symmetric coefficients: the unique solution
/// is Hermitian, so rounding asymmetry can be discarded.
pub(crate) fn hermitian_compatible(
    form: &LyapunovForm,
    b: &ComplexMatrix,
    a: &ComplexMatrix,
    y: &ComplexMatrix,
) -> bool {
    form.is_real_symmetric() && b.shape() == a.shape() && *b == a.adjoint() && hermitian_verdict(y).is_hermitian
}

pub(crate) fn finish(
    form: &LyapunovForm,
    b: &ComplexMatrix,
    a: &ComplexMatrix,
    y: &ComplexMatrix,
    mut h: ComplexMatrix,
    condition_estimate: f64,
) -> Result<SolveReport> {
    let mut hermitized = false;
    let mut asymmetry_dropped = 0.0;
    if hermitian_compatible(form, b, a, y) {
        asymmetry_dropped = (&h - &h.adjoint()).frobenius_norm();
        h = h.hermitian_part();
        hermitized = true;
    }
    let residual = residual(form, b, a, &h, y)?;
    Ok(SolveReport { h, residual, hermitized, asymmetry_dropped, condition_estimate })
}

/// Relative residual `‖Σ a_jk B^j H A^k − Y‖₂ / max(1, ‖Y‖₂)`.
///
/// Powers are rebuilt here by repeated multiplication so the check never
/// shares intermediate results with a solver.
pub fn residual(
    form: &LyapunovForm,
    b: &ComplexMatrix,
    a: &ComplexMatrix,
    h: &ComplexMatrix,
    y: &ComplexMatrix,
) -> Result<f64> {
    let (m, n) = check_shapes(b, a, y)?;
    if h.shape() != (m, n) {
        return Err(Error::DimensionMismatch { op: "residual", expected: (m, n), found: h.shape() });
    }
    let order = form.order();
    let mut h_a_pow = Vec::with_capacity(order + 1);
    h_a_pow.push(h.clone());
    for k in 1..=order {
        let next = h_a_pow[k - 1].matmul(a)?;
        h_a_pow.push(next);
    }
    let mut total = ComplexMatrix::zeros(m, n);
    let mut b_pow = ComplexMatrix::identity(m);
    for j in 0..=order {
        let mut row_sum = ComplexMatrix::zeros(m, n);
        let mut any = false;
        for k in 0..=order {
            let coef = form.coeff(j, k);
            if coef != Complex::new(0.0, 0.0) {
                row_sum = &row_sum + &h_a_pow[k].scale(coef);
                any = true;
            }
        }
        if any {
            total = &total + &b_pow.matmul(&row_sum)?;
        }
        if j < order {
            b_pow = b_pow.matmul(b)?;
        }
    }
    let diff = &total - y;
    Ok(diff.spectral_norm() / y.spectral_norm().max(1.0))
}
