//! Krein's double contour integral
//!
//! `H = (2πi)⁻² ∮_{γ_A} ∮_{γ_B} P(λ, μ)⁻¹ (λI − B)⁻¹ Y (μI − A)⁻¹ dλ dμ`
//!
//! discretized by the trapezoidal rule on two circles. The formula is only
//! valid when `P(λ, μ) ≠ 0` for every `λ` inside `γ_B` and `μ` inside `γ_A`;
//! otherwise zeros of the symbol add residues of their own. Both conditions
//! (enclosure of the spectra and a zero-free symbol) are checked before
//! integrating.

use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use super::{check_shapes, finish, krein_condition, krein_tolerance, symbol_eval, LyapunovForm, SolveReport};
use crate::eigen::{eig, Spectrum};
use crate::error::{Error, Result};
use crate::lu::LuFactors;
use crate::matrix::ComplexMatrix;
use crate::tol::{CONTOUR_RADIUS_FACTOR, DEFAULT_QUADRATURE};
use crate::Complex;

/// Circle `center + radius·e^{iθ}` sampled at `nodes` equispaced angles.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContourConfig {
    pub center: Complex,
    pub radius: f64,
    pub nodes: usize,
}

impl ContourConfig {
    pub fn new(center: Complex, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius.is_finite() && radius > 0.0) {
            return Err(Error::InvalidContour("radius must be positive and finite"));
        }
        if !(center.re.is_finite() && center.im.is_finite()) {
            return Err(Error::InvalidContour("center must be finite"));
        }
        if nodes < 16 {
            return Err(Error::InvalidContour("at least 16 quadrature nodes are required"));
        }
        Ok(Self { center, radius, nodes })
    }

    /// Default circle for `matrix`: centred at the centroid of its Gershgorin
    /// centres (`trace / n`), radius `CONTOUR_RADIUS_FACTOR` times the largest
    /// oracle-eigenvalue distance from that centre.
    pub fn enclosing(matrix: &ComplexMatrix, nodes: usize) -> Result<Self> {
        let n = matrix.require_square()?;
        let center = matrix.trace() / n as f64;
        let spectrum = eig(matrix)?;
        Self::enclosing_spectrum(center, &spectrum, nodes)
    }

    fn enclosing_spectrum(center: Complex, spectrum: &Spectrum, nodes: usize) -> Result<Self> {
        let spread = spectrum.iter().map(|z| (z - center).norm()).fold(0.0, f64::max);
        // a single eigenvalue still needs a circle of some size
        let floor = 1e-2 * center.norm().max(1.0);
        Self::new(center, CONTOUR_RADIUS_FACTOR * spread.max(floor), nodes)
    }

    pub fn with_default_nodes(matrix: &ComplexMatrix) -> Result<Self> {
        Self::enclosing(matrix, DEFAULT_QUADRATURE)
    }

    /// Fails unless every eigenvalue lies strictly inside the circle.
    pub fn validate(&self, spectrum: &Spectrum) -> Result<()> {
        let spread = spectrum.iter().map(|z| (z - self.center).norm()).fold(0.0, f64::max);
        if spread < self.radius {
            Ok(())
        } else {
            Err(Error::InvalidContour("circle does not enclose the spectrum"))
        }
    }

    /// Nodes `z_k` and weights `dz_k = i·r·e^{iθ_k}·2π/Q`.
    fn nodes_and_weights(&self) -> Vec<(Complex, Complex)> {
        let q = self.nodes as f64;
        (0..self.nodes)
            .map(|k| {
                let theta = 2.0 * PI * k as f64 / q;
                let e = Complex::new(theta.cos(), theta.sin());
                (self.center + e * self.radius, Complex::new(0.0, 1.0) * e * (self.radius * 2.0 * PI / q))
            })
            .collect()
    }
}

/// Winding number of the closed polygon `values` around the origin.
fn winding(values: impl Iterator<Item = Complex> + Clone) -> i64 {
    let first = values.clone().next();
    let mut total = 0.0f64;
    let mut prev: Option<Complex> = None;
    for v in values.chain(first) {
        if let Some(p) = prev {
            total += (v / p).arg();
        }
        prev = Some(v);
    }
    (total / (2.0 * PI)).round() as i64
}

fn pairwise_sum(mut terms: Vec<ComplexMatrix>) -> ComplexMatrix {
    while terms.len() > 1 {
        let mut next = Vec::with_capacity(terms.len().div_ceil(2));
        let mut it = terms.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        terms = next;
    }
    terms.pop().expect("at least one term")
}

/// Resolvents `(zI − X)⁻¹ · dz` at every node; the worst condition estimate is returned alongside.
fn weighted_resolvents(x: &ComplexMatrix, cfg: &ContourConfig) -> Result<(Vec<ComplexMatrix>, f64)> {
    let n = x.rows();
    let id = ComplexMatrix::identity(n);
    let mut worst = 0.0f64;
    let mut out = Vec::with_capacity(cfg.nodes);
    for (z, dz) in cfg.nodes_and_weights() {
        let shifted = &id.scale(z) - x;
        let lu = LuFactors::factor(&shifted).map_err(|e| match e {
            Error::SingularMatrix { pivot, .. } => Error::ContourTooClose { min_symbol: pivot, tolerance: 0.0 },
            other => other,
        })?;
        worst = worst.max(lu.condition_estimate());
        out.push(lu.solve(&id)?.scale(dz));
    }
    Ok((out, worst))
}

/// Solves `Σ a_jk B^j H A^k = Y` by Krein's contour formula.
///
/// `condition_estimate` in the report is the worst 1-norm condition estimate
/// of the sampled resolvents `(zI − B)`, `(zI − A)`.
pub fn solve_contour(
    form: &LyapunovForm,
    b: &ComplexMatrix,
    a: &ComplexMatrix,
    y: &ComplexMatrix,
    cfg_b: &ContourConfig,
    cfg_a: &ContourConfig,
) -> Result<SolveReport> {
    check_shapes(b, a, y)?;
    let spec_b = eig(b)?;
    let spec_a = eig(a)?;
    cfg_b.validate(&spec_b)?;
    cfg_a.validate(&spec_a)?;

    let krein = krein_condition(form, &spec_b, &spec_a);
    if !krein.is_ok() {
        return Err(Error::KreinViolation {
            min_symbol: krein.min_abs_symbol,
            tolerance: krein.tolerance,
            pairs: krein.offending.len(),
        });
    }

    let lam = cfg_b.nodes_and_weights();
    let mu = cfg_a.nodes_and_weights();
    let reach = (cfg_b.center.norm() + cfg_b.radius).max(cfg_a.center.norm() + cfg_a.radius);
    let tolerance = krein_tolerance(form, reach);

    let mut symbol = Vec::with_capacity(lam.len() * mu.len());
    let mut min_symbol = f64::INFINITY;
    for &(l, _) in &lam {
        for &(m, _) in &mu {
            let p = symbol_eval(form, l, m);
            min_symbol = min_symbol.min(p.norm());
            symbol.push(p);
        }
    }
    if !(min_symbol > tolerance) {
        return Err(Error::ContourTooClose { min_symbol, tolerance });
    }
    let qb = lam.len();
    let qa = mu.len();
    let zero_free = (0..qa).all(|j| winding((0..qb).map(|i| symbol[i * qa + j])) == 0)
        && (0..qb).all(|i| winding((0..qa).map(|j| symbol[i * qa + j])) == 0);
    if !zero_free {
        return Err(Error::InvalidContour("symbol vanishes inside the contours"));
    }

    let (res_b, cond_b) = weighted_resolvents(b, cfg_b)?;
    let (res_a, cond_a) = weighted_resolvents(a, cfg_a)?;

    let terms: Vec<ComplexMatrix> = res_b
        .iter()
        .enumerate()
        .map(|(i, rb)| {
            let inner =
                pairwise_sum(res_a.iter().enumerate().map(|(j, ra)| ra.scale(symbol[i * qa + j].inv())).collect());
            &(rb * y) * &inner
        })
        .collect();
    // (2πi)⁻² = −1/(4π²)
    let h = pairwise_sum(terms).scale_real(-1.0 / (4.0 * PI * PI));
    finish(form, b, a, y, h, cond_b.max(cond_a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lyapunov::kron::solve_kron;
    use crate::lyapunov::RhsSign;

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn ellipse() -> LyapunovForm {
        LyapunovForm::from_terms(2, &[(0, 0, 1.0), (1, 1, -0.625), (0, 2, 0.1875), (2, 0, 0.1875)], RhsSign::Plus)
            .unwrap()
    }

    #[test]
    fn scalar_ellipse_matches_closed_form() {
        let a = ComplexMatrix::scalar(c(0.5));
        let y = ComplexMatrix::scalar(c(1.0));
        let cfg = ContourConfig::new(c(0.0), 0.9, 64).unwrap();
        let rep = solve_contour(&ellipse(), &a, &a, &y, &cfg, &cfg).unwrap();
        assert!((rep.h[(0, 0)] - c(16.0 / 15.0)).norm() < 1e-6);
        let cfg = ContourConfig::with_default_nodes(&a).unwrap();
        let rep = solve_contour(&ellipse(), &a, &a, &y, &cfg, &cfg).unwrap();
        assert!((rep.h[(0, 0)] - c(16.0 / 15.0)).norm() < 1e-12);
    }

    #[test]
    fn unit_circle_touches_symbol_zero() {
        // P(i, −i) = 0 for a = 2, b = 1, and both points lie on the unit circle
        let a = ComplexMatrix::scalar(c(0.5));
        let y = ComplexMatrix::scalar(c(1.0));
        let cfg = ContourConfig::new(c(0.0), 1.0, 64).unwrap();
        assert!(matches!(solve_contour(&ellipse(), &a, &a, &y, &cfg, &cfg), Err(Error::ContourTooClose { .. })));
        let wide = ContourConfig::new(c(0.0), 1.25, 64).unwrap();
        assert!(matches!(solve_contour(&ellipse(), &a, &a, &y, &wide, &wide), Err(Error::InvalidContour(_))));
    }

    #[test]
    fn identity_form_returns_rhs() {
        let f = LyapunovForm::from_terms(0, &[(0, 0, 1.0)], RhsSign::Plus).unwrap();
        let z = ComplexMatrix::zeros(1, 1);
        let y = ComplexMatrix::scalar(Complex::new(-3.0, 0.25));
        let cfg = ContourConfig::new(c(0.0), 0.5, 32).unwrap();
        let rep = solve_contour(&f, &z, &z, &y, &cfg, &cfg).unwrap();
        assert!((rep.h[(0, 0)] - y[(0, 0)]).norm() < 1e-13);
    }

    #[test]
    fn contour_inside_spectrum_rejected() {
        let a = ComplexMatrix::scalar(c(0.5));
        let y = ComplexMatrix::scalar(c(1.0));
        let cfg = ContourConfig::new(c(0.0), 0.3, 64).unwrap();
        assert!(matches!(solve_contour(&ellipse(), &a, &a, &y, &cfg, &cfg), Err(Error::InvalidContour(_))));
        assert!(ContourConfig::new(c(0.0), 1.0, 8).is_err());
        assert!(ContourConfig::new(c(0.0), -1.0, 64).is_err());
    }

    #[test]
    fn matrix_case_agrees_with_kronecker() {
        let a = ComplexMatrix::from_rows(&[
            [Complex::new(0.2, 0.1), Complex::new(0.3, 0.0)],
            [Complex::new(-0.1, 0.0), Complex::new(0.1, -0.2)],
        ]);
        let b = a.adjoint();
        let y = ComplexMatrix::from_rows(&[
            [Complex::new(1.0, 0.0), Complex::new(0.5, 0.5)],
            [Complex::new(0.5, -0.5), Complex::new(2.0, 0.0)],
        ]);
        let f = ellipse();
        let kron = solve_kron(&f, &b, &a, &y).unwrap();
        let cb = ContourConfig::with_default_nodes(&b).unwrap();
        let ca = ContourConfig::with_default_nodes(&a).unwrap();
        let cont = solve_contour(&f, &b, &a, &y, &cb, &ca).unwrap();
        assert!((&kron.h - &cont.h).max_abs() <= 1e-9 * kron.h.max_abs());
    }

    #[test]
    fn winding_counts_turns() {
        let circle = |k: i64| {
            (0..64).map(move |t| {
                let th = 2.0 * PI * (k as f64) * t as f64 / 64.0;
                Complex::new(th.cos(), th.sin())
            })
        };
        assert_eq!(winding(circle(1)), 1);
        assert_eq!(winding(circle(-2)), -2);
        assert_eq!(winding((0..16).map(|t| Complex::new(2.0, 0.0) + Complex::new(0.0, t as f64).exp())), 0);
    }
}
