//! Perturbations `A → A + B` that keep the spectrum inside its region.
//!
//! Given a certificate `H ≻ 0` for `A` (solved with `C = I`), each curved
//! region has an operator inequality on a Hermitian matrix `M(A, B, H)`:
//!
//! * ellipse interior: `M < I`,  ellipse exterior: `M > −I`, with
//!   `M = c₁(B*HA + A*HB + B*HB) + c₂(HS + S*H)`,
//! * parabola interior: `M > −I`, parabola exterior: `M < I`, with
//!   `M = HB + B*H − (A*HB + B*HA + B*HB)/(2p) + (HS + S*H)/(4p)`,
//!
//! where `S = AB + BA + B²`. For the ellipses there are also closed-form
//! norm radii `ρ` with `‖B‖₂ < ρ` implying the inequality.

#[allow(unused_imports)]
use num_traits::Float;

use crate::cholesky::cholesky_posdef;
use crate::eigen::eig;
use crate::error::{Error, Result};
use crate::lyapunov::kron::solve_kron;
use crate::lyapunov::SolveReport;
use crate::matrix::{spectral_norm, ComplexMatrix};
use crate::regions::{region_form, Region};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionKind {
    EllipseInterior,
    EllipseExterior,
    ParabolaInterior,
    ParabolaExterior,
}

/// Which side of the identity the condition matrix must stay on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdSide {
    /// `M < I`.
    LessThanIdentity,
    /// `M > −I`.
    GreaterThanMinusIdentity,
}

#[derive(Clone, Debug)]
pub struct ConditionMatrix {
    pub m: ComplexMatrix,
    pub kind: ConditionKind,
    pub side: ThresholdSide,
}

#[derive(Clone, Debug)]
pub struct PerturbationReport {
    pub condition_holds: bool,
    /// `1 − λ_max(M)` or `λ_min(M) + 1` from the eigenvalue oracle; positive
    /// exactly when the inequality holds.
    pub margin: f64,
    /// Closed-form radius (ellipse regions only).
    pub radius: Option<f64>,
    pub b_norm: f64,
    pub verdict: bool,
}

fn kind_of(region: &Region) -> Result<(ConditionKind, ThresholdSide)> {
    region.validate()?;
    match region {
        Region::EllipseInterior { .. } => Ok((ConditionKind::EllipseInterior, ThresholdSide::LessThanIdentity)),
        Region::EllipseExterior { .. } => Ok((ConditionKind::EllipseExterior, ThresholdSide::GreaterThanMinusIdentity)),
        Region::ParabolaInterior { .. } => {
            Ok((ConditionKind::ParabolaInterior, ThresholdSide::GreaterThanMinusIdentity))
        }
        Region::ParabolaExterior { .. } => Ok((ConditionKind::ParabolaExterior, ThresholdSide::LessThanIdentity)),
        Region::HalfPlaneLeft | Region::UnitDisk => {
            Err(Error::UnsupportedRegion("perturbation conditions exist only for ellipse and parabola regions"))
        }
    }
}

fn same_square(op: &'static str, n: usize, x: &ComplexMatrix) -> Result<()> {
    if x.shape() != (n, n) {
        Err(Error::DimensionMismatch { op, expected: (n, n), found: x.shape() })
    } else {
        Ok(())
    }
}

/// Assembles the left side of the region's perturbation inequality.
pub fn condition_matrix(
    region: &Region,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<ConditionMatrix> {
    let (kind, side) = kind_of(region)?;
    let n = a.require_square()?;
    same_square("condition_matrix", n, b)?;
    same_square("condition_matrix", n, h)?;

    let a_adj = a.adjoint();
    let b_adj = b.adjoint();
    let hb = h * b;
    // B*HA + A*HB + B*HB
    let cross = &(&(&b_adj * &(h * a)) + &(&a_adj * &hb)) + &(&b_adj * &hb);
    let s = &(&(a * b) + &(b * a)) + &(b * b);
    let hs = h * &s;
    let sym = &hs + &hs.adjoint();

    let m = match *region {
        Region::EllipseInterior { a: sa, b: sb } | Region::EllipseExterior { a: sa, b: sb } => {
            let (a2, b2) = (sa * sa, sb * sb);
            let c1 = 1.0 / (2.0 * a2) + 1.0 / (2.0 * b2);
            let c2 = 1.0 / (4.0 * a2) - 1.0 / (4.0 * b2);
            &cross.scale_real(c1) + &sym.scale_real(c2)
        }
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => {
            let first = &hb + &hb.adjoint();
            &(&first - &cross.scale_real(1.0 / (2.0 * p))) + &sym.scale_real(1.0 / (4.0 * p))
        }
        Region::HalfPlaneLeft | Region::UnitDisk => unreachable!("rejected by kind_of"),
    };
    Ok(ConditionMatrix { m, kind, side })
}

fn require_posdef(h: &ComplexMatrix) -> Result<()> {
    cholesky_posdef(h).map(|_| ()).map_err(|e| match e {
        Error::NotSquare { .. } => e,
        _ => Error::HNotPositiveDefinite,
    })
}

/// Decides the operator inequality for `(A, B, H)` and, for ellipses, also
/// reports the closed-form radius.
///
/// `H` must be the positive definite certificate of `A` computed with `C = I`.
pub fn check_perturbation(
    region: &Region,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    h: &ComplexMatrix,
) -> Result<PerturbationReport> {
    let cm = condition_matrix(region, a, b, h)?;
    require_posdef(h)?;
    let n = a.rows();
    let id = ComplexMatrix::identity(n);
    let shifted = match cm.side {
        ThresholdSide::LessThanIdentity => &id - &cm.m,
        ThresholdSide::GreaterThanMinusIdentity => &cm.m + &id,
    };
    let condition_holds = match cholesky_posdef(&shifted) {
        Ok(_) => true,
        Err(Error::NotPositiveDefinite { .. }) => false,
        Err(e) => return Err(e),
    };
    let spectrum = eig(&cm.m.hermitian_part())?;
    let margin = match cm.side {
        ThresholdSide::LessThanIdentity => 1.0 - spectrum.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max),
        ThresholdSide::GreaterThanMinusIdentity => spectrum.iter().map(|z| z.re).fold(f64::INFINITY, f64::min) + 1.0,
    };
    let radius = match *region {
        Region::EllipseInterior { a: sa, b: sb } => Some(radius_ellipse_interior(a, h, sa, sb)?),
        Region::EllipseExterior { a: sa, b: sb } => Some(radius_ellipse_exterior(a, h, sa, sb)?),
        _ => None,
    };
    let b_norm = spectral_norm(b);
    let verdict = condition_holds || radius.is_some_and(|r| b_norm < r);
    Ok(PerturbationReport { condition_holds, margin, radius, b_norm, verdict })
}

fn ellipse_radius_inputs(a: &ComplexMatrix, h: &ComplexMatrix, sa: f64, sb: f64) -> Result<(f64, f64)> {
    Region::EllipseInterior { a: sa, b: sb }.validate()?;
    let n = a.require_square()?;
    same_square("radius", n, h)?;
    require_posdef(h)?;
    Ok((spectral_norm(a), spectral_norm(h)))
}

/// `ρ = sqrt(‖A‖² + b²/‖H‖) − ‖A‖` for the ellipse interior.
pub fn radius_ellipse_interior(a: &ComplexMatrix, h: &ComplexMatrix, sa: f64, sb: f64) -> Result<f64> {
    let (a_norm, h_norm) = ellipse_radius_inputs(a, h, sa, sb)?;
    let q = sb * sb / h_norm;
    // rationalized to avoid cancellation when ‖A‖² ≫ q
    Ok(q / ((a_norm * a_norm + q).sqrt() + a_norm))
}

/// `ρ = 2a²/(a² − b²) · (sqrt(‖A‖² + k·b²/‖H‖) − ‖A‖)`, `k = (a² − b²)/(2a²)`,
/// for the ellipse exterior.
pub fn radius_ellipse_exterior(a: &ComplexMatrix, h: &ComplexMatrix, sa: f64, sb: f64) -> Result<f64> {
    let (a_norm, h_norm) = ellipse_radius_inputs(a, h, sa, sb)?;
    let k = (sa * sa - sb * sb) / (2.0 * sa * sa);
    let q = sb * sb / h_norm;
    // (1/k)(sqrt(‖A‖² + kq) − ‖A‖) = q / (sqrt(‖A‖² + kq) + ‖A‖)
    Ok(q / ((a_norm * a_norm + k * q).sqrt() + a_norm))
}

/// Solves the region equation for the perturbed matrix `A + B` with
/// right-hand side `±C`.
pub fn perturbed_solvability(
    region: &Region,
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
) -> Result<SolveReport> {
    let form = region_form(region)?;
    let n = a.require_square()?;
    same_square("perturbed_solvability", n, b)?;
    same_square("perturbed_solvability", n, c)?;
    let perturbed = a + b;
    solve_kron(&form, &perturbed.adjoint(), &perturbed, &c.scale_real(form.rhs_sign().value()))
}
