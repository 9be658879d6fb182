//! Spectral target regions and the certificates attached to them.
//!
//! Each region comes with a Lyapunov-type equation (`B = A*`, `Y = ±C`)
//! whose Hermitian positive definite solvability decides whether `σ(A)`
//! lies in the region:
//!
//! | region             | equation                                          | sign |
//! |--------------------|---------------------------------------------------|------|
//! | `Re λ < 0`         | `HA + A*H = −C`                                   | −    |
//! | `|λ| < 1`          | `H − A*HA = C`                                    | +    |
//! | ellipse interior   | `H − c₁A*HA − c₂(HA² + A*²H) = C`                 | +    |
//! | ellipse exterior   | same left side, `= −C`                            | −    |
//! | parabola interior  | `HA + A*H − A*HA/(2p) + (HA² + A*²H)/(4p) = C`    | +    |
//! | parabola exterior  | same left side, `= −C` (sufficient only)          | −    |
//!
//! with `c₁ = 1/(2a²) + 1/(2b²)` and `c₂ = 1/(4a²) − 1/(4b²)`.

use alloc::vec::Vec;
use core::fmt;

#[allow(unused_imports)]
use num_traits::Float;

use crate::cholesky::cholesky_posdef;
use crate::eigen::{eig, Spectrum};
use crate::error::{Error, Result};
use crate::lyapunov::kron::solve_kron;
use crate::lyapunov::{LyapunovForm, RhsSign};
use crate::matrix::ComplexMatrix;
use crate::tol::CERT_TOL;
use crate::Complex;

/// Open subsets of the complex plane targeted by the certificates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Region {
    /// `Re λ < 0`.
    HalfPlaneLeft,
    /// `|λ| < 1`.
    UnitDisk,
    /// `(Re λ)²/a² + (Im λ)²/b² < 1`, `a > b > 0`.
    EllipseInterior { a: f64, b: f64 },
    /// `(Re λ)²/a² + (Im λ)²/b² > 1`, `a > b > 0`.
    EllipseExterior { a: f64, b: f64 },
    /// `(Im λ)² < 2p Re λ`, `p > 0`.
    ParabolaInterior { p: f64 },
    /// `(Im λ)² > 2p Re λ`, `p > 0`.
    ParabolaExterior { p: f64 },
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::HalfPlaneLeft => f.write_str("halfplane"),
            Region::UnitDisk => f.write_str("disk"),
            Region::EllipseInterior { a, b } => write!(f, "ellipse-in(a={a}, b={b})"),
            Region::EllipseExterior { a, b } => write!(f, "ellipse-out(a={a}, b={b})"),
            Region::ParabolaInterior { p } => write!(f, "parabola-in(p={p})"),
            Region::ParabolaExterior { p } => write!(f, "parabola-out(p={p})"),
        }
    }
}

impl Region {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Region::HalfPlaneLeft | Region::UnitDisk => Ok(()),
            Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => {
                if !(a.is_finite() && b.is_finite()) {
                    Err(Error::InvalidRegionParams("ellipse semi-axes must be finite"))
                } else if !(b > 0.0) {
                    Err(Error::InvalidRegionParams("ellipse semi-axes must be positive"))
                } else if !(a > b) {
                    Err(Error::InvalidRegionParams("ellipse requires a > b"))
                } else {
                    Ok(())
                }
            }
            Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => {
                if p.is_finite() && p > 0.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidRegionParams("parabola requires p > 0"))
                }
            }
        }
    }

    /// Signed defining function, positive on the interior side of the curve:
    /// `−Re λ`, `1 − |λ|²`, `1 − x²/a² − y²/b²` or `2x − y²/p`.
    pub fn level(&self, z: Complex) -> f64 {
        let (x, y) = (z.re, z.im);
        match *self {
            Region::HalfPlaneLeft => -x,
            Region::UnitDisk => 1.0 - z.norm_sqr(),
            Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => {
                1.0 - x * x / (a * a) - y * y / (b * b)
            }
            Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => 2.0 * x - y * y / p,
        }
    }

    fn is_exterior(&self) -> bool {
        matches!(self, Region::EllipseExterior { .. } | Region::ParabolaExterior { .. })
    }

    pub fn direction(&self) -> Direction {
        match self {
            Region::ParabolaExterior { .. } => Direction::SufficientOnly,
            _ => Direction::Iff,
        }
    }
}

/// Strict membership; boundary points belong to no region.
pub fn contains(region: &Region, z: Complex) -> bool {
    let g = region.level(z);
    if region.is_exterior() {
        g < 0.0
    } else {
        g > 0.0
    }
}

/// Euclidean distance from `z` to the boundary curve of `region`.
pub fn boundary_distance(region: &Region, z: Complex) -> f64 {
    match *region {
        Region::HalfPlaneLeft => z.re.abs(),
        Region::UnitDisk => (z.norm() - 1.0).abs(),
        Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => ellipse_distance(a, b, z),
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => parabola_distance(p, z),
    }
}

fn ellipse_distance(a: f64, b: f64, z: Complex) -> f64 {
    use core::f64::consts::FRAC_PI_2;
    // the nearest boundary point lies in the same quadrant
    let (x, y) = (z.re.abs(), z.im.abs());
    let dist2 = |t: f64| {
        let dx = a * t.cos() - x;
        let dy = b * t.sin() - y;
        dx * dx + dy * dy
    };
    const GRID: usize = 256;
    let step = FRAC_PI_2 / GRID as f64;
    let best = (0..=GRID)
        .map(|k| (k, dist2(k as f64 * step)))
        .fold((0, f64::INFINITY), |best, cur| if cur.1 < best.1 { cur } else { best })
        .0;
    let mut lo = (best as f64 - 1.0).max(0.0) * step;
    let mut hi = (best as f64 + 1.0).min(GRID as f64) * step;
    let ratio = 0.5 * (5.0f64.sqrt() - 1.0);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    for _ in 0..80 {
        if dist2(c) < dist2(d) {
            hi = d;
        } else {
            lo = c;
        }
        c = hi - ratio * (hi - lo);
        d = lo + ratio * (hi - lo);
    }
    dist2(0.5 * (lo + hi)).min(dist2(best as f64 * step)).sqrt()
}

fn parabola_distance(p: f64, z: Complex) -> f64 {
    // boundary point (t²/(2p), t); stationary points solve t³ + 2p(p − x)t − 2p²y = 0
    let (x, y) = (z.re, z.im);
    let dist = |t: f64| {
        let dx = t * t / (2.0 * p) - x;
        let dy = t - y;
        (dx * dx + dy * dy).sqrt()
    };
    let coef = 2.0 * p * (p - x);
    let constant = -2.0 * p * p * y;
    real_cubic_roots(coef, constant).into_iter().map(dist).fold(f64::INFINITY, f64::min)
}

/// Real roots of `t³ + c t + d = 0`.
fn real_cubic_roots(c: f64, d: f64) -> Vec<f64> {
    let disc = (d / 2.0).powi(2) + (c / 3.0).powi(3);
    let mut roots = Vec::with_capacity(3);
    if disc >= 0.0 {
        let s = disc.sqrt();
        roots.push((-d / 2.0 + s).cbrt() + (-d / 2.0 - s).cbrt());
    } else {
        let r = (-c / 3.0).sqrt();
        let phi = (-d / (2.0 * r * r * r)).clamp(-1.0, 1.0).acos();
        for k in 0..3 {
            roots.push(2.0 * r * ((phi + 2.0 * core::f64::consts::PI * k as f64) / 3.0).cos());
        }
    }
    // one Newton polish per root
    roots
        .into_iter()
        .map(|t| {
            let f = t * t * t + c * t + d;
            let df = 3.0 * t * t + c;
            if df != 0.0 {
                t - f / df
            } else {
                t
            }
        })
        .collect()
}

/// Coefficient grid and right-hand-side sign of the region equation.
pub fn region_form(region: &Region) -> Result<LyapunovForm> {
    region.validate()?;
    match *region {
        Region::HalfPlaneLeft => LyapunovForm::from_terms(1, &[(0, 1, 1.0), (1, 0, 1.0)], RhsSign::Minus),
        Region::UnitDisk => LyapunovForm::from_terms(1, &[(0, 0, 1.0), (1, 1, -1.0)], RhsSign::Plus),
        Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => {
            let (a2, b2) = (a * a, b * b);
            let a11 = -(1.0 / (2.0 * a2) + 1.0 / (2.0 * b2));
            let a02 = -(1.0 / (4.0 * a2) - 1.0 / (4.0 * b2));
            let sign = if region.is_exterior() { RhsSign::Minus } else { RhsSign::Plus };
            LyapunovForm::from_terms(2, &[(0, 0, 1.0), (1, 1, a11), (0, 2, a02), (2, 0, a02)], sign)
        }
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => {
            let sign = if region.is_exterior() { RhsSign::Minus } else { RhsSign::Plus };
            LyapunovForm::from_terms(
                2,
                &[(0, 1, 1.0), (1, 0, 1.0), (1, 1, -1.0 / (2.0 * p)), (0, 2, 1.0 / (4.0 * p)), (2, 0, 1.0 / (4.0 * p))],
                sign,
            )
        }
    }
}

/// Whether a certificate is a criterion or only a sufficient condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Iff,
    SufficientOnly,
}

/// Eigenvalue-oracle view of a matrix relative to a region.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumMembership {
    pub inside: bool,
    /// Smallest signed boundary distance over the eigenvalues, positive when
    /// the eigenvalue is in the region.
    pub margin: f64,
    pub spectrum: Spectrum,
}

/// Oracle membership of `σ(A)`.
pub fn spectrum_in_region(region: &Region, a: &ComplexMatrix) -> Result<SpectrumMembership> {
    region.validate()?;
    let spectrum = eig(a)?;
    let mut inside = true;
    let mut margin = f64::INFINITY;
    for &z in spectrum.iter() {
        let member = contains(region, z);
        inside &= member;
        let d = boundary_distance(region, z);
        margin = margin.min(if member { d } else { -d });
    }
    Ok(SpectrumMembership { inside, margin, spectrum })
}

/// Eigenvalue cross-check attached to a certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleCheck {
    pub membership: SpectrumMembership,
    /// No contradiction between certificate and oracle: for criteria the
    /// verdicts must coincide, for sufficient-only certificates a positive
    /// verdict must come with an in-region spectrum.
    pub agrees: bool,
}

/// Solved region equation plus definiteness evidence.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub region: Region,
    pub h: ComplexMatrix,
    pub residual: f64,
    pub posdef: bool,
    /// Smallest Cholesky pivot of `H` (the failing pivot when not definite).
    pub min_pivot: f64,
    pub condition_estimate: f64,
    pub direction: Direction,
    pub oracle: Option<OracleCheck>,
}

impl Certificate {
    /// `H ≻ 0` and the equation is satisfied to `CERT_TOL`.
    pub fn verdict(&self) -> bool {
        self.posdef && self.residual <= CERT_TOL
    }

    /// Compares the verdict with eigenvalue membership of `a`.
    pub fn cross_check(&mut self, a: &ComplexMatrix) -> Result<&OracleCheck> {
        let membership = spectrum_in_region(&self.region, a)?;
        let verdict = self.verdict();
        let agrees = match self.direction {
            Direction::Iff => verdict == membership.inside,
            Direction::SufficientOnly => !verdict || membership.inside,
        };
        Ok(self.oracle.insert(OracleCheck { membership, agrees }))
    }
}

/// Solves the region equation with `B = A*`, `Y = ±C` (`C = I` by default)
/// and tests the solution for Hermitian positive definiteness.
pub fn certify(region: &Region, a: &ComplexMatrix, c: Option<&ComplexMatrix>) -> Result<Certificate> {
    let form = region_form(region)?;
    let n = a.require_square()?;
    let c = match c {
        Some(c) => {
            if c.shape() != (n, n) {
                return Err(Error::DimensionMismatch { op: "certify", expected: (n, n), found: c.shape() });
            }
            cholesky_posdef(c).map_err(|_| Error::CNotPositiveDefinite)?;
            c.clone()
        }
        None => ComplexMatrix::identity(n),
    };
    let y = c.scale_real(form.rhs_sign().value());
    let report = solve_kron(&form, &a.adjoint(), a, &y)?;
    let (posdef, min_pivot) = match cholesky_posdef(&report.h) {
        Ok(f) => (true, f.min_pivot),
        Err(Error::NotPositiveDefinite { pivot, .. }) => (false, pivot),
        Err(Error::NotHermitian { .. }) => (false, f64::NAN),
        Err(e) => return Err(e),
    };
    Ok(Certificate {
        region: *region,
        h: report.h,
        residual: report.residual,
        posdef,
        min_pivot,
        condition_estimate: report.condition_estimate,
        direction: region.direction(),
        oracle: None,
    })
}
