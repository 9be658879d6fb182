//! Numerical tolerances shared by the solvers.

/// Hermitian test: `‖M − M*‖ ≤ HERM_TOL · ‖M‖`.
pub const HERM_TOL: f64 = 1e-10;
/// Cholesky pivots must exceed `POSDEF_TOL · ‖H‖`.
pub const POSDEF_TOL: f64 = 1e-12;
/// LU pivots below `PIVOT_TOL · max|entry|` are treated as zero.
pub const PIVOT_TOL: f64 = 1e-13;
/// Relative stopping tolerance of the power iteration behind the spectral norm.
pub const NORM_TOL: f64 = 1e-12;
/// Krein zero test: `|P| ≤ KREIN_TOL · max(1, max|a_jk| · R^(2N))`.
pub const KREIN_TOL: f64 = 1e-8;
/// QR sweeps allowed per eigenvalue.
pub const MAX_SWEEPS: usize = 30;
/// Eigenvector residual bound, relative to `‖A‖_F`.
pub const EIGVEC_TOL: f64 = 1e-9;
/// Default quadrature nodes per contour.
pub const DEFAULT_QUADRATURE: usize = 64;
/// Contour radius as a multiple of the largest eigenvalue distance from the centre.
pub const CONTOUR_RADIUS_FACTOR: f64 = 1.5;
/// Certificate residual bound.
pub const CERT_TOL: f64 = 1e-9;
