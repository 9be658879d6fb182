use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    DimensionMismatch {
        op: &'static str,
        expected: (usize, usize),
        found: (usize, usize),
    },
    NotSquare {
        rows: usize,
        cols: usize,
    },
    NonFinite,
    EmptyMatrix,
    /// LU pivot fell below `pivot_tol * max|entry|`.
    SingularMatrix {
        pivot_index: usize,
        pivot: f64,
    },
    NotHermitian {
        asymmetry: f64,
        tolerance: f64,
    },
    NotPositiveDefinite {
        pivot_index: usize,
        pivot: f64,
    },
    NoConvergence {
        iterations: usize,
    },
    NotAnEigenvalue {
        residual: f64,
    },
    /// The vectorized Lyapunov system could not be factored.
    SingularSystem {
        pivot_index: usize,
        pivot: f64,
    },
    InvalidForm(&'static str),
    InvalidContour(&'static str),
    ContourTooClose {
        min_symbol: f64,
        tolerance: f64,
    },
    /// `P(λ_s, μ_r)` vanishes (within tolerance) on the spectra.
    KreinViolation {
        min_symbol: f64,
        tolerance: f64,
        pairs: usize,
    },
    InvalidRegionParams(&'static str),
    /// The right-hand side `C` of a certificate is not Hermitian positive definite.
    CNotPositiveDefinite,
    /// `H` handed to a perturbation routine is not Hermitian positive definite.
    HNotPositiveDefinite,
    UnsupportedRegion(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { op, expected, found } => write!(
                f,
                "{op}: dimension mismatch, expected {}x{}, found {}x{}",
                expected.0, expected.1, found.0, found.1
            ),
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, expected square"),
            Error::NonFinite => f.write_str("matrix contains NaN or infinite entries"),
            Error::EmptyMatrix => f.write_str("matrix has no rows or no columns"),
            Error::SingularMatrix { pivot_index, pivot } => {
                write!(f, "matrix is singular: pivot {pivot_index} has magnitude {pivot:e}")
            }
            Error::NotHermitian { asymmetry, tolerance } => {
                write!(f, "matrix is not Hermitian: asymmetry {asymmetry:e} > {tolerance:e}")
            }
            Error::NotPositiveDefinite { pivot_index, pivot } => {
                write!(f, "matrix is not positive definite: pivot {pivot_index} is {pivot:e}")
            }
            Error::NoConvergence { iterations } => {
                write!(f, "QR iteration did not converge after {iterations} iterations")
            }
            Error::NotAnEigenvalue { residual } => {
                write!(f, "shift is not an eigenvalue: best residual {residual:e}")
            }
            Error::SingularSystem { pivot_index, pivot } => write!(
                f,
                "Lyapunov system is singular (pivot {pivot_index} = {pivot:e}); \
                 the symbol vanishes on the spectra"
            ),
            Error::InvalidForm(msg) => write!(f, "invalid Lyapunov form: {msg}"),
            Error::InvalidContour(msg) => write!(f, "invalid contour: {msg}"),
            Error::ContourTooClose { min_symbol, tolerance } => {
                write!(f, "contour too close to a singularity: min |P| or pivot {min_symbol:e} below {tolerance:e}")
            }
            Error::KreinViolation { min_symbol, tolerance, pairs } => write!(
                f,
                "Krein condition violated: {pairs} eigenvalue pair(s) with |P| <= {tolerance:e} (min {min_symbol:e})"
            ),
            Error::InvalidRegionParams(msg) => write!(f, "invalid region parameters: {msg}"),
            Error::CNotPositiveDefinite => f.write_str("right-hand side C is not Hermitian positive definite"),
            Error::HNotPositiveDefinite => f.write_str("H is not Hermitian positive definite"),
            Error::UnsupportedRegion(msg) => write!(f, "unsupported region: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
