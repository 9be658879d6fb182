//! Spectrum localization certificates built on Lyapunov-type matrix equations.
//!
//! The crate solves generalized Lyapunov equations
//! `Σ a_jk B^j H A^k = Y` by Kronecker vectorization and by Krein's double
//! contour integral, turns the solutions into certificates that the spectrum
//! of `A` lies in a half-plane, disk, ellipse or parabola bounded region, and
//! evaluates perturbation conditions under which that localization survives
//! `A -> A + B`. An independent shifted-QR eigenvalue solver is provided as
//! an oracle for cross-checking.
//!
//! The crate is `no_std` and only needs `alloc`.

// `!(x > t)` also rejects NaN
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]
#![no_std]

extern crate alloc;

mod cholesky;
pub mod eigen;
mod error;
mod lu;
pub mod lyapunov;
mod matrix;
pub mod perturbation;
pub mod regions;
pub mod tol;

pub use cholesky::{cholesky_posdef, CholeskyFactor};
pub use eigen::{eig, eigvec, hessenberg, Spectrum};
pub use error::{Error, Result};
pub use lu::{lu_solve, LuFactors, LuSolution};
pub use lyapunov::{
    contour::{solve_contour, ContourConfig},
    krein_condition,
    kron::solve_kron,
    residual, symbol_eval, KreinReport, LyapunovForm, RhsSign, SolveReport,
};
pub use matrix::{adjoint, hermitian_verdict, mat_mul, spectral_norm, ComplexMatrix, HermitianVerdict};
pub use perturbation::{
    check_perturbation, condition_matrix, perturbed_solvability, radius_ellipse_exterior, radius_ellipse_interior,
    ConditionKind, ConditionMatrix, PerturbationReport, ThresholdSide,
};
pub use regions::{
    boundary_distance, certify, contains, region_form, spectrum_in_region, Certificate, Direction, Region,
    SpectrumMembership,
};

/// Complex scalar used throughout the crate.
pub type Complex = num_complex::Complex64;
