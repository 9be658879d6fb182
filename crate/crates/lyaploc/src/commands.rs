use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use lyaploc_core::{
    certify, check_perturbation, cholesky_posdef, eig, krein_condition, radius_ellipse_exterior,
    radius_ellipse_interior, region_form, solve_contour, solve_kron, ContourConfig, Direction, Error, LyapunovForm,
    Region,
};

use crate::error::{exit, CliError};
use crate::format::{complex_pair, read_coefficients, read_matrix, write_matrix, MatrixFile, F64};
use crate::report::{KreinPairReport, KreinSummary, OracleReport, Report};

#[derive(Debug, Parser)]
#[command(name = "lyaploc", version, about = "Spectrum localization certificates for dense complex matrices")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Eigenvalues of a square matrix, sorted by (re, im).
    Spectrum { matrix: PathBuf },
    /// Certify that the spectrum of A lies in a region.
    Certify {
        matrix: PathBuf,
        #[command(flatten)]
        region: RegionArgs,
        /// Right-hand side C (Hermitian positive definite); identity by default.
        #[arg(long = "C", value_name = "PATH")]
        c: Option<PathBuf>,
        /// Cross-check the verdict against eigenvalue membership.
        #[arg(long)]
        oracle: bool,
    },
    /// Check whether A + B keeps its spectrum in the region.
    Perturb {
        #[arg(value_name = "A")]
        a_matrix: PathBuf,
        #[arg(value_name = "B")]
        b_matrix: Option<PathBuf>,
        #[command(flatten)]
        region: RegionArgs,
        /// Print only the norm radius (ellipse regions).
        #[arg(long)]
        radius_only: bool,
    },
    /// Solve Σ a_jk B^j H A^k = ±Y for H.
    Solve {
        #[arg(value_name = "A")]
        a_matrix: PathBuf,
        #[arg(value_name = "Y")]
        y_matrix: PathBuf,
        /// Coefficient file; alternative to the region flags.
        #[arg(long, value_name = "PATH")]
        coeffs: Option<PathBuf>,
        #[command(flatten)]
        region: RegionArgs,
        #[arg(long, value_enum, default_value_t = Method::Kron)]
        method: Method,
        /// Quadrature nodes per contour.
        #[arg(long = "Q", default_value_t = lyaploc_core::tol::DEFAULT_QUADRATURE)]
        q: usize,
        /// Write H to this matrix file.
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct RegionArgs {
    #[arg(long, value_enum)]
    pub region: Option<RegionKind>,
    /// Ellipse semi-axis along the real axis.
    #[arg(long, allow_negative_numbers = true)]
    pub a: Option<f64>,
    /// Ellipse semi-axis along the imaginary axis.
    #[arg(long, allow_negative_numbers = true)]
    pub b: Option<f64>,
    /// Parabola parameter.
    #[arg(long, allow_negative_numbers = true)]
    pub p: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegionKind {
    Halfplane,
    Disk,
    EllipseIn,
    EllipseOut,
    ParabolaIn,
    ParabolaOut,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Kron,
    Contour,
}

impl RegionArgs {
    fn build(&self) -> Result<Option<Region>, CliError> {
        let Some(kind) = self.region else {
            return Ok(None);
        };
        let need = |v: Option<f64>, name: &str| {
            v.ok_or_else(|| CliError::RegionParams(format!("--{name} is required for this region")))
        };
        let region = match kind {
            RegionKind::Halfplane => Region::HalfPlaneLeft,
            RegionKind::Disk => Region::UnitDisk,
            RegionKind::EllipseIn => Region::EllipseInterior { a: need(self.a, "a")?, b: need(self.b, "b")? },
            RegionKind::EllipseOut => Region::EllipseExterior { a: need(self.a, "a")?, b: need(self.b, "b")? },
            RegionKind::ParabolaIn => Region::ParabolaInterior { p: need(self.p, "p")? },
            RegionKind::ParabolaOut => Region::ParabolaExterior { p: need(self.p, "p")? },
        };
        region.validate()?;
        Ok(Some(region))
    }

    fn required(&self) -> Result<Region, CliError> {
        self.build()?.ok_or_else(|| CliError::Usage("--region is required".into()))
    }
}

fn direction_name(d: Direction) -> &'static str {
    match d {
        Direction::Iff => "iff",
        Direction::SufficientOnly => "sufficient_only",
    }
}

fn verdict_code(v: bool) -> i32 {
    if v {
        exit::VERDICT_TRUE
    } else {
        exit::VERDICT_FALSE
    }
}

/// Runs a command, filling `report`; returns the exit code.
pub fn run(command: &Command, report: &mut Report) -> Result<i32, CliError> {
    match command {
        Command::Spectrum { matrix } => spectrum(matrix, report),
        Command::Certify { matrix, region, c, oracle } => cmd_certify(matrix, region, c.as_deref(), *oracle, report),
        Command::Perturb { a_matrix, b_matrix, region, radius_only } => {
            perturb(a_matrix, b_matrix.as_deref(), region, *radius_only, report)
        }
        Command::Solve { a_matrix, y_matrix, coeffs, region, method, q, out } => {
            solve(a_matrix, y_matrix, coeffs.as_deref(), region, *method, *q, out.as_deref(), report)
        }
    }
}

fn spectrum(path: &Path, report: &mut Report) -> Result<i32, CliError> {
    let a = read_matrix(path)?;
    let s = eig(&a)?;
    report.eigenvalues = Some(s.iter().map(|&z| complex_pair(z)).collect());
    report.backward_error = Some(F64(s.backward_error));
    Ok(exit::VERDICT_TRUE)
}

fn cmd_certify(
    path: &Path,
    region: &RegionArgs,
    c: Option<&Path>,
    oracle: bool,
    report: &mut Report,
) -> Result<i32, CliError> {
    let region = region.required()?;
    report.region = Some(region.to_string());
    let a = read_matrix(path)?;
    let c = c.map(read_matrix).transpose()?;
    let mut cert = certify(&region, &a, c.as_ref())?;
    if oracle {
        let check = cert.cross_check(&a)?;
        report.oracle = Some(OracleReport {
            inside: check.membership.inside,
            margin: F64(check.membership.margin),
            agrees: check.agrees,
            eigenvalues: check.membership.spectrum.iter().map(|&z| complex_pair(z)).collect(),
        });
    }
    let verdict = cert.verdict();
    report.verdict = Some(verdict);
    report.posdef = Some(cert.posdef);
    report.direction = Some(direction_name(cert.direction));
    report.residual = Some(F64(cert.residual));
    report.min_pivot = Some(F64(cert.min_pivot));
    report.condition_estimate = Some(F64(cert.condition_estimate));
    report.h = Some(MatrixFile::from_matrix(&cert.h));
    Ok(verdict_code(verdict))
}

fn perturb(
    a_path: &Path,
    b_path: Option<&Path>,
    region: &RegionArgs,
    radius_only: bool,
    report: &mut Report,
) -> Result<i32, CliError> {
    let region = region.required()?;
    report.region = Some(region.to_string());
    if matches!(region, Region::HalfPlaneLeft | Region::UnitDisk) {
        return Err(
            Error::UnsupportedRegion("perturbation conditions exist only for ellipse and parabola regions").into()
        );
    }
    if radius_only && !matches!(region, Region::EllipseInterior { .. } | Region::EllipseExterior { .. }) {
        return Err(CliError::Usage(
            "--radius-only needs an ellipse region; parabolas have no closed-form radius".into(),
        ));
    }
    let a = read_matrix(a_path)?;
    let b = match (radius_only, b_path) {
        (true, _) => None,
        (false, Some(p)) => Some(read_matrix(p)?),
        (false, None) => return Err(CliError::Usage("perturb needs a B matrix unless --radius-only is given".into())),
    };
    let cert = match certify(&region, &a, None) {
        Ok(cert) if cert.verdict() => cert,
        Ok(cert) => {
            return Err(CliError::BaseCertificate(format!(
                "H is not a positive definite solution (posdef {}, residual {:e})",
                cert.posdef, cert.residual
            )))
        }
        Err(e @ Error::SingularSystem { .. }) => return Err(CliError::BaseCertificate(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    let Some(b) = b else {
        let rho = match region {
            Region::EllipseInterior { a: sa, b: sb } => radius_ellipse_interior(&a, &cert.h, sa, sb)?,
            Region::EllipseExterior { a: sa, b: sb } => radius_ellipse_exterior(&a, &cert.h, sa, sb)?,
            _ => unreachable!("checked above"),
        };
        report.radius = Some(F64(rho));
        return Ok(exit::VERDICT_TRUE);
    };
    let rep = check_perturbation(&region, &a, &b, &cert.h)?;
    report.verdict = Some(rep.verdict);
    report.condition_holds = Some(rep.condition_holds);
    report.margin = Some(F64(rep.margin));
    report.radius = rep.radius.map(F64);
    report.b_norm = Some(F64(rep.b_norm));
    Ok(verdict_code(rep.verdict))
}

#[allow(clippy::too_many_arguments)]
fn solve(
    a_path: &Path,
    y_path: &Path,
    coeffs: Option<&Path>,
    region: &RegionArgs,
    method: Method,
    q: usize,
    out: Option<&Path>,
    report: &mut Report,
) -> Result<i32, CliError> {
    let (form, b_path): (LyapunovForm, Option<PathBuf>) = match (coeffs, region.build()?) {
        (Some(_), Some(_)) => return Err(CliError::Usage("give either --coeffs or --region, not both".into())),
        (None, None) => return Err(CliError::Usage("solve needs --coeffs or --region".into())),
        (Some(path), None) => {
            let c = read_coefficients(path)?;
            (c.form, c.b_path)
        }
        (None, Some(r)) => {
            report.region = Some(r.to_string());
            (region_form(&r)?, None)
        }
    };
    let a = read_matrix(a_path)?;
    let y = read_matrix(y_path)?.scale_real(form.rhs_sign().value());
    let b = match b_path {
        Some(p) => read_matrix(&p)?,
        None => a.adjoint(),
    };
    report.method = Some(format!("{method:?}").to_lowercase());

    let spec_b = eig(&b)?;
    let spec_a = eig(&a)?;
    let krein = krein_condition(&form, &spec_b, &spec_a);
    report.krein = Some(KreinSummary {
        min_abs_symbol: F64(krein.min_abs_symbol),
        tolerance: F64(krein.tolerance),
        pairs: krein
            .offending
            .iter()
            .map(|p| KreinPairReport {
                lambda: complex_pair(spec_b.eigenvalues[p.s]),
                mu: complex_pair(spec_a.eigenvalues[p.r]),
                abs_symbol: F64(p.abs_symbol),
            })
            .collect(),
    });
    if !krein.is_ok() {
        return Err(Error::KreinViolation {
            min_symbol: krein.min_abs_symbol,
            tolerance: krein.tolerance,
            pairs: krein.offending.len(),
        }
        .into());
    }

    let solved = match method {
        Method::Kron => solve_kron(&form, &b, &a, &y)?,
        Method::Contour => {
            let cfg_b = ContourConfig::enclosing(&b, q)?;
            let cfg_a = ContourConfig::enclosing(&a, q)?;
            solve_contour(&form, &b, &a, &y, &cfg_b, &cfg_a)?
        }
    };
    if let Some(path) = out {
        write_matrix(path, &solved.h)?;
    }
    if solved.h.is_square() {
        report.posdef = Some(cholesky_posdef(&solved.h).is_ok());
    }
    report.residual = Some(F64(solved.residual));
    report.condition_estimate = Some(F64(solved.condition_estimate));
    report.hermitized = Some(solved.hermitized);
    report.h = Some(MatrixFile::from_matrix(&solved.h));
    Ok(exit::VERDICT_TRUE)
}

/// Runs the parsed command line and returns the finished report.
pub fn execute(cli: &Cli, argv: Vec<String>) -> Report {
    let start = std::time::Instant::now();
    let mut report = Report { command: argv, ..Report::default() };
    report.exit_code = match run(&cli.command, &mut report) {
        Ok(code) => code,
        Err(e) => {
            report.error = Some((&e).into());
            e.exit_code()
        }
    };
    report.timings.total_seconds = F64(start.elapsed().as_secs_f64());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn command_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
