//! Random instance generators shared by the integration tests.
//!
//! Membership and boundary distances here are computed from the defining
//! inequalities and a dense sampling of the boundary curve, without going
//! through the library.
#![allow(dead_code)]

use lyaploc_core::{Complex, ComplexMatrix, Region};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut TestRng) -> Complex {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(re, im)
}

pub fn random_matrix(rng: &mut TestRng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| gaussian(rng)).collect();
    ComplexMatrix::new(rows, cols, data).unwrap()
}

pub fn random_real_matrix(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    let data: Vec<f64> = (0..n * n).map(|_| rng.sample(StandardNormal)).collect();
    ComplexMatrix::from_real(n, n, &data).unwrap()
}

/// Unit-norm random matrix (spectral norm 1).
pub fn random_direction(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    let m = random_matrix(rng, n, n);
    m.scale_real(1.0 / lyaploc_core::spectral_norm(&m))
}

/// Random unitary from modified Gram-Schmidt on Gaussian columns.
pub fn random_unitary(rng: &mut TestRng, n: usize) -> ComplexMatrix {
    let mut cols: Vec<Vec<Complex>> = (0..n).map(|_| (0..n).map(|_| gaussian(rng)).collect()).collect();
    for j in 0..n {
        for i in 0..j {
            let (done, rest) = cols.split_at_mut(j);
            let qi = &done[i];
            let dot: Complex = qi.iter().zip(rest[0].iter()).map(|(q, x)| q.conj() * x).sum();
            for (x, q) in rest[0].iter_mut().zip(qi) {
                *x -= dot * q;
            }
        }
        let norm = cols[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for x in cols[j].iter_mut() {
            *x /= norm;
        }
    }
    let mut q = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for (i, &z) in col.iter().enumerate() {
            q[(i, j)] = z;
        }
    }
    q
}

/// `S = Q₁ Σ Q₂` and its exact inverse, singular values in `[1, cond]`.
pub fn similarity(rng: &mut TestRng, n: usize, cond: f64) -> (ComplexMatrix, ComplexMatrix) {
    let q1 = random_unitary(rng, n);
    let q2 = random_unitary(rng, n);
    let sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..cond.ln()).exp()).collect();
    let d = ComplexMatrix::from_diag(&sigma.iter().map(|&s| Complex::new(s, 0.0)).collect::<Vec<_>>());
    let d_inv = ComplexMatrix::from_diag(&sigma.iter().map(|&s| Complex::new(1.0 / s, 0.0)).collect::<Vec<_>>());
    let s = &(&q1 * &d) * &q2;
    let s_inv = &(&q2.adjoint() * &d_inv) * &q1.adjoint();
    (s, s_inv)
}

/// `S D S⁻¹` with a random similarity of condition at most 10.
pub fn with_spectrum(rng: &mut TestRng, eigenvalues: &[Complex]) -> ComplexMatrix {
    let (s, s_inv) = similarity(rng, eigenvalues.len(), 10.0);
    &(&s * &ComplexMatrix::from_diag(eigenvalues)) * &s_inv
}

pub fn inside(region: &Region, z: Complex) -> bool {
    let (x, y) = (z.re, z.im);
    match *region {
        Region::HalfPlaneLeft => x < 0.0,
        Region::UnitDisk => x * x + y * y < 1.0,
        Region::EllipseInterior { a, b } => x * x / (a * a) + y * y / (b * b) < 1.0,
        Region::EllipseExterior { a, b } => x * x / (a * a) + y * y / (b * b) > 1.0,
        Region::ParabolaInterior { p } => y * y < 2.0 * p * x,
        Region::ParabolaExterior { p } => y * y > 2.0 * p * x,
    }
}

/// Distance to the boundary curve by dense sampling (an upper bound that is
/// tight to a few parts in 10⁴ at these scales).
pub fn sampled_distance(region: &Region, z: Complex) -> f64 {
    const N: usize = 20000;
    match *region {
        Region::HalfPlaneLeft => z.re.abs(),
        Region::UnitDisk => (z.norm() - 1.0).abs(),
        Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => (0..N)
            .map(|k| {
                let t = 2.0 * std::f64::consts::PI * k as f64 / N as f64;
                (z - Complex::new(a * t.cos(), b * t.sin())).norm()
            })
            .fold(f64::INFINITY, f64::min),
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => {
            // points (t²/2p, t) for |t| up to well past the sampled box
            let span = 4.0 * (z.norm() + 2.0 * p + 1.0);
            (0..=N)
                .map(|k| {
                    let t = -span + 2.0 * span * k as f64 / N as f64;
                    (z - Complex::new(t * t / (2.0 * p), t)).norm()
                })
                .fold(f64::INFINITY, f64::min)
        }
    }
}

/// Sampling box `[x0, x1] × [y0, y1]` covering the relevant part of the plane.
fn sampling_box(region: &Region) -> (f64, f64, f64, f64) {
    match *region {
        Region::HalfPlaneLeft => (-3.0, 3.0, -3.0, 3.0),
        Region::UnitDisk => (-2.0, 2.0, -2.0, 2.0),
        Region::EllipseInterior { a, b } => (-a, a, -b, b),
        Region::EllipseExterior { a, .. } => (-2.0 * a, 2.0 * a, -2.0 * a, 2.0 * a),
        Region::ParabolaInterior { p } => {
            let y = (8.0 * p).sqrt();
            (0.0, 4.0, -y, y)
        }
        Region::ParabolaExterior { .. } => (-2.0, 4.0, -4.0, 4.0),
    }
}

fn uniform_point(rng: &mut TestRng, region: &Region) -> Complex {
    let (x0, x1, y0, y1) = sampling_box(region);
    Complex::new(rng.gen_range(x0..x1), rng.gen_range(y0..y1))
}

/// Uniform point of the region (within its box) at distance ≥ `margin`
/// from the boundary.
pub fn point_in(rng: &mut TestRng, region: &Region, margin: f64) -> Complex {
    loop {
        let z = uniform_point(rng, region);
        if inside(region, z) && sampled_distance(region, z) >= margin {
            return z;
        }
    }
}

/// Point strictly outside the region, at distance ≥ `margin` from it.
pub fn point_out(rng: &mut TestRng, region: &Region, margin: f64) -> Complex {
    let wide = match *region {
        Region::EllipseInterior { a, b } => Region::EllipseExterior { a, b },
        Region::EllipseExterior { a, b } => Region::EllipseInterior { a, b },
        Region::ParabolaInterior { p } => Region::ParabolaExterior { p },
        Region::ParabolaExterior { p } => Region::ParabolaInterior { p },
        Region::HalfPlaneLeft | Region::UnitDisk => *region,
    };
    loop {
        let z = uniform_point(rng, &wide);
        if !inside(region, z) && sampled_distance(region, z) >= margin {
            return z;
        }
    }
}

/// Any point of the sampling box away from the boundary.
pub fn point_anywhere(rng: &mut TestRng, region: &Region, margin: f64) -> Complex {
    if rng.gen_bool(0.5) {
        point_in(rng, region, margin)
    } else {
        point_out(rng, region, margin)
    }
}

/// Spectrum of `n` points inside the region.
pub fn spectrum_inside(rng: &mut TestRng, region: &Region, n: usize, margin: f64) -> Vec<Complex> {
    (0..n).map(|_| point_in(rng, region, margin)).collect()
}

/// Spectrum with at least one point outside the region; the rest anywhere
/// away from the boundary.
pub fn spectrum_violating(rng: &mut TestRng, region: &Region, n: usize, margin: f64) -> Vec<Complex> {
    let bad = rng.gen_range(1..=n);
    let mut out: Vec<Complex> = (0..bad).map(|_| point_out(rng, region, margin)).collect();
    out.extend((bad..n).map(|_| point_anywhere(rng, region, margin)));
    out
}

/// Random region parameters with `a > b` comfortably.
pub fn random_ellipse(rng: &mut TestRng) -> (f64, f64) {
    let a = rng.gen_range(1.0..3.0);
    let b = a * rng.gen_range(0.3..0.85);
    (a, b)
}

pub fn random_parabola(rng: &mut TestRng) -> f64 {
    rng.gen_range(0.5..2.0)
}

/// The six regions with randomized parameters.
pub fn regions(rng: &mut TestRng) -> [Region; 6] {
    let (a, b) = random_ellipse(rng);
    let (a2, b2) = random_ellipse(rng);
    let p = random_parabola(rng);
    let p2 = random_parabola(rng);
    [
        Region::HalfPlaneLeft,
        Region::UnitDisk,
        Region::EllipseInterior { a, b },
        Region::EllipseExterior { a: a2, b: b2 },
        Region::ParabolaInterior { p },
        Region::ParabolaExterior { p: p2 },
    ]
}

pub fn region_name(region: &Region) -> &'static str {
    match region {
        Region::HalfPlaneLeft => "halfplane",
        Region::UnitDisk => "disk",
        Region::EllipseInterior { .. } => "ellipse-in",
        Region::EllipseExterior { .. } => "ellipse-out",
        Region::ParabolaInterior { .. } => "parabola-in",
        Region::ParabolaExterior { .. } => "parabola-out",
    }
}

/// Symbol value `P(λ̄, λ)` of the region equations, from the defining curve.
pub fn level(region: &Region, z: Complex) -> f64 {
    let (x, y) = (z.re, z.im);
    match *region {
        Region::HalfPlaneLeft => 2.0 * x,
        Region::UnitDisk => 1.0 - x * x - y * y,
        Region::EllipseInterior { a, b } | Region::EllipseExterior { a, b } => 1.0 - x * x / (a * a) - y * y / (b * b),
        Region::ParabolaInterior { p } | Region::ParabolaExterior { p } => 2.0 * x - y * y / p,
    }
}

/// Multiset distance: greedy nearest matching of two spectra.
pub fn spectra_distance(a: &[Complex], b: &[Complex]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut used = vec![false; b.len()];
    let mut worst: f64 = 0.0;
    for &z in a {
        let (k, d) = b
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, w)| (k, (z - w).norm()))
            .fold((usize::MAX, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        used[k] = true;
        worst = worst.max(d);
    }
    worst
}

/// Determinant by partial-pivoting Gaussian elimination on a copy.
pub fn determinant(a: &ComplexMatrix) -> Complex {
    let n = a.rows();
    let mut m: Vec<Vec<Complex>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut det = Complex::new(1.0, 0.0);
    for k in 0..n {
        let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm())).unwrap();
        if m[p][k].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        det *= m[k][k];
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            let (top, bottom) = m.split_at_mut(i);
            for (x, &v) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *x -= f * v;
            }
        }
    }
    det
}
