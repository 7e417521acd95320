//! Polar decomposition `A = R·exp(X)`, symmetric matrix exp/log, the SVD
//! obtained from the polar form, and the retraction path of the invertible
//! matrices onto the orthogonal group.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};
use crate::spectral::{jacobi_eigen, SpectralFactors};

/// Relative singularity threshold on the smallest singular value.
pub const SINGULAR_TOL: f64 = 1e-10;

const NEWTON_MAX_ITERS: usize = 100;

/// `A = R·P` with `R` orthogonal, `P` symmetric positive definite and
/// `P = exp(X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarFactors {
    pub rotation: Matrix,
    pub stretch: SymmetricMatrix,
    pub log_stretch: SymmetricMatrix,
}

impl PolarFactors {
    pub fn reconstruct(&self) -> Matrix {
        &self.rotation * self.stretch.as_matrix()
    }
}

/// `A = W·diag(Γ)·Vᵀ` with `Γ` positive and descending.
#[derive(Debug, Clone, PartialEq)]
pub struct Svd {
    pub left: Matrix,
    pub singular_values: Vec<f64>,
    pub right: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let g = Matrix::from_diagonal(&self.singular_values);
        &(&self.left * &g) * &self.right.transpose()
    }
}

fn check_invertible(a: &Matrix) -> Result<()> {
    a.require_square("polar decomposition")?;
    if !a.is_finite() {
        return Err(Error::Usage("matrix has non-finite entries".into()));
    }
    let gram = SymmetricMatrix::symmetrize(&a.gram());
    let lo = jacobi_eigen(&gram)?.min_value();
    let bound = SINGULAR_TOL * a.frobenius_norm();
    if !(lo.max(0.0).sqrt() > bound) {
        return Err(Error::Singular { min_eigenvalue: lo });
    }
    Ok(())
}

/// Orthogonal polar factor by the scaled Newton iteration
/// `X ← ½(γX + X⁻ᵀ/γ)`, which converges to `A·(AᵀA)^{−1/2}`.
fn orthogonal_factor(a: &Matrix) -> Result<Matrix> {
    let mut x = a.clone();
    let mut scaling = true;
    let mut prev_delta = f64::INFINITY;
    for _ in 0..NEWTON_MAX_ITERS {
        let inv = x.inverse()?;
        let gamma = if scaling {
            (inv.frobenius_norm() / x.frobenius_norm()).sqrt()
        } else {
            1.0
        };
        let next = (&x.scale(gamma) + &inv.transpose().scale(1.0 / gamma)).scale(0.5);
        let delta = (&next - &x).frobenius_norm() / next.frobenius_norm();
        x = next;
        if delta < 1e-2 {
            scaling = false;
        }
        if delta <= 4.0 * f64::EPSILON || (!scaling && delta >= prev_delta) {
            break;
        }
        prev_delta = if scaling { f64::INFINITY } else { delta };
    }
    if !x.is_finite() {
        return Err(Error::Singular {
            min_eigenvalue: 0.0,
        });
    }
    Ok(x)
}

/// Unique polar factors of an invertible square matrix.
pub fn polar_decompose(a: &Matrix) -> Result<PolarFactors> {
    check_invertible(a)?;
    let rotation = orthogonal_factor(a)?;
    let stretch = SymmetricMatrix::symmetrize(&(&rotation.transpose() * a));
    let spectrum = jacobi_eigen(&stretch)?;
    let lo = spectrum.min_value();
    if !(lo > SINGULAR_TOL * a.frobenius_norm()) {
        return Err(Error::Singular {
            min_eigenvalue: lo * lo.abs(),
        });
    }
    let log_stretch = spectrum.map_values(f64::ln);
    Ok(PolarFactors {
        rotation,
        stretch,
        log_stretch,
    })
}

/// `exp(X)` for symmetric `X`, evaluated on the eigenvalues.
pub fn matrix_exp_sym(x: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    Ok(jacobi_eigen(x)?.map_values(f64::exp))
}

/// The symmetric logarithm of a positive definite matrix.
pub fn matrix_log_spd(p: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let f = jacobi_eigen(p)?;
    let lo = f.min_value();
    if !(lo > 0.0) {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: lo });
    }
    Ok(f.map_values(f64::ln))
}

/// SVD read off the polar form: `A = R·P = R·V·Γ·Vᵀ = W·Γ·Vᵀ` with `W = R·V`.
pub fn svd_via_polar(a: &Matrix) -> Result<Svd> {
    let polar = polar_decompose(a)?;
    let SpectralFactors {
        vectors, values, ..
    } = jacobi_eigen(&polar.stretch)?;
    let n = values.len();
    // Ascending spectrum reversed into descending singular values.
    let right = Matrix::from_fn(n, n, |i, j| vectors[(i, n - 1 - j)]);
    let singular_values: Vec<f64> = values.into_iter().rev().collect();
    let left = &polar.rotation * &right;
    Ok(Svd {
        left,
        singular_values,
        right,
    })
}

/// The deformation `t ↦ R·exp((1 − t)·X)` from `A` (t = 0) to its orthogonal
/// factor `R` (t = 1). Each point is invertible with singular values
/// `σᵢ^{1−t}`.
#[derive(Debug, Clone)]
pub struct RetractionPath {
    rotation: Matrix,
    spectrum: SpectralFactors,
}

impl RetractionPath {
    pub fn new(a: &Matrix) -> Result<Self> {
        let polar = polar_decompose(a)?;
        let spectrum = jacobi_eigen(&polar.log_stretch)?;
        Ok(Self {
            rotation: polar.rotation,
            spectrum,
        })
    }

    pub fn rotation(&self) -> &Matrix {
        &self.rotation
    }

    pub fn sample(&self, t: f64) -> Result<Matrix> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::Usage(format!("path parameter {t} outside [0, 1]")));
        }
        let s = 1.0 - t;
        let stretch = self.spectrum.map_values(|x| (s * x).exp());
        Ok(&self.rotation * stretch.as_matrix())
    }
}

pub fn polar_retraction_path(a: &Matrix, t: f64) -> Result<Matrix> {
    RetractionPath::new(a)?.sample(t)
}
