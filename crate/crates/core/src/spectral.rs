//! Symmetric eigendecomposition by cyclic Jacobi sweeps.
//!
//! Each plane rotation annihilates one off-diagonal pair and lowers the
//! off-diagonal energy Λ(A) (sum of squared off-diagonal entries) by exactly
//! `2·a_rs²`, so Λ decreases strictly until the matrix is diagonal.

use std::f64::consts::FRAC_PI_2;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};

pub const DEFAULT_MAX_SWEEPS: usize = 50;

/// `U` with orthonormal eigenvector columns and ascending eigenvalues, so
/// that `A = U·diag(values)·Uᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralFactors {
    pub vectors: Matrix,
    pub values: Vec<f64>,
    /// Off-diagonal energy before the first sweep and after each sweep.
    pub energy_history: Vec<f64>,
}

impl SpectralFactors {
    pub fn sweeps(&self) -> usize {
        self.energy_history.len() - 1
    }

    pub fn reconstruct(&self) -> Matrix {
        let u = &self.vectors;
        let d = Matrix::from_diagonal(&self.values);
        &(u * &d) * &u.transpose()
    }

    /// Rebuilds `U·diag(f(λ))·Uᵀ`.
    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> SymmetricMatrix {
        let mapped: Vec<f64> = self.values.iter().map(|&v| f(v)).collect();
        let u = &self.vectors;
        SymmetricMatrix::symmetrize(&(&(u * &Matrix::from_diagonal(&mapped)) * &u.transpose()))
    }

    pub fn min_value(&self) -> f64 {
        self.values.first().copied().unwrap_or(f64::NAN)
    }

    pub fn max_value(&self) -> f64 {
        self.values.last().copied().unwrap_or(f64::NAN)
    }
}

/// Stopping rule and sweep limit for [`jacobi_eigendecomposition`].
#[derive(Debug, Clone, Copy)]
pub struct JacobiOptions {
    /// Stop once `Λ ≤ tol²`. `None` selects `1e−12·‖A‖_F`.
    pub tol: Option<f64>,
    pub max_sweeps: usize,
}

impl Default for JacobiOptions {
    fn default() -> Self {
        Self {
            tol: None,
            max_sweeps: DEFAULT_MAX_SWEEPS,
        }
    }
}

/// Λ(A): sum of squares of the off-diagonal entries.
pub fn offdiag_energy(a: &SymmetricMatrix) -> f64 {
    offdiag(a.as_matrix())
}

fn offdiag(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)] * a[(i, j)];
            }
        }
    }
    acc
}

/// The plane rotation with `[cos θ, sin θ; −sin θ, cos θ]` in rows/columns
/// `r, s` and the identity elsewhere.
pub fn plane_rotation(n: usize, r: usize, s: usize, theta: f64) -> Matrix {
    let (sn, cs) = theta.sin_cos();
    let mut u = Matrix::identity(n);
    u[(r, r)] = cs;
    u[(r, s)] = sn;
    u[(s, r)] = -sn;
    u[(s, s)] = cs;
    u
}

/// Angle θ₀ ∈ [0, π/2] for which `Uᵀ A U` has a zero in position `(r, s)`.
///
/// `b_rs(θ) = a_rs·cos 2θ + ½(a_rr − a_ss)·sin 2θ` changes sign on
/// `[0, π/2]`; the closed form picks its root there.
pub fn jacobi_rotation_angle(a: &SymmetricMatrix, r: usize, s: usize) -> Result<f64> {
    let n = a.order();
    if r >= n || s >= n {
        return Err(Error::Dimension(format!(
            "pivot ({r}, {s}) out of range for order {n}"
        )));
    }
    if r == s {
        return Err(Error::Usage("pivot indices must differ".into()));
    }
    let ars = a[(r, s)];
    if ars == 0.0 {
        return Err(Error::Usage(format!(
            "entry ({r}, {s}) is already zero; nothing to annihilate"
        )));
    }
    let mut theta = 0.5 * f64::atan2(2.0 * ars, a[(s, s)] - a[(r, r)]);
    if theta < 0.0 {
        theta += FRAC_PI_2;
    }
    Ok(theta)
}

/// Applies `A ← UᵀAU` and `V ← VU` for the rotation with cosine `c` and
/// sine `s` in plane `(p, q)`, then zeroes the annihilated pair.
fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Cyclic-by-rows Jacobi with the default options.
pub fn jacobi_eigen(a: &SymmetricMatrix) -> Result<SpectralFactors> {
    jacobi_eigendecomposition(a, JacobiOptions::default())
}

pub fn jacobi_eigendecomposition(
    a: &SymmetricMatrix,
    opts: JacobiOptions,
) -> Result<SpectralFactors> {
    let n = a.order();
    let tol = match opts.tol {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => return Err(Error::Usage(format!("tolerance must be positive, got {t}"))),
        None => 1e-12 * a.as_matrix().frobenius_norm(),
    };
    if !a.as_matrix().is_finite() {
        return Err(Error::Usage("matrix has non-finite entries".into()));
    }
    let threshold = tol * tol;

    let mut work = a.as_matrix().clone();
    let mut vecs = Matrix::identity(n);
    let mut history = vec![offdiag(&work)];

    loop {
        let energy = *history.last().unwrap();
        if energy <= threshold {
            break;
        }
        if history.len() > opts.max_sweeps {
            return Err(Error::Convergence {
                sweeps: opts.max_sweeps,
                residual: energy,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = work[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Smallest-magnitude zeroing angle: tan θ solves t² + 2ζt − 1 = 0.
                let zeta = (work[(q, q)] - work[(p, p)]) / (2.0 * apq);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + zeta.hypot(1.0))
                };
                let c = 1.0 / t.hypot(1.0);
                rotate(&mut work, &mut vecs, p, q, c, t * c);
            }
        }
        history.push(offdiag(&work));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(i, i)].total_cmp(&work[(j, j)]));
    let values: Vec<f64> = order.iter().map(|&i| work[(i, i)]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let mut col = vecs.column(src);
        canonicalize_sign(&mut col);
        vectors.set_column(dst, &col);
    }
    Ok(SpectralFactors {
        vectors,
        values,
        energy_history: history,
    })
}

/// Makes the largest-magnitude component positive (ties go to the lowest index).
fn canonicalize_sign(v: &mut [f64]) {
    let mut best = 0;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    if v.get(best).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

/// Smallest eigenvalue λ₁ of `a` with a unit eigenvector `w₁`.
pub fn min_eigenpair(a: &SymmetricMatrix) -> Result<(f64, Vec<f64>)> {
    let f = jacobi_eigen(a)?;
    Ok((f.values[0], f.vectors.column(0)))
}

/// True iff the smallest eigenvalue exceeds `1e−12·‖A‖_∞`.
pub fn is_positive_definite(a: &SymmetricMatrix) -> bool {
    let bound = 1e-12 * a.as_matrix().inf_norm();
    match jacobi_eigen(a) {
        Ok(f) => a.order() > 0 && f.min_value() > bound,
        Err(_) => false,
    }
}

/// Principal square root `V·diag(√λ)·Vᵀ` of a positive semi-definite matrix.
/// Eigenvalues within `−1e−10·‖C‖_∞` of zero are clamped.
pub fn sqrt_spd(c: &SymmetricMatrix) -> Result<SymmetricMatrix> {
    let f = jacobi_eigen(c)?;
    let floor = -1e-10 * c.as_matrix().inf_norm();
    let lo = f.min_value();
    if lo < floor {
        return Err(Error::NotPositiveDefinite { min_eigenvalue: lo });
    }
    Ok(f.map_values(|v| v.max(0.0).sqrt()))
}
