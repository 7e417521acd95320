//! Wahba's problem and the rational rotation ⇄ quaternion machinery.
//!
//! The Landis matrix of a 3×3 matrix `S` is a symmetric 4×4 matrix built
//! from sums and differences of the entries of `S`. For an exact rotation it
//! equals `4·q·qᵀ`, so each column is a multiple of the quaternion. Sending a
//! column through the cover map and dividing by its squared norm gives back
//! the rotation with no square roots taken.

use crate::error::{Error, Result};
use crate::matrix::{Matrix, SymmetricMatrix};
use crate::polar::polar_decompose;
use crate::quat::{Quaternion, Vector3};
use crate::spectral::jacobi_eigen;
use crate::stiefel::{orientation, parity_with_tol, Parity};

/// Default orthogonality tolerance for [`quat_from_rotation`].
pub const ROTATION_TOL: f64 = 1e-6;

/// Smallest admissible squared norm of the selected Landis column.
pub const LANDIS_DEGENERATE: f64 = 1e-8;

const VECTOR_UNIT_TOL: f64 = 1e-9;

/// The 4×4 Landis matrix of a 3×3 matrix.
pub fn landis(s: &Matrix) -> Result<Matrix> {
    s.require_shape(3, 3, "Landis matrix")?;
    let e = |i: usize, j: usize| s[(i - 1, j - 1)];
    Ok(Matrix::from_array([
        [
            1.0 + e(1, 1) + e(2, 2) + e(3, 3),
            e(3, 2) - e(2, 3),
            e(1, 3) - e(3, 1),
            e(2, 1) - e(1, 2),
        ],
        [
            e(3, 2) - e(2, 3),
            1.0 + e(1, 1) - e(2, 2) - e(3, 3),
            e(1, 2) + e(2, 1),
            e(1, 3) + e(3, 1),
        ],
        [
            e(1, 3) - e(3, 1),
            e(1, 2) + e(2, 1),
            1.0 - e(1, 1) + e(2, 2) - e(3, 3),
            e(2, 3) + e(3, 2),
        ],
        [
            e(2, 1) - e(1, 2),
            e(1, 3) + e(3, 1),
            e(2, 3) + e(3, 2),
            1.0 - e(1, 1) - e(2, 2) + e(3, 3),
        ],
    ]))
}

/// The two-measurement K-matrix of Bar-Itzhack. It only reads the first two
/// columns of `s`.
pub fn itzhak(s: &Matrix) -> Result<SymmetricMatrix> {
    s.require_shape(3, 3, "Bar-Itzhack matrix")?;
    let d = |i: usize, j: usize| s[(i - 1, j - 1)];
    let m = Matrix::from_array([
        [d(1, 1) - d(2, 2), d(2, 1) + d(1, 2), d(3, 1), -d(3, 2)],
        [d(2, 1) + d(1, 2), d(2, 2) - d(1, 1), d(3, 2), d(3, 1)],
        [d(3, 1), d(3, 2), -d(1, 1) - d(2, 2), d(1, 2) - d(2, 1)],
        [-d(3, 2), d(3, 1), d(1, 2) - d(2, 1), d(1, 1) + d(2, 2)],
    ]);
    Ok(SymmetricMatrix::symmetrize(&m.scale(0.5)))
}

/// `4·(1 + S₁₁ + S₂₂ + S₃₃)`, the squared norm of the first Landis column
/// when `S` is an exact rotation.
pub fn landis_denominator(s: &Matrix) -> Result<f64> {
    s.require_shape(3, 3, "Landis denominator")?;
    Ok(4.0 * (1.0 + s.trace()))
}

/// Index of the Landis column with the largest diagonal entry (ties go to
/// the lowest index).
fn pick_column(l: &Matrix) -> usize {
    (0..4).fold(
        0,
        |best, k| if l[(k, k)] > l[(best, best)] { k } else { best },
    )
}

fn column_quaternion(l: &Matrix, k: usize) -> Quaternion {
    Quaternion::new(l[(0, k)], l[(1, k)], l[(2, k)], l[(3, k)])
}

/// Unit quaternion of a proper rotation, with non-negative scalar part.
pub fn quat_from_rotation(s: &Matrix) -> Result<Quaternion> {
    quat_from_rotation_with_tol(s, ROTATION_TOL)
}

pub fn quat_from_rotation_with_tol(s: &Matrix, tol: f64) -> Result<Quaternion> {
    s.require_shape(3, 3, "rotation to quaternion")?;
    if parity_with_tol(s, tol)? == Parity::Negative {
        return Err(Error::Reflection);
    }
    let l = landis(s)?;
    let k = pick_column(&l);
    Ok(column_quaternion(&l, k).normalize()?.canonical_sign())
}

/// Square-root-free orthogonalization: the cover image of a Landis column
/// divided by that column's squared norm Γ.
///
/// `rescale_rows` additionally normalizes each output row to unit length.
pub fn orthogonalize_rational(s: &Matrix, rescale_rows: bool) -> Result<Matrix> {
    s.require_shape(3, 3, "rational orthogonalization")?;
    if !s.is_finite() {
        return Err(Error::Usage("matrix has non-finite entries".into()));
    }
    if orientation(s)? == Parity::Negative {
        return Err(Error::Reflection);
    }
    let l = landis(s)?;
    let mut k = pick_column(&l);
    let gamma = |k: usize| column_quaternion(&l, k).norm_sq();
    if gamma(k) < LANDIS_DEGENERATE {
        k = (0..4).fold(0, |b, j| if gamma(j) > gamma(b) { j } else { b });
        if gamma(k) < LANDIS_DEGENERATE {
            return Err(Error::Degenerate(
                "every Landis column has negligible norm".into(),
            ));
        }
    }
    let col = column_quaternion(&l, k);
    let mut out = col.to_rotation_matrix().scale(1.0 / gamma(k));
    if rescale_rows {
        for i in 0..3 {
            let len = out.row(i).iter().map(|v| v * v).sum::<f64>().sqrt();
            for j in 0..3 {
                out[(i, j)] /= len;
            }
        }
    }
    Ok(out)
}

/// One weighted vector pair: ideally `observed = A·reference`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation {
    pub weight: f64,
    pub reference: Vector3,
    pub observed: Vector3,
}

impl Observation {
    pub fn new(weight: f64, reference: Vector3, observed: Vector3) -> Self {
        Self {
            weight,
            reference,
            observed,
        }
    }
}

/// A validated Wahba problem: positive weights, unit vectors and at least
/// one non-collinear pair of reference directions.
#[derive(Debug, Clone, PartialEq)]
pub struct WahbaProblem {
    observations: Vec<Observation>,
}

impl WahbaProblem {
    pub fn new(observations: Vec<Observation>) -> Result<Self> {
        if observations.len() < 2 {
            return Err(Error::Usage(format!(
                "Wahba problem needs at least 2 observations, got {}",
                observations.len()
            )));
        }
        for (i, o) in observations.iter().enumerate() {
            if !(o.weight > 0.0 && o.weight.is_finite()) {
                return Err(Error::Usage(format!(
                    "observation {i}: weight must be positive"
                )));
            }
            for (name, v) in [("reference", o.reference), ("observed", o.observed)] {
                if !v.is_finite() || (v.norm_sq() - 1.0).abs() > VECTOR_UNIT_TOL {
                    return Err(Error::Usage(format!(
                        "observation {i}: {name} vector is not unit (|v|^2 = {})",
                        v.norm_sq()
                    )));
                }
            }
        }
        let spread = observations.iter().enumerate().any(|(i, a)| {
            observations[i + 1..]
                .iter()
                .any(|b| a.reference.dot(b.reference).abs() < 1.0 - 1e-9)
        });
        if !spread {
            return Err(Error::Degenerate(
                "all reference vectors are collinear".into(),
            ));
        }
        Ok(Self { observations })
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn total_weight(&self) -> f64 {
        self.observations.iter().map(|o| o.weight).sum()
    }
}

/// `B = Σ wᵢ·obsᵢ·refᵢᵀ` and Davenport's K-matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AttitudeProfile {
    pub b: Matrix,
    pub k: SymmetricMatrix,
}

fn attitude_matrix_b(p: &WahbaProblem) -> Matrix {
    let mut b = Matrix::zeros(3, 3);
    for o in p.observations() {
        let obs = o.observed.to_array();
        let r = o.reference.to_array();
        for i in 0..3 {
            for j in 0..3 {
                b[(i, j)] += o.weight * obs[i] * r[j];
            }
        }
    }
    b
}

/// Builds `K = [[σ, zᵀ], [z, B + Bᵀ − σI]]` with `σ = tr B` and
/// `z = (B₃₂ − B₂₃, B₁₃ − B₃₁, B₂₁ − B₁₂)`, so that `qᵀKq = tr(Φ(q)ᵀB)`.
pub fn attitude_profile(p: &WahbaProblem) -> AttitudeProfile {
    let b = attitude_matrix_b(p);
    let sigma = b.trace();
    let z = [
        b[(2, 1)] - b[(1, 2)],
        b[(0, 2)] - b[(2, 0)],
        b[(1, 0)] - b[(0, 1)],
    ];
    let mut k = Matrix::zeros(4, 4);
    k[(0, 0)] = sigma;
    for i in 0..3 {
        k[(0, i + 1)] = z[i];
        k[(i + 1, 0)] = z[i];
        for j in 0..3 {
            k[(i + 1, j + 1)] = b[(i, j)] + b[(j, i)] - if i == j { sigma } else { 0.0 };
        }
    }
    AttitudeProfile {
        b,
        k: SymmetricMatrix::symmetrize(&k),
    }
}

/// Optimal attitude quaternion: the eigenvector of K for its largest
/// eigenvalue.
pub fn solve_wahba_davenport(p: &WahbaProblem) -> Result<Quaternion> {
    let profile = attitude_profile(p);
    let f = jacobi_eigen(&profile.k)?;
    let top = f.values[3];
    let gap = top - f.values[2];
    if gap <= 1e-9 * top.abs().max(1.0) {
        return Err(Error::Ambiguous(format!(
            "largest eigenvalue of K is not simple (gap {gap:.3e})"
        )));
    }
    let v = f.vectors.column(3);
    Ok(Quaternion::from_slice(&v).normalize()?.canonical_sign())
}

/// Optimal attitude as the orthogonal polar factor of `B`.
pub fn solve_wahba_svd(p: &WahbaProblem) -> Result<Matrix> {
    let b = attitude_matrix_b(p);
    let polar = polar_decompose(&b)?;
    if parity_with_tol(&polar.rotation, 1e-8)? == Parity::Negative {
        return Err(Error::Reflection);
    }
    Ok(polar.rotation)
}

/// `L(A) = ½ Σ wᵢ‖obsᵢ − A·refᵢ‖²`.
pub fn wahba_loss(a: &Matrix, p: &WahbaProblem) -> Result<f64> {
    a.require_shape(3, 3, "Wahba loss")?;
    Ok(0.5
        * p.observations()
            .iter()
            .map(|o| {
                let ar = Vector3::from_slice(&a.mul_vec(&o.reference.to_array()));
                o.weight * (o.observed - ar).norm_sq()
            })
            .sum::<f64>())
}

/// `F(A) = tr(Aᵀ·B)`; for unit vectors `L(A) = Σwᵢ − F(A)` on rotations.
pub fn wahba_gain(a: &Matrix, p: &WahbaProblem) -> Result<f64> {
    a.require_shape(3, 3, "Wahba gain")?;
    let b = attitude_matrix_b(p);
    Ok((0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .map(|(i, j)| a[(i, j)] * b[(i, j)])
        .sum())
}
