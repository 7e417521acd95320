//! Givens rotations as both a zeroing tool and a continuous path in O(n).
//!
//! Any orthogonal matrix is carried along a concatenation of plane rotations
//! to either `I` or `I⁻ = diag(1, …, 1, −1)`. Which endpoint is reached
//! classifies the matrix into one of the two path components of O(n)
//! without evaluating a determinant.

use std::f64::consts::{PI, TAU};
use std::fmt;

use crate::attitude::quat_from_rotation_with_tol;
use crate::error::{Error, Result};
use crate::matrix::{dot, norm, Matrix};
use crate::quat::Quaternion;

/// Orthogonality tolerance for the reduction and parity routines.
pub const ORTHO_TOL: f64 = 1e-8;

/// Column orthonormality tolerance for [`Frame`].
pub const FRAME_TOL: f64 = 1e-10;

/// Largest admissible rotation step between consecutive loop samples.
pub const MAX_LIFT_STEP: f64 = 0.5;

/// Cosine, sine and length with `c·a + s·b = ρ` and `−s·a + c·b = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensCoeffs {
    pub c: f64,
    pub s: f64,
    pub rho: f64,
}

impl GivensCoeffs {
    /// The angle in `[0, 2π)` whose cosine and sine are `(c, s)`.
    pub fn angle(&self) -> f64 {
        let th = self.s.atan2(self.c);
        if th < 0.0 {
            th + TAU
        } else {
            th
        }
    }
}

/// `ρ = hypot(a, b) ≥ 0`, `c = a/ρ`, `s = b/ρ`; `(0, 0)` maps to the identity.
pub fn givens_coeffs(a: f64, b: f64) -> GivensCoeffs {
    // hypot scales internally, so large inputs do not overflow.
    let rho = a.hypot(b);
    if rho == 0.0 {
        return GivensCoeffs {
            c: 1.0,
            s: 0.0,
            rho: 0.0,
        };
    }
    GivensCoeffs {
        c: a / rho,
        s: b / rho,
        rho,
    }
}

/// A plane rotation acting on rows `i < j` by angle `theta ∈ [0, 2π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GivensStep {
    pub i: usize,
    pub j: usize,
    pub theta: f64,
}

impl GivensStep {
    pub fn new(i: usize, j: usize, theta: f64) -> Result<Self> {
        if i >= j {
            return Err(Error::Usage(format!(
                "Givens plane needs i < j, got ({i}, {j})"
            )));
        }
        if !(0.0..=TAU).contains(&theta) {
            return Err(Error::Usage(format!(
                "Givens angle {theta} outside [0, 2π]"
            )));
        }
        Ok(Self { i, j, theta })
    }

    /// The n×n matrix with `[cos θ, sin θ; −sin θ, cos θ]` in the `(i, j)` plane.
    pub fn matrix(&self, n: usize) -> Matrix {
        crate::spectral::plane_rotation(n, self.i, self.j, self.theta)
    }

    fn apply_partial(&self, m: &mut Matrix, fraction: f64) {
        let (s, c) = (self.theta * fraction).sin_cos();
        rotate_rows(m, self.i, self.j, c, s);
    }
}

fn rotate_rows(m: &mut Matrix, i: usize, j: usize, c: f64, s: f64) {
    for k in 0..m.cols() {
        let a = m[(i, k)];
        let b = m[(j, k)];
        m[(i, k)] = c * a + s * b;
        m[(j, k)] = -s * a + c * b;
    }
}

/// Pre-multiplies `m` by the step's rotation; only rows `i` and `j` change.
pub fn apply_givens(m: &Matrix, step: &GivensStep) -> Result<Matrix> {
    if step.j >= m.rows() {
        return Err(Error::Dimension(format!(
            "Givens plane ({}, {}) out of range for {} rows",
            step.i,
            step.j,
            m.rows()
        )));
    }
    let mut out = m.clone();
    step.apply_partial(&mut out, 1.0);
    Ok(out)
}

/// A base matrix followed by a concatenation of Givens steps. Each step
/// takes an equal share of `τ ∈ [0, 1]` and is traversed linearly in θ.
#[derive(Debug, Clone, PartialEq)]
pub struct GivensPath {
    start: Matrix,
    steps: Vec<GivensStep>,
}

impl GivensPath {
    pub fn new(start: Matrix, steps: Vec<GivensStep>) -> Result<Self> {
        let n = start.rows();
        if let Some(bad) = steps.iter().find(|s| s.j >= n) {
            return Err(Error::Dimension(format!(
                "step plane ({}, {}) out of range for order {n}",
                bad.i, bad.j
            )));
        }
        Ok(Self { start, steps })
    }

    pub fn order(&self) -> usize {
        self.start.rows()
    }

    pub fn steps(&self) -> &[GivensStep] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn start(&self) -> &Matrix {
        &self.start
    }

    pub fn end(&self) -> Matrix {
        self.sample(1.0)
    }

    /// The point of the path at `τ`, clamped to `[0, 1]`.
    pub fn sample(&self, tau: f64) -> Matrix {
        let mut m = self.start.clone();
        let k = self.steps.len();
        if k == 0 {
            return m;
        }
        let pos = tau.clamp(0.0, 1.0) * k as f64;
        let full = (pos.floor() as usize).min(k);
        for step in &self.steps[..full] {
            step.apply_partial(&mut m, 1.0);
        }
        if full < k {
            let frac = pos - full as f64;
            if frac > 0.0 {
                self.steps[full].apply_partial(&mut m, frac);
            }
        }
        m
    }

    /// `count` evenly spaced samples from τ = 0 to τ = 1.
    pub fn samples(&self, count: usize) -> Vec<Matrix> {
        match count {
            0 => Vec::new(),
            1 => vec![self.sample(0.0)],
            _ => (0..count)
                .map(|k| self.sample(k as f64 / (count - 1) as f64))
                .collect(),
        }
    }
}

/// The two path components of O(n); `Positive` contains the identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Positive,
    Negative,
}

impl Parity {
    pub fn sign(self) -> i32 {
        match self {
            Parity::Positive => 1,
            Parity::Negative => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Parity::Positive => Parity::Negative,
            Parity::Negative => Parity::Positive,
        }
    }

    /// `I` or `I⁻` of order `n`.
    pub fn canonical(self, n: usize) -> Matrix {
        let mut m = Matrix::identity(n);
        if self == Parity::Negative && n > 0 {
            m[(n - 1, n - 1)] = -1.0;
        }
        m
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Positive => "+1",
            Parity::Negative => "-1",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Reduction {
    pub path: GivensPath,
    pub parity: Parity,
}

/// Zeroes the sub-diagonal column by column with non-negative pivots.
/// Returns the steps and the triangularized matrix.
fn triangularize(m: &Matrix) -> (Vec<GivensStep>, Matrix) {
    let n = m.rows();
    let mut work = m.clone();
    let mut steps = Vec::new();
    for col in 0..n.saturating_sub(1) {
        for row in (col + 1)..n {
            let g = givens_coeffs(work[(col, col)], work[(row, col)]);
            let theta = g.angle();
            if theta == 0.0 {
                continue;
            }
            let step = GivensStep {
                i: col,
                j: row,
                theta,
            };
            step.apply_partial(&mut work, 1.0);
            steps.push(step);
        }
    }
    (steps, work)
}

/// Reduces an orthogonal matrix along a Givens path to `I` or `I⁻`.
pub fn reduce_to_canonical(m: &Matrix) -> Result<Reduction> {
    reduce_to_canonical_with_tol(m, ORTHO_TOL)
}

pub fn reduce_to_canonical_with_tol(m: &Matrix, tol: f64) -> Result<Reduction> {
    m.require_orthogonal(tol)?;
    let n = m.rows();
    let (steps, end) = triangularize(m);
    let parity = if n == 0 || end[(n - 1, n - 1)] >= 0.0 {
        Parity::Positive
    } else {
        Parity::Negative
    };
    Ok(Reduction {
        path: GivensPath::new(m.clone(), steps)?,
        parity,
    })
}

/// Path component of an orthogonal matrix.
pub fn parity(m: &Matrix) -> Result<Parity> {
    parity_with_tol(m, ORTHO_TOL)
}

pub fn parity_with_tol(m: &Matrix, tol: f64) -> Result<Parity> {
    m.require_orthogonal(tol)?;
    orientation(m)
}

/// Orientation of any invertible square matrix from the sign of the last
/// pivot after Givens triangularization (every other pivot is ≥ 0 and the
/// rotations preserve orientation).
pub fn orientation(m: &Matrix) -> Result<Parity> {
    let n = m.require_square("orientation")?;
    if n == 0 {
        return Ok(Parity::Positive);
    }
    let (_, r) = triangularize(m);
    let last = r[(n - 1, n - 1)];
    let scale = m.frobenius_norm();
    if !(last.abs() > 1e-12 * scale) {
        return Err(Error::Degenerate(
            "matrix is numerically singular; orientation undefined".into(),
        ));
    }
    Ok(if last > 0.0 {
        Parity::Positive
    } else {
        Parity::Negative
    })
}

/// `M = Q·R` with upper-triangular `R` having a non-negative diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct QrFactors {
    pub q: Matrix,
    pub r: Matrix,
    /// True when some diagonal entry of `R` is numerically zero.
    pub rank_deficient: bool,
}

pub fn qr_givens(m: &Matrix) -> Result<QrFactors> {
    let n = m.require_square("QR factorization")?;
    let (steps, mut r) = triangularize(m);
    // Qᵀ = G_k ⋯ G_1, accumulated on the identity.
    let mut qt = Matrix::identity(n);
    for step in &steps {
        step.apply_partial(&mut qt, 1.0);
    }
    let mut q = qt.transpose();
    if n > 0 && r[(n - 1, n - 1)] < 0.0 {
        for k in 0..n {
            r[(n - 1, k)] = -r[(n - 1, k)];
            q[(k, n - 1)] = -q[(k, n - 1)];
        }
    }
    for i in 1..n {
        for j in 0..i {
            r[(i, j)] = 0.0;
        }
    }
    let floor = 1e-12 * m.frobenius_norm().max(f64::MIN_POSITIVE);
    let rank_deficient = (0..n).any(|i| r[(i, i)].abs() <= floor);
    Ok(QrFactors {
        q,
        r,
        rank_deficient,
    })
}

/// An orthonormal k-frame in Rⁿ, stored as the columns of an n×k matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Frame {
    basis: Matrix,
}

impl Frame {
    /// Validates `v_i · v_j = δ_ij` to [`FRAME_TOL`].
    pub fn new(basis: Matrix) -> Result<Self> {
        if basis.cols() > basis.rows() {
            return Err(Error::Dimension(format!(
                "{} columns cannot be orthonormal in R^{}",
                basis.cols(),
                basis.rows()
            )));
        }
        let g = basis.gram();
        let worst = g.max_abs_diff(&Matrix::identity(basis.cols()));
        if !(worst <= FRAME_TOL) {
            return Err(Error::NotOrthogonal { deviation: worst });
        }
        Ok(Self { basis })
    }

    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        Self::new(Matrix::from_columns(columns)?)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            basis: Matrix::identity(n),
        }
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn len(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.cols() == 0
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.basis.column(j)
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.basis
    }

    pub fn into_matrix(self) -> Matrix {
        self.basis
    }

    /// Parity of a full frame.
    pub fn parity(&self) -> Result<Parity> {
        if self.len() != self.ambient() {
            return Err(Error::Dimension("parity needs a full n-frame".into()));
        }
        parity(&self.basis)
    }
}

/// Drops the final column of a full frame: the two-to-one projection
/// `V_{n,n} → V_{n,n−1}`.
pub fn drop_last(f: &Frame) -> Result<Frame> {
    let n = f.ambient();
    if f.len() != n || n == 0 {
        return Err(Error::Dimension(format!(
            "drop_last needs a full frame, got {} columns in R^{n}",
            f.len()
        )));
    }
    let cols: Vec<Vec<f64>> = (0..n - 1).map(|j| f.column(j)).collect();
    Ok(Frame {
        basis: Matrix::from_columns(&cols).unwrap_or_else(|_| Matrix::zeros(n, 0)),
    })
}

/// The two completions of an (n−1)-frame, `(positive, negative)`. The last
/// column is the generalized cross product `c_i = (−1)^{i+n−1}·det(minor_i)`,
/// so the first frame has parity +1.
pub fn complete_frame(f: &Frame) -> Result<(Frame, Frame)> {
    let n = f.ambient();
    if n == 0 || f.len() != n - 1 {
        return Err(Error::Dimension(format!(
            "complete_frame needs n−1 columns in R^n, got {} in R^{n}",
            f.len()
        )));
    }
    let v = f.as_matrix();
    let mut last = vec![0.0; n];
    for (i, c) in last.iter_mut().enumerate() {
        let minor = Matrix::from_fn(n - 1, n - 1, |r, k| v[(if r < i { r } else { r + 1 }, k)]);
        let sign = if (i + n - 1).is_multiple_of(2) {
            1.0
        } else {
            -1.0
        };
        *c = sign * minor.determinant()?;
    }
    let len = norm(&last);
    if !(len > 0.5) {
        return Err(Error::Degenerate("cofactor vector vanished".into()));
    }
    last.iter_mut().for_each(|c| *c /= len);

    let mut pos = Matrix::zeros(n, n);
    for j in 0..n - 1 {
        pos.set_column(j, &v.column(j));
    }
    pos.set_column(n - 1, &last);
    let mut neg = pos.clone();
    let flipped: Vec<f64> = last.iter().map(|c| -c).collect();
    neg.set_column(n - 1, &flipped);
    Ok((Frame { basis: pos }, Frame { basis: neg }))
}

/// Modified Gram–Schmidt on n vectors of Rⁿ.
pub fn gram_schmidt<V: AsRef<[f64]>>(vectors: &[V]) -> Result<Frame> {
    let n = vectors.len();
    let mut out: Vec<Vec<f64>> = Vec::with_capacity(n);
    for (index, v) in vectors.iter().enumerate() {
        let v = v.as_ref();
        if v.len() != n {
            return Err(Error::Dimension(format!(
                "vector {index} has length {}, expected {n}",
                v.len()
            )));
        }
        let original = norm(v);
        let mut u = v.to_vec();
        for e in &out {
            let p = dot(&u, e);
            u.iter_mut().zip(e).for_each(|(x, y)| *x -= p * y);
        }
        let len = norm(&u);
        if !(len >= 1e-10 * original.max(1.0)) || original == 0.0 {
            return Err(Error::Dependent { index });
        }
        u.iter_mut().for_each(|x| *x /= len);
        out.push(u);
    }
    Frame::from_columns(&out)
}

/// Rotation by `2θ` in the plane of axes 2 and 3 (1-based), the image of
/// `(cos θ, sin θ, 0, 0)` under the cover map. `θ ∈ [0, π]` traces a closed
/// loop at `I`.
pub fn givens_loop(n: usize, theta: f64) -> Result<Matrix> {
    if n < 3 {
        return Err(Error::Usage(format!("Givens loop needs n >= 3, got {n}")));
    }
    let (s, c) = (2.0 * theta).sin_cos();
    let mut m = Matrix::identity(n);
    m[(1, 1)] = c;
    m[(1, 2)] = -s;
    m[(2, 1)] = s;
    m[(2, 2)] = c;
    Ok(m)
}

/// `count` samples of the loop at `θ_k = kπ/(count − 1)`.
pub fn sample_givens_loop(n: usize, count: usize) -> Result<Vec<Matrix>> {
    if count < 2 {
        return Err(Error::Usage("a loop needs at least two samples".into()));
    }
    (0..count)
        .map(|k| givens_loop(n, PI * k as f64 / (count - 1) as f64))
        .collect()
}

/// How the two ends of a lifted path relate in S³.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftEndpoints {
    Equal,
    Antipodal,
    Open,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LoopLift {
    pub quaternions: Vec<Quaternion>,
    pub endpoints: LiftEndpoints,
}

/// Rotation angle of `aᵀb` for 3×3 rotations, from `‖aᵀb − I‖_F = 2√2·sin(θ/2)`
/// (accurate for small angles, unlike the trace formula).
pub fn rotation_distance(a: &Matrix, b: &Matrix) -> f64 {
    let rel = &a.transpose() * b;
    let chord = (&rel - &Matrix::identity(3)).frobenius_norm();
    2.0 * (chord / (2.0 * std::f64::consts::SQRT_2)).min(1.0).asin()
}

/// Lifts a finely sampled path in SO(3) to a continuous path in S³: each
/// sample's quaternion is sign-matched to its predecessor.
pub fn lift_loop_to_s3(samples: &[Matrix]) -> Result<LoopLift> {
    let mut quaternions: Vec<Quaternion> = Vec::with_capacity(samples.len());
    for (k, s) in samples.iter().enumerate() {
        s.require_shape(3, 3, "loop lifting")?;
        if k > 0 {
            let angle = rotation_distance(&samples[k - 1], s);
            if !(angle <= MAX_LIFT_STEP) {
                return Err(Error::Resolution {
                    index: k - 1,
                    next: k,
                    angle,
                });
            }
        }
        let mut q = quat_from_rotation_with_tol(s, ORTHO_TOL)?;
        if let Some(&prev) = quaternions.last() {
            if (q - prev).norm() > (q + prev).norm() {
                q = -q;
            }
        }
        quaternions.push(q);
    }
    let endpoints = match (quaternions.first(), quaternions.last()) {
        (Some(&a), Some(&b)) if (b - a).norm() <= 1e-6 => LiftEndpoints::Equal,
        (Some(&a), Some(&b)) if (b + a).norm() <= 1e-6 => LiftEndpoints::Antipodal,
        _ => LiftEndpoints::Open,
    };
    Ok(LoopLift {
        quaternions,
        endpoints,
    })
}
