//! Quaternion algebra and the double-cover map onto rotations of R³.
//!
//! Quaternions are scalar-first: `w` is the real part and `(x, y, z)` the
//! vector part. The cover sends `q` and `−q` to the same rotation matrix.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Unit-ness tolerance used on entry to routines that require a unit quaternion.
pub const UNIT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vector3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vector3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn from_slice(v: &[f64]) -> Self {
        Self::new(v[0], v[1], v[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Self::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn normalize(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scale(1.0 / n))
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Vector3 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vector3 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vector3 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

/// Real quaternion `w + x·i + y·j + z·k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const IDENTITY: Self = Self::new(1.0, 0.0, 0.0, 0.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn from_slice(a: &[f64]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn vector(self) -> Vector3 {
        Vector3::new(self.x, self.y, self.z)
    }

    /// Sum of squared components.
    pub fn norm_sq(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn scale(self, k: f64) -> Self {
        Self::new(self.w * k, self.x * k, self.y * k, self.z * k)
    }

    pub fn dot(self, o: Self) -> f64 {
        self.w * o.w + self.x * o.x + self.y * o.y + self.z * o.z
    }

    /// `q⁻¹ = q*/‖q‖²`.
    pub fn inverse(self) -> Result<Self> {
        let n = self.norm_sq();
        if n == 0.0 {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.conj().scale(1.0 / n))
    }

    /// Unit quaternion with the same direction and a positive scale factor.
    pub fn normalize(self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroQuaternion);
        }
        Ok(self.scale(1.0 / n))
    }

    pub fn is_unit(self, tol: f64) -> bool {
        (self.norm_sq() - 1.0).abs() <= tol
    }

    /// Picks the representative of `±q` with non-negative scalar part; on an
    /// exactly zero scalar the first non-zero component is made positive.
    pub fn canonical_sign(self) -> Self {
        let lead = self
            .to_array()
            .into_iter()
            .find(|c| *c != 0.0)
            .unwrap_or(0.0);
        if lead < 0.0 {
            -self
        } else {
            self
        }
    }

    /// The cover map Φ. Entries are the quadratic forms in the components,
    /// so the result is orthogonal only for unit `self`, and `Φ(q) = Φ(−q)`.
    pub fn to_rotation_matrix(self) -> Matrix {
        let Quaternion { w, x, y, z } = self;
        Matrix::from_array([
            [
                w * w + x * x - y * y - z * z,
                2.0 * (x * y - w * z),
                2.0 * (x * z + w * y),
            ],
            [
                2.0 * (x * y + w * z),
                w * w - x * x + y * y - z * z,
                2.0 * (y * z - w * x),
            ],
            [
                2.0 * (x * z - w * y),
                2.0 * (y * z + w * x),
                w * w - x * x - y * y + z * z,
            ],
        ])
    }

    /// Rotates `k` by Rodrigues' formula `k + 2w(σ×k) + 2σ×(σ×k)`.
    pub fn rotate(self, k: Vector3) -> Result<Vector3> {
        if !self.is_unit(UNIT_TOL) {
            return Err(Error::NotUnit {
                norm_sq: self.norm_sq(),
            });
        }
        let s = self.vector();
        let sk = s.cross(k);
        Ok(k + sk.scale(2.0 * self.w) + s.cross(sk).scale(2.0))
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

/// A quaternion checked to satisfy `|‖q‖² − 1| ≤ 1e−12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitQuaternion(Quaternion);

impl UnitQuaternion {
    pub const STRICT_TOL: f64 = 1e-12;

    pub fn new(q: Quaternion) -> Result<Self> {
        if q.is_unit(Self::STRICT_TOL) {
            Ok(Self(q))
        } else {
            Err(Error::NotUnit {
                norm_sq: q.norm_sq(),
            })
        }
    }

    pub fn from_normalized(q: Quaternion) -> Result<Self> {
        q.normalize().map(Self)
    }

    pub fn get(self) -> Quaternion {
        self.0
    }
}

impl std::ops::Deref for UnitQuaternion {
    type Target = Quaternion;
    fn deref(&self) -> &Quaternion {
        &self.0
    }
}
