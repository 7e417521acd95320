//! Orthogonal n-frames and 3-D attitude determination.
//!
//! * [`spectral`]: cyclic Jacobi eigendecomposition of symmetric matrices.
//! * [`polar`]: polar decomposition `A = R·exp(X)`, SVD, retraction onto O(n).
//! * [`stiefel`]: Givens kernels and paths, determinant-free parity, frames,
//!   and the lift of loops in SO(3) to the unit quaternions.
//! * [`quat`]: quaternion algebra and the double cover of SO(3).
//! * [`attitude`]: Landis/Bar-Itzhack matrices, rational orthogonalization and
//!   Wahba solvers.
//! * [`batch`]: data-parallel batch evaluation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod attitude;
pub mod batch;
pub mod error;
pub mod matrix;
pub mod polar;
pub mod quat;
pub mod spectral;
pub mod stiefel;

pub use error::{Error, Result};
pub use matrix::{Matrix, SymmetricMatrix};
pub use quat::{Quaternion, UnitQuaternion, Vector3};
pub use stiefel::Parity;
