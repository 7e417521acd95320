//! Batch evaluation over independent inputs.
//!
//! With the `parallel` feature (on by default) [`Execution::Parallel`] fans
//! work out over the rayon thread pool; without it every batch runs
//! sequentially. Results are returned in input order either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::attitude::{
    orthogonalize_rational, solve_wahba_davenport, solve_wahba_svd, WahbaProblem,
};
use crate::error::Result;
use crate::matrix::Matrix;
use crate::quat::Quaternion;
use crate::stiefel::{parity, reduce_to_canonical, Parity, Reduction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether `Parallel` actually runs on multiple threads in this build.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Order-preserving map over a slice.
pub fn map<T, U, F>(exec: Execution, items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).collect(),
        _ => items.iter().map(f).collect(),
    }
}

/// Largest value of `f` over the slice (NaN propagates as the maximum).
pub fn max_of<T, F>(exec: Execution, items: &[T], f: F) -> f64
where
    T: Sync,
    F: Fn(&T) -> f64 + Sync + Send,
{
    let pick = |a: f64, b: f64| {
        if a.is_nan() || b.is_nan() {
            f64::NAN
        } else {
            a.max(b)
        }
    };
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => items.par_iter().map(f).reduce(|| 0.0, pick),
        _ => items.iter().map(f).fold(0.0, pick),
    }
}

pub fn parities(exec: Execution, matrices: &[Matrix]) -> Vec<Result<Parity>> {
    map(exec, matrices, parity)
}

pub fn reductions(exec: Execution, matrices: &[Matrix]) -> Vec<Result<Reduction>> {
    map(exec, matrices, reduce_to_canonical)
}

pub fn davenport_solutions(exec: Execution, problems: &[WahbaProblem]) -> Vec<Result<Quaternion>> {
    map(exec, problems, solve_wahba_davenport)
}

pub fn svd_solutions(exec: Execution, problems: &[WahbaProblem]) -> Vec<Result<Matrix>> {
    map(exec, problems, solve_wahba_svd)
}

pub fn orthogonalize(
    exec: Execution,
    matrices: &[Matrix],
    rescale_rows: bool,
) -> Vec<Result<Matrix>> {
    map(exec, matrices, |m| orthogonalize_rational(m, rescale_rows))
}

/// Worst entrywise `|Φ(ab) − Φ(a)Φ(b)|` over quaternion pairs.
pub fn homomorphism_defect(exec: Execution, pairs: &[(Quaternion, Quaternion)]) -> f64 {
    max_of(exec, pairs, |&(a, b)| {
        (a * b)
            .to_rotation_matrix()
            .max_abs_diff(&(&a.to_rotation_matrix() * &b.to_rotation_matrix()))
    })
}
