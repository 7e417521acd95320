#![allow(dead_code)]

use orthoframe::attitude::{Observation, WahbaProblem};
use orthoframe::stiefel::qr_givens;
use orthoframe::{Matrix, Quaternion, SymmetricMatrix, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut impl Rng, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

pub fn symmetric(rng: &mut impl Rng, n: usize) -> SymmetricMatrix {
    SymmetricMatrix::symmetrize(&gaussian(rng, n, n))
}

/// Q factor of a Gaussian matrix; both parities occur.
pub fn orthogonal(rng: &mut impl Rng, n: usize) -> Matrix {
    let q = qr_givens(&gaussian(rng, n, n)).unwrap().q;
    if rng.random_bool(0.5) {
        let mut q = q;
        for k in 0..n {
            q[(k, 0)] = -q[(k, 0)];
        }
        q
    } else {
        q
    }
}

pub fn unit_quaternion(rng: &mut impl Rng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if q.norm_sq() > 1e-6 {
            return q.normalize().unwrap();
        }
    }
}

pub fn unit_vector(rng: &mut impl Rng) -> Vector3 {
    loop {
        let v = Vector3::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = v.normalize() {
            if v.norm() > 1e-3 {
                return u;
            }
        }
    }
}

/// Problem whose observations are `Φ(q)·ref` plus optional Gaussian noise
/// (re-normalized).
pub fn wahba_problem(rng: &mut impl Rng, q: Quaternion, count: usize, noise: f64) -> WahbaProblem {
    let obs = (0..count)
        .map(|_| {
            let r = unit_vector(rng);
            let o = q.rotate(r).unwrap();
            let o = if noise > 0.0 {
                let n = Vector3::new(
                    noise * rng.sample::<f64, _>(StandardNormal),
                    noise * rng.sample::<f64, _>(StandardNormal),
                    noise * rng.sample::<f64, _>(StandardNormal),
                );
                (o + n).normalize().unwrap()
            } else {
                o
            };
            Observation::new(rng.random_range(0.1..2.0), r, o)
        })
        .collect();
    WahbaProblem::new(obs).unwrap()
}

/// Determinant by recursive cofactor expansion along the first row.
/// Test-only oracle, independent of the Givens machinery.
pub fn cofactor_det(m: &Matrix) -> f64 {
    let n = m.rows();
    match n {
        0 => 1.0,
        1 => m[(0, 0)],
        _ => (0..n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * m[(0, j)] * cofactor_det(&m.minor(0, j))
            })
            .sum(),
    }
}

/// Rotation angle between two 3×3 rotations.
pub fn angle_between(a: &Matrix, b: &Matrix) -> f64 {
    orthoframe::stiefel::rotation_distance(a, b)
}

/// Angle between two quaternions as rotations, robust near zero.
pub fn quat_angle(a: Quaternion, b: Quaternion) -> f64 {
    let d = (a - b).norm().min((a + b).norm());
    4.0 * (0.5 * d).asin()
}

/// As [`wahba_problem`] with a freshly drawn ground-truth attitude.
pub fn wahba_problem_random(rng: &mut impl Rng, count: usize, noise: f64) -> WahbaProblem {
    let q = unit_quaternion(rng);
    wahba_problem(rng, q, count, noise)
}
