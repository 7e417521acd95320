mod common;

use common::*;
use orthoframe::attitude::*;
use orthoframe::polar::*;
use orthoframe::spectral::*;
use orthoframe::stiefel::*;
use orthoframe::{Matrix, Quaternion, SymmetricMatrix};
use proptest::prelude::*;
use rand::Rng;

fn multiset_close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

// ---------------------------------------------------------------- spectral

#[test]
fn spectrum_is_frame_invariant() {
    let mut rng = rng(1);
    for _ in 0..20 {
        let a = symmetric(&mut rng, 5);
        let u = orthogonal(&mut rng, 5);
        let b = SymmetricMatrix::symmetrize(&(&(&u.transpose() * a.as_matrix()) * &u));
        let ea = jacobi_eigen(&a).unwrap().values;
        let eb = jacobi_eigen(&b).unwrap().values;
        assert!(multiset_close(&ea, &eb, 1e-9));
    }
}

#[test]
fn min_eigenvalue_is_variational_minimum() {
    let mut rng = rng(2);
    for _ in 0..10 {
        let a = symmetric(&mut rng, 4);
        let (l1, _) = min_eigenpair(&a).unwrap();
        let spectrum = jacobi_eigen(&a).unwrap();
        assert_eq!(l1, spectrum.values[0]);
        let mut best = f64::INFINITY;
        for _ in 0..2000 {
            let x: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
            let n = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            let x: Vec<f64> = x.iter().map(|v| v / n).collect();
            let ax = a.as_matrix().mul_vec(&x);
            let q: f64 = ax.iter().zip(&x).map(|(p, q)| p * q).sum();
            best = best.min(q);
        }
        assert!(l1 <= best + 1e-9, "λ1 = {l1}, sampled min = {best}");
    }
}

#[test]
fn psd_quadratic_form_bounds_image() {
    // For PSD B, |(Be, e)| ≤ ε forces ‖Be‖ ≤ √(ε·λ_max).
    let mut rng = rng(3);
    for _ in 0..20 {
        let g = gaussian(&mut rng, 3, 4);
        let b = SymmetricMatrix::symmetrize(&g.gram());
        let f = jacobi_eigen(&b).unwrap();
        let lmax = f.max_value();
        // Nullspace direction (rank 3 in R⁴) plus a small perturbation.
        let null = f.vectors.column(0);
        let other = f.vectors.column(3);
        let e: Vec<f64> = null.iter().zip(&other).map(|(n, o)| n + 1e-4 * o).collect();
        let be = b.as_matrix().mul_vec(&e);
        let eps = be.iter().zip(&e).map(|(x, y)| x * y).sum::<f64>().abs();
        let be_norm = be.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(be_norm <= (eps * lmax).sqrt() * (1.0 + 1e-9) + 1e-12);
    }
}

#[test]
fn each_sweep_lowers_energy_on_non_diagonal_input() {
    let mut rng = rng(4);
    for n in 2..7 {
        let a = symmetric(&mut rng, n);
        let f = jacobi_eigen(&a).unwrap();
        assert!(f.sweeps() >= 1);
        assert!(f.energy_history.windows(2).all(|w| w[1] < w[0]));
    }
}

// ---------------------------------------------------------------- polar

#[test]
fn singular_values_are_roots_of_gram_spectrum() {
    let mut rng = rng(5);
    for _ in 0..20 {
        let a = gaussian(&mut rng, 4, 4);
        let s = svd_via_polar(&a).unwrap();
        let gram = SymmetricMatrix::symmetrize(&a.gram());
        let mut ev = jacobi_eigen(&gram).unwrap().values;
        ev.reverse();
        for (g, l) in s.singular_values.iter().zip(&ev) {
            assert!((g - l.sqrt()).abs() <= 1e-9 * l.sqrt().max(1.0));
        }
    }
}

#[test]
fn polar_factor_depends_continuously_on_input() {
    let mut rng = rng(6);
    for _ in 0..20 {
        let a = gaussian(&mut rng, 4, 4);
        let sigma_min = *svd_via_polar(&a).unwrap().singular_values.last().unwrap();
        let d = gaussian(&mut rng, 4, 4);
        let d = d.scale(1e-6 / d.frobenius_norm());
        let r0 = polar_decompose(&a).unwrap().rotation;
        let r1 = polar_decompose(&(&a + &d)).unwrap().rotation;
        let moved = (&r1 - &r0).frobenius_norm();
        assert!(
            moved <= 10.0 / sigma_min * 1e-6,
            "moved {moved}, σ_min {sigma_min}"
        );
    }
}

#[test]
fn retraction_stays_invertible() {
    let mut rng = rng(7);
    for _ in 0..10 {
        let a = gaussian(&mut rng, 3, 3);
        let sigma_min = *svd_via_polar(&a).unwrap().singular_values.last().unwrap();
        let floor = sigma_min.min(1.0) - 1e-9;
        let path = RetractionPath::new(&a).unwrap();
        for k in 0..=20 {
            let m = path.sample(k as f64 / 20.0).unwrap();
            let s = svd_via_polar(&m).unwrap();
            assert!(*s.singular_values.last().unwrap() >= floor);
        }
    }
}

#[test]
fn log_matches_scaled_series_oracle() {
    // log P = a·I + log(e^{−a}P) with a = ln(tr P / n) and the Mercator
    // series for the second term; valid when the scaled spectrum lies in (0, 2).
    let mut rng = rng(8);
    let mut checked = 0;
    for _ in 0..40 {
        let x0 = symmetric(&mut rng, 3);
        let x0 = SymmetricMatrix::symmetrize(&x0.as_matrix().scale(0.2));
        let p = matrix_exp_sym(&x0).unwrap();
        let n = 3.0;
        let a = (p.as_matrix().trace() / n).ln();
        let z = p.as_matrix().scale((-a).exp());
        let ez = jacobi_eigen(&SymmetricMatrix::symmetrize(&z)).unwrap();
        if !(ez.min_value() > 0.05 && ez.max_value() < 1.95) {
            continue;
        }
        let y = &z - &Matrix::identity(3);
        let mut term = Matrix::identity(3);
        let mut series = Matrix::zeros(3, 3);
        for m in 1..400 {
            term = &term * &y;
            let c = if m % 2 == 1 { 1.0 } else { -1.0 } / m as f64;
            series = &series + &term.scale(c);
        }
        let oracle = &Matrix::identity(3).scale(a) + &series;
        let log = matrix_log_spd(&p).unwrap();
        assert!(log.as_matrix().max_abs_diff(&oracle) <= 1e-9);
        assert!(log.as_matrix().max_abs_diff(x0.as_matrix()) <= 1e-8);
        checked += 1;
    }
    assert!(checked >= 10);
}

#[test]
fn exp_log_round_trip() {
    let mut rng = rng(9);
    for _ in 0..20 {
        let x = symmetric(&mut rng, 4);
        let back = matrix_log_spd(&matrix_exp_sym(&x).unwrap()).unwrap();
        assert!(back.as_matrix().max_abs_diff(x.as_matrix()) <= 1e-9);
    }
}

// ---------------------------------------------------------------- stiefel

#[test]
fn parity_matches_cofactor_determinant_sign() {
    let mut rng = rng(10);
    for n in 2..=6 {
        for _ in 0..200 {
            let q = orthogonal(&mut rng, n);
            let expect = if cofactor_det(&q) > 0.0 {
                Parity::Positive
            } else {
                Parity::Negative
            };
            assert_eq!(parity(&q).unwrap(), expect);
        }
    }
}

#[test]
fn column_operations_flip_parity() {
    let mut rng = rng(11);
    for n in 2..=5 {
        for _ in 0..20 {
            let q = orthogonal(&mut rng, n);
            let p = parity(&q).unwrap();
            let i = rng.random_range(0..n);
            let j = (i + 1 + rng.random_range(0..n - 1)) % n;
            let mut swapped = q.clone();
            let (ci, cj) = (q.column(i), q.column(j));
            swapped.set_column(i, &cj);
            swapped.set_column(j, &ci);
            assert_eq!(parity(&swapped).unwrap(), p.flip());

            let mut negated = q.clone();
            let c: Vec<f64> = q.column(i).iter().map(|v| -v).collect();
            negated.set_column(i, &c);
            assert_eq!(parity(&negated).unwrap(), p.flip());

            // Moving along any Givens path keeps the component.
            let step = GivensStep::new(
                i.min(j),
                i.max(j),
                rng.random_range(0.0..std::f64::consts::TAU),
            )
            .unwrap();
            let path = GivensPath::new(q.clone(), vec![step; 3]).unwrap();
            assert_eq!(parity(&path.end()).unwrap(), p);
        }
    }
}

#[test]
fn qr_then_reduce_agrees_with_parity() {
    let mut rng = rng(12);
    for n in 2..=6 {
        for _ in 0..20 {
            let m = gaussian(&mut rng, n, n);
            let qr = qr_givens(&m).unwrap();
            assert!((&(&qr.q * &qr.r) - &m).frobenius_norm() <= 1e-9 * m.frobenius_norm());
            assert!(qr.r.diagonal().iter().all(|&d| d >= 0.0));
            let red = reduce_to_canonical(&qr.q).unwrap();
            assert_eq!(red.parity, parity(&qr.q).unwrap());
        }
    }
}

#[test]
fn completions_have_opposite_parity() {
    let mut rng = rng(13);
    for n in 2..=6 {
        for _ in 0..10 {
            let full = Frame::new(orthogonal(&mut rng, n)).unwrap();
            let part = drop_last(&full).unwrap();
            let (p, q) = complete_frame(&part).unwrap();
            assert_eq!(p.parity().unwrap(), Parity::Positive);
            assert_eq!(q.parity().unwrap(), Parity::Negative);
            let last = p.column(n - 1);
            for j in 0..n - 1 {
                let d: f64 = part.column(j).iter().zip(&last).map(|(a, b)| a * b).sum();
                assert!(d.abs() <= 1e-12);
            }
            // One of the two completions is the original frame.
            let orig_last = full.column(n - 1);
            let hit = [&p, &q].iter().any(|f| {
                f.column(n - 1)
                    .iter()
                    .zip(&orig_last)
                    .all(|(a, b)| (a - b).abs() < 1e-10)
            });
            assert!(hit);
        }
    }
}

#[test]
fn cross_product_completion_in_three_dimensions() {
    let mut rng = rng(14);
    for _ in 0..20 {
        let full = Frame::new(orthogonal(&mut rng, 3)).unwrap();
        let part = drop_last(&full).unwrap();
        let (p, _) = complete_frame(&part).unwrap();
        let a = orthoframe::Vector3::from_slice(&part.column(0));
        let b = orthoframe::Vector3::from_slice(&part.column(1));
        let c = a.cross(b).to_array();
        for (x, y) in p.column(2).iter().zip(c) {
            assert!((x - y).abs() < 1e-12);
        }
    }
}

#[test]
fn gram_schmidt_produces_frames() {
    let mut rng = rng(15);
    for n in 1..=6 {
        let m = gaussian(&mut rng, n, n);
        let cols: Vec<Vec<f64>> = (0..n).map(|j| m.column(j)).collect();
        let f = gram_schmidt(&cols).unwrap();
        assert!(f.as_matrix().orthogonality_defect() <= 1e-10);
        // Same flag: first column is parallel to the first input.
        let c0 = f.column(0);
        let len = cols[0].iter().map(|v| v * v).sum::<f64>().sqrt();
        for (a, b) in c0.iter().zip(&cols[0]) {
            assert!((a - b / len).abs() < 1e-12);
        }
    }
}

#[test]
fn givens_steps_preserve_orthogonality() {
    let mut rng = rng(16);
    for _ in 0..50 {
        let q = orthogonal(&mut rng, 5);
        let i = rng.random_range(0..4);
        let j = rng.random_range(i + 1..5);
        let step = GivensStep::new(i, j, rng.random_range(0.0..std::f64::consts::TAU)).unwrap();
        let out = apply_givens(&q, &step).unwrap();
        assert!(out.orthogonality_defect() <= 1e-12);
        for r in 0..5 {
            if r != i && r != j {
                assert_eq!(out.row(r), q.row(r));
            }
        }
    }
}

proptest! {
    #[test]
    fn givens_coeffs_post_conditions(a in -1e3f64..1e3, b in -1e3f64..1e3) {
        let g = givens_coeffs(a, b);
        prop_assert!((g.c * g.c + g.s * g.s - 1.0).abs() <= 1e-14);
        prop_assert!((g.c * a + g.s * b - g.rho).abs() <= 1e-12 * g.rho.max(1.0));
        prop_assert!((-g.s * a + g.c * b).abs() <= 1e-13 * g.rho.max(1e-300));
        prop_assert!(g.rho >= 0.0);
    }
}

// ---------------------------------------------------------------- attitude

#[test]
fn landis_is_rank_one_on_rotations() {
    let mut rng = rng(17);
    for _ in 0..500 {
        let s = unit_quaternion(&mut rng).to_rotation_matrix();
        let l = landis(&s).unwrap();
        let ev = jacobi_eigen(&SymmetricMatrix::new(l.clone()).unwrap())
            .unwrap()
            .values;
        let mut mags: Vec<f64> = ev.iter().map(|v| v.abs()).collect();
        mags.sort_by(|a, b| b.total_cmp(a));
        assert!(mags[1] <= 1e-8 * l.frobenius_norm());
    }
}

#[test]
fn landis_round_trip_is_exact_for_every_usable_column() {
    let mut rng = rng(18);
    for _ in 0..200 {
        let s = unit_quaternion(&mut rng).to_rotation_matrix();
        let l = landis(&s).unwrap();
        for k in 0..4 {
            let col = Quaternion::new(l[(0, k)], l[(1, k)], l[(2, k)], l[(3, k)]);
            let gamma = col.norm_sq();
            if gamma < 1e-2 {
                continue;
            }
            let back = col.to_rotation_matrix().scale(1.0 / gamma);
            assert!(back.max_abs_diff(&s) <= 1e-9);
        }
        assert!(orthogonalize_rational(&s, false).unwrap().max_abs_diff(&s) <= 1e-9);
        let denom = landis_denominator(&s).unwrap();
        let first = Quaternion::new(l[(0, 0)], l[(1, 0)], l[(2, 0)], l[(3, 0)]).norm_sq();
        assert!((denom - first).abs() <= 1e-9 * denom.max(1e-3));
    }
}

#[test]
fn bar_itzhack_eigen_relation() {
    let mut rng = rng(19);
    for _ in 0..200 {
        let s = unit_quaternion(&mut rng).to_rotation_matrix();
        let q = quat_from_rotation(&s).unwrap();
        let qp = [q.x, q.y, q.z, -q.w];
        let k2 = itzhak(&s).unwrap();
        let kq = k2.as_matrix().mul_vec(&qp);
        let res: f64 = kq
            .iter()
            .zip(&qp)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        assert!(res <= 1e-8);
        let top = jacobi_eigen(&k2).unwrap().max_value();
        assert!((top - 1.0).abs() <= 1e-9);
    }
}

#[test]
fn itzhak_ignores_third_column() {
    let mut rng = rng(20);
    for _ in 0..20 {
        let mut s = gaussian(&mut rng, 3, 3);
        let before = itzhak(&s).unwrap();
        let c: Vec<f64> = (0..3).map(|_| rng.random_range(-5.0..5.0)).collect();
        s.set_column(2, &c);
        assert_eq!(itzhak(&s).unwrap(), before);
    }
}

#[test]
fn rotation_quaternion_round_trip() {
    let mut rng = rng(21);
    for _ in 0..200 {
        let q = unit_quaternion(&mut rng);
        let back = quat_from_rotation(&q.to_rotation_matrix()).unwrap();
        assert!(back.w >= 0.0);
        assert!((back - q).norm().min((back + q).norm()) <= 1e-9);
        assert!(
            back.to_rotation_matrix()
                .max_abs_diff(&q.to_rotation_matrix())
                <= 1e-8
        );
    }
}

#[test]
fn perturbed_rotation_lands_near_procrustes_projection() {
    let mut rng = rng(22);
    for _ in 0..50 {
        let s = unit_quaternion(&mut rng).to_rotation_matrix();
        let noise = gaussian(&mut rng, 3, 3).scale(1e-3);
        let noisy = &s + &noise;
        let out = orthogonalize_rational(&noisy, false).unwrap();
        let procrustes = polar_decompose(&noisy).unwrap().rotation;
        assert!(out.max_abs_diff(&procrustes) <= 5e-3);
        assert!(out.orthogonality_defect() <= 1e-12);
    }
}

#[test]
fn davenport_form_equals_gain() {
    // qᵀKq = F(Φ(q)) for every unit q.
    let mut rng = rng(23);
    for _ in 0..20 {
        let p = wahba_problem_random(&mut rng, 4, 0.05);
        let k = attitude_profile(&p).k;
        assert!(k.as_matrix().trace().abs() < 1e-12);
        for _ in 0..20 {
            let q = unit_quaternion(&mut rng);
            let v = q.to_array();
            let kv = k.as_matrix().mul_vec(&v);
            let form: f64 = kv.iter().zip(&v).map(|(a, b)| a * b).sum();
            let gain = wahba_gain(&q.to_rotation_matrix(), &p).unwrap();
            assert!((form - gain).abs() <= 1e-12 * p.total_weight());
        }
    }
}

#[test]
fn loss_and_gain_are_affinely_related() {
    let mut rng = rng(24);
    for _ in 0..20 {
        let p = wahba_problem_random(&mut rng, 5, 0.1);
        let a = unit_quaternion(&mut rng).to_rotation_matrix();
        let l = wahba_loss(&a, &p).unwrap();
        let f = wahba_gain(&a, &p).unwrap();
        assert!((l - (p.total_weight() - f)).abs() <= 1e-12 * p.total_weight());
    }
}

#[test]
fn noiseless_max_eigenvalue_is_total_weight() {
    let mut rng = rng(25);
    for _ in 0..20 {
        let p = wahba_problem_random(&mut rng, 3, 0.0);
        let top = jacobi_eigen(&attitude_profile(&p).k).unwrap().max_value();
        assert!((top - p.total_weight()).abs() <= 1e-9);
    }
}

#[test]
fn solvers_are_optimal_against_random_rotations() {
    let mut rng = rng(26);
    for _ in 0..5 {
        let p = wahba_problem_random(&mut rng, 6, 0.02);
        let q = solve_wahba_davenport(&p).unwrap();
        let r = solve_wahba_svd(&p).unwrap();
        let lq = wahba_loss(&q.to_rotation_matrix(), &p).unwrap();
        let fr = wahba_gain(&r, &p).unwrap();
        assert!(quat_angle(q, quat_from_rotation(&r).unwrap()) <= 1e-6);
        for _ in 0..1000 {
            let s = unit_quaternion(&mut rng).to_rotation_matrix();
            assert!(lq <= wahba_loss(&s, &p).unwrap() + 1e-12);
            assert!(fr >= wahba_gain(&s, &p).unwrap() - 1e-12);
        }
    }
}
