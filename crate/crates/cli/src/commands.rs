use orthoframe::attitude::{
    orthogonalize_rational, quat_from_rotation_with_tol, solve_wahba_davenport, solve_wahba_svd,
    wahba_loss, WahbaProblem,
};
use orthoframe::polar::{matrix_exp_sym, polar_decompose, svd_via_polar};
use orthoframe::spectral::{jacobi_eigendecomposition, JacobiOptions};
use orthoframe::stiefel::{parity_with_tol, qr_givens, reduce_to_canonical_with_tol};
use orthoframe::SymmetricMatrix;

use crate::format::Printer;
use crate::input::{parse_matrix, parse_quaternion, parse_wahba, read_source};
use crate::{CliError, Direction, FactorKind, OrthoMethod, Output, WahbaMethod};

/// Orthogonality tolerance for `convert m2q`; loose enough for matrices
/// printed to four decimals.
pub const CONVERT_TOL: f64 = 1e-2;
/// Orthogonality tolerance for `parity`.
pub const PARITY_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub printer: Printer,
    pub report: bool,
    pub tol: Option<f64>,
}

fn done(stdout: String) -> Result<Output, CliError> {
    Ok(Output {
        stdout,
        warnings: Vec::new(),
    })
}

fn looks_literal(input: &str) -> bool {
    input.split_whitespace().count() == 4
        && input.split_whitespace().all(|t| t.parse::<f64>().is_ok())
}

pub fn convert(opts: &Options, direction: Direction, input: &str) -> Result<Output, CliError> {
    let p = opts.printer;
    match direction {
        Direction::Q2m => {
            let text = if looks_literal(input) {
                input.to_string()
            } else {
                read_source(input)?
            };
            let q = parse_quaternion(&text)?.normalize()?;
            done(p.matrix(&q.to_rotation_matrix()))
        }
        Direction::M2q => {
            let m = parse_matrix(&read_source(input)?)?;
            let q = quat_from_rotation_with_tol(&m, opts.tol.unwrap_or(CONVERT_TOL))?;
            let mut out = p.quaternion(q);
            if opts.report {
                out += &p.note("residual", (&q.to_rotation_matrix() - &m).frobenius_norm());
            }
            done(out)
        }
    }
}

pub fn orthogonalize(
    opts: &Options,
    input: &str,
    method: OrthoMethod,
    rescale_rows: bool,
) -> Result<Output, CliError> {
    let m = parse_matrix(&read_source(input)?)?;
    if rescale_rows && method != OrthoMethod::Landis {
        return Err(CliError::Usage(
            "--rescale-rows applies to --method landis only".into(),
        ));
    }
    let r = match method {
        OrthoMethod::Landis => orthogonalize_rational(&m, rescale_rows)?,
        OrthoMethod::Polar => polar_decompose(&m)?.rotation,
        OrthoMethod::Svd => {
            let s = svd_via_polar(&m)?;
            &s.left * &s.right.transpose()
        }
    };
    let mut out = opts.printer.matrix(&r);
    if opts.report {
        out += &opts.printer.note("residual", (&r - &m).frobenius_norm());
    }
    done(out)
}

pub fn wahba(opts: &Options, input: &str, method: WahbaMethod) -> Result<Output, CliError> {
    let parsed = parse_wahba(&read_source(input)?)?;
    let problem = WahbaProblem::new(parsed.observations)?;
    let p = opts.printer;
    let (mut out, a) = match method {
        WahbaMethod::Davenport => {
            let q = solve_wahba_davenport(&problem)?;
            (p.quaternion(q), q.to_rotation_matrix())
        }
        WahbaMethod::Svd => {
            let a = solve_wahba_svd(&problem)?;
            (p.matrix(&a), a)
        }
    };
    out += &p.note("loss", wahba_loss(&a, &problem)?);
    Ok(Output {
        stdout: out,
        warnings: parsed.warnings,
    })
}

pub fn parity(opts: &Options, input: &str, path: Option<usize>) -> Result<Output, CliError> {
    let m = parse_matrix(&read_source(input)?)?;
    let tol = opts.tol.unwrap_or(PARITY_TOL);
    let p = opts.printer;
    let Some(count) = path else {
        return done(format!("{}\n", parity_with_tol(&m, tol)?));
    };
    let reduction = reduce_to_canonical_with_tol(&m, tol)?;
    let mut out = format!("{}\n", reduction.parity);
    let samples = reduction.path.samples(count);
    let last = samples.len().saturating_sub(1).max(1) as f64;
    for (k, s) in samples.iter().enumerate() {
        out += &p.note("tau", k as f64 / last);
        out += &p.matrix(s);
    }
    if opts.report {
        let end = reduction.path.end();
        out += &p.note(
            "endpoint_error",
            end.max_abs_diff(&reduction.parity.canonical(m.rows())),
        );
    }
    done(out)
}

pub fn factor(opts: &Options, input: &str, kind: FactorKind) -> Result<Output, CliError> {
    let m = parse_matrix(&read_source(input)?)?;
    let p = opts.printer;
    let mut out = String::new();
    let residual = match kind {
        FactorKind::Qr => {
            let f = qr_givens(&m)?;
            out += "# Q\n";
            out += &p.matrix(&f.q);
            out += "# R\n";
            out += &p.matrix(&f.r);
            (&(&f.q * &f.r) - &m).frobenius_norm()
        }
        FactorKind::Polar => {
            let f = polar_decompose(&m)?;
            out += "# R\n";
            out += &p.matrix(&f.rotation);
            out += "# P\n";
            out += &p.matrix(f.stretch.as_matrix());
            out += "# X\n";
            out += &p.matrix(f.log_stretch.as_matrix());
            if opts.report {
                let e = matrix_exp_sym(&f.log_stretch)?;
                out += &p.note(
                    "exp_residual",
                    (e.as_matrix() - f.stretch.as_matrix()).frobenius_norm(),
                );
            }
            (&f.reconstruct() - &m).frobenius_norm()
        }
        FactorKind::Svd => {
            let f = svd_via_polar(&m)?;
            out += "# W\n";
            out += &p.matrix(&f.left);
            out += "# Gamma\n";
            out += &p.values(&f.singular_values);
            out += "# V\n";
            out += &p.matrix(&f.right);
            (&f.reconstruct() - &m).frobenius_norm()
        }
        FactorKind::Jacobi => {
            let a = SymmetricMatrix::new(m.clone())?;
            let f = jacobi_eigendecomposition(
                &a,
                JacobiOptions {
                    tol: opts.tol,
                    ..JacobiOptions::default()
                },
            )?;
            out += "# eigenvalues\n";
            out += &p.values(&f.values);
            out += "# eigenvectors\n";
            out += &p.matrix(&f.vectors);
            if opts.report {
                out += &p.note("sweeps", f.sweeps() as f64);
            }
            (&f.reconstruct() - &m).frobenius_norm()
        }
    };
    if opts.report {
        out += &p.note("residual", residual);
    }
    done(out)
}
