//! Plain-text input formats.
//!
//! Both formats are whitespace-separated decimal reals, one record per line.
//! Blank lines and everything after `#` are ignored.

use std::io::Read;

use orthoframe::attitude::Observation;
use orthoframe::{Matrix, Quaternion, Vector3};

use crate::CliError;

/// Off-unit tolerance above which ingested Wahba vectors trigger a warning.
pub const UNIT_WARN_TOL: f64 = 1e-6;

/// Reads a file path, or stdin for `-`.
pub fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))
    }
}

/// Non-empty records with their 1-based line numbers.
fn records(text: &str) -> Result<Vec<(usize, Vec<f64>)>, CliError> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let body = line.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let values = body
            .split_whitespace()
            .map(|tok| match tok.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(CliError::Parse(format!(
                    "line {}: `{tok}` is not a finite real",
                    k + 1
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push((k + 1, values));
    }
    Ok(out)
}

pub fn parse_matrix(text: &str) -> Result<Matrix, CliError> {
    let rows = records(text)?;
    let Some((_, first)) = rows.first() else {
        return Err(CliError::Parse("no matrix rows found".into()));
    };
    let width = first.len();
    if let Some((line, row)) = rows.iter().find(|(_, r)| r.len() != width) {
        return Err(CliError::Parse(format!(
            "line {line}: expected {width} entries, found {}",
            row.len()
        )));
    }
    let rows: Vec<Vec<f64>> = rows.into_iter().map(|(_, r)| r).collect();
    Matrix::from_rows(&rows).map_err(|e| CliError::Parse(e.to_string()))
}

/// Four reals in scalar-first order, spread over any number of lines.
pub fn parse_quaternion(text: &str) -> Result<Quaternion, CliError> {
    let values: Vec<f64> = records(text)?.into_iter().flat_map(|(_, r)| r).collect();
    if values.len() != 4 {
        return Err(CliError::Parse(format!(
            "expected 4 quaternion components, found {}",
            values.len()
        )));
    }
    Ok(Quaternion::from_slice(&values))
}

/// A parsed Wahba file plus the warnings raised while normalizing vectors.
#[derive(Debug, Clone)]
pub struct WahbaInput {
    pub observations: Vec<Observation>,
    pub warnings: Vec<String>,
}

pub fn parse_wahba(text: &str) -> Result<WahbaInput, CliError> {
    let rows = records(text)?;
    if rows.len() < 2 {
        return Err(CliError::Parse(format!(
            "need at least 2 observations, found {}",
            rows.len()
        )));
    }
    let mut observations = Vec::with_capacity(rows.len());
    let mut warnings = Vec::new();
    for (line, r) in rows {
        if r.len() != 7 {
            return Err(CliError::Parse(format!(
                "line {line}: expected 7 entries (weight r1 r2 r3 o1 o2 o3), found {}",
                r.len()
            )));
        }
        if r[0] <= 0.0 {
            return Err(CliError::Parse(format!(
                "line {line}: weight must be positive"
            )));
        }
        let mut unit = |v: Vector3, what: &str| -> Result<Vector3, CliError> {
            let norm = v.norm();
            let u = v
                .normalize()
                .ok_or_else(|| CliError::Parse(format!("line {line}: {what} vector is zero")))?;
            if (norm - 1.0).abs() > UNIT_WARN_TOL {
                warnings.push(format!(
                    "line {line}: {what} vector has norm {norm}; normalized"
                ));
            }
            Ok(u)
        };
        let reference = unit(Vector3::new(r[1], r[2], r[3]), "reference")?;
        let observed = unit(Vector3::new(r[4], r[5], r[6]), "observed")?;
        observations.push(Observation::new(r[0], reference, observed));
    }
    Ok(WahbaInput {
        observations,
        warnings,
    })
}
