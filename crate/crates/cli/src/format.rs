//! `%g`-style number formatting that round-trips through the input parser.

use orthoframe::{Matrix, Quaternion};

pub const DEFAULT_DIGITS: usize = 6;
pub const EXACT_DIGITS: usize = 17;

/// Formats `x` with `digits` significant digits, trailing zeros removed.
/// Fixed notation for decimal exponents in `[-4, digits)`, scientific
/// otherwise. Negative zero prints as `0`.
pub fn real(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs());
    }
    let decimals = (digits as i32 - 1 - exp).max(0) as usize;
    let fixed = trim_zeros(&format!("{x:.decimals$}")).to_string();
    if fixed == "-0" {
        "0".into()
    } else {
        fixed
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Printer {
    pub digits: usize,
}

impl Printer {
    pub fn new(exact: bool) -> Self {
        Self {
            digits: if exact { EXACT_DIGITS } else { DEFAULT_DIGITS },
        }
    }

    pub fn values(&self, v: &[f64]) -> String {
        let mut line = v
            .iter()
            .map(|x| real(*x, self.digits))
            .collect::<Vec<_>>()
            .join(" ");
        line.push('\n');
        line
    }

    pub fn matrix(&self, m: &Matrix) -> String {
        (0..m.rows()).map(|i| self.values(m.row(i))).collect()
    }

    pub fn quaternion(&self, q: Quaternion) -> String {
        self.values(&q.to_array())
    }

    /// A `# label value` comment line.
    pub fn note(&self, label: &str, x: f64) -> String {
        format!("# {label} {}\n", real(x, self.digits))
    }
}
