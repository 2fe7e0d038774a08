//! Text, LaTeX and JSON renderings of polynomials, matrices and
//! characteristic polynomials. Rationals always appear as reduced `p/q`.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exactlinalg::ExactMatrix;
use crate::exactnum::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
    Latex,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "text" => Ok(OutputFormat::Text),
            "latex" => Ok(OutputFormat::Latex),
            _ => Err(Error::pre(format!("unknown format {s:?}, expected json, text or latex"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Json => "json",
            OutputFormat::Text => "text",
            OutputFormat::Latex => "latex",
        })
    }
}

/// Rational strings for a coefficient vector.
pub fn rational_strings(v: &[ExactRational]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

pub fn rationals_json(v: &[ExactRational]) -> Value {
    json!(rational_strings(v))
}

pub fn matrix_json(m: &ExactMatrix) -> Value {
    serde_json::to_value(m).expect("matrix serializes")
}

/// Descending-power rendering such as `4/15*X^5 - X^3 + 7`.
pub fn poly_text(coeffs: &[ExactRational], var: &str) -> String {
    render(coeffs, |c, k, first| {
        let mag = c.abs();
        let mut s = sign_prefix(c, first);
        let unit = mag.is_one() && k > 0;
        if !unit {
            s.push_str(&mag.to_string());
        }
        match k {
            0 => {}
            _ => {
                if !unit {
                    s.push('*');
                }
                s.push_str(var);
                if k > 1 {
                    s.push_str(&format!("^{k}"));
                }
            }
        }
        s
    })
}

/// Descending-power LaTeX such as `\frac{4}{15}X^{5} - X^{3} + 7`.
pub fn poly_latex(coeffs: &[ExactRational], var: &str) -> String {
    render(coeffs, |c, k, first| {
        let mag = c.abs();
        let mut s = sign_prefix(c, first);
        if !(mag.is_one() && k > 0) {
            s.push_str(&rational_latex(&mag));
        }
        match k {
            0 => {}
            1 => s.push_str(var),
            _ => s.push_str(&format!("{var}^{{{k}}}")),
        }
        s
    })
}

fn sign_prefix(c: &ExactRational, first: bool) -> String {
    match (first, c.is_negative()) {
        (true, true) => "-".into(),
        (true, false) => String::new(),
        (false, true) => " - ".into(),
        (false, false) => " + ".into(),
    }
}

fn render(coeffs: &[ExactRational], term: impl Fn(&ExactRational, usize, bool) -> String) -> String {
    let mut out = String::new();
    for (k, c) in coeffs.iter().enumerate().rev() {
        if !c.is_zero() {
            out.push_str(&term(c, k, out.is_empty()));
        }
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

pub fn rational_latex(x: &ExactRational) -> String {
    let sign = if x.is_negative() { "-" } else { "" };
    let a = x.abs();
    if a.is_integer() {
        format!("{sign}{}", a.numer())
    } else {
        format!("{sign}\\frac{{{}}}{{{}}}", a.numer(), a.denom())
    }
}

pub fn matrix_text(m: &ExactMatrix) -> String {
    m.to_string()
}

pub fn matrix_latex(m: &ExactMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| m.row(i).iter().map(rational_latex).collect::<Vec<_>>().join(" & "))
        .collect();
    format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
}
