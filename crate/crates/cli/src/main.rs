//! `hecke`: command-line access to period polynomials, Hecke matrices and
//! the q-expansion oracle.

mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use hecke_periods::exactlinalg::{hankel_bernoulli, ExactMatrix};
use hecke_periods::exactnum::bernoulli_number;
use hecke_periods::format::{matrix_latex, matrix_text, poly_latex, poly_text, rational_latex, rationals_json};
use hecke_periods::heckeop::hecke_matrix;
use hecke_periods::heckesum::{enumerate_h_neg, r_minus_hecke, s_poly_m};
use hecke_periods::periodpoly::{r_plus_odd, s_poly};
use hecke_periods::qoracle::{hecke_matrix_oracle, qexp, FormSpec};
use hecke_periods::{Error, ExactRational, PeriodContext, Sign};

#[derive(Parser, Debug)]
#[command(name = "hecke", version, about = "Exact period polynomials and Hecke operators on Γ₀(N)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The Bernoulli number B_n (with B_1 = -1/2).
    Bernoulli {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Even or odd part of the period polynomial of R_{N,w,n}.
    PeriodPoly {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The Hecke sum S^m_{N,w,n}, with the level correction unless --raw.
    HeckeSum {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, conflicts_with = "corrected")]
        raw: bool,
        #[arg(long)]
        corrected: bool,
        /// Also list the matrices of H_{N,m} with abcd < 0.
        #[arg(long)]
        list_matrices: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Matrix of T_m on S_{w+2}(Γ₀(N)).
    HeckeMatrix {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Characteristic polynomial of T_m on S_{w+2}(Γ₀(N)).
    Charpoly {
        #[arg(long)]
        level: u64,
        #[arg(long)]
        w: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Hankel determinant of scaled Bernoulli numbers and its closed form.
    Hankel {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// q-expansion of a form: "eta:1^8,2^8", "Einf:k", "E0:k" or "E:k".
    Qexp {
        #[arg(long)]
        form: String,
        #[arg(long)]
        prec: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Matrix of T_m on S_k(Γ₀(2)) computed from q-expansions.
    OracleMatrix {
        #[arg(long)]
        weight: u32,
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run a named verification suite; exits 1 on any mismatch.
    Verify {
        #[arg(long, value_enum)]
        suite: verify::Suite,
        /// Upper weight bound for the bases, eisenstein-products and oracle suites.
        #[arg(long)]
        max_weight: Option<u32>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if informational { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("{e}");
        return ExitCode::FAILURE;
    }
    match run(cli.command) {
        Ok(Some(out)) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Ok(None) => ExitCode::SUCCESS,
        Err(Failure::Computation(e)) => {
            eprintln!("{}", json!({ "error": e.code(), "message": e.to_string() }));
            ExitCode::FAILURE
        }
        Err(Failure::Verification) => ExitCode::FAILURE,
    }
}

/// `HECKE_THREADS` sets the worker count of the verification pool.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("HECKE_THREADS") else { return Ok(()) };
    let n: usize = raw.parse().map_err(|_| format!("HECKE_THREADS must be a positive integer, got {raw:?}"))?;
    if n == 0 {
        return Err("HECKE_THREADS must be a positive integer, got 0".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

enum Failure {
    Computation(Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Computation(e)
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("JSON values serialize")
}

fn poly_out(coeffs: &[ExactRational], format: Format, var: &str) -> String {
    match format {
        Format::Json => pretty(rationals_json(coeffs)),
        Format::Text => poly_text(coeffs, var),
        Format::Latex => poly_latex(coeffs, var),
    }
}

fn run(command: Command) -> Result<Option<String>, Failure> {
    let out = match command {
        Command::Bernoulli { n, format } => {
            let b = bernoulli_number(n);
            match format {
                Format::Json => pretty(json!({ "n": n, "value": b.to_string() })),
                Format::Text => b.to_string(),
                Format::Latex => format!("B_{{{n}}} = {}", rational_latex(&b)),
            }
        }
        Command::PeriodPoly { level, w, n, sign, format } => {
            let ctx = PeriodContext::new(level, w, n)?;
            let (sign, poly) = match sign {
                SignArg::Minus if n % 2 == 0 => (Sign::Minus, s_poly(&ctx)?),
                SignArg::Plus if n % 2 == 1 => (Sign::Plus, r_plus_odd(&ctx)?),
                SignArg::Minus => {
                    return Err(Error::UnsupportedParity(format!("the odd part is available for even n, got n = {n}")).into())
                }
                SignArg::Plus => {
                    return Err(Error::UnsupportedParity(format!("the even part is available for odd n, got n = {n}")).into())
                }
            };
            match format {
                Format::Json => pretty(json!({
                    "level": level, "w": w, "n": n, "sign": sign.to_string(), "poly": poly,
                })),
                _ => poly_out(poly.coeffs(), format, "X"),
            }
        }
        Command::HeckeSum { level, w, n, m, raw, corrected: _, list_matrices, format } => {
            let ctx = PeriodContext::new(level, w, n)?;
            let poly = if raw { s_poly_m(&ctx, m)? } else { r_minus_hecke(&ctx, m)? };
            let matrices = if list_matrices { Some(enumerate_h_neg(level, m)?) } else { None };
            match format {
                Format::Json => {
                    let mut v = json!({
                        "level": level, "w": w, "n": n, "m": m,
                        "mode": if raw { "raw" } else { "corrected" },
                        "poly": poly,
                    });
                    if let Some(ms) = &matrices {
                        v["matrices"] = json!(ms.iter().map(|g| [g.a, g.b, g.c, g.d]).collect::<Vec<_>>());
                    }
                    pretty(v)
                }
                _ => {
                    let mut s = poly_out(poly.coeffs(), format, "X");
                    if let Some(ms) = &matrices {
                        for g in ms {
                            s.push('\n');
                            s.push_str(&g.to_string());
                        }
                    }
                    s
                }
            }
        }
        Command::HeckeMatrix { level, w, m, format } => {
            let h = hecke_matrix(level, w, m)?;
            let cp = h.charpoly();
            match format {
                Format::Json => {
                    let mut v = serde_json::to_value(&h).expect("computation serializes");
                    v["charpoly"] = rationals_json(&cp);
                    pretty(v)
                }
                Format::Text => format!(
                    "level {level}, w = {w}, m = {m}\nbasis indices: {:?}\nS1 =\n{}S2 =\n{}T =\n{}charpoly: {}",
                    h.basis_indices,
                    matrix_text(&h.s1),
                    matrix_text(&h.s2),
                    matrix_text(&h.t),
                    poly_text(&cp, "x")
                ),
                Format::Latex => format!("T_{{{m}}} = {}\n{}", matrix_latex(&h.t), poly_latex(&cp, "x")),
            }
        }
        Command::Charpoly { level, w, m, format } => {
            let cp = hecke_matrix(level, w, m)?.charpoly();
            poly_out(&cp, format, "x")
        }
        Command::Hankel { which, n, format } => {
            let (det, closed) = hankel_bernoulli(which, n)?;
            match format {
                Format::Json => pretty(json!({
                    "which": which, "n": n, "det": det.to_string(),
                    "closed_form": closed.to_string(), "equal": det == closed,
                })),
                Format::Text => format!("det = {det}\nclosed form = {closed}"),
                Format::Latex => format!("{} = {}", rational_latex(&det), rational_latex(&closed)),
            }
        }
        Command::Qexp { form, prec, format } => {
            let spec: FormSpec = form.parse()?;
            let f = qexp(&spec, prec)?;
            match format {
                Format::Json => pretty(serde_json::to_value(&f).expect("series serializes")),
                _ => poly_out(f.coeffs(), format, "q"),
            }
        }
        Command::OracleMatrix { weight, m, format } => {
            let t = hecke_matrix_oracle(weight, m)?;
            let cp = t.charpoly()?;
            matrix_output(weight, m, &t, &cp, format)
        }
        Command::Verify { suite, max_weight } => {
            let report = verify::run(suite, max_weight);
            print!("{}", report.render());
            return if report.all_passed() { Ok(None) } else { Err(Failure::Verification) };
        }
    };
    Ok(Some(out))
}

fn matrix_output(weight: u32, m: u64, t: &ExactMatrix, cp: &[ExactRational], format: Format) -> String {
    match format {
        Format::Json => pretty(json!({
            "weight": weight, "m": m, "T": t, "charpoly": rationals_json(cp),
        })),
        Format::Text => format!("T =\n{}charpoly: {}", matrix_text(t), poly_text(cp, "x")),
        Format::Latex => format!("T_{{{m}}} = {}\n{}", matrix_latex(t), poly_latex(cp, "x")),
    }
}
