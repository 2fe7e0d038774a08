//! Named verification suites. Checks run on the rayon pool and are reported
//! in their declaration order.

use clap::ValueEnum;
use rayon::prelude::*;

use hecke_periods::exactlinalg::{hankel_bernoulli, poly_from_roots, ExactMatrix};
use hecke_periods::exactnum::{bernoulli_number, int, rat, ExactRational};
use hecke_periods::heckeop::{basis_matrix, dim_cusp, hecke_matrix, BasisKind};
use hecke_periods::heckesum::{diagonal_sum, eigenvalue_w6, level_correction, orbit_sum, r_minus_hecke};
use hecke_periods::periodpoly::{assemble_from_periods, period_value, r_plus_odd, s_poly, symmetry_factor};
use hecke_periods::qoracle::{
    default_compare_prec, delta8, eta_quotient, hecke_matrix_oracle, hecke_on_qseries, eisenstein_product_bases,
};
use hecke_periods::{BoundedPoly, PeriodContext, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(alias = "paper-examples")]
    WorkedExamples,
    Hankel,
    Bases,
    #[value(alias = "theorem14")]
    EisensteinProducts,
    Oracle,
    Symmetry,
}

type CheckFn = Box<dyn Fn() -> Result<(), String> + Send + Sync>;

struct Check {
    name: String,
    run: CheckFn,
}

fn check(name: impl Into<String>, run: impl Fn() -> Result<(), String> + Send + Sync + 'static) -> Check {
    Check { name: name.into(), run: Box::new(run) }
}

pub struct Report {
    lines: Vec<(String, Result<(), String>)>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.lines.iter().all(|(_, r)| r.is_ok())
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (name, r) in &self.lines {
            match r {
                Ok(()) => out.push_str(&format!("ok       {name}\n")),
                Err(e) => out.push_str(&format!("MISMATCH {name}: {e}\n")),
            }
        }
        let failed = self.lines.iter().filter(|(_, r)| r.is_err()).count();
        out.push_str(&format!("{} checks, {} passed, {failed} failed\n", self.lines.len(), self.lines.len() - failed));
        out
    }
}

pub fn run(suite: Suite, max_weight: Option<u32>) -> Report {
    let checks = match suite {
        Suite::WorkedExamples => worked_examples(),
        Suite::Hankel => hankel(),
        Suite::Bases => bases(max_weight.unwrap_or(62)),
        Suite::EisensteinProducts => eisenstein_products(max_weight.unwrap_or(40)),
        Suite::Oracle => oracle(max_weight.unwrap_or(24)),
        Suite::Symmetry => symmetry(),
    };
    let lines = checks.into_par_iter().map(|c| (c.name, (c.run)())).collect();
    Report { lines }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}, expected {want:?}"))
    }
}

fn ctx(level: u64, w: u32, n: u32) -> Result<PeriodContext, String> {
    PeriodContext::new(level, w, n).map_err(|e| e.to_string())
}

fn poly(w: usize, scale: ExactRational, odd: &[i64]) -> BoundedPoly {
    // `odd` lists the coefficients of X, X^3, X^5, ...
    let mut c = vec![int(0); w + 1];
    for (i, &v) in odd.iter().enumerate() {
        c[2 * i + 1] = int(v) * &scale;
    }
    BoundedPoly::from_coeffs(w, c)
}

fn ints(v: &[i64]) -> Vec<ExactRational> {
    v.iter().map(|&x| int(x)).collect()
}

fn worked_examples() -> Vec<Check> {
    let e = |r: hecke_periods::Result<BoundedPoly>| r.map_err(|e| e.to_string());
    vec![
        check("B_12 = -691/2730", || eq(bernoulli_number(12), rat(-691, 2730))),
        check("S_{2,6,2}", move || eq(e(s_poly(&ctx(2, 6, 2)?))?, poly(6, rat(-1, 15), &[1, -5, 4]))),
        check("S_{2,10,2}", move || eq(e(s_poly(&ctx(2, 10, 2)?))?, poly(10, rat(-1, 45), &[5, -45, 168, -320, 192]))),
        check("S_{2,10,4} (odd powers X^7, X^5)", move || {
            eq(e(s_poly(&ctx(2, 10, 4)?))?, poly(10, rat(1, 210), &[7, -55, 168, -280, 160]))
        }),
        check("S^2_{2,10,2}", move || {
            eq(e(r_minus_hecke(&ctx(2, 10, 2)?, 2))?, poly(10, rat(128, 45), &[-5, 30, -42, 5, 12]))
        }),
        check("S^2_{2,10,4}", move || {
            eq(e(r_minus_hecke(&ctx(2, 10, 4)?, 2))?, poly(10, rat(-32, 105), &[-7, 40, -42, -35, 44]))
        }),
        check("S^2_{4,4,2} = 0", move || eq(e(r_minus_hecke(&ctx(4, 4, 2)?, 2))?.is_zero(), true)),
        check("orbit sum for N = 4, w = 6, n = 2, m = 8", move || {
            eq(e(orbit_sum(&ctx(4, 6, 2)?, 8))?, poly(6, int(-1024), &[1, -2, 1]))
        }),
        check("diagonal sum for N = 4, w = 6, n = 2, m = 8", move || {
            eq(e(diagonal_sum(&ctx(4, 6, 2)?, 8))?, poly(6, rat(-256, 15), &[-56, 40, 1]))
        }),
        check("level correction for N = 4, w = 6, n = 2, m = 8", move || {
            eq(e(level_correction(&ctx(4, 6, 2)?, 8))?, poly(6, int(256), &[0, -4, 3]))
        }),
        check("r^-(T_8 R_{4,6,2})", move || {
            eq(e(r_minus_hecke(&ctx(4, 6, 2)?, 8))?, poly(6, rat(-1024, 15), &[1, -5, 4]))
        }),
        check("period values r_5(R_{2,6,2}), r_1(R_{2,6,4})", || {
            eq(period_value(&ctx(2, 6, 2)?, 5).map_err(|e| e.to_string())?, rat(1, 90))?;
            eq(period_value(&ctx(2, 6, 4)?, 1).map_err(|e| e.to_string())?, rat(-1, 45))
        }),
        check("dimensions d_10 = 2, d_4 = 0, dim S_10(Γ₀(4)) = 3", || {
            eq([dim_cusp(2, 10), dim_cusp(2, 4), dim_cusp(4, 8)].map(|d| d.unwrap_or(usize::MAX)), [2, 0, 3])
        }),
        check("T_2 on S_12(Γ₀(2))", || {
            let h = hecke_matrix(2, 10, 2).map_err(|e| e.to_string())?;
            eq(&h.t, &ExactMatrix::from_rows_i64(&[vec![-208, 36], vec![-1120, 184]]))?;
            eq(h.charpoly(), ints(&[2048, 24, 1]))
        }),
        check("T_3 on S_10(Γ₀(4)): charpoly (x-228)(x+156)^2", || {
            let h = hecke_matrix(4, 8, 3).map_err(|e| e.to_string())?;
            eq(h.charpoly(), poly_from_roots(&ints(&[228, -156, -156])))
        }),
        check("T_3 on S_10(Γ₀(4)): printed matrix", || {
            let h = hecke_matrix(4, 8, 3).map_err(|e| e.to_string())?;
            let printed = ExactMatrix::from_rows(vec![
                ints(&[2456678965260, -224610211392, 61847064000]),
                ints(&[37961609400000, -3470759119380, 955676880000]),
                ints(&[40281954570000, -3682878636192, 1014067309260]),
            ])
            .scale(&rat(1, 152915));
            if h.t == printed {
                return Ok(());
            }
            let transposed = h.s1.inverse().map_err(|e| e.to_string())?.mul(&h.s2.transpose());
            Err(format!(
                "computed T = {}; the printed matrix {} S1^-1 S2^T",
                h.t.to_string().trim_end().replace('\n', " "),
                if transposed == printed { "equals" } else { "does not equal" }
            ))
        }),
        check("weight-8 eigenvalues for odd m <= 99", || {
            let f = delta8(99);
            for m in (1..=99u64).step_by(2) {
                eq(f.coeffs()[m as usize].clone(), int(eigenvalue_w6(m).map_err(|e| e.to_string())?))?;
            }
            Ok(())
        }),
        check("T_2 Δ(z) = -24Δ(z) - 2048Δ(2z), T_2 Δ(2z) = Δ(z)", || {
            let prec = 30;
            let d = eta_quotient(&[(1, 24)], 2 * prec).map_err(|e| e.to_string())?;
            let d2 = d.rescale(2).truncate(2 * prec);
            let want = d.scale(&int(-24)).sub(&d2.scale(&int(2048))).map_err(|e| e.to_string())?.truncate(prec);
            eq(hecke_on_qseries(&d, 2, prec).map_err(|e| e.to_string())?, want)?;
            eq(hecke_on_qseries(&d2, 2, prec).map_err(|e| e.to_string())?, d.truncate(prec))
        }),
    ]
}

fn hankel() -> Vec<Check> {
    let mut out = Vec::new();
    for which in 1..=3u8 {
        for n in 1..=8usize {
            out.push(check(format!("Hankel kind {which}, n = {n}"), move || {
                let (det, closed) = hankel_bernoulli(which, n).map_err(|e| e.to_string())?;
                eq(det, closed)
            }));
        }
    }
    out
}

fn bases(max_weight: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for w in (6..=max_weight.saturating_sub(2)).step_by(2) {
        for kind in BasisKind::ALL {
            out.push(check(format!("basis {} at w = {w}", kind.name()), move || {
                let m = basis_matrix(w, kind).map_err(|e| e.to_string())?;
                if m.rows() == 0 {
                    return Ok(());
                }
                let det = m.determinant().map_err(|e| e.to_string())?;
                if det == int(0) { Err("singular".into()) } else { Ok(()) }
            }));
        }
    }
    out
}

fn eisenstein_products(max_weight: u32) -> Vec<Check> {
    (8..=max_weight)
        .step_by(2)
        .map(|k| {
            check(format!("Eisenstein product bases at k = {k}"), move || {
                let r = eisenstein_product_bases(k, default_compare_prec(k)).map_err(|e| e.to_string())?;
                if r.passed { Ok(()) } else { Err(format!("{r:?}")) }
            })
        })
        .collect()
}

fn oracle(max_weight: u32) -> Vec<Check> {
    let mut out = Vec::new();
    for k in (8..=max_weight).step_by(2) {
        for m in 2..=5u64 {
            out.push(check(format!("charpoly of T_{m} at k = {k}"), move || {
                let period = hecke_matrix(2, k - 2, m).map_err(|e| e.to_string())?.charpoly();
                let oracle = hecke_matrix_oracle(k, m).map_err(|e| e.to_string())?;
                eq(period, oracle.charpoly().map_err(|e| e.to_string())?)
            }));
        }
    }
    out
}

/// 200 tuples `(N, w, n, m)` spread evenly over `2 <= N <= 7`, `w <= 30`.
fn symmetry_samples() -> Vec<(u64, u32, u32, u32)> {
    let mut all = Vec::new();
    for level in 2..=7u64 {
        for w in (2..=30u32).step_by(2) {
            for n in 0..=w {
                for m in 0..=w {
                    if (m + n) % 2 == 1 {
                        all.push((level, w, n, m));
                    }
                }
            }
        }
    }
    let stride = all.len() / 200;
    all.into_iter().step_by(stride).take(200).collect()
}

fn symmetry() -> Vec<Check> {
    let mut out: Vec<Check> = symmetry_samples()
        .into_iter()
        .map(|(level, w, n, m)| {
            check(format!("period symmetry N = {level}, w = {w}, n = {n}, m = {m}"), move || {
                let c = ctx(level, w, n)?;
                let lhs = period_value(&c, m).map_err(|e| e.to_string())?;
                let rhs = symmetry_factor(&c, m) * period_value(&c.dual(), w - m).map_err(|e| e.to_string())?;
                eq(lhs, rhs)
            })
        })
        .collect();
    for level in 2..=5u64 {
        out.push(check(format!("assembly from periods, N = {level}, w <= 30"), move || {
            for w in (2..=30u32).step_by(2) {
                for n in 1..w {
                    let c = ctx(level, w, n)?;
                    let (lhs, rhs) = if n % 2 == 0 {
                        (assemble_from_periods(&c, Sign::Minus), s_poly(&c))
                    } else {
                        (assemble_from_periods(&c, Sign::Plus), r_plus_odd(&c))
                    };
                    eq(lhs.map_err(|e| e.to_string())?, rhs.map_err(|e| e.to_string())?)
                        .map_err(|e| format!("w = {w}, n = {n}: {e}"))?;
                }
            }
            Ok(())
        }));
    }
    out
}
