//! Acceptance criteria, one line per criterion. Exits nonzero if any fails.

use std::time::Instant;

use hecke_periods::exactlinalg::{hankel_bernoulli, poly_from_roots, ExactMatrix};
use hecke_periods::exactnum::{int, rat, ExactRational};
use hecke_periods::heckeop::{basis_matrix, dim_cusp, hecke_matrix, BasisKind};
use hecke_periods::heckesum::{diagonal_sum, eigenvalue_w6, level_correction, orbit_sum, r_minus_hecke};
use hecke_periods::periodpoly::{assemble_from_periods, period_value, r_plus_odd, s_poly, symmetry_factor, Sign};
use hecke_periods::qoracle::{delta8, eta_quotient, hecke_matrix_oracle, hecke_on_qseries, eisenstein_product_bases, default_compare_prec};
use hecke_periods::{BoundedPoly, PeriodContext};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond { Ok(()) } else { Err(msg()) }
}

fn ctx(level: u64, w: u32, n: u32) -> PeriodContext {
    PeriodContext::new(level, w, n).unwrap()
}

fn ints(v: &[i64]) -> Vec<ExactRational> {
    v.iter().map(|&x| int(x)).collect()
}

fn c1() -> Outcome {
    let s = s_poly(&ctx(2, 6, 2)).map_err(|e| e.to_string())?;
    let want = BoundedPoly::from_ratios(6, &[(0, 1), (1, 1), (0, 1), (-5, 1), (0, 1), (4, 1)]).scale(&rat(-1, 15));
    ensure(s == want, || format!("got {:?}", s.coeffs()))?;
    Ok("S_{2,6,2} = -(1/15)(4X^5 - 5X^3 + X)".into())
}

fn c2() -> Outcome {
    let s = r_minus_hecke(&ctx(4, 4, 2), 2).map_err(|e| e.to_string())?;
    ensure(s.is_zero(), || format!("got {:?}", s.coeffs()))?;
    Ok("S^2_{4,4,2} = 0".into())
}

fn c3() -> Outcome {
    let c = ctx(4, 6, 2);
    let e = |r: hecke_periods::Result<BoundedPoly>| r.map_err(|e| e.to_string());
    let orbit = e(orbit_sum(&c, 8))?;
    let diag = e(diagonal_sum(&c, 8))?;
    let corr = e(level_correction(&c, 8))?;
    let total = e(r_minus_hecke(&c, 8))?;
    let p = |v: &[(i64, i64)], s: ExactRational| BoundedPoly::from_ratios(6, v).scale(&s);
    let want_orbit = p(&[(0, 1), (1, 1), (0, 1), (-2, 1), (0, 1), (1, 1)], int(-1024));
    let want_diag = p(&[(0, 1), (-56, 1), (0, 1), (40, 1), (0, 1), (1, 1)], rat(-256, 15));
    let want_corr = p(&[(0, 1), (0, 1), (0, 1), (-4, 1), (0, 1), (3, 1)], int(256));
    let want_total = p(&[(0, 1), (1, 1), (0, 1), (-5, 1), (0, 1), (4, 1)], rat(-1024, 15));
    ensure(orbit == want_orbit, || format!("orbit sum {:?}", orbit.coeffs()))?;
    ensure(diag == want_diag, || format!("diagonal sum {:?}", diag.coeffs()))?;
    ensure(corr == want_corr, || format!("correction {:?}", corr.coeffs()))?;
    ensure(total == want_total, || format!("total {:?}", total.coeffs()))?;
    Ok("level 4, w = 6, n = 2, m = 8: all three parts and the total".into())
}

fn c4() -> Outcome {
    let h = hecke_matrix(2, 10, 2).map_err(|e| e.to_string())?;
    let want = ExactMatrix::from_rows_i64(&[vec![-208, 36], vec![-1120, 184]]);
    ensure(h.t == want, || format!("T = {}", h.t))?;
    ensure(h.charpoly() == ints(&[2048, 24, 1]), || format!("charpoly {:?}", h.charpoly()))?;
    Ok("T_2 on S_12(Γ₀(2)) and x^2 + 24x + 2048".into())
}

fn c5() -> Outcome {
    let h = hecke_matrix(4, 8, 3).map_err(|e| e.to_string())?;
    let printed = ExactMatrix::from_rows(vec![
        vec![int(2456678965260i64), int(-224610211392i64), int(61847064000i64)],
        vec![int(37961609400000i64), int(-3470759119380i64), int(955676880000i64)],
        vec![int(40281954570000i64), int(-3682878636192i64), int(1014067309260i64)],
    ])
    .scale(&rat(1, 152915));
    let want_cp = poly_from_roots(&ints(&[228, -156, -156]));
    let cp_ok = h.charpoly() == want_cp;
    let matrix_ok = h.t == printed;
    let transposed = h.s1.inverse().unwrap().mul(&h.s2.transpose()) == printed;
    let detail = format!(
        "charpoly (x-228)(x+156)^2: {}; matrix equality: {}; printed matrix equals S1^-1 S2^T: {}",
        if cp_ok { "ok" } else { "mismatch" },
        if matrix_ok { "ok" } else { "mismatch" },
        transposed
    );
    ensure(cp_ok && matrix_ok, || format!("{detail}; computed T = {}", h.t.to_string().replace('\n', " ")))?;
    Ok(detail)
}

fn c6() -> Outcome {
    for which in 1..=3u8 {
        for n in 1..=8 {
            let (det, closed) = hankel_bernoulli(which, n).map_err(|e| e.to_string())?;
            ensure(det == closed, || format!("which = {which}, n = {n}: {det} vs {closed}"))?;
        }
    }
    Ok("three Hankel identities, n = 1..8".into())
}

fn c7() -> Outcome {
    let f = delta8(99);
    for m in (3..=99u64).step_by(2) {
        let e = eigenvalue_w6(m).map_err(|e| e.to_string())?;
        ensure(f.coeffs()[m as usize] == int(e.clone()), || format!("m = {m}: {e} vs {}", f.coeffs()[m as usize]))?;
    }
    Ok("odd m = 3..99".into())
}

fn c8() -> Outcome {
    let mut count = 0;
    for k in (8..=24u32).step_by(2) {
        for m in 2..=5u64 {
            let period = hecke_matrix(2, k - 2, m).map_err(|e| format!("k = {k}, m = {m}: {e}"))?.charpoly();
            let oracle = hecke_matrix_oracle(k, m).map_err(|e| format!("k = {k}, m = {m}: {e}"))?;
            let oracle_cp = oracle.charpoly().unwrap();
            ensure(period == oracle_cp, || format!("k = {k}, m = {m}: {period:?} vs {oracle_cp:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} (k, m) pairs agree"))
}

fn c9() -> Outcome {
    for w in (6..=60u32).step_by(2) {
        for kind in BasisKind::ALL {
            let m = basis_matrix(w, kind).map_err(|e| e.to_string())?;
            let det = m.determinant().map_err(|e| e.to_string())?;
            ensure(m.rows() == dim_cusp(2, w).unwrap(), || format!("w = {w}: wrong size"))?;
            ensure(m.rows() == 0 || det != int(0), || format!("w = {w}, {}: singular", kind.name()))?;
        }
    }
    Ok("four basis matrices, even w = 6..60".into())
}

fn c10() -> Outcome {
    for k in (8..=40u32).step_by(2) {
        let r = eisenstein_product_bases(k, default_compare_prec(k)).map_err(|e| e.to_string())?;
        ensure(r.passed, || format!("k = {k}: {r:?}"))?;
    }
    Ok("even k = 8..40".into())
}

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

fn c11() -> Outcome {
    let samples = symmetry_samples();
    ensure(samples.len() == 200, || "sample size".into())?;
    for &(level, w, n, m) in &samples {
        let c = ctx(level, w, n);
        let lhs = period_value(&c, m).map_err(|e| e.to_string())?;
        let rhs = symmetry_factor(&c, m) * period_value(&c.dual(), w - m).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("symmetry fails at N = {level}, w = {w}, n = {n}, m = {m}"))?;
    }
    let mut assembled = 0;
    for level in 2..=5u64 {
        for w in (2..=30u32).step_by(2) {
            for n in 1..w {
                let c = ctx(level, w, n);
                let (lhs, rhs) = if n % 2 == 0 {
                    (assemble_from_periods(&c, Sign::Minus), s_poly(&c))
                } else {
                    (assemble_from_periods(&c, Sign::Plus), r_plus_odd(&c))
                };
                ensure(lhs.map_err(|e| e.to_string())? == rhs.map_err(|e| e.to_string())?, || {
                    format!("assembly fails at N = {level}, w = {w}, n = {n}")
                })?;
                assembled += 1;
            }
        }
    }
    let mut relations = 0;
    for w in (6..=22u32).step_by(2) {
        let t = |m: u64| hecke_matrix(2, w, m).map(|h| h.t).map_err(|e| format!("w = {w}, m = {m}: {e}"));
        let mats: Vec<ExactMatrix> = (1..=10u64).map(t).collect::<Result<_, _>>()?;
        for m1 in 2..=10u64 {
            for m2 in m1 + 1..=10u64 {
                if num_integer::gcd(m1, m2) != 1 {
                    continue;
                }
                let (a, b) = (&mats[m1 as usize - 1], &mats[m2 as usize - 1]);
                let ab = a.mul(b);
                ensure(ab == b.mul(a), || format!("T_{m1}, T_{m2} do not commute at w = {w}"))?;
                ensure(ab == t(m1 * m2)?, || format!("T_{m1} T_{m2} != T_{} at w = {w}", m1 * m2))?;
                relations += 1;
            }
        }
    }
    Ok(format!("200 symmetry samples, {assembled} assemblies, {relations} coprime pairs"))
}

fn c12() -> Outcome {
    let prec = 30;
    let delta = eta_quotient(&[(1, 24)], 2 * prec).map_err(|e| e.to_string())?;
    let delta_2z = delta.rescale(2).truncate(2 * prec);
    let t_delta = hecke_on_qseries(&delta, 2, prec).map_err(|e| e.to_string())?;
    let t_delta_2z = hecke_on_qseries(&delta_2z, 2, prec).map_err(|e| e.to_string())?;
    let want = delta.scale(&int(-24)).sub(&delta_2z.scale(&int(2048))).unwrap().truncate(prec);
    ensure(t_delta == want, || "T_2 Δ(z) mismatch".into())?;
    ensure(t_delta_2z == delta.truncate(prec), || "T_2 Δ(2z) mismatch".into())?;
    Ok("T_2 Δ(z) and T_2 Δ(2z) through q^30".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "S_{2,6,2} closed form", c1),
        (2, "S^2_{4,4,2} vanishes", c2),
        (3, "r^-(T_8 R_{Γ₀(4),6,2}) and its parts", c3),
        (4, "T_2 on S_12(Γ₀(2))", c4),
        (5, "T_3 on S_10(Γ₀(4))", c5),
        (6, "Hankel determinants of Bernoulli numbers", c6),
        (7, "weight-8 eigenvalue formula vs eta quotient", c7),
        (8, "period and q-expansion Hecke matrices agree", c8),
        (9, "basis matrices nonsingular", c9),
        (10, "Eisenstein product bases", c10),
        (11, "symmetry, assembly and Hecke relations", c11),
        (12, "T_2 on Δ(z) and Δ(2z)", c12),
    ];
    let mut failed = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id:>2} [{name}] ({secs:.2}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id:>2} [{name}] ({secs:.2}s): {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
