//! The Hecke side: the sign-restricted part of the matrix set
//! `H_{N,m} = {[a b; c d] : ad - bc = m, c ≡ 0 (mod N), gcd(a, N) = 1}`,
//! the polynomials `S^m_{N,w,n}`, and the odd period polynomial of
//! `T_m R_{N,w,n}` including the Möbius correction when `N | m`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli_poly0, divisors, gcd, int, moebius, rat_pow, sigma};
use crate::periodpoly::PeriodContext;
use crate::polyring::{compose_linear, reciprocal_substitute, BoundedPoly};

/// An integer 2×2 matrix `[a b; c d]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct IntMat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl IntMat2 {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        IntMat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn negate(&self) -> Self {
        IntMat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl fmt::Display for IntMat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

fn signed_divisor_pairs(n: u64) -> impl Iterator<Item = (i64, i64)> {
    divisors(n).into_iter().flat_map(move |x| {
        let (x, y) = (x as i64, (n / x) as i64);
        [(x, y), (-x, -y)]
    })
}

/// The matrices of `H_{N,m}` with `abcd < 0`, sorted by `(a, b, c, d)`.
///
/// With `abcd < 0` every entry is nonzero and `ad = s > 0`, `bc = s - m < 0`
/// for some `1 <= s < m`, so it suffices to split each `s` and `m - s` into
/// signed divisor pairs.
pub fn enumerate_h_neg(level: u64, m: u64) -> Result<Vec<IntMat2>> {
    if level < 2 {
        return Err(Error::pre(format!("level must be at least 2, got {level}")));
    }
    if m == 0 {
        return Err(Error::pre("Hecke index m must be positive"));
    }
    let n = level as i64;
    let mut out = Vec::new();
    for s in 1..m {
        for (a, d) in signed_divisor_pairs(s) {
            if gcd(a, n) != 1 {
                continue;
            }
            for (b, c) in signed_divisor_pairs(m - s) {
                // bc = -(m - s): flip the sign of c
                let c = -c;
                if c % n == 0 {
                    out.push(IntMat2::new(a, b, c, d));
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The sign-restricted orbit sum `½ Σ_{abcd<0} sgn(ab) (aX + b)^n (cX + d)^ñ`.
///
/// Every summand has integer coefficients, so the sum is accumulated over
/// the integers and halved once at the end.
pub fn orbit_sum(ctx: &PeriodContext, m: u64) -> Result<BoundedPoly> {
    let w = ctx.w() as usize;
    let (n, nt) = (ctx.n() as usize, ctx.ntilde() as usize);
    let mut acc = vec![BigInt::zero(); w + 1];
    for mat in enumerate_h_neg(ctx.level(), m)? {
        let left = int_linear_power(mat.a, mat.b, n);
        let right = int_linear_power(mat.c, mat.d, nt);
        let positive = mat.a * mat.b > 0;
        for (i, x) in left.iter().enumerate() {
            for (j, y) in right.iter().enumerate() {
                let t = x * y;
                if positive {
                    acc[i + j] += t;
                } else {
                    acc[i + j] -= t;
                }
            }
        }
    }
    let half = |c: BigInt| BigRational::new(c, BigInt::from(2));
    Ok(BoundedPoly::from_coeffs(w, acc.into_iter().map(half).collect()))
}

/// Ascending coefficients of `(aX + b)^e`.
fn int_linear_power(a: i64, b: i64, e: usize) -> Vec<BigInt> {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut row = vec![BigInt::one()];
    for _ in 0..e {
        let mut next = vec![BigInt::zero(); row.len() + 1];
        for (k, c) in row.iter().enumerate() {
            next[k] += c * &b;
            next[k + 1] += c * &a;
        }
        row = next;
    }
    row
}

/// `Σ_{ad=m, a>0, gcd(a,N)=1} [a^n N^ñ/(ñ+1) X^w B⁰_{ñ+1}(d/(NX)) - d^ñ/(n+1) B⁰_{n+1}(aX)]`.
pub fn diagonal_sum(ctx: &PeriodContext, m: u64) -> Result<BoundedPoly> {
    let w = ctx.w() as usize;
    let (n, nt) = (ctx.n(), ctx.ntilde());
    let level = ctx.level();
    let upper = bernoulli_poly0(nt + 1);
    let lower = bernoulli_poly0(n + 1);
    let mut acc = BoundedPoly::zero(w);
    for a in divisors(m) {
        if gcd(a as i64, level as i64) != 1 {
            continue;
        }
        let d = m / a;
        let lead = rat_pow(&int(a), n as i64) * rat_pow(&int(level), nt as i64) / int(nt + 1);
        let t = BigRational::new(BigInt::from(d), BigInt::from(level));
        let first = reciprocal_substitute(&upper, &t, w)?.scale(&lead);
        let tail = rat_pow(&int(d), nt as i64) / int(n + 1);
        let second = compose_linear(&lower, a as i64, 0).with_bound(w)?.scale(&tail);
        acc = &(&acc + &first) - &second;
    }
    Ok(acc)
}

/// `S^m_{N,w,n}(X)`: the orbit sum plus the diagonal sum.
pub fn s_poly_m(ctx: &PeriodContext, m: u64) -> Result<BoundedPoly> {
    if ctx.n() == 0 || ctx.n() >= ctx.w() {
        return Err(Error::pre(format!("need 0 < n < w, got n = {}", ctx.n())));
    }
    Ok(&orbit_sum(ctx, m)? + &diagonal_sum(ctx, m)?)
}

/// The extra term present when `N | m`:
/// `-(NX)^w/(n+1) Σ_{d|N} μ(N/d) d^{-n} Σ_{c|(m/N)} c^ñ B⁰_{n+1}(md/(cN²X))`.
///
/// Zero when `N ∤ m`.
pub fn level_correction(ctx: &PeriodContext, m: u64) -> Result<BoundedPoly> {
    let w = ctx.w() as usize;
    let level = ctx.level();
    let (n, nt) = (ctx.n(), ctx.ntilde());
    let mut acc = BoundedPoly::zero(w);
    if m % level != 0 {
        return Ok(acc);
    }
    let b0 = bernoulli_poly0(n + 1);
    for d in divisors(level) {
        let mu = moebius(level / d);
        if mu == 0 {
            continue;
        }
        let outer = int(mu as i64) / rat_pow(&int(d), n as i64);
        for c in divisors(m / level) {
            let t = BigRational::new(
                BigInt::from(m) * BigInt::from(d),
                BigInt::from(c) * BigInt::from(level) * BigInt::from(level),
            );
            let weight = &outer * rat_pow(&int(c), nt as i64);
            acc = &acc + &reciprocal_substitute(&b0, &t, w)?.scale(&weight);
        }
    }
    let factor = -rat_pow(&int(level), w as i64) / int(n + 1);
    Ok(acc.scale(&factor))
}

/// `r⁻(T_m R_{N,w,n})` for even `n`: `S^m_{N,w,n}` plus [`level_correction`].
pub fn r_minus_hecke(ctx: &PeriodContext, m: u64) -> Result<BoundedPoly> {
    if ctx.n() % 2 != 0 {
        return Err(Error::UnsupportedParity(format!("r_minus_hecke needs even n, got {}", ctx.n())));
    }
    let raw = s_poly_m(ctx, m)?;
    if m % ctx.level() != 0 {
        return Ok(raw);
    }
    Ok(&raw + &level_correction(ctx, m)?)
}

/// The `m`-th Hecke eigenvalue of the normalized weight-8 cusp form on
/// `Γ₀(2)`, for odd `m`:
/// `m σ₁(m) + 240 Σ_{u+2v=m} (u - v) σ₁(u) σ₃(v)`.
pub fn eigenvalue_w6(m: u64) -> Result<BigInt> {
    if m == 0 {
        return Err(Error::pre("m must be positive"));
    }
    if m % 2 == 0 {
        return Err(Error::UnsupportedParity(format!("eigenvalue formula needs odd m, got {m}")));
    }
    let mut conv = BigInt::zero();
    let mut v = 1;
    while 2 * v < m {
        let u = m - 2 * v;
        conv += (BigInt::from(u) - BigInt::from(v)) * sigma(1, u) * sigma(3, v);
        v += 1;
    }
    Ok(BigInt::from(m) * sigma(1, m) + conv * 240)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ctx(level: u64, w: u32, n: u32) -> PeriodContext {
        PeriodContext::new(level, w, n).unwrap()
    }

    /// Exhaustive 4-cube scan over `|entries| < m`, independent of the divisor splitting.
    fn brute_h_neg(level: i64, m: i64) -> Vec<IntMat2> {
        let mut out = Vec::new();
        for a in -m..=m {
            for b in -m..=m {
                for c in -m..=m {
                    for d in -m..=m {
                        if a * d - b * c == m && c % level == 0 && gcd(a, level) == 1 && a * b * c * d < 0 {
                            out.push(IntMat2::new(a, b, c, d));
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn enumeration_examples() {
        let got = enumerate_h_neg(4, 8).unwrap();
        let mut want = vec![
            IntMat2::new(1, 1, -4, 4),
            IntMat2::new(-1, -1, 4, -4),
            IntMat2::new(1, -1, 4, 4),
            IntMat2::new(-1, 1, -4, -4),
        ];
        want.sort();
        assert_eq!(got, want);
        assert!(enumerate_h_neg(2, 1).unwrap().is_empty());
        assert!(enumerate_h_neg(5, 1).unwrap().is_empty());
        let mut want3 = vec![
            IntMat2::new(1, 1, -2, 1),
            IntMat2::new(1, -1, 2, 1),
            IntMat2::new(-1, 1, -2, -1),
            IntMat2::new(-1, -1, 2, -1),
        ];
        want3.sort();
        assert_eq!(enumerate_h_neg(2, 3).unwrap(), want3);
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for level in 2..=5i64 {
            for m in 1..=12i64 {
                assert_eq!(enumerate_h_neg(level as u64, m as u64).unwrap(), brute_h_neg(level, m), "N={level} m={m}");
            }
        }
    }

    #[test]
    fn enumeration_closed_under_negation() {
        for level in 2..=5u64 {
            for m in 1..=15u64 {
                let all = enumerate_h_neg(level, m).unwrap();
                for mat in &all {
                    assert_eq!(mat.det(), m as i64);
                    assert!(all.binary_search(&mat.negate()).is_ok());
                }
            }
        }
    }

    #[test]
    fn s_4_4_2_squared_vanishes() {
        assert!(s_poly_m(&ctx(4, 4, 2), 2).unwrap().is_zero());
    }

    #[test]
    fn t1_is_identity() {
        for level in 2..=5u64 {
            for w in (4..=14u32).step_by(2) {
                for n in 1..w {
                    let c = ctx(level, w, n);
                    assert_eq!(s_poly_m(&c, 1).unwrap(), crate::periodpoly::s_poly(&c).unwrap());
                }
            }
        }
    }

    #[test]
    fn level_four_weight_eight_example() {
        let c = ctx(4, 6, 2);
        let orbit = orbit_sum(&c, 8).unwrap();
        let x = |k: &[(i64, i64)]| BoundedPoly::from_ratios(6, k);
        // -1024(X^5 - 2X^3 + X)
        assert_eq!(orbit, x(&[(0, 1), (-1024, 1), (0, 1), (2048, 1), (0, 1), (-1024, 1)]));
        // -(256/15)(X^5 + 40X^3 - 56X)
        assert_eq!(
            diagonal_sum(&c, 8).unwrap(),
            x(&[(0, 1), (56, 1), (0, 1), (-40, 1), (0, 1), (-1, 1)]).scale(&rat(256, 15))
        );
        // 256(3X^5 - 4X^3)
        assert_eq!(level_correction(&c, 8).unwrap(), x(&[(0, 1), (0, 1), (0, 1), (-1024, 1), (0, 1), (768, 1)]));
        // -(1024/15)(4X^5 - 5X^3 + X)
        assert_eq!(
            r_minus_hecke(&c, 8).unwrap(),
            x(&[(0, 1), (1, 1), (0, 1), (-5, 1), (0, 1), (4, 1)]).scale(&rat(-1024, 15))
        );
    }

    #[test]
    fn printed_squares_include_level_correction() {
        let x = |k: &[(i64, i64)]| BoundedPoly::from_ratios(10, k);
        let want2 = x(&[(0, 1), (-5, 1), (0, 1), (30, 1), (0, 1), (-42, 1), (0, 1), (5, 1), (0, 1), (12, 1)])
            .scale(&rat(128, 45));
        let want4 = x(&[(0, 1), (-7, 1), (0, 1), (40, 1), (0, 1), (-42, 1), (0, 1), (-35, 1), (0, 1), (44, 1)])
            .scale(&rat(-32, 105));
        assert_eq!(r_minus_hecke(&ctx(2, 10, 2), 2).unwrap(), want2);
        assert_eq!(r_minus_hecke(&ctx(2, 10, 4), 2).unwrap(), want4);
        assert_ne!(s_poly_m(&ctx(2, 10, 2), 2).unwrap(), want2);
    }

    #[test]
    fn hecke_sums_are_odd_for_even_n() {
        for level in 2..=5u64 {
            for w in (4..=20u32).step_by(2) {
                for n in (2..w).step_by(2) {
                    for m in 1..=12u64 {
                        let c = ctx(level, w, n);
                        assert!(s_poly_m(&c, m).unwrap().is_odd(), "N={level} w={w} n={n} m={m}");
                        assert!(r_minus_hecke(&c, m).unwrap().is_odd());
                    }
                }
            }
        }
    }

    #[test]
    fn coprime_index_needs_no_correction() {
        let c = ctx(3, 10, 4);
        for m in [1u64, 2, 4, 5, 7] {
            assert_eq!(r_minus_hecke(&c, m).unwrap(), s_poly_m(&c, m).unwrap());
            assert!(level_correction(&c, m).unwrap().is_zero());
        }
        assert!(matches!(r_minus_hecke(&ctx(2, 10, 3), 2), Err(Error::UnsupportedParity(_))));
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(eigenvalue_w6(1).unwrap(), BigInt::from(1));
        assert_eq!(eigenvalue_w6(3).unwrap(), BigInt::from(12));
        assert_eq!(eigenvalue_w6(5).unwrap(), BigInt::from(-210));
        assert!(matches!(eigenvalue_w6(4), Err(Error::UnsupportedParity(_))));
    }
}
