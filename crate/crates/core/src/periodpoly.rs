//! Closed-form period polynomials of the cusp forms `R_{N,w,n}` dual to the
//! `n`-th period `r_n(f) = ∫_0^{i∞} f(z) z^n dz`, together with the
//! individual period values `r_m(R_{N,w,n})`.
//!
//! All values are rational once the common factor `2πi` carried by
//! `c_{w,n} = (-1)^n 2πi binom(w, n)` is cancelled; only the rational part
//! `(-1)^n binom(w, n)` is ever formed.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{
    bernoulli_number, bernoulli_poly0, binomial_q, int, prime_divisors, rat_pow, ExactRational,
};
use crate::polyring::{reciprocal_scale, BoundedPoly};

/// The parameters `(N, w, n)` of one period computation; `ñ = w - n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PeriodContext {
    level: u64,
    w: u32,
    n: u32,
}

impl PeriodContext {
    pub fn new(level: u64, w: u32, n: u32) -> Result<Self> {
        if level < 2 {
            return Err(Error::pre(format!("level must be at least 2, got {level}")));
        }
        if w == 0 || w % 2 != 0 {
            return Err(Error::pre(format!("w must be even and positive, got {w}")));
        }
        if n > w {
            return Err(Error::pre(format!("need 0 <= n <= w, got n = {n}, w = {w}")));
        }
        Ok(PeriodContext { level, w, n })
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn w(&self) -> u32 {
        self.w
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn ntilde(&self) -> u32 {
        self.w - self.n
    }

    /// The context with `n` replaced by `ñ`.
    pub fn dual(&self) -> Self {
        PeriodContext { n: self.ntilde(), ..*self }
    }

    /// Rational part of `c_{w,n}`: `(-1)^n binom(w, n)`.
    pub fn c_rat(&self) -> ExactRational {
        let b = binomial_q(self.w as u64, self.n as u64);
        if self.n % 2 == 0 {
            b
        } else {
            -b
        }
    }

    fn level_q(&self) -> ExactRational {
        int(self.level)
    }

    fn require_interior(&self) -> Result<()> {
        if self.n == 0 || self.n >= self.w {
            return Err(Error::pre(format!("need 0 < n < w, got n = {}, w = {}", self.n, self.w)));
        }
        Ok(())
    }
}

/// Which half of the period polynomial: even (`r⁺`) or odd (`r⁻`) in `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl FromStr for Sign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(Error::pre(format!("sign must be plus or minus, got {other:?}"))),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

/// `Π_{p | N} (1 - p^{-e}) / (1 - p^{-(w+2)})` over the distinct primes dividing `N`.
pub fn euler_factor(level: u64, e: u32, w: u32) -> ExactRational {
    prime_divisors(level)
        .into_iter()
        .map(|p| {
            let p = int(p);
            let num = BigRational::one() - rat_pow(&p, -(e as i64));
            let den = BigRational::one() - rat_pow(&p, -(w as i64 + 2));
            num / den
        })
        .product()
}

/// `S_{N,w,n}(X) = N^ñ/(ñ+1) · X^w B⁰_{ñ+1}(1/(NX)) - 1/(n+1) · B⁰_{n+1}(X)`.
///
/// For even `n` this is `r⁻(R_{N,w,n})`.
pub fn s_poly(ctx: &PeriodContext) -> Result<BoundedPoly> {
    ctx.require_interior()?;
    let (w, n, nt) = (ctx.w as usize, ctx.n, ctx.ntilde());
    let lead = rat_pow(&ctx.level_q(), nt as i64) / int(nt + 1);
    let first = reciprocal_scale(&bernoulli_poly0(nt + 1), ctx.level, w)?.scale(&lead);
    let second = bernoulli_poly0(n + 1).with_bound(w)?.scale(&(BigRational::one() / int(n + 1)));
    Ok(&first - &second)
}

/// `r⁺(R_{N,w,n})` for odd `n`: `S_{N,w,n}` minus the Euler-product correction
/// supported on `X^w` and `X^0`.
pub fn r_plus_odd(ctx: &PeriodContext) -> Result<BoundedPoly> {
    ctx.require_interior()?;
    if ctx.n % 2 == 0 {
        return Err(Error::UnsupportedParity(format!("r_plus_odd needs odd n, got {}", ctx.n)));
    }
    let (w, n, nt) = (ctx.w, ctx.n, ctx.ntilde());
    let big_n = ctx.level_q();
    let k = int(w + 2) * bernoulli_number(n + 1) * bernoulli_number(nt + 1)
        / (int(n + 1) * int(nt + 1) * bernoulli_number(w + 2));
    let top = euler_factor(ctx.level, n + 1, w) / &big_n;
    let bottom = euler_factor(ctx.level, nt + 1, w) / rat_pow(&big_n, n as i64 + 1);
    let mut correction = BoundedPoly::zero(w as usize);
    correction = &correction + &BoundedPoly::monomial(w as usize, w as usize, &k * top);
    correction = &correction - &BoundedPoly::monomial(w as usize, 0, &k * bottom);
    Ok(&s_poly(ctx)? - &correction)
}

fn delta(a: u32, b: u32) -> bool {
    a == b
}

/// The `m + n > w` branch, before division by `c_rat`.
fn period_upper(ctx: &PeriodContext, m: u32) -> ExactRational {
    let (w, n, nt) = (ctx.w, ctx.n, ctx.ntilde());
    let big_n = ctx.level_q();
    let mut v = binomial_q(m as u64 + 1, nt as u64) * bernoulli_number(m - nt + 1) / int(m + 1);
    if delta(m, nt + 1) {
        v -= BigRational::one() / (&big_n * int(n));
    }
    if delta(m, w) {
        v -= binomial_q(w as u64 + 2, n as u64 + 1)
            * bernoulli_number(n + 1)
            * bernoulli_number(nt + 1)
            * euler_factor(ctx.level, nt + 1, w)
            / (int(w + 1) * rat_pow(&big_n, n as i64 + 1) * bernoulli_number(w + 2));
    }
    v
}

/// The `m + n < w` branch, before division by `c_rat`.
fn period_lower(ctx: &PeriodContext, m: u32) -> ExactRational {
    let (w, n, nt) = (ctx.w, ctx.n, ctx.ntilde());
    let mt = w - m;
    let big_n = ctx.level_q();
    let mut v = binomial_q(mt as u64 + 1, n as u64) * bernoulli_number(mt - n + 1) / int(mt + 1);
    if delta(mt, n + 1) {
        v -= BigRational::one() / (&big_n * int(nt));
    }
    if delta(m, 0) {
        v -= binomial_q(w as u64 + 2, n as u64 + 1)
            * bernoulli_number(n + 1)
            * bernoulli_number(nt + 1)
            * euler_factor(ctx.level, n + 1, w)
            / (int(w + 1) * rat_pow(&big_n, nt as i64 + 1) * bernoulli_number(w + 2));
    }
    rat_pow(&-big_n, nt as i64 - m as i64) * v
}

/// `r_m(R_{N,w,n})` for `n = w` and odd `m`.
fn period_top(level: u64, w: u32, m: u32) -> ExactRational {
    let mt = w - m;
    let big_n = int(level);
    let mut v = bernoulli_number(m + 1) / int(m + 1);
    if delta(w, mt + 1) {
        v -= BigRational::one() / (&big_n * int(w));
    }
    v -= int(w + 2) * bernoulli_number(m + 1) * bernoulli_number(mt + 1) * euler_factor(level, mt + 1, w)
        / (rat_pow(&big_n, m as i64 + 1) * int(m + 1) * int(mt + 1) * bernoulli_number(w + 2));
    v
}

/// `r_m(R_{N,w,0})` for odd `m`.
fn period_bottom(level: u64, w: u32, m: u32) -> ExactRational {
    let mt = w - m;
    let big_n = int(level);
    let mut v = bernoulli_number(mt + 1) / int(mt + 1);
    if delta(w, m + 1) {
        v -= BigRational::one() / (&big_n * int(w));
    }
    v -= int(w + 2) * bernoulli_number(m + 1) * bernoulli_number(mt + 1) * euler_factor(level, m + 1, w)
        / (rat_pow(&big_n, mt as i64 + 1) * int(m + 1) * int(mt + 1) * bernoulli_number(w + 2));
    -rat_pow(&big_n, mt as i64) * v
}

/// The period `r_m(R_{N,w,n})` as an exact rational.
///
/// Defined when `0 < n < w` with `m` and `n` of opposite parity, or when
/// `n ∈ {0, w}` with `m` odd and `0 < m < w`. Other combinations have no
/// closed form and are reported as [`Error::UnsupportedParity`].
pub fn period_value(ctx: &PeriodContext, m: u32) -> Result<ExactRational> {
    let (w, n) = (ctx.w, ctx.n);
    if m > w {
        return Err(Error::pre(format!("period index m = {m} exceeds w = {w}")));
    }
    if n == 0 || n == w {
        if m % 2 == 0 || m == 0 || m == w {
            return Err(Error::UnsupportedParity(format!(
                "for n = {n} only odd 0 < m < w have closed forms, got m = {m}"
            )));
        }
        return Ok(if n == w { period_top(ctx.level, w, m) } else { period_bottom(ctx.level, w, m) });
    }
    if (m + n) % 2 == 0 {
        return Err(Error::UnsupportedParity(format!(
            "m = {m} and n = {n} have the same parity"
        )));
    }
    let raw = if m + n > w { period_upper(ctx, m) } else { period_lower(ctx, m) };
    Ok(raw / ctx.c_rat())
}

/// Builds `r^±(R_{N,w,n})` directly from the period values via
/// `r(f)(X) = Σ_m binom(w, m) (-1)^{w-m} r_{w-m}(f) X^m`.
///
/// `Minus` assembles the odd powers and needs `n` even; `Plus` assembles the
/// even powers, including `X^0` and `X^w`, and needs `n` odd.
pub fn assemble_from_periods(ctx: &PeriodContext, sign: Sign) -> Result<BoundedPoly> {
    let w = ctx.w;
    let want_n_even = sign == Sign::Minus;
    if (ctx.n % 2 == 0) != want_n_even {
        return Err(Error::UnsupportedParity(format!(
            "{sign} assembly needs n of the opposite parity to its indices, got n = {}",
            ctx.n
        )));
    }
    let mut coeffs = vec![BigRational::zero(); w as usize + 1];
    let start = if sign == Sign::Minus { 1 } else { 0 };
    for m in (start..=w).step_by(2) {
        if sign == Sign::Minus && m == w {
            continue;
        }
        let r = period_value(ctx, w - m)?;
        let b = binomial_q(w as u64, m as u64);
        coeffs[m as usize] = if (w - m) % 2 == 0 { b * r } else { -(b * r) };
    }
    Ok(BoundedPoly::from_coeffs(w as usize, coeffs))
}

/// `(-N)^{ñ-m}`, the factor relating `r_m(R_n)` and `r_{w-m}(R_ñ)`.
pub fn symmetry_factor(ctx: &PeriodContext, m: u32) -> ExactRational {
    rat_pow(&-ctx.level_q(), ctx.ntilde() as i64 - m as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn ctx(level: u64, w: u32, n: u32) -> PeriodContext {
        PeriodContext::new(level, w, n).unwrap()
    }

    #[test]
    fn s_2_6_2() {
        let s = s_poly(&ctx(2, 6, 2)).unwrap();
        let want = BoundedPoly::from_ratios(6, &[(0, 1), (1, 1), (0, 1), (-5, 1), (0, 1), (4, 1)])
            .scale(&rat(-1, 15));
        assert_eq!(s, want);
        // leading coefficient N^3 B_4
        assert_eq!(s.coeff(5), rat(8, 1) * bernoulli_number(4));
    }

    #[test]
    fn s_2_10_2() {
        let s = s_poly(&ctx(2, 10, 2)).unwrap();
        let want = BoundedPoly::from_ratios(
            10,
            &[(0, 1), (5, 1), (0, 1), (-45, 1), (0, 1), (168, 1), (0, 1), (-320, 1), (0, 1), (192, 1)],
        )
        .scale(&rat(-1, 45));
        assert_eq!(s, want);
    }

    #[test]
    fn s_2_10_4_has_odd_powers_only() {
        // The printed value lists -280X^6 and 168X^4; the odd-parity recomputation
        // gives -280X^7 and 168X^5.
        let s = s_poly(&ctx(2, 10, 4)).unwrap();
        let want = BoundedPoly::from_ratios(
            10,
            &[(0, 1), (7, 1), (0, 1), (-55, 1), (0, 1), (168, 1), (0, 1), (-280, 1), (0, 1), (160, 1)],
        )
        .scale(&rat(1, 210));
        assert_eq!(s, want);
    }

    #[test]
    fn s_poly_rejects_boundary_n() {
        assert!(s_poly(&ctx(2, 6, 0)).is_err());
        assert!(s_poly(&ctx(2, 6, 6)).is_err());
        assert!(PeriodContext::new(2, 7, 2).is_err());
        assert!(PeriodContext::new(1, 6, 2).is_err());
    }

    #[test]
    fn period_value_examples() {
        assert_eq!(period_value(&ctx(2, 6, 2), 5).unwrap(), rat(1, 90));
        assert_eq!(period_value(&ctx(2, 6, 4), 1).unwrap(), rat(-1, 45));
        assert!(matches!(period_value(&ctx(2, 6, 2), 4), Err(Error::UnsupportedParity(_))));
        assert!(matches!(period_value(&ctx(2, 6, 0), 2), Err(Error::UnsupportedParity(_))));
    }

    #[test]
    fn delta_term_fires_only_at_ntilde_plus_one() {
        // w = 10, n = 4: ñ = 6, the upper branch covers m = 7 and m = 9.
        let c = ctx(2, 10, 4);
        let plain = |m: u32| binomial_q(m as u64 + 1, 6) * bernoulli_number(m - 5) / int(m + 1);
        assert_eq!(period_upper(&c, 7), plain(7) - rat(1, 8));
        assert_eq!(period_upper(&c, 9), plain(9));
    }

    #[test]
    fn assembly_matches_closed_forms() {
        assert_eq!(assemble_from_periods(&ctx(2, 6, 2), Sign::Minus).unwrap(), s_poly(&ctx(2, 6, 2)).unwrap());
        assert_eq!(assemble_from_periods(&ctx(3, 8, 4), Sign::Minus).unwrap(), s_poly(&ctx(3, 8, 4)).unwrap());
        assert_eq!(
            assemble_from_periods(&ctx(2, 6, 3), Sign::Plus).unwrap(),
            r_plus_odd(&ctx(2, 6, 3)).unwrap()
        );
    }

    #[test]
    fn r_plus_is_even_and_corrected_only_at_ends() {
        for level in 2..=6u64 {
            for w in (4..=16u32).step_by(2) {
                for n in (1..w).step_by(2) {
                    let c = ctx(level, w, n);
                    let r = r_plus_odd(&c).unwrap();
                    assert!(r.is_even());
                    let diff = &s_poly(&c).unwrap() - &r;
                    for k in 1..w as usize {
                        assert!(diff.coeff(k).is_zero());
                    }
                }
            }
        }
        assert!(matches!(r_plus_odd(&ctx(2, 6, 2)), Err(Error::UnsupportedParity(_))));
    }

    #[test]
    fn boundary_periods_satisfy_symmetry() {
        // r_m(R_0) = (-N)^{w-m} r_{w-m}(R_w)
        for level in 2..=5u64 {
            for w in (4..=20u32).step_by(2) {
                for m in (1..w).step_by(2) {
                    let lhs = period_value(&ctx(level, w, 0), m).unwrap();
                    let rhs = symmetry_factor(&ctx(level, w, 0), m) * period_value(&ctx(level, w, w), w - m).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn boundary_periods_are_conjugate_to_interior() {
        // r_m(R_w) = -r_w(R_m) for odd m.
        for w in (4..=16u32).step_by(2) {
            for m in (1..w).step_by(2) {
                let top = period_value(&ctx(3, w, w), m).unwrap();
                let interior = period_value(&ctx(3, w, m), w).unwrap();
                assert_eq!(top, -interior);
            }
        }
    }
}
