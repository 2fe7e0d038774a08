//! Exact number-theoretic primitives: Bernoulli numbers, the even-index
//! Bernoulli polynomials `B⁰_k`, binomial coefficients, divisor sums and the
//! Möbius function.
//!
//! Bernoulli numbers use the convention `B_1 = -1/2`, so that
//! `B_m(x) = Σ binom(m, i) B_i x^{m-i}`. Nothing downstream depends on that
//! choice: `B⁰_k` drops the `B_1` term.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::polyring::BoundedPoly;

/// Every numeric quantity in this crate is an exact, always-reduced fraction
/// with a positive denominator.
pub type ExactRational = BigRational;

/// Shorthand for the rational `num / den`.
///
/// # Panics
/// If `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integral rational.
pub fn int(n: impl Into<BigInt>) -> ExactRational {
    BigRational::from_integer(n.into())
}

fn bernoulli_cache() -> &'static RwLock<Vec<ExactRational>> {
    static CACHE: OnceLock<RwLock<Vec<ExactRational>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(vec![BigRational::one()]))
}

/// The Bernoulli number `B_k` with `B_1 = -1/2`.
///
/// Computed from `Σ_{i<m} binom(m, i) B_i = 0` and memoized process-wide.
/// Concurrent callers see identical values; extension of the table is
/// serialized behind a write lock.
pub fn bernoulli_number(k: u32) -> ExactRational {
    let k = k as usize;
    {
        let cache = bernoulli_cache().read().expect("bernoulli cache poisoned");
        if let Some(b) = cache.get(k) {
            return b.clone();
        }
    }
    let mut cache = bernoulli_cache().write().expect("bernoulli cache poisoned");
    while cache.len() <= k {
        let m = cache.len();
        // B_m = -1/(m+1) Σ_{i<m} binom(m+1, i) B_i
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (i, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                acc += b * &binom;
            }
            binom = binom * BigInt::from(m + 1 - i) / BigInt::from(i + 1);
        }
        let b = -acc / BigInt::from(m + 1);
        cache.push(b);
    }
    cache[k].clone()
}

/// `B_l`, or zero when `l < 0`.
pub fn bernoulli_or_zero(l: i64) -> ExactRational {
    if l < 0 {
        BigRational::zero()
    } else {
        bernoulli_number(l as u32)
    }
}

/// `B⁰_k(x) = Σ_{i even} binom(k, i) B_i x^{k-i}`, returned with degree bound `k`.
pub fn bernoulli_poly0(k: u32) -> BoundedPoly {
    let mut coeffs = vec![BigRational::zero(); k as usize + 1];
    for i in (0..=k).step_by(2) {
        coeffs[(k - i) as usize] = bernoulli_number(i) * binomial(k as u64, i as u64);
    }
    BoundedPoly::from_coeffs(k as usize, coeffs)
}

/// Exact binomial coefficient; zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Binomial coefficient as a rational.
pub fn binomial_q(n: u64, k: u64) -> ExactRational {
    BigRational::from_integer(binomial(n, k))
}

/// Positive divisors of `n` in increasing order.
///
/// # Panics
/// If `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors: n must be positive");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Factorization of `n` by trial division as `(prime, exponent)` pairs.
///
/// # Panics
/// If `n == 0`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize: n must be positive");
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct prime divisors of `n`, increasing.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// `σ_k(n) = Σ_{d | n} d^k`.
///
/// # Panics
/// If `n == 0`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    assert!(n >= 1, "sigma: n must be positive");
    divisors(n).into_iter().map(|d| num_traits::pow(BigInt::from(d), k as usize)).sum()
}

/// The Möbius function.
///
/// # Panics
/// If `n == 0`.
pub fn moebius(n: u64) -> i8 {
    assert!(n >= 1, "moebius: n must be positive");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// `base^exp` for a possibly negative exponent.
pub fn rat_pow(base: &ExactRational, exp: i64) -> ExactRational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}
