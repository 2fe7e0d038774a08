//! Polynomials in one variable `X` over exact rationals with an ambient
//! degree cap, i.e. elements of the space of polynomials of degree `≤ w`.
//!
//! Coefficients are stored in ascending order of the power of `X`.

use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, ExactRational};

/// A polynomial of degree at most `bound`.
///
/// `coeffs.len() == bound + 1` always; trailing entries may be zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedPoly {
    bound: usize,
    coeffs: Vec<ExactRational>,
}

impl BoundedPoly {
    pub fn zero(bound: usize) -> Self {
        BoundedPoly { bound, coeffs: vec![BigRational::zero(); bound + 1] }
    }

    /// Builds a polynomial from ascending coefficients, padding with zeros.
    ///
    /// # Panics
    /// If more than `bound + 1` coefficients are given.
    pub fn from_coeffs(bound: usize, mut coeffs: Vec<ExactRational>) -> Self {
        assert!(coeffs.len() <= bound + 1, "too many coefficients for bound {bound}");
        coeffs.resize(bound + 1, BigRational::zero());
        BoundedPoly { bound, coeffs }
    }

    /// Convenience constructor from integer `(numerator, denominator)` pairs.
    pub fn from_ratios(bound: usize, coeffs: &[(i64, i64)]) -> Self {
        let coeffs = coeffs
            .iter()
            .map(|&(n, d)| BigRational::new(n.into(), d.into()))
            .collect();
        Self::from_coeffs(bound, coeffs)
    }

    /// `c · X^k` inside the space of degree `≤ bound`.
    pub fn monomial(bound: usize, k: usize, c: ExactRational) -> Self {
        let mut p = Self::zero(bound);
        p.coeffs[k] = c;
        p
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// Coefficient of `X^k`; zero beyond the bound.
    pub fn coeff(&self, k: usize) -> ExactRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Re-embeds into the space of degree `≤ bound`.
    pub fn with_bound(&self, bound: usize) -> Result<Self> {
        if let Some(d) = self.degree() {
            if d > bound {
                return Err(Error::pre(format!("degree {d} exceeds bound {bound}")));
            }
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(bound + 1, BigRational::zero());
        Ok(BoundedPoly { bound, coeffs })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        BoundedPoly { bound: self.bound, coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Product, which must fit in the space of degree `≤ bound`.
    pub fn mul_bounded(&self, other: &Self, bound: usize) -> Result<Self> {
        let mut out = vec![BigRational::zero(); bound + 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let slot = out
                    .get_mut(i + j)
                    .ok_or_else(|| Error::pre(format!("product degree exceeds bound {bound}")))?;
                *slot += a * b;
            }
        }
        Ok(BoundedPoly { bound, coeffs: out })
    }

    /// `(aX + b)^e` inside the space of degree `≤ bound`.
    pub fn linear_power(a: &BigInt, b: &BigInt, e: usize, bound: usize) -> Result<Self> {
        if e > bound {
            return Err(Error::pre(format!("power {e} exceeds bound {bound}")));
        }
        let mut p = Self::zero(bound);
        let mut apow = vec![BigInt::one(); e + 1];
        let mut bpow = vec![BigInt::one(); e + 1];
        for i in 1..=e {
            apow[i] = &apow[i - 1] * a;
            bpow[i] = &bpow[i - 1] * b;
        }
        for k in 0..=e {
            let c = binomial(e as u64, k as u64) * &apow[k] * &bpow[e - k];
            p.coeffs[k] = BigRational::from_integer(c);
        }
        Ok(p)
    }

    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Only odd powers of `X` carry nonzero coefficients.
    pub fn is_odd(&self) -> bool {
        self.coeffs.iter().step_by(2).all(Zero::is_zero)
    }

    /// Only even powers of `X` carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs.iter().skip(1).step_by(2).all(Zero::is_zero)
    }

    /// `(P(X) + P(-X)) / 2`.
    pub fn even_part(&self) -> Self {
        self.mask(|k| k % 2 == 0)
    }

    /// `(P(X) - P(-X)) / 2`.
    pub fn odd_part(&self) -> Self {
        self.mask(|k| k % 2 == 1)
    }

    fn mask(&self, keep: impl Fn(usize) -> bool) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if keep(k) { c.clone() } else { BigRational::zero() })
            .collect();
        BoundedPoly { bound: self.bound, coeffs }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&ExactRational, &ExactRational) -> ExactRational) -> Self {
        let bound = self.bound.max(other.bound);
        let zero = BigRational::zero();
        let coeffs = (0..=bound)
            .map(|k| f(self.coeffs.get(k).unwrap_or(&zero), other.coeffs.get(k).unwrap_or(&zero)))
            .collect();
        BoundedPoly { bound, coeffs }
    }
}

impl Add for &BoundedPoly {
    type Output = BoundedPoly;
    fn add(self, rhs: &BoundedPoly) -> BoundedPoly {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &BoundedPoly {
    type Output = BoundedPoly;
    fn sub(self, rhs: &BoundedPoly) -> BoundedPoly {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &BoundedPoly {
    type Output = BoundedPoly;
    fn neg(self) -> BoundedPoly {
        BoundedPoly { bound: self.bound, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul<&ExactRational> for &BoundedPoly {
    type Output = BoundedPoly;
    fn mul(self, rhs: &ExactRational) -> BoundedPoly {
        self.scale(rhs)
    }
}

/// `X^w · P(t / X)`: the monomial `x^k` maps to `t^k X^{w-k}`.
pub fn reciprocal_substitute(p: &BoundedPoly, t: &ExactRational, w: usize) -> Result<BoundedPoly> {
    let deg = p.degree().unwrap_or(0);
    if deg > w {
        return Err(Error::pre(format!("degree {deg} exceeds w = {w}")));
    }
    let mut out = BoundedPoly::zero(w);
    let mut tk = BigRational::one();
    for k in 0..=deg {
        if !p.coeffs[k].is_zero() {
            out.coeffs[w - k] = &p.coeffs[k] * &tk;
        }
        tk *= t;
    }
    Ok(out)
}

/// `X^w · P(1 / (N X))`: the monomial `x^k` maps to `X^{w-k} / N^k`.
pub fn reciprocal_scale(p: &BoundedPoly, level: u64, w: usize) -> Result<BoundedPoly> {
    if level == 0 {
        return Err(Error::pre("level must be positive"));
    }
    let t = BigRational::new(BigInt::one(), BigInt::from(level));
    reciprocal_substitute(p, &t, w)
}

/// `P(aX + b)`, expanded exactly. The bound of `P` is kept.
pub fn compose_linear(p: &BoundedPoly, a: i64, b: i64) -> BoundedPoly {
    let (a, b) = (BigInt::from(a), BigInt::from(b));
    let mut out = BoundedPoly::zero(p.bound);
    for (k, c) in p.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let term = BoundedPoly::linear_power(&a, &b, k, p.bound)
            .expect("k never exceeds the bound");
        for (i, t) in term.coeffs.iter().enumerate() {
            out.coeffs[i] += t * c;
        }
    }
    out
}

/// `⟨f, g⟩ = Σ_ν a_ν b_ν` over coefficient vectors of the same space.
///
/// Conjugation is the identity on rational coefficients.
pub fn coeff_inner_product(f: &BoundedPoly, g: &BoundedPoly) -> Result<ExactRational> {
    if f.bound != g.bound {
        return Err(Error::pre(format!("bounds differ: {} vs {}", f.bound, g.bound)));
    }
    Ok(f.coeffs.iter().zip(&g.coeffs).map(|(a, b)| a * b).sum())
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    bound: usize,
    coeffs: Vec<String>,
}

impl Serialize for BoundedPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr { bound: self.bound, coeffs: self.coeffs.iter().map(|c| c.to_string()).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundedPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        if repr.coeffs.len() != repr.bound + 1 {
            return Err(D::Error::custom(format!(
                "expected {} coefficients, found {}",
                repr.bound + 1,
                repr.coeffs.len()
            )));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| BigRational::from_str(s).map_err(|e| D::Error::custom(format!("{s:?}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(BoundedPoly { bound: repr.bound, coeffs })
    }
}
