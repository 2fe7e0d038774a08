//! Dense linear algebra over exact rationals.
//!
//! Inverse and determinant clear denominators row by row and then run
//! fraction-free (Bareiss) elimination over the integers, so intermediate
//! entries stay bounded by minors of the input.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{bernoulli_number, int, rat_pow, ExactRational};

/// A dense row-major matrix of exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<ExactRational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { BigRational::one() } else { BigRational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> ExactRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// # Panics
    /// If `entries.len() != rows * cols`.
    pub fn new(rows: usize, cols: usize, entries: Vec<ExactRational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count does not match shape");
        ExactMatrix { rows, cols, entries }
    }

    /// Square or rectangular matrix from integer rows.
    ///
    /// # Panics
    /// On ragged input.
    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| int(rows[i][j]))
    }

    pub fn from_rows(rows: Vec<Vec<ExactRational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        ExactMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &ExactRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: ExactRational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[ExactRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<ExactRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        ExactMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(|x| x * c).collect() }
    }

    /// # Panics
    /// On incompatible shapes.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * other.get(k, j)).sum()
        })
    }

    /// # Panics
    /// On incompatible shapes.
    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch in difference");
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn trace(&self) -> ExactRational {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Integer rows `D M` with `D` the per-row lcm of denominators; also returns `D`.
    fn clear_denominators(&self) -> (Vec<Vec<BigInt>>, Vec<BigInt>) {
        let mut scales = Vec::with_capacity(self.rows);
        let rows = (0..self.rows)
            .map(|i| {
                let l = self.row(i).iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                let r = self.row(i).iter().map(|x| x.numer() * (&l / x.denom())).collect();
                scales.push(l);
                r
            })
            .collect();
        (rows, scales)
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        self.row_echelon().1.len()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn row_echelon(&self) -> (ExactMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        let v = m.get(i, j) - &f * m.get(r, j);
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Determinant via Bareiss elimination.
    pub fn determinant(&self) -> Result<ExactRational> {
        if !self.is_square() {
            return Err(Error::pre("determinant of a non-square matrix"));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigRational::one());
        }
        let (mut a, scales) = self.clear_denominators();
        let mut prev = BigInt::one();
        let mut negate = false;
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                    a[i][j] = exact_div(v, &prev);
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let scale: BigInt = scales.iter().product();
        let det = BigRational::new(a[n - 1][n - 1].clone(), scale);
        Ok(if negate { -det } else { det })
    }

    /// Exact inverse via fraction-free Gauss–Jordan elimination on `[D M | I]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::pre("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let (int_rows, scales) = self.clear_denominators();
        let mut a: Vec<Vec<BigInt>> = int_rows
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                r
            })
            .collect();
        let mut prev = BigInt::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Err(Error::SingularMatrix { rank: self.rank(), dim: n });
            };
            a.swap(p, k);
            for i in 0..n {
                if i == k {
                    continue;
                }
                let f = a[i][k].clone();
                for j in 0..2 * n {
                    let v = &a[k][k] * &a[i][j] - &f * &a[k][j];
                    a[i][j] = exact_div(v, &prev);
                }
            }
            prev = a[k][k].clone();
        }
        // Left block is now prev·I and the right block prev·(DM)^{-1}.
        Ok(Self::from_fn(n, n, |i, j| BigRational::new(&a[i][n + j] * &scales[j], prev.clone())))
    }

    /// Coefficients of `det(xI - M)`, ascending and monic.
    ///
    /// Faddeev–LeVerrier: only divisions by the integers `1..=n` occur.
    pub fn charpoly(&self) -> Result<Vec<ExactRational>> {
        if !self.is_square() {
            return Err(Error::pre("characteristic polynomial of a non-square matrix"));
        }
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut aux = ExactMatrix::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&aux);
            for i in 0..n {
                let v = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, v);
            }
            aux = next;
            coeffs[n - k] = -self.mul(&aux).trace() / int(k as u64);
        }
        Ok(coeffs)
    }

    /// The unique `x` with `self · x = b`, or an error if the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, b: &[ExactRational]) -> Result<Vec<ExactRational>> {
        if b.len() != self.rows {
            return Err(Error::pre("right-hand side length does not match row count"));
        }
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| {
            if j < self.cols { self.get(i, j).clone() } else { b[i].clone() }
        });
        let (red, pivots) = aug.row_echelon();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::Inconsistent("right-hand side is outside the column space".into()));
        }
        if pivots.len() < self.cols {
            return Err(Error::SingularMatrix { rank: pivots.len(), dim: self.cols });
        }
        Ok((0..self.cols).map(|i| red.get(i, self.cols).clone()).collect())
    }
}

fn exact_div(v: BigInt, d: &BigInt) -> BigInt {
    let (q, r) = v.div_rem(d);
    debug_assert!(r.is_zero(), "Bareiss step was not exact");
    q
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Expands `Π (x - r_i)` into ascending coefficients.
pub fn poly_from_roots(roots: &[ExactRational]) -> Vec<ExactRational> {
    let mut coeffs = vec![BigRational::one()];
    for r in roots {
        let mut next = vec![BigRational::zero(); coeffs.len() + 1];
        for (k, c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Which Hankel determinant of scaled Bernoulli numbers: entry
/// `B_{2i+2j+2k}/(2i+2j+2k)!` for offset `k ∈ {1, 2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HankelKind {
    One,
    Two,
    Three,
}

impl HankelKind {
    pub fn from_index(which: u8) -> Result<Self> {
        match which {
            1 => Ok(HankelKind::One),
            2 => Ok(HankelKind::Two),
            3 => Ok(HankelKind::Three),
            _ => Err(Error::pre(format!("Hankel kind must be 1, 2 or 3, got {which}"))),
        }
    }

    fn offset(self) -> u32 {
        match self {
            HankelKind::One => 1,
            HankelKind::Two => 2,
            HankelKind::Three => 3,
        }
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

/// The `n × n` Hankel matrix `[B_{2i+2j+2k}/(2i+2j+2k)!]`.
pub fn hankel_matrix(kind: HankelKind, n: usize) -> ExactMatrix {
    let k0 = kind.offset();
    ExactMatrix::from_fn(n, n, |i, j| {
        let idx = 2 * (i + j) as u32 + 2 * k0;
        bernoulli_number(idx) / BigRational::from_integer(factorial(idx))
    })
}

/// Closed-form value of the Hankel determinant of the given kind and size.
pub fn hankel_closed_form(kind: HankelKind, n: usize) -> ExactRational {
    let n = n as i64;
    let odd_product = |shift: i64, upper: i64, top: i64| -> ExactRational {
        (1..=upper).map(|i| rat_pow(&int(2 * i + shift), -(top - i))).product()
    };
    match kind {
        HankelKind::One => rat_pow(&int(4), -(n * n)) * odd_product(1, 2 * n - 1, 2 * n),
        HankelKind::Two => {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            sign * rat_pow(&int(4), -(n * n) - n) * rat_pow(&int(9), -n) * odd_product(3, 2 * n - 1, 2 * n)
        }
        HankelKind::Three => {
            rat_pow(&int(4), -(n * n) - 2 * n)
                * int(n + 1)
                * int(2 * n + 3)
                * odd_product(1, 2 * n + 1, 2 * n + 2)
        }
    }
}

/// Directly evaluated Hankel determinant together with its closed form.
pub fn hankel_bernoulli(which: u8, n: usize) -> Result<(ExactRational, ExactRational)> {
    let kind = HankelKind::from_index(which)?;
    if n == 0 {
        return Err(Error::pre("Hankel size must be positive"));
    }
    let det = hankel_matrix(kind, n).determinant()?;
    Ok((det, hankel_closed_form(kind, n)))
}

/// Whether `x` is an integer.
pub fn is_integral(x: &ExactRational) -> bool {
    x.is_integer()
}

/// Absolute value helper for diagnostics.
pub fn abs(x: &ExactRational) -> ExactRational {
    x.abs()
}
