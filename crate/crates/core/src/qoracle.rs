//! Truncated q-expansions of modular forms on `Γ₀(2)` and the Hecke action
//! on their coefficients. This is an independent route to the Hecke matrices
//! computed from period polynomials.

use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactlinalg::ExactMatrix;
use crate::exactnum::{bernoulli_number, factorize, int, rat_pow, sigma, ExactRational};
use crate::heckeop::dim_cusp;

/// `Σ a_n q^n` with `a_0, …, a_prec` known exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    weight: i64,
    coeffs: Vec<ExactRational>,
}

impl QSeries {
    /// # Panics
    /// If `coeffs` is empty.
    pub fn new(weight: i64, coeffs: Vec<ExactRational>) -> Self {
        assert!(!coeffs.is_empty(), "a q-series needs at least a_0");
        QSeries { weight, coeffs }
    }

    pub fn weight(&self) -> i64 {
        self.weight
    }

    /// Highest exponent with a known coefficient.
    pub fn prec(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[ExactRational] {
        &self.coeffs
    }

    /// `a_n`, or `None` beyond the precision.
    pub fn coeff(&self, n: usize) -> Option<&ExactRational> {
        self.coeffs.get(n)
    }

    pub fn truncate(&self, prec: usize) -> Self {
        QSeries { weight: self.weight, coeffs: self.coeffs[..=prec.min(self.prec())].to_vec() }
    }

    pub fn is_cusp_at_infinity(&self) -> bool {
        self.coeffs[0].is_zero()
    }

    fn check_weight(&self, other: &Self) -> Result<()> {
        if self.weight != other.weight {
            return Err(Error::pre(format!("cannot add forms of weights {} and {}", self.weight, other.weight)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_weight(other)?;
        let p = self.prec().min(other.prec());
        Ok(QSeries { weight: self.weight, coeffs: (0..=p).map(|n| &self.coeffs[n] + &other.coeffs[n]).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_weight(other)?;
        let p = self.prec().min(other.prec());
        Ok(QSeries { weight: self.weight, coeffs: (0..=p).map(|n| &self.coeffs[n] - &other.coeffs[n]).collect() })
    }

    pub fn scale(&self, c: &ExactRational) -> Self {
        QSeries { weight: self.weight, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Product; weights add.
    pub fn mul(&self, other: &Self) -> Self {
        let p = self.prec().min(other.prec());
        QSeries { weight: self.weight + other.weight, coeffs: convolve(&self.coeffs, &other.coeffs, p) }
    }

    /// `f(dz)`: `a_n` moves to index `dn`. Indices up to `d·prec + d - 1`
    /// are then known.
    ///
    /// # Panics
    /// If `d == 0`.
    pub fn rescale(&self, d: usize) -> Self {
        assert!(d >= 1, "rescale factor must be positive");
        let p = d * self.prec() + d - 1;
        let mut coeffs = vec![BigRational::zero(); p + 1];
        for (n, a) in self.coeffs.iter().enumerate() {
            coeffs[d * n] = a.clone();
        }
        QSeries { weight: self.weight, coeffs }
    }
}

impl Serialize for QSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("QSeries", 3)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("prec", &self.prec())?;
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}

fn convolve(a: &[ExactRational], b: &[ExactRational], prec: usize) -> Vec<ExactRational> {
    (0..=prec)
        .map(|n| {
            (0..=n)
                .filter(|&i| !a[i].is_zero() && !b[n - i].is_zero())
                .map(|i| &a[i] * &b[n - i])
                .sum()
        })
        .collect()
}

/// `Π_{n≥1} (1 - q^n)` up to `q^prec`, by the pentagonal number theorem.
fn euler_product(prec: usize) -> Vec<ExactRational> {
    let mut c = vec![BigRational::zero(); prec + 1];
    c[0] = BigRational::one();
    for k in 1i64.. {
        let g1 = (k * (3 * k - 1) / 2) as usize;
        if g1 > prec {
            break;
        }
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        c[g1] += &sign;
        let g2 = (k * (3 * k + 1) / 2) as usize;
        if g2 <= prec {
            c[g2] += &sign;
        }
    }
    c
}

/// `f^r` for a series with `f_0 = 1` and any integer `r`:
/// `n g_n = Σ_{k=1}^{n} ((r+1)k - n) f_k g_{n-k}`.
fn power_series_pow(f: &[ExactRational], r: i64) -> Vec<ExactRational> {
    debug_assert!(f[0].is_one());
    let prec = f.len() - 1;
    let mut g = vec![BigRational::zero(); prec + 1];
    g[0] = BigRational::one();
    for n in 1..=prec {
        let mut acc = BigRational::zero();
        for k in 1..=n {
            if f[k].is_zero() {
                continue;
            }
            let weight = (r + 1) * k as i64 - n as i64;
            acc += &f[k] * &g[n - k] * int(weight);
        }
        g[n] = acc / int(n as u64);
    }
    g
}

/// `Π_δ η(δz)^{r_δ}` up to `q^prec`.
pub fn eta_quotient(parts: &[(u64, i64)], prec: usize) -> Result<QSeries> {
    let order: i64 = parts.iter().map(|&(d, r)| d as i64 * r).sum();
    if order % 24 != 0 || order < 0 {
        return Err(Error::Unsupported(format!("eta quotient has leading exponent {order}/24")));
    }
    let exps: i64 = parts.iter().map(|&(_, r)| r).sum();
    if exps % 2 != 0 {
        return Err(Error::Unsupported("eta quotient of half-integral weight".into()));
    }
    if parts.iter().any(|&(d, _)| d == 0) {
        return Err(Error::pre("eta scale must be positive"));
    }
    let shift = (order / 24) as usize;
    let mut coeffs = vec![BigRational::zero(); prec + 1];
    if shift <= prec {
        let len = prec - shift;
        let mut prod = vec![BigRational::zero(); len + 1];
        prod[0] = BigRational::one();
        for &(d, r) in parts {
            let base = euler_product(len / d as usize);
            let powered = QSeries::new(0, power_series_pow(&base, r)).rescale(d as usize);
            prod = convolve(&prod, powered.coeffs(), len);
        }
        for (n, c) in prod.into_iter().enumerate() {
            coeffs[n + shift] = c;
        }
    }
    Ok(QSeries::new(exps / 2, coeffs))
}

/// `E_k = 1 - (2k/B_k) Σ σ_{k-1}(n) q^n` for even `k ≥ 2`.
pub fn eisenstein_level1(k: u32, prec: usize) -> Result<QSeries> {
    if k < 2 || k % 2 != 0 {
        return Err(Error::Unsupported(format!("Eisenstein series needs even k >= 2, got {k}")));
    }
    let factor = -int(2 * k) / bernoulli_number(k);
    let mut coeffs = vec![BigRational::one()];
    coeffs.extend((1..=prec as u64).map(|n| &factor * BigRational::from_integer(sigma(k - 1, n))));
    Ok(QSeries::new(k as i64, coeffs))
}

/// Cusp of `Γ₀(2)` at which an Eisenstein series is normalized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cusp {
    Infinity,
    Zero,
}

/// `E^{i∞}_k = (2^k E_k(2z) - E_k)/(2^k - 1)` and
/// `E^0_k = 2^k (E_k - E_k(2z))/(2^k - 1)`.
pub fn eisenstein_gamma02(k: u32, cusp: Cusp, prec: usize) -> Result<QSeries> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::Unsupported(format!("Eisenstein series on Γ₀(2) needs even k >= 4, got {k}")));
    }
    let e = eisenstein_level1(k, prec)?;
    let e2z = e.rescale(2).truncate(prec);
    let two_k = int(2).pow(k as i32);
    let denom = &two_k - int(1);
    Ok(match cusp {
        Cusp::Infinity => e2z.scale(&two_k).sub(&e)?.scale(&denom.recip()),
        Cusp::Zero => e.sub(&e2z)?.scale(&(two_k / denom)),
    })
}

/// The weight-2 form `2E₂(2z) - E₂(z)` on `Γ₀(2)`.
pub fn weight_two_form(prec: usize) -> QSeries {
    let e2 = eisenstein_level1(2, prec).expect("k = 2 is supported");
    e2.rescale(2).truncate(prec).scale(&int(2)).sub(&e2).expect("equal weights")
}

/// `η(z)^8 η(2z)^8`, the normalized cusp form of weight 8 on `Γ₀(2)`.
pub fn delta8(prec: usize) -> QSeries {
    eta_quotient(&[(1, 8), (2, 8)], prec).expect("integral exponent")
}

/// `T_m f` on level 2 up to `q^out_prec`, where `f` has weight `k`.
///
/// Needs `f.prec() >= m · out_prec`.
pub fn hecke_on_qseries(f: &QSeries, m: u64, out_prec: usize) -> Result<QSeries> {
    if m == 0 {
        return Err(Error::pre("Hecke index m must be positive"));
    }
    let required = m as usize * out_prec;
    if f.prec() < required {
        return Err(Error::PrecisionTooLow { required: required + 1, available: f.prec() + 1 });
    }
    let k = f.weight();
    let mut g = f.clone();
    for (p, r) in factorize(m) {
        g = if p == 2 {
            (0..r).fold(g, |acc, _| hecke_prime(&acc, 2, k))
        } else {
            hecke_prime_power(&g, p, r, k)?
        };
    }
    Ok(g.truncate(out_prec))
}

/// `T_p` on coefficients; `p = 2` acts as `a_n ↦ a_{2n}`.
fn hecke_prime(f: &QSeries, p: u64, k: i64) -> QSeries {
    let p_us = p as usize;
    let out = f.prec() / p_us;
    let pk = if p == 2 { BigRational::zero() } else { rat_pow(&int(p), k - 1) };
    let coeffs = (0..=out)
        .map(|n| {
            let mut a = f.coeffs[n * p_us].clone();
            if n % p_us == 0 && !pk.is_zero() {
                a += &pk * &f.coeffs[n / p_us];
            }
            a
        })
        .collect();
    QSeries::new(k, coeffs)
}

/// `T_{p^r}` for odd `p` via `T_{p^{s+1}} = T_p T_{p^s} - p^{k-1} T_{p^{s-1}}`.
fn hecke_prime_power(f: &QSeries, p: u64, r: u32, k: i64) -> Result<QSeries> {
    let pk = rat_pow(&int(p), k - 1);
    let mut prev = f.clone();
    let mut cur = hecke_prime(f, p, k);
    for _ in 1..r {
        let next = hecke_prime(&cur, p, k).sub(&prev.scale(&pk))?;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `Δ₈ · M₂^a · E₄^b` over `2a + 4b = k - 8`, ordered by increasing `b`.
pub fn cusp_basis_gamma02(k: u32, prec: usize) -> Result<Vec<QSeries>> {
    if k % 2 != 0 {
        return Err(Error::Unsupported(format!("odd weight {k}")));
    }
    if k < 8 {
        return Ok(Vec::new());
    }
    let d8 = delta8(prec);
    let m2 = weight_two_form(prec);
    let e4 = eisenstein_level1(4, prec)?;
    let rest = k - 8;
    let mut out = Vec::new();
    for b in 0..=rest / 4 {
        let a = (rest - 4 * b) / 2;
        let mut f = d8.clone();
        for _ in 0..a {
            f = f.mul(&m2);
        }
        for _ in 0..b {
            f = f.mul(&e4);
        }
        out.push(f);
    }
    Ok(out)
}

/// Coefficient matrix with one column per series, rows `a_0..=a_prec`.
fn coefficient_columns(series: &[QSeries], prec: usize) -> ExactMatrix {
    ExactMatrix::from_fn(prec + 1, series.len(), |n, j| series[j].coeffs[n].clone())
}

/// Default number of compared coefficients for weight `k`: `k/2 + 10`,
/// comfortably above the Sturm bound `k/4` of `Γ₀(2)`.
pub fn default_compare_prec(k: u32) -> usize {
    k as usize / 2 + 10
}

fn sturm_bound(k: u32) -> usize {
    k as usize / 4
}

/// Matrix of `T_m` on `S_k(Γ₀(2))` in the basis [`cusp_basis_gamma02`],
/// columns holding the coordinates of the images.
pub fn hecke_matrix_oracle(k: u32, m: u64) -> Result<ExactMatrix> {
    hecke_matrix_oracle_at(k, m, default_compare_prec(k))
}

/// As [`hecke_matrix_oracle`] comparing `q^0..=q^prec`.
pub fn hecke_matrix_oracle_at(k: u32, m: u64, prec: usize) -> Result<ExactMatrix> {
    if k < 4 || k % 2 != 0 {
        return Err(Error::pre(format!("weight must be even and at least 4, got {k}")));
    }
    let dim = dim_cusp(2, k - 2)?;
    if dim == 0 {
        return Err(Error::DimensionZero { level: 2, weight: k });
    }
    if prec <= sturm_bound(k) {
        return Err(Error::PrecisionTooLow { required: sturm_bound(k) + 2, available: prec + 1 });
    }
    if m == 0 {
        return Err(Error::pre("Hecke index m must be positive"));
    }
    let basis = cusp_basis_gamma02(k, m as usize * prec)?;
    let a = coefficient_columns(&basis.iter().map(|b| b.truncate(prec)).collect::<Vec<_>>(), prec);
    let rank = a.rank();
    if basis.len() != dim || rank != dim {
        return Err(Error::BasisDeficient { level: 2, w: k - 2, rank, dim });
    }
    let mut columns = Vec::with_capacity(dim);
    for b in &basis {
        let image = hecke_on_qseries(b, m, prec)?;
        let x = a.solve(image.coeffs()).map_err(|e| match e {
            Error::Inconsistent(_) => {
                Error::Inconsistent(format!("T_{m} image is not in the span of the weight-{k} basis"))
            }
            other => other,
        })?;
        columns.push(x);
    }
    Ok(ExactMatrix::from_fn(dim, dim, |i, j| columns[j][i].clone()))
}

/// Ranks of the two families of Eisenstein products of weight `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductBasisReport {
    pub weight: u32,
    pub dim: usize,
    /// `E^0_{2j+2} E^{i∞}_{k-2-2j}`, `j = 1..=dim`.
    pub rank_first: usize,
    /// `E^0_{k-2-2j} E^{i∞}_{2j+2}`, `j = 1..=dim`.
    pub rank_second: usize,
    /// Every product vanishes at `i∞` and lies in the span of the cusp basis.
    pub all_cusp: bool,
    pub passed: bool,
}

/// Checks that both families of products are bases of `S_k(Γ₀(2))`.
pub fn eisenstein_product_bases(k: u32, prec: usize) -> Result<ProductBasisReport> {
    if k < 8 || k % 2 != 0 {
        return Err(Error::pre(format!("weight must be even and at least 8, got {k}")));
    }
    if prec <= sturm_bound(k) {
        return Err(Error::PrecisionTooLow { required: sturm_bound(k) + 2, available: prec + 1 });
    }
    let dim = dim_cusp(2, k - 2)?;
    let product = |zero_wt: u32, inf_wt: u32| -> Result<QSeries> {
        Ok(eisenstein_gamma02(zero_wt, Cusp::Zero, prec)?.mul(&eisenstein_gamma02(inf_wt, Cusp::Infinity, prec)?))
    };
    let mut first = Vec::with_capacity(dim);
    let mut second = Vec::with_capacity(dim);
    for j in 1..=dim as u32 {
        first.push(product(2 * j + 2, k - 2 - 2 * j)?);
        second.push(product(k - 2 - 2 * j, 2 * j + 2)?);
    }
    let basis = coefficient_columns(&cusp_basis_gamma02(k, prec)?, prec);
    let in_span = |f: &QSeries| f.is_cusp_at_infinity() && basis.solve(f.coeffs()).is_ok();
    let all_cusp = first.iter().chain(&second).all(in_span);
    let rank_first = coefficient_columns(&first, prec).rank();
    let rank_second = coefficient_columns(&second, prec).rank();
    let passed = all_cusp && rank_first == dim && rank_second == dim;
    Ok(ProductBasisReport { weight: k, dim, rank_first, rank_second, all_cusp, passed })
}

/// A form named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSpec {
    /// `eta:1^8,2^8`
    Eta(Vec<(u64, i64)>),
    /// `Einf:k`
    EisensteinInfinity(u32),
    /// `E0:k`
    EisensteinZero(u32),
    /// `E:k`
    Eisenstein(u32),
}

impl FromStr for FormSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::pre(format!("cannot parse form {s:?}"));
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        let weight = || arg.trim().parse::<u32>().map_err(|_| bad());
        match kind.trim() {
            "eta" => {
                let mut parts = Vec::new();
                for piece in arg.split(',') {
                    let (d, r) = piece.trim().split_once('^').ok_or_else(bad)?;
                    parts.push((d.parse().map_err(|_| bad())?, r.parse().map_err(|_| bad())?));
                }
                Ok(FormSpec::Eta(parts))
            }
            "Einf" => Ok(FormSpec::EisensteinInfinity(weight()?)),
            "E0" => Ok(FormSpec::EisensteinZero(weight()?)),
            "E" => Ok(FormSpec::Eisenstein(weight()?)),
            _ => Err(bad()),
        }
    }
}

/// q-expansion of a named form up to `q^prec`.
pub fn qexp(form: &FormSpec, prec: usize) -> Result<QSeries> {
    match form {
        FormSpec::Eta(parts) => eta_quotient(parts, prec),
        FormSpec::EisensteinInfinity(k) => eisenstein_gamma02(*k, Cusp::Infinity, prec),
        FormSpec::EisensteinZero(k) => eisenstein_gamma02(*k, Cusp::Zero, prec),
        FormSpec::Eisenstein(k) => eisenstein_level1(*k, prec),
    }
}

/// `Σ_{d | (m, n), d odd} d^{k-1} a_{mn/d²}`, the closed form of `T_m` at level 2.
pub fn hecke_coefficient_direct(f: &QSeries, m: u64, n: u64) -> Option<ExactRational> {
    let k = f.weight();
    let mut acc = BigRational::zero();
    for d in crate::exactnum::divisors(num_integer::gcd(m, n).max(1)) {
        if d % 2 == 0 || m % d != 0 || n % d != 0 {
            continue;
        }
        let idx = (m * n / (d * d)) as usize;
        acc += rat_pow(&int(d), k - 1) * f.coeff(idx)?;
    }
    Some(acc)
}
