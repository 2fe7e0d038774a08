//! Matrices of Hecke operators on `S_{w+2}(Γ₀(N))` in the basis of the
//! period duals `R_{N,w,2i}`.
//!
//! With `S1[i][j] = ⟨S_{2i}, S_{2j}⟩` and `S2[i][j] = ⟨S_{2i}, r⁻(T_m R_{2j})⟩`
//! the matrix `T = S1⁻¹ S2` satisfies `r⁻(T_m R_{2j}) = Σ_k T[k][j] S_{2k}`,
//! i.e. column `j` holds the coordinates of the image of the `j`-th basis
//! element.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlinalg::ExactMatrix;
use crate::exactnum::{divisors, factorize, gcd, ExactRational};
use crate::heckesum::r_minus_hecke;
use crate::periodpoly::{r_plus_odd, s_poly, PeriodContext};
use crate::polyring::{coeff_inner_product, BoundedPoly};

/// Levels for which [`dim_cusp`] is available.
pub const SUPPORTED_LEVELS: [u64; 4] = [2, 3, 4, 5];

/// Dimension of `S_{w+2}(Γ₀(N))` for `N ∈ {2, 3, 4, 5}`.
///
/// Evaluated from the genus, elliptic point and cusp counts of `Γ₀(N)`.
pub fn dim_cusp(level: u64, w: u32) -> Result<usize> {
    if !SUPPORTED_LEVELS.contains(&level) {
        return Err(Error::Unsupported(format!("dimension of cusp forms is only available for N in 2..=5, got {level}")));
    }
    if w < 2 || w % 2 != 0 {
        return Err(Error::pre(format!("w must be even and at least 2, got {w}")));
    }
    let k = i64::from(w) + 2;
    let (index, e2, e3, cusps) = gamma0_invariants(level);
    let twelve_genus = 12 + index - 3 * e2 - 4 * e3 - 6 * cusps;
    debug_assert_eq!(twelve_genus % 12, 0);
    let genus = twelve_genus / 12;
    let dim = (k - 1) * (genus - 1) + (k / 4) * e2 + (k / 3) * e3 + (k / 2 - 1) * cusps;
    Ok(dim.max(0) as usize)
}

/// `(index, ε₂, ε₃, cusps)` of `Γ₀(N)`.
fn gamma0_invariants(level: u64) -> (i64, i64, i64, i64) {
    let mut index = 1i64;
    let mut e2 = 1i64;
    let mut e3 = 1i64;
    for (p, e) in factorize(level) {
        let p = p as i64;
        index *= p.pow(e) + p.pow(e - 1);
        e2 *= match (p, e) {
            (2, 1) => 1,
            (2, _) => 0,
            _ if p % 4 == 1 => 2,
            _ => 0,
        };
        e3 *= match (p, e) {
            (3, 1) => 1,
            (3, _) => 0,
            _ if p % 3 == 1 => 2,
            _ => 0,
        };
    }
    let cusps = divisors(level).into_iter().map(|d| euler_phi(gcd(d as i64, (level / d) as i64) as u64) as i64).sum();
    (index, e2, e3, cusps)
}

fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Which coefficient block of which period polynomials forms a basis matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisKind {
    /// `X^{w-2j+1}` in `r⁻(R_{2i})`.
    EvenLow,
    /// `X^{2j-1}` in `r⁻(R_{w-2i})`.
    EvenHigh,
    /// `X^{w-2j}` in `r⁺(R_{2i-1})`.
    OddLow,
    /// `X^{2j}` in `r⁺(R_{w-2i+1})`.
    OddHigh,
}

impl BasisKind {
    pub const ALL: [BasisKind; 4] = [BasisKind::EvenLow, BasisKind::EvenHigh, BasisKind::OddLow, BasisKind::OddHigh];

    pub fn name(self) -> &'static str {
        match self {
            BasisKind::EvenLow => "even_low",
            BasisKind::EvenHigh => "even_high",
            BasisKind::OddLow => "odd_low",
            BasisKind::OddHigh => "odd_high",
        }
    }
}

/// The `d_w × d_w` coefficient matrix at level 2 selected by `kind`
/// (rows `i`, columns `j`, both running over `1..=d_w`).
pub fn basis_matrix(w: u32, kind: BasisKind) -> Result<ExactMatrix> {
    let d = dim_cusp(2, w)?;
    let mut rows = Vec::with_capacity(d);
    for i in 1..=d as u32 {
        let (poly, pick): (BoundedPoly, Box<dyn Fn(u32) -> u32>) = match kind {
            BasisKind::EvenLow => (s_poly(&PeriodContext::new(2, w, 2 * i)?)?, Box::new(move |j| w - 2 * j + 1)),
            BasisKind::EvenHigh => (s_poly(&PeriodContext::new(2, w, w - 2 * i)?)?, Box::new(|j| 2 * j - 1)),
            BasisKind::OddLow => (r_plus_odd(&PeriodContext::new(2, w, 2 * i - 1)?)?, Box::new(move |j| w - 2 * j)),
            BasisKind::OddHigh => {
                (r_plus_odd(&PeriodContext::new(2, w, w - 2 * i + 1)?)?, Box::new(|j| 2 * j))
            }
        };
        rows.push((1..=d as u32).map(|j| poly.coeff(pick(j) as usize)).collect());
    }
    Ok(ExactMatrix::from_rows(rows))
}

/// One run of the pipeline for `T_m` on `S_{w+2}(Γ₀(N))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeckeComputation {
    pub level: u64,
    pub w: u32,
    pub m: u64,
    /// The even indices `2i`, `i = 1..=dim`.
    pub basis_indices: Vec<u32>,
    #[serde(rename = "S1")]
    pub s1: ExactMatrix,
    #[serde(rename = "S2")]
    pub s2: ExactMatrix,
    #[serde(rename = "T")]
    pub t: ExactMatrix,
}

impl HeckeComputation {
    pub fn charpoly(&self) -> Vec<ExactRational> {
        self.t.charpoly().expect("T is square")
    }
}

/// `T_m = S1⁻¹ S2`. For `N ≠ 2` the spanning property of the `R_{2i}` is
/// not known in general; a singular `S1` is reported as
/// [`Error::BasisDeficient`].
pub fn hecke_matrix(level: u64, w: u32, m: u64) -> Result<HeckeComputation> {
    if m == 0 {
        return Err(Error::pre("Hecke index m must be positive"));
    }
    let dim = dim_cusp(level, w)?;
    if dim == 0 {
        return Err(Error::DimensionZero { level, weight: w + 2 });
    }
    // Only the even indices 0 < 2i < w are available.
    let available = ((w / 2).saturating_sub(1) as usize).min(dim);
    let basis_indices: Vec<u32> = (1..=available as u32).map(|i| 2 * i).collect();
    let contexts = basis_indices
        .iter()
        .map(|&n| PeriodContext::new(level, w, n))
        .collect::<Result<Vec<_>>>()?;
    let basis = contexts.iter().map(s_poly).collect::<Result<Vec<_>>>()?;
    let gram = |left: &[BoundedPoly], right: &[BoundedPoly]| -> Result<ExactMatrix> {
        let mut rows = Vec::with_capacity(left.len());
        for f in left {
            rows.push(right.iter().map(|g| coeff_inner_product(f, g)).collect::<Result<Vec<_>>>()?);
        }
        Ok(ExactMatrix::from_rows(rows))
    };
    let s1 = gram(&basis, &basis)?;
    if available < dim {
        return Err(Error::BasisDeficient { level, w, rank: s1.rank(), dim });
    }
    let inv = s1.inverse().map_err(|e| match e {
        Error::SingularMatrix { rank, dim } => Error::BasisDeficient { level, w, rank, dim },
        other => other,
    })?;
    let images = contexts.iter().map(|c| r_minus_hecke(c, m)).collect::<Result<Vec<_>>>()?;
    let s2 = gram(&basis, &images)?;
    let t = inv.mul(&s2);
    // The images must lie in the span of the basis; a residual means the
    // period data and the basis disagree.
    for (j, image) in images.iter().enumerate() {
        let mut combo = BoundedPoly::zero(w as usize);
        for (k, s) in basis.iter().enumerate() {
            combo = &combo + &s.scale(t.get(k, j));
        }
        if &combo != image {
            return Err(Error::Inconsistent(format!(
                "image of R_{} under T_{m} is not in the span of the basis",
                basis_indices[j]
            )));
        }
    }
    Ok(HeckeComputation { level, w, m, basis_indices, s1, s2, t })
}

/// Characteristic polynomial of [`hecke_matrix`], ascending and monic.
pub fn hecke_charpoly(level: u64, w: u32, m: u64) -> Result<Vec<ExactRational>> {
    Ok(hecke_matrix(level, w, m)?.charpoly())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::poly_from_roots;
    use crate::exactnum::{int, rat};
    use crate::heckesum::eigenvalue_w6;

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_cusp(2, 10).unwrap(), 2);
        assert_eq!(dim_cusp(2, 4).unwrap(), 0);
        assert_eq!(dim_cusp(4, 8).unwrap(), 3);
        assert!(matches!(dim_cusp(7, 8), Err(Error::Unsupported(_))));
        assert!(dim_cusp(2, 5).is_err());
    }

    #[test]
    fn dimension_level_two_is_d_w() {
        for w in (2..=80u32).step_by(2) {
            assert_eq!(dim_cusp(2, w).unwrap(), ((w - 2) / 4) as usize, "w = {w}");
        }
    }

    #[test]
    fn dimension_spot_values() {
        // (level, weight k, dim S_k(Γ₀(N))) from standard tables
        let table = [
            (3, 4, 0), (3, 6, 1), (3, 8, 1), (3, 10, 2), (3, 12, 3),
            (4, 4, 0), (4, 6, 1), (4, 8, 2), (4, 10, 3), (4, 12, 4),
            (5, 4, 1), (5, 6, 1), (5, 8, 3), (5, 10, 3), (5, 12, 5),
        ];
        for (level, k, dim) in table {
            assert_eq!(dim_cusp(level, k - 2).unwrap(), dim, "N = {level}, k = {k}");
        }
    }

    #[test]
    fn basis_matrix_examples() {
        let m6 = basis_matrix(6, BasisKind::EvenLow).unwrap();
        assert_eq!(m6, ExactMatrix::from_rows(vec![vec![rat(-4, 15)]]));
        let m10 = basis_matrix(10, BasisKind::EvenLow).unwrap();
        let want = ExactMatrix::from_rows(vec![
            vec![rat(-64, 15), rat(64, 9)],
            vec![rat(16, 21), rat(-4, 3)],
        ]);
        assert_eq!(m10, want);
        assert_eq!(m10.determinant().unwrap(), rat(256, 945));
        assert_eq!(basis_matrix(4, BasisKind::OddHigh).unwrap().rows(), 0);
    }

    #[test]
    fn level_two_weight_twelve() {
        let h = hecke_matrix(2, 10, 2).unwrap();
        assert_eq!(h.t, ExactMatrix::from_rows_i64(&[vec![-208, 36], vec![-1120, 184]]));
        assert_eq!(h.charpoly(), vec![int(2048), int(24), int(1)]);
        assert_eq!(h.basis_indices, vec![2, 4]);
        assert!(h.s1.is_symmetric());
    }

    #[test]
    fn weight_eight_is_the_eigenvalue() {
        for m in (1..=15u64).step_by(2) {
            let h = hecke_matrix(2, 6, m).unwrap();
            assert_eq!(h.t, ExactMatrix::from_rows(vec![vec![int(eigenvalue_w6(m).unwrap())]]));
        }
    }

    #[test]
    fn t1_is_identity() {
        for (level, w) in [(2, 10), (2, 18), (3, 10), (4, 8), (5, 8)] {
            let h = hecke_matrix(level, w, 1).unwrap();
            let d = h.t.rows();
            assert_eq!(h.t, ExactMatrix::identity(d));
            assert_eq!(h.charpoly(), poly_from_roots(&vec![int(1); d]));
        }
    }

    #[test]
    fn columns_are_images_in_the_basis() {
        let (level, w, m) = (4, 8, 3);
        let h = hecke_matrix(level, w, m).unwrap();
        for (j, &nj) in h.basis_indices.iter().enumerate() {
            let image = r_minus_hecke(&PeriodContext::new(level, w, nj).unwrap(), m).unwrap();
            let mut combo = BoundedPoly::zero(w as usize);
            for (k, &nk) in h.basis_indices.iter().enumerate() {
                let s = s_poly(&PeriodContext::new(level, w, nk).unwrap()).unwrap();
                combo = &combo + &s.scale(h.t.get(k, j));
            }
            assert_eq!(combo, image, "column {j}");
        }
        let want = poly_from_roots(&[int(228), int(-156), int(-156)]);
        assert_eq!(h.charpoly(), want);
    }

    #[test]
    fn dimension_zero_is_reported() {
        assert_eq!(hecke_matrix(2, 4, 2), Err(Error::DimensionZero { level: 2, weight: 6 }));
        assert!(hecke_matrix(2, 10, 0).is_err());
        // dim S_8(Γ₀(5)) = 3 but only R_2, R_4 exist for w = 6
        assert_eq!(hecke_matrix(5, 6, 2), Err(Error::BasisDeficient { level: 5, w: 6, rank: 2, dim: 3 }));
    }

    #[test]
    fn hecke_relation_at_odd_prime_squares() {
        for w in (6..=14u32).step_by(2) {
            let tp = hecke_matrix(2, w, 3).unwrap().t;
            let tp2 = hecke_matrix(2, w, 9).unwrap().t;
            let d = tp.rows();
            let p_pow = int(3).pow(w as i32 + 1);
            let rhs = tp.mul(&tp).sub(&ExactMatrix::identity(d).scale(&p_pow));
            assert_eq!(tp2, rhs, "w = {w}");
        }
    }
}
