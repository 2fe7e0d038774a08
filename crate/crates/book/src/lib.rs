//! The guide's chapters compiled as doc comments, so every snippet in
//! `book/src` runs under `cargo test`.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}
#[doc = include_str!("../../../book/src/period-polynomials.md")]
pub mod period_polynomials {}
#[doc = include_str!("../../../book/src/hecke-sums.md")]
pub mod hecke_sums {}
#[doc = include_str!("../../../book/src/hecke-matrices.md")]
pub mod hecke_matrices {}
#[doc = include_str!("../../../book/src/q-expansions.md")]
pub mod q_expansions {}
#[doc = include_str!("../../../book/src/hankel.md")]
pub mod hankel {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
