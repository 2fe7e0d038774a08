//! Exact computation of period polynomials and Hecke operators on
//! `S_{w+2}(Γ₀(N))`, together with an independent q-expansion oracle.
//!
//! ```
//! use hecke_periods::heckeop::hecke_matrix;
//! use hecke_periods::exactlinalg::ExactMatrix;
//!
//! let h = hecke_matrix(2, 10, 2).unwrap();
//! assert_eq!(h.t, ExactMatrix::from_rows_i64(&[vec![-208, 36], vec![-1120, 184]]));
//! ```

pub mod error;
pub mod exactlinalg;
pub mod exactnum;
pub mod format;
pub mod heckeop;
pub mod heckesum;
pub mod periodpoly;
pub mod polyring;
pub mod qoracle;

pub use error::{Error, Result};
pub use exactlinalg::ExactMatrix;
pub use exactnum::ExactRational;
pub use periodpoly::{PeriodContext, Sign};
pub use polyring::BoundedPoly;
