//! Multivariate Laguerre polynomials, the hypergeometric functions around
//! them, and numerical checks of their generating-function identities.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cpoint;
pub mod error;
pub mod gamma;
pub mod hypergeometric;
pub mod identities;
pub mod laguerre;
pub mod multi_index;
pub mod quadrature;
pub mod series;
pub mod sum;
pub mod verify;

pub use cpoint::CPoint;
pub use error::{Error, Result};
pub use multi_index::MultiIndex;
pub use num_complex::Complex64;
pub use series::SeriesControl;
