// `!(x > 0.0)` is used deliberately so that NaN is rejected
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bessel;
pub mod circle;
pub mod config;
pub mod error;
pub mod euclid2;
pub mod flat_moyal;
pub mod io;
pub mod quadrature;
pub mod swkernel;
pub mod verify;

pub use error::{Result, SwError};
