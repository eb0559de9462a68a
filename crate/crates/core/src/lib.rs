//! Axisymmetric shallow water around a heaving floating cylinder.

// `!(x > 0.0)` is used on purpose so NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod coupling;
pub mod energy;
pub mod error;
pub mod fluid;
pub mod hyperbolic;
pub mod model;
pub mod output;
pub mod params;
pub mod quadrature;
pub mod run;
pub mod solid;

pub use error::{Error, Result};
pub use model::Model;
