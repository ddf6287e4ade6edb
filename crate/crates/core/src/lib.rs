// `!(x > 0.0)` guards reject NaN along with the out-of-range values
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod coherent;
pub mod config;
pub mod error;
pub mod geometry;
pub mod model;
pub mod ode_oracle;
pub mod output;
pub mod radial;
pub mod report;
pub mod specfun;
pub mod spectrum;
pub mod su11;
pub mod tolerances;
pub mod tridiag;
pub mod verify;

pub use error::{Error, Result};
