// NaN must fail parameter checks, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod elliptic;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod fourier;
pub mod linop;
pub mod waves;

pub use error::{Error, Result};
