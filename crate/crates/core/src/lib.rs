#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod levy_walk;
pub mod oracles;
pub mod quad;
pub mod runner;
pub mod smc_parabolic;
pub mod smc_poisson;
pub mod specfun;
pub mod spectral_basis;

pub use error::{Error, Result};
