pub mod cli;
pub mod error;
pub mod hankel;
pub mod hooks;
pub mod numberfield;
pub mod quad;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
pub mod zeta;
