//! α-κ-μ shadowed fading: single-link statistics, products and ratios of two
//! independent links, their Gamma / Beta-prime approximations, and the
//! outage and secrecy metrics built on them.

pub mod akmu;
pub mod approx;
pub mod apps;
pub mod error;
pub mod mc;
pub mod prodratio;
pub mod specfun;

pub use error::{Error, Result};
