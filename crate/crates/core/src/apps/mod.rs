//! Cascaded-channel outage and fading, physical-layer secrecy, and outage of
//! an IRS-assisted link.
//!
//! Decibel inputs are converted once when a scenario is built; everything
//! below works on linear quantities.

mod cascade;
mod irs;
mod secrecy;

pub use cascade::{amount_of_fading, cascade_outage};
pub use irs::{
    irs_gamma_params, irs_outage, irs_outage_gamma, irs_outage_gaussian, IrsMoments, IrsScenario, Point,
    K_SWITCH,
};
pub use secrecy::{secrecy_outage, spsc, SecrecyScenario};

/// `10^(db/10)`.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// `10 log10(x)`.
pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

fn clamp_prob(r: crate::specfun::EvalResult) -> crate::specfun::EvalResult {
    crate::specfun::EvalResult {
        value: r.value.clamp(0.0, 1.0),
        ..r
    }
}
