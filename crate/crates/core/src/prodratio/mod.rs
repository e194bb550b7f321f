//! Statistics of `Y = X₁X₂` and `Z = X₁/X₂` for independent α-κ-μ shadowed
//! links.
//!
//! With `W_i = (X_i/γ̄_i)^(α_i/2)/c_i` and `ρ = α₁/α₂`,
//!
//! * `Y ≤ y  ⇔  W₁ ≤ β₃ W₂^(−ρ)` with `β₃ = (δy)^(α₁/2)`,
//! * `Z ≤ z  ⇔  W₁ ≤ β₅ W₂^(ρ)`  with `β₅ = (ζz)^(α₁/2)`,
//!   equivalently `W₂ < β₆ W₁^(1/ρ)` with `β₆ = (ζz)^(−α₂/2)`.
//!
//! Conditioning on one of the `W`s turns every density, CDF and MGF into a
//! one-dimensional Laplace-type integral; these are the production paths.
//! The Mellin–Barnes series in [`series`] serve as independent cross-checks.

mod asymptotic;
mod product;
mod ratio;
pub mod series;

pub use asymptotic::{product_cdf_asymptotic, ratio_cdf_asymptotic};
pub use product::{product_cdf, product_cdf_pair, product_mgf, product_moment, product_pdf};
pub use ratio::{
    ratio_cdf, ratio_cdf_pair, ratio_mgf, ratio_moment, ratio_pdf, ratio_pdf_branch, ratio_pdf_same_alpha, RatioBranch,
};
pub use series::{product_pdf_series, ratio_pdf_series};

use crate::akmu::FadingParams;
use crate::error::{ensure, Error, Result};
use crate::specfun::quadrature::{LogIntegral, Tolerance};
use crate::specfun::EvalResult;

/// Truncation and quadrature settings shared by the pair evaluators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Policy {
    /// Relative truncation tolerance of the double/triple series.
    pub tol: f64,
    /// Cap on each series index.
    pub max_uv: usize,
    /// Relative tolerance of the adaptive quadrature.
    pub quad_tol: f64,
}

impl Default for Policy {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_uv: 400,
            quad_tol: 1e-12,
        }
    }
}

/// Two independent links with the product/ratio scale constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairStats {
    p1: FadingParams,
    p2: FadingParams,
    ln_delta: f64,
    ln_zeta: f64,
    pub policy: Policy,
}

impl PairStats {
    pub fn new(p1: FadingParams, p2: FadingParams) -> Self {
        Self::with_policy(p1, p2, Policy::default())
    }

    pub fn with_policy(p1: FadingParams, p2: FadingParams, policy: Policy) -> Self {
        let (a1, a2) = (p1.alpha(), p2.alpha());
        let (lc1, lc2) = (p1.derived().ln_c, p2.derived().ln_c);
        let (lg1, lg2) = (p1.gamma_bar().ln(), p2.gamma_bar().ln());
        // δ = c₁^(−2/α₁) c₂^(−2/α₂) / (γ̄₁γ̄₂),  ζ = γ̄₂ c₁^(−2/α₁) c₂^(2/α₂) / γ̄₁
        let ln_delta = -2.0 / a1 * lc1 - 2.0 / a2 * lc2 - lg1 - lg2;
        let ln_zeta = lg2 - 2.0 / a1 * lc1 + 2.0 / a2 * lc2 - lg1;
        Self {
            p1,
            p2,
            ln_delta,
            ln_zeta,
            policy,
        }
    }

    pub fn validate_policy(&self) -> Result<()> {
        let p = &self.policy;
        ensure(p.tol > 0.0 && p.tol < 1.0, || format!("policy.tol must be in (0,1), got {}", p.tol))?;
        ensure(p.quad_tol > 0.0 && p.quad_tol < 1.0, || {
            format!("policy.quad_tol must be in (0,1), got {}", p.quad_tol)
        })?;
        ensure(p.max_uv >= 1, || "policy.max_uv must be >= 1".into())
    }

    pub fn p1(&self) -> &FadingParams {
        &self.p1
    }
    pub fn p2(&self) -> &FadingParams {
        &self.p2
    }
    pub fn delta(&self) -> f64 {
        self.ln_delta.exp()
    }
    pub fn zeta(&self) -> f64 {
        self.ln_zeta.exp()
    }
    pub fn ln_delta(&self) -> f64 {
        self.ln_delta
    }
    pub fn ln_zeta(&self) -> f64 {
        self.ln_zeta
    }
    /// `α₁/α₂`.
    pub fn rho(&self) -> f64 {
        self.p1.alpha() / self.p2.alpha()
    }

    /// The same pair with the links exchanged.
    pub fn swapped(&self) -> Self {
        Self::with_policy(self.p2, self.p1, self.policy)
    }

    pub(crate) fn tolerance(&self) -> Tolerance {
        Tolerance::rel(self.policy.quad_tol)
    }
}

/// `exp(ln_pref) · ∫` as an [`EvalResult`], or an accuracy error.
pub(crate) fn finish(what: &str, ln_pref: f64, r: &LogIntegral, rel_floor: f64) -> Result<EvalResult> {
    // Far beyond underflow the log-integrand is too large for its rounding
    // to leave a usable scaled integral, but the answer is zero regardless.
    if ln_pref + r.ln_scale < -1000.0 {
        return Ok(EvalResult::new(0.0, f64::MIN_POSITIVE, r.scaled.evals));
    }
    let value = (ln_pref + r.ln_scale).exp() * r.scaled.value;
    let err = (ln_pref + r.ln_scale).exp() * r.scaled.abs_err + value.abs() * rel_floor;
    if !r.scaled.converged || !value.is_finite() {
        return Err(Error::Accuracy {
            what: what.into(),
            partial: value,
            terms: r.scaled.evals,
        });
    }
    Ok(EvalResult::new(value, err, r.scaled.evals))
}

fn check_order(n: f64) -> Result<()> {
    ensure(n.is_finite() && n >= 0.0, || format!("moment order must be finite and >= 0, got {n}"))
}
