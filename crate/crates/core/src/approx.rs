//! Moment-matched closed-form surrogates: a Gamma law for the product and a
//! Beta-prime law for the ratio.
//!
//! The Beta-prime surrogate matches each link's first two moments with a
//! Gamma law and takes the ratio of those, so it does not match the moments
//! of `Z` itself (which may not exist).

use crate::akmu::{moment, FadingParams};
use crate::error::{Error, Result};
use crate::prodratio::{product_moment, PairStats};
use crate::specfun::gamma::{gamma_lr, ln_gamma};
use statrs::function::beta::{beta_reg, ln_beta};

/// Gamma law with shape `k` and scale `theta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaFit {
    pub k: f64,
    pub theta: f64,
}

/// Ratio of two independent Gamma laws `Gamma(k1, theta1) / Gamma(k2, theta2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaPrimeFit {
    pub k1: f64,
    pub k2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

fn from_cv2(cv2: f64, mean: f64, what: &str) -> Result<GammaFit> {
    if !(cv2 > 0.0) || !cv2.is_finite() {
        return Err(Error::Numerical(format!("{what}: squared coefficient of variation {cv2} is not positive")));
    }
    Ok(GammaFit {
        k: 1.0 / cv2,
        theta: mean * cv2,
    })
}

/// `C_pro = E[Y²]/(γ̄₁γ̄₂)² − 1`, `k_Y = 1/C_pro`, `θ_Y = γ̄₁γ̄₂ C_pro`.
pub fn fit_gamma_product(ps: &PairStats) -> Result<GammaFit> {
    let mean = ps.p1().gamma_bar() * ps.p2().gamma_bar();
    let c_pro = product_moment(ps, 2.0)? / (mean * mean) - 1.0;
    from_cv2(c_pro, mean, "fit_gamma_product")
}

/// Gamma fit of a single link's power: `C = E[X²]/γ̄² − 1`.
pub fn fit_gamma_link(p: &FadingParams) -> Result<GammaFit> {
    let g = p.gamma_bar();
    from_cv2(moment(p, 2.0)? / (g * g) - 1.0, g, "fit_gamma_link")
}

/// Per-link Gamma fits (`C_ratio` for link 1, `D_ratio` for link 2).
pub fn fit_beta_prime_ratio(ps: &PairStats) -> Result<BetaPrimeFit> {
    let a = fit_gamma_link(ps.p1())?;
    let b = fit_gamma_link(ps.p2())?;
    Ok(BetaPrimeFit {
        k1: a.k,
        k2: b.k,
        theta1: a.theta,
        theta2: b.theta,
    })
}

impl BetaPrimeFit {
    /// `C_ratio = 1/k1`.
    pub fn c_ratio(&self) -> f64 {
        1.0 / self.k1
    }
    /// `D_ratio = 1/k2`.
    pub fn d_ratio(&self) -> f64 {
        1.0 / self.k2
    }
}

pub fn gamma_pdf(fit: &GammaFit, y: f64) -> f64 {
    if !(y > 0.0) {
        return 0.0;
    }
    let t = y / fit.theta;
    ((fit.k - 1.0) * t.ln() - t - ln_gamma(fit.k) - fit.theta.ln()).exp()
}

pub fn gamma_cdf(fit: &GammaFit, y: f64) -> f64 {
    if !(y > 0.0) {
        return 0.0;
    }
    gamma_lr(fit.k, y / fit.theta)
}

/// `(θ₂/θ₁)(θ₂z/θ₁)^(k₁−1) / (B(k₁,k₂) (1 + θ₂z/θ₁)^(k₁+k₂))`.
pub fn beta_prime_pdf(fit: &BetaPrimeFit, z: f64) -> f64 {
    if !(z > 0.0) {
        return 0.0;
    }
    let lr = fit.theta2.ln() - fit.theta1.ln();
    let lx = lr + z.ln();
    let l1p = if lx < 0.0 { lx.exp().ln_1p() } else { lx + (-lx).exp().ln_1p() };
    (lr + (fit.k1 - 1.0) * lx - ln_beta(fit.k1, fit.k2) - (fit.k1 + fit.k2) * l1p).exp()
}

/// `I_{x/(1+x)}(k₁, k₂)` with `x = θ₂z/θ₁`.
pub fn beta_prime_cdf(fit: &BetaPrimeFit, z: f64) -> f64 {
    if !(z > 0.0) {
        return 0.0;
    }
    if z.is_infinite() {
        return 1.0;
    }
    let x = fit.theta2 * z / fit.theta1;
    if x <= 1.0 {
        beta_reg(fit.k1, fit.k2, x / (1.0 + x))
    } else {
        1.0 - beta_reg(fit.k2, fit.k1, 1.0 / (1.0 + x))
    }
}
