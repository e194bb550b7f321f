use super::PairStats;
use crate::akmu::ln_w_moment;
use crate::error::{Error, Result};

/// Small-argument behaviour shared by both statistics:
/// `P(W₁ ≤ w) ≈ (θ₁/μ₁) w^μ₁` averaged over `W₂^(±ρμ₁)`.
fn leading(ps: &PairStats, ln_b: f64, s: f64) -> Result<f64> {
    let (p1, p2) = (ps.p1(), ps.p2());
    let d2 = p2.derived();
    let ln_m = ln_w_moment(p2.mu(), p2.m(), d2.beta, s)?;
    Ok((p1.derived().ln_theta - p1.mu().ln() + p1.mu() * ln_b + ln_m).exp())
}

/// `F_Y(y) ≈ (θ₁θ₂/μ₁) Γ(μ₂−ρμ₁) ₂F₁(m₂, μ₂−ρμ₁; μ₂; β₂) β₃^μ₁` as `y → 0`.
pub fn product_cdf_asymptotic(ps: &PairStats, y: f64) -> Result<f64> {
    let rho = ps.rho();
    let (mu1, mu2) = (ps.p1().mu(), ps.p2().mu());
    if mu2 - rho * mu1 <= 0.0 {
        return Err(Error::Parameter(format!(
            "product asymptote needs mu2 - (alpha1/alpha2) mu1 > 0, got {}; swap the link labels",
            mu2 - rho * mu1
        )));
    }
    if y.is_nan() || y < 0.0 {
        return Err(Error::Domain(format!("y must be >= 0, got {y}")));
    }
    if y == 0.0 {
        return Ok(0.0);
    }
    let ln_b3 = 0.5 * ps.p1().alpha() * (ps.ln_delta() + y.ln());
    leading(ps, ln_b3, -rho * mu1)
}

/// `F_Z(z) ≈ (θ₁θ₂/μ₁) Γ(μ₂+ρμ₁) ₂F₁(m₂, μ₂+ρμ₁; μ₂; β₂) β₅^μ₁` as `z → 0`.
pub fn ratio_cdf_asymptotic(ps: &PairStats, z: f64) -> Result<f64> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!("z must be >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(0.0);
    }
    let ln_b5 = 0.5 * ps.p1().alpha() * (ps.ln_zeta() + z.ln());
    leading(ps, ln_b5, ps.rho() * ps.p1().mu())
}
