use super::clamp_prob;
use crate::error::{Error, Result};
use crate::prodratio::{product_cdf, product_moment, PairStats};
use crate::specfun::EvalResult;

/// Outage probability of the two-hop cascaded link, `P(X₁X₂ < γ_th)`.
pub fn cascade_outage(ps: &PairStats, gamma_th: f64) -> Result<EvalResult> {
    if !(gamma_th > 0.0) {
        return Err(Error::Domain(format!("cascade_outage needs gamma_th > 0, got {gamma_th}")));
    }
    Ok(clamp_prob(product_cdf(ps, gamma_th)?))
}

/// `Var[Y]/E[Y]² = E[Y²]/E[Y]² − 1`.
pub fn amount_of_fading(ps: &PairStats) -> Result<f64> {
    let m1 = product_moment(ps, 1.0)?;
    Ok(product_moment(ps, 2.0)? / (m1 * m1) - 1.0)
}
