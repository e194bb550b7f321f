use super::clamp_prob;
use crate::akmu::FadingParams;
use crate::error::{ensure, Result};
use crate::prodratio::{ratio_cdf, PairStats};
use crate::specfun::EvalResult;

/// Legitimate link `sd`, eavesdropper link `se` and target secrecy rate in
/// bits per channel use.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecrecyScenario {
    pub sd: FadingParams,
    pub se: FadingParams,
    pub rate_rs: f64,
}

impl SecrecyScenario {
    pub fn new(sd: FadingParams, se: FadingParams, rate_rs: f64) -> Result<Self> {
        ensure(rate_rs.is_finite() && rate_rs >= 0.0, || {
            format!("rate_rs must be finite and >= 0, got {rate_rs}")
        })?;
        Ok(Self { sd, se, rate_rs })
    }

    /// `2^R_s`.
    pub fn gamma_th(&self) -> f64 {
        self.rate_rs.exp2()
    }

    pub fn pair(&self) -> PairStats {
        PairStats::new(self.sd, self.se)
    }
}

/// Secrecy outage with the high-SNR form of the capacity,
/// `P(γ_SD/γ_SE < 2^R_s)`.
pub fn secrecy_outage(sc: &SecrecyScenario) -> Result<EvalResult> {
    Ok(clamp_prob(ratio_cdf(&sc.pair(), sc.gamma_th())?))
}

/// Probability of strictly positive secrecy capacity, `1 − SOP(R_s = 0)`.
pub fn spsc(sc: &SecrecyScenario) -> Result<EvalResult> {
    let r = secrecy_outage(&SecrecyScenario { rate_rs: 0.0, ..*sc })?;
    Ok(EvalResult { value: 1.0 - r.value, ..r })
}
