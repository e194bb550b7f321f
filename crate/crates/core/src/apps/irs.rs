use super::{clamp_prob, db_to_linear};
use crate::akmu::{moment, w_ln_cdf_pair, FadingParams, NbWeights};
use crate::error::{ensure, Error, Result};
use crate::prodratio::finish;
use crate::specfun::gamma::ln_gamma;
use crate::specfun::quadrature::{integrate_exp_sub, Tolerance};
use crate::specfun::EvalResult;

/// Gamma shapes above this are handed to the Gaussian path.
pub const K_SWITCH: f64 = 100.0;

/// A point in the plane, meters.
pub type Point = [f64; 2];

/// Source, reflecting surface with `n_elements` elements, and destination.
/// Link means follow `γ̄_AB = d_AB^(−β)`; the shape parameters come from the
/// caller.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsScenario {
    pub sd: FadingParams,
    pub sr: FadingParams,
    pub rd: FadingParams,
    pub n_elements: usize,
    pub gamma_s_db: f64,
    pub positions: [Point; 3],
    pub pathloss_beta: f64,
    gamma_s: f64,
}

fn dist(a: Point, b: Point) -> f64 {
    (a[0] - b[0]).hypot(a[1] - b[1])
}

impl IrsScenario {
    /// `positions` are `[source, surface, destination]`. The `γ̄` of each
    /// supplied link is replaced by its path-loss value.
    pub fn new(
        sd: FadingParams,
        sr: FadingParams,
        rd: FadingParams,
        n_elements: usize,
        gamma_s_db: f64,
        positions: [Point; 3],
        pathloss_beta: f64,
    ) -> Result<Self> {
        ensure(n_elements >= 1, || "n_elements must be >= 1".into())?;
        ensure(gamma_s_db.is_finite(), || format!("gamma_s_db must be finite, got {gamma_s_db}"))?;
        ensure(pathloss_beta.is_finite() && pathloss_beta > 0.0, || {
            format!("pathloss_beta must be finite and > 0, got {pathloss_beta}")
        })?;
        ensure(positions.iter().flatten().all(|c| c.is_finite()), || "positions must be finite".into())?;
        let [s, r, d] = positions;
        let mean = |a: Point, b: Point, what: &str| -> Result<f64> {
            let l = dist(a, b);
            ensure(l > 0.0, || format!("{what} nodes coincide"))?;
            Ok(l.powf(-pathloss_beta))
        };
        Ok(Self {
            sd: sd.with_gamma_bar(mean(s, d, "source and destination")?)?,
            sr: sr.with_gamma_bar(mean(s, r, "source and surface")?)?,
            rd: rd.with_gamma_bar(mean(r, d, "surface and destination")?)?,
            n_elements,
            gamma_s_db,
            positions,
            pathloss_beta,
            gamma_s: db_to_linear(gamma_s_db),
        })
    }

    /// Linear transmit SNR `γ_s`.
    pub fn gamma_s(&self) -> f64 {
        self.gamma_s
    }

    pub fn with_n_elements(&self, n: usize) -> Result<Self> {
        ensure(n >= 1, || "n_elements must be >= 1".into())?;
        Ok(Self { n_elements: n, ..*self })
    }

    /// Envelope threshold `√(γ_th/γ_s)` on `g_SD + Σ g_SR g_RD`.
    pub fn envelope_threshold(&self, gamma_th: f64) -> f64 {
        (gamma_th / self.gamma_s).sqrt()
    }
}

/// Moment-matched Gamma law for the reflected sum `u = Σ g_SR,i g_RD,i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IrsMoments {
    pub k_mom: f64,
    pub theta_mom: f64,
    /// `E[g_SR g_RD]` for a single element.
    pub mu_half: f64,
    /// `Var[g_SR g_RD]` for a single element.
    pub sigma2: f64,
}

pub fn irs_gamma_params(sc: &IrsScenario) -> Result<IrsMoments> {
    let mu_half = moment(&sc.sr, 0.5)? * moment(&sc.rd, 0.5)?;
    let sigma2 = sc.sr.gamma_bar() * sc.rd.gamma_bar() - mu_half * mu_half;
    if !(sigma2 > 0.0) {
        return Err(Error::Numerical(format!("single-element variance {sigma2} is not positive")));
    }
    let n = sc.n_elements as f64;
    Ok(IrsMoments {
        k_mom: n * mu_half * mu_half / sigma2,
        theta_mom: sigma2 / mu_half,
        mu_half,
        sigma2,
    })
}

/// `ln P(g_SD ≤ x)` for the direct-link envelope.
fn ln_envelope_cdf(p: &FadingParams, nb: &NbWeights, x: f64) -> f64 {
    if !(x > 0.0) {
        return f64::NEG_INFINITY;
    }
    w_ln_cdf_pair(p.mu(), nb, p.to_w(x * x)).0
}

fn check_threshold(gamma_th: f64, what: &str) -> Result<()> {
    if gamma_th > 0.0 && gamma_th.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs finite gamma_th > 0, got {gamma_th}")))
    }
}

fn tol() -> Tolerance {
    Tolerance::rel(1e-10)
}

/// Outage with `u ~ Gamma(k_mom, θ_mom)`:
/// `∫₀^(r/θ) t^(k−1) e^(−t)/Γ(k) · F_gSD(r − tθ) dt`, `r = √(γ_th/γ_s)`.
pub fn irs_outage_gamma(sc: &IrsScenario, gamma_th: f64) -> Result<EvalResult> {
    check_threshold(gamma_th, "irs_outage_gamma")?;
    let mm = irs_gamma_params(sc)?;
    if mm.k_mom > K_SWITCH {
        return Err(Error::Degenerate(format!(
            "irs_outage_gamma: shape k_mom = {:.3} exceeds {K_SWITCH}; use irs_outage_gaussian",
            mm.k_mom
        )));
    }
    let r = sc.envelope_threshold(gamma_th);
    let (k, th) = (mm.k_mom, mm.theta_mom);
    let nb = NbWeights::new(sc.sd.m(), sc.sd.derived().beta);
    let ln_f = |t: f64| (k - 1.0) * t.ln() - t + ln_envelope_cdf(&sc.sd, &nb, r - t * th);
    let res = integrate_exp_sub(&ln_f, 0.0, r / th, tol());
    Ok(clamp_prob(finish("irs_outage_gamma quadrature", -ln_gamma(k), &res, 1e-12)?))
}

/// Outage with `u ~ N(Nμ, Nσ²)`. With `s = √(2Nσ²)` and `t₀ = (Nμ − r)/s`,
/// `P = π^(−1/2) ∫₀^∞ e^(−(t₀+v)²) F_gSD(s v) dv`; the SD factor vanishes
/// where the envelope argument would be negative.
pub fn irs_outage_gaussian(sc: &IrsScenario, gamma_th: f64) -> Result<EvalResult> {
    check_threshold(gamma_th, "irs_outage_gaussian")?;
    let mm = irs_gamma_params(sc)?;
    let n = sc.n_elements as f64;
    let r = sc.envelope_threshold(gamma_th);
    let s = (2.0 * n * mm.sigma2).sqrt();
    let t0 = (n * mm.mu_half - r) / s;
    let nb = NbWeights::new(sc.sd.m(), sc.sd.derived().beta);
    let ln_f = |v: f64| -(t0 + v) * (t0 + v) + ln_envelope_cdf(&sc.sd, &nb, s * v);
    let res = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, tol());
    Ok(clamp_prob(finish(
        "irs_outage_gaussian quadrature",
        -0.5 * std::f64::consts::PI.ln(),
        &res,
        1e-12,
    )?))
}

/// Gamma path while `k_mom ≤ K_SWITCH`, Gaussian path beyond.
pub fn irs_outage(sc: &IrsScenario, gamma_th: f64) -> Result<EvalResult> {
    if irs_gamma_params(sc)?.k_mom > K_SWITCH {
        irs_outage_gaussian(sc, gamma_th)
    } else {
        irs_outage_gamma(sc, gamma_th)
    }
}
