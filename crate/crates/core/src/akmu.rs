//! The α-κ-μ shadowed power variable.
//!
//! Internally everything is expressed through the normalized variable
//! `W = (X/γ̄)^(α/2) / c`, whose density is
//! `g(w) = θ w^(μ−1) e^(−w) ₁F₁(m; μ; βw)`.
//! Expanding the ₁F₁ shows `g` is a negative-binomial mixture of unit-scale
//! Gamma densities: `K ~ NB(m, β)` with `P(K = k) = (m)_k β^k (1−β)^m / k!`,
//! and `W | K ~ Gamma(μ + K, 1)`. The CDF and the sampler both use this form.

use crate::error::{ensure, Error, Result};
use crate::specfun::bivariate::ln_humbert_phi2_pos;
use crate::specfun::gamma::{gamma_lr, ln_gamma, ln_gamma_lr, ln_gamma_ur};
use crate::specfun::hypergeometric::{hyp2f1, ln_kummer_1f1_pos};
use crate::specfun::EvalResult;
use rand::Rng;
use rand_distr::{Distribution, Gamma, Poisson};

/// θ, β and the normalization constant c of one link.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DerivedConstants {
    pub theta: f64,
    pub beta: f64,
    pub c: f64,
    pub ln_theta: f64,
    pub ln_c: f64,
}

/// Validated (α, κ, μ, m, γ̄) with its derived constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingParams {
    alpha: f64,
    kappa: f64,
    mu: f64,
    m: f64,
    gamma_bar: f64,
    derived: DerivedConstants,
}

impl FadingParams {
    pub fn new(alpha: f64, kappa: f64, mu: f64, m: f64, gamma_bar: f64) -> Result<Self> {
        let named = [("alpha", alpha), ("kappa", kappa), ("mu", mu), ("m", m), ("gamma_bar", gamma_bar)];
        for (name, v) in named {
            ensure(v.is_finite(), || format!("{name} must be finite, got {v}"))?;
        }
        ensure(alpha > 0.0, || format!("alpha must be > 0, got {alpha}"))?;
        ensure(kappa >= 0.0, || format!("kappa must be >= 0, got {kappa}"))?;
        ensure(mu > 0.0, || format!("mu must be > 0, got {mu}"))?;
        ensure(m > 0.0, || format!("m must be > 0, got {m}"))?;
        ensure(gamma_bar > 0.0, || format!("gamma_bar must be > 0, got {gamma_bar}"))?;
        let mut p = Self {
            alpha,
            kappa,
            mu,
            m,
            gamma_bar,
            derived: DerivedConstants {
                theta: f64::NAN,
                beta: f64::NAN,
                c: f64::NAN,
                ln_theta: f64::NAN,
                ln_c: f64::NAN,
            },
        };
        p.derived = derive_constants(&p)?;
        Ok(p)
    }

    /// Same shape, different mean power. θ, β and c do not depend on γ̄.
    pub fn with_gamma_bar(&self, gamma_bar: f64) -> Result<Self> {
        ensure(gamma_bar > 0.0 && gamma_bar.is_finite(), || {
            format!("gamma_bar must be > 0, got {gamma_bar}")
        })?;
        Ok(Self { gamma_bar, ..*self })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
    pub fn kappa(&self) -> f64 {
        self.kappa
    }
    pub fn mu(&self) -> f64 {
        self.mu
    }
    pub fn m(&self) -> f64 {
        self.m
    }
    pub fn gamma_bar(&self) -> f64 {
        self.gamma_bar
    }
    pub fn derived(&self) -> &DerivedConstants {
        &self.derived
    }

    /// `W = (x/γ̄)^(α/2) / c`.
    pub fn to_w(&self, x: f64) -> f64 {
        ((0.5 * self.alpha) * (x / self.gamma_bar).ln() - self.derived.ln_c).exp()
    }

    /// Inverse of [`Self::to_w`].
    pub fn from_w(&self, w: f64) -> f64 {
        self.gamma_bar * ((2.0 / self.alpha) * (self.derived.ln_c + w.ln())).exp()
    }
}

/// `ln E[W^s]` for `s > −μ`, written through Euler's transformation so that
/// the remaining ₂F₁ converges at z = 1 and stays O(1):
/// `E[W^s] = Γ(μ+s)/Γ(μ) (1−β)^(−s) ₂F₁(μ−m, −s; μ; β)`.
pub(crate) fn ln_w_moment(mu: f64, m: f64, beta: f64, s: f64) -> Result<f64> {
    if mu + s <= 0.0 {
        return Err(Error::Domain(format!("moment of order {s} needs mu + s > 0 (mu = {mu})")));
    }
    let base = ln_gamma(mu + s) - ln_gamma(mu) - s * (-beta).ln_1p();
    if beta == 0.0 || s == 0.0 {
        return Ok(base);
    }
    let f = hyp2f1(mu - m, -s, mu, beta)?;
    if f.value <= 0.0 {
        return Err(Error::Numerical(format!("non-positive hypergeometric factor {}", f.value)));
    }
    Ok(base + f.value.ln())
}

/// θ = m^m/(Γ(μ)(μκ+m)^m), β = μκ/(μκ+m), and c from the unit-mean condition.
pub fn derive_constants(p: &FadingParams) -> Result<DerivedConstants> {
    let (mu, m, kappa, alpha) = (p.mu, p.m, p.kappa, p.alpha);
    let mk = mu * kappa;
    let beta = if kappa == 0.0 { 0.0 } else { mk / (mk + m) };
    ensure((0.0..1.0).contains(&beta), || format!("beta = {beta} outside [0, 1)"))?;
    // m ln(m/(μκ+m)) = −m ln(1 + μκ/m)
    let ln_theta = -m * (mk / m).ln_1p() - ln_gamma(mu);
    // E[X] = γ̄ c^(2/α) E[W^(2/α)] = γ̄  ⇒  ln c = −(α/2) ln E[W^(2/α)]
    let ln_c = -(0.5 * alpha) * ln_w_moment(mu, m, beta, 2.0 / alpha)?;
    let d = DerivedConstants {
        theta: ln_theta.exp(),
        beta,
        c: ln_c.exp(),
        ln_theta,
        ln_c,
    };
    if !(d.ln_theta.is_finite() && d.ln_c.is_finite()) {
        return Err(Error::Parameter(format!("derived constants not finite: {d:?}")));
    }
    Ok(d)
}

/// ln of the density of W at `w > 0`.
pub(crate) fn ln_w_pdf(p: &FadingParams, w: f64) -> f64 {
    let d = &p.derived;
    let hyp = if d.beta == 0.0 { 0.0 } else { ln_kummer_1f1_pos(p.m, p.mu, d.beta * w) };
    d.ln_theta + (p.mu - 1.0) * w.ln() - w + hyp
}

/// Density of the power variable at `x ≥ 0`.
pub fn pdf_power(p: &FadingParams, x: f64) -> f64 {
    if x < 0.0 || x.is_nan() {
        return 0.0;
    }
    if x == 0.0 {
        let e = 0.5 * p.alpha * p.mu;
        return if e > 1.0 {
            0.0
        } else if e == 1.0 {
            p.derived.theta * 0.5 * p.alpha / (p.gamma_bar * p.derived.c.powf(p.mu))
        } else {
            f64::INFINITY
        };
    }
    if x.is_infinite() {
        return 0.0;
    }
    ln_pdf_power(p, x).exp()
}

/// `ln f_X(x)` for `x > 0`.
pub fn ln_pdf_power(p: &FadingParams, x: f64) -> f64 {
    let w = p.to_w(x);
    // f_X(x) = g(w) dw/dx with dw/dx = (α/2) w / x
    ln_w_pdf(p, w) + (0.5 * p.alpha).ln() + w.ln() - x.ln()
}

/// Negative-binomial mixing weights with prefix sums.
#[derive(Debug, Clone)]
pub(crate) struct NbWeights {
    m: f64,
    beta: f64,
    pmf: Vec<f64>,
    cdf: Vec<f64>,
}

impl NbWeights {
    pub(crate) fn new(m: f64, beta: f64) -> Self {
        if beta == 0.0 {
            return Self {
                m,
                beta,
                pmf: vec![1.0],
                cdf: vec![1.0],
            };
        }
        let mut pmf = Vec::new();
        let mut pk = (m * (-beta).ln_1p()).exp();
        let mut peak = 0.0f64;
        let mut k = 0usize;
        loop {
            pmf.push(pk);
            peak = peak.max(pk);
            let kf = k as f64;
            let r = (m + kf) * beta / (kf + 1.0);
            if r < 1.0 && pk < 1e-18 * peak && kf > m {
                break;
            }
            pk *= r;
            k += 1;
            if k > 2_000_000 {
                break;
            }
        }
        let n = pmf.len();
        let mut cdf = vec![0.0; n];
        let mut acc = 0.0;
        for i in 0..n {
            acc += pmf[i];
            cdf[i] = acc;
        }
        Self { m, beta, pmf, cdf }
    }

    pub(crate) fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    fn cdf(&self, n: usize) -> f64 {
        self.cdf.get(n).copied().unwrap_or(1.0).min(1.0)
    }

    /// `ln P(K = n)` for any `n`, beyond the stored table too.
    fn ln_pmf(&self, n: f64) -> f64 {
        let m = self.m;
        m * (-self.beta).ln_1p() + ln_gamma(m + n) - ln_gamma(m) - ln_gamma(n + 1.0) + n * self.beta.ln()
    }

    /// Rough `ln P(K > n)` from the next term and a geometric tail.
    fn ln_surv_guess(&self, n: f64) -> f64 {
        let r = (self.m + n + 1.0) * self.beta / (n + 2.0);
        (self.ln_pmf(n + 1.0) - (1.0 - r).max(1e-3).ln()).min(0.0)
    }

    /// `ln P(K > n)` by direct summation of the tail.
    fn ln_surv_exact(&self, n: f64) -> f64 {
        let mut acc = f64::NEG_INFINITY;
        let mut j = n + 1.0;
        loop {
            let l = self.ln_pmf(j);
            acc = log_add(acc, l);
            let r = (self.m + j) * self.beta / (j + 1.0);
            if r < 1.0 && l < acc - 40.0 {
                return log_add(acc, l + (r / (1.0 - r)).ln());
            }
            j += 1.0;
        }
    }
}

fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a > b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// `ln Σ_n T_n P(K > n)` with `T_n = e^(−w) w^(μ+n)/Γ(μ+n+1)`.
///
/// The summand peaks near `n ≈ βw`, so only a window around it is visited;
/// `P(K > n)` is carried downwards through `S_(n−1) = S_n + p_n`.
fn ln_upper_mixture(mu: f64, nb: &NbWeights, w: f64) -> f64 {
    let (m, beta) = (nb.m, nb.beta);
    let lw = w.ln();
    if w > 10.0 && (1.0 - beta) * w - (m + mu + 1.0) * lw > 900.0 {
        return f64::NEG_INFINITY;
    }
    let ln_t = |n: f64| -w + (mu + n) * lw - ln_gamma(mu + n + 1.0);
    let n0 = (beta * w).floor();
    let mut peak = f64::NEG_INFINITY;
    let mut hi = n0;
    loop {
        let g = ln_t(hi) + nb.ln_surv_guess(hi);
        peak = peak.max(g);
        if g < peak - 60.0 && hi > n0 + 2.0 {
            break;
        }
        hi += 1.0;
    }
    let mut ln_s = nb.ln_surv_exact(hi);
    let mut acc = f64::NEG_INFINITY;
    let mut n = hi;
    loop {
        let term = ln_t(n) + ln_s;
        acc = log_add(acc, term);
        if n == 0.0 || (n < n0 && term < acc - 45.0) {
            return acc;
        }
        let lp = nb.ln_pmf(n);
        ln_s = log_add(ln_s, lp);
        n -= 1.0;
    }
}

/// `(ln P(W ≤ w), ln P(W > w))`, each computed as a sum of positive terms
/// so that both tails keep full relative accuracy, also past underflow.
pub(crate) fn w_ln_cdf_pair(mu: f64, nb: &NbWeights, w: f64) -> (f64, f64) {
    if w <= 0.0 {
        return (f64::NEG_INFINITY, 0.0);
    }
    if w.is_infinite() {
        return (0.0, f64::NEG_INFINITY);
    }
    let complement = |l: f64| (-l.exp()).ln_1p();
    if nb.beta == 0.0 {
        return if gamma_lr(mu, w) <= 0.5 {
            let l = ln_gamma_lr(mu, w);
            (l, complement(l))
        } else {
            let u = ln_gamma_ur(mu, w);
            (complement(u), u)
        };
    }
    // P(W > w) = Q(μ, w) + Σ_n T_n P(K > n),  P(W ≤ w) = Σ_n T_n P(K ≤ n)
    let ln_up = log_add(ln_gamma_ur(mu, w), ln_upper_mixture(mu, nb, w));
    if ln_up < -std::f64::consts::LN_2 {
        return (complement(ln_up), ln_up);
    }
    let lw = w.ln();
    let mut ln_t = -w + mu * lw - ln_gamma(mu + 1.0);
    let mut acc = f64::NEG_INFINITY;
    let mut n = 0usize;
    loop {
        let term = ln_t + nb.cdf(n).ln();
        acc = log_add(acc, term);
        let nf = n as f64;
        if mu + nf + 1.0 > w && term < acc - 40.0 {
            break;
        }
        ln_t += lw - (mu + nf + 1.0).ln();
        n += 1;
    }
    (acc, complement(acc))
}

/// `(P(W ≤ w), P(W > w))`.
pub(crate) fn w_cdf_pair(mu: f64, nb: &NbWeights, w: f64) -> (f64, f64) {
    let (lo, up) = w_ln_cdf_pair(mu, nb, w);
    (lo.exp(), up.exp())
}

/// `(F_X(x), 1 − F_X(x))`.
pub fn cdf_power_pair(p: &FadingParams, x: f64) -> (f64, f64) {
    if x <= 0.0 {
        return (0.0, 1.0);
    }
    let nb = NbWeights::new(p.m, p.derived.beta);
    w_cdf_pair(p.mu, &nb, p.to_w(x))
}

/// CDF of the power variable.
pub fn cdf_power(p: &FadingParams, x: f64) -> f64 {
    cdf_power_pair(p, x).0
}

/// Survival function `1 − F_X(x)` without cancellation.
pub fn sf_power(p: &FadingParams, x: f64) -> f64 {
    cdf_power_pair(p, x).1
}

/// The CDF written with the Humbert Φ₂ function,
/// `(θ/μ) w^μ Φ₂(μ−m, m; μ+1; −w, −(1−β)w)` with `w = λ(x)/c`.
///
/// Evaluated through `Φ₂(μ−m, m; μ+1; −w, −(1−β)w) = e^(−w) Φ₂(1, m; μ+1; w, βw)`,
/// whose terms are all positive.
pub fn cdf_power_phi2(p: &FadingParams, x: f64) -> Result<EvalResult> {
    if x <= 0.0 {
        return Ok(EvalResult::exact(0.0));
    }
    let d = &p.derived;
    let w = p.to_w(x);
    let (ln_phi, rel, terms) = ln_humbert_phi2_pos(1.0, p.m, p.mu + 1.0, w, d.beta * w)?;
    let v = (d.ln_theta - p.mu.ln() + p.mu * w.ln() - w + ln_phi).exp();
    Ok(EvalResult::new(v, v * rel, terms))
}

/// CDF of the envelope `R = √X` at `r`, i.e. `cdf_power(p, r²)`.
pub fn cdf_envelope(p: &FadingParams, r: f64) -> f64 {
    if r <= 0.0 {
        return 0.0;
    }
    cdf_power(p, r * r)
}

/// Mellin transform `E[X^(s−1)]`.
pub fn mellin(p: &FadingParams, s: f64) -> Result<f64> {
    Ok(ln_mellin(p, s)?.exp())
}

pub fn ln_mellin(p: &FadingParams, s: f64) -> Result<f64> {
    let e = 2.0 * (s - 1.0) / p.alpha;
    if p.mu + e <= 0.0 {
        return Err(Error::Domain(format!(
            "Mellin transform at s = {s} needs mu + 2(s-1)/alpha > 0"
        )));
    }
    // X^(s−1) = γ̄^(s−1) c^(2(s−1)/α) W^(2(s−1)/α)
    Ok((s - 1.0) * p.gamma_bar.ln() + e * p.derived.ln_c + ln_w_moment(p.mu, p.m, p.derived.beta, e)?)
}

/// `E[X^n]` for real `n ≥ 0` (negative orders allowed while they exist).
pub fn moment(p: &FadingParams, n: f64) -> Result<f64> {
    mellin(p, n + 1.0)
}

/// One draw: ξ² ~ Gamma(m, 1/m), P ~ Poisson(μκξ²), W ~ Gamma(μ+P, 1),
/// X = γ̄ (cW)^(2/α).
pub fn sample_one<R: Rng + ?Sized>(p: &FadingParams, rng: &mut R) -> f64 {
    let k = if p.kappa == 0.0 {
        0.0
    } else {
        let xi2 = Gamma::new(p.m, 1.0 / p.m).expect("m > 0").sample(rng);
        let lambda = p.mu * p.kappa * xi2;
        if lambda > 0.0 {
            Poisson::new(lambda).map(|d| d.sample(rng)).unwrap_or(0.0)
        } else {
            0.0
        }
    };
    let w: f64 = Gamma::new(p.mu + k, 1.0).expect("shape > 0").sample(rng);
    p.gamma_bar * ((2.0 / p.alpha) * (p.derived.ln_c + w.ln())).exp()
}

pub fn sample<R: Rng + ?Sized>(p: &FadingParams, rng: &mut R, count: usize) -> Vec<f64> {
    (0..count).map(|_| sample_one(p, rng)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::gamma::gamma_lr;
    use crate::specfun::quadrature::{integrate_exp_sub, Tolerance};
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn fp(a: f64, k: f64, mu: f64, m: f64, g: f64) -> FadingParams {
        FadingParams::new(a, k, mu, m, g).unwrap()
    }

    #[test]
    fn gamma_reduction_constants() {
        let p = fp(2.0, 0.0, 2.0, 3.0, 1.0);
        let d = p.derived();
        assert_eq!(d.beta, 0.0);
        // θ = 1/Γ(2) = 1 and c = 1/μ
        assert_relative_eq!(d.theta, 1.0, max_relative = 1e-14);
        assert_relative_eq!(d.c, 0.5, max_relative = 1e-14);
        assert_relative_eq!(pdf_power(&p, 1.0), 4.0 * (-2f64).exp(), max_relative = 1e-13);
        assert_relative_eq!(cdf_power(&p, 1.0), gamma_lr(2.0, 2.0), max_relative = 1e-13);
        assert_relative_eq!(cdf_power(&p, 1.0), 0.593_994_150_290_161_9, max_relative = 1e-13);
        assert_eq!(pdf_power(&p, 0.0), 0.0);
        assert_eq!(cdf_power(&p, 0.0), 0.0);
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(FadingParams::new(0.0, 1.0, 1.0, 1.0, 1.0).is_err());
        assert!(FadingParams::new(1.0, -0.1, 1.0, 1.0, 1.0).is_err());
        assert!(FadingParams::new(1.0, 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(FadingParams::new(1.0, 1.0, 1.0, 0.0, 1.0).is_err());
        assert!(FadingParams::new(1.0, 1.0, 1.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn large_m_constants_stay_finite() {
        let p = fp(1.5, 3.0, 2.0, 500.0, 1.0);
        assert!(p.derived().theta > 0.0 && p.derived().c.is_finite());
        assert_relative_eq!(moment(&p, 1.0).unwrap(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn mellin_normalization_and_mean() {
        let p = fp(1.5, 5.0, 1.2, 2.8, 3.7);
        assert_relative_eq!(mellin(&p, 1.0).unwrap(), 1.0, max_relative = 1e-14);
        assert_relative_eq!(mellin(&p, 2.0).unwrap(), 3.7, max_relative = 1e-12);
        assert!(matches!(mellin(&p, 0.0), Err(Error::Domain(_))));
    }

    #[test]
    fn phi2_form_matches_mixture() {
        let p = fp(1.5, 5.0, 1.2, 2.8, 1.0);
        for &x in &[1e-4, 0.05, 0.7, 1.0, 3.0, 12.0] {
            let a = cdf_power(&p, x);
            let b = cdf_power_phi2(&p, x).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-11);
        }
    }

    #[test]
    fn complementary_tails_add_to_one() {
        let p = fp(0.8, 7.0, 0.6, 1.3, 2.0);
        for &x in &[1e-6, 0.01, 0.5, 2.0, 30.0, 400.0] {
            let (lo, up) = cdf_power_pair(&p, x);
            assert!((lo + up - 1.0).abs() < 1e-13, "x={x}: {lo} + {up}");
        }
    }

    #[test]
    fn envelope_is_power_at_square() {
        let p = fp(2.0, 0.8, 1.5, 4.0, 1.0);
        assert_eq!(cdf_envelope(&p, 0.0), 0.0);
        assert_relative_eq!(cdf_envelope(&p, 0.7), cdf_power(&p, 0.49), max_relative = 1e-14);
    }

    #[test]
    fn kappa_zero_sampler_is_gamma_power() {
        use rand::SeedableRng;
        let p = fp(2.0, 0.0, 2.0, 3.0, 1.0);
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(9);
        let xs = sample(&p, &mut rng, 20_000);
        let mean = xs.iter().sum::<f64>() / xs.len() as f64;
        // Gamma(2, 1/2): variance 1/2
        let se = (0.5f64 / xs.len() as f64).sqrt();
        assert!((mean - 1.0).abs() < 4.0 * se, "mean {mean}");
    }

    #[test]
    fn deep_tails_keep_relative_accuracy() {
        // tails far past the stored mixing weights and past f64 underflow
        for p in [fp(1.5, 5.0, 1.2, 2.8, 1.0), fp(2.0, 0.0, 1.3, 1.0, 1.0), fp(1.0, 20.0, 0.7, 0.8, 1.0)] {
            for w in [200.0, 900.0] {
                let x = p.from_w(w);
                let (_, ln_up) = w_ln_cdf_pair(p.mu, &NbWeights::new(p.m, p.derived.beta), w);
                let f = |x: f64| ln_pdf_power(&p, x);
                let q = integrate_exp_sub(&f, x, f64::INFINITY, Tolerance::rel(1e-12)).ln_value();
                assert!((ln_up - q).abs() < 1e-9 * q.abs().max(1.0), "w={w}: {ln_up} vs {q}");
            }
            let x = p.from_w(1e-100);
            let (ln_lo, _) = w_ln_cdf_pair(p.mu, &NbWeights::new(p.m, p.derived.beta), 1e-100);
            let f = |x: f64| ln_pdf_power(&p, x);
            let q = integrate_exp_sub(&f, 0.0, x, Tolerance::rel(1e-12)).ln_value();
            assert!((ln_lo - q).abs() < 1e-9 * q.abs(), "{ln_lo} vs {q}");
        }
    }

    fn integrate_pdf(p: &FadingParams, lo: f64, hi: f64, power: f64) -> f64 {
        let f = |x: f64| ln_pdf_power(p, x) + power * x.ln();
        integrate_exp_sub(&f, lo, hi, Tolerance::rel(1e-12)).value()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn pdf_normalized_and_cdf_consistent(
            a in 0.5f64..4.0, k in 0.0f64..10.0, mu in 0.5f64..5.0, m in 0.5f64..50.0,
            x in 0.05f64..4.0,
        ) {
            let p = fp(a, k, mu, m, 1.0);
            let total = integrate_pdf(&p, 0.0, f64::INFINITY, 0.0);
            prop_assert!((total - 1.0).abs() < 1e-8, "total {total}");
            let mean = integrate_pdf(&p, 0.0, f64::INFINITY, 1.0);
            prop_assert!((mean - 1.0).abs() < 1e-8, "mean {mean}");
            let part = integrate_pdf(&p, 0.0, x, 0.0);
            prop_assert!((part - cdf_power(&p, x)).abs() < 1e-8);
            prop_assert!((moment(&p, 1.0).unwrap() - 1.0).abs() < 1e-10);
        }

        #[test]
        fn cdf_monotone(a in 0.5f64..4.0, k in 0.0f64..10.0, mu in 0.5f64..5.0, m in 0.5f64..50.0) {
            let p = fp(a, k, mu, m, 1.0);
            let mut prev = 0.0;
            for i in 0..60 {
                let x = 10f64.powf(-3.0 + 0.1 * i as f64);
                let f = cdf_power(&p, x);
                prop_assert!(f >= prev - 1e-15 && f <= 1.0);
                prev = f;
            }
        }
    }
}
