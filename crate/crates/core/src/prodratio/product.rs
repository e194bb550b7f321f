use super::{check_order, finish, PairStats};
use crate::akmu::{ln_mellin, ln_w_pdf, w_ln_cdf_pair, NbWeights};
use crate::error::{Error, Result};
use crate::specfun::quadrature::integrate_exp_sub;
use crate::specfun::EvalResult;
use std::cell::Cell;

/// `ln β₃ = (α₁/2) ln(δy)`.
fn ln_beta3(ps: &PairStats, y: f64) -> f64 {
    0.5 * ps.p1().alpha() * (ps.ln_delta() + y.ln())
}

/// Density of `Y = X₁X₂`:
/// `f_Y(y) = (α₁β₃/(2y)) ∫₀^∞ g₂(t) g₁(β₃ t^(−ρ)) t^(−ρ) dt`.
pub fn product_pdf(ps: &PairStats, y: f64) -> Result<EvalResult> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("product_pdf needs finite y > 0, got {y}")));
    }
    let (p1, p2) = (ps.p1(), ps.p2());
    let rho = ps.rho();
    let lb3 = ln_beta3(ps, y);
    let ln_f = |t: f64| {
        let lt = t.ln();
        ln_w_pdf(p2, t) + ln_w_pdf(p1, (lb3 - rho * lt).exp()) - rho * lt
    };
    let r = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, ps.tolerance());
    let ln_pref = (0.5 * p1.alpha()).ln() + lb3 - y.ln();
    finish("product_pdf quadrature", ln_pref, &r, 1e-14)
}

/// `(F_Y(y), 1 − F_Y(y))`, each from its own positive integrand
/// `∫ g₂(t) P(W₁ ≶ β₃t^(−ρ)) dt`; the smaller tail is computed directly.
pub fn product_cdf_pair(ps: &PairStats, y: f64) -> Result<(EvalResult, EvalResult)> {
    if y.is_nan() || y < 0.0 {
        return Err(Error::Domain(format!("product_cdf needs y >= 0, got {y}")));
    }
    if y == 0.0 {
        return Ok((EvalResult::exact(0.0), EvalResult::exact(1.0)));
    }
    if y.is_infinite() {
        return Ok((EvalResult::exact(1.0), EvalResult::exact(0.0)));
    }
    let (p1, p2) = (ps.p1(), ps.p2());
    let nb1 = NbWeights::new(p1.m(), p1.derived().beta);
    let rho = ps.rho();
    let lb3 = ln_beta3(ps, y);
    let tail = |upper: bool| {
        let ln_f = |t: f64| {
            let w = (lb3 - rho * t.ln()).exp();
            let (lo, up) = w_ln_cdf_pair(p1.mu(), &nb1, w);
            ln_w_pdf(p2, t) + if upper { up } else { lo }
        };
        let r = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, ps.tolerance());
        finish("product_cdf quadrature", 0.0, &r, 1e-14)
    };
    let lower = tail(false)?;
    if lower.value <= 0.5 {
        let upper = EvalResult::new(1.0 - lower.value, lower.abs_err_est, lower.terms_used);
        return Ok((lower, upper));
    }
    let upper = tail(true)?;
    let lower = EvalResult::new(1.0 - upper.value, upper.abs_err_est, upper.terms_used);
    Ok((lower, upper))
}

/// CDF of `Y`.
pub fn product_cdf(ps: &PairStats, y: f64) -> Result<EvalResult> {
    Ok(product_cdf_pair(ps, y)?.0)
}

/// `E[e^(sY)]` for `s < 0`, as the Laplace transform of the density.
pub fn product_mgf(ps: &PairStats, s: f64) -> Result<EvalResult> {
    if !(s < 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("product_mgf is only evaluated for s < 0, got {s}")));
    }
    let failure = Cell::new(None);
    let inner_err = Cell::new(0.0f64);
    let ln_f = |y: f64| match product_pdf(ps, y) {
        Ok(r) if r.value > 0.0 => {
            let v = r.value.ln() + s * y;
            inner_err.set(inner_err.get().max(r.rel_err_est()));
            v
        }
        Ok(_) => f64::NEG_INFINITY,
        Err(e) => {
            failure.set(Some(e));
            f64::NEG_INFINITY
        }
    };
    let r = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, ps.tolerance());
    if let Some(e) = failure.take() {
        return Err(e);
    }
    finish("product_mgf quadrature", 0.0, &r, inner_err.get())
}

/// `E[Yⁿ] = E[X₁ⁿ] E[X₂ⁿ]` for real `n ≥ 0`.
pub fn product_moment(ps: &PairStats, n: f64) -> Result<f64> {
    check_order(n)?;
    Ok((ln_mellin(ps.p1(), n + 1.0)? + ln_mellin(ps.p2(), n + 1.0)?).exp())
}
