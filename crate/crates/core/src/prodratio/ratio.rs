use super::{check_order, finish, PairStats};
use crate::akmu::{ln_mellin, ln_w_pdf, w_ln_cdf_pair, NbWeights};
use crate::error::{Error, Result};
use crate::specfun::bivariate::appell_f2;
use crate::specfun::gamma::ln_gamma;
use crate::specfun::quadrature::integrate_exp_sub;
use crate::specfun::EvalResult;
use std::cell::Cell;

/// Which conditioning the ratio density integral uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatioBranch {
    /// Condition on `W₂`; natural for `ζz ≤ 1`.
    Lower,
    /// Condition on `W₁`; natural for `ζz > 1`.
    Upper,
}

fn ln_zz(ps: &PairStats, z: f64) -> f64 {
    ps.ln_zeta() + z.ln()
}

fn check_z(z: f64, what: &str) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs finite z > 0, got {z}")))
    }
}

/// Density of `Z = X₁/X₂` through the requested branch:
///
/// * lower: `(α₁β₅/(2z)) ∫ g₂(t) g₁(β₅ t^ρ) t^ρ dt`
/// * upper: `(α₂β₆/(2z)) ∫ g₁(t) g₂(β₆ t^(1/ρ)) t^(1/ρ) dt`
///
/// Both are exact for every `z`; they differ only in conditioning.
pub fn ratio_pdf_branch(ps: &PairStats, z: f64, branch: RatioBranch) -> Result<EvalResult> {
    check_z(z, "ratio_pdf")?;
    let (p1, p2) = (ps.p1(), ps.p2());
    let lzz = ln_zz(ps, z);
    let (outer, inner, lb, r, alpha) = match branch {
        RatioBranch::Lower => (p2, p1, 0.5 * p1.alpha() * lzz, ps.rho(), p1.alpha()),
        RatioBranch::Upper => (p1, p2, -0.5 * p2.alpha() * lzz, 1.0 / ps.rho(), p2.alpha()),
    };
    let ln_f = |t: f64| {
        let lt = t.ln();
        ln_w_pdf(outer, t) + ln_w_pdf(inner, (lb + r * lt).exp()) + r * lt
    };
    let res = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, ps.tolerance());
    let ln_pref = (0.5 * alpha).ln() + lb - z.ln();
    finish("ratio_pdf quadrature", ln_pref, &res, 1e-14)
}

/// Density of `Z`; the branch is chosen by `ζz ≤ 1`.
pub fn ratio_pdf(ps: &PairStats, z: f64) -> Result<EvalResult> {
    check_z(z, "ratio_pdf")?;
    let branch = if ln_zz(ps, z) <= 0.0 { RatioBranch::Lower } else { RatioBranch::Upper };
    ratio_pdf_branch(ps, z, branch)
}

/// `(F_Z(z), 1 − F_Z(z))` with
/// `F_Z = ∫ g₂(t) P(W₁ ≤ β₅t^ρ) dt` and `1 − F_Z = ∫ g₁(t) P(W₂ < β₆t^(1/ρ)) dt`.
pub fn ratio_cdf_pair(ps: &PairStats, z: f64) -> Result<(EvalResult, EvalResult)> {
    if z.is_nan() || z < 0.0 {
        return Err(Error::Domain(format!("ratio_cdf needs z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok((EvalResult::exact(0.0), EvalResult::exact(1.0)));
    }
    if z.is_infinite() {
        return Ok((EvalResult::exact(1.0), EvalResult::exact(0.0)));
    }
    let (p1, p2) = (ps.p1(), ps.p2());
    let lzz = ln_zz(ps, z);
    let side = |upper: bool| {
        let (outer, inner, lb, r) = if upper {
            (p1, p2, -0.5 * p2.alpha() * lzz, 1.0 / ps.rho())
        } else {
            (p2, p1, 0.5 * p1.alpha() * lzz, ps.rho())
        };
        let nb = NbWeights::new(inner.m(), inner.derived().beta);
        let ln_f = |t: f64| {
            let w = (lb + r * t.ln()).exp();
            ln_w_pdf(outer, t) + w_ln_cdf_pair(inner.mu(), &nb, w).0
        };
        let res = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, ps.tolerance());
        finish("ratio_cdf quadrature", 0.0, &res, 1e-14)
    };
    let complement = |r: &EvalResult| EvalResult::new(1.0 - r.value, r.abs_err_est, r.terms_used);
    let first_upper = lzz > 0.0;
    let first = side(first_upper)?;
    let (lower, upper) = if first.value <= 0.5 {
        if first_upper {
            (complement(&first), first)
        } else {
            let c = complement(&first);
            (first, c)
        }
    } else {
        let second = side(!first_upper)?;
        if first_upper {
            let c = complement(&second);
            (second, c)
        } else {
            (complement(&second), second)
        }
    };
    Ok((lower, upper))
}

/// CDF of `Z`.
pub fn ratio_cdf(ps: &PairStats, z: f64) -> Result<EvalResult> {
    Ok(ratio_cdf_pair(ps, z)?.0)
}

/// Closed form for `α₁ = α₂ = α` with `β₇ = (ζz)^(α/2)`:
/// `f_Z = (α/(2z)) θ₁θ₂ Γ(μ₁+μ₂) β₇^μ₁ (1+β₇)^(−μ₁−μ₂)
///        F₂(μ₁+μ₂; m₁, m₂; μ₁, μ₂; β₁β₇/(1+β₇), β₂/(1+β₇))`.
pub fn ratio_pdf_same_alpha(ps: &PairStats, z: f64) -> Result<EvalResult> {
    let (p1, p2) = (ps.p1(), ps.p2());
    let alpha = p1.alpha();
    if (alpha - p2.alpha()).abs() > 1e-12 * alpha {
        return Err(Error::Parameter(format!(
            "ratio_pdf_same_alpha needs alpha1 == alpha2, got {} and {}",
            alpha,
            p2.alpha()
        )));
    }
    check_z(z, "ratio_pdf_same_alpha")?;
    let (d1, d2) = (p1.derived(), p2.derived());
    let (mu1, mu2) = (p1.mu(), p2.mu());
    let lb7 = 0.5 * alpha * ln_zz(ps, z);
    let b7 = lb7.exp();
    let ln_1pb7 = b7.ln_1p();
    // β₇/(1+β₇) and 1/(1+β₇) without overflow for large β₇.
    let frac = (lb7 - ln_1pb7).exp();
    let inv = (-ln_1pb7).exp();
    let f2 = appell_f2(mu1 + mu2, p1.m(), p2.m(), mu1, mu2, d1.beta * frac, d2.beta * inv)?;
    let ln_pref = (0.5 * alpha).ln() - z.ln() + d1.ln_theta + d2.ln_theta + ln_gamma(mu1 + mu2) + mu1 * lb7
        - (mu1 + mu2) * ln_1pb7;
    let pref = ln_pref.exp();
    Ok(EvalResult::new(pref * f2.value, pref * f2.abs_err_est + pref * f2.value * 1e-14, f2.terms_used))
}

/// `E[e^(sZ)]` for `s < 0`.
pub fn ratio_mgf(ps: &PairStats, s: f64) -> Result<EvalResult> {
    if !(s < 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("ratio_mgf is only evaluated for s < 0, got {s}")));
    }
    let failure = Cell::new(None);
    let inner_err = Cell::new(0.0f64);
    let ln_f = |z: f64| match ratio_pdf(ps, z) {
        Ok(r) if r.value > 0.0 => {
            inner_err.set(inner_err.get().max(r.rel_err_est()));
            r.value.ln() + s * z
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
    finish("ratio_mgf quadrature", 0.0, &r, inner_err.get())
}

/// `E[Zⁿ] = E[X₁ⁿ] E[X₂⁻ⁿ]`, finite only while `μ₂ − 2n/α₂ > 0`.
pub fn ratio_moment(ps: &PairStats, n: f64) -> Result<f64> {
    check_order(n)?;
    let p2 = ps.p2();
    if p2.mu() - 2.0 * n / p2.alpha() <= 0.0 {
        return Err(Error::MomentUndefined {
            order: n,
            reason: format!(
                "E[X2^-n] diverges: mu2 - 2n/alpha2 = {} <= 0",
                p2.mu() - 2.0 * n / p2.alpha()
            ),
        });
    }
    Ok((ln_mellin(ps.p1(), n + 1.0)? + ln_mellin(p2, 1.0 - n)?).exp())
}
