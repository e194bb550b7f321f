use super::eval::EvalResult;
use super::gamma::{gamma, ln_gamma};
use super::quadrature::{integrate_exp_sub, Tolerance};
use crate::error::{Error, Result};

/// `∫₀^∞ t^(ν−1) e^(−t) e^(−x t^(−ρ)) dt`, the Krätzel-type kernel of the
/// product density.
pub fn kratzel_like(nu: f64, rho: f64, x: f64) -> Result<EvalResult> {
    let (ln_v, rel, evals) = ln_kratzel_like(nu, rho, x)?;
    let v = ln_v.exp();
    Ok(EvalResult::new(v, v * rel, evals))
}

/// `(ln K, relative error, evaluations)`; avoids under/overflow for extreme
/// `ν` or `x`.
pub fn ln_kratzel_like(nu: f64, rho: f64, x: f64) -> Result<(f64, f64, usize)> {
    if !(nu.is_finite() && rho.is_finite() && x.is_finite()) {
        return Err(Error::Parameter("kratzel_like: non-finite argument".into()));
    }
    if rho <= 0.0 {
        return Err(Error::Parameter(format!("kratzel_like requires rho > 0, got {rho}")));
    }
    if x < 0.0 {
        return Err(Error::Domain(format!("kratzel_like requires x >= 0, got {x}")));
    }
    if x == 0.0 {
        if nu <= 0.0 {
            return Err(Error::Domain(format!("kratzel_like diverges at x = 0 for nu = {nu}")));
        }
        let g = gamma(nu);
        let l = if g.is_finite() { g.ln() } else { ln_gamma(nu) };
        return Ok((l, 1e-14, 0));
    }
    let ln_f = |t: f64| (nu - 1.0) * t.ln() - t - x * t.powf(-rho);
    let r = integrate_exp_sub(&ln_f, 0.0, f64::INFINITY, Tolerance::rel(1e-13));
    if !r.scaled.converged {
        return Err(Error::Accuracy {
            what: "kratzel_like quadrature".into(),
            partial: r.value(),
            terms: r.scaled.evals,
        });
    }
    let rel = r.scaled.abs_err / r.scaled.value + 1e-14;
    Ok((r.ln_value(), rel, r.scaled.evals))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zero_argument_is_gamma() {
        assert_relative_eq!(kratzel_like(2.5, 1.3, 0.0).unwrap().value, gamma(2.5), max_relative = 1e-14);
        assert!(matches!(kratzel_like(-0.5, 1.0, 0.0), Err(Error::Domain(_))));
        assert!(matches!(kratzel_like(1.0, 0.0, 1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn bessel_identity_half_order() {
        // ν = 1/2, ρ = 1: 2 x^(1/4) K_(1/2)(2√x) = √π e^(−2√x)
        for &x in &[0.01, 0.5, 3.0, 40.0] {
            let v = kratzel_like(0.5, 1.0, x).unwrap().value;
            let e = std::f64::consts::PI.sqrt() * (-2.0 * x.sqrt()).exp();
            assert_relative_eq!(v, e, max_relative = 1e-11);
        }
    }

    #[test]
    fn negative_nu_converges_for_positive_x() {
        // ν = −1/2, ρ = 1: 2 x^(−1/4) K_(1/2)(2√x) = √(π/x) e^(−2√x)
        let x = 2.0f64;
        let v = kratzel_like(-0.5, 1.0, x).unwrap().value;
        let e = (std::f64::consts::PI / x).sqrt() * (-2.0 * x.sqrt()).exp();
        assert_relative_eq!(v, e, max_relative = 1e-11);
    }
}
