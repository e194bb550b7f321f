//! Mixture-expanded series for the product and ratio densities.
//!
//! Each link's normalized power `W` is a negative-binomial mixture of
//! `Gamma(μ + k, 1)` laws with weights `p_k = (1−β)^m (m)_k β^k / k!`. The
//! pair densities are therefore double sums over `(u, v)` of Gamma-pair
//! kernels:
//!
//! * product: each kernel is a two-Gamma Fox H-function `H^{2,0}_{0,2}`,
//!   i.e. a Krätzel-type integral,
//! * ratio: each kernel is closed by residues of a single Gamma family, which
//!   gives an alternating inner series in `n`.
//!
//! These are slow and exist as independent checks of the integral paths.

use super::PairStats;
use crate::akmu::{FadingParams, NbWeights};
use crate::error::{Error, Result};
use crate::specfun::gamma::ln_gamma;
use crate::specfun::kratzel::ln_kratzel_like;
use crate::specfun::EvalResult;

const INNER_CAP: usize = 20_000;
/// Largest estimated relative cancellation error a residue sum may carry.
pub const RESIDUE_REL_LIMIT: f64 = 1e-7;

fn nb_mode(p: &FadingParams) -> usize {
    let b = p.derived().beta;
    if p.m() <= 1.0 || b <= 0.0 {
        0
    } else {
        ((p.m() - 1.0) * b / (1.0 - b)).floor() as usize
    }
}

/// Sums positive component terms `term(u, v) -> (value, abs_err)` row by row,
/// stopping each index once three consecutive contributions fall below
/// `tol` of the running sum past the weight mode.
fn double_sum<F>(ps: &PairStats, what: &str, mut term: F) -> Result<EvalResult>
where
    F: FnMut(usize, usize) -> Result<(f64, f64, usize)>,
{
    let (p1, p2) = (ps.p1(), ps.p2());
    let nb1 = NbWeights::new(p1.m(), p1.derived().beta);
    let nb2 = NbWeights::new(p2.m(), p2.derived().beta);
    let (n1, n2) = (nb1.pmf().len(), nb2.pmf().len());
    let (mode1, mode2) = (nb_mode(p1), nb_mode(p2));
    let tol = ps.policy.tol;
    let cap = ps.policy.max_uv;

    let mut total = 0.0;
    let mut err = 0.0;
    let mut evals = 0usize;
    let mut quiet_rows = 0;
    let mut last_row = 0.0;
    let mut done_rows = false;
    for u in 0..n1 {
        if u >= cap {
            return Err(Error::Accuracy {
                what: format!("{what}: u index reached max_uv = {cap}"),
                partial: total,
                terms: evals,
            });
        }
        let w1 = nb1.pmf()[u];
        let mut row = 0.0;
        let mut quiet_cols = 0;
        let mut done_cols = false;
        for v in 0..n2 {
            if v >= cap {
                return Err(Error::Accuracy {
                    what: format!("{what}: v index reached max_uv = {cap}"),
                    partial: total + row,
                    terms: evals,
                });
            }
            let w = w1 * nb2.pmf()[v];
            let (t, e, k) = term(u, v)?;
            let (t, e) = (w * t, w * e);
            row += t;
            err += e;
            evals += k;
            if v >= mode2 && t <= tol * row {
                quiet_cols += 1;
                if quiet_cols >= 3 {
                    done_cols = true;
                    break;
                }
            } else {
                quiet_cols = 0;
            }
        }
        if !done_cols {
            // weights exhausted: remaining mass is below the NB truncation
            err += row * 1e-16;
        }
        total += row;
        last_row = row;
        if u >= mode1 && row <= tol * total {
            quiet_rows += 1;
            if quiet_rows >= 3 {
                done_rows = true;
                break;
            }
        } else {
            quiet_rows = 0;
        }
    }
    let b1 = p1.derived().beta;
    if done_rows && b1 > 0.0 && b1 < 1.0 {
        err += last_row * b1 / (1.0 - b1);
    }
    err += tol * total;
    if !total.is_finite() {
        return Err(Error::Accuracy {
            what: format!("{what}: non-finite partial sum"),
            partial: total,
            terms: evals,
        });
    }
    Ok(EvalResult::new(total, err, evals))
}

/// Product density as the double series
/// `f_Y(y) = (α₁/(2y)) Σ_{u,v} p₁ᵤ p₂ᵥ β₃^(μ₁+u) K(μ₂+v − ρ(μ₁+u), ρ, β₃) / (Γ(μ₁+u) Γ(μ₂+v))`
/// where `K(ν, ρ, x) = ∫ t^(ν−1) e^(−t − x t^(−ρ)) dt` is the H^{2,0}_{0,2}
/// kernel and `β₃ = (δy)^(α₁/2)`.
pub fn product_pdf_series(ps: &PairStats, y: f64) -> Result<EvalResult> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(Error::Domain(format!("product_pdf_series needs finite y > 0, got {y}")));
    }
    let (p1, p2) = (ps.p1(), ps.p2());
    let (mu1, mu2) = (p1.mu(), p2.mu());
    let rho = ps.rho();
    let lb3 = 0.5 * p1.alpha() * (ps.ln_delta() + y.ln());
    let b3 = lb3.exp();
    let ln_pref = (0.5 * p1.alpha()).ln() - y.ln();
    double_sum(ps, "product_pdf_series", |u, v| {
        let a = mu1 + u as f64;
        let b = mu2 + v as f64;
        let (lk, rel, k) = ln_kratzel_like(b - rho * a, rho, b3)?;
        let t = (ln_pref + a * lb3 + lk - ln_gamma(a) - ln_gamma(b)).exp();
        Ok((t, t * rel, k))
    })
}

/// `Σ_n (−1)ⁿ exp(lg(n)) xⁿ/n!` in scaled form; returns `(value, abs_err, n)`.
/// The error bound charges each term with the rounding of its logarithm.
fn alternating(lg: impl Fn(f64) -> f64, ln_x: f64) -> Option<(f64, f64, usize)> {
    let mut lmax = f64::NEG_INFINITY;
    let mut terms: Vec<(f64, f64)> = Vec::new();
    let mut prev = f64::NEG_INFINITY;
    for n in 0..INNER_CAP {
        let nf = n as f64;
        let (g, p, f) = (lg(nf), nf * ln_x, ln_gamma(nf + 1.0));
        let l = g + p - f;
        terms.push((l, 2.0 + g.abs() + p.abs() + f));
        lmax = lmax.max(l);
        if n > 2 && l < prev && l < lmax - 45.0 {
            let mut s = 0.0;
            let mut err = 0.0;
            for (i, &(li, mag)) in terms.iter().enumerate() {
                let t = (li - lmax).exp();
                err += t * mag;
                s += if i % 2 == 0 { t } else { -t };
            }
            let scale = lmax.exp();
            return Some((s * scale, err * f64::EPSILON * scale, terms.len()));
        }
        prev = l;
    }
    None
}

/// Ratio density as a residue series. For the `(u, v)` Gamma pair with
/// `a = μ₁+u`, `b = μ₂+v`, closing on the poles of `Γ(a + ·)` gives
///
/// `(α₁/(2z)) β₅^a/(Γ(a)Γ(b)) Σ_n (−1)ⁿ Γ(b + ρ(a+n)) β₅ⁿ / n!`
///
/// which converges for `ρ < 1` (and `ρ = 1`, `ζz < 1`); the mirror family
/// in `β₆` is used otherwise. For `ρ = 1` the inner sum is binomial and is
/// summed in closed form. `ζz = 1` is rejected.
pub fn ratio_pdf_series(ps: &PairStats, z: f64) -> Result<EvalResult> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain(format!("ratio_pdf_series needs finite z > 0, got {z}")));
    }
    let lzz = ps.ln_zeta() + z.ln();
    if lzz.abs() < 1e-9 {
        return Err(Error::Degenerate(
            "ratio_pdf_series: zeta*z = 1 sits on the branch boundary; use ratio_pdf".into(),
        ));
    }
    let (p1, p2) = (ps.p1(), ps.p2());
    let (mu1, mu2) = (p1.mu(), p2.mu());
    let rho = ps.rho();
    let equal = (rho - 1.0).abs() < 1e-12;
    let left = if equal { lzz < 0.0 } else { rho < 1.0 };
    let tol = ps.policy.tol;
    let (ln_pref, ln_x) = if left {
        ((0.5 * p1.alpha()).ln() - z.ln(), 0.5 * p1.alpha() * lzz)
    } else {
        ((0.5 * p2.alpha()).ln() - z.ln(), -0.5 * p2.alpha() * lzz)
    };

    let r = double_sum(ps, "ratio_pdf_series", |u, v| {
        let a = mu1 + u as f64;
        let b = mu2 + v as f64;
        let (lead, inner) = if equal {
            // Σ (−1)ⁿ Γ(a+b+n) xⁿ/n! = Γ(a+b) (1+x)^(−a−b) for x < 1
            let l = ln_gamma(a + b) - (a + b) * ln_x.exp().ln_1p();
            let v = l.exp();
            (if left { a } else { b }, Some((v, v * 4.0 * f64::EPSILON * (1.0 + l.abs()), 1)))
        } else if left {
            (a, alternating(|n| ln_gamma(b + rho * (a + n)), ln_x))
        } else {
            (b, alternating(|n| ln_gamma(a + (b + n) / rho), ln_x))
        };
        let Some((s, e, k)) = inner else {
            return Err(Error::Accuracy {
                what: format!("ratio_pdf_series: inner residue sum did not converge at (u, v) = ({u}, {v})"),
                partial: f64::NAN,
                terms: INNER_CAP,
            });
        };
        let scale = (ln_pref + lead * ln_x - ln_gamma(a) - ln_gamma(b)).exp();
        Ok((scale * s, scale * e, k))
    })?;
    if r.abs_err_est > tol.max(RESIDUE_REL_LIMIT) * r.value.abs() + f64::MIN_POSITIVE {
        return Err(Error::Accuracy {
            what: format!(
                "ratio_pdf_series: cancellation in the residue sums leaves relative error {:.1e}",
                r.abs_err_est / r.value.abs()
            ),
            partial: r.value,
            terms: r.terms_used,
        });
    }
    Ok(r)
}
