//! Confluent (₁F₁) and Gauss (₂F₁) hypergeometric functions of real argument.
//!
//! Power series stop once three consecutive terms fall below `SERIES_TOL`
//! relative to the partial sum *and* a geometric tail bound confirms it.

use super::eval::EvalResult;
use super::gamma::{ln_gamma, ln_gamma_signed};
use crate::error::{Error, Result};

pub const SERIES_TOL: f64 = 1e-14;
pub const MAX_TERMS: usize = 10_000;
/// Below this argument ₁F₁ is always summed as a power series.
pub const KUMMER_X_SWITCH: f64 = 30.0;

fn is_nonpositive_integer(q: f64) -> bool {
    q <= 0.0 && q == q.floor()
}

fn check_finite(vals: &[f64], what: &str) -> Result<()> {
    if vals.iter().all(|v| v.is_finite()) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{what}: non-finite argument {vals:?}")))
    }
}

/// Generic hypergeometric power series `Σ t_k` with `t_{k+1} = t_k · ratio(k)`.
///
/// `ratio_sup(k)` must bound `|ratio(j)|` for all `j ≥ k` once `k` is past the
/// transient; it is only consulted for the tail estimate.
fn power_series(
    what: &str,
    ratio: impl Fn(usize) -> f64,
    ratio_sup: impl Fn(usize) -> f64,
    tol: f64,
) -> Result<EvalResult> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut max_abs = 1.0f64;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let r = ratio(k);
        term *= r;
        if term == 0.0 {
            // Terminating (polynomial) series.
            let err = max_abs * f64::EPSILON * (k as f64 + 1.0);
            return Ok(EvalResult::new(sum, err, k + 1));
        }
        sum += term;
        max_abs = max_abs.max(term.abs());
        if !sum.is_finite() {
            return Err(Error::Accuracy {
                what: what.into(),
                partial: sum,
                terms: k + 1,
            });
        }
        if term.abs() < tol * sum.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if small_run >= 3 {
            let big_r = ratio_sup(k + 1);
            if big_r < 1.0 {
                let tail = term.abs() * big_r / (1.0 - big_r);
                if tail < tol * sum.abs() {
                    let err = tail + max_abs * f64::EPSILON * (k as f64 + 2.0);
                    return Ok(EvalResult::new(sum, err, k + 2));
                }
            }
        }
    }
    Err(Error::Accuracy {
        what: what.into(),
        partial: sum,
        terms: MAX_TERMS,
    })
}

fn kummer_series(a: f64, b: f64, x: f64, tol: f64) -> Result<EvalResult> {
    let ratio = |k: usize| {
        let k = k as f64;
        (a + k) * x / ((b + k) * (k + 1.0))
    };
    let sup = |k: usize| {
        let kf = k as f64;
        let lead = ((a + kf) / (b + kf)).abs().max(1.0);
        lead * x.abs() / (kf + 1.0)
    };
    power_series("kummer_1f1 series", ratio, sup, tol)
}

/// Large-x expansion `Σ (1−a)_k (b−a)_k / (k! x^k)`, truncated at its
/// smallest term. `None` if that term is not below `tol`.
fn kummer_asymptotic_sum(a: f64, b: f64, x: f64, tol: f64) -> Option<(f64, f64, usize)> {
    // The recessive contribution Γ(b)/Γ(b−a)·x^(−a) is dropped; make sure it
    // is negligible relative to the dominant one.
    let (lga, _) = ln_gamma_signed(a);
    let (lgba, sba) = ln_gamma_signed(b - a);
    if sba != 0.0 && lga - lgba - x + (b - 2.0 * a) * x.ln() > tol.ln() - 2.0 {
        return None;
    }
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 0..200usize {
        let kf = k as f64;
        let next = term * (1.0 - a + kf) * (b - a + kf) / ((kf + 1.0) * x);
        if next == 0.0 {
            return Some((sum, sum.abs() * f64::EPSILON * 4.0, k + 1));
        }
        if next.abs() >= term.abs() {
            return None;
        }
        if next.abs() < tol * sum.abs() {
            return Some((sum + next, next.abs() + sum.abs() * f64::EPSILON * 4.0, k + 2));
        }
        term = next;
        sum += term;
    }
    None
}

/// ₁F₁(a; b; x) for real a, real x and b > 0.
pub fn kummer_1f1(a: f64, b: f64, x: f64) -> Result<EvalResult> {
    check_finite(&[a, b, x], "kummer_1f1")?;
    if b <= 0.0 {
        return Err(Error::Parameter(format!("kummer_1f1 requires b > 0, got {b}")));
    }
    if x == 0.0 || a == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    if is_nonpositive_integer(a) {
        return kummer_series(a, b, x, SERIES_TOL);
    }
    if x < 0.0 {
        // Kummer's transformation turns the alternating series into one whose
        // terms eventually share a sign.
        let r = kummer_1f1(b - a, b, -x)?;
        let s = x.exp();
        return Ok(EvalResult::new(r.value * s, r.abs_err_est * s, r.terms_used));
    }
    if x >= KUMMER_X_SWITCH {
        if let Some((sum, err, terms)) = kummer_asymptotic_sum(a, b, x, SERIES_TOL) {
            let (lga, sa) = ln_gamma_signed(a);
            let ln_pref = ln_gamma(b) - lga + x + (a - b) * x.ln();
            let pref = sa * ln_pref.exp();
            if pref.is_finite() {
                return Ok(EvalResult::new(pref * sum, pref.abs() * err, terms));
            }
            return Err(Error::Accuracy {
                what: "kummer_1f1 overflow".into(),
                partial: pref,
                terms,
            });
        }
    }
    kummer_series(a, b, x, SERIES_TOL)
}

/// ln ₁F₁(a; b; x) for a > 0, b > 0, x ≥ 0, where every series term is
/// positive. Never overflows; used inside log-domain integrands.
pub fn ln_kummer_1f1_pos(a: f64, b: f64, x: f64) -> f64 {
    debug_assert!(a > 0.0 && b > 0.0 && x >= 0.0);
    if x == 0.0 {
        return 0.0;
    }
    if x >= KUMMER_X_SWITCH {
        if let Some((sum, _, _)) = kummer_asymptotic_sum(a, b, x, SERIES_TOL) {
            return ln_gamma(b) - ln_gamma(a) + x + (a - b) * x.ln() + sum.ln();
        }
    }
    // Rescaled positive series.
    const BIG: f64 = 1e200;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut offset = 0.0f64;
    let mut small_run = 0;
    for k in 0..(4 * MAX_TERMS) {
        let kf = k as f64;
        term *= (a + kf) * x / ((b + kf) * (kf + 1.0));
        sum += term;
        if sum > BIG {
            sum /= BIG;
            term /= BIG;
            offset += BIG.ln();
        }
        if term < SERIES_TOL * sum {
            small_run += 1;
            if small_run >= 3 && kf + 1.0 > x {
                break;
            }
        } else {
            small_run = 0;
        }
    }
    offset + sum.ln()
}

/// ₂F₁ power series, valid for |z| < 1.
fn gauss_series(a: f64, b: f64, c: f64, z: f64, tol: f64) -> Result<EvalResult> {
    let ratio = |k: usize| {
        let k = k as f64;
        (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z
    };
    let sup = |k: usize| ratio(k).abs().max(z.abs());
    power_series("gauss_2f1 series", ratio, sup, tol)
}

/// Distance from `c − a − b` to the nearest integer below which the
/// `1 − z` connection formula is considered ill-conditioned.
const CONNECTION_MIN_GAP: f64 = 1e-3;

/// `sign · exp(ln|Γ(p)Γ(q)/(Γ(r)Γ(s))|)` with poles of the denominator giving 0.
fn gamma_ratio(p: f64, q: f64, r: f64, s: f64) -> f64 {
    let (lp, sp) = ln_gamma_signed(p);
    let (lq, sq) = ln_gamma_signed(q);
    let (lr, sr) = ln_gamma_signed(r);
    let (ls, ss) = ln_gamma_signed(s);
    if sr == 0.0 || ss == 0.0 {
        return 0.0;
    }
    sp * sq * sr * ss * (lp + lq - lr - ls).exp()
}

/// ₂F₁ for real parameters and |z| < 1, c not a non-positive integer.
pub(crate) fn hyp2f1(a: f64, b: f64, c: f64, z: f64) -> Result<EvalResult> {
    check_finite(&[a, b, c, z], "gauss_2f1")?;
    if is_nonpositive_integer(c) {
        return Err(Error::Parameter(format!("gauss_2f1: c = {c} is a pole")));
    }
    if z.abs() >= 1.0 {
        return Err(Error::Domain(format!("gauss_2f1 needs |z| < 1, got {z}")));
    }
    if z == 0.0 || a == 0.0 || b == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    let polynomial = is_nonpositive_integer(a) || is_nonpositive_integer(b);
    let s = c - a - b;
    let gap = (s - s.round()).abs();
    if z > 0.9 && !polynomial && gap > CONNECTION_MIN_GAP {
        // Connection to w = 1 − z.
        let w = 1.0 - z;
        let c1 = gamma_ratio(c, s, c - a, c - b);
        let c2 = gamma_ratio(c, -s, a, b);
        let mut value = 0.0;
        let mut err = 0.0;
        let mut terms = 0;
        if c1 != 0.0 {
            let f = gauss_series(a, b, 1.0 - s, w, SERIES_TOL)?;
            value += c1 * f.value;
            err += (c1 * f.abs_err_est).abs() + (c1 * f.value).abs() * 1e-14;
            terms += f.terms_used;
        }
        if c2 != 0.0 {
            let f = gauss_series(c - a, c - b, 1.0 + s, w, SERIES_TOL)?;
            let p = c2 * w.powf(s);
            value += p * f.value;
            err += (p * f.abs_err_est).abs() + (p * f.value).abs() * 1e-14;
            terms += f.terms_used;
        }
        return Ok(EvalResult::new(value, err, terms));
    }
    gauss_series(a, b, c, z, SERIES_TOL)
}

/// ₂F₁(a, b; c; z) on the unit interval 0 ≤ z < 1 with c > 0.
pub fn gauss_2f1_unit(a: f64, b: f64, c: f64, z: f64) -> Result<EvalResult> {
    check_finite(&[a, b, c, z], "gauss_2f1_unit")?;
    if c <= 0.0 {
        return Err(Error::Parameter(format!("gauss_2f1_unit requires c > 0, got {c}")));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::Domain(format!("gauss_2f1_unit requires 0 <= z < 1, got {z}")));
    }
    hyp2f1(a, b, c, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn f11(a: f64, b: f64, x: f64) -> f64 {
        kummer_1f1(a, b, x).unwrap().value
    }

    #[test]
    fn kummer_trivial_values() {
        assert_eq!(f11(2.3, 1.7, 0.0), 1.0);
        assert_relative_eq!(f11(1.0, 1.0, 2.0), 2f64.exp(), max_relative = 1e-14);
        assert_relative_eq!(f11(1.0, 1.0, -3.0), (-3f64).exp(), max_relative = 1e-13);
        // ₁F₁(1; 2; x) = (e^x − 1)/x
        assert_relative_eq!(f11(1.0, 2.0, 50.0), (50f64.exp() - 1.0) / 50.0, max_relative = 1e-13);
        // Laguerre polynomial: ₁F₁(−2; 1; x) = 1 − 2x + x²/2
        assert_relative_eq!(f11(-2.0, 1.0, 3.0), 1.0 - 6.0 + 4.5, max_relative = 1e-14);
    }

    #[test]
    fn kummer_asymptotic_matches_series() {
        for &(a, b) in &[(2.8, 1.2), (0.7, 3.3), (4.4, 2.5)] {
            for &x in &[30.0, 45.0, 80.0] {
                let asym = f11(a, b, x);
                let series = kummer_series(a, b, x, 1e-15).unwrap().value;
                assert_relative_eq!(asym, series, max_relative = 1e-12);
                assert_relative_eq!(ln_kummer_1f1_pos(a, b, x), series.ln(), epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn log_kummer_handles_huge_arguments() {
        // ₁F₁(1; 2; x) = (e^x − 1)/x
        let x = 2000.0f64;
        assert_relative_eq!(ln_kummer_1f1_pos(1.0, 2.0, x), x - x.ln(), epsilon = 1e-10);
        let x = 20.0f64;
        assert_relative_eq!(
            ln_kummer_1f1_pos(1.0, 2.0, x),
            (x.exp_m1() / x).ln(),
            epsilon = 1e-13
        );
    }

    #[test]
    fn kummer_rejects_nonpositive_b() {
        assert!(matches!(kummer_1f1(1.0, 0.0, 1.0), Err(Error::Parameter(_))));
        assert!(matches!(kummer_1f1(1.0, -1.5, 1.0), Err(Error::Parameter(_))));
    }

    #[test]
    fn gauss_trivial_values() {
        assert_eq!(gauss_2f1_unit(1.3, 2.2, 0.4, 0.0).unwrap().value, 1.0);
        assert_relative_eq!(
            gauss_2f1_unit(1.0, 1.0, 2.0, 0.5).unwrap().value,
            -(0.5f64.ln()) / 0.5,
            max_relative = 1e-14
        );
        // ₂F₁(a, b; b; z) = (1 − z)^(−a)
        for &z in &[0.3, 0.95, 0.999] {
            assert_relative_eq!(
                gauss_2f1_unit(2.8, 1.7, 1.7, z).unwrap().value,
                (1.0 - z).powf(-2.8),
                max_relative = 1e-11
            );
        }
    }

    #[test]
    fn gauss_near_one_against_logarithm() {
        // ₂F₁(1, 1; 2; z) = −ln(1 − z)/z; c − a − b = 0 uses the direct series.
        let z = 0.97;
        assert_relative_eq!(
            gauss_2f1_unit(1.0, 1.0, 2.0, z).unwrap().value,
            -(1.0 - z).ln() / z,
            max_relative = 1e-12
        );
    }

    #[test]
    fn gauss_domain_errors() {
        assert!(matches!(gauss_2f1_unit(1.0, 1.0, 2.0, 1.0), Err(Error::Domain(_))));
        assert!(matches!(gauss_2f1_unit(1.0, 1.0, 2.0, -0.1), Err(Error::Domain(_))));
        assert!(matches!(gauss_2f1_unit(1.0, 1.0, 0.0, 0.5), Err(Error::Parameter(_))));
    }

    proptest! {
        #[test]
        fn kummer_contiguous_relation(a in 0.2f64..6.0, b in 0.3f64..6.0, x in 0.0f64..25.0) {
            // (b − a) M(a−1) + (2a − b + x) M(a) − a M(a+1) = 0
            let lhs = (b - a) * f11(a - 1.0, b, x) + (2.0 * a - b + x) * f11(a, b, x);
            let rhs = a * f11(a + 1.0, b, x);
            let scale = rhs.abs().max(f11(a, b, x).abs() * (2.0 * a - b + x).abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale, "lhs={lhs} rhs={rhs}");
        }

        #[test]
        fn kummer_transformation_consistent(a in 0.1f64..5.0, b in 0.2f64..5.0, x in 0.0f64..20.0) {
            let direct = kummer_series(a, b, -x, 1e-16);
            if let Ok(d) = direct {
                // Only compare when the alternating series kept enough digits.
                if d.abs_err_est < 1e-12 * d.value.abs() {
                    let t = f11(a, b, -x);
                    prop_assert!((t - d.value).abs() <= 1e-9 * d.value.abs().max(1.0));
                }
            }
        }

        #[test]
        fn gauss_euler_transformation(a in 0.1f64..5.0, b in 0.1f64..5.0, c in 0.2f64..6.0, z in 0.0f64..0.97) {
            // ₂F₁(a,b;c;z) = (1−z)^(c−a−b) ₂F₁(c−a, c−b; c; z)
            let lhs = gauss_2f1_unit(a, b, c, z).unwrap().value;
            let rhs = (1.0 - z).powf(c - a - b) * gauss_2f1_unit(c - a, c - b, c, z).unwrap().value;
            prop_assert!((lhs - rhs).abs() <= 1e-9 * lhs.abs().max(1.0), "{lhs} vs {rhs}");
        }
    }
}
