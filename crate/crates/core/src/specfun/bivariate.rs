//! Two-variable hypergeometric series: Appell F₂ and Humbert Φ₂.
//!
//! Both are summed as a single series whose coefficients carry a
//! one-variable function (₂F₁ or ₁F₁) of the second argument.

use super::eval::EvalResult;
use super::hypergeometric::{hyp2f1, kummer_1f1, ln_kummer_1f1_pos, MAX_TERMS, SERIES_TOL};
use crate::error::{Error, Result};

/// Appell F₂(a; b1, b2; c1, c2; x, y) for |x| + |y| < 1.
pub fn appell_f2(a: f64, b1: f64, b2: f64, c1: f64, c2: f64, x: f64, y: f64) -> Result<EvalResult> {
    if ![a, b1, b2, c1, c2, x, y].iter().all(|v| v.is_finite()) {
        return Err(Error::Parameter("appell_f2: non-finite argument".into()));
    }
    if c1 <= 0.0 || c2 <= 0.0 {
        return Err(Error::Parameter(format!("appell_f2 requires c1, c2 > 0, got {c1}, {c2}")));
    }
    if x.abs() + y.abs() >= 1.0 {
        return Err(Error::Domain(format!("appell_f2 requires |x| + |y| < 1, got x={x}, y={y}")));
    }
    let geometric = x.abs() / (1.0 - y.abs());
    let mut coef = 1.0f64;
    let mut sum = 0.0f64;
    let mut err = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut prev = f64::NAN;
    let mut small_run = 0;
    let mut terms = 0usize;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let inner = hyp2f1(a + kf, b2, c2, y)?;
        terms += inner.terms_used;
        let t = coef * inner.value;
        sum += t;
        abs_sum += t.abs();
        err += (coef * inner.abs_err_est).abs();
        if t.abs() < SERIES_TOL * sum.abs() {
            small_run += 1;
        } else {
            small_run = 0;
        }
        let r_emp = if prev.is_finite() && prev != 0.0 { (t / prev).abs() } else { 1.0 };
        let big_r = r_emp.max(geometric);
        if small_run >= 3 && big_r < 1.0 {
            let tail = t.abs() * big_r / (1.0 - big_r);
            if tail < SERIES_TOL * sum.abs() {
                err += tail + abs_sum * f64::EPSILON * 4.0;
                return Ok(EvalResult::new(sum, err, k + 1));
            }
        }
        prev = t;
        coef *= (a + kf) * (b1 + kf) * x / ((c1 + kf) * (kf + 1.0));
        if coef == 0.0 {
            err += abs_sum * f64::EPSILON * 4.0;
            return Ok(EvalResult::new(sum, err, k + 1));
        }
    }
    Err(Error::Accuracy {
        what: "appell_f2".into(),
        partial: sum,
        terms: terms.max(MAX_TERMS),
    })
}

/// Streaming log-sum-exp accumulator.
struct LogSum {
    ln_max: f64,
    scaled: f64,
}

impl LogSum {
    fn new() -> Self {
        Self {
            ln_max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    fn add(&mut self, ln_t: f64) {
        if ln_t <= self.ln_max {
            self.scaled += (ln_t - self.ln_max).exp();
        } else {
            self.scaled = self.scaled * (self.ln_max - ln_t).exp() + 1.0;
            self.ln_max = ln_t;
        }
    }

    fn ln(&self) -> f64 {
        self.ln_max + self.scaled.ln()
    }
}

/// ln Φ₂(b1, b2; c; x, y) when b1, b2, c > 0 and x, y ≥ 0, so that every
/// term is positive. Returns `(ln value, relative error, terms)`.
pub(crate) fn ln_humbert_phi2_pos(b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<(f64, f64, usize)> {
    debug_assert!(b1 > 0.0 && b2 > 0.0 && c > 0.0 && x >= 0.0 && y >= 0.0);
    let mut acc = LogSum::new();
    let mut ln_coef = 0.0f64;
    let mut small_run = 0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let ln_t = ln_coef + ln_kummer_1f1_pos(b2, c + kf, y);
        acc.add(ln_t);
        let rel = (ln_t - acc.ln()).exp();
        if rel < SERIES_TOL {
            small_run += 1;
        } else {
            small_run = 0;
        }
        if x == 0.0 {
            return Ok((acc.ln(), 4.0 * f64::EPSILON, 1));
        }
        // Past the peak the ₁F₁ factor decreases in k, so the coefficient
        // ratio bounds the term ratio.
        let big_r = x * ((b1 + kf + 1.0) / (c + kf + 1.0)).max(1.0) / (kf + 2.0);
        if small_run >= 3 && big_r < 1.0 {
            let tail = rel * big_r / (1.0 - big_r);
            if tail < SERIES_TOL {
                return Ok((acc.ln(), tail + 1e-14 + kf.sqrt() * f64::EPSILON, k + 1));
            }
        }
        ln_coef += ((b1 + kf) * x / ((c + kf) * (kf + 1.0))).ln();
    }
    Err(Error::Accuracy {
        what: "humbert_phi2 (positive series)".into(),
        partial: acc.ln().exp(),
        terms: MAX_TERMS,
    })
}

fn humbert_phi2_direct(b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<EvalResult> {
    let mut coef = 1.0f64;
    let mut sum = 0.0f64;
    let mut err = 0.0f64;
    let mut abs_sum = 0.0f64;
    let mut small_run = 0;
    let mut prev = f64::NAN;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let inner = kummer_1f1(b2, c + kf, y)?;
        let t = coef * inner.value;
        sum += t;
        abs_sum += t.abs();
        err += (coef * inner.abs_err_est).abs();
        small_run = if t.abs() < SERIES_TOL * sum.abs() { small_run + 1 } else { 0 };
        let r_coef = ((b1 + kf + 1.0) / (c + kf + 1.0)).abs().max(1.0) * x.abs() / (kf + 2.0);
        let r_emp = if prev.is_finite() && prev != 0.0 { (t / prev).abs() } else { 1.0 };
        let big_r = r_coef.max(r_emp.min(1.0));
        if small_run >= 3 && r_coef < 1.0 && big_r < 1.0 {
            let tail = t.abs() * big_r / (1.0 - big_r);
            if tail < SERIES_TOL * sum.abs() {
                err += tail + abs_sum * f64::EPSILON * (kf + 2.0);
                return Ok(EvalResult::new(sum, err, k + 1));
            }
        }
        prev = t;
        coef *= (b1 + kf) * x / ((c + kf) * (kf + 1.0));
        if coef == 0.0 {
            err += abs_sum * f64::EPSILON * (kf + 2.0);
            return Ok(EvalResult::new(sum, err, k + 1));
        }
    }
    Err(Error::Accuracy {
        what: "humbert_phi2".into(),
        partial: sum,
        terms: MAX_TERMS,
    })
}

/// Humbert Φ₂(b1, b2; c; x, y) for real arguments, c > 0.
///
/// For non-positive arguments the identity
/// `Φ₂(b1, b2; c; x, y) = eˣ Φ₂(c − b1 − b2, b2; c; −x, y − x)` (or its mirror
/// in y) maps the alternating series to one with non-negative arguments.
pub fn humbert_phi2(b1: f64, b2: f64, c: f64, x: f64, y: f64) -> Result<EvalResult> {
    if ![b1, b2, c, x, y].iter().all(|v| v.is_finite()) {
        return Err(Error::Parameter("humbert_phi2: non-finite argument".into()));
    }
    if c <= 0.0 {
        return Err(Error::Parameter(format!("humbert_phi2 requires c > 0, got {c}")));
    }
    if x == 0.0 && y == 0.0 {
        return Ok(EvalResult::exact(1.0));
    }
    // Candidate forms (shift, b1', b2', x', y') with value = e^shift Φ₂(b1', b2'; c; x', y').
    let d = c - b1 - b2;
    let mut forms = vec![(0.0, b1, b2, x, y)];
    if x <= 0.0 && x <= y {
        forms.push((x, d, b2, -x, y - x));
    }
    if y <= 0.0 && y < x {
        forms.push((y, b1, d, x - y, -y));
    }
    for &(shift, p, q, u, v) in forms.iter().rev() {
        if p > 0.0 && q > 0.0 && u >= 0.0 && v >= 0.0 {
            let (ln_v, rel, terms) = ln_humbert_phi2_pos(p, q, c, u, v)?;
            let value = (ln_v + shift).exp();
            return Ok(EvalResult::new(value, value * rel, terms));
        }
    }
    // Sign-indefinite terms: sum whichever form has the smaller arguments.
    let &(shift, p, q, u, v) = forms
        .iter()
        .min_by(|l, r| (l.3.abs() + l.4.abs()).total_cmp(&(r.3.abs() + r.4.abs())))
        .expect("non-empty");
    let r = humbert_phi2_direct(p, q, c, u, v)?;
    Ok(r.scaled(shift.exp()))
}
