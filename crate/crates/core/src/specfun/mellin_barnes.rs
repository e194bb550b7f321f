//! Fox H-functions by direct numerical Mellin–Barnes contour integration.
//!
//! With kernel
//! `Θ(s) = Π_{j≤m} Γ(b_j + B_j s) Π_{j≤n} Γ(1 − a_j − A_j s)
//!        / (Π_{j>m} Γ(1 − b_j − B_j s) Π_{j>n} Γ(a_j + A_j s))`
//! the function is `H(x) = (1/2πi) ∫ Θ(s) x^(−s) ds` along a vertical line
//! `Re s = s₀` separating the two pole families. For real parameters the
//! integrand is conjugate-symmetric and `H(x) = (1/π) ∫₀^∞ Re[Θ(s₀+iτ) x^(−s₀−iτ)] dτ`.
//!
//! This path exists to cross-check the integral representations used in
//! production; it is slower and less robust for large or tiny `x`.

use super::eval::EvalResult;
use super::gamma::ln_gamma_complex;
use super::quadrature::{adaptive_gauss_legendre, Tolerance};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Parameter layouts used by the product and ratio statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HCase {
    /// `H^{2,0}_{0,2}[x | —; (b1,B1), (b2,B2)]`: product density kernel.
    H20_02,
    /// `H^{2,1}_{1,3}[x | (1,1); (b1,B1), (b2,B2), (0,1)]`: product CDF kernel.
    H21_13,
    /// `H^{2,1}_{1,2}[x | (1,1); (b1,B1), (b2,B2)]`: product MGF kernel.
    H21_12,
    /// `H^{1,1}_{1,1}[x | (a1,A1); (b1,B1)]`: ratio density kernel.
    H11_11,
    /// `H^{1,2}_{2,2}[x | (a1,A1), (1,1); (b1,B1), (0,1)]`: ratio CDF kernel.
    H12_22,
}

impl HCase {
    /// `(m, n, p, q)`.
    pub fn orders(self) -> (usize, usize, usize, usize) {
        match self {
            HCase::H20_02 => (2, 0, 0, 2),
            HCase::H21_13 => (2, 1, 1, 3),
            HCase::H21_12 => (2, 1, 1, 2),
            HCase::H11_11 => (1, 1, 1, 1),
            HCase::H12_22 => (1, 2, 2, 2),
        }
    }
}

/// Upper `(a_j, A_j)` and lower `(b_j, B_j)` parameter pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct HParams {
    pub a: Vec<(f64, f64)>,
    pub b: Vec<(f64, f64)>,
}

impl HParams {
    pub fn h20_02(b1: (f64, f64), b2: (f64, f64)) -> Self {
        Self { a: vec![], b: vec![b1, b2] }
    }

    pub fn h21_13(b1: (f64, f64), b2: (f64, f64)) -> Self {
        Self {
            a: vec![(1.0, 1.0)],
            b: vec![b1, b2, (0.0, 1.0)],
        }
    }

    pub fn h21_12(b1: (f64, f64), b2: (f64, f64)) -> Self {
        Self {
            a: vec![(1.0, 1.0)],
            b: vec![b1, b2],
        }
    }

    pub fn h11_11(a1: (f64, f64), b1: (f64, f64)) -> Self {
        Self { a: vec![a1], b: vec![b1] }
    }

    pub fn h12_22(a1: (f64, f64), b1: (f64, f64)) -> Self {
        Self {
            a: vec![a1, (1.0, 1.0)],
            b: vec![b1, (0.0, 1.0)],
        }
    }
}

/// H-function of one of the supported layouts at `x > 0`.
pub fn mellin_barnes_h(case: HCase, x: f64, params: &HParams) -> Result<EvalResult> {
    let (m, n, p, q) = case.orders();
    if params.a.len() != p || params.b.len() != q {
        return Err(Error::Parameter(format!(
            "{case:?} expects {p} upper and {q} lower pairs, got {} and {}",
            params.a.len(),
            params.b.len()
        )));
    }
    fox_h(m, n, &params.a, &params.b, x)
}

/// Largest pole of the left family and smallest pole of the right family.
fn pole_gap(m: usize, n: usize, a: &[(f64, f64)], b: &[(f64, f64)]) -> (f64, f64) {
    let left = b[..m].iter().map(|&(bj, bw)| -bj / bw).fold(f64::NEG_INFINITY, f64::max);
    let right = a[..n].iter().map(|&(aj, aw)| (1.0 - aj) / aw).fold(f64::INFINITY, f64::min);
    (left, right)
}

fn ln_kernel(m: usize, n: usize, a: &[(f64, f64)], b: &[(f64, f64)], s: Complex64) -> Complex64 {
    let one = Complex64::new(1.0, 0.0);
    let mut acc = Complex64::new(0.0, 0.0);
    for (j, &(bj, bw)) in b.iter().enumerate() {
        if j < m {
            acc += ln_gamma_complex(bj + bw * s);
        } else {
            acc -= ln_gamma_complex(one - bj - bw * s);
        }
    }
    for (j, &(aj, aw)) in a.iter().enumerate() {
        if j < n {
            acc += ln_gamma_complex(one - aj - aw * s);
        } else {
            acc -= ln_gamma_complex(aj + aw * s);
        }
    }
    acc
}

/// General `H^{m,n}_{p,q}` for real parameters with positive weights, provided
/// the contour integral converges absolutely (`Σ weights with sign` > 0).
pub fn fox_h(m: usize, n: usize, a: &[(f64, f64)], b: &[(f64, f64)], x: f64) -> Result<EvalResult> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain(format!("H-function needs x > 0, got {x}")));
    }
    if m > b.len() || n > a.len() {
        return Err(Error::Parameter("H-function orders exceed parameter counts".into()));
    }
    if a.iter().chain(b).any(|&(v, w)| !(v.is_finite() && w > 0.0 && w.is_finite())) {
        return Err(Error::Parameter("H-function weights must be positive and finite".into()));
    }
    let a_star: f64 = a[..n].iter().map(|p| p.1).sum::<f64>() - a[n..].iter().map(|p| p.1).sum::<f64>()
        + b[..m].iter().map(|p| p.1).sum::<f64>()
        - b[m..].iter().map(|p| p.1).sum::<f64>();
    if a_star <= 0.0 {
        return Err(Error::Degenerate(format!("contour integral does not converge (a* = {a_star})")));
    }
    let (left, right) = pole_gap(m, n, a, b);
    if left >= right {
        return Err(Error::Degenerate(format!(
            "pole families overlap: rightmost left pole {left} >= leftmost right pole {right}"
        )));
    }
    let lx = x.ln();
    let real_log = |sigma: f64| ln_kernel(m, n, a, b, Complex64::new(sigma, 0.0)).re - sigma * lx;
    let s0 = if left.is_finite() && right.is_finite() {
        0.5 * (left + right)
    } else if left.is_finite() || right.is_finite() {
        // One-sided gap: put the line near the saddle of |Θ(σ) x^(−σ)|.
        let (lo, hi) = if left.is_finite() { (left, left + 400.0) } else { (right - 400.0, right) };
        let (mut l, mut h) = (lo + 1e-9 * (1.0 + lo.abs()), hi);
        let g = 0.5 * (5f64.sqrt() - 1.0);
        for _ in 0..200 {
            let c1 = h - g * (h - l);
            let c2 = l + g * (h - l);
            if real_log(c1) < real_log(c2) {
                h = c2;
            } else {
                l = c1;
            }
        }
        let s = 0.5 * (l + h);
        // Stay away from the pole itself.
        let edge = if left.is_finite() { left } else { right };
        let min_sep = 0.05;
        if (s - edge).abs() < min_sep {
            if left.is_finite() {
                edge + min_sep
            } else {
                edge - min_sep
            }
        } else {
            s
        }
    } else {
        return Err(Error::Degenerate("no Gamma poles to separate".into()));
    };

    let integrand = |tau: f64| {
        let s = Complex64::new(s0, tau);
        let l = ln_kernel(m, n, a, b, s) - s * lx;
        if l.re < -745.0 {
            0.0
        } else {
            l.exp().re
        }
    };
    let ln_mag = |tau: f64| {
        let s = Complex64::new(s0, tau);
        (ln_kernel(m, n, a, b, s) - s * lx).re
    };

    // Grow T until the envelope is negligible against its maximum.
    let ln_peak0 = ln_mag(0.0);
    let mut ln_peak = ln_peak0;
    let mut t_max = 0.0;
    let step = 0.5;
    let mut quiet = 0;
    while t_max < 1e4 {
        t_max += step;
        let lm = ln_mag(t_max);
        ln_peak = ln_peak.max(lm);
        if lm < ln_peak + (1e-12f64 * a_star).ln() - 2.0 {
            quiet += 1;
            if quiet >= 8 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if t_max >= 1e4 {
        return Err(Error::Accuracy {
            what: "Mellin-Barnes contour truncation".into(),
            partial: f64::NAN,
            terms: 0,
        });
    }
    let panels = (t_max.ceil() as usize).max(4);
    let breaks: Vec<f64> = (0..=panels).map(|i| t_max * i as f64 / panels as f64).collect();
    let mut tol = Tolerance::rel(1e-12);
    tol.abs = 1e-15 * ln_peak.exp();
    let r = adaptive_gauss_legendre(&integrand, &breaks, tol);
    let value = r.value / PI;
    let tail = (ln_peak + (1e-12f64).ln()).exp() / PI;
    let err = r.abs_err / PI + tail;
    if !r.converged {
        return Err(Error::Accuracy {
            what: "Mellin-Barnes contour quadrature".into(),
            partial: value,
            terms: r.evals,
        });
    }
    Ok(EvalResult::new(value, err, r.evals))
}
