//! Gamma-function helpers.
//!
//! Real-argument Γ, ln Γ and the regularized incomplete gamma functions come
//! from `statrs` (Lanczos, relative error well below 1e-13 on (0, 170)). This
//! module adds what the hypergeometric code needs on top of that: signed
//! ln|Γ| for negative non-integer arguments, Pochhammer symbols with sign
//! tracking, and a complex ln Γ for Mellin–Barnes contours.

use num_complex::Complex64;
use std::f64::consts::PI;

pub use statrs::function::gamma::{gamma, gamma_lr, gamma_ur, ln_gamma};

/// `ln P(a, x)`, continuing past the underflow of the regularized value
/// with the defining power series.
pub fn ln_gamma_lr(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    let p = gamma_lr(a, x);
    if p > 1e-280 {
        return p.ln();
    }
    // P(a, x) = x^a e^(−x)/Γ(a+1) Σ_k x^k/((a+1)…(a+k))
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0;
    while term > 1e-17 * sum && k < 10_000.0 {
        term *= x / (a + k);
        sum += term;
        k += 1.0;
    }
    a * x.ln() - x - ln_gamma(a + 1.0) + sum.ln()
}

/// `ln Q(a, x)`, continuing past the underflow of the regularized value
/// with the large-`x` asymptotic series.
pub fn ln_gamma_ur(a: f64, x: f64) -> f64 {
    if x.is_infinite() {
        return f64::NEG_INFINITY;
    }
    let q = gamma_ur(a, x);
    if q > 1e-280 {
        return q.ln();
    }
    // Γ(a, x) ~ x^(a−1) e^(−x) Σ_k (a−1)(a−2)…(a−k)/x^k
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for k in 1..200 {
        let next = term * (a - k as f64) / x;
        if next.abs() >= term.abs() || next.abs() < 1e-17 * sum.abs() {
            break;
        }
        term = next;
        sum += term;
    }
    (a - 1.0) * x.ln() - x - ln_gamma(a) + sum.ln()
}

/// `(ln|Γ(x)|, sign Γ(x))`. Poles return `(+inf, 0.0)`.
pub fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        return (ln_gamma(x), 1.0);
    }
    if x == x.floor() {
        return (f64::INFINITY, 0.0);
    }
    // Γ(x) = π / (sin(πx) Γ(1-x)), and Γ(1-x) > 0 here.
    let s = (PI * x).sin();
    (PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
}

/// 1/Γ(x), which is entire: exactly zero at the poles.
pub fn recip_gamma(x: f64) -> f64 {
    let (lg, sign) = ln_gamma_signed(x);
    if sign == 0.0 {
        0.0
    } else {
        sign * (-lg).exp()
    }
}

/// `(ln|(q)_k|, sign)` for the rising factorial `(q)_k = Γ(q+k)/Γ(q)`.
///
/// Works for negative non-integer `q`. When `q` is a non-positive integer and
/// `k > -q` the symbol vanishes and `(-inf, 0.0)` is returned.
pub fn ln_pochhammer_signed(q: f64, k: u32) -> (f64, f64) {
    if k == 0 {
        return (0.0, 1.0);
    }
    if q <= 0.0 && q == q.floor() {
        if (k as f64) > -q {
            return (f64::NEG_INFINITY, 0.0);
        }
        // (q)_k with every factor negative.
        let mut acc = 0.0;
        for j in 0..k {
            acc += (-(q + j as f64)).ln();
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        return (acc, sign);
    }
    let (a, sa) = ln_gamma_signed(q + k as f64);
    let (b, sb) = ln_gamma_signed(q);
    (a - b, sa * sb)
}

pub fn pochhammer(q: f64, k: u32) -> f64 {
    let (l, s) = ln_pochhammer_signed(q, k);
    s * l.exp()
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Principal-ish ln Γ(z) for complex z; the imaginary part is only defined
/// modulo 2π, which is all the contour integrals need.
pub fn ln_gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z).
        let s = (z * PI).sin();
        return Complex64::new(PI.ln(), 0.0) - s.ln() - ln_gamma_complex(Complex64::new(1.0, 0.0) - z);
    }
    let z = z - 1.0;
    let mut x = Complex64::new(LANCZOS[0], 0.0);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}
