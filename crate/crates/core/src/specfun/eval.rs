/// Which alternative evaluation route, if any, produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fallback {
    #[default]
    None,
    ResidueToIntegral,
    SeriesToIntegral,
}

/// A numerical value together with a bound on its absolute error and some
/// bookkeeping about how it was obtained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalResult {
    pub value: f64,
    pub abs_err_est: f64,
    /// Series terms summed, or integrand evaluations for quadrature.
    pub terms_used: usize,
    pub fallback: Fallback,
}

impl EvalResult {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            abs_err_est: 0.0,
            terms_used: 0,
            fallback: Fallback::None,
        }
    }

    pub fn new(value: f64, abs_err_est: f64, terms_used: usize) -> Self {
        Self {
            value,
            abs_err_est: abs_err_est.abs(),
            terms_used,
            fallback: Fallback::None,
        }
    }

    pub fn with_fallback(mut self, fallback: Fallback) -> Self {
        self.fallback = fallback;
        self
    }

    /// Multiplies value and error bound by a constant.
    pub fn scaled(self, k: f64) -> Self {
        Self {
            value: self.value * k,
            abs_err_est: self.abs_err_est * k.abs(),
            ..self
        }
    }

    pub fn rel_err_est(&self) -> f64 {
        if self.value == 0.0 {
            self.abs_err_est
        } else {
            self.abs_err_est / self.value.abs()
        }
    }
}
