//! Special functions and quadrature used by the distribution code.

pub mod bivariate;
pub mod eval;
pub mod gamma;
pub mod hypergeometric;
pub mod kratzel;
pub mod mellin_barnes;
pub mod quadrature;

pub use bivariate::{appell_f2, humbert_phi2};
pub use eval::{EvalResult, Fallback};
pub use hypergeometric::{gauss_2f1_unit, kummer_1f1};
pub use kratzel::kratzel_like;
pub use mellin_barnes::{fox_h, mellin_barnes_h, HCase, HParams};
pub use quadrature::{gauss_legendre, gauss_legendre_panels, semi_infinite, QuadratureRule, RuleKind};
