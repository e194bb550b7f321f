mod common;

use common::{fig_pair, golden, link};
use fading_core::apps::{irs_gamma_params, IrsScenario};
use fading_core::approx::{fit_beta_prime_ratio, fit_gamma_product};
use fading_core::prodratio::product_moment;

fn close(id: &str, inputs: &[f64], got: f64) {
    let g = golden(id, inputs);
    assert!((got - g.value).abs() <= g.tol, "{id}: {got} vs {} (tol {})", g.value, g.tol);
}

#[test]
fn fits_match_goldens() {
    let ps = fig_pair();
    let g = fit_gamma_product(&ps).unwrap();
    close("fit_gamma_k", &[2.8, 4.4], g.k);
    close("fit_gamma_theta", &[2.8, 4.4], g.theta);
    let b = fit_beta_prime_ratio(&ps).unwrap();
    close("fit_beta_prime_c_ratio", &[2.8, 4.4], b.c_ratio());
    close("fit_beta_prime_d_ratio", &[2.8, 4.4], b.d_ratio());
}

#[test]
fn gamma_fit_preserves_two_moments() {
    let ps = fig_pair();
    let g = fit_gamma_product(&ps).unwrap();
    let (m1, m2) = (product_moment(&ps, 1.0).unwrap(), product_moment(&ps, 2.0).unwrap());
    assert!((g.k * g.theta - m1).abs() <= 1e-12 * m1);
    assert!((g.k * (g.k + 1.0) * g.theta * g.theta - m2).abs() <= 1e-10 * m2);
}

#[test]
fn irs_single_element_statistics_match_goldens() {
    // unit distances give unit means on both hops
    let sc = IrsScenario::new(
        link(2.0, 0.8, 1.5, 4.0),
        link(3.0, 2.1, 3.0, 4.4),
        link(1.0, 5.0, 1.2, 2.8),
        16,
        73.0,
        [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0]],
        4.0,
    )
    .unwrap();
    let m = irs_gamma_params(&sc).unwrap();
    close("irs_mu_half_unit", &[], m.mu_half);
    close("irs_sigma2_unit", &[], m.sigma2);
    assert!((m.k_mom - 16.0 * m.mu_half.powi(2) / m.sigma2).abs() < 1e-12);
}

mod props {
    use fading_core::akmu::FadingParams;
    use fading_core::apps::{secrecy_outage, spsc, SecrecyScenario};
    use fading_core::approx::{fit_beta_prime_ratio, fit_gamma_product};
    use fading_core::prodratio::{product_moment, PairStats};
    use proptest::prelude::*;

    fn params() -> impl Strategy<Value = FadingParams> {
        (0.8..3.0f64, 0.0..6.0f64, 0.6..3.5f64, 0.8..12.0f64, 0.5..2.0f64)
            .prop_map(|(a, k, mu, m, g)| FadingParams::new(a, k, mu, m, g).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn fits_preserve_means(p1 in params(), p2 in params()) {
            let ps = PairStats::new(p1, p2);
            let g = fit_gamma_product(&ps).unwrap();
            let m1 = product_moment(&ps, 1.0).unwrap();
            prop_assert!((g.k * g.theta - m1).abs() <= 1e-10 * m1);
            let b = fit_beta_prime_ratio(&ps).unwrap();
            prop_assert!((b.k1 * b.theta1 - p1.gamma_bar()).abs() <= 1e-10 * p1.gamma_bar());
            prop_assert!((b.k2 * b.theta2 - p2.gamma_bar()).abs() <= 1e-10 * p2.gamma_bar());
        }

        #[test]
        fn spsc_complements_zero_rate_outage(p1 in params(), p2 in params()) {
            let sc = SecrecyScenario::new(p1, p2, 0.0).unwrap();
            let s = spsc(&sc).unwrap().value + secrecy_outage(&sc).unwrap().value;
            prop_assert!((s - 1.0).abs() < 1e-12);
        }
    }
}
