use proptest::prelude::*;

use excursion::montecarlo::{straddle_exact_one, EulerStep};
use excursion::numerics::{gamma_ln, RandomStream};
use excursion::{Diffusion, InverseLocalTime, Model, StraddleLaw};

fn model(gamma: f64, brownian: bool) -> Model {
    if brownian {
        Model::bm()
    } else {
        Model::ou(gamma).unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn phi_is_increasing_and_concave(gamma in 0.1f64..5.0, bm: bool, l in 0.1f64..10.0, h in 0.01f64..2.0) {
        let m = model(gamma, bm);
        let (a, b, c) = (m.phi(l).unwrap(), m.phi(l + h).unwrap(), m.phi(l + 2.0 * h).unwrap());
        prop_assert!(b > a);
        prop_assert!(b >= 0.5 * (a + c) * (1.0 - 1e-12));
    }

    #[test]
    fn transform_factorization(gamma in 0.1f64..5.0, bm: bool, alpha in 0.05f64..5.0, g1 in 0.0f64..5.0, g2 in 0.0f64..5.0) {
        let law = StraddleLaw::new(model(gamma, bm), alpha).unwrap();
        let lhs = law.laplace_gd(g1, g2).unwrap();
        let rhs = law.laplace_gd(g1 + g2, 0.0).unwrap() * law.laplace_delta(g2).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12);
        prop_assert!(lhs > 0.0 && lhs <= 1.0 + 1e-15);
    }

    #[test]
    fn killed_density_is_symmetric_and_dominated(gamma in 0.1f64..3.0, bm: bool, t in 0.05f64..4.0, x in 0.01f64..3.0, y in 0.01f64..3.0) {
        let m = model(gamma, bm);
        let pxy = m.phat(t, x, y).unwrap();
        let pyx = m.phat(t, y, x).unwrap();
        prop_assert!((pxy - pyx).abs() <= 1e-12 * pxy.max(1e-300) + 1e-300);
        prop_assert!(pxy >= 0.0);
        prop_assert!(pxy <= m.transition_density(t, x, y).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn scale_is_increasing_with_pole_drift(gamma in 0.1f64..5.0, bm: bool, x in 1e-3f64..3.0, h in 1e-3f64..1.0) {
        let m = model(gamma, bm);
        prop_assert!(m.scale(x + h).unwrap() > m.scale(x).unwrap());
        let small = 1e-6;
        prop_assert!((small * m.upward_drift(small).unwrap() - 1.0).abs() < 1e-6);
    }

    #[test]
    fn straddle_density_and_cdf_are_consistent(gamma in 0.2f64..3.0, alpha in 0.2f64..3.0, a in 0.05f64..4.0) {
        let law = StraddleLaw::new(Model::ou(gamma).unwrap(), alpha).unwrap();
        prop_assert!(law.density_delta(a).unwrap() > 0.0);
        let c1 = law.cdf_delta(a).unwrap();
        let c2 = law.cdf_delta(a * 1.5).unwrap();
        prop_assert!(c1 > 0.0 && c1 < c2 && c2 <= 1.0);
        let cond = law.cond_tg_given_delta(0.5 * a, a).unwrap();
        prop_assert!(cond > 0.0);
    }

    #[test]
    fn gamma_duplication(x in 0.25f64..10.0) {
        let lhs = gamma_ln(x).unwrap() + gamma_ln(x + 0.5).unwrap();
        let rhs = (1.0 - 2.0 * x) * 2f64.ln() + 0.5 * std::f64::consts::PI.ln() + gamma_ln(2.0 * x).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0));
    }

    #[test]
    fn exact_draws_are_ordered(seed: u64, stream in 0u64..1000, gamma in 0.0f64..5.0, alpha in 0.01f64..10.0) {
        let mut rng = RandomStream::new(seed, stream);
        for _ in 0..50 {
            let [g, tg, dt] = straddle_exact_one(&mut rng, gamma, alpha);
            prop_assert!(g >= 0.0 && tg >= 0.0 && dt > 0.0);
            prop_assert!(g.is_finite() && tg.is_finite() && dt.is_finite());
        }
    }

    #[test]
    fn euler_steps_stay_nonnegative(gamma in 0.0f64..5.0, x in 0.0f64..5.0, z in -10.0f64..10.0) {
        let s = EulerStep::new(gamma, 1e-4).unwrap();
        prop_assert!(s.step(x, z) >= 0.0);
    }
}
