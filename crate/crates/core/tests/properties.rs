use proptest::prelude::*;

use tight_embed::lp_embed;
use tight_embed::moduli::{
    check_regular, exp_dominate, generalized_inverse, regularize_omega, regularize_rho, Class, Extension, Modulus,
    ModulusCurve,
};
use tight_embed::spaces::fixtures::{random_metric, random_point_set, scaled};
use tight_embed::spaces::Exponent;
use tight_embed::stable_embed::embed_stable;
use tight_embed::verify::{measure_moduli, range_check, Pairing};

fn rho_strategy() -> impl Strategy<Value = ModulusCurve> {
    (prop::collection::vec((0.05f64..4.0, 0.0f64..1.0), 1..6), 0.1f64..0.9).prop_map(|(raw, alpha)| {
        let mut ts: Vec<f64> = raw.iter().map(|(e, _)| 10f64.powf(*e)).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let mut points = vec![(0.0, 0.0), (1.0, 1.0)];
        for (t, (_, u)) in ts.into_iter().zip(&raw) {
            points.push((t, 0.1 + u * (t - 0.1)));
        }
        ModulusCurve::piecewise_linear(points, Extension::Power { alpha: 1.0 }, Extension::Power { alpha }).unwrap()
    })
}

fn omega_strategy() -> impl Strategy<Value = ModulusCurve> {
    (prop::collection::vec((-4.0f64..-0.05, 0.0f64..1.0), 1..6), 0.1f64..0.9).prop_map(|(raw, alpha)| {
        let mut ts: Vec<f64> = raw.iter().map(|(e, _)| 10f64.powf(*e)).collect();
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        let mut points: Vec<(f64, f64)> =
            ts.into_iter().zip(&raw).map(|(t, (_, u))| (t, t + u * (t.powf(0.2) - t))).collect();
        points.push((1.0, 1.0));
        ModulusCurve::piecewise_linear(points, Extension::Power { alpha }, Extension::Power { alpha: 1.0 }).unwrap()
    })
}

fn nodes(c: &ModulusCurve) -> Vec<(f64, f64)> {
    c.as_piecewise_linear().unwrap().points().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn regularized_rho_dominates_and_is_regular(rho in rho_strategy()) {
        let star = regularize_rho(&rho).unwrap();
        check_regular(&star, Class::P).unwrap();
        for (t, v) in nodes(&star) {
            prop_assert!(v >= rho.value(t) * (1.0 - 1e-12));
        }
        let twice = regularize_rho(&star).unwrap();
        for (t, v) in nodes(&star) {
            prop_assert!((twice.value(t) - v).abs() <= 1e-9 * v.max(1.0));
        }
    }

    #[test]
    fn regularized_omega_is_dominated_and_regular(omega in omega_strategy()) {
        let star = regularize_omega(&omega).unwrap();
        check_regular(&star, Class::Omega).unwrap();
        for (t, v) in nodes(&star) {
            prop_assert!(v <= omega.value(t) * (1.0 + 1e-12), "t = {t}: {v} > {}", omega.value(t));
        }
    }

    #[test]
    fn galois_pair_of_dominated_exp_floor(y in -40.0f64..-1e-6, s in -20.0f64..20.0) {
        let mu = exp_dominate(&ModulusCurve::exp_floor()).unwrap();
        let s = 2f64.powf(s);
        let sigma = generalized_inverse(&mu, y).unwrap();
        if mu.value(s) >= y {
            prop_assert!(s >= sigma - 1e-9);
        }
        if sigma <= s {
            prop_assert!(y <= mu.value(s) + 1e-9);
        }
    }

    #[test]
    fn stable_sandwich_on_random_metrics(seed in 0u64..1000, n in 2usize..14, alpha in 0.1f64..0.95) {
        let m = random_metric(n, seed).unwrap();
        let rho = regularize_rho(&ModulusCurve::power_rho(alpha).unwrap()).unwrap();
        let omega = regularize_omega(&ModulusCurve::power_omega(alpha).unwrap()).unwrap();
        let emb = embed_stable(&m, seed as usize % n, &rho, &omega).unwrap();
        let report = emb.verify();
        prop_assert!(report.pass, "{:?}", report.report.failing_rows().next());
    }

    #[test]
    fn lp_sandwich_survives_rescaling(seed in 0u64..1000, scale in -6.0f64..6.0) {
        let phi = ModulusCurve::exp_floor();
        let mu = exp_dominate(&phi).unwrap();
        let points = random_point_set(Exponent::Finite(2.0), 3, 12, seed).unwrap().scaled(2f64.powf(scale)).unwrap();
        let plan = lp_embed::make_plan(&points, &mu, 100.0, 0.06, Exponent::Finite(2.0)).unwrap();
        let emb = lp_embed::embed(&plan, &points).unwrap();
        let report = lp_embed::verify_sandwich(&emb, &points, &mu, 0.06).unwrap();
        prop_assert!(report.pass());
    }

    #[test]
    fn range_pass_bounds_the_profile(seed in 0u64..1000, c in 0.1f64..10.0) {
        let x = random_metric(10, seed).unwrap();
        let y = scaled(&x, c).unwrap();
        let s = x.min_distance();
        let report = range_check(&x, &y, &Pairing::Identity, s, f64::INFINITY, c, 1.0).unwrap();
        prop_assert!(report.pass);
        let profile = measure_moduli(&x, &y, &Pairing::Identity).unwrap();
        prop_assert!(profile.is_monotone());
        for (i, &t) in profile.t.iter().enumerate() {
            prop_assert!(profile.rho_hat[i] >= c * t * (1.0 - 1e-12));
            prop_assert!(profile.omega_hat[i] <= c * t * (1.0 + 1e-12));
        }
    }
}
