//! Bound-formula orderings and lift residuals of certified equilibria.

use eqlab_core::config::{Configuration, MassPoint};
use eqlab_core::polysys::{
    bezout_bound, build_system_ab, build_system_w, lift_and_residual, mv_formula,
    mv_tilde_formula, rational_points_from_configuration, reference_degrees,
};
use eqlab_core::ring::make_ring;
use eqlab_core::solver::{find_equilibria, SolveOptions};
use num::BigInt;

#[test]
fn bound_orderings_hold_over_the_tabulated_range() {
    for n in 1..=50 {
        assert!(
            bezout_bound(n) >= mv_tilde_formula(n) + 1,
            "Bezout vs mixed volume at n = {n}"
        );
        if n > 3 {
            assert!(mv_tilde_formula(n) < mv_formula(n), "n = {n}");
        } else {
            assert!(mv_tilde_formula(n) >= mv_formula(n), "n = {n}");
        }
    }
}

#[test]
fn observed_counts_never_exceed_any_bound() {
    let opts = SolveOptions::default();
    let cases: Vec<Configuration> = vec![
        Configuration::new(vec![
            MassPoint::new(1.0, 1.0, 1.0),
            MassPoint::new(2.0, 2.0, 1.0),
        ])
        .unwrap(),
        make_ring(4, 1.0, 0.01, 1.0).unwrap(),
        eqlab_core::families::triangle_config(1.0).unwrap(),
    ];
    let degrees = reference_degrees();
    for config in cases {
        let n = config.n();
        let observed = BigInt::from(find_equilibria(&config, &opts).unwrap().len());
        assert!(observed <= bezout_bound(n));
        assert!(observed <= mv_tilde_formula(n) + 1);
        if let Some(degree) = degrees.lookup(n) {
            assert!(observed <= BigInt::from(degree));
        }
    }
}

#[test]
fn certified_equilibria_lift_into_both_systems() {
    let configs = vec![
        Configuration::new(vec![
            MassPoint::new(1.0, 1.0, 1.0),
            MassPoint::new(2.0, 2.0, 1.0),
        ])
        .unwrap(),
        make_ring(4, 1.0, 0.01, 1.0).unwrap(),
        eqlab_core::families::lagrange_config(1.0, 0.25).unwrap(),
    ];
    let opts = SolveOptions::default();
    for config in configs {
        let points = rational_points_from_configuration(&config);
        let w_sys = build_system_w(&points);
        let ab_sys = build_system_ab(&points);
        let equilibria = find_equilibria(&config, &opts).unwrap();
        assert!(!equilibria.is_empty());
        for eq in &equilibria {
            let res_w = lift_and_residual(&w_sys, &config, eq).unwrap();
            let res_ab = lift_and_residual(&ab_sys, &config, eq).unwrap();
            assert!(res_w <= 1e-8, "w residual {res_w:.3e}");
            assert!(res_ab <= 1e-8, "ab residual {res_ab:.3e}");
        }
    }
}
