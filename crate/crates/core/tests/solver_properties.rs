//! Morse-theoretic identities, determinism, and symmetry closure of the
//! solver output.

use eqlab_core::config::{Configuration, MassPoint};
use eqlab_core::ring::make_ring;
use eqlab_core::solver::{find_equilibria, morse_report, SolveOptions};
use eqlab_oracle::random_configuration;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn morse_identities_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let opts = SolveOptions::default();
    let mut checked = 0;
    while checked < 12 {
        let n = 1 + rng.gen_range(0..4);
        let config = random_configuration(&mut rng, n, 0.3);
        let equilibria = find_equilibria(&config, &opts).unwrap();
        let report = morse_report(&equilibria, n);
        if report.degenerate_found {
            continue;
        }
        checked += 1;
        assert!(report.lower_bound_ok, "N = {} for n = {n}", report.total);
        assert!(report.euler_ok, "counts {:?} for n = {n}", report.counts);
        assert!(report.weak_morse_ok, "counts {:?} for n = {n}", report.counts);
        assert_eq!(report.betti, (1, n));
    }
}

#[test]
fn output_is_deterministic_and_sorted() {
    let config = make_ring(5, 2.0, 0.5, 1.0).unwrap();
    let opts = SolveOptions::default();
    let a = find_equilibria(&config, &opts).unwrap();
    let b = find_equilibria(&config, &opts).unwrap();
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert_eq!(x.location, y.location, "bitwise determinism");
        assert_eq!(x.residual, y.residual);
        assert_eq!(x.morse_index, y.morse_index);
    }
}

#[test]
fn equilibrium_set_closed_under_configuration_symmetry() {
    // the 4-spoke ring is invariant under quarter turns
    let config = make_ring(5, 2.0, 0.5, 1.0).unwrap();
    let equilibria = find_equilibria(&config, &SolveOptions::default()).unwrap();
    assert!(!equilibria.is_empty());
    let theta = std::f64::consts::PI / 2.0;
    for eq in &equilibria {
        let rotated = eq.location.rotated(theta);
        assert!(
            equilibria
                .iter()
                .any(|other| other.location.distance(rotated) <= 1e-8),
            "missing rotated partner of {:?}",
            eq.location
        );
    }
}

#[test]
fn residuals_meet_the_certificate_tolerance() {
    let config = Configuration::new(vec![
        MassPoint::new(0.4, -0.1, 1.2),
        MassPoint::new(-0.6, 0.5, 0.7),
        MassPoint::new(0.1, 0.8, 1.9),
    ])
    .unwrap();
    let equilibria = find_equilibria(&config, &SolveOptions::default()).unwrap();
    assert!(!equilibria.is_empty());
    for eq in &equilibria {
        assert!(eq.residual <= 1e-10 * config.scale());
        assert!(eq.min_mass_distance > 0.0);
    }
}
