//! The configuration JSON parser must never panic, whatever the bytes.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        // errors are fine, panics are not; a parsed configuration must
        // satisfy the validated invariants
        if let Ok(config) = eqlab_core::Configuration::from_json_str(text) {
            assert!(config.n() >= 1);
            assert!(config.min_mass() > 0.0);
            assert!(config.scale() >= 1.0);
            // exact-rational re-read of the same text must agree on arity
            if let Ok(points) = eqlab_core::polysys::rational_points_from_json(text) {
                assert_eq!(points.len(), config.n());
            }
        }
    }
});
