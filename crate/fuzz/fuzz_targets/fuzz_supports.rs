//! The support-set text parser must never panic, and parse/emit must be a
//! proper round trip on accepted inputs.

#![no_main]

use libfuzzer_sys::fuzz_target;

use eqlab_core::polysys::SupportSet;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(set) = SupportSet::parse(text) {
            for eq in &set.per_equation {
                assert!(!eq.is_empty());
            }
            let emitted = set.to_text();
            let reparsed = SupportSet::parse(&emitted).expect("emitted form must reparse");
            assert_eq!(reparsed, set);
        }
    }
});
