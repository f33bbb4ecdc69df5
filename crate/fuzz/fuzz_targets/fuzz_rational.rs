//! Rational-literal parsing (`p/q` or decimal) must never panic, and every
//! accepted literal must survive a print/parse round trip.

#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(value) = eqlab_core::polysys::parse_rational_str(text) {
            let printed = value.to_string();
            let reparsed = eqlab_core::polysys::parse_rational_str(&printed)
                .expect("canonical form must reparse");
            assert_eq!(reparsed, value);
        }
    }
});
