#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorlab::io::parse_coefficients;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_coefficients(s) {
            assert!(p.coeffs().iter().all(|c| c.is_finite()));
            assert!(p.degree() == 0 || *p.coeffs().last().unwrap() != 0.0);
        }
    }
});
