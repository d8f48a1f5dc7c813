#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorlab::io::{format_operator, parse_operator};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(ms) = parse_operator(s) {
            assert_eq!(parse_operator(&format_operator(&ms)).expect("formatted specs parse"), ms);
            let _ = ms.terms(16);
        }
    }
});
