#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorlab::io::{parse_poly_document, write_poly_document};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = parse_poly_document(s) {
            let again = parse_poly_document(&write_poly_document(&p)).expect("written documents parse");
            assert_eq!(again, p);
        }
    }
});
