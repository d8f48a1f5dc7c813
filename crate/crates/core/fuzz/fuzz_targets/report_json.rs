#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorlab::analysis::VerificationReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<VerificationReport>(data) {
        let again: VerificationReport = serde_json::from_str(&report.to_json()).expect("reports reparse");
        assert_eq!(again, report);
    }
});
