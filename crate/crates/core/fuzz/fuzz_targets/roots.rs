#![no_main]

use libfuzzer_sys::fuzz_target;
use sectorlab::poly::RealPolynomial;
use sectorlab::roots::{find_roots, SolverConfig};

// Coefficients are little-endian f64 words, clamped to a sane range.
fuzz_target!(|data: &[u8]| {
    let coeffs: Vec<f64> = data
        .chunks_exact(8)
        .take(24)
        .map(|w| f64::from_le_bytes(w.try_into().unwrap()))
        .filter(|c| c.is_finite() && c.abs() < 1e6 && (*c == 0.0 || c.abs() > 1e-6))
        .collect();
    let Ok(p) = RealPolynomial::new(coeffs) else { return };
    if p.degree() == 0 {
        return;
    }
    if let Ok(zs) = find_roots(&p.to_complex(), &SolverConfig::default()) {
        let count: usize = zs.zeros().iter().map(|z| z.multiplicity).sum();
        assert_eq!(count, p.degree());
        for z in zs.zeros() {
            assert!(z.location.re.is_finite() && z.location.im.is_finite());
        }
    }
});
