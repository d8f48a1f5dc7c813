//! Necessary conditions, the double-sector obstruction, the modulus identity
//! behind the sector-disc theorem, and randomized verification campaigns.

mod campaign;
mod generate;
mod rn;

use std::f64::consts::FRAC_PI_4;

use num_complex::{Complex, Complex64};
use thiserror::Error;
use twofloat::TwoFloat;

use crate::geometry::{min_enclosing_double_sector, GeometryError};
use crate::operators::{apply_sequence, MultiplierSequence, OperatorError};
use crate::poly::{PolyError, RealPolynomial};
use crate::roots::{find_roots, RootError, SolverConfig};

pub use campaign::{
    search_counterexample, verify_theorem, verify_theorem_with, CampaignParams, Counterexample, DoubleSectorOutcome,
    SearchFamily, SearchProbe, TheoremId, VerificationReport,
};
pub use generate::{GeneratedPoly, PolyGenSpec};
pub use rn::{rn_profile, RnProfile, RnVerdict, TailTrend};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error("γ_{index} = 0 leaves r_{n} undefined", n = index - 1)]
    ZeroInteriorTerm { index: usize },
    #[error("window must be at least 3, got {0}")]
    WindowTooSmall(usize),
    #[error("γ_{0} = 0: the transformed three-term polynomial loses its quadratic part")]
    DegenerateLeading(usize),
    #[error("γ_0 γ_4 = {product} < 0: the zeros of 4γ_0 + γ_4 z^4 move onto the axes")]
    SignFlip { product: f64 },
    #[error("γ_0 and γ_4 must be nonzero")]
    ZeroEndTerm,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("invalid campaign: {0}")]
    InvalidCampaign(String),
    #[error(transparent)]
    Operator(#[from] OperatorError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Nonzero zeros of `T[x^{n+2} − b x^{n+1} + c x^n]` and the quotient `r_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeTerm {
    pub roots: [Complex64; 2],
    /// `None` when `γ_{n+1} = 0`.
    pub r_n: Option<f64>,
}

/// Roots of `γ_{n+2} x² − γ_{n+1} b x + γ_n c`.
pub fn three_term_transformed_roots(n: usize, b: f64, c: f64, ms: &MultiplierSequence) -> Result<ThreeTerm, AnalysisError> {
    ms.validate()?;
    let g = ms.terms(n + 2)?;
    let (g0, g1, g2) = (g[n], g[n + 1], g[n + 2]);
    if g2 == 0.0 {
        return Err(AnalysisError::DegenerateLeading(n + 2));
    }
    let r_n = (g1 != 0.0).then(|| g0 * g2 / (g1 * g1));
    let (qa, qb, qc) = (g2, -g1 * b, g0 * c);
    let disc = qb * qb - 4.0 * qa * qc;
    let roots = if disc >= 0.0 {
        let q = -0.5 * (qb + qb.signum() * disc.sqrt());
        if q == 0.0 {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            let (x1, x2) = (q / qa, qc / q);
            let (hi, lo) = if x1 >= x2 { (x1, x2) } else { (x2, x1) };
            [Complex64::new(hi, 0.0), Complex64::new(lo, 0.0)]
        }
    } else {
        let re = -qb / (2.0 * qa);
        let im = ((-disc).sqrt() / (2.0 * qa)).abs();
        [Complex64::new(re, im), Complex64::new(re, -im)]
    };
    Ok(ThreeTerm { roots, r_n })
}

/// Relative residual of
/// `|(e^{iα}z−a)²+b²|² − |(e^{−iα}z−a)²+b²|² = 8y sin α [a(a²+b²+x²+y²) − 2x(a²+b²) cos α]`,
/// both sides evaluated directly.
pub fn jsd_modulus_identity_check(a: f64, b: f64, alpha: f64, z: Complex64) -> f64 {
    let (lhs, rhs) = jsd_modulus_identity_sides(a, b, alpha, z);
    (lhs - rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs())
}

/// `(LHS, RHS)` of the identity in [`jsd_modulus_identity_check`].
///
/// Both sides cancel heavily near the disc boundary, so they are evaluated in
/// double-double arithmetic and rounded once at the end.
pub fn jsd_modulus_identity_sides(a: f64, b: f64, alpha: f64, z: Complex64) -> (f64, f64) {
    type Dd = TwoFloat;
    let (sin, cos) = (Dd::from(alpha.sin()), Dd::from(alpha.cos()));
    let (a, b) = (Dd::from(a), Dd::from(b));
    let (x, y) = (Dd::from(z.re), Dd::from(z.im));
    let zz = Complex::new(x, y);
    let factor = |rot: Complex<Dd>| {
        let s = rot * zz - Complex::new(a, Dd::from(0.0));
        s * s + Complex::new(b * b, Dd::from(0.0))
    };
    let lhs = factor(Complex::new(cos, sin)).norm_sqr() - factor(Complex::new(cos, -sin)).norm_sqr();
    let m = a * a + b * b;
    let rhs = Dd::from(8.0) * y * sin * (a * (m + x * x + y * y) - Dd::from(2.0) * x * m * cos);
    (lhs.hi() + lhs.lo(), rhs.hi() + rhs.lo())
}

/// Sector angles of `4 + z^4` before and after a diagonal operator, measured
/// with double sectors.
pub fn double_sector_demo(ms: &MultiplierSequence, cfg: &SolverConfig) -> Result<(f64, f64), AnalysisError> {
    let p = RealPolynomial::new(vec![4.0, 0.0, 0.0, 0.0, 1.0])?;
    let g = ms.terms(4)?;
    if g[0] == 0.0 || g[4] == 0.0 {
        return Err(AnalysisError::ZeroEndTerm);
    }
    if g[0] * g[4] < 0.0 {
        return Err(AnalysisError::SignFlip { product: g[0] * g[4] });
    }
    let before = min_enclosing_double_sector(&find_roots(&p.to_complex(), cfg)?)?;
    let t = apply_sequence(&p, ms)?;
    let after = min_enclosing_double_sector(&find_roots(&t.poly.to_complex(), cfg)?)?;
    debug_assert!((before - FRAC_PI_4).abs() < 1e-12);
    Ok((before, after))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_8, PI, SQRT_2};

    #[test]
    fn three_term_gauss_example() {
        let ms = MultiplierSequence::Gauss { alpha: 2f64.ln().sqrt() };
        let t = three_term_transformed_roots(0, 3.0, 2.0, &ms).unwrap();
        assert!((t.r_n.unwrap() - 0.5).abs() < 1e-15);
        // 2^{3/2} (3 ± √(9 − 4)) / 2
        let hi = SQRT_2 * (3.0 + 5f64.sqrt());
        let lo = SQRT_2 * (3.0 - 5f64.sqrt());
        assert!((t.roots[0].re - hi).abs() < 1e-13 && t.roots[0].im == 0.0);
        assert!((t.roots[1].re - lo).abs() < 1e-13 && t.roots[1].im == 0.0);
        assert!((hi - 7.404_918_347_287_665).abs() < 1e-12);
        assert!((lo - 1.080_363_026_950_905_7).abs() < 1e-12);
    }

    #[test]
    fn three_term_identity_double_root() {
        let ms = MultiplierSequence::Explicit { values: vec![1.0; 3] };
        let t = three_term_transformed_roots(0, 2.0, 1.0, &ms).unwrap();
        assert_eq!(t.r_n, Some(1.0));
        assert_eq!(t.roots, [Complex64::new(1.0, 0.0); 2]);
    }

    #[test]
    fn three_term_becomes_real() {
        let ms = MultiplierSequence::Gauss { alpha: 0.7 };
        let t = three_term_transformed_roots(0, 2.0, 1.5, &ms).unwrap();
        assert!(t.r_n.unwrap() < 2.0 / 3.0);
        assert!(t.roots.iter().all(|z| z.im == 0.0 && z.re > 0.0));
        let orig = three_term_transformed_roots(0, 2.0, 1.5, &MultiplierSequence::Explicit { values: vec![1.0; 3] }).unwrap();
        assert!(orig.roots[0].im != 0.0);
    }

    #[test]
    fn three_term_degenerate_leading() {
        let ms = MultiplierSequence::Explicit { values: vec![1.0, 1.0, 0.0] };
        assert_eq!(three_term_transformed_roots(0, 1.0, 1.0, &ms), Err(AnalysisError::DegenerateLeading(2)));
    }

    #[test]
    fn identity_examples() {
        assert!(jsd_modulus_identity_check(1.0, 1.0, FRAC_PI_8, Complex64::new(1.0, 2.0)) < 1e-12);
        let (l, r) = jsd_modulus_identity_sides(1.3, 0.4, 0.9, Complex64::new(2.5, 0.0));
        assert!(l.abs() < 1e-12 && r == 0.0);
        let (l, r) = jsd_modulus_identity_sides(1.3, 0.4, 0.0, Complex64::new(2.5, -1.0));
        assert!(l == 0.0 && r == 0.0);
    }

    #[test]
    fn double_sector_examples() {
        let cfg = SolverConfig::default();
        for ms in [
            MultiplierSequence::Explicit { values: vec![1.0; 5] },
            MultiplierSequence::Gauss { alpha: 0.5 },
            MultiplierSequence::LaguerreQ { q: 0.5 },
        ] {
            let (before, after) = double_sector_demo(&ms, &cfg).unwrap();
            assert!((before - FRAC_PI_4).abs() < 1e-12);
            assert!((after - FRAC_PI_4).abs() < 1e-12, "{ms:?}: {after}");
        }
        let flip = MultiplierSequence::CosineAffine { lambda: 0.0, theta: PI / 4.0 };
        assert!(matches!(double_sector_demo(&flip, &cfg), Err(AnalysisError::SignFlip { .. })));
    }

    #[test]
    fn double_sector_modulus() {
        let ms = MultiplierSequence::Gauss { alpha: 0.5 };
        let t = apply_sequence(&RealPolynomial::new(vec![4.0, 0.0, 0.0, 0.0, 1.0]).unwrap(), &ms).unwrap();
        let zs = find_roots(&t.poly.to_complex(), &SolverConfig::default()).unwrap();
        for z in zs.zeros() {
            assert!((z.location.norm() - 2.331_643_981_597_124_6).abs() < 1e-12);
        }
    }
}
