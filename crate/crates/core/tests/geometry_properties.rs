use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;
use sectorlab::analysis::jsd_modulus_identity_sides;
use sectorlab::geometry::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn tangency_points_lie_on_the_circle(a in 0.1f64..10.0, b in 0.1f64..10.0, alpha in 0.0f64..PI) {
        let disc = jensen_sector_disc(a, b, alpha).unwrap();
        if let Some(c) = disc.circle {
            let t = disc_tangency_data(&disc).unwrap();
            prop_assert!((t.modulus - a.hypot(b)).abs() <= 1e-12 * t.modulus);
            for sign in [1.0, -1.0] {
                let p = Complex64::from_polar(t.modulus, sign * t.gamma);
                let dist = (p - c.center).norm();
                // Relative to the disc's scale: r alone vanishes as the disc empties.
                prop_assert!((dist - c.radius).abs() <= 1e-12 * c.center.abs().max(t.modulus), "dist {dist} r {}", c.radius);
            }
        }
    }

    #[test]
    fn gamma_decreases_with_alpha(a in 0.1f64..10.0, b in 0.1f64..10.0, s in 0.0f64..1.0, t in 0.0f64..1.0) {
        let theta = b.atan2(a);
        let (lo, hi) = if s < t { (s, t) } else { (t, s) };
        let (d1, d2) = (jensen_sector_disc(a, b, lo * theta).unwrap(), jensen_sector_disc(a, b, hi * theta).unwrap());
        if let (Ok(g1), Ok(g2)) = (disc_tangency_data(&d1), disc_tangency_data(&d2)) {
            prop_assert!(g1.gamma >= g2.gamma - 1e-12);
            prop_assert!(g1.gamma <= theta + 1e-12);
        }
    }

    #[test]
    fn disc_empties_beyond_the_zero_angle(a in 0.1f64..10.0, b in 0.1f64..10.0, frac in 1.001f64..3.0) {
        let theta = b.atan2(a);
        let alpha = frac * theta;
        prop_assume!(alpha <= PI - theta);
        prop_assert!(jensen_sector_disc(a, b, alpha).unwrap().is_empty());
        // Past π − θ the reference angle gives |cos α| > cos θ again.
        let obtuse = jensen_sector_disc(a, b, PI - theta / frac).unwrap();
        prop_assert!(obtuse.circle.is_some_and(|c| c.center < 0.0));
    }

    #[test]
    fn membership_matches_identity_sign(
        a in 0.1f64..10.0, b in 0.1f64..10.0, alpha in 0.0f64..PI,
        m in 0.1f64..10.0, arg in 0.0f64..PI,
    ) {
        let z = Complex64::from_polar(m, arg);
        let (_, rhs) = jsd_modulus_identity_sides(a, b, alpha, z);
        prop_assume!(rhs.abs() > 1e-10);
        let disc = jensen_sector_disc(a, b, alpha).unwrap();
        prop_assert_eq!(rhs < 0.0, in_disc(z, &disc, 0.0));
    }

    #[test]
    fn reference_angle_is_folded(alpha in -20.0f64..20.0) {
        let r = reference_angle(alpha);
        prop_assert!((0.0..=PI).contains(&r));
        prop_assert!((r.cos() - alpha.cos()).abs() < 1e-12);
    }

    #[test]
    fn enclosing_sector_contains_every_point(pts in prop::collection::vec((0.01f64..10.0, -1.5f64..1.5), 1..10)) {
        let zs: Vec<Complex64> = pts.iter().map(|&(m, a)| Complex64::from_polar(m, a)).collect();
        let theta = enclosing_sector_of(&zs).unwrap();
        prop_assert!(theta < FRAC_PI_2);
        let s = Sector::new(theta).unwrap();
        for z in &zs {
            prop_assert!(in_sector(*z, s, 1e-12));
            prop_assert!(in_double_sector(-*z, s, 1e-12));
        }
        prop_assert!(enclosing_double_sector_of(&zs).unwrap() <= theta);
    }
}
