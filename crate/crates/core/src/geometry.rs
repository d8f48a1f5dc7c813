//! Sectors, double sectors, strips and Jensen sector-discs.
//!
//! Arguments are principal values in `(−π, π]`. The origin belongs to every
//! sector and every strip. Angle tolerances are applied in angle space.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::roots::ZeroSet;

/// Default tolerance for angle comparisons, in radians.
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("sector half-angle {0} must lie in [0, π/2)")]
    BadHalfAngle(f64),
    #[error("strip half-width {0} must be nonnegative")]
    BadHalfWidth(f64),
    #[error("root parts must be positive (a = {a}, b = {b})")]
    NonpositiveRootPart { a: f64, b: f64 },
    #[error("the sector-disc is empty")]
    EmptyDisc,
    #[error("zero {zero} has |arg| = {angle} >= π/2; no sector S(θ) contains it")]
    NotInRightHalfPlane { zero: Complex64, angle: f64 },
    #[error("cannot measure an empty point set")]
    EmptyInput,
}

/// `S(θ) = {z : |arg z| ≤ θ or z = 0}` with `0 ≤ θ < π/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sector {
    half_angle: f64,
}

impl Sector {
    pub fn new(half_angle: f64) -> Result<Self, GeometryError> {
        if (0.0..FRAC_PI_2).contains(&half_angle) {
            Ok(Sector { half_angle })
        } else {
            Err(GeometryError::BadHalfAngle(half_angle))
        }
    }

    pub fn half_angle(&self) -> f64 {
        self.half_angle
    }
}

/// `σ(A) = {z : |Im z| ≤ A}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Strip {
    half_width: f64,
}

impl Strip {
    pub fn new(half_width: f64) -> Result<Self, GeometryError> {
        if half_width >= 0.0 && half_width.is_finite() {
            Ok(Strip { half_width })
        } else {
            Err(GeometryError::BadHalfWidth(half_width))
        }
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        z.im.abs() <= self.half_width + tol
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: f64,
    pub radius: f64,
}

/// Jensen sector-disc `Δ(a, b; α)` for the zero `a + ib`.
///
/// `alpha` is stored as its reference angle in `[0, π]`. When
/// `|sec α| ≥ sec θ` (with `θ = arg(a + ib)`) the disc is empty and
/// `circle` is `None`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SectorDisc {
    pub a: f64,
    pub b: f64,
    pub alpha: f64,
    pub circle: Option<Circle>,
}

impl SectorDisc {
    pub fn is_empty(&self) -> bool {
        self.circle.is_none()
    }

    /// `θ = arg(a + ib)` of the generating zero.
    pub fn root_angle(&self) -> f64 {
        self.b.atan2(self.a)
    }
}

/// Reduces an arbitrary real angle to its reference value in `[0, π]`:
/// modulo 2π, then reflected about the real axis.
pub fn reference_angle(alpha: f64) -> f64 {
    let r = alpha.rem_euclid(TAU);
    if r > PI {
        TAU - r
    } else {
        r
    }
}

pub fn jensen_sector_disc(a: f64, b: f64, alpha: f64) -> Result<SectorDisc, GeometryError> {
    if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(GeometryError::NonpositiveRootPart { a, b });
    }
    let alpha = reference_angle(alpha);
    let modulus_sq = a * a + b * b;
    let cos_theta = a / modulus_sq.sqrt();
    let cos_alpha = alpha.cos();
    // |sec α| ≥ sec θ  ⇔  |cos α| ≤ cos θ
    let circle = if cos_alpha.abs() <= cos_theta {
        None
    } else {
        let center = cos_alpha * modulus_sq / a;
        let radius = (center * center - modulus_sq).max(0.0).sqrt();
        Some(Circle { center, radius })
    };
    Ok(SectorDisc { a, b, alpha, circle })
}

/// Tangency data of a nonempty disc: the rays `arg z = ±γ` with
/// `cos γ = cos θ sec α` touch the disc on the circle `|z| = |a + ib|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tangency {
    pub gamma: f64,
    pub modulus: f64,
}

pub fn disc_tangency_data(disc: &SectorDisc) -> Result<Tangency, GeometryError> {
    let circle = disc.circle.ok_or(GeometryError::EmptyDisc)?;
    let modulus = disc.a.hypot(disc.b);
    let cos_theta = disc.a / modulus;
    let gamma = (cos_theta / disc.alpha.cos()).clamp(-1.0, 1.0).acos();
    // distance from the center to the ray arg z = γ equals the radius
    debug_assert!(
        ((circle.center * gamma.sin()).abs() - circle.radius).abs() <= 1e-9 * circle.radius.max(circle.center.abs()),
        "tangency identity failed for {disc:?}"
    );
    Ok(Tangency { gamma, modulus })
}

pub fn in_sector(z: Complex64, s: Sector, tol: f64) -> bool {
    (z.re == 0.0 && z.im == 0.0) || z.arg().abs() <= s.half_angle + tol
}

/// `±S(θ)`: `z ∈ S(θ)` or `−z ∈ S(θ)`.
pub fn in_double_sector(z: Complex64, s: Sector, tol: f64) -> bool {
    in_sector(z, s, tol) || in_sector(-z, s, tol)
}

pub fn in_disc(z: Complex64, disc: &SectorDisc, tol: f64) -> bool {
    match disc.circle {
        None => false,
        Some(c) => (z - Complex64::new(c.center, 0.0)).norm() <= c.radius + tol * z.norm().max(1.0),
    }
}

fn is_origin(z: Complex64) -> bool {
    z.re == 0.0 && z.im == 0.0
}

/// Smallest θ with every listed point in `S(θ)`; points at the origin are
/// ignored. Fails when some point has `|arg| ≥ π/2`.
pub fn enclosing_sector_of(points: &[Complex64]) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    let mut theta: f64 = 0.0;
    for &z in points.iter().filter(|z| !is_origin(**z)) {
        let angle = z.arg().abs();
        if angle >= FRAC_PI_2 {
            return Err(GeometryError::NotInRightHalfPlane { zero: z, angle });
        }
        theta = theta.max(angle);
    }
    Ok(theta)
}

pub fn min_enclosing_sector(zs: &ZeroSet) -> Result<f64, GeometryError> {
    let points: Vec<Complex64> = zs.zeros().iter().map(|z| z.location).collect();
    enclosing_sector_of(&points)
}

/// `min(|arg z|, |arg(−z)|)`, always in `[0, π/2]`.
pub fn folded_angle(z: Complex64) -> f64 {
    let a = z.arg().abs();
    a.min(PI - a)
}

pub fn enclosing_double_sector_of(points: &[Complex64]) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    Ok(points
        .iter()
        .filter(|z| !is_origin(**z))
        .map(|&z| folded_angle(z))
        .fold(0.0, f64::max))
}

pub fn min_enclosing_double_sector(zs: &ZeroSet) -> Result<f64, GeometryError> {
    let points: Vec<Complex64> = zs.zeros().iter().map(|z| z.location).collect();
    enclosing_double_sector_of(&points)
}

/// `max |Im z|`.
pub fn min_enclosing_strip(points: &[Complex64]) -> Result<f64, GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    Ok(points.iter().fold(0.0, |m, z| m.max(z.im.abs())))
}
