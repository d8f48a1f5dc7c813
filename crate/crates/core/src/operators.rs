//! Zero-location-transforming operators.
//!
//! Diagonal operators `T[z^k] = γ_k z^k` are described by
//! [`MultiplierSequence`]; the rotation blend
//! `f(z) = e^{iλ} p(e^{iα} z) + e^{iβ} p(e^{−iα} z)` is [`rotation_blend`].
//! The `predicted_*` functions evaluate the sector and strip bounds on their
//! own so that measured and predicted values can be compared.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{ComplexPolynomial, PolyError, RealPolynomial};
use crate::roots::{find_roots, RootError, SolverConfig};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OperatorError {
    #[error("hypothesis violated: α·n/N = {value} must be < π/2")]
    HypothesisViolation { value: f64 },
    #[error("the operator annihilates the polynomial")]
    DegenerateSequence,
    #[error("explicit sequence has {len} terms but degree {degree} needs {needed}", needed = degree + 1)]
    SequenceTooShort { len: usize, degree: usize },
    #[error("invalid sequence parameter: {0}")]
    BadParameter(String),
    #[error("cos(α/N)^(N²) needs |α/N| < π/2, got α/N = {0}")]
    DomainError(f64),
    #[error("zero {0} is outside the open right half-plane")]
    ZeroOutsideRightHalfPlane(Complex64),
    #[error("p(0) = 0; the exponential polynomial needs a nonzero constant term")]
    ZeroAtOrigin,
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A diagonal operator given by a named family of multipliers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum MultiplierSequence {
    /// `γ_k = exp(−α² k² / 2)`
    Gauss { alpha: f64 },
    /// `γ_k = cos(α k / N)`
    CosineStep { alpha: f64, n: u32 },
    /// `γ_k = cos(λ + k θ)`
    CosineAffine { lambda: f64, theta: f64 },
    /// `γ_k = q^{k²}`
    LaguerreQ { q: f64 },
    /// `γ_k = exp(−α k^p)`
    ExpPower { alpha: f64, p: f64 },
    Explicit { values: Vec<f64> },
}

/// `cos x` with arguments that are multiples of π/2 up to rounding mapped to
/// an exact zero.
fn snapped_cos(x: f64) -> f64 {
    let v = x.cos();
    if v.abs() <= 8.0 * f64::EPSILON * x.abs().max(1.0) {
        0.0
    } else {
        v
    }
}

impl MultiplierSequence {
    pub fn validate(&self) -> Result<(), OperatorError> {
        let finite = |name: &str, v: f64| {
            if v.is_finite() {
                Ok(())
            } else {
                Err(OperatorError::BadParameter(format!("{name} must be finite")))
            }
        };
        match *self {
            MultiplierSequence::Gauss { alpha } => finite("alpha", alpha),
            MultiplierSequence::CosineStep { alpha, n } => {
                finite("alpha", alpha)?;
                if n == 0 {
                    return Err(OperatorError::BadParameter("N must be a positive integer".into()));
                }
                Ok(())
            }
            MultiplierSequence::CosineAffine { lambda, theta } => {
                finite("lambda", lambda)?;
                finite("theta", theta)
            }
            MultiplierSequence::LaguerreQ { q } => {
                if q > -1.0 && q < 1.0 {
                    Ok(())
                } else {
                    Err(OperatorError::BadParameter(format!("q = {q} must lie in (-1, 1)")))
                }
            }
            MultiplierSequence::ExpPower { alpha, p } => {
                if alpha > 0.0 && p > 0.0 && alpha.is_finite() && p.is_finite() {
                    Ok(())
                } else {
                    Err(OperatorError::BadParameter("exppower needs alpha > 0 and p > 0".into()))
                }
            }
            MultiplierSequence::Explicit { ref values } => {
                if values.is_empty() {
                    return Err(OperatorError::BadParameter("explicit sequence is empty".into()));
                }
                values.iter().try_for_each(|&v| finite("explicit term", v))
            }
        }
    }

    /// `γ_k`, or `None` past the end of an explicit sequence.
    pub fn term(&self, k: usize) -> Option<f64> {
        let kf = k as f64;
        Some(match *self {
            MultiplierSequence::Gauss { alpha } => (-alpha * alpha * kf * kf / 2.0).exp(),
            MultiplierSequence::CosineStep { alpha, n } => snapped_cos(alpha * kf / f64::from(n)),
            MultiplierSequence::CosineAffine { lambda, theta } => snapped_cos(lambda + kf * theta),
            MultiplierSequence::LaguerreQ { q } => {
                if q == 0.0 {
                    if k == 0 {
                        1.0
                    } else {
                        0.0
                    }
                } else {
                    // sign(q)^{k²} = sign(q)^k
                    let sign = if q < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                    sign * (kf * kf * q.abs().ln()).exp()
                }
            }
            MultiplierSequence::ExpPower { alpha, p } => (-alpha * kf.powf(p)).exp(),
            MultiplierSequence::Explicit { ref values } => return values.get(k).copied(),
        })
    }

    /// `γ_0, …, γ_degree`.
    pub fn terms(&self, degree: usize) -> Result<Vec<f64>, OperatorError> {
        (0..=degree)
            .map(|k| {
                self.term(k).ok_or_else(|| match self {
                    MultiplierSequence::Explicit { values } => OperatorError::SequenceTooShort {
                        len: values.len(),
                        degree,
                    },
                    _ => unreachable!("only explicit sequences are finite"),
                })
            })
            .collect()
    }

    /// `ln γ_n + ln γ_{n+2} − 2 ln γ_{n+1}` where the family has a closed
    /// form, computed without cancellation. `None` means "use the terms".
    pub(crate) fn log_second_difference(&self, n: usize) -> Option<f64> {
        match *self {
            // second difference of k² is exactly 2
            MultiplierSequence::Gauss { alpha } => Some(-alpha * alpha),
            MultiplierSequence::LaguerreQ { q } if q > 0.0 => Some(2.0 * q.ln()),
            MultiplierSequence::ExpPower { alpha, p } => Some(-alpha * power_second_difference(n, p)),
            _ => None,
        }
    }

    pub fn short_name(&self) -> &'static str {
        match self {
            MultiplierSequence::Gauss { .. } => "gauss",
            MultiplierSequence::CosineStep { .. } => "cosstep",
            MultiplierSequence::CosineAffine { .. } => "cosaffine",
            MultiplierSequence::LaguerreQ { .. } => "laguerre",
            MultiplierSequence::ExpPower { .. } => "exppower",
            MultiplierSequence::Explicit { .. } => "explicit",
        }
    }
}

/// `(n+2)^p − 2(n+1)^p + n^p`.
fn power_second_difference(n: usize, p: f64) -> f64 {
    if p == 1.0 {
        return 0.0;
    }
    if p == 2.0 {
        return 2.0;
    }
    if n == 0 {
        return 2f64.powf(p) - 2.0;
    }
    let nf = n as f64;
    // n^p [((1+2/n)^p − 1) − 2((1+1/n)^p − 1)] keeps the small terms exact
    let grow = |x: f64| (p * x.ln_1p()).exp_m1();
    nf.powf(p) * (grow(2.0 / nf) - 2.0 * grow(1.0 / nf))
}

/// Parameters of `f(z) = e^{iλ} p(e^{iα} z) + e^{iβ} p(e^{−iα} z)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlendParams {
    pub alpha: f64,
    pub lambda: f64,
    pub beta: f64,
}

/// Result of an operator that may lower the degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Transformed<P> {
    pub poly: P,
    pub original_degree: usize,
}

impl<P> Transformed<P> {
    pub fn degree_drop(&self) -> usize
    where
        P: Degree,
    {
        self.original_degree - self.poly.degree()
    }
}

pub trait Degree {
    fn degree(&self) -> usize;
}

impl Degree for RealPolynomial {
    fn degree(&self) -> usize {
        RealPolynomial::degree(self)
    }
}

impl Degree for ComplexPolynomial {
    fn degree(&self) -> usize {
        ComplexPolynomial::degree(self)
    }
}

/// A rotation blend together with its real form.
///
/// Every blend coefficient equals `2 e^{i(λ+β)/2} cos((λ−β)/2 + kα) c_k`, so
/// `f = e^{iφ} g` with `g` real and `φ = (λ+β)/2`. `real_form` is `g`,
/// computed from that closed form; `f` itself is left complex.
#[derive(Debug, Clone, PartialEq)]
pub struct Blend {
    pub poly: ComplexPolynomial,
    pub original_degree: usize,
    pub phase: f64,
    pub real_form: RealPolynomial,
}

impl Blend {
    pub fn degree_drop(&self) -> usize {
        self.original_degree - self.poly.degree()
    }
}

pub fn rotation_blend(p: &RealPolynomial, bp: BlendParams) -> Result<Blend, OperatorError> {
    let BlendParams { alpha, lambda, beta } = bp;
    let half_gap = (lambda - beta) / 2.0;
    let phase = (lambda + beta) / 2.0;
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    let mut real = Vec::with_capacity(p.coeffs().len());
    for (k, &c) in p.coeffs().iter().enumerate() {
        let kf = k as f64;
        let weight = snapped_cos(half_gap + kf * alpha);
        let value = if weight == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            c * (Complex64::from_polar(1.0, lambda + kf * alpha) + Complex64::from_polar(1.0, beta - kf * alpha))
        };
        coeffs.push(value);
        real.push(2.0 * weight * c);
    }
    let poly = ComplexPolynomial::new(coeffs).map_err(|_| OperatorError::DegenerateSequence)?;
    let real_form = RealPolynomial::new(real).map_err(|_| OperatorError::DegenerateSequence)?;
    Ok(Blend {
        poly,
        original_degree: p.degree(),
        phase,
        real_form,
    })
}

pub fn apply_sequence(p: &RealPolynomial, ms: &MultiplierSequence) -> Result<Transformed<RealPolynomial>, OperatorError> {
    ms.validate()?;
    let n = p.degree();
    if let MultiplierSequence::CosineStep { alpha, n: steps } = *ms {
        let value = alpha * n as f64 / f64::from(steps);
        if !(value.abs() < FRAC_PI_2) {
            return Err(OperatorError::HypothesisViolation { value });
        }
    }
    let gammas = ms.terms(n)?;
    let coeffs = p.coeffs().iter().zip(&gammas).map(|(c, g)| c * g).collect();
    let poly = RealPolynomial::new(coeffs).map_err(|_| OperatorError::DegenerateSequence)?;
    Ok(Transformed { poly, original_degree: n })
}

/// `Σ cos(λ + kθ) c_k z^k`, which is half the rotation blend with
/// `α = θ` and `β = −λ`.
pub fn cosine_affine_transform(p: &RealPolynomial, lambda: f64, theta: f64) -> Result<Transformed<RealPolynomial>, OperatorError> {
    let out = apply_sequence(p, &MultiplierSequence::CosineAffine { lambda, theta })?;
    #[cfg(debug_assertions)]
    if let Ok(blend) = rotation_blend(p, BlendParams { alpha: theta, lambda, beta: -lambda }) {
        let scale = p.scale();
        for (k, c) in blend.poly.coeffs().iter().enumerate() {
            let direct = out.poly.coeffs().get(k).copied().unwrap_or(0.0);
            debug_assert!((c / 2.0 - direct).norm() <= 1e-12 * scale, "blend identity failed at k = {k}");
        }
    }
    Ok(out)
}

/// `arccos(min{1, e^{α²/2} cos θ})`.
pub fn predicted_sector_after_gauss(theta: f64, alpha: f64) -> f64 {
    ((alpha * alpha / 2.0).exp() * theta.cos()).min(1.0).acos()
}

/// `arccos(min{1, cos θ sec(α/N)})`.
pub fn predicted_sector_after_cosine_step(theta: f64, alpha: f64, n: u32) -> f64 {
    (theta.cos() / (alpha / f64::from(n)).cos()).min(1.0).acos()
}

/// `[cos(α/N)]^{N²}`, which tends to `e^{−α²/2}`.
pub fn cosine_power_limit(alpha: f64, n: u32) -> Result<f64, OperatorError> {
    let step = alpha / f64::from(n.max(1));
    if n == 0 || !(step.abs() < FRAC_PI_2) {
        return Err(OperatorError::DomainError(step));
    }
    let nf = f64::from(n);
    Ok((nf * nf * step.cos().ln()).exp())
}

/// Principal logarithms of the zeros of `p` (with multiplicity): the zeros of
/// `Σ c_k e^{kz}` in the principal strip.
pub fn exp_poly_principal_zeros(p: &RealPolynomial, cfg: &SolverConfig) -> Result<Vec<Complex64>, OperatorError> {
    if p.coeffs()[0] == 0.0 {
        return Err(OperatorError::ZeroAtOrigin);
    }
    let zs = find_roots(&p.to_complex(), cfg)?;
    let locations = zs.locations();
    if let Some(bad) = locations.iter().find(|z| !(z.re > 0.0)) {
        return Err(OperatorError::ZeroOutsideRightHalfPlane(*bad));
    }
    Ok(locations.iter().map(|z| z.ln()).collect())
}

/// Strip bound for the Gauss operator acting on exponential polynomials.
pub fn predicted_strip_after_gauss(a: f64, alpha: f64) -> f64 {
    predicted_sector_after_gauss(a, alpha)
}

/// `√(max{A² − α², 0})`, the zero-strip bound for `exp(−α²D²/2)` on
/// ordinary polynomials.
pub fn bc_strip_bound(a: f64, alpha: f64) -> f64 {
    (a * a - alpha * alpha).max(0.0).sqrt()
}
