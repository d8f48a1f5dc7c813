//! Real and complex polynomials in ascending coefficient order.
//!
//! `coeffs[k]` is the coefficient of `z^k`. Both types are normalized on
//! construction: trailing (high-degree) zeros are stripped and the zero
//! polynomial is rejected, so `degree()` is always well defined.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyError {
    #[error("the zero polynomial is not a valid operand")]
    ZeroPolynomial,
    #[error("coefficient {0} is not finite")]
    NonFinite(usize),
    #[error("leading coefficient must be nonzero and finite, got {0}")]
    BadLead(f64),
    #[error("real root #{index} = {value} is negative (roots must satisfy x >= 0)")]
    NegativeRealRoot { index: usize, value: f64 },
    #[error("pair #{index} = ({a}, {b}) must have a > 0 and b > 0")]
    NonpositivePair { index: usize, a: f64, b: f64 },
}

/// A polynomial with real coefficients, `coeffs[k] = c_k`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

/// A polynomial with complex coefficients, `coeffs[k] = c_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

/// Sign structure of a real coefficient sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignPattern {
    Alternating,
    ConstantSign,
    Other,
}

/// Zeros of a real polynomial restricted to the closed right half-plane:
/// nonnegative real zeros `x_k` and conjugate pairs `a_k ± i b_k` with
/// `a_k, b_k > 0`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SectorRootSpec {
    #[serde(default)]
    pub real_roots: Vec<f64>,
    #[serde(default)]
    pub pairs: Vec<(f64, f64)>,
}

impl SectorRootSpec {
    pub fn new(real_roots: Vec<f64>, pairs: Vec<(f64, f64)>) -> Result<Self, PolyError> {
        let spec = SectorRootSpec { real_roots, pairs };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), PolyError> {
        for (index, &value) in self.real_roots.iter().enumerate() {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(PolyError::NegativeRealRoot { index, value });
            }
        }
        for (index, &(a, b)) in self.pairs.iter().enumerate() {
            if !(a > 0.0 && b > 0.0) || !a.is_finite() || !b.is_finite() {
                return Err(PolyError::NonpositivePair { index, a, b });
            }
        }
        Ok(())
    }

    pub fn degree(&self) -> usize {
        self.real_roots.len() + 2 * self.pairs.len()
    }

    /// All zeros the spec describes, each pair contributing `a ± ib`.
    pub fn zeros(&self) -> Vec<Complex64> {
        let mut out: Vec<Complex64> = self.real_roots.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        for &(a, b) in &self.pairs {
            out.push(Complex64::new(a, b));
            out.push(Complex64::new(a, -b));
        }
        out
    }
}

fn strip_trailing<T: Copy>(mut coeffs: Vec<T>, is_zero: impl Fn(T) -> bool) -> Vec<T> {
    while coeffs.last().is_some_and(|&c| is_zero(c)) {
        coeffs.pop();
    }
    coeffs
}

impl RealPolynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self, PolyError> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(PolyError::NonFinite(i));
        }
        let coeffs = strip_trailing(coeffs, |c| c == 0.0);
        if coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(RealPolynomial { coeffs })
    }

    /// `lead · ∏(z − x_k) · ∏[(z − a_k)² + b_k²]`, expanded.
    ///
    /// Factors are multiplied smallest modulus first with fused
    /// multiply-adds, which keeps the round trip through the root finder
    /// accurate for well-separated zeros.
    pub fn from_sector_roots(spec: &SectorRootSpec, lead: f64) -> Result<Self, PolyError> {
        spec.validate()?;
        if lead == 0.0 || !lead.is_finite() {
            return Err(PolyError::BadLead(lead));
        }
        let mut factors: Vec<(f64, Vec<f64>)> = Vec::with_capacity(spec.real_roots.len() + spec.pairs.len());
        for &x in &spec.real_roots {
            factors.push((x, vec![-x, 1.0]));
        }
        for &(a, b) in &spec.pairs {
            let m2 = a * a + b * b;
            factors.push((m2.sqrt(), vec![m2, -2.0 * a, 1.0]));
        }
        factors.sort_by(|l, r| l.0.total_cmp(&r.0));

        let mut acc = vec![lead];
        for (_, f) in &factors {
            acc = mul_real(&acc, f);
        }
        RealPolynomial::new(acc)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    /// Coefficient magnitude scale `max_k |c_k|`.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn to_complex(&self) -> ComplexPolynomial {
        ComplexPolynomial {
            coeffs: self.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect(),
        }
    }

    /// `q(z) = p(e^{iφ} z)`, i.e. `c_k ↦ c_k e^{ikφ}`.
    pub fn rotate_argument(&self, phi: f64) -> ComplexPolynomial {
        ComplexPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| Complex64::from_polar(c, k as f64 * phi))
                .collect(),
        }
    }

    /// Classifies the sign structure of the coefficients.
    ///
    /// Low-order zeros (a zero at the origin) are skipped. A zero between
    /// two nonzero coefficients breaks alternation; such a sequence is
    /// still `ConstantSign` when every nonzero entry shares a sign.
    pub fn sign_pattern(&self) -> SignPattern {
        let start = self.coeffs.iter().position(|&c| c != 0.0).unwrap_or(0);
        let body = &self.coeffs[start..];
        let first_sign = body[0].signum();
        if body.iter().all(|&c| c == 0.0 || c.signum() == first_sign) {
            return SignPattern::ConstantSign;
        }
        let has_interior_zero = body.contains(&0.0);
        if !has_interior_zero && body.windows(2).all(|w| w[0].signum() != w[1].signum()) {
            SignPattern::Alternating
        } else {
            SignPattern::Other
        }
    }
}

fn mul_real(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = x.mul_add(y, out[i + j]);
        }
    }
    out
}

impl ComplexPolynomial {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self, PolyError> {
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(PolyError::NonFinite(i));
        }
        let coeffs = strip_trailing(coeffs, |c| c.re == 0.0 && c.im == 0.0);
        if coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(ComplexPolynomial { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn scale(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    /// True when every coefficient has an exactly zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn rotate_argument(&self, phi: f64) -> ComplexPolynomial {
        ComplexPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c * Complex64::from_polar(1.0, k as f64 * phi))
                .collect(),
        }
    }

    /// The real polynomial with the same coefficients, if all are real.
    pub fn to_real(&self) -> Option<RealPolynomial> {
        if !self.is_real() {
            return None;
        }
        RealPolynomial::new(self.coeffs.iter().map(|c| c.re).collect()).ok()
    }
}

impl From<&RealPolynomial> for ComplexPolynomial {
    fn from(p: &RealPolynomial) -> Self {
        p.to_complex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_8, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn from_sector_roots_examples() {
        let one_pair = SectorRootSpec::new(vec![], vec![(1.0, 1.0)]).unwrap();
        assert_eq!(RealPolynomial::from_sector_roots(&one_pair, 1.0).unwrap().coeffs(), &[2.0, -2.0, 1.0]);

        let double = SectorRootSpec::new(vec![1.0, 1.0], vec![]).unwrap();
        assert_eq!(RealPolynomial::from_sector_roots(&double, 1.0).unwrap().coeffs(), &[1.0, -2.0, 1.0]);

        let distinct = SectorRootSpec::new(vec![1.0, 2.0], vec![]).unwrap();
        assert_eq!(RealPolynomial::from_sector_roots(&distinct, 1.0).unwrap().coeffs(), &[2.0, -3.0, 1.0]);
    }

    #[test]
    fn from_sector_roots_rejects_bad_hypotheses() {
        assert!(matches!(
            SectorRootSpec::new(vec![-0.5], vec![]),
            Err(PolyError::NegativeRealRoot { index: 0, .. })
        ));
        assert!(matches!(
            SectorRootSpec::new(vec![], vec![(1.0, 0.0)]),
            Err(PolyError::NonpositivePair { .. })
        ));
        assert!(matches!(
            SectorRootSpec::new(vec![], vec![(-1.0, 2.0)]),
            Err(PolyError::NonpositivePair { .. })
        ));
        let spec = SectorRootSpec::new(vec![1.0], vec![]).unwrap();
        assert!(matches!(RealPolynomial::from_sector_roots(&spec, 0.0), Err(PolyError::BadLead(_))));
    }

    #[test]
    fn residual_at_constructed_roots() {
        let spec = SectorRootSpec::new(vec![0.5, 3.0], vec![(1.0, 2.0), (4.0, 0.5)]).unwrap();
        let p = RealPolynomial::from_sector_roots(&spec, -2.5).unwrap();
        assert_eq!(p.degree(), 6);
        for z in spec.zeros() {
            assert!(p.eval(z).norm() <= 1e-10 * p.scale(), "residual at {z}");
        }
    }

    #[test]
    fn normalization() {
        assert_eq!(RealPolynomial::new(vec![1.0, 2.0, 0.0, 0.0]).unwrap().degree(), 1);
        assert_eq!(RealPolynomial::new(vec![0.0, 0.0]), Err(PolyError::ZeroPolynomial));
        assert_eq!(RealPolynomial::new(vec![]), Err(PolyError::ZeroPolynomial));
        assert_eq!(RealPolynomial::new(vec![1.0, f64::NAN]), Err(PolyError::NonFinite(1)));
        assert_eq!(ComplexPolynomial::new(vec![c(0.0, 0.0)]), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn eval_examples() {
        let p = RealPolynomial::new(vec![2.0, -2.0, 1.0]).unwrap().to_complex();
        assert!(p.eval(c(1.0, 1.0)).norm() == 0.0);
        let one = ComplexPolynomial::new(vec![c(1.0, 0.0)]).unwrap();
        assert_eq!(one.eval(c(3.7, -1.2)), c(1.0, 0.0));
        let sq = RealPolynomial::new(vec![0.0, 0.0, 1.0]).unwrap().to_complex();
        assert_eq!(sq.eval(c(0.0, 2.0)), c(-4.0, 0.0));
    }

    #[test]
    fn rotate_argument_examples() {
        let p = RealPolynomial::new(vec![2.0, -2.0, 1.0]).unwrap();
        assert_eq!(p.rotate_argument(0.0), p.to_complex());

        let sq = RealPolynomial::new(vec![0.0, 0.0, 1.0]).unwrap().rotate_argument(FRAC_PI_2);
        assert!((sq.coeffs()[2] - c(-1.0, 0.0)).norm() < 1e-15);

        let q = p.rotate_argument(FRAC_PI_8);
        let expected = [c(2.0, 0.0), -2.0 * Complex64::from_polar(1.0, FRAC_PI_8), Complex64::from_polar(1.0, PI / 4.0)];
        for (got, want) in q.coeffs().iter().zip(expected) {
            assert!((got - want).norm() < 1e-15);
        }
        // q(z) = p(e^{iφ} z) at a handful of fixed points
        for z in [c(0.3, -1.1), c(2.0, 0.5), c(-1.4, 0.9), c(0.0, 3.0), c(-0.7, -0.2)] {
            let rotated = Complex64::from_polar(1.0, FRAC_PI_8) * z;
            assert!((q.eval(z) - p.eval(rotated)).norm() < 1e-13);
        }
    }

    #[test]
    fn sign_pattern_examples() {
        let pat = |v: Vec<f64>| RealPolynomial::new(v).unwrap().sign_pattern();
        assert_eq!(pat(vec![2.0, -2.0, 1.0]), SignPattern::Alternating);
        assert_eq!(pat(vec![1.0, 2.0, 1.0]), SignPattern::ConstantSign);
        assert_eq!(pat(vec![1.0, 0.0, -1.0]), SignPattern::Other);
        assert_eq!(pat(vec![0.0, 0.0, -1.0, 1.0]), SignPattern::Alternating);
        assert_eq!(pat(vec![1.0, 0.0, 1.0]), SignPattern::ConstantSign);
        assert_eq!(pat(vec![1.0, -1.0, 0.0, 1.0]), SignPattern::Other);
    }
}
