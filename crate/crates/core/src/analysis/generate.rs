use std::f64::consts::FRAC_PI_2;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::poly::{RealPolynomial, SectorRootSpec};

/// Random polynomials with every zero in `S(θ)`.
///
/// Real zeros are uniform in `[m_lo, m_hi]`. Pairs take `arg` uniform in
/// `[0, θ]` and `ln |z|` uniform in `[ln m_lo, ln m_hi]`. Each root slot is
/// real with probability `real_fraction`; a final single slot is always real.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyGenSpec {
    pub degree_min: usize,
    pub degree_max: usize,
    pub theta: f64,
    /// Draw each trial's half-angle uniformly from `[0, theta]`.
    #[serde(default)]
    pub randomize_theta: bool,
    pub m_lo: f64,
    pub m_hi: f64,
    pub real_fraction: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedPoly {
    pub roots: SectorRootSpec,
    pub poly: RealPolynomial,
    pub theta: f64,
}

impl PolyGenSpec {
    pub fn validate(&self) -> Result<(), AnalysisError> {
        let bad = |msg: &str| Err(AnalysisError::InvalidGenerator(msg.to_string()));
        if self.degree_min == 0 || self.degree_min > self.degree_max {
            return bad("need 1 <= degree_min <= degree_max");
        }
        if !(self.theta >= 0.0 && self.theta < FRAC_PI_2) {
            return bad("theta must lie in [0, π/2)");
        }
        if !(self.m_lo > 0.0 && self.m_lo <= self.m_hi && self.m_hi.is_finite()) {
            return bad("need 0 < m_lo <= m_hi");
        }
        if !(0.0..=1.0).contains(&self.real_fraction) {
            return bad("real_fraction must lie in [0, 1]");
        }
        Ok(())
    }

    /// The RNG stream for one trial; independent of scheduling.
    pub fn trial_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Result<GeneratedPoly, AnalysisError> {
        let degree = rng.random_range(self.degree_min..=self.degree_max);
        let theta = if self.randomize_theta {
            rng.random_range(0.0..=self.theta)
        } else {
            self.theta
        };
        let mut real_roots = Vec::new();
        let mut pairs = Vec::new();
        let mut left = degree;
        while left > 0 {
            let real = left == 1 || theta == 0.0 || rng.random_bool(self.real_fraction);
            if real {
                real_roots.push(rng.random_range(self.m_lo..=self.m_hi));
                left -= 1;
            } else {
                let arg = rng.random_range(0.0..=theta);
                let modulus = rng.random_range(self.m_lo.ln()..=self.m_hi.ln()).exp();
                let (b, a) = (modulus * arg.sin(), modulus * arg.cos());
                if b > 0.0 {
                    pairs.push((a, b));
                } else {
                    // arg hit 0 exactly: a double real zero keeps the degree
                    real_roots.extend([a, a]);
                }
                left -= 2;
            }
        }
        let roots = SectorRootSpec::new(real_roots, pairs)?;
        let poly = RealPolynomial::from_sector_roots(&roots, 1.0)?;
        Ok(GeneratedPoly { roots, poly, theta })
    }
}
