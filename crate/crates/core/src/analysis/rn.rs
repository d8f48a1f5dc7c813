use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::operators::MultiplierSequence;

/// Heuristic shape of the last half of a finite `r_n` window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailTrend {
    IncreasingTowardOne,
    BoundedAway,
    Constant,
    Other,
}

/// What a finite window can say about the necessary condition
/// `r_n < 1` for all `n` with `limsup r_n < 1`. Sufficiency is unknown, so
/// a passing window is only ever inconclusive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RnVerdict {
    FailsNecessaryCondition,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RnProfile {
    pub values: Vec<f64>,
    pub window: usize,
    pub min_value: f64,
    pub max_value: f64,
    pub tail_trend: TailTrend,
}

impl RnProfile {
    /// Fails when some `r_n ≥ 1` in the window, or when the tail creeps
    /// toward 1 (heuristic).
    pub fn verdict(&self) -> RnVerdict {
        let stuck_at_one = self.tail_trend == TailTrend::Constant;
        if self.max_value >= 1.0 || stuck_at_one || self.tail_trend == TailTrend::IncreasingTowardOne {
            RnVerdict::FailsNecessaryCondition
        } else {
            RnVerdict::Inconclusive
        }
    }
}

const FLAT_TOL: f64 = 1e-12;

/// `r_n = γ_n γ_{n+2} / γ_{n+1}²` for `n < window`.
pub fn rn_profile(ms: &MultiplierSequence, window: usize) -> Result<RnProfile, AnalysisError> {
    if window < 3 {
        return Err(AnalysisError::WindowTooSmall(window));
    }
    ms.validate()?;
    let values = match (0..window).map(|n| ms.log_second_difference(n)).collect::<Option<Vec<f64>>>() {
        Some(logs) => logs.into_iter().map(f64::exp).collect(),
        None => {
            let g = ms.terms(window + 1)?;
            (0..window)
                .map(|n| {
                    if g[n + 1] == 0.0 {
                        Err(AnalysisError::ZeroInteriorTerm { index: n + 1 })
                    } else {
                        Ok(g[n] * g[n + 2] / (g[n + 1] * g[n + 1]))
                    }
                })
                .collect::<Result<Vec<f64>, _>>()?
        }
    };
    let min_value = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max_value = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let tail_trend = classify_tail(&values[window / 2..]);
    Ok(RnProfile {
        values,
        window,
        min_value,
        max_value,
        tail_trend,
    })
}

fn classify_tail(tail: &[f64]) -> TailTrend {
    let first = tail[0];
    let last = tail[tail.len() - 1];
    let max = tail.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let flat = tail.iter().all(|&v| (v - first).abs() <= FLAT_TOL * first.abs().max(1.0));
    if flat {
        return if first < 1.0 - FLAT_TOL { TailTrend::BoundedAway } else { TailTrend::Constant };
    }
    let increasing = tail.windows(2).all(|w| w[1] >= w[0]);
    if increasing && max < 1.0 && (1.0 - last) <= 0.9 * (1.0 - first) {
        TailTrend::IncreasingTowardOne
    } else if max < 1.0 {
        TailTrend::BoundedAway
    } else {
        TailTrend::Other
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_is_constant_below_one() {
        let alpha: f64 = 0.7;
        let prof = rn_profile(&MultiplierSequence::Gauss { alpha }, 51).unwrap();
        let want = (-alpha * alpha).exp();
        assert!(prof.values.iter().all(|&v| v == want));
        assert_eq!(prof.tail_trend, TailTrend::BoundedAway);
        assert_eq!(prof.verdict(), RnVerdict::Inconclusive);
    }

    #[test]
    fn geometric_is_constant_one() {
        let values: Vec<f64> = (0..20).map(|k| 0.3f64.powi(k)).collect();
        let prof = rn_profile(&MultiplierSequence::Explicit { values }, 18).unwrap();
        assert!(prof.values.iter().all(|v| (v - 1.0).abs() < 1e-14));
        assert_eq!(prof.tail_trend, TailTrend::Constant);
        assert_eq!(prof.verdict(), RnVerdict::FailsNecessaryCondition);
    }

    #[test]
    fn reciprocal_factorial_creeps_to_one() {
        let mut values = vec![1.0];
        for k in 1..30 {
            values.push(values[k - 1] / k as f64);
        }
        let prof = rn_profile(&MultiplierSequence::Explicit { values }, 28).unwrap();
        for (n, v) in prof.values.iter().enumerate() {
            let want = (n as f64 + 1.0) / (n as f64 + 2.0);
            assert!((v - want).abs() < 1e-14 * want, "n = {n}");
        }
        assert_eq!(prof.tail_trend, TailTrend::IncreasingTowardOne);
    }

    #[test]
    fn exp_power_trends() {
        let p1 = rn_profile(&MultiplierSequence::ExpPower { alpha: 0.3, p: 1.0 }, 40).unwrap();
        assert!(p1.values.iter().all(|&v| v == 1.0));
        assert_eq!(p1.tail_trend, TailTrend::Constant);
        let p15 = rn_profile(&MultiplierSequence::ExpPower { alpha: 0.3, p: 1.5 }, 40).unwrap();
        assert_eq!(p15.tail_trend, TailTrend::IncreasingTowardOne);
        let p2 = rn_profile(&MultiplierSequence::ExpPower { alpha: 0.3, p: 2.0 }, 40).unwrap();
        assert!(p2.values.iter().all(|v| (v - (-0.6f64).exp()).abs() < 1e-14));
        assert_eq!(p2.tail_trend, TailTrend::BoundedAway);
    }

    #[test]
    fn linear_sequence_creeps_to_one() {
        let values: Vec<f64> = (0..40).map(|k| 1.0 + k as f64).collect();
        let prof = rn_profile(&MultiplierSequence::Explicit { values }, 38).unwrap();
        assert!(prof.max_value < 1.0);
        assert_eq!(prof.tail_trend, TailTrend::IncreasingTowardOne);
        assert_eq!(prof.verdict(), RnVerdict::FailsNecessaryCondition);
    }

    #[test]
    fn errors() {
        assert_eq!(
            rn_profile(&MultiplierSequence::Gauss { alpha: 1.0 }, 2),
            Err(AnalysisError::WindowTooSmall(2))
        );
        let ms = MultiplierSequence::Explicit { values: vec![1.0, 0.0, 1.0, 1.0, 1.0] };
        assert_eq!(rn_profile(&ms, 3), Err(AnalysisError::ZeroInteriorTerm { index: 1 }));
        let short = MultiplierSequence::Explicit { values: vec![1.0; 4] };
        assert!(rn_profile(&short, 3).is_err());
    }
}
