//! Seeded verification campaigns.
//!
//! Every trial draws from its own RNG stream `(seed, index)`, trials run in
//! parallel, and outcomes are merged in index order, so a report depends only
//! on its inputs. Margins are signed slacks: negative means the predicted
//! bound was exceeded.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use rand::RngExt;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::generate::{GeneratedPoly, PolyGenSpec};
use super::rn::{rn_profile, RnProfile, RnVerdict};
use super::{double_sector_demo, AnalysisError};
use crate::geometry::{enclosing_sector_of, jensen_sector_disc, SectorDisc};
use crate::operators::{
    apply_sequence, cosine_affine_transform, exp_poly_principal_zeros, predicted_sector_after_cosine_step,
    predicted_sector_after_gauss, predicted_strip_after_gauss, rotation_blend, BlendParams, MultiplierSequence,
    OperatorError,
};
use crate::poly::RealPolynomial;
use crate::roots::{find_roots, RootError, SolverConfig, ZeroSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremId {
    /// Nonreal blend zeros lie in the union of sector-discs.
    Jsd,
    /// Nonreal blend zeros of a quadratic lie on the disc boundary.
    JsdSharp,
    /// Gauss multipliers shrink the zero sector.
    Zsro,
    /// `cos(αk/N)` multipliers shrink the zero sector.
    #[serde(rename = "cosstep")]
    CosStep,
    /// `cos(λ + kθ)` maps positive-zero polynomials to real-rooted ones.
    Lms2,
    /// Gauss multipliers shrink the principal strip of `p(e^z)`.
    PeriodStrip,
    /// A sector-`S(0)` preserver keeps `T[(1−z)^n]` real and positive.
    Roms,
    /// No diagonal operator shrinks the double sector of `4 + z^4`.
    DoubleSector,
    /// Counterexample search over a sequence family.
    Search,
}

impl TheoremId {
    pub fn default_tolerance(self) -> f64 {
        match self {
            TheoremId::Jsd | TheoremId::JsdSharp => 1e-8,
            TheoremId::Zsro | TheoremId::CosStep | TheoremId::PeriodStrip | TheoremId::Search => 1e-7,
            TheoremId::Lms2 | TheoremId::Roms => 1e-9,
            TheoremId::DoubleSector => 1e-12,
        }
    }
}

/// Operator parameters. `None` means "draw per trial".
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CampaignParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Rotation step of `cos(λ + kθ)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    /// `N` of `cos(αk/N)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<MultiplierSequence>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    /// Coefficients of the input, constant term first.
    pub input: Vec<f64>,
    /// Coefficients of the transformed polynomial (the real form for blends).
    pub transformed: Vec<f64>,
    pub params: CampaignParams,
    /// `[re, im]` of the offending zero.
    pub zero: [f64; 2],
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleSectorOutcome {
    pub before: f64,
    pub after: f64,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchProbe {
    pub sequence: MultiplierSequence,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rn: Option<RnProfile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rn_verdict: Option<RnVerdict>,
    pub measured: u64,
    pub skipped: u64,
    pub worst_margin: Option<f64>,
    /// Trials whose sector did not shrink by more than the tolerance.
    pub non_shrinking: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub trials: u64,
    pub seed: u64,
    /// Trials that produced at least one measurement.
    pub measured: u64,
    /// Trials dropped because the solver did not converge.
    pub skipped: u64,
    /// Trials whose transform vanished identically.
    pub degenerate: u64,
    /// `None` when no trial produced a measurement.
    pub worst_margin: Option<f64>,
    pub tolerance: f64,
    pub counterexample: Option<Counterexample>,
    pub params: CampaignParams,
    pub generator: PolyGenSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub double_sector: Option<DoubleSectorOutcome>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub probes: Vec<SearchProbe>,
}

impl VerificationReport {
    pub fn has_counterexample(&self) -> bool {
        self.counterexample.is_some()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports contain only finite numbers")
    }
}

#[derive(Debug, Clone)]
struct Witness {
    zero: Complex64,
    input: Vec<f64>,
    transformed: Vec<f64>,
    params: CampaignParams,
}

#[derive(Debug, Clone, Default)]
struct Outcome {
    margin: Option<f64>,
    witness: Option<Witness>,
    skipped: bool,
    degenerate: bool,
}

impl Outcome {
    fn skipped() -> Self {
        Outcome { skipped: true, ..Default::default() }
    }

    fn degenerate() -> Self {
        Outcome { degenerate: true, ..Default::default() }
    }

    fn nothing() -> Self {
        Outcome::default()
    }
}

/// Tracks the smallest margin among measurements within one trial.
struct Worst {
    margin: Option<f64>,
    zero: Complex64,
}

impl Worst {
    fn new() -> Self {
        Worst { margin: None, zero: Complex64::new(0.0, 0.0) }
    }

    fn offer(&mut self, margin: f64, zero: Complex64) {
        if self.margin.is_none_or(|m| margin < m) {
            self.margin = Some(margin);
            self.zero = zero;
        }
    }

    fn finish(self, input: &RealPolynomial, transformed: &RealPolynomial, params: CampaignParams) -> Outcome {
        Outcome {
            margin: self.margin,
            witness: self.margin.map(|_| Witness {
                zero: self.zero,
                input: input.coeffs().to_vec(),
                transformed: transformed.coeffs().to_vec(),
                params,
            }),
            ..Default::default()
        }
    }
}

enum Solved {
    Zeros(ZeroSet),
    Constant,
    Failed,
}

fn solve(p: &RealPolynomial, cfg: &SolverConfig) -> Result<Solved, AnalysisError> {
    if p.degree() == 0 {
        return Ok(Solved::Constant);
    }
    match find_roots(&p.to_complex(), cfg) {
        Ok(zs) => Ok(Solved::Zeros(zs)),
        Err(RootError::NonConvergence { .. }) => Ok(Solved::Failed),
        Err(e) => Err(e.into()),
    }
}

fn scaled(x: f64, z: Complex64) -> f64 {
    x / z.norm().max(1.0)
}

/// Measured sector of a zero set, with zeros outside the right half-plane
/// reported by their angle instead of an error.
fn measured_sector(points: &[Complex64]) -> (f64, Complex64) {
    let mut worst = (0.0, Complex64::new(0.0, 0.0));
    for &z in points {
        if z.re == 0.0 && z.im == 0.0 {
            continue;
        }
        let angle = z.arg().abs();
        if angle > worst.0 || worst.1 == Complex64::new(0.0, 0.0) {
            worst = (angle, z);
        }
    }
    worst
}

pub fn verify_theorem(
    theorem: TheoremId,
    gen: &PolyGenSpec,
    params: &CampaignParams,
    trials: u64,
) -> Result<VerificationReport, AnalysisError> {
    verify_theorem_with(theorem, gen, params, trials, &SolverConfig::default())
}

pub fn verify_theorem_with(
    theorem: TheoremId,
    gen: &PolyGenSpec,
    params: &CampaignParams,
    trials: u64,
    cfg: &SolverConfig,
) -> Result<VerificationReport, AnalysisError> {
    gen.validate()?;
    cfg.validate()?;
    if trials == 0 {
        return Err(AnalysisError::InvalidCampaign("trials must be at least 1".into()));
    }
    let tolerance = params.tolerance.unwrap_or(theorem.default_tolerance());
    let mut report = VerificationReport {
        theorem_id: theorem,
        trials,
        seed: gen.seed,
        measured: 0,
        skipped: 0,
        degenerate: 0,
        worst_margin: None,
        tolerance,
        counterexample: None,
        params: params.clone(),
        generator: gen.clone(),
        double_sector: None,
        probes: Vec::new(),
    };
    if theorem == TheoremId::DoubleSector {
        run_double_sector(&mut report, params, cfg)?;
        return Ok(report);
    }
    if theorem == TheoremId::Search {
        return Err(AnalysisError::InvalidCampaign("use search_counterexample for searches".into()));
    }
    if theorem == TheoremId::JsdSharp && gen.theta == 0.0 {
        return Err(AnalysisError::InvalidCampaign("sharpness needs a nonreal pair (theta > 0)".into()));
    }
    let outcomes: Vec<Result<Outcome, AnalysisError>> = (0..trials)
        .into_par_iter()
        .map(|index| {
            let mut rng = gen.trial_rng(index);
            run_trial(theorem, gen, params, cfg, &mut rng)
        })
        .collect();
    merge(&mut report, outcomes)?;
    Ok(report)
}

fn merge(report: &mut VerificationReport, outcomes: Vec<Result<Outcome, AnalysisError>>) -> Result<(), AnalysisError> {
    let mut worst: Option<(u64, f64, Witness)> = None;
    for (index, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome?;
        report.skipped += u64::from(outcome.skipped);
        report.degenerate += u64::from(outcome.degenerate);
        if let (Some(margin), Some(witness)) = (outcome.margin, outcome.witness) {
            report.measured += 1;
            if worst.as_ref().is_none_or(|w| margin < w.1) {
                worst = Some((index as u64, margin, witness));
            }
        }
    }
    if let Some((trial, margin, w)) = worst {
        report.worst_margin = Some(margin);
        if margin < -report.tolerance {
            report.counterexample = Some(Counterexample {
                trial,
                input: w.input,
                transformed: w.transformed,
                params: w.params,
                zero: [w.zero.re, w.zero.im],
                margin,
            });
        }
    }
    Ok(())
}

fn run_trial(
    theorem: TheoremId,
    gen: &PolyGenSpec,
    params: &CampaignParams,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome, AnalysisError> {
    match theorem {
        TheoremId::Jsd => trial_jsd(gen, params, cfg, rng),
        TheoremId::JsdSharp => trial_jsd_sharp(gen, params, cfg, rng),
        TheoremId::Zsro => trial_zsro(gen, params, cfg, rng),
        TheoremId::CosStep => trial_cos_step(gen, params, cfg, rng),
        TheoremId::Lms2 => trial_lms2(gen, params, cfg, rng),
        TheoremId::PeriodStrip => trial_period_strip(gen, params, cfg, rng),
        TheoremId::Roms => trial_roms(gen, params, cfg, rng),
        TheoremId::DoubleSector | TheoremId::Search => unreachable!("handled by the caller"),
    }
}

fn draw(fixed: Option<f64>, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    fixed.unwrap_or_else(|| rng.random_range(lo..=hi))
}

fn blend_outcome(
    p: &RealPolynomial,
    discs: &[SectorDisc],
    bp: BlendParams,
    cfg: &SolverConfig,
    sharp: bool,
) -> Result<Outcome, AnalysisError> {
    let blend = match rotation_blend(p, bp) {
        Ok(b) => b,
        Err(OperatorError::DegenerateSequence) => return Ok(Outcome::degenerate()),
        Err(e) => return Err(e.into()),
    };
    let zs = match solve(&blend.real_form, cfg)? {
        Solved::Zeros(zs) => zs,
        Solved::Constant => return Ok(Outcome::nothing()),
        Solved::Failed => return Ok(Outcome::skipped()),
    };
    let mut worst = Worst::new();
    for z in zs.zeros().iter().map(|z| z.location).filter(|z| z.im > 0.0) {
        let margin = if sharp {
            let c = discs[0].circle.expect("sharpness trials draw nonempty discs");
            -((z - c.center).norm() - c.radius).abs() / c.radius
        } else {
            discs
                .iter()
                .filter_map(|d| d.circle)
                .map(|c| scaled(c.radius - (z - c.center).norm(), z))
                .fold(None, |m: Option<f64>, s| Some(m.map_or(s, |m| m.max(s))))
                .unwrap_or_else(|| scaled(-z.im, z))
        };
        worst.offer(margin, z);
    }
    let trial_params = CampaignParams {
        alpha: Some(bp.alpha),
        lambda: Some(bp.lambda),
        beta: Some(bp.beta),
        ..Default::default()
    };
    Ok(worst.finish(p, &blend.real_form, trial_params))
}

fn trial_jsd(gen: &PolyGenSpec, params: &CampaignParams, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Result<Outcome, AnalysisError> {
    let g = gen.sample(rng)?;
    let alpha = draw(params.alpha, rng, 0.0, PI);
    let lambda = draw(params.lambda, rng, -PI, PI);
    let beta = draw(params.beta, rng, -PI, PI);
    let discs = g
        .roots
        .pairs
        .iter()
        .map(|&(a, b)| jensen_sector_disc(a, b, alpha))
        .collect::<Result<Vec<_>, _>>()?;
    blend_outcome(&g.poly, &discs, BlendParams { alpha, lambda, beta }, cfg, false)
}

fn trial_jsd_sharp(
    gen: &PolyGenSpec,
    params: &CampaignParams,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome, AnalysisError> {
    // A fixed α only has nonempty discs for zeros with larger argument.
    let arg = match params.alpha {
        Some(alpha) if alpha < FRAC_PI_2 => {
            let lo = alpha + 1e-3 * (FRAC_PI_2 - alpha);
            rng.random_range(lo..FRAC_PI_2)
        }
        _ => rng.random_range(0.0..=gen.theta),
    };
    let modulus = rng.random_range(gen.m_lo.ln()..=gen.m_hi.ln()).exp();
    let (a, b) = (modulus * arg.cos(), modulus * arg.sin());
    if !(b > 0.0) {
        return Ok(Outcome::nothing());
    }
    let p = RealPolynomial::new(vec![a * a + b * b, -2.0 * a, 1.0])?;
    let mut disc = None;
    for _ in 0..64 {
        let alpha = draw(params.alpha, rng, 0.0, PI);
        let d = jensen_sector_disc(a, b, alpha)?;
        if !d.is_empty() {
            disc = Some((alpha, d));
            break;
        }
        if params.alpha.is_some() {
            break;
        }
    }
    let Some((alpha, disc)) = disc else {
        return Ok(Outcome::nothing());
    };
    let lambda = draw(params.lambda, rng, -PI, PI);
    let beta = draw(params.beta, rng, -PI, PI);
    blend_outcome(&p, &[disc], BlendParams { alpha, lambda, beta }, cfg, true)
}

/// Applies `ms` to a generated polynomial and compares the measured sector
/// of the result against `predicted(θ_before)`.
fn sector_trial(
    g: &GeneratedPoly,
    ms: &MultiplierSequence,
    predicted: impl Fn(f64) -> f64,
    cfg: &SolverConfig,
    trial_params: CampaignParams,
) -> Result<Outcome, AnalysisError> {
    let before = enclosing_sector_of(&g.roots.zeros())?;
    let t = match apply_sequence(&g.poly, ms) {
        Ok(t) => t,
        Err(OperatorError::DegenerateSequence) => return Ok(Outcome::degenerate()),
        Err(e) => return Err(e.into()),
    };
    let zs = match solve(&t.poly, cfg)? {
        Solved::Zeros(zs) => zs,
        Solved::Constant => return Ok(Outcome::nothing()),
        Solved::Failed => return Ok(Outcome::skipped()),
    };
    let (after, zero) = measured_sector(&zs.locations());
    let mut worst = Worst::new();
    worst.offer(predicted(before) - after, zero);
    Ok(worst.finish(&g.poly, &t.poly, trial_params))
}

fn trial_zsro(gen: &PolyGenSpec, params: &CampaignParams, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Result<Outcome, AnalysisError> {
    let g = gen.sample(rng)?;
    let alpha = draw(params.alpha, rng, 0.05, 1.2);
    let trial_params = CampaignParams { alpha: Some(alpha), ..Default::default() };
    sector_trial(
        &g,
        &MultiplierSequence::Gauss { alpha },
        |theta| predicted_sector_after_gauss(theta, alpha),
        cfg,
        trial_params,
    )
}

fn trial_cos_step(
    gen: &PolyGenSpec,
    params: &CampaignParams,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome, AnalysisError> {
    let g = gen.sample(rng)?;
    let steps = params.steps.unwrap_or_else(|| rng.random_range(1..=8));
    let limit = 0.99 * FRAC_PI_2 * f64::from(steps) / g.poly.degree() as f64;
    let alpha = draw(params.alpha, rng, 0.0, limit);
    let trial_params = CampaignParams {
        alpha: Some(alpha),
        steps: Some(steps),
        ..Default::default()
    };
    sector_trial(
        &g,
        &MultiplierSequence::CosineStep { alpha, n: steps },
        |theta| predicted_sector_after_cosine_step(theta, alpha, steps),
        cfg,
        trial_params,
    )
}

/// Worst `−|Im z|`, scaled, over the zeros; zero when all are real.
fn realness_outcome(zs: &ZeroSet, require_positive: bool) -> Worst {
    let mut worst = Worst::new();
    for z in zs.locations() {
        let mut margin = scaled(-z.im.abs(), z);
        if require_positive && z.re < 0.0 {
            margin = margin.min(scaled(z.re, z));
        }
        worst.offer(margin, z);
    }
    worst
}

fn trial_lms2(gen: &PolyGenSpec, params: &CampaignParams, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Result<Outcome, AnalysisError> {
    let real_gen = PolyGenSpec {
        theta: 0.0,
        randomize_theta: false,
        ..gen.clone()
    };
    let g = real_gen.sample(rng)?;
    let lambda = draw(params.lambda, rng, -PI, PI);
    let theta = draw(params.theta, rng, -PI, PI);
    let t = match cosine_affine_transform(&g.poly, lambda, theta) {
        Ok(t) => t,
        Err(OperatorError::DegenerateSequence) => return Ok(Outcome::degenerate()),
        Err(e) => return Err(e.into()),
    };
    let zs = match solve(&t.poly, cfg)? {
        Solved::Zeros(zs) => zs,
        Solved::Constant => return Ok(Outcome::nothing()),
        Solved::Failed => return Ok(Outcome::skipped()),
    };
    let trial_params = CampaignParams {
        lambda: Some(lambda),
        theta: Some(theta),
        ..Default::default()
    };
    Ok(realness_outcome(&zs, false).finish(&g.poly, &t.poly, trial_params))
}

fn trial_period_strip(
    gen: &PolyGenSpec,
    params: &CampaignParams,
    cfg: &SolverConfig,
    rng: &mut ChaCha8Rng,
) -> Result<Outcome, AnalysisError> {
    let g = gen.sample(rng)?;
    let alpha = draw(params.alpha, rng, 0.05, 1.2);
    let strip_before = enclosing_sector_of(&g.roots.zeros())?;
    let t = apply_sequence(&g.poly, &MultiplierSequence::Gauss { alpha })?;
    let (strip_after, zero) = match exp_poly_principal_zeros(&t.poly, cfg) {
        Ok(logs) => logs
            .into_iter()
            .fold((0.0, Complex64::new(0.0, 0.0)), |w, z| if z.im.abs() > w.0 { (z.im.abs(), z) } else { w }),
        Err(OperatorError::ZeroOutsideRightHalfPlane(w)) => (w.arg().abs(), w.ln()),
        Err(OperatorError::Root(RootError::NonConvergence { .. })) => return Ok(Outcome::skipped()),
        Err(e) => return Err(e.into()),
    };
    let mut worst = Worst::new();
    worst.offer(predicted_strip_after_gauss(strip_before, alpha) - strip_after, zero);
    let trial_params = CampaignParams { alpha: Some(alpha), ..Default::default() };
    Ok(worst.finish(&g.poly, &t.poly, trial_params))
}

fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![1.0];
    for k in 1..=n {
        let prev = row[k - 1];
        row.push(prev * (n + 1 - k) as f64 / k as f64);
    }
    row
}

fn trial_roms(gen: &PolyGenSpec, params: &CampaignParams, cfg: &SolverConfig, rng: &mut ChaCha8Rng) -> Result<Outcome, AnalysisError> {
    let n = rng.random_range(gen.degree_min..=gen.degree_max);
    let ms = match &params.sequence {
        Some(ms) => ms.clone(),
        None => MultiplierSequence::Gauss { alpha: draw(params.alpha, rng, 0.1, 1.0) },
    };
    let coeffs = binomial_row(n)
        .into_iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c })
        .collect();
    let p = RealPolynomial::new(coeffs)?;
    let t = match apply_sequence(&p, &ms) {
        Ok(t) => t,
        Err(OperatorError::DegenerateSequence) => return Ok(Outcome::degenerate()),
        Err(e) => return Err(e.into()),
    };
    let zs = match solve(&t.poly, cfg)? {
        Solved::Zeros(zs) => zs,
        Solved::Constant => return Ok(Outcome::nothing()),
        Solved::Failed => return Ok(Outcome::skipped()),
    };
    let trial_params = CampaignParams { sequence: Some(ms), ..Default::default() };
    Ok(realness_outcome(&zs, true).finish(&p, &t.poly, trial_params))
}

fn run_double_sector(report: &mut VerificationReport, params: &CampaignParams, cfg: &SolverConfig) -> Result<(), AnalysisError> {
    let ms = params
        .sequence
        .clone()
        .ok_or_else(|| AnalysisError::InvalidCampaign("double-sector needs a sequence".into()))?;
    match double_sector_demo(&ms, cfg) {
        Ok((before, after)) => {
            let margin = -(after - FRAC_PI_4).abs();
            report.measured = 1;
            report.worst_margin = Some(margin);
            let reduced = after < FRAC_PI_4 - report.tolerance;
            let verdict = if margin >= -report.tolerance {
                "no reduction (as proven)"
            } else if reduced {
                "reduction observed (contradicts the impossibility theorem)"
            } else {
                "double sector grew"
            };
            if margin < -report.tolerance {
                let p = RealPolynomial::new(vec![4.0, 0.0, 0.0, 0.0, 1.0])?;
                let t = apply_sequence(&p, &ms)?;
                report.counterexample = Some(Counterexample {
                    trial: 0,
                    input: p.into_coeffs(),
                    transformed: t.poly.into_coeffs(),
                    params: CampaignParams { sequence: Some(ms), ..Default::default() },
                    zero: [after.cos(), after.sin()],
                    margin,
                });
            }
            report.double_sector = Some(DoubleSectorOutcome { before, after, verdict: verdict.into() });
        }
        Err(AnalysisError::SignFlip { .. }) => {
            report.skipped = 1;
            report.double_sector = Some(DoubleSectorOutcome {
                before: FRAC_PI_4,
                after: FRAC_PI_2,
                verdict: "sign flip: γ_0 γ_4 < 0 puts the zeros on the axes".into(),
            });
        }
        Err(e) => return Err(e),
    }
    Ok(())
}

/// Parameter grid for [`search_counterexample`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum SearchFamily {
    ExpPower { alphas: Vec<f64>, powers: Vec<f64> },
    Explicit { values: Vec<f64> },
}

impl SearchFamily {
    fn sequences(&self) -> Vec<MultiplierSequence> {
        match self {
            SearchFamily::ExpPower { alphas, powers } => alphas
                .iter()
                .flat_map(|&alpha| powers.iter().map(move |&p| MultiplierSequence::ExpPower { alpha, p }))
                .collect(),
            SearchFamily::Explicit { values } => vec![MultiplierSequence::Explicit { values: values.clone() }],
        }
    }
}

const SEARCH_WINDOW: usize = 40;

/// Looks for inputs whose zero sector strictly grows under a sequence from
/// `family`. Each probe also carries the `r_n` profile of its sequence.
pub fn search_counterexample(
    family: &SearchFamily,
    gen: &PolyGenSpec,
    trials: u64,
    cfg: &SolverConfig,
) -> Result<VerificationReport, AnalysisError> {
    gen.validate()?;
    cfg.validate()?;
    let sequences = family.sequences();
    if sequences.is_empty() || trials == 0 {
        return Err(AnalysisError::InvalidCampaign("empty parameter grid or zero trials".into()));
    }
    let tolerance = TheoremId::Search.default_tolerance();
    let mut gen = gen.clone();
    if let SearchFamily::Explicit { values } = family {
        if values.len() < 2 {
            return Err(AnalysisError::InvalidCampaign("explicit sequence needs at least two terms".into()));
        }
        gen.degree_max = gen.degree_max.min(values.len() - 1);
        gen.degree_min = gen.degree_min.min(gen.degree_max);
    }
    let mut report = VerificationReport {
        theorem_id: TheoremId::Search,
        trials,
        seed: gen.seed,
        measured: 0,
        skipped: 0,
        degenerate: 0,
        worst_margin: None,
        tolerance,
        counterexample: None,
        params: CampaignParams::default(),
        generator: gen.clone(),
        double_sector: None,
        probes: Vec::new(),
    };
    let mut all = Vec::new();
    for (probe_index, ms) in sequences.into_iter().enumerate() {
        let window = match &ms {
            MultiplierSequence::Explicit { values } => values.len().saturating_sub(2),
            _ => SEARCH_WINDOW,
        };
        let rn = if window >= 3 { rn_profile(&ms, window).ok() } else { None };
        let outcomes: Vec<Result<Outcome, AnalysisError>> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = gen.trial_rng(((probe_index as u64) << 32) | t);
                let g = gen.sample(&mut rng)?;
                let trial_params = CampaignParams { sequence: Some(ms.clone()), ..Default::default() };
                sector_trial(&g, &ms, |before| before, cfg, trial_params)
            })
            .collect();
        let mut probe = SearchProbe {
            rn_verdict: rn.as_ref().map(RnProfile::verdict),
            rn,
            sequence: ms,
            measured: 0,
            skipped: 0,
            worst_margin: None,
            non_shrinking: 0,
        };
        for o in outcomes.iter().flatten() {
            probe.skipped += u64::from(o.skipped);
            if let Some(m) = o.margin {
                probe.measured += 1;
                probe.worst_margin = Some(probe.worst_margin.map_or(m, |w: f64| w.min(m)));
                // margin = before − after; no strict shrink means margin ≤ tol
                if m <= tolerance {
                    probe.non_shrinking += 1;
                }
            }
        }
        report.probes.push(probe);
        all.extend(outcomes);
    }
    report.trials = all.len() as u64;
    merge(&mut report, all)?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

    fn gen(theta: f64, seed: u64) -> PolyGenSpec {
        PolyGenSpec {
            degree_min: 2,
            degree_max: 10,
            theta,
            randomize_theta: false,
            m_lo: 0.3,
            m_hi: 3.0,
            real_fraction: 0.3,
            seed,
        }
    }

    #[test]
    fn zsro_campaign_has_no_violation() {
        let params = CampaignParams { alpha: Some(0.5), ..Default::default() };
        let r = verify_theorem(TheoremId::Zsro, &gen(FRAC_PI_4, 42), &params, 100).unwrap();
        assert_eq!(r.measured + r.skipped, 100);
        assert!(r.worst_margin.unwrap() >= -1e-7, "{r:?}");
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn jsd_sharp_lands_on_boundary() {
        let g = PolyGenSpec { theta: 1.2, ..gen(1.2, 5) };
        let params = CampaignParams { alpha: Some(FRAC_PI_8), ..Default::default() };
        let r = verify_theorem(TheoremId::JsdSharp, &g, &params, 50).unwrap();
        assert!(r.measured > 0);
        assert!(r.worst_margin.unwrap() >= -1e-8, "{r:?}");
    }

    #[test]
    fn reports_are_deterministic() {
        let params = CampaignParams::default();
        let a = verify_theorem(TheoremId::Jsd, &gen(1.0, 9), &params, 40).unwrap();
        let b = verify_theorem(TheoremId::Jsd, &gen(1.0, 9), &params, 40).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        let back: VerificationReport = serde_json::from_str(&a.to_json()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn double_sector_report() {
        let params = CampaignParams {
            sequence: Some(MultiplierSequence::Gauss { alpha: 0.5 }),
            ..Default::default()
        };
        let r = verify_theorem(TheoremId::DoubleSector, &gen(0.5, 0), &params, 1).unwrap();
        let ds = r.double_sector.unwrap();
        assert_eq!(ds.verdict, "no reduction (as proven)");
        assert!(r.counterexample.is_none());
    }

    #[test]
    fn search_reports_rn_trends() {
        let family = SearchFamily::ExpPower { alphas: vec![0.3], powers: vec![1.5, 2.0] };
        let r = search_counterexample(&family, &gen(1.0, 1), 20, &SolverConfig::default()).unwrap();
        assert_eq!(r.probes.len(), 2);
        assert_eq!(r.probes[0].rn_verdict, Some(RnVerdict::FailsNecessaryCondition));
        assert_eq!(r.probes[1].rn_verdict, Some(RnVerdict::Inconclusive));
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomial_row(4), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
    }
}
