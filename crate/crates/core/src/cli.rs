//! Command-line front end.
//!
//! Exit codes: 0 success, 1 input error, 2 solver nonconvergence,
//! 3 hypothesis violation, 4 counterexample found.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use crate::analysis::{
    search_counterexample, verify_theorem_with, AnalysisError, CampaignParams, PolyGenSpec, SearchFamily, TheoremId,
    VerificationReport,
};
use crate::geometry::{
    disc_tangency_data, enclosing_sector_of, jensen_sector_disc, min_enclosing_double_sector, min_enclosing_strip,
    GeometryError,
};
use crate::io::{format_operator, parse_coefficients, parse_operator, parse_poly_document, write_poly_document, IoError};
use crate::operators::{
    apply_sequence, predicted_sector_after_cosine_step, predicted_sector_after_gauss, MultiplierSequence, OperatorError,
};
use crate::poly::RealPolynomial;
use crate::roots::{find_roots, RootError, SolverConfig, ZeroSet};
use crate::svg::{RayKind, Scene};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_NONCONVERGENCE: i32 = 2;
pub const EXIT_HYPOTHESIS: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "sectorlab", version, about = "Zero sectors of real polynomials under diagonal operators")]
#[command(allow_negative_numbers = true)]
struct Cli {
    /// Seed for randomized campaigns.
    #[arg(long, global = true, env = "SECTORLAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Trials per campaign.
    #[arg(long, global = true, default_value_t = 1000)]
    trials: u64,
    /// Override the campaign tolerance (radians for angle bounds).
    #[arg(long, global = true)]
    tol_angle: Option<f64>,
    /// Override the solver's relative residual acceptance threshold.
    #[arg(long, global = true)]
    tol_residual: Option<f64>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Comma-separated coefficients, constant term first.
    #[arg(long, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// JSON polynomial document.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GenArgs {
    /// Half-angle of the sector the generated zeros are drawn from.
    #[arg(long, default_value_t = std::f64::consts::FRAC_PI_4)]
    theta: f64,
    /// Draw each trial's half-angle uniformly from [0, theta].
    #[arg(long)]
    random_theta: bool,
    #[arg(long, default_value_t = 1)]
    degree_min: usize,
    #[arg(long, default_value_t = 12)]
    degree_max: usize,
    #[arg(long, default_value_t = 0.1)]
    m_lo: f64,
    #[arg(long, default_value_t = 10.0)]
    m_hi: f64,
    /// Probability that a root slot holds a real zero.
    #[arg(long, default_value_t = 0.3)]
    real_fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TheoremArg {
    Jsd,
    Zsro,
    Cosstep,
    Lms2,
    PeriodStrip,
    Roms,
    DoubleSector,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the zeros of a polynomial.
    #[command(allow_negative_numbers = true)]
    Roots {
        #[command(flatten)]
        input: Input,
    },
    /// Apply a diagonal operator and compare sectors before and after.
    #[command(allow_negative_numbers = true)]
    Apply {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: String,
    },
    /// Measure the enclosing sector, double sector and strip.
    #[command(allow_negative_numbers = true)]
    Sector {
        #[command(flatten)]
        input: Input,
        /// Also list the sector-discs for this rotation angle.
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Run a seeded verification campaign.
    #[command(allow_negative_numbers = true)]
    Verify {
        #[arg(value_enum)]
        theorem: TheoremArg,
        /// Check boundary sharpness on quadratics (jsd only).
        #[arg(long)]
        quadratic: bool,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        beta: Option<f64>,
        /// Rotation step θ of cos(λ + kθ) (lms2).
        #[arg(long)]
        rotation: Option<f64>,
        /// N of cos(αk/N) (cosstep).
        #[arg(long)]
        steps: Option<u32>,
        /// Sequence for roms and double-sector.
        #[arg(long)]
        op: Option<String>,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Hunt for sector growth under exp(−αk^p) or an explicit sequence.
    #[command(allow_negative_numbers = true)]
    Search {
        /// Comma-separated α grid for exppower.
        #[arg(long, conflicts_with = "op")]
        alphas: Option<String>,
        /// Comma-separated p grid for exppower.
        #[arg(long, conflicts_with = "op")]
        powers: Option<String>,
        /// An explicit:... sequence.
        #[arg(long)]
        op: Option<String>,
        #[command(flatten)]
        gen: GenArgs,
    },
    /// Draw zeros, sector rays and sector-discs as SVG.
    #[command(allow_negative_numbers = true)]
    Plot {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        op: Option<String>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        show_discs: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    NonConvergence(String),
    Hypothesis(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Input(_) => EXIT_INPUT,
            Failure::NonConvergence(_) => EXIT_NONCONVERGENCE,
            Failure::Hypothesis(_) => EXIT_HYPOTHESIS,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::NonConvergence(m) | Failure::Hypothesis(m) => m,
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<RootError> for Failure {
    fn from(e: RootError) -> Self {
        match e {
            RootError::NonConvergence { .. } => Failure::NonConvergence(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::HypothesisViolation { .. } => Failure::Hypothesis(e.to_string()),
            OperatorError::Root(r) => r.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<AnalysisError> for Failure {
    fn from(e: AnalysisError) -> Self {
        match e {
            AnalysisError::Operator(o) => o.into(),
            AnalysisError::Root(r) => r.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<GeometryError> for Failure {
    fn from(e: GeometryError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    let cfg = solver_config(cli)?;
    match &cli.command {
        Command::Roots { input } => cmd_roots(cli, &read_input(input)?, &cfg, out),
        Command::Apply { input, op } => cmd_apply(cli, &read_input(input)?, op, &cfg, out),
        Command::Sector { input, alpha } => cmd_sector(cli, &read_input(input)?, *alpha, &cfg, out),
        Command::Verify { .. } => cmd_verify(cli, &cfg, out),
        Command::Search { .. } => cmd_search(cli, &cfg, out),
        Command::Plot { input, op, alpha, show_discs } => {
            cmd_plot(cli, &read_input(input)?, op.as_deref(), *alpha, *show_discs, &cfg, out)
        }
    }
}

fn solver_config(cli: &Cli) -> Result<SolverConfig, Failure> {
    let mut cfg = SolverConfig::default();
    for (flag, value) in [("--tol-angle", cli.tol_angle), ("--tol-residual", cli.tol_residual)] {
        if value.is_some_and(|t| !(t >= 0.0 && t.is_finite())) {
            return Err(Failure::Input(format!("{flag} must be a nonnegative number")));
        }
    }
    if let Some(t) = cli.tol_residual {
        cfg.residual_accept = t;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn read_input(input: &Input) -> Result<RealPolynomial, Failure> {
    match (&input.coeffs, &input.input) {
        (Some(list), None) => Ok(parse_coefficients(list)?),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            parse_poly_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        _ => Err(Failure::Input("give exactly one of --coeffs or --input".into())),
    }
}

fn emit(cli: &Cli, text: &str, out: &mut dyn Write) -> Result<(), Failure> {
    match &cli.output {
        Some(path) => write_file(path, text),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}"))),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Ten decimals, trailing zeros trimmed, no negative zero.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.10}");
    let s = if s.contains('.') { s.trim_end_matches('0').trim_end_matches('.') } else { &s };
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

pub fn fmt_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        return fmt_num(z.re);
    }
    let im = fmt_num(z.im.abs());
    let sign = if z.im < 0.0 && im != "0" { '-' } else { '+' };
    format!("{}{sign}{im}i", fmt_num(z.re))
}

/// `"1+1i (×1), 1-1i (×1)"`.
pub fn fmt_zero_list(zs: &ZeroSet) -> String {
    let parts: Vec<String> = zs
        .zeros()
        .iter()
        .map(|z| format!("{} (×{})", fmt_complex(z.location), z.multiplicity))
        .collect();
    parts.join(", ")
}

fn zeros_json(zs: &ZeroSet) -> serde_json::Value {
    zs.zeros()
        .iter()
        .map(|z| json!({"re": z.location.re, "im": z.location.im, "multiplicity": z.multiplicity, "residual": z.residual}))
        .collect()
}

fn solve(p: &RealPolynomial, cfg: &SolverConfig) -> Result<Option<ZeroSet>, Failure> {
    if p.degree() == 0 {
        return Ok(None);
    }
    Ok(Some(find_roots(&p.to_complex(), cfg)?))
}

fn cmd_roots(cli: &Cli, p: &RealPolynomial, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let Some(zs) = solve(p, cfg)? else {
        return Err(Failure::Input("a constant polynomial has no zeros".into()));
    };
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Text => format!("{}\n", fmt_zero_list(&zs)),
        Format::Json => format!("{}\n", json!({"degree": p.degree(), "zeros": zeros_json(&zs)})),
        Format::Csv => {
            let mut buf = Vec::new();
            zs.write_csv(&mut buf).map_err(|e| Failure::Input(e.to_string()))?;
            String::from_utf8(buf).expect("csv output is ASCII")
        }
        Format::Svg => Scene { before: zs.locations(), ..Default::default() }.render(),
    };
    emit(cli, &text, out)?;
    Ok(EXIT_OK)
}

fn predicted_bound(ms: &MultiplierSequence, theta: f64) -> Option<f64> {
    match *ms {
        MultiplierSequence::Gauss { alpha } => Some(predicted_sector_after_gauss(theta, alpha)),
        MultiplierSequence::CosineStep { alpha, n } => Some(predicted_sector_after_cosine_step(theta, alpha, n)),
        _ => None,
    }
}

fn sector_or_note(zs: Option<&ZeroSet>) -> Result<f64, String> {
    let Some(zs) = zs else {
        return Err("no zeros".into());
    };
    match enclosing_sector_of(&zs.locations()) {
        Ok(t) => Ok(t),
        Err(GeometryError::NotInRightHalfPlane { zero, angle }) => Err(format!(
            "no sector: zero {} has |arg| = {} >= π/2",
            fmt_complex(zero),
            fmt_num(angle)
        )),
        Err(e) => Err(e.to_string()),
    }
}

fn cmd_apply(cli: &Cli, p: &RealPolynomial, op: &str, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let ms = parse_operator(op)?;
    let before = solve(p, cfg)?;
    let t = apply_sequence(p, &ms)?;
    let after = solve(&t.poly, cfg)?;
    let theta_before = sector_or_note(before.as_ref());
    let theta_after = sector_or_note(after.as_ref());
    let predicted = theta_before.as_ref().ok().and_then(|&th| predicted_bound(&ms, th));
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Json | Format::Csv | Format::Svg => {
            let doc = json!({
                "operator": format_operator(&ms),
                "coeffs": t.poly.coeffs(),
                "original_degree": t.original_degree,
                "degree_drop": t.degree_drop(),
                "theta_before": theta_before.as_ref().ok(),
                "theta_after": theta_after.as_ref().ok(),
                "predicted": predicted,
                "zeros_before": before.as_ref().map(zeros_json),
                "zeros_after": after.as_ref().map(zeros_json),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("finite values"))
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "operator: {}", format_operator(&ms));
            let _ = writeln!(s, "coeffs: {}", write_poly_document(&t.poly));
            if t.degree_drop() > 0 {
                let _ = writeln!(s, "degree drop: {} (degree {} -> {})", t.degree_drop(), t.original_degree, t.poly.degree());
            }
            let show = |r: &Result<f64, String>| r.as_ref().map_or_else(|n| n.clone(), |v| fmt_num(*v));
            let _ = writeln!(s, "theta_before: {}", show(&theta_before));
            let _ = writeln!(s, "theta_after: {}", show(&theta_after));
            if let Some(g) = predicted {
                let _ = writeln!(s, "predicted: {}", fmt_num(g));
            }
            match &after {
                Some(zs) => {
                    let _ = writeln!(s, "zeros after: {}", fmt_zero_list(zs));
                }
                None => {
                    let _ = writeln!(s, "zeros after: none (constant)");
                }
            }
            s
        }
    };
    emit(cli, &text, out)?;
    Ok(EXIT_OK)
}

fn cmd_sector(cli: &Cli, p: &RealPolynomial, alpha: Option<f64>, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let Some(zs) = solve(p, cfg)? else {
        return Err(Failure::Input("a constant polynomial has no zeros".into()));
    };
    let locs = zs.locations();
    let theta = sector_or_note(Some(&zs));
    let double = min_enclosing_double_sector(&zs)?;
    let strip = min_enclosing_strip(&locs)?;
    let mut discs = Vec::new();
    if let Some(alpha) = alpha {
        for z in zs.zeros().iter().filter(|z| z.location.im > 0.0 && z.location.re > 0.0) {
            let d = jensen_sector_disc(z.location.re, z.location.im, alpha)?;
            let tangency = disc_tangency_data(&d).ok();
            discs.push(json!({
                "a": d.a,
                "b": d.b,
                "center": d.circle.map(|c| c.center),
                "radius": d.circle.map(|c| c.radius),
                "gamma": tangency.map(|t| t.gamma),
            }));
        }
    }
    let text = match cli.format.unwrap_or(Format::Text) {
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "zeros: {}", fmt_zero_list(&zs));
            let _ = writeln!(s, "sign pattern: {}", serde_json::to_value(p.sign_pattern()).expect("enum").as_str().unwrap_or("?"));
            let _ = writeln!(s, "sector: {}", theta.as_ref().map_or_else(|n| n.clone(), |v| fmt_num(*v)));
            let _ = writeln!(s, "double sector: {}", fmt_num(double));
            let _ = writeln!(s, "strip: {}", fmt_num(strip));
            for d in &discs {
                let _ = match d["center"].as_f64() {
                    Some(c) => writeln!(
                        s,
                        "disc at {}+{}i: center {}, radius {}, gamma {}",
                        fmt_num(d["a"].as_f64().unwrap_or(0.0)),
                        fmt_num(d["b"].as_f64().unwrap_or(0.0)),
                        fmt_num(c),
                        fmt_num(d["radius"].as_f64().unwrap_or(0.0)),
                        fmt_num(d["gamma"].as_f64().unwrap_or(0.0))
                    ),
                    None => writeln!(
                        s,
                        "disc at {}+{}i: empty",
                        fmt_num(d["a"].as_f64().unwrap_or(0.0)),
                        fmt_num(d["b"].as_f64().unwrap_or(0.0))
                    ),
                };
            }
            s
        }
        _ => {
            let doc = json!({
                "sign_pattern": p.sign_pattern(),
                "sector": theta.as_ref().ok(),
                "sector_note": theta.as_ref().err(),
                "double_sector": double,
                "strip": strip,
                "discs": discs,
                "zeros": zeros_json(&zs),
            });
            format!("{}\n", serde_json::to_string_pretty(&doc).expect("finite values"))
        }
    };
    emit(cli, &text, out)?;
    Ok(EXIT_OK)
}

fn gen_spec(g: &GenArgs, seed: u64) -> PolyGenSpec {
    PolyGenSpec {
        degree_min: g.degree_min,
        degree_max: g.degree_max,
        theta: g.theta,
        randomize_theta: g.random_theta,
        m_lo: g.m_lo,
        m_hi: g.m_hi,
        real_fraction: g.real_fraction,
        seed,
    }
}

fn summarize(report: &VerificationReport) -> String {
    let mut s = String::new();
    let id = serde_json::to_value(report.theorem_id).expect("enum");
    let _ = writeln!(s, "theorem: {}", id.as_str().unwrap_or("?"));
    let _ = writeln!(
        s,
        "trials: {} (measured {}, skipped {}, degenerate {})",
        report.trials, report.measured, report.skipped, report.degenerate
    );
    let _ = writeln!(s, "seed: {}", report.seed);
    match report.worst_margin {
        Some(m) => {
            let _ = writeln!(s, "worst margin: {m:e} (tolerance {:e})", report.tolerance);
        }
        None => {
            let _ = writeln!(s, "worst margin: n/a (nothing measured)");
        }
    }
    if report.theorem_id == TheoremId::JsdSharp {
        if let Some(m) = report.worst_margin {
            let _ = writeln!(s, "boundary margin: max ||z - c| - r| / r = {:e}", -m);
        }
    }
    if let Some(ds) = &report.double_sector {
        let _ = writeln!(s, "before: {}, after: {}", fmt_num(ds.before), fmt_num(ds.after));
        let _ = writeln!(s, "verdict: {}", ds.verdict);
    }
    for probe in &report.probes {
        let trend = probe
            .rn
            .as_ref()
            .map(|r| serde_json::to_value(r.tail_trend).expect("enum").as_str().unwrap_or("?").to_string())
            .unwrap_or_else(|| "n/a".into());
        let verdict = probe
            .rn_verdict
            .map(|v| serde_json::to_value(v).expect("enum").as_str().unwrap_or("?").to_string())
            .unwrap_or_else(|| "n/a".into());
        let _ = writeln!(
            s,
            "{}: r_n trend {trend} ({verdict}), worst margin {}, non-shrinking {}/{}",
            format_operator(&probe.sequence),
            probe.worst_margin.map_or("n/a".into(), |m| format!("{m:e}")),
            probe.non_shrinking,
            probe.measured
        );
    }
    match &report.counterexample {
        None => {
            let _ = writeln!(s, "counterexample: none");
        }
        Some(c) => {
            let _ = writeln!(
                s,
                "counterexample: trial {} zero {} margin {:e}",
                c.trial,
                fmt_complex(Complex64::new(c.zero[0], c.zero[1])),
                c.margin
            );
        }
    }
    s
}

fn finish_campaign(cli: &Cli, report: &VerificationReport, out: &mut dyn Write) -> Result<i32, Failure> {
    let json = format!("{}\n", report.to_json());
    let stdout_json = cli.format == Some(Format::Json) && cli.output.is_none();
    let path = match &cli.output {
        Some(p) => Some(p.clone()),
        None if report.has_counterexample() => {
            let id = serde_json::to_value(report.theorem_id).expect("enum");
            Some(PathBuf::from(format!("counterexample-{}-seed{}.json", id.as_str().unwrap_or("report"), report.seed)))
        }
        None => None,
    };
    if let Some(p) = &path {
        write_file(p, &json)?;
    }
    let mut text = if stdout_json { json } else { summarize(report) };
    if report.has_counterexample() {
        if let Some(p) = &path {
            let _ = writeln!(text, "certificate: {}", p.display());
        }
    }
    out.write_all(text.as_bytes()).map_err(|e| Failure::Input(format!("stdout: {e}")))?;
    Ok(if report.has_counterexample() { EXIT_COUNTEREXAMPLE } else { EXIT_OK })
}

fn cmd_verify(cli: &Cli, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let Command::Verify { theorem, quadratic, alpha, lambda, beta, rotation, steps, op, gen } = &cli.command else {
        unreachable!("dispatched on Verify");
    };
    let theorem = match (theorem, quadratic) {
        (TheoremArg::Jsd, true) => TheoremId::JsdSharp,
        (_, true) => return Err(Failure::Input("--quadratic applies to jsd only".into())),
        (TheoremArg::Jsd, false) => TheoremId::Jsd,
        (TheoremArg::Zsro, _) => TheoremId::Zsro,
        (TheoremArg::Cosstep, _) => TheoremId::CosStep,
        (TheoremArg::Lms2, _) => TheoremId::Lms2,
        (TheoremArg::PeriodStrip, _) => TheoremId::PeriodStrip,
        (TheoremArg::Roms, _) => TheoremId::Roms,
        (TheoremArg::DoubleSector, _) => TheoremId::DoubleSector,
    };
    let sequence = op.as_deref().map(parse_operator).transpose()?;
    if theorem == TheoremId::DoubleSector && sequence.is_none() {
        return Err(Failure::Input("double-sector needs --op".into()));
    }
    let params = CampaignParams {
        alpha: *alpha,
        lambda: *lambda,
        beta: *beta,
        theta: *rotation,
        steps: *steps,
        sequence,
        tolerance: cli.tol_angle,
    };
    let trials = if theorem == TheoremId::DoubleSector { 1 } else { cli.trials };
    let report = verify_theorem_with(theorem, &gen_spec(gen, cli.seed), &params, trials, cfg)?;
    finish_campaign(cli, &report, out)
}

fn parse_grid(list: &str, what: &str) -> Result<Vec<f64>, Failure> {
    list.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Failure::Input(format!("{what}: cannot parse {:?}", t.trim())))
        })
        .collect()
}

fn cmd_search(cli: &Cli, cfg: &SolverConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let Command::Search { alphas, powers, op, gen } = &cli.command else {
        unreachable!("dispatched on Search");
    };
    let family = match (op, alphas, powers) {
        (Some(op), _, _) => match parse_operator(op)? {
            MultiplierSequence::Explicit { values } => SearchFamily::Explicit { values },
            other => {
                return Err(Failure::Input(format!(
                    "search takes an explicit sequence or an exppower grid, not {}",
                    format_operator(&other)
                )))
            }
        },
        (None, Some(a), Some(p)) => {
            let alphas = parse_grid(a, "--alphas")?;
            let powers = parse_grid(p, "--powers")?;
            for &alpha in &alphas {
                for &p in &powers {
                    MultiplierSequence::ExpPower { alpha, p }.validate()?;
                }
            }
            SearchFamily::ExpPower { alphas, powers }
        }
        _ => return Err(Failure::Input("give --op explicit:... or both --alphas and --powers".into())),
    };
    let report = search_counterexample(&family, &gen_spec(gen, cli.seed), cli.trials, cfg)?;
    finish_campaign(cli, &report, out)
}

fn cmd_plot(
    cli: &Cli,
    p: &RealPolynomial,
    op: Option<&str>,
    alpha: Option<f64>,
    show_discs: bool,
    cfg: &SolverConfig,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    if show_discs && alpha.is_none() {
        return Err(Failure::Input("--show-discs needs --alpha".into()));
    }
    let ms = op.map(parse_operator).transpose()?;
    let Some(zs) = solve(p, cfg)? else {
        return Err(Failure::Input("a constant polynomial has no zeros".into()));
    };
    let mut scene = Scene { before: zs.locations(), ..Default::default() };
    let theta = sector_or_note(Some(&zs));
    match &theta {
        Ok(t) => scene.rays.push((RayKind::Measured, *t)),
        Err(note) => scene.notes.push(note.clone()),
    }
    if let Some(ms) = &ms {
        let t = apply_sequence(p, ms)?;
        if let Some(after) = solve(&t.poly, cfg)? {
            scene.after = after.locations();
        }
        if let Some(g) = theta.as_ref().ok().and_then(|&th| predicted_bound(ms, th)) {
            scene.rays.push((RayKind::Predicted, g));
        }
        if t.degree_drop() > 0 {
            scene.notes.push(format!("degree drop {}", t.degree_drop()));
        }
    }
    if let (true, Some(alpha)) = (show_discs, alpha) {
        for z in zs.zeros().iter().filter(|z| z.location.im > 0.0 && z.location.re > 0.0) {
            let d = jensen_sector_disc(z.location.re, z.location.im, alpha)?;
            if let (Some(c), Ok(tan)) = (d.circle, disc_tangency_data(&d)) {
                scene.discs.push(c);
                scene.rays.push((RayKind::Tangent, tan.gamma));
            }
        }
    }
    emit(cli, &scene.render(), out)?;
    Ok(EXIT_OK)
}
