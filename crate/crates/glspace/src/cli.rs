//! The `glspace` binary: reproducible verification runs emitting CSV
//! tables and a plain-text report.
//!
//! Commands: `norms`, `counterexample`, `montecarlo`, `embedding`. Shared
//! flags configure β, the base profile, truncation, seed, grids, tolerance
//! and the output directory; a TOML config file may supply any of them,
//! with explicit flags winning. Every command is a pure function of its
//! resolved config: the same config and seed produce byte-identical files.
//!
//! Exit codes: 0 success, 1 validation failure, 2 certified-check failure,
//! 3 numerical non-convergence.

use crate::measure::{MeasureError, QuadratureConfig, UnitIntervalFunction};
use crate::montecarlo::{
    borel_cantelli_diagnostic, dyadic_partition, estimate_lp, singleton_partition, tail_curve,
    union_bound_check, SampleBatch,
};
use crate::norms::{
    gls_norm, lorentz_norm, lorentz_default_tgrid, lp_norm, luxemburg_norm, LorentzWeight,
    NormError, NormReport, NormValue,
};
use crate::process::{build_spec, default_certificate_grid, BlockProcess, ProcessError, TPoint};
use crate::psi::{
    endpoint_gap_grid, gls_weaker, orlicz_weaker, PsiError, PsiFunction, RelationConfig,
    YoungFunction,
};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VALIDATION: u8 = 1;
pub const EXIT_CHECK_FAILED: u8 = 2;
pub const EXIT_NO_CONVERGENCE: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration:\n{}", .0.join("\n"))]
    Validation(Vec<String>),
    #[error("certified check failed: {0}")]
    CertifiedCheckFailed(String),
    #[error("numerical non-convergence: {0}")]
    NonConvergence(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) | CliError::Io(_) => EXIT_VALIDATION,
            CliError::CertifiedCheckFailed(_) => EXIT_CHECK_FAILED,
            CliError::NonConvergence(_) => EXIT_NO_CONVERGENCE,
        }
    }
}

fn classify_measure(e: MeasureError) -> CliError {
    match e {
        MeasureError::NoConvergence { .. } | MeasureError::NonFinite { .. } => {
            CliError::NonConvergence(e.to_string())
        }
        other => CliError::Validation(vec![other.to_string()]),
    }
}

fn classify_norm(e: NormError) -> CliError {
    match e {
        NormError::Measure(m) => classify_measure(m),
        NormError::LuxemburgStall { .. } | NormError::RearrangementBracket { .. } | NormError::UnboundedTail { .. } => {
            CliError::NonConvergence(e.to_string())
        }
        other => CliError::Validation(vec![other.to_string()]),
    }
}

fn classify_process(e: ProcessError) -> CliError {
    match e {
        ProcessError::Norm(n) => classify_norm(n),
        ProcessError::Measure(m) => classify_measure(m),
        other => CliError::Validation(vec![other.to_string()]),
    }
}

/// Number formatting for CSV cells: plain decimal inside [1e-6, 1e6),
/// scientific outside, '.' decimal separator, no locale dependence.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let a = x.abs();
    if !(1e-6..1e6).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn norm_cell(report: &NormReport) -> (String, String, String) {
    match &report.value {
        NormValue::Finite(v) => (
            fmt_f64(*v),
            fmt_f64(report.abs_error),
            report.location.map(fmt_f64).unwrap_or_default(),
        ),
        NormValue::Divergent { witnesses } => {
            let top = witnesses.last().map(|w| w.location).unwrap_or(f64::NAN);
            ("divergent".into(), String::new(), fmt_f64(top))
        }
    }
}

// ---------------------------------------------------------------------------
// Config resolution
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSpec {
    Constant(f64),
    SqrtLog,
    Indicator(f64),
}

impl ProfileSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["constant", c] => c
                .parse()
                .map(ProfileSpec::Constant)
                .map_err(|_| format!("bad constant value in profile '{s}'")),
            ["sqrt-log"] => Ok(ProfileSpec::SqrtLog),
            ["indicator", m] => m
                .parse()
                .map(ProfileSpec::Indicator)
                .map_err(|_| format!("bad indicator mass in profile '{s}'")),
            _ => Err(format!(
                "unknown profile '{s}' (expected constant:<c> | sqrt-log | indicator:<mass>)"
            )),
        }
    }

    pub fn build(&self) -> Result<UnitIntervalFunction, String> {
        match self {
            ProfileSpec::Constant(c) => UnitIntervalFunction::constant(*c),
            ProfileSpec::SqrtLog => Ok(UnitIntervalFunction::sqrt_log()),
            ProfileSpec::Indicator(m) => UnitIntervalFunction::indicator(*m),
        }
        .map_err(|e| e.to_string())
    }

    pub fn label(&self) -> String {
        match self {
            ProfileSpec::Constant(c) => format!("constant:{c}"),
            ProfileSpec::SqrtLog => "sqrt-log".into(),
            ProfileSpec::Indicator(m) => format!("indicator:{m}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridSpec {
    Linear { lo: f64, hi: f64, n: usize },
    Geometric { lo: f64, hi: f64, n: usize },
    /// Points b - 2^(-k) for k in kmin..=kmax.
    Dyadic { b: f64, kmin: u32, kmax: u32 },
}

impl GridSpec {
    pub fn parse(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("unknown grid '{s}' (expected lin:<lo>:<hi>:<n> | geo:<lo>:<hi>:<n> | dyadic:<b>:<kmin>:<kmax>)");
        match parts.as_slice() {
            ["lin", lo, hi, n] => {
                let (lo, hi, n) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?);
                Ok(GridSpec::Linear { lo, hi, n })
            }
            ["geo", lo, hi, n] => {
                let (lo, hi, n) = (lo.parse().map_err(|_| bad())?, hi.parse().map_err(|_| bad())?, n.parse().map_err(|_| bad())?);
                Ok(GridSpec::Geometric { lo, hi, n })
            }
            ["dyadic", b, kmin, kmax] => {
                let (b, kmin, kmax) = (b.parse().map_err(|_| bad())?, kmin.parse().map_err(|_| bad())?, kmax.parse().map_err(|_| bad())?);
                Ok(GridSpec::Dyadic { b, kmin, kmax })
            }
            _ => Err(bad()),
        }
    }

    pub fn validate(&self) -> Result<(), String> {
        match *self {
            GridSpec::Linear { lo, hi, n } | GridSpec::Geometric { lo, hi, n } => {
                if !(lo < hi) || n < 2 {
                    return Err(format!("grid needs lo < hi and n ≥ 2, got {self:?}"));
                }
                if matches!(self, GridSpec::Geometric { .. }) && !(lo > 0.0) {
                    return Err("geometric grid needs lo > 0".into());
                }
                Ok(())
            }
            GridSpec::Dyadic { b, kmin, kmax } => {
                if !(b > 1.0) || kmin < 1 || kmax < kmin {
                    return Err(format!("dyadic grid needs b > 1 and 1 ≤ kmin ≤ kmax, got {self:?}"));
                }
                Ok(())
            }
        }
    }

    pub fn points(&self) -> Vec<f64> {
        match *self {
            GridSpec::Linear { lo, hi, n } => (0..n)
                .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
                .collect(),
            GridSpec::Geometric { lo, hi, n } => {
                let r = (hi / lo).powf(1.0 / (n - 1) as f64);
                (0..n).map(|i| lo * r.powi(i as i32)).collect()
            }
            GridSpec::Dyadic { b, kmin, kmax } => {
                (kmin..=kmax).map(|k| b - 0.5f64.powi(k as i32)).collect()
            }
        }
    }
}

fn parse_psi_spec(
    s: &str,
    profile: &ProfileSpec,
    cfg: QuadratureConfig,
) -> Result<PsiFunction, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let num = |t: &str| t.parse::<f64>().map_err(|_| format!("bad number '{t}' in psi spec '{s}'"));
    let built = match parts.as_slice() {
        ["natural", pmax] => {
            let f = profile.build()?;
            PsiFunction::natural(f, num(pmax)?, cfg)
        }
        ["power-singular", beta, b] => PsiFunction::power_singular(num(beta)?, num(b)?),
        ["degenerate", r] => PsiFunction::degenerate(num(r)?),
        ["constant", v, a, b] => PsiFunction::constant(num(v)?, num(a)?, num(b)?),
        ["p-power", g, a, b] => PsiFunction::p_power(num(g)?, num(a)?, num(b)?),
        _ => {
            return Err(format!(
                "unknown psi family '{s}' (expected natural:<pmax> | power-singular:<beta>:<b> | degenerate:<r> | constant:<v>:<a>:<b> | p-power:<gamma>:<a>:<b>)"
            ))
        }
    };
    built.map_err(|e| e.to_string())
}

fn parse_young_spec(s: &str) -> Result<YoungFunction, String> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        ["power", p] => p
            .parse()
            .map_err(|_| format!("bad exponent in young spec '{s}'"))
            .and_then(|p| YoungFunction::power(p).map_err(|e| e.to_string())),
        ["exp-square"] => Ok(YoungFunction::exp_square()),
        ["exp-linear"] => Ok(YoungFunction::exp_linear()),
        _ => Err(format!("unknown young family '{s}' (expected power:<p> | exp-square | exp-linear)")),
    }
}

/// Optional TOML file mirroring the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    beta: Option<f64>,
    profile: Option<String>,
    nmax: Option<u64>,
    seed: Option<u64>,
    out: Option<String>,
    p_grid: Option<String>,
    u_grid: Option<String>,
    tol: Option<f64>,
    count: Option<usize>,
    psi: Option<String>,
    young: Option<String>,
    weight: Option<f64>,
    mode: Option<String>,
    lhs: Option<String>,
    rhs: Option<String>,
    lambdas: Option<String>,
}

/// Fully resolved run parameters. Every field has a documented default:
/// β = 1, profile constant:1, nmax = 100000, seed = 42, out = "reports",
/// draws = 100000, rel tol = 1e-9, ψ = natural:4, Φ = exp-square,
/// Lorentz weight exponent 1, embedding mode gls with λ = 0.5,1,2,10.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub beta: f64,
    pub profile: ProfileSpec,
    pub nmax: u64,
    pub seed: u64,
    pub out: PathBuf,
    pub p_grid: Option<GridSpec>,
    pub u_grid: Option<GridSpec>,
    pub quadrature: QuadratureConfig,
    pub count: usize,
    pub psi: String,
    pub young: String,
    pub weight_alpha: f64,
    pub mode: String,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub lambdas: Vec<f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            beta: 1.0,
            profile: ProfileSpec::Constant(1.0),
            nmax: 100_000,
            seed: 42,
            out: PathBuf::from("reports"),
            p_grid: None,
            u_grid: None,
            quadrature: QuadratureConfig::default(),
            count: 100_000,
            psi: "natural:4".into(),
            young: "exp-square".into(),
            weight_alpha: 1.0,
            mode: "gls".into(),
            lhs: None,
            rhs: None,
            lambdas: vec![0.5, 1.0, 2.0, 10.0],
        }
    }
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Block growth exponent β (> 0)
    #[arg(long)]
    pub beta: Option<f64>,
    /// Base profile: constant:<c> | sqrt-log | indicator:<mass>
    #[arg(long)]
    pub profile: Option<String>,
    /// Series/block truncation index
    #[arg(long)]
    pub nmax: Option<u64>,
    /// Master seed for all sampling
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory for CSV tables and report.txt
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Exponent grid: lin:<lo>:<hi>:<n> | geo:<lo>:<hi>:<n> | dyadic:<b>:<kmin>:<kmax>
    #[arg(long = "p-grid")]
    pub p_grid: Option<String>,
    /// Threshold grid, same syntax
    #[arg(long = "u-grid")]
    pub u_grid: Option<String>,
    /// Relative quadrature tolerance override
    #[arg(long)]
    pub tol: Option<f64>,
    /// Monte Carlo draw count
    #[arg(long)]
    pub count: Option<usize>,
    /// TOML config file; explicit flags win over its entries
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// ψ family for the Grand Lebesgue row of `norms`
    #[arg(long)]
    pub psi: Option<String>,
    /// Young family for the Luxemburg row of `norms`
    #[arg(long)]
    pub young: Option<String>,
    /// Lorentz weight exponent α in v(t) = t^α
    #[arg(long)]
    pub weight: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct EmbeddingArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Relation to decide: gls | orlicz
    #[arg(long)]
    pub mode: Option<String>,
    /// Left-hand (candidate weaker) function spec
    #[arg(long)]
    pub lhs: Option<String>,
    /// Right-hand function spec
    #[arg(long)]
    pub rhs: Option<String>,
    /// Comma-separated λ values for the Orlicz relation
    #[arg(long)]
    pub lambdas: Option<String>,
}

#[derive(Parser, Debug)]
#[command(name = "glspace", version, about = "Norm calculus and block-process verification runs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Norm table (Lp, Grand Lebesgue, Luxemburg, Lorentz) for a profile
    Norms(CommonArgs),
    /// Block-process verification tables and certificates
    Counterexample(CommonArgs),
    /// Sampling diagnostics with exact overlays
    Montecarlo(CommonArgs),
    /// Embedding relation verdict with ratio trace
    Embedding(EmbeddingArgs),
}

/// Merge defaults ← config file ← flags, then validate everything at once.
pub fn resolve(common: &CommonArgs, embedding: Option<&EmbeddingArgs>) -> Result<RunConfig, CliError> {
    let mut problems = Vec::new();
    let mut cfg = RunConfig::default();

    let file: FileConfig = match &common.config {
        Some(path) => match fs::read_to_string(path) {
            Ok(text) => match toml::from_str(&text) {
                Ok(parsed) => parsed,
                Err(e) => {
                    problems.push(format!("config file {}: {e}", path.display()));
                    FileConfig::default()
                }
            },
            Err(e) => {
                problems.push(format!("config file {}: {e}", path.display()));
                FileConfig::default()
            }
        },
        None => FileConfig::default(),
    };

    cfg.beta = common.beta.or(file.beta).unwrap_or(cfg.beta);
    if !(cfg.beta > 0.0) || !cfg.beta.is_finite() {
        problems.push(format!("beta must be positive and finite, got {}", cfg.beta));
    }

    if let Some(p) = common.profile.as_deref().or(file.profile.as_deref()) {
        match ProfileSpec::parse(p) {
            Ok(spec) => cfg.profile = spec,
            Err(e) => problems.push(e),
        }
    }
    if let Err(e) = cfg.profile.build() {
        problems.push(e);
    }

    cfg.nmax = common.nmax.or(file.nmax).unwrap_or(cfg.nmax);
    if cfg.nmax < 10 {
        problems.push(format!("nmax must be at least 10, got {}", cfg.nmax));
    }
    cfg.seed = common.seed.or(file.seed).unwrap_or(cfg.seed);
    if let Some(out) = common.out.clone().or_else(|| file.out.clone().map(PathBuf::from)) {
        cfg.out = out;
    }

    for (name, raw, slot) in [
        ("p-grid", common.p_grid.as_deref().or(file.p_grid.as_deref()), &mut cfg.p_grid),
        ("u-grid", common.u_grid.as_deref().or(file.u_grid.as_deref()), &mut cfg.u_grid),
    ] {
        if let Some(raw) = raw {
            match GridSpec::parse(raw).and_then(|g| g.validate().map(|_| g)) {
                Ok(g) => *slot = Some(g),
                Err(e) => problems.push(format!("{name}: {e}")),
            }
        }
    }

    if let Some(tol) = common.tol.or(file.tol) {
        if tol > 0.0 && tol < 1.0 {
            cfg.quadrature.rel_tol = tol;
        } else {
            problems.push(format!("tol must lie in (0, 1), got {tol}"));
        }
    }

    cfg.count = common.count.or(file.count).unwrap_or(cfg.count);
    if cfg.count == 0 {
        problems.push("count must be positive".into());
    }

    if let Some(psi) = common.psi.clone().or(file.psi) {
        cfg.psi = psi;
    }
    if let Err(e) = parse_psi_spec(&cfg.psi, &cfg.profile, cfg.quadrature) {
        problems.push(e);
    }
    if let Some(young) = common.young.clone().or(file.young) {
        cfg.young = young;
    }
    if let Err(e) = parse_young_spec(&cfg.young) {
        problems.push(e);
    }
    cfg.weight_alpha = common.weight.or(file.weight).unwrap_or(cfg.weight_alpha);
    if !(cfg.weight_alpha > 0.0) {
        problems.push(format!("weight exponent must be positive, got {}", cfg.weight_alpha));
    }

    if let Some(emb) = embedding {
        cfg.mode = emb.mode.clone().or(file.mode).unwrap_or(cfg.mode);
        if cfg.mode != "gls" && cfg.mode != "orlicz" {
            problems.push(format!("mode must be gls or orlicz, got '{}'", cfg.mode));
        }
        cfg.lhs = emb.lhs.clone().or(file.lhs);
        cfg.rhs = emb.rhs.clone().or(file.rhs);
        if cfg.lhs.is_none() {
            problems.push("embedding requires --lhs".into());
        }
        if cfg.rhs.is_none() {
            problems.push("embedding requires --rhs".into());
        }
        if let Some(raw) = emb.lambdas.clone().or(file.lambdas) {
            match raw.split(',').map(|t| t.trim().parse::<f64>()).collect::<Result<Vec<_>, _>>() {
                Ok(ls) if !ls.is_empty() && ls.iter().all(|&l| l > 0.0) => cfg.lambdas = ls,
                _ => problems.push(format!("lambdas must be positive numbers, got '{raw}'")),
            }
        }
    }

    if problems.is_empty() {
        Ok(cfg)
    } else {
        Err(CliError::Validation(problems))
    }
}

// ---------------------------------------------------------------------------
// CSV and report plumbing
// ---------------------------------------------------------------------------

fn write_csv(path: &Path, header: &str, rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut buf = String::new();
    buf.push_str(header);
    buf.push('\n');
    for row in rows {
        buf.push_str(&row.join(","));
        buf.push('\n');
    }
    fs::write(path, buf)?;
    Ok(())
}

struct Report {
    lines: Vec<String>,
    failed: Option<String>,
}

impl Report {
    fn new(title: &str) -> Self {
        Self { lines: vec![title.to_string()], failed: None }
    }

    fn note(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        let status = if ok { "PASS" } else { "FAIL" };
        self.lines.push(format!("check {name}: {status} ({})", detail.into()));
        if !ok && self.failed.is_none() {
            self.failed = Some(name.to_string());
        }
    }

    fn finish(self, out_dir: &Path) -> Result<(), CliError> {
        let text = self.lines.join("\n") + "\n";
        fs::write(out_dir.join("report.txt"), &text)?;
        let stdout = std::io::stdout();
        let mut handle = stdout.lock();
        let _ = handle.write_all(text.as_bytes());
        match self.failed {
            None => Ok(()),
            Some(which) => Err(CliError::CertifiedCheckFailed(which)),
        }
    }
}

fn ensure_out(cfg: &RunConfig) -> Result<(), CliError> {
    fs::create_dir_all(&cfg.out)?;
    Ok(())
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

/// Norm table for the configured profile: one row per (norm, parameter).
pub fn cmd_norms(cfg: &RunConfig) -> Result<(), CliError> {
    ensure_out(cfg)?;
    let f = cfg.profile.build().map_err(|e| CliError::Validation(vec![e]))?;
    let quad = &cfg.quadrature;
    let ps = cfg
        .p_grid
        .unwrap_or(GridSpec::Linear { lo: 1.0, hi: 4.0, n: 7 })
        .points();

    let mut rows = Vec::new();
    for &p in &ps {
        let rep = lp_norm(&f, p, quad).map_err(classify_norm)?;
        let (v, e, loc) = norm_cell(&rep);
        rows.push(vec!["lp".into(), fmt_f64(p), v, e, loc]);
    }
    for r in [1.0, 2.0, 3.0, 4.0] {
        let psi = PsiFunction::degenerate(r).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
        let rep = gls_norm(&f, &psi, quad).map_err(classify_norm)?;
        let (v, e, loc) = norm_cell(&rep);
        rows.push(vec!["gls-degenerate".into(), fmt_f64(r), v, e, loc]);
    }
    let psi = parse_psi_spec(&cfg.psi, &cfg.profile, *quad).map_err(|e| CliError::Validation(vec![e]))?;
    let rep = gls_norm(&f, &psi, quad).map_err(classify_norm)?;
    let (v, e, loc) = norm_cell(&rep);
    rows.push(vec!["gls".into(), cfg.psi.clone(), v, e, loc]);

    let young = parse_young_spec(&cfg.young).map_err(|e| CliError::Validation(vec![e]))?;
    let rep = luxemburg_norm(&f, &young, quad).map_err(classify_norm)?;
    let (v, e, loc) = norm_cell(&rep);
    rows.push(vec!["luxemburg".into(), cfg.young.clone(), v, e, loc]);

    let weight = LorentzWeight::power(cfg.weight_alpha).map_err(classify_norm)?;
    let rep = lorentz_norm(&f, &weight, &lorentz_default_tgrid(), quad).map_err(classify_norm)?;
    let (v, e, loc) = norm_cell(&rep);
    rows.push(vec!["lorentz".into(), format!("power:{}", cfg.weight_alpha), v, e, loc]);

    write_csv(&cfg.out.join("norms.csv"), "norm,parameter,value,abs_error,location", &rows)?;

    let mut report = Report::new(&format!("norms: profile {}", cfg.profile.label()));
    report.note(format!("{} rows written to norms.csv", rows.len()));
    report.finish(&cfg.out)
}

/// End-to-end verification of the block process: closed-form block norms
/// against quadrature, the blow-up table, the weaker-norm divergence
/// certificate, and the continuity modulus. Exit 0 only if every certified
/// check passes.
pub fn cmd_counterexample(cfg: &RunConfig) -> Result<(), CliError> {
    ensure_out(cfg)?;
    let f = cfg.profile.build().map_err(|e| CliError::Validation(vec![e]))?;
    let spec = build_spec(cfg.beta, f, cfg.nmax, cfg.quadrature).map_err(classify_process)?;
    let mut report = Report::new(&format!(
        "counterexample: beta {}, profile {}, nmax {}",
        cfg.beta,
        cfg.profile.label(),
        cfg.nmax
    ));
    let (c_beta, c_err) = spec.normalization();
    report.note(format!("normalization C(beta) = {} (err {})", fmt_f64(c_beta), fmt_f64(c_err)));

    // (i) Block norms: closed form vs quadrature.
    let block_ps = [1.0, 2.0, 3.0, 3.9];
    let mut rows = Vec::new();
    let mut worst_dev: f64 = 0.0;
    for n in 1..=50.min(cfg.nmax) {
        let block = spec.block(n).map_err(classify_process)?;
        for &p in &block_ps {
            let closed = spec.block_lp_closed_form(n, p).map_err(classify_process)?;
            let quad = lp_norm(&block, p, &cfg.quadrature)
                .map_err(classify_norm)?
                .expect_finite();
            let dev = (closed - quad).abs() / closed;
            worst_dev = worst_dev.max(dev);
            rows.push(vec![
                n.to_string(),
                fmt_f64(p),
                fmt_f64(closed),
                fmt_f64(quad),
                fmt_f64(dev),
            ]);
        }
    }
    write_csv(
        &cfg.out.join("blocks.csv"),
        "n,p,closed_form,quadrature,rel_dev",
        &rows,
    )?;
    report.check(
        "block-norm-identity",
        worst_dev <= 1e-6,
        format!("max rel dev {}", fmt_f64(worst_dev)),
    );

    // (ii) Blow-up asymptotics at p_k = 4 - 2^(-k).
    let ks: Vec<u32> = match cfg.p_grid {
        Some(GridSpec::Dyadic { kmin, kmax, .. }) => (kmin..=kmax).collect(),
        None => (6..=20).collect(),
        Some(other) => {
            return Err(CliError::Validation(vec![format!(
                "counterexample expects a dyadic p-grid, got {other:?}"
            )]))
        }
    };
    let table = spec.blowup_table(&ks).map_err(classify_process)?;
    let rows: Vec<Vec<String>> = table
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                fmt_f64(r.p),
                fmt_f64(r.sup_norm),
                fmt_f64(r.scaled_power),
                fmt_f64(r.scaled_norm),
                fmt_f64(r.series_rel_bracket),
            ]
        })
        .collect();
    write_csv(
        &cfg.out.join("asymptotics.csv"),
        "k,p,sup_norm,scaled_power,scaled_norm,series_rel_bracket",
        &rows,
    )?;
    let last3: Vec<f64> = table.iter().rev().take(3).map(|r| r.scaled_norm).collect();
    let spread = (last3.iter().cloned().fold(f64::MIN, f64::max)
        - last3.iter().cloned().fold(f64::MAX, f64::min))
        / last3.last().copied().unwrap_or(1.0);
    report.check(
        "blowup-stabilization",
        last3.len() == 3 && spread <= 0.02,
        format!("final-three spread {}", fmt_f64(spread)),
    );
    let limit = spec.blowup_limit().map_err(classify_process)?;
    report.note(format!("blow-up limit C(beta)nu^4(4)/beta = {}", fmt_f64(limit)));

    // (iii) Divergence certificate against φ₀ = (4-p)^(-1/8).
    let phi0 = PsiFunction::power_singular(0.125, 4.0).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let grid = default_certificate_grid();
    let cert = spec.weaker_norm_divergence(&phi0, &grid).map_err(classify_process)?;
    let rows: Vec<Vec<String>> = cert
        .rows
        .iter()
        .map(|r| vec![fmt_f64(r.p), fmt_f64(r.sup_norm), fmt_f64(r.ratio)])
        .collect();
    write_csv(&cfg.out.join("divergence.csv"), "p,sup_norm,ratio", &rows)?;
    let growth = cert.rows.last().map(|r| r.ratio).unwrap_or(0.0)
        / cert.rows.first().map(|r| r.ratio).unwrap_or(1.0);
    report.check(
        "divergence-certificate",
        cert.certified,
        format!("ratio growth factor {}", fmt_f64(growth)),
    );

    // (iv) Continuity modulus under the degenerate ψ at 4.
    let psi4 = PsiFunction::degenerate(4.0).map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let (nu4, _) = spec.nu(4.0).map_err(classify_process)?;
    let mut rows = Vec::new();
    let mut decreasing = true;
    let mut worst_dev: f64 = 0.0;
    let mut prev = f64::INFINITY;
    let mut n = 1u64;
    while n <= cfg.nmax {
        let rep = spec
            .continuity_modulus(&psi4, TPoint::Finite(n), TPoint::Infinity)
            .map_err(classify_process)?;
        let got = rep.expect_finite();
        let closed = (c_beta / n as f64).powf(0.25) * nu4;
        worst_dev = worst_dev.max((got - closed).abs() / closed);
        decreasing &= got < prev;
        prev = got;
        rows.push(vec![n.to_string(), fmt_f64(closed), fmt_f64(got)]);
        n *= 2;
    }
    write_csv(&cfg.out.join("continuity.csv"), "n,closed_form,gls_norm", &rows)?;
    report.check(
        "continuity-modulus",
        decreasing && worst_dev <= 1e-6,
        format!("decreasing {decreasing}, max rel dev {}", fmt_f64(worst_dev)),
    );

    report.finish(&cfg.out)
}

/// Sampling diagnostics: tail curve with exact overlay, Lp estimates
/// against the certified series, Borel–Cantelli summability, union bounds.
pub fn cmd_montecarlo(cfg: &RunConfig) -> Result<(), CliError> {
    ensure_out(cfg)?;
    let f = cfg.profile.build().map_err(|e| CliError::Validation(vec![e]))?;
    let spec = build_spec(cfg.beta, f, cfg.nmax, cfg.quadrature).map_err(classify_process)?;
    let process = BlockProcess::new(spec).map_err(classify_process)?;
    let spec = process.spec();
    let batch = SampleBatch::new(cfg.seed, cfg.count)
        .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let mut report = Report::new(&format!(
        "montecarlo: beta {}, profile {}, nmax {}, seed {}, count {}",
        cfg.beta,
        cfg.profile.label(),
        cfg.nmax,
        cfg.seed,
        cfg.count
    ));

    // Tail curve of the envelope with the exact distribution overlay.
    let us = cfg
        .u_grid
        .unwrap_or(GridSpec::Linear { lo: 0.5, hi: 3.0, n: 6 })
        .points();
    let tails = tail_curve(process.envelope(), &us, &batch)
        .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let rows: Vec<Vec<String>> = tails
        .iter()
        .map(|t| {
            vec![
                fmt_f64(t.threshold),
                fmt_f64(t.estimate),
                fmt_f64(t.std_error),
                fmt_f64(t.exact),
            ]
        })
        .collect();
    write_csv(&cfg.out.join("tail.csv"), "u,estimate,stderr,exact", &rows)?;
    let covered = tails
        .iter()
        .all(|t| (t.estimate - t.exact).abs() <= 4.0 * t.std_error + 1e-12);
    report.note(format!("tail curve within 4 stderr of exact overlay: {covered}"));

    // Lp estimates against the certified series.
    let ps: Vec<f64> = cfg
        .p_grid
        .unwrap_or(GridSpec::Linear { lo: 1.0, hi: 3.5, n: 6 })
        .points()
        .into_iter()
        .filter(|&p| (1.0..4.0).contains(&p))
        .collect();
    let mut rows = Vec::new();
    for &p in &ps {
        let est = estimate_lp(process.envelope(), p, &batch)
            .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
        let exact = spec.sup_lp_series(p).map_err(classify_process)?;
        rows.push(vec![
            fmt_f64(p),
            fmt_f64(est.estimate),
            fmt_f64(est.std_error),
            fmt_f64(exact.value.powf(1.0 / p)),
        ]);
    }
    write_csv(&cfg.out.join("moments.csv"), "p,estimate,stderr,exact", &rows)?;

    // Borel–Cantelli summability at ε = 0.5.
    let bc = borel_cantelli_diagnostic(spec, 0.5, 64)
        .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
    let rows: Vec<Vec<String>> = bc
        .prefix
        .iter()
        .map(|&(n, prob, cum)| vec![n.to_string(), fmt_f64(prob), fmt_f64(cum)])
        .collect();
    write_csv(&cfg.out.join("borel_cantelli.csv"), "n,prob,partial_sum", &rows)?;
    report.note(format!(
        "borel-cantelli: sum {} + tail <= {}, chebyshev bound {} respected: {}",
        fmt_f64(bc.partial_sum),
        fmt_f64(bc.tail.upper),
        fmt_f64(bc.chebyshev_bound),
        bc.bound_respected
    ));

    // Union bound on singleton and dyadic partitions, shared draws.
    let mut rows = Vec::new();
    for (name, partition) in [
        ("singleton", singleton_partition(spec.nmax())),
        ("dyadic", dyadic_partition(spec.nmax())),
    ] {
        for &u in &us {
            let rep = union_bound_check(&process, &partition, u, &batch)
                .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
            rows.push(vec![
                name.into(),
                fmt_f64(u),
                rep.cells.to_string(),
                fmt_f64(rep.lhs),
                fmt_f64(rep.lhs_std_error),
                fmt_f64(rep.rhs),
                fmt_f64(rep.rhs_std_error),
                fmt_f64(rep.slack),
            ]);
        }
    }
    write_csv(
        &cfg.out.join("union_bound.csv"),
        "partition,u,cells,lhs,lhs_stderr,rhs,rhs_stderr,slack",
        &rows,
    )?;

    report.finish(&cfg.out)
}

/// Embedding verdict: GLS or Orlicz "significantly weaker" relation with
/// the full ratio trace.
pub fn cmd_embedding(cfg: &RunConfig) -> Result<(), CliError> {
    ensure_out(cfg)?;
    let lhs_spec = cfg.lhs.as_deref().ok_or_else(|| CliError::Validation(vec!["embedding requires --lhs".into()]))?;
    let rhs_spec = cfg.rhs.as_deref().ok_or_else(|| CliError::Validation(vec!["embedding requires --rhs".into()]))?;
    let relation_cfg = RelationConfig::default();
    let mut report = Report::new(&format!("embedding: mode {}, lhs {}, rhs {}", cfg.mode, lhs_spec, rhs_spec));

    let verdict = match cfg.mode.as_str() {
        "gls" => {
            let phi = parse_psi_spec(lhs_spec, &cfg.profile, cfg.quadrature)
                .map_err(|e| CliError::Validation(vec![e]))?;
            let psi = parse_psi_spec(rhs_spec, &cfg.profile, cfg.quadrature)
                .map_err(|e| CliError::Validation(vec![e]))?;
            // The relation works in gaps to the right endpoint; a user
            // p-grid is converted (losing sub-ulp resolution near b).
            let b = phi.support().hi;
            let gaps = match cfg.p_grid {
                Some(g) => {
                    let mut gaps: Vec<f64> =
                        g.points().into_iter().map(|p| b - p).filter(|&g| g > 0.0).collect();
                    gaps.sort_by(|x, y| y.total_cmp(x));
                    gaps.dedup();
                    gaps
                }
                None => endpoint_gap_grid(phi.support().lo, b, 128),
            };
            let rep = gls_weaker(&phi, &psi, &gaps, &relation_cfg).map_err(|e| match e {
                PsiError::SupportMismatch { .. } | PsiError::InvalidFamily(_) => {
                    CliError::Validation(vec![e.to_string()])
                }
                other => CliError::NonConvergence(other.to_string()),
            })?;
            let rows: Vec<Vec<String>> = rep
                .trace
                .iter()
                .map(|r| {
                    vec![fmt_f64(r.p), fmt_f64(r.gap), fmt_f64(r.phi), fmt_f64(r.psi), fmt_f64(r.ratio)]
                })
                .collect();
            write_csv(&cfg.out.join("embedding.csv"), "p,gap,phi,psi,ratio", &rows)?;
            rep.verdict
        }
        "orlicz" => {
            let weak = parse_young_spec(lhs_spec).map_err(|e| CliError::Validation(vec![e]))?;
            let strong = parse_young_spec(rhs_spec).map_err(|e| CliError::Validation(vec![e]))?;
            let ugrid = cfg
                .u_grid
                .unwrap_or(GridSpec::Geometric { lo: 1.0, hi: 1e3, n: 40 })
                .points();
            let rep = orlicz_weaker(&weak, &strong, &cfg.lambdas, &ugrid, &relation_cfg)
                .map_err(|e| CliError::Validation(vec![e.to_string()]))?;
            let rows: Vec<Vec<String>> = rep
                .trace
                .iter()
                .map(|r| vec![fmt_f64(r.lambda), fmt_f64(r.u), fmt_f64(r.log_ratio)])
                .collect();
            write_csv(&cfg.out.join("embedding.csv"), "lambda,u,log_ratio", &rows)?;
            rep.verdict
        }
        other => return Err(CliError::Validation(vec![format!("unknown mode '{other}'")])),
    };

    report.note(format!("verdict: {}", verdict.as_str()));
    report.finish(&cfg.out)
}

/// Binary entry point.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Norms(args) => resolve(args, None).and_then(|cfg| cmd_norms(&cfg)),
        Command::Counterexample(args) => resolve(args, None).and_then(|cfg| cmd_counterexample(&cfg)),
        Command::Montecarlo(args) => resolve(args, None).and_then(|cfg| cmd_montecarlo(&cfg)),
        Command::Embedding(args) => {
            resolve(&args.common, Some(args)).and_then(|cfg| cmd_embedding(&cfg))
        }
    };
    match outcome {
        Ok(()) => ExitCode::from(EXIT_OK),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_specs_parse_and_build() {
        assert_eq!(ProfileSpec::parse("constant:2.5").unwrap(), ProfileSpec::Constant(2.5));
        assert_eq!(ProfileSpec::parse("sqrt-log").unwrap(), ProfileSpec::SqrtLog);
        assert_eq!(ProfileSpec::parse("indicator:0.5").unwrap(), ProfileSpec::Indicator(0.5));
        assert!(ProfileSpec::parse("triangle:1").is_err());
        assert!(ProfileSpec::Indicator(1.5).build().is_err());
    }

    #[test]
    fn grid_specs_generate_expected_points() {
        let g = GridSpec::parse("lin:1:4:7").unwrap();
        let pts = g.points();
        assert_eq!(pts.len(), 7);
        assert_eq!(pts[0], 1.0);
        assert_eq!(pts[6], 4.0);

        let g = GridSpec::parse("dyadic:4:6:8").unwrap();
        let pts = g.points();
        assert_eq!(pts, vec![4.0 - 0.015625, 4.0 - 0.0078125, 4.0 - 0.00390625]);

        let g = GridSpec::parse("geo:1:100:3").unwrap();
        let pts = g.points();
        assert!((pts[1] - 10.0).abs() < 1e-12);

        assert!(GridSpec::parse("lin:4:1:7").unwrap().validate().is_err());
        assert!(GridSpec::parse("wavelet:1:2:3").is_err());
    }

    #[test]
    fn number_formatting_is_plain_inside_the_window() {
        assert_eq!(fmt_f64(0.0), "0");
        assert_eq!(fmt_f64(1.5), "1.5");
        assert_eq!(fmt_f64(-0.25), "-0.25");
        assert_eq!(fmt_f64(1e6), "1e6");
        assert_eq!(fmt_f64(123456.75), "123456.75");
        assert_eq!(fmt_f64(1e-7), "1e-7");
        assert!(fmt_f64(f64::INFINITY) == "inf");
    }

    #[test]
    fn resolve_applies_defaults_and_flags() {
        let mut args = CommonArgs::default();
        let cfg = resolve(&args, None).unwrap();
        assert_eq!(cfg.beta, 1.0);
        assert_eq!(cfg.nmax, 100_000);
        assert_eq!(cfg.seed, 42);

        args.beta = Some(0.5);
        args.profile = Some("sqrt-log".into());
        let cfg = resolve(&args, None).unwrap();
        assert_eq!(cfg.beta, 0.5);
        assert_eq!(cfg.profile, ProfileSpec::SqrtLog);
    }

    #[test]
    fn exit_codes_follow_the_contract() {
        assert_eq!(CliError::Validation(vec!["x".into()]).exit_code(), EXIT_VALIDATION);
        assert_eq!(CliError::CertifiedCheckFailed("eq".into()).exit_code(), EXIT_CHECK_FAILED);
        assert_eq!(CliError::NonConvergence("q".into()).exit_code(), EXIT_NO_CONVERGENCE);
    }

    #[test]
    fn resolve_aggregates_all_problems() {
        let args = CommonArgs {
            beta: Some(-1.0),
            profile: Some("mystery".into()),
            nmax: Some(3),
            ..CommonArgs::default()
        };
        match resolve(&args, None) {
            Err(CliError::Validation(problems)) => {
                assert!(problems.len() >= 3, "problems: {problems:?}");
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }
}
