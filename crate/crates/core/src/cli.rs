//! The `gwave` command-line front end.
//!
//! Subcommands: `synth` writes synthetic multi-wave series, `analyze` runs the
//! scalogram pipeline, `compare` pits the Gompertz wavelet against the
//! logistic one, and `verify` prints the analytic self-checks.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::gompertz::GompertzParams;
use crate::ingest::{
    check_monotone, load_series, prepare_pipeline_input, write_plain_csv, SeriesFormat,
    SeriesSource,
};
use crate::special_fn::{zeta, zeta_even_closed_form};
use crate::transform::{
    compare_wavelets, detect_peaks, integer_scales, scalogram, second_differences,
    DifferencedSeries, Scalogram, TimeSeries, WaveDetection, WaveletComparison,
};
use crate::wavelets::{
    admissibility_constant, child_moments, derivative_sq_norm, fourier_energy,
    gompertz_integral_facts, MotherWavelet, WaveletFamily,
};
use crate::{gompertz::DerivativeOrder, quadrature::integrate_piecewise};

/// Exit code for a failed verification.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit code for input or configuration errors.
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gwave",
    version,
    about = "Gompertz wavelet analysis of growth waves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a synthetic sum of growth waves as a plain CSV.
    Synth(SynthArgs),
    /// Compute the scalogram of second differences and detect waves.
    Analyze(AnalyzeArgs),
    /// Compare the best Gompertz and logistic wavelet fits.
    Compare(AnalyzeArgs),
    /// Check the closed-form identities against quadrature.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Plain,
    Owid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Gompertz,
    Logistic,
}

impl From<FamilyArg> for WaveletFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Gompertz => WaveletFamily::Gompertz,
            FamilyArg::Logistic => WaveletFamily::Logistic,
        }
    }
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Wave component `X_MAX,A,B`: x_max·exp(-exp(-(t-b)/a)). Repeatable.
    #[arg(long = "component", value_name = "X_MAX,A,B", required = true, value_parser = parse_component)]
    pub components: Vec<(f64, f64, f64)>,
    /// Integer domain `LO..HI`, inclusive.
    #[arg(long, value_name = "LO..HI", value_parser = parse_range, default_value = "0..350")]
    pub domain: (i64, i64),
    /// Curve shape of every component.
    #[arg(long, value_enum, default_value = "gompertz")]
    pub family: FamilyArg,
    /// Output CSV path (`n,value`).
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Input CSV: `date,value` / `n,value`, or an OWID table with `--format owid`.
    #[arg(long, value_name = "PATH", required_unless_present = "components")]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "plain")]
    pub format: FormatArg,
    /// Location to select from an OWID table.
    #[arg(long, value_name = "NAME")]
    pub location: Option<String>,
    /// First date to load (YYYY-MM-DD).
    #[arg(long, value_name = "DATE", value_parser = parse_date)]
    pub from: Option<NaiveDate>,
    /// Last date to load (YYYY-MM-DD).
    #[arg(long, value_name = "DATE", value_parser = parse_date)]
    pub to: Option<NaiveDate>,
    /// Analyse a synthetic wave instead of a file. Repeatable.
    #[arg(long = "component", value_name = "X_MAX,A,B", value_parser = parse_component, conflicts_with = "input")]
    pub components: Vec<(f64, f64, f64)>,
    /// Domain of the synthetic input.
    #[arg(long, value_name = "LO..HI", value_parser = parse_range, default_value = "0..350")]
    pub domain: (i64, i64),
    /// Shape of the synthetic components.
    #[arg(long = "synth-family", value_enum, default_value = "gompertz")]
    pub synth_family: FamilyArg,
    #[arg(long, value_enum, default_value = "gompertz")]
    pub wavelet: FamilyArg,
    /// Wavelet order; Gompertz 2..=12, logistic 2 only.
    #[arg(long, default_value_t = 2)]
    pub order: u32,
    /// Integer scale range `MIN..MAX`.
    #[arg(long, value_name = "MIN..MAX", value_parser = parse_range, default_value = "1..64")]
    pub scales: (i64, i64),
    /// Centered moving-average window; 1 disables smoothing.
    #[arg(long, default_value_t = 7)]
    pub smooth: usize,
    /// Keep peaks at or above this fraction of the scalogram maximum.
    #[arg(long, default_value_t = 0.2)]
    pub threshold: f64,
    /// Minimum shift distance between reported peaks.
    #[arg(long = "min-separation", default_value_t = 10)]
    pub min_separation: i64,
    /// Only analyse second differences with index `n >= N`.
    #[arg(long = "window-start", value_name = "N")]
    pub window_start: Option<i64>,
    /// Only analyse second differences with index `n <= N`.
    #[arg(long = "window-end", value_name = "N")]
    pub window_end: Option<i64>,
    /// Directory for scalogram.csv, detections.csv and scalogram.png.
    #[arg(long, value_name = "DIR", default_value = "gwave-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Highest wavelet order checked (2..=8).
    #[arg(long = "max-order", default_value_t = 8)]
    pub max_order: u32,
}

fn parse_component(s: &str) -> std::result::Result<(f64, f64, f64), String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts[..] {
        [x, a, b] => Ok((x, a, b)),
        _ => Err(format!("expected X_MAX,A,B, got {s:?}")),
    }
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("expected LO..HI, got {s:?}"))?;
    let lo = lo.trim().parse::<i64>().map_err(|e| e.to_string())?;
    let hi = hi.trim().parse::<i64>().map_err(|e| e.to_string())?;
    Ok((lo, hi))
}

fn parse_date(s: &str) -> std::result::Result<NaiveDate, String> {
    NaiveDate::parse_from_str(s, "%Y-%m-%d").map_err(|e| format!("{s:?}: {e}"))
}

/// A sum of growth waves sampled on an integer domain.
#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticSpec {
    /// `(x_max, a, b)` per wave.
    pub components: Vec<(f64, f64, f64)>,
    /// Inclusive integer domain.
    pub domain: (i64, i64),
    pub family: WaveletFamily,
}

impl SyntheticSpec {
    pub fn gompertz(components: Vec<(f64, f64, f64)>, domain: (i64, i64)) -> Self {
        SyntheticSpec {
            components,
            domain,
            family: WaveletFamily::Gompertz,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.components.is_empty() {
            return Err(Error::domain("synthetic spec has no components"));
        }
        if self.domain.1 - self.domain.0 + 1 < 3 {
            return Err(Error::domain(format!(
                "synthetic domain {}..{} has fewer than 3 points",
                self.domain.0, self.domain.1
            )));
        }
        for &(x, a, b) in &self.components {
            GompertzParams::from_scale_shift(x, a, b)?;
        }
        Ok(())
    }

    pub fn value(&self, t: f64) -> f64 {
        self.components
            .iter()
            .map(|&(x, a, b)| match self.family {
                WaveletFamily::Gompertz => x * (-(-(t - b) / a).exp()).exp(),
                WaveletFamily::Logistic => x / (1.0 + (-(t - b) / a).exp()),
            })
            .sum()
    }

    pub fn generate(&self) -> Result<TimeSeries> {
        self.validate()?;
        let (lo, hi) = self.domain;
        TimeSeries::new(
            lo,
            (lo..=hi).map(|n| self.value(n as f64)).collect(),
            "synthetic",
        )
    }
}

pub fn cmd_synth(spec: &SyntheticSpec, out: &Path) -> Result<TimeSeries> {
    let ts = spec.generate()?;
    write_plain_csv(&ts, out)?;
    Ok(ts)
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisInput {
    Source(SeriesSource),
    Synthetic(SyntheticSpec),
}

/// Everything one analysis run needs.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisConfig {
    pub input: AnalysisInput,
    pub wavelet_family: WaveletFamily,
    pub wavelet_order: u32,
    pub scale_min: u32,
    pub scale_max: u32,
    pub smooth_window: usize,
    pub peak_threshold: f64,
    pub min_separation: i64,
    /// Inclusive bounds on the analysed second-difference indices.
    pub index_window: (Option<i64>, Option<i64>),
    pub output_dir: PathBuf,
}

impl AnalysisConfig {
    pub fn new(input: AnalysisInput, output_dir: impl Into<PathBuf>) -> Self {
        AnalysisConfig {
            input,
            wavelet_family: WaveletFamily::Gompertz,
            wavelet_order: 2,
            scale_min: 1,
            scale_max: 64,
            smooth_window: 7,
            peak_threshold: crate::transform::DEFAULT_THRESHOLD_FRACTION,
            min_separation: crate::transform::DEFAULT_MIN_SEPARATION,
            index_window: (None, None),
            output_dir: output_dir.into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.scale_min < 1 || self.scale_min > self.scale_max {
            return Err(Error::domain(format!(
                "scale range {}..{} must satisfy 1 <= min <= max",
                self.scale_min, self.scale_max
            )));
        }
        if self.wavelet_order < 2 {
            return Err(Error::domain("wavelet order must be at least 2"));
        }
        if !(self.peak_threshold > 0.0 && self.peak_threshold < 1.0) {
            return Err(Error::domain(format!(
                "peak threshold {} must lie in (0, 1)",
                self.peak_threshold
            )));
        }
        MotherWavelet::new(self.wavelet_family, self.wavelet_order)?;
        Ok(())
    }

    pub fn from_args(args: &AnalyzeArgs) -> Result<Self> {
        let input = if args.components.is_empty() {
            let path = args
                .input
                .clone()
                .ok_or_else(|| Error::domain("either --input or --component is required"))?;
            let format = match args.format {
                FormatArg::Plain => SeriesFormat::Plain,
                FormatArg::Owid => SeriesFormat::Owid,
            };
            let date_range = match (args.from, args.to) {
                (None, None) => None,
                (from, to) => Some((from.unwrap_or(NaiveDate::MIN), to.unwrap_or(NaiveDate::MAX))),
            };
            AnalysisInput::Source(SeriesSource {
                path,
                format,
                location: args.location.clone(),
                date_range,
            })
        } else {
            AnalysisInput::Synthetic(SyntheticSpec {
                components: args.components.clone(),
                domain: args.domain,
                family: args.synth_family.into(),
            })
        };
        let scale =
            |v: i64| u32::try_from(v).map_err(|_| Error::domain(format!("invalid scale {v}")));
        let cfg = AnalysisConfig {
            input,
            wavelet_family: args.wavelet.into(),
            wavelet_order: args.order,
            scale_min: scale(args.scales.0)?,
            scale_max: scale(args.scales.1)?,
            smooth_window: args.smooth,
            peak_threshold: args.threshold,
            min_separation: args.min_separation,
            index_window: (args.window_start, args.window_end),
            output_dir: args.out.clone(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn scales(&self) -> Vec<f64> {
        integer_scales(self.scale_min, self.scale_max)
    }
}

/// The series after smoothing and the second differences actually analysed.
#[derive(Debug, Clone)]
pub struct PreparedInput {
    pub series: TimeSeries,
    pub differences: DifferencedSeries,
    pub warnings: Vec<String>,
}

pub fn prepare_input(cfg: &AnalysisConfig) -> Result<PreparedInput> {
    cfg.validate()?;
    let raw = match &cfg.input {
        AnalysisInput::Source(src) => load_series(src)?,
        AnalysisInput::Synthetic(spec) => spec.generate()?,
    };
    let mut warnings = Vec::new();
    if let Some(w) = check_monotone(&raw, 0.0) {
        warnings.push(w.to_string());
    }
    let series = prepare_pipeline_input(&raw, cfg.smooth_window)?;
    let mut differences = second_differences(&series)?;
    if let (None, None) = cfg.index_window {
    } else {
        let lo = cfg.index_window.0.unwrap_or(i64::MIN);
        let hi = cfg.index_window.1.unwrap_or(i64::MAX);
        differences = differences.restrict(lo, hi)?;
    }
    Ok(PreparedInput {
        series,
        differences,
        warnings,
    })
}

/// Result of `analyze`.
#[derive(Debug, Clone)]
pub struct AnalysisReport {
    pub prepared: PreparedInput,
    pub scalogram: Scalogram,
    pub detections: Vec<WaveDetection>,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn date_for(series: &TimeSeries, b: f64) -> Option<NaiveDate> {
    (b.fract() == 0.0)
        .then(|| series.date_of(b as i64))
        .flatten()
}

fn fmt_opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(String::new, |v| v.to_string())
}

/// Writes `detections.csv`: `a,b,date,index,y_max,boundary_flag`.
pub fn write_detections<W: Write>(
    series: &TimeSeries,
    detections: &[WaveDetection],
    out: W,
) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["a", "b", "date", "index", "y_max", "boundary_flag"])?;
    for d in detections {
        wtr.write_record([
            d.a.to_string(),
            d.b.to_string(),
            fmt_opt(date_for(series, d.b)),
            d.index_value.to_string(),
            fmt_opt(d.y_max_estimate),
            d.near_boundary.to_string(),
        ])?;
    }
    wtr.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

fn detection_line(series: &TimeSeries, d: &WaveDetection) -> String {
    let date = date_for(series, d.b).map_or_else(String::new, |d| format!(" ({d})"));
    let y = d
        .y_max_estimate
        .map_or_else(|| "n/a".to_string(), |y| format!("{y:.0}"));
    let flag = if d.near_boundary {
        "  [near boundary]"
    } else {
        ""
    };
    format!(
        "a = {:>5}  b = {:>6}{date}  Index = {:.4}  y_max ≈ {y}{flag}",
        d.a, d.b, d.index_value
    )
}

pub fn cmd_analyze<W: Write>(cfg: &AnalysisConfig, out: &mut W) -> Result<AnalysisReport> {
    let prepared = prepare_input(cfg)?;
    let wavelet = MotherWavelet::new(cfg.wavelet_family, cfg.wavelet_order)?;
    let scal = scalogram(&prepared.differences, &wavelet, &cfg.scales())?;
    let detections = detect_peaks(&scal, cfg.min_separation, cfg.peak_threshold);

    fs::create_dir_all(&cfg.output_dir).map_err(|e| Error::io(&cfg.output_dir, e))?;
    let scal_path = cfg.output_dir.join("scalogram.csv");
    scal.write_csv(create(&scal_path)?)?;
    let det_path = cfg.output_dir.join("detections.csv");
    write_detections(&prepared.series, &detections, create(&det_path)?)?;
    let png_path = cfg.output_dir.join("scalogram.png");
    render::write_heatmap(&scal, &png_path)?;

    let io = |e| Error::io("<stdout>", e);
    for w in &prepared.warnings {
        writeln!(out, "warning: {w}").map_err(io)?;
    }
    let (lo, hi) = prepared.differences.index_range();
    writeln!(
        out,
        "series {:?}: {} values, second differences n = {lo}..={hi}",
        prepared.series.label(),
        prepared.series.len()
    )
    .map_err(io)?;
    writeln!(
        out,
        "wavelet {} order {}, scales {}..={}",
        wavelet.family(),
        wavelet.order(),
        cfg.scale_min,
        cfg.scale_max
    )
    .map_err(io)?;
    if detections.is_empty() {
        writeln!(out, "no waves found").map_err(io)?;
    } else {
        writeln!(out, "{} wave(s) detected:", detections.len()).map_err(io)?;
        for d in &detections {
            writeln!(out, "  {}", detection_line(&prepared.series, d)).map_err(io)?;
        }
        if wavelet.order() == 2 {
            writeln!(
                out,
                "  (y_max = {:.6}·a^(3/2)·Index)",
                wavelet.normalization()
            )
            .map_err(io)?;
        }
    }
    writeln!(
        out,
        "wrote {}, {}, {}",
        scal_path.display(),
        det_path.display(),
        png_path.display()
    )
    .map_err(io)?;
    Ok(AnalysisReport {
        prepared,
        scalogram: scal,
        detections,
    })
}

pub fn cmd_compare<W: Write>(cfg: &AnalysisConfig, out: &mut W) -> Result<WaveletComparison> {
    let prepared = prepare_input(cfg)?;
    let cmp = compare_wavelets(&prepared.differences, &cfg.scales())?;
    let io = |e| Error::io("<stdout>", e);
    for w in &prepared.warnings {
        writeln!(out, "warning: {w}").map_err(io)?;
    }
    writeln!(out, "{:<9} best peak", "family").map_err(io)?;
    writeln!(
        out,
        "{:<9} {}",
        "gompertz",
        detection_line(&prepared.series, &cmp.gompertz_peak)
    )
    .map_err(io)?;
    writeln!(
        out,
        "{:<9} {}",
        "logistic",
        detection_line(&prepared.series, &cmp.logistic_peak)
    )
    .map_err(io)?;
    let g = cmp.gompertz_peak.index_value;
    let l = cmp.logistic_peak.index_value;
    writeln!(
        out,
        "better fit: {} (Index ratio gompertz/logistic = {:.4}; both wavelets have unit norm)",
        cmp.better_family(),
        g / l
    )
    .map_err(io)?;
    Ok(cmp)
}

/// One closed-form-versus-numeric identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckRow {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    /// Relative error, or absolute error when the expected value is zero.
    pub error: f64,
    pub tolerance: f64,
}

impl CheckRow {
    fn new(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        let error = if expected == 0.0 {
            observed.abs()
        } else {
            (observed - expected).abs() / expected.abs()
        };
        CheckRow {
            name: name.into(),
            expected,
            observed,
            error,
            tolerance,
        }
    }

    pub fn passed(&self) -> bool {
        self.error < self.tolerance
    }
}

/// Runs every analytic self-check up to wavelet order `max_order`.
pub fn verification_rows(max_order: u32) -> Result<Vec<CheckRow>> {
    if !(2..=8).contains(&max_order) {
        return Err(Error::domain(format!(
            "--max-order {max_order} outside 2..=8"
        )));
    }
    let mut rows = Vec::new();
    let facts = gompertz_integral_facts();
    rows.push(CheckRow::new("∫x'' dt = 0", 0.0, facts.mean, 1e-10));
    rows.push(CheckRow::new(
        "∫|x''| dt = 2/e",
        2.0 / std::f64::consts::E,
        facts.abs_integral,
        1e-8,
    ));
    rows.push(CheckRow::new(
        "∫(x'')² dt = 1/8",
        0.125,
        facts.sq_integral,
        1e-8,
    ));

    let p = GompertzParams::standard();
    for n in 1..=6 {
        let order = DerivativeOrder::new(n)?;
        let q = integrate_piecewise(
            |t| p.derivative(order, t).powi(2),
            &[-8.0, -2.0, 0.0, 2.0, 60.0],
        );
        rows.push(CheckRow::new(
            format!("∫(x^({n}))² dt = |B_{}|(2^{}-1)/{}", 2 * n, 2 * n, 2 * n),
            derivative_sq_norm(n)?,
            q,
            1e-8,
        ));
    }
    for n in 2..=max_order {
        let w = MotherWavelet::gompertz(n)?;
        let (mean, sq) = child_moments(&w.child(1.0, 0.0)?);
        rows.push(CheckRow::new(format!("∫ψ_{n} dt = 0"), 0.0, mean, 1e-8));
        rows.push(CheckRow::new(format!("‖ψ_{n}‖ = 1"), 1.0, sq.sqrt(), 1e-8));
        rows.push(CheckRow::new(
            format!("∫|ψ̂_{n}|² dξ = 1"),
            1.0,
            fourier_energy(&w),
            1e-6,
        ));
    }
    let logistic = MotherWavelet::logistic2();
    let (mean, sq) = child_moments(&logistic.child(1.0, 0.0)?);
    rows.push(CheckRow::new("∫ψ_logistic dt = 0", 0.0, mean, 1e-8));
    rows.push(CheckRow::new("‖ψ_logistic‖ = 1", 1.0, sq.sqrt(), 1e-8));
    for n in 2..=max_order {
        let r = admissibility_constant(n)?;
        let label = if n == 2 {
            "C_ψ2 = 56ζ(3)/π²".to_string()
        } else {
            format!("C_ψ{n} closed form (ζ({}))", 2 * n - 1)
        };
        rows.push(CheckRow::new(label, r.closed_form, r.quadrature, 1e-6));
    }
    for k in 1..=4u32 {
        rows.push(CheckRow::new(
            format!("ζ({}) = Bernoulli closed form", 2 * k),
            zeta_even_closed_form(k)?,
            zeta(2 * k as i64)?,
            1e-13,
        ));
    }
    Ok(rows)
}

pub fn cmd_verify<W: Write>(max_order: u32, out: &mut W) -> Result<Vec<CheckRow>> {
    let rows = verification_rows(max_order)?;
    let io = |e| Error::io("<stdout>", e);
    writeln!(
        out,
        "{:<44} {:>22} {:>22} {:>10} {:>8}  result",
        "identity", "closed form", "numeric", "error", "tol"
    )
    .map_err(io)?;
    for r in &rows {
        writeln!(
            out,
            "{:<44} {:>22.15e} {:>22.15e} {:>10.2e} {:>8.0e}  {}",
            r.name,
            r.expected,
            r.observed,
            r.error,
            r.tolerance,
            if r.passed() { "PASS" } else { "FAIL" }
        )
        .map_err(io)?;
    }
    let failed = rows.iter().filter(|r| !r.passed()).count();
    writeln!(out, "{} checks, {} failed", rows.len(), failed).map_err(io)?;
    Ok(rows)
}

/// Runs a parsed command line and returns the process exit code.
pub fn run<W: Write, E: Write>(cli: Cli, out: &mut W, err: &mut E) -> i32 {
    let result = match cli.command {
        Command::Synth(args) => {
            let spec = SyntheticSpec {
                components: args.components,
                domain: args.domain,
                family: args.family.into(),
            };
            cmd_synth(&spec, &args.out).map(|ts| {
                let _ = writeln!(out, "wrote {} rows to {}", ts.len(), args.out.display());
                0
            })
        }
        Command::Analyze(args) => {
            AnalysisConfig::from_args(&args).and_then(|cfg| cmd_analyze(&cfg, out).map(|_| 0))
        }
        Command::Compare(args) => {
            AnalysisConfig::from_args(&args).and_then(|cfg| cmd_compare(&cfg, out).map(|_| 0))
        }
        Command::Verify(args) => cmd_verify(args.max_order, out).map(|rows| {
            if rows.iter().all(CheckRow::passed) {
                0
            } else {
                EXIT_VERIFY_FAILED
            }
        }),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_INPUT_ERROR
    })
}

pub mod render {
    //! Heat-map rendering of a scalogram to an RGB PNG.

    use super::*;

    const ROW_PIXELS_TARGET: usize = 256;

    // viridis anchors
    const PALETTE: [(f64, [f64; 3]); 5] = [
        (0.00, [68.0, 1.0, 84.0]),
        (0.25, [59.0, 82.0, 139.0]),
        (0.50, [33.0, 145.0, 140.0]),
        (0.75, [94.0, 201.0, 98.0]),
        (1.00, [253.0, 231.0, 37.0]),
    ];

    fn colour(x: f64) -> [u8; 3] {
        let x = x.clamp(0.0, 1.0);
        let i = PALETTE
            .iter()
            .rposition(|(p, _)| *p <= x)
            .unwrap_or(0)
            .min(PALETTE.len() - 2);
        let (p0, c0) = PALETTE[i];
        let (p1, c1) = PALETTE[i + 1];
        let f = (x - p0) / (p1 - p0);
        let mut rgb = [0u8; 3];
        for k in 0..3 {
            rgb[k] = (c0[k] + f * (c1[k] - c0[k])).round() as u8;
        }
        rgb
    }

    /// Small scales at the top, shifts left to right.
    pub fn write_heatmap(s: &Scalogram, path: &Path) -> Result<()> {
        let (lo, hi) = s
            .values()
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        let span = if hi > lo { hi - lo } else { 1.0 };
        let row_px = (ROW_PIXELS_TARGET / s.rows()).max(1);
        let (width, height) = (s.cols(), s.rows() * row_px);
        let mut data = Vec::with_capacity(width * height * 3);
        for r in 0..s.rows() {
            let line: Vec<u8> = s
                .row(r)
                .iter()
                .flat_map(|&v| colour((v - lo) / span))
                .collect();
            for _ in 0..row_px {
                data.extend_from_slice(&line);
            }
        }
        let file = create(path)?;
        let mut enc = png::Encoder::new(file, width as u32, height as u32);
        enc.set_color(png::ColorType::Rgb);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header()?;
        writer.write_image_data(&data)?;
        writer.finish()?;
        Ok(())
    }

}
