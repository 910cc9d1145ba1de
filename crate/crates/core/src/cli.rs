//! Command-line front end.
//!
//! Exit codes: 0 when the analysis passes, 2 for any input or usage error,
//! 3 when the analysis runs but fails. Settings come from flags and an
//! optional TOML file given with `--config`; flags win.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::criteria::{analyze, default_window, AnalysisParams};
use crate::curve::{jensen_check, Curve, JensenReport, JENSEN_NODES, ZERO_CLEARANCE};
use crate::error::{Error, Result};
use crate::fmt::JsonNum;
use crate::generators::{GapSchedule, GeneratorSpec, RandomCurveParams, COLLISION_SPACING};
use crate::plc::Window;
use crate::rescale::{equicontinuity_probe, ladder, normalized_trace, AnnulusGrid, TraceConfig};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_FAIL: i32 = 3;

/// Largest quadrature error accepted by `jensen-check`.
pub const JENSEN_TOL: f64 = 1e-6;

#[derive(Parser, Debug)]
#[command(name = "normcurve", version, about = "Normality criteria for holomorphic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate both normality conditions and write the report JSON.
    Analyze(Common),
    /// Compare quadrature circle means with the closed-form counting functions.
    JensenCheck {
        #[command(flatten)]
        common: Common,
        /// Number of equispaced circles in the window.
        #[arg(long)]
        points: Option<usize>,
    },
    /// Trace the normalized rescaled family along a ladder of log|λ|.
    Rescale {
        #[command(flatten)]
        common: Common,
        /// Ladder of log|λ| as `start,step,count`.
        #[arg(long, value_parser = parse_ladder, allow_hyphen_values = true)]
        ladder: Option<(f64, f64, usize)>,
        /// Grid size as `nt,ntheta`.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<(usize, usize)>,
        /// Annulus `t_lo,t_hi` in the rescaled variable.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        annulus: Option<(f64, f64)>,
        /// Step of the equicontinuity probe.
        #[arg(long)]
        h_step: Option<f64>,
        /// CSV path; defaults to the JSON path with a `.csv` extension.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Write one CSV per counting function plus one for the envelope into `--out`.
    ExportN(Common),
    /// Write a generated curve as curve-spec JSON.
    Generate(GenerateArgs),
}

#[derive(Args, Debug, Clone, Default)]
struct Common {
    /// Curve-spec JSON file.
    #[arg(long)]
    curve: Option<PathBuf>,
    #[arg(long)]
    a: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Analysis window `lo,hi` in t = log|z|.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    window: Option<(f64, f64)>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep tangent-defect witnesses at least `a` inside the window.
    #[arg(long, num_args = 0..=1, require_equals = true, default_missing_value = "true")]
    interior_only: Option<bool>,
    #[arg(long)]
    threshold_a: Option<f64>,
    #[arg(long)]
    threshold_delta: Option<f64>,
    /// TOML file with defaults for any of the settings.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    /// One of: geometric, counterexample, colliding, random.
    preset: String,
    #[arg(long = "K", default_value_t = 10)]
    k: usize,
    #[arg(long, default_value_t = 2.0)]
    base: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta0: f64,
    #[arg(long, default_value_t = std::f64::consts::PI, allow_hyphen_values = true)]
    theta1: f64,
    /// Collision gaps: `harmonic` (1/k), `harmonic:<scale>` or a constant.
    #[arg(long, default_value = "harmonic")]
    gap: String,
    #[arg(long, default_value_t = COLLISION_SPACING)]
    spacing: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Projective dimension of random curves.
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    density: f64,
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    window: Option<(f64, f64)>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Settings file; every key is optional.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    curve: Option<PathBuf>,
    a: Option<f64>,
    delta: Option<f64>,
    window: Option<[f64; 2]>,
    out: Option<PathBuf>,
    interior_only: Option<bool>,
    threshold_a: Option<f64>,
    threshold_delta: Option<f64>,
    points: Option<usize>,
    ladder: Option<(f64, f64, usize)>,
    grid: Option<[usize; 2]>,
    annulus: Option<[f64; 2]>,
    h_step: Option<f64>,
    csv: Option<PathBuf>,
}

fn parse_floats(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != n {
        return Err(format!("expected {n} comma-separated numbers, got `{s}`"));
    }
    parts
        .iter()
        .map(|p| p.parse::<f64>().map_err(|e| format!("`{p}`: {e}")))
        .collect()
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let v = parse_floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn parse_ladder(s: &str) -> std::result::Result<(f64, f64, usize), String> {
    let v = parse_floats(s, 3)?;
    if v[2] < 0.0 || v[2].fract() != 0.0 {
        return Err(format!("ladder count `{}` must be a nonnegative integer", v[2]));
    }
    Ok((v[0], v[1], v[2] as usize))
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [a, b] => Ok((
            a.parse().map_err(|e| format!("`{a}`: {e}"))?,
            b.parse().map_err(|e| format!("`{b}`: {e}"))?,
        )),
        _ => Err(format!("expected `nt,ntheta`, got `{s}`")),
    }
}

/// Flags merged over the optional config file.
struct Settings {
    file: FileConfig,
    common: Common,
}

impl Settings {
    fn new(common: Common) -> Result<Self> {
        let file = match &common.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
                toml::from_str(&text)
                    .map_err(|e| Error::invalid(format!("{}: {e}", path.display())))?
            }
            None => FileConfig::default(),
        };
        Ok(Settings { file, common })
    }

    fn curve(&self) -> Result<Curve> {
        let path = self
            .common
            .curve
            .as_ref()
            .or(self.file.curve.as_ref())
            .ok_or_else(|| Error::invalid("--curve is required"))?;
        Ok(Curve::load(path)?.curve)
    }

    fn out(&self) -> Option<&PathBuf> {
        self.common.out.as_ref().or(self.file.out.as_ref())
    }

    fn a(&self) -> f64 {
        self.common.a.or(self.file.a).unwrap_or(1.0)
    }

    fn window(&self, curve: &Curve) -> Result<Window> {
        match self.common.window.or(self.file.window.map(|w| (w[0], w[1]))) {
            Some((lo, hi)) => Window::new(lo, hi),
            None => Ok(default_window(curve, self.a(), 1.0)),
        }
    }

    fn analysis(&self) -> Result<AnalysisParams> {
        let d = AnalysisParams::default();
        let a = self.a();
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::invalid(format!("a = {a} must be positive")));
        }
        let window = match self.common.window.or(self.file.window.map(|w| (w[0], w[1]))) {
            Some((lo, hi)) => Some(Window::new(lo, hi)?),
            None => None,
        };
        Ok(AnalysisParams {
            a,
            delta: self.common.delta.or(self.file.delta).unwrap_or(d.delta),
            window,
            interior_only: self
                .common
                .interior_only
                .or(self.file.interior_only)
                .unwrap_or(d.interior_only),
            threshold_a: self
                .common
                .threshold_a
                .or(self.file.threshold_a)
                .unwrap_or(d.threshold_a),
            threshold_delta: self
                .common
                .threshold_delta
                .or(self.file.threshold_delta)
                .unwrap_or(d.threshold_delta),
        })
    }
}

/// Writes through a temporary file in the target directory, then renames.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

fn emit(out: Option<&PathBuf>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            let mut stdout = std::io::stdout().lock();
            let mut text = contents.to_string();
            if !text.ends_with('\n') {
                text.push('\n');
            }
            // a closed pipe downstream is not an error of ours
            let _ = stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush());
            Ok(())
        }
    }
}

fn cmd_analyze(common: Common) -> Result<i32> {
    let s = Settings::new(common)?;
    let curve = s.curve()?;
    let report = analyze(&curve, &s.analysis()?)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    emit(s.out(), &report.to_json())?;
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}

#[derive(Serialize)]
struct JensenJson {
    max_error: JsonNum,
    tolerance: JsonNum,
    nodes: usize,
    clearance: JsonNum,
    window: [JsonNum; 2],
    checked: usize,
    skipped: Vec<JsonNum>,
    pass: bool,
}

fn jensen_json(r: &JensenReport, window: Window) -> String {
    let doc = JensenJson {
        max_error: JsonNum(r.max_error),
        tolerance: JsonNum(JENSEN_TOL),
        nodes: JENSEN_NODES,
        clearance: JsonNum(ZERO_CLEARANCE),
        window: [JsonNum(window.lo), JsonNum(window.hi)],
        checked: r.checked.len(),
        skipped: r.skipped.iter().copied().map(JsonNum).collect(),
        pass: r.max_error <= JENSEN_TOL,
    };
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

fn cmd_jensen_check(common: Common, points: Option<usize>) -> Result<i32> {
    let s = Settings::new(common)?;
    let curve = s.curve()?;
    let window = s.window(&curve)?;
    let points = points.or(s.file.points).unwrap_or(33);
    if points < 2 {
        return Err(Error::invalid("--points must be at least 2"));
    }
    let report = jensen_check(&curve, window, points);
    for t in &report.skipped {
        eprintln!("skipped t = {t}: within {ZERO_CLEARANCE} of a zero modulus");
    }
    emit(s.out(), &jensen_json(&report, window))?;
    Ok(if report.max_error <= JENSEN_TOL {
        EXIT_PASS
    } else {
        EXIT_FAIL
    })
}

struct RescaleArgs {
    ladder: Option<(f64, f64, usize)>,
    grid: Option<(usize, usize)>,
    annulus: Option<(f64, f64)>,
    h_step: Option<f64>,
    csv: Option<PathBuf>,
}

fn cmd_rescale(common: Common, args: RescaleArgs) -> Result<i32> {
    let s = Settings::new(common)?;
    let curve = s.curve()?;
    let (start, step, count) = args.ladder.or(s.file.ladder).unwrap_or((0.0, 1.0, 11));
    let (n_t, n_theta) = args
        .grid
        .or(s.file.grid.map(|g| (g[0], g[1])))
        .unwrap_or((32, 32));
    let l2 = std::f64::consts::LN_2;
    let (t_lo, t_hi) = args
        .annulus
        .or(s.file.annulus.map(|a| (a[0], a[1])))
        .unwrap_or((-l2, l2));
    let h_step = args.h_step.or(s.file.h_step).unwrap_or(0.01);

    let grid = AnnulusGrid::new(t_lo, t_hi, n_t, n_theta)?;
    let lambdas = ladder(start, step, count);
    let trace = normalized_trace(&curve, &lambdas, &TraceConfig::new(grid))?;
    let probe = equicontinuity_probe(&curve, &lambdas, &grid, h_step)?;

    let json = trace.to_json(Some(&probe));
    let csv = trace.to_csv(Some(&probe));
    let csv_path = args
        .csv
        .or(s.file.csv.clone())
        .or_else(|| s.out().map(|p| p.with_extension("csv")));
    emit(s.out(), &json)?;
    if let Some(p) = csv_path {
        write_atomic(&p, &csv)?;
    }
    Ok(EXIT_PASS)
}

fn cmd_export_n(common: Common) -> Result<i32> {
    let s = Settings::new(common)?;
    let curve = s.curve()?;
    let window = s.window(&curve)?;
    let dir = s
        .out()
        .ok_or_else(|| Error::invalid("export-n needs --out <directory>"))?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    for (j, n) in curve.counting_functions().iter().enumerate() {
        write_atomic(&dir.join(format!("coord_{j}.csv")), &n.to_csv(window))?;
    }
    write_atomic(&dir.join("envelope.csv"), &curve.envelope().to_csv(window))?;
    Ok(EXIT_PASS)
}

fn parse_gap(s: &str) -> Result<GapSchedule> {
    if s == "harmonic" {
        return Ok(GapSchedule::Harmonic { scale: 1.0 });
    }
    if let Some(scale) = s.strip_prefix("harmonic:") {
        let scale = scale
            .parse()
            .map_err(|_| Error::invalid(format!("bad harmonic scale `{scale}`")))?;
        return Ok(GapSchedule::Harmonic { scale });
    }
    s.parse()
        .map(GapSchedule::Constant)
        .map_err(|_| Error::invalid(format!("bad gap schedule `{s}`")))
}

fn cmd_generate(g: GenerateArgs) -> Result<i32> {
    let spec = match g.preset.as_str() {
        "geometric" => GeneratorSpec::GeometricPair {
            k: g.k,
            base: g.base,
            theta0: g.theta0,
            theta1: g.theta1,
        },
        "counterexample" => GeneratorSpec::PaperCounterexample { k: g.k },
        "colliding" => GeneratorSpec::CollidingPair {
            k: g.k,
            gap: parse_gap(&g.gap)?,
            spacing: g.spacing,
        },
        "random" => GeneratorSpec::Random(RandomCurveParams {
            n: g.n,
            density: g.density,
            window: g.window.unwrap_or(RandomCurveParams::default().window),
            seed: g.seed,
            ..Default::default()
        }),
        other => {
            return Err(Error::invalid(format!(
                "unknown preset `{other}`; expected one of {}",
                GeneratorSpec::PRESETS.join(", ")
            )))
        }
    };
    emit(g.out.as_ref(), &spec.build()?.to_json())?;
    Ok(EXIT_PASS)
}

/// Parses `args` (program name first) and runs the subcommand; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
        }
    };
    let result = match cli.command {
        Command::Analyze(c) => cmd_analyze(c),
        Command::JensenCheck { common, points } => cmd_jensen_check(common, points),
        Command::Rescale {
            common,
            ladder,
            grid,
            annulus,
            h_step,
            csv,
        } => cmd_rescale(
            common,
            RescaleArgs {
                ladder,
                grid,
                annulus,
                h_step,
                csv,
            },
        ),
        Command::ExportN(c) => cmd_export_n(c),
        Command::Generate(g) => cmd_generate(g),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
