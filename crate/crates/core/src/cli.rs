//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage errors, 2 on data or validation
//! errors. Every flag may also be set in a JSON file passed with `--config`,
//! using the flag's long name as key; flags given on the command line win.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::connectivity::{
    group_display_matrix, pair_matrices, preprocess_channels, symptom_association, ChannelSet,
    FdrScope, PairMetricsMatrix, PairSettings, DEFAULT_DWELL, DEFAULT_GAMMA,
    DEFAULT_SAMPLE_PERIOD, DEFAULT_WINDOW,
};
use crate::dtw::{dtw_align, DtwParams};
use crate::error::{Result, WqaError};
use crate::io;
use crate::metrics::{compute_report, CentralTendency, Dwell};
use crate::signal::{BandLimits, ScenarioKind};
use crate::sim::{defaults, run_sweep, Measure, SweepSpec};
use crate::svg;

pub const SEED_ENV: &str = "WARPQUANT_SEED";

#[derive(Debug, Parser)]
#[command(name = "warpquant", version, about = "Warp quantification analysis of DTW alignments")]
struct Cli {
    /// JSON file with default values for any flag (keys are long flag names)
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    /// Worker threads; 0 uses every core [default: 0]
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Align two single-column series and write the distance and path as JSON
    Align(AlignArgs),
    /// Align two series and write the WQA report as JSON
    Metrics(MetricsArgs),
    /// Run scenario sweeps and write JSON, CSV and SVG per scenario
    Simulate(SimulateArgs),
    /// Compute per-subject pair matrices and group display matrices
    Connect(ConnectArgs),
    /// Test pair measures against a per-subject score with covariates
    Assoc(AssocArgs),
}

#[derive(Debug, Args)]
struct DtwFlags {
    /// Sakoe–Chiba radius in samples [default: round(0.2 * max(N, M)) for metrics,
    /// round(0.2 * n) for simulate, 50 for connect and assoc]
    #[arg(long, value_name = "W")]
    window: Option<usize>,
    /// Cost exponent [default: 1; 2 for connect and assoc]
    #[arg(long, value_name = "G")]
    gamma: Option<f64>,
    /// Dwell threshold k for DRL and DCR [default: 3]
    #[arg(long, value_name = "K")]
    dwell: Option<usize>,
    /// Central tendency for CWD, WDV and DRL: median or mean [default: median]
    #[arg(long, value_name = "MODE")]
    mode: Option<CentralTendency>,
}

#[derive(Debug, Args)]
struct PairInputs {
    /// First series (CSV with a header and one column)
    x: PathBuf,
    /// Second series
    y: PathBuf,
    /// Sample period in seconds [default: 1]
    #[arg(long, value_name = "SECONDS")]
    sample_period: Option<f64>,
    /// Output file; stdout when absent
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AlignArgs {
    #[command(flatten)]
    inputs: PairInputs,
    /// Sakoe–Chiba radius [default: round(0.2 * max(N, M))]
    #[arg(long, value_name = "W")]
    window: Option<usize>,
    /// Cost exponent [default: 1]
    #[arg(long, value_name = "G")]
    gamma: Option<f64>,
}

#[derive(Debug, Args)]
struct MetricsArgs {
    #[command(flatten)]
    inputs: PairInputs,
    #[command(flatten)]
    dtw: DtwFlags,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// S1..S6 or all [default: all]
    #[arg(long, value_name = "SCENARIO")]
    scenario: Option<String>,
    /// Simulations per grid point [default: 100]
    #[arg(long, value_name = "N")]
    n_sims: Option<usize>,
    /// Base seed; falls back to WARPQUANT_SEED, then 0
    #[arg(long)]
    seed: Option<u64>,
    /// Grid points per sweep [default: 12]
    #[arg(long, value_name = "N")]
    grid_points: Option<usize>,
    /// Series length [default: 1000]
    #[arg(long, value_name = "N")]
    n: Option<usize>,
    #[command(flatten)]
    dtw: DtwFlags,
    /// Score the mean curve with a bootstrap interval instead of per simulation
    #[arg(long)]
    rmse_of_mean: bool,
    /// Skip the SVG charts
    #[arg(long)]
    no_svg: bool,
    /// Output directory [default: sweeps]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ChannelFlags {
    /// Sample period in seconds [default: 2]
    #[arg(long, value_name = "SECONDS")]
    sample_period: Option<f64>,
    /// Band-pass lower edge in Hz [default: 0.01]
    #[arg(long, value_name = "HZ")]
    band_lo: Option<f64>,
    /// Band-pass upper edge in Hz [default: 0.15]
    #[arg(long, value_name = "HZ")]
    band_hi: Option<f64>,
    /// Use the channels as given, without detrending, filtering or z-scoring
    #[arg(long)]
    no_preprocess: bool,
    #[command(flatten)]
    dtw: DtwFlags,
}

#[derive(Debug, Args)]
struct ConnectArgs {
    /// Directory of subject CSVs (one file per subject, one column per channel)
    dir: PathBuf,
    #[command(flatten)]
    channels: ChannelFlags,
    /// Skip the SVG heatmaps
    #[arg(long)]
    no_svg: bool,
    /// Output directory [default: connectivity]
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AssocArgs {
    /// Directory of subject CSVs
    dir: PathBuf,
    /// CSV with one row per subject holding the score and covariates
    #[arg(long, value_name = "FILE")]
    scores: Option<PathBuf>,
    /// Column naming the subject (matched to file stems) [default: subject]
    #[arg(long, value_name = "NAME")]
    subject_column: Option<String>,
    /// Column holding the score [default: score]
    #[arg(long, value_name = "NAME")]
    score_column: Option<String>,
    /// Comma-separated covariate columns [default: none]
    #[arg(long, value_name = "A,B", value_delimiter = ',')]
    covariates: Option<Vec<String>>,
    /// Comma-separated measures [default: WDR,CWD,WDV,1-DRL,DCR,DTW]
    #[arg(long, value_name = "M,N", value_delimiter = ',')]
    measures: Option<Vec<Measure>>,
    /// FDR level [default: 0.05]
    #[arg(long)]
    q: Option<f64>,
    /// joint or per-measure [default: joint]
    #[arg(long, value_name = "SCOPE")]
    fdr_scope: Option<FdrScope>,
    #[command(flatten)]
    channels: ChannelFlags,
    /// Output CSV [default: association.csv]
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

/// Values read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct ConfigFile {
    jobs: Option<usize>,
    window: Option<usize>,
    gamma: Option<f64>,
    dwell: Option<usize>,
    mode: Option<CentralTendency>,
    sample_period: Option<f64>,
    out: Option<PathBuf>,
    scenario: Option<String>,
    n_sims: Option<usize>,
    seed: Option<u64>,
    grid_points: Option<usize>,
    n: Option<usize>,
    rmse_of_mean: Option<bool>,
    no_svg: Option<bool>,
    band_lo: Option<f64>,
    band_hi: Option<f64>,
    no_preprocess: Option<bool>,
    scores: Option<PathBuf>,
    subject_column: Option<String>,
    score_column: Option<String>,
    covariates: Option<Vec<String>>,
    measures: Option<Vec<Measure>>,
    q: Option<f64>,
    fdr_scope: Option<FdrScope>,
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| WqaError::Io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| WqaError::Parse(format!("config {}: {e}", path.display())))
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Errors are reported on stderr as a single line.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("warpquant: {}", e.to_string().replace('\n', " "));
            2
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let cfg = load_config(cli.config.as_deref())?;
    let jobs = cli.jobs.or(cfg.jobs).unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| WqaError::InvalidInput(format!("cannot start {jobs} workers: {e}")))?;
    pool.install(|| match cli.command {
        Command::Align(a) => cmd_align(a, &cfg),
        Command::Metrics(a) => cmd_metrics(a, &cfg),
        Command::Simulate(a) => cmd_simulate(a, &cfg),
        Command::Connect(a) => cmd_connect(a, &cfg),
        Command::Assoc(a) => cmd_assoc(a, &cfg),
    })
}

fn default_window(n: usize, m: usize) -> usize {
    (defaults::WINDOW_FRACTION * n.max(m) as f64).round() as usize
}

fn dwell_mode(flags: &DtwFlags, cfg: &ConfigFile, dwell_default: usize) -> Result<(Dwell, CentralTendency)> {
    let dwell = Dwell::new(flags.dwell.or(cfg.dwell).unwrap_or(dwell_default))?;
    let mode = flags.mode.or(cfg.mode).unwrap_or_default();
    Ok((dwell, mode))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => io::write_text(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v)
        .map(|s| s + "\n")
        .map_err(|e| WqaError::InvalidInput(format!("cannot serialize output: {e}")))
}

fn load_pair(inputs: &PairInputs, cfg: &ConfigFile) -> Result<(crate::TimeSeries, crate::TimeSeries)> {
    let ts = inputs.sample_period.or(cfg.sample_period).unwrap_or(1.0);
    Ok((io::load_series(&inputs.x, ts)?, io::load_series(&inputs.y, ts)?))
}

fn cmd_align(a: AlignArgs, cfg: &ConfigFile) -> Result<()> {
    let (x, y) = load_pair(&a.inputs, cfg)?;
    let params = DtwParams::new(
        a.window.or(cfg.window).unwrap_or_else(|| default_window(x.len(), y.len())),
        a.gamma.or(cfg.gamma).unwrap_or(defaults::GAMMA),
    )?;
    let result = dtw_align(&x, &y, params)?;
    let out = a.inputs.out.clone().or_else(|| cfg.out.clone());
    emit(out.as_deref(), &to_json(&result)?)
}

fn cmd_metrics(a: MetricsArgs, cfg: &ConfigFile) -> Result<()> {
    let (x, y) = load_pair(&a.inputs, cfg)?;
    let params = DtwParams::new(
        a.dtw.window.or(cfg.window).unwrap_or_else(|| default_window(x.len(), y.len())),
        a.dtw.gamma.or(cfg.gamma).unwrap_or(defaults::GAMMA),
    )?;
    let (dwell, mode) = dwell_mode(&a.dtw, cfg, defaults::DWELL)?;
    let report = compute_report(&x, &y, params, dwell, mode)?;
    let out = a.inputs.out.clone().or_else(|| cfg.out.clone());
    emit(out.as_deref(), &to_json(&report)?)
}

fn resolve_seed(flag: Option<u64>, cfg: Option<u64>) -> Result<u64> {
    if let Some(s) = flag.or(cfg) {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| WqaError::InvalidInput(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn cmd_simulate(a: SimulateArgs, cfg: &ConfigFile) -> Result<()> {
    let which = a.scenario.clone().or_else(|| cfg.scenario.clone()).unwrap_or_else(|| "all".into());
    let kinds: Vec<ScenarioKind> = if which.eq_ignore_ascii_case("all") {
        ScenarioKind::ALL.to_vec()
    } else {
        vec![which.parse()?]
    };
    let n = a.n.or(cfg.n).unwrap_or(defaults::N);
    let grid_points = a.grid_points.or(cfg.grid_points).unwrap_or(defaults::GRID_POINTS);
    let (dwell, mode) = dwell_mode(&a.dtw, cfg, defaults::DWELL)?;
    let dtw = DtwParams::new(
        a.dtw.window.or(cfg.window).unwrap_or_else(|| defaults::window_radius(n)),
        a.dtw.gamma.or(cfg.gamma).unwrap_or(defaults::GAMMA),
    )?;
    let base_seed = resolve_seed(a.seed, cfg.seed)?;
    let out = a.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| "sweeps".into());
    let svg_on = !(a.no_svg || cfg.no_svg.unwrap_or(false));

    let specs: Vec<SweepSpec> = kinds
        .iter()
        .map(|&k| {
            let mut spec = SweepSpec::with_length(k, n);
            spec.grid = defaults::grid(k, grid_points, n);
            spec.n_sims = a.n_sims.or(cfg.n_sims).unwrap_or(defaults::N_SIMS);
            spec.base_seed = base_seed;
            spec.dtw = dtw;
            spec.dwell = dwell;
            spec.mode = mode;
            spec.rmse_of_mean = a.rmse_of_mean || cfg.rmse_of_mean.unwrap_or(false);
            spec.validate().map(|_| spec)
        })
        .collect::<Result<_>>()?;

    for spec in &specs {
        let result = run_sweep(spec)?;
        let stem = format!("sweep_{}", spec.scenario);
        io::write_text(&out.join(format!("{stem}.json")), &to_json(&result)?)?;
        io::write_text(&out.join(format!("{stem}.csv")), &result.to_csv())?;
        if svg_on {
            io::write_text(&out.join(format!("{stem}.svg")), &svg::sweep_chart(&result))?;
        }
        let t = result.summary(result.target);
        println!(
            "{}: target {} rmse {:.4} [{:.4}, {:.4}], selectivity ratio {:.2}",
            spec.scenario,
            result.target,
            t.rmse_mean,
            t.rmse_ci.0,
            t.rmse_ci.1,
            result.selectivity_ratio()
        );
    }
    Ok(())
}

/// CSV files in `dir`, sorted by name, with their stems as subject ids.
fn subject_files(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| WqaError::Io(format!("{}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            let stem = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            files.push((stem, path));
        }
    }
    if files.is_empty() {
        return Err(WqaError::InvalidInput(format!("{}: no .csv subject files", dir.display())));
    }
    files.sort();
    Ok(files)
}

fn subject_matrices(dir: &Path, flags: &ChannelFlags, cfg: &ConfigFile) -> Result<Vec<PairMetricsMatrix>> {
    let ts = flags.sample_period.or(cfg.sample_period).unwrap_or(DEFAULT_SAMPLE_PERIOD);
    let band_default = crate::connectivity::default_band();
    let band = BandLimits::new(
        flags.band_lo.or(cfg.band_lo).unwrap_or(band_default.f_lo),
        flags.band_hi.or(cfg.band_hi).unwrap_or(band_default.f_hi),
    )?;
    band.validate_for(ts)?;
    let (dwell, mode) = dwell_mode(&flags.dtw, cfg, DEFAULT_DWELL)?;
    let settings = PairSettings {
        dtw: DtwParams::new(
            flags.dtw.window.or(cfg.window).unwrap_or(DEFAULT_WINDOW),
            flags.dtw.gamma.or(cfg.gamma).unwrap_or(DEFAULT_GAMMA),
        )?,
        dwell,
        mode,
    };
    let preprocess = !(flags.no_preprocess || cfg.no_preprocess.unwrap_or(false));

    subject_files(dir)?
        .into_iter()
        .map(|(id, path)| {
            let raw: ChannelSet = io::load_channels(&path, ts)?;
            let cs = if preprocess {
                preprocess_channels(&raw, band)
                    .map_err(|e| WqaError::InvalidInput(format!("{}: {e}", path.display())))?
            } else {
                raw
            };
            pair_matrices(&cs, &id, settings)
        })
        .collect()
}

fn cmd_connect(a: ConnectArgs, cfg: &ConfigFile) -> Result<()> {
    let out = a.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| "connectivity".into());
    let svg_on = !(a.no_svg || cfg.no_svg.unwrap_or(false));
    let subjects = subject_matrices(&a.dir, &a.channels, cfg)?;
    for s in &subjects {
        for m in Measure::ALL {
            let path = out.join("subjects").join(format!("{}_{}.csv", s.subject, m.slug()));
            io::write_text(&path, &io::matrix_to_csv(s.get(m), &s.channel_names))?;
        }
    }
    if subjects.len() >= 2 {
        let names = &subjects[0].channel_names;
        for m in Measure::ALL {
            let g = group_display_matrix(&subjects, m)?;
            io::write_text(&out.join(format!("group_{}.csv", m.slug())), &io::matrix_to_csv(&g, names))?;
            if svg_on {
                let title = format!("{m} (-1 x z of group mean)");
                io::write_text(&out.join(format!("group_{}.svg", m.slug())), &svg::heatmap(&g, names, &title))?;
            }
        }
    } else {
        eprintln!("warpquant: one subject only, group display matrices skipped");
    }
    Ok(())
}

fn cmd_assoc(a: AssocArgs, cfg: &ConfigFile) -> Result<()> {
    let scores_path = a
        .scores
        .clone()
        .or_else(|| cfg.scores.clone())
        .ok_or_else(|| WqaError::InvalidInput("--scores is required".into()))?;
    let subject_col = a.subject_column.clone().or_else(|| cfg.subject_column.clone()).unwrap_or_else(|| "subject".into());
    let score_col = a.score_column.clone().or_else(|| cfg.score_column.clone()).unwrap_or_else(|| "score".into());
    let covariates = a.covariates.clone().or_else(|| cfg.covariates.clone()).unwrap_or_default();
    let measures = a.measures.clone().or_else(|| cfg.measures.clone()).unwrap_or_else(|| Measure::ALL.to_vec());
    let q = a.q.or(cfg.q).unwrap_or(0.05);
    if !(q > 0.0 && q < 1.0) {
        return Err(WqaError::InvalidInput(format!("--q must lie in (0, 1), got {q}")));
    }
    let scope = a.fdr_scope.or(cfg.fdr_scope).unwrap_or_default();
    let out = a.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| "association.csv".into());

    let table = io::read_table(&scores_path)?;
    let source = scores_path.display().to_string();
    let col = |name: &str| {
        table
            .column(name)
            .ok_or_else(|| WqaError::InvalidInput(format!("{source}: no column '{name}'")))
    };
    let sid = col(&subject_col)?;
    let score_idx = col(&score_col)?;
    let cov_idx: Vec<usize> = covariates.iter().map(|c| col(c)).collect::<Result<_>>()?;
    let number = |r: usize, c: usize| -> Result<f64> {
        let cell = &table.rows[r][c];
        cell.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| {
            WqaError::Parse(format!(
                "{source}: bad value '{cell}' at row {} (line {}), column '{}'",
                r + 1,
                r + 2,
                table.headers[c]
            ))
        })
    };

    let subjects = subject_matrices(&a.dir, &a.channels, cfg)?;
    let mut score = Vec::with_capacity(subjects.len());
    let mut covs = Vec::with_capacity(subjects.len());
    for s in &subjects {
        let rows: Vec<usize> = (0..table.rows.len()).filter(|&r| table.rows[r][sid] == s.subject).collect();
        let r = match rows.as_slice() {
            [r] => *r,
            [] => return Err(WqaError::InvalidInput(format!("{source}: no row for subject '{}'", s.subject))),
            _ => return Err(WqaError::InvalidInput(format!("{source}: several rows for subject '{}'", s.subject))),
        };
        score.push(number(r, score_idx)?);
        covs.push(cov_idx.iter().map(|&c| number(r, c)).collect::<Result<Vec<f64>>>()?);
    }

    let result = symptom_association(&subjects, &measures, &score, &covs, q, scope)?;
    io::write_text(&out, &io::association_to_csv(&result))?;
    println!(
        "{} rows, {} FDR-significant at q={q}",
        result.rows.len(),
        result.significant().count()
    );
    Ok(())
}
