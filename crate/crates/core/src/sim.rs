//! Sweep experiments over the six scenarios.
//!
//! For every simulation index and grid point a scenario instance is built
//! (seed `base_seed + sim`), aligned once, and summarized by six measures.
//! Each simulation's curve over the grid is z-scored and compared with the
//! z-scored driver by RMSE; the spread of those RMSEs across simulations gives
//! the confidence interval.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dtw::DtwParams;
use crate::error::{Result, WqaError};
use crate::metrics::{report_from_slices, CentralTendency, Dwell, WqaReport};
use crate::signal::{make_scenario, BandLimits, ScenarioKind, ScenarioParams, ScenarioSpec};
use crate::stats::{mean, percentile_ci, rmse, zscore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Measure {
    #[serde(rename = "WDR")]
    Wdr,
    #[serde(rename = "CWD")]
    Cwd,
    #[serde(rename = "WDV")]
    Wdv,
    #[serde(rename = "1-DRL")]
    OneMinusDrl,
    #[serde(rename = "DCR")]
    Dcr,
    #[serde(rename = "DTW")]
    DtwDistance,
}

impl Measure {
    pub const ALL: [Measure; 6] = [
        Measure::Wdr,
        Measure::Cwd,
        Measure::Wdv,
        Measure::OneMinusDrl,
        Measure::Dcr,
        Measure::DtwDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Measure::Wdr => "WDR",
            Measure::Cwd => "CWD",
            Measure::Wdv => "WDV",
            Measure::OneMinusDrl => "1-DRL",
            Measure::Dcr => "DCR",
            Measure::DtwDistance => "DTW",
        }
    }

    /// Lowercase form safe for file names.
    pub fn slug(self) -> &'static str {
        match self {
            Measure::Wdr => "wdr",
            Measure::Cwd => "cwd",
            Measure::Wdv => "wdv",
            Measure::OneMinusDrl => "one_minus_drl",
            Measure::Dcr => "dcr",
            Measure::DtwDistance => "dtw",
        }
    }

    pub fn of(self, r: &WqaReport) -> f64 {
        match self {
            Measure::Wdr => r.wdr,
            Measure::Cwd => r.cwd,
            Measure::Wdv => r.wdv,
            Measure::OneMinusDrl => r.one_minus_drl,
            Measure::Dcr => r.dcr,
            Measure::DtwDistance => r.dtw_distance,
        }
    }

    /// Value for two identical signals.
    pub fn identity_value(self) -> f64 {
        0.0
    }
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.name())
    }
}

impl std::str::FromStr for Measure {
    type Err = WqaError;
    fn from_str(s: &str) -> Result<Self> {
        Measure::ALL
            .into_iter()
            .find(|m| m.name().eq_ignore_ascii_case(s) || m.slug() == s)
            .ok_or_else(|| WqaError::InvalidInput(format!("unknown measure '{s}'")))
    }
}

/// Design of one scenario's sweep: which measure it isolates and how the
/// response is expected to move with the driver.
pub trait SweepDesign {
    fn target_measure(self) -> Measure;
    /// +1 when the target grows with the driver, -1 when it shrinks.
    fn response_sign(self) -> f64;
}

impl SweepDesign for ScenarioKind {
    fn target_measure(self) -> Measure {
        match self {
            ScenarioKind::S1 => Measure::Wdr,
            ScenarioKind::S2 => Measure::Cwd,
            ScenarioKind::S3 => Measure::Wdv,
            ScenarioKind::S4 => Measure::OneMinusDrl,
            ScenarioKind::S5 => Measure::Dcr,
            ScenarioKind::S6 => Measure::DtwDistance,
        }
    }

    fn response_sign(self) -> f64 {
        // longer shared blocks mean longer diagonal runs, so 1 - DRL falls
        if self == ScenarioKind::S4 {
            -1.0
        } else {
            1.0
        }
    }
}

/// Default fixed parameters and driver range per scenario. Values are quoted
/// for `n = 1000`.
pub mod defaults {
    use super::*;

    pub const N: usize = 1000;
    pub const SAMPLE_PERIOD: f64 = 1.0;
    pub const GAMMA: f64 = 1.0;
    pub const DWELL: usize = 3;
    pub const GRID_POINTS: usize = 12;
    pub const N_SIMS: usize = 100;

    /// Sakoe–Chiba radius as a fraction of the series length.
    pub const WINDOW_FRACTION: f64 = 0.2;

    pub fn window_radius(n: usize) -> usize {
        (WINDOW_FRACTION * n as f64).round() as usize
    }

    pub const S1_AMPLITUDE: f64 = 20.0;
    pub const S2_BLOCK: usize = 600;
    pub const S2_START: usize = 200;
    pub const S3_OFFSET: f64 = 40.0;
    pub const S3_SCALE: f64 = 0.1;
    pub const S4_START: usize = 200;
    /// Triangle slope `4*A*f` shared by every S5 grid point.
    pub const S5_SLOPE: f64 = 0.4;

    /// Factor applied to sample-count constants for a series of length `n`.
    fn scale(n: usize) -> f64 {
        n as f64 / N as f64
    }

    fn samples(v: usize, n: usize) -> usize {
        (v as f64 * scale(n)).round() as usize
    }

    /// Driver range; sample-valued ranges (S2 offset, S3 amplitude, S4 block
    /// length) scale with `n`.
    pub fn driver_range(kind: ScenarioKind, n: usize) -> (f64, f64) {
        let r = scale(n);
        match kind {
            ScenarioKind::S1 => (0.001, 0.012),
            ScenarioKind::S2 => (0.0, 80.0 * r),
            ScenarioKind::S3 => (5.0 * r, 40.0 * r),
            ScenarioKind::S4 => ((50.0 * r).round(), (600.0 * r).round()),
            ScenarioKind::S5 => (0.002, 0.01),
            ScenarioKind::S6 => (0.0, 2.0),
        }
    }

    /// Parameters with every non-swept value fixed; the driver slot holds the
    /// low end of the range.
    pub fn template(kind: ScenarioKind, n: usize) -> ScenarioParams {
        let lo = driver_range(kind, n).0;
        match kind {
            ScenarioKind::S1 => ScenarioParams::S1 {
                amplitude: S1_AMPLITUDE * scale(n),
                f: lo,
            },
            ScenarioKind::S2 => ScenarioParams::S2 {
                block_len: samples(S2_BLOCK, n),
                s: samples(S2_START, n).max(1),
                mu: lo,
            },
            ScenarioKind::S3 => ScenarioParams::S3 {
                mu: S3_OFFSET * scale(n),
                amplitude: lo,
                c: S3_SCALE,
            },
            ScenarioKind::S4 => ScenarioParams::S4 {
                block_len: lo as usize,
                s: samples(S4_START, n).max(1),
            },
            ScenarioKind::S5 => ScenarioParams::S5 {
                amplitude: S5_SLOPE / (4.0 * lo),
                f: lo,
            },
            ScenarioKind::S6 => ScenarioParams::S6 { alpha: lo },
        }
    }

    /// Evenly spaced grid over the default range. S4 block lengths are
    /// rounded to whole samples.
    pub fn grid(kind: ScenarioKind, points: usize, n: usize) -> Vec<f64> {
        let (lo, hi) = driver_range(kind, n);
        let step = (hi - lo) / (points.max(2) - 1) as f64;
        (0..points)
            .map(|i| {
                let v = lo + step * i as f64;
                if kind == ScenarioKind::S4 {
                    v.round()
                } else {
                    v
                }
            })
            .collect()
    }
}

/// Substitutes `driver` into the swept slot of `template`.
pub fn with_driver(template: ScenarioParams, driver: f64) -> ScenarioParams {
    match template {
        ScenarioParams::S1 { amplitude, .. } => ScenarioParams::S1 { amplitude, f: driver },
        ScenarioParams::S2 { block_len, s, .. } => ScenarioParams::S2 {
            block_len,
            s,
            mu: driver,
        },
        ScenarioParams::S3 { mu, c, .. } => ScenarioParams::S3 {
            mu,
            amplitude: driver,
            c,
        },
        ScenarioParams::S4 { s, .. } => ScenarioParams::S4 {
            block_len: driver.round() as usize,
            s,
        },
        // the triangle slope 4*A*f is held fixed, so A shrinks as f grows
        ScenarioParams::S5 { amplitude, f } => ScenarioParams::S5 {
            amplitude: if driver > 0.0 { amplitude * f / driver } else { amplitude },
            f: driver,
        },
        ScenarioParams::S6 { .. } => ScenarioParams::S6 { alpha: driver },
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub scenario: ScenarioKind,
    pub template: ScenarioParams,
    pub grid: Vec<f64>,
    pub n_sims: usize,
    pub base_seed: u64,
    pub n: usize,
    pub sample_period: f64,
    pub band: BandLimits,
    pub dtw: DtwParams,
    pub dwell: Dwell,
    pub mode: CentralTendency,
    /// Score the z-scored mean curve instead of each simulation, with a
    /// bootstrap interval over simulations.
    pub rmse_of_mean: bool,
}

impl SweepSpec {
    /// Desk-scale defaults for one scenario.
    pub fn new(scenario: ScenarioKind) -> Self {
        Self::with_length(scenario, defaults::N)
    }

    /// Defaults for series of length `n`, with the window and sample-valued
    /// scenario constants scaled to match.
    pub fn with_length(scenario: ScenarioKind, n: usize) -> Self {
        Self {
            scenario,
            template: defaults::template(scenario, n),
            grid: defaults::grid(scenario, defaults::GRID_POINTS, n),
            n_sims: defaults::N_SIMS,
            base_seed: 0,
            n,
            sample_period: defaults::SAMPLE_PERIOD,
            band: BandLimits::default(),
            dtw: DtwParams {
                window_radius: defaults::window_radius(n),
                gamma: defaults::GAMMA,
            },
            dwell: Dwell::new(defaults::DWELL).expect("default dwell is positive"),
            mode: CentralTendency::Median,
            rmse_of_mean: false,
        }
    }

    pub fn scenario_spec(&self, driver: f64, sim: usize) -> ScenarioSpec {
        ScenarioSpec {
            params: with_driver(self.template, driver),
            n: self.n,
            sample_period: self.sample_period,
            band: self.band,
            seed: self.base_seed.wrapping_add(sim as u64),
        }
    }

    /// Checks the grid, the counts and every grid point's scenario constraints.
    pub fn validate(&self) -> Result<()> {
        if self.template.kind() != self.scenario {
            return Err(WqaError::InvalidInput(format!(
                "template is {} but the sweep is {}",
                self.template.kind(),
                self.scenario
            )));
        }
        if self.grid.len() < 3 {
            return Err(WqaError::InvalidInput("sweep grid needs at least 3 points".into()));
        }
        if self.grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(WqaError::InvalidInput("sweep grid must be strictly increasing".into()));
        }
        if self.n_sims < 2 {
            return Err(WqaError::InvalidInput("n_sims must be at least 2".into()));
        }
        DtwParams::new(self.dtw.window_radius, self.dtw.gamma)?;
        for &g in &self.grid {
            let spec = self.scenario_spec(g, 0);
            spec.validate()?;
            if let ScenarioParams::S2 { mu, .. } = spec.params {
                if mu > self.dtw.window_radius as f64 {
                    return Err(WqaError::ConstraintViolation(format!(
                        "S2 offset {mu} exceeds the window radius {}",
                        self.dtw.window_radius
                    )));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureSummary {
    pub measure: Measure,
    /// Across-simulation mean of the raw measure at each grid point.
    pub mean_raw_curve: Vec<f64>,
    /// `mean_raw_curve`, z-scored (all zeros when flat).
    pub mean_curve: Vec<f64>,
    pub rmse_mean: f64,
    pub rmse_ci: (f64, f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub scenario: ScenarioKind,
    pub target: Measure,
    pub grid: Vec<f64>,
    pub driver_z: Vec<f64>,
    /// Sign applied to `driver_z` when scoring the target measure. Off-target
    /// measures are always scored against `driver_z` itself.
    pub target_sign: f64,
    pub n_sims: usize,
    pub measures: Vec<MeasureSummary>,
}

impl SweepResult {
    pub fn summary(&self, m: Measure) -> &MeasureSummary {
        self.measures
            .iter()
            .find(|s| s.measure == m)
            .expect("every measure is summarized")
    }

    /// Smallest off-target mean RMSE divided by the target's mean RMSE.
    pub fn selectivity_ratio(&self) -> f64 {
        let on = self.summary(self.target).rmse_mean;
        let off = self
            .measures
            .iter()
            .filter(|s| s.measure != self.target)
            .map(|s| s.rmse_mean)
            .fold(f64::INFINITY, f64::min);
        off / on
    }

    /// CSV with one row per grid point: driver, z-scored driver, and the six
    /// z-scored mean curves.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("driver,driver_z");
        for m in &self.measures {
            out.push(',');
            out.push_str(m.measure.name());
        }
        out.push('\n');
        for (g, (d, z)) in self.grid.iter().zip(&self.driver_z).enumerate() {
            out.push_str(&format!("{d},{z}"));
            for m in &self.measures {
                out.push_str(&format!(",{}", m.mean_curve[g]));
            }
            out.push('\n');
        }
        out
    }
}

const CI_LEVEL: f64 = 0.95;
const BOOTSTRAP_REPS: usize = 1000;

/// Raw reports indexed `[sim][grid]`.
pub fn simulate_reports(spec: &SweepSpec) -> Result<Vec<Vec<WqaReport>>> {
    spec.validate()?;
    let g = spec.grid.len();
    let flat: Vec<WqaReport> = (0..spec.n_sims * g)
        .into_par_iter()
        .map(|idx| {
            let (sim, gi) = (idx / g, idx % g);
            let inst = make_scenario(&spec.scenario_spec(spec.grid[gi], sim))?;
            report_from_slices(
                inst.x.as_slice(),
                inst.y.as_slice(),
                spec.dtw,
                spec.dwell,
                spec.mode,
            )
        })
        .collect::<Result<_>>()?;
    Ok(flat.chunks(g).map(<[WqaReport]>::to_vec).collect())
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepResult> {
    let reports = simulate_reports(spec)?;
    summarize(spec, &reports)
}

fn mean_curve(curves: &[&Vec<f64>], g: usize) -> Vec<f64> {
    (0..g)
        .map(|gi| curves.iter().map(|c| c[gi]).sum::<f64>() / curves.len() as f64)
        .collect()
}

/// Aggregates `[sim][grid]` reports into per-measure RMSE summaries.
pub fn summarize(spec: &SweepSpec, reports: &[Vec<WqaReport>]) -> Result<SweepResult> {
    let g = spec.grid.len();
    let driver_z = zscore(&spec.grid)?;
    let sign = spec.scenario.response_sign();
    let target_measure = spec.scenario.target_measure();

    let mut measures = Vec::with_capacity(Measure::ALL.len());
    for m in Measure::ALL {
        let s = if m == target_measure { sign } else { 1.0 };
        let target: Vec<f64> = driver_z.iter().map(|z| s * z).collect();
        let curves: Vec<Vec<f64>> = reports
            .iter()
            .map(|row| row.iter().map(|r| m.of(r)).collect())
            .collect();
        let refs: Vec<&Vec<f64>> = curves.iter().collect();
        let mean_raw_curve = mean_curve(&refs, g);
        let mean_z = zscore(&mean_raw_curve)?;

        let (rmse_mean, rmse_ci) = if spec.rmse_of_mean {
            let point = rmse(&mean_z, &target)?;
            let mut rng = ChaCha8Rng::seed_from_u64(spec.base_seed ^ 0xB007);
            let n = curves.len();
            let boot: Vec<f64> = (0..BOOTSTRAP_REPS)
                .map(|_| {
                    let pick: Vec<&Vec<f64>> =
                        (0..n).map(|_| &curves[rng.random_range(0..n)]).collect();
                    let z = zscore(&mean_curve(&pick, g))?;
                    rmse(&z, &target)
                })
                .collect::<Result<_>>()?;
            (point, percentile_ci(&boot, CI_LEVEL)?)
        } else {
            let per_sim: Vec<f64> = curves
                .iter()
                .map(|c| rmse(&zscore(c)?, &target))
                .collect::<Result<_>>()?;
            (mean(&per_sim), percentile_ci(&per_sim, CI_LEVEL)?)
        };

        measures.push(MeasureSummary {
            measure: m,
            mean_raw_curve,
            mean_curve: mean_z,
            rmse_mean,
            rmse_ci,
        });
    }

    Ok(SweepResult {
        scenario: spec.scenario,
        target: target_measure,
        grid: spec.grid.clone(),
        driver_z,
        target_sign: sign,
        n_sims: spec.n_sims,
        measures,
    })
}
