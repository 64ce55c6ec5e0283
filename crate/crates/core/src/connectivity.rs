//! Pairwise WQA/DTW connectivity over multichannel recordings.
//!
//! Every unordered channel pair of a subject is aligned once and summarized
//! by the six measures. Across subjects, matrices are averaged for display or
//! regressed on a per-subject score with covariates, followed by
//! Benjamini–Hochberg correction.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dtw::DtwParams;
use crate::error::{Result, WqaError};
use crate::metrics::{report_from_slices, CentralTendency, Dwell, WqaReport};
use crate::signal::{bandpass, BandLimits};
use crate::sim::Measure;
use crate::stats::{bh_fdr, mean, ols_fit, sample_std, zscore};

/// Default Sakoe–Chiba radius (samples) for connectivity.
pub const DEFAULT_WINDOW: usize = 50;
pub const DEFAULT_GAMMA: f64 = 2.0;
pub const DEFAULT_DWELL: usize = 3;
pub const DEFAULT_SAMPLE_PERIOD: f64 = 2.0;

pub fn default_band() -> BandLimits {
    BandLimits {
        f_lo: 0.01,
        f_hi: 0.15,
    }
}

/// `C` channels of `T` samples each, stored channel-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChannelSet {
    pub data: Vec<Vec<f64>>,
    pub sample_period: f64,
    pub channel_names: Vec<String>,
}

impl ChannelSet {
    pub fn new(data: Vec<Vec<f64>>, sample_period: f64, channel_names: Vec<String>) -> Result<Self> {
        if data.len() < 2 {
            return Err(WqaError::InvalidInput(format!(
                "need at least 2 channels, got {}",
                data.len()
            )));
        }
        if channel_names.len() != data.len() {
            return Err(WqaError::LengthMismatch {
                expected: data.len(),
                actual: channel_names.len(),
            });
        }
        let t = data[0].len();
        if t < 2 {
            return Err(WqaError::InvalidInput("channels need at least 2 samples".into()));
        }
        if let Some(c) = data.iter().position(|ch| ch.len() != t) {
            return Err(WqaError::InvalidInput(format!(
                "channel '{}' has {} samples, expected {t}",
                channel_names[c],
                data[c].len()
            )));
        }
        if let Some(c) = data.iter().position(|ch| ch.iter().any(|v| !v.is_finite())) {
            return Err(WqaError::InvalidInput(format!(
                "channel '{}' contains non-finite values",
                channel_names[c]
            )));
        }
        if !(sample_period.is_finite() && sample_period > 0.0) {
            return Err(WqaError::InvalidInput("sample period must be positive".into()));
        }
        Ok(Self {
            data,
            sample_period,
            channel_names,
        })
    }

    /// Names `ch1..chC`.
    pub fn unnamed(data: Vec<Vec<f64>>, sample_period: f64) -> Result<Self> {
        let names = (1..=data.len()).map(|i| format!("ch{i}")).collect();
        Self::new(data, sample_period, names)
    }

    pub fn channel_count(&self) -> usize {
        self.data.len()
    }

    pub fn len(&self) -> usize {
        self.data[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.data[0].is_empty()
    }

    pub fn channel(&self, c: usize) -> &[f64] {
        &self.data[c]
    }
}

/// Residual of the least-squares line through `v` against its index.
pub fn detrend(v: &[f64]) -> Vec<f64> {
    let n = v.len() as f64;
    let t_mean = (n - 1.0) / 2.0;
    let v_mean = mean(v);
    let (mut sxy, mut sxx) = (0.0, 0.0);
    for (i, &y) in v.iter().enumerate() {
        let dt = i as f64 - t_mean;
        sxy += dt * (y - v_mean);
        sxx += dt * dt;
    }
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    v.iter()
        .enumerate()
        .map(|(i, &y)| y - v_mean - slope * (i as f64 - t_mean))
        .collect()
}

const DEGENERATE_REL: f64 = 1e-10;

/// Detrend, band-pass and z-score every channel.
pub fn preprocess_channels(cs: &ChannelSet, band: BandLimits) -> Result<ChannelSet> {
    band.validate_for(cs.sample_period)?;
    let mut bad = Vec::new();
    let mut out = Vec::with_capacity(cs.channel_count());
    for (c, ch) in cs.data.iter().enumerate() {
        let scale = sample_std(ch).max(mean(&ch.iter().map(|v| v.abs()).collect::<Vec<_>>()));
        let floor = DEGENERATE_REL * scale.max(f64::MIN_POSITIVE);
        let flat = detrend(ch);
        if sample_std(&flat) <= floor {
            bad.push(cs.channel_names[c].clone());
            continue;
        }
        let filtered = bandpass(&flat, cs.sample_period, band);
        if sample_std(&filtered) <= floor {
            bad.push(cs.channel_names[c].clone());
            continue;
        }
        out.push(zscore(&filtered)?);
    }
    if !bad.is_empty() {
        return Err(WqaError::DegenerateChannels(bad));
    }
    ChannelSet::new(out, cs.sample_period, cs.channel_names.clone())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMatrix {
    size: usize,
    values: Vec<f64>,
}

impl SquareMatrix {
    pub fn zeros(size: usize) -> Self {
        Self {
            size,
            values: vec![0.0; size * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.size + j]
    }

    pub fn set_symmetric(&mut self, i: usize, j: usize, v: f64) {
        self.values[i * self.size + j] = v;
        self.values[j * self.size + i] = v;
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Entries above the diagonal in row-major order.
    pub fn upper_triangle(&self) -> Vec<f64> {
        upper_pairs(self.size).map(|(i, j)| self.get(i, j)).collect()
    }
}

/// Unordered pairs `(i, j)` with `i < j` in row-major order.
pub fn upper_pairs(c: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..c).flat_map(move |i| (i + 1..c).map(move |j| (i, j)))
}

/// One symmetric channel-by-channel matrix per measure for one subject.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairMetricsMatrix {
    pub subject: String,
    pub channel_names: Vec<String>,
    /// Indexed like [`Measure::ALL`].
    pub matrices: Vec<SquareMatrix>,
}

impl PairMetricsMatrix {
    pub fn get(&self, m: Measure) -> &SquareMatrix {
        let idx = Measure::ALL.iter().position(|&x| x == m).expect("known measure");
        &self.matrices[idx]
    }

    pub fn channel_count(&self) -> usize {
        self.channel_names.len()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSettings {
    pub dtw: DtwParams,
    pub dwell: Dwell,
    pub mode: CentralTendency,
}

impl Default for PairSettings {
    fn default() -> Self {
        Self {
            dtw: DtwParams {
                window_radius: DEFAULT_WINDOW,
                gamma: DEFAULT_GAMMA,
            },
            dwell: Dwell::new(DEFAULT_DWELL).expect("positive dwell"),
            mode: CentralTendency::Median,
        }
    }
}

/// Aligns all `C(C-1)/2` channel pairs. Diagonal entries hold the
/// identical-signal value of each measure (0, with DRL stored as 1 - DRL).
pub fn pair_matrices(
    cs: &ChannelSet,
    subject: &str,
    settings: PairSettings,
) -> Result<PairMetricsMatrix> {
    let c = cs.channel_count();
    let pairs: Vec<(usize, usize)> = upper_pairs(c).collect();
    let reports: Vec<WqaReport> = pairs
        .par_iter()
        .map(|&(i, j)| {
            report_from_slices(
                cs.channel(i),
                cs.channel(j),
                settings.dtw,
                settings.dwell,
                settings.mode,
            )
        })
        .collect::<Result<_>>()?;
    let matrices = Measure::ALL
        .iter()
        .map(|&m| {
            let mut mat = SquareMatrix::zeros(c);
            for (&(i, j), r) in pairs.iter().zip(&reports) {
                mat.set_symmetric(i, j, m.of(r));
            }
            for d in 0..c {
                mat.set_symmetric(d, d, m.identity_value());
            }
            mat
        })
        .collect();
    Ok(PairMetricsMatrix {
        subject: subject.to_string(),
        channel_names: cs.channel_names.clone(),
        matrices,
    })
}

fn check_subjects(subjects: &[PairMetricsMatrix]) -> Result<usize> {
    let first = subjects
        .first()
        .ok_or_else(|| WqaError::InvalidInput("no subjects".into()))?;
    let c = first.channel_count();
    if let Some(s) = subjects.iter().find(|s| s.channel_names != first.channel_names) {
        return Err(WqaError::InvalidInput(format!(
            "subject '{}' has channels {:?}, expected {:?}",
            s.subject, s.channel_names, first.channel_names
        )));
    }
    Ok(c)
}

/// Group mean, z-scored jointly over the upper triangle and sign-inverted so
/// that small values (tight coupling) display as positive.
pub fn group_display_matrix(subjects: &[PairMetricsMatrix], measure: Measure) -> Result<SquareMatrix> {
    if subjects.len() < 2 {
        return Err(WqaError::InvalidInput(format!(
            "group display needs at least 2 subjects, got {}",
            subjects.len()
        )));
    }
    let c = check_subjects(subjects)?;
    let pairs: Vec<(usize, usize)> = upper_pairs(c).collect();
    let means: Vec<f64> = pairs
        .iter()
        .map(|&(i, j)| {
            // sort for an order-independent sum
            let mut v: Vec<f64> = subjects.iter().map(|s| s.get(measure).get(i, j)).collect();
            v.sort_by(f64::total_cmp);
            v.iter().sum::<f64>() / v.len() as f64
        })
        .collect();
    let z = if means.len() >= 2 {
        zscore(&means)?
    } else {
        vec![0.0; means.len()]
    };
    let mut out = SquareMatrix::zeros(c);
    for (&(i, j), v) in pairs.iter().zip(z) {
        out.set_symmetric(i, j, if v == 0.0 { 0.0 } else { -v });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FdrScope {
    /// One correction over every (pair, measure) row.
    #[default]
    Joint,
    /// A separate correction per measure.
    PerMeasure,
}

impl std::str::FromStr for FdrScope {
    type Err = WqaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "joint" => Ok(Self::Joint),
            "per-measure" => Ok(Self::PerMeasure),
            other => Err(WqaError::InvalidInput(format!(
                "unknown FDR scope '{other}' (joint or per-measure)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationRow {
    pub pair_a: String,
    pub pair_b: String,
    pub measure: Measure,
    pub beta: f64,
    pub t: f64,
    pub p: f64,
    pub fdr_significant: bool,
    /// Sign of `beta`: 1, -1 or 0.
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssociationTable {
    pub rows: Vec<AssociationRow>,
}

impl AssociationTable {
    pub fn significant(&self) -> impl Iterator<Item = &AssociationRow> {
        self.rows.iter().filter(|r| r.fdr_significant)
    }
}

/// One response vector (a pair value per subject) to regress on the score.
#[derive(Debug, Clone, PartialEq)]
pub struct PairResponse {
    pub pair_a: String,
    pub pair_b: String,
    pub measure: Measure,
    pub values: Vec<f64>,
}

/// Per pair and measure, regresses the pair value on
/// `[1, score, covariates...]` and keeps the score coefficient.
///
/// `covariates[s]` is the covariate row of subject `s`; it may be empty.
pub fn symptom_association(
    subjects: &[PairMetricsMatrix],
    measures: &[Measure],
    score: &[f64],
    covariates: &[Vec<f64>],
    q: f64,
    scope: FdrScope,
) -> Result<AssociationTable> {
    let c = check_subjects(subjects)?;
    let names = &subjects[0].channel_names;
    let responses: Vec<PairResponse> = measures
        .iter()
        .flat_map(|&m| upper_pairs(c).map(move |(i, j)| (m, i, j)))
        .map(|(m, i, j)| PairResponse {
            pair_a: names[i].clone(),
            pair_b: names[j].clone(),
            measure: m,
            values: subjects.iter().map(|s| s.get(m).get(i, j)).collect(),
        })
        .collect();
    pair_association(&responses, score, covariates, q, scope)
}

/// Regression and FDR step of [`symptom_association`] on explicit responses.
pub fn pair_association(
    responses: &[PairResponse],
    score: &[f64],
    covariates: &[Vec<f64>],
    q: f64,
    scope: FdrScope,
) -> Result<AssociationTable> {
    let n = score.len();
    if covariates.len() != n {
        return Err(WqaError::LengthMismatch {
            expected: n,
            actual: covariates.len(),
        });
    }
    if let Some(r) = responses.iter().find(|r| r.values.len() != n) {
        return Err(WqaError::LengthMismatch {
            expected: r.values.len(),
            actual: n,
        });
    }
    let design: Vec<Vec<f64>> = score
        .iter()
        .zip(covariates)
        .map(|(&s, cov)| {
            let mut row = Vec::with_capacity(2 + cov.len());
            row.push(1.0);
            row.push(s);
            row.extend_from_slice(cov);
            row
        })
        .collect();

    let fits: Vec<(f64, f64, f64)> = responses
        .par_iter()
        .map(|r| {
            let fit = ols_fit(&r.values, &design)?;
            Ok((fit.coefficients[1], fit.t_statistics[1], fit.p_values[1]))
        })
        .collect::<Result<_>>()?;

    let p: Vec<f64> = fits.iter().map(|f| f.2).collect();
    let flags = match scope {
        FdrScope::Joint => bh_fdr(&p, q)?,
        FdrScope::PerMeasure => {
            let mut flags = vec![false; p.len()];
            for m in Measure::ALL {
                let idx: Vec<usize> = (0..responses.len()).filter(|&k| responses[k].measure == m).collect();
                if idx.is_empty() {
                    continue;
                }
                let sub: Vec<f64> = idx.iter().map(|&k| p[k]).collect();
                for (k, f) in idx.into_iter().zip(bh_fdr(&sub, q)?) {
                    flags[k] = f;
                }
            }
            flags
        }
    };

    let rows = responses
        .iter()
        .zip(fits)
        .zip(flags)
        .map(|((r, (beta, t, p)), flag)| AssociationRow {
            pair_a: r.pair_a.clone(),
            pair_b: r.pair_b.clone(),
            measure: r.measure,
            beta,
            t,
            p,
            fdr_significant: flag,
            sign: if beta > 0.0 {
                1
            } else if beta < 0.0 {
                -1
            } else {
                0
            },
        })
        .collect();
    Ok(AssociationTable { rows })
}
