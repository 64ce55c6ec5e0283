//! Warping-path descriptors.
//!
//! Geometric descriptors (WDR, CWD, WDV) measure continuous deviation of the
//! path from the diagonal; structural descriptors (DRL, DCR) measure discrete
//! organization: lockstep runs and side switches. All five are unitless and
//! live in `[0, 1]`.

use serde::{Deserialize, Serialize};

use crate::dtw::{dtw_align_slices, DtwParams, TimeSeries, WarpPath};
use crate::error::{Result, WqaError};
use crate::stats::{mean, median, sample_std};

/// Minimum run length (in steps) for a diagonal run or a sign run to count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Dwell(usize);

impl Dwell {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(WqaError::InvalidInput("dwell threshold k must be >= 1".into()));
        }
        Ok(Self(k))
    }

    pub fn k(self) -> usize {
        self.0
    }
}

impl TryFrom<usize> for Dwell {
    type Error = WqaError;
    fn try_from(k: usize) -> Result<Self> {
        Dwell::new(k)
    }
}

impl From<Dwell> for usize {
    fn from(d: Dwell) -> usize {
        d.0
    }
}

/// Central tendency used by CWD, WDV and DRL.
///
/// In `Mean` mode WDV switches from the median absolute deviation to the
/// sample standard deviation of `|WD|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CentralTendency {
    #[default]
    Median,
    Mean,
}

impl CentralTendency {
    fn apply(self, values: &[f64]) -> f64 {
        match self {
            CentralTendency::Median => median(values),
            CentralTendency::Mean => mean(values),
        }
    }
}

impl std::str::FromStr for CentralTendency {
    type Err = WqaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "median" => Ok(Self::Median),
            "mean" => Ok(Self::Mean),
            other => Err(WqaError::InvalidInput(format!(
                "unknown central tendency '{other}' (expected median or mean)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WqaReport {
    pub wdr: f64,
    pub cwd: f64,
    pub wdv: f64,
    pub drl: f64,
    pub one_minus_drl: f64,
    pub dcr: f64,
    pub dtw_distance: f64,
}

/// `WD(tau) = i(tau) - j(tau)` for every pair on the path.
pub fn warp_deviation(path: &WarpPath) -> Vec<i64> {
    path.pairs()
        .iter()
        .map(|&(i, j)| i as i64 - j as i64)
        .collect()
}

/// Excess path length relative to `max(n, m)`, normalized by `min(n, m)`.
pub fn compute_wdr(path: &WarpPath, n: usize, m: usize) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(WqaError::EmptyInput);
    }
    let last = *path.pairs().last().expect("non-empty path");
    if last != (n, m) {
        return Err(WqaError::UndefinedPath(format!(
            "path ends at {last:?}, expected ({n},{m})"
        )));
    }
    let longest = n.max(m);
    Ok((path.len() - longest) as f64 / (n + m - longest) as f64)
}

fn abs_deviation(wd: &[i64]) -> Vec<f64> {
    wd.iter().map(|d| d.unsigned_abs() as f64).collect()
}

pub fn compute_cwd(path: &WarpPath, window_radius: usize, mode: CentralTendency) -> f64 {
    cwd_from_deviation(&warp_deviation(path), window_radius, mode)
}

/// CWD on a precomputed deviation sequence. Zero radius yields 0.
pub fn cwd_from_deviation(wd: &[i64], window_radius: usize, mode: CentralTendency) -> f64 {
    if window_radius == 0 || wd.is_empty() {
        return 0.0;
    }
    let central = mode.apply(&abs_deviation(wd));
    (central / window_radius as f64).min(1.0)
}

pub fn compute_wdv(path: &WarpPath, window_radius: usize, mode: CentralTendency) -> f64 {
    wdv_from_deviation(&warp_deviation(path), window_radius, mode)
}

/// WDV on a precomputed deviation sequence. Zero radius yields 0.
pub fn wdv_from_deviation(wd: &[i64], window_radius: usize, mode: CentralTendency) -> f64 {
    if window_radius == 0 || wd.is_empty() {
        return 0.0;
    }
    let abs = abs_deviation(wd);
    let spread = match mode {
        CentralTendency::Median => {
            let center = median(&abs);
            let dev: Vec<f64> = abs.iter().map(|a| (a - center).abs()).collect();
            median(&dev)
        }
        CentralTendency::Mean => sample_std(&abs),
    };
    (spread / window_radius as f64).min(1.0)
}

/// Lengths of maximal runs of consecutive `(1,1)` steps.
pub fn diagonal_runs(path: &WarpPath) -> Vec<usize> {
    let mut runs = Vec::new();
    let mut current = 0usize;
    for w in path.pairs().windows(2) {
        if w[1].0 == w[0].0 + 1 && w[1].1 == w[0].1 + 1 {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    runs
}

/// Central length of diagonal runs of at least `k` steps over `L - 1`.
/// A run covering every step is kept whatever `k` is. Returns 0 when no run
/// survives the dwell filter.
pub fn compute_drl(path: &WarpPath, dwell: Dwell, mode: CentralTendency) -> Result<f64> {
    let steps = path.len().checked_sub(1).filter(|&s| s > 0).ok_or_else(|| {
        WqaError::UndefinedPath("DRL needs a path with at least two pairs".into())
    })?;
    let kept: Vec<f64> = diagonal_runs(path)
        .into_iter()
        .filter(|&r| r >= dwell.k() || r == steps)
        .map(|r| r as f64)
        .collect();
    if kept.is_empty() {
        return Ok(0.0);
    }
    Ok(mode.apply(&kept) / steps as f64)
}

/// Sign of each deviation with zeros replaced by the most recent nonzero sign.
/// Leading zeros take the first nonzero sign; an all-zero input gives `None`.
pub fn zero_resolved_signs(wd: &[i64]) -> Option<Vec<i8>> {
    let first = wd.iter().find(|&&d| d != 0)?.signum() as i8;
    let mut last = first;
    Some(
        wd.iter()
            .map(|&d| {
                if d != 0 {
                    last = d.signum() as i8;
                }
                last
            })
            .collect(),
    )
}

/// Run-length encoding as `(value, length)`.
fn run_lengths(signs: &[i8]) -> Vec<(i8, usize)> {
    let mut out: Vec<(i8, usize)> = Vec::new();
    for &s in signs {
        match out.last_mut() {
            Some((v, len)) if *v == s => *len += 1,
            _ => out.push((s, 1)),
        }
    }
    out
}

/// Number of sign flips whose two adjacent runs both last at least `k` steps.
pub fn dwell_crossings(wd: &[i64], dwell: Dwell) -> usize {
    let Some(signs) = zero_resolved_signs(wd) else {
        return 0;
    };
    let k = dwell.k();
    run_lengths(&signs)
        .windows(2)
        .filter(|r| r[0].0 != r[1].0 && r[0].1 >= k && r[1].1 >= k)
        .count()
}

pub fn compute_dcr(path: &WarpPath, dwell: Dwell) -> Result<f64> {
    dcr_from_deviation(&warp_deviation(path), dwell)
}

/// Dwell-qualified crossing count scaled by `2k / (L - 1)`, clamped to 1.
pub fn dcr_from_deviation(wd: &[i64], dwell: Dwell) -> Result<f64> {
    if wd.len() < 2 {
        return Err(WqaError::UndefinedPath(
            "DCR needs a path with at least two pairs".into(),
        ));
    }
    let crossings = dwell_crossings(wd, dwell);
    let raw = 2.0 * dwell.k() as f64 / (wd.len() - 1) as f64 * crossings as f64;
    Ok(raw.min(1.0))
}

/// Aligns once and derives every descriptor from the single optimal path.
pub fn compute_report(
    x: &TimeSeries,
    y: &TimeSeries,
    params: DtwParams,
    dwell: Dwell,
    mode: CentralTendency,
) -> Result<WqaReport> {
    report_from_slices(x.as_slice(), y.as_slice(), params, dwell, mode)
}

pub fn report_from_slices(
    x: &[f64],
    y: &[f64],
    params: DtwParams,
    dwell: Dwell,
    mode: CentralTendency,
) -> Result<WqaReport> {
    let aligned = dtw_align_slices(x, y, params)?;
    report_for_path(&aligned.path, aligned.distance, x.len(), y.len(), params, dwell, mode)
}

pub fn report_for_path(
    path: &WarpPath,
    distance: f64,
    n: usize,
    m: usize,
    params: DtwParams,
    dwell: Dwell,
    mode: CentralTendency,
) -> Result<WqaReport> {
    let wd = warp_deviation(path);
    let drl = compute_drl(path, dwell, mode)?;
    Ok(WqaReport {
        wdr: compute_wdr(path, n, m)?,
        cwd: cwd_from_deviation(&wd, params.window_radius, mode),
        wdv: wdv_from_deviation(&wd, params.window_radius, mode),
        drl,
        one_minus_drl: 1.0 - drl,
        dcr: dcr_from_deviation(&wd, dwell)?,
        dtw_distance: distance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(p: &[(usize, usize)]) -> WarpPath {
        WarpPath::new(p.to_vec()).unwrap()
    }

    fn diagonal(len: usize) -> WarpPath {
        WarpPath::new((1..=len).map(|i| (i, i)).collect()).unwrap()
    }

    /// Builds a path from a step string: 'd' diagonal, 'h' (+1,0), 'v' (0,+1).
    fn from_steps(steps: &str) -> WarpPath {
        let mut pairs = vec![(1, 1)];
        for c in steps.chars() {
            let (i, j) = *pairs.last().unwrap();
            pairs.push(match c {
                'd' => (i + 1, j + 1),
                'h' => (i + 1, j),
                'v' => (i, j + 1),
                _ => unreachable!(),
            });
        }
        WarpPath::new(pairs).unwrap()
    }

    const MED: CentralTendency = CentralTendency::Median;

    fn k(v: usize) -> Dwell {
        Dwell::new(v).unwrap()
    }

    #[test]
    fn deviation_examples() {
        assert_eq!(warp_deviation(&diagonal(3)), vec![0, 0, 0]);
        assert_eq!(warp_deviation(&path(&[(1, 1), (2, 2), (3, 2)])), vec![0, 0, 1]);
        assert_eq!(warp_deviation(&path(&[(1, 1), (1, 2), (1, 3)])), vec![0, -1, -2]);
    }

    #[test]
    fn wdr_examples() {
        assert_eq!(compute_wdr(&diagonal(3), 3, 3).unwrap(), 0.0);
        assert_eq!(compute_wdr(&path(&[(1, 1), (2, 1), (2, 2)]), 2, 2).unwrap(), 0.5);
        let p = path(&[(1, 1), (2, 1), (3, 2), (3, 3)]);
        assert_eq!(compute_wdr(&p, 3, 3).unwrap(), 1.0 / 3.0);
        assert!(compute_wdr(&p, 4, 3).is_err());
    }

    #[test]
    fn cwd_examples() {
        assert_eq!(cwd_from_deviation(&[0, 0, 1], 2, MED), 0.0);
        assert_eq!(cwd_from_deviation(&[2, 2, 2], 4, MED), 0.5);
        assert_eq!(cwd_from_deviation(&[-1, -2, -3], 3, MED), 2.0 / 3.0);
        assert_eq!(cwd_from_deviation(&[1, 2, 3], 0, MED), 0.0);
        assert_eq!(cwd_from_deviation(&[0, 0, 3], 3, CentralTendency::Mean), 1.0 / 3.0);
    }

    #[test]
    fn wdv_examples() {
        assert_eq!(wdv_from_deviation(&[1, 1, 1], 7, MED), 0.0);
        assert_eq!(wdv_from_deviation(&[0, 2, 4], 4, MED), 0.5);
        assert_eq!(wdv_from_deviation(&[0, 0, 0], 5, MED), 0.0);
        // sample std of [0, 2, 4] is 2
        assert_eq!(wdv_from_deviation(&[0, -2, 4], 4, CentralTendency::Mean), 0.5);
    }

    #[test]
    fn drl_examples() {
        for len in [2, 5, 40] {
            assert_eq!(compute_drl(&diagonal(len), k(3), MED).unwrap(), 1.0);
        }
        // runs 5, 2, 7 separated by single off-diagonal steps, padded to 20 steps
        let p = from_steps("dddddhddhdddddddvhhv");
        assert_eq!(p.len() - 1, 20);
        assert_eq!(diagonal_runs(&p), vec![5, 2, 7]);
        assert_eq!(compute_drl(&p, k(3), MED).unwrap(), 0.3);
        assert_eq!(compute_drl(&path(&[(1, 1), (2, 2), (3, 2)]), k(3), MED).unwrap(), 0.0);
        assert!(compute_drl(&diagonal(1), k(1), MED).is_err());
    }

    #[test]
    fn dcr_examples() {
        assert_eq!(dcr_from_deviation(&[0, 1, 2, 2, 0, 1], k(1)).unwrap(), 0.0);

        let mut wd = vec![1i64; 7];
        wd.extend([-1; 7]);
        wd.extend([1; 8]);
        // runs (+,7)(-,7)(+,8): L = 22
        let v = dcr_from_deviation(&wd, k(3)).unwrap();
        assert!((v - 4.0 / 7.0).abs() < 1e-15);

        let mut wd = vec![1i64; 5];
        wd.push(-1);
        wd.extend([1; 5]);
        assert_eq!(dwell_crossings(&wd, k(3)), 0);
        assert_eq!(dcr_from_deviation(&wd, k(3)).unwrap(), 0.0);
    }

    #[test]
    fn dcr_clamps_on_a_banded_path() {
        let p = path(&[(1, 1), (2, 1), (2, 2), (2, 3), (3, 4), (4, 5)]);
        let wd = warp_deviation(&p);
        assert_eq!(wd, vec![0, 1, 0, -1, -1, -1]);
        // zero resolution: [1,1,1,-1,-1,-1] -> runs (+,3)(-,3), raw (6/5)*1 = 1.2
        let raw = 2.0 * 3.0 / 5.0 * dwell_crossings(&wd, k(3)) as f64;
        assert!(raw > 1.0);
        assert_eq!(compute_dcr(&p, k(3)).unwrap(), 1.0);
        assert!(p.validate_for(4, 5, 1).is_ok());
    }

    #[test]
    fn zero_resolution() {
        assert_eq!(zero_resolved_signs(&[0, 0, -2, 0, 3, 0]), Some(vec![-1, -1, -1, -1, 1, 1]));
        assert_eq!(zero_resolved_signs(&[0, 0]), None);
        assert_eq!(dcr_from_deviation(&[0, 0, 0], k(1)).unwrap(), 0.0);
    }

    #[test]
    fn report_on_known_path() {
        let x = TimeSeries::new(vec![0.0, 1.0, 2.0], 1.0).unwrap();
        let y = TimeSeries::new(vec![0.0, 2.0], 1.0).unwrap();
        let r = compute_report(&x, &y, DtwParams::new(2, 1.0).unwrap(), k(1), MED).unwrap();
        assert_eq!(r.dtw_distance, 1.0);
        assert_eq!(r.wdr, 0.0);
        assert_eq!(r.cwd, 0.0);
        assert_eq!(r.wdv, 0.0);
        assert_eq!(r.drl, 0.5);
        assert_eq!(r.one_minus_drl, 0.5);
        assert_eq!(r.dcr, 0.0);
    }

    #[test]
    fn report_identical_signals() {
        let x = TimeSeries::new(vec![0.3, -1.0, 2.0, 0.5, 0.1, -0.4], 1.0).unwrap();
        let r = compute_report(&x, &x, DtwParams::new(2, 1.0).unwrap(), k(3), MED).unwrap();
        assert_eq!(
            r,
            WqaReport {
                wdr: 0.0,
                cwd: 0.0,
                wdv: 0.0,
                drl: 1.0,
                one_minus_drl: 0.0,
                dcr: 0.0,
                dtw_distance: 0.0
            }
        );
    }

    #[test]
    fn report_propagates_band_error() {
        let x = TimeSeries::new(vec![0.0; 5], 1.0).unwrap();
        let y = TimeSeries::new(vec![0.0], 1.0).unwrap();
        let err = compute_report(&x, &y, DtwParams::new(1, 1.0).unwrap(), k(3), MED).unwrap_err();
        assert!(matches!(err, WqaError::BandTooNarrow { .. }));
    }

    #[test]
    fn dwell_rejects_zero() {
        assert!(Dwell::new(0).is_err());
        assert!(serde_json::from_str::<Dwell>("0").is_err());
    }
}
