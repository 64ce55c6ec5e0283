//! Banded dynamic time warping.
//!
//! Alignment uses the symmetric unit step set `{(1,0), (0,1), (1,1)}` without
//! step weights inside a Sakoe–Chiba band `|i - j| <= w`. The pointwise cost is
//! `|a - b|^gamma`.
//!
//! The cumulative table is filled from the end of both series toward the
//! start (cost-to-go), so the optimal path can be traced forward from `(1,1)`.
//! At every tie the trace prefers the diagonal step, then `(0,+1)`, then
//! `(+1,0)`, which makes the returned path unique and biased toward short
//! optima. The reported distance comes from a separate forward accumulation,
//! so it is exactly the smallest left-to-right path sum; the returned path
//! re-sums to it up to rounding.

use serde::{Deserialize, Serialize};

use crate::error::{Result, WqaError};

/// Uniformly sampled real-valued sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeSeries {
    pub samples: Vec<f64>,
    pub sample_period: f64,
}

impl TimeSeries {
    pub fn new(samples: Vec<f64>, sample_period: f64) -> Result<Self> {
        if samples.is_empty() {
            return Err(WqaError::EmptyInput);
        }
        if !(sample_period.is_finite() && sample_period > 0.0) {
            return Err(WqaError::InvalidInput(format!(
                "sample period must be positive and finite, got {sample_period}"
            )));
        }
        if let Some(pos) = samples.iter().position(|v| !v.is_finite()) {
            return Err(WqaError::InvalidInput(format!(
                "sample {} is not finite",
                pos + 1
            )));
        }
        Ok(Self {
            samples,
            sample_period,
        })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.samples
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DtwParams {
    /// Sakoe–Chiba radius in samples.
    pub window_radius: usize,
    /// Exponent of the pointwise cost.
    pub gamma: f64,
}

impl DtwParams {
    pub fn new(window_radius: usize, gamma: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(WqaError::InvalidInput(format!(
                "gamma must be positive and finite, got {gamma}"
            )));
        }
        Ok(Self {
            window_radius,
            gamma,
        })
    }
}

/// Monotone, continuous sequence of 1-based index pairs `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct WarpPath {
    pairs: Vec<(usize, usize)>,
}

impl WarpPath {
    /// Checks the start at `(1,1)` and that every step is `(1,0)`, `(0,1)`
    /// or `(1,1)`.
    pub fn new(pairs: Vec<(usize, usize)>) -> Result<Self> {
        match pairs.first() {
            None => return Err(WqaError::UndefinedPath("path has no pairs".into())),
            Some(&(1, 1)) => {}
            Some(&first) => {
                return Err(WqaError::UndefinedPath(format!(
                    "path must start at (1,1), starts at {first:?}"
                )))
            }
        }
        for (tau, w) in pairs.windows(2).enumerate() {
            let (di, dj) = (w[1].0 as i64 - w[0].0 as i64, w[1].1 as i64 - w[0].1 as i64);
            if !matches!((di, dj), (1, 0) | (0, 1) | (1, 1)) {
                return Err(WqaError::UndefinedPath(format!(
                    "illegal step ({di},{dj}) at position {}",
                    tau + 2
                )));
            }
        }
        Ok(Self { pairs })
    }

    /// Additionally checks the end point `(n, m)` and the band `|i - j| <= w`.
    pub fn validate_for(&self, n: usize, m: usize, window_radius: usize) -> Result<()> {
        let last = *self.pairs.last().expect("non-empty by construction");
        if last != (n, m) {
            return Err(WqaError::UndefinedPath(format!(
                "path ends at {last:?}, expected ({n},{m})"
            )));
        }
        if let Some(&(i, j)) = self.pairs.iter().find(|(i, j)| i.abs_diff(*j) > window_radius) {
            return Err(WqaError::UndefinedPath(format!(
                "pair ({i},{j}) lies outside the band of radius {window_radius}"
            )));
        }
        Ok(())
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// The same path with the roles of the two series exchanged.
    pub fn transposed(&self) -> Self {
        Self {
            pairs: self.pairs.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    /// Pointwise cost summed left to right along the path.
    pub fn cost(&self, x: &[f64], y: &[f64], gamma: f64) -> f64 {
        self.pairs
            .iter()
            .fold(0.0, |acc, &(i, j)| acc + pointwise_cost(x[i - 1], y[j - 1], gamma))
    }
}

impl TryFrom<Vec<(usize, usize)>> for WarpPath {
    type Error = WqaError;

    fn try_from(pairs: Vec<(usize, usize)>) -> Result<Self> {
        WarpPath::new(pairs)
    }
}

impl From<WarpPath> for Vec<(usize, usize)> {
    fn from(p: WarpPath) -> Self {
        p.pairs
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentResult {
    pub distance: f64,
    pub path: WarpPath,
}

/// `|a - b|^gamma`.
#[inline]
pub fn pointwise_cost(a: f64, b: f64, gamma: f64) -> f64 {
    let d = (a - b).abs();
    if gamma == 1.0 {
        d
    } else {
        d.powf(gamma)
    }
}

/// Checked form of [`pointwise_cost`].
pub fn try_pointwise_cost(a: f64, b: f64, gamma: f64) -> Result<f64> {
    if !(a.is_finite() && b.is_finite()) {
        return Err(WqaError::InvalidInput(format!(
            "pointwise cost needs finite inputs, got ({a}, {b})"
        )));
    }
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(WqaError::InvalidInput(format!("gamma must be > 0, got {gamma}")));
    }
    Ok(pointwise_cost(a, b, gamma))
}

pub fn dtw_align(x: &TimeSeries, y: &TimeSeries, params: DtwParams) -> Result<AlignmentResult> {
    dtw_align_slices(x.as_slice(), y.as_slice(), params)
}

/// Banded cost-to-go table. Row `i` stores columns `lo(i)..=hi(i)`.
struct BandedTable {
    n: usize,
    m: usize,
    w: usize,
    stride: usize,
    cells: Vec<f64>,
}

impl BandedTable {
    fn new(n: usize, m: usize, w: usize) -> Self {
        let stride = (2 * w + 1).min(m);
        Self {
            n,
            m,
            w,
            stride,
            cells: vec![f64::INFINITY; n * stride],
        }
    }

    #[inline]
    fn lo(&self, i: usize) -> usize {
        i.saturating_sub(self.w)
    }

    #[inline]
    fn hi(&self, i: usize) -> usize {
        (i + self.w).min(self.m - 1)
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> f64 {
        if i >= self.n || j >= self.m || j < self.lo(i) || j > self.hi(i) {
            return f64::INFINITY;
        }
        self.cells[i * self.stride + (j - self.lo(i))]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: f64) {
        let k = i * self.stride + (j - self.lo(i));
        self.cells[k] = v;
    }
}

/// Slice-level alignment; see the module docs for the step set and tie-break.
pub fn dtw_align_slices(x: &[f64], y: &[f64], params: DtwParams) -> Result<AlignmentResult> {
    let (n, m) = (x.len(), y.len());
    if n == 0 || m == 0 {
        return Err(WqaError::EmptyInput);
    }
    let DtwParams {
        window_radius: w,
        gamma,
    } = params;
    if !(gamma.is_finite() && gamma > 0.0) {
        return Err(WqaError::InvalidInput(format!("gamma must be > 0, got {gamma}")));
    }
    if w < n.abs_diff(m) {
        return Err(WqaError::BandTooNarrow {
            radius: w,
            gap: n.abs_diff(m),
        });
    }

    let mut table = BandedTable::new(n, m, w);
    for i in (0..n).rev() {
        for j in (table.lo(i)..=table.hi(i)).rev() {
            let c = pointwise_cost(x[i], y[j], gamma);
            let v = if i == n - 1 && j == m - 1 {
                c
            } else {
                let best = table
                    .get(i + 1, j + 1)
                    .min(table.get(i, j + 1))
                    .min(table.get(i + 1, j));
                c + best
            };
            table.set(i, j, v);
        }
    }

    let mut pairs = Vec::with_capacity(n + m - 1);
    let (mut i, mut j) = (0usize, 0usize);
    pairs.push((1, 1));
    while (i, j) != (n - 1, m - 1) {
        // candidate order encodes the tie-break: diagonal, (0,+1), (+1,0)
        let candidates = [(i + 1, j + 1), (i, j + 1), (i + 1, j)];
        let mut best = candidates[0];
        let mut best_v = table.get(best.0, best.1);
        for &(ci, cj) in &candidates[1..] {
            let v = table.get(ci, cj);
            if v < best_v {
                best = (ci, cj);
                best_v = v;
            }
        }
        debug_assert!(best_v.is_finite());
        (i, j) = best;
        pairs.push((i + 1, j + 1));
    }

    Ok(AlignmentResult {
        distance: forward_minimum(x, y, w, gamma),
        path: WarpPath { pairs },
    })
}

/// Banded accumulated cost from `(1,1)`, keeping two rows.
fn forward_minimum(x: &[f64], y: &[f64], w: usize, gamma: f64) -> f64 {
    let m = y.len();
    let mut prev = vec![f64::INFINITY; m];
    let mut cur = vec![f64::INFINITY; m];
    for (i, &xi) in x.iter().enumerate() {
        let (lo, hi) = (i.saturating_sub(w), (i + w).min(m - 1));
        cur.fill(f64::INFINITY);
        for j in lo..=hi {
            let c = pointwise_cost(xi, y[j], gamma);
            cur[j] = if i == 0 && j == 0 {
                c
            } else {
                let mut best = prev[j];
                if j > 0 {
                    best = best.min(prev[j - 1]).min(cur[j - 1]);
                }
                c + best
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn align(x: &[f64], y: &[f64], w: usize, gamma: f64) -> Result<AlignmentResult> {
        dtw_align_slices(x, y, DtwParams::new(w, gamma).unwrap())
    }

    #[test]
    fn pointwise_cost_examples() {
        assert_eq!(pointwise_cost(1.0, 3.0, 2.0), 4.0);
        assert_eq!(pointwise_cost(0.7, 0.7, 0.3), 0.0);
        assert_eq!(pointwise_cost(0.5, -0.5, 1.0), 1.0);
        assert!(try_pointwise_cost(f64::NAN, 1.0, 1.0).is_err());
        assert!(try_pointwise_cost(1.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn identical_inputs_align_diagonally() {
        let r = align(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], 3, 1.0).unwrap();
        assert_eq!(r.distance, 0.0);
        assert_eq!(r.path.pairs(), &[(1, 1), (2, 2), (3, 3)]);
    }

    #[test]
    fn tie_break_prefers_diagonal_first() {
        let r = align(&[0.0, 1.0, 2.0], &[0.0, 2.0], 2, 1.0).unwrap();
        assert_eq!(r.distance, 1.0);
        assert_eq!(r.path.pairs(), &[(1, 1), (2, 2), (3, 2)]);
    }

    #[test]
    fn constant_mismatch() {
        let r = align(&[0.0, 0.0], &[1.0, 1.0], 2, 1.0).unwrap();
        assert_eq!(r.distance, 2.0);
        assert_eq!(r.path.pairs(), &[(1, 1), (2, 2)]);
    }

    #[test]
    fn band_too_narrow() {
        let err = align(&[0.0; 5], &[0.0], 1, 1.0).unwrap_err();
        assert_eq!(err, WqaError::BandTooNarrow { radius: 1, gap: 4 });
    }

    #[test]
    fn empty_input() {
        assert_eq!(align(&[], &[1.0], 3, 1.0).unwrap_err(), WqaError::EmptyInput);
        assert_eq!(TimeSeries::new(vec![], 1.0).unwrap_err(), WqaError::EmptyInput);
    }

    #[test]
    fn zero_radius_forces_diagonal() {
        let r = align(&[0.0, 5.0, 1.0], &[1.0, 0.0, 5.0], 0, 1.0).unwrap();
        assert_eq!(r.path.pairs(), &[(1, 1), (2, 2), (3, 3)]);
        assert_eq!(r.distance, 10.0);
    }

    #[test]
    fn single_samples() {
        let r = align(&[2.0], &[5.0], 0, 2.0).unwrap();
        assert_eq!(r.distance, 9.0);
        assert_eq!(r.path.len(), 1);
    }

    #[test]
    fn warp_path_rejects_bad_steps() {
        assert!(WarpPath::new(vec![(1, 1), (3, 2)]).is_err());
        assert!(WarpPath::new(vec![(2, 1)]).is_err());
        assert!(WarpPath::new(vec![(1, 1), (1, 1)]).is_err());
        let p = WarpPath::new(vec![(1, 1), (2, 1), (3, 2)]).unwrap();
        assert!(p.validate_for(3, 2, 1).is_ok());
        assert!(p.validate_for(3, 3, 1).is_err());
        assert!(p.validate_for(3, 2, 0).is_err());
    }

    #[test]
    fn path_serializes_as_pairs() {
        let p = WarpPath::new(vec![(1, 1), (2, 2)]).unwrap();
        assert_eq!(serde_json::to_string(&p).unwrap(), "[[1,1],[2,2]]");
        assert!(serde_json::from_str::<WarpPath>("[[1,1],[3,3]]").is_err());
    }
}
