//! Synthetic signals with known warps.
//!
//! A base signal is band-limited Gaussian noise. Warped counterparts are
//! produced by resampling the base at displaced times `t' = t + u(t)` through
//! a monotone piecewise-cubic interpolant, or by splicing shared blocks, or by
//! a pointwise amplitude distortion. Displacements are in samples.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::dtw::TimeSeries;
use crate::error::{Result, WqaError};
use crate::stats::zscore;

/// Salt mixed into the seed of independent filler noise.
pub const NOISE_SEED_SALT: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandLimits {
    pub f_lo: f64,
    pub f_hi: f64,
}

impl BandLimits {
    pub fn new(f_lo: f64, f_hi: f64) -> Result<Self> {
        let b = Self { f_lo, f_hi };
        if !(f_lo.is_finite() && f_hi.is_finite() && f_lo >= 0.0 && f_lo < f_hi) {
            return Err(WqaError::InvalidInput(format!(
                "band needs 0 <= f_lo < f_hi, got ({f_lo}, {f_hi})"
            )));
        }
        Ok(b)
    }

    pub fn validate_for(&self, sample_period: f64) -> Result<()> {
        Self::new(self.f_lo, self.f_hi)?;
        let nyquist = 0.5 / sample_period;
        if self.f_hi >= nyquist {
            return Err(WqaError::InvalidInput(format!(
                "band upper edge {} Hz is not below Nyquist {} Hz",
                self.f_hi, nyquist
            )));
        }
        Ok(())
    }

    fn contains(&self, f: f64) -> bool {
        f >= self.f_lo && f <= self.f_hi
    }
}

impl Default for BandLimits {
    fn default() -> Self {
        Self {
            f_lo: 0.01,
            f_hi: 0.1,
        }
    }
}

/// Frequency (Hz) of DFT bin `k` for a length-`n` transform.
fn bin_frequency(k: usize, n: usize, sample_period: f64) -> f64 {
    k.min(n - k) as f64 / (n as f64 * sample_period)
}

/// Zeroes every DFT bin outside the band. Output is real.
pub fn bandpass(samples: &[f64], sample_period: f64, band: BandLimits) -> Vec<f64> {
    let n = samples.len();
    if n == 0 {
        return Vec::new();
    }
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    for (k, c) in buf.iter_mut().enumerate() {
        if !band.contains(bin_frequency(k, n, sample_period)) {
            *c = Complex::new(0.0, 0.0);
        }
    }
    planner.plan_fft_inverse(n).process(&mut buf);
    buf.iter().map(|c| c.re / n as f64).collect()
}

/// Share of spectral power, over all bins including DC, that lies outside the band.
pub fn out_of_band_power_fraction(samples: &[f64], sample_period: f64, band: BandLimits) -> f64 {
    let n = samples.len();
    let mut planner = FftPlanner::<f64>::new();
    let mut buf: Vec<Complex<f64>> = samples.iter().map(|&v| Complex::new(v, 0.0)).collect();
    planner.plan_fft_forward(n).process(&mut buf);
    let (mut inside, mut outside) = (0.0, 0.0);
    for (k, c) in buf.iter().enumerate() {
        if band.contains(bin_frequency(k, n, sample_period)) {
            inside += c.norm_sqr();
        } else {
            outside += c.norm_sqr();
        }
    }
    outside / (inside + outside)
}

/// White Gaussian noise through a brick-wall band-pass, then z-scored.
pub fn gen_bandlimited_gaussian(
    n: usize,
    sample_period: f64,
    band: BandLimits,
    seed: u64,
) -> Result<TimeSeries> {
    if n < 16 {
        return Err(WqaError::InvalidInput(format!("need n >= 16 samples, got {n}")));
    }
    if !(sample_period.is_finite() && sample_period > 0.0) {
        return Err(WqaError::InvalidInput(format!(
            "sample period must be positive, got {sample_period}"
        )));
    }
    band.validate_for(sample_period)?;
    if !(0..n).any(|k| band.contains(bin_frequency(k, n, sample_period))) {
        return Err(WqaError::InvalidInput(format!(
            "band ({}, {}) Hz contains no frequency bin for n = {n}",
            band.f_lo, band.f_hi
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let white: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let filtered = bandpass(&white, sample_period, band);
    TimeSeries::new(zscore(&filtered)?, sample_period)
}

/// Monotone piecewise-cubic Hermite interpolant on unit-spaced knots
/// (Fritsch–Carlson slopes with the usual three-point end conditions).
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(values: &[f64]) -> Result<Self> {
        let n = values.len();
        if n == 0 {
            return Err(WqaError::EmptyInput);
        }
        if n == 1 {
            return Ok(Self {
                values: values.to_vec(),
                slopes: vec![0.0],
            });
        }
        let delta: Vec<f64> = values.windows(2).map(|w| w[1] - w[0]).collect();
        let mut slopes = vec![0.0; n];
        if n == 2 {
            slopes[0] = delta[0];
            slopes[1] = delta[0];
        } else {
            for i in 1..n - 1 {
                let (a, b) = (delta[i - 1], delta[i]);
                // equal spacing: weighted harmonic mean reduces to plain harmonic mean
                slopes[i] = if a * b <= 0.0 { 0.0 } else { 2.0 * a * b / (a + b) };
            }
            slopes[0] = end_slope(delta[0], delta[1]);
            slopes[n - 1] = end_slope(delta[n - 2], delta[n - 3]);
        }
        Ok(Self {
            values: values.to_vec(),
            slopes,
        })
    }

    /// Evaluates at fractional sample index `q`, clamped to the knot range.
    pub fn eval(&self, q: f64) -> f64 {
        let n = self.values.len();
        if n == 1 || q <= 0.0 {
            return self.values[0];
        }
        let last = (n - 1) as f64;
        if q >= last {
            return self.values[n - 1];
        }
        let i = q.floor() as usize;
        let t = q - i as f64;
        if t == 0.0 {
            return self.values[i];
        }
        let (y0, y1) = (self.values[i], self.values[i + 1]);
        let (d0, d1) = (self.slopes[i], self.slopes[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * y0 + h10 * d0 + h01 * y1 + h11 * d1
    }
}

fn end_slope(d0: f64, d1: f64) -> f64 {
    let s = (3.0 * d0 - d1) / 2.0;
    if s.signum() != d0.signum() || d0 == 0.0 {
        0.0
    } else if d0.signum() != d1.signum() && s.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        s
    }
}

/// Per-sample displacement `u` in samples; the warped clock is `t + u(t)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WarpField {
    pub displacement: Vec<f64>,
}

impl WarpField {
    pub fn new(displacement: Vec<f64>) -> Self {
        Self { displacement }
    }

    pub fn constant(n: usize, value: f64) -> Self {
        Self::new(vec![value; n])
    }

    /// Warped sample positions `tau + u(tau)`.
    pub fn warped_positions(&self) -> Vec<f64> {
        self.displacement
            .iter()
            .enumerate()
            .map(|(i, u)| i as f64 + u)
            .collect()
    }

    pub fn is_monotone(&self) -> bool {
        self.warped_positions().windows(2).all(|w| w[1] > w[0])
    }
}

/// `y(tau) = x_hat(tau + u(tau))` with `x_hat` the monotone cubic interpolant.
pub fn warp_resample(x: &TimeSeries, u: &WarpField) -> Result<TimeSeries> {
    if u.displacement.len() != x.len() {
        return Err(WqaError::LengthMismatch {
            expected: x.len(),
            actual: u.displacement.len(),
        });
    }
    if u.displacement.iter().any(|v| !v.is_finite()) {
        return Err(WqaError::InvalidInput("warp displacement is not finite".into()));
    }
    let interp = MonotoneCubic::new(x.as_slice())?;
    let samples = u.warped_positions().into_iter().map(|q| interp.eval(q)).collect();
    TimeSeries::new(samples, x.sample_period)
}

/// Unit-amplitude triangle wave of period `2 pi`, starting at 0 and rising.
pub fn triangle(theta: f64) -> f64 {
    let p = (theta / (2.0 * PI)).rem_euclid(1.0);
    if p < 0.25 {
        4.0 * p
    } else if p < 0.75 {
        2.0 - 4.0 * p
    } else {
        4.0 * p - 4.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScenarioKind {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
}

impl ScenarioKind {
    pub const ALL: [ScenarioKind; 6] = [
        ScenarioKind::S1,
        ScenarioKind::S2,
        ScenarioKind::S3,
        ScenarioKind::S4,
        ScenarioKind::S5,
        ScenarioKind::S6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::S1 => "S1",
            ScenarioKind::S2 => "S2",
            ScenarioKind::S3 => "S3",
            ScenarioKind::S4 => "S4",
            ScenarioKind::S5 => "S5",
            ScenarioKind::S6 => "S6",
        }
    }
}

impl std::fmt::Display for ScenarioKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.pad(self.name())
    }
}

impl std::str::FromStr for ScenarioKind {
    type Err = WqaError;
    fn from_str(s: &str) -> Result<Self> {
        ScenarioKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WqaError::InvalidInput(format!("unknown scenario '{s}' (S1..S6)")))
    }
}

/// Kind-specific scenario parameters. Lengths and displacements are in
/// samples, frequencies in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "parameters")]
pub enum ScenarioParams {
    /// Lifted cosine `u = (A/2)(1 - cos(2 pi f t))`.
    S1 {
        #[serde(rename = "A")]
        amplitude: f64,
        f: f64,
    },
    /// Block of `y` copied from `x` shifted by `mu`, unrelated noise elsewhere.
    S2 {
        #[serde(rename = "P")]
        block_len: usize,
        s: usize,
        mu: f64,
    },
    /// Oscillation around a fixed offset, `u = mu + A cos(2 pi (c/A) t)`.
    S3 {
        mu: f64,
        #[serde(rename = "A")]
        amplitude: f64,
        c: f64,
    },
    /// Identical block `y[s..s+P] = x[s..s+P]`, unrelated noise elsewhere.
    S4 {
        #[serde(rename = "P")]
        block_len: usize,
        s: usize,
    },
    /// Triangle wave `u = A tri(2 pi f t)`.
    S5 {
        #[serde(rename = "A")]
        amplitude: f64,
        f: f64,
    },
    /// Pointwise distortion `y = sign(x) |x|^(1 + alpha)` with no warp.
    S6 { alpha: f64 },
}

impl ScenarioParams {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            ScenarioParams::S1 { .. } => ScenarioKind::S1,
            ScenarioParams::S2 { .. } => ScenarioKind::S2,
            ScenarioParams::S3 { .. } => ScenarioKind::S3,
            ScenarioParams::S4 { .. } => ScenarioKind::S4,
            ScenarioParams::S5 { .. } => ScenarioKind::S5,
            ScenarioParams::S6 { .. } => ScenarioKind::S6,
        }
    }

    /// The swept ground-truth value.
    pub fn driver(&self) -> f64 {
        match *self {
            ScenarioParams::S1 { f, .. } | ScenarioParams::S5 { f, .. } => f,
            ScenarioParams::S2 { mu, .. } => mu,
            ScenarioParams::S3 { amplitude, .. } => amplitude,
            ScenarioParams::S4 { block_len, .. } => block_len as f64,
            ScenarioParams::S6 { alpha } => alpha,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    #[serde(flatten)]
    pub params: ScenarioParams,
    pub n: usize,
    #[serde(rename = "Ts")]
    pub sample_period: f64,
    pub band: BandLimits,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioInstance {
    pub x: TimeSeries,
    pub y: TimeSeries,
    pub driver: f64,
}

fn finite_nonneg(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v >= 0.0 {
        Ok(())
    } else {
        Err(WqaError::InvalidInput(format!("{name} must be finite and >= 0, got {v}")))
    }
}

fn check_block(n: usize, block_len: usize, s: usize) -> Result<()> {
    if block_len == 0 || s == 0 || s + block_len > n {
        return Err(WqaError::InvalidInput(format!(
            "block start {s} with length {block_len} does not fit 1 <= s, s + P <= n = {n}"
        )));
    }
    Ok(())
}

impl ScenarioSpec {
    /// Checks every parameter constraint without generating any signal.
    pub fn validate(&self) -> Result<()> {
        if self.n < 16 {
            return Err(WqaError::InvalidInput(format!("need n >= 16, got {}", self.n)));
        }
        if !(self.sample_period.is_finite() && self.sample_period > 0.0) {
            return Err(WqaError::InvalidInput("sample period must be positive".into()));
        }
        self.band.validate_for(self.sample_period)?;
        let ts = self.sample_period;
        match self.params {
            ScenarioParams::S1 { amplitude, f } => {
                finite_nonneg("A", amplitude)?;
                finite_nonneg("f", f)?;
                let slope = amplitude * PI * f * ts;
                if slope >= 1.0 {
                    return Err(WqaError::ConstraintViolation(format!(
                        "S1 requires A*pi*f < 1 for a monotone warp, got {slope:.4}"
                    )));
                }
            }
            ScenarioParams::S2 { block_len, s, mu } => {
                check_block(self.n, block_len, s)?;
                finite_nonneg("mu", mu)?;
                if mu > (s - 1) as f64 {
                    return Err(WqaError::InvalidInput(format!(
                        "S2 offset mu = {mu} reaches before the first sample (s = {s})"
                    )));
                }
            }
            ScenarioParams::S3 { mu, amplitude, c } => {
                if !(mu.is_finite() && amplitude.is_finite() && amplitude > 0.0) {
                    return Err(WqaError::InvalidInput(format!(
                        "S3 needs finite mu and A > 0, got mu = {mu}, A = {amplitude}"
                    )));
                }
                finite_nonneg("c", c)?;
                let slope = 2.0 * PI * c * ts;
                if slope >= 1.0 {
                    return Err(WqaError::ConstraintViolation(format!(
                        "S3 requires 2*pi*c < 1 for a monotone warp, got {slope:.4}"
                    )));
                }
            }
            ScenarioParams::S4 { block_len, s } => check_block(self.n, block_len, s)?,
            ScenarioParams::S5 { amplitude, f } => {
                finite_nonneg("A", amplitude)?;
                finite_nonneg("f", f)?;
                let slope = 4.0 * amplitude * f * ts;
                if slope >= 1.0 {
                    return Err(WqaError::ConstraintViolation(format!(
                        "S5 requires 4*A*f < 1 for a monotone warp, got {slope:.4}"
                    )));
                }
            }
            ScenarioParams::S6 { alpha } => finite_nonneg("alpha", alpha)?,
        }
        Ok(())
    }

    /// The displacement field for the resampled kinds (S1, S3, S5).
    pub fn warp_field(&self) -> Option<WarpField> {
        let ts = self.sample_period;
        let t = |i: usize| i as f64 * ts;
        let u: Vec<f64> = match self.params {
            ScenarioParams::S1 { amplitude, f } => (0..self.n)
                .map(|i| 0.5 * amplitude * (1.0 - (2.0 * PI * f * t(i)).cos()))
                .collect(),
            ScenarioParams::S3 { mu, amplitude, c } => (0..self.n)
                .map(|i| mu + amplitude * (2.0 * PI * (c / amplitude) * t(i)).cos())
                .collect(),
            ScenarioParams::S5 { amplitude, f } => (0..self.n)
                .map(|i| amplitude * triangle(2.0 * PI * f * t(i)))
                .collect(),
            _ => return None,
        };
        Some(WarpField::new(u))
    }
}

fn filler_noise(spec: &ScenarioSpec) -> Result<TimeSeries> {
    gen_bandlimited_gaussian(spec.n, spec.sample_period, spec.band, spec.seed ^ NOISE_SEED_SALT)
}

/// Builds the base signal and its scenario-specific counterpart.
pub fn make_scenario(spec: &ScenarioSpec) -> Result<ScenarioInstance> {
    spec.validate()?;
    let x = gen_bandlimited_gaussian(spec.n, spec.sample_period, spec.band, spec.seed)?;
    let y = match spec.params {
        ScenarioParams::S1 { .. } | ScenarioParams::S3 { .. } | ScenarioParams::S5 { .. } => {
            let u = spec.warp_field().expect("resampled kinds carry a warp");
            warp_resample(&x, &u)?
        }
        ScenarioParams::S2 { block_len, s, mu } => {
            let shifted = warp_resample(&x, &WarpField::constant(spec.n, -mu))?;
            let mut y = filler_noise(spec)?;
            let block = s - 1..s - 1 + block_len;
            y.samples[block.clone()].copy_from_slice(&shifted.samples[block]);
            y
        }
        ScenarioParams::S4 { block_len, s } => {
            let mut y = filler_noise(spec)?;
            let block = s - 1..s - 1 + block_len;
            y.samples[block.clone()].copy_from_slice(&x.samples[block]);
            y
        }
        ScenarioParams::S6 { alpha } => {
            let samples = x
                .samples
                .iter()
                .map(|&v| v.signum() * v.abs().powf(1.0 + alpha))
                .collect();
            TimeSeries::new(samples, spec.sample_period)?
        }
    };
    Ok(ScenarioInstance {
        x,
        y,
        driver: spec.params.driver(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(params: ScenarioParams) -> ScenarioSpec {
        ScenarioSpec {
            params,
            n: 400,
            sample_period: 1.0,
            band: BandLimits::default(),
            seed: 11,
        }
    }

    #[test]
    fn generator_is_deterministic_and_standardized() {
        let a = gen_bandlimited_gaussian(256, 1.0, BandLimits::default(), 5).unwrap();
        let b = gen_bandlimited_gaussian(256, 1.0, BandLimits::default(), 5).unwrap();
        assert_eq!(a, b);
        let m = crate::stats::mean(&a.samples);
        let sd = crate::stats::sample_std(&a.samples);
        assert!(m.abs() < 1e-9 && (sd - 1.0).abs() < 1e-9);
        let c = gen_bandlimited_gaussian(256, 1.0, BandLimits::default(), 6).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn generator_rejects_bad_band() {
        let nyq = BandLimits::new(0.1, 0.5).unwrap();
        assert!(gen_bandlimited_gaussian(64, 1.0, nyq, 0).is_err());
        assert!(gen_bandlimited_gaussian(8, 1.0, BandLimits::default(), 0).is_err());
        assert!(BandLimits::new(0.2, 0.1).is_err());
        // too narrow to hold a bin at n = 16
        let narrow = BandLimits::new(0.01, 0.02).unwrap();
        assert!(gen_bandlimited_gaussian(16, 1.0, narrow, 0).is_err());
    }

    #[test]
    fn zero_warp_is_identity() {
        let x = gen_bandlimited_gaussian(64, 1.0, BandLimits::default(), 1).unwrap();
        let y = warp_resample(&x, &WarpField::constant(64, 0.0)).unwrap();
        assert_eq!(x, y);
    }

    #[test]
    fn integer_shift_hits_knots_and_clamps() {
        let x = gen_bandlimited_gaussian(64, 1.0, BandLimits::default(), 2).unwrap();
        let y = warp_resample(&x, &WarpField::constant(64, 3.0)).unwrap();
        for i in 0..61 {
            assert_eq!(y.samples[i], x.samples[i + 3]);
        }
        for i in 61..64 {
            assert_eq!(y.samples[i], x.samples[63]);
        }
        let far = warp_resample(&x, &WarpField::constant(64, 100.0)).unwrap();
        assert!(far.samples.iter().all(|&v| v == x.samples[63]));
    }

    #[test]
    fn resample_length_mismatch() {
        let x = TimeSeries::new(vec![0.0; 5], 1.0).unwrap();
        assert!(matches!(
            warp_resample(&x, &WarpField::constant(4, 0.0)),
            Err(WqaError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn interpolant_stays_within_knot_brackets() {
        let x = gen_bandlimited_gaussian(128, 1.0, BandLimits::new(0.05, 0.4).unwrap(), 3).unwrap();
        let interp = MonotoneCubic::new(&x.samples).unwrap();
        for i in 0..127 {
            let (a, b) = (x.samples[i], x.samples[i + 1]);
            let (lo, hi) = (a.min(b), a.max(b));
            for s in 1..20 {
                let v = interp.eval(i as f64 + s as f64 / 20.0);
                assert!(v >= lo - 1e-12 && v <= hi + 1e-12, "overshoot in interval {i}");
            }
        }
    }

    #[test]
    fn triangle_wave_shape() {
        assert_eq!(triangle(0.0), 0.0);
        assert!((triangle(PI / 2.0) - 1.0).abs() < 1e-12);
        assert!(triangle(PI).abs() < 1e-12);
        assert!((triangle(1.5 * PI) + 1.0).abs() < 1e-12);
        assert!(triangle(0.1) > 0.0);
    }

    #[test]
    fn degenerate_scenarios_reduce_to_identity() {
        let s1 = make_scenario(&spec(ScenarioParams::S1 { amplitude: 20.0, f: 0.0 })).unwrap();
        assert_eq!(s1.x, s1.y);
        let s6 = make_scenario(&spec(ScenarioParams::S6 { alpha: 0.0 })).unwrap();
        assert_eq!(s6.x, s6.y);
        let s2 = make_scenario(&spec(ScenarioParams::S2 { block_len: 100, s: 150, mu: 0.0 })).unwrap();
        assert_eq!(s2.x.samples[149..249], s2.y.samples[149..249]);
        assert_eq!(s2.driver, 0.0);
    }

    #[test]
    fn s1_constraint_violation() {
        let mut sp = spec(ScenarioParams::S1 { amplitude: 20.0, f: 0.02 });
        sp.n = 1000;
        assert!(matches!(make_scenario(&sp), Err(WqaError::ConstraintViolation(_))));
        let s3 = spec(ScenarioParams::S3 { mu: 10.0, amplitude: 5.0, c: 0.2 });
        assert!(matches!(make_scenario(&s3), Err(WqaError::ConstraintViolation(_))));
        let s5 = spec(ScenarioParams::S5 { amplitude: 30.0, f: 0.01 });
        assert!(matches!(make_scenario(&s5), Err(WqaError::ConstraintViolation(_))));
        let s4 = spec(ScenarioParams::S4 { block_len: 300, s: 200 });
        assert!(matches!(make_scenario(&s4), Err(WqaError::InvalidInput(_))));
    }

    #[test]
    fn s2_block_carries_shifted_content() {
        let inst = make_scenario(&spec(ScenarioParams::S2 { block_len: 100, s: 150, mu: 20.0 })).unwrap();
        for t in 149..249 {
            assert_eq!(inst.y.samples[t], inst.x.samples[t - 20]);
        }
        assert_eq!(inst.driver, 20.0);
    }

    #[test]
    fn s4_block_is_bitwise_shared() {
        let inst = make_scenario(&spec(ScenarioParams::S4 { block_len: 120, s: 50 })).unwrap();
        assert_eq!(inst.x.samples[49..169], inst.y.samples[49..169]);
        assert_ne!(inst.x.samples[0], inst.y.samples[0]);
        assert_eq!(inst.driver, 120.0);
    }

    #[test]
    fn resampled_warps_are_monotone() {
        for p in [
            ScenarioParams::S1 { amplitude: 20.0, f: 0.012 },
            ScenarioParams::S3 { mu: 40.0, amplitude: 5.0, c: 0.1 },
            ScenarioParams::S5 { amplitude: 15.0, f: 0.01 },
        ] {
            assert!(spec(p).warp_field().unwrap().is_monotone(), "{p:?}");
        }
    }

    #[test]
    fn spec_json_shape() {
        let sp = spec(ScenarioParams::S2 { block_len: 300, s: 350, mu: 12.5 });
        let v: serde_json::Value = serde_json::to_value(&sp).unwrap();
        assert_eq!(v["kind"], "S2");
        assert_eq!(v["parameters"]["P"], 300);
        assert_eq!(v["parameters"]["mu"], 12.5);
        assert_eq!(v["Ts"], 1.0);
        assert_eq!(v["band"]["f_lo"], 0.01);
        let back: ScenarioSpec = serde_json::from_value(v).unwrap();
        assert_eq!(back, sp);
    }
}
