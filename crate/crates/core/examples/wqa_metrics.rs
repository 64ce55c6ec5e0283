//! The five path descriptors on hand-built paths and on a real alignment.
//!
//! cargo run --example wqa_metrics

use warpquant::metrics::{compute_cwd, compute_dcr, compute_drl, compute_wdr, compute_wdv};
use warpquant::signal::{gen_bandlimited_gaussian, warp_resample, BandLimits, WarpField};
use warpquant::{compute_report, CentralTendency, DtwParams, Dwell, TimeSeries, WarpPath};

fn describe(label: &str, pairs: Vec<(usize, usize)>, w: usize, k: usize) -> warpquant::Result<()> {
    let (n, m) = *pairs.last().unwrap();
    let path = WarpPath::new(pairs)?;
    let dwell = Dwell::new(k)?;
    let mode = CentralTendency::Median;
    println!(
        "{label:<24} WDR {:.3}  CWD {:.3}  WDV {:.3}  DRL {:.3}  DCR {:.3}",
        compute_wdr(&path, n, m)?,
        compute_cwd(&path, w, mode),
        compute_wdv(&path, w, mode),
        compute_drl(&path, dwell, mode)?,
        compute_dcr(&path, dwell)?,
    );
    Ok(())
}

fn main() -> warpquant::Result<()> {
    describe("diagonal", (1..=8).map(|i| (i, i)).collect(), 3, 2)?;

    // two samples behind, then back on the diagonal
    describe(
        "lag then catch up",
        vec![(1, 1), (1, 2), (1, 3), (2, 4), (3, 5), (4, 6), (5, 7), (6, 7), (7, 7), (8, 8)],
        3,
        2,
    )?;

    // the path swings across the diagonal and stays two steps on each side
    describe(
        "crossing back and forth",
        vec![
            (1, 1), (2, 1), (3, 2), (4, 3), (4, 4), (4, 5), (5, 6), (6, 7), (7, 7), (8, 7), (9, 8), (10, 9),
            (10, 10),
        ],
        3,
        2,
    )?;

    let n = 400;
    let x = gen_bandlimited_gaussian(n, 1.0, BandLimits::default(), 3)?;
    let u: Vec<f64> = (0..n).map(|t| 8.0 * (2.0 * std::f64::consts::PI * t as f64 / 200.0).sin()).collect();
    let y: TimeSeries = warp_resample(&x, &WarpField::new(u))?;
    let params = DtwParams::new(80, 1.0)?;
    for mode in [CentralTendency::Median, CentralTendency::Mean] {
        let r = compute_report(&x, &y, params, Dwell::new(3)?, mode)?;
        println!("sinusoidal warp ({mode:?}): {}", serde_json::to_string(&r).unwrap());
    }
    Ok(())
}
