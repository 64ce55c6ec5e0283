//! Align a series with a delayed copy of itself and print the warping path.
//!
//! cargo run --example align_pair

use warpquant::signal::{gen_bandlimited_gaussian, warp_resample, BandLimits, WarpField};
use warpquant::{dtw_align, warp_deviation, DtwParams};

fn main() -> warpquant::Result<()> {
    let n = 200;
    let x = gen_bandlimited_gaussian(n, 1.0, BandLimits::default(), 7)?;
    // y(t) = x(t - 6): the path should sit six samples off the diagonal
    let y = warp_resample(&x, &WarpField::constant(n, 6.0))?;

    for radius in [2, 10, 40] {
        let r = dtw_align(&x, &y, DtwParams::new(radius, 1.0)?)?;
        let wd = warp_deviation(&r.path);
        let typical = wd[n / 4..3 * n / 4].iter().sum::<i64>() as f64 / (n / 2) as f64;
        println!(
            "radius {radius:>2}: distance {:>8.3}, path length {}, mean WD over the middle half {typical:+.2}",
            r.distance,
            r.path.len()
        );
    }

    let r = dtw_align(&x, &y, DtwParams::new(10, 1.0)?)?;
    let head: Vec<String> = r.path.pairs()[..12].iter().map(|(i, j)| format!("({i},{j})")).collect();
    println!("first pairs: {}", head.join(" "));

    // a band narrower than the length gap has no admissible path
    let short = &x.samples[..150];
    match warpquant::dtw::dtw_align_slices(short, &y.samples, DtwParams::new(20, 1.0)?) {
        Err(e) => println!("radius 20 for lengths 150 and 200: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
