//! Pairwise descriptor matrices for a small synthetic cohort.
//!
//! cargo run --release --example connectivity_matrices [out_dir]
//!
//! Every subject has four channels sampled every 2 s. Channel `b` repeats `a`
//! a few samples later over most of the run; `c` and `d` are unrelated noise.
//! The group display z-scores the cohort mean and flips its sign, so closer
//! coupling reads as larger. The a-b pair has the smallest DTW distance and
//! the largest CWD (its path sits off the diagonal), so it is the top DTW
//! entry and the bottom CWD entry.

use warpquant::connectivity::{
    default_band, group_display_matrix, pair_matrices, preprocess_channels, ChannelSet, PairSettings,
};
use warpquant::signal::{gen_bandlimited_gaussian, make_scenario, ScenarioParams, ScenarioSpec};
use warpquant::sim::Measure;

const T: usize = 300;

fn subject(seed: u64) -> warpquant::Result<ChannelSet> {
    let band = default_band();
    let coupled = make_scenario(&ScenarioSpec {
        params: ScenarioParams::S2 { block_len: 250, s: 26, mu: 20.0 },
        n: T,
        sample_period: 2.0,
        band,
        seed: seed * 10,
    })?;
    let c = gen_bandlimited_gaussian(T, 2.0, band, seed * 10 + 1)?;
    let d = gen_bandlimited_gaussian(T, 2.0, band, seed * 10 + 2)?;
    ChannelSet::new(
        vec![coupled.x.samples, coupled.y.samples, c.samples, d.samples],
        2.0,
        ["a", "b", "c", "d"].map(String::from).to_vec(),
    )
}

fn print_matrix(title: &str, m: &warpquant::connectivity::SquareMatrix, names: &[String]) {
    println!("{title}");
    println!("      {}", names.iter().map(|n| format!("{n:>8}")).collect::<String>());
    for (i, name) in names.iter().enumerate() {
        let row: String = (0..m.size()).map(|j| format!("{:>8.3}", m.get(i, j))).collect();
        println!("{name:>5} {row}");
    }
}

fn main() -> warpquant::Result<()> {
    let out_dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    let settings = PairSettings::default();
    let mut cohort = Vec::new();
    for s in 0..8 {
        let cleaned = preprocess_channels(&subject(s)?, default_band())?;
        cohort.push(pair_matrices(&cleaned, &format!("sub{s:02}"), settings)?);
    }
    let names = cohort[0].channel_names.clone();
    print_matrix("sub00 CWD", cohort[0].get(Measure::Cwd), &names);

    for m in [Measure::Cwd, Measure::DtwDistance] {
        let display = group_display_matrix(&cohort, m)?;
        print_matrix(&format!("group {} (z-scored, sign flipped)", m.name()), &display, &names);
        if let Some(dir) = &out_dir {
            let title = format!("group {}", m.name());
            warpquant::io::write_text(&dir.join(format!("group_{}.csv", m.slug())), &warpquant::io::matrix_to_csv(&display, &names))?;
            warpquant::io::write_text(&dir.join(format!("group_{}.svg", m.slug())), &warpquant::svg::heatmap(&display, &names, &title))?;
        }
    }
    Ok(())
}
