//! Sweep every scenario's driver and check which descriptor tracks it.
//!
//! cargo run --release --example sweep_selectivity [n_sims] [out_dir]
//!
//! Each row lists the mean RMSE of every measure against the z-scored driver;
//! the starred column is the measure the scenario is designed for. With
//! `out_dir`, a CSV and an SVG chart are written per scenario.

use warpquant::signal::ScenarioKind;
use warpquant::sim::{run_sweep, Measure, SweepSpec};

fn main() -> warpquant::Result<()> {
    let mut args = std::env::args().skip(1);
    let n_sims: usize = args.next().map(|s| s.parse().expect("n_sims must be an integer")).unwrap_or(20);
    let out_dir = args.next().map(std::path::PathBuf::from);

    print!("scenario");
    for m in Measure::ALL {
        print!(" {:>8}", m.name());
    }
    println!("    ratio");
    for kind in ScenarioKind::ALL {
        let mut spec = SweepSpec::new(kind);
        spec.n_sims = n_sims;
        let result = run_sweep(&spec)?;
        print!("{kind:<8}");
        for m in Measure::ALL {
            let star = if m == result.target { "*" } else { " " };
            print!(" {:>7.3}{star}", result.summary(m).rmse_mean);
        }
        let ratio = result.selectivity_ratio();
        if ratio < 1e6 {
            println!(" {ratio:>8.2}");
        } else {
            println!(" {:>8}", ">1e6");
        }
        if let Some(dir) = &out_dir {
            warpquant::io::write_text(&dir.join(format!("sweep_{kind}.csv")), &result.to_csv())?;
            warpquant::io::write_text(&dir.join(format!("sweep_{kind}.svg")), &warpquant::svg::sweep_chart(&result))?;
        }
    }
    Ok(())
}
