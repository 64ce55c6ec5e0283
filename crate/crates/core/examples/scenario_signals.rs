//! Generate one pair from each simulation scenario and report its descriptors.
//!
//! cargo run --example scenario_signals [out_dir]
//!
//! With `out_dir`, each pair is also written as `<scenario>_x.csv` and
//! `<scenario>_y.csv`.

use warpquant::metrics::report_from_slices;
use warpquant::signal::{make_scenario, ScenarioKind};
use warpquant::sim::{defaults, SweepSpec};

fn main() -> warpquant::Result<()> {
    let out_dir = std::env::args().nth(1).map(std::path::PathBuf::from);
    println!("scenario  driver      WDR     CWD     WDV   1-DRL     DCR      DTW");
    for kind in ScenarioKind::ALL {
        let sweep = SweepSpec::new(kind);
        let grid = defaults::grid(kind, defaults::GRID_POINTS, sweep.n);
        let driver = grid[grid.len() / 2];
        let spec = sweep.scenario_spec(driver, 0);
        let pair = make_scenario(&spec)?;
        let r = report_from_slices(pair.x.as_slice(), pair.y.as_slice(), sweep.dtw, sweep.dwell, sweep.mode)?;
        println!(
            "{kind:<8} {driver:>7.3} {:>8.4} {:>7.4} {:>7.4} {:>7.4} {:>7.4} {:>8.1}",
            r.wdr, r.cwd, r.wdv, r.one_minus_drl, r.dcr, r.dtw_distance
        );
        if let Some(dir) = &out_dir {
            warpquant::io::write_text(&dir.join(format!("{kind}_x.csv")), &warpquant::io::series_to_csv(&pair.x))?;
            warpquant::io::write_text(&dir.join(format!("{kind}_y.csv")), &warpquant::io::series_to_csv(&pair.y))?;
        }
    }
    println!("spec for S3 at its mid-grid driver:");
    let sweep = SweepSpec::new(ScenarioKind::S3);
    let mid = sweep.grid[sweep.grid.len() / 2];
    println!("{}", serde_json::to_string_pretty(&sweep.scenario_spec(mid, 0)).unwrap());
    Ok(())
}
