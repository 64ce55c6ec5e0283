mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use warpquant::dtw::dtw_align_slices;
use warpquant::metrics::{dwell_crossings, report_for_path};
use warpquant::{
    compute_dcr, compute_drl, compute_wdr, warp_deviation, CentralTendency, DtwParams, Dwell, WarpPath,
};

fn random_case() -> impl Strategy<Value = (usize, usize, usize, u64)> {
    (1usize..40, 1usize..40, 0usize..20, any::<u64>())
        .prop_filter("needs two pairs", |(n, m, _, _)| n + m >= 3)
        .prop_map(|(n, m, extra, seed)| (n, m, (n.abs_diff(m) + extra).min(n.max(m)), seed))
}

proptest! {
    #[test]
    fn matches_oracle((n, m, w, seed) in random_case(), k in 1usize..6, mean_mode in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pairs = common::random_path(&mut rng, n, m, w);
        let path = WarpPath::new(pairs.clone()).unwrap();
        let mode = if mean_mode { CentralTendency::Mean } else { CentralTendency::Median };
        let r = report_for_path(&path, 0.0, n, m, DtwParams::new(w, 1.0).unwrap(), Dwell::new(k).unwrap(), mode).unwrap();
        let o = common::oracle_metrics(&pairs, n, m, w, k, mean_mode);
        prop_assert_eq!((r.wdr, r.cwd, r.wdv, r.drl, r.dcr), (o.wdr, o.cwd, o.wdv, o.drl, o.dcr));
        prop_assert_eq!(r.one_minus_drl, 1.0 - r.drl);
        prop_assert!((0.0..1.0).contains(&r.wdr));
        for v in [r.cwd, r.wdv, r.drl, r.dcr] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
    }

    #[test]
    fn diagonal_path_is_neutral(len in 2usize..60, k in 1usize..6) {
        let path = WarpPath::new((1..=len).map(|i| (i, i)).collect()).unwrap();
        let r = report_for_path(&path, 0.0, len, len, DtwParams::new(3, 1.0).unwrap(), Dwell::new(k).unwrap(), CentralTendency::Median).unwrap();
        prop_assert_eq!((r.wdr, r.cwd, r.wdv, r.drl, r.dcr), (0.0, 0.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn zeros_inside_a_run_do_not_change_crossings(
        runs in prop::collection::vec(1usize..8, 1..8),
        k in 1usize..5,
        picks in prop::collection::vec(any::<prop::sample::Index>(), 1..6),
        zeros in 1usize..5,
    ) {
        let mut wd = Vec::new();
        let mut starts = Vec::new();
        for (r, &len) in runs.iter().enumerate() {
            starts.push(wd.len());
            let sign = if r % 2 == 0 { 1 } else { -1 };
            wd.extend(std::iter::repeat_n(sign * (1 + r as i64 % 3), len));
        }
        let dwell = Dwell::new(k).unwrap();
        let before = dwell_crossings(&wd, dwell);

        // zeroing samples that are not the first of their run keeps every run intact
        let mut zeroed = wd.clone();
        for p in &picks {
            let i = p.index(wd.len());
            if !starts.contains(&i) {
                zeroed[i] = 0;
            }
        }
        prop_assert_eq!(dwell_crossings(&zeroed, dwell), before);

        // inserting zeros after a sample of a run that already meets k
        for (r, &start) in starts.iter().enumerate() {
            if runs[r] >= k {
                let pos = start + 1;
                let mut padded = wd.clone();
                padded.splice(pos..pos, std::iter::repeat_n(0, zeros));
                prop_assert_eq!(dwell_crossings(&padded, dwell), before);
            }
        }
    }
}

/// Instances with a single optimal path: metrics of (y, x) on the transposed
/// path equal those of (x, y).
#[test]
fn swap_symmetry_on_unique_optima() {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut checked = 0;
    while checked < 300 {
        let n: usize = rng.random_range(2..=7);
        let m = rng.random_range(2..=7);
        let w = rng.random_range(n.abs_diff(m)..=n.max(m));
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let y: Vec<f64> = (0..m).map(|_| rng.random_range(-2.0..2.0)).collect();
        if common::brute_force_dtw(&x, &y, w, 1.0).1 != 1 {
            continue;
        }
        let p = DtwParams::new(w, 1.0).unwrap();
        let a = dtw_align_slices(&x, &y, p).unwrap();
        let b = dtw_align_slices(&y, &x, p).unwrap();
        assert_eq!(b.path, a.path.transposed());
        let wd_a = warp_deviation(&a.path);
        let wd_b = warp_deviation(&b.path);
        assert!(wd_a.iter().zip(&wd_b).all(|(p, q)| *p == -q));
        for k in 1..=3 {
            let dwell = Dwell::new(k).unwrap();
            let ra = report_for_path(&a.path, a.distance, n, m, p, dwell, CentralTendency::Median).unwrap();
            let rb = report_for_path(&b.path, b.distance, m, n, p, dwell, CentralTendency::Median).unwrap();
            assert_eq!((ra.wdr, ra.cwd, ra.wdv, ra.drl, ra.dcr), (rb.wdr, rb.cwd, rb.wdv, rb.drl, rb.dcr));
        }
        checked += 1;
    }
}

#[test]
fn worked_examples_against_oracle() {
    // the oracle-verified path of x=[0,1,2], y=[0,2]
    let pairs = vec![(1, 1), (2, 2), (3, 2)];
    let o = common::oracle_metrics(&pairs, 3, 2, 2, 1, false);
    assert_eq!((o.wdr, o.cwd, o.wdv, o.drl, o.dcr), (0.0, 0.0, 0.0, 0.5, 0.0));
    let path = WarpPath::new(pairs).unwrap();
    assert_eq!(compute_wdr(&path, 3, 2).unwrap(), 0.0);
    assert_eq!(compute_drl(&path, Dwell::new(1).unwrap(), CentralTendency::Median).unwrap(), 0.5);
    assert_eq!(compute_dcr(&path, Dwell::new(1).unwrap()).unwrap(), 0.0);
}
