mod common;

use proptest::prelude::*;
use warpquant::dtw::dtw_align_slices;
use warpquant::{DtwParams, WqaError};

fn series(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-5.0f64..5.0, 1..=max_len)
}

fn integer_series(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((0i32..4).prop_map(f64::from), 1..=max_len)
}

proptest! {
    #[test]
    fn matches_enumeration(x in series(6), y in series(6), extra in 0usize..4, gamma in prop_oneof![Just(1.0), Just(2.0), Just(0.5)]) {
        let w = x.len().abs_diff(y.len()) + extra;
        let r = dtw_align_slices(&x, &y, DtwParams::new(w, gamma).unwrap()).unwrap();
        let (best, _) = common::brute_force_dtw(&x, &y, w, gamma);
        prop_assert_eq!(r.distance, best);
    }

    #[test]
    fn ties_still_reach_the_minimum(x in integer_series(6), y in integer_series(6), extra in 0usize..3) {
        let w = x.len().abs_diff(y.len()) + extra;
        let r = dtw_align_slices(&x, &y, DtwParams::new(w, 1.0).unwrap()).unwrap();
        prop_assert_eq!(r.distance, common::brute_force_dtw(&x, &y, w, 1.0).0);
    }

    #[test]
    fn path_invariants(x in series(40), y in series(40), extra in 0usize..10, gamma in 0.5f64..3.0) {
        let (n, m) = (x.len(), y.len());
        let w = n.abs_diff(m) + extra;
        let r = dtw_align_slices(&x, &y, DtwParams::new(w, gamma).unwrap()).unwrap();
        let l = r.path.len();
        prop_assert!(n.max(m) <= l && l <= n + m - 1);
        prop_assert!(r.path.pairs().iter().all(|&(i, j)| i.abs_diff(j) <= w));
        prop_assert_eq!(r.path.pairs()[0], (1, 1));
        prop_assert_eq!(r.path.pairs()[l - 1], (n, m));
        let resum = common::path_cost(r.path.pairs(), &x, &y, gamma);
        prop_assert!((resum - r.distance).abs() <= 1e-12 * r.distance.max(1.0));
    }

    #[test]
    fn symmetric_distance(x in series(30), y in series(30), extra in 0usize..8) {
        let w = x.len().abs_diff(y.len()) + extra;
        let p = DtwParams::new(w, 1.0).unwrap();
        let a = dtw_align_slices(&x, &y, p).unwrap().distance;
        let b = dtw_align_slices(&y, &x, p).unwrap().distance;
        prop_assert!((a - b).abs() <= 1e-12 * a.max(1.0));
    }

    #[test]
    fn wider_band_never_costs_more(x in series(30), y in series(30), extra in 0usize..8, more in 1usize..8) {
        let w = x.len().abs_diff(y.len()) + extra;
        let narrow = dtw_align_slices(&x, &y, DtwParams::new(w, 2.0).unwrap()).unwrap().distance;
        let wide = dtw_align_slices(&x, &y, DtwParams::new(w + more, 2.0).unwrap()).unwrap().distance;
        prop_assert!(wide <= narrow * (1.0 + 1e-12));
    }

    #[test]
    fn narrow_band_is_an_error(x in series(20), y in series(20)) {
        let gap = x.len().abs_diff(y.len());
        prop_assume!(gap > 0);
        let err = dtw_align_slices(&x, &y, DtwParams::new(gap - 1, 1.0).unwrap()).unwrap_err();
        prop_assert_eq!(err, WqaError::BandTooNarrow { radius: gap - 1, gap });
    }
}

#[test]
fn large_band_matches_unbanded_reference() {
    // full-matrix forward recursion as an independent check at moderate size
    let x: Vec<f64> = (0..80).map(|i| (i as f64 * 0.31).sin() * 2.0).collect();
    let y: Vec<f64> = (0..95).map(|i| (i as f64 * 0.27 + 0.4).sin() * 1.7).collect();
    let (n, m) = (x.len(), y.len());
    let mut d = vec![vec![f64::INFINITY; m + 1]; n + 1];
    d[0][0] = 0.0;
    for i in 1..=n {
        for j in 1..=m {
            let c = (x[i - 1] - y[j - 1]).abs();
            d[i][j] = c + d[i - 1][j - 1].min(d[i - 1][j]).min(d[i][j - 1]);
        }
    }
    let r = dtw_align_slices(&x, &y, DtwParams::new(m, 1.0).unwrap()).unwrap();
    assert!((r.distance - d[n][m]).abs() < 1e-9 * d[n][m]);
}
