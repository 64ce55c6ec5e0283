//! Ordinary least squares with covariates and Benjamini-Hochberg control.
//!
//! cargo run --example regression_fdr

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use warpquant::stats::{bh_fdr, ols_fit, percentile_ci};

fn main() -> warpquant::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let noise = Normal::new(0.0, 1.0).unwrap();
    let n = 120;
    let score: Vec<f64> = (0..n).map(|_| noise.sample(&mut rng)).collect();
    let age: Vec<f64> = (0..n).map(|_| 40.0 + 10.0 * noise.sample(&mut rng)).collect();
    let design: Vec<Vec<f64>> = (0..n).map(|s| vec![1.0, score[s], age[s]]).collect();

    // 20 outcomes; only the first three depend on the score
    let mut p_values = Vec::new();
    for k in 0..20 {
        let effect = if k < 3 { 0.6 } else { 0.0 };
        let y: Vec<f64> = (0..n)
            .map(|s| 1.0 + effect * score[s] + 0.02 * age[s] + noise.sample(&mut rng))
            .collect();
        let fit = ols_fit(&y, &design)?;
        println!(
            "outcome {k:>2}: beta {:+.3} (se {:.3}), t {:+.2}, p {:.2e}",
            fit.coefficients[1], fit.standard_errors[1], fit.t_statistics[1], fit.p_values[1]
        );
        p_values.push(fit.p_values[1]);
    }

    for q in [0.01, 0.05, 0.2] {
        let flags = bh_fdr(&p_values, q)?;
        let hits: Vec<usize> = (0..flags.len()).filter(|&k| flags[k]).collect();
        println!("q = {q}: significant outcomes {hits:?}");
    }

    let (lo, hi) = percentile_ci(&p_values, 0.9)?;
    println!("90% percentile interval of the p-values: [{lo:.3}, {hi:.3}]");
    Ok(())
}
