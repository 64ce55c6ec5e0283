//! Reference implementations shared by the integration tests. Each one is
//! written straight from the definition, without reusing library internals.
#![allow(dead_code)]

use rand::Rng;

/// Every admissible path from (1,1) to (n,m) inside the band, 1-based.
pub fn enumerate_paths(n: usize, m: usize, w: usize) -> Vec<Vec<(usize, usize)>> {
    fn walk(
        i: usize,
        j: usize,
        n: usize,
        m: usize,
        w: usize,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i.abs_diff(j) > w {
            return;
        }
        cur.push((i, j));
        if (i, j) == (n, m) {
            out.push(cur.clone());
        } else {
            if i < n && j < m {
                walk(i + 1, j + 1, n, m, w, cur, out);
            }
            if j < m {
                walk(i, j + 1, n, m, w, cur, out);
            }
            if i < n {
                walk(i + 1, j, n, m, w, cur, out);
            }
        }
        cur.pop();
    }
    let mut out = Vec::new();
    walk(1, 1, n, m, w, &mut Vec::new(), &mut out);
    out
}

/// Left-to-right sum of `|x_i - y_j|^gamma` along a path.
pub fn path_cost(path: &[(usize, usize)], x: &[f64], y: &[f64], gamma: f64) -> f64 {
    let mut total = 0.0;
    for &(i, j) in path {
        total += (x[i - 1] - y[j - 1]).abs().powf(gamma);
    }
    total
}

/// Minimum cost over all admissible paths and how many paths attain it.
pub fn brute_force_dtw(x: &[f64], y: &[f64], w: usize, gamma: f64) -> (f64, usize) {
    let costs: Vec<f64> = enumerate_paths(x.len(), y.len(), w)
        .iter()
        .map(|p| path_cost(p, x, y, gamma))
        .collect();
    let best = costs.iter().copied().fold(f64::INFINITY, f64::min);
    let count = costs.iter().filter(|&&c| c == best).count();
    (best, count)
}

/// A random admissible path. Step preferences are drawn per path so that the
/// sample covers diagonal-heavy, axis-heavy and zig-zag shapes.
pub fn random_path<R: Rng>(rng: &mut R, n: usize, m: usize, w: usize) -> Vec<(usize, usize)> {
    let weights = [
        rng.random_range(0.05..1.0),
        rng.random_range(0.05..1.0),
        rng.random_range(0.05..1.0),
    ];
    let (mut i, mut j) = (1usize, 1usize);
    let mut path = vec![(1, 1)];
    while (i, j) != (n, m) {
        let options: Vec<((usize, usize), f64)> = [((i + 1, j + 1), weights[0]), ((i, j + 1), weights[1]), ((i + 1, j), weights[2])]
            .into_iter()
            .filter(|&((a, b), _)| a <= n && b <= m && a.abs_diff(b) <= w)
            .collect();
        let total: f64 = options.iter().map(|o| o.1).sum();
        let mut pick = rng.random_range(0.0..total);
        let mut next = options[options.len() - 1].0;
        for &(cell, wt) in &options {
            if pick < wt {
                next = cell;
                break;
            }
            pick -= wt;
        }
        (i, j) = next;
        path.push(next);
    }
    path
}

fn sorted_median(mut v: Vec<f64>) -> f64 {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = v.len();
    if n % 2 == 1 {
        v[(n - 1) / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    }
}

fn plain_mean(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for x in v {
        s += x;
    }
    s / v.len() as f64
}

fn plain_sample_std(v: &[f64]) -> f64 {
    if v.len() < 2 {
        return 0.0;
    }
    let m = plain_mean(v);
    let mut ss = 0.0;
    for x in v {
        ss += (x - m) * (x - m);
    }
    (ss / (v.len() as f64 - 1.0)).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport {
    pub wdr: f64,
    pub cwd: f64,
    pub wdv: f64,
    pub drl: f64,
    pub dcr: f64,
}

/// All five descriptors for `path` on an `n` by `m` grid with radius `w`.
pub fn oracle_metrics(path: &[(usize, usize)], n: usize, m: usize, w: usize, k: usize, mean_mode: bool) -> OracleReport {
    let l = path.len();
    let longest = n.max(m);
    let wdr = (l - longest) as f64 / (n + m - longest) as f64;

    let wd: Vec<i64> = path.iter().map(|&(i, j)| i as i64 - j as i64).collect();
    let abs: Vec<f64> = wd.iter().map(|d| d.unsigned_abs() as f64).collect();
    let central = |v: &[f64]| if mean_mode { plain_mean(v) } else { sorted_median(v.to_vec()) };

    let (cwd, wdv) = if w == 0 {
        (0.0, 0.0)
    } else {
        let cwd = (central(&abs) / w as f64).min(1.0);
        let spread = if mean_mode {
            plain_sample_std(&abs)
        } else {
            let med = sorted_median(abs.clone());
            sorted_median(abs.iter().map(|a| (a - med).abs()).collect())
        };
        (cwd, (spread / w as f64).min(1.0))
    };

    // step indicators and their 1-runs
    let steps = l - 1;
    let mut runs = Vec::new();
    let mut current = 0usize;
    for t in 1..l {
        let diag = path[t].0 == path[t - 1].0 + 1 && path[t].1 == path[t - 1].1 + 1;
        if diag {
            current += 1;
        } else if current > 0 {
            runs.push(current);
            current = 0;
        }
    }
    if current > 0 {
        runs.push(current);
    }
    // a run spanning every step is kept regardless of k
    let kept: Vec<f64> = runs.iter().filter(|&&r| r >= k || r == steps).map(|&r| r as f64).collect();
    let drl = if kept.is_empty() { 0.0 } else { central(&kept) / steps as f64 };

    // zero-resolved signs: carry the last nonzero sign, back-fill leading zeros
    let dcr = match wd.iter().position(|&d| d != 0) {
        None => 0.0,
        Some(first) => {
            let mut s = vec![0i64; l];
            for t in 0..l {
                s[t] = if wd[t] != 0 {
                    wd[t].signum()
                } else if t == 0 || t <= first {
                    wd[first].signum()
                } else {
                    s[t - 1]
                };
            }
            let mut rle: Vec<(i64, usize)> = Vec::new();
            for &v in &s {
                if let Some(last) = rle.last_mut() {
                    if last.0 == v {
                        last.1 += 1;
                        continue;
                    }
                }
                rle.push((v, 1));
            }
            let mut c = 0usize;
            for r in 0..rle.len().saturating_sub(1) {
                if rle[r].0 * rle[r + 1].0 == -1 && rle[r].1 >= k && rle[r + 1].1 >= k {
                    c += 1;
                }
            }
            (2.0 * k as f64 / steps as f64 * c as f64).min(1.0)
        }
    };

    OracleReport { wdr, cwd, wdv, drl, dcr }
}

/// Benjamini–Hochberg by brute force: the largest rank `i` with
/// `p_(i) <= i q / m`, found by counting, then reject every `p <= p_(i)`.
pub fn brute_force_bh(p: &[f64], q: f64) -> Vec<bool> {
    let m = p.len();
    let mut threshold: Option<f64> = None;
    for &candidate in p {
        let rank = p.iter().filter(|&&other| other <= candidate).count();
        if candidate <= rank as f64 * q / m as f64 && threshold.is_none_or(|t| candidate > t) {
            threshold = Some(candidate);
        }
    }
    p.iter().map(|&v| threshold.is_some_and(|t| v <= t)).collect()
}
