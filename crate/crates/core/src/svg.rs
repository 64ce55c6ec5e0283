//! Minimal static SVG output: sweep line charts and matrix heatmaps.

use std::fmt::Write;

use crate::connectivity::SquareMatrix;
use crate::sim::SweepResult;

const PALETTE: [&str; 6] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b"];

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Driver (dashed black) and the six z-scored mean curves against the grid.
pub fn sweep_chart(result: &SweepResult) -> String {
    let (w, h) = (640.0, 400.0);
    let (left, right, top, bottom) = (60.0, 150.0, 40.0, 50.0);
    let pw = w - left - right;
    let ph = h - top - bottom;

    let mut curves: Vec<(String, &str, Vec<f64>, bool)> = vec![(
        "driver".to_string(),
        "#000000",
        result.driver_z.clone(),
        true,
    )];
    for (s, color) in result.measures.iter().zip(PALETTE) {
        let label = format!("{} ({:.3})", s.measure, s.rmse_mean);
        curves.push((label, color, s.mean_curve.clone(), false));
    }

    let all = curves.iter().flat_map(|c| c.2.iter().copied());
    let (mut lo, mut hi) = all.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !(lo.is_finite() && hi.is_finite()) || hi - lo < 1e-12 {
        lo = -1.0;
        hi = 1.0;
    }
    let (g0, g1) = (result.grid[0], result.grid[result.grid.len() - 1]);
    let sx = |g: f64| left + pw * if g1 > g0 { (g - g0) / (g1 - g0) } else { 0.5 };
    let sy = |v: f64| top + ph * (hi - v) / (hi - lo);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="12">"##
    );
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="white"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="{}" y="22" text-anchor="middle" font-size="14">{} (target {})</text>"##,
        left + pw / 2.0,
        result.scenario,
        escape(result.target.name())
    );
    let _ = writeln!(
        out,
        r##"<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="#888"/>"##
    );
    for (v, anchor) in [(lo, "end"), (hi, "end")] {
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{:.2}" text-anchor="{anchor}">{v:.2}</text>"##,
            left - 6.0,
            sy(v) + 4.0
        );
    }
    for g in [g0, g1] {
        let _ = writeln!(
            out,
            r##"<text x="{:.2}" y="{}" text-anchor="middle">{g}</text>"##,
            sx(g),
            top + ph + 18.0
        );
    }
    let _ = writeln!(
        out,
        r##"<text x="{}" y="{}" text-anchor="middle">driver</text>"##,
        left + pw / 2.0,
        h - 12.0
    );

    for (k, (label, color, ys, dashed)) in curves.iter().enumerate() {
        let points: Vec<String> = result
            .grid
            .iter()
            .zip(ys)
            .map(|(&g, &v)| format!("{:.2},{:.2}", sx(g), sy(v)))
            .collect();
        let dash = if *dashed { r##" stroke-dasharray="6,4""## } else { "" };
        let _ = writeln!(
            out,
            r##"<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"##,
            points.join(" ")
        );
        let ly = top + 14.0 + 18.0 * k as f64;
        let lx = left + pw + 10.0;
        let _ = writeln!(
            out,
            r##"<line x1="{lx}" y1="{ly}" x2="{}" y2="{ly}" stroke="{color}" stroke-width="2"{dash}/>"##,
            lx + 20.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{}" y="{}">{}</text>"##,
            lx + 26.0,
            ly + 4.0,
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Diverging colour: white at 0, saturated red at `+limit`, blue at `-limit`.
fn diverging(v: f64, limit: f64) -> String {
    let t = if limit > 0.0 { (v / limit).clamp(-1.0, 1.0) } else { 0.0 };
    let fade = (255.0 * (1.0 - t.abs())).round() as u8;
    if t >= 0.0 {
        format!("#ff{fade:02x}{fade:02x}")
    } else {
        format!("#{fade:02x}{fade:02x}ff")
    }
}

pub fn heatmap(m: &SquareMatrix, names: &[String], title: &str) -> String {
    let c = m.size();
    let cell = (480.0 / c.max(1) as f64).clamp(4.0, 40.0);
    let margin = 90.0;
    let side = cell * c as f64;
    let (w, h) = (side + margin + 20.0, side + margin + 20.0);
    let limit = (0..c)
        .flat_map(|i| (0..c).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).abs())
        .fold(0.0, f64::max);
    let label_names = cell >= 10.0;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}" font-family="sans-serif" font-size="10">"##
    );
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="white"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="{}" y="20" text-anchor="middle" font-size="14">{}</text>"##,
        margin + side / 2.0,
        escape(title)
    );
    for i in 0..c {
        for j in 0..c {
            let _ = writeln!(
                out,
                r##"<rect x="{:.2}" y="{:.2}" width="{cell:.2}" height="{cell:.2}" fill="{}"/>"##,
                margin + cell * j as f64,
                margin + cell * i as f64,
                diverging(m.get(i, j), limit)
            );
        }
        if label_names {
            let name = escape(&names[i]);
            let _ = writeln!(
                out,
                r##"<text x="{}" y="{:.2}" text-anchor="end">{name}</text>"##,
                margin - 4.0,
                margin + cell * (i as f64 + 0.5) + 3.0
            );
            let x = margin + cell * (i as f64 + 0.5);
            let _ = writeln!(
                out,
                r##"<text x="{x:.2}" y="{}" transform="rotate(-60 {x:.2} {})">{name}</text>"##,
                margin - 4.0,
                margin - 4.0
            );
        }
    }
    out.push_str("</svg>\n");
    out
}
