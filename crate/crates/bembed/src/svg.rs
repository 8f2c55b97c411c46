//! Scatter plot of an embedding as a standalone SVG document.

use std::collections::BTreeMap;
use std::fmt::Write;

use bembed_core::Embedding;

pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
    "#bcbd22", "#17becf",
];

const SIZE: f64 = 480.0;
const MARGIN: f64 = 0.05;
const RADIUS: f64 = 3.0;

/// Points are colored by label (distinct labels in ascending order take the
/// palette in turn, wrapping after ten). Both axes share one scale.
pub fn render_svg_scatter(coords: &Embedding, labels: Option<&[i64]>) -> String {
    let pts = coords.coords();
    let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for p in pts {
        x0 = x0.min(p[0]);
        x1 = x1.max(p[0]);
        y0 = y0.min(p[1]);
        y1 = y1.max(p[1]);
    }
    if pts.is_empty() {
        (x0, x1, y0, y1) = (0.0, 0.0, 0.0, 0.0);
    }
    let mut span = (x1 - x0).max(y1 - y0);
    if span <= 0.0 {
        span = 1.0;
    }
    let pad = span * MARGIN;
    let full = span + 2.0 * pad;
    let scale = SIZE / full;
    // centre the shorter axis
    let ox = x0 - pad - (span - (x1 - x0)) / 2.0;
    let oy = y0 - pad - (span - (y1 - y0)) / 2.0;

    let colors: BTreeMap<i64, &str> = labels
        .map(|l| {
            let mut distinct: Vec<i64> = l.to_vec();
            distinct.sort_unstable();
            distinct.dedup();
            distinct.into_iter().enumerate().map(|(k, v)| (v, PALETTE[k % PALETTE.len()])).collect()
        })
        .unwrap_or_default();

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    for (i, p) in pts.iter().enumerate() {
        let fill = labels.map_or(PALETTE[0], |l| colors[&l[i]]);
        let cx = (p[0] - ox) * scale;
        let cy = SIZE - (p[1] - oy) * scale;
        let _ = writeln!(out, r#"<circle cx="{cx:.3}" cy="{cy:.3}" r="{RADIUS}" fill="{fill}"/>"#);
    }
    out.push_str("</svg>\n");
    out
}
