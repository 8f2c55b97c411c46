use bembed::svg::{render_svg_scatter, PALETTE};
use bembed_core::Embedding;

fn circles(svg: &str) -> Vec<(f64, f64, String)> {
    svg.lines()
        .filter(|l| l.starts_with("<circle"))
        .map(|l| {
            let attr = |name: &str| {
                let start = l.find(&format!(" {name}=\"")).unwrap() + name.len() + 3;
                let end = start + l[start..].find('"').unwrap();
                l[start..end].to_string()
            };
            (attr("cx").parse().unwrap(), attr("cy").parse().unwrap(), attr("fill"))
        })
        .collect()
}

#[test]
fn labeled_points_get_distinct_fills() {
    let e = Embedding::from_coords(vec![[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]);
    let svg = render_svg_scatter(&e, Some(&[2, 0, 1]));
    assert!(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(svg.trim_end().ends_with("</svg>"));
    let c = circles(&svg);
    assert_eq!(c.len(), 3);
    let mut fills: Vec<_> = c.iter().map(|p| p.2.clone()).collect();
    assert_eq!(fills[1], PALETTE[0]);
    fills.sort();
    fills.dedup();
    assert_eq!(fills.len(), 3);
}

#[test]
fn unlabeled_points_share_one_color() {
    let e = Embedding::from_coords((0..20).map(|i| [i as f64, (i * i) as f64]).collect());
    let c = circles(&render_svg_scatter(&e, None));
    assert!(c.iter().all(|p| p.2 == PALETTE[0]));
}

#[test]
fn axes_share_one_scale_with_margin() {
    // 10 wide, 2 tall: x fills the canvas minus 5% margins, y is centred
    let e = Embedding::from_coords(vec![[0.0, 0.0], [10.0, 2.0]]);
    let c = circles(&render_svg_scatter(&e, None));
    let size = 480.0;
    let scale = size / 11.0;
    assert!((c[0].0 - 0.5 * scale).abs() < 1e-3);
    assert!((c[1].0 - 10.5 * scale).abs() < 1e-3);
    assert!(((c[0].1 - c[1].1) - 2.0 * scale).abs() < 2e-3);
    assert!(((c[0].1 + c[1].1) / 2.0 - size / 2.0).abs() < 2e-3);
}

#[test]
fn degenerate_extent() {
    let c = circles(&render_svg_scatter(&Embedding::from_coords(vec![[3.0, 3.0]]), Some(&[1])));
    assert_eq!(c.len(), 1);
    assert!((c[0].0 - 240.0).abs() < 1e-9 && (c[0].1 - 240.0).abs() < 1e-9);
}
