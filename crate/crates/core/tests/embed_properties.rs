mod common;

use bembed_core::datasets::{random_dendrogram, RngSpec};
use bembed_core::dendrogram::Dendrogram;
use bembed_core::embed::{branching_embed, branching_embed_traced, line_embed, AngleStrategy, Point};
use bembed_core::linkage::{linkage, LinkageMethod};
use bembed_core::metrics::{convert_dendrogram, evaluate_embedding};
use common::assert_close;
use proptest::prelude::*;

fn strategies(seed: u64) -> Vec<AngleStrategy> {
    let mut out = vec![AngleStrategy::random(seed), AngleStrategy::Even];
    for theta in [0.0, 15.0, 30.0, 45.0, 60.0, 75.0, 90.0] {
        out.push(AngleStrategy::fixed_with_swap(theta, true).unwrap());
        out.push(AngleStrategy::fixed_with_swap(theta, false).unwrap());
    }
    out
}

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(v: Point) -> f64 {
    v[0].hypot(v[1])
}

/// Unsigned angle between two vectors.
fn angle_between(a: Point, b: Point) -> f64 {
    let cross = a[0] * b[1] - a[1] * b[0];
    let dot = a[0] * b[0] + a[1] * b[1];
    cross.atan2(dot).abs()
}

fn arb_dendrogram(max_n: usize) -> impl Strategy<Value = Dendrogram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_dendrogram(n, RngSpec::new(seed)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn center_of_mass_stays_at_origin(d in arb_dendrogram(200), seed in any::<u64>()) {
        for s in strategies(seed) {
            let c = branching_embed(&d, &s).unwrap().centroid();
            prop_assert!(c[0].abs() <= 1e-9 && c[1].abs() <= 1e-9, "{s:?}: {c:?}");
        }
    }

    #[test]
    fn every_split_has_the_right_geometry(d in arb_dendrogram(120), seed in any::<u64>()) {
        for s in strategies(seed) {
            let e = branching_embed_traced(&d, &s).unwrap();
            let trace = e.trace().unwrap();
            prop_assert_eq!(trace.len(), d.n_leaves() - 1);
            for ev in trace {
                let (c1, c2) = (sub(ev.child1, ev.target), sub(ev.child2, ev.target));
                prop_assert!((norm(sub(ev.child1, ev.child2)) - ev.height).abs() <= 1e-9);
                prop_assert!((ev.n1 as f64 * norm(c1) - ev.n2 as f64 * norm(c2)).abs() <= 1e-9);

                let Some(sister) = ev.sister else { continue };
                let to_sister = sub(sister, ev.target);
                let sister_dist = norm(to_sister);
                if sister_dist < 1e-9 || ev.height == 0.0 {
                    continue;
                }
                match s {
                    AngleStrategy::Fixed { theta_deg, .. } => {
                        // the child sent along +u makes angle θ with T→S
                        let along = if ev.swapped { c2 } else { c1 };
                        if norm(along) > 1e-9 {
                            prop_assert!((angle_between(to_sister, along) - theta_deg.to_radians()).abs() <= 1e-9);
                        }
                        prop_assert!(!ev.swapped || ev.n1 > ev.n2);
                    }
                    AngleStrategy::Even => {
                        let (l1, l2) = (norm(c1), norm(c2));
                        if (l1 - l2).abs() < 2.0 * sister_dist {
                            let d1 = norm(sub(ev.child1, sister));
                            let d2 = norm(sub(ev.child2, sister));
                            prop_assert!((d1 - d2).abs() <= 1e-9, "{d1} vs {d2}");
                        }
                    }
                    AngleStrategy::Random { .. } => {}
                }
            }
        }
    }

    #[test]
    fn reclustering_the_line_embedding_is_exact(d in arb_dendrogram(100)) {
        let original = d.cophenetic();
        let converted = convert_dendrogram(&line_embed(&d), LinkageMethod::Single).unwrap().cophenetic();
        for (a, b) in original.values().iter().zip(converted.values()) {
            prop_assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn scores_are_invariant_under_rigid_motion(d in arb_dendrogram(60), angle in 0.0f64..6.3, flip in any::<bool>()) {
        if d.n_leaves() < 4 {
            return Ok(());
        }
        let s = AngleStrategy::fixed(15.0).unwrap();
        let e = branching_embed(&d, &s).unwrap();
        let mut moved = e.transformed(angle, 1.0, [3.0, -7.0]);
        if flip {
            moved = bembed_core::Embedding::from_coords(moved.coords().iter().map(|p| [-p[0], p[1]]).collect());
        }
        for m in LinkageMethod::ALL {
            let (Ok(a), Ok(b)) = (evaluate_embedding(&d, &e, m), evaluate_embedding(&d, &moved, m)) else { continue };
            prop_assert!((a.r_c - b.r_c).abs() <= 1e-9);
            prop_assert!((a.r_k - b.r_k).abs() <= 1e-9);
        }
    }

    #[test]
    fn scaling_scales_converted_heights(d in arb_dendrogram(60), scale in 0.1f64..10.0) {
        // not Even: it places both children exactly equidistant from the
        // sister, and rounding after scaling can then flip which pair merges
        // first (same heights, different topology, different r_k)
        let e = branching_embed(&d, &AngleStrategy::fixed(15.0).unwrap()).unwrap();
        let big = e.transformed(0.0, scale, [0.0, 0.0]);
        for m in LinkageMethod::ALL {
            let a = convert_dendrogram(&e, m).unwrap();
            let b = convert_dendrogram(&big, m).unwrap();
            for (x, y) in a.merges().iter().zip(b.merges()) {
                prop_assert!((x.height * scale - y.height).abs() <= 1e-9 * (1.0 + y.height));
            }
            if let (Ok(ra), Ok(rb)) = (evaluate_embedding(&d, &e, m), evaluate_embedding(&d, &big, m)) {
                prop_assert!((ra.r_c - rb.r_c).abs() <= 1e-9);
                prop_assert!((ra.r_k - rb.r_k).abs() <= 1e-9);
            }
        }
    }
}

#[test]
fn line_embedding_scores_one_under_single_linkage() {
    for seed in 0..30 {
        let d = random_dendrogram(30, RngSpec::new(seed)).unwrap();
        let report = evaluate_embedding(&d, &line_embed(&d), LinkageMethod::Single).unwrap();
        assert_close(report.r_c, 1.0, 1e-12, "r_c");
    }
}

#[test]
fn embeddings_are_reproducible() {
    let d = random_dendrogram(300, RngSpec::new(5)).unwrap();
    for s in strategies(17) {
        let a = branching_embed(&d, &s).unwrap();
        let b = branching_embed(&d, &s).unwrap();
        let bits = |e: &bembed_core::Embedding| -> Vec<u64> {
            e.coords().iter().flat_map(|p| [p[0].to_bits(), p[1].to_bits()]).collect()
        };
        assert_eq!(bits(&a), bits(&b));
    }
    let a = branching_embed(&d, &AngleStrategy::random(1)).unwrap();
    let b = branching_embed(&d, &AngleStrategy::random(2)).unwrap();
    assert_ne!(a, b);
}

#[test]
fn embedding_of_a_clustering_keeps_leaf_ids() {
    let x = bembed_core::datasets::gaussian_matrix(50, 5, RngSpec::new(3)).unwrap();
    let d = linkage(&bembed_core::data::euclidean_dissimilarity(&x), LinkageMethod::Average);
    let e = branching_embed(&d, &AngleStrategy::fixed(15.0).unwrap()).unwrap();
    assert_eq!(e.len(), 50);
    assert!(e.coords().iter().all(|p| p[0].is_finite() && p[1].is_finite()));
}
