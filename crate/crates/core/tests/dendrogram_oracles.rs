mod common;

use bembed_core::condensed::CondensedMatrix;
use bembed_core::datasets::{random_dendrogram, RngSpec};
use bembed_core::dendrogram::{Dendrogram, MergeRecord};
use bembed_core::merge_table::{parse_merge_table, serialize_merge_table};
use common::{brute_cophenetic, brute_kinship};
use proptest::prelude::*;

fn arb_dendrogram(max_n: usize) -> impl Strategy<Value = Dendrogram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| random_dendrogram(n, RngSpec::new(seed)).unwrap())
}

/// Random dendrograms whose heights repeat a lot (small integer grid), so
/// ties and zero-height merges get exercised.
fn arb_tied_dendrogram(max_n: usize) -> impl Strategy<Value = Dendrogram> {
    (2..=max_n, any::<u64>()).prop_map(|(n, seed)| {
        let d = random_dendrogram(n, RngSpec::new(seed)).unwrap();
        let merges = d
            .merges()
            .iter()
            .map(|r| MergeRecord::new(r.left, r.right, r.height.floor(), r.size))
            .collect();
        Dendrogram::new(n, merges).unwrap()
    })
}

#[test]
fn eight_leaf_matrices_match_brute_force() {
    let d = random_dendrogram(8, RngSpec::new(8)).unwrap();
    let (c, k) = (d.cophenetic(), d.kinship());
    for (i, j, v) in c.pairs() {
        assert_eq!(v, brute_cophenetic(&d, i, j));
        assert_eq!(k.get(i, j), brute_kinship(&d, i, j) as f64);
    }
}

fn check_ultrametric(c: &CondensedMatrix) {
    let n = c.n();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    assert!(c.get(i, k) <= c.get(i, j).max(c.get(j, k)));
                }
            }
        }
    }
}

proptest! {
    #[test]
    fn matrices_agree_with_lca_walk(d in prop_oneof![arb_dendrogram(10), arb_tied_dendrogram(10)]) {
        let (c, k) = (d.cophenetic(), d.kinship());
        for (i, j, v) in c.pairs() {
            prop_assert_eq!(v, brute_cophenetic(&d, i, j));
            prop_assert_eq!(k.get(i, j), brute_kinship(&d, i, j) as f64);
        }
    }

    #[test]
    fn cophenetic_is_ultrametric(d in prop_oneof![arb_dendrogram(12), arb_tied_dendrogram(12)]) {
        check_ultrametric(&d.cophenetic());
    }

    #[test]
    fn kinship_is_a_tree_metric(d in arb_dendrogram(12)) {
        let k = d.kinship();
        let n = k.n();
        for i in 0..n {
            for j in 0..n {
                if i == j { continue; }
                prop_assert_eq!(k.get(i, j), k.get(j, i));
                prop_assert!(k.get(i, j) >= 2.0);
                prop_assert_eq!(k.get(i, j).fract(), 0.0);
                for m in 0..n {
                    prop_assert!(k.get(i, m) <= k.get(i, j) + k.get(j, m));
                }
            }
        }
    }

    #[test]
    fn leaf_order_is_a_contiguous_permutation(d in prop_oneof![arb_dendrogram(16), arb_tied_dendrogram(16)]) {
        let order = d.leaf_order();
        let mut sorted = order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..d.n_leaves()).collect::<Vec<_>>());
        // each cluster occupies a contiguous run, so the cophenetic value of
        // two leaves is the largest adjacent gap between them
        let c = d.cophenetic();
        for a in 0..order.len() {
            let mut widest = 0.0f64;
            for b in (a + 1)..order.len() {
                widest = widest.max(c.get(order[b - 1], order[b]));
                prop_assert_eq!(c.get(order[a], order[b]), widest);
            }
        }
    }

    #[test]
    fn merge_table_text_round_trips(d in arb_dendrogram(20)) {
        let text = serialize_merge_table(&d);
        let back = parse_merge_table(&text).unwrap();
        prop_assert_eq!(&back, &d);
        prop_assert_eq!(serialize_merge_table(&back), text);
    }
}

#[test]
fn caterpillar_kinship_is_not_ultrametric() {
    // (((a,b),c),d): k(a,d) = 4 > max(k(a,c), k(c,d)) = 3; only the metric
    // properties are promised
    let d = Dendrogram::new(
        4,
        vec![
            MergeRecord::new(0, 1, 1.0, 2),
            MergeRecord::new(4, 2, 2.0, 3),
            MergeRecord::new(5, 3, 3.0, 4),
        ],
    )
    .unwrap();
    let k = d.kinship();
    assert!(k.get(0, 3) > k.get(0, 2).max(k.get(2, 3)));
}
