#![allow(dead_code)]

use bembed_core::dendrogram::Dendrogram;

/// Parent of every node, `usize::MAX` for the root.
pub fn parents(d: &Dendrogram) -> Vec<usize> {
    let mut parent = vec![usize::MAX; d.n_nodes()];
    for (k, r) in d.merges().iter().enumerate() {
        parent[r.left] = d.n_leaves() + k;
        parent[r.right] = d.n_leaves() + k;
    }
    parent
}

/// Ancestor chain of `node`, itself first.
pub fn ancestors(parent: &[usize], mut node: usize) -> Vec<usize> {
    let mut out = vec![node];
    while parent[node] != usize::MAX {
        node = parent[node];
        out.push(node);
    }
    out
}

/// Lowest common ancestor by walking both ancestor chains, plus the edge
/// counts from each leaf up to it.
pub fn brute_lca(parent: &[usize], a: usize, b: usize) -> (usize, usize, usize) {
    let up_a = ancestors(parent, a);
    let up_b = ancestors(parent, b);
    for (steps_b, node) in up_b.iter().enumerate() {
        if let Some(steps_a) = up_a.iter().position(|x| x == node) {
            return (*node, steps_a, steps_b);
        }
    }
    unreachable!("leaves share the root")
}

pub fn brute_cophenetic(d: &Dendrogram, a: usize, b: usize) -> f64 {
    let parent = parents(d);
    d.height(brute_lca(&parent, a, b).0)
}

pub fn brute_kinship(d: &Dendrogram, a: usize, b: usize) -> usize {
    let parent = parents(d);
    let (_, sa, sb) = brute_lca(&parent, a, b);
    sa + sb
}

pub fn assert_close(a: f64, b: f64, tol: f64, what: &str) {
    assert!((a - b).abs() <= tol, "{what}: {a} vs {b} (tol {tol})");
}
