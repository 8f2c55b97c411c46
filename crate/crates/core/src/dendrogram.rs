//! Dendrograms stored as merge tables.
//!
//! Leaves are numbered `0..n`; the `k`-th merge record (0-based) creates
//! internal node `n + k`, and the last record is the root. This is the same
//! numbering used by the common scientific linkage-matrix format.

use alloc::vec;
use alloc::vec::Vec;

use crate::condensed::{condensed_index, condensed_len, CondensedMatrix};
use crate::{Error, Result};

/// One agglomeration step: `left` and `right` merge at `height` into a
/// cluster of `size` leaves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MergeRecord {
    pub left: usize,
    pub right: usize,
    pub height: f64,
    pub size: usize,
}

impl MergeRecord {
    pub const fn new(left: usize, right: usize, height: f64, size: usize) -> Self {
        Self {
            left,
            right,
            height,
            size,
        }
    }
}

/// A validated, monotonic, binary merge tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Dendrogram {
    n_leaves: usize,
    merges: Vec<MergeRecord>,
}

/// Checks every structural invariant of a merge table and wraps it.
///
/// Monotonicity is checked per branch: a record's height must be at least the
/// heights of its two children, but the records need not be sorted by
/// height.
pub fn validate_dendrogram(merges: Vec<MergeRecord>, n_leaves: usize) -> Result<Dendrogram> {
    if n_leaves < 2 {
        return Err(Error::TooFewLeaves(n_leaves));
    }
    if merges.len() != n_leaves - 1 {
        return Err(Error::RecordCount {
            expected: n_leaves - 1,
            found: merges.len(),
        });
    }

    let n_nodes = 2 * n_leaves - 1;
    let mut used = vec![false; n_nodes];
    let mut sizes = vec![1usize; n_nodes];
    let mut heights = vec![0.0f64; n_nodes];

    for (k, rec) in merges.iter().enumerate() {
        let id = n_leaves + k;
        for child in [rec.left, rec.right] {
            if child >= id {
                return Err(Error::ForwardReference {
                    record: k,
                    node: child,
                });
            }
            if used[child] {
                return Err(Error::DuplicateChild {
                    record: k,
                    node: child,
                });
            }
            used[child] = true;
        }
        if !(rec.height.is_finite() && rec.height >= 0.0) {
            return Err(Error::NegativeHeight { record: k });
        }
        let expected = sizes[rec.left] + sizes[rec.right];
        if rec.size != expected {
            return Err(Error::SizeMismatch {
                record: k,
                expected,
                found: rec.size,
            });
        }
        for child in [rec.left, rec.right] {
            if rec.height < heights[child] {
                return Err(Error::NonMonotonic { record: k, child });
            }
        }
        sizes[id] = rec.size;
        heights[id] = rec.height;
    }

    Ok(Dendrogram { n_leaves, merges })
}

impl Dendrogram {
    /// Same as [`validate_dendrogram`].
    pub fn new(n_leaves: usize, merges: Vec<MergeRecord>) -> Result<Self> {
        validate_dendrogram(merges, n_leaves)
    }

    pub(crate) fn from_trusted(n_leaves: usize, merges: Vec<MergeRecord>) -> Self {
        debug_assert!(validate_dendrogram(merges.clone(), n_leaves).is_ok());
        Self { n_leaves, merges }
    }

    pub fn n_leaves(&self) -> usize {
        self.n_leaves
    }

    pub fn merges(&self) -> &[MergeRecord] {
        &self.merges
    }

    /// Total node count, `2n - 1`.
    pub fn n_nodes(&self) -> usize {
        2 * self.n_leaves - 1
    }

    pub fn root(&self) -> usize {
        self.n_nodes() - 1
    }

    pub fn is_leaf(&self, node: usize) -> bool {
        node < self.n_leaves
    }

    /// The merge record that created `node`, or `None` for a leaf.
    pub fn record(&self, node: usize) -> Option<&MergeRecord> {
        node.checked_sub(self.n_leaves).map(|k| &self.merges[k])
    }

    /// Leaf count below `node`.
    pub fn size(&self, node: usize) -> usize {
        self.record(node).map_or(1, |r| r.size)
    }

    /// Merge height of `node`; leaves sit at height zero.
    pub fn height(&self, node: usize) -> f64 {
        self.record(node).map_or(0.0, |r| r.height)
    }

    /// Edge depth of every node, the root being at depth 0.
    pub fn depths(&self) -> Vec<usize> {
        let n = self.n_leaves;
        let mut depth = vec![0usize; self.n_nodes()];
        for (k, rec) in self.merges.iter().enumerate().rev() {
            let d = depth[n + k] + 1;
            depth[rec.left] = d;
            depth[rec.right] = d;
        }
        depth
    }

    /// Calls `f(a, b, k)` once for every leaf pair `a < b`, where record `k`
    /// is their lowest common ancestor.
    fn for_each_lca(&self, mut f: impl FnMut(usize, usize, usize)) {
        let n = self.n_leaves;
        let mut members: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        members.resize_with(self.n_nodes(), Vec::new);
        for (k, rec) in self.merges.iter().enumerate() {
            let left = core::mem::take(&mut members[rec.left]);
            let right = core::mem::take(&mut members[rec.right]);
            for &a in &left {
                for &b in &right {
                    if a < b {
                        f(a, b, k);
                    } else {
                        f(b, a, k);
                    }
                }
            }
            let mut merged = left;
            merged.extend_from_slice(&right);
            members[n + k] = merged;
        }
    }

    /// Height of the lowest common ancestor for every leaf pair.
    pub fn cophenetic(&self) -> CondensedMatrix {
        let n = self.n_leaves;
        let mut values = vec![0.0; condensed_len(n)];
        self.for_each_lca(|a, b, k| values[condensed_index(n, a, b)] = self.merges[k].height);
        CondensedMatrix::from_raw(n, values)
    }

    /// Number of tree edges on the path between every leaf pair.
    pub fn kinship(&self) -> CondensedMatrix {
        let n = self.n_leaves;
        let depth = self.depths();
        let mut values = vec![0.0; condensed_len(n)];
        self.for_each_lca(|a, b, k| {
            values[condensed_index(n, a, b)] = (depth[a] + depth[b] - 2 * depth[n + k]) as f64;
        });
        CondensedMatrix::from_raw(n, values)
    }

    /// Leaves left to right, visiting each record's `left` child first.
    pub fn leaf_order(&self) -> Vec<usize> {
        let mut order = Vec::with_capacity(self.n_leaves);
        let mut stack = vec![self.root()];
        while let Some(node) = stack.pop() {
            match self.record(node) {
                Some(rec) => {
                    stack.push(rec.right);
                    stack.push(rec.left);
                }
                None => order.push(node),
            }
        }
        order
    }
}

/// Free-function form of [`Dendrogram::cophenetic`].
pub fn cophenetic_matrix(d: &Dendrogram) -> CondensedMatrix {
    d.cophenetic()
}

/// Free-function form of [`Dendrogram::kinship`].
pub fn kinship_matrix(d: &Dendrogram) -> CondensedMatrix {
    d.kinship()
}

/// Free-function form of [`Dendrogram::leaf_order`].
pub fn leaf_order(d: &Dendrogram) -> Vec<usize> {
    d.leaf_order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(l: usize, r: usize, h: f64, s: usize) -> MergeRecord {
        MergeRecord::new(l, r, h, s)
    }

    #[test]
    fn smallest_tree() {
        let d = Dendrogram::new(2, vec![rec(0, 1, 1.0, 2)]).unwrap();
        assert_eq!(d.root(), 2);
        assert_eq!(d.cophenetic().values(), &[1.0]);
        assert_eq!(d.kinship().values(), &[2.0]);
        assert_eq!(d.leaf_order(), vec![0, 1]);
    }

    #[test]
    fn per_branch_monotonicity_allows_unsorted_records() {
        let merges = vec![rec(0, 1, 2.0, 2), rec(2, 3, 1.0, 2), rec(4, 5, 3.0, 4)];
        assert!(validate_dendrogram(merges, 4).is_ok());
    }

    #[test]
    fn validation_errors_name_the_record() {
        let err = validate_dendrogram(vec![rec(0, 1, 2.0, 2), rec(0, 2, 1.0, 2)], 3);
        assert_eq!(err, Err(Error::DuplicateChild { record: 1, node: 0 }));

        let err = validate_dendrogram(vec![rec(0, 4, 1.0, 2), rec(2, 1, 1.0, 3)], 3);
        assert_eq!(err, Err(Error::ForwardReference { record: 0, node: 4 }));

        let err = validate_dendrogram(vec![rec(0, 1, 1.0, 2), rec(3, 2, 2.0, 2)], 3);
        assert_eq!(
            err,
            Err(Error::SizeMismatch {
                record: 1,
                expected: 3,
                found: 2
            })
        );

        let err = validate_dendrogram(vec![rec(0, 1, 2.0, 2), rec(3, 2, 1.0, 3)], 3);
        assert_eq!(err, Err(Error::NonMonotonic { record: 1, child: 3 }));

        let err = validate_dendrogram(vec![rec(0, 1, -1.0, 2)], 2);
        assert_eq!(err, Err(Error::NegativeHeight { record: 0 }));

        let err = validate_dendrogram(vec![rec(0, 1, f64::NAN, 2)], 2);
        assert_eq!(err, Err(Error::NegativeHeight { record: 0 }));

        let err = validate_dendrogram(vec![rec(0, 0, 1.0, 2)], 2);
        assert_eq!(err, Err(Error::DuplicateChild { record: 0, node: 0 }));

        assert_eq!(validate_dendrogram(vec![], 1), Err(Error::TooFewLeaves(1)));
        assert_eq!(
            validate_dendrogram(vec![rec(0, 1, 1.0, 2)], 3),
            Err(Error::RecordCount {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn four_point_cophenetic() {
        let l = 1.7;
        let d = Dendrogram::new(4, vec![rec(0, 1, 1.0, 2), rec(2, 3, 1.0, 2), rec(4, 5, l, 4)])
            .unwrap();
        let c = d.cophenetic();
        assert_eq!(c.get(0, 1), 1.0);
        assert_eq!(c.get(2, 3), 1.0);
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(c.get(a, b), l);
        }
    }

    #[test]
    fn caterpillar_kinship() {
        // (((a,b),c),d)
        let d = Dendrogram::new(4, vec![rec(0, 1, 1.0, 2), rec(4, 2, 2.0, 3), rec(5, 3, 3.0, 4)])
            .unwrap();
        let k = d.kinship();
        assert_eq!(k.get(0, 1), 2.0);
        assert_eq!(k.get(0, 2), 3.0);
        assert_eq!(k.get(1, 2), 3.0);
        assert_eq!(k.get(2, 3), 3.0);
        assert_eq!(k.get(0, 3), 4.0);
        assert_eq!(k.get(1, 3), 4.0);
        assert_eq!(d.leaf_order(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn balanced_kinship() {
        let d = Dendrogram::new(4, vec![rec(0, 1, 1.0, 2), rec(2, 3, 1.0, 2), rec(4, 5, 2.0, 4)])
            .unwrap();
        let k = d.kinship();
        assert_eq!(k.get(0, 1), 2.0);
        assert_eq!(k.get(2, 3), 2.0);
        for (a, b) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
            assert_eq!(k.get(a, b), 4.0);
        }
        assert_eq!(d.leaf_order(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn leaf_order_respects_left_first() {
        let d = Dendrogram::new(3, vec![rec(2, 0, 1.0, 2), rec(1, 3, 2.0, 3)]).unwrap();
        assert_eq!(d.leaf_order(), vec![1, 2, 0]);
    }
}
