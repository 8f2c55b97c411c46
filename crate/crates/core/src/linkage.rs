//! Agglomerative hierarchical clustering.
//!
//! [`linkage`] is the generic algorithm: keep a dense dissimilarity matrix
//! over the active clusters, merge the closest pair, and update the merged
//! row with the Lance–Williams recurrence. Each step scans all active pairs,
//! so the whole run is `O(n^3)` in the worst case.
//!
//! [`naive_linkage`] recomputes every inter-cluster dissimilarity from the
//! raw pairs at every step and exists as a reference to test against.
//!
//! Both break ties between equally close pairs by the lexicographically
//! smallest `(smaller node id, larger node id)`, and both report the merged
//! ids in ascending order.
//!
//! [`fast_linkage`] runs in `O(n^2)`: Prim's minimum spanning tree for single
//! linkage and the nearest-neighbor chain for the other three methods. The
//! merges are then stably sorted by height and relabeled with a union-find.
//! On inputs without ties it produces the same tree as [`linkage`]. With
//! ties it resolves them the way the widely used SciPy/fastcluster routines
//! do, which matters when exact-tie-heavy inputs (like 2D correlation
//! distances) are compared against results from that ecosystem.

use alloc::vec;
use alloc::vec::Vec;

use crate::condensed::{condensed_index, CondensedMatrix};
use crate::dendrogram::{Dendrogram, MergeRecord};

/// Which clustering routine to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Algorithm {
    /// [`linkage`]: full scan per merge, lexicographic tie-breaking.
    #[default]
    Generic,
    /// [`fast_linkage`]: minimum spanning tree / nearest-neighbor chain.
    Fast,
}

impl Algorithm {
    pub const fn name(self) -> &'static str {
        match self {
            Self::Generic => "generic",
            Self::Fast => "fast",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "generic" => Some(Self::Generic),
            "fast" => Some(Self::Fast),
            _ => None,
        }
    }

    pub fn run(self, dissimilarity: &CondensedMatrix, method: LinkageMethod) -> Dendrogram {
        match self {
            Self::Generic => linkage(dissimilarity, method),
            Self::Fast => fast_linkage(dissimilarity, method),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LinkageMethod {
    Single,
    Complete,
    Average,
    /// Minimum increase of within-cluster squared deviation. Heights are
    /// reported so that two singletons merge at their raw dissimilarity.
    Ward,
}

impl LinkageMethod {
    pub const ALL: [LinkageMethod; 4] = [Self::Single, Self::Complete, Self::Average, Self::Ward];

    pub const fn name(self) -> &'static str {
        match self {
            Self::Single => "single",
            Self::Complete => "complete",
            Self::Average => "average",
            Self::Ward => "ward",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "single" => Some(Self::Single),
            "complete" => Some(Self::Complete),
            "average" => Some(Self::Average),
            "ward" => Some(Self::Ward),
            _ => None,
        }
    }

    /// Lance–Williams update for the dissimilarity between `a ∪ b` and `c`.
    /// For Ward the inputs and output are squared.
    #[inline]
    fn update(self, d_ac: f64, d_bc: f64, d_ab: f64, n_a: usize, n_b: usize, n_c: usize) -> f64 {
        match self {
            Self::Single => d_ac.min(d_bc),
            Self::Complete => d_ac.max(d_bc),
            Self::Average => {
                let (n_a, n_b) = (n_a as f64, n_b as f64);
                (n_a * d_ac + n_b * d_bc) / (n_a + n_b)
            }
            Self::Ward => {
                let (n_a, n_b, n_c) = (n_a as f64, n_b as f64, n_c as f64);
                ((n_a + n_c) * d_ac + (n_b + n_c) * d_bc - n_c * d_ab) / (n_a + n_b + n_c)
            }
        }
    }
}

impl core::fmt::Display for LinkageMethod {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

#[inline]
fn better(v: f64, ids: (usize, usize), best: Option<(f64, (usize, usize))>) -> bool {
    match best {
        None => true,
        Some((bv, bids)) => v < bv || (v == bv && ids < bids),
    }
}

#[inline]
fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Clusters the items of `dissimilarity` and returns the merge tree.
pub fn linkage(dissimilarity: &CondensedMatrix, method: LinkageMethod) -> Dendrogram {
    let n = dissimilarity.n();
    let mut dist = vec![0.0f64; n * n];
    for (i, j, v) in dissimilarity.pairs() {
        let v = if method == LinkageMethod::Ward { v * v } else { v };
        dist[i * n + j] = v;
        dist[j * n + i] = v;
    }

    // slot -> current node id / size / height
    let mut node: Vec<usize> = (0..n).collect();
    let mut size = vec![1usize; n];
    let mut height = vec![0.0f64; n];
    let mut active: Vec<usize> = (0..n).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    for k in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, (usize, usize))> = None;
        let mut best_slots = (0, 0);
        for (ai, &a) in active.iter().enumerate() {
            let row = &dist[a * n..(a + 1) * n];
            for &b in &active[ai + 1..] {
                let v = row[b];
                if best.is_none_or(|(bv, _)| v <= bv) {
                    let ids = ordered(node[a], node[b]);
                    if better(v, ids, best) {
                        best = Some((v, ids));
                        best_slots = (a, b);
                    }
                }
            }
        }
        let (v, (left, right)) = best.expect("at least two active clusters");
        let (a, b) = best_slots;

        let raw = if method == LinkageMethod::Ward {
            libm::sqrt(v.max(0.0))
        } else {
            v
        };
        // rounding guard: reducible linkages never merge below a child
        let h = raw.max(height[a]).max(height[b]);
        merges.push(MergeRecord::new(left, right, h, size[a] + size[b]));

        for &c in &active {
            if c == a || c == b {
                continue;
            }
            let updated = method.update(dist[a * n + c], dist[b * n + c], v, size[a], size[b], size[c]);
            dist[a * n + c] = updated;
            dist[c * n + a] = updated;
        }
        node[a] = n + k;
        size[a] += size[b];
        height[a] = h;
        active.retain(|&s| s != b);
    }

    Dendrogram::from_trusted(n, merges)
}

/// Clusters in `O(n^2)` time and `O(n^2)` memory (one copy of the input).
pub fn fast_linkage(dissimilarity: &CondensedMatrix, method: LinkageMethod) -> Dendrogram {
    let n = dissimilarity.n();
    let steps = match method {
        LinkageMethod::Single => mst_steps(dissimilarity),
        _ => nn_chain_steps(dissimilarity, method),
    };
    Dendrogram::from_trusted(n, relabel(n, steps))
}

#[inline]
fn cidx(n: usize, i: usize, j: usize) -> usize {
    if i < j {
        condensed_index(n, i, j)
    } else {
        condensed_index(n, j, i)
    }
}

/// Prim's algorithm over the dense matrix, growing from item 0. Each step
/// is `(tree node, new node, edge length)`.
fn mst_steps(dissimilarity: &CondensedMatrix) -> Vec<(usize, usize, f64)> {
    let n = dissimilarity.n();
    let d = dissimilarity.values();
    let mut merged = vec![false; n];
    let mut best = vec![f64::INFINITY; n];
    let mut steps = Vec::with_capacity(n - 1);
    let (mut x, mut y) = (0, 0);
    for _ in 0..n - 1 {
        let mut current = f64::INFINITY;
        merged[x] = true;
        for i in 0..n {
            if merged[i] {
                continue;
            }
            let v = d[cidx(n, x, i)];
            if best[i] > v {
                best[i] = v;
            }
            if best[i] < current {
                y = i;
                current = best[i];
            }
        }
        steps.push((x, y, current));
        x = y;
    }
    steps
}

/// Nearest-neighbor chain. Clusters live in the slot of one of their
/// members; each step is `(slot, slot, height)`.
fn nn_chain_steps(dissimilarity: &CondensedMatrix, method: LinkageMethod) -> Vec<(usize, usize, f64)> {
    let n = dissimilarity.n();
    let mut d = dissimilarity.values().to_vec();
    let mut size = vec![1usize; n];
    let mut chain: Vec<usize> = Vec::with_capacity(n);
    let mut steps = Vec::with_capacity(n - 1);
    let mut y = 0;

    for _ in 0..n - 1 {
        if chain.is_empty() {
            chain.push(size.iter().position(|&s| s > 0).expect("an active cluster"));
        }
        let (x, current) = loop {
            let x = chain[chain.len() - 1];
            // prefer the previous chain element on ties so the chain
            // cannot cycle
            let mut current = if chain.len() > 1 {
                y = chain[chain.len() - 2];
                d[cidx(n, x, y)]
            } else {
                f64::INFINITY
            };
            for i in 0..n {
                if size[i] == 0 || i == x {
                    continue;
                }
                let v = d[cidx(n, x, i)];
                if v < current {
                    current = v;
                    y = i;
                }
            }
            if chain.len() > 1 && y == chain[chain.len() - 2] {
                break (x, current);
            }
            chain.push(y);
        };
        chain.truncate(chain.len() - 2);

        let (x, y) = if x < y { (x, y) } else { (y, x) };
        let (nx, ny) = (size[x], size[y]);
        steps.push((x, y, current));
        size[x] = 0;
        size[y] = nx + ny;
        for i in 0..n {
            let ni = size[i];
            if ni == 0 || i == y {
                continue;
            }
            let (d_xi, d_yi) = (d[cidx(n, i, x)], d[cidx(n, i, y)]);
            d[cidx(n, i, y)] = match method {
                LinkageMethod::Ward => {
                    let t = 1.0 / (nx + ny + ni) as f64;
                    libm::sqrt(
                        (ni + nx) as f64 * t * d_xi * d_xi + (ni + ny) as f64 * t * d_yi * d_yi
                            - ni as f64 * t * current * current,
                    )
                }
                _ => method.update(d_xi, d_yi, current, nx, ny, ni),
            };
        }
    }
    steps
}

/// Sorts item-level merge steps by height (stable) and maps them onto
/// node ids with a union-find.
fn relabel(n: usize, mut steps: Vec<(usize, usize, f64)>) -> Vec<MergeRecord> {
    steps.sort_by(|a, b| a.2.total_cmp(&b.2));
    let mut parent: Vec<usize> = (0..2 * n - 1).collect();
    let mut size = vec![1usize; 2 * n - 1];
    let find = |parent: &mut [usize], mut x: usize| {
        let mut p = x;
        while parent[x] != x {
            x = parent[x];
        }
        while parent[p] != x {
            let next = parent[p];
            parent[p] = x;
            p = next;
        }
        x
    };
    let mut merges = Vec::with_capacity(n - 1);
    for (k, (a, b, h)) in steps.into_iter().enumerate() {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        let (left, right) = ordered(ra, rb);
        let id = n + k;
        parent[ra] = id;
        parent[rb] = id;
        size[id] = size[ra] + size[rb];
        merges.push(MergeRecord::new(left, right, h, size[id]));
    }
    merges
}

/// Definition-based clustering: inter-cluster dissimilarities are recomputed
/// from raw pairs at every step. Roughly `O(n^4)`; meant for small `n`.
pub fn naive_linkage(dissimilarity: &CondensedMatrix, method: LinkageMethod) -> Dendrogram {
    let n = dissimilarity.n();
    let mut clusters: Vec<(usize, Vec<usize>, f64)> = (0..n).map(|i| (i, vec![i], 0.0)).collect();
    let mut merges = Vec::with_capacity(n.saturating_sub(1));

    let within = |members: &[usize]| -> f64 {
        let mut ss = 0.0;
        for (x, &i) in members.iter().enumerate() {
            for &j in &members[x + 1..] {
                let d = dissimilarity.get(i, j);
                ss += d * d;
            }
        }
        ss / members.len() as f64
    };

    let between = |a: &[usize], b: &[usize]| -> f64 {
        match method {
            LinkageMethod::Single => a
                .iter()
                .flat_map(|&i| b.iter().map(move |&j| (i, j)))
                .map(|(i, j)| dissimilarity.get(i, j))
                .fold(f64::INFINITY, f64::min),
            LinkageMethod::Complete => a
                .iter()
                .flat_map(|&i| b.iter().map(move |&j| (i, j)))
                .map(|(i, j)| dissimilarity.get(i, j))
                .fold(f64::NEG_INFINITY, f64::max),
            LinkageMethod::Average => {
                let total: f64 = a
                    .iter()
                    .flat_map(|&i| b.iter().map(move |&j| (i, j)))
                    .map(|(i, j)| dissimilarity.get(i, j))
                    .sum();
                total / (a.len() * b.len()) as f64
            }
            LinkageMethod::Ward => {
                let mut union = a.to_vec();
                union.extend_from_slice(b);
                let increase = within(&union) - within(a) - within(b);
                libm::sqrt((2.0 * increase).max(0.0))
            }
        }
    };

    for k in 0..n.saturating_sub(1) {
        let mut best: Option<(f64, (usize, usize))> = None;
        let mut best_pos = (0, 0);
        for x in 0..clusters.len() {
            for y in (x + 1)..clusters.len() {
                let v = between(&clusters[x].1, &clusters[y].1);
                let ids = ordered(clusters[x].0, clusters[y].0);
                if better(v, ids, best) {
                    best = Some((v, ids));
                    best_pos = (x, y);
                }
            }
        }
        let (v, (left, right)) = best.expect("at least two clusters");
        let (x, y) = best_pos;
        let (_, members_y, h_y) = clusters.swap_remove(y);
        let (id_x, members_x, h_x) = &mut clusters[x];
        let h = v.max(*h_x).max(h_y);
        members_x.extend_from_slice(&members_y);
        merges.push(MergeRecord::new(left, right, h, members_x.len()));
        *id_x = n + k;
        *h_x = h;
    }

    Dendrogram::from_trusted(n, merges)
}
