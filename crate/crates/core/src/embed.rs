//! Branching embedding: top-down placement of dendrogram leaves in the plane.
//!
//! The root cluster sits at the origin. Every internal node `T` splits into
//! its two children, which move in opposite directions along a unit vector
//! `u` so that they end up exactly the merge height apart. Each child
//! travels a distance inversely proportional to its size, so the cluster's
//! center of mass never moves:
//!
//! ```text
//! l1 = h * n2 / (n1 + n2)      C1 = T + l1 * u
//! l2 = h * n1 / (n1 + n2)      C2 = T - l2 * u
//! ```
//!
//! The direction `u` is chosen relative to the sister cluster `S` (the other
//! child of `T`'s parent):
//!
//! * [`AngleStrategy::Fixed`]: `u` is the unit vector from `T` towards `S`,
//!   rotated counterclockwise by a fixed angle. With `swap` on, when the
//!   first child is the larger one the children trade directions so the
//!   larger child is pushed away from the sister.
//! * [`AngleStrategy::Even`]: the rotation angle is chosen so that both
//!   children end up equally far from `S` (see [`even_angle`]).
//! * [`AngleStrategy::Random`]: `u` is uniformly random.
//!
//! The root has no sister. It splits along `+x` for the fixed and even
//! strategies and in a random direction for the random strategy.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, TAU};

use crate::dendrogram::Dendrogram;
use crate::rng::Rng;
use crate::{Error, Result};

pub type Point = [f64; 2];

/// Sister distances below this are treated as "no usable direction".
pub const DEGENERATE_SISTER: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AngleStrategy {
    Random { seed: u64 },
    Fixed { theta_deg: f64, swap: bool },
    Even,
}

impl AngleStrategy {
    /// Fixed angle with the swap rule enabled.
    pub fn fixed(theta_deg: f64) -> Result<Self> {
        Self::fixed_with_swap(theta_deg, true)
    }

    pub fn fixed_with_swap(theta_deg: f64, swap: bool) -> Result<Self> {
        let s = Self::Fixed { theta_deg, swap };
        s.validate()?;
        Ok(s)
    }

    pub const fn random(seed: u64) -> Self {
        Self::Random { seed }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::Fixed { theta_deg, .. } if !(0.0..=90.0).contains(&theta_deg) => {
                Err(Error::InvalidAngle(theta_deg))
            }
            _ => Ok(()),
        }
    }

    pub const fn kind(&self) -> &'static str {
        match self {
            Self::Random { .. } => "random",
            Self::Fixed { .. } => "fixed",
            Self::Even => "even",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitEvent {
    /// Internal node being divided.
    pub node: usize,
    pub target: Point,
    pub sister: Option<Point>,
    /// Position of the record's `left` child.
    pub child1: Point,
    /// Position of the record's `right` child.
    pub child2: Point,
    pub height: f64,
    pub n1: usize,
    pub n2: usize,
    /// The swap rule sent `child1` along `-u`.
    pub swapped: bool,
}

/// Leaf coordinates indexed by leaf id, plus the optional split trace.
#[derive(Debug, Clone, PartialEq)]
pub struct Embedding {
    coords: Vec<Point>,
    trace: Option<Vec<SplitEvent>>,
}

impl Embedding {
    pub fn from_coords(coords: Vec<Point>) -> Self {
        Self {
            coords,
            trace: None,
        }
    }

    pub fn coords(&self) -> &[Point] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Point> {
        self.coords
    }

    pub fn trace(&self) -> Option<&[SplitEvent]> {
        self.trace.as_deref()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn centroid(&self) -> Point {
        let n = self.coords.len().max(1) as f64;
        let (sx, sy) = self
            .coords
            .iter()
            .fold((0.0, 0.0), |(sx, sy), p| (sx + p[0], sy + p[1]));
        [sx / n, sy / n]
    }

    /// Applies `p -> s * R(angle) * p + offset` to every point.
    pub fn transformed(&self, angle: f64, scale: f64, offset: Point) -> Self {
        let (s, c) = libm::sincos(angle);
        let coords = self
            .coords
            .iter()
            .map(|p| {
                [
                    scale * (c * p[0] - s * p[1]) + offset[0],
                    scale * (s * p[0] + c * p[1]) + offset[1],
                ]
            })
            .collect();
        Self::from_coords(coords)
    }
}

#[inline]
fn rotate(v: Point, angle: f64) -> Point {
    let (s, c) = libm::sincos(angle);
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

#[inline]
fn dist(a: Point, b: Point) -> f64 {
    libm::hypot(a[0] - b[0], a[1] - b[1])
}

/// Rotation that puts both children of a split at the same distance from
/// the sister: `acos((l1 - l2) / 2L)`, with the cosine clamped to `[-1, 1]`.
/// Returned in radians.
pub fn even_angle(l1: f64, l2: f64, sister_dist: f64) -> f64 {
    libm::acos(((l1 - l2) / (2.0 * sister_dist)).clamp(-1.0, 1.0))
}

struct Split {
    child1: Point,
    child2: Point,
    swapped: bool,
}

fn split(
    target: Point,
    sister: Option<Point>,
    height: f64,
    n1: usize,
    n2: usize,
    strategy: &AngleStrategy,
    rng: Option<&mut Rng>,
) -> Split {
    let total = (n1 + n2) as f64;
    let l1 = height * n2 as f64 / total;
    let l2 = height * n1 as f64 / total;

    let towards_sister = sister.and_then(|s| {
        let len = dist(s, target);
        (len >= DEGENERATE_SISTER).then(|| ([(s[0] - target[0]) / len, (s[1] - target[1]) / len], len))
    });
    let reference = towards_sister.map_or([1.0, 0.0], |(dir, _)| dir);

    let mut swapped = false;
    let u = match *strategy {
        AngleStrategy::Random { seed } => {
            let u = match rng {
                Some(r) => r.uniform(),
                None => Rng::new(seed).uniform(),
            };
            rotate([1.0, 0.0], TAU * u)
        }
        _ if sister.is_none() => [1.0, 0.0],
        AngleStrategy::Fixed { theta_deg, swap } => {
            swapped = swap && n1 > n2;
            rotate(reference, theta_deg.to_radians())
        }
        AngleStrategy::Even => {
            let theta = towards_sister.map_or(FRAC_PI_2, |(_, len)| even_angle(l1, l2, len));
            rotate(reference, theta)
        }
    };

    let (child1, child2) = if swapped {
        (
            [target[0] - l1 * u[0], target[1] - l1 * u[1]],
            [target[0] + l2 * u[0], target[1] + l2 * u[1]],
        )
    } else {
        (
            [target[0] + l1 * u[0], target[1] + l1 * u[1]],
            [target[0] - l2 * u[0], target[1] - l2 * u[1]],
        )
    };
    Split {
        child1,
        child2,
        swapped,
    }
}

/// One division: positions of the two children of a cluster at `target`
/// whose sister sits at `sister` (`None` for the root).
///
/// `rng` is only consulted by the random strategy; without one, a fresh
/// generator seeded from the strategy is used for this single draw.
pub fn division_step(
    target: Point,
    sister: Option<Point>,
    height: f64,
    n1: usize,
    n2: usize,
    strategy: &AngleStrategy,
    rng: Option<&mut Rng>,
) -> (Point, Point) {
    let s = split(target, sister, height, n1, n2, strategy, rng);
    (s.child1, s.child2)
}

/// Places every leaf of `d` in the plane.
pub fn branching_embed(d: &Dendrogram, strategy: &AngleStrategy) -> Result<Embedding> {
    embed_impl(d, strategy, false)
}

/// As [`branching_embed`], also recording every [`SplitEvent`] in
/// processing order.
pub fn branching_embed_traced(d: &Dendrogram, strategy: &AngleStrategy) -> Result<Embedding> {
    embed_impl(d, strategy, true)
}

fn embed_impl(d: &Dendrogram, strategy: &AngleStrategy, record: bool) -> Result<Embedding> {
    strategy.validate()?;
    let n = d.n_leaves();
    let mut rng = match *strategy {
        AngleStrategy::Random { seed } => Some(Rng::new(seed)),
        _ => None,
    };
    let mut pos = vec![[0.0f64; 2]; d.n_nodes()];
    let mut sister = vec![usize::MAX; d.n_nodes()];
    let mut trace = if record {
        Some(Vec::with_capacity(n - 1))
    } else {
        None
    };

    // breadth-first from the root; a split only needs its own and its
    // sister's position, both fixed by the time it is dequeued
    let mut queue = VecDeque::with_capacity(n);
    queue.push_back(d.root());
    while let Some(node) = queue.pop_front() {
        let Some(rec) = d.record(node) else { continue };
        let target = pos[node];
        let sister_pos = (sister[node] != usize::MAX).then(|| pos[sister[node]]);
        let (n1, n2) = (d.size(rec.left), d.size(rec.right));
        let s = split(target, sister_pos, rec.height, n1, n2, strategy, rng.as_mut());
        pos[rec.left] = s.child1;
        pos[rec.right] = s.child2;
        sister[rec.left] = rec.right;
        sister[rec.right] = rec.left;
        if let Some(t) = trace.as_mut() {
            t.push(SplitEvent {
                node,
                target,
                sister: sister_pos,
                child1: s.child1,
                child2: s.child2,
                height: rec.height,
                n1,
                n2,
                swapped: s.swapped,
            });
        }
        for child in [rec.left, rec.right] {
            if !d.is_leaf(child) {
                queue.push_back(child);
            }
        }
    }

    pos.truncate(n);
    Ok(Embedding { coords: pos, trace })
}

/// Places the leaves on the x-axis in leaf order, each adjacent pair
/// separated by its cophenetic distance, then centers the result.
///
/// Reclustering this layout with Euclidean single linkage reproduces the
/// original cophenetic matrix.
pub fn line_embed(d: &Dendrogram) -> Embedding {
    enum Step {
        Visit(usize),
        Gap(f64),
    }
    let n = d.n_leaves();
    let mut xs = vec![0.0f64; n];
    let mut x = 0.0;
    let mut stack = vec![Step::Visit(d.root())];
    // in-order walk: the gap between the left and right subtrees is the
    // height of the node joining them
    while let Some(step) = stack.pop() {
        match step {
            Step::Gap(h) => x += h,
            Step::Visit(node) => match d.record(node) {
                Some(rec) => {
                    stack.push(Step::Visit(rec.right));
                    stack.push(Step::Gap(rec.height));
                    stack.push(Step::Visit(rec.left));
                }
                None => xs[node] = x,
            },
        }
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    Embedding::from_coords(xs.into_iter().map(|x| [x - mean, 0.0]).collect())
}
