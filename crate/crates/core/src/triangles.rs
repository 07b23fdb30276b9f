//! Triangle emptiness decided from the rotation system alone.
//!
//! For the cyclically ordered triple `(a, b, c)` with `a < b < c`, the right
//! sequence at each triangle vertex runs counterclockwise from the edge to its
//! cyclic predecessor in the triple to the edge to its cyclic successor: at
//! `b` from `ba` to `bc`, at `a` from `ac` to `ab`, at `c` from `cb` to `ca`.
//! Every other vertex lies in at least two right sequences or in at least two
//! left ones, which places it on one side of the triangle.

use std::fmt;

use thiserror::Error;

use crate::rotation::{RotationSystem, VertexId};

/// An unordered triple of distinct vertices, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([VertexId; 3]);

impl Triangle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Result<Self, TriangleError> {
        if a == b || b == c || a == c {
            return Err(TriangleError::NotDistinct);
        }
        let mut t = [a, b, c];
        t.sort();
        Ok(Triangle(t))
    }

    /// From 1-based labels; panics on repeated labels.
    pub fn of(a: usize, b: usize, c: usize) -> Self {
        Triangle::new(VertexId::new(a), VertexId::new(b), VertexId::new(c)).expect("distinct labels")
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// The two vertices other than `apex`, in increasing order.
    pub fn opposite(&self, apex: VertexId) -> Option<(VertexId, VertexId)> {
        let rest: Vec<VertexId> = self.0.iter().copied().filter(|&x| x != apex).collect();
        (rest.len() == 2).then(|| (rest[0], rest[1]))
    }

    fn check_range(&self, n: usize) -> Result<(), TriangleError> {
        match self.0.iter().find(|v| v.get() > n) {
            Some(v) => Err(TriangleError::OutOfRange(v.get())),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{},{}}}", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TriangleError {
    #[error("triangle vertices must be pairwise distinct")]
    NotDistinct,
    #[error("triangle vertex {0} out of range")]
    OutOfRange(usize),
    #[error("operation needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
}

/// The two sides of a triangle, as an unordered pair of disjoint vertex sets.
///
/// Normalized so that `side_a` holds the smallest vertex not on the triangle
/// (or both sides are empty); two partitions are equal iff they split the
/// remaining vertices the same way.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SidePartition {
    pub side_a: Vec<VertexId>,
    pub side_b: Vec<VertexId>,
}

impl SidePartition {
    pub fn from_sides(mut x: Vec<VertexId>, mut y: Vec<VertexId>) -> Self {
        x.sort();
        y.sort();
        let swap = match (x.first(), y.first()) {
            (None, Some(_)) => true,
            (Some(a), Some(b)) => b < a,
            _ => false,
        };
        if swap {
            std::mem::swap(&mut x, &mut y);
        }
        SidePartition { side_a: x, side_b: y }
    }

    pub fn is_empty_triangle(&self) -> bool {
        self.side_a.is_empty() || self.side_b.is_empty()
    }

    /// True iff `v` is alone on its side.
    pub fn isolates(&self, v: VertexId) -> bool {
        self.side_a == [v] || self.side_b == [v]
    }
}

impl fmt::Display for SidePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |s: &[VertexId]| s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "{{{{{}}}, {{{}}}}}", show(&self.side_a), show(&self.side_b))
    }
}

/// Precomputed rotation positions for repeated triangle queries.
pub struct TriangleOracle<'a> {
    rs: &'a RotationSystem,
    pos: Vec<Vec<usize>>,
}

impl<'a> TriangleOracle<'a> {
    pub fn new(rs: &'a RotationSystem) -> Self {
        TriangleOracle { rs, pos: rs.position_table() }
    }

    /// Is `x` strictly inside the counterclockwise sweep at `center` from `from` to `to`?
    fn in_sweep(&self, center: usize, from: usize, to: usize, x: usize) -> bool {
        let w = self.rs.n() - 1;
        let p = &self.pos[center];
        let dx = (p[x] + w - p[from]) % w;
        let dt = (p[to] + w - p[from]) % w;
        dx < dt
    }

    /// Right and left sides of the cyclically ordered triangle.
    pub fn oriented_sides(&self, t: &Triangle) -> (Vec<VertexId>, Vec<VertexId>) {
        let [a, b, c] = t.vertices().map(|v| v.index());
        let mut right = Vec::new();
        let mut left = Vec::new();
        for x in 0..self.rs.n() {
            if x == a || x == b || x == c {
                continue;
            }
            let votes = self.in_sweep(a, c, b, x) as u8
                + self.in_sweep(b, a, c, x) as u8
                + self.in_sweep(c, b, a, x) as u8;
            if votes >= 2 {
                right.push(VertexId::from_index(x));
            } else {
                left.push(VertexId::from_index(x));
            }
        }
        (right, left)
    }

    pub fn side_partition(&self, t: &Triangle) -> SidePartition {
        let (r, l) = self.oriented_sides(t);
        SidePartition::from_sides(r, l)
    }

    pub fn is_empty(&self, t: &Triangle) -> bool {
        self.side_partition(t).is_empty_triangle()
    }
}

/// Partition of the remaining vertices by the triangle `t`.
pub fn side_partition(rs: &RotationSystem, t: &Triangle) -> Result<SidePartition, TriangleError> {
    t.check_range(rs.n())?;
    Ok(TriangleOracle::new(rs).side_partition(t))
}

/// Emptiness of `t`; always true for `K_3`.
pub fn is_empty(rs: &RotationSystem, t: &Triangle) -> Result<bool, TriangleError> {
    Ok(side_partition(rs, t)?.is_empty_triangle())
}

/// All triangles of `K_n` in lexicographic order.
pub fn all_triangles(n: usize) -> impl Iterator<Item = Triangle> {
    (1..=n).flat_map(move |a| {
        (a + 1..=n).flat_map(move |b| (b + 1..=n).map(move |c| Triangle::of(a, b, c)))
    })
}

/// Empty triangles in lexicographic order.
pub fn empty_triangles(rs: &RotationSystem) -> Vec<Triangle> {
    let oracle = TriangleOracle::new(rs);
    all_triangles(rs.n()).filter(|t| oracle.is_empty(t)).collect()
}

/// Per-vertex counts: `t` empty triangles at the vertex, `l` triangles in
/// which the vertex is alone on one side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexStats {
    pub t: usize,
    pub l: usize,
    pub lucky: bool,
}

/// Everything the triangle layer knows about one system.
#[derive(Clone, Debug)]
pub struct TriangleAnalysis {
    pub empty: Vec<Triangle>,
    pub stats: Vec<VertexStats>,
}

impl TriangleAnalysis {
    pub fn lucky_count(&self) -> usize {
        self.stats.iter().filter(|s| s.lucky).count()
    }
}

/// Empty triangles plus `t`, `l` and luckiness of every vertex. Needs `n >= 4`.
pub fn analyze(rs: &RotationSystem) -> Result<TriangleAnalysis, TriangleError> {
    if rs.n() < 4 {
        return Err(TriangleError::TooFewVertices(rs.n()));
    }
    Ok(analyze_any(rs))
}

/// [`analyze`] without the size check; at `n = 3` the counts are trivial.
pub(crate) fn analyze_any(rs: &RotationSystem) -> TriangleAnalysis {
    let n = rs.n();
    let oracle = TriangleOracle::new(rs);
    let mut t = vec![0usize; n];
    let mut l = vec![0usize; n];
    let mut empty = Vec::new();
    for tri in all_triangles(n) {
        let part = oracle.side_partition(&tri);
        if part.is_empty_triangle() {
            for v in tri.vertices() {
                t[v.index()] += 1;
            }
            empty.push(tri);
        }
        for side in [&part.side_a, &part.side_b] {
            if let [v] = side.as_slice() {
                l[v.index()] += 1;
            }
        }
    }
    let stats = (0..n)
        .map(|i| VertexStats { t: t[i], l: l[i], lucky: t[i] >= l[i] + 2 })
        .collect();
    TriangleAnalysis { empty, stats }
}

pub fn vertex_stats(rs: &RotationSystem, v: VertexId) -> Result<VertexStats, TriangleError> {
    if v.get() > rs.n() {
        return Err(TriangleError::OutOfRange(v.get()));
    }
    Ok(analyze(rs)?.stats[v.index()])
}
