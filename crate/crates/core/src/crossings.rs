//! Crossing pairs read off 4-vertex sub-systems, and empty star triangles.
//!
//! In a good drawing of `K_4` the rotation system fixes whether the drawing
//! is planar or which of the three disjoint edge pairs crosses. Since every
//! sub-drawing of a good drawing is good, the crossing pairs of a realizable
//! system of `K_n` are the union of its `K_4` lookups.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::rotation::{Edge, RotationSystem, VertexId};
use crate::triangles::Triangle;

/// A pair of edges that cross, smaller edge first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CrossingPair(Edge, Edge);

impl CrossingPair {
    pub fn new(e: Edge, f: Edge) -> Self {
        assert!(!e.shares_endpoint(f), "adjacent edges cannot cross");
        if e < f {
            CrossingPair(e, f)
        } else {
            CrossingPair(f, e)
        }
    }

    pub fn edges(self) -> (Edge, Edge) {
        (self.0, self.1)
    }

    pub fn involves(self, e: Edge) -> bool {
        self.0 == e || self.1 == e
    }
}

impl fmt::Display for CrossingPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// Set of crossing pairs of a drawing of `K_n`, with per-edge bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingSet {
    n: usize,
    pairs: BTreeSet<CrossingPair>,
    crossers: Vec<u128>,
}

impl CrossingSet {
    pub fn new(n: usize) -> Self {
        CrossingSet { n, pairs: BTreeSet::new(), crossers: vec![0; n * (n - 1) / 2] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = CrossingPair>) -> Self {
        let mut set = CrossingSet::new(n);
        for p in pairs {
            set.insert(p);
        }
        set
    }

    pub fn insert(&mut self, p: CrossingPair) -> bool {
        let (e, f) = p.edges();
        self.crossers[e.index(self.n)] |= f.bit(self.n);
        self.crossers[f.index(self.n)] |= e.bit(self.n);
        self.pairs.insert(p)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, e: Edge, f: Edge) -> bool {
        self.crossers[e.index(self.n)] & f.bit(self.n) != 0
    }

    pub fn iter(&self) -> impl Iterator<Item = CrossingPair> + '_ {
        self.pairs.iter().copied()
    }

    /// Bit mask (by edge index) of the edges crossing `e`.
    pub fn crossers_mask(&self, e: Edge) -> u128 {
        self.crossers[e.index(self.n)]
    }

    pub fn crossers(&self, e: Edge) -> impl Iterator<Item = Edge> + '_ {
        let mask = self.crossers_mask(e);
        let n = self.n;
        all_edges(n).filter(move |f| mask & f.bit(n) != 0)
    }
}

fn all_edges(n: usize) -> impl Iterator<Item = Edge> {
    (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| Edge::of(a, b)))
}

/// Mask of the edges incident to `v`.
pub(crate) fn star_mask(n: usize, v: VertexId) -> u128 {
    (1..=n)
        .filter(|&u| u != v.get())
        .fold(0, |m, u| m | Edge::of(u, v.get()).bit(n))
}

/// Is the counterclockwise cyclic order of `(x, y, z)` (given by positions) ascending?
#[inline]
fn ascending(px: u32, py: u32, pz: u32) -> bool {
    (px < py && py < pz) || (py < pz && pz < px) || (pz < px && px < py)
}

/// Index in `0..16` of the 4-vertex sub-system on `verts` (sorted, 0-based):
/// bit `i` is set when the rotation at the `i`-th vertex is the descending
/// cyclic order of the other three.
#[inline]
pub fn k4_index_by(verts: [usize; 4], pos: impl Fn(usize, usize) -> u32) -> usize {
    let mut idx = 0;
    for i in 0..4 {
        let c = verts[i];
        let mut o = [0usize; 3];
        let mut k = 0;
        for (j, &v) in verts.iter().enumerate() {
            if j != i {
                o[k] = v;
                k += 1;
            }
        }
        if !ascending(pos(c, o[0]), pos(c, o[1]), pos(c, o[2])) {
            idx |= 1 << i;
        }
    }
    idx
}

/// Index in `0..7776` of the 5-vertex sub-system on `verts` (sorted, 0-based):
/// base-6 digits, one per vertex, ranking the cyclic order of the other four.
#[inline]
pub fn k5_index_by(verts: [usize; 5], pos: impl Fn(usize, usize) -> u32) -> usize {
    let mut idx = 0;
    for i in (0..5).rev() {
        let c = verts[i];
        // local ranks 0..4 of the others, ordered by position around c
        let mut others = [(0u32, 0u8); 4];
        let mut k = 0;
        for (j, &v) in verts.iter().enumerate() {
            if j != i {
                others[k] = (pos(c, v), k as u8);
                k += 1;
            }
        }
        others.sort_unstable();
        let start = others.iter().position(|o| o.1 == 0).unwrap();
        let seq = [others[(start + 1) % 4].1, others[(start + 2) % 4].1, others[(start + 3) % 4].1];
        // seq is a permutation of 1, 2, 3
        let rank = (seq[0] as usize - 1) * 2 + (seq[1] > seq[2]) as usize;
        idx = idx * 6 + rank;
    }
    idx
}

/// The `K_4` system with the given index.
pub fn k4_system(index: usize) -> RotationSystem {
    assert!(index < 16);
    let rows = (0..4)
        .map(|i| {
            let mut o: Vec<usize> = (1..=4).filter(|&x| x != i + 1).collect();
            if index >> i & 1 == 1 {
                o.swap(1, 2);
            }
            o
        })
        .collect();
    RotationSystem::new(rows).unwrap()
}

/// The `K_5` system with the given index.
pub fn k5_system(index: usize) -> RotationSystem {
    assert!(index < 7776);
    let mut rest = index;
    let rows = (0..5)
        .map(|i| {
            let rank = rest % 6;
            rest /= 6;
            let o: Vec<usize> = (1..=5).filter(|&x| x != i + 1).collect();
            let first = rank / 2;
            let mut tail: Vec<usize> = (0..3).filter(|&x| x != first).collect();
            if rank % 2 == 1 {
                tail.swap(0, 1);
            }
            vec![o[0], o[1 + first], o[1 + tail[0]], o[1 + tail[1]]]
        })
        .collect();
    RotationSystem::new(rows).unwrap()
}

pub fn k4_index(rs: &RotationSystem) -> usize {
    assert_eq!(rs.n(), 4);
    let pos = rs.position_table();
    k4_index_by([0, 1, 2, 3], |c, x| pos[c][x] as u32)
}

pub fn k5_index(rs: &RotationSystem) -> usize {
    assert_eq!(rs.n(), 5);
    let pos = rs.position_table();
    k5_index_by([0, 1, 2, 3, 4], |c, x| pos[c][x] as u32)
}

/// What a `K_4` rotation system admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum K4Outcome {
    Unrealizable,
    Planar,
    /// The crossing pair, in the labels `1..=4` of the sub-system.
    Crossing(CrossingPair),
}

impl K4Outcome {
    pub fn is_realizable(self) -> bool {
        !matches!(self, K4Outcome::Unrealizable)
    }
}

/// Outcome for each of the 16 rotation systems of `K_4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K4CrossingTable {
    entries: [K4Outcome; 16],
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("table line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl K4CrossingTable {
    pub fn from_entries(entries: [K4Outcome; 16]) -> Self {
        K4CrossingTable { entries }
    }

    pub fn get(&self, rs: &RotationSystem) -> K4Outcome {
        self.entries[k4_index(rs)]
    }

    #[inline]
    pub fn by_index(&self, index: usize) -> K4Outcome {
        self.entries[index]
    }

    pub fn entries(&self) -> &[K4Outcome; 16] {
        &self.entries
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("k4-table v1\n");
        for (i, e) in self.entries.iter().enumerate() {
            match e {
                K4Outcome::Unrealizable => s.push_str(&format!("{i} unrealizable\n")),
                K4Outcome::Planar => s.push_str(&format!("{i} planar\n")),
                K4Outcome::Crossing(p) => {
                    let (a, b) = p.edges();
                    s.push_str(&format!("{i} crossing {a} {b}\n"));
                }
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self, TableError> {
        let err = |line: usize, message: &str| TableError::Parse { line, message: message.into() };
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, "k4-table v1")) => {}
            _ => return Err(err(1, "missing header")),
        }
        let mut entries = [None; 16];
        for (i, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let idx: usize = f
                .first()
                .and_then(|x| x.parse().ok())
                .filter(|&x: &usize| x < 16)
                .ok_or_else(|| err(i + 1, "bad index"))?;
            let edge = |t: &str| -> Option<Edge> {
                let d: Vec<usize> = t.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
                (d.len() == 2 && d[0] != d[1] && d.iter().all(|&x| (1..=4).contains(&x))).then(|| Edge::of(d[0], d[1]))
            };
            let outcome = match f.get(1..) {
                Some(["unrealizable"]) => K4Outcome::Unrealizable,
                Some(["planar"]) => K4Outcome::Planar,
                Some(["crossing", a, b]) => match (edge(a), edge(b)) {
                    (Some(a), Some(b)) if !a.shares_endpoint(b) => K4Outcome::Crossing(CrossingPair::new(a, b)),
                    _ => return Err(err(i + 1, "bad crossing pair")),
                },
                _ => return Err(err(i + 1, "bad outcome")),
            };
            entries[idx] = Some(outcome);
        }
        let mut out = [K4Outcome::Unrealizable; 16];
        for (i, e) in entries.iter().enumerate() {
            out[i] = e.ok_or_else(|| err(0, "incomplete table"))?;
        }
        Ok(K4CrossingTable { entries: out })
    }
}

/// Realizability flag for each of the 7776 rotation systems of `K_5`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K5RealizabilityTable {
    realizable: Vec<bool>,
}

impl K5RealizabilityTable {
    pub fn from_flags(realizable: Vec<bool>) -> Self {
        assert_eq!(realizable.len(), 7776);
        K5RealizabilityTable { realizable }
    }

    #[inline]
    pub fn by_index(&self, index: usize) -> bool {
        self.realizable[index]
    }

    pub fn count(&self) -> usize {
        self.realizable.iter().filter(|&&b| b).count()
    }
}

/// A 4-vertex sub-system that no good drawing realizes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("sub-system on {{{},{},{},{}}} is unrealizable", .0[0], .0[1], .0[2], .0[3])]
pub struct UnrealizableSubset(pub [VertexId; 4]);

/// Crossing pairs forced by the `K_4` sub-systems. Fails if some 4-subset
/// is unrealizable, which certifies that `rs` is unrealizable.
pub fn crossing_pairs(rs: &RotationSystem, table: &K4CrossingTable) -> Result<CrossingSet, UnrealizableSubset> {
    let n = rs.n();
    let pos = rs.position_table();
    let mut set = CrossingSet::new(n);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = [a, b, c, d];
                    let idx = k4_index_by(q, |x, y| pos[x][y] as u32);
                    match table.by_index(idx) {
                        K4Outcome::Unrealizable => {
                            return Err(UnrealizableSubset(q.map(VertexId::from_index)));
                        }
                        K4Outcome::Planar => {}
                        K4Outcome::Crossing(p) => {
                            let lift = |e: Edge| Edge::new(VertexId::from_index(q[e.lo().index()]), VertexId::from_index(q[e.hi().index()]));
                            let (e, f) = p.edges();
                            set.insert(CrossingPair::new(lift(e), lift(f)));
                        }
                    }
                }
            }
        }
    }
    Ok(set)
}

/// Triangles `{v, u, w}` with `u, w` consecutive around `v` whose edge `uw`
/// is crossed by no edge at `v`. In a good drawing these are exactly the
/// empty star triangles at `v`.
pub fn empty_star_triangles(rs: &RotationSystem, v: VertexId, crossings: &CrossingSet) -> Vec<Triangle> {
    let n = rs.n();
    let star = star_mask(n, v);
    let r = rs.rotation(v);
    let mut out: Vec<Triangle> = (0..r.len())
        .map(|i| (r[i], r[(i + 1) % r.len()]))
        .filter(|&(u, w)| crossings.crossers_mask(Edge::new(u, w)) & star == 0)
        .map(|(u, w)| Triangle::new(v, u, w).unwrap())
        .collect();
    out.sort();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_index_round_trips() {
        for i in 0..16 {
            assert_eq!(k4_index(&k4_system(i)), i);
        }
        // every rotation of the convex quadrilateral is ascending
        assert_eq!(k4_index(&RotationSystem::convex(4).unwrap()), 0);
    }

    #[test]
    fn k5_index_round_trips() {
        for i in (0..7776).step_by(7) {
            assert_eq!(k5_index(&k5_system(i)), i);
        }
        assert_eq!(k5_index(&k5_system(7775)), 7775);
    }

    #[test]
    fn table_text_round_trip() {
        let mut entries = [K4Outcome::Unrealizable; 16];
        entries[3] = K4Outcome::Planar;
        entries[5] = K4Outcome::Crossing(CrossingPair::new(Edge::of(1, 3), Edge::of(2, 4)));
        let t = K4CrossingTable::from_entries(entries);
        assert_eq!(K4CrossingTable::from_text(&t.to_text()).unwrap(), t);
        assert!(K4CrossingTable::from_text("k4-table v1\n0 planar\n").is_err());
    }

    #[test]
    fn crossing_set_masks() {
        let mut s = CrossingSet::new(5);
        s.insert(CrossingPair::new(Edge::of(2, 5), Edge::of(1, 3)));
        assert!(s.contains(Edge::of(1, 3), Edge::of(2, 5)));
        assert!(s.contains(Edge::of(2, 5), Edge::of(1, 3)));
        assert!(!s.contains(Edge::of(1, 4), Edge::of(2, 5)));
        assert_eq!(s.crossers(Edge::of(2, 5)).collect::<Vec<_>>(), vec![Edge::of(1, 3)]);
    }
}
