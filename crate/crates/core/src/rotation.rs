//! Rotation systems of complete graphs.
//!
//! A rotation system of `K_n` lists, for every vertex, the cyclic order in
//! which its `n - 1` incident edges leave it. All rotations use the same
//! global direction, called counterclockwise throughout this crate. Each
//! cyclic sequence is stored starting at its smallest entry so that two
//! systems describing the same cyclic orders compare equal.

use std::fmt;

use thiserror::Error;

/// Largest supported vertex count. Edge sets are packed into `u128` masks.
pub const MAX_VERTICES: usize = 16;

/// A 1-based vertex label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(u8);

impl VertexId {
    /// Panics if `label` is 0 or exceeds [`MAX_VERTICES`].
    pub fn new(label: usize) -> Self {
        assert!(
            (1..=MAX_VERTICES).contains(&label),
            "vertex label {label} out of range"
        );
        VertexId(label as u8)
    }

    pub(crate) fn from_index(index: usize) -> Self {
        VertexId::new(index + 1)
    }

    /// The 1-based label.
    pub fn get(self) -> usize {
        self.0 as usize
    }

    /// The 0-based index.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An unordered pair of distinct vertices, stored with the smaller label first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(VertexId, VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    /// Convenience constructor from 1-based labels.
    pub fn of(a: usize, b: usize) -> Self {
        Edge::new(VertexId::new(a), VertexId::new(b))
    }

    pub fn lo(self) -> VertexId {
        self.0
    }

    pub fn hi(self) -> VertexId {
        self.1
    }

    pub fn contains(self, v: VertexId) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn shares_endpoint(self, other: Edge) -> bool {
        self.contains(other.0) || self.contains(other.1)
    }

    /// The endpoint that is not `v`.
    pub fn other(self, v: VertexId) -> VertexId {
        if self.0 == v {
            self.1
        } else {
            debug_assert_eq!(self.1, v);
            self.0
        }
    }

    /// Position of this edge in the lexicographic order of all edges of `K_n`.
    pub fn index(self, n: usize) -> usize {
        edge_index(n, self.0.index(), self.1.index())
    }

    pub(crate) fn bit(self, n: usize) -> u128 {
        1u128 << self.index(n)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.get() < 10 {
            write!(f, "{}{}", self.0, self.1)
        } else {
            write!(f, "{}-{}", self.0, self.1)
        }
    }
}

/// Lexicographic index of the edge `{a, b}` (0-based, `a < b`) in `K_n`.
pub(crate) fn edge_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Ways in which a list of rotations fails to be a rotation system of `K_n`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("a rotation system needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("at most {MAX_VERTICES} vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("self-reference at {vertex}")]
    SelfReference { vertex: usize },
    #[error("neighbor {neighbor} out of range at {vertex}")]
    OutOfRange { vertex: usize, neighbor: usize },
    #[error("duplicate neighbor {neighbor} at {vertex}")]
    Duplicate { vertex: usize, neighbor: usize },
    #[error("missing neighbor {neighbor} at {vertex}")]
    Missing { vertex: usize, neighbor: usize },
}

/// Checks that `rotations[i]` (the rotation of vertex `i + 1`) is a
/// permutation of all other labels `1..=n`, reporting the first offence.
pub fn validate(rotations: &[Vec<usize>]) -> Result<(), Violation> {
    let n = rotations.len();
    if n < 3 {
        return Err(Violation::TooFewVertices(n));
    }
    if n > MAX_VERTICES {
        return Err(Violation::TooManyVertices(n));
    }
    for (i, rot) in rotations.iter().enumerate() {
        let vertex = i + 1;
        let mut seen = vec![false; n + 1];
        for &w in rot {
            if w == vertex {
                return Err(Violation::SelfReference { vertex });
            }
            if w == 0 || w > n {
                return Err(Violation::OutOfRange { vertex, neighbor: w });
            }
            if seen[w] {
                return Err(Violation::Duplicate { vertex, neighbor: w });
            }
            seen[w] = true;
        }
        if let Some(neighbor) = (1..=n).find(|&w| w != vertex && !seen[w]) {
            return Err(Violation::Missing { vertex, neighbor });
        }
    }
    Ok(())
}

/// Errors of the operations that build new systems from old ones.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RotationError {
    #[error(transparent)]
    Invalid(#[from] Violation),
    #[error("permutation is not a bijection on 1..={0}")]
    NotABijection(usize),
    #[error("subset must have at least 3 distinct vertices in range")]
    BadSubset,
}

/// Rotation system of `K_n`, phase-normalized.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RotationSystem {
    n: usize,
    // n rows of n - 1 labels, row v holds the rotation of vertex v + 1
    rot: Vec<VertexId>,
}

impl RotationSystem {
    /// Builds a system from 1-based rotations; `rotations[i]` belongs to vertex `i + 1`.
    pub fn new(rotations: Vec<Vec<usize>>) -> Result<Self, Violation> {
        validate(&rotations)?;
        let n = rotations.len();
        let mut rot = Vec::with_capacity(n * (n - 1));
        for r in &rotations {
            let start = (0..r.len()).min_by_key(|&i| r[i]).unwrap();
            rot.extend((0..r.len()).map(|k| VertexId::new(r[(start + k) % r.len()])));
        }
        Ok(RotationSystem { n, rot })
    }

    pub(crate) fn from_normalized_labels(n: usize, flat: Vec<VertexId>) -> Self {
        debug_assert_eq!(flat.len(), n * (n - 1));
        RotationSystem { n, rot: flat }
    }

    /// Rotation system of `n` points in convex position labeled
    /// counterclockwise along the hull: vertex `i` sees `i+1, ..., i+n-1` (mod n).
    pub fn convex(n: usize) -> Result<Self, Violation> {
        if n < 3 {
            return Err(Violation::TooFewVertices(n));
        }
        let rotations = (1..=n)
            .map(|i| (1..n).map(|k| (i - 1 + k) % n + 1).collect())
            .collect();
        RotationSystem::new(rotations)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (1..=self.n).map(VertexId::new)
    }

    /// All edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> {
        let n = self.n;
        (1..=n).flat_map(move |a| (a + 1..=n).map(move |b| Edge::of(a, b)))
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Counterclockwise rotation at `v`, starting at its smallest neighbor.
    pub fn rotation(&self, v: VertexId) -> &[VertexId] {
        let w = self.n - 1;
        &self.rot[v.index() * w..(v.index() + 1) * w]
    }

    /// Flat phase-normalized labels, row by row.
    pub fn as_labels(&self) -> &[VertexId] {
        &self.rot
    }

    /// Neighbor following `u` counterclockwise around `v`.
    pub fn successor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = self.rotation(v);
        let i = r.iter().position(|&x| x == u).expect("not a neighbor");
        r[(i + 1) % r.len()]
    }

    /// Neighbor preceding `u` counterclockwise around `v`.
    pub fn predecessor(&self, v: VertexId, u: VertexId) -> VertexId {
        let r = self.rotation(v);
        let i = r.iter().position(|&x| x == u).expect("not a neighbor");
        r[(i + r.len() - 1) % r.len()]
    }

    /// `pos[v][u]` = index of `u` in the rotation of `v` (0-based indices).
    pub fn position_table(&self) -> Vec<Vec<usize>> {
        let mut pos = vec![vec![usize::MAX; self.n]; self.n];
        for v in self.vertices() {
            for (k, u) in self.rotation(v).iter().enumerate() {
                pos[v.index()][u.index()] = k;
            }
        }
        pos
    }

    fn rows(&self) -> Vec<Vec<usize>> {
        self.vertices()
            .map(|v| self.rotation(v).iter().map(|u| u.get()).collect())
            .collect()
    }

    /// Renames every vertex `v` to `perm[v - 1]` (1-based images).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self, RotationError> {
        let n = self.n;
        let mut seen = vec![false; n + 1];
        if perm.len() != n {
            return Err(RotationError::NotABijection(n));
        }
        for &p in perm {
            if p == 0 || p > n || seen[p] {
                return Err(RotationError::NotABijection(n));
            }
            seen[p] = true;
        }
        let mut rows = vec![Vec::new(); n];
        for v in self.vertices() {
            rows[perm[v.index()] - 1] = self
                .rotation(v)
                .iter()
                .map(|u| perm[u.index()])
                .collect();
        }
        Ok(RotationSystem::new(rows)?)
    }

    /// Reflection: every rotation reversed.
    pub fn mirror(&self) -> Self {
        let rows = self
            .rows()
            .into_iter()
            .map(|mut r| {
                r.reverse();
                r
            })
            .collect();
        RotationSystem::new(rows).expect("mirror of a valid system is valid")
    }

    /// Sub-system induced by `subset`, relabeled `1..=|subset|` in increasing
    /// label order.
    pub fn restrict(&self, subset: &[VertexId]) -> Result<Self, RotationError> {
        let mut keep: Vec<VertexId> = subset.to_vec();
        keep.sort();
        keep.dedup();
        if keep.len() < 3 || keep.len() != subset.len() || keep.iter().any(|v| v.get() > self.n) {
            return Err(RotationError::BadSubset);
        }
        let mut new_label = vec![0usize; self.n];
        for (k, v) in keep.iter().enumerate() {
            new_label[v.index()] = k + 1;
        }
        let rows = keep
            .iter()
            .map(|&v| {
                self.rotation(v)
                    .iter()
                    .filter(|u| new_label[u.index()] != 0)
                    .map(|u| new_label[u.index()])
                    .collect()
            })
            .collect();
        Ok(RotationSystem::new(rows)?)
    }

    /// Deletes one vertex; the remaining labels above it shift down by one.
    pub fn remove_vertex(&self, v: VertexId) -> Result<Self, RotationError> {
        let keep: Vec<VertexId> = self.vertices().filter(|&u| u != v).collect();
        self.restrict(&keep)
    }

    /// Serializes in the `.rot` text format.
    pub fn to_rot_string(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for v in self.vertices() {
            let row: Vec<String> = self.rotation(v).iter().map(|u| u.to_string()).collect();
            s.push_str(&format!("{}: {}\n", v, row.join(" ")));
        }
        s
    }
}

impl fmt::Debug for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for v in self.vertices() {
            if v.get() > 1 {
                write!(f, ", ")?;
            }
            write!(f, "{}:(", v)?;
            for (k, u) in self.rotation(v).iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", u)?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

/// Parse failure in a `.rot` file, with the 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

/// Parses the `.rot` format: a vertex count line followed by one
/// `i: p1 ... p_{n-1}` line per vertex. Lines starting with `#` are comments.
pub fn parse_rot(text: &str) -> Result<RotationSystem, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let err = |line: usize, message: String| ParseError { line, message };

    let (first, header) = lines.next().ok_or_else(|| err(1, "empty input".into()))?;
    let n: usize = header
        .parse()
        .map_err(|_| err(first, format!("expected vertex count, found {header:?}")))?;
    if !(3..=MAX_VERTICES).contains(&n) {
        return Err(err(first, format!("vertex count {n} outside 3..={MAX_VERTICES}")));
    }
    let mut rows: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut last = first;
    for (line, body) in lines {
        last = line;
        let (head, rest) = body
            .split_once(':')
            .ok_or_else(|| err(line, "expected \"i: p1 p2 ...\"".into()))?;
        let v: usize = head
            .trim()
            .parse()
            .map_err(|_| err(line, format!("bad vertex label {:?}", head.trim())))?;
        if v == 0 || v > n {
            return Err(err(line, format!("vertex {v} out of range")));
        }
        if rows[v - 1].is_some() {
            return Err(err(line, format!("vertex {v} listed twice")));
        }
        let row = rest
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| err(line, format!("bad label {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n - 1 {
            return Err(err(
                line,
                format!("vertex {v} lists {} neighbors, expected {}", row.len(), n - 1),
            ));
        }
        rows[v - 1] = Some(row);
    }
    let rows: Vec<Vec<usize>> = rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| err(last, format!("no rotation for vertex {}", i + 1))))
        .collect::<Result<_, _>>()?;
    RotationSystem::new(rows).map_err(|v| err(last, v.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(rows: &[&[usize]]) -> RotationSystem {
        RotationSystem::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn convex_small_cases() {
        assert_eq!(
            RotationSystem::convex(4).unwrap(),
            rs(&[&[2, 3, 4], &[3, 4, 1], &[4, 1, 2], &[1, 2, 3]])
        );
        assert_eq!(RotationSystem::convex(3).unwrap(), rs(&[&[2, 3], &[3, 1], &[1, 2]]));
        let c5 = RotationSystem::convex(5).unwrap();
        // phase normalized form of (4, 5, 1, 2)
        assert_eq!(
            c5.rotation(VertexId::new(3)).iter().map(|v| v.get()).collect::<Vec<_>>(),
            vec![1, 2, 4, 5]
        );
        assert!(RotationSystem::convex(2).is_err());
    }

    #[test]
    fn validate_reports_offences() {
        let mut rows: Vec<Vec<usize>> = (1..=5)
            .map(|i| (1..=5).filter(|&j| j != i).collect())
            .collect();
        assert!(validate(&rows).is_ok());
        rows[0][0] = 1;
        assert_eq!(validate(&rows), Err(Violation::SelfReference { vertex: 1 }));
        assert_eq!(Violation::SelfReference { vertex: 1 }.to_string(), "self-reference at 1");

        let mut rows: Vec<Vec<usize>> = (1..=5)
            .map(|i| (1..=5).filter(|&j| j != i).collect())
            .collect();
        rows[1] = vec![1, 3, 4];
        assert_eq!(validate(&rows), Err(Violation::Missing { vertex: 2, neighbor: 5 }));
        assert!(validate(&rows).unwrap_err().to_string().starts_with("missing neighbor"));
        rows[1] = vec![1, 3, 3, 4];
        assert_eq!(validate(&rows), Err(Violation::Duplicate { vertex: 2, neighbor: 3 }));
        assert_eq!(validate(&rows[..2]), Err(Violation::TooFewVertices(2)));
    }

    #[test]
    fn phase_normalization_makes_equality_cyclic() {
        let a = rs(&[&[3, 2], &[1, 3], &[2, 1]]);
        let b = rs(&[&[2, 3], &[3, 1], &[1, 2]]);
        assert_eq!(a, b);
    }

    #[test]
    fn relabel_identity_inverse_and_cyclic_shift() {
        let c4 = RotationSystem::convex(4).unwrap();
        assert_eq!(c4.relabel(&[1, 2, 3, 4]).unwrap(), c4);
        assert_eq!(c4.relabel(&[2, 3, 4, 1]).unwrap(), c4);
        let p = [3, 1, 4, 2];
        let mut inv = [0; 4];
        for (i, &x) in p.iter().enumerate() {
            inv[x - 1] = i + 1;
        }
        assert_eq!(c4.relabel(&p).unwrap().relabel(&inv).unwrap(), c4);
        assert_eq!(c4.relabel(&[1, 1, 2, 3]), Err(RotationError::NotABijection(4)));
    }

    #[test]
    fn mirror_is_an_involution() {
        let c5 = RotationSystem::convex(5).unwrap();
        assert_ne!(c5.mirror(), c5);
        assert_eq!(c5.mirror().mirror(), c5);
        let c3 = RotationSystem::convex(3).unwrap();
        assert_eq!(c3.mirror(), c3);
    }

    #[test]
    fn restrict_deletes_vertices() {
        let c5 = RotationSystem::convex(5).unwrap();
        let sub = c5.restrict(&[1, 2, 3, 4].map(VertexId::new)).unwrap();
        assert_eq!(sub, RotationSystem::convex(4).unwrap());
        let all: Vec<VertexId> = c5.vertices().collect();
        assert_eq!(c5.restrict(&all).unwrap(), c5);
        assert_eq!(c5.restrict(&[VertexId::new(1), VertexId::new(2)]), Err(RotationError::BadSubset));
    }

    #[test]
    fn rot_text_round_trip_and_errors() {
        let c5 = RotationSystem::convex(5).unwrap();
        assert_eq!(parse_rot(&c5.to_rot_string()).unwrap(), c5);

        let text = "# planar K4\n4\n1: 2 4 3\n2: 3 4 1\n\n3: 1 4 2\n4: 1 2 3\n";
        let planar = parse_rot(text).unwrap();
        assert_eq!(planar.rotation(VertexId::new(1)).iter().map(|v| v.get()).collect::<Vec<_>>(), vec![2, 4, 3]);

        let bad = "4\n1: 2 4 3\n2: 3 x 1\n3: 1 4 2\n4: 1 2 3\n";
        assert_eq!(parse_rot(bad).unwrap_err().line, 3);
        let short = "4\n1: 2 4\n";
        assert_eq!(parse_rot(short).unwrap_err().line, 2);
    }

    #[test]
    fn edge_indices_are_lexicographic() {
        let c6 = RotationSystem::convex(6).unwrap();
        for (k, e) in c6.edges().enumerate() {
            assert_eq!(e.index(6), k);
        }
        assert_eq!(Edge::of(3, 1), Edge::of(1, 3));
        assert_eq!(Edge::of(1, 3).to_string(), "13");
    }
}
