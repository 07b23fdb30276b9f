//! Planarization of a drawing as a dart-based combinatorial map on the sphere.
//!
//! Darts come in twin pairs `d`, `d ^ 1`. `next` is the counterclockwise
//! successor around the dart's origin. The face to the left of dart `d`
//! occupies the corner between `d` and `next(d)`, and the face walk continues
//! with `face_next(d) = prev(twin(d))`.

use crate::rotation::{Edge, VertexId};

pub type Dart = u32;

#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

/// A map vertex: a vertex of `K_n` or a crossing of two of its edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Original(VertexId),
    Crossing(Edge, Edge),
}

#[derive(Clone, Debug)]
pub struct PlanarMap {
    nodes: Vec<Node>,
    node_dart: Vec<Option<Dart>>,
    origin: Vec<u32>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    // original edge carried by each map edge (indexed by dart / 2)
    label: Vec<Edge>,
}

/// Face cycles of a map at one moment.
#[derive(Clone, Debug)]
pub struct Faces {
    pub face_of: Vec<u32>,
    pub index_in_face: Vec<u32>,
    pub cycles: Vec<Vec<Dart>>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn face(&self, d: Dart) -> usize {
        self.face_of[d as usize] as usize
    }
}

impl PlanarMap {
    /// `n` isolated original vertices.
    pub fn new(n: usize) -> Self {
        PlanarMap {
            nodes: (1..=n).map(|v| Node::Original(VertexId::new(v))).collect(),
            node_dart: vec![None; n],
            origin: Vec::new(),
            next: Vec::new(),
            prev: Vec::new(),
            label: Vec::new(),
        }
    }

    /// Builds a map from explicit darts (`origin[2k]`, `origin[2k+1]` are the
    /// ends of map edge `k`) and the counterclockwise dart order at each node.
    pub fn assemble(nodes: Vec<Node>, origin: Vec<u32>, label: Vec<Edge>, rotations: &[Vec<Dart>]) -> Result<Self, String> {
        let m = origin.len();
        if !m.is_multiple_of(2) || label.len() * 2 != m || rotations.len() != nodes.len() {
            return Err("inconsistent map sizes".into());
        }
        let mut next = vec![u32::MAX; m];
        let mut prev = vec![u32::MAX; m];
        let mut node_dart = vec![None; nodes.len()];
        for (x, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d as usize >= m || origin[d as usize] as usize != x || next[d as usize] != u32::MAX {
                    return Err(format!("dart {d} misplaced in the rotation of node {x}"));
                }
                let e = rot[(i + 1) % rot.len()];
                next[d as usize] = e;
                prev[e as usize] = d;
            }
            node_dart[x] = rot.first().copied();
        }
        if next.contains(&u32::MAX) {
            return Err("some dart is missing from the rotations".into());
        }
        let map = PlanarMap { nodes, node_dart, origin, next, prev, label };
        map.check_structure()?;
        Ok(map)
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn dart_count(&self) -> usize {
        self.origin.len()
    }

    pub fn edge_count(&self) -> usize {
        self.origin.len() / 2
    }

    pub fn node(&self, i: usize) -> Node {
        self.nodes[i]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn origin(&self, d: Dart) -> usize {
        self.origin[d as usize] as usize
    }

    pub fn dest(&self, d: Dart) -> usize {
        self.origin(twin(d))
    }

    pub fn next(&self, d: Dart) -> Dart {
        self.next[d as usize]
    }

    pub fn prev(&self, d: Dart) -> Dart {
        self.prev[d as usize]
    }

    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[twin(d) as usize]
    }

    /// Original edge that the map edge of `d` is a piece of.
    pub fn label(&self, d: Dart) -> Edge {
        self.label[(d >> 1) as usize]
    }

    pub fn first_dart(&self, node: usize) -> Option<Dart> {
        self.node_dart[node]
    }

    /// Darts leaving `node`, counterclockwise from an arbitrary one.
    pub fn darts_around(&self, node: usize) -> Vec<Dart> {
        let mut out = Vec::new();
        if let Some(start) = self.node_dart[node] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next[d as usize];
                if d == start {
                    break;
                }
            }
        }
        out
    }

    pub fn degree(&self, node: usize) -> usize {
        self.darts_around(node).len()
    }

    fn push_dart(&mut self, node: usize, after: Option<Dart>) -> Dart {
        let d = self.origin.len() as Dart;
        self.origin.push(node as u32);
        match after {
            None => {
                debug_assert!(self.node_dart[node].is_none());
                self.next.push(d);
                self.prev.push(d);
                self.node_dart[node] = Some(d);
            }
            Some(a) => {
                debug_assert_eq!(self.origin(a), node);
                let b = self.next[a as usize];
                self.next.push(b);
                self.prev.push(a);
                self.next[a as usize] = d;
                self.prev[b as usize] = d;
            }
        }
        d
    }

    /// Adds a map edge from `a` to `b`, placing its darts counterclockwise
    /// right after `after_a` and `after_b` (or alone at an isolated node).
    /// Returns the dart leaving `a`.
    pub fn add_edge(&mut self, a: usize, after_a: Option<Dart>, b: usize, after_b: Option<Dart>, label: Edge) -> Dart {
        let d = self.push_dart(a, after_a);
        let t = self.push_dart(b, after_b);
        debug_assert_eq!(t, twin(d));
        self.label.push(label);
        d
    }

    /// Subdivides the map edge of `d` by a new crossing node `x`.
    ///
    /// Afterwards `d` runs from its old origin to `x`, `twin(d)` from `x`
    /// back, and the returned dart `e` from `x` on to the old destination.
    /// Around `x` the corner after `e` faces the old left side of `d`, the
    /// corner after `twin(d)` the old right side.
    pub fn split(&mut self, d: Dart, crossing: Node) -> (usize, Dart) {
        let t = twin(d);
        let b = self.dest(d);
        let x = self.nodes.len();
        self.nodes.push(crossing);
        self.node_dart.push(None);

        // the new twin pair (e: x -> b, et: b -> x); et takes t's place around b
        let e = self.origin.len() as Dart;
        let et = e + 1;
        let (tn, tp) = (self.next[t as usize], self.prev[t as usize]);
        self.origin.push(x as u32);
        self.origin.push(b as u32);
        self.label.push(self.label(d));
        if tn == t {
            self.next.push(0);
            self.prev.push(0);
            self.next.push(et);
            self.prev.push(et);
        } else {
            self.next.push(0);
            self.prev.push(0);
            self.next.push(tn);
            self.prev.push(tp);
            self.next[tp as usize] = et;
            self.prev[tn as usize] = et;
        }
        if self.node_dart[b] == Some(t) {
            self.node_dart[b] = Some(et);
        }
        // around x: t and e form a 2-cycle
        self.origin[t as usize] = x as u32;
        self.next[t as usize] = e;
        self.prev[t as usize] = e;
        self.next[e as usize] = t;
        self.prev[e as usize] = t;
        self.node_dart[x] = Some(t);
        (x, e)
    }

    pub fn faces(&self) -> Faces {
        let m = self.dart_count();
        let mut face_of = vec![u32::MAX; m];
        let mut index_in_face = vec![0u32; m];
        let mut cycles = Vec::new();
        for s in 0..m as Dart {
            if face_of[s as usize] != u32::MAX {
                continue;
            }
            let f = cycles.len() as u32;
            let mut cycle = Vec::new();
            let mut d = s;
            loop {
                face_of[d as usize] = f;
                index_in_face[d as usize] = cycle.len() as u32;
                cycle.push(d);
                d = self.face_next(d);
                if d == s {
                    break;
                }
            }
            cycles.push(cycle);
        }
        Faces { face_of, index_in_face, cycles }
    }

    /// `V - E + F` over the non-isolated part; 2 for a connected sphere map.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.node_dart.iter().filter(|d| d.is_some()).count() as i64;
        v - self.edge_count() as i64 + self.faces().len() as i64
    }

    /// Checks the permutation and twin structure.
    pub fn check_structure(&self) -> Result<(), String> {
        let m = self.dart_count();
        for d in 0..m as Dart {
            let (n, p) = (self.next(d), self.prev(d));
            if self.prev(n) != d || self.next(p) != d {
                return Err(format!("rotation links broken at dart {d}"));
            }
            if self.origin(n) != self.origin(d) {
                return Err(format!("dart {d} and its successor leave different nodes"));
            }
            if self.origin(d) == self.dest(d) {
                return Err(format!("dart {d} is a loop"));
            }
        }
        for (i, node) in self.nodes.iter().enumerate() {
            if let Node::Crossing(e, f) = node {
                let around = self.darts_around(i);
                if around.len() != 4 {
                    return Err(format!("crossing {i} has degree {}", around.len()));
                }
                let labels: Vec<Edge> = around.iter().map(|&d| self.label(d)).collect();
                let alternating = labels[0] == labels[2] && labels[1] == labels[3] && labels[0] != labels[1];
                let right = (labels[0] == *e && labels[1] == *f) || (labels[0] == *f && labels[1] == *e);
                if !alternating || !right {
                    return Err(format!("crossing {i} does not alternate its two edges"));
                }
            }
        }
        Ok(())
    }
}
