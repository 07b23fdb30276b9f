//! Queries on a realized drawing, and its `.draw` text serialization.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::crossings::{star_mask, CrossingPair, CrossingSet};
use crate::planar_map::{twin, Dart, Faces, Node, PlanarMap};
use crate::rotation::{Edge, RotationSystem, VertexId};
use crate::triangles::{SidePartition, Triangle};

/// A good drawing of `K_n`, as the planar map of its planarization.
#[derive(Clone, Debug)]
pub struct RealizedDrawing {
    map: PlanarMap,
    source: RotationSystem,
}

/// Emptiness of a triangle once a cell has been chosen as the unbounded one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlaneClass {
    InteriorEmpty,
    ExteriorEmpty,
    NonEmpty,
    BothEmpty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("face {0} does not exist")]
    NoSuchFace(usize),
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("apex {0} is not a vertex of the triangle")]
    ApexNotInTriangle(usize),
}

impl RealizedDrawing {
    pub(crate) fn new(map: PlanarMap, source: RotationSystem) -> Self {
        RealizedDrawing { map, source }
    }

    pub fn map(&self) -> &PlanarMap {
        &self.map
    }

    pub fn source(&self) -> &RotationSystem {
        &self.source
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn faces(&self) -> Faces {
        self.map.faces()
    }

    /// Rotation system read from the map at the original vertices.
    pub fn extract_rotation(&self) -> RotationSystem {
        let rows = (0..self.n())
            .map(|x| {
                let v = VertexId::from_index(x);
                self.map.darts_around(x).iter().map(|&d| self.map.label(d).other(v).get()).collect()
            })
            .collect();
        RotationSystem::new(rows).expect("map rotations form a rotation system")
    }

    /// Map darts along edge `e` from its smaller endpoint to the larger.
    pub fn edge_darts(&self, e: Edge) -> Vec<Dart> {
        let start = e.lo().index();
        let mut d = self
            .map
            .darts_around(start)
            .into_iter()
            .find(|&d| self.map.label(d) == e)
            .expect("edge is drawn");
        let mut out = vec![d];
        while let Node::Crossing(..) = self.map.node(self.map.dest(d)) {
            // straight through a degree-4 crossing
            d = self.map.next(self.map.next(twin(d)));
            out.push(d);
        }
        out
    }

    /// Edges crossing `e`, in order from its smaller endpoint.
    pub fn edge_crossings(&self, e: Edge) -> Vec<Edge> {
        let darts = self.edge_darts(e);
        darts[..darts.len() - 1]
            .iter()
            .map(|&d| match self.map.node(self.map.dest(d)) {
                Node::Crossing(a, b) => {
                    if a == e {
                        b
                    } else {
                        a
                    }
                }
                Node::Original(_) => unreachable!(),
            })
            .collect()
    }

    pub fn crossing_set(&self) -> CrossingSet {
        let pairs = self.map.nodes().iter().filter_map(|node| match *node {
            Node::Crossing(a, b) => Some(CrossingPair::new(a, b)),
            Node::Original(_) => None,
        });
        CrossingSet::from_pairs(self.n(), pairs)
    }

    pub fn crossing_count(&self) -> usize {
        self.map.nodes().iter().filter(|n| matches!(n, Node::Crossing(..))).count()
    }

    /// Checks the good-drawing conditions on the map: consistent structure,
    /// sphere topology, the source rotations, every crossing between two
    /// independent edges, and at most one crossing per pair.
    pub fn check_good(&self) -> Result<(), String> {
        self.map.check_structure()?;
        if self.map.euler_characteristic() != 2 {
            return Err(format!("euler characteristic {}", self.map.euler_characteristic()));
        }
        if self.extract_rotation() != self.source {
            return Err("rotation at original vertices differs from the source system".into());
        }
        let mut seen = std::collections::BTreeSet::new();
        for node in self.map.nodes() {
            if let Node::Crossing(a, b) = *node {
                if a.shares_endpoint(b) {
                    return Err(format!("adjacent edges {a} and {b} cross"));
                }
                if !seen.insert((a, b)) {
                    return Err(format!("edges {a} and {b} cross twice"));
                }
            }
        }
        for e in self.source.edges() {
            let crossed = self.edge_crossings(e);
            let distinct: std::collections::BTreeSet<_> = crossed.iter().collect();
            if distinct.len() != crossed.len() {
                return Err(format!("edge {e} crosses some edge twice"));
            }
        }
        Ok(())
    }

    /// Connected components of faces once the triangle's edges are cut.
    fn face_components(&self, t: &Triangle) -> (Faces, Vec<usize>, u128) {
        let n = self.n();
        let [a, b, c] = t.vertices();
        let cut = Edge::new(a, b).bit(n) | Edge::new(b, c).bit(n) | Edge::new(a, c).bit(n);
        let faces = self.map.faces();
        let mut parent: Vec<usize> = (0..faces.len()).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for d in 0..self.map.dart_count() as Dart {
            if self.map.label(d).bit(n) & cut == 0 {
                let (x, y) = (find(&mut parent, faces.face(d)), find(&mut parent, faces.face(twin(d))));
                parent[x] = y;
            }
        }
        let comp = (0..faces.len()).map(|f| find(&mut parent, f)).collect();
        (faces, comp, cut)
    }

    /// Vertices on each side of `t`, found by flood filling the faces of the
    /// map with the triangle's edges cut. Returns the component of a face on
    /// one side of the triangle, the component on the other side, and the
    /// vertices found in each.
    fn sides(&self, t: &Triangle) -> (Faces, Vec<usize>, [usize; 2], [Vec<VertexId>; 2]) {
        let (faces, comp, _) = self.face_components(t);
        let [a, b, _] = t.vertices();
        let d = self.edge_darts(Edge::new(a, b))[0];
        let sides = [comp[faces.face(d)], comp[faces.face(twin(d))]];
        debug_assert_ne!(sides[0], sides[1], "a triangle separates the sphere");
        let mut members = [Vec::new(), Vec::new()];
        for x in 0..self.n() {
            let v = VertexId::from_index(x);
            if t.contains(v) {
                continue;
            }
            let d = self.map.first_dart(x).expect("complete graph has no isolated vertex");
            let c = comp[faces.face(d)];
            let k = if c == sides[0] { 0 } else { 1 };
            debug_assert!(c == sides[k]);
            members[k].push(v);
        }
        (faces, comp, sides, members)
    }

    pub fn region_partition(&self, t: &Triangle) -> Result<SidePartition, DrawingError> {
        self.check_triangle(t)?;
        let (_, _, _, [x, y]) = self.sides(t);
        Ok(SidePartition::from_sides(x, y))
    }

    /// Is `t` a star triangle at `apex`, that is, is the edge opposite to
    /// `apex` crossed by no edge incident to `apex`?
    pub fn is_star_triangle(&self, t: &Triangle, apex: VertexId) -> Result<bool, DrawingError> {
        self.check_triangle(t)?;
        let (u, w) = t.opposite(apex).ok_or(DrawingError::ApexNotInTriangle(apex.get()))?;
        let star = star_mask(self.n(), apex);
        Ok(self.edge_crossings(Edge::new(u, w)).iter().all(|e| e.bit(self.n()) & star == 0))
    }

    /// Classification of `t` when face `outer` is made the unbounded cell.
    pub fn classify_with_outer_cell(&self, outer: usize, t: &Triangle) -> Result<PlaneClass, DrawingError> {
        self.check_triangle(t)?;
        let (faces, comp, sides, members) = self.sides(t);
        if outer >= faces.len() {
            return Err(DrawingError::NoSuchFace(outer));
        }
        let ext = if comp[outer] == sides[0] { 0 } else { 1 };
        let (exterior, interior) = (&members[ext], &members[1 - ext]);
        Ok(match (interior.is_empty(), exterior.is_empty()) {
            (true, true) => PlaneClass::BothEmpty,
            (true, false) => PlaneClass::InteriorEmpty,
            (false, true) => PlaneClass::ExteriorEmpty,
            (false, false) => PlaneClass::NonEmpty,
        })
    }

    fn check_triangle(&self, t: &Triangle) -> Result<(), DrawingError> {
        match t.vertices().iter().find(|v| v.get() > self.n()) {
            Some(v) => Err(DrawingError::OutOfRange(v.get())),
            None => Ok(()),
        }
    }

    /// Serializes in the `.draw` text format.
    ///
    /// ```text
    /// draw v1
    /// n 4
    /// rot 1: 2 3 4          one line per vertex, counterclockwise
    /// edge 13: 24           edges crossed, in order from the smaller endpoint
    /// cross 13 24: 1 2 3 4  endpoints the four arms point to, counterclockwise,
    ///                       starting with the smaller endpoint of the first edge
    /// ```
    pub fn to_draw_string(&self) -> String {
        let mut s = String::from("draw v1\n");
        let _ = writeln!(s, "n {}", self.n());
        for v in self.source.vertices() {
            let row: Vec<String> = self.source.rotation(v).iter().map(|u| u.to_string()).collect();
            let _ = writeln!(s, "rot {}: {}", v, row.join(" "));
        }
        for e in self.source.edges() {
            let crossed: Vec<String> = self.edge_crossings(e).iter().map(|f| f.to_string()).collect();
            let _ = writeln!(s, "edge {}:{}{}", e, if crossed.is_empty() { "" } else { " " }, crossed.join(" "));
        }
        let mut crossings = BTreeMap::new();
        for (i, node) in self.map.nodes().iter().enumerate() {
            if let Node::Crossing(a, b) = *node {
                crossings.insert((a, b), i);
            }
        }
        for (&(a, b), &x) in &crossings {
            let arms: Vec<VertexId> = self.map.darts_around(x).iter().map(|&d| self.arm_target(d)).collect();
            let start = arms.iter().position(|&p| p == a.lo()).unwrap();
            let ordered: Vec<String> = (0..4).map(|k| arms[(start + k) % 4].to_string()).collect();
            let _ = writeln!(s, "cross {} {}: {}", a, b, ordered.join(" "));
        }
        s
    }

    /// Original endpoint reached by following dart `d` along its edge.
    fn arm_target(&self, mut d: Dart) -> VertexId {
        loop {
            match self.map.node(self.map.dest(d)) {
                Node::Original(v) => return v,
                Node::Crossing(..) => d = self.map.next(self.map.next(twin(d))),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct DrawParseError {
    pub line: usize,
    pub message: String,
}

fn parse_edge(token: &str) -> Option<Edge> {
    let (a, b) = match token.split_once('-') {
        Some((a, b)) => (a.parse().ok()?, b.parse().ok()?),
        None => {
            let d: Vec<usize> = token.chars().map(|c| c.to_digit(10).map(|x| x as usize)).collect::<Option<_>>()?;
            match d.as_slice() {
                [a, b] => (*a, *b),
                _ => return None,
            }
        }
    };
    (a != b && a >= 1 && b >= 1 && a <= crate::MAX_VERTICES && b <= crate::MAX_VERTICES).then(|| Edge::of(a, b))
}

/// Rebuilds a drawing from its `.draw` text.
pub fn parse_draw(text: &str) -> Result<RealizedDrawing, DrawParseError> {
    let err = |line: usize, message: String| DrawParseError { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    match lines.next() {
        Some((_, "draw v1")) => {}
        Some((i, _)) => return Err(err(i, "expected header \"draw v1\"".into())),
        None => return Err(err(1, "empty input".into())),
    }
    let (nl, nline) = lines.next().ok_or_else(|| err(2, "missing vertex count".into()))?;
    let n: usize = nline
        .strip_prefix("n ")
        .and_then(|x| x.trim().parse().ok())
        .filter(|n| (3..=crate::MAX_VERTICES).contains(n))
        .ok_or_else(|| err(nl, "expected \"n <count>\"".into()))?;

    let mut rows = vec![Vec::new(); n];
    let mut paths: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    let mut arms: BTreeMap<(Edge, Edge), Vec<usize>> = BTreeMap::new();
    let mut last = nl;
    for (line, body) in lines {
        last = line;
        let (head, rest) = body.split_once(':').ok_or_else(|| err(line, "missing ':'".into()))?;
        let words: Vec<&str> = head.split_whitespace().collect();
        let labels = |rest: &str| -> Result<Vec<usize>, DrawParseError> {
            rest.split_whitespace().map(|t| t.parse().map_err(|_| err(line, format!("bad label {t:?}")))).collect()
        };
        match words.as_slice() {
            ["rot", v] => {
                let v: usize = v.parse().ok().filter(|v| (1..=n).contains(v)).ok_or_else(|| err(line, "bad vertex".into()))?;
                rows[v - 1] = labels(rest)?;
            }
            ["edge", e] => {
                let e = parse_edge(e).ok_or_else(|| err(line, format!("bad edge {e:?}")))?;
                let crossed = rest
                    .split_whitespace()
                    .map(|t| parse_edge(t).ok_or_else(|| err(line, format!("bad edge {t:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                paths.insert(e, crossed);
            }
            ["cross", a, b] => {
                let a = parse_edge(a).ok_or_else(|| err(line, "bad edge".into()))?;
                let b = parse_edge(b).ok_or_else(|| err(line, "bad edge".into()))?;
                if a.shares_endpoint(b) {
                    return Err(err(line, format!("{a} and {b} share an endpoint")));
                }
                let p = CrossingPair::new(a, b).edges();
                let ends = labels(rest)?;
                if ends.len() != 4 {
                    return Err(err(line, "a crossing has four arms".into()));
                }
                arms.insert(p, ends);
            }
            _ => return Err(err(line, format!("unknown record {head:?}"))),
        }
    }
    let rs = RotationSystem::new(rows).map_err(|e| err(last, e.to_string()))?;
    build_from_parts(&rs, &paths, &arms).map_err(|m| err(last, m))
}

fn build_from_parts(
    rs: &RotationSystem,
    paths: &BTreeMap<Edge, Vec<Edge>>,
    arms: &BTreeMap<(Edge, Edge), Vec<usize>>,
) -> Result<RealizedDrawing, String> {
    let n = rs.n();
    // node ids: originals first, then crossings in key order
    let mut node_of: BTreeMap<(Edge, Edge), usize> = BTreeMap::new();
    let mut nodes: Vec<Node> = (1..=n).map(|v| Node::Original(VertexId::new(v))).collect();
    for &(a, b) in arms.keys() {
        node_of.insert((a, b), nodes.len());
        nodes.push(Node::Crossing(a, b));
    }
    // darts[(node, edge, toward endpoint)] = dart leaving node along edge toward that endpoint
    let mut origin = Vec::new();
    let mut label = Vec::new();
    let mut arm_dart: BTreeMap<(usize, Edge, VertexId), Dart> = BTreeMap::new();
    for e in rs.edges() {
        let crossed = paths.get(&e).ok_or_else(|| format!("no path for edge {e}"))?;
        let mut chain = vec![e.lo().index()];
        for &f in crossed {
            let key = CrossingPair::new(e, f).edges();
            chain.push(*node_of.get(&key).ok_or_else(|| format!("crossing of {e} and {f} is not declared"))?);
        }
        chain.push(e.hi().index());
        for w in chain.windows(2) {
            let d = origin.len() as Dart;
            origin.push(w[0] as u32);
            origin.push(w[1] as u32);
            label.push(e);
            if arm_dart.insert((w[0], e, e.hi()), d).is_some() || arm_dart.insert((w[1], e, e.lo()), d + 1).is_some() {
                return Err(format!("edge {e} passes a crossing twice"));
            }
        }
    }
    let mut rotations = vec![Vec::new(); nodes.len()];
    for v in rs.vertices() {
        for &u in rs.rotation(v) {
            let e = Edge::new(v, u);
            rotations[v.index()].push(arm_dart[&(v.index(), e, u)]);
        }
    }
    for (&(a, b), ends) in arms {
        let x = node_of[&(a, b)];
        for &p in ends {
            if p == 0 || p > n {
                return Err(format!("arm {p} out of range"));
            }
            let p = VertexId::new(p);
            let e = if a.contains(p) { a } else if b.contains(p) { b } else { return Err(format!("arm {p} is not an endpoint of {a} or {b}")) };
            let d = arm_dart.get(&(x, e, p)).ok_or_else(|| format!("edge {e} does not pass the crossing of {a} and {b}"))?;
            rotations[x].push(*d);
        }
    }
    let map = PlanarMap::assemble(nodes, origin, label, &rotations)?;
    let d = RealizedDrawing::new(map, rs.clone());
    d.check_good()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realize::Realizer;

    #[test]
    fn draw_round_trip_convex5() {
        let c5 = RotationSystem::convex(5).unwrap();
        let d = Realizer::unguided().realize(&c5).unwrap().drawing().unwrap().clone();
        let text = d.to_draw_string();
        let back = parse_draw(&text).unwrap();
        assert_eq!(back.to_draw_string(), text);
        assert_eq!(back.crossing_set(), d.crossing_set());
        assert_eq!(back.faces().len(), d.faces().len());
    }

    #[test]
    fn draw_parse_errors() {
        assert_eq!(parse_draw("nope\n").unwrap_err().line, 1);
        let c4 = RotationSystem::convex(4).unwrap();
        let d = Realizer::unguided().realize(&c4).unwrap().drawing().unwrap().clone();
        let text = d.to_draw_string().replace("cross 13 24", "cross 12 34");
        assert!(parse_draw(&text).is_err());
    }
}
