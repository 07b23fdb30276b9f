//! Realizability by backtracking edge insertion.
//!
//! Edges of `K_n` are inserted one at a time into a planar map on the
//! sphere. A new edge `uv` leaves `u` in the unique angular gap between its
//! rotation predecessor and successor among the edges already present (the
//! same at `v`). Its route is a walk through faces that crosses one boundary
//! segment at a time, never an edge at `u` or `v` and never the same edge
//! twice. Within a face the pieces of the route must not interleave, so the
//! new edge stays simple. When no route completes the drawing, the search
//! backs up to the previous edge. Exhausting the tree proves that no good
//! drawing has the rotation system.
//!
//! A guided search additionally uses the `K_4` crossing table: the pairs of
//! edges that cross in any good drawing are fixed by the rotation system, so
//! a route must cross exactly the already-drawn edges that cross it.

use std::ops::ControlFlow;
use std::path::Path;
use std::sync::OnceLock;

use thiserror::Error;

use crate::crossings::{
    crossing_pairs, k5_system, k4_system, star_mask, CrossingPair, K4CrossingTable, K4Outcome, K5RealizabilityTable,
};
use crate::drawing::RealizedDrawing;
use crate::planar_map::{twin, Dart, Faces, Node, PlanarMap};
use crate::rotation::{Edge, RotationSystem, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizeError {
    #[error("search aborted after {expanded} route expansions with {frontier} open alternatives")]
    ResourceLimit { expanded: u64, frontier: usize },
    #[error("invalid edge order: {0}")]
    BadEdgeOrder(String),
}

/// Result of a completed search.
#[derive(Clone, Debug)]
pub enum Realization {
    Realized(RealizedDrawing),
    Unrealizable,
}

impl Realization {
    pub fn drawing(&self) -> Option<&RealizedDrawing> {
        match self {
            Realization::Realized(d) => Some(d),
            Realization::Unrealizable => None,
        }
    }

    pub fn is_realizable(&self) -> bool {
        matches!(self, Realization::Realized(_))
    }
}

/// Order in which the edges of `K_n` are inserted.
#[derive(Clone, Debug, Default)]
pub enum EdgeOrder {
    /// By (smaller endpoint, larger endpoint). Draws the star of vertex 1 first.
    #[default]
    Lexicographic,
    /// Any order in which every edge after the first touches an earlier one.
    Custom(Vec<Edge>),
}

#[derive(Clone, Debug, Default)]
pub struct Realizer<'t> {
    table: Option<&'t K4CrossingTable>,
    order: EdgeOrder,
    node_limit: Option<u64>,
}

impl<'t> Realizer<'t> {
    /// Search over all routes, without crossing information.
    pub fn unguided() -> Self {
        Realizer::default()
    }

    /// Search restricted to the crossing pairs forced by `table`.
    pub fn guided(table: &'t K4CrossingTable) -> Self {
        Realizer { table: Some(table), ..Realizer::default() }
    }

    pub fn with_edge_order(mut self, order: EdgeOrder) -> Self {
        self.order = order;
        self
    }

    /// Abort with [`RealizeError::ResourceLimit`] after this many route expansions.
    pub fn with_node_limit(mut self, limit: u64) -> Self {
        self.node_limit = Some(limit);
        self
    }

    pub fn realize(&self, rs: &RotationSystem) -> Result<Realization, RealizeError> {
        let mut found = None;
        self.for_each_drawing(rs, |d| {
            found = Some(d.clone());
            ControlFlow::Break(())
        })?;
        Ok(match found {
            Some(d) => Realization::Realized(d),
            None => Realization::Unrealizable,
        })
    }

    /// Visits every drawing the search can build, until `visit` breaks.
    pub fn for_each_drawing(
        &self,
        rs: &RotationSystem,
        mut visit: impl FnMut(&RealizedDrawing) -> ControlFlow<()>,
    ) -> Result<(), RealizeError> {
        let n = rs.n();
        let order = self.edge_order(rs)?;
        let guide = match self.table {
            None => None,
            Some(table) => match crossing_pairs(rs, table) {
                Ok(set) => Some(order.iter().map(|&e| set.crossers_mask(e)).collect::<Vec<_>>()),
                Err(_) => return Ok(()),
            },
        };
        let mut search = Search {
            rs,
            n,
            order: &order,
            guide: guide.as_deref(),
            limit: self.node_limit,
            expanded: 0,
            open: Vec::new(),
        };
        let mut wrap = |map: &PlanarMap| visit(&RealizedDrawing::new(map.clone(), rs.clone()));
        let _ = search.run(PlanarMap::new(n), 0, 0, &mut wrap)?;
        Ok(())
    }

    fn edge_order(&self, rs: &RotationSystem) -> Result<Vec<Edge>, RealizeError> {
        let n = rs.n();
        let order: Vec<Edge> = match &self.order {
            EdgeOrder::Lexicographic => rs.edges().collect(),
            EdgeOrder::Custom(o) => o.clone(),
        };
        let mut seen = vec![false; n * (n - 1) / 2];
        let mut touched = vec![false; n];
        for (k, e) in order.iter().enumerate() {
            if e.hi().get() > n {
                return Err(RealizeError::BadEdgeOrder(format!("edge {e} out of range")));
            }
            if std::mem::replace(&mut seen[e.index(n)], true) {
                return Err(RealizeError::BadEdgeOrder(format!("edge {e} repeated")));
            }
            if k > 0 && !touched[e.lo().index()] && !touched[e.hi().index()] {
                return Err(RealizeError::BadEdgeOrder(format!("edge {e} is disconnected from earlier edges")));
            }
            touched[e.lo().index()] = true;
            touched[e.hi().index()] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(RealizeError::BadEdgeOrder("not every edge is listed".into()));
        }
        Ok(order)
    }
}

/// Guided realization with the built-in `K_4` table.
pub fn realize(rs: &RotationSystem) -> Result<Realization, RealizeError> {
    Realizer::guided(default_k4_table()).realize(rs)
}

struct Search<'s> {
    rs: &'s RotationSystem,
    n: usize,
    order: &'s [Edge],
    // crossers mask of each edge in insertion order
    guide: Option<&'s [u128]>,
    limit: Option<u64>,
    expanded: u64,
    open: Vec<usize>,
}

impl Search<'_> {
    fn run(
        &mut self,
        map: PlanarMap,
        level: usize,
        inserted: u128,
        visit: &mut dyn FnMut(&PlanarMap) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, RealizeError> {
        if level == self.order.len() {
            debug_assert_eq!(map.euler_characteristic(), 2);
            return Ok(visit(&map));
        }
        let e = self.order[level];
        let (mut from, mut to) = (e.lo().index(), e.hi().index());
        if map.first_dart(from).is_none() {
            std::mem::swap(&mut from, &mut to);
        }
        let after_from = self.corner(&map, from, to, inserted);
        let after_to = self.corner(&map, to, from, inserted);

        let routes = match after_from {
            // very first edge
            None => vec![Vec::new()],
            Some(start) => {
                let faces = map.faces();
                let allowed = match self.guide {
                    Some(g) => g[level] & inserted,
                    None => {
                        inserted
                            & !star_mask(self.n, VertexId::from_index(from))
                            & !star_mask(self.n, VertexId::from_index(to))
                    }
                };
                let mut finder = RouteFinder {
                    map: &map,
                    faces: &faces,
                    n: self.n,
                    allowed,
                    required: self.guide.map(|_| allowed),
                    target: after_to.map(|d| (faces.face(d), 2 * faces.index_in_face[d as usize])),
                    chords: Vec::new(),
                    path: Vec::new(),
                    routes: Vec::new(),
                };
                let entry = 2 * faces.index_in_face[start as usize];
                finder.walk(faces.face(start), entry, 0);
                finder.routes
            }
        };

        self.open.push(routes.len());
        for route in routes {
            *self.open.last_mut().unwrap() -= 1;
            self.expanded += 1;
            if let Some(limit) = self.limit {
                if self.expanded > limit {
                    return Err(RealizeError::ResourceLimit {
                        expanded: self.expanded - 1,
                        frontier: self.open.iter().sum::<usize>() + 1,
                    });
                }
            }
            let mut next = map.clone();
            insert_route(&mut next, from, after_from, to, after_to, &route, e);
            if self.run(next, level + 1, inserted | e.bit(self.n), visit)?.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        self.open.pop();
        Ok(ControlFlow::Continue(()))
    }

    /// Dart at `x` after which the edge to `y` must be placed: the edge to
    /// the nearest rotation predecessor of `y` that is already drawn.
    fn corner(&self, map: &PlanarMap, x: usize, y: usize, inserted: u128) -> Option<Dart> {
        map.first_dart(x)?;
        let vx = VertexId::from_index(x);
        let rot = self.rs.rotation(vx);
        let k = rot.iter().position(|w| w.index() == y).unwrap();
        let w = (1..rot.len())
            .map(|s| rot[(k + rot.len() - s) % rot.len()])
            .find(|&w| inserted & Edge::new(vx, w).bit(self.n) != 0)?;
        let label = Edge::new(vx, w);
        map.darts_around(x).into_iter().find(|&d| map.label(d) == label)
    }
}

/// Adds the edge `e` from `from` to `to` along a route crossing the map
/// edges of `crossed` in order.
fn insert_route(
    map: &mut PlanarMap,
    from: usize,
    after_from: Option<Dart>,
    to: usize,
    after_to: Option<Dart>,
    crossed: &[Dart],
    e: Edge,
) {
    let mut tip = (from, after_from);
    for &c in crossed {
        let pair = CrossingPair::new(map.label(c), e);
        let (a, b) = pair.edges();
        let (x, onward) = map.split(c, Node::Crossing(a, b));
        map.add_edge(tip.0, tip.1, x, Some(onward), e);
        tip = (x, Some(twin(c)));
    }
    map.add_edge(tip.0, tip.1, to, after_to, e);
}

struct RouteFinder<'a> {
    map: &'a PlanarMap,
    faces: &'a Faces,
    n: usize,
    allowed: u128,
    required: Option<u128>,
    // face and boundary position of the corner at the far endpoint; None if it is isolated
    target: Option<(usize, u32)>,
    chords: Vec<(usize, u32, u32)>,
    path: Vec<Dart>,
    routes: Vec<Vec<Dart>>,
}

impl RouteFinder<'_> {
    /// Boundary positions: `2i` is the corner before the `i`-th dart of the
    /// face cycle, `2i + 1` a point inside that dart's segment.
    fn fits(&self, face: usize, a: u32, b: u32) -> bool {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.chords.iter().filter(|c| c.0 == face).all(|&(_, c, d)| {
            let inside_c = lo < c && c < hi;
            let inside_d = lo < d && d < hi;
            inside_c == inside_d
        })
    }

    fn walk(&mut self, face: usize, entry: u32, crossed: u128) {
        let complete = self.required.is_none_or(|r| r == crossed);
        if complete {
            match self.target {
                None => self.routes.push(self.path.clone()),
                Some((f, p)) if f == face && self.fits(face, entry, p) => self.routes.push(self.path.clone()),
                _ => {}
            }
        }
        let cycle = &self.faces.cycles[face];
        for (i, &d) in cycle.iter().enumerate() {
            let bit = self.map.label(d).bit(self.n);
            if self.allowed & bit == 0 || crossed & bit != 0 {
                continue;
            }
            let exit = 2 * i as u32 + 1;
            if !self.fits(face, entry, exit) {
                continue;
            }
            let t = twin(d);
            let next_face = self.faces.face(t);
            let next_entry = 2 * self.faces.index_in_face[t as usize] + 1;
            self.chords.push((face, entry, exit));
            self.path.push(d);
            self.walk(next_face, next_entry, crossed | bit);
            self.path.pop();
            self.chords.pop();
        }
    }
}

/// Realizes all 16 rotation systems of `K_4` without guidance.
pub fn build_k4_table() -> K4CrossingTable {
    let mut entries = [K4Outcome::Unrealizable; 16];
    for (i, entry) in entries.iter_mut().enumerate() {
        let rs = k4_system(i);
        *entry = match Realizer::unguided().realize(&rs).expect("no limit set") {
            Realization::Unrealizable => K4Outcome::Unrealizable,
            Realization::Realized(d) => {
                let set = d.crossing_set();
                let first = set.iter().next();
                match first {
                    None => K4Outcome::Planar,
                    Some(p) => {
                        assert_eq!(set.len(), 1, "a good drawing of K4 has at most one crossing");
                        K4Outcome::Crossing(p)
                    }
                }
            }
        };
    }
    K4CrossingTable::from_entries(entries)
}

/// The `K_4` table, built once per process.
pub fn default_k4_table() -> &'static K4CrossingTable {
    static TABLE: OnceLock<K4CrossingTable> = OnceLock::new();
    TABLE.get_or_init(build_k4_table)
}

/// Reads the table from `path`, or builds and writes it there.
pub fn load_or_build_k4_table(path: &Path) -> std::io::Result<K4CrossingTable> {
    if let Ok(text) = std::fs::read_to_string(path) {
        if let Ok(table) = K4CrossingTable::from_text(&text) {
            return Ok(table);
        }
    }
    let table = build_k4_table();
    std::fs::write(path, table.to_text())?;
    Ok(table)
}

/// Realizability of all 7776 rotation systems of `K_5`.
pub fn build_k5_table(k4: &K4CrossingTable) -> K5RealizabilityTable {
    let realizer = Realizer::guided(k4);
    let flags = (0..7776)
        .map(|i| realizer.realize(&k5_system(i)).expect("no limit set").is_realizable())
        .collect();
    K5RealizabilityTable::from_flags(flags)
}

pub fn default_k5_table() -> &'static K5RealizabilityTable {
    static TABLE: OnceLock<K5RealizabilityTable> = OnceLock::new();
    TABLE.get_or_init(|| build_k5_table(default_k4_table()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn planar_k4() -> RotationSystem {
        RotationSystem::new(vec![vec![2, 4, 3], vec![3, 4, 1], vec![1, 4, 2], vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn k3_is_realizable() {
        let r = Realizer::unguided().realize(&RotationSystem::convex(3).unwrap()).unwrap();
        let d = r.drawing().unwrap();
        assert_eq!(d.map().faces().len(), 2);
        assert_eq!(d.crossing_count(), 0);
    }

    #[test]
    fn convex_k4_has_one_crossing() {
        let c4 = RotationSystem::convex(4).unwrap();
        let d = Realizer::unguided().realize(&c4).unwrap();
        let d = d.drawing().unwrap();
        let pairs: Vec<CrossingPair> = d.crossing_set().iter().collect();
        assert_eq!(pairs, vec![CrossingPair::new(Edge::of(1, 3), Edge::of(2, 4))]);
        assert_eq!(d.extract_rotation(), c4);
    }

    #[test]
    fn planar_k4_has_no_crossing() {
        let d = Realizer::unguided().realize(&planar_k4()).unwrap();
        let d = d.drawing().unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.extract_rotation(), planar_k4());
    }

    #[test]
    fn k4_table_entries() {
        let table = default_k4_table();
        assert_eq!(
            table.get(&RotationSystem::convex(4).unwrap()),
            K4Outcome::Crossing(CrossingPair::new(Edge::of(1, 3), Edge::of(2, 4)))
        );
        assert_eq!(table.get(&planar_k4()), K4Outcome::Planar);
        for i in 0..16 {
            let rs = k4_system(i);
            assert_eq!(table.get(&rs).is_realizable(), table.get(&rs.mirror()).is_realizable());
        }
    }

    #[test]
    fn node_limit_aborts() {
        let c5 = RotationSystem::convex(5).unwrap();
        let err = Realizer::unguided().with_node_limit(3).realize(&c5).unwrap_err();
        match err {
            RealizeError::ResourceLimit { expanded, frontier } => {
                assert_eq!(expanded, 3);
                assert!(frontier >= 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn custom_edge_order_is_validated() {
        let c4 = RotationSystem::convex(4).unwrap();
        let bad = EdgeOrder::Custom(vec![Edge::of(1, 2), Edge::of(3, 4)]);
        assert!(matches!(Realizer::unguided().with_edge_order(bad).realize(&c4), Err(RealizeError::BadEdgeOrder(_))));
        let order: Vec<Edge> = vec![(3, 4), (2, 4), (1, 4), (2, 3), (1, 3), (1, 2)].into_iter().map(|(a, b)| Edge::of(a, b)).collect();
        let r = Realizer::unguided().with_edge_order(EdgeOrder::Custom(order)).realize(&c4).unwrap();
        assert_eq!(r.drawing().unwrap().crossing_count(), 1);
    }
}
