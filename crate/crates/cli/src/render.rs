//! Straight-line layout of a planarized drawing and SVG output.
//!
//! Every face except the outer one gets an extra center node joined to its
//! boundary, the outer face (a largest one) is pinned to a circle, and all
//! other nodes move to the barycenter of their neighbors.

use std::fmt::Write;

use gdraw_core::planar_map::Node;
use gdraw_core::RealizedDrawing;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 40.0;

/// Positions of the map nodes, in SVG coordinates.
pub fn layout(d: &RealizedDrawing) -> Vec<(f64, f64)> {
    let map = d.map();
    let faces = d.faces();
    let nodes = map.node_count();
    let outer = (0..faces.len()).max_by_key(|&f| (faces.cycles[f].len(), usize::MAX - f)).unwrap();

    let total = nodes + faces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); total];
    for dart in (0..map.dart_count() as u32).step_by(2) {
        let (a, b) = (map.origin(dart), map.dest(dart));
        adj[a].push(b);
        adj[b].push(a);
    }
    for (f, cycle) in faces.cycles.iter().enumerate() {
        if f == outer {
            continue;
        }
        for &dart in cycle {
            let x = map.origin(dart);
            adj[nodes + f].push(x);
            adj[x].push(nodes + f);
        }
    }

    let mut pos = vec![(0.0, 0.0); total];
    let mut fixed = vec![false; total];
    fixed[nodes + outer] = true;
    let mut ring: Vec<usize> = Vec::new();
    for &dart in &faces.cycles[outer] {
        let x = map.origin(dart);
        if !ring.contains(&x) {
            ring.push(x);
        }
    }
    // the outer face lies to the left of its darts, so the rest of the
    // drawing sees its boundary clockwise
    for (k, &x) in ring.iter().enumerate() {
        let a = -2.0 * std::f64::consts::PI * k as f64 / ring.len() as f64;
        pos[x] = (a.cos(), a.sin());
        fixed[x] = true;
    }
    for _ in 0..20_000 {
        let mut moved: f64 = 0.0;
        for x in 0..total {
            if fixed[x] || adj[x].is_empty() {
                continue;
            }
            let k = adj[x].len() as f64;
            let sx: f64 = adj[x].iter().map(|&y| pos[y].0).sum();
            let sy: f64 = adj[x].iter().map(|&y| pos[y].1).sum();
            let new = (sx / k, sy / k);
            moved = moved.max((new.0 - pos[x].0).abs() + (new.1 - pos[x].1).abs());
            pos[x] = new;
        }
        if moved < 1e-12 {
            break;
        }
    }
    let half = (SIZE - 2.0 * MARGIN) / 2.0;
    pos[..nodes]
        .iter()
        .map(|&(x, y)| (SIZE / 2.0 + half * x, SIZE / 2.0 - half * y))
        .collect()
}

/// SVG image: original edges as polylines through their crossings, one
/// marker per crossing, labeled vertices.
pub fn to_svg(d: &RealizedDrawing) -> String {
    let pos = layout(d);
    let map = d.map();
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    let _ = writeln!(s, r##"<g fill="none" stroke="#335" stroke-width="1.5">"##);
    for e in d.source().edges() {
        let darts = d.edge_darts(e);
        let mut points = vec![pos[map.origin(darts[0])]];
        points.extend(darts.iter().map(|&dart| pos[map.dest(dart)]));
        let pts: Vec<String> = points.iter().map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(s, r#"<polyline class="edge" data-edge="{e}" points="{}"/>"#, pts.join(" "));
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g fill="#c33">"##);
    for (i, node) in map.nodes().iter().enumerate() {
        if let Node::Crossing(a, b) = node {
            let (x, y) = pos[i];
            let _ = writeln!(s, r#"<circle class="crossing" data-edges="{a} {b}" cx="{x:.2}" cy="{y:.2}" r="3"/>"#);
        }
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r##"<g font-family="sans-serif" font-size="13" text-anchor="middle">"##);
    for (i, node) in map.nodes().iter().enumerate() {
        if let Node::Original(v) = node {
            let (x, y) = pos[i];
            let _ = writeln!(
                s,
                r##"<circle class="vertex" cx="{x:.2}" cy="{y:.2}" r="10" fill="#fff" stroke="#335" stroke-width="1.5"/>"##
            );
            let _ = writeln!(s, r#"<text x="{x:.2}" y="{:.2}">{v}</text>"#, y + 4.5);
        }
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use gdraw_core::Enumerator;

    fn orient(p: (f64, f64), q: (f64, f64), r: (f64, f64)) -> f64 {
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    }

    #[test]
    fn layout_is_a_plane_drawing_of_the_map() {
        let en = Enumerator::new(1).unwrap();
        for n in 3..=6 {
            for key in en.frontier(n).unwrap().classes() {
                let d = en.drawing(key).unwrap();
                let pos = layout(&d);
                let map = d.map();
                let segs: Vec<(usize, usize)> =
                    (0..map.dart_count() as u32).step_by(2).map(|x| (map.origin(x), map.dest(x))).collect();
                for (i, &(a, b)) in segs.iter().enumerate() {
                    for &(c, e) in &segs[i + 1..] {
                        if a == c || a == e || b == c || b == e {
                            continue;
                        }
                        let s1 = orient(pos[a], pos[b], pos[c]) * orient(pos[a], pos[b], pos[e]);
                        let s2 = orient(pos[c], pos[e], pos[a]) * orient(pos[c], pos[e], pos[b]);
                        assert!(!(s1 < 0.0 && s2 < 0.0), "{key}: map edges cross in the layout");
                    }
                }
                let mut seen = pos.clone();
                seen.sort_by(|p, q| p.partial_cmp(q).unwrap());
                assert!(seen.windows(2).all(|w| (w[0].0 - w[1].0).abs() + (w[0].1 - w[1].1).abs() > 1e-6));
            }
        }
    }
}
