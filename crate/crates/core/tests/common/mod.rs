//! Reference implementations used as oracles. They share no code with the
//! library beyond the `RotationSystem` container.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::PI;

use gdraw_core::{RotationSystem, VertexId};

/// All permutations of `items`, in no particular order.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every rotation system of `K_n`: each vertex independently gets one of the
/// `(n-2)!` cyclic orders of its neighbors.
pub fn all_rotation_systems(n: usize) -> Vec<RotationSystem> {
    let choices: Vec<Vec<Vec<usize>>> = (1..=n)
        .map(|v| {
            let others: Vec<usize> = (1..=n).filter(|&u| u != v).collect();
            permutations(&others[1..])
                .into_iter()
                .map(|p| std::iter::once(others[0]).chain(p).collect())
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; n];
    loop {
        let rows = (0..n).map(|v| choices[v][pick[v]].clone()).collect();
        out.push(RotationSystem::new(rows).unwrap());
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            pick[i] += 1;
            if pick[i] < choices[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}

/// Image of `rs` under the relabeling `v -> perm[v - 1]`, rebuilt from the rows.
pub fn relabel_naive(rs: &RotationSystem, perm: &[usize], mirror: bool) -> RotationSystem {
    let n = rs.n();
    let mut rows = vec![Vec::new(); n];
    for v in rs.vertices() {
        let mut row: Vec<usize> = rs.rotation(v).iter().map(|u| perm[u.index()]).collect();
        if mirror {
            row.reverse();
        }
        rows[perm[v.index()] - 1] = row;
    }
    RotationSystem::new(rows).unwrap()
}

/// Canonical representative by trying all `2 n!` relabelings.
pub fn brute_canonical(rs: &RotationSystem) -> Vec<usize> {
    let n = rs.n();
    let ids: Vec<usize> = (1..=n).collect();
    let mut best: Option<Vec<usize>> = None;
    for perm in permutations(&ids) {
        for mirror in [false, true] {
            let img = relabel_naive(rs, &perm, mirror);
            let flat: Vec<usize> = img.as_labels().iter().map(|v| v.get()).collect();
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
    }
    best.unwrap()
}

/// Points in the plane with straight-line edges.
pub struct PointSet {
    pub pts: Vec<(f64, f64)>,
}

impl PointSet {
    /// `n` points on a circle, labeled counterclockwise.
    pub fn convex(n: usize) -> Self {
        let pts = (0..n)
            .map(|i| {
                let a = 2.0 * PI * i as f64 / n as f64;
                (a.cos(), a.sin())
            })
            .collect();
        PointSet { pts }
    }

    /// Rotation system read off by sorting neighbors by angle.
    pub fn rotation_system(&self) -> RotationSystem {
        let n = self.pts.len();
        let rows = (0..n)
            .map(|i| {
                let (x0, y0) = self.pts[i];
                let mut others: Vec<(f64, usize)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| ((self.pts[j].1 - y0).atan2(self.pts[j].0 - x0), j + 1))
                    .collect();
                others.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
                others.into_iter().map(|o| o.1).collect()
            })
            .collect();
        RotationSystem::new(rows).unwrap()
    }

    fn orient(&self, a: usize, b: usize, c: usize) -> f64 {
        let (p, q, r) = (self.pts[a], self.pts[b], self.pts[c]);
        (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0)
    }

    fn inside(&self, a: usize, b: usize, c: usize, x: usize) -> bool {
        let s = [self.orient(a, b, x), self.orient(b, c, x), self.orient(c, a, x)];
        s.iter().all(|&v| v > 0.0) || s.iter().all(|&v| v < 0.0)
    }

    /// Triangles (0-based) with no point inside or no point outside.
    pub fn empty_triangles(&self) -> BTreeSet<[usize; 3]> {
        let n = self.pts.len();
        let mut out = BTreeSet::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let inner = (0..n).filter(|&x| x != a && x != b && x != c && self.inside(a, b, c, x)).count();
                    if inner == 0 || inner == n - 3 {
                        out.insert([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// Pairs of independent segments that properly cross.
    pub fn crossing_count(&self) -> usize {
        let n = self.pts.len();
        let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut count = 0;
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a == c || a == d || b == c || b == d {
                    continue;
                }
                let s1 = self.orient(a, b, c) * self.orient(a, b, d);
                let s2 = self.orient(c, d, a) * self.orient(c, d, b);
                if s1 < 0.0 && s2 < 0.0 {
                    count += 1;
                }
            }
        }
        count
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Sides of the triangle for an arbitrary ordering `(a, b, c)` of its
/// vertices: at each vertex, the counterclockwise sweep from the edge to the
/// previous triangle vertex to the edge to the next one is the right side.
pub fn oriented_sides(rs: &RotationSystem, order: [usize; 3]) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = rs.n();
    let sweep = |center: usize, from: usize, to: usize| -> BTreeSet<usize> {
        let rot: Vec<usize> = rs.rotation(VertexId::new(center)).iter().map(|v| v.get()).collect();
        let start = rot.iter().position(|&x| x == from).unwrap();
        let mut out = BTreeSet::new();
        for k in 1..rot.len() {
            let x = rot[(start + k) % rot.len()];
            if x == to {
                break;
            }
            out.insert(x);
        }
        out
    };
    let [a, b, c] = order;
    let rights = [sweep(a, c, b), sweep(b, a, c), sweep(c, b, a)];
    let mut right = BTreeSet::new();
    let mut left = BTreeSet::new();
    for x in 1..=n {
        if x == a || x == b || x == c {
            continue;
        }
        let votes = rights.iter().filter(|s| s.contains(&x)).count();
        if votes >= 2 {
            right.insert(x);
        } else {
            left.insert(x);
        }
    }
    (right, left)
}

/// The unordered pair of sides as a sorted pair.
pub fn unordered(sides: (BTreeSet<usize>, BTreeSet<usize>)) -> (BTreeSet<usize>, BTreeSet<usize>) {
    if sides.0 <= sides.1 {
        sides
    } else {
        (sides.1, sides.0)
    }
}
