//! Canonical forms of rotation systems under relabeling and reflection.
//!
//! The key of a system is its phase-normalized label sequence, read row by
//! row, minimized over all relabelings (and, for weak isomorphism, over the
//! mirror image as well). Since row 1 comes first in the order, the minimum
//! always has rotation `(2, 3, ..., n)` at vertex 1. Such labelings are fixed
//! by choosing the vertex that becomes 1, the neighbor that becomes 2 and the
//! direction, so only `2n(n-1)` candidates are scanned instead of `2 n!`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::rotation::{RotationSystem, VertexId};

/// Total-order comparable encoding of an isomorphism class.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Box<[u8]>);

impl CanonicalKey {
    pub fn n(&self) -> usize {
        // len = n (n - 1)
        let len = self.0.len();
        (1..=crate::MAX_VERTICES).find(|n| n * (n - 1) == len).unwrap_or(0)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// The canonical representative.
    pub fn to_rotation_system(&self) -> RotationSystem {
        let n = self.n();
        let labels = self.0.iter().map(|&b| VertexId::new(b as usize)).collect();
        RotationSystem::from_normalized_labels(n, labels)
    }

    fn digit(label: u8) -> char {
        std::char::from_digit(label as u32, 36).unwrap()
    }
}

impl fmt::Display for CanonicalKey {
    /// Rows separated by `.`, labels as base-36 digits.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for (i, row) in self.0.chunks(n.max(2) - 1).enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            for &b in row {
                write!(f, "{}", CanonicalKey::digit(b))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({self})")
    }
}

impl CanonicalKey {
    /// Parses the text form, checking that it is a valid normalized system
    /// but not that it is minimal. For keys read back from trusted storage.
    pub(crate) fn parse_trusted(s: &str) -> Result<Self, String> {
        let rs = parse_rows(s)?;
        let bytes: Box<[u8]> = rs.as_labels().iter().map(|v| v.get() as u8).collect();
        let key = CanonicalKey(bytes);
        if key.to_string() != s {
            return Err(format!("{s} is not phase-normalized"));
        }
        Ok(key)
    }
}

fn parse_rows(s: &str) -> Result<RotationSystem, String> {
    let mut rotations = Vec::new();
    for row in s.split('.') {
        let labels = row
            .chars()
            .map(|c| c.to_digit(36).map(|d| d as usize).ok_or(format!("bad digit {c:?}")))
            .collect::<Result<Vec<_>, _>>()?;
        rotations.push(labels);
    }
    RotationSystem::new(rotations).map_err(|e| e.to_string())
}

impl FromStr for CanonicalKey {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let rs = parse_rows(s)?;
        let key = canonical_form(&rs).key;
        if key.to_string() != s {
            return Err(format!("{s} is not in canonical form"));
        }
        Ok(key)
    }
}

/// A canonical key together with the relabeling that produces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// `labeling[v - 1]` is the new label of vertex `v`.
    pub labeling: Vec<usize>,
    /// Whether the system was reflected before relabeling.
    pub mirrored: bool,
}

impl CanonicalForm {
    /// Vertex that receives the largest label.
    pub fn last_vertex(&self) -> VertexId {
        let n = self.labeling.len();
        VertexId::new(self.labeling.iter().position(|&l| l == n).unwrap() + 1)
    }
}

/// Canonical form under relabeling and reflection (weak isomorphism).
pub fn canonical_form(rs: &RotationSystem) -> CanonicalForm {
    search(rs, true)
}

/// Canonical form under relabeling only.
pub fn canonical_form_oriented(rs: &RotationSystem) -> CanonicalForm {
    search(rs, false)
}

pub fn canonical_key(rs: &RotationSystem) -> CanonicalKey {
    canonical_form(rs).key
}

/// True when the system is isomorphic to its own reflection by a relabeling.
pub fn is_achiral(rs: &RotationSystem) -> bool {
    canonical_form_oriented(rs).key == canonical_form_oriented(&rs.mirror()).key
}

fn search(rs: &RotationSystem, allow_mirror: bool) -> CanonicalForm {
    let n = rs.n();
    let w = n - 1;
    let rows: Vec<Vec<u8>> = rs
        .vertices()
        .map(|v| rs.rotation(v).iter().map(|u| u.index() as u8).collect())
        .collect();
    let pos = rs.position_table();

    let mut best: Vec<u8> = Vec::new();
    let mut best_labeling: Vec<u8> = Vec::new();
    let mut best_mirror = false;
    let mut label = vec![0u8; n];
    let mut inv = vec![0u8; n];
    let mut cur = vec![0u8; n * w];

    for mirrored in [false, true] {
        if mirrored && !allow_mirror {
            break;
        }
        for root in 0..n {
            for start in 0..w {
                label[root] = 0;
                inv[0] = root as u8;
                for k in 0..w {
                    let i = if mirrored { (start + w - k) % w } else { (start + k) % w };
                    let x = rows[root][i] as usize;
                    label[x] = (k + 1) as u8;
                    inv[k + 1] = x as u8;
                }
                // stream the candidate, abandoning it once it exceeds the best
                let mut order = if best.is_empty() { Ordering::Less } else { Ordering::Equal };
                'fill: for (l, &x) in inv.iter().enumerate() {
                    let x = x as usize;
                    let row = &rows[x];
                    let p0 = if l == 0 {
                        // label 1 sits at `start`
                        start
                    } else {
                        pos[x][root]
                    };
                    for k in 0..w {
                        let i = if mirrored { (p0 + w - k) % w } else { (p0 + k) % w };
                        let value = label[row[i] as usize] + 1;
                        let slot = l * w + k;
                        cur[slot] = value;
                        if order == Ordering::Equal {
                            order = value.cmp(&best[slot]);
                            if order == Ordering::Greater {
                                break 'fill;
                            }
                        }
                    }
                }
                if order == Ordering::Less {
                    best.clone_from(&cur);
                    best_labeling.clone_from(&label);
                    best_mirror = mirrored;
                }
            }
        }
    }
    CanonicalForm {
        key: CanonicalKey(best.into_boxed_slice()),
        labeling: best_labeling.iter().map(|&l| l as usize + 1).collect(),
        mirrored: best_mirror,
    }
}
