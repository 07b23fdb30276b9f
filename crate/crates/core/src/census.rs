//! Isomorph-free enumeration of realizable rotation systems of `K_n`.
//!
//! Level `n + 1` is grown from level `n` by inserting a new vertex into every
//! class representative in all possible ways. Partial insertions are pruned
//! as soon as a 4- or 5-vertex sub-system containing the new vertex is
//! unrealizable. A completed candidate is kept only if the new vertex is the
//! one its canonical labeling puts last, up to automorphism (canonical
//! augmentation), so each class at `n + 1` is produced by exactly one parent.
//! Survivors are realized to confirm them.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::canon::{canonical_form, canonical_key, is_achiral, CanonicalKey};
use crate::crossings::{k4_index_by, k5_index_by, K4CrossingTable, K5RealizabilityTable};
use crate::drawing::RealizedDrawing;
use crate::realize::{default_k4_table, default_k5_table, Realization, RealizeError, Realizer};
use crate::rotation::{RotationSystem, VertexId};
use crate::triangles::{analyze_any, empty_triangles, Triangle};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("unknown claim {0:?}")]
    UnknownClaim(String),
    #[error("claim {claim} does not apply at n = {n}")]
    NotApplicable { claim: Claim, n: usize },
    #[error("census incomplete: frontier is at n = {have} with extension pending, need n = {want}")]
    Incomplete { have: usize, want: usize },
    #[error("frontier is already past n = {0}")]
    Overshot(usize),
    #[error("corrupt snapshot: {0}")]
    CorruptSnapshot(String),
    #[error("class {0} could not be realized")]
    Unrealized(CanonicalKey),
    #[error(transparent)]
    Realize(#[from] RealizeError),
    #[error("cannot start worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Analytics of one class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusRecord {
    pub n: usize,
    pub key: CanonicalKey,
    pub empty: usize,
    pub t: Vec<usize>,
    pub l: Vec<usize>,
    pub lucky: usize,
    pub crossings: usize,
}

impl CensusRecord {
    /// Computes the record of the class represented by `key`, using `drawing`
    /// for the crossing count.
    pub fn compute(key: CanonicalKey, drawing: &RealizedDrawing) -> Self {
        let rs = key.to_rotation_system();
        let a = analyze_any(&rs);
        CensusRecord {
            n: rs.n(),
            empty: a.empty.len(),
            t: a.stats.iter().map(|s| s.t).collect(),
            l: a.stats.iter().map(|s| s.l).collect(),
            lucky: a.lucky_count(),
            crossings: drawing.crossing_count(),
            key,
        }
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for CensusRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} key={} empty={} t={} l={} lucky={} crossings={}",
            self.n,
            self.key,
            self.empty,
            join(&self.t),
            join(&self.l),
            self.lucky,
            self.crossings
        )
    }
}

impl FromStr for CensusRecord {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, Self::Err> {
        let fields: Vec<(&str, &str)> = line
            .split_whitespace()
            .map(|kv| kv.split_once('=').ok_or(format!("expected key=value, got {kv:?}")))
            .collect::<Result<_, _>>()?;
        let names: Vec<&str> = fields.iter().map(|f| f.0).collect();
        if names != ["n", "key", "empty", "t", "l", "lucky", "crossings"] {
            return Err(format!("unexpected fields {names:?}"));
        }
        let num = |s: &str| s.parse::<usize>().map_err(|e| format!("{s:?}: {e}"));
        let list = |s: &str| s.split(',').map(num).collect::<Result<Vec<_>, _>>();
        let record = CensusRecord {
            n: num(fields[0].1)?,
            key: fields[1].1.parse()?,
            empty: num(fields[2].1)?,
            t: list(fields[3].1)?,
            l: list(fields[4].1)?,
            lucky: num(fields[5].1)?,
            crossings: num(fields[6].1)?,
        };
        if record.key.n() != record.n || record.t.len() != record.n || record.l.len() != record.n {
            return Err("vector lengths do not match n".into());
        }
        Ok(record)
    }
}

/// The classes of one level plus the progress of extending them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    n: usize,
    classes: Vec<CanonicalKey>,
    cursor: usize,
    partial: Vec<CanonicalKey>,
}

impl Frontier {
    /// The single class of `K_3`.
    pub fn k3() -> Self {
        let key = canonical_key(&RotationSystem::convex(3).expect("3 vertices"));
        Frontier { n: 3, classes: vec![key], cursor: 0, partial: Vec::new() }
    }

    /// A complete level built from arbitrary keys, sorted and deduplicated.
    pub fn from_classes(n: usize, mut classes: Vec<CanonicalKey>) -> Self {
        classes.sort();
        classes.dedup();
        Frontier { n, classes, cursor: 0, partial: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Classes at level `n`, strictly increasing.
    pub fn classes(&self) -> &[CanonicalKey] {
        &self.classes
    }

    /// Number of parents already extended to level `n + 1`.
    pub fn cursor(&self) -> usize {
        self.cursor
    }

    /// Classes at level `n + 1` found so far.
    pub fn partial(&self) -> &[CanonicalKey] {
        &self.partial
    }

    /// True when no extension is in progress.
    pub fn is_settled(&self) -> bool {
        self.cursor == 0 && self.partial.is_empty()
    }

    fn body(&self) -> String {
        let mut s = format!("n {}\ncursor {}\nclasses {}\n", self.n, self.cursor, self.classes.len());
        for k in &self.classes {
            s.push_str(&k.to_string());
            s.push('\n');
        }
        s.push_str(&format!("partial {}\n", self.partial.len()));
        for k in &self.partial {
            s.push_str(&k.to_string());
            s.push('\n');
        }
        s
    }

    /// Snapshot text: version header, content hash, body.
    pub fn to_snapshot(&self) -> String {
        let body = self.body();
        let hash = hex::encode(Sha256::digest(body.as_bytes()));
        format!("{SNAPSHOT_HEADER}\nsha256 {hash}\n{body}")
    }

    pub fn from_snapshot(text: &str) -> Result<Self, CensusError> {
        let bad = |m: String| CensusError::CorruptSnapshot(m);
        let rest = text
            .strip_prefix(SNAPSHOT_HEADER)
            .and_then(|r| r.strip_prefix('\n'))
            .ok_or_else(|| bad("missing header".into()))?;
        let (hash_line, body) = rest.split_once('\n').ok_or_else(|| bad("missing hash".into()))?;
        let hash = hash_line.strip_prefix("sha256 ").ok_or_else(|| bad("missing hash".into()))?;
        if hex::encode(Sha256::digest(body.as_bytes())) != hash {
            return Err(bad("content hash mismatch".into()));
        }
        let mut lines = body.lines();
        let mut field = |name: &str| -> Result<usize, CensusError> {
            let line = lines.next().ok_or_else(|| bad(format!("missing {name}")))?;
            line.strip_prefix(name)
                .and_then(|v| v.strip_prefix(' '))
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| bad(format!("bad {name} line {line:?}")))
        };
        let n = field("n")?;
        let cursor = field("cursor")?;
        let count = field("classes")?;
        let mut read_keys = |count: usize, level: usize| -> Result<Vec<CanonicalKey>, CensusError> {
            let mut keys: Vec<CanonicalKey> = Vec::with_capacity(count);
            for _ in 0..count {
                let line = lines.next().ok_or_else(|| bad("truncated key list".into()))?;
                let key = CanonicalKey::parse_trusted(line).map_err(bad)?;
                if key.n() != level || keys.last().is_some_and(|last| *last >= key) {
                    return Err(bad(format!("key {line} out of order or of wrong size")));
                }
                keys.push(key);
            }
            Ok(keys)
        };
        let classes = read_keys(count, n)?;
        let pcount = {
            let line = lines.next().ok_or_else(|| bad("missing partial".into()))?;
            line.strip_prefix("partial ")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("bad partial line {line:?}")))?
        };
        let mut partial: Vec<CanonicalKey> = Vec::with_capacity(pcount);
        for _ in 0..pcount {
            let line = lines.next().ok_or_else(|| bad("truncated partial list".into()))?;
            let key = CanonicalKey::parse_trusted(line).map_err(bad)?;
            if key.n() != n + 1 || partial.last().is_some_and(|last| *last >= key) {
                return Err(bad(format!("partial key {line} out of order or of wrong size")));
            }
            partial.push(key);
        }
        if lines.next().is_some() || cursor > classes.len() {
            return Err(bad("trailing data or cursor out of range".into()));
        }
        Ok(Frontier { n, classes, cursor, partial })
    }

    /// Writes the snapshot atomically (temporary file, then rename).
    pub fn save(&self, path: &Path) -> Result<(), CensusError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, self.to_snapshot())?;
        fs::rename(&tmp, path)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, CensusError> {
        Frontier::from_snapshot(&fs::read_to_string(path)?)
    }
}

const SNAPSHOT_HEADER: &str = "gdraw-frontier v1";

/// Generates the children of one class.
pub struct Extender<'t> {
    k4_ok: [bool; 16],
    k5: &'t K5RealizabilityTable,
    realizer: Realizer<'t>,
}

impl<'t> Extender<'t> {
    pub fn new(k4: &'t K4CrossingTable, k5: &'t K5RealizabilityTable) -> Self {
        let mut k4_ok = [false; 16];
        for (i, ok) in k4_ok.iter_mut().enumerate() {
            *ok = k4.by_index(i).is_realizable();
        }
        Extender { k4_ok, k5, realizer: Realizer::guided(k4) }
    }

    /// Canonical keys of all realizable classes on one more vertex whose
    /// canonical parent is `parent`, sorted.
    pub fn children(&self, parent: &CanonicalKey) -> Result<Vec<CanonicalKey>, RealizeError> {
        let p = parent.to_rotation_system();
        let m = p.n();
        let mut state = Insertion {
            ext: self,
            parent,
            rows: p.vertices().map(|v| p.rotation(v).iter().map(|u| u.get()).collect()).collect(),
            pos: p.position_table(),
            m,
            gap: vec![0; m],
            posw: vec![0; m],
            found: BTreeSet::new(),
            error: None,
        };
        let mut rest: Vec<usize> = (1..m).collect();
        for_each_permutation(&mut rest, 0, &mut |order| {
            state.posw[0] = 0;
            for (k, &x) in order.iter().enumerate() {
                state.posw[x] = k as u32 + 1;
            }
            state.place(0);
        });
        if let Some(e) = state.error {
            return Err(e);
        }
        Ok(state.found.into_iter().collect())
    }
}

fn for_each_permutation(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        for_each_permutation(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Backtracking over the slot of the new vertex in each old rotation.
struct Insertion<'a, 't> {
    ext: &'a Extender<'t>,
    parent: &'a CanonicalKey,
    rows: Vec<Vec<usize>>,
    pos: Vec<Vec<usize>>,
    m: usize,
    // new vertex goes right after position gap[a] in the rotation of a
    gap: Vec<usize>,
    // position of each old vertex in the rotation of the new one
    posw: Vec<u32>,
    found: BTreeSet<CanonicalKey>,
    error: Option<RealizeError>,
}

impl Insertion<'_, '_> {
    #[inline]
    fn position(&self, c: usize, x: usize) -> u32 {
        let w = self.m;
        if c == w {
            self.posw[x]
        } else if x == w {
            2 * self.gap[c] as u32 + 1
        } else {
            2 * self.pos[c][x] as u32
        }
    }

    /// Sub-systems on `a`, the new vertex and old vertices below `a`.
    fn consistent(&self, a: usize) -> bool {
        let w = self.m;
        let pos = |c: usize, x: usize| self.position(c, x);
        for k in 0..a {
            for j in 0..k {
                if !self.ext.k4_ok[k4_index_by([j, k, a, w], pos)] {
                    return false;
                }
            }
        }
        for k in 0..a {
            for j in 0..k {
                for h in 0..j {
                    if !self.ext.k5.by_index(k5_index_by([h, j, k, a, w], pos)) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn place(&mut self, a: usize) {
        if self.error.is_some() {
            return;
        }
        if a == self.m {
            self.finish();
            return;
        }
        for g in 0..self.m - 1 {
            self.gap[a] = g;
            if self.consistent(a) {
                self.place(a + 1);
            }
        }
    }

    fn finish(&mut self) {
        let m = self.m;
        let new_label = m + 1;
        let mut rows: Vec<Vec<usize>> = Vec::with_capacity(m + 1);
        for a in 0..m {
            let mut row = self.rows[a].clone();
            row.insert(self.gap[a] + 1, new_label);
            rows.push(row);
        }
        let mut wrow = vec![0usize; m];
        for x in 0..m {
            wrow[self.posw[x] as usize] = x + 1;
        }
        rows.push(wrow);
        let child = RotationSystem::new(rows).expect("insertion keeps a valid system");
        let cf = canonical_form(&child);
        if self.found.contains(&cf.key) {
            return;
        }
        let back = child.remove_vertex(cf.last_vertex()).expect("n >= 4");
        if canonical_key(&back) != *self.parent {
            return;
        }
        match self.ext.realizer.realize(&child) {
            Ok(Realization::Realized(_)) => {
                self.found.insert(cf.key);
            }
            Ok(Realization::Unrealizable) => {}
            Err(e) => self.error = Some(e),
        }
    }
}

/// Outcome of a bounded extension run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Progress {
    /// The frontier moved to the next level.
    Complete,
    /// Stopped early; the frontier holds a resumable cursor.
    Interrupted,
}

/// Drives extension and record computation on a fixed worker pool.
pub struct Enumerator<'t> {
    extender: Extender<'t>,
    realizer: Realizer<'t>,
    pool: rayon::ThreadPool,
    batch: usize,
}

impl Enumerator<'static> {
    /// Uses the built-in tables; `workers = 0` picks one per core.
    pub fn new(workers: usize) -> Result<Self, CensusError> {
        Enumerator::with_tables(default_k4_table(), default_k5_table(), workers)
    }
}

impl<'t> Enumerator<'t> {
    pub fn with_tables(k4: &'t K4CrossingTable, k5: &'t K5RealizabilityTable, workers: usize) -> Result<Self, CensusError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| CensusError::Pool(e.to_string()))?;
        Ok(Enumerator { extender: Extender::new(k4, k5), realizer: Realizer::guided(k4), pool, batch: 64 })
    }

    /// Parents per work batch; checkpoints happen between batches. The
    /// result does not depend on it.
    pub fn with_batch(mut self, batch: usize) -> Self {
        self.batch = batch.max(1);
        self
    }

    pub fn workers(&self) -> usize {
        self.pool.current_num_threads()
    }

    /// Runs `f` on the worker pool.
    pub fn install<R: Send>(&self, f: impl FnOnce() -> R + Send) -> R {
        self.pool.install(f)
    }

    /// Extends `frontier` by one level, calling `checkpoint` after every
    /// batch and after the level change. With `stop_after = Some(k)` it
    /// returns [`Progress::Interrupted`] once `k` parents have been handled
    /// in this call.
    pub fn extend(
        &self,
        frontier: &mut Frontier,
        stop_after: Option<usize>,
        mut checkpoint: impl FnMut(&Frontier) -> Result<(), CensusError>,
    ) -> Result<Progress, CensusError> {
        let mut budget = stop_after;
        self.extend_within(frontier, &mut budget, &mut checkpoint)
    }

    fn extend_within(
        &self,
        frontier: &mut Frontier,
        budget: &mut Option<usize>,
        checkpoint: &mut impl FnMut(&Frontier) -> Result<(), CensusError>,
    ) -> Result<Progress, CensusError> {
        while frontier.cursor < frontier.classes.len() {
            if *budget == Some(0) {
                return Ok(Progress::Interrupted);
            }
            let mut end = (frontier.cursor + self.batch).min(frontier.classes.len());
            if let Some(b) = *budget {
                end = end.min(frontier.cursor + b);
            }
            let parents = &frontier.classes[frontier.cursor..end];
            let children: Vec<Vec<CanonicalKey>> = self.pool.install(|| {
                parents
                    .par_iter()
                    .map(|p| self.extender.children(p))
                    .collect::<Result<_, _>>()
            })?;
            if let Some(b) = budget.as_mut() {
                *b -= end - frontier.cursor;
            }
            frontier.cursor = end;
            frontier.partial.extend(children.into_iter().flatten());
            frontier.partial.sort_unstable();
            let before = frontier.partial.len();
            frontier.partial.dedup();
            debug_assert_eq!(before, frontier.partial.len(), "two parents produced the same child");
            checkpoint(frontier)?;
        }
        frontier.n += 1;
        frontier.classes = std::mem::take(&mut frontier.partial);
        frontier.cursor = 0;
        checkpoint(frontier)?;
        Ok(Progress::Complete)
    }

    /// Extends until the frontier is settled at level `n`; `stop_after`
    /// bounds the number of parents handled over all levels.
    pub fn grow_to(
        &self,
        frontier: &mut Frontier,
        n: usize,
        stop_after: Option<usize>,
        mut checkpoint: impl FnMut(&Frontier) -> Result<(), CensusError>,
    ) -> Result<Progress, CensusError> {
        if frontier.n > n || (frontier.n == n && !frontier.is_settled()) {
            return Err(CensusError::Overshot(n));
        }
        let mut budget = stop_after;
        while frontier.n < n {
            if self.extend_within(frontier, &mut budget, &mut checkpoint)? == Progress::Interrupted {
                return Ok(Progress::Interrupted);
            }
        }
        Ok(Progress::Complete)
    }

    /// The settled frontier at level `n`, from scratch.
    pub fn frontier(&self, n: usize) -> Result<Frontier, CensusError> {
        let mut f = Frontier::k3();
        self.grow_to(&mut f, n, None, |_| Ok(()))?;
        Ok(f)
    }

    /// Realizes one class.
    pub fn drawing(&self, key: &CanonicalKey) -> Result<RealizedDrawing, CensusError> {
        match self.realizer.realize(&key.to_rotation_system())? {
            Realization::Realized(d) => Ok(d),
            Realization::Unrealizable => Err(CensusError::Unrealized(key.clone())),
        }
    }

    /// Records for every class of a settled frontier, sorted by key.
    pub fn census(&self, frontier: &Frontier) -> Result<Census, CensusError> {
        if !frontier.is_settled() {
            return Err(CensusError::Incomplete { have: frontier.n, want: frontier.n });
        }
        let rows: Vec<(CensusRecord, bool)> = self.pool.install(|| {
            frontier
                .classes
                .par_iter()
                .map(|k| {
                    let d = self.drawing(k)?;
                    Ok((CensusRecord::compute(k.clone(), &d), is_achiral(d.source())))
                })
                .collect::<Result<_, CensusError>>()
        })?;
        let unfolded = rows.iter().map(|(_, achiral)| if *achiral { 1 } else { 2 }).sum();
        Ok(Census { n: frontier.n, records: rows.into_iter().map(|r| r.0).collect(), unfolded })
    }

    /// Census at level `n` from scratch.
    pub fn enumerate(&self, n: usize) -> Result<Census, CensusError> {
        self.census(&self.frontier(n)?)
    }

    /// Checks `claim` on every class of `census`.
    pub fn verify(&self, census: &Census, claim: Claim) -> Result<ClaimReport, CensusError> {
        claim.check_applicable(census.n)?;
        let counterexamples: Vec<Option<String>> = self.pool.install(|| {
            census
                .records
                .par_iter()
                .map(|r| claim.counterexample(self, r))
                .collect::<Result<_, CensusError>>()
        })?;
        let mut first = counterexamples.into_iter().flatten().next();
        if claim == Claim::NoLuckyUnique && first.is_none() {
            first = no_lucky_unique(census);
        }
        Ok(ClaimReport { claim, n: census.n, classes: census.records.len(), counterexample: first })
    }
}

/// Census of level `n` up to weak isomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub n: usize,
    /// One record per class, sorted by key.
    pub records: Vec<CensusRecord>,
    /// Classes when a system and its mirror image are counted separately.
    pub unfolded: usize,
}

impl Census {
    pub fn min_empty(&self) -> Option<usize> {
        self.records.iter().map(|r| r.empty).min()
    }

    /// One record per line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for r in &self.records {
            s.push_str(&r.to_string());
            s.push('\n');
        }
        s
    }
}

/// Census at level `n` with the built-in tables on all cores.
pub fn enumerate(n: usize) -> Result<Census, CensusError> {
    Enumerator::new(0)?.enumerate(n)
}

/// Statements checked class by class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Claim {
    /// At least `n` empty triangles.
    TheoremN,
    /// At least `2n - 4` empty triangles.
    Obs2n4,
    /// At least two empty star triangles at every vertex.
    CorTwoStar,
    /// A vertex that is lonely somewhere lies on at least three empty triangles.
    PropLonely3,
    /// A star triangle at `v` is empty iff its other two vertices are adjacent around `v`.
    Prop1Iff,
    /// Deleting `v` leaves `empty - t(v) + l(v)` empty triangles.
    DeletionIdentity,
    /// Exactly one class at `n = 8` has no lucky vertex, none below.
    NoLuckyUnique,
}

impl Claim {
    pub const ALL: [Claim; 7] = [
        Claim::TheoremN,
        Claim::Obs2n4,
        Claim::CorTwoStar,
        Claim::PropLonely3,
        Claim::Prop1Iff,
        Claim::DeletionIdentity,
        Claim::NoLuckyUnique,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::TheoremN => "THEOREM_N",
            Claim::Obs2n4 => "OBS_2N4",
            Claim::CorTwoStar => "COR_TWO_STAR",
            Claim::PropLonely3 => "PROP_LONELY3",
            Claim::Prop1Iff => "PROP1_IFF",
            Claim::DeletionIdentity => "DELETION_IDENTITY",
            Claim::NoLuckyUnique => "NO_LUCKY_UNIQUE",
        }
    }

    fn min_n(self) -> usize {
        match self {
            Claim::Obs2n4 | Claim::Prop1Iff => 3,
            Claim::DeletionIdentity => 5,
            _ => 4,
        }
    }

    fn check_applicable(self, n: usize) -> Result<(), CensusError> {
        if n < self.min_n() || (self == Claim::NoLuckyUnique && n > 8) {
            return Err(CensusError::NotApplicable { claim: self, n });
        }
        Ok(())
    }

    fn counterexample(self, en: &Enumerator<'_>, r: &CensusRecord) -> Result<Option<String>, CensusError> {
        let n = r.n;
        let at = |v: usize, what: String| Some(format!("key={} vertex={} {what}", r.key, v + 1));
        Ok(match self {
            Claim::TheoremN => (r.empty < n).then(|| format!("key={} empty={}", r.key, r.empty)),
            Claim::Obs2n4 => (r.empty + 4 < 2 * n).then(|| format!("key={} empty={}", r.key, r.empty)),
            Claim::PropLonely3 => (0..n)
                .find(|&v| r.l[v] >= 1 && r.t[v] < 3)
                .and_then(|v| at(v, format!("t={} l={}", r.t[v], r.l[v]))),
            Claim::NoLuckyUnique => None,
            Claim::DeletionIdentity => {
                let rs = r.key.to_rotation_system();
                let mut bad = None;
                for v in 0..n {
                    let rest = empty_triangles(&rs.remove_vertex(VertexId::new(v + 1)).expect("n >= 5")).len();
                    if rest + r.t[v] != r.empty + r.l[v] {
                        bad = at(v, format!("after deletion {rest}, empty={} t={} l={}", r.empty, r.t[v], r.l[v]));
                        break;
                    }
                }
                bad
            }
            Claim::CorTwoStar => {
                let d = en.drawing(&r.key)?;
                let set = d.crossing_set();
                let rs = d.source();
                rs.vertices()
                    .map(|v| (v, crate::crossings::empty_star_triangles(rs, v, &set).len()))
                    .find(|&(_, c)| c < 2)
                    .and_then(|(v, c)| at(v.index(), format!("empty star triangles={c}")))
            }
            Claim::Prop1Iff => {
                let d = en.drawing(&r.key)?;
                prop1_violation(&d).map(|(t, apex)| format!("key={} triangle={t} apex={apex}", r.key))
            }
        })
    }
}

/// First star triangle whose emptiness disagrees with adjacency at its apex.
fn prop1_violation(d: &RealizedDrawing) -> Option<(Triangle, VertexId)> {
    let rs = d.source();
    for apex in rs.vertices() {
        let rot = rs.rotation(apex);
        for (i, &u) in rot.iter().enumerate() {
            for &w in &rot[i + 1..] {
                let t = Triangle::new(apex, u, w).expect("distinct");
                if !d.is_star_triangle(&t, apex).expect("apex on triangle") {
                    continue;
                }
                let adjacent = rs.successor(apex, u) == w || rs.successor(apex, w) == u;
                let empty = d.region_partition(&t).expect("valid triangle").is_empty_triangle();
                if empty != adjacent {
                    return Some((t, apex));
                }
            }
        }
    }
    None
}

fn no_lucky_unique(census: &Census) -> Option<String> {
    let free: Vec<&CensusRecord> = census.records.iter().filter(|r| r.lucky == 0).collect();
    let want = usize::from(census.n == 8);
    (free.len() != want).then(|| {
        let keys: Vec<String> = free.iter().take(3).map(|r| r.key.to_string()).collect();
        format!("{} classes without a lucky vertex, expected {want}: {}", free.len(), keys.join(" "))
    })
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = CensusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| CensusError::UnknownClaim(s.to_string()))
    }
}

/// Outcome of checking one claim on one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClaimReport {
    pub claim: Claim,
    pub n: usize,
    pub classes: usize,
    pub counterexample: Option<String>,
}

impl ClaimReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for ClaimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {} n={} classes={}", self.claim, self.n, self.classes)?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_text_round_trip() {
        let en = Enumerator::new(1).unwrap();
        let census = en.enumerate(5).unwrap();
        for r in &census.records {
            assert_eq!(r.to_string().parse::<CensusRecord>().unwrap(), *r);
        }
    }

    #[test]
    fn snapshot_round_trip_and_corruption() {
        let en = Enumerator::new(1).unwrap().with_batch(1);
        let mut f = en.frontier(5).unwrap();
        en.extend(&mut f, Some(2), |_| Ok(())).unwrap();
        let text = f.to_snapshot();
        assert_eq!(Frontier::from_snapshot(&text).unwrap(), f);
        let tampered = text.replacen("cursor 2", "cursor 1", 1);
        assert!(matches!(Frontier::from_snapshot(&tampered), Err(CensusError::CorruptSnapshot(_))));
    }

    #[test]
    fn claim_ids_parse() {
        for c in Claim::ALL {
            assert_eq!(c.id().parse::<Claim>().unwrap(), c);
        }
        assert!(matches!("NOPE".parse::<Claim>(), Err(CensusError::UnknownClaim(_))));
    }
}
