//! Streams of connected graphs and free trees on `n` vertices, one per
//! isomorphism class, plus external graph6 ingestion.
//!
//! Connected graphs come from canonical-deletion augmentation: a parent on
//! `m` vertices is extended by a new vertex joined to every non-empty
//! neighbourhood subset, and a child survives iff deleting its new vertex is
//! the canonical deletion for that child. Memory stays proportional to the
//! recursion depth, not the class count; the hashset baseline lives in
//! [`crate::oracle`] as the test oracle.
//!
//! Free trees use the level-sequence successor algorithm of Wright,
//! Richmond, Odlyzko and McKay, which steps between canonical level
//! sequences in constant amortized time.
//!
//! Both internal generators are shardable (disjoint subtree slices with a
//! deterministic merge) and resumable (the cursor pins the exact position).

use crate::canon::{canonical_form, canonical_form_colored, CanonicalForm};
use crate::error::{Error, Result};
use crate::graph::{bit, low_bits, Graph, MAX_VERTICES};
use crate::graph6::Graph6Reader;
use serde::{Deserialize, Serialize};
use std::collections::HashSet;
use std::fs::File;
use std::io::BufReader;
use std::path::{Path as FsPath, PathBuf};

/// Largest `n` the internal connected-graph generator accepts.
pub const CONNECTED_ENVELOPE: usize = 12;
/// Largest `n` the internal free-tree generator accepts.
pub const TREE_ENVELOPE: usize = 18;

/// Level (vertex count) at which the augmentation tree is split into
/// shards: every subtree rooted at a graph of this size is assigned
/// round-robin to the shards.
fn shard_gate_level(n: usize) -> usize {
    n.saturating_sub(1).clamp(2, 7).min(n)
}

/// Position inside a stream, sufficient to reproduce its exact suffix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamCursor {
    /// Subset choices along the augmentation path of the last yielded
    /// graph, plus the number of shard-gate subtrees already dealt out.
    Augmentation { n: usize, path: Vec<u64>, gate_count: u64 },
    /// Level sequence of the last yielded tree and its stream index.
    TreeLayout { n: usize, layout: Vec<u8>, index: u64 },
    /// Line number of the last yielded record in an external file.
    ExternalLine { line: u64 },
    /// The stream had not yielded anything yet.
    Start,
    Finished,
}

// ---------------------------------------------------------------------------
// canonical-deletion acceptance
// ---------------------------------------------------------------------------

/// Vertices whose removal disconnects the graph.
fn articulation_mask(g: &Graph) -> u64 {
    let mut disc = [0u8; MAX_VERTICES];
    let mut low = [0u8; MAX_VERTICES];
    let mut timer = 0u8;
    let mut art = 0u64;
    fn dfs(
        g: &Graph,
        u: usize,
        parent: usize,
        timer: &mut u8,
        disc: &mut [u8; MAX_VERTICES],
        low: &mut [u8; MAX_VERTICES],
        art: &mut u64,
    ) -> usize {
        *timer += 1;
        disc[u] = *timer;
        low[u] = *timer;
        let mut children = 0usize;
        let mut row = g.neighbors(u);
        while row != 0 {
            let w = row.trailing_zeros() as usize;
            row &= row - 1;
            if w == parent {
                continue;
            }
            if disc[w] == 0 {
                children += 1;
                dfs(g, w, u, timer, disc, low, art);
                low[u] = low[u].min(low[w]);
                if parent != usize::MAX && low[w] >= disc[u] {
                    *art |= bit(u);
                }
            } else {
                low[u] = low[u].min(disc[w]);
            }
        }
        children
    }
    let root_children = dfs(g, 0, usize::MAX, &mut timer, &mut disc, &mut low, &mut art);
    if root_children >= 2 {
        art |= bit(0);
    }
    art
}

/// Automorphism-invariant vertex fingerprint: degree profile of the
/// neighbourhood plus BFS layer sizes, FNV-mixed. Only used to order
/// vertices inside the canonical-deletion decision, with rooted canonical
/// forms as the exact tie-break, so a hash collision costs time, never
/// correctness.
fn vertex_invariant(g: &Graph, v: usize) -> u64 {
    const PRIME: u64 = 0x100000001b3;
    let mut h = 0xcbf29ce484222325u64;
    let mut buckets = [0u8; MAX_VERTICES + 1];
    let mut row = g.neighbors(v);
    while row != 0 {
        let w = row.trailing_zeros() as usize;
        row &= row - 1;
        buckets[g.degree(w)] += 1;
    }
    for b in buckets.iter().take(g.n() + 1) {
        h = (h ^ *b as u64).wrapping_mul(PRIME);
    }
    let mut seen = bit(v);
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let w = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= g.neighbors(w);
        }
        frontier = next & !seen;
        seen |= frontier;
        h = (h ^ frontier.count_ones() as u64).wrapping_mul(PRIME);
    }
    h
}

fn rooted_form(g: &Graph, root: usize) -> CanonicalForm {
    let mut colors = vec![1u32; g.n()];
    colors[root] = 0;
    canonical_form_colored(g, &colors)
}

/// Canonical-deletion test: the child (built by attaching vertex `n-1` to a
/// connected parent) is kept iff its new vertex belongs to the canonically
/// chosen orbit of non-cut vertices. The choice minimizes, over non-cut
/// vertices, the triple (degree, fingerprint, rooted canonical form); the
/// rooted form separates orbits exactly, so the rule depends only on the
/// isomorphism class of the child.
fn accept_child(child: &Graph) -> bool {
    let n = child.n();
    let v = n - 1;
    let deletable = low_bits(n) & !articulation_mask(child);
    debug_assert_ne!(deletable & bit(v), 0, "the new vertex is never a cut vertex");
    if deletable == bit(v) {
        return true;
    }
    // level 0: degree
    let mut tied = 0u64;
    let mut min_deg = usize::MAX;
    let mut m = deletable;
    while m != 0 {
        let d = m.trailing_zeros() as usize;
        m &= m - 1;
        let deg = child.degree(d);
        match deg.cmp(&min_deg) {
            std::cmp::Ordering::Less => {
                min_deg = deg;
                tied = bit(d);
            }
            std::cmp::Ordering::Equal => tied |= bit(d),
            std::cmp::Ordering::Greater => {}
        }
    }
    if tied & bit(v) == 0 {
        return false;
    }
    if tied == bit(v) {
        return true;
    }
    // level 1: fingerprint
    let mut tied2 = 0u64;
    let mut min_h = u64::MAX;
    m = tied;
    while m != 0 {
        let d = m.trailing_zeros() as usize;
        m &= m - 1;
        let h = vertex_invariant(child, d);
        match h.cmp(&min_h) {
            std::cmp::Ordering::Less => {
                min_h = h;
                tied2 = bit(d);
            }
            std::cmp::Ordering::Equal => tied2 |= bit(d),
            std::cmp::Ordering::Greater => {}
        }
    }
    if tied2 & bit(v) == 0 {
        return false;
    }
    if tied2 == bit(v) {
        return true;
    }
    // level 2: rooted canonical forms decide exactly
    let rv = rooted_form(child, v);
    m = tied2 & !bit(v);
    while m != 0 {
        let d = m.trailing_zeros() as usize;
        m &= m - 1;
        if rooted_form(child, d) < rv {
            return false;
        }
    }
    true
}

fn extend(parent: &Graph, subset: u64) -> Graph {
    let m = parent.n();
    let mut rows = Vec::with_capacity(m + 1);
    rows.extend_from_slice(parent.rows());
    rows.push(subset);
    let mut s = subset;
    while s != 0 {
        let u = s.trailing_zeros() as usize;
        s &= s - 1;
        rows[u] |= bit(m);
    }
    Graph::from_rows_unchecked(m + 1, rows)
}

// ---------------------------------------------------------------------------
// connected graphs
// ---------------------------------------------------------------------------

struct Frame {
    g: Graph,
    next_subset: u64,
    accepted: HashSet<CanonicalForm>,
}

/// Streams every connected graph on `n` vertices exactly once up to
/// isomorphism, in a deterministic DFS order.
pub struct ConnectedGraphs {
    n: usize,
    shard_index: u64,
    shard_total: u64,
    gate_level: usize,
    gate_count: u64,
    stack: Vec<Frame>,
    path: Vec<u64>,
    cursor: StreamCursor,
    yielded_single: bool,
}

impl ConnectedGraphs {
    pub fn new(n: usize) -> Result<Self> {
        Self::sharded(n, 0, 1)
    }

    /// Shard `shard_index` of `shard_total`: processes every shard-gate
    /// subtree whose DFS index is congruent to `shard_index`. The union
    /// over all shards is the full stream, with no overlap.
    pub fn sharded(n: usize, shard_index: u64, shard_total: u64) -> Result<Self> {
        if n == 0 || n > CONNECTED_ENVELOPE {
            return Err(Error::Envelope(
                format!("connected graph generation for n = {n}"),
                format!(
                    "supported range is 1..={CONNECTED_ENVELOPE}; ingest an external graph6 stream for larger orders"
                ),
            ));
        }
        if shard_total == 0 || shard_index >= shard_total {
            return Err(Error::InvalidParameter(format!(
                "shard {shard_index}/{shard_total} is not a valid shard"
            )));
        }
        Ok(ConnectedGraphs {
            n,
            shard_index,
            shard_total,
            gate_level: shard_gate_level(n),
            gate_count: 0,
            stack: vec![Frame {
                g: Graph::empty(1).expect("K_1"),
                next_subset: 1,
                accepted: HashSet::new(),
            }],
            path: Vec::new(),
            cursor: StreamCursor::Start,
            yielded_single: false,
        })
    }

    /// Rebuilds a stream positioned immediately after the graph its cursor
    /// was taken at.
    pub fn resume(
        n: usize,
        shard_index: u64,
        shard_total: u64,
        cursor: &StreamCursor,
    ) -> Result<Self> {
        let mut stream = Self::sharded(n, shard_index, shard_total)?;
        match cursor {
            StreamCursor::Start => return Ok(stream),
            StreamCursor::Finished => {
                stream.stack.clear();
                stream.yielded_single = true;
                stream.cursor = StreamCursor::Finished;
                return Ok(stream);
            }
            StreamCursor::Augmentation { n: cn, path, gate_count } => {
                if *cn != n {
                    return Err(Error::Checkpoint(format!(
                        "cursor is for n = {cn}, stream is for n = {n}"
                    )));
                }
                if n == 1 {
                    stream.yielded_single = true;
                    return Ok(stream);
                }
                if path.len() != n - 1 {
                    return Err(Error::Checkpoint(format!(
                        "augmentation path of length {} cannot reach order {n}",
                        path.len()
                    )));
                }
                stream.stack.clear();
                let mut g = Graph::empty(1).expect("K_1");
                for (level, &taken) in path.iter().enumerate() {
                    let limit = 1u64 << g.n();
                    if taken == 0 || taken >= limit {
                        return Err(Error::Checkpoint(format!(
                            "subset {taken:#x} out of range at level {level}"
                        )));
                    }
                    let mut frame = Frame {
                        g: g.clone(),
                        next_subset: taken + 1,
                        accepted: HashSet::new(),
                    };
                    // replay this frame's earlier accepted children so the
                    // isomorph dedup continues exactly where it left off
                    for s in 1..=taken {
                        let child = extend(&frame.g, s);
                        if accept_child(&child) {
                            frame.accepted.insert(canonical_form(&child));
                        }
                    }
                    g = extend(&frame.g, taken);
                    stream.stack.push(frame);
                }
                stream.path = path[..path.len() - 1].to_vec();
                stream.gate_count = *gate_count;
                stream.cursor = cursor.clone();
            }
            other => {
                return Err(Error::Checkpoint(format!(
                    "cursor kind {other:?} does not belong to a connected-graph stream"
                )));
            }
        }
        Ok(stream)
    }

    /// Cursor of the last yielded graph.
    pub fn cursor(&self) -> StreamCursor {
        self.cursor.clone()
    }
}

impl Iterator for ConnectedGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.n == 1 {
            if self.yielded_single || self.shard_index != 0 {
                self.cursor = StreamCursor::Finished;
                return None;
            }
            self.yielded_single = true;
            self.cursor = StreamCursor::Augmentation {
                n: 1,
                path: Vec::new(),
                gate_count: 0,
            };
            return Some(Graph::empty(1).expect("K_1"));
        }
        loop {
            let top = match self.stack.last_mut() {
                Some(top) => top,
                None => {
                    self.cursor = StreamCursor::Finished;
                    return None;
                }
            };
            let m = top.g.n();
            let limit = 1u64 << m;
            let mut chosen: Option<(Graph, u64)> = None;
            while top.next_subset < limit {
                let s = top.next_subset;
                top.next_subset += 1;
                let child = extend(&top.g, s);
                if !accept_child(&child) {
                    continue;
                }
                if !top.accepted.insert(canonical_form(&child)) {
                    continue;
                }
                chosen = Some((child, s));
                break;
            }
            let (child, s) = match chosen {
                None => {
                    self.stack.pop();
                    self.path.pop();
                    continue;
                }
                Some(found) => found,
            };
            if child.n() == self.gate_level {
                let idx = self.gate_count;
                self.gate_count += 1;
                if idx % self.shard_total != self.shard_index {
                    continue; // another shard's subtree
                }
            }
            if child.n() == self.n {
                let mut full_path = self.path.clone();
                full_path.push(s);
                self.cursor = StreamCursor::Augmentation {
                    n: self.n,
                    path: full_path,
                    gate_count: self.gate_count,
                };
                return Some(child);
            }
            self.path.push(s);
            self.stack.push(Frame {
                g: child,
                next_subset: 1,
                accepted: HashSet::new(),
            });
        }
    }
}

// ---------------------------------------------------------------------------
// free trees
// ---------------------------------------------------------------------------

/// Streams every free tree on `n` vertices exactly once, via level-sequence
/// successors.
pub struct FreeTrees {
    n: usize,
    shard_index: u64,
    shard_total: u64,
    index: u64,
    layout: Option<Vec<u8>>,
    cursor: StreamCursor,
}

impl FreeTrees {
    pub fn new(n: usize) -> Result<Self> {
        Self::sharded(n, 0, 1)
    }

    pub fn sharded(n: usize, shard_index: u64, shard_total: u64) -> Result<Self> {
        if n == 0 || n > TREE_ENVELOPE {
            return Err(Error::Envelope(
                format!("free tree generation for n = {n}"),
                format!("supported range is 1..={TREE_ENVELOPE}"),
            ));
        }
        if shard_total == 0 || shard_index >= shard_total {
            return Err(Error::InvalidParameter(format!(
                "shard {shard_index}/{shard_total} is not a valid shard"
            )));
        }
        // start at the path rooted at its centre
        let layout: Vec<u8> = if n == 1 {
            vec![0]
        } else {
            let mut l: Vec<u8> = (0..=(n / 2) as u8).collect();
            l.extend(1..n.div_ceil(2) as u8);
            l
        };
        Ok(FreeTrees {
            n,
            shard_index,
            shard_total,
            index: 0,
            layout: Some(layout),
            cursor: StreamCursor::Start,
        })
    }

    pub fn resume(
        n: usize,
        shard_index: u64,
        shard_total: u64,
        cursor: &StreamCursor,
    ) -> Result<Self> {
        let mut stream = Self::sharded(n, shard_index, shard_total)?;
        match cursor {
            StreamCursor::Start => {}
            StreamCursor::Finished => {
                stream.layout = None;
                stream.cursor = StreamCursor::Finished;
            }
            StreamCursor::TreeLayout { n: cn, layout, index } => {
                if *cn != n {
                    return Err(Error::Checkpoint(format!(
                        "cursor is for n = {cn}, stream is for n = {n}"
                    )));
                }
                if layout.len() != n {
                    return Err(Error::Checkpoint("layout length does not match n".into()));
                }
                stream.layout = if n <= 2 { None } else { next_rooted_tree(layout, None) };
                stream.index = index + 1;
                stream.cursor = cursor.clone();
            }
            other => {
                return Err(Error::Checkpoint(format!(
                    "cursor kind {other:?} does not belong to a free-tree stream"
                )));
            }
        }
        Ok(stream)
    }

    pub fn cursor(&self) -> StreamCursor {
        self.cursor.clone()
    }
}

impl Iterator for FreeTrees {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let layout = match self.layout.take() {
                None => {
                    self.cursor = StreamCursor::Finished;
                    return None;
                }
                Some(l) => l,
            };
            // n <= 2 has a single class; the successor machinery starts at
            // n = 3
            let valid = if self.n <= 2 {
                layout
            } else {
                match next_free_tree(&layout) {
                    None => {
                        self.cursor = StreamCursor::Finished;
                        return None;
                    }
                    Some(v) => v,
                }
            };
            let idx = self.index;
            self.index += 1;
            self.layout = if self.n <= 2 { None } else { next_rooted_tree(&valid, None) };
            if idx % self.shard_total != self.shard_index {
                continue;
            }
            self.cursor = StreamCursor::TreeLayout {
                n: self.n,
                layout: valid.clone(),
                index: idx,
            };
            return Some(layout_to_graph(&valid));
        }
    }
}

/// Beyer–Hedetniemi successor of a rooted-tree level sequence, restricted
/// to position `p` when given.
fn next_rooted_tree(pred: &[u8], p: Option<usize>) -> Option<Vec<u8>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                if p == 0 {
                    return None;
                }
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut result = pred.to_vec();
    for i in p..result.len() {
        result[i] = result[i - p + q];
    }
    Some(result)
}

/// Splits a level sequence into the root's first subtree and the rest.
fn split_tree(layout: &[u8]) -> (Vec<u8>, Vec<u8>) {
    let mut one_found = false;
    let mut m = layout.len();
    for (i, &d) in layout.iter().enumerate() {
        if d == 1 {
            if one_found {
                m = i;
                break;
            }
            one_found = true;
        }
    }
    let left: Vec<u8> = layout[1..m].iter().map(|&d| d - 1).collect();
    let rest: Vec<u8> = std::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

/// One step of the Wright–Richmond–Odlyzko–McKay iteration: returns the
/// candidate itself when it encodes a valid free tree (first root subtree
/// no higher, no wider, and no larger as a sequence than the rest),
/// otherwise jumps to the next valid sequence.
fn next_free_tree(candidate: &[u8]) -> Option<Vec<u8>> {
    let (left, rest) = split_tree(candidate);
    let left_height = left.iter().max().copied().unwrap_or(0);
    let rest_height = rest.iter().max().copied().expect("rest contains the root");
    let mut valid = rest_height >= left_height;
    if valid && rest_height == left_height {
        let wider = left.len() > rest.len();
        let larger = left.len() == rest.len() && left > rest;
        valid = !(wider || larger);
    }
    if valid {
        return Some(candidate.to_vec());
    }
    let p = left.len();
    let mut next = next_rooted_tree(candidate, Some(p))?;
    if candidate[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let new_left_height = new_left.iter().max().copied().unwrap_or(0);
        let suffix: Vec<u8> = (1..=new_left_height + 1).collect();
        let start = next.len() - suffix.len();
        next[start..].copy_from_slice(&suffix);
    }
    Some(next)
}

/// Decodes a level sequence: each vertex attaches to the nearest earlier
/// vertex one level up.
fn layout_to_graph(layout: &[u8]) -> Graph {
    let n = layout.len();
    let mut g = Graph::empty(n).expect("tree order within limits");
    let mut last_at_level = [usize::MAX; MAX_VERTICES + 1];
    last_at_level[0] = 0;
    for (i, &level) in layout.iter().enumerate().skip(1) {
        let parent = last_at_level[level as usize - 1];
        g.add_edge(parent, i).expect("level sequences encode trees");
        last_at_level[level as usize] = i;
    }
    g
}

// ---------------------------------------------------------------------------
// external streams
// ---------------------------------------------------------------------------

/// A line-delimited graph6 file as a stream; no dedup is performed.
pub struct ExternalStream {
    path: PathBuf,
    reader: Graph6Reader<BufReader<File>>,
    shard_index: u64,
    shard_total: u64,
    record: u64,
    cursor: StreamCursor,
}

impl ExternalStream {
    pub fn open(path: &FsPath) -> Result<Self> {
        Self::sharded(path, 0, 1)
    }

    pub fn sharded(path: &FsPath, shard_index: u64, shard_total: u64) -> Result<Self> {
        if shard_total == 0 || shard_index >= shard_total {
            return Err(Error::InvalidParameter(format!(
                "shard {shard_index}/{shard_total} is not a valid shard"
            )));
        }
        let file = File::open(path)?;
        Ok(ExternalStream {
            path: path.to_path_buf(),
            reader: Graph6Reader::new(BufReader::new(file)),
            shard_index,
            shard_total,
            record: 0,
            cursor: StreamCursor::Start,
        })
    }

    pub fn resume(
        path: &FsPath,
        shard_index: u64,
        shard_total: u64,
        cursor: &StreamCursor,
    ) -> Result<Self> {
        let mut stream = Self::sharded(path, shard_index, shard_total)?;
        match cursor {
            StreamCursor::Start => {}
            StreamCursor::Finished => stream.cursor = StreamCursor::Finished,
            StreamCursor::ExternalLine { line } => {
                // skip forward to just past the recorded line
                while (stream.reader.line_no() as u64) < *line {
                    match stream.reader.next() {
                        Some(Ok(_)) => stream.record += 1,
                        Some(Err(e)) => return Err(e),
                        None => {
                            return Err(Error::Checkpoint(format!(
                                "external stream {} ended before line {line}",
                                stream.path.display()
                            )))
                        }
                    }
                }
                stream.cursor = cursor.clone();
            }
            other => {
                return Err(Error::Checkpoint(format!(
                    "cursor kind {other:?} does not belong to an external stream"
                )));
            }
        }
        Ok(stream)
    }

    pub fn cursor(&self) -> StreamCursor {
        self.cursor.clone()
    }
}

impl Iterator for ExternalStream {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            match self.reader.next() {
                None => {
                    self.cursor = StreamCursor::Finished;
                    return None;
                }
                Some(Err(e)) => return Some(Err(e)),
                Some(Ok((line, g))) => {
                    let idx = self.record;
                    self.record += 1;
                    if idx % self.shard_total != self.shard_index {
                        continue;
                    }
                    self.cursor = StreamCursor::ExternalLine { line: line as u64 };
                    return Some(Ok(g));
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// unified stream
// ---------------------------------------------------------------------------

/// Where a stream's graphs come from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StreamSource {
    Connected { n: usize },
    Trees { n: usize },
    External { path: PathBuf },
}

/// A single-consumer stream of graphs with shard and resume support.
pub enum GraphStream {
    Connected(ConnectedGraphs),
    Trees(FreeTrees),
    External(ExternalStream),
}

impl GraphStream {
    pub fn new(source: &StreamSource, shard_index: u64, shard_total: u64) -> Result<Self> {
        Ok(match source {
            StreamSource::Connected { n } => {
                GraphStream::Connected(ConnectedGraphs::sharded(*n, shard_index, shard_total)?)
            }
            StreamSource::Trees { n } => {
                GraphStream::Trees(FreeTrees::sharded(*n, shard_index, shard_total)?)
            }
            StreamSource::External { path } => {
                GraphStream::External(ExternalStream::sharded(path, shard_index, shard_total)?)
            }
        })
    }

    pub fn resume(
        source: &StreamSource,
        shard_index: u64,
        shard_total: u64,
        cursor: &StreamCursor,
    ) -> Result<Self> {
        Ok(match source {
            StreamSource::Connected { n } => GraphStream::Connected(ConnectedGraphs::resume(
                *n,
                shard_index,
                shard_total,
                cursor,
            )?),
            StreamSource::Trees { n } => {
                GraphStream::Trees(FreeTrees::resume(*n, shard_index, shard_total, cursor)?)
            }
            StreamSource::External { path } => GraphStream::External(ExternalStream::resume(
                path,
                shard_index,
                shard_total,
                cursor,
            )?),
        })
    }

    pub fn cursor(&self) -> StreamCursor {
        match self {
            GraphStream::Connected(s) => s.cursor(),
            GraphStream::Trees(s) => s.cursor(),
            GraphStream::External(s) => s.cursor(),
        }
    }
}

impl Iterator for GraphStream {
    type Item = Result<Graph>;

    fn next(&mut self) -> Option<Self::Item> {
        match self {
            GraphStream::Connected(s) => s.next().map(Ok),
            GraphStream::Trees(s) => s.next().map(Ok),
            GraphStream::External(s) => s.next(),
        }
    }
}
