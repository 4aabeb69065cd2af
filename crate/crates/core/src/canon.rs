//! Canonical forms via equitable-partition refinement and backtracking with
//! automorphism pruning. Two graphs get equal forms iff they are isomorphic;
//! the form itself is the graph6 line of the canonically relabelled graph,
//! so it doubles as a loadable witness.

use crate::graph::{bit, low_bits, Graph, MAX_VERTICES};
use crate::graph6::to_graph6;
use serde::{Deserialize, Serialize};

/// Relabelling-invariant encoding of a graph: the graph6 line of the
/// canonical relabelling. Equality is isomorphism.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CanonicalForm(String);

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::fmt::Debug for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "CanonicalForm({})", self.0)
    }
}

/// Canonical form of `g`, invariant under any vertex relabelling.
pub fn canonical_form(g: &Graph) -> CanonicalForm {
    CanonicalForm(to_graph6(&canonical_graph(g)))
}

/// Canonical form of `g` under an initial colouring: only colour-preserving
/// relabellings are considered. Used for rooted/marked-vertex invariants.
pub fn canonical_form_colored(g: &Graph, colors: &[u32]) -> CanonicalForm {
    assert_eq!(colors.len(), g.n());
    let cells = cells_from_colors(g.n(), colors);
    let mut search = Search::new(g);
    search.run(cells);
    CanonicalForm(to_graph6(&search.relabelled()))
}

/// The canonical relabelling of `g` itself.
pub fn canonical_graph(g: &Graph) -> Graph {
    let mut search = Search::new(g);
    search.run(vec![low_bits(g.n())]);
    search.relabelled()
}

/// True iff the distance-k graphs of `g` and `h` are isomorphic. Graphs of
/// different orders are never k-isomorphic.
pub fn k_isomorphic(g: &Graph, h: &Graph, k: usize) -> bool {
    if g.n() != h.n() {
        return false;
    }
    canonical_form(&g.distance_k_graph(k)) == canonical_form(&h.distance_k_graph(k))
}

fn cells_from_colors(n: usize, colors: &[u32]) -> Vec<u64> {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    distinct
        .iter()
        .map(|&c| {
            (0..n)
                .filter(|&v| colors[v] == c)
                .fold(0u64, |m, v| m | bit(v))
        })
        .collect()
}

/// Upper-triangle adjacency bits of `g` relabelled by `inv` (new -> old),
/// packed column-major, most significant bit first. Lexicographic order on
/// the words equals lexicographic order on the graph6 body.
fn encode_bits(g: &Graph, inv: &[u8]) -> Vec<u64> {
    let n = g.n();
    let nbits = n * (n - 1) / 2;
    let mut words = vec![0u64; nbits.div_ceil(64)];
    let mut p = 0usize;
    for j in 1..n {
        let old_j = inv[j] as usize;
        for i in 0..j {
            if g.has_edge(inv[i] as usize, old_j) {
                words[p / 64] |= 1u64 << (63 - (p % 64));
            }
            p += 1;
        }
    }
    words
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    best_bits: Option<Vec<u64>>,
    best_inv: [u8; MAX_VERTICES],
    autos: Vec<[u8; MAX_VERTICES]>,
    base: Vec<u8>,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            g,
            n: g.n(),
            best_bits: None,
            best_inv: [0; MAX_VERTICES],
            autos: Vec::new(),
            base: Vec::new(),
        }
    }

    fn run(&mut self, cells: Vec<u64>) {
        self.descend(cells);
        debug_assert!(self.best_bits.is_some());
    }

    fn relabelled(&self) -> Graph {
        let mut perm = vec![0usize; self.n];
        for pos in 0..self.n {
            perm[self.best_inv[pos] as usize] = pos;
        }
        self.g.relabel(&perm)
    }

    fn descend(&mut self, mut cells: Vec<u64>) {
        self.refine(&mut cells);
        let target = match cells.iter().position(|c| c.count_ones() > 1) {
            None => {
                self.leaf(&cells);
                return;
            }
            Some(first) => {
                // smallest non-singleton cell, earliest position on ties
                let mut best = first;
                for (i, c) in cells.iter().enumerate().skip(first + 1) {
                    if c.count_ones() > 1 && c.count_ones() < cells[best].count_ones() {
                        best = i;
                    }
                }
                best
            }
        };
        let cell = cells[target];
        let mut done = 0u64;
        let mut m = cell;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            if done != 0 && self.orbit_closure(done) & bit(v) != 0 {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(bit(v));
            child.push(cell & !bit(v));
            child.extend_from_slice(&cells[target + 1..]);
            self.base.push(v as u8);
            self.descend(child);
            self.base.pop();
            done |= bit(v);
        }
    }

    /// Orbit of `seed` under the discovered automorphisms that fix the
    /// current base pointwise.
    fn orbit_closure(&self, seed: u64) -> u64 {
        let mut set = seed;
        loop {
            let mut grew = false;
            'autos: for a in &self.autos {
                for &b in &self.base {
                    if a[b as usize] != b {
                        continue 'autos;
                    }
                }
                let mut img = 0u64;
                let mut s = set;
                while s != 0 {
                    let v = s.trailing_zeros() as usize;
                    s &= s - 1;
                    img |= bit(a[v] as usize);
                }
                if img & !set != 0 {
                    set |= img;
                    grew = true;
                }
            }
            if !grew {
                return set;
            }
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let mut inv = [0u8; MAX_VERTICES];
        for (pos, c) in cells.iter().enumerate() {
            inv[pos] = c.trailing_zeros() as u8;
        }
        let bits = encode_bits(self.g, &inv);
        match &self.best_bits {
            None => {
                self.best_bits = Some(bits);
                self.best_inv = inv;
            }
            Some(best) => match bits.cmp(best) {
                std::cmp::Ordering::Less => {
                    // earlier automorphisms remain valid: they were derived
                    // from pairs of equal encodings of g
                    self.best_bits = Some(bits);
                    self.best_inv = inv;
                }
                std::cmp::Ordering::Equal => {
                    let mut a = [0u8; MAX_VERTICES];
                    for pos in 0..self.n {
                        a[inv[pos] as usize] = self.best_inv[pos];
                    }
                    self.autos.push(a);
                }
                std::cmp::Ordering::Greater => {}
            },
        }
    }

    /// Refines to the coarsest equitable partition: every cell is split by
    /// the vector of neighbour counts into the cells of the previous pass,
    /// groups ordered by that vector, until stable.
    fn refine(&self, cells: &mut Vec<u64>) {
        let adj = self.g.rows();
        let mut counts = [[0u8; MAX_VERTICES]; MAX_VERTICES];
        loop {
            let k = cells.len();
            if k == self.n {
                return; // discrete
            }
            for v in 0..self.n {
                for (c, &cell) in cells.iter().enumerate() {
                    counts[v][c] = (adj[v] & cell).count_ones() as u8;
                }
            }
            let mut next: Vec<u64> = Vec::with_capacity(k);
            let mut changed = false;
            for &cell in cells.iter() {
                if cell.count_ones() <= 1 {
                    next.push(cell);
                    continue;
                }
                let mut members: Vec<u8> = Vec::with_capacity(cell.count_ones() as usize);
                let mut m = cell;
                while m != 0 {
                    members.push(m.trailing_zeros() as u8);
                    m &= m - 1;
                }
                members.sort_unstable_by(|&a, &b| counts[a as usize][..k].cmp(&counts[b as usize][..k]));
                let mut group = bit(members[0] as usize);
                for w in members.windows(2) {
                    let (a, b) = (w[0] as usize, w[1] as usize);
                    if counts[a][..k] == counts[b][..k] {
                        group |= bit(b);
                    } else {
                        next.push(group);
                        group = bit(b);
                        changed = true;
                    }
                }
                next.push(group);
            }
            *cells = next;
            if !changed {
                return;
            }
        }
    }
}
