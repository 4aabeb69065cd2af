//! Interior/unaffiliated vertex machinery, geodesics, breadth-first trees
//! containing a prescribed geodesic, longest tree paths, and the
//! spanning-tree path-length dichotomy checker.

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_VERTICES};
use crate::graph6::to_graph6;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// A path as an ordered vertex sequence; consecutive vertices are adjacent
/// in the graph it was built from, and no vertex repeats. `len()` is the
/// number of vertices, which is always at least one.
#[derive(Clone, Debug, PartialEq, Eq)]
#[allow(clippy::len_without_is_empty)]
pub struct Path {
    vertices: Vec<usize>,
}

impl Path {
    /// Validates consecutive adjacency and distinctness against `g`.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("a path has at least one vertex".into()));
        }
        let mut seen = 0u64;
        for &v in &vertices {
            if v >= g.n() {
                return Err(Error::VertexOutOfRange { vertex: v, order: g.n() });
            }
            if seen & bit(v) != 0 {
                return Err(Error::InvalidParameter(format!("vertex {v} repeats on the path")));
            }
            seen |= bit(v);
        }
        for w in vertices.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return Err(Error::InvalidParameter(format!(
                    "consecutive path vertices {} and {} are not adjacent",
                    w[0], w[1]
                )));
            }
        }
        Ok(Path { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Number of vertices on the path.
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn endpoints(&self) -> (usize, usize) {
        (self.vertices[0], *self.vertices.last().unwrap())
    }
}

/// A rooted spanning tree: parent pointers (the root maps to itself) and
/// depths consistent with the parent chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> usize {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    pub fn n(&self) -> usize {
        self.parent.len()
    }

    /// The tree as a plain graph on the same vertex set.
    pub fn to_graph(&self) -> Graph {
        let mut g = Graph::empty(self.n()).expect("tree order already validated");
        for v in 0..self.n() {
            if v != self.root {
                g.add_edge(v, self.parent[v]).expect("parent edges are valid");
            }
        }
        g
    }

    /// The unique tree path from `u` to `v`.
    pub fn tree_path(&self, u: usize, v: usize) -> Vec<usize> {
        let (mut a, mut b) = (u, v);
        let mut front = vec![a];
        let mut back = vec![b];
        while self.depth[a] > self.depth[b] {
            a = self.parent[a];
            front.push(a);
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b];
            back.push(b);
        }
        while a != b {
            a = self.parent[a];
            front.push(a);
            b = self.parent[b];
            back.push(b);
        }
        back.pop(); // the meeting vertex is already on `front`
        front.extend(back.into_iter().rev());
        front
    }
}

/// Vertices with no k-neighbours at all (k-degree zero).
pub fn interior_vertices(g: &Graph, k: usize) -> Vec<usize> {
    g.vertices().filter(|&v| g.k_degree(k, v) == 0).collect()
}

/// Number of interior vertices.
pub fn interior_count(g: &Graph, k: usize) -> usize {
    g.vertices().filter(|&v| g.k_degree(k, v) == 0).count()
}

/// Vertices at distance != k from both `u` and `v`. Each endpoint of a
/// k-distance is affiliated with the other, so endpoints never appear.
pub fn unaffiliated_vertices(g: &Graph, k: usize, u: usize, v: usize) -> Vec<usize> {
    let du = g.bfs_distances(u);
    let dv = g.bfs_distances(v);
    g.vertices()
        .filter(|&z| du[z] as usize != k && dv[z] as usize != k)
        .collect()
}

/// Minimum number of unaffiliated vertices over all k-distance pairs.
/// Errors when the distance-k graph has no edges.
pub fn min_unaffiliated(g: &Graph, k: usize) -> Result<usize> {
    let n = g.n();
    let dist: Vec<[u8; MAX_VERTICES]> = g.vertices().map(|v| g.bfs_distances(v)).collect();
    let kk = k as u8;
    let mut best: Option<usize> = None;
    for u in 0..n {
        for v in (u + 1)..n {
            if dist[u][v] != kk {
                continue;
            }
            let count = (0..n)
                .filter(|&z| dist[u][z] != kk && dist[v][z] != kk)
                .count();
            best = Some(best.map_or(count, |b| b.min(count)));
        }
    }
    best.ok_or(Error::EmptyDistanceGraph(k))
}

/// A shortest `u`-`v` path, lexicographically least among all of them.
pub fn geodesic(g: &Graph, u: usize, v: usize) -> Result<Path> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, order: g.n() });
        }
    }
    let dv = g.bfs_distances(v);
    if dv[u] == u8::MAX {
        return Err(Error::Unreachable(u, v));
    }
    // greedy: always step to the least neighbour that still lies on a
    // shortest path to v
    let mut seq = vec![u];
    let mut cur = u;
    while cur != v {
        let mut row = g.neighbors(cur);
        let mut next = None;
        while row != 0 {
            let w = row.trailing_zeros() as usize;
            row &= row - 1;
            if dv[w] != u8::MAX && dv[w] + 1 == dv[cur] {
                next = Some(w);
                break; // bits come out in ascending order
            }
        }
        cur = next.expect("a shortest path always has a next hop");
        seq.push(cur);
    }
    Path::new(g, seq)
}

/// Breadth-first tree from `root` forced to contain the geodesic `p`
/// (which must start at `root`). Depths equal graph distances from the
/// root; all other parents follow the least-vertex-id rule.
pub fn bfs_tree_containing(g: &Graph, root: usize, p: &Path) -> Result<RootedTree> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, order: g.n() });
    }
    let depth_of = g.bfs_distances(root);
    if (0..g.n()).any(|v| depth_of[v] == u8::MAX) {
        return Err(Error::Disconnected);
    }
    let verts = p.vertices();
    if verts[0] != root {
        return Err(Error::InvalidParameter(format!(
            "prescribed path starts at {} but the root is {root}",
            verts[0]
        )));
    }
    for (i, &x) in verts.iter().enumerate() {
        if depth_of[x] as usize != i {
            return Err(Error::InvalidParameter(format!(
                "prescribed path is not a geodesic from the root: vertex {x} sits at position {i} but distance {}",
                depth_of[x]
            )));
        }
    }
    let mut parent = vec![usize::MAX; g.n()];
    let mut depth = vec![0usize; g.n()];
    parent[root] = root;
    for w in p.vertices().windows(2) {
        parent[w[1]] = w[0];
    }
    for v in g.vertices() {
        depth[v] = depth_of[v] as usize;
        if parent[v] != usize::MAX {
            continue;
        }
        let mut row = g.neighbors(v);
        while row != 0 {
            let w = row.trailing_zeros() as usize;
            row &= row - 1;
            if depth_of[w] as usize + 1 == depth_of[v] as usize {
                parent[v] = w;
                break;
            }
        }
        debug_assert_ne!(parent[v], usize::MAX);
    }
    Ok(RootedTree { root, parent, depth })
}

/// Longest path in a rooted tree (by vertex count), endpoints chosen as the
/// lexicographically least pair attaining the maximum.
pub fn longest_tree_path(t: &RootedTree) -> Path {
    let tree = t.to_graph();
    let mut best_len = 0usize;
    let mut best_pair = (0usize, 0usize);
    for x in 0..tree.n() {
        let dx = tree.bfs_distances(x);
        for y in (x + 1)..tree.n() {
            let d = dx[y] as usize;
            if d + 1 > best_len {
                best_len = d + 1;
                best_pair = (x, y);
            }
        }
    }
    if best_len == 0 {
        // single-vertex tree
        return Path::new(&tree, vec![t.root()]).expect("trivial path");
    }
    let seq = t.tree_path(best_pair.0, best_pair.1);
    Path::new(&tree, seq).expect("tree paths are valid paths")
}

/// Splits a BFS-tree path at its vertex nearest the root. The distance
/// sequence along such a path is strictly decreasing then strictly
/// increasing; both halves (each including the minimum vertex) are
/// geodesics. Errors if the supplied distances are not unimodal along `p`.
pub fn split_at_nearest(g: &Graph, p: &Path, dist_from_root: &[usize]) -> Result<(Path, Path)> {
    let verts = p.vertices();
    let ds: Vec<usize> = verts.iter().map(|&v| dist_from_root[v]).collect();
    let mut zpos = 0usize;
    for (i, &d) in ds.iter().enumerate() {
        if d < ds[zpos] {
            zpos = i;
        }
    }
    let unimodal = ds[..zpos].windows(2).all(|w| w[0] > w[1])
        && ds[zpos..].windows(2).all(|w| w[0] < w[1]);
    if !unimodal {
        return Err(Error::InvalidParameter(
            "distance sequence along the path is not unimodal; not a BFS-tree path".into(),
        ));
    }
    let first = Path::new(g, verts[..=zpos].to_vec())?;
    let second = Path::new(g, verts[zpos..].to_vec())?;
    for part in [&first, &second] {
        let (a, b) = part.endpoints();
        debug_assert_eq!(
            g.distances().get(a, b),
            Some(part.len() - 1),
            "each half of a BFS-tree path is a geodesic"
        );
    }
    Ok((first, second))
}

/// Exact number of spanning trees by the matrix-tree theorem (integer
/// Bareiss elimination on a Laplacian minor).
pub fn spanning_tree_count(g: &Graph) -> BigInt {
    let n = g.n();
    if n == 1 {
        return BigInt::from(1);
    }
    let k = n - 1;
    let mut m = vec![vec![BigInt::zero(); k]; k];
    for v in 0..k {
        m[v][v] = BigInt::from(g.degree(v) as i64);
    }
    for (u, v) in g.edges() {
        if u < k && v < k {
            m[u][v] = BigInt::from(-1);
            m[v][u] = BigInt::from(-1);
        }
    }
    // fraction-free Bareiss determinant
    let mut sign = 1i64;
    let mut prev = BigInt::from(1);
    for i in 0..k {
        if m[i][i].is_zero() {
            match (i + 1..k).find(|&r| !m[r][i].is_zero()) {
                Some(r) => {
                    m.swap(i, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for r in (i + 1)..k {
            for c in (i + 1)..k {
                let num = &m[r][c] * &m[i][i] - &m[r][i] * &m[i][c];
                m[r][c] = num / &prev; // exact by Bareiss
            }
            m[r][i] = BigInt::zero();
        }
        prev = m[i][i].clone();
    }
    let det = m[k - 1][k - 1].clone() * sign;
    debug_assert!(!det.is_negative());
    det
}

/// Enumerates every spanning tree exactly once by edge
/// contraction/deletion, calling `visit` with each tree. Returns the count.
pub fn enumerate_spanning_trees<F: FnMut(&Graph)>(g: &Graph, visit: &mut F) -> u64 {
    if !g.is_connected() {
        return 0;
    }
    let n = g.n();
    if n == 1 {
        visit(&Graph::empty(1).expect("single vertex"));
        return 1;
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let mut uf: Vec<usize> = (0..n).collect();
    let mut chosen = Vec::with_capacity(n - 1);
    let mut count = 0u64;
    recurse_trees(n, &edges, 0, &mut uf, n, &mut chosen, visit, &mut count);
    count
}

fn uf_find(uf: &[usize], mut v: usize) -> usize {
    while uf[v] != v {
        v = uf[v];
    }
    v
}

#[allow(clippy::too_many_arguments)]
fn recurse_trees<F: FnMut(&Graph)>(
    n: usize,
    edges: &[(usize, usize)],
    from: usize,
    uf: &mut Vec<usize>,
    components: usize,
    chosen: &mut Vec<(usize, usize)>,
    visit: &mut F,
    count: &mut u64,
) {
    if components == 1 {
        let tree = Graph::from_edges(n, chosen).expect("chosen edges form a tree");
        visit(&tree);
        *count += 1;
        return;
    }
    if from == edges.len() {
        return;
    }
    let (u, v) = edges[from];
    let (ru, rv) = (uf_find(uf, u), uf_find(uf, v));
    if ru == rv {
        // already merged: the edge can never be in a tree from here on
        recurse_trees(n, edges, from + 1, uf, components, chosen, visit, count);
        return;
    }
    // include: contract the edge
    let saved = uf.clone();
    uf[ru] = rv;
    chosen.push((u, v));
    recurse_trees(n, edges, from + 1, uf, components - 1, chosen, visit, count);
    chosen.pop();
    *uf = saved;
    // exclude: only viable if the remaining edges still connect everything
    if still_connectable(edges, from + 1, uf, components) {
        recurse_trees(n, edges, from + 1, uf, components, chosen, visit, count);
    }
}

fn still_connectable(
    edges: &[(usize, usize)],
    from: usize,
    uf: &[usize],
    components: usize,
) -> bool {
    let mut tmp = uf.to_vec();
    let mut left = components;
    for &(u, v) in &edges[from..] {
        let (ru, rv) = (uf_find(&tmp, u), uf_find(&tmp, v));
        if ru != rv {
            tmp[ru] = rv;
            left -= 1;
            if left == 1 {
                return true;
            }
        }
    }
    left == 1
}

/// A uniformly random spanning tree by Wilson's loop-erased random walk.
pub fn random_spanning_tree<R: Rng>(g: &Graph, rng: &mut R) -> Result<Graph> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let mut in_tree = bit(0);
    let mut next = vec![usize::MAX; n];
    for start in 1..n {
        if in_tree & bit(start) != 0 {
            continue;
        }
        let mut u = start;
        while in_tree & bit(u) == 0 {
            next[u] = random_neighbor(g, u, rng);
            u = next[u];
        }
        let mut u = start;
        while in_tree & bit(u) == 0 {
            in_tree |= bit(u);
            u = next[u];
        }
    }
    let mut tree = Graph::empty(n)?;
    for v in 1..n {
        tree.add_edge(v, next[v])?;
    }
    Ok(tree)
}

fn random_neighbor<R: Rng>(g: &Graph, v: usize, rng: &mut R) -> usize {
    let row = g.neighbors(v);
    let idx = rng.random_range(0..row.count_ones());
    let mut m = row;
    for _ in 0..idx {
        m &= m - 1;
    }
    m.trailing_zeros() as usize
}

/// Longest-path vertex count of a tree, via double BFS (exact on trees).
pub fn tree_longest_path_len(tree: &Graph) -> usize {
    let d0 = tree.bfs_distances(0);
    let x = (0..tree.n()).max_by_key(|&v| d0[v]).expect("nonempty");
    let dx = tree.bfs_distances(x);
    let far = (0..tree.n()).map(|v| dx[v] as usize).max().expect("nonempty");
    far + 1
}

pub const LEMMA8_EXHAUSTIVE_CAP: u64 = 1_000_000;
pub const LEMMA8_SAMPLES: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LemmaCheckMode {
    /// Exhaustive when the matrix-tree count is at most the cap, sampled
    /// otherwise.
    Auto,
    Exhaustive,
    Sampled { samples: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum VerdictMode {
    Exhaustive,
    Sampled,
}

/// Outcome of the spanning-tree path-length check: every spanning tree must
/// either contain no path on `r + 1` vertices or contain one on `2k - r`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaVerdict {
    pub graph: String,
    pub k: usize,
    pub r: usize,
    /// False when the graph has more than `r` interior vertices, in which
    /// case the dichotomy is not asserted.
    pub applicable: bool,
    pub spanning_trees_checked: u64,
    pub mode: VerdictMode,
    pub holds: bool,
    /// graph6 of a violating spanning tree, when one exists.
    pub witness: Option<String>,
}

/// Checks the spanning-tree path-length dichotomy on `g` for the given
/// `k` and `r`. Path length is measured in vertices.
pub fn spanning_tree_lemma_check(
    g: &Graph,
    k: usize,
    r: usize,
    mode: LemmaCheckMode,
) -> Result<LemmaVerdict> {
    if r < 2 {
        return Err(Error::InvalidParameter(format!("the dichotomy requires r >= 2, got {r}")));
    }
    if g.n() <= r {
        return Err(Error::InvalidParameter(format!(
            "the dichotomy requires n >= r + 1, got n = {}, r = {r}",
            g.n()
        )));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let graph_id = canonical_form(g).into_string();
    if interior_count(g, k) > r {
        return Ok(LemmaVerdict {
            graph: graph_id,
            k,
            r,
            applicable: false,
            spanning_trees_checked: 0,
            mode: VerdictMode::Exhaustive,
            holds: true,
            witness: None,
        });
    }
    let threshold_low = r + 1; // a path on r+1 vertices
    let threshold_high = (2 * k).saturating_sub(r);
    let tree_ok = |len: usize| len < threshold_low || len >= threshold_high;

    let exhaustive = match mode {
        LemmaCheckMode::Exhaustive => true,
        LemmaCheckMode::Sampled { .. } => false,
        LemmaCheckMode::Auto => spanning_tree_count(g) <= BigInt::from(LEMMA8_EXHAUSTIVE_CAP),
    };

    let mut witness: Option<String> = None;
    let mut checked = 0u64;
    if exhaustive {
        checked = enumerate_spanning_trees(g, &mut |tree| {
            if witness.is_none() && !tree_ok(tree_longest_path_len(tree)) {
                witness = Some(to_graph6(tree));
            }
        });
    } else {
        let samples = match mode {
            LemmaCheckMode::Sampled { samples } => samples,
            _ => LEMMA8_SAMPLES,
        };
        // deterministic seed from the canonical graph id and the parameters
        let mut seed = [0u8; 32];
        for (i, b) in graph_id.bytes().enumerate() {
            seed[i % 32] ^= b;
        }
        seed[30] ^= k as u8;
        seed[31] ^= r as u8;
        let mut rng = ChaCha8Rng::from_seed(seed);
        for _ in 0..samples {
            let tree = random_spanning_tree(g, &mut rng)?;
            checked += 1;
            if !tree_ok(tree_longest_path_len(&tree)) {
                witness = Some(to_graph6(&tree));
                break;
            }
        }
    }
    Ok(LemmaVerdict {
        graph: graph_id,
        k,
        r,
        applicable: true,
        spanning_trees_checked: checked,
        mode: if exhaustive { VerdictMode::Exhaustive } else { VerdictMode::Sampled },
        holds: witness.is_none(),
        witness,
    })
}

/// Distinct longest-path vertex counts over all spanning trees, with one
/// example tree per value. Shared by the sweep harness so a graph's trees
/// are enumerated once for all `(k, r)` pairs.
pub fn spanning_tree_path_profile(g: &Graph) -> BTreeMap<usize, Graph> {
    let mut profile: BTreeMap<usize, Graph> = BTreeMap::new();
    enumerate_spanning_trees(g, &mut |tree| {
        profile.entry(tree_longest_path_len(tree)).or_insert_with(|| tree.clone());
    });
    profile
}
