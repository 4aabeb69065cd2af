//! Undirected simple graphs on at most 64 vertices, stored as one bitset
//! row per vertex, together with the distance machinery everything else is
//! built on: all-pairs BFS, distance-k graphs, k-degrees, clique number.

use crate::error::{Error, Result};

/// Hard cap on the vertex count so a neighbourhood fits in one `u64`.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// An undirected simple graph on `1..=64` vertices.
///
/// `adj[v]` is the neighbourhood of `v` as a bitset. The representation is
/// kept symmetric and loop-free by construction; `from_rows` validates
/// untrusted input.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::UnsupportedOrder(n));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Builds a graph from an edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from raw adjacency rows, validating symmetry,
    /// loop-freeness and bit range.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::UnsupportedOrder(n));
        }
        let mask = low_bits(n);
        for (v, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::InvalidParameter(format!(
                    "adjacency row {v} has bits outside 0..{n}"
                )));
            }
            if row & bit(v) != 0 {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {v}")));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if (rows[u] >> v) & 1 != (rows[v] >> u) & 1 {
                    return Err(Error::InvalidParameter(format!(
                        "adjacency not symmetric at ({u},{v})"
                    )));
                }
            }
        }
        Ok(Graph {
            n,
            adj: rows.to_vec(),
        })
    }

    /// Internal constructor for rows already known to be valid.
    #[inline]
    pub(crate) fn from_rows_unchecked(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        Graph { n, adj }
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline(always)]
    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    #[inline(always)]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    #[inline(always)]
    pub(crate) fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & bit(v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: w,
                    order: self.n,
                });
            }
        }
        if u == v {
            return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
        }
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
        Ok(())
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as ordered pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            let mut row = self.adj[u] & !low_bits(u + 1);
            std::iter::from_fn(move || {
                if row == 0 {
                    None
                } else {
                    let v = row.trailing_zeros() as usize;
                    row &= row - 1;
                    Some((u, v))
                }
            })
        })
    }

    /// Bitmask of the component containing `start`.
    pub(crate) fn component_mask(&self, start: usize) -> u64 {
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen
    }

    pub fn is_connected(&self) -> bool {
        self.component_mask(0) == low_bits(self.n)
    }

    /// Relabels vertices; `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for old in 0..self.n {
            let mut row = self.adj[old];
            let mut new_row = 0u64;
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                new_row |= bit(perm[w]);
            }
            adj[perm[old]] = new_row;
        }
        Graph { n: self.n, adj }
    }

    /// Subgraph induced by `verts`; vertex `i` of the result is `verts[i]`.
    pub fn induced_subgraph(&self, verts: &[usize]) -> Result<Graph> {
        let mut g = Graph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        Ok(g)
    }

    /// Disjoint union, with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::UnsupportedOrder(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&row| row << self.n));
        Ok(Graph { n, adj })
    }

    /// BFS distances from `src`; `u8::MAX` marks unreachable vertices.
    pub(crate) fn bfs_distances(&self, src: usize) -> [u8; MAX_VERTICES] {
        let mut dist = [u8::MAX; MAX_VERTICES];
        dist[src] = 0;
        let mut seen = bit(src);
        let mut frontier = seen;
        let mut depth = 0u8;
        while frontier != 0 {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            next &= !seen;
            depth += 1;
            let mut m = next;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                dist[v] = depth;
            }
            seen |= next;
            frontier = next;
        }
        dist
    }

    /// Bitmask of vertices at distance exactly `k` from `src`.
    ///
    /// Stops expanding once depth `k` is reached, which keeps the dominant
    /// search loops cheap for small `k`.
    pub(crate) fn layer_at(&self, src: usize, k: usize) -> u64 {
        let mut seen = bit(src);
        let mut frontier = seen;
        for _ in 0..k {
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= frontier;
            if frontier == 0 {
                return 0;
            }
        }
        frontier
    }

    /// All-pairs hop distances via one BFS per source.
    pub fn distances(&self) -> DistanceMatrix {
        let mut d = vec![u8::MAX; self.n * self.n];
        for src in 0..self.n {
            let row = self.bfs_distances(src);
            d[src * self.n..(src + 1) * self.n].copy_from_slice(&row[..self.n]);
        }
        DistanceMatrix { n: self.n, d }
    }

    /// The distance-k graph: same vertex set, edges joining pairs at hop
    /// distance exactly `k`.
    pub fn distance_k_graph(&self, k: usize) -> Graph {
        assert!(k >= 1, "distance-k graph requires k >= 1");
        let mut adj = vec![0u64; self.n];
        for src in 0..self.n {
            adj[src] = self.layer_at(src, k);
        }
        Graph { n: self.n, adj }
    }

    /// Number of vertex pairs at distance exactly `k` (the edge count of the
    /// distance-k graph).
    pub fn k_distance_count(&self, k: usize) -> usize {
        assert!(k >= 1, "k-distance count requires k >= 1");
        let mut total = 0usize;
        for src in 0..self.n {
            // count each pair once: only partners above src
            total += (self.layer_at(src, k) & !low_bits(src + 1)).count_ones() as usize;
        }
        total
    }

    /// Number of vertices at distance exactly `k` from `v`.
    pub fn k_degree(&self, k: usize, v: usize) -> usize {
        assert!(k >= 1, "k-degree requires k >= 1");
        assert!(v < self.n, "vertex out of range");
        self.layer_at(v, k).count_ones() as usize
    }

    /// True iff the graph has no triangle.
    pub fn is_triangle_free(&self) -> bool {
        for u in 0..self.n {
            let mut row = self.adj[u] & !low_bits(u + 1);
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                if self.adj[u] & self.adj[v] != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Maximum clique size; 1 for edgeless graphs.
    pub fn clique_number(&self) -> usize {
        let mut best = 0usize;
        let mut order: Vec<usize> = (0..self.n).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.degree(v)));
        self.clique_expand(low_bits(self.n), 0, &order, &mut best);
        best
    }

    fn clique_expand(&self, cand: u64, size: usize, order: &[usize], best: &mut usize) {
        if cand == 0 {
            if size > *best {
                *best = size;
            }
            return;
        }
        // greedy colouring upper bound on the candidate set
        if size + greedy_color_bound(&self.adj, cand) <= *best {
            return;
        }
        let mut rest = cand;
        for &v in order {
            if rest & bit(v) == 0 {
                continue;
            }
            if size + rest.count_ones() as usize <= *best {
                return;
            }
            rest &= !bit(v);
            self.clique_expand(self.adj[v] & rest, size + 1, order, best);
        }
    }

    /// Longest finite distance; `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut max = 0usize;
        for src in 0..self.n {
            let row = self.bfs_distances(src);
            for v in 0..self.n {
                if row[v] == u8::MAX {
                    return None;
                }
                max = max.max(row[v] as usize);
            }
        }
        Some(max)
    }
}

/// Number of colours a greedy pass needs on the subgraph induced by `cand`:
/// an upper bound on its clique number.
fn greedy_color_bound(adj: &[u64], cand: u64) -> usize {
    let mut uncolored = cand;
    let mut colors = 0usize;
    while uncolored != 0 {
        colors += 1;
        let mut avail = uncolored;
        while avail != 0 {
            let v = avail.trailing_zeros() as usize;
            avail &= avail - 1;
            uncolored &= !bit(v);
            avail &= !adj[v];
        }
    }
    colors
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// All-pairs hop distances with an explicit unreachable sentinel.
#[derive(Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u8>,
}

impl DistanceMatrix {
    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop distance, or `None` if `u` and `v` lie in different components.
    #[inline(always)]
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        let raw = self.d[u * self.n + v];
        if raw == u8::MAX {
            None
        } else {
            Some(raw as usize)
        }
    }

    /// True iff `u` and `v` are at distance exactly `k`.
    ///
    /// Unreachable pairs are never at distance `k`; the sentinel is not a
    /// large finite number.
    #[inline(always)]
    pub fn is_at(&self, u: usize, v: usize, k: usize) -> bool {
        self.get(u, v) == Some(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::oracle;

    fn c7() -> Graph {
        families::cycle(7).unwrap()
    }

    fn two_disjoint_edges() -> Graph {
        Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap()
    }

    #[test]
    fn path_distance_by_definition() {
        let p4 = families::path(4).unwrap();
        assert_eq!(p4.distances().get(0, 3), Some(3));
    }

    #[test]
    fn cycle_distances_match_modular_oracle() {
        // oracle: d(i, j) = min(|i-j|, 7-|i-j|)
        let d = c7().distances();
        for i in 0..7usize {
            for j in 0..7usize {
                let diff = i.abs_diff(j);
                assert_eq!(d.get(i, j), Some(diff.min(7 - diff)), "({i},{j})");
            }
        }
        assert_eq!(d.get(0, 3), Some(3));
        assert_eq!(d.get(0, 4), Some(3));
    }

    #[test]
    fn disconnected_pairs_are_unreachable() {
        let g = two_disjoint_edges();
        assert_eq!(g.distances().get(0, 2), None);
        assert_eq!(g.diameter(), None);
    }

    #[test]
    fn distances_agree_with_floyd_warshall() {
        for g in [
            c7(),
            two_disjoint_edges(),
            families::star(6).unwrap(),
            families::double_broom(9, 4).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap(),
        ] {
            let fast = g.distances();
            let slow = oracle::floyd_warshall(&g);
            for u in 0..g.n() {
                for v in 0..g.n() {
                    assert_eq!(fast.get(u, v), slow[u][v]);
                }
            }
        }
    }

    #[test]
    fn distance_3_graph_of_c7_is_the_rewired_cycle() {
        let g3 = c7().distance_k_graph(3);
        let expected: Vec<(usize, usize)> =
            vec![(0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 6), (3, 6)];
        let mut got: Vec<(usize, usize)> = g3.edges().collect();
        got.sort_unstable();
        assert_eq!(got, expected);
        assert_eq!(g3.edge_count(), 7);
    }

    #[test]
    fn distance_1_graph_is_the_graph_itself() {
        for g in [c7(), families::star(5).unwrap(), two_disjoint_edges()] {
            assert_eq!(g.distance_k_graph(1), g);
        }
    }

    #[test]
    fn distance_2_graph_of_star_is_complete_on_leaves() {
        let g2 = families::star(5).unwrap().distance_k_graph(2);
        // center is vertex 0; leaves pairwise at distance 2
        assert_eq!(g2.edge_count(), 6);
        for u in 1..5 {
            for v in (u + 1)..5 {
                assert!(g2.has_edge(u, v));
            }
        }
        assert_eq!(g2.degree(0), 0);
    }

    #[test]
    fn k_distance_counts() {
        assert_eq!(c7().k_distance_count(3), 7);
        let db = families::double_broom(7, 3).unwrap();
        assert_eq!(db.k_distance_count(3), 6);
        assert_eq!(families::path(9).unwrap().k_distance_count(4), 5);
    }

    #[test]
    fn k_degrees() {
        assert_eq!(c7().k_degree(3, 0), 2);
        assert_eq!(families::star(5).unwrap().k_degree(2, 0), 0);
        // double_broom(7,3): 3 leaves on the heavy side (vertices 2..5); each
        // sees the 2 leaves across the path.
        let db = families::double_broom(7, 3).unwrap();
        assert_eq!(db.k_degree(3, 2), 2);
    }

    #[test]
    fn k_degree_sum_is_twice_count() {
        for g in [c7(), families::double_broom(9, 4).unwrap(), two_disjoint_edges()] {
            for k in 1..g.n() {
                let sum: usize = g.vertices().map(|v| g.k_degree(k, v)).sum();
                assert_eq!(sum, 2 * g.k_distance_count(k), "k={k}");
            }
        }
    }

    #[test]
    fn clique_numbers() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(k4.clique_number(), 4);
        assert_eq!(c7().distance_k_graph(3).clique_number(), 2);
        assert_eq!(Graph::empty(3).unwrap().clique_number(), 1);
        assert_eq!(families::cycle(5).unwrap().clique_number(), 2);
    }

    #[test]
    fn clique_number_matches_subset_oracle() {
        let graphs = [
            c7(),
            families::glued_cliques(7).unwrap(),
            families::double_broom(8, 3).unwrap(),
            Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)]).unwrap(),
        ];
        for g in graphs {
            assert_eq!(g.clique_number(), oracle::clique_number_by_subsets(&g));
        }
    }

    #[test]
    fn triangle_free() {
        assert!(families::cycle(5).unwrap().is_triangle_free());
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(!k3.is_triangle_free());
        assert!(families::glued_cliques(7).unwrap().distance_k_graph(2).is_triangle_free());
    }

    #[test]
    fn diameters() {
        assert_eq!(c7().diameter(), Some(3));
        assert_eq!(families::star(5).unwrap().diameter(), Some(2));
        assert_eq!(two_disjoint_edges().diameter(), None);
        assert_eq!(Graph::empty(1).unwrap().diameter(), Some(0));
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(&[0b10, 0b01]).is_ok());
        assert!(matches!(
            Graph::from_rows(&[0b01, 0b10]),
            Err(Error::InvalidParameter(_))
        )); // self-loops
        assert!(matches!(
            Graph::from_rows(&[0b10, 0b00]),
            Err(Error::InvalidParameter(_))
        )); // asymmetric
        assert!(matches!(Graph::from_rows(&[]), Err(Error::UnsupportedOrder(0))));
        assert!(matches!(
            Graph::from_rows(&[0b100, 0b000]),
            Err(Error::InvalidParameter(_))
        )); // out of range bit
    }

    #[test]
    fn edge_decomposition_of_connected_graphs() {
        // binom(n,2) = sum of e(G_i) over i = 1..diam
        for g in [c7(), families::path(4).unwrap(), families::star(6).unwrap()] {
            let d = g.diameter().unwrap();
            let total: usize = (1..=d.max(1)).map(|k| g.k_distance_count(k)).sum();
            assert_eq!(total, g.n() * (g.n() - 1) / 2);
        }
    }
}
