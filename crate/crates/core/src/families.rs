//! Constructors and closed-form counts for the named graph families:
//! t-brooms, double brooms, glued cliques, stars, paths and cycles.
//!
//! Vertex numbering is fixed so emitted witnesses are reproducible byte for
//! byte: hubs come first, then handle paths grouped by broom, then leaves
//! grouped by broom.

use crate::error::{Error, Result};
use crate::graph::Graph;
use serde::{Deserialize, Serialize};

/// Parameters of a t-broom: the target distance `k` and the leaf count of
/// each broom.
///
/// For even `k` the graph is a hub vertex carrying `t` handle paths of
/// `(k-2)/2` vertices, each ending in a leaf bundle. For odd `k` the hubs
/// form a `K_t` and each handle has `(k-3)/2` vertices; for `k = 3` the
/// leaves attach directly to the hubs. Either way, leaves of different
/// brooms end up at pairwise distance exactly `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BroomSpec {
    pub k: usize,
    pub leaf_counts: Vec<usize>,
}

impl BroomSpec {
    pub fn new(k: usize, leaf_counts: Vec<usize>) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!("t-broom requires k >= 3, got {k}")));
        }
        if leaf_counts.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "t-broom requires t >= 2 brooms, got {}",
                leaf_counts.len()
            )));
        }
        if leaf_counts.contains(&0) {
            return Err(Error::InvalidParameter(
                "every broom needs at least one leaf".to_string(),
            ));
        }
        Ok(BroomSpec { k, leaf_counts })
    }

    pub fn t(&self) -> usize {
        self.leaf_counts.len()
    }

    /// Handle length in vertices: `(k-2)/2` for even `k`, `(k-3)/2` for odd.
    pub fn handle_len(&self) -> usize {
        if self.k.is_multiple_of(2) {
            (self.k - 2) / 2
        } else {
            (self.k - 3) / 2
        }
    }

    /// Number of hub vertices: one for even `k`, `t` (a clique) for odd.
    pub fn hub_count(&self) -> usize {
        if self.k.is_multiple_of(2) {
            1
        } else {
            self.t()
        }
    }

    /// Order of the constructed graph.
    pub fn order(&self) -> usize {
        let leaves: usize = self.leaf_counts.iter().sum();
        self.hub_count() + self.t() * self.handle_len() + leaves
    }
}

/// For odd `k`, the tree maximum is always attained at `t = 2` brooms.
pub const ODD_K_OPTIMAL_WIDTH: usize = 2;

/// Builds the t-broom described by `spec`.
pub fn t_broom(spec: &BroomSpec) -> Result<Graph> {
    let t = spec.t();
    let h = spec.handle_len();
    let hubs = spec.hub_count();
    let mut g = Graph::empty(spec.order())?;

    // hubs first: a single hub for even k, a K_t for odd k
    for i in 0..hubs {
        for j in (i + 1)..hubs {
            g.add_edge(i, j)?;
        }
    }
    // handle paths, grouped by broom
    let handle_base = hubs;
    for i in 0..t {
        let hub = if spec.k.is_multiple_of(2) { 0 } else { i };
        let start = handle_base + i * h;
        let mut prev = hub;
        for step in 0..h {
            g.add_edge(prev, start + step)?;
            prev = start + step;
        }
    }
    // leaf bundles, grouped by broom, attached to the far handle end
    let mut next_leaf = handle_base + t * h;
    for i in 0..t {
        let attach = if h == 0 {
            if spec.k.is_multiple_of(2) { 0 } else { i }
        } else {
            handle_base + i * h + (h - 1)
        };
        for _ in 0..spec.leaf_counts[i] {
            g.add_edge(attach, next_leaf)?;
            next_leaf += 1;
        }
    }
    debug_assert!(cross_broom_leaves_at_distance_k(&g, spec));
    Ok(g)
}

fn cross_broom_leaves_at_distance_k(g: &Graph, spec: &BroomSpec) -> bool {
    let d = g.distances();
    let leaf_base = spec.hub_count() + spec.t() * spec.handle_len();
    let mut offsets = vec![leaf_base];
    for &a in &spec.leaf_counts {
        offsets.push(offsets.last().unwrap() + a);
    }
    for i in 0..spec.t() {
        for j in (i + 1)..spec.t() {
            for u in offsets[i]..offsets[i + 1] {
                for v in offsets[j]..offsets[j + 1] {
                    if d.get(u, v) != Some(spec.k) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Closed-form k-distance count of a t-broom: pairs of leaves in distinct
/// brooms, `sum_{i<j} a_i a_j`.
pub fn t_broom_distance_count(spec: &BroomSpec) -> usize {
    let s: usize = spec.leaf_counts.iter().sum();
    let sq: usize = spec.leaf_counts.iter().map(|&a| a * a).sum();
    (s * s - sq) / 2
}

/// The double broom: a path on `k - 1` vertices with the remaining
/// `n - k + 1` leaves split as evenly as possible between its endpoints.
/// Path vertices are `0..k-1`, then the heavy side's leaves, then the rest.
pub fn double_broom(n: usize, k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "double broom requires k >= 3, got {k}"
        )));
    }
    if n <= k {
        return Err(Error::InvalidParameter(format!(
            "double broom requires n >= k + 1, got n = {n}, k = {k}"
        )));
    }
    let leaves = n - k + 1;
    let left = leaves.div_ceil(2);
    let mut g = Graph::empty(n)?;
    for i in 0..(k - 2) {
        g.add_edge(i, i + 1)?;
    }
    for i in 0..leaves {
        let attach = if i < left { 0 } else { k - 2 };
        g.add_edge(attach, k - 1 + i)?;
    }
    Ok(g)
}

/// `floor((n - k + 1)^2 / 4)`: the k-distance count of the double broom.
pub fn double_broom_count(n: usize, k: usize) -> Result<usize> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "double broom requires k >= 3, got {k}"
        )));
    }
    if n <= k {
        return Err(Error::InvalidParameter(format!(
            "double broom requires n >= k + 1, got n = {n}, k = {k}"
        )));
    }
    let l = n - k + 1;
    Ok(l * l / 4)
}

/// Two cliques on `(n+1)/2` vertices sharing a vertex `z`, with the edges
/// `{x,z}` and `{y,z}` swapped for `{x,y}`. Its 2-distance graph is a
/// complete bipartite graph with one edge subdivided: triangle-free with
/// `(n-1)^2/4 + 1` edges.
///
/// Numbering: `z = 0`, then the rest of clique X with `x = 1`, then the rest
/// of clique Y with `y = (n+1)/2`.
pub fn glued_cliques(n: usize) -> Result<Graph> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::InvalidParameter(format!(
            "glued cliques require odd n >= 5, got {n}"
        )));
    }
    let m = n.div_ceil(2);
    let mut g = Graph::empty(n)?;
    let x_side: Vec<usize> = std::iter::once(0).chain(1..m).collect();
    let y_side: Vec<usize> = std::iter::once(0).chain(m..n).collect();
    for side in [&x_side, &y_side] {
        for i in 0..side.len() {
            for j in (i + 1)..side.len() {
                g.add_edge(side[i], side[j])?;
            }
        }
    }
    let (x, y) = (1, m);
    // remove {x,z} and {y,z}, add {x,y}
    let mut rows: Vec<u64> = g.rows().to_vec();
    rows[x] &= !1;
    rows[y] &= !1;
    rows[0] &= !((1u64 << x) | (1u64 << y));
    let mut g = Graph::from_rows_unchecked(n, rows);
    g.add_edge(x, y)?;
    Ok(g)
}

/// Star with centre `0` and `n - 1` leaves.
pub fn star(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("star requires n >= 2, got {n}")));
    }
    let mut g = Graph::empty(n)?;
    for v in 1..n {
        g.add_edge(0, v)?;
    }
    Ok(g)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("path requires n >= 2, got {n}")));
    }
    let mut g = Graph::empty(n)?;
    for v in 0..(n - 1) {
        g.add_edge(v, v + 1)?;
    }
    Ok(g)
}

/// Cycle `0 - 1 - ... - (n-1) - 0`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle requires n >= 3, got {n}")));
    }
    let mut g = path(n)?;
    g.add_edge(n - 1, 0)?;
    Ok(g)
}

/// The real value `1/4 + sqrt(1/16 + (n-1)/(k-2))` that the extremal broom
/// width tracks for even `k`, together with the integers within 1 of it
/// (clipped below at 2). Odd `k` always takes [`ODD_K_OPTIMAL_WIDTH`].
pub fn optimal_broom_width(n: usize, k: usize) -> Result<(f64, Vec<usize>)> {
    if !k.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "the width formula applies to even k only (odd k forces t = 2), got k = {k}"
        )));
    }
    if k < 4 || n <= k {
        return Err(Error::InvalidParameter(format!(
            "optimal broom width requires even k >= 4 and n > k, got n = {n}, k = {k}"
        )));
    }
    let x = 0.25 + (1.0 / 16.0 + (n - 1) as f64 / (k - 2) as f64).sqrt();
    let lo = ((x - 1.0).ceil() as i64).max(2) as usize;
    let hi = (x + 1.0).floor() as usize;
    Ok((x, (lo..=hi).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn broom_spec_validation() {
        assert!(BroomSpec::new(2, vec![1, 1]).is_err());
        assert!(BroomSpec::new(4, vec![1]).is_err());
        assert!(BroomSpec::new(4, vec![1, 0]).is_err());
        let spec = BroomSpec::new(4, vec![1, 1, 1]).unwrap();
        assert_eq!(spec.order(), 7);
        let odd = BroomSpec::new(5, vec![2, 2]).unwrap();
        assert_eq!(odd.order(), 8);
    }

    #[test]
    fn even_broom_counts() {
        let spec = BroomSpec::new(4, vec![1, 1, 1]).unwrap();
        let g = t_broom(&spec).unwrap();
        assert_eq!(g.n(), 7);
        assert_eq!(g.k_distance_count(4), 3);
        assert_eq!(t_broom_distance_count(&spec), 3);
    }

    #[test]
    fn odd_broom_counts() {
        let spec = BroomSpec::new(5, vec![2, 2]).unwrap();
        let g = t_broom(&spec).unwrap();
        assert_eq!(g.n(), 8);
        assert_eq!(g.k_distance_count(5), 4);
        assert_eq!(t_broom_distance_count(&spec), 4);

        let spec = BroomSpec::new(5, vec![3, 3]).unwrap();
        assert_eq!(t_broom_distance_count(&spec), 9);
        assert_eq!(t_broom(&spec).unwrap().k_distance_count(5), 9);

        let spec = BroomSpec::new(6, vec![2, 1]).unwrap();
        assert_eq!(t_broom_distance_count(&spec), 2);
        assert_eq!(t_broom(&spec).unwrap().k_distance_count(6), 2);
    }

    #[test]
    fn five_broom_for_k8_shape() {
        // hub, 5 handles of 3 vertices, leaves at depth 4
        let spec = BroomSpec::new(8, vec![2, 2, 2, 2, 2]).unwrap();
        let g = t_broom(&spec).unwrap();
        assert_eq!(g.n(), 1 + 5 * 3 + 10);
        let d = g.distances();
        for leaf in 16..26 {
            assert_eq!(d.get(0, leaf), Some(4));
        }
        assert_eq!(g.k_distance_count(8), t_broom_distance_count(&spec));
    }

    #[test]
    fn k3_brooms_attach_leaves_to_hubs() {
        let spec = BroomSpec::new(3, vec![2, 2, 2]).unwrap();
        let g = t_broom(&spec).unwrap();
        assert_eq!(g.n(), 9);
        assert_eq!(g.k_distance_count(3), 12);
        assert_eq!(t_broom_distance_count(&spec), 12);
    }

    #[test]
    fn broom_sweep_matches_closed_form() {
        // sweep k <= 9, t <= 4, a_i <= 3: constructed count equals the
        // closed form and cross-broom leaves sit at distance exactly k
        for k in 3..=9usize {
            for t in 2..=4usize {
                for mask in 0..(3usize.pow(t as u32)) {
                    let mut leaves = Vec::with_capacity(t);
                    let mut m = mask;
                    for _ in 0..t {
                        leaves.push(m % 3 + 1);
                        m /= 3;
                    }
                    let spec = BroomSpec::new(k, leaves).unwrap();
                    if spec.order() > 32 {
                        continue;
                    }
                    let g = t_broom(&spec).unwrap();
                    assert_eq!(
                        g.k_distance_count(k),
                        t_broom_distance_count(&spec),
                        "spec {spec:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn balanced_leaves_maximize() {
        // among compositions with fixed t, k and total, counts peak when the
        // parts differ by at most one
        let k = 4;
        for t in 2..=4usize {
            for total in t..=(t * 4) {
                let mut best = 0;
                let mut best_balanced = false;
                for comp in compositions(total, t) {
                    let spec = BroomSpec::new(k, comp.clone()).unwrap();
                    let count = t_broom_distance_count(&spec);
                    let balanced =
                        comp.iter().max().unwrap() - comp.iter().min().unwrap() <= 1;
                    if count > best {
                        best = count;
                        best_balanced = balanced;
                    } else if count == best && balanced {
                        best_balanced = true;
                    }
                }
                assert!(best_balanced, "t={t}, total={total}");
            }
        }
    }

    fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
        if parts == 1 {
            return if total >= 1 { vec![vec![total]] } else { vec![] };
        }
        let mut out = Vec::new();
        for first in 1..=(total + 1 - parts) {
            for mut rest in compositions(total - first, parts - 1) {
                let mut comp = vec![first];
                comp.append(&mut rest);
                out.push(comp);
            }
        }
        out
    }

    #[test]
    fn double_broom_values() {
        let g = double_broom(7, 3).unwrap();
        assert_eq!(g.k_distance_count(3), 6);
        assert_eq!(double_broom_count(7, 3).unwrap(), 6);
        assert_eq!(double_broom_count(11, 3).unwrap(), 20);
        assert_eq!(double_broom(11, 3).unwrap().k_distance_count(3), 20);

        let g = double_broom(10, 5).unwrap();
        assert_eq!(g.k_distance_count(5), 9);
        assert_eq!(double_broom_count(10, 5).unwrap(), 9);
        // its 5-distance graph is K_{3,3} plus 4 isolated vertices
        let g5 = g.distance_k_graph(5);
        assert_eq!(g5.edge_count(), 9);
        assert_eq!(g5.vertices().filter(|&v| g5.degree(v) == 0).count(), 4);
        assert!(g5.is_triangle_free());
    }

    #[test]
    fn minimal_double_broom_is_a_path() {
        for k in 3..=6 {
            let g = double_broom(k + 1, k).unwrap();
            assert_eq!(g.k_distance_count(k), 1);
            assert_eq!(double_broom_count(k + 1, k).unwrap(), 1);
            assert_eq!(g.diameter(), Some(k));
            assert!(g.vertices().all(|v| g.degree(v) <= 2));
        }
        assert!(double_broom(3, 3).is_err());
        assert!(double_broom_count(5, 5).is_err());
    }

    #[test]
    fn double_broom_interior_and_clique() {
        for (n, k) in [(7usize, 3usize), (9, 4), (12, 5)] {
            let g = double_broom(n, k).unwrap();
            let interior = g.vertices().filter(|&v| g.k_degree(k, v) == 0).count();
            assert_eq!(interior, k - 1, "n={n}, k={k}");
            if n >= k + 3 {
                assert_eq!(g.distance_k_graph(k).clique_number(), 2);
            }
        }
    }

    #[test]
    fn glued_cliques_two_distance_counts() {
        assert_eq!(glued_cliques(7).unwrap().k_distance_count(2), 10);
        assert_eq!(glued_cliques(5).unwrap().k_distance_count(2), 5);
        assert_eq!(glued_cliques(9).unwrap().k_distance_count(2), 17);
        for n in (5..=13).step_by(2) {
            let g2 = glued_cliques(n).unwrap().distance_k_graph(2);
            assert!(g2.is_triangle_free(), "n={n}");
            assert_eq!(g2.edge_count(), (n - 1) * (n - 1) / 4 + 1, "n={n}");
        }
        assert!(glued_cliques(6).is_err());
        assert!(glued_cliques(3).is_err());
    }

    #[test]
    fn star_path_cycle() {
        assert_eq!(star(5).unwrap().k_distance_count(2), 6);
        assert_eq!(cycle(7).unwrap().k_distance_count(3), 7);
        assert_eq!(path(6).unwrap().k_distance_count(5), 1);
        assert!(star(1).is_err());
        assert!(path(1).is_err());
        assert!(cycle(2).is_err());
    }

    #[test]
    fn width_formula() {
        let (x, cands) = optimal_broom_width(25, 4).unwrap();
        assert!((x - (0.25 + 12.0625f64.sqrt())).abs() < 1e-12);
        assert_eq!(cands, vec![3, 4]);

        let (x, cands) = optimal_broom_width(49, 4).unwrap();
        assert!((x - 5.1553).abs() < 1e-3);
        assert_eq!(cands, vec![5, 6]);

        // near the low end the candidate set is clipped at 2
        let (_, cands) = optimal_broom_width(6, 4).unwrap();
        assert!(cands.iter().all(|&t| t >= 2));

        assert!(optimal_broom_width(10, 5).is_err());
        assert!(optimal_broom_width(4, 4).is_err());
    }
}
