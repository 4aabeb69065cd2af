//! Property tests for the structural invariants: the edge decomposition,
//! degree sums, subgraph monotonicity of 2-distances (and its failure for
//! k >= 3), the triangle-free degree bound, canonical-form invariance, and
//! graph6 round-trips.

use kdist_core::canon::{canonical_form, CanonicalForm};
use kdist_core::graph::Graph;
use kdist_core::graph6::{from_graph6_line, to_graph6};
use kdist_core::oracle;
use kdist_core::structure::{geodesic, interior_vertices, unaffiliated_vertices};
use proptest::prelude::*;

/// Arbitrary graph on 2..=10 vertices from an edge bitmask.
fn arb_graph() -> impl Strategy<Value = Graph> {
    (2usize..=10).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), 0u64..(1u64 << pairs)).prop_map(|(n, mask)| {
            let mut edges = Vec::new();
            let mut idx = 0;
            for u in 0..n {
                for v in (u + 1)..n {
                    if mask >> idx & 1 == 1 {
                        edges.push((u, v));
                    }
                    idx += 1;
                }
            }
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

/// Arbitrary connected graph: a random labelled tree (decoded from a
/// Prüfer-style sequence) plus random extra edges.
fn arb_connected_graph() -> impl Strategy<Value = Graph> {
    (3usize..=9).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (
            Just(n),
            proptest::collection::vec(0usize..n, n - 2),
            0u64..(1u64 << pairs),
        )
            .prop_map(|(n, seq, mask)| {
                let mut g = oracle::tree_from_prufer(&seq);
                let mut idx = 0;
                for u in 0..n {
                    for v in (u + 1)..n {
                        if mask >> idx & 1 == 1 {
                            g.add_edge(u, v).unwrap();
                        }
                        idx += 1;
                    }
                }
                g
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn edge_decomposition_on_connected_graphs(g in arb_connected_graph()) {
        let n = g.n();
        let d = g.diameter().expect("connected");
        let total: usize = (1..=d.max(1)).map(|k| g.k_distance_count(k)).sum();
        prop_assert_eq!(total, n * (n - 1) / 2);
    }

    #[test]
    fn distance_1_graph_is_identity(g in arb_graph()) {
        prop_assert_eq!(g.distance_k_graph(1), g);
    }

    #[test]
    fn k_degree_sums_to_twice_the_count(g in arb_graph(), k in 1usize..10) {
        let total: usize = g.vertices().map(|v| g.k_degree(k, v)).sum();
        prop_assert_eq!(total, 2 * g.k_distance_count(k));
    }

    #[test]
    fn distance_matrix_is_symmetric_with_triangle_inequality(g in arb_graph()) {
        let d = g.distances();
        for u in 0..g.n() {
            prop_assert_eq!(d.get(u, u), Some(0));
            for v in 0..g.n() {
                prop_assert_eq!(d.get(u, v), d.get(v, u));
                prop_assert_eq!(d.get(u, v) == Some(1), g.has_edge(u, v));
                for w in 0..g.n() {
                    if let (Some(a), Some(b), Some(c)) = (d.get(u, w), d.get(u, v), d.get(v, w)) {
                        prop_assert!(a <= b + c);
                    }
                }
            }
        }
    }

    #[test]
    fn induced_subgraphs_preserve_2_distance_edges(g in arb_graph(), sel in 0u64..1024) {
        // every edge of H_2 is an edge of G_2 on the kept vertices
        let verts: Vec<usize> = g.vertices().filter(|&v| sel >> v & 1 == 1).collect();
        if verts.len() >= 2 {
            let h = g.induced_subgraph(&verts).unwrap();
            let h2 = h.distance_k_graph(2);
            let g2 = g.distance_k_graph(2);
            for (i, j) in h2.edges() {
                prop_assert!(g2.has_edge(verts[i], verts[j]),
                    "H_2 edge ({}, {}) missing in G_2", verts[i], verts[j]);
            }
        }
    }

    #[test]
    fn triangle_free_distance_graphs_bound_degree_sums(g in arb_graph(), k in 2usize..6) {
        let gk = g.distance_k_graph(k);
        if gk.is_triangle_free() {
            let n = g.n();
            for (x, y) in gk.edges() {
                prop_assert!(gk.degree(x) + gk.degree(y) <= n - k + 1,
                    "nu({x}) + nu({y}) > n - k + 1");
            }
        }
    }

    #[test]
    fn canonical_form_is_relabelling_invariant(g in arb_graph(), seed in 0u64..1000) {
        // a deterministic pseudo-random permutation from the seed
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            perm.swap(i, j);
        }
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.relabel(&perm)));
    }

    #[test]
    fn graph6_roundtrip_is_bit_exact(g in arb_graph()) {
        let s = to_graph6(&g);
        let back = from_graph6_line(&s, 1).unwrap();
        prop_assert_eq!(&back, &g);
        prop_assert_eq!(to_graph6(&back), s);
    }

    #[test]
    fn interior_vertices_are_unaffiliated_with_every_pair(
        g in arb_connected_graph(),
        k in 2usize..5,
    ) {
        let interior = interior_vertices(&g, k);
        let d = g.distances();
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                if d.get(u, v) == Some(k) {
                    let unaff = unaffiliated_vertices(&g, k, u, v);
                    for z in &interior {
                        prop_assert!(unaff.contains(z));
                    }
                }
            }
        }
    }

    #[test]
    fn geodesic_interiors_are_unaffiliated(g in arb_connected_graph(), k in 2usize..5) {
        let d = g.distances();
        for u in 0..g.n() {
            for v in (u + 1)..g.n() {
                if d.get(u, v) == Some(k) {
                    let p = geodesic(&g, u, v).unwrap();
                    let unaff = unaffiliated_vertices(&g, k, u, v);
                    for &z in &p.vertices()[1..p.len() - 1] {
                        prop_assert!(unaff.contains(&z),
                            "geodesic interior {z} affiliated for pair ({u},{v})");
                    }
                }
            }
        }
    }

    #[test]
    fn component_additivity(a in arb_graph(), b in arb_graph(), k in 1usize..6) {
        if a.n() + b.n() <= 18 {
            let u = a.disjoint_union(&b).unwrap();
            prop_assert_eq!(
                u.k_distance_count(k),
                a.k_distance_count(k) + b.k_distance_count(k)
            );
        }
    }
}

/// The 2-distance subgraph property genuinely fails for k = 3: a small
/// search finds a witness, and the known one is frozen below.
#[test]
fn induced_subgraph_property_fails_for_k3() {
    let mut found: Option<(Graph, Vec<usize>)> = None;
    'outer: for g in oracle::labeled_graphs(5) {
        for sel in 1u64..(1 << 5) {
            let verts: Vec<usize> = (0..5).filter(|&v| sel >> v & 1 == 1).collect();
            if verts.len() < 2 {
                continue;
            }
            let h = g.induced_subgraph(&verts).unwrap();
            let h3 = h.distance_k_graph(3);
            let g3 = g.distance_k_graph(3);
            for (i, j) in h3.edges() {
                if !g3.has_edge(verts[i], verts[j]) {
                    found = Some((g.clone(), verts.clone()));
                    break 'outer;
                }
            }
        }
    }
    let (g, verts) = found.expect("a counterexample exists on 5 vertices");
    assert!(g.n() == 5 && verts.len() >= 2);

    // the frozen witness: C_5 with one vertex removed leaves a P_4 whose
    // endpoints are at distance 3 in the path but 2 in the cycle
    let c5 = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
    let h = c5.induced_subgraph(&[0, 1, 2, 3]).unwrap();
    assert!(h.distance_k_graph(3).has_edge(0, 3));
    assert!(!c5.distance_k_graph(3).has_edge(0, 3));
}

/// Canonical-form equality agrees with the permutation oracle on samples of
/// non-isomorphic class representatives (the exhaustive n <= 6 agreement
/// test lives in the canon module).
#[test]
fn canonical_form_separates_same_degree_sequences() {
    // C_6 and two triangles share the degree sequence but differ
    let c6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
    let two_k3 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
    assert_ne!(canonical_form(&c6), canonical_form(&two_k3));
    assert!(!oracle::permutation_isomorphic(&c6, &two_k3));

    // the two 6-vertex trees with degree sequence (1,1,1,1,2,4)... both
    // spiders; compare against the path instead
    let spider = Graph::from_edges(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)]).unwrap();
    let path6 = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
    let forms: Vec<CanonicalForm> = vec![canonical_form(&spider), canonical_form(&path6)];
    assert_ne!(forms[0], forms[1]);
}
