//! Slow, independent reference implementations used to cross-check the fast
//! paths. Nothing here shares code with what it checks: distances come from
//! Floyd–Warshall instead of BFS, isomorphism from raw permutation search
//! instead of canonical forms, enumeration from labelled-graph dedup instead
//! of augmentation.

use crate::canon::canonical_form;
use crate::canon::CanonicalForm;
use crate::graph::Graph;

/// All-pairs distances by Floyd–Warshall; `None` marks unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let inf = usize::MAX / 2;
    let mut d = vec![vec![inf; n]; n];
    for v in 0..n {
        d[v][v] = 0;
    }
    for (u, v) in g.edges() {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for u in 0..n {
            for v in 0..n {
                let via = d[u][m] + d[m][v];
                if via < d[u][v] {
                    d[u][v] = via;
                }
            }
        }
    }
    d.into_iter()
        .map(|row| row.into_iter().map(|x| if x >= inf { None } else { Some(x) }).collect())
        .collect()
}

/// Maximum clique by scanning all vertex subsets. Exponential; keep n small.
pub fn clique_number_by_subsets(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20, "subset oracle is exponential");
    let mut best = 0usize;
    for mask in 1u64..(1u64 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let mut is_clique = true;
        let mut m = mask;
        'outer: while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let mut rest = m;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if !g.has_edge(v, w) {
                    is_clique = false;
                    break 'outer;
                }
            }
        }
        if is_clique {
            best = size;
        }
    }
    best
}

/// Isomorphism by brute force over all vertex permutations. Factorial; the
/// practical limit is n <= 8.
pub fn permutation_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let n = g.n();
    assert!(n <= 9, "permutation oracle is factorial");
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        if (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v) == h.has_edge(perm[u], perm[v]))) {
            return true;
        }
        if !next_permutation(&mut perm) {
            return false;
        }
    }
}

fn next_permutation(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Every labelled graph on `n` vertices, one per edge-set bitmask.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|u| ((u + 1)..n).map(move |v| (u, v))).collect();
    let total = 1u64 << pairs.len();
    (0..total).map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        Graph::from_edges(n, &edges).unwrap()
    })
}

/// Connected-graph isomorphism classes by canonical-form dedup over all
/// labelled graphs. The memory-hungry baseline the streaming enumerator is
/// checked against.
pub fn connected_classes_by_dedup(n: usize) -> Vec<CanonicalForm> {
    let mut seen = std::collections::HashSet::new();
    for g in labeled_graphs(n) {
        if g.is_connected() {
            seen.insert(canonical_form(&g));
        }
    }
    let mut out: Vec<CanonicalForm> = seen.into_iter().collect();
    out.sort();
    out
}

/// Decodes a Prüfer sequence into a labelled tree on `len + 2` vertices.
pub fn tree_from_prufer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut g = Graph::empty(n).unwrap();
    let mut deg = degree.clone();
    for &v in seq {
        let leaf = (0..n).find(|&u| deg[u] == 1).unwrap();
        g.add_edge(leaf, v).unwrap();
        deg[leaf] -= 1;
        deg[v] -= 1;
    }
    let mut last = (0..n).filter(|&u| deg[u] == 1);
    let (a, b) = (last.next().unwrap(), last.next().unwrap());
    g.add_edge(a, b).unwrap();
    g
}

/// Unlabelled-tree classes by canonical-form dedup over all Prüfer
/// sequences. Feasible up to n = 9 or so (n^(n-2) labelled trees).
pub fn tree_classes_by_prufer_dedup(n: usize) -> Vec<CanonicalForm> {
    assert!(n >= 3, "Prüfer sequences need n >= 3");
    let mut seen = std::collections::HashSet::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        seen.insert(canonical_form(&tree_from_prufer(&seq)));
        // odometer over [0, n)^(n-2)
        let mut i = 0;
        loop {
            if i == seq.len() {
                let mut out: Vec<CanonicalForm> = seen.into_iter().collect();
                out.sort();
                return out;
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

/// Unlabelled-tree classes by leaf augmentation with hashset dedup: attach a
/// new leaf to every vertex of every (n-1)-vertex class. Independent of the
/// level-sequence successor path.
pub fn tree_classes_by_augmentation(n: usize) -> Vec<CanonicalForm> {
    let mut current: Vec<Graph> = vec![Graph::empty(1).unwrap()];
    for m in 1..n {
        let mut seen = std::collections::HashSet::new();
        let mut next = Vec::new();
        for t in &current {
            for v in 0..m {
                let mut rows: Vec<u64> = t.rows().to_vec();
                rows.push(1u64 << v);
                rows[v] |= 1u64 << m;
                let bigger = Graph::from_rows(&rows).unwrap();
                if seen.insert(canonical_form(&bigger)) {
                    next.push(bigger);
                }
            }
        }
        current = next;
    }
    let mut out: Vec<CanonicalForm> = current.iter().map(canonical_form).collect();
    out.sort();
    out
}
