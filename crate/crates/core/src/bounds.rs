//! Exact rational evaluation of the k-distance edge bounds and identities:
//! the Mantel-style bound `n(n-k+1)/4`, its interior-vertex refinement
//! `(n-r)(n-k+1)/4`, the unaffiliated refinement `(n-r)(n-p)/4` with its
//! midpoint relaxation, the 2-distance bound `C(n-1,2)`, and the edge
//! decomposition `C(n,2) = e(G) + e(G_2) + ... + e(G_d)`.
//!
//! Everything is integer/rational arithmetic; the interesting cases sit at
//! equality and must not be blurred by rounding.

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::structure::{interior_count, min_unaffiliated};
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

pub type Rational = Ratio<i64>;

/// `n(n - k + 1)/4`: the triangle-free bound on the k-distance count.
pub fn mantel_k_bound(n: usize, k: usize) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "the bound requires 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(Rational::new((n * (n - k + 1)) as i64, 4))
}

/// `(n - r)(n - k + 1)/4`: the bound with at least `r` interior vertices.
pub fn interior_refined_bound(n: usize, k: usize, r: usize) -> Result<Rational> {
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "the bound requires 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    if r > n {
        return Err(Error::InvalidParameter(format!(
            "interior count r = {r} exceeds n = {n}"
        )));
    }
    Ok(Rational::new(((n - r) * (n - k + 1)) as i64, 4))
}

/// `(n - r)(n - p)/4` for `r` interior vertices and `p` unaffiliated
/// vertices per k-distance, together with the weaker midpoint form
/// `(n - (r + p)/2)^2 / 4`.
pub fn unaffiliated_bound(n: usize, r: usize, p: usize) -> Result<(Rational, Rational)> {
    if r > n || p > n {
        return Err(Error::InvalidParameter(format!(
            "r = {r} and p = {p} must not exceed n = {n}"
        )));
    }
    let tight = Rational::new(((n - r) * (n - p)) as i64, 4);
    let half = Rational::new(n as i64, 1) - Rational::new((r + p) as i64, 2);
    let midpoint = half * half / Rational::from_integer(4);
    Ok((tight, midpoint))
}

/// `C(n-1, 2)`: the unconditional bound on 2-distances, attained exactly by
/// the star.
pub fn star_bound(n: usize) -> Result<usize> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!(
            "the 2-distance bound requires n >= 3, got {n}"
        )));
    }
    Ok((n - 1) * (n - 2) / 2)
}

/// Checks `C(n,2) = e(G) + e(G_2) + ... + e(G_d)` exactly on a connected
/// graph; disconnected input is rejected.
pub fn edge_decomposition_check(g: &Graph) -> Result<bool> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.n();
    let d = g.diameter().expect("connected graph has a diameter");
    let total: usize = (1..=d.max(1)).map(|k| g.k_distance_count(k)).sum();
    Ok(total == n * (n - 1) / 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Satisfied,
    Violated,
    /// Preconditions (triangle-free distance-k graph, or a defined `p`) do
    /// not hold, so the bound is not asserted.
    NotApplicable,
}

/// One evaluated bound: an exact ratio of integers plus the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundValue {
    pub num: i64,
    pub den: i64,
    pub status: BoundStatus,
}

impl BoundValue {
    fn new(value: Rational, status: BoundStatus) -> Self {
        let reduced = value.reduced();
        BoundValue {
            num: *reduced.numer(),
            den: *reduced.denom(),
            status,
        }
    }

    pub fn value(&self) -> Rational {
        Rational::new(self.num, self.den)
    }
}

/// Every bound evaluated on one `(graph, k)` pair, in exact arithmetic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BoundReport {
    /// Canonical graph6 of the graph, so the report is self-identifying.
    pub graph: String,
    pub n: usize,
    pub k: usize,
    pub e_gk: usize,
    /// Number of interior vertices (`r`).
    pub interior_count: usize,
    /// Minimum unaffiliated count over all k-distances (`p`); absent when
    /// the distance-k graph has no edges.
    pub min_unaffiliated: Option<usize>,
    pub gk_triangle_free: bool,
    pub mantel: BoundValue,
    pub interior: BoundValue,
    pub unaffiliated: Option<BoundValue>,
    pub unaffiliated_midpoint: Option<BoundValue>,
    /// `C(n-1,2)` with its verdict; only populated for k = 2.
    pub star: Option<BoundValue>,
}

/// Evaluates all bounds on `g` at distance `k`. Bounds in the triangle-free
/// lineage are reported as not applicable when the distance-k graph has a
/// triangle.
pub fn evaluate_bounds(g: &Graph, k: usize) -> Result<BoundReport> {
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!(
            "bound evaluation requires 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    let gk = g.distance_k_graph(k);
    let e_gk = gk.edge_count();
    let triangle_free = gk.is_triangle_free();
    let r = interior_count(g, k);
    let p = min_unaffiliated(g, k).ok();

    let verdict = |bound: Rational| {
        if !triangle_free {
            BoundStatus::NotApplicable
        } else if Rational::from_integer(e_gk as i64) <= bound {
            BoundStatus::Satisfied
        } else {
            BoundStatus::Violated
        }
    };

    let mantel = mantel_k_bound(n, k)?;
    let interior = interior_refined_bound(n, k, r)?;
    let unaff = match p {
        Some(p) => {
            let (tight, midpoint) = unaffiliated_bound(n, r, p)?;
            (
                Some(BoundValue::new(tight, verdict(tight))),
                Some(BoundValue::new(midpoint, verdict(midpoint))),
            )
        }
        None => (None, None),
    };
    let star = if k == 2 && n >= 3 {
        let bound = star_bound(n)?;
        let status = if e_gk <= bound {
            BoundStatus::Satisfied
        } else {
            BoundStatus::Violated
        };
        Some(BoundValue {
            num: bound as i64,
            den: 1,
            status,
        })
    } else {
        None
    };

    Ok(BoundReport {
        graph: canonical_form(g).into_string(),
        n,
        k,
        e_gk,
        interior_count: r,
        min_unaffiliated: p,
        gk_triangle_free: triangle_free,
        mantel: BoundValue::new(mantel, verdict(mantel)),
        interior: BoundValue::new(interior, verdict(interior)),
        unaffiliated: unaff.0,
        unaffiliated_midpoint: unaff.1,
        star,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn rat(num: i64, den: i64) -> Rational {
        Rational::new(num, den)
    }

    #[test]
    fn mantel_values() {
        assert_eq!(mantel_k_bound(10, 5).unwrap(), rat(15, 1));
        assert_eq!(mantel_k_bound(6, 1).unwrap(), rat(9, 1)); // n^2/4
        assert_eq!(mantel_k_bound(7, 3).unwrap(), rat(35, 4));
        assert!(mantel_k_bound(5, 6).is_err());
        assert!(mantel_k_bound(5, 0).is_err());
        // e((C_7)_3) = 7 <= 35/4
        assert!(rat(7, 1) <= mantel_k_bound(7, 3).unwrap());
    }

    #[test]
    fn interior_refined_values() {
        assert_eq!(interior_refined_bound(10, 5, 4).unwrap(), rat(9, 1));
        assert_eq!(interior_refined_bound(9, 4, 0).unwrap(), mantel_k_bound(9, 4).unwrap());
        assert_eq!(interior_refined_bound(7, 3, 2).unwrap(), rat(25, 4));
        // double_broom(7,3) attains floor(25/4) = 6
        assert_eq!(families::double_broom(7, 3).unwrap().k_distance_count(3), 6);
        assert!(interior_refined_bound(5, 2, 9).is_err());
    }

    #[test]
    fn unaffiliated_values() {
        let (tight, _) = unaffiliated_bound(10, 4, 6).unwrap();
        assert_eq!(tight, rat(6, 1));
        let (tight, mid) = unaffiliated_bound(8, 0, 0).unwrap();
        assert_eq!(tight, rat(16, 1));
        assert_eq!(mid, rat(16, 1));
        // at r = p the tight form coincides with the interior refinement
        let (tight, mid) = unaffiliated_bound(7, 2, 2).unwrap();
        assert_eq!(tight, rat(25, 4));
        assert_eq!(mid, rat(25, 4));
        assert_eq!(tight, interior_refined_bound(7, 3, 2).unwrap());
    }

    #[test]
    fn tight_form_never_exceeds_midpoint() {
        for n in 3..=12usize {
            for r in 0..=n {
                for p in 0..=n {
                    let (tight, mid) = unaffiliated_bound(n, r, p).unwrap();
                    assert!(tight <= mid, "n={n}, r={r}, p={p}");
                    if r >= 1 {
                        let refined = interior_refined_bound(n, 2, r).unwrap();
                        assert!(refined <= mantel_k_bound(n, 2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn star_bound_values() {
        assert_eq!(star_bound(5).unwrap(), 6);
        assert_eq!(star_bound(3).unwrap(), 1);
        assert_eq!(star_bound(8).unwrap(), 21);
        assert!(star_bound(2).is_err());
        assert_eq!(families::star(5).unwrap().k_distance_count(2), 6);
    }

    #[test]
    fn edge_decomposition() {
        assert!(edge_decomposition_check(&families::path(4).unwrap()).unwrap());
        assert!(edge_decomposition_check(&families::cycle(7).unwrap()).unwrap());
        let disconnected = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            edge_decomposition_check(&disconnected),
            Err(Error::Disconnected)
        ));
    }

    #[test]
    fn report_on_double_broom() {
        let g = families::double_broom(7, 3).unwrap();
        let report = evaluate_bounds(&g, 3).unwrap();
        assert_eq!(report.e_gk, 6);
        assert_eq!(report.interior_count, 2);
        assert_eq!(report.min_unaffiliated, Some(2));
        assert!(report.gk_triangle_free);
        for bound in [
            report.mantel,
            report.interior,
            report.unaffiliated.unwrap(),
            report.unaffiliated_midpoint.unwrap(),
        ] {
            assert_eq!(bound.status, BoundStatus::Satisfied);
        }
    }

    #[test]
    fn report_on_c7() {
        let report = evaluate_bounds(&families::cycle(7).unwrap(), 3).unwrap();
        assert_eq!(report.e_gk, 7);
        assert_eq!(report.interior_count, 0);
        assert_eq!(report.mantel.status, BoundStatus::Satisfied);
        assert_eq!((report.mantel.num, report.mantel.den), (35, 4));
        // p = 3 on the 7-cycle and the unaffiliated bound is tight: 7*4/4 = 7
        assert_eq!(report.min_unaffiliated, Some(3));
        let unaff = report.unaffiliated.unwrap();
        assert_eq!((unaff.num, unaff.den), (7, 1));
        assert_eq!(unaff.status, BoundStatus::Satisfied);
    }

    #[test]
    fn report_on_k4_is_not_applicable() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let report = evaluate_bounds(&k4, 1).unwrap();
        assert!(!report.gk_triangle_free);
        assert_eq!(report.mantel.status, BoundStatus::NotApplicable);
        assert_eq!(report.interior.status, BoundStatus::NotApplicable);
    }

    #[test]
    fn report_values_serialize_as_integer_ratios() {
        let report = evaluate_bounds(&families::cycle(7).unwrap(), 3).unwrap();
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["mantel"]["num"], 35);
        assert_eq!(json["mantel"]["den"], 4);
    }
}
