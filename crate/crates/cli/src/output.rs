//! CSV summaries keyed by (n, k, cap); one row per cell so the tables feed
//! straight into plotting tools.

use kdist_core::search::{
    K2BoundReport, Lemma8Report, SearchReport, StarReport, TreeTheoremReport, TriangleFreeReport,
};

fn cap_str(cap: Option<usize>) -> String {
    cap.map_or_else(|| "none".to_string(), |c| c.to_string())
}

pub fn search_csv(report: &SearchReport) -> String {
    let mut out = String::from(
        "n,k,clique_cap,scope,graphs_scanned,connected_max,max_e_gk,witnesses,witnesses_truncated\n",
    );
    out.push_str(&format!(
        "{},{},{},{:?},{},{},{},{},{}\n",
        report.task.n,
        report.task.k,
        cap_str(report.task.clique_cap),
        report.task.scope,
        report.graphs_scanned,
        report.connected_max,
        report.max_e_gk,
        report.witnesses.len(),
        report.witnesses_truncated,
    ));
    out
}

pub fn k2_csv(report: &K2BoundReport) -> String {
    let mut out =
        String::from("n,k,cap,observed_max,bound_num,bound_den,within_bound,attained,glued_is_witness\n");
    for c in &report.cells {
        out.push_str(&format!(
            "{},2,2,{},{},{},{},{},{}\n",
            c.n,
            c.observed_max,
            c.bound_num,
            c.bound_den,
            c.within_bound,
            c.attained.map_or("n/a".into(), |b| b.to_string()),
            c.glued_cliques_is_witness
                .map_or("n/a".into(), |b: bool| b.to_string()),
        ));
    }
    out
}

pub fn triangle_free_csv(report: &TriangleFreeReport) -> String {
    let mut out = String::from(
        "n,k,cap,observed_max,predicted,matched,equality_exact,all_double_broom,counterexamples,known_exception\n",
    );
    for c in &report.cells {
        out.push_str(&format!(
            "{},{},2,{},{},{},{},{},{},{}\n",
            c.n,
            c.k,
            c.observed_max,
            c.predicted,
            c.matched,
            c.equality_exact,
            c.all_witnesses_double_broom_k_isomorphic,
            c.counterexamples().len(),
            c.known_exception,
        ));
    }
    out
}

pub fn tree_csv(report: &TreeTheoremReport) -> String {
    let mut out = String::from(
        "n,k,tree_count,max_over_trees,best_broom_count,broom_attains_max,maximizer_widths,width_ok\n",
    );
    for c in &report.cells {
        let widths: Vec<String> = c.maximizer_broom_widths.iter().map(|t| t.to_string()).collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            c.n,
            c.k,
            c.tree_count,
            c.max_over_trees,
            c.best_broom_count,
            c.broom_attains_max,
            widths.join("|"),
            c.width_ok,
        ));
    }
    out
}

pub fn star_csv(report: &StarReport) -> String {
    let mut out = String::from("n,k,observed_max,predicted,matched,unique_star_witness\n");
    for c in &report.cells {
        out.push_str(&format!(
            "{},2,{},{},{},{}\n",
            c.n, c.observed_max, c.predicted, c.matched, c.unique_star_witness,
        ));
    }
    out
}

pub fn lemma8_csv(report: &Lemma8Report) -> String {
    let mut out = String::from("n,graphs,applicable_cases,violations\n");
    for c in &report.cells {
        let violations = report
            .violations
            .iter()
            .filter(|v| {
                kdist_core::graph6::from_graph6_line(&v.graph6, 0)
                    .map(|g| g.n() == c.n)
                    .unwrap_or(false)
            })
            .count();
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.n, c.graphs, c.applicable_cases, violations,
        ));
    }
    out
}
