//! Extremal searches and claim verifiers: maximum k-distance counts over
//! streams of graphs, with clique caps, sharding, checkpoints, witness
//! classification, and the per-claim verification drivers.

use crate::bounds;
use crate::canon::{canonical_form, k_isomorphic};
use crate::enumeration::{ConnectedGraphs, FreeTrees, GraphStream, StreamCursor, StreamSource};
use crate::error::{Error, Result};
use crate::families::{self, BroomSpec};
use crate::graph::Graph;
use crate::graph6::from_graph6_line;
use crate::structure::{interior_count, spanning_tree_path_profile};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::time::Instant;

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Hard ceiling on stored witnesses; the lexicographically smallest
/// canonical forms are kept so truncation stays deterministic across shard
/// layouts.
pub const WITNESS_CAP: usize = 100_000;

fn default_checkpoint_interval() -> u64 {
    1_000_000
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scope {
    /// Maximum over the scanned stream only.
    Connected,
    /// Maximum over all graphs: the scanned connected maxima for each order
    /// are combined by the component-additivity dynamic program.
    All,
}

/// One extremal search: maximize e(G_k) over a stream of graphs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchTask {
    pub n: usize,
    pub k: usize,
    /// When set, only graphs with clique number of the distance-k graph at
    /// most this value are considered. Must be at least 2.
    pub clique_cap: Option<usize>,
    pub scope: Scope,
    pub source: StreamSource,
    pub shards: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub checkpoint: Option<PathBuf>,
    #[serde(default = "default_checkpoint_interval")]
    pub checkpoint_interval: u64,
}

impl SearchTask {
    /// Search over the internal connected-graph stream.
    pub fn internal(n: usize, k: usize, clique_cap: Option<usize>, scope: Scope) -> Self {
        SearchTask {
            n,
            k,
            clique_cap,
            scope,
            source: StreamSource::Connected { n },
            shards: 1,
            checkpoint: None,
            checkpoint_interval: default_checkpoint_interval(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!(
                "searches require k >= 2, got {}",
                self.k
            )));
        }
        if let Some(cap) = self.clique_cap {
            if cap < 2 {
                return Err(Error::InvalidParameter(format!(
                    "clique cap must be at least 2, got {cap}"
                )));
            }
        }
        if self.shards == 0 {
            return Err(Error::InvalidParameter("at least one shard is required".into()));
        }
        if let StreamSource::Connected { n } | StreamSource::Trees { n } = self.source {
            if n != self.n {
                return Err(Error::InvalidParameter(format!(
                    "task order {} does not match stream order {n}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// The task identity a checkpoint must match: everything except the
    /// checkpoint configuration itself.
    fn fingerprint(&self) -> SearchTask {
        let mut t = self.clone();
        t.checkpoint = None;
        t.checkpoint_interval = default_checkpoint_interval();
        t
    }
}

/// A maximizer, classified against the named families.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Witness {
    /// Canonical graph6; reloading it reproduces the counts below.
    pub graph6: String,
    pub e_gk: usize,
    /// Whether the witness is k-isomorphic to the double broom of the same
    /// order; absent when no double broom of that order exists.
    pub double_broom_k_isomorphic: Option<bool>,
    /// Every broom of the same order whose distance-k graph is isomorphic
    /// to the witness's.
    pub matching_brooms: Vec<BroomSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ShardInfo {
    pub index: u64,
    pub total: u64,
    pub scanned: u64,
    pub resumed: bool,
}

/// Wall-clock provenance; the single non-deterministic part of a report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Timing {
    pub unix_ms: u64,
    pub elapsed_seconds: f64,
}

impl Timing {
    fn start() -> (Instant, u64) {
        let unix_ms = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        (Instant::now(), unix_ms)
    }

    fn finish(start: Instant, unix_ms: u64) -> Timing {
        Timing {
            unix_ms,
            elapsed_seconds: start.elapsed().as_secs_f64(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub task: SearchTask,
    pub graphs_scanned: u64,
    /// Maximum over the scanned stream.
    pub connected_max: usize,
    /// Scope-respecting maximum (equals `connected_max` for connected
    /// scope; the dynamic-program value for all-graph scope).
    pub max_e_gk: usize,
    /// True when a disconnected composition matches `max_e_gk`.
    pub disconnected_tie: bool,
    pub witnesses: Vec<Witness>,
    pub witnesses_truncated: bool,
    pub shard_provenance: Vec<ShardInfo>,
    pub timing: Timing,
}

impl SearchReport {
    /// Reloads every witness and re-verifies its count and the clique
    /// constraint.
    pub fn reverify(&self) -> Result<()> {
        for w in &self.witnesses {
            let g = from_graph6_line(&w.graph6, 0)?;
            let gk = g.distance_k_graph(self.task.k);
            if gk.edge_count() != w.e_gk || w.e_gk != self.max_e_gk {
                return Err(Error::InvalidParameter(format!(
                    "witness {} does not reproduce the reported maximum",
                    w.graph6
                )));
            }
            if let Some(cap) = self.task.clique_cap {
                if gk.clique_number() > cap {
                    return Err(Error::InvalidParameter(format!(
                        "witness {} violates the clique cap",
                        w.graph6
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// shard execution
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ShardCheckpoint {
    schema_version: u32,
    task: SearchTask,
    shard_index: u64,
    cursor: StreamCursor,
    scanned: u64,
    max_e_gk: Option<usize>,
    witnesses: Vec<String>,
    truncated: bool,
    done: bool,
}

struct ShardState {
    info: ShardInfo,
    max: Option<usize>,
    witnesses: BTreeSet<String>,
    truncated: bool,
}

fn checkpoint_path(base: &std::path::Path, shard: u64, total: u64) -> PathBuf {
    let mut name = base.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(format!(".shard{shard}of{total}.json"));
    base.with_file_name(name)
}

fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    std::fs::write(&tmp, bytes)?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

fn passes_cap(gk: &Graph, cap: Option<usize>) -> bool {
    match cap {
        None => true,
        Some(2) => gk.is_triangle_free(),
        Some(cap) => gk.clique_number() <= cap,
    }
}

fn run_shard(task: &SearchTask, shard: u64) -> Result<ShardState> {
    let mut scanned = 0u64;
    let mut max: Option<usize> = None;
    let mut witnesses: BTreeSet<String> = BTreeSet::new();
    let mut truncated = false;
    let mut resumed = false;

    let cp_path = task
        .checkpoint
        .as_ref()
        .map(|base| checkpoint_path(base, shard, task.shards));
    let mut stream = match &cp_path {
        Some(path) if path.exists() => {
            let bytes = std::fs::read(path)?;
            let cp: ShardCheckpoint = serde_json::from_slice(&bytes).map_err(|e| {
                Error::Checkpoint(format!("corrupt checkpoint {}: {e}", path.display()))
            })?;
            if cp.schema_version != REPORT_SCHEMA_VERSION {
                return Err(Error::Checkpoint(format!(
                    "checkpoint schema {} does not match tool schema {}",
                    cp.schema_version, REPORT_SCHEMA_VERSION
                )));
            }
            if cp.task.fingerprint() != task.fingerprint() || cp.shard_index != shard {
                return Err(Error::Checkpoint(
                    "checkpoint belongs to a different task".into(),
                ));
            }
            scanned = cp.scanned;
            max = cp.max_e_gk;
            witnesses = cp.witnesses.into_iter().collect();
            truncated = cp.truncated;
            resumed = true;
            if cp.done {
                return Ok(ShardState {
                    info: ShardInfo {
                        index: shard,
                        total: task.shards,
                        scanned,
                        resumed,
                    },
                    max,
                    witnesses,
                    truncated,
                });
            }
            GraphStream::resume(&task.source, shard, task.shards, &cp.cursor)?
        }
        _ => GraphStream::new(&task.source, shard, task.shards)?,
    };

    let mut since_checkpoint = 0u64;
    while let Some(g) = stream.next() {
        let g = g?;
        scanned += 1;
        since_checkpoint += 1;
        let gk = g.distance_k_graph(task.k);
        if passes_cap(&gk, task.clique_cap) {
            let e = gk.edge_count();
            if max.is_none() || max.is_some_and(|m| e > m) {
                max = Some(e);
                witnesses.clear();
                truncated = false;
                witnesses.insert(canonical_form(&g).into_string());
            } else if max == Some(e) {
                witnesses.insert(canonical_form(&g).into_string());
                if witnesses.len() > WITNESS_CAP {
                    witnesses.pop_last();
                    truncated = true;
                }
            }
        }
        if let Some(path) = &cp_path {
            if since_checkpoint >= task.checkpoint_interval {
                since_checkpoint = 0;
                let cp = ShardCheckpoint {
                    schema_version: REPORT_SCHEMA_VERSION,
                    task: task.fingerprint(),
                    shard_index: shard,
                    cursor: stream.cursor(),
                    scanned,
                    max_e_gk: max,
                    witnesses: witnesses.iter().cloned().collect(),
                    truncated,
                    done: false,
                };
                write_atomic(path, &serde_json::to_vec_pretty(&cp)?)?;
            }
        }
    }
    if let Some(path) = &cp_path {
        let cp = ShardCheckpoint {
            schema_version: REPORT_SCHEMA_VERSION,
            task: task.fingerprint(),
            shard_index: shard,
            cursor: StreamCursor::Finished,
            scanned,
            max_e_gk: max,
            witnesses: witnesses.iter().cloned().collect(),
            truncated,
            done: true,
        };
        write_atomic(path, &serde_json::to_vec_pretty(&cp)?)?;
    }
    Ok(ShardState {
        info: ShardInfo {
            index: shard,
            total: task.shards,
            scanned,
            resumed,
        },
        max,
        witnesses,
        truncated,
    })
}

fn run_all_shards(task: &SearchTask, threads: usize) -> Result<Vec<ShardState>> {
    if threads <= 1 || task.shards == 1 {
        return (0..task.shards).map(|s| run_shard(task, s)).collect();
    }
    let workers = threads.min(task.shards as usize);
    let mut slots: Vec<Option<Result<ShardState>>> = Vec::new();
    slots.resize_with(task.shards as usize, || None);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for w in 0..workers {
            let task_ref = &*task;
            handles.push(scope.spawn(move || {
                let mut mine = Vec::new();
                let mut s = w as u64;
                while s < task_ref.shards {
                    mine.push((s as usize, run_shard(task_ref, s)));
                    s += workers as u64;
                }
                mine
            }));
        }
        for handle in handles {
            for (idx, result) in handle.join().expect("shard worker panicked") {
                slots[idx] = Some(result);
            }
        }
    });
    slots.into_iter().map(|s| s.expect("every shard ran")).collect()
}

// ---------------------------------------------------------------------------
// the search itself
// ---------------------------------------------------------------------------

/// Maximum e(G_k) over the task's stream, with all maximizers kept and
/// classified. The primary search entry point.
pub fn max_k_distances(task: &SearchTask, threads: usize) -> Result<SearchReport> {
    task.validate()?;
    let (t0, unix_ms) = Timing::start();
    let shard_states = run_all_shards(task, threads)?;

    let mut scanned = 0u64;
    let mut connected_max: Option<usize> = None;
    for s in &shard_states {
        scanned += s.info.scanned;
        connected_max = match (connected_max, s.max) {
            (a, None) => a,
            (None, b) => b,
            (Some(a), Some(b)) => Some(a.max(b)),
        };
    }
    let connected_max = connected_max.ok_or_else(|| {
        Error::InvalidParameter("the stream yielded no graphs passing the filter".into())
    })?;
    let mut witnesses: BTreeSet<String> = BTreeSet::new();
    let mut truncated = false;
    for s in &shard_states {
        if s.max == Some(connected_max) {
            witnesses.extend(s.witnesses.iter().cloned());
            truncated |= s.truncated;
        }
    }
    while witnesses.len() > WITNESS_CAP {
        witnesses.pop_last();
        truncated = true;
    }

    // all-graph scope folds in disconnected graphs via component additivity
    let (max_e_gk, disconnected_tie) = match task.scope {
        Scope::Connected => (connected_max, false),
        Scope::All => {
            let table = best_connected_table(task, connected_max)?;
            let overall = compose_disconnected_max(&table, task.n)?;
            let split = best_split_max(&table, task.n);
            (overall, overall > 0 && split == overall)
        }
    };
    let witness_list: Vec<Witness> = if max_e_gk == connected_max {
        witnesses
            .iter()
            .map(|g6| classify_witness(g6, task.n, task.k, connected_max))
            .collect::<Result<Vec<_>>>()?
    } else {
        Vec::new()
    };

    // a completed run no longer needs its checkpoints
    if let Some(base) = &task.checkpoint {
        for shard in 0..task.shards {
            std::fs::remove_file(checkpoint_path(base, shard, task.shards)).ok();
        }
    }

    Ok(SearchReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        task: task.clone(),
        graphs_scanned: scanned,
        connected_max,
        max_e_gk,
        disconnected_tie,
        witnesses: witness_list,
        witnesses_truncated: truncated,
        shard_provenance: shard_states.into_iter().map(|s| s.info).collect(),
        timing: Timing::finish(t0, unix_ms),
    })
}

/// Best connected value for every order up to the task's `n`, reusing the
/// already-computed top value. Orders at most `k` cannot realize distance
/// `k` at all.
fn best_connected_table(task: &SearchTask, top: usize) -> Result<Vec<usize>> {
    let mut table = vec![0usize; task.n + 1];
    table[task.n] = top;
    for m in (task.k + 1)..task.n {
        let mut best = 0usize;
        for g in ConnectedGraphs::new(m)? {
            let gk = g.distance_k_graph(task.k);
            if passes_cap(&gk, task.clique_cap) {
                best = best.max(gk.edge_count());
            }
        }
        table[m] = best;
    }
    Ok(table)
}

/// Maximum over all graphs by dynamic programming over component sizes:
/// `best(m) = max(best_connected(m), max_a best(a) + best(m - a))`.
/// k-distance counts are additive over components.
pub fn compose_disconnected_max(best_connected: &[usize], n: usize) -> Result<usize> {
    if best_connected.len() <= n {
        return Err(Error::InvalidParameter(format!(
            "best-connected table of length {} has gaps below order {n}",
            best_connected.len()
        )));
    }
    let mut best = vec![0usize; n + 1];
    for m in 1..=n {
        best[m] = best_connected[m];
        for a in 1..=(m / 2) {
            best[m] = best[m].max(best[a] + best[m - a]);
        }
    }
    Ok(best[n])
}

/// Best value among strictly disconnected splits of order `n`.
fn best_split_max(best_connected: &[usize], n: usize) -> usize {
    let mut best = vec![0usize; n + 1];
    let mut split_best = 0usize;
    for m in 1..=n {
        best[m] = best_connected[m];
        for a in 1..=(m / 2) {
            let v = best[a] + best[m - a];
            best[m] = best[m].max(v);
            if m == n {
                split_best = split_best.max(v);
            }
        }
    }
    split_best
}

fn classify_witness(g6: &str, n: usize, k: usize, e_gk: usize) -> Result<Witness> {
    let g = from_graph6_line(g6, 0)?;
    let db_iso = families::double_broom(n, k)
        .ok()
        .map(|db| k_isomorphic(&g, &db, k));
    let mut matching = Vec::new();
    for spec in broom_specs_for(n, k) {
        let broom = families::t_broom(&spec)?;
        if k_isomorphic(&g, &broom, k) {
            matching.push(spec);
        }
    }
    Ok(Witness {
        graph6: g6.to_string(),
        e_gk,
        double_broom_k_isomorphic: db_iso,
        matching_brooms: matching,
    })
}

/// Every broom spec of order exactly `n` for distance `k`, leaf counts in
/// descending order.
pub fn broom_specs_for(n: usize, k: usize) -> Vec<BroomSpec> {
    let mut out = Vec::new();
    if k < 3 {
        return out;
    }
    let handle = if k.is_multiple_of(2) { (k - 2) / 2 } else { (k - 3) / 2 };
    for t in 2.. {
        let hubs = if k.is_multiple_of(2) { 1 } else { t };
        let fixed = hubs + t * handle;
        if fixed + t > n {
            break;
        }
        let leaves_total = n - fixed;
        for parts in partitions_exact(leaves_total, t) {
            out.push(BroomSpec::new(k, parts).expect("partition parts are positive"));
        }
        if k.is_multiple_of(2) {
            // a single hub: t can keep growing only while handles fit
            continue;
        }
    }
    out
}

/// Partitions of `total` into exactly `parts` positive parts, descending.
fn partitions_exact(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(
        total: usize,
        parts: usize,
        max: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let hi = max.min(total + 1 - parts);
        for first in (1..=hi).rev() {
            if first * parts < total {
                break; // even repeating `first` cannot reach the total
            }
            prefix.push(first);
            rec(total - first, parts - 1, first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if parts >= 1 && total >= parts {
        rec(total, parts, total, &mut Vec::new(), &mut out);
    }
    out
}

// ---------------------------------------------------------------------------
// verifiers
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Consistent,
    MismatchFound,
}

/// How the searches backing a verifier run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub shards: u64,
    pub threads: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { shards: 1, threads: 1 }
    }
}

/// Per-n outcome of the triangle-free 2-distance bound check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K2Cell {
    pub n: usize,
    /// Maximum e(G_2) over all graphs whose 2-distance graph is
    /// triangle-free.
    pub observed_max: usize,
    pub connected_max: usize,
    /// The bound (n-1)^2/4 + 1 as an exact ratio.
    pub bound_num: i64,
    pub bound_den: i64,
    pub within_bound: bool,
    /// For odd n: whether the bound is attained exactly.
    pub attained: Option<bool>,
    /// For odd n: whether the glued-cliques construction is a maximizer.
    pub glued_cliques_is_witness: Option<bool>,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct K2BoundReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub cells: Vec<K2Cell>,
    pub verdict: Verdict,
    pub timing: Timing,
}

/// Checks, for each n in range, that a triangle-free 2-distance graph has
/// at most (n-1)^2/4 + 1 edges, and that for odd n the glued-cliques
/// construction attains it.
pub fn verify_k2_bound(
    n_range: RangeInclusive<usize>,
    opts: VerifyOptions,
) -> Result<K2BoundReport> {
    let (t0, unix_ms) = Timing::start();
    let mut cells = Vec::new();
    for n in n_range {
        if n < 5 {
            return Err(Error::InvalidParameter(format!(
                "the 2-distance bound check starts at n = 5, got {n}"
            )));
        }
        let mut task = SearchTask::internal(n, 2, Some(2), Scope::All);
        task.shards = opts.shards;
        let report = max_k_distances(&task, opts.threads)?;
        let observed = report.max_e_gk;
        // observed <= (n-1)^2/4 + 1, in integers: 4*observed <= (n-1)^2 + 4
        let within = 4 * observed <= (n - 1) * (n - 1) + 4;
        let (attained, glued_witness) = if n % 2 == 1 {
            let target = (n - 1) * (n - 1) / 4 + 1;
            let glued = canonical_form(&families::glued_cliques(n)?).into_string();
            (
                Some(observed == target),
                Some(report.witnesses.iter().any(|w| w.graph6 == glued)),
            )
        } else {
            (None, None)
        };
        cells.push(K2Cell {
            n,
            observed_max: observed,
            connected_max: report.connected_max,
            bound_num: ((n - 1) * (n - 1) + 4) as i64,
            bound_den: 4,
            within_bound: within,
            attained,
            glued_cliques_is_witness: glued_witness,
            witnesses: report.witnesses.iter().map(|w| w.graph6.clone()).collect(),
        });
    }
    let ok = cells.iter().all(|c| {
        c.within_bound && c.attained.unwrap_or(true) && c.glued_cliques_is_witness.unwrap_or(true)
    });
    Ok(K2BoundReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        cells,
        verdict: if ok { Verdict::Consistent } else { Verdict::MismatchFound },
        timing: Timing::finish(t0, unix_ms),
    })
}

/// Per-(n, k) outcome of the double-broom extremality check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleFreeCell {
    pub n: usize,
    pub k: usize,
    /// Maximum e(G_k) over all graphs with no three vertices pairwise at
    /// distance k.
    pub observed_max: usize,
    pub connected_max: usize,
    /// floor((n-k+1)^2/4), the double-broom value.
    pub predicted: usize,
    pub matched: bool,
    /// Whether (n-k+1)^2/4 is an integer, so the maximum can meet the bound
    /// exactly and the equality classification is in play at all.
    pub equality_exact: bool,
    pub all_witnesses_double_broom_k_isomorphic: bool,
    /// The one known exception below the conjectured thresholds.
    pub known_exception: bool,
    pub witnesses: Vec<Witness>,
}

impl TriangleFreeCell {
    /// The cell agrees with the claim: the value matches and, where the
    /// bound can be met exactly, every maximizer is k-isomorphic to the
    /// double broom.
    pub fn consistent(&self) -> bool {
        self.matched && (!self.equality_exact || self.all_witnesses_double_broom_k_isomorphic)
    }

    /// Maximizers that are not k-isomorphic to the double broom: the
    /// loadable counterexamples to the equality classification.
    pub fn counterexamples(&self) -> Vec<&Witness> {
        self.witnesses
            .iter()
            .filter(|w| w.double_broom_k_isomorphic != Some(true))
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleFreeReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub k: usize,
    pub cells: Vec<TriangleFreeCell>,
    pub verdict: Verdict,
    pub timing: Timing,
}

/// Checks, for each n, that the maximum e(G_k) under the clique cap 2
/// equals the double-broom value and that every maximizer is k-isomorphic
/// to the double broom. Mismatches are reported, not fatal: they are either
/// the known (7,3) exception or a counterexample worth keeping.
pub fn verify_triangle_free_conjecture(
    k: usize,
    n_range: RangeInclusive<usize>,
    opts: VerifyOptions,
) -> Result<TriangleFreeReport> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "the double-broom verifier requires k >= 3, got {k}"
        )));
    }
    let (t0, unix_ms) = Timing::start();
    let mut cells = Vec::new();
    for n in n_range {
        if n < k + 1 {
            return Err(Error::InvalidParameter(format!(
                "the check needs n >= k + 1, got n = {n}, k = {k}"
            )));
        }
        let mut task = SearchTask::internal(n, k, Some(2), Scope::All);
        task.shards = opts.shards;
        let report = max_k_distances(&task, opts.threads)?;
        let predicted = families::double_broom_count(n, k)?;
        let matched = report.max_e_gk == predicted;
        let all_db = !report.witnesses.is_empty()
            && report
                .witnesses
                .iter()
                .all(|w| w.double_broom_k_isomorphic == Some(true));
        cells.push(TriangleFreeCell {
            n,
            k,
            observed_max: report.max_e_gk,
            connected_max: report.connected_max,
            predicted,
            matched,
            equality_exact: (n - k + 1).is_multiple_of(2),
            all_witnesses_double_broom_k_isomorphic: all_db,
            known_exception: (n, k) == (7, 3),
            witnesses: report.witnesses,
        });
    }
    let ok = cells.iter().all(|c| c.consistent());
    Ok(TriangleFreeReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        k,
        cells,
        verdict: if ok { Verdict::Consistent } else { Verdict::MismatchFound },
        timing: Timing::finish(t0, unix_ms),
    })
}

/// Per-(n, k) outcome of the tree-maximum check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeCell {
    pub n: usize,
    pub k: usize,
    pub max_over_trees: usize,
    pub best_broom_count: usize,
    /// Some maximizer tree is graph-isomorphic to a broom.
    pub broom_attains_max: bool,
    /// Widths t of brooms that are maximizer trees.
    pub maximizer_broom_widths: Vec<usize>,
    /// Odd k: 2 is a maximizer width. Even k: some maximizer width is
    /// within 1 of the real-valued optimum.
    pub width_ok: bool,
    pub width_target: Option<f64>,
    pub tree_count: u64,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeTheoremReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub cells: Vec<TreeCell>,
    pub verdict: Verdict,
    pub timing: Timing,
}

/// Exhaustively checks over free trees that the k-distance maximum is
/// attained by a broom, with the right width behaviour per parity.
pub fn verify_tree_theorem(
    n_range: RangeInclusive<usize>,
    k_range: RangeInclusive<usize>,
    _opts: VerifyOptions,
) -> Result<TreeTheoremReport> {
    let (t0, unix_ms) = Timing::start();
    let mut cells = Vec::new();
    for n in n_range {
        for k in k_range.clone() {
            if k < 3 || k + 1 > n {
                continue;
            }
            let mut max = 0usize;
            let mut witnesses: BTreeSet<String> = BTreeSet::new();
            let mut tree_count = 0u64;
            for t in FreeTrees::new(n)? {
                tree_count += 1;
                let e = t.k_distance_count(k);
                if e > max {
                    max = e;
                    witnesses.clear();
                }
                if e == max && e > 0 {
                    witnesses.insert(canonical_form(&t).into_string());
                }
            }
            // odd-k brooms with t >= 3 contain a K_t of hubs and are not
            // trees; only t = 2 competes over trees
            let specs: Vec<BroomSpec> = broom_specs_for(n, k)
                .into_iter()
                .filter(|s| k % 2 == 0 || s.t() == 2)
                .collect();
            let best_broom = specs
                .iter()
                .map(families::t_broom_distance_count)
                .max()
                .unwrap_or(0);
            let mut maximizer_widths: BTreeSet<usize> = BTreeSet::new();
            for spec in &specs {
                if families::t_broom_distance_count(spec) == max {
                    let broom6 = canonical_form(&families::t_broom(spec)?).into_string();
                    if witnesses.contains(&broom6) {
                        maximizer_widths.insert(spec.t());
                    }
                }
            }
            let broom_attains = best_broom == max && !maximizer_widths.is_empty();
            let (width_ok, width_target) = if k % 2 == 1 {
                (maximizer_widths.contains(&families::ODD_K_OPTIMAL_WIDTH), None)
            } else {
                let (x, _) = families::optimal_broom_width(n, k)?;
                (
                    maximizer_widths.iter().any(|&t| (t as f64 - x).abs() <= 1.0),
                    Some(x),
                )
            };
            cells.push(TreeCell {
                n,
                k,
                max_over_trees: max,
                best_broom_count: best_broom,
                broom_attains_max: broom_attains,
                maximizer_broom_widths: maximizer_widths.into_iter().collect(),
                width_ok,
                width_target,
                tree_count,
                witnesses: witnesses.into_iter().collect(),
            });
        }
    }
    let ok = cells.iter().all(|c| c.broom_attains_max && c.width_ok);
    Ok(TreeTheoremReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        cells,
        verdict: if ok { Verdict::Consistent } else { Verdict::MismatchFound },
        timing: Timing::finish(t0, unix_ms),
    })
}

/// Per-n outcome of the 2-distance star-maximum check.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StarCell {
    pub n: usize,
    pub observed_max: usize,
    /// C(n-1, 2).
    pub predicted: usize,
    pub matched: bool,
    /// The star is the unique maximizer.
    pub unique_star_witness: bool,
    pub witnesses: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StarReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub cells: Vec<StarCell>,
    pub verdict: Verdict,
    pub timing: Timing,
}

/// Checks that the unrestricted maximum of e(G_2) is C(n-1,2), attained
/// exactly by the star.
pub fn verify_star_proposition(
    n_range: RangeInclusive<usize>,
    opts: VerifyOptions,
) -> Result<StarReport> {
    let (t0, unix_ms) = Timing::start();
    let mut cells = Vec::new();
    for n in n_range {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "the star check starts at n = 3, got {n}"
            )));
        }
        let mut task = SearchTask::internal(n, 2, None, Scope::All);
        task.shards = opts.shards;
        let report = max_k_distances(&task, opts.threads)?;
        let predicted = bounds::star_bound(n)?;
        let star6 = canonical_form(&families::star(n)?).into_string();
        let unique = report.witnesses.len() == 1 && report.witnesses[0].graph6 == star6;
        cells.push(StarCell {
            n,
            observed_max: report.max_e_gk,
            predicted,
            matched: report.max_e_gk == predicted,
            unique_star_witness: unique,
            witnesses: report.witnesses.into_iter().map(|w| w.graph6).collect(),
        });
    }
    let ok = cells.iter().all(|c| c.matched && c.unique_star_witness);
    Ok(StarReport {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        cells,
        verdict: if ok { Verdict::Consistent } else { Verdict::MismatchFound },
        timing: Timing::finish(t0, unix_ms),
    })
}

/// One violation of the spanning-tree dichotomy (none are expected; the
/// claim is proved).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma8Violation {
    pub graph6: String,
    pub k: usize,
    pub r: usize,
    pub tree_graph6: String,
    pub longest_path_len: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma8Cell {
    pub n: usize,
    pub graphs: u64,
    /// (graph, k, r) triples actually checked (at most r interior
    /// vertices).
    pub applicable_cases: u64,
    /// Distinct longest-path lengths seen, summed over graphs.
    pub path_profiles: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Lemma8Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub cells: Vec<Lemma8Cell>,
    pub violations: Vec<Lemma8Violation>,
    pub verdict: Verdict,
    pub timing: Timing,
}

/// Exhaustive spanning-tree dichotomy sweep: for every connected graph of
/// each order and every valid (k, r), every spanning tree either has no
/// path on r+1 vertices or has one on 2k-r. Spanning trees are enumerated
/// once per graph and shared across all (k, r) pairs.
pub fn lemma8_sweep(n_range: RangeInclusive<usize>) -> Result<Lemma8Report> {
    let (t0, unix_ms) = Timing::start();
    let mut cells = Vec::new();
    let mut violations = Vec::new();
    for n in n_range {
        if n < 3 {
            return Err(Error::InvalidParameter(format!(
                "the sweep needs n >= 3, got {n}"
            )));
        }
        let mut graphs = 0u64;
        let mut cases = 0u64;
        let mut profiles = 0u64;
        for g in ConnectedGraphs::new(n)? {
            graphs += 1;
            let profile = spanning_tree_path_profile(&g);
            profiles += profile.len() as u64;
            for k in 2..n {
                let interior = interior_count(&g, k);
                for r in 2..n {
                    if interior > r {
                        continue;
                    }
                    cases += 1;
                    let lo = r + 1;
                    let hi = (2 * k).saturating_sub(r);
                    for (&len, tree) in &profile {
                        if len >= lo && len < hi {
                            violations.push(Lemma8Violation {
                                graph6: canonical_form(&g).into_string(),
                                k,
                                r,
                                tree_graph6: crate::graph6::to_graph6(tree),
                                longest_path_len: len,
                            });
                        }
                    }
                }
            }
        }
        cells.push(Lemma8Cell {
            n,
            graphs,
            applicable_cases: cases,
            path_profiles: profiles,
        });
    }
    let verdict = if violations.is_empty() { Verdict::Consistent } else { Verdict::MismatchFound };
    Ok(Lemma8Report {
        schema_version: REPORT_SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        cells,
        violations,
        verdict,
        timing: Timing::finish(t0, unix_ms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn c7_wins_by_one() {
        let task = SearchTask::internal(7, 3, Some(2), Scope::Connected);
        let report = max_k_distances(&task, 1).unwrap();
        assert_eq!(report.max_e_gk, 7);
        assert_eq!(report.graphs_scanned, 853);
        let c7 = canonical_form(&families::cycle(7).unwrap()).into_string();
        assert!(report.witnesses.iter().any(|w| w.graph6 == c7));
        assert_eq!(families::double_broom_count(7, 3).unwrap(), 6);
        report.reverify().unwrap();
    }

    #[test]
    fn diameter_4_on_5_vertices_is_the_path() {
        let task = SearchTask::internal(5, 4, None, Scope::Connected);
        let report = max_k_distances(&task, 1).unwrap();
        assert_eq!(report.max_e_gk, 1);
        let p5 = canonical_form(&families::path(5).unwrap()).into_string();
        assert_eq!(report.witnesses.len(), 1);
        assert_eq!(report.witnesses[0].graph6, p5);
    }

    #[test]
    fn shard_counts_are_identical() {
        let base =
            max_k_distances(&SearchTask::internal(7, 3, Some(2), Scope::Connected), 1).unwrap();
        for shards in [2u64, 8] {
            let mut task = SearchTask::internal(7, 3, Some(2), Scope::Connected);
            task.shards = shards;
            let report = max_k_distances(&task, 2).unwrap();
            assert_eq!(report.max_e_gk, base.max_e_gk);
            assert_eq!(report.graphs_scanned, base.graphs_scanned);
            let a: Vec<&str> = base.witnesses.iter().map(|w| w.graph6.as_str()).collect();
            let b: Vec<&str> = report.witnesses.iter().map(|w| w.graph6.as_str()).collect();
            assert_eq!(a, b, "shards={shards}");
        }
    }

    #[test]
    fn component_additivity_spot_check() {
        let p4 = families::path(4).unwrap();
        let two_p4 = p4.disjoint_union(&p4).unwrap();
        assert_eq!(two_p4.k_distance_count(3), 2 * p4.k_distance_count(3));
        let c7 = families::cycle(7).unwrap();
        let mix = c7.disjoint_union(&p4).unwrap();
        assert_eq!(
            mix.k_distance_count(3),
            c7.k_distance_count(3) + p4.k_distance_count(3)
        );
    }

    #[test]
    fn dp_composes_tables() {
        // k > n for every part: all-zero table composes to zero
        assert_eq!(compose_disconnected_max(&[0, 0, 0, 0], 3).unwrap(), 0);
        // best(5) = 3 connected; the best split 2+3 gives 1 + 1 < 3
        let table = vec![0, 0, 1, 1, 2, 3];
        assert_eq!(compose_disconnected_max(&table, 5).unwrap(), 3);
        // additive splits can win: 3+3 gives 4 over the weak connected 1
        let table = vec![0, 0, 0, 2, 0, 0, 1];
        assert_eq!(compose_disconnected_max(&table, 6).unwrap(), 4);
        assert!(compose_disconnected_max(&[0, 1], 3).is_err());
    }

    #[test]
    fn all_scope_on_7_3_still_prefers_c7() {
        let task = SearchTask::internal(7, 3, Some(2), Scope::All);
        let report = max_k_distances(&task, 1).unwrap();
        assert_eq!(report.max_e_gk, 7);
        assert!(!report.disconnected_tie);
    }

    #[test]
    fn broom_spec_sweep_is_complete() {
        for spec in broom_specs_for(9, 3) {
            assert_eq!(spec.order(), 9);
        }
        let widths: BTreeSet<usize> = broom_specs_for(9, 3).iter().map(|s| s.t()).collect();
        assert!(widths.contains(&2));
        assert!(widths.contains(&3));
        for spec in broom_specs_for(9, 4) {
            assert_eq!(spec.order(), 9);
            assert_eq!(spec.k, 4);
        }
        assert!(!broom_specs_for(8, 5).is_empty());
    }

    #[test]
    fn witness_classification_at_8_3() {
        let task = SearchTask::internal(8, 3, Some(2), Scope::Connected);
        let report = max_k_distances(&task, 1).unwrap();
        assert_eq!(report.max_e_gk, 9); // floor((8-3+1)^2/4)
        // the double broom is a maximizer, but not the only 3-isomorphism
        // class of maximizers: a spider with two direct leaves and bundles
        // {2,3}, {4} behind two middle vertices also reaches 9
        let db = canonical_form(&families::double_broom(8, 3).unwrap()).into_string();
        assert!(report.witnesses.iter().any(|w| w.graph6 == db));
        assert!(report
            .witnesses
            .iter()
            .all(|w| w.graph6 != db || w.double_broom_k_isomorphic == Some(true)));
        let spider = Graph::from_edges(
            8,
            &[(0, 7), (1, 7), (5, 7), (6, 7), (2, 6), (3, 6), (4, 5)],
        )
        .unwrap();
        assert_eq!(spider.k_distance_count(3), 9);
        assert!(spider.distance_k_graph(3).is_triangle_free());
        let spider6 = canonical_form(&spider).into_string();
        let found = report
            .witnesses
            .iter()
            .find(|w| w.graph6 == spider6)
            .expect("the spider counterexample is among the maximizers");
        assert_eq!(found.double_broom_k_isomorphic, Some(false));
    }

    #[test]
    fn checkpoint_resume_matches_uninterrupted_run() {
        let dir = std::env::temp_dir().join("kdist-test-checkpoint");
        std::fs::create_dir_all(&dir).unwrap();
        let base = dir.join("search");
        let mut task = SearchTask::internal(6, 3, Some(2), Scope::Connected);
        task.checkpoint = Some(base.clone());
        task.checkpoint_interval = 10;
        let with_cp = max_k_distances(&task, 1).unwrap();
        let without =
            max_k_distances(&SearchTask::internal(6, 3, Some(2), Scope::Connected), 1).unwrap();
        assert_eq!(with_cp.max_e_gk, without.max_e_gk);
        assert_eq!(with_cp.graphs_scanned, without.graphs_scanned);
        // completed runs clean their checkpoint files up
        assert!(!checkpoint_path(&base, 0, 1).exists());

        // simulate an interrupted shard: write a mid-run checkpoint by hand
        // from a partial manual scan, then let the search resume from it
        let mut stream = ConnectedGraphs::new(6).unwrap();
        let mut scanned = 0u64;
        let mut max = None;
        let mut witnesses: BTreeSet<String> = BTreeSet::new();
        for _ in 0..40 {
            let g = stream.next().unwrap();
            scanned += 1;
            let gk = g.distance_k_graph(3);
            if gk.is_triangle_free() {
                let e = gk.edge_count();
                if max.is_none() || max.is_some_and(|m| e > m) {
                    max = Some(e);
                    witnesses.clear();
                }
                if max == Some(e) {
                    witnesses.insert(canonical_form(&g).into_string());
                }
            }
        }
        let cp = ShardCheckpoint {
            schema_version: REPORT_SCHEMA_VERSION,
            task: task.fingerprint(),
            shard_index: 0,
            cursor: stream.cursor(),
            scanned,
            max_e_gk: max,
            witnesses: witnesses.into_iter().collect(),
            truncated: false,
            done: false,
        };
        write_atomic(
            &checkpoint_path(&base, 0, 1),
            &serde_json::to_vec_pretty(&cp).unwrap(),
        )
        .unwrap();
        let resumed = max_k_distances(&task, 1).unwrap();
        assert_eq!(resumed.max_e_gk, without.max_e_gk);
        assert_eq!(resumed.graphs_scanned, without.graphs_scanned);
        assert!(resumed.shard_provenance[0].resumed);
        let a: Vec<&str> = resumed.witnesses.iter().map(|w| w.graph6.as_str()).collect();
        let b: Vec<&str> = without.witnesses.iter().map(|w| w.graph6.as_str()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn corrupt_checkpoint_is_an_error() {
        let dir = std::env::temp_dir().join("kdist-test-checkpoint-corrupt");
        std::fs::create_dir_all(&dir).unwrap();
        let base = dir.join("search");
        std::fs::write(checkpoint_path(&base, 0, 1), b"{not json").unwrap();
        let mut task = SearchTask::internal(5, 3, Some(2), Scope::Connected);
        task.checkpoint = Some(base.clone());
        assert!(matches!(max_k_distances(&task, 1), Err(Error::Checkpoint(_))));
        std::fs::remove_file(checkpoint_path(&base, 0, 1)).ok();
    }

    #[test]
    fn star_proposition_small() {
        let report = verify_star_proposition(3..=6, VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
        for cell in &report.cells {
            assert!(cell.matched);
            assert!(cell.unique_star_witness, "n={}", cell.n);
        }
    }

    #[test]
    fn k2_bound_small() {
        let report = verify_k2_bound(5..=7, VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
        let c5 = &report.cells[0];
        assert_eq!(c5.observed_max, 5);
        assert_eq!(c5.attained, Some(true));
        let c7 = &report.cells[2];
        assert_eq!(c7.observed_max, 10);
        assert_eq!(c7.glued_cliques_is_witness, Some(true));
    }

    #[test]
    fn triangle_free_conjecture_shows_the_7_3_exception() {
        let report = verify_triangle_free_conjecture(3, 6..=8, VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::MismatchFound);
        let by_n: std::collections::BTreeMap<usize, &TriangleFreeCell> =
            report.cells.iter().map(|c| (c.n, c)).collect();
        assert!(by_n[&6].matched);
        assert!(!by_n[&7].matched);
        assert!(by_n[&7].known_exception);
        assert_eq!(by_n[&7].observed_max, 7);
        assert_eq!(by_n[&7].predicted, 6);
        // n = 8: the value matches but the equality classification does
        // not; the cell must carry loadable counterexamples
        assert!(by_n[&8].matched);
        assert!(by_n[&8].equality_exact);
        assert!(!by_n[&8].all_witnesses_double_broom_k_isomorphic);
        let counter = by_n[&8].counterexamples();
        assert!(!counter.is_empty());
        for w in counter {
            let g = from_graph6_line(&w.graph6, 0).unwrap();
            assert_eq!(g.k_distance_count(3), 9);
            assert!(g.distance_k_graph(3).is_triangle_free());
        }
    }

    #[test]
    fn triangle_free_conjecture_k4_n6() {
        // exhaustive over the 112 connected graphs on 6 vertices
        let report = verify_triangle_free_conjecture(4, 6..=6, VerifyOptions::default()).unwrap();
        let cell = &report.cells[0];
        assert_eq!(cell.predicted, 2); // floor((6-4+1)^2/4)
        assert_eq!(cell.observed_max, 2);
        assert!(cell.matched);
        // 3 = n-k+1 is odd: the bound 9/4 cannot be met exactly, so the
        // equality classification is vacuous and the cell is consistent
        assert!(!cell.equality_exact);
        assert!(cell.consistent());
    }

    #[test]
    fn tree_theorem_small() {
        let report = verify_tree_theorem(5..=9, 3..=5, VerifyOptions::default()).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
        let cell_8_4 = report
            .cells
            .iter()
            .find(|c| (c.n, c.k) == (8, 4))
            .expect("cell present");
        assert_eq!(cell_8_4.max_over_trees, 6); // 2-broom with leaves (3,2)
        assert_eq!(cell_8_4.tree_count, 23);
        let cell_7_3 = report.cells.iter().find(|c| (c.n, c.k) == (7, 3)).unwrap();
        assert_eq!(cell_7_3.max_over_trees, 6);
    }

    #[test]
    fn lemma8_sweep_small() {
        let report = lemma8_sweep(3..=5).unwrap();
        assert_eq!(report.verdict, Verdict::Consistent);
        assert!(report.violations.is_empty());
        assert_eq!(report.cells.len(), 3);
        assert_eq!(report.cells[2].graphs, 21);
    }

    #[test]
    fn capped_maxima_respect_the_mantel_type_bound() {
        // the cap-2 maximum can never exceed n(n-k+1)/4; a violation would
        // mean a bug, not a discovery
        for n in 4..=7usize {
            for k in 2..n {
                let task = SearchTask::internal(n, k, Some(2), Scope::Connected);
                let report = max_k_distances(&task, 1).unwrap();
                assert!(
                    4 * report.max_e_gk <= n * (n - k + 1),
                    "(n,k)=({n},{k}): {} beats the proved bound",
                    report.max_e_gk
                );
            }
        }
    }

    #[test]
    fn partitions_are_exact_and_descending() {
        let parts = partitions_exact(6, 3);
        assert!(parts.contains(&vec![4, 1, 1]));
        assert!(parts.contains(&vec![2, 2, 2]));
        assert!(parts.contains(&vec![3, 2, 1]));
        for p in &parts {
            assert_eq!(p.iter().sum::<usize>(), 6);
            assert!(p.windows(2).all(|w| w[0] >= w[1]));
        }
        assert_eq!(parts.len(), 3);
        assert!(partitions_exact(2, 3).is_empty());
    }

    #[test]
    fn reports_are_deterministic_modulo_timing() {
        let task = SearchTask::internal(6, 3, Some(2), Scope::All);
        let a = max_k_distances(&task, 1).unwrap();
        let b = max_k_distances(&task, 1).unwrap();
        let mut ja = serde_json::to_value(&a).unwrap();
        let mut jb = serde_json::to_value(&b).unwrap();
        ja.as_object_mut().unwrap().remove("timing");
        jb.as_object_mut().unwrap().remove("timing");
        assert_eq!(ja, jb);
    }
}
