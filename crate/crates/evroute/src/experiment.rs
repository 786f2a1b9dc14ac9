//! Reachability and slowdown sweeps over capacities.
//!
//! For a fixed source and a seeded target sample, each capacity row
//! compares the exact labeling oracle against the two-phase search:
//! how many targets each can reach within the battery, and how much
//! longer the two-phase routes are than the optimum. The oracle is
//! pseudo-polynomial, so rows skip it (blank columns) when the
//! n * (capacity + 1) product exceeds the guard or when charging
//! stations are in play; such rows report two-phase reachability
//! against the raw target count instead.

use std::collections::VecDeque;
use std::time::Instant;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::charging::{build_super_graph, route_with_chargers, ChargeModel};
use crate::error::{Error, Result};
use crate::graph::{QueryGoal, RoadGraph, VertexId};
use crate::labeling::ev_pareto_frontier;
use crate::two_phase::best_two_phase;
use crate::utility::PreferencePair;
use crate::weight::WattHours;

/// Abort the oracle beyond this n * (capacity + 1) product.
pub const DEFAULT_ORACLE_GUARD: u128 = 1_000_000_000;

/// Which vertices to query as targets.
#[derive(Debug, Clone)]
pub enum TargetSpec {
    All,
    /// `count` distinct vertices drawn uniformly by `seed`.
    Sample { count: usize, seed: u64 },
}

/// Charging setup for charger-aware sweeps.
#[derive(Debug, Clone)]
pub struct ChargerSetup {
    pub stations: Vec<VertexId>,
    pub model: ChargeModel,
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub source: VertexId,
    pub targets: TargetSpec,
    pub capacities: Vec<WattHours>,
    pub prefs: Vec<PreferencePair>,
    pub chargers: Option<ChargerSetup>,
    pub oracle_guard_limit: u128,
    /// With timing off the report is byte-stable across runs.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(source: VertexId, targets: TargetSpec, capacities: Vec<WattHours>) -> Self {
        ExperimentConfig {
            source,
            targets,
            capacities,
            prefs: crate::utility::default_preferences(),
            chargers: None,
            oracle_guard_limit: DEFAULT_ORACLE_GUARD,
            timing: true,
        }
    }
}

/// Oracle-side columns; absent when the guard trips or chargers are on.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleColumns {
    pub reachable_nodes: usize,
    pub reachable_pct: f64,
    pub reachable_targets: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub capacity: WattHours,
    pub targets: usize,
    /// Targets with no underlying path from the source at any capacity.
    pub disconnected_targets: usize,
    pub oracle: Option<OracleColumns>,
    pub twophase_reached_targets: usize,
    /// Share of oracle-reachable targets the two-phase search reaches,
    /// or of all targets when the oracle column is absent.
    pub reachability_pct: f64,
    /// Mean over targets both methods reach; zero-time optima count as
    /// slowdown 0 when matched.
    pub mean_slowdown_pct: Option<f64>,
    pub avg_query_s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub source: VertexId,
    pub targets: Vec<VertexId>,
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentReport {
    /// Fixed columns, header always present, `.` decimal point, blank
    /// cells for absent values.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "capacity_wh,targets,disconnected_targets,oracle_reachable_nodes,\
             oracle_reachable_pct,oracle_reachable_targets,twophase_reached_targets,\
             reachability_pct,mean_slowdown_pct,avg_query_s\n",
        );
        for row in &self.rows {
            let (nodes, node_pct, targets) = match row.oracle {
                Some(o) => (
                    o.reachable_nodes.to_string(),
                    format!("{:.2}", o.reachable_pct),
                    o.reachable_targets.to_string(),
                ),
                None => (String::new(), String::new(), String::new()),
            };
            let slowdown = row
                .mean_slowdown_pct
                .map_or(String::new(), |s| format!("{s:.2}"));
            let timing = row
                .avg_query_s
                .map_or(String::new(), |t| format!("{t:.6}"));
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{:.2},{},{}\n",
                row.capacity,
                row.targets,
                row.disconnected_targets,
                nodes,
                node_pct,
                targets,
                row.twophase_reached_targets,
                row.reachability_pct,
                slowdown,
                timing,
            ));
        }
        out
    }
}

fn resolve_targets(n: usize, spec: &TargetSpec) -> Vec<VertexId> {
    match *spec {
        TargetSpec::All => (0..n).collect(),
        TargetSpec::Sample { count, seed } => {
            assert!(count >= 1, "need at least one target");
            assert!(count <= n, "cannot sample {count} distinct targets from {n} vertices");
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rand::seq::index::sample(&mut rng, n, count).into_vec()
        }
    }
}

fn connected_from(g: &RoadGraph, s: VertexId) -> Vec<bool> {
    let mut seen = vec![false; g.vertex_count()];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(v) = queue.pop_front() {
        for eid in g.outgoing(v) {
            let to = g.edge(eid).to;
            if !seen[to] {
                seen[to] = true;
                queue.push_back(to);
            }
        }
    }
    seen
}

pub fn run_experiment(g: &RoadGraph, cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    let n = g.vertex_count();
    assert!(cfg.source < n, "source out of range");
    assert!(!cfg.prefs.is_empty(), "at least one preference pair");
    let targets = resolve_targets(n, &cfg.targets);
    let reachable_ignoring_energy = connected_from(g, cfg.source);
    let disconnected_targets = targets
        .iter()
        .filter(|&&t| !reachable_ignoring_energy[t])
        .count();

    let mut rows = Vec::with_capacity(cfg.capacities.len());
    for &capacity in &cfg.capacities {
        assert!(capacity > 0, "capacity must be positive");
        let oracle_product = n as u128 * (capacity as u128 + 1);
        let run_oracle = cfg.chargers.is_none() && oracle_product <= cfg.oracle_guard_limit;
        let oracle_table = if run_oracle {
            Some(ev_pareto_frontier(g, cfg.source, capacity)?)
        } else {
            None
        };

        let mut reached = 0usize;
        let mut slowdown_sum = 0.0f64;
        let mut slowdown_count = 0usize;
        let mut elapsed = 0.0f64;
        for &t in &targets {
            let started = Instant::now();
            let outcome = query_target(g, cfg, capacity, t);
            elapsed += started.elapsed().as_secs_f64();
            let total_time = match outcome {
                Ok(seconds) => seconds,
                Err(Error::NoFeasibleRoute | Error::Unreachable { .. }) => continue,
                Err(other) => return Err(other),
            };
            reached += 1;
            if let Some(table) = &oracle_table {
                let bound = QueryGoal {
                    max_time: None,
                    max_energy: Some(capacity),
                };
                if let Some(best) = table.feasible(t, &bound) {
                    slowdown_sum +=
                        (total_time - best.time) as f64 / best.time.max(1) as f64 * 100.0;
                    slowdown_count += 1;
                }
            }
        }

        let oracle = oracle_table.map(|table| {
            let reachable_nodes = (0..n).filter(|&v| table.is_reachable(v)).count();
            let reachable_targets = targets.iter().filter(|&&t| table.is_reachable(t)).count();
            OracleColumns {
                reachable_nodes,
                reachable_pct: reachable_nodes as f64 / n as f64 * 100.0,
                reachable_targets,
            }
        });
        let denominator = oracle.map_or(targets.len(), |o| o.reachable_targets);
        let reachability_pct = if denominator == 0 {
            100.0
        } else {
            reached as f64 / denominator as f64 * 100.0
        };
        rows.push(ExperimentRow {
            capacity,
            targets: targets.len(),
            disconnected_targets,
            oracle,
            twophase_reached_targets: reached,
            reachability_pct,
            mean_slowdown_pct: (slowdown_count > 0)
                .then(|| slowdown_sum / slowdown_count as f64),
            avg_query_s: cfg
                .timing
                .then(|| elapsed / targets.len().max(1) as f64),
        });
    }
    Ok(ExperimentReport {
        source: cfg.source,
        targets,
        rows,
    })
}

/// One end-to-end query including its tree builds; total seconds on
/// success.
fn query_target(
    g: &RoadGraph,
    cfg: &ExperimentConfig,
    capacity: WattHours,
    t: VertexId,
) -> Result<i64> {
    match &cfg.chargers {
        None => {
            let goal = QueryGoal {
                max_time: None,
                max_energy: Some(capacity),
            };
            let route = best_two_phase(g, cfg.source, t, &cfg.prefs, &goal)?;
            Ok(route.score.weight.time)
        }
        Some(setup) => {
            let sg = build_super_graph(
                g,
                &setup.stations,
                cfg.source,
                t,
                &cfg.prefs,
                capacity,
                &setup.model,
            )?;
            Ok(route_with_chargers(&sg, cfg.source, t)?.total_seconds)
        }
    }
}
