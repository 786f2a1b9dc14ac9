//! Exact Pareto labeling over all paths from a source.
//!
//! Each vertex accumulates the Pareto frontier of the weights of every
//! path reaching it, refined by edge relaxations until no label changes.
//! This is the exactness baseline the faster searches are judged
//! against: pseudo-polynomial, but complete. The electric-vehicle
//! variant clamps energy at zero from below (a full battery stores no
//! more) and discards labels whose energy exceeds the capacity (a dead
//! battery ends the walk).
//!
//! Labels are kept in an arena so a label evicted from a frontier still
//! resolves its predecessor chain; every stored label therefore always
//! reconstructs a concrete path realizing its weight.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, QueryGoal, RoadGraph, VertexId};
use crate::weight::{BiWeight, WattHours};

/// Tuning knobs for the labeling fixpoint.
#[derive(Debug, Clone, Default)]
pub struct ParetoConfig {
    /// Battery capacity in Wh; labels with more energy than this are
    /// discarded as depleted.
    pub capacity: Option<WattHours>,
    /// Floor energy at zero after each relaxation (battery cannot exceed
    /// a full charge).
    pub clamp_energy_at_zero: bool,
    /// Relaxation-round guard. Defaults to `n` rounds, or `n * (C + 1)`
    /// when a capacity is set. Configurations that enable clamping
    /// without a capacity may need an explicit value when charger loops
    /// are present.
    pub max_relaxation_rounds: Option<u64>,
}

impl ParetoConfig {
    /// Electric-vehicle semantics: start fully charged, clamp at full,
    /// die past `capacity`.
    pub fn ev(capacity: WattHours) -> Self {
        assert!(capacity > 0, "capacity must be positive");
        ParetoConfig {
            capacity: Some(capacity),
            clamp_energy_at_zero: true,
            max_relaxation_rounds: None,
        }
    }

    fn effective_rounds(&self, n: usize) -> u64 {
        if let Some(r) = self.max_relaxation_rounds {
            return r;
        }
        match self.capacity {
            None => n as u64,
            Some(c) => (n as u64).saturating_mul(c.max(0) as u64 + 1),
        }
    }
}

/// Opaque handle to a stored label; survives frontier eviction.
pub type LabelId = usize;

#[derive(Debug, Clone, Copy)]
struct LabelNode {
    weight: BiWeight,
    vertex: VertexId,
    /// Parent label and the edge that extended it; `None` at the source.
    pred: Option<(LabelId, EdgeId)>,
    /// False once evicted from its vertex frontier.
    alive: bool,
}

/// A frontier member: its weight plus the arena handle for path recovery.
#[derive(Debug, Clone, Copy)]
pub struct FrontierEntry {
    pub weight: BiWeight,
    pub label: LabelId,
}

/// Per-vertex Pareto frontiers of path weights from one source.
#[derive(Debug, Clone)]
pub struct LabelTable {
    source: VertexId,
    frontiers: Vec<Vec<FrontierEntry>>,
    arena: Vec<LabelNode>,
}

impl LabelTable {
    pub fn source(&self) -> VertexId {
        self.source
    }

    /// Frontier at `v`, ascending by time (hence descending by energy).
    pub fn frontier(&self, v: VertexId) -> &[FrontierEntry] {
        &self.frontiers[v]
    }

    pub fn frontier_weights(&self, v: VertexId) -> impl Iterator<Item = BiWeight> + '_ {
        self.frontiers[v].iter().map(|e| e.weight)
    }

    pub fn is_reachable(&self, v: VertexId) -> bool {
        !self.frontiers[v].is_empty()
    }

    pub fn reachable_count(&self) -> usize {
        self.frontiers.iter().filter(|f| !f.is_empty()).count()
    }

    /// Least-time stored pair at `t` meeting the goal, if any.
    pub fn feasible(&self, t: VertexId, goal: &QueryGoal) -> Option<BiWeight> {
        self.feasible_entry(t, goal).map(|e| e.weight)
    }

    pub fn feasible_entry(&self, t: VertexId, goal: &QueryGoal) -> Option<FrontierEntry> {
        self.frontiers[t]
            .iter()
            .copied()
            .find(|e| goal.max_energy.is_none_or(|y| e.weight.energy <= y))
            .filter(|e| goal.max_time.is_none_or(|x| e.weight.time <= x))
    }

    /// Edge sequence from the source realizing `label`.
    pub fn path(&self, label: LabelId) -> Vec<EdgeId> {
        let mut edges = Vec::new();
        let mut cursor = label;
        while let Some((parent, edge)) = self.arena[cursor].pred {
            edges.push(edge);
            cursor = parent;
        }
        edges.reverse();
        edges
    }

    fn insert(&mut self, v: VertexId, weight: BiWeight, pred: Option<(LabelId, EdgeId)>) -> Option<LabelId> {
        let frontier = &mut self.frontiers[v];
        let after = frontier.partition_point(|m| m.weight.time <= weight.time);
        if after > 0 && frontier[after - 1].weight.energy <= weight.energy {
            return None; // dominated by or equal to an existing label
        }
        let start = frontier.partition_point(|m| m.weight.time < weight.time);
        let mut end = start;
        while end < frontier.len() && frontier[end].weight.energy >= weight.energy {
            end += 1;
        }
        let id = self.arena.len();
        self.arena.push(LabelNode {
            weight,
            vertex: v,
            pred,
            alive: true,
        });
        for evicted in &frontier[start..end] {
            self.arena[evicted.label].alive = false;
        }
        self.frontiers[v].splice(start..end, [FrontierEntry { weight, label: id }]);
        Some(id)
    }
}

/// Exact per-vertex Pareto frontiers of `s`-to-v path weights.
///
/// Label-correcting over a FIFO queue of labels; one round is a queue
/// generation, matching the edge-sweep iteration count the round guard
/// is stated in. Without a capacity the graph must not contain a cycle
/// whose weight is negative in either coordinate, or the guard trips.
pub fn pareto_frontier(g: &RoadGraph, s: VertexId, cfg: &ParetoConfig) -> Result<LabelTable> {
    assert!(s < g.vertex_count(), "source out of range");
    let mut table = LabelTable {
        source: s,
        frontiers: vec![Vec::new(); g.vertex_count()],
        arena: Vec::new(),
    };
    let root = table
        .insert(s, BiWeight::new(0, 0), None)
        .expect("seed label");

    let max_rounds = cfg.effective_rounds(g.vertex_count());
    let mut queue: VecDeque<LabelId> = VecDeque::new();
    queue.push_back(root);
    let mut rounds: u64 = 0;
    while !queue.is_empty() {
        rounds += 1;
        if rounds > max_rounds {
            return Err(Error::RoundGuardExceeded { rounds: max_rounds });
        }
        for _ in 0..queue.len() {
            let id = queue.pop_front().expect("non-empty round");
            if !table.arena[id].alive {
                continue; // superseded while queued; extensions are dominated
            }
            let LabelNode { weight, vertex, .. } = table.arena[id];
            for edge_id in g.outgoing(vertex) {
                let e = g.edge(edge_id);
                let mut next = weight.checked_add(e.weight)?;
                if cfg.clamp_energy_at_zero && next.energy < 0 {
                    next.energy = 0;
                }
                if let Some(c) = cfg.capacity {
                    if next.energy > c {
                        continue;
                    }
                }
                if let Some(new_id) = table.insert(e.to, next, Some((id, edge_id))) {
                    queue.push_back(new_id);
                }
            }
        }
    }
    Ok(table)
}

/// [`pareto_frontier`] under electric-vehicle battery semantics: the
/// vehicle leaves `s` fully charged with `capacity` Wh on board.
pub fn ev_pareto_frontier(g: &RoadGraph, s: VertexId, capacity: WattHours) -> Result<LabelTable> {
    pareto_frontier(g, s, &ParetoConfig::ev(capacity))
}
