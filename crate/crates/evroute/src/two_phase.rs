//! Two-phase path composition.
//!
//! Single-phase optima only ever reach the convex hull of the
//! achievable (time, energy) weights. Composing an outbound tree under
//! style i with an inbound tree under style j, glued at a switch
//! vertex, also reaches points strictly inside the hull: the search
//! builds c trees from s and c trees into t, then scores every
//! (vertex, i, j) combination by summing the two labels.
//!
//! Scores are sums of independently optimal legs, so a composed route
//! is a walk (legs may overlap) and battery feasibility is judged on
//! the total by default; [`prefix_battery_violation`] rechecks a
//! finished route step by step for callers that care.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, QueryGoal, RoadGraph, VertexId};
use crate::utility::{
    extract_tree_path, shortest_tree_on, PreferencePair, ShortestPathTree, TreeDirection,
};
use crate::weight::{BiWeight, ParetoSet, WattHours};

/// One (switch vertex, outbound style, inbound style) combination and
/// the summed weight of its two legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoPhaseScore {
    pub switch_vertex: VertexId,
    /// Index into the preference list used for the s-to-switch leg.
    pub style_out: usize,
    /// Index into the preference list used for the switch-to-t leg.
    pub style_in: usize,
    pub weight: BiWeight,
}

/// A materialized two-phase route: edge ids for both legs in travel
/// order, concatenating to an s-to-t walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPhaseRoute {
    pub score: TwoPhaseScore,
    pub leg1: Vec<EdgeId>,
    pub leg2: Vec<EdgeId>,
}

/// Work counters: `tree_builds` is fixed at 2c by construction;
/// `score_combinations` grows by c * c * n per sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TwoPhaseStats {
    pub tree_builds: u64,
    pub score_combinations: u64,
}

/// The 2c trees for one (s, t) pair, reusable across goals.
#[derive(Debug)]
pub struct TwoPhaseSearch {
    prefs: Vec<PreferencePair>,
    out_trees: Vec<ShortestPathTree>,
    in_trees: Vec<ShortestPathTree>,
    vertex_count: usize,
    stats: TwoPhaseStats,
}

impl TwoPhaseSearch {
    pub fn new(g: &RoadGraph, s: VertexId, t: VertexId, prefs: &[PreferencePair]) -> Result<Self> {
        assert!(!prefs.is_empty(), "at least one preference pair");
        let out_trees = build_out_trees(g, s, prefs)?;
        let rev = g.reverse_view();
        let in_trees = build_in_trees_on(&rev, t, prefs)?;
        let stats = TwoPhaseStats {
            tree_builds: 2 * prefs.len() as u64,
            score_combinations: 0,
        };
        Ok(TwoPhaseSearch {
            prefs: prefs.to_vec(),
            out_trees,
            in_trees,
            vertex_count: g.vertex_count(),
            stats,
        })
    }

    pub fn preferences(&self) -> &[PreferencePair] {
        &self.prefs
    }

    pub fn out_tree(&self, i: usize) -> &ShortestPathTree {
        &self.out_trees[i]
    }

    pub fn in_tree(&self, j: usize) -> &ShortestPathTree {
        &self.in_trees[j]
    }

    pub fn stats(&self) -> TwoPhaseStats {
        self.stats
    }

    /// Every combination where both trees reach the switch vertex.
    pub fn scores(&mut self) -> Result<Vec<TwoPhaseScore>> {
        let mut out = Vec::new();
        sweep(
            &self.out_trees,
            &self.in_trees,
            self.vertex_count,
            &mut self.stats.score_combinations,
            |score| {
                out.push(score);
                Ok(())
            },
        )?;
        Ok(out)
    }

    /// Least-time goal-satisfying combination, ties broken by smaller
    /// energy, then smaller (switch vertex, i, j); legs materialized
    /// from the winning trees.
    pub fn best(&mut self, goal: &QueryGoal) -> Result<TwoPhaseRoute> {
        let mut best: Option<TwoPhaseScore> = None;
        sweep(
            &self.out_trees,
            &self.in_trees,
            self.vertex_count,
            &mut self.stats.score_combinations,
            |score| {
                if goal.admits(score.weight) && challenger_wins(&best, &score) {
                    best = Some(score);
                }
                Ok(())
            },
        )?;
        let score = best.ok_or(Error::NoFeasibleRoute)?;
        let leg1 = extract_tree_path(&self.out_trees[score.style_out], score.switch_vertex)?;
        let leg2 = extract_tree_path(&self.in_trees[score.style_in], score.switch_vertex)?;
        Ok(TwoPhaseRoute { score, leg1, leg2 })
    }
}

fn challenger_wins(best: &Option<TwoPhaseScore>, score: &TwoPhaseScore) -> bool {
    match best {
        None => true,
        Some(b) => {
            let lhs = (score.weight.time, score.weight.energy, score.switch_vertex, score.style_out, score.style_in);
            let rhs = (b.weight.time, b.weight.energy, b.switch_vertex, b.style_out, b.style_in);
            lhs < rhs
        }
    }
}

fn sweep(
    out_trees: &[ShortestPathTree],
    in_trees: &[ShortestPathTree],
    vertex_count: usize,
    combinations: &mut u64,
    mut emit: impl FnMut(TwoPhaseScore) -> Result<()>,
) -> Result<()> {
    for v in 0..vertex_count {
        for (i, out) in out_trees.iter().enumerate() {
            for (j, inb) in in_trees.iter().enumerate() {
                *combinations += 1;
                let (Some(a), Some(b)) = (out.bi_weight(v), inb.bi_weight(v)) else {
                    continue;
                };
                emit(TwoPhaseScore {
                    switch_vertex: v,
                    style_out: i,
                    style_in: j,
                    weight: a.checked_add(b)?,
                })?;
            }
        }
    }
    Ok(())
}

pub(crate) fn build_out_trees(
    g: &RoadGraph,
    root: VertexId,
    prefs: &[PreferencePair],
) -> Result<Vec<ShortestPathTree>> {
    prefs
        .iter()
        .map(|&p| shortest_tree_on(g, root, p, TreeDirection::Outbound))
        .collect()
}

/// `rev` must be the reverse view of the query graph; sharing it across
/// roots keeps repeated in-tree builds linear in the graph size.
pub(crate) fn build_in_trees_on(
    rev: &RoadGraph,
    root: VertexId,
    prefs: &[PreferencePair],
) -> Result<Vec<ShortestPathTree>> {
    prefs
        .iter()
        .map(|&p| shortest_tree_on(rev, root, p, TreeDirection::Inbound))
        .collect()
}

/// Goal-best score over already-built trees without materializing legs.
pub(crate) fn best_score(
    out_trees: &[ShortestPathTree],
    in_trees: &[ShortestPathTree],
    vertex_count: usize,
    goal: &QueryGoal,
    combinations: &mut u64,
) -> Result<Option<TwoPhaseScore>> {
    let mut best: Option<TwoPhaseScore> = None;
    sweep(out_trees, in_trees, vertex_count, combinations, |score| {
        if goal.admits(score.weight) && challenger_wins(&best, &score) {
            best = Some(score);
        }
        Ok(())
    })?;
    Ok(best)
}

/// All score weights for every switch vertex and style combination.
pub fn two_phase_scores(
    g: &RoadGraph,
    s: VertexId,
    t: VertexId,
    prefs: &[PreferencePair],
) -> Result<Vec<TwoPhaseScore>> {
    TwoPhaseSearch::new(g, s, t, prefs)?.scores()
}

/// One-shot goal query; see [`TwoPhaseSearch::best`].
pub fn best_two_phase(
    g: &RoadGraph,
    s: VertexId,
    t: VertexId,
    prefs: &[PreferencePair],
    goal: &QueryGoal,
) -> Result<TwoPhaseRoute> {
    TwoPhaseSearch::new(g, s, t, prefs)?.best(goal)
}

/// Dominance-filtered set of score weights.
pub fn pareto_of_scores(scores: &[TwoPhaseScore]) -> ParetoSet {
    scores.iter().map(|s| s.weight).collect()
}

/// Walks the composed route with a full battery and clamp semantics,
/// returning the index (into leg1 then leg2) of the first edge whose
/// cumulative draw exceeds `capacity`, if any. Score feasibility is
/// judged on totals; this is the stricter prefix check.
pub fn prefix_battery_violation(
    g: &RoadGraph,
    route: &TwoPhaseRoute,
    capacity: WattHours,
) -> Option<usize> {
    let mut drawn: WattHours = 0;
    for (idx, &edge) in route.leg1.iter().chain(route.leg2.iter()).enumerate() {
        drawn = (drawn + g.edge(edge).weight.energy).max(0);
        if drawn > capacity {
            return Some(idx);
        }
    }
    None
}
