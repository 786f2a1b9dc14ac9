//! Single-phase search under a linear utility.
//!
//! A preference pair (alpha, beta) collapses a weight into the scalar
//! cost alpha * time + beta * energy, and an ordinary shortest-path
//! search then grows the tree of per-vertex optima. Optima of such a
//! scalarization always sit on the lower-left convex hull of the
//! achievable weights, which is exactly the limitation the two-phase
//! composition exists to get around.
//!
//! Scalar costs are always recomputed from the exact integer totals of
//! the tree path rather than accumulated in floating point, so two
//! paths with equal totals compare as bitwise-equal costs and the
//! tie-breaks below are reproducible. Charger self-loops are skipped
//! here; recharging is the charging planner's job.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, RoadGraph, VertexId};
use crate::weight::BiWeight;

/// Nonnegative scalarization coefficients; at least one is positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreferencePair {
    alpha: f64,
    beta: f64,
}

/// Table defaults: hurry, split the difference, stretch the battery.
pub const FAST: PreferencePair = PreferencePair { alpha: 0.8, beta: 0.2 };
pub const BALANCED: PreferencePair = PreferencePair { alpha: 0.5, beta: 0.5 };
pub const ENERGY_SAVING: PreferencePair = PreferencePair { alpha: 0.2, beta: 0.8 };

/// Degenerate pairs minimizing a single criterion.
pub const TIME_ONLY: PreferencePair = PreferencePair { alpha: 1.0, beta: 0.0 };
pub const ENERGY_ONLY: PreferencePair = PreferencePair { alpha: 0.0, beta: 1.0 };

impl PreferencePair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let valid =
            alpha.is_finite() && beta.is_finite() && alpha >= 0.0 && beta >= 0.0 && alpha + beta > 0.0;
        if !valid {
            return Err(Error::InvalidPreference { alpha, beta });
        }
        Ok(PreferencePair { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// The linear utility alpha * time + beta * energy.
pub fn scalar_cost(w: BiWeight, pref: PreferencePair) -> f64 {
    pref.alpha * w.time as f64 + pref.beta * w.energy as f64
}

/// The canonical style trio used when no preferences are given.
pub fn default_preferences() -> Vec<PreferencePair> {
    vec![FAST, BALANCED, ENERGY_SAVING]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeDirection {
    /// Paths from the root outward.
    Outbound,
    /// Paths from each vertex into the root.
    Inbound,
}

/// Per-vertex parent edge plus the exact totals of the tree path.
/// Parent edges are ids into the original graph even for inbound trees.
#[derive(Debug, Clone)]
pub struct ShortestPathTree {
    root: VertexId,
    direction: TreeDirection,
    pref: PreferencePair,
    /// Parent edge and the vertex it leads back toward the root.
    parent: Vec<Option<(EdgeId, VertexId)>>,
    total: Vec<Option<BiWeight>>,
}

impl ShortestPathTree {
    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn direction(&self) -> TreeDirection {
        self.direction
    }

    pub fn preference(&self) -> PreferencePair {
        self.pref
    }

    pub fn is_reached(&self, v: VertexId) -> bool {
        self.total[v].is_some()
    }

    /// Exact (time, energy) of the tree path at `v`.
    pub fn bi_weight(&self, v: VertexId) -> Option<BiWeight> {
        self.total[v]
    }

    /// Scalar cost of the tree path at `v`, recomputed from its totals.
    pub fn cost(&self, v: VertexId) -> Option<f64> {
        self.total[v].map(|w| scalar_cost(w, self.pref))
    }

    pub fn parent_edge(&self, v: VertexId) -> Option<EdgeId> {
        self.parent[v].map(|(e, _)| e)
    }
}

/// Grows the tree of minimum-scalar-cost paths touching every
/// reachable vertex. A priority-queue search is used when every
/// scalarized edge cost is nonnegative, a round-guarded
/// label-correcting sweep otherwise. Ties on cost break toward smaller
/// time, then smaller energy, then the smaller last-edge id, so the
/// tree is a deterministic function of the graph. Charger self-loops
/// are never relaxed.
pub fn shortest_tree(
    g: &RoadGraph,
    root: VertexId,
    pref: PreferencePair,
    direction: TreeDirection,
) -> Result<ShortestPathTree> {
    match direction {
        TreeDirection::Outbound => shortest_tree_on(g, root, pref, direction),
        TreeDirection::Inbound => shortest_tree_on(&g.reverse_view(), root, pref, direction),
    }
}

/// Tree build over an already-oriented graph. Callers holding a shared
/// [`RoadGraph::reverse_view`] use this to avoid re-reversing per tree.
pub(crate) fn shortest_tree_on(
    oriented: &RoadGraph,
    root: VertexId,
    pref: PreferencePair,
    direction: TreeDirection,
) -> Result<ShortestPathTree> {
    assert!(root < oriented.vertex_count(), "root out of range");
    let any_negative = oriented
        .edges()
        .iter()
        .any(|e| !e.is_charger_loop && scalar_cost(e.weight, pref) < 0.0);
    let (parent, total) = if any_negative {
        label_correcting(oriented, root, pref)?
    } else {
        dijkstra(oriented, root, pref)?
    };
    Ok(ShortestPathTree {
        root,
        direction,
        pref,
        parent,
        total,
    })
}

/// Edge sequence realizing the tree path at `v`: root-to-v for
/// outbound trees, v-to-root for inbound ones, in travel order.
pub fn extract_tree_path(tree: &ShortestPathTree, v: VertexId) -> Result<Vec<EdgeId>> {
    if !tree.is_reached(v) {
        return Err(Error::Unreachable { vertex: v });
    }
    let mut edges = Vec::new();
    let mut cursor = v;
    while let Some((edge, back)) = tree.parent[cursor] {
        edges.push(edge);
        cursor = back;
    }
    // Walking parents yields edges nearest-first; an outbound path reads
    // from the root down, an inbound path already reads v-to-root.
    if tree.direction == TreeDirection::Outbound {
        edges.reverse();
    }
    Ok(edges)
}

type TreeArrays = (Vec<Option<(EdgeId, VertexId)>>, Vec<Option<BiWeight>>);

/// Strict lexicographic improvement on (cost, time, energy).
fn improves(cand_cost: f64, cand: BiWeight, cur_cost: f64, cur: BiWeight) -> bool {
    match cand_cost.total_cmp(&cur_cost) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => (cand.time, cand.energy) < (cur.time, cur.energy),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct HeapEntry {
    cost: f64,
    weight: BiWeight,
    vertex: VertexId,
}

impl Eq for HeapEntry {}

impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.cost
            .total_cmp(&other.cost)
            .then(self.weight.cmp(&other.weight))
            .then(self.vertex.cmp(&other.vertex))
    }
}

impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn dijkstra(g: &RoadGraph, root: VertexId, pref: PreferencePair) -> Result<TreeArrays> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut total: Vec<Option<BiWeight>> = vec![None; n];
    total[root] = Some(BiWeight::new(0, 0));
    let mut heap: BinaryHeap<Reverse<HeapEntry>> = BinaryHeap::new();
    heap.push(Reverse(HeapEntry {
        cost: 0.0,
        weight: BiWeight::new(0, 0),
        vertex: root,
    }));
    while let Some(Reverse(entry)) = heap.pop() {
        if total[entry.vertex] != Some(entry.weight) {
            continue; // superseded by a later improvement
        }
        relax_out(g, pref, entry.vertex, entry.weight, &mut parent, &mut total, |e| {
            heap.push(Reverse(e));
        })?;
    }
    Ok((parent, total))
}

fn label_correcting(g: &RoadGraph, root: VertexId, pref: PreferencePair) -> Result<TreeArrays> {
    let n = g.vertex_count();
    let mut parent: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
    let mut total: Vec<Option<BiWeight>> = vec![None; n];
    total[root] = Some(BiWeight::new(0, 0));
    let mut queue: VecDeque<VertexId> = VecDeque::new();
    let mut queued = vec![false; n];
    queue.push_back(root);
    queued[root] = true;
    // An improvement surviving into round n + 1 rides a cost-reducing
    // cycle: simple paths have at most n - 1 edges.
    let mut rounds: u64 = 0;
    while !queue.is_empty() {
        rounds += 1;
        if rounds > n as u64 {
            return Err(Error::NegativeScalarCycle);
        }
        for _ in 0..queue.len() {
            let v = queue.pop_front().expect("non-empty round");
            queued[v] = false;
            let weight = total[v].expect("queued vertices are labeled");
            relax_out(g, pref, v, weight, &mut parent, &mut total, |e| {
                if !queued[e.vertex] {
                    queued[e.vertex] = true;
                    queue.push_back(e.vertex);
                }
            })?;
        }
    }
    Ok((parent, total))
}

/// Shared relaxation step; `on_improved` schedules the touched vertex.
fn relax_out(
    g: &RoadGraph,
    pref: PreferencePair,
    v: VertexId,
    weight: BiWeight,
    parent: &mut [Option<(EdgeId, VertexId)>],
    total: &mut [Option<BiWeight>],
    mut on_improved: impl FnMut(HeapEntry),
) -> Result<()> {
    for edge_id in g.outgoing(v) {
        let e = g.edge(edge_id);
        if e.is_charger_loop {
            continue;
        }
        let cand = weight.checked_add(e.weight)?;
        let cand_cost = scalar_cost(cand, pref);
        match total[e.to] {
            Some(cur) if cand == cur => {
                // Same totals via another parent: keep the smaller edge
                // id. Totals are unchanged, so nothing is rescheduled.
                if let Some((cur_edge, _)) = parent[e.to] {
                    if edge_id < cur_edge {
                        parent[e.to] = Some((edge_id, v));
                    }
                }
            }
            Some(cur) if !improves(cand_cost, cand, scalar_cost(cur, pref), cur) => {}
            _ => {
                total[e.to] = Some(cand);
                parent[e.to] = Some((edge_id, v));
                on_improved(HeapEntry {
                    cost: cand_cost,
                    weight: cand,
                    vertex: e.to,
                });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_from;
    use crate::graph::RoadGraphBuilder;
    use crate::labeling::ParetoConfig;
    use crate::weight::lower_left_hull;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn w(t: i64, e: i64) -> BiWeight {
        BiWeight::new(t, e)
    }

    // Edge ids by insertion order: A=0, B=1, C=2, D=3.
    fn fixture_g2() -> RoadGraph {
        let mut b = RoadGraphBuilder::new(3, 2);
        b.add_edge(0, 1, w(1, 10), 0);
        b.add_edge(0, 1, w(8, 2), 1);
        b.add_edge(1, 2, w(2, 9), 0);
        b.add_edge(1, 2, w(7, 4), 1);
        b.build()
    }

    fn fixture_d1() -> RoadGraph {
        let mut b = RoadGraphBuilder::new(3, 2);
        b.add_edge(0, 1, w(10, 5), 0);
        b.add_edge(0, 1, w(4, 20), 1);
        b.add_edge(1, 2, w(10, 5), 0);
        b.add_edge(1, 2, w(4, 20), 1);
        b.build()
    }

    #[test]
    fn scalar_cost_evaluates_the_linear_form() {
        assert_eq!(scalar_cost(w(10, 20), FAST), 12.0);
        assert_eq!(scalar_cost(w(8, 40), TIME_ONLY), 8.0);
        assert_eq!(scalar_cost(w(14, 25), BALANCED), 19.5);
    }

    #[test]
    fn preference_validation() {
        assert!(PreferencePair::new(0.0, 0.0).is_err());
        assert!(PreferencePair::new(-0.1, 0.5).is_err());
        assert!(PreferencePair::new(f64::NAN, 0.5).is_err());
        assert!(PreferencePair::new(f64::INFINITY, 0.5).is_err());
        assert!(PreferencePair::new(0.0, 1.0).is_ok());
        assert!(PreferencePair::new(2.5, 0.0).is_ok());
    }

    #[test]
    fn g2_outbound_time_only() {
        let g = fixture_g2();
        let tree = shortest_tree(&g, 0, TIME_ONLY, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.bi_weight(1), Some(w(1, 10)));
        assert_eq!(tree.bi_weight(2), Some(w(3, 19)));
        assert_eq!(extract_tree_path(&tree, 2).unwrap(), vec![0, 2]);
        assert_eq!(extract_tree_path(&tree, 0).unwrap(), Vec::<EdgeId>::new());
    }

    #[test]
    fn g2_inbound_energy_only() {
        let g = fixture_g2();
        let tree = shortest_tree(&g, 2, ENERGY_ONLY, TreeDirection::Inbound).unwrap();
        assert_eq!(tree.bi_weight(1), Some(w(7, 4)));
        assert_eq!(tree.bi_weight(0), Some(w(15, 6)));
        // v-to-root order: ride B out of s, then D into t.
        assert_eq!(extract_tree_path(&tree, 0).unwrap(), vec![1, 3]);
    }

    #[test]
    fn single_vertex_tree() {
        let g = RoadGraphBuilder::new(1, 1).build();
        let tree = shortest_tree(&g, 0, BALANCED, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.cost(0), Some(0.0));
        assert_eq!(tree.bi_weight(0), Some(w(0, 0)));
        assert!(extract_tree_path(&tree, 0).unwrap().is_empty());
    }

    #[test]
    fn unreachable_vertices_are_marked_and_refused() {
        let mut b = RoadGraphBuilder::new(3, 1);
        b.add_edge(0, 1, w(1, 1), 0);
        let g = b.build();
        let tree = shortest_tree(&g, 0, TIME_ONLY, TreeDirection::Outbound).unwrap();
        assert!(!tree.is_reached(2));
        assert_eq!(tree.bi_weight(2), None);
        assert!(matches!(
            extract_tree_path(&tree, 2),
            Err(Error::Unreachable { vertex: 2 })
        ));
    }

    #[test]
    fn inbound_equals_outbound_on_the_reverse_view() {
        let g = fixture_g2();
        let rev = g.reverse_view();
        for pref in [TIME_ONLY, ENERGY_ONLY, FAST, BALANCED, ENERGY_SAVING] {
            let inbound = shortest_tree(&g, 2, pref, TreeDirection::Inbound).unwrap();
            let forward = shortest_tree(&rev, 2, pref, TreeDirection::Outbound).unwrap();
            for v in 0..g.vertex_count() {
                assert_eq!(inbound.bi_weight(v), forward.bi_weight(v));
                assert_eq!(inbound.parent_edge(v), forward.parent_edge(v));
            }
        }
    }

    #[test]
    fn cost_ties_break_on_time_then_energy_then_edge_id() {
        // Two parallel s-t edges with equal balanced cost, different split.
        let mut b = RoadGraphBuilder::new(2, 2);
        b.add_edge(0, 1, w(3, 1), 0);
        b.add_edge(0, 1, w(1, 3), 1);
        let g = b.build();
        let tree = shortest_tree(&g, 0, BALANCED, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.bi_weight(1), Some(w(1, 3)));

        // Equal totals along two routes: the smaller last-edge id wins.
        let mut b = RoadGraphBuilder::new(4, 1);
        b.add_edge(0, 1, w(1, 1), 0);
        b.add_edge(0, 2, w(1, 1), 0);
        b.add_edge(1, 3, w(1, 1), 0);
        b.add_edge(2, 3, w(1, 1), 0);
        let g = b.build();
        for pref in [TIME_ONLY, BALANCED, ENERGY_ONLY] {
            let tree = shortest_tree(&g, 0, pref, TreeDirection::Outbound).unwrap();
            assert_eq!(tree.parent_edge(3), Some(2));
            assert_eq!(tree.bi_weight(3), Some(w(2, 2)));
        }
    }

    #[test]
    fn negative_scalar_edges_fall_back_and_cycles_are_caught() {
        // One regenerative edge, no cycle: label-correcting succeeds.
        let mut b = RoadGraphBuilder::new(3, 1);
        b.add_edge(0, 1, w(1, 10), 0);
        b.add_edge(1, 2, w(2, -9), 0);
        let g = b.build();
        let tree = shortest_tree(&g, 0, ENERGY_ONLY, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.bi_weight(2), Some(w(3, 1)));

        // Energy-negative cycle: error under (0,1), fine under (1,0).
        let mut b = RoadGraphBuilder::new(2, 1);
        b.add_edge(0, 1, w(1, -3), 0);
        b.add_edge(1, 0, w(1, -3), 0);
        let g = b.build();
        assert!(matches!(
            shortest_tree(&g, 0, ENERGY_ONLY, TreeDirection::Outbound),
            Err(Error::NegativeScalarCycle)
        ));
        let tree = shortest_tree(&g, 0, TIME_ONLY, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.bi_weight(1), Some(w(1, -3)));
    }

    #[test]
    fn charger_loops_are_not_relaxed() {
        let mut b = RoadGraphBuilder::new(3, 1);
        b.add_edge(0, 1, w(100, 8), 0);
        b.add_charger_loop(1, 60, 10);
        b.add_edge(1, 2, w(100, 8), 0);
        let g = b.build();
        // The loop is energy-negative but must not force the fallback
        // or appear in any tree path.
        let tree = shortest_tree(&g, 0, ENERGY_ONLY, TreeDirection::Outbound).unwrap();
        assert_eq!(tree.bi_weight(2), Some(w(200, 16)));
        assert_eq!(extract_tree_path(&tree, 2).unwrap(), vec![0, 2]);
    }

    fn random_pref(rng: &mut ChaCha8Rng) -> PreferencePair {
        loop {
            let alpha = (rng.random_range(0..=100) as f64) / 100.0;
            let beta = (rng.random_range(0..=100) as f64) / 100.0;
            if let Ok(p) = PreferencePair::new(alpha, beta) {
                return p;
            }
        }
    }

    #[test]
    fn tree_optima_lie_on_the_lower_left_hull() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x4011);
        for g in [fixture_g2(), fixture_d1()] {
            let cfg = ParetoConfig::default();
            let enumerated = enumerate_from(&g, 0, g.vertex_count() - 1, &cfg).unwrap();
            let hull = lower_left_hull(&enumerated[2]);
            for _ in 0..60 {
                let pref = random_pref(&mut rng);
                let tree = shortest_tree(&g, 0, pref, TreeDirection::Outbound).unwrap();
                let got = tree.bi_weight(2).unwrap();
                assert!(hull.contains(&got), "{got:?} off the hull under {pref:?}");
            }
        }
    }

    #[test]
    fn matches_minimum_scalarized_enumeration_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5ca1a);
        for _ in 0..120 {
            let n = rng.random_range(2..=6);
            let m = rng.random_range(1..=12);
            let mut b = RoadGraphBuilder::new(n, 2);
            for _ in 0..m {
                let from = rng.random_range(0..n);
                let mut to = rng.random_range(0..n);
                if to == from {
                    to = (to + 1) % n;
                }
                b.add_edge(
                    from,
                    to,
                    w(rng.random_range(1..=9), rng.random_range(1..=9)),
                    rng.random_range(0..2),
                );
            }
            let g = b.build();
            let pref = random_pref(&mut rng);
            let tree = shortest_tree(&g, 0, pref, TreeDirection::Outbound).unwrap();
            let enumerated = enumerate_from(&g, 0, n - 1, &ParetoConfig::default()).unwrap();
            for v in 0..n {
                let best = enumerated[v]
                    .iter()
                    .map(|&p| scalar_cost(p, pref))
                    .min_by(f64::total_cmp);
                match (tree.cost(v), best) {
                    (None, None) => {}
                    (Some(got), Some(want)) => {
                        let tol = 1e-9 * want.abs().max(1.0);
                        assert!((got - want).abs() <= tol, "vertex {v}: {got} vs {want}");
                    }
                    (got, want) => panic!("vertex {v}: {got:?} vs {want:?}"),
                }
            }
        }
    }

    #[test]
    fn both_variants_build_identical_trees_on_nonnegative_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(0xa9ee);
        for _ in 0..60 {
            let n = rng.random_range(2..=7);
            let m = rng.random_range(1..=15);
            let mut b = RoadGraphBuilder::new(n, 1);
            for _ in 0..m {
                let from = rng.random_range(0..n);
                let mut to = rng.random_range(0..n);
                if to == from {
                    to = (to + 1) % n;
                }
                b.add_edge(from, to, w(rng.random_range(1..=6), rng.random_range(0..=6)), 0);
            }
            let g = b.build();
            let pref = random_pref(&mut rng);
            let (pq_parent, pq_total) = dijkstra(&g, 0, pref).unwrap();
            let (lc_parent, lc_total) = label_correcting(&g, 0, pref).unwrap();
            assert_eq!(pq_total, lc_total);
            assert_eq!(pq_parent, lc_parent);
        }
    }
}
