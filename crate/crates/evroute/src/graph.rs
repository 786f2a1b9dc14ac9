//! Directed multigraph of styled road edges.
//!
//! A road segment traversed at several speeds appears as parallel edges
//! between the same endpoints, one per style. Charging stations carry a
//! vertex flag, and may additionally carry self-loop edges with positive
//! time and negative energy for the labeling algorithm.

use crate::weight::{BiWeight, Seconds, WattHours};

/// Dense vertex index in `[0, n)`.
pub type VertexId = usize;

/// Index into [`RoadGraph::edges`].
pub type EdgeId = usize;

/// One directed traversal option.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StyledEdge {
    pub from: VertexId,
    pub to: VertexId,
    pub weight: BiWeight,
    /// Which of the graph's `style_count` traversal styles this edge is.
    pub style: usize,
    /// Charging self-loop: `from == to`, positive time, negative energy.
    pub is_charger_loop: bool,
}

/// Immutable directed multigraph with per-vertex outgoing adjacency.
#[derive(Debug, Clone)]
pub struct RoadGraph {
    vertex_count: usize,
    style_count: usize,
    edges: Vec<StyledEdge>,
    // CSR layout over edge ids, grouped by origin in insertion order.
    adj_offsets: Vec<usize>,
    adj_edges: Vec<EdgeId>,
    charger_flags: Vec<bool>,
}

impl RoadGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn style_count(&self) -> usize {
        self.style_count
    }

    pub fn edge(&self, id: EdgeId) -> &StyledEdge {
        &self.edges[id]
    }

    pub fn edges(&self) -> &[StyledEdge] {
        &self.edges
    }

    /// Outgoing edge ids of `v`, in insertion order.
    pub fn outgoing(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.adj_edges[self.adj_offsets[v]..self.adj_offsets[v + 1]]
            .iter()
            .copied()
    }

    pub fn is_charger(&self, v: VertexId) -> bool {
        self.charger_flags[v]
    }

    pub fn chargers(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.charger_flags
            .iter()
            .enumerate()
            .filter_map(|(v, &flag)| flag.then_some(v))
    }

    /// Graph with every edge reversed. Edge ids are preserved, so an edge
    /// id obtained from the view refers to the same road edge in `self`;
    /// only its endpoints read swapped. Reversing twice restores the
    /// original adjacency exactly.
    pub fn reverse_view(&self) -> RoadGraph {
        let edges: Vec<StyledEdge> = self
            .edges
            .iter()
            .map(|e| StyledEdge {
                from: e.to,
                to: e.from,
                ..*e
            })
            .collect();
        Self::assemble(self.vertex_count, self.style_count, edges, self.charger_flags.clone())
    }

    fn assemble(
        vertex_count: usize,
        style_count: usize,
        edges: Vec<StyledEdge>,
        charger_flags: Vec<bool>,
    ) -> RoadGraph {
        let mut adj_offsets = vec![0usize; vertex_count + 1];
        for e in &edges {
            adj_offsets[e.from + 1] += 1;
        }
        for v in 0..vertex_count {
            adj_offsets[v + 1] += adj_offsets[v];
        }
        let mut cursor = adj_offsets.clone();
        let mut adj_edges = vec![0 as EdgeId; edges.len()];
        for (id, e) in edges.iter().enumerate() {
            adj_edges[cursor[e.from]] = id;
            cursor[e.from] += 1;
        }
        RoadGraph {
            vertex_count,
            style_count,
            edges,
            adj_offsets,
            adj_edges,
            charger_flags,
        }
    }
}

/// Accumulates edges and charger flags, then freezes into a [`RoadGraph`].
#[derive(Debug, Clone)]
pub struct RoadGraphBuilder {
    vertex_count: usize,
    style_count: usize,
    edges: Vec<StyledEdge>,
    charger_flags: Vec<bool>,
}

impl RoadGraphBuilder {
    pub fn new(vertex_count: usize, style_count: usize) -> Self {
        RoadGraphBuilder {
            vertex_count,
            style_count,
            edges: Vec::new(),
            charger_flags: vec![false; vertex_count],
        }
    }

    pub fn add_edge(&mut self, from: VertexId, to: VertexId, weight: BiWeight, style: usize) -> &mut Self {
        assert!(from < self.vertex_count && to < self.vertex_count, "edge endpoint out of range");
        assert!(style < self.style_count, "style index out of range");
        self.edges.push(StyledEdge {
            from,
            to,
            weight,
            style,
            is_charger_loop: false,
        });
        self
    }

    /// A charging stop modeled as a self-loop: `time` seconds buys back
    /// `energy_gain` watt-hours.
    pub fn add_charger_loop(&mut self, at: VertexId, time: Seconds, energy_gain: WattHours) -> &mut Self {
        assert!(at < self.vertex_count, "vertex out of range");
        assert!(time > 0, "charger loop needs positive time");
        assert!(energy_gain > 0, "charger loop needs positive energy gain");
        self.charger_flags[at] = true;
        self.edges.push(StyledEdge {
            from: at,
            to: at,
            weight: BiWeight::new(time, -energy_gain),
            style: 0,
            is_charger_loop: true,
        });
        self
    }

    pub fn mark_charger(&mut self, at: VertexId) -> &mut Self {
        assert!(at < self.vertex_count, "vertex out of range");
        self.charger_flags[at] = true;
        self
    }

    pub fn build(self) -> RoadGraph {
        RoadGraph::assemble(self.vertex_count, self.style_count, self.edges, self.charger_flags)
    }
}

/// Feasibility bounds for a query: time at most `max_time`, energy at most
/// `max_energy`. An absent bound is unconstrained; with both absent the
/// goal degenerates to plain minimum time.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct QueryGoal {
    pub max_time: Option<Seconds>,
    pub max_energy: Option<WattHours>,
}

impl QueryGoal {
    /// Minimize time subject to staying within `capacity` watt-hours.
    pub fn within_energy(capacity: WattHours) -> Self {
        QueryGoal {
            max_time: None,
            max_energy: Some(capacity),
        }
    }

    pub fn admits(&self, w: BiWeight) -> bool {
        self.max_time.is_none_or(|x| w.time <= x) && self.max_energy.is_none_or(|y| w.energy <= y)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::BiWeight;

    fn w(t: i64, e: i64) -> BiWeight {
        BiWeight::new(t, e)
    }

    /// Three-vertex chain with two parallel styles per hop.
    pub(crate) fn fixture_d1() -> RoadGraph {
        let mut b = RoadGraphBuilder::new(3, 2);
        b.add_edge(0, 1, w(10, 5), 0);
        b.add_edge(0, 1, w(4, 20), 1);
        b.add_edge(1, 2, w(10, 5), 0);
        b.add_edge(1, 2, w(4, 20), 1);
        b.build()
    }

    fn edge_multiset(g: &RoadGraph) -> Vec<(VertexId, VertexId, BiWeight, usize, bool)> {
        let mut v: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (e.from, e.to, e.weight, e.style, e.is_charger_loop))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn reverse_swaps_endpoints_and_keeps_weights() {
        let g = fixture_d1();
        let r = g.reverse_view();
        let expected: Vec<_> = g
            .edges()
            .iter()
            .map(|e| (e.to, e.from, e.weight, e.style, e.is_charger_loop))
            .collect();
        let mut expected_sorted = expected;
        expected_sorted.sort();
        assert_eq!(edge_multiset(&r), expected_sorted);
        // t -> a -> s orientation: vertex 2 now has outgoing edges.
        assert_eq!(r.outgoing(2).count(), 2);
        assert_eq!(r.outgoing(0).count(), 0);
    }

    #[test]
    fn reverse_is_an_involution() {
        let g = fixture_d1();
        let rr = g.reverse_view().reverse_view();
        assert_eq!(edge_multiset(&g), edge_multiset(&rr));
        for v in 0..g.vertex_count() {
            let a: Vec<_> = g.outgoing(v).collect();
            let b: Vec<_> = rr.outgoing(v).collect();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn self_loop_is_a_reversal_fixed_point() {
        let mut b = RoadGraphBuilder::new(2, 1);
        b.add_charger_loop(1, 60, 10);
        let g = b.build();
        let r = g.reverse_view();
        assert_eq!(r.edge(0).from, 1);
        assert_eq!(r.edge(0).to, 1);
        assert_eq!(r.edge(0).weight, w(60, -10));
        assert!(r.is_charger(1));
    }

    #[test]
    fn adjacency_is_consistent_with_edge_list() {
        let g = fixture_d1();
        let mut seen = vec![false; g.edge_count()];
        for v in 0..g.vertex_count() {
            for id in g.outgoing(v) {
                assert_eq!(g.edge(id).from, v);
                assert!(!seen[id]);
                seen[id] = true;
            }
        }
        assert!(seen.into_iter().all(|s| s));
    }

    #[test]
    fn goal_admits_bounds() {
        let goal = QueryGoal {
            max_time: Some(10),
            max_energy: Some(5),
        };
        assert!(goal.admits(w(10, 5)));
        assert!(!goal.admits(w(11, 5)));
        assert!(!goal.admits(w(10, 6)));
        assert!(QueryGoal::default().admits(w(i64::MAX, i64::MAX)));
        assert!(QueryGoal::within_energy(7).admits(w(999, 7)));
    }
}
