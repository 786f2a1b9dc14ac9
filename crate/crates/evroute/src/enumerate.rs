//! Exhaustive path enumeration for small instances.
//!
//! This walks every path (loops included) of bounded edge count and
//! records raw weights, applying the same battery clamp and capacity
//! filtering as the labeling search but sharing none of its machinery.
//! It exists so the search algorithms can be checked against ground
//! truth on instances small enough to enumerate.

use crate::error::{Error, Result};
use crate::graph::{RoadGraph, VertexId};
use crate::labeling::ParetoConfig;
use crate::weight::BiWeight;

/// Abort enumeration after visiting this many path nodes.
pub const DEFAULT_NODE_BUDGET: u64 = 50_000_000;

/// Weights of all `s`-to-`t` paths with at most `max_edges` edges, as a
/// sorted multiset. The empty path counts when `s == t`. Paths whose
/// clamped energy ever exceeds the configured capacity are discarded at
/// the offending prefix, exactly as the labeling search would discard
/// them.
pub fn enumerate_paths(
    g: &RoadGraph,
    s: VertexId,
    t: VertexId,
    max_edges: usize,
    cfg: &ParetoConfig,
) -> Result<Vec<BiWeight>> {
    let per_vertex = enumerate_from(g, s, max_edges, cfg)?;
    Ok(per_vertex.into_iter().nth(t).unwrap())
}

/// Like [`enumerate_paths`] but records arrivals at every vertex in one
/// sweep, returning a sorted multiset per vertex.
pub fn enumerate_from(
    g: &RoadGraph,
    s: VertexId,
    max_edges: usize,
    cfg: &ParetoConfig,
) -> Result<Vec<Vec<BiWeight>>> {
    let mut out: Vec<Vec<BiWeight>> = vec![Vec::new(); g.vertex_count()];
    let mut visited: u64 = 0;
    walk(g, s, BiWeight::new(0, 0), max_edges, cfg, &mut out, &mut visited)?;
    for weights in &mut out {
        weights.sort();
    }
    Ok(out)
}

fn walk(
    g: &RoadGraph,
    at: VertexId,
    acc: BiWeight,
    edges_left: usize,
    cfg: &ParetoConfig,
    out: &mut [Vec<BiWeight>],
    visited: &mut u64,
) -> Result<()> {
    *visited += 1;
    if *visited > DEFAULT_NODE_BUDGET {
        return Err(Error::ExplosionGuard {
            budget: DEFAULT_NODE_BUDGET,
        });
    }
    out[at].push(acc);
    if edges_left == 0 {
        return Ok(());
    }
    for id in g.outgoing(at) {
        let e = g.edge(id);
        let mut next = acc.checked_add(e.weight)?;
        if cfg.clamp_energy_at_zero && next.energy < 0 {
            next.energy = 0;
        }
        if let Some(c) = cfg.capacity {
            if next.energy > c {
                continue; // battery depleted; the walk dies here
            }
        }
        walk(g, e.to, next, edges_left - 1, cfg, out, visited)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::RoadGraphBuilder;
    use crate::labeling::ParetoConfig;
    use crate::weight::BiWeight;

    fn w(t: i64, e: i64) -> BiWeight {
        BiWeight::new(t, e)
    }

    fn fixture_d1() -> RoadGraph {
        let mut b = RoadGraphBuilder::new(3, 2);
        b.add_edge(0, 1, w(10, 5), 0);
        b.add_edge(0, 1, w(4, 20), 1);
        b.add_edge(1, 2, w(10, 5), 0);
        b.add_edge(1, 2, w(4, 20), 1);
        b.build()
    }

    fn fixture_g2() -> RoadGraph {
        let mut b = RoadGraphBuilder::new(3, 2);
        b.add_edge(0, 1, w(1, 10), 0);
        b.add_edge(0, 1, w(8, 2), 1);
        b.add_edge(1, 2, w(2, 9), 0);
        b.add_edge(1, 2, w(7, 4), 1);
        b.build()
    }

    #[test]
    fn d1_two_edge_path_product() {
        let got = enumerate_paths(&fixture_d1(), 0, 2, 2, &ParetoConfig::default()).unwrap();
        assert_eq!(got, vec![w(8, 40), w(14, 25), w(14, 25), w(20, 10)]);
    }

    #[test]
    fn empty_path_when_source_is_target() {
        let got = enumerate_paths(&fixture_d1(), 0, 0, 0, &ParetoConfig::default()).unwrap();
        assert_eq!(got, vec![w(0, 0)]);
    }

    #[test]
    fn g2_two_edge_path_product() {
        let got = enumerate_paths(&fixture_g2(), 0, 2, 2, &ParetoConfig::default()).unwrap();
        assert_eq!(got, vec![w(3, 19), w(8, 14), w(10, 11), w(15, 6)]);
    }

    #[test]
    fn capacity_prunes_dead_walks() {
        // Direct hop uses 16 Wh; with a charger loop in the middle the
        // walk survives a 10 Wh battery.
        let mut b = RoadGraphBuilder::new(3, 1);
        b.add_edge(0, 1, w(100, 8), 0);
        b.add_charger_loop(1, 60, 10);
        b.add_edge(1, 2, w(100, 8), 0);
        let g = b.build();
        let cfg = ParetoConfig::ev(10);
        let got = enumerate_paths(&g, 0, 2, 3, &cfg).unwrap();
        assert_eq!(got, vec![w(260, 8)]);

        let cfg20 = ParetoConfig::ev(20);
        let got20 = enumerate_paths(&g, 0, 2, 3, &cfg20).unwrap();
        assert_eq!(got20, vec![w(200, 16), w(260, 8)]);
    }

    #[test]
    fn explosion_guard_trips_on_unbounded_blowup() {
        // Dense self-multigraph: 8 parallel loops, depth 12 -> ~8^12 walks.
        let mut b = RoadGraphBuilder::new(1, 8);
        for style in 0..8 {
            b.add_edge(0, 0, w(1, 1), style);
        }
        let g = b.build();
        let err = enumerate_paths(&g, 0, 0, 12, &ParetoConfig::default()).unwrap_err();
        assert!(matches!(err, Error::ExplosionGuard { .. }));
    }
}
