//! Charging-station itineraries over a super graph.
//!
//! Long trips are chains of battery-feasible legs: drive to a station,
//! recharge to full, continue. Treating s, t, and every station as
//! nodes, each ordered pair gets a super edge carrying the least-time
//! two-phase leg whose energy fits the battery, weighted by leg time
//! plus the recharge time for what the leg consumed. A scalar shortest
//! path over those durations is the itinerary.
//!
//! Legs into t add no recharge time: the trip is over on arrival.
//! Every leg departs with a full battery, so a station coinciding with
//! s or t changes nothing and is dropped from the station set.

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::{QueryGoal, RoadGraph, VertexId};
use crate::two_phase::{best_score, build_in_trees_on, build_out_trees, TwoPhaseRoute};
use crate::utility::{extract_tree_path, shortest_tree_on, PreferencePair, TreeDirection, ENERGY_ONLY};
use crate::weight::{BiWeight, Seconds, WattHours};

/// How long adding E watt-hours takes. Either a constant rate or a
/// monotone piecewise-linear table of (energy added, seconds)
/// breakpoints anchored at (0, 0); beyond the last breakpoint the
/// final segment's slope extends.
#[derive(Debug, Clone)]
pub enum ChargeModel {
    Linear { wh_per_second: f64 },
    Piecewise { table: Vec<(WattHours, Seconds)> },
}

impl ChargeModel {
    pub fn linear(wh_per_second: f64) -> Self {
        assert!(
            wh_per_second.is_finite() && wh_per_second > 0.0,
            "charge rate must be positive"
        );
        ChargeModel::Linear { wh_per_second }
    }

    pub fn piecewise(table: Vec<(WattHours, Seconds)>) -> Self {
        assert!(!table.is_empty(), "empty charge table");
        let mut prev = (0, 0);
        for &(e, s) in &table {
            assert!(e > prev.0, "energies must ascend from zero");
            assert!(s >= prev.1, "seconds must not decrease");
            prev = (e, s);
        }
        ChargeModel::Piecewise { table }
    }

    /// Whole seconds to add `energy`, rounded up; float noise within
    /// 1e-9 of a whole second does not round.
    pub fn charge_time(&self, energy: WattHours) -> Seconds {
        assert!(energy >= 0, "cannot add negative energy");
        if energy == 0 {
            return 0;
        }
        let exact = match self {
            ChargeModel::Linear { wh_per_second } => energy as f64 / wh_per_second,
            ChargeModel::Piecewise { table } => interpolate(table, energy),
        };
        let floor = exact.floor();
        if exact - floor <= 1e-9 {
            floor as Seconds
        } else {
            floor as Seconds + 1
        }
    }
}

fn interpolate(table: &[(WattHours, Seconds)], energy: WattHours) -> f64 {
    let mut prev = (0i64, 0i64);
    for &(e, s) in table {
        if energy <= e {
            let span = (e - prev.0) as f64;
            return prev.1 as f64 + (s - prev.1) as f64 * (energy - prev.0) as f64 / span;
        }
        prev = (e, s);
    }
    // Past the table: continue at the final segment's pace.
    let (last_e, last_s) = *table.last().expect("validated non-empty");
    let (base_e, base_s) = if table.len() >= 2 {
        table[table.len() - 2]
    } else {
        (0, 0)
    };
    let slope = (last_s - base_s) as f64 / (last_e - base_e) as f64;
    last_s as f64 + slope * (energy - last_e) as f64
}

/// Best battery-feasible leg between two super nodes plus its scalar
/// duration (leg time, and recharge time unless it ends the trip).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperEdge {
    pub from_station: VertexId,
    pub to_station: VertexId,
    pub leg_weight: BiWeight,
    pub duration: Seconds,
    pub embedded_route: TwoPhaseRoute,
}

/// Work counters. Style trees come in 2c per super node (c outbound
/// for origins, c inbound for destinations); the single-preference
/// pruning trees are tallied apart so the style count stays tied to
/// the preference list.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SuperGraphStats {
    pub style_tree_builds: u64,
    pub prune_tree_builds: u64,
    pub score_combinations: u64,
    pub pruned_pairs: u64,
}

#[derive(Debug, Clone)]
pub struct SuperGraph {
    s: VertexId,
    t: VertexId,
    nodes: Vec<VertexId>,
    station_count: usize,
    edges: Vec<SuperEdge>,
    stats: SuperGraphStats,
}

impl SuperGraph {
    pub fn source(&self) -> VertexId {
        self.s
    }

    pub fn target(&self) -> VertexId {
        self.t
    }

    /// Station set plus s and t, ascending.
    pub fn nodes(&self) -> &[VertexId] {
        &self.nodes
    }

    pub fn station_count(&self) -> usize {
        self.station_count
    }

    pub fn edges(&self) -> &[SuperEdge] {
        &self.edges
    }

    pub fn stats(&self) -> SuperGraphStats {
        self.stats
    }
}

/// Builds the station super graph for one (s, t) query.
///
/// For every ordered node pair, s as origin only and t as destination
/// only, the least-time two-phase score with energy at most `capacity`
/// becomes a super edge. Pairs whose minimum-energy single-phase leg
/// already busts the battery are skipped before any score sweep; that
/// bound is exact, so no feasible pair is lost.
pub fn build_super_graph(
    g: &RoadGraph,
    stations: &[VertexId],
    s: VertexId,
    t: VertexId,
    prefs: &[PreferencePair],
    capacity: WattHours,
    model: &ChargeModel,
) -> Result<SuperGraph> {
    assert!(!prefs.is_empty(), "at least one preference pair");
    assert!(capacity > 0, "capacity must be positive");
    let mut station_list: Vec<VertexId> = stations
        .iter()
        .copied()
        .filter(|&z| z != s && z != t)
        .collect();
    station_list.sort_unstable();
    station_list.dedup();
    for &z in &station_list {
        assert!(z < g.vertex_count(), "station out of range");
    }

    let mut origins = vec![s];
    origins.extend(&station_list);
    let mut destinations = station_list.clone();
    destinations.push(t);

    let mut stats = SuperGraphStats::default();
    let rev = g.reverse_view();
    let mut in_trees = Vec::with_capacity(destinations.len());
    for &w in &destinations {
        in_trees.push(build_in_trees_on(&rev, w, prefs)?);
        stats.style_tree_builds += prefs.len() as u64;
    }

    let goal = QueryGoal {
        max_time: None,
        max_energy: Some(capacity),
    };
    let mut edges = Vec::new();
    for &u in &origins {
        let out_trees = build_out_trees(g, u, prefs)?;
        stats.style_tree_builds += prefs.len() as u64;
        let min_energy = shortest_tree_on(g, u, ENERGY_ONLY, TreeDirection::Outbound)?;
        stats.prune_tree_builds += 1;
        for (wi, &w) in destinations.iter().enumerate() {
            if u == w {
                continue;
            }
            let feasible_exists = min_energy
                .bi_weight(w)
                .is_some_and(|b| b.energy <= capacity);
            if !feasible_exists {
                stats.pruned_pairs += 1;
                continue;
            }
            let Some(score) = best_score(
                &out_trees,
                &in_trees[wi],
                g.vertex_count(),
                &goal,
                &mut stats.score_combinations,
            )?
            else {
                continue; // reachable on energy alone, but no styled score fits
            };
            let leg1 = extract_tree_path(&out_trees[score.style_out], score.switch_vertex)?;
            let leg2 = extract_tree_path(&in_trees[wi][score.style_in], score.switch_vertex)?;
            let recharge = if w == t {
                0
            } else {
                model.charge_time(score.weight.energy.max(0))
            };
            edges.push(SuperEdge {
                from_station: u,
                to_station: w,
                leg_weight: score.weight,
                duration: score.weight.time + recharge,
                embedded_route: TwoPhaseRoute { score, leg1, leg2 },
            });
        }
    }

    let mut nodes = origins;
    nodes.push(t);
    nodes.sort_unstable();
    nodes.dedup();
    Ok(SuperGraph {
        s,
        t,
        nodes,
        station_count: station_list.len(),
        edges,
        stats,
    })
}

/// One full recharge between legs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChargeStop {
    pub station: VertexId,
    pub energy_added: WattHours,
    pub seconds: Seconds,
}

/// Ordered legs of a charging trip with the derived stops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Itinerary {
    pub legs: Vec<SuperEdge>,
    pub stops: Vec<ChargeStop>,
    pub total_seconds: Seconds,
}

/// Minimum-total-duration itinerary over the super graph.
pub fn route_with_chargers(sg: &SuperGraph, s: VertexId, t: VertexId) -> Result<Itinerary> {
    assert!(sg.s == s && sg.t == t, "super graph built for another query");
    if s == t {
        return Ok(Itinerary {
            legs: Vec::new(),
            stops: Vec::new(),
            total_seconds: 0,
        });
    }
    let index_of = |v: VertexId| sg.nodes.binary_search(&v).expect("node in super graph");
    let n = sg.nodes.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (idx, e) in sg.edges.iter().enumerate() {
        adjacency[index_of(e.from_station)].push(idx);
    }
    let mut dist: Vec<Option<Seconds>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let start = index_of(s);
    dist[start] = Some(0);
    let mut heap: BinaryHeap<Reverse<(Seconds, usize)>> = BinaryHeap::new();
    heap.push(Reverse((0, start)));
    while let Some(Reverse((d, node))) = heap.pop() {
        if dist[node] != Some(d) {
            continue;
        }
        for &edge_idx in &adjacency[node] {
            let e = &sg.edges[edge_idx];
            let next = index_of(e.to_station);
            let cand = d + e.duration;
            if dist[next].is_none_or(|cur| cand < cur) {
                dist[next] = Some(cand);
                parent[next] = Some(edge_idx);
                heap.push(Reverse((cand, next)));
            }
        }
    }

    let goal = index_of(t);
    let total_seconds = dist[goal].ok_or(Error::NoFeasibleRoute)?;
    let mut legs = Vec::new();
    let mut cursor = goal;
    while let Some(edge_idx) = parent[cursor] {
        let e = sg.edges[edge_idx].clone();
        cursor = index_of(e.from_station);
        legs.push(e);
    }
    legs.reverse();
    let stops = legs
        .iter()
        .filter(|leg| leg.to_station != t)
        .map(|leg| ChargeStop {
            station: leg.to_station,
            energy_added: leg.leg_weight.energy.max(0),
            seconds: leg.duration - leg.leg_weight.time,
        })
        .collect();
    Ok(Itinerary {
        legs,
        stops,
        total_seconds,
    })
}

/// Parses a charging-station file: one 1-based vertex id per line,
/// blank lines and `#` comments ignored. Ids are returned 0-based.
pub fn parse_chargers(text: &str) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let id: usize = line.parse().map_err(|_| Error::Parse {
            line: idx + 1,
            msg: format!("expected a vertex id, got {line:?}"),
        })?;
        if id == 0 {
            return Err(Error::Parse {
                line: idx + 1,
                msg: "vertex ids are 1-based".into(),
            });
        }
        out.push(id - 1);
    }
    Ok(out)
}

pub fn load_chargers(path: &Path) -> Result<Vec<VertexId>> {
    parse_chargers(&fs::read_to_string(path)?)
}
