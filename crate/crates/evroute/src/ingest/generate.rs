//! Synthetic instance generators.
//!
//! Grids and sparse random graphs stand in for real road networks at
//! desk scale; the Partition chains are adversarial fixtures whose
//! bicriterion feasibility encodes an NP-complete question. Generators
//! emit the serializable segment form so instances can be written to
//! disk; expand with any driving parameters to search them.

use rand::distr::weighted::WeightedIndex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::graph::{QueryGoal, RoadGraph, RoadGraphBuilder};
use crate::ingest::graph_file::{GraphFile, Segment};
use crate::ingest::params::{RoadClass, ROAD_CLASSES};
use crate::labeling::{pareto_frontier, ParetoConfig};
use crate::weight::BiWeight;

/// Relative draw weights over highway, primary, secondary, local.
#[derive(Debug, Clone)]
pub struct ClassMix {
    weights: [u32; 4],
    dist: WeightedIndex<u32>,
}

impl ClassMix {
    pub fn new(weights: [u32; 4]) -> ClassMix {
        assert!(weights.iter().any(|&w| w > 0), "class mix cannot be all zero");
        let dist = WeightedIndex::new(weights).unwrap();
        ClassMix { weights, dist }
    }

    pub fn weights(&self) -> [u32; 4] {
        self.weights
    }

    fn sample(&self, rng: &mut impl Rng) -> RoadClass {
        ROAD_CLASSES[self.dist.sample(rng)]
    }
}

impl Default for ClassMix {
    /// Skewed toward minor roads, as real networks are.
    fn default() -> Self {
        ClassMix::new([1, 2, 3, 4])
    }
}

fn draw_segment(u: usize, v: usize, mix: &ClassMix, rng: &mut impl Rng) -> Segment {
    let class = mix.sample(rng);
    let length_m = match class {
        RoadClass::Local => rng.random_range(100..=500),
        _ => rng.random_range(500..=5000),
    };
    Segment { u, v, length_m, class }
}

/// 4-neighbor grid of `rows` x `cols` vertices; vertex (r, c) has id
/// r * cols + c. Per segment a class is drawn from `mix`, then a
/// uniform length (local 100..=500 m, others 500..=5000 m).
pub fn gen_grid(rows: usize, cols: usize, mix: &ClassMix, seed: u64) -> GraphFile {
    assert!(rows >= 1 && cols >= 1, "grid must be at least 1x1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let id = |r: usize, c: usize| r * cols + c;
    let mut segments = Vec::with_capacity(rows * (cols - 1) + (rows - 1) * cols);
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                segments.push(draw_segment(id(r, c), id(r, c + 1), mix, &mut rng));
            }
            if r + 1 < rows {
                segments.push(draw_segment(id(r, c), id(r + 1, c), mix, &mut rng));
            }
        }
    }
    GraphFile {
        vertex_count: rows * cols,
        segments,
    }
}

/// Connected sparse random graph: a uniform random spanning tree
/// shape first, then extra segments between random distinct vertices.
/// Classes and lengths are drawn as in [`gen_grid`].
pub fn gen_sparse(vertices: usize, segments: usize, mix: &ClassMix, seed: u64) -> GraphFile {
    assert!(vertices >= 1, "need at least one vertex");
    assert!(
        segments + 1 >= vertices,
        "need at least {} segments to connect {vertices} vertices",
        vertices - 1
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(segments);
    for v in 1..vertices {
        let u = rng.random_range(0..v);
        out.push(draw_segment(u, v, mix, &mut rng));
    }
    while out.len() < segments {
        let u = rng.random_range(0..vertices);
        let mut v = rng.random_range(0..vertices);
        if u == v {
            v = (v + 1) % vertices;
        }
        out.push(draw_segment(u, v, mix, &mut rng));
    }
    GraphFile {
        vertex_count: vertices,
        segments: out,
    }
}

/// A Partition multiset encoded as a chain whose goal-feasibility is
/// equivalent to splitting the values into two equal-sum halves.
///
/// Value `a_i` becomes two parallel edges from vertex i to i+1 with
/// weights (1 + a_i, 1) and (1, 1 + a_i); picking the first charges
/// a_i to the time coordinate, the second to energy. The goal bounds
/// both coordinates by n + floor(sum / 2), so a path meets it exactly
/// when each side receives at most half the total. Odd totals make
/// every instance infeasible, as no equal split exists.
#[derive(Debug, Clone)]
pub struct PartitionInstance {
    pub values: Vec<i64>,
    pub graph: RoadGraph,
    pub goal: QueryGoal,
}

impl PartitionInstance {
    pub fn half_sum(&self) -> f64 {
        self.values.iter().sum::<i64>() as f64 / 2.0
    }

    pub fn goal_value(&self) -> i64 {
        self.goal.max_time.expect("partition goals bound both coordinates")
    }

    /// Decides goal-feasibility by exact Pareto labeling on the chain.
    pub fn is_feasible(&self) -> Result<bool> {
        let n = self.values.len();
        let table = pareto_frontier(&self.graph, 0, &ParetoConfig::default())?;
        Ok(table.feasible(n, &self.goal).is_some())
    }
}

pub fn gen_partition_instance(values: &[i64]) -> PartitionInstance {
    assert!(!values.is_empty(), "multiset cannot be empty");
    assert!(values.iter().all(|&a| a > 0), "values must be positive");
    let n = values.len();
    let mut b = RoadGraphBuilder::new(n + 1, 2);
    for (i, &a) in values.iter().enumerate() {
        b.add_edge(i, i + 1, BiWeight::new(1 + a, 1), 0);
        b.add_edge(i, i + 1, BiWeight::new(1, 1 + a), 1);
    }
    let goal_value = n as i64 + values.iter().sum::<i64>() / 2;
    PartitionInstance {
        values: values.to_vec(),
        graph: b.build(),
        goal: QueryGoal {
            max_time: Some(goal_value),
            max_energy: Some(goal_value),
        },
    }
}

/// Brute-force reference: can `values` split into two equal-sum halves?
pub fn equal_partition_exists(values: &[i64]) -> bool {
    let total: i64 = values.iter().sum();
    if total % 2 != 0 {
        return false;
    }
    let target = (total / 2) as usize;
    let mut reachable = vec![false; target + 1];
    reachable[0] = true;
    for &a in values {
        let a = a as usize;
        for s in (a..=target).rev() {
            if reachable[s - a] {
                reachable[s] = true;
            }
        }
    }
    reachable[target]
}
