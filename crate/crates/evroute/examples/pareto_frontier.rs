//! Exact battery-constrained Pareto frontiers by label correcting.
//!
//! Builds a small road graph by hand, computes every vertex's frontier
//! of (seconds, watt-hours) path weights under a battery capacity, and
//! reconstructs the path behind one frontier point.
//!
//! Run with: `cargo run --example pareto_frontier`

use evroute::graph::{QueryGoal, RoadGraphBuilder};
use evroute::labeling::ev_pareto_frontier;
use evroute::weight::BiWeight;

fn main() -> evroute::Result<()> {
    // Two hops, each with a fast-but-thirsty and a slow-but-thrifty
    // styled edge; four end-to-end tradeoffs, three Pareto-optimal.
    let mut b = RoadGraphBuilder::new(3, 2);
    b.add_edge(0, 1, BiWeight::new(4, 20), 0);
    b.add_edge(0, 1, BiWeight::new(10, 5), 1);
    b.add_edge(1, 2, BiWeight::new(4, 20), 0);
    b.add_edge(1, 2, BiWeight::new(10, 5), 1);
    let g = b.build();

    let capacity = 100;
    let table = ev_pareto_frontier(&g, 0, capacity)?;

    println!("frontier at the target (capacity {capacity} Wh):");
    for w in table.frontier_weights(2) {
        println!("  {} s, {} Wh", w.time, w.energy);
    }

    // Goal queries answer "arrive within X seconds spending at most Y".
    let goal = QueryGoal {
        max_time: Some(15),
        max_energy: Some(30),
    };
    match table.feasible(2, &goal) {
        Some(w) => println!("within (15 s, 30 Wh): yes, via {} s / {} Wh", w.time, w.energy),
        None => println!("within (15 s, 30 Wh): no"),
    }

    // Every frontier entry resolves to a concrete edge path.
    let entry = table.feasible_entry(2, &goal).expect("goal is feasible");
    let path = table.path(entry.label);
    let hops: Vec<String> = path
        .iter()
        .map(|&e| format!("{}->{}", g.edge(e).from + 1, g.edge(e).to + 1))
        .collect();
    println!("realized by edges {}", hops.join(" "));

    // A tight capacity prunes mid-path: nothing survives at 9 Wh.
    let drained = ev_pareto_frontier(&g, 0, 9)?;
    println!(
        "frontier size at capacity 9 Wh: {}",
        drained.frontier(2).len()
    );
    Ok(())
}
