//! Preference-weighted shortest-path trees and the hull limitation.
//!
//! A preference pair (alpha, beta) scalarizes (time, energy) into one
//! cost. Sweeping many pairs only ever surfaces path weights on the
//! lower-left convex hull of the attainable set; Pareto points inside
//! the hull are invisible to every single preference.
//!
//! Run with: `cargo run --example utility_trees`

use evroute::enumerate::enumerate_paths;
use evroute::graph::RoadGraphBuilder;
use evroute::labeling::ParetoConfig;
use evroute::utility::{extract_tree_path, shortest_tree, PreferencePair, TreeDirection};
use evroute::weight::{lower_left_hull, BiWeight, ParetoSet};

fn main() -> evroute::Result<()> {
    // Four end-to-end tradeoffs: (3,19), (8,14), (10,11), (15,6).
    // (8,14) is Pareto-optimal yet strictly inside the hull.
    let mut b = RoadGraphBuilder::new(3, 2);
    b.add_edge(0, 1, BiWeight::new(1, 10), 0);
    b.add_edge(0, 1, BiWeight::new(8, 2), 1);
    b.add_edge(1, 2, BiWeight::new(2, 9), 0);
    b.add_edge(1, 2, BiWeight::new(7, 4), 1);
    let g = b.build();

    let paths = enumerate_paths(&g, 0, 2, 2, &ParetoConfig::default())?;
    let frontier: ParetoSet = paths.iter().copied().collect();
    let hull = lower_left_hull(&paths);
    println!("pareto frontier: {:?}", frontier.points());
    println!("hull vertices:   {hull:?}");

    // Sweep preferences from all-time to all-energy; collect what each
    // tree reports as optimal at the target.
    let mut seen = Vec::new();
    for i in 0..=10 {
        let alpha = i as f64 / 10.0;
        let pref = PreferencePair::new(alpha, 1.0 - alpha)?;
        let tree = shortest_tree(&g, 0, pref, TreeDirection::Outbound)?;
        let w = tree.bi_weight(2).expect("target reached");
        if !seen.contains(&w) {
            seen.push(w);
        }
    }
    println!("weights surfaced by 11 preference sweeps: {seen:?}");
    println!("the interior point (8, 14) never appears");

    // Inbound trees answer "best path INTO the root" without editing
    // the graph; paths come out in travel order either way.
    let pref = PreferencePair::new(0.5, 0.5)?;
    let inbound = shortest_tree(&g, 2, pref, TreeDirection::Inbound)?;
    let path = extract_tree_path(&inbound, 0)?;
    let hops: Vec<String> = path
        .iter()
        .map(|&e| format!("{}->{}", g.edge(e).from + 1, g.edge(e).to + 1))
        .collect();
    println!(
        "balanced inbound tree routes 1 via {} at cost {:.1}",
        hops.join(" "),
        inbound.cost(0).unwrap()
    );
    Ok(())
}
