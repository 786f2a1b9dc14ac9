//! Two-phase search: switch styles once, mid-route.
//!
//! Phase one builds c outbound trees from the start and c inbound
//! trees to the target, one per preference pair. Phase two sums an
//! outbound and an inbound tree at every vertex, scoring c * c * n
//! style-switching routes, and keeps the best one admitted by the
//! goal. This recovers tradeoffs no single preference can see.
//!
//! Run with: `cargo run --example two_phase_route`

use evroute::graph::{QueryGoal, RoadGraphBuilder};
use evroute::two_phase::{pareto_of_scores, TwoPhaseSearch};
use evroute::utility::default_preferences;
use evroute::weight::BiWeight;

fn main() -> evroute::Result<()> {
    let mut b = RoadGraphBuilder::new(3, 2);
    b.add_edge(0, 1, BiWeight::new(1, 10), 0);
    b.add_edge(0, 1, BiWeight::new(8, 2), 1);
    b.add_edge(1, 2, BiWeight::new(2, 9), 0);
    b.add_edge(1, 2, BiWeight::new(7, 4), 1);
    let g = b.build();

    let prefs = default_preferences();
    let mut search = TwoPhaseSearch::new(&g, 0, 2, &prefs)?;

    let scores = search.scores()?;
    println!("distinct score weights: {:?}", pareto_of_scores(&scores).points());
    let stats = search.stats();
    println!(
        "{} tree builds, {} (vertex, style, style) combinations",
        stats.tree_builds, stats.score_combinations
    );

    // (8, 14) is invisible to every single preference pair, but a
    // fast-then-thrifty switch reaches it.
    let goal = QueryGoal {
        max_time: None,
        max_energy: Some(14),
    };
    let route = search.best(&goal)?;
    let s = route.score;
    println!(
        "best within 14 Wh: {} s, {} Wh, switching styles {} -> {} at vertex {}",
        s.weight.time,
        s.weight.energy,
        s.style_out,
        s.style_in,
        s.switch_vertex + 1
    );
    println!(
        "legs: {} edges then {} edges",
        route.leg1.len(),
        route.leg2.len()
    );

    // An unmeetable goal is an error, not a silent empty route.
    let impossible = QueryGoal {
        max_time: Some(2),
        max_energy: None,
    };
    println!("goal under 2 s: {:?}", search.best(&impossible).err());
    Ok(())
}
