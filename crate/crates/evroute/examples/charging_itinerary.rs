//! Routing through charging stations on a super graph.
//!
//! Stations and the query endpoints become super-graph nodes; each
//! super edge embeds a best two-phase leg that fits the battery, plus
//! the seconds to recharge what the leg drew. A plain Dijkstra over
//! super edges then minimizes total trip duration, driving included.
//!
//! Run with: `cargo run --example charging_itinerary`

use evroute::charging::{build_super_graph, route_with_chargers, ChargeModel};
use evroute::graph::RoadGraphBuilder;
use evroute::utility::default_preferences;
use evroute::weight::BiWeight;

fn main() -> evroute::Result<()> {
    // A chain that costs 16 Wh end to end; a 10 Wh battery cannot
    // cross it without topping up at the mid-chain station.
    let mut b = RoadGraphBuilder::new(3, 1);
    b.add_edge(0, 1, BiWeight::new(100, 8), 0);
    b.add_edge(1, 2, BiWeight::new(100, 8), 0);
    b.mark_charger(1);
    let g = b.build();

    let prefs = default_preferences();
    let model = ChargeModel::linear(1.0);
    let capacity = 10;
    let sg = build_super_graph(&g, &[1], 0, 2, &prefs, capacity, &model)?;

    println!("super graph nodes: {:?}", sg.nodes());
    for e in sg.edges() {
        println!(
            "  {} -> {}: drive {} s / {} Wh, arrive-ready in {} s",
            e.from_station + 1,
            e.to_station + 1,
            e.leg_weight.time,
            e.leg_weight.energy,
            e.duration
        );
    }

    let itinerary = route_with_chargers(&sg, 0, 2)?;
    println!("total duration: {} s", itinerary.total_seconds);
    for stop in &itinerary.stops {
        println!(
            "  stop at {}: +{} Wh over {} s",
            stop.station + 1,
            stop.energy_added,
            stop.seconds
        );
    }

    // A bigger battery makes the stop unnecessary; the direct leg wins.
    let sg = build_super_graph(&g, &[1], 0, 2, &prefs, 20, &model)?;
    let direct = route_with_chargers(&sg, 0, 2)?;
    println!(
        "at 20 Wh capacity: {} s, {} stops",
        direct.total_seconds,
        direct.stops.len()
    );

    // Piecewise charge curves taper; the last segment's slope carries on.
    let tapered = ChargeModel::piecewise(vec![(8, 8), (16, 24)]);
    println!(
        "tapered model: 8 Wh in {} s, 12 Wh in {} s",
        tapered.charge_time(8),
        tapered.charge_time(12)
    );
    Ok(())
}
