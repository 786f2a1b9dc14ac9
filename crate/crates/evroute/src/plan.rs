//! Route plans and their renderings.
//!
//! A plan flattens a two-phase route or a charging itinerary into an
//! ordered list of driving legs and charge stops, each leg tagged with
//! the preference style it was driven under. Renderers emit text for
//! humans, CSV rows, or JSON lines; all three print vertex ids
//! 1-based, matching the file formats.

use serde::Serialize;

use crate::charging::{ChargeStop, Itinerary};
use crate::graph::{EdgeId, RoadGraph, VertexId};
use crate::two_phase::TwoPhaseRoute;
use crate::weight::{BiWeight, Seconds, WattHours};

/// One styled stretch of driving between two switch points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanLeg {
    pub from: VertexId,
    pub to: VertexId,
    /// Index into the preference list the route was planned with.
    pub style: usize,
    pub style_name: String,
    pub edges: Vec<EdgeId>,
    pub weight: BiWeight,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PlanItem {
    Leg(PlanLeg),
    Stop(ChargeStop),
}

/// A complete rendered-ready route; items in travel order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoutePlan {
    pub source: VertexId,
    pub target: VertexId,
    pub items: Vec<PlanItem>,
    /// Driving plus charging seconds.
    pub total_seconds: Seconds,
    /// Net battery draw while driving; charge top-ups not subtracted.
    pub total_energy: WattHours,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Csv,
    JsonLines,
}

fn style_label(names: &[String], idx: usize) -> String {
    names
        .get(idx)
        .cloned()
        .unwrap_or_else(|| format!("pref{idx}"))
}

fn leg_weight(g: &RoadGraph, edges: &[EdgeId]) -> BiWeight {
    edges.iter().fold(BiWeight::new(0, 0), |acc, &e| {
        BiWeight::new(acc.time + g.edge(e).weight.time, acc.energy + g.edge(e).weight.energy)
    })
}

fn push_two_phase_legs(
    g: &RoadGraph,
    route: &TwoPhaseRoute,
    names: &[String],
    items: &mut Vec<PlanItem>,
) {
    let legs = [
        (&route.leg1, route.score.style_out),
        (&route.leg2, route.score.style_in),
    ];
    for (edges, style) in legs {
        if edges.is_empty() {
            continue;
        }
        let from = g.edge(edges[0]).from;
        let to = g.edge(*edges.last().unwrap()).to;
        items.push(PlanItem::Leg(PlanLeg {
            from,
            to,
            style,
            style_name: style_label(names, style),
            edges: edges.clone(),
            weight: leg_weight(g, edges),
        }));
    }
}

impl RoutePlan {
    /// Flattens a plain two-phase route; up to two legs, no stops.
    pub fn from_two_phase(
        g: &RoadGraph,
        s: VertexId,
        t: VertexId,
        route: &TwoPhaseRoute,
        style_names: &[String],
    ) -> RoutePlan {
        let mut items = Vec::new();
        push_two_phase_legs(g, route, style_names, &mut items);
        RoutePlan {
            source: s,
            target: t,
            items,
            total_seconds: route.score.weight.time,
            total_energy: route.score.weight.energy,
        }
    }

    /// Flattens a charging itinerary: each super-graph leg contributes
    /// its embedded legs, followed by the stop at its arrival station.
    pub fn from_itinerary(
        g: &RoadGraph,
        s: VertexId,
        t: VertexId,
        itinerary: &Itinerary,
        style_names: &[String],
    ) -> RoutePlan {
        let mut items = Vec::new();
        let mut stops = itinerary.stops.iter();
        let mut total_energy = 0;
        for leg in &itinerary.legs {
            push_two_phase_legs(g, &leg.embedded_route, style_names, &mut items);
            total_energy += leg.leg_weight.energy;
            if leg.to_station != t {
                let stop = stops.next().expect("one stop per intermediate station");
                assert_eq!(stop.station, leg.to_station);
                items.push(PlanItem::Stop(*stop));
            }
        }
        RoutePlan {
            source: s,
            target: t,
            items,
            total_seconds: itinerary.total_seconds,
            total_energy,
        }
    }

    pub fn legs(&self) -> impl Iterator<Item = &PlanLeg> {
        self.items.iter().filter_map(|i| match i {
            PlanItem::Leg(leg) => Some(leg),
            PlanItem::Stop(_) => None,
        })
    }

    pub fn stops(&self) -> impl Iterator<Item = &ChargeStop> {
        self.items.iter().filter_map(|i| match i {
            PlanItem::Stop(stop) => Some(stop),
            PlanItem::Leg(_) => None,
        })
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Text => self.render_text(),
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::JsonLines => self.render_json_lines(),
        }
    }

    fn render_text(&self) -> String {
        let mut out = format!(
            "route {} -> {}: {} legs, {} stops\n",
            self.source + 1,
            self.target + 1,
            self.legs().count(),
            self.stops().count(),
        );
        for item in &self.items {
            match item {
                PlanItem::Leg(leg) => out.push_str(&format!(
                    "  drive {} -> {} [{}] {} s, {} Wh, {} edges\n",
                    leg.from + 1,
                    leg.to + 1,
                    leg.style_name,
                    leg.weight.time,
                    leg.weight.energy,
                    leg.edges.len(),
                )),
                PlanItem::Stop(stop) => out.push_str(&format!(
                    "  charge at {} +{} Wh, {} s\n",
                    stop.station + 1,
                    stop.energy_added,
                    stop.seconds,
                )),
            }
        }
        out.push_str(&format!(
            "total {} s, {} Wh\n",
            self.total_seconds, self.total_energy
        ));
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::from("record,from,to,style,time_s,energy_wh,edges\n");
        for item in &self.items {
            match item {
                PlanItem::Leg(leg) => out.push_str(&format!(
                    "leg,{},{},{},{},{},{}\n",
                    leg.from + 1,
                    leg.to + 1,
                    leg.style_name,
                    leg.weight.time,
                    leg.weight.energy,
                    leg.edges.len(),
                )),
                // Stop rows carry charge seconds and energy added.
                PlanItem::Stop(stop) => out.push_str(&format!(
                    "stop,{},{},,{},{},\n",
                    stop.station + 1,
                    stop.station + 1,
                    stop.seconds,
                    stop.energy_added,
                )),
            }
        }
        out.push_str(&format!(
            "total,{},{},,{},{},\n",
            self.source + 1,
            self.target + 1,
            self.total_seconds,
            self.total_energy,
        ));
        out
    }

    fn render_json_lines(&self) -> String {
        #[derive(Serialize)]
        struct LegRecord<'a> {
            record: &'static str,
            from: usize,
            to: usize,
            style: &'a str,
            time_s: i64,
            energy_wh: i64,
            edges: usize,
        }
        #[derive(Serialize)]
        struct StopRecord {
            record: &'static str,
            station: usize,
            charge_s: i64,
            energy_added_wh: i64,
        }
        #[derive(Serialize)]
        struct TotalRecord {
            record: &'static str,
            source: usize,
            target: usize,
            time_s: i64,
            energy_wh: i64,
            legs: usize,
            stops: usize,
        }

        let mut out = String::new();
        for item in &self.items {
            let line = match item {
                PlanItem::Leg(leg) => serde_json::to_string(&LegRecord {
                    record: "leg",
                    from: leg.from + 1,
                    to: leg.to + 1,
                    style: &leg.style_name,
                    time_s: leg.weight.time,
                    energy_wh: leg.weight.energy,
                    edges: leg.edges.len(),
                }),
                PlanItem::Stop(stop) => serde_json::to_string(&StopRecord {
                    record: "stop",
                    station: stop.station + 1,
                    charge_s: stop.seconds,
                    energy_added_wh: stop.energy_added,
                }),
            };
            out.push_str(&line.expect("plain records serialize"));
            out.push('\n');
        }
        let total = serde_json::to_string(&TotalRecord {
            record: "total",
            source: self.source + 1,
            target: self.target + 1,
            time_s: self.total_seconds,
            energy_wh: self.total_energy,
            legs: self.legs().count(),
            stops: self.stops().count(),
        })
        .expect("plain records serialize");
        out.push_str(&total);
        out.push('\n');
        out
    }
}
