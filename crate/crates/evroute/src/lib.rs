//! Bicriterion route planning for electric vehicles.
//!
//! Routes are weighed in two currencies at once: travel time in seconds
//! and battery draw in watt-hours. Instead of collapsing them into one
//! score up front, the planner works with Pareto frontiers of
//! (time, energy) pairs and answers goal queries of the form "arrive
//! within X seconds spending at most Y watt-hours".
//!
//! The crate is organized around three levels of machinery:
//!
//! * exact labeling ([`labeling`]) and brute-force enumeration
//!   ([`enumerate`]), the slow ground truth;
//! * the two-phase approximation ([`utility`], [`two_phase`]), which
//!   builds a handful of preference-weighted shortest-path trees and
//!   combines an outbound tree with an inbound tree at every vertex;
//! * charging-aware itineraries ([`charging`]), which stitch two-phase
//!   legs together across charging stations on a super graph.
//!
//! [`ingest`] reads and generates road networks, [`experiment`] runs
//! reachability and slowdown sweeps, and [`plan`] renders routes.
//! The `examples/` directory walks through each capability end to end.

pub mod charging;
pub mod enumerate;
pub mod error;
pub mod experiment;
pub mod graph;
pub mod ingest;
pub mod labeling;
pub mod plan;
pub mod two_phase;
pub mod utility;
pub mod weight;

pub use error::{Error, Result};
pub use graph::{EdgeId, QueryGoal, RoadGraph, RoadGraphBuilder, StyledEdge, VertexId};
pub use labeling::{ev_pareto_frontier, pareto_frontier, LabelTable, ParetoConfig};
pub use weight::{BiWeight, ParetoSet, Seconds, WattHours};
