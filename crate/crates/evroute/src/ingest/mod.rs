//! Instance loading, parameter tables, and synthetic generators.

pub mod generate;
pub mod graph_file;
pub mod params;

pub use generate::{
    equal_partition_exists, gen_grid, gen_partition_instance, gen_sparse, ClassMix,
    PartitionInstance,
};
pub use graph_file::{load_graph, styled_weights, GraphFile, Segment};
pub use params::{
    load_params, parse_params, DrivingParams, DrivingStyle, Params, RoadClass, StyleParams,
    StylePrefs, DRIVING_STYLES, ROAD_CLASSES,
};
