//! Capacity sweeps: oracle reachability versus two-phase quality.
//!
//! Generates a seeded grid, then for each battery capacity measures
//! how many nodes the exact oracle can reach, how many of those the
//! two-phase search also reaches, and how much slower its routes are.
//! The CSV matches the `evroute experiment` subcommand's output.
//!
//! Run with: `cargo run --release --example grid_experiment`

use evroute::experiment::{run_experiment, ExperimentConfig, TargetSpec};
use evroute::ingest::{gen_grid, ClassMix, DrivingParams};

fn main() -> evroute::Result<()> {
    let grid = gen_grid(12, 12, &ClassMix::default(), 21);
    let graph = grid.expand(&DrivingParams::default());

    // Center start, every vertex a target, ladder of battery sizes.
    let mut cfg = ExperimentConfig::new(
        78,
        TargetSpec::All,
        vec![600, 900, 1200, 1800, 2600],
    );
    cfg.timing = false;

    let report = run_experiment(&graph, &cfg)?;
    print!("{}", report.to_csv());

    for pair in report.rows.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        assert!(
            a.twophase_reached_targets <= b.twophase_reached_targets,
            "reach never shrinks as the battery grows"
        );
    }
    Ok(())
}
