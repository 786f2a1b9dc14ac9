//! Why exact bicriterion goal queries are NP-hard.
//!
//! Any multiset of positive integers becomes a chain graph: value a_i
//! turns into parallel edges weighing (1 + a_i, 1) and (1, 1 + a_i).
//! A path meets the goal X = Y = n + sum/2 exactly when the values
//! split into two equal-sum halves, so deciding goal feasibility is as
//! hard as Partition. The exact labeling oracle answers it anyway, in
//! pseudo-polynomial time.
//!
//! Run with: `cargo run --example partition_reduction`

use evroute::enumerate::enumerate_paths;
use evroute::ingest::{equal_partition_exists, gen_partition_instance};
use evroute::labeling::ParetoConfig;

fn main() -> evroute::Result<()> {
    for values in [vec![1, 2, 3], vec![1, 1, 1], vec![3, 5, 8, 4]] {
        let inst = gen_partition_instance(&values);
        let n = values.len();
        println!(
            "values {values:?}: chain of {} vertices, goal X=Y={}",
            inst.graph.vertex_count(),
            inst.goal_value()
        );

        // Each path picks a side for every value; its weight reveals
        // the two subset sums (shifted by n).
        let paths = enumerate_paths(&inst.graph, 0, n, n, &ParetoConfig::default())?;
        let splits: Vec<(i64, i64)> = paths
            .iter()
            .map(|w| (w.time - n as i64, w.energy - n as i64))
            .collect();
        println!("  subset-sum splits: {splits:?}");

        let oracle = inst.is_feasible()?;
        let brute = equal_partition_exists(&values);
        assert_eq!(oracle, brute);
        println!("  equal split exists: {oracle}\n");
    }
    Ok(())
}
