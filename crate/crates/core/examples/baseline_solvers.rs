//! Greedy and savings on the uncoarsened instance.
//!
//! cargo run --release --example baseline_solvers -- RC101

use vrptw_coarsen::evaluation::PenaltyWeights;
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::heuristics::SolverKind;
use vrptw_coarsen::instance::Instance;
use vrptw_coarsen::pipeline::run_baseline;

fn main() -> vrptw_coarsen::Result<()> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "C101".into());
    let inst = Instance::from_file(format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR")))?;
    let graph = Graph::from_instance(&inst, NominalPolicy::Midpoint);
    for solver in [SolverKind::Greedy, SolverKind::Savings] {
        let run = run_baseline(&graph, solver, &PenaltyWeights::default())?;
        let m = run.metrics;
        println!(
            "{name} {solver:<8} distance {:>8.2} vehicles {:>3} duration {:>9.2} late {:>3} score {:>9.2} ({:.2} ms)",
            m.total_distance, m.num_vehicles, m.total_duration, m.tw_violations, run.score, run.timings.solve_ms
        );
    }
    Ok(())
}
