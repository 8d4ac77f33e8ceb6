//! Seeded random search over the coarsening grid, with the report table.
//!
//! cargo run --release --example random_search -- RC103 20 42

use vrptw_coarsen::document::TrialRow;
use vrptw_coarsen::evaluation::PenaltyWeights;
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::heuristics::SolverKind;
use vrptw_coarsen::instance::Instance;
use vrptw_coarsen::report::{compare, format_table};
use vrptw_coarsen::tuning::{random_search, run_baseline, SearchSpace};

fn main() -> vrptw_coarsen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("RC103", String::as_str);
    let trials = args.get(1).map_or(20, |s| s.parse().expect("trial count"));
    let seed = args.get(2).map_or(42, |s| s.parse().expect("seed"));
    let inst = Instance::from_file(format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR")))?;
    let graph = Graph::from_instance(&inst, NominalPolicy::Midpoint);
    let weights = PenaltyWeights::default();

    let outcome = random_search(&graph, &SearchSpace::default(), trials, seed, &weights, 4)?;
    let mut rows = Vec::new();
    for t in &outcome.trials {
        let p = t.run.params.expect("trials are coarsened");
        println!(
            "trial {:>2} {:<7} a={} b={} P={} R={} -> {:>3} nodes, distance {:>8.2}, vehicles {:>2}, late {:>2}, score {:>9.2}",
            t.trial_index, t.run.solver, p.alpha, p.beta, p.p_target, p.radius_coeff, t.run.coarse_nodes,
            t.run.metrics.total_distance, t.run.metrics.num_vehicles, t.run.metrics.tw_violations, t.run.score
        );
        rows.push(TrialRow::new(name, Some(t.trial_index), Some(seed), &t.run));
    }
    println!("best: trial {}", outcome.best().trial_index);
    for solver in [SolverKind::Greedy, SolverKind::Savings] {
        rows.push(TrialRow::new(name, None, None, &run_baseline(&graph, solver, &weights)?));
    }
    print!("\n{}", format_table(&compare(&rows)));
    Ok(())
}
