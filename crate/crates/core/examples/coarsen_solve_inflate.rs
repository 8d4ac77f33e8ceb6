//! One full pipeline run, stage by stage, next to the baseline.
//!
//! cargo run --release --example coarsen_solve_inflate -- R101 0.3

use vrptw_coarsen::coarsen::{coarsen, CoarseningParams};
use vrptw_coarsen::evaluation::{evaluate, objective_score, PenaltyWeights};
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::heuristics::SolverKind;
use vrptw_coarsen::inflate::{inflate, light_postprocess};
use vrptw_coarsen::instance::Instance;
use vrptw_coarsen::pipeline::run_baseline;

fn main() -> vrptw_coarsen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("R101", String::as_str);
    let p = args.get(1).map_or(0.3, |s| s.parse().expect("P must be a number"));
    let inst = Instance::from_file(format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR")))?;
    let original = Graph::from_instance(&inst, NominalPolicy::Midpoint);
    let params = CoarseningParams { alpha: 0.9, beta: 0.1, p_target: p, radius_coeff: 2.0, ..Default::default() };
    let weights = PenaltyWeights::default();
    let solver = SolverKind::Savings;

    let reduced = coarsen(&original, &params)?;
    println!("coarsened {} -> {} nodes in {} rounds", original.customer_count(), reduced.graph.customer_count(), reduced.rounds.len());

    let coarse = solver.solve(&reduced.graph)?;
    let cm = evaluate(&coarse, &reduced.graph)?;
    println!("coarse:    {} routes, distance {:.2}, late {}", cm.num_vehicles, cm.total_distance, cm.tw_violations);

    let expanded = inflate(&coarse, &reduced.history, &original)?;
    let em = evaluate(&expanded, &original)?;
    println!("inflated:  {} routes, distance {:.2}, late {}", em.num_vehicles, em.total_distance, em.tw_violations);

    let (repaired, report) = light_postprocess(&expanded, &original)?;
    let rm = evaluate(&repaired, &original)?;
    println!(
        "repaired:  {} routes, distance {:.2}, late {} ({} swaps, {} splits), score {:.2}",
        rm.num_vehicles, rm.total_distance, rm.tw_violations, report.swaps, report.splits, objective_score(&rm, &weights)
    );

    let base = run_baseline(&original, solver, &weights)?;
    println!(
        "baseline:  {} routes, distance {:.2}, late {}, score {:.2}",
        base.metrics.num_vehicles, base.metrics.total_distance, base.metrics.tw_violations, base.score
    );
    Ok(())
}
