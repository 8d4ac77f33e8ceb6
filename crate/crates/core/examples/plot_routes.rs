//! Solve an instance and draw the routes to an SVG file.
//!
//! cargo run --release --example plot_routes -- C201 routes.svg

use vrptw_coarsen::coarsen::CoarseningParams;
use vrptw_coarsen::document::SolutionDocument;
use vrptw_coarsen::evaluation::PenaltyWeights;
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::heuristics::SolverKind;
use vrptw_coarsen::instance::Instance;
use vrptw_coarsen::pipeline::run_pipeline;
use vrptw_coarsen::plot::render_svg;

fn main() -> vrptw_coarsen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let name = args.first().map_or("C201", String::as_str);
    let out = args.get(1).map_or("routes.svg", String::as_str);
    let inst = Instance::from_file(format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR")))?;
    let graph = Graph::from_instance(&inst, NominalPolicy::Midpoint);
    let params = CoarseningParams { alpha: 0.9, beta: 0.1, p_target: 0.5, radius_coeff: 2.0, ..Default::default() };
    let run = run_pipeline(&graph, &params, SolverKind::Savings, &PenaltyWeights::default())?;
    let doc = SolutionDocument::from_run(&inst.name, None, &run, &graph)?;
    std::fs::write(out, render_svg(&doc))?;
    println!("wrote {out}: {} routes, distance {:.2}", doc.routes.len(), doc.metrics.total_distance);
    Ok(())
}
