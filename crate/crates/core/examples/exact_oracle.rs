//! Compare both heuristics with the exhaustive optimum on a small instance.

use vrptw_coarsen::evaluation::evaluate;
use vrptw_coarsen::graph::{CoarseNode, Graph, NominalPolicy};
use vrptw_coarsen::heuristics::{brute_force_optimal, SolverKind};
use vrptw_coarsen::instance::Customer;

fn main() -> vrptw_coarsen::Result<()> {
    let rows = [
        (0, 50.0, 50.0, 0.0, 0.0, 400.0),
        (1, 30.0, 60.0, 10.0, 0.0, 120.0),
        (2, 35.0, 70.0, 15.0, 40.0, 160.0),
        (3, 70.0, 40.0, 20.0, 0.0, 300.0),
        (4, 75.0, 30.0, 10.0, 100.0, 250.0),
        (5, 55.0, 20.0, 25.0, 0.0, 200.0),
        (6, 20.0, 30.0, 15.0, 150.0, 300.0),
        (7, 60.0, 80.0, 5.0, 0.0, 350.0),
    ];
    let nodes = rows
        .iter()
        .map(|&(id, x, y, demand, ready, due)| {
            let service = if id == 0 { 0.0 } else { 10.0 };
            CoarseNode::from_customer(&Customer { id, x, y, demand, ready, due, service }, NominalPolicy::Midpoint)
        })
        .collect();
    let graph = Graph::euclidean(nodes, 50.0);

    let best = brute_force_optimal(&graph)?.expect("instance is feasible");
    let opt = evaluate(&best, &graph)?;
    println!("optimum   distance {:>7.2} vehicles {}", opt.total_distance, opt.num_vehicles);
    for solver in [SolverKind::Greedy, SolverKind::Savings] {
        let m = evaluate(&solver.solve(&graph)?, &graph)?;
        println!(
            "{solver:<9} distance {:>7.2} vehicles {} gap {:.1}%",
            m.total_distance,
            m.num_vehicles,
            (m.total_distance / opt.total_distance - 1.0) * 100.0
        );
    }
    Ok(())
}
