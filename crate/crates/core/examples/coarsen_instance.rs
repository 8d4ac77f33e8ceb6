//! Coarsen a Solomon instance and print the per-round trace.
//!
//! cargo run --example coarsen_instance -- C101 0.3 0.9 0.1 2.0

use vrptw_coarsen::coarsen::{coarsen, CoarseningParams};
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::instance::Instance;

fn main() -> vrptw_coarsen::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |k: usize, default: f64| args.get(k).map_or(default, |s| s.parse().expect("numeric argument"));
    let name = args.first().map_or("C101", String::as_str);
    let path = format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    let inst = Instance::from_file(path)?;
    let graph = Graph::from_instance(&inst, NominalPolicy::Midpoint);

    let params = CoarseningParams {
        p_target: arg(1, 0.5),
        alpha: arg(2, 0.5),
        beta: arg(3, 0.5),
        radius_coeff: arg(4, 1.0),
        ..Default::default()
    };
    let out = coarsen(&graph, &params)?;
    for r in &out.rounds {
        println!(
            "round {:>2}: {:>3} nodes, {:>5} candidates within rho={:.2}, {:>3} merges",
            r.round, r.nodes_before, r.candidates, r.rho, r.merges_applied
        );
    }
    println!(
        "{}: {} -> {} customer nodes ({:?}), {} merges",
        inst.name,
        graph.customer_count(),
        out.graph.customer_count(),
        out.halt,
        out.history.len()
    );
    if let Some(big) = out.graph.customers().iter().max_by_key(|n| n.members.len()) {
        let ids: Vec<String> = big.members.iter().map(ToString::to_string).collect();
        println!("largest super-node {} = [{}], window [{}, {}]", big.id, ids.join(", "), big.ready, big.due);
    }
    Ok(())
}
