//! Forward-simulate a hand-built route and print arrival, wait and service times.

use vrptw_coarsen::graph::{CoarseNode, Graph, NodeId, NominalPolicy, Route};
use vrptw_coarsen::instance::Customer;

fn main() -> vrptw_coarsen::Result<()> {
    let c = |id, x, ready, due, service| Customer { id, x, y: 0.0, demand: 5.0, ready, due, service };
    let customers = [
        Customer { demand: 0.0, ..c(0, 0.0, 0.0, 200.0, 0.0) },
        c(1, 10.0, 20.0, 30.0, 5.0),
        c(2, 20.0, 0.0, 40.0, 5.0),
        c(3, 30.0, 0.0, 45.0, 5.0),
    ];
    let nodes = customers.iter().map(|c| CoarseNode::from_customer(c, NominalPolicy::Midpoint)).collect();
    let graph = Graph::euclidean(nodes, 20.0);

    let route = Route::new([NodeId(1), NodeId(2), NodeId(3)]);
    let s = graph.schedule(&route)?;
    println!("{:>5} {:>8} {:>6} {:>8} {:>9}", "node", "arrival", "wait", "start", "departure");
    for t in &s.stops {
        println!("{:>5} {:>8.1} {:>6.1} {:>8.1} {:>9.1}", t.node_id, t.arrival, t.wait, t.service_start, t.departure);
    }
    println!(
        "distance {:.1}, duration {:.1}, load {}, late {:?}, over capacity {}",
        s.distance, s.duration, s.load, s.late, s.over_capacity
    );
    Ok(())
}
