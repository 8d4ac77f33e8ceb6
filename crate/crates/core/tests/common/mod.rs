#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vrptw_coarsen::graph::{Graph, NominalPolicy};
use vrptw_coarsen::instance::{Customer, Instance};

pub const HORIZON: f64 = 1000.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Windows {
    /// Every window spans the whole reachable horizon.
    Wide,
    /// Random windows of width 20..300 inside the reachable horizon.
    Binding,
}

/// Random instance on a 100x100 square with the depot in the middle. Every
/// customer can be served on its own route without violations.
pub fn random_instance(seed: u64, n: usize, windows: Windows) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let capacity = 100.0;
    let depot = Customer { id: 0, x: 50.0, y: 50.0, demand: 0.0, ready: 0.0, due: HORIZON, service: 0.0 };
    let customers = (1..=n)
        .map(|id| {
            let x = rng.gen_range(0..=100) as f64;
            let y = rng.gen_range(0..=100) as f64;
            let demand = rng.gen_range(1..=30) as f64;
            let service = rng.gen_range(0..=20) as f64;
            let back = (x - 50.0).hypot(y - 50.0);
            // latest start that still returns to the depot in time
            let latest = (HORIZON - service - back).floor();
            let earliest = back.ceil();
            let (ready, due) = match windows {
                Windows::Wide => (0.0, latest),
                Windows::Binding => {
                    let width = rng.gen_range(20.0..300.0_f64).min(latest - earliest);
                    let ready = rng.gen_range(earliest..=latest - width).round();
                    (ready, (ready + width).round().min(latest))
                }
            };
            Customer { id, x, y, demand, ready, due, service }
        })
        .collect();
    Instance { name: format!("rand-{seed}-{n}"), vehicle_count: n.max(1), capacity, depot, customers }
}

pub fn random_graph(seed: u64, n: usize, windows: Windows) -> Graph {
    Graph::from_instance(&random_instance(seed, n, windows), NominalPolicy::Midpoint)
}

pub fn solomon(name: &str) -> Instance {
    let path = format!("{}/data/solomon/{name}.txt", env!("CARGO_MANIFEST_DIR"));
    Instance::from_file(path).expect("bundled Solomon instance")
}

pub fn solomon_graph(name: &str) -> Graph {
    Graph::from_instance(&solomon(name), NominalPolicy::Midpoint)
}
