//! Parse a Solomon file and print its header and a few customers.
//!
//! cargo run --example parse_instance -- data/solomon/R101.txt

use vrptw_coarsen::instance::Instance;

fn main() -> vrptw_coarsen::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| format!("{}/data/solomon/C101.txt", env!("CARGO_MANIFEST_DIR")));
    let inst = Instance::from_file(&path)?;
    println!("{}: {} customers, {} vehicles of capacity {}", inst.name, inst.len(), inst.vehicle_count, inst.capacity);
    println!("depot at ({}, {}), horizon [{}, {}]", inst.depot.x, inst.depot.y, inst.depot.ready, inst.depot.due);
    for c in inst.customers.iter().take(5) {
        println!(
            "  {:>3} ({:>3}, {:>3}) demand {:>3} window [{:>4}, {:>4}] service {}",
            c.id, c.x, c.y, c.demand, c.ready, c.due, c.service
        );
    }
    let demand: f64 = inst.customers.iter().map(|c| c.demand).sum();
    println!("total demand {demand} (at least {} vehicles)", (demand / inst.capacity).ceil());
    Ok(())
}
