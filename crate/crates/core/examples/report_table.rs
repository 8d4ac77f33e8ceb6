//! Aggregate trial and baseline CSV files into the comparison table.
//!
//! cargo run --example report_table -- out/trials.csv out/baseline.csv

use std::fs::File;

use vrptw_coarsen::document::read_rows;
use vrptw_coarsen::report::{compare, format_table};

fn main() -> vrptw_coarsen::Result<()> {
    let mut rows = Vec::new();
    for path in std::env::args().skip(1) {
        rows.extend(read_rows(File::open(path)?)?);
    }
    if rows.is_empty() {
        eprintln!("usage: report_table <trials.csv> <baseline.csv>...");
        return Ok(());
    }
    print!("{}", format_table(&compare(&rows)));
    Ok(())
}
