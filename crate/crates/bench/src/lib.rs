//! Fixtures shared by the benchmarks.

use std::path::PathBuf;

use mortonlab::{load_knot_table, Diagram, KnotTable};

pub fn knot_table() -> KnotTable {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/knots.csv");
    load_knot_table(&path).expect("bundled knot table")
}

/// Named diagrams from the bundled table, in table order.
pub fn named(table: &KnotTable, names: &[&str]) -> Vec<(String, Diagram)> {
    names
        .iter()
        .map(|n| (n.to_string(), table.get(n).expect("known knot").diagram.clone()))
        .collect()
}
