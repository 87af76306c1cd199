//! Shared fixtures for the benchmarks in `benches/`.

use tracecode::{Field, TraceCode, Variant};

pub fn code(p: u64, m: usize, order: u64, variant: Variant) -> TraceCode {
    TraceCode::build(p, m, order, variant).expect("benchmark parameters are valid")
}

/// The same field with and without exp/log tables.
pub fn field_pair(p: u64, m: usize) -> (Field, Field) {
    let tables = Field::new(p, m, None).expect("valid field");
    let plain = Field::with_table_threshold(p, m, None, 0).expect("valid field");
    (tables, plain)
}
