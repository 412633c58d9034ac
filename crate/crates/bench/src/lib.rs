//! Shared inputs for the benchmarks.

use axial_core::{build, CatalogEntry, CatalogParams, Entry, FieldSpec};

pub const FIELDS: [FieldSpec; 2] = [FieldSpec::Rational, FieldSpec::Prime(7)];

pub fn entry(entry: Entry, field: FieldSpec, index_size: Option<usize>) -> CatalogEntry {
    let mut params = CatalogParams::new(entry, field);
    if let Some(n) = index_size {
        params = params.with_index_size(n);
    }
    build(&params).expect("default catalog parameters are valid")
}

/// The largest default catalog entry, a 30-dimensional algebra.
pub fn k2(field: FieldSpec) -> CatalogEntry {
    entry(Entry::K2, field, Some(3))
}
