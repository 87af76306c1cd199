//! Defining sets, coordinate enumeration and evaluation of the trace codes.

mod action;
mod code;
mod export;
mod params;

pub use action::{group_action_spotcheck, GroupActionReport};
pub use code::{CoordinateSpace, TraceCode};
pub use export::{write_codewords, ExportSidecar, ORDERING_VERSION};
pub use params::{
    build_defining_set, derive_params, is_projectively_distinct, CodeParams, DerivedParams, Variant,
};
