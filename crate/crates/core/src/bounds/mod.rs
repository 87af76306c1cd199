//! Griesmer optimality, sphere packing, dual distance and minimal codewords.

mod dual;
mod griesmer;
mod minimal;

pub use dual::{
    dual_lee_distance, sparse_lee_weight, syndrome, weight_one_pairs, weight_two_at, DualDistance,
    DualDistanceResult, PairTable, WitnessEntry, DUAL_SEARCH_LIMIT,
};
pub use griesmer::{
    griesmer_optimal, griesmer_sum, sphere_packing_excludes, two_weight_ceiling_identity,
    CeilingIdentityCheck, CeilingTerm, GriesmerStatus, GriesmerVerdict,
};
pub use minimal::{
    minimal_codewords_bruteforce, minimality_check, three_weight_minimality_condition, two_weight_margin,
    AccessStructure, MinimalCodewords, SssVerdict, BRUTEFORCE_LIMIT,
};
