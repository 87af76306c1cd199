//! Arithmetic in F_p and F_{p^m}, discrete logarithms, cyclotomic classes and
//! character sums.

mod character;
mod dlog;
mod field;
mod poly;

pub use character::{
    additive_character, count_zero_traces, cyclotomic_class, gauss_sum, root_of_unity,
    zero_trace_character_sum, MultChar, CHARACTER_TOLERANCE,
};
pub use dlog::baby_step_giant_step;
pub use field::{parse_modulus, Field, FieldRecord, FqElem, DEFAULT_TABLE_THRESHOLD, MAX_DEGREE};
