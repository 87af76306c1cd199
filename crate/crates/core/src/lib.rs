//! Trace codes over the local ring R = F_p + uF_p + vF_p + uvF_p.
//!
//! Codes are built by evaluating the trace of the degree-m extension ring on
//! one of two defining sets, Gray-mapped to p-ary codes, and measured by exact
//! enumeration of Lee weights. Closed-form weight tables, Griesmer optimality,
//! dual distance and minimal-codeword checks are provided alongside.

pub mod analysis;
pub mod arith;
pub mod bounds;
pub mod construction;
pub mod error;
pub mod galois;
pub mod ring;

pub use analysis::{Method, Prediction, Regime, WeightDistribution};
pub use construction::{CodeParams, DerivedParams, TraceCode, Variant};
pub use error::{Error, Result};
pub use galois::{Field, FqElem};
pub use ring::{Ring, RingClass, RingElem};
