//! Weight distributions, closed-form predictions and character-sum checks.

mod distribution;
mod identities;
mod predict;

pub use distribution::{
    distribution_by_class, distribution_exhaustive, distribution_ideal_plus_units, ClassDistribution,
    ClassSummary, IdealDistribution, Method, Row, WeightDistribution, DEFAULT_SAMPLES_PER_CLASS,
    DEFAULT_SEED, DEFAULT_WORK_BUDGET,
};
pub use identities::{
    big_theta, gray_isometry_check, theta, trace_nondegeneracy_check, verify_identities,
    weight_from_theta_residual, IdentityCheck, IdentityReport,
};
pub use predict::{
    compare, field_subcode_distribution, minus_one_exponent, predict, predict_all, Comparison, Condition,
    Prediction, Regime, Target,
};
