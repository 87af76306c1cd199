use serde::Serialize;

use crate::arith::{div_ceil_u128, pow_u128};
use crate::construction::Variant;

/// Σ_{j<k} ⌈d/p^j⌉ with exact integer ceilings.
pub fn griesmer_sum(k: u32, d: u128, p: u64) -> u128 {
    let mut sum = 0u128;
    let mut pj = 1u128;
    for _ in 0..k {
        sum += div_ceil_u128(d, pj);
        pj = pj.saturating_mul(p as u128);
    }
    sum
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GriesmerStatus {
    /// No [n, k, d+1] code passes the Griesmer bound.
    Optimal,
    /// The bound does not rule out d+1.
    Inconclusive,
    /// The bound already fails at d.
    Infeasible,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GriesmerVerdict {
    pub n: u128,
    pub k: u32,
    pub d: u128,
    pub p: u64,
    pub sum_at_d: u128,
    pub sum_at_d_plus_1: u128,
    pub status: GriesmerStatus,
    /// Griesmer-optimal; no code tables are consulted.
    pub optimal: bool,
}

pub fn griesmer_optimal(n: u128, k: u32, d: u128, p: u64) -> GriesmerVerdict {
    let sum_at_d = griesmer_sum(k, d, p);
    let sum_at_d_plus_1 = griesmer_sum(k, d + 1, p);
    let status = if sum_at_d > n {
        GriesmerStatus::Infeasible
    } else if sum_at_d_plus_1 > n {
        GriesmerStatus::Optimal
    } else {
        GriesmerStatus::Inconclusive
    };
    GriesmerVerdict {
        n,
        k,
        d,
        p,
        sum_at_d,
        sum_at_d_plus_1,
        status,
        optimal: status == GriesmerStatus::Optimal,
    }
}

/// Sphere-packing test at distance 3: a p-ary code of length n with k check
/// symbols and minimum distance at least 3 needs p^k ≥ 1 + n(p-1). Returns
/// true when this fails, so distance 3 is excluded.
pub fn sphere_packing_excludes(n: u128, k: u32, p: u64) -> bool {
    match (p as u128).checked_pow(k) {
        Some(pk) => pk < 1 + n * (p as u128 - 1),
        None => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CeilingTerm {
    pub j: u32,
    pub exact: u128,
    pub closed_form: u128,
}

/// Comparison of the per-term closed-form ceilings used for the two-weight
/// codes against exact ceilings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CeilingIdentityCheck {
    pub p: u64,
    pub m: usize,
    pub variant: Variant,
    pub holds: bool,
    pub mismatches: Vec<CeilingTerm>,
    pub exact_sum: u128,
    pub closed_form_sum: u128,
}

/// Lift: ⌈d/p^j⌉ with d = 4p^(4m-1) - 4p^(3m-1), closed form
/// 4p^(3m-1-j)(p^m - 1) below j = 3m and 4p^(4m-j-1) from there on.
/// Units: ⌈(d'+1)/p^j⌉ with d' = (p-1)d and its three-piece closed form.
pub fn two_weight_ceiling_identity(p: u64, m: usize, variant: Variant) -> CeilingIdentityCheck {
    let pw = |e: usize| pow_u128(p, e);
    let (m3, m4) = (3 * m, 4 * m);
    let d = 4 * pw(m4 - 1) - 4 * pw(m3 - 1);
    let (numerator, closed_form_sum) = match variant {
        Variant::Lift => (d, (4 * pw(m4) - 4 * pw(m3)) / (p as u128 - 1)),
        Variant::Units => ((p as u128 - 1) * d + 1, 4 * (pw(m4) - pw(m3)) + m3 as u128 - 3),
    };
    let mut mismatches = Vec::new();
    let mut exact_sum = 0;
    for j in 0..m4 {
        let exact = div_ceil_u128(numerator, pw(j));
        let closed_form = match variant {
            Variant::Lift if j < m3 => 4 * pw(m3 - 1 - j) * (pw(m) - 1),
            Variant::Lift => 4 * pw(m4 - j - 1),
            Variant::Units if j < m3 => 4 * (pw(m4 - j) + pw(m3 - j - 1) - pw(m3 - j) - pw(m4 - j - 1)) + 1,
            Variant::Units if j == m3 => 4 * (pw(m) - pw(m - 1) - 1) + 1,
            Variant::Units => 4 * (pw(m4 - j) - pw(m4 - j - 1)),
        };
        exact_sum += exact;
        if exact != closed_form {
            mismatches.push(CeilingTerm { j: j as u32, exact, closed_form });
        }
    }
    CeilingIdentityCheck {
        p,
        m,
        variant,
        holds: mismatches.is_empty() && exact_sum == closed_form_sum,
        mismatches,
        exact_sum,
        closed_form_sum,
    }
}
