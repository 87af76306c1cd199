//! Minimum Lee distance of the ring dual C^⊥.
//!
//! For y indexed by the coordinates x ∈ L, ⟨Ev(r), y⟩ = Σ_x Tr(rx)·y_x =
//! Tr(r·Σ_x y_x·x) because Tr is linear over the base ring. Tr is
//! nondegenerate, so y ∈ C^⊥ exactly when the syndrome Σ_x y_x·x vanishes.

use rayon::prelude::*;
use serde::Serialize;

use crate::construction::TraceCode;
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Above this many (coordinate, pair) tests the weight-2 phase scans only a
/// prefix of the coordinates.
pub const DUAL_SEARCH_LIMIT: u64 = 2_000_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DualDistance {
    Exact(u32),
    AtLeast(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub position: u64,
    pub coordinate: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualDistanceResult {
    pub distance: DualDistance,
    pub cap: u32,
    /// Sparse dual vector realizing `distance`, values in the base ring.
    pub witness: Vec<WitnessEntry>,
    #[serde(skip)]
    pub witness_raw: Vec<(u64, RingElem)>,
    /// Whether every weight below the cap was searched in full.
    pub exhaustive: bool,
    pub weight_one_candidates: u64,
}

/// Σ_x y_x·x for a sparse y with base-ring entries.
pub fn syndrome(code: &TraceCode, y: &[(u64, RingElem)]) -> Result<RingElem> {
    let ring = code.ring();
    let mut acc = ring.zero();
    for (pos, value) in y {
        let v = ring.embed_base(code.base_ring(), value)?;
        acc = ring.add(&acc, &ring.mul(&v, &code.coordinate(*pos)));
    }
    Ok(acc)
}

pub fn sparse_lee_weight(code: &TraceCode, y: &[(u64, RingElem)]) -> Result<u64> {
    y.iter().map(|(_, v)| code.base_ring().lee_weight(v)).sum()
}

/// (α, β, -β⁻¹α) for every ordered pair of Lee-weight-1 base-ring elements,
/// the factor lifted into the code's ring.
pub type PairTable = Vec<(RingElem, RingElem, RingElem)>;

pub fn weight_one_pairs(code: &TraceCode) -> Result<PairTable> {
    let base = code.base_ring();
    let lee_one = base.lee_weight_one_elements()?;
    let mut pairs = Vec::with_capacity(lee_one.len() * lee_one.len());
    for alpha in &lee_one {
        for beta in &lee_one {
            let inv = base.inverse(beta).expect("Lee-weight-1 elements are units");
            let factor = code.ring().embed_base(base, &base.neg(&base.mul(&inv, alpha)))?;
            pairs.push((*alpha, *beta, factor));
        }
    }
    Ok(pairs)
}

/// A weight-2 dual vector α at `pos`, β at x' = -β⁻¹αx, if x' ∈ L.
pub fn weight_two_at(code: &TraceCode, pos: u64, pairs: &PairTable) -> Option<Vec<(u64, RingElem)>> {
    let x = code.coordinate(pos);
    pairs.iter().find_map(|(alpha, beta, factor)| {
        let other = code.locate(&code.ring().mul(factor, &x))?;
        (other != pos).then(|| vec![(pos, *alpha), (other, *beta)])
    })
}

/// Searches dual vectors of Lee weight below `cap` (2 or 3).
pub fn dual_lee_distance(code: &TraceCode, cap: u32) -> Result<DualDistanceResult> {
    if !(2..=3).contains(&cap) {
        return Err(Error::UnsupportedCap(cap));
    }
    let base = code.base_ring();
    let ring = code.ring();
    let lee_one = base.lee_weight_one_elements()?;

    // Weight 1: α·x = 0 with lee(α) = 1. Every coordinate is a unit, so this
    // can only happen for α = 0; searched anyway as a guard.
    let embedded: Vec<RingElem> = lee_one.iter().map(|a| ring.embed_base(base, a)).collect::<Result<_>>()?;
    let len = code.len();
    let hit = (0..len).into_par_iter().find_map_first(|pos| {
        let x = code.coordinate(pos);
        embedded.iter().zip(&lee_one).find(|(a, _)| ring.mul(a, &x).is_zero()).map(|(_, a)| vec![(pos, *a)])
    });
    let weight_one_candidates = len * lee_one.len() as u64;
    if let Some(w) = hit {
        return finish(code, DualDistance::Exact(1), cap, w, true, weight_one_candidates);
    }
    if cap == 2 {
        return finish(code, DualDistance::AtLeast(2), cap, Vec::new(), true, weight_one_candidates);
    }

    // Weight 2 on one coordinate (lee(α) = 2, α·x = 0) is impossible for the
    // same reason. On two coordinates: α·x + β·x' = 0.
    let pairs = weight_one_pairs(code)?;
    let per_coordinate = pairs.len() as u64;
    let scan = if len.saturating_mul(per_coordinate) > DUAL_SEARCH_LIMIT {
        DUAL_SEARCH_LIMIT / per_coordinate
    } else {
        len
    };
    let found = (0..scan).into_par_iter().find_map_first(|pos| weight_two_at(code, pos, &pairs));
    match found {
        Some(w) => finish(code, DualDistance::Exact(2), cap, w, true, weight_one_candidates),
        None => finish(code, DualDistance::AtLeast(3), cap, Vec::new(), scan == len, weight_one_candidates),
    }
}

fn finish(
    code: &TraceCode,
    distance: DualDistance,
    cap: u32,
    witness_raw: Vec<(u64, RingElem)>,
    exhaustive: bool,
    weight_one_candidates: u64,
) -> Result<DualDistanceResult> {
    if let DualDistance::Exact(d) = distance {
        assert!(syndrome(code, &witness_raw)?.is_zero(), "dual witness fails the syndrome equation");
        assert_eq!(sparse_lee_weight(code, &witness_raw)?, d as u64, "dual witness has the wrong weight");
    }
    let witness = witness_raw
        .iter()
        .map(|(pos, v)| WitnessEntry {
            position: *pos,
            coordinate: code.ring().display(&code.coordinate(*pos)).to_string(),
            value: code.base_ring().display(v).to_string(),
        })
        .collect();
    Ok(DualDistanceResult { distance, cap, witness, witness_raw, exhaustive, weight_one_candidates })
}
