use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::code::TraceCode;
use crate::error::{Error, Result};
use crate::ring::RingElem;

/// Coordinate sets up to this size may be spot-checked.
pub const ACTION_SIZE_LIMIT: u64 = 10_000;

#[derive(Clone, Debug, Serialize)]
pub struct GroupActionReport {
    pub trials: usize,
    pub seed: u64,
    /// Every tested g induced a bijection of the coordinate positions.
    pub bijective: bool,
    /// Some g needed an F_p* rescaling to land back in L.
    pub rescaled: bool,
    pub failures: Vec<String>,
}

impl GroupActionReport {
    pub fn passed(&self) -> bool {
        self.bijective && self.failures.is_empty()
    }
}

/// The coordinate map induced by g: position i (holding x) goes to the
/// position of x' together with λ ∈ F_p*, where g·x = λ·x' and x' ∈ L.
///
/// For the unit set λ is always 1. For the lifted set the product g·x has x₀
/// component in D·F_p*, so it is a unique F_p* multiple of a member of L.
pub fn coordinate_action(code: &TraceCode, g: &RingElem) -> Result<Vec<(u64, u64)>> {
    if code.locate(g).is_none() {
        return Err(Error::NotInDefiningSet(code.ring().display(g).to_string()));
    }
    let ring = code.ring();
    let p = code.field().characteristic();
    let inverses: Vec<(u64, u64)> =
        (1..p).map(|l| (l, (1..p).find(|i| i * l % p == 1).expect("p is prime"))).collect();
    code.coordinates()
        .map(|x| {
            let y = ring.mul(g, &x);
            inverses
                .iter()
                .find_map(|&(lambda, inv)| code.locate(&ring.scale(inv, &y)).map(|pos| (pos, lambda)))
                .ok_or_else(|| Error::NotInDefiningSet(ring.display(&y).to_string()))
        })
        .collect()
}

/// For random g ∈ L and r, checks that moving the entries of Ev(r) along the
/// coordinate map of g gives Ev(r·g), i.e. Tr(r(gx)) = Tr((rg)x).
pub fn group_action_spotcheck(code: &TraceCode, trials: usize, seed: u64) -> Result<GroupActionReport> {
    if code.len() > ACTION_SIZE_LIMIT {
        return Err(Error::TooLarge { what: "coordinate set", size: code.len(), limit: ACTION_SIZE_LIMIT });
    }
    let ring = code.ring();
    let base = code.base_ring();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report =
        GroupActionReport { trials, seed, bijective: true, rescaled: false, failures: Vec::new() };
    for _ in 0..trials {
        let g = code.coordinate(rng.gen_range(0..code.len()));
        let r = ring.from_index(rng.gen_range(0..ring.order()));
        let action = coordinate_action(code, &g)?;

        let mut hit = vec![false; action.len()];
        for &(pos, _) in &action {
            hit[pos as usize] = true;
        }
        if !hit.iter().all(|&h| h) {
            report.bijective = false;
        }
        report.rescaled |= action.iter().any(|&(_, lambda)| lambda != 1);

        let word = code.codeword(&r);
        let expected = code.codeword(&ring.mul(&r, &g));
        let moved: Vec<RingElem> =
            action.iter().map(|&(pos, lambda)| base.scale(lambda, &word[pos as usize])).collect();
        if moved != expected {
            report.failures.push(format!("g = {}, r = {}", ring.display(&g), ring.display(&r)));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::Variant;

    #[test]
    fn identity_acts_trivially() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let action = coordinate_action(&code, &code.ring().one()).unwrap();
        assert!(action.iter().enumerate().all(|(i, &(pos, l))| pos == i as u64 && l == 1));
    }

    #[test]
    fn random_pairs_map_codewords_to_codewords() {
        for variant in [Variant::Lift, Variant::Units] {
            let code = TraceCode::build(3, 2, 1, variant).unwrap();
            let report = group_action_spotcheck(&code, 50, 1).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
            if variant == Variant::Units {
                assert!(!report.rescaled);
            }
        }
    }

    #[test]
    fn rejects_elements_outside_l() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        assert!(matches!(coordinate_action(&code, &code.ring().u()), Err(Error::NotInDefiningSet(_))));
        let minus_one = code.ring().scale(2, &code.ring().one());
        assert!(coordinate_action(&code, &minus_one).is_err());
        let big = TraceCode::build(3, 3, 1, Variant::Lift).unwrap();
        assert!(matches!(group_action_spotcheck(&big, 1, 0), Err(Error::TooLarge { .. })));
    }
}
