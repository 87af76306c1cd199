use serde::Serialize;

use super::dual::DualDistance;
use crate::analysis::WeightDistribution;
use crate::arith::pow_u128;
use crate::error::{Error, Result};

/// Largest code accepted by [`minimal_codewords_bruteforce`].
pub const BRUTEFORCE_LIMIT: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AccessStructure {
    /// Some participant belongs to every minimal access set.
    Dictatorial,
    /// Every participant belongs to the same number of minimal access sets.
    Democratic,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SssVerdict {
    pub p: u64,
    pub w_min: u64,
    pub w_max: u64,
    /// p·w_min - (p-1)·w_max; positive exactly when the ratio test passes.
    pub margin: i128,
    pub all_minimal: bool,
    pub classification: AccessStructure,
}

/// Ratio test w_min/w_max > (p-1)/p on the nonzero weights, with the access
/// structure read off the dual distance when every codeword is minimal.
pub fn minimality_check(dist: &WeightDistribution, p: u64, dual: Option<DualDistance>) -> Option<SssVerdict> {
    let (w_min, w_max) = (dist.min_nonzero()?, dist.max_nonzero()?);
    let margin = p as i128 * w_min as i128 - (p as i128 - 1) * w_max as i128;
    let all_minimal = margin > 0;
    let classification = match (all_minimal, dual) {
        (false, _) | (true, None) => AccessStructure::Undetermined,
        (true, Some(DualDistance::Exact(2))) => AccessStructure::Dictatorial,
        (true, Some(DualDistance::Exact(d) | DualDistance::AtLeast(d))) if d >= 3 => {
            AccessStructure::Democratic
        }
        (true, Some(_)) => AccessStructure::Undetermined,
    };
    Some(SssVerdict { p, w_min, w_max, margin, all_minimal, classification })
}

/// The margin p·w_min - (p-1)·w_max expected for the two-weight codes:
/// 4p^(4m-1) - 4p^(3m) for the lifted set, (p-1) times that for unit coordinates.
pub fn two_weight_margin(p: u64, m: usize, units: bool) -> i128 {
    let base = 4 * pow_u128(p, 4 * m - 1) as i128 - 4 * pow_u128(p, 3 * m) as i128;
    if units {
        (p as i128 - 1) * base
    } else {
        base
    }
}

/// N₂·p < p^(m/2) + 1, the sufficient condition for the three-weight codes;
/// false for odd m.
pub fn three_weight_minimality_condition(p: u64, m: usize, n2: u64) -> bool {
    m.is_multiple_of(2) && (n2 as u128) * (p as u128) < pow_u128(p, m / 2) + 1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalCodewords {
    pub nonzero: usize,
    /// Indices into the input of the minimal codewords.
    pub minimal: Vec<usize>,
    /// Minimal codewords up to F_p* scaling.
    pub projective: usize,
}

fn support(word: &[u64]) -> Vec<u64> {
    let mut bits = vec![0u64; word.len().div_ceil(64)];
    for (i, &s) in word.iter().enumerate() {
        if s != 0 {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn is_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// Minimal codewords of an explicit linear code by pairwise support inclusion.
///
/// A nonzero codeword is minimal when every nonzero codeword whose support it
/// contains is one of its own scalar multiples (which share its support).
pub fn minimal_codewords_bruteforce(words: &[Vec<u64>], p: u64) -> Result<MinimalCodewords> {
    if words.len() as u64 > BRUTEFORCE_LIMIT {
        return Err(Error::TooLarge { what: "code", size: words.len() as u64, limit: BRUTEFORCE_LIMIT });
    }
    let nonzero: Vec<(usize, Vec<u64>, u32)> = words
        .iter()
        .enumerate()
        .filter(|(_, w)| w.iter().any(|&s| s != 0))
        .map(|(i, w)| {
            let s = support(w);
            let size = s.iter().map(|b| b.count_ones()).sum();
            (i, s, size)
        })
        .collect();
    let minimal: Vec<usize> = nonzero
        .iter()
        .filter(|(_, s, size)| !nonzero.iter().any(|(_, t, tsize)| tsize < size && is_subset(t, s)))
        .map(|(i, _, _)| *i)
        .collect();
    let projective = minimal.len() / (p as usize - 1);
    Ok(MinimalCodewords { nonzero: nonzero.len(), minimal, projective })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::Method;

    #[test]
    fn ratio_test() {
        let d = WeightDistribution::from_rows(Method::Exhaustive, [(0, 1), (7776, 6552), (8748, 8)]);
        let v = minimality_check(&d, 3, Some(DualDistance::Exact(2))).unwrap();
        assert!(v.all_minimal);
        assert_eq!(v.classification, AccessStructure::Dictatorial);
        assert_eq!(v.margin, two_weight_margin(3, 2, false));
        let v = minimality_check(&d, 3, Some(DualDistance::AtLeast(3))).unwrap();
        assert_eq!(v.classification, AccessStructure::Democratic);

        let synthetic = WeightDistribution::from_rows(Method::Exhaustive, [(1, 5), (10, 5)]);
        let v = minimality_check(&synthetic, 3, Some(DualDistance::Exact(2))).unwrap();
        assert!(!v.all_minimal);
        assert_eq!(v.classification, AccessStructure::Undetermined);
        assert!(minimality_check(&WeightDistribution::new(Method::Exhaustive), 3, None).is_none());
    }

    #[test]
    fn margins() {
        assert_eq!(two_weight_margin(3, 2, false), 4 * 2187 - 4 * 729);
        assert_eq!(two_weight_margin(3, 2, true), 2 * (4 * 2187 - 4 * 729));
        assert!(!three_weight_minimality_condition(3, 4, 4));
        assert!(three_weight_minimality_condition(3, 6, 2));
    }

    #[test]
    fn bruteforce_small_codes() {
        let rep = vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]];
        let m = minimal_codewords_bruteforce(&rep, 3).unwrap();
        assert_eq!((m.minimal, m.projective), (vec![1, 2], 1));
        let zero = minimal_codewords_bruteforce(&[vec![0, 0]], 3).unwrap();
        assert!(zero.minimal.is_empty());
        // Span of (1,0,1) and (0,1,1) over F_3: (1,1,2) covers both generators.
        let mut span = Vec::new();
        for a in 0..3u64 {
            for b in 0..3u64 {
                span.push(vec![a, b, (a + b) % 3]);
            }
        }
        let m = minimal_codewords_bruteforce(&span, 3).unwrap();
        assert_eq!(m.nonzero, 8);
        assert_eq!(m.projective, 3);
        assert!(!m.minimal.contains(&4));
        assert!(minimal_codewords_bruteforce(&vec![vec![0]; 10_001], 3).is_err());
    }
}
