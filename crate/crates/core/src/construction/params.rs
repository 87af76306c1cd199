use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{checked_pow, gcd, lcm};
use crate::error::{Error, Result};
use crate::galois::{Field, FqElem};

/// Which defining set the coordinates run over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// L = {a + bu + cv + duv : a ∈ D}.
    Lift,
    /// L' = all units of the extension ring. N is ignored.
    Units,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "lift" => Ok(Variant::Lift),
            "units" => Ok(Variant::Units),
            other => Err(format!("unknown variant {other:?} (expected lift or units)")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Lift => "lift",
            Variant::Units => "units",
        })
    }
}

#[derive(Clone, Debug)]
pub struct CodeParams {
    pub field: Arc<Field>,
    /// N, a positive divisor of p^m - 1.
    pub order: u64,
    pub variant: Variant,
}

impl CodeParams {
    pub fn new(field: Arc<Field>, order: u64, variant: Variant) -> CodeParams {
        CodeParams { field, order, variant }
    }

    /// Convenience constructor with the default modulus.
    pub fn build(p: u64, m: usize, order: u64, variant: Variant) -> Result<CodeParams> {
        Ok(CodeParams::new(Arc::new(Field::new(p, m, None)?), order, variant))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedParams {
    pub p: u64,
    pub m: usize,
    pub order: u64,
    pub variant: Variant,
    /// lcm(N, (p^m-1)/(p-1)).
    pub n1: u64,
    /// gcd(N, (p^m-1)/(p-1)).
    pub n2: u64,
    /// |D| = N₁/N.
    pub n: u64,
    #[serde(skip)]
    pub defining_set: Vec<FqElem>,
    /// |L| or |L'|.
    pub coordinate_count: u64,
    /// 4·|L|.
    pub gray_length: u64,
    /// p^(4m), the number of ring elements r.
    pub codeword_count: u64,
    pub notes: Vec<String>,
}

impl DerivedParams {
    /// Entry-operations needed to enumerate every codeword.
    pub fn exhaustive_work(&self) -> u128 {
        self.codeword_count as u128 * self.coordinate_count as u128
    }
}

pub fn derive_params(cp: &CodeParams) -> Result<DerivedParams> {
    let field = &cp.field;
    let (p, m, q) = (field.characteristic(), field.degree(), field.order());
    let group = q - 1;
    if cp.order == 0 || group % cp.order != 0 {
        return Err(Error::OrderDoesNotDivide { order: cp.order, group });
    }
    let codeword_count = match checked_pow(p, 4 * m) {
        Some(c) if c < (1 << 63) => c,
        _ => return Err(Error::CodeTooLarge { p, exponent: 4 * m }),
    };
    let projective = group / (p - 1);
    let n1 = lcm(cp.order, projective);
    let n2 = gcd(cp.order, projective);
    let n = n1 / cp.order;
    let defining_set = build_defining_set(field, cp.order, n);

    let q3 = q * q * q;
    let x0_count = match cp.variant {
        Variant::Lift => n,
        Variant::Units => group,
    };
    let coordinate_count = x0_count * q3;
    let mut notes = Vec::new();
    if cp.variant == Variant::Units {
        notes.push(format!(
            "variant units ignores N = {}: coordinates run over all {} units",
            cp.order, coordinate_count
        ));
    }
    Ok(DerivedParams {
        p,
        m,
        order: cp.order,
        variant: cp.variant,
        n1,
        n2,
        n,
        defining_set,
        coordinate_count,
        gray_length: 4 * coordinate_count,
        codeword_count,
        notes,
    })
}

/// D = {ξ^(N(j-1)) : j = 1..n}.
pub fn build_defining_set(field: &Field, order: u64, n: u64) -> Vec<FqElem> {
    (0..n).map(|j| field.xi_pow(order * j)).collect()
}

/// Whether no two elements of `set` differ by a factor in F_p*.
pub fn is_projectively_distinct(field: &Field, set: &[FqElem]) -> bool {
    let projective = (field.order() - 1) / (field.characteristic() - 1);
    let mut residues: Vec<u64> =
        set.iter().map(|&x| field.discrete_log(x).map(|k| k % projective).unwrap_or(u64::MAX)).collect();
    residues.sort_unstable();
    let before = residues.len();
    residues.dedup();
    residues.len() == before && !residues.contains(&u64::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u64, m: usize, order: u64, variant: Variant) -> DerivedParams {
        derive_params(&CodeParams::build(p, m, order, variant).unwrap()).unwrap()
    }

    #[test]
    fn small_parameter_sets() {
        let d = params(3, 2, 1, Variant::Lift);
        assert_eq!((d.n1, d.n2, d.n, d.coordinate_count, d.gray_length), (4, 1, 4, 2916, 11664));

        let d = params(3, 2, 2, Variant::Lift);
        assert_eq!((d.n1, d.n2, d.n, d.coordinate_count), (4, 2, 2, 1458));

        let d = params(3, 4, 4, Variant::Lift);
        assert_eq!((d.n1, d.n2, d.n), (40, 4, 10));
        assert_eq!(d.coordinate_count, 10 * 3u64.pow(12));

        let d = params(3, 2, 1, Variant::Units);
        assert_eq!(d.coordinate_count, 5832);
        assert_eq!(d.notes.len(), 1);
    }

    #[test]
    fn lcm_gcd_identity() {
        for (p, m) in [(3u64, 2usize), (3, 4), (5, 2), (7, 2), (3, 3)] {
            let q = p.pow(m as u32);
            let projective = (q - 1) / (p - 1);
            for order in (1..q).filter(|n| (q - 1) % n == 0) {
                let d = params(p, m, order, Variant::Lift);
                assert_eq!(d.n1 * d.n2, order * projective);
                assert_eq!(d.gray_length, 4 * d.n1 * q * q * q / order);
                let field = Field::new(p, m, None).unwrap();
                assert!(is_projectively_distinct(&field, &d.defining_set));
                assert_eq!(d.defining_set.len() as u64, d.n);
            }
        }
    }

    #[test]
    fn defining_set_examples() {
        let field = Field::new(3, 2, None).unwrap();
        let d = params(3, 2, 1, Variant::Lift).defining_set;
        let expected: Vec<FqElem> = (0..4).map(|k| field.xi_pow(k)).collect();
        assert_eq!(d, expected);

        let d = params(3, 2, 8, Variant::Lift);
        assert_eq!(d.defining_set, vec![field.one()]);

        // Full N = 1 set has (p^m-1)/(p-1) elements.
        assert_eq!(params(5, 2, 1, Variant::Lift).n, 6);
    }

    #[test]
    fn rejects_bad_order_and_overflow() {
        let cp = CodeParams::build(3, 2, 7, Variant::Lift).unwrap();
        assert!(matches!(derive_params(&cp), Err(Error::OrderDoesNotDivide { order: 7, group: 8 })));
        let cp = CodeParams::build(3, 10, 1, Variant::Lift).unwrap();
        assert!(matches!(derive_params(&cp), Err(Error::CodeTooLarge { .. })));
        assert!("lift".parse::<Variant>().is_ok());
        assert!("other".parse::<Variant>().is_err());
    }
}
