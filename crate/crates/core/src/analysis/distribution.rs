use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::TraceCode;
use crate::error::{Error, Result};
use crate::galois::FqElem;
use crate::ring::{RingClass, RingElem};

/// Default limit on codewords × coordinates for exhaustive enumeration.
pub const DEFAULT_WORK_BUDGET: u128 = 10_000_000_000;

/// Default number of random members checked per class.
pub const DEFAULT_SAMPLES_PER_CLASS: usize = 500;

/// Default RNG seed for sampling.
pub const DEFAULT_SEED: u64 = 0x5eed_2017;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    ClassBased,
    Sampled,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::ClassBased => "class_based",
            Method::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Row {
    pub weight: u64,
    pub frequency: u64,
}

/// Exact multiset weight → frequency.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightDistribution {
    pub entries: BTreeMap<u64, u64>,
    pub method: Method,
    pub total: u64,
}

impl WeightDistribution {
    pub fn new(method: Method) -> WeightDistribution {
        WeightDistribution { entries: BTreeMap::new(), method, total: 0 }
    }

    pub fn from_rows(method: Method, rows: impl IntoIterator<Item = (u64, u64)>) -> WeightDistribution {
        let mut d = WeightDistribution::new(method);
        for (w, f) in rows {
            d.add(w, f);
        }
        d
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        if count == 0 {
            return;
        }
        *self.entries.entry(weight).or_insert(0) += count;
        self.total += count;
    }

    /// Associative, commutative merge.
    pub fn merge(mut self, other: &WeightDistribution) -> WeightDistribution {
        for (&w, &f) in &other.entries {
            self.add(w, f);
        }
        self
    }

    pub fn frequency(&self, weight: u64) -> u64 {
        self.entries.get(&weight).copied().unwrap_or(0)
    }

    /// Rows with nonzero weight, ascending.
    pub fn nonzero_rows(&self) -> Vec<Row> {
        self.entries
            .iter()
            .filter(|(&w, _)| w != 0)
            .map(|(&weight, &frequency)| Row { weight, frequency })
            .collect()
    }

    pub fn rows(&self) -> Vec<Row> {
        self.entries.iter().map(|(&weight, &frequency)| Row { weight, frequency }).collect()
    }

    pub fn nonzero_weights(&self) -> Vec<u64> {
        self.nonzero_rows().iter().map(|r| r.weight).collect()
    }

    pub fn min_nonzero(&self) -> Option<u64> {
        self.entries.keys().copied().find(|&w| w != 0)
    }

    pub fn max_nonzero(&self) -> Option<u64> {
        self.entries.keys().copied().rfind(|&w| w != 0)
    }

    /// Weight enumerator such as `1 + 6552x^7776 + 8x^8748`.
    pub fn enumerator(&self) -> String {
        self.entries
            .iter()
            .map(|(&w, &f)| if w == 0 { f.to_string() } else { format!("{f}x^{w}") })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn histogram<I>(weights: I, method: Method) -> WeightDistribution
where
    I: ParallelIterator<Item = u64>,
{
    weights
        .fold(
            || WeightDistribution::new(method),
            |mut acc, w| {
                acc.add(w, 1);
                acc
            },
        )
        .reduce(|| WeightDistribution::new(method), |a, b| a.merge(&b))
}

/// Lee weights of every codeword, counted exactly.
pub fn distribution_exhaustive(code: &TraceCode, budget: u128) -> Result<WeightDistribution> {
    let required = code.derived().exhaustive_work();
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let ring = code.ring();
    Ok(histogram(
        (0..ring.order()).into_par_iter().map(|k| code.lee_weight(&ring.from_index(k))),
        Method::Exhaustive,
    ))
}

/// One class of ring elements on which the Lee weight is constant.
#[derive(Clone, Debug, Serialize)]
pub struct ClassSummary {
    pub class: String,
    pub representative: String,
    pub weight: u64,
    pub cardinality: u64,
    /// Members whose weight was recomputed and compared.
    pub checked: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassDistribution {
    pub distribution: WeightDistribution,
    pub classes: Vec<ClassSummary>,
    pub seed: u64,
}

fn random_field_nonzero(code: &TraceCode, rng: &mut ChaCha8Rng) -> FqElem {
    code.field().xi_pow(rng.gen_range(0..code.field().order() - 1))
}

fn random_field(code: &TraceCode, rng: &mut ChaCha8Rng) -> FqElem {
    code.field().element(rng.gen_range(0..code.field().order())).expect("in range")
}

fn random_unit(code: &TraceCode, rng: &mut ChaCha8Rng) -> RingElem {
    RingElem::new(
        random_field_nonzero(code, rng),
        random_field(code, rng),
        random_field(code, rng),
        random_field(code, rng),
    )
}

fn random_other_maximal(code: &TraceCode, rng: &mut ChaCha8Rng) -> RingElem {
    loop {
        let (b, c) = (random_field(code, rng), random_field(code, rng));
        if !(b.is_zero() && c.is_zero()) {
            return RingElem::new(FqElem::ZERO, b, c, random_field(code, rng));
        }
    }
}

/// Verifies that every member in `members` has weight `expected`.
fn check_constant(code: &TraceCode, class: &str, expected: u64, members: &[RingElem]) -> Result<()> {
    let bad = members.par_iter().map(|r| (r, code.lee_weight(r))).find_first(|&(_, w)| w != expected);
    match bad {
        Some((r, found)) => Err(Error::ConstancyViolation {
            class: class.to_string(),
            witness: code.ring().display(r).to_string(),
            expected,
            found,
        }),
        None => Ok(()),
    }
}

/// Weight distribution from one representative per weight class:
/// the N₂ cyclotomic classes ξ^j⟨ξ^N₂⟩·uv, the rest of the maximal ideal,
/// and the units. Each class is validated on up to `samples` members (all of
/// them when the class is that small).
pub fn distribution_by_class(code: &TraceCode, samples: usize, seed: u64) -> Result<ClassDistribution> {
    let field = code.field();
    let ring = code.ring();
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dist = WeightDistribution::new(Method::ClassBased);
    let mut classes = Vec::new();
    dist.add(0, 1);

    let n2 = code.uv_class_order();
    let class_size = (q - 1) / n2;
    for j in 0..n2 {
        let rep = RingElem::new(FqElem::ZERO, FqElem::ZERO, FqElem::ZERO, field.xi_pow(j));
        let weight = code.lee_weight(&rep);
        let members: Vec<RingElem> = if class_size as usize <= samples {
            (0..class_size).map(|k| RingElem { d: field.xi_pow(j + n2 * k), ..RingElem::ZERO }).collect()
        } else {
            (0..samples)
                .map(|_| RingElem {
                    d: field.xi_pow(j + n2 * rng.gen_range(0..class_size)),
                    ..RingElem::ZERO
                })
                .collect()
        };
        let label = format!("uv-line class {j} of order {n2}");
        check_constant(code, &label, weight, &members)?;
        dist.add(weight, class_size);
        classes.push(ClassSummary {
            class: label,
            representative: ring.display(&rep).to_string(),
            weight,
            cardinality: class_size,
            checked: members.len() as u64,
        });
    }

    type Sampler = fn(&TraceCode, &mut ChaCha8Rng) -> RingElem;
    let rest: [(&str, RingElem, u64, Sampler); 2] = [
        ("other-maximal", ring.u(), q * q * q - q, random_other_maximal),
        ("unit", ring.one(), (q - 1) * q * q * q, random_unit),
    ];
    for (label, rep, cardinality, sampler) in rest {
        let weight = code.lee_weight(&rep);
        let members: Vec<RingElem> = (0..samples).map(|_| sampler(code, &mut rng)).collect();
        check_constant(code, label, weight, &members)?;
        dist.add(weight, cardinality);
        classes.push(ClassSummary {
            class: label.to_string(),
            representative: ring.display(&rep).to_string(),
            weight,
            cardinality,
            checked: members.len() as u64,
        });
    }
    Ok(ClassDistribution { distribution: dist, classes, seed })
}

/// Exhaustive over the maximal ideal, sampled over the units.
#[derive(Clone, Debug, Serialize)]
pub struct IdealDistribution {
    /// Combined distribution; units are extrapolated from the common sampled weight.
    pub distribution: WeightDistribution,
    pub uv_line: WeightDistribution,
    pub other_maximal: WeightDistribution,
    pub unit_weight: u64,
    pub unit_samples: usize,
    pub seed: u64,
}

pub fn distribution_ideal_plus_units(
    code: &TraceCode,
    unit_samples: usize,
    seed: u64,
) -> Result<IdealDistribution> {
    let q = code.field().order();
    let ring = code.ring();
    let ideal_size = q * q * q;
    // Maximal-ideal elements are exactly the ring indices below q³ (a = 0).
    let weighed: Vec<(RingClass, u64)> = (0..ideal_size)
        .into_par_iter()
        .map(|k| {
            let r = ring.from_index(k);
            (ring.classify(&r), code.lee_weight(&r))
        })
        .collect();
    let mut uv_line = WeightDistribution::new(Method::Exhaustive);
    let mut other_maximal = WeightDistribution::new(Method::Exhaustive);
    let mut distribution = WeightDistribution::new(Method::Sampled);
    for &(class, w) in &weighed {
        match class {
            RingClass::UvLine => uv_line.add(w, 1),
            RingClass::OtherMaximal => other_maximal.add(w, 1),
            _ => {}
        }
        distribution.add(w, 1);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units: Vec<RingElem> = (0..unit_samples).map(|_| random_unit(code, &mut rng)).collect();
    let unit_weight = code.lee_weight(&ring.one());
    check_constant(code, "unit", unit_weight, &units)?;
    distribution.add(unit_weight, (q - 1) * q * q * q);
    Ok(IdealDistribution { distribution, uv_line, other_maximal, unit_weight, unit_samples, seed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::Variant;

    #[test]
    fn merge_is_associative_and_commutative() {
        let a = WeightDistribution::from_rows(Method::Exhaustive, [(1, 2), (3, 4)]);
        let b = WeightDistribution::from_rows(Method::Exhaustive, [(3, 1), (5, 5)]);
        let c = WeightDistribution::from_rows(Method::Exhaustive, [(0, 1)]);
        assert_eq!(a.clone().merge(&b).merge(&c), a.clone().merge(&b.clone().merge(&c)));
        assert_eq!(a.clone().merge(&b), b.clone().merge(&a));
        let m = a.merge(&b).merge(&c);
        assert_eq!(m.total, 13);
        assert_eq!(m.enumerator(), "1 + 2x^1 + 5x^3 + 5x^5");
        assert_eq!((m.min_nonzero(), m.max_nonzero()), (Some(1), Some(5)));
    }

    #[test]
    fn representative_weights_at_3_2() {
        let lift = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        let ring = lift.ring();
        assert_eq!(lift.lee_weight(&ring.zero()), 0);
        assert_eq!(lift.lee_weight(&ring.uv()), 8748);
        assert_eq!(lift.lee_weight(&ring.one()), 7776);
        let units = TraceCode::build(3, 2, 1, Variant::Units).unwrap();
        assert_eq!(units.lee_weight(&ring.uv()), 17496);
    }

    #[test]
    fn class_based_matches_exhaustive_at_3_2() {
        for (order, variant) in [(1, Variant::Lift), (2, Variant::Lift), (1, Variant::Units)] {
            let code = TraceCode::build(3, 2, order, variant).unwrap();
            let exhaustive = distribution_exhaustive(&code, DEFAULT_WORK_BUDGET).unwrap();
            let by_class = distribution_by_class(&code, 50, 3).unwrap();
            assert_eq!(exhaustive.entries, by_class.distribution.entries);
            assert_eq!(exhaustive.total, 6561);
        }
    }

    #[test]
    fn budget_refusal() {
        let code = TraceCode::build(3, 2, 1, Variant::Lift).unwrap();
        assert!(matches!(distribution_exhaustive(&code, 1000), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn scaling_invariance_on_uv_line() {
        for (p, n) in [(3u64, 1u64), (5, 3)] {
            let code = TraceCode::build(p, 2, n, Variant::Lift).unwrap();
            let ring = code.ring();
            for alpha in code.field().elements().skip(1) {
                let r = RingElem { d: alpha, ..RingElem::ZERO };
                let w = code.lee_weight(&r);
                for lambda in 2..p {
                    assert_eq!(code.lee_weight(&ring.scale(lambda, &r)), w);
                }
            }
        }
    }
}
