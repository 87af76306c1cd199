use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::distribution::{Row, WeightDistribution};
use crate::arith::{checked_pow, pow_u128};
use crate::construction::{TraceCode, Variant};

/// Closed-form regime a prediction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    /// Two weights, N₂ = 1, lifted defining set.
    ThmA,
    /// Two weights, unit coordinates.
    ThmAprime,
    /// Minimum-distance interval for 1 < N₂ < √(p^m) + 1.
    Thm12Bounds,
    Thm13Case1,
    Thm13Case2,
    /// Field code C_D, two weights.
    Cor37Case1,
    Cor37Case2,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    FullCode,
    FieldSubcode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Condition {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    pub regime: Regime,
    pub target: Target,
    /// Nonzero rows, ascending by weight. Empty for interval-only regimes.
    pub rows: Vec<Row>,
    /// Inclusive bounds on the minimum nonzero weight.
    pub min_weight_bounds: Option<(f64, f64)>,
    pub max_distinct_weights: Option<u64>,
    pub conditions: Vec<Condition>,
    pub l: Option<u64>,
    pub t: Option<u64>,
    /// The middle frequency was replaced by p^(4m) - p^m so rows sum to p^(4m).
    pub frequency_corrected: bool,
}

impl Prediction {
    pub fn applicable(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }
}

fn cond(name: &str, holds: bool) -> Condition {
    Condition { name: name.to_string(), holds }
}

/// Exact quotient, or `None` if `den` does not divide `num`.
fn exact(num: i128, den: i128) -> Option<u64> {
    (den != 0 && num % den == 0 && num / den >= 0).then(|| (num / den) as u64)
}

fn rows_from(pairs: &[(Option<u64>, u64)]) -> Option<Vec<Row>> {
    let mut merged = BTreeMap::new();
    for &(w, f) in pairs {
        *merged.entry(w?).or_insert(0) += f;
    }
    Some(merged.into_iter().map(|(weight, frequency)| Row { weight, frequency }).collect())
}

/// Smallest l ≥ 1 with p^l ≡ -1 (mod n2), searched up to n2.
pub fn minus_one_exponent(p: u64, n2: u64) -> Option<u64> {
    if n2 < 2 {
        return None;
    }
    let mut acc = 1u64;
    for l in 1..=n2 {
        acc = acc * (p % n2) % n2;
        if acc == n2 - 1 {
            return Some(l);
        }
    }
    None
}

struct Shape {
    p: i128,
    m: usize,
    q: i128,
    n2: i128,
}

impl Shape {
    fn of(code: &TraceCode) -> Shape {
        let d = code.derived();
        Shape { p: d.p as i128, m: d.m, q: pow_u128(d.p, d.m) as i128, n2: d.n2 as i128 }
    }

    fn pow(&self, e: usize) -> i128 {
        pow_u128(self.p as u64, e) as i128
    }

    fn half(&self) -> i128 {
        self.pow(self.m / 2)
    }
}

/// Conditions shared by the three-weight tables and their field-code analogues.
struct Split {
    conditions_base: Vec<Condition>,
    case1: Vec<Condition>,
    case2_extra: Condition,
    l: Option<u64>,
    t: Option<u64>,
    sign: i128,
}

fn split(s: &Shape, code: &TraceCode) -> Split {
    let d = code.derived();
    let l = minus_one_exponent(d.p, d.n2);
    let t = l.filter(|&l| (d.m as u64).is_multiple_of(2 * l)).map(|l| d.m as u64 / (2 * l));
    let conditions_base = vec![
        cond("m even", d.m.is_multiple_of(2)),
        cond("N2 > 2", d.n2 > 2),
        cond("p^l = -1 mod N2 for some l", l.is_some()),
        cond("t = m/(2l) is an integer", t.is_some()),
    ];
    let pl1 = l.and_then(|l| checked_pow(d.p, l as usize)).map(|v| v + 1);
    let case1 = vec![
        cond("N2 even", d.n2.is_multiple_of(2)),
        cond("t odd", t.is_some_and(|t| t % 2 == 1)),
        cond("(p^l+1)/N2 odd", pl1.is_some_and(|v| v % d.n2 == 0 && (v / d.n2) % 2 == 1)),
        cond("N2 < p^(m/2) + 1", d.m.is_multiple_of(2) && s.n2 < s.half() + 1),
    ];
    let sign = if t.is_some_and(|t| t % 2 == 1) { -1 } else { 1 };
    let case2_extra = cond("p^(m/2) + (-1)^t (N2-1) > 0", s.half() + sign * (s.n2 - 1) > 0);
    Split { conditions_base, case1, case2_extra, l, t, sign }
}

/// Every closed-form prediction whose side conditions hold, plus the
/// three-weight and field-code regimes' condition reports when they fail.
pub fn predict(code: &TraceCode) -> Vec<Prediction> {
    predict_all(code).into_iter().filter(Prediction::applicable).collect()
}

/// All regimes with their evaluated side conditions, applicable or not.
pub fn predict_all(code: &TraceCode) -> Vec<Prediction> {
    let d = code.derived();
    let s = Shape::of(code);
    let (p, m, q, n2) = (s.p, s.m, s.q, s.n2);
    let q4 = s.pow(4 * m);
    let mut out = Vec::new();
    let blank = |regime, target| Prediction {
        regime,
        target,
        rows: Vec::new(),
        min_weight_bounds: None,
        max_distinct_weights: None,
        conditions: Vec::new(),
        l: None,
        t: None,
        frequency_corrected: false,
    };

    let lift = d.variant == Variant::Lift;
    match d.variant {
        Variant::Lift => {
            let mut pr = blank(Regime::ThmA, Target::FullCode);
            pr.conditions = vec![cond("lifted defining set", lift), cond("N2 = 1", n2 == 1)];
            let hi = 4 * s.pow(4 * m - 1);
            pr.rows = rows_from(&[
                (Some(hi as u64), (q - 1) as u64),
                (Some((hi - 4 * s.pow(3 * m - 1)) as u64), (q4 - q) as u64),
            ])
            .unwrap_or_default();
            pr.max_distinct_weights = Some(2);
            out.push(pr);
        }
        Variant::Units => {
            let mut pr = blank(Regime::ThmAprime, Target::FullCode);
            pr.conditions = vec![cond("unit coordinates", true)];
            let hi = 4 * (p - 1) * s.pow(4 * m - 1);
            let lo = 4 * (p - 1) * (s.pow(4 * m - 1) - s.pow(3 * m - 1));
            pr.rows = rows_from(&[(Some(hi as u64), (q - 1) as u64), (Some(lo as u64), (q4 - q) as u64)])
                .unwrap_or_default();
            pr.max_distinct_weights = Some(2);
            out.push(pr);
        }
    }

    // Interval regime; the half power is real-valued for odd m.
    {
        let mut pr = blank(Regime::Thm12Bounds, Target::FullCode);
        let root = (q as f64).sqrt();
        pr.conditions = vec![
            cond("lifted defining set", lift),
            cond("m even, or p = 3 mod 4", m % 2 == 0 || p % 4 == 3),
            cond("1 < N2 < sqrt(p^m) + 1", n2 > 1 && (n2 as f64) < root + 1.0),
        ];
        let scale = 4.0 * s.pow(3 * m - 1) as f64 / n2 as f64;
        pr.min_weight_bounds = Some((scale * (q as f64 - (n2 - 1) as f64 * root), scale * (q - 1) as f64));
        pr.max_distinct_weights = Some(n2 as u64 + 1);
        out.push(pr);
    }

    let sp = split(&s, code);
    let half = s.half();
    let is_case1 = sp.case1.iter().all(|c| c.holds);
    for (target, case1_regime, case2_regime) in [
        (Target::FullCode, Regime::Thm13Case1, Regime::Thm13Case2),
        (Target::FieldSubcode, Regime::Cor37Case1, Regime::Cor37Case2),
    ] {
        let (w_lo, w_hi) = if is_case1 {
            (q - (n2 - 1) * half, q + half)
        } else {
            (q + sp.sign * (n2 - 1) * half, q - sp.sign * half)
        };
        let f_single = (q - 1) / n2;
        let f_multi = (n2 - 1) * (q - 1) / n2.max(1);
        for (regime, case_conditions) in [
            (case1_regime, sp.case1.clone()),
            (case2_regime, vec![cond("case 1 conditions fail", !is_case1), sp.case2_extra.clone()]),
        ] {
            let mut pr = blank(regime, target);
            pr.conditions = sp.conditions_base.clone();
            if target == Target::FullCode {
                pr.conditions.insert(0, cond("lifted defining set", lift));
            }
            pr.conditions.extend(case_conditions);
            pr.l = sp.l;
            pr.t = sp.t;
            if m % 2 == 0 && n2 > 0 {
                let rows = match target {
                    Target::FullCode => {
                        let scale = 4 * s.pow(3 * m - 1);
                        pr.frequency_corrected = true;
                        pr.max_distinct_weights = Some(3);
                        rows_from(&[
                            (exact(scale * w_lo, n2), f_single as u64),
                            (exact(scale * (q - 1), n2), (q4 - q) as u64),
                            (exact(scale * w_hi, n2), f_multi as u64),
                        ])
                    }
                    Target::FieldSubcode => {
                        pr.max_distinct_weights = Some(2);
                        rows_from(&[
                            (exact(w_lo, p * n2), f_single as u64),
                            (exact(w_hi, p * n2), f_multi as u64),
                        ])
                    }
                };
                pr.conditions.push(cond("table weights are integers", rows.is_some()));
                pr.rows = rows.unwrap_or_default();
            }
            out.push(pr);
        }
    }
    out
}

/// Outcome of checking a measured distribution against one prediction.
#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub regime: Regime,
    pub target: Target,
    pub matches: bool,
    pub mismatches: Vec<String>,
}

/// Relative slack for the floating interval endpoints.
const BOUND_SLACK: f64 = 1e-9;

pub fn compare(measured: &WeightDistribution, prediction: &Prediction) -> Comparison {
    let mut mismatches = Vec::new();
    let rows = measured.nonzero_rows();
    if let Some(k) = prediction.max_distinct_weights {
        if rows.len() as u64 > k {
            mismatches.push(format!("{} distinct nonzero weights, at most {k} expected", rows.len()));
        }
    }
    if let Some((lo, hi)) = prediction.min_weight_bounds {
        match measured.min_nonzero() {
            Some(w) => {
                let w = w as f64;
                if w < lo * (1.0 - BOUND_SLACK) || w > hi * (1.0 + BOUND_SLACK) {
                    mismatches.push(format!("minimum weight {w} outside [{lo}, {hi}]"));
                }
            }
            None => mismatches.push("no nonzero weight measured".to_string()),
        }
    }
    if !prediction.rows.is_empty() && rows != prediction.rows {
        let show = |rs: &[Row]| {
            rs.iter().map(|r| format!("{}:{}", r.weight, r.frequency)).collect::<Vec<_>>().join(", ")
        };
        mismatches.push(format!("measured {{{}}} vs predicted {{{}}}", show(&rows), show(&prediction.rows)));
    }
    Comparison {
        regime: prediction.regime,
        target: prediction.target,
        matches: mismatches.is_empty(),
        mismatches,
    }
}

/// Exact weight distribution of the field code C_D by brute force over all b.
pub fn field_subcode_distribution(code: &TraceCode) -> WeightDistribution {
    let mut dist = WeightDistribution::new(super::Method::Exhaustive);
    for b in code.field().elements() {
        let w = code.field_subcode_word(b).iter().filter(|&&s| s != 0).count() as u64;
        dist.add(w, 1);
    }
    dist
}
