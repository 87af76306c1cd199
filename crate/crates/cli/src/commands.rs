use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use tracecode::analysis::{
    compare, distribution_by_class, distribution_exhaustive, distribution_ideal_plus_units,
    field_subcode_distribution, gray_isometry_check, predict, trace_nondegeneracy_check, verify_identities,
    weight_from_theta_residual, ClassSummary, Comparison, IdentityCheck, Method, Prediction, Regime, Row,
    Target,
};
use tracecode::bounds::{
    dual_lee_distance, griesmer_optimal, minimal_codewords_bruteforce, minimality_check,
    sphere_packing_excludes, three_weight_minimality_condition, two_weight_ceiling_identity,
    two_weight_margin, CeilingIdentityCheck, DualDistanceResult, GriesmerVerdict, MinimalCodewords,
    SssVerdict, BRUTEFORCE_LIMIT,
};
use tracecode::construction::{write_codewords, ExportSidecar};
use tracecode::galois::{parse_modulus, CHARACTER_TOLERANCE};
use tracecode::{CodeParams, Field, TraceCode, Variant, WeightDistribution};

use crate::args::{AnalyzeArgs, CodeArgs, DualArgs, ExportArgs, MethodArg, VerifyArgs};

pub const REPORT_VERSION: u32 = 1;

/// Touched whenever Lee weights are computed from the Gray image.
pub const ERRATUM_LEE_SLOT: &str = "lee_weight_formula_slot";
/// Touched when a three-weight table with the corrected middle frequency is emitted.
pub const ERRATUM_FREQUENCY_SUM: &str = "three_weight_frequency_sum";
/// Touched when the closed-form Griesmer ceilings disagree with exact ones.
pub const ERRATUM_CEILING: &str = "griesmer_ceiling_identity";

/// Largest ring for the exhaustive trace nondegeneracy check.
const NONDEGENERACY_LIMIT: u64 = 1_000_000;
/// Largest p for the pairwise Gray isometry check.
const ISOMETRY_MAX_P: u64 = 7;

#[derive(Clone, Debug, Serialize)]
pub struct ParamsReport {
    pub p: u64,
    pub m: usize,
    #[serde(rename = "N")]
    pub order: u64,
    pub variant: Variant,
    pub modulus: Vec<u32>,
    pub n1: u64,
    pub n2: u64,
    pub n: u64,
    pub coordinate_count: u64,
    pub gray_length: u64,
    pub codeword_count: u64,
    pub notes: Vec<String>,
}

impl ParamsReport {
    fn of(code: &TraceCode) -> ParamsReport {
        let d = code.derived();
        ParamsReport {
            p: d.p,
            m: d.m,
            order: d.order,
            variant: d.variant,
            modulus: code.field().modulus().to_vec(),
            n1: d.n1,
            n2: d.n2,
            n: d.n,
            coordinate_count: d.coordinate_count,
            gray_length: d.gray_length,
            codeword_count: d.codeword_count,
            notes: d.notes.clone(),
        }
    }
}

pub fn build_code(args: &CodeArgs) -> Result<TraceCode> {
    let field = match &args.modulus {
        Some(text) => Field::new(args.p, args.m, Some(&parse_modulus(text)?))?,
        None => Field::new(args.p, args.m, None)?,
    };
    Ok(TraceCode::new(CodeParams::new(Arc::new(field), args.order, args.variant))?)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdealSummary {
    pub uv_line: Vec<Row>,
    pub other_maximal: Vec<Row>,
    pub unit_weight: u64,
    pub unit_samples: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SssReport {
    #[serde(flatten)]
    pub verdict: SssVerdict,
    /// p·w_min - (p-1)·w_max expected for the two-weight codes.
    pub expected_margin: Option<i128>,
    /// N₂·p < p^(m/2) + 1, for N₂ > 1.
    pub three_weight_condition: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AnalyzeReport {
    pub report_version: u32,
    pub command: &'static str,
    pub params: ParamsReport,
    pub method: Method,
    pub seed: u64,
    pub rows: Vec<Row>,
    pub total: u64,
    /// Number of r with Ev(r) = 0.
    pub kernel_size: u64,
    /// log_p of the image size, when it is an exact power.
    pub dimension: Option<u32>,
    pub classes: Option<Vec<ClassSummary>>,
    pub ideal: Option<IdealSummary>,
    pub predictions: Vec<Prediction>,
    pub comparisons: Vec<Comparison>,
    pub subcode_rows: Option<Vec<Row>>,
    pub residuals: Vec<IdentityCheck>,
    pub erratum_flags: Vec<&'static str>,
    pub griesmer: Option<GriesmerVerdict>,
    pub griesmer_ceiling_check: Option<CeilingIdentityCheck>,
    pub dual_distance: Option<DualDistanceResult>,
    pub sss: Option<SssReport>,
    pub passed: bool,
    pub runtime_ms: u64,
}

fn exact_log(p: u64, mut value: u64) -> Option<u32> {
    let mut k = 0;
    while value > 1 {
        if !value.is_multiple_of(p) {
            return None;
        }
        value /= p;
        k += 1;
    }
    (value == 1).then_some(k)
}

fn measure(
    code: &TraceCode,
    args: &AnalyzeArgs,
) -> Result<(WeightDistribution, Option<Vec<ClassSummary>>, Option<IdealSummary>)> {
    let seed = args.code.seed;
    let method = match args.method {
        MethodArg::Auto if code.derived().exhaustive_work() <= args.budget => MethodArg::Exhaustive,
        MethodArg::Auto => MethodArg::Class,
        other => other,
    };
    Ok(match method {
        MethodArg::Exhaustive => (distribution_exhaustive(code, args.budget)?, None, None),
        MethodArg::Class => {
            let c = distribution_by_class(code, args.samples, seed)?;
            (c.distribution, Some(c.classes), None)
        }
        MethodArg::Ideal | MethodArg::Auto => {
            let d = distribution_ideal_plus_units(code, args.unit_samples, seed)?;
            let summary = IdealSummary {
                uv_line: d.uv_line.rows(),
                other_maximal: d.other_maximal.rows(),
                unit_weight: d.unit_weight,
                unit_samples: d.unit_samples,
            };
            (d.distribution, None, Some(summary))
        }
    })
}

/// Weight-from-θ residuals at one representative of each ring class.
fn representative_residuals(code: &TraceCode) -> IdentityCheck {
    let ring = code.ring();
    let reps = [ring.one(), ring.u(), ring.uv()];
    let residuals: Vec<f64> = reps.iter().map(|r| weight_from_theta_residual(code, r)).collect();
    let max = residuals.iter().copied().fold(0.0, f64::max);
    IdentityCheck {
        name: "lee_weight_from_theta".to_string(),
        inputs: reps.len() as u64,
        max_residual: max,
        tolerance: CHARACTER_TOLERANCE,
        exact: false,
        breaches: reps
            .iter()
            .zip(&residuals)
            .filter(|(_, &res)| res.is_nan() || res > CHARACTER_TOLERANCE)
            .map(|(r, res)| format!("r = {} (residual {res:e})", ring.display(r)))
            .collect(),
        skipped: None,
    }
}

pub fn analyze(args: &AnalyzeArgs) -> Result<AnalyzeReport> {
    let start = Instant::now();
    let code = build_code(&args.code)?;
    let d = code.derived();
    let (dist, classes, ideal) = measure(&code, args)?;
    let mut flags = vec![ERRATUM_LEE_SLOT];

    let predictions = predict(&code);
    let needs_subcode = predictions.iter().any(|p| p.target == Target::FieldSubcode);
    let subcode = needs_subcode.then(|| field_subcode_distribution(&code));
    let comparisons: Vec<Comparison> = predictions
        .iter()
        .map(|pr| match pr.target {
            Target::FullCode => compare(&dist, pr),
            Target::FieldSubcode => compare(subcode.as_ref().expect("computed above"), pr),
        })
        .collect();
    if predictions.iter().any(|p| p.frequency_corrected) {
        flags.push(ERRATUM_FREQUENCY_SUM);
    }

    let kernel_size = dist.frequency(0);
    let dimension = dist.total.checked_div(kernel_size).and_then(|image| exact_log(d.p, image));
    let griesmer = match (dimension, dist.min_nonzero()) {
        (Some(k), Some(w)) => Some(griesmer_optimal(d.gray_length as u128, k, w as u128, d.p)),
        _ => None,
    };
    let two_weight = predictions.iter().any(|p| matches!(p.regime, Regime::ThmA | Regime::ThmAprime));
    let griesmer_ceiling_check = two_weight.then(|| two_weight_ceiling_identity(d.p, d.m, d.variant));
    if griesmer_ceiling_check.as_ref().is_some_and(|c| !c.holds) {
        flags.push(ERRATUM_CEILING);
    }

    let dual_distance = if args.no_dual { None } else { Some(dual_lee_distance(&code, 3)?) };
    let sss =
        minimality_check(&dist, d.p, dual_distance.as_ref().map(|r| r.distance)).map(|verdict| SssReport {
            verdict,
            expected_margin: two_weight.then(|| two_weight_margin(d.p, d.m, d.variant == Variant::Units)),
            three_weight_condition: (d.variant == Variant::Lift && d.n2 > 1)
                .then(|| three_weight_minimality_condition(d.p, d.m, d.n2)),
        });

    let residuals = vec![representative_residuals(&code)];
    let passed = comparisons.iter().all(|c| c.matches)
        && residuals.iter().all(IdentityCheck::passed)
        && dist.total == d.codeword_count;
    Ok(AnalyzeReport {
        report_version: REPORT_VERSION,
        command: "analyze",
        params: ParamsReport::of(&code),
        method: dist.method,
        seed: args.code.seed,
        rows: dist.rows(),
        total: dist.total,
        kernel_size,
        dimension,
        classes,
        ideal,
        predictions,
        comparisons,
        subcode_rows: subcode.map(|s| s.rows()),
        residuals,
        erratum_flags: flags,
        griesmer,
        griesmer_ceiling_check,
        dual_distance,
        sss,
        passed,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpherePacking {
    pub n: u64,
    pub k: u32,
    pub excludes_distance_3: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualReport {
    pub report_version: u32,
    pub command: &'static str,
    pub params: ParamsReport,
    pub dual_distance: DualDistanceResult,
    pub sphere_packing: SpherePacking,
    pub passed: bool,
    pub runtime_ms: u64,
}

pub fn dual(args: &DualArgs) -> Result<DualReport> {
    let start = Instant::now();
    let code = build_code(&args.code)?;
    let result = dual_lee_distance(&code, args.cap)?;
    let (n, k) = (code.gray_length(), 4 * code.derived().m as u32);
    Ok(DualReport {
        report_version: REPORT_VERSION,
        command: "dual",
        params: ParamsReport::of(&code),
        dual_distance: result,
        sphere_packing: SpherePacking {
            n,
            k,
            excludes_distance_3: sphere_packing_excludes(n as u128, k, code.derived().p),
        },
        passed: true,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SubcodeReport {
    pub length: u64,
    pub rows: Vec<Row>,
    pub predictions: Vec<Prediction>,
    pub comparisons: Vec<Comparison>,
    pub sss: Option<SssVerdict>,
    pub minimal: Option<MinimalCodewords>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub report_version: u32,
    pub command: &'static str,
    pub params: ParamsReport,
    pub seed: u64,
    pub trials: usize,
    pub residuals: Vec<IdentityCheck>,
    pub subcode: Option<SubcodeReport>,
    pub erratum_flags: Vec<&'static str>,
    pub passed: bool,
    pub runtime_ms: u64,
}

pub fn verify(args: &VerifyArgs) -> Result<VerifyReport> {
    let start = Instant::now();
    let code = build_code(&args.code)?;
    let d = code.derived();
    let mut residuals = verify_identities(&code, args.trials, args.code.seed)?.checks;
    if d.p <= ISOMETRY_MAX_P {
        residuals.push(gray_isometry_check(d.p)?);
    }
    if code.ring().order() <= NONDEGENERACY_LIMIT {
        residuals.push(trace_nondegeneracy_check(code.ring()));
    }

    let subcode = if args.subcode {
        let dist = field_subcode_distribution(&code);
        let predictions: Vec<Prediction> =
            predict(&code).into_iter().filter(|p| p.target == Target::FieldSubcode).collect();
        let comparisons = predictions.iter().map(|p| compare(&dist, p)).collect();
        let minimal = if code.field().order() <= BRUTEFORCE_LIMIT {
            Some(minimal_codewords_bruteforce(&code.field_subcode(), d.p)?)
        } else {
            None
        };
        Some(SubcodeReport {
            length: d.n,
            rows: dist.rows(),
            sss: minimality_check(&dist, d.p, None),
            predictions,
            comparisons,
            minimal,
        })
    } else {
        None
    };

    let passed = residuals.iter().all(IdentityCheck::passed)
        && subcode.as_ref().is_none_or(|s| s.comparisons.iter().all(|c| c.matches));
    Ok(VerifyReport {
        report_version: REPORT_VERSION,
        command: "verify",
        params: ParamsReport::of(&code),
        seed: args.code.seed,
        trials: args.trials,
        residuals,
        subcode,
        erratum_flags: vec![ERRATUM_LEE_SLOT],
        passed,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}

/// Writes the codeword bytes to the output path and returns the sidecar,
/// which is also written next to it with a `.json` suffix.
pub fn export(args: &ExportArgs) -> Result<ExportSidecar> {
    let code = build_code(&args.code)?;
    let Some(path) = &args.code.output else {
        bail!("export needs --output for the codeword bytes");
    };
    let ring = code.ring();
    let rs = args
        .rows
        .iter()
        .map(|&k| {
            if k >= ring.order() {
                bail!("row index {k} out of range (ring has {} elements)", ring.order());
            }
            Ok(ring.from_index(k))
        })
        .collect::<Result<Vec<_>>>()?;
    let file = std::fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut out = std::io::BufWriter::new(file);
    let sidecar = write_codewords(&code, &rs, &mut out)?;
    let mut side_path = path.clone().into_os_string();
    side_path.push(".json");
    std::fs::write(&side_path, serde_json::to_string_pretty(&sidecar)? + "\n")?;
    Ok(sidecar)
}
