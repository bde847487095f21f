//! Identity checks that pair each closed form with its dense oracle, and the
//! seeded suite that runs them all.

use std::fmt::Display;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cauchy::{self, CauchySpec};
use crate::densela::{self, Matrix, WeightVectors};
use crate::error::{Error, Result};
use crate::minmat::{self, MinSpec};
use crate::random::{self, SpecOptions};
use crate::ring::{RingContext, Scalar, DEFAULT_PRIME};
use crate::spec_io::SpecFile;

/// Closed form (`lhs`) against oracle (`rhs`), both as canonical renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub spec: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl VerificationReport {
    pub fn new(identity: &str, lhs: impl Display, rhs: impl Display, spec: Value) -> Self {
        let (lhs, rhs) = (lhs.to_string(), rhs.to_string());
        VerificationReport { identity: identity.to_string(), pass: lhs == rhs, lhs, rhs, spec, seed: None }
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }
}

fn render_matrix(m: &Matrix) -> String {
    let rows: Vec<String> = m.rendered_rows().iter().map(|r| format!("[{}]", r.join(","))).collect();
    format!("[{}]", rows.join(","))
}

fn render_vector(v: &[Scalar]) -> String {
    let items: Vec<String> = v.iter().map(Scalar::to_string).collect();
    format!("[{}]", items.join(","))
}

fn cauchy_echo(spec: &CauchySpec) -> Value {
    SpecFile::from_cauchy(spec).to_value()
}

fn min_echo(spec: &MinSpec) -> Value {
    SpecFile::from_min(spec).to_value()
}

fn matrix_echo(m: &Matrix) -> Value {
    serde_json::to_value(m.to_json()).expect("matrix JSON")
}

/// `det_closed` against elimination on `C`.
pub fn check_cauchy_det(spec: &CauchySpec) -> Result<VerificationReport> {
    let oracle = densela::det_fast(&cauchy::build(spec))?;
    Ok(VerificationReport::new("cauchy_determinant", cauchy::det_closed(spec), oracle, cauchy_echo(spec)))
}

/// The O(n²) closed-form inverse against `det⁻¹ · adj C`.
pub fn check_inverse(spec: &CauchySpec) -> Result<VerificationReport> {
    let closed = cauchy::inverse_closed(spec)?;
    let oracle = densela::inverse(&cauchy::build(spec))?;
    Ok(VerificationReport::new(
        "closed_form_inverse",
        render_matrix(&closed),
        render_matrix(&oracle),
        cauchy_echo(spec),
    ))
}

/// `Σx + Σy` against the entry sum of the oracle inverse.
pub fn check_inverse_entry_sum(spec: &CauchySpec) -> Result<VerificationReport> {
    let closed = cauchy::inverse_entry_sum(spec)?;
    let oracle = densela::entry_sum(&densela::inverse(&cauchy::build(spec))?);
    Ok(VerificationReport::new("theorem1_inverse_entry_sum", closed, oracle, cauchy_echo(spec)))
}

/// `(Σx + Σy) · det C` against the entry sum of `adj C`; valid for singular `C`.
pub fn check_adjugate_entry_sum(spec: &CauchySpec) -> Result<VerificationReport> {
    let oracle = densela::entry_sum(&densela::adjugate(&cauchy::build(spec))?);
    Ok(VerificationReport::new(
        "theorem2_adjugate_entry_sum",
        cauchy::adjugate_entry_sum_closed(spec),
        oracle,
        cauchy_echo(spec),
    ))
}

/// `−(Σx + Σy) · det C` against elimination on the bordered matrix.
pub fn check_bordered_det(spec: &CauchySpec) -> Result<VerificationReport> {
    let oracle = densela::det_fast(&cauchy::bordered_matrix(spec))?;
    Ok(VerificationReport::new(
        "theorem3_bordered_determinant",
        cauchy::bordered_det_closed(spec),
        oracle,
        cauchy_echo(spec),
    ))
}

/// Strong-distinctness verdict against invertibility of `det_closed`.
pub fn check_invertibility(spec: &CauchySpec) -> VerificationReport {
    let verdict = cauchy::is_invertible_spec(spec).invertible;
    let oracle = cauchy::det_closed(spec).is_invertible();
    VerificationReport::new("invertibility_criterion", verdict, oracle, cauchy_echo(spec))
}

/// `det B` against `−Σ adj(A)` for a general square `A`.
pub fn check_border_general(a: &Matrix) -> Result<VerificationReport> {
    let (det_b, adj_sum) = densela::border_det_general(a)?;
    Ok(VerificationReport::new("border_general", det_b, -adj_sum, json!({ "a": matrix_echo(a) })))
}

pub fn check_lemma_ab(a: &Matrix, b: &Matrix, w: &WeightVectors) -> Result<VerificationReport> {
    let (lhs, rhs) = densela::lemma_ab_check(a, b, w)?;
    let echo = json!({
        "a": matrix_echo(a),
        "b": matrix_echo(b),
        "xs": w.xs.iter().map(Scalar::to_string).collect::<Vec<_>>(),
        "ys": w.ys.iter().map(Scalar::to_string).collect::<Vec<_>>(),
    });
    Ok(VerificationReport::new("lemma_ab", lhs, rhs, echo))
}

/// Closed-form `det F` (signed for the input order) against elimination.
pub fn check_min_det(spec: &MinSpec) -> Result<VerificationReport> {
    let oracle = densela::det_fast(&minmat::build(spec))?;
    Ok(VerificationReport::new("min_determinant", minmat::det_closed_any(spec), oracle, min_echo(spec)))
}

/// `1 / min` against the entry sum of the oracle `F⁻¹`.
pub fn check_min_inverse_entry_sum(spec: &MinSpec) -> Result<VerificationReport> {
    let closed = minmat::inverse_entry_sum(spec)?;
    let oracle = densela::entry_sum(&densela::inverse(&minmat::build(spec))?);
    Ok(VerificationReport::new("min_inverse_entry_sum", closed, oracle, min_echo(spec)))
}

/// `(1/x₁, 0, …, 0)` against the oracle column sums, on the normalized spec.
pub fn check_min_column_sums(spec: &MinSpec) -> Result<VerificationReport> {
    let sorted = minmat::normalize(spec);
    let closed = minmat::inverse_column_sums(&sorted)?;
    let inv = densela::inverse(&minmat::build(sorted.spec()))?;
    let oracle = (0..inv.cols()).map(|j| densela::column_sum(&inv, j)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        "min_inverse_column_sums",
        render_vector(&closed),
        render_vector(&oracle),
        min_echo(sorted.spec()),
    ))
}

/// Parameters of a [`run_suite`] call.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub rings: Vec<RingContext>,
}

impl SuiteConfig {
    pub fn new(seed: u64, trials: usize, max_n: usize) -> Self {
        SuiteConfig { seed, trials, max_n, rings: vec![RingContext::Rational, RingContext::Prime(DEFAULT_PRIME)] }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteOutcome {
    pub seed: u64,
    pub trials: usize,
    pub max_n: usize,
    pub rings: Vec<String>,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<VerificationReport>,
}

impl SuiteOutcome {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }
}

/// Reports for one trial, in a fixed order.
fn suite_trial(rng: &mut ChaCha8Rng, ctx: RingContext, max_n: usize) -> Result<Vec<VerificationReport>> {
    let mut out = Vec::new();
    let n = rng.gen_range(1..=max_n);
    let spec = random::random_cauchy_spec(rng, ctx, n, SpecOptions::strongly_distinct());
    out.push(check_cauchy_det(&spec)?);
    out.push(check_inverse(&spec)?);
    out.push(check_inverse_entry_sum(&spec)?);

    let n = rng.gen_range(1..=max_n);
    let opts = if n >= 2 && rng.gen_bool(0.5) { SpecOptions::singular() } else { SpecOptions::degenerate() };
    let spec = random::random_cauchy_spec(rng, ctx, n, opts);
    out.push(check_adjugate_entry_sum(&spec)?);
    out.push(check_bordered_det(&spec)?);
    out.push(check_invertibility(&spec));

    let n = rng.gen_range(1..=max_n);
    out.push(check_border_general(&random::random_matrix(rng, ctx, n, n))?);

    let (n, m) = (rng.gen_range(1..=max_n), rng.gen_range(1..=max_n));
    let a = random::random_matrix(rng, ctx, n, m);
    let b = random::random_matrix(rng, ctx, m, n);
    out.push(check_lemma_ab(&a, &b, &random::random_weights(rng, ctx, n, m))?);

    if ctx.is_ordered() {
        let n = rng.gen_range(1..=max_n);
        let spec = random::random_min_spec(rng, n, false);
        let det = check_min_det(&spec)?;
        let invertible = det.rhs != "0";
        out.push(det);
        if invertible {
            out.push(check_min_inverse_entry_sum(&spec)?);
            out.push(check_min_column_sums(&spec)?);
        }
    }
    Ok(out)
}

/// Runs every identity on `trials` random inputs per ring. The RNG is a
/// single ChaCha8 stream seeded from `seed`, so output is reproducible.
pub fn run_suite(config: &SuiteConfig) -> Result<SuiteOutcome> {
    if config.trials == 0 {
        return Err(Error::Shape("trial count must be at least 1".into()));
    }
    if config.max_n == 0 || config.max_n > densela::COFACTOR_LIMIT {
        return Err(Error::SizeGuard { size: config.max_n, limit: densela::COFACTOR_LIMIT });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut reports = Vec::new();
    for _ in 0..config.trials {
        for &ctx in &config.rings {
            for r in suite_trial(&mut rng, ctx, config.max_n)? {
                reports.push(r.with_seed(Some(config.seed)));
            }
        }
    }
    let passed = reports.iter().filter(|r| r.pass).count();
    Ok(SuiteOutcome {
        seed: config.seed,
        trials: config.trials,
        max_n: config.max_n,
        rings: config.rings.iter().map(ToString::to_string).collect(),
        passed,
        failed: reports.len() - passed,
        reports,
    })
}
