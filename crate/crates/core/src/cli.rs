//! `cauchy` command-line front end.
//!
//! Exit codes: 0 when every reported identity holds, 1 when one is violated,
//! 2 for input errors (unparseable spec, zero pair sum, singular input where an
//! inverse is required, ring mismatch, size bound).

use std::fs;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canary::{self, CanaryReport};
use crate::cauchy;
use crate::densela::COFACTOR_LIMIT;
use crate::error::Error;
use crate::minmat;
use crate::random::{self, SpecOptions};
use crate::ring::RingContext;
use crate::spec_io::{SpecFile, SpecKind};
use crate::verify::{self, SuiteConfig, VerificationReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "cauchy", version, about = "Exact Cauchy and min matrix identities, checked against dense oracles")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,

    /// Ring for generated data, or override for spec files: `rational` or `prime:P`.
    #[arg(long, global = true)]
    pub ring: Option<RingContext>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, default_value_t = 20)]
    pub trials: usize,

    /// Matrix size for `gen`, upper size bound for random trials.
    #[arg(long = "n", global = true, default_value_t = 6)]
    pub max_n: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Read spec `ys` as subtrahends, i.e. entries `1 / (xᵢ − yⱼ)`.
    #[arg(long, global = true)]
    pub minus_convention: bool,

    /// Let `gen` emit specs with repeated `xs` or `ys` (singular matrices).
    #[arg(long, global = true)]
    pub allow_degenerate: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Cauchy,
    Min,
}

#[derive(Debug, Clone, Args)]
pub struct SpecInput {
    /// Spec file; standard input when neither a path nor `--spec` is given.
    pub path: Option<PathBuf>,

    /// Inline spec JSON.
    #[arg(long = "spec", conflicts_with = "path")]
    pub inline: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a random spec.
    Gen {
        #[arg(long, value_enum, default_value_t = GenKind::Cauchy)]
        kind: GenKind,
    },
    /// Print the matrix C (or F for min specs).
    Build(SpecInput),
    /// Closed-form determinant against elimination.
    Det(SpecInput),
    /// Closed-form inverse against the adjugate inverse.
    Inv(SpecInput),
    /// Entry sum of the inverse: Σx + Σy.
    Invsum(SpecInput),
    /// Entry sum of the adjugate: (Σx + Σy) det C.
    Adjsum(SpecInput),
    /// Bordered determinant: −(Σx + Σy) det C.
    Border(SpecInput),
    /// Weighted-trace identity on random A (n×m), B (m×n).
    LemmaAb,
    /// Min-matrix determinant, closed form against elimination.
    MinDet(SpecInput),
    /// Min-matrix inverse entry sum: 1 / min.
    MinInvsum(SpecInput),
    /// Min-matrix inverse column sums on the sorted spec: (1/x₁, 0, …, 0).
    MinColsums(SpecInput),
    /// Seeded run of every identity.
    Verify,
    /// Float inversion accuracy against the exact entry sum.
    Canary {
        #[command(flatten)]
        input: SpecInput,

        /// Hilbert sizes to run when no spec is given.
        #[arg(long, value_delimiter = ',', default_values_t = vec![3usize, 6, 9, 12])]
        sizes: Vec<usize>,
    },
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_PASS, stdout, stderr: String::new() }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { code: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

fn read_spec(input: &SpecInput) -> Result<SpecFile, Error> {
    let text = match (&input.inline, &input.path) {
        (Some(s), _) => s.clone(),
        (None, Some(p)) => fs::read_to_string(p).map_err(|e| Error::Parse {
            input: p.display().to_string(),
            reason: e.to_string(),
        })?,
        (None, None) => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Parse { input: "<stdin>".into(), reason: e.to_string() })?;
            s
        }
    };
    SpecFile::parse(&text)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn render_reports(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Json if reports.len() == 1 => to_json(&reports[0]),
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["identity", "lhs", "rhs", "pass"]).expect("in-memory CSV");
            for r in reports {
                w.write_record([r.identity.as_str(), &r.lhs, &r.rhs, if r.pass { "true" } else { "false" }])
                    .expect("in-memory CSV");
            }
            String::from_utf8(w.into_inner().expect("flush")).expect("UTF-8")
        }
        Format::Text => reports
            .iter()
            .map(|r| format!("{}: {} vs {} [{}]\n", r.identity, r.lhs, r.rhs, if r.pass { "PASS" } else { "FAIL" }))
            .collect(),
    }
}

fn report_outcome(reports: Vec<VerificationReport>, format: Format) -> Outcome {
    let code = if reports.iter().all(|r| r.pass) { EXIT_PASS } else { EXIT_VIOLATION };
    Outcome { code, stdout: render_reports(&reports, format), stderr: String::new() }
}

fn render_canary(reports: &[CanaryReport], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => canary::reports_to_csv(reports),
        Format::Text => reports
            .iter()
            .map(|r| {
                format!(
                    "n={:<3} {:<12} entry_sum_residual={:.3e} identity_residual={:.3e} (max-norm) elapsed={:.2e}s\n",
                    r.n, r.method.to_string(), r.entry_sum_residual, r.identity_residual, r.elapsed
                )
            })
            .collect(),
    }
}

/// Runs a parsed command line.
pub fn run(config: &RunConfig) -> Outcome {
    match dispatch(config) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::input_error(e),
    }
}

fn dispatch(config: &RunConfig) -> Result<Outcome, Error> {
    let fmt = config.format;
    let ring = config.ring;
    let cauchy_spec = |input: &SpecInput| -> Result<cauchy::CauchySpec, Error> {
        let file = read_spec(input)?;
        if file.kind() == SpecKind::Min {
            return Err(Error::Parse { input: "spec".into(), reason: "expected a Cauchy spec, got kind \"min\"".into() });
        }
        file.to_cauchy(ring, config.minus_convention)
    };
    let min_spec = |input: &SpecInput| -> Result<minmat::MinSpec, Error> { read_spec(input)?.to_min(ring) };
    let one = |r: VerificationReport| report_outcome(vec![r], fmt);

    Ok(match &config.command {
        Command::Gen { kind } => {
            if config.max_n == 0 {
                return Err(Error::BadSpecLength { xs: 0, ys: 0 });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let file = match kind {
                GenKind::Cauchy => {
                    let opts = if config.allow_degenerate { SpecOptions::degenerate() } else { SpecOptions::default() };
                    let ctx = ring.unwrap_or(RingContext::Rational);
                    SpecFile::from_cauchy(&random::random_cauchy_spec(&mut rng, ctx, config.max_n, opts))
                }
                GenKind::Min => {
                    if let Some(ctx) = ring.filter(|r| !r.is_ordered()) {
                        return Err(Error::Unordered(ctx));
                    }
                    SpecFile::from_min(&random::random_min_spec(&mut rng, config.max_n, false))
                }
            };
            Outcome::ok(to_json(&file))
        }
        Command::Build(input) => {
            let file = read_spec(input)?;
            let m = match file.kind() {
                SpecKind::Cauchy => cauchy::build(&file.to_cauchy(ring, config.minus_convention)?),
                SpecKind::Min => minmat::build(&file.to_min(ring)?),
            };
            let out = match fmt {
                Format::Json => to_json(&m.to_json()),
                Format::Csv | Format::Text => {
                    let sep = if fmt == Format::Csv { "," } else { " " };
                    m.rendered_rows().iter().map(|r| format!("{}\n", r.join(sep))).collect()
                }
            };
            Outcome::ok(out)
        }
        Command::Det(input) => {
            let file = read_spec(input)?;
            match file.kind() {
                SpecKind::Cauchy => one(verify::check_cauchy_det(&file.to_cauchy(ring, config.minus_convention)?)?),
                SpecKind::Min => one(verify::check_min_det(&file.to_min(ring)?)?),
            }
        }
        Command::Inv(input) => one(verify::check_inverse(&cauchy_spec(input)?)?),
        Command::Invsum(input) => one(verify::check_inverse_entry_sum(&cauchy_spec(input)?)?),
        Command::Adjsum(input) => one(verify::check_adjugate_entry_sum(&cauchy_spec(input)?)?),
        Command::Border(input) => one(verify::check_bordered_det(&cauchy_spec(input)?)?),
        Command::MinDet(input) => one(verify::check_min_det(&min_spec(input)?)?),
        Command::MinInvsum(input) => one(verify::check_min_inverse_entry_sum(&min_spec(input)?)?),
        Command::MinColsums(input) => one(verify::check_min_column_sums(&min_spec(input)?)?),
        Command::LemmaAb => {
            check_trials(config)?;
            let ctx = ring.unwrap_or(RingContext::Rational);
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let mut reports = Vec::with_capacity(config.trials);
            for _ in 0..config.trials {
                let n = rand::Rng::gen_range(&mut rng, 1..=config.max_n);
                let m = rand::Rng::gen_range(&mut rng, 1..=config.max_n);
                let a = random::random_matrix(&mut rng, ctx, n, m);
                let b = random::random_matrix(&mut rng, ctx, m, n);
                let w = random::random_weights(&mut rng, ctx, n, m);
                reports.push(verify::check_lemma_ab(&a, &b, &w)?.with_seed(Some(config.seed)));
            }
            report_outcome(reports, fmt)
        }
        Command::Verify => {
            check_trials(config)?;
            let mut suite = SuiteConfig::new(config.seed, config.trials, config.max_n);
            if let Some(r) = ring {
                suite.rings = vec![r];
            }
            let outcome = verify::run_suite(&suite)?;
            let code = if outcome.all_pass() { EXIT_PASS } else { EXIT_VIOLATION };
            let stdout = match fmt {
                Format::Json => to_json(&outcome),
                _ => render_reports(&outcome.reports, fmt),
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Command::Canary { input, sizes } => {
            let specs = if input.path.is_some() || input.inline.is_some() {
                vec![cauchy_spec(input)?]
            } else {
                if sizes.contains(&0) {
                    return Err(Error::BadSpecLength { xs: 0, ys: 0 });
                }
                sizes.iter().map(|&n| canary::hilbert_spec(n)).collect()
            };
            let mut reports = Vec::new();
            for spec in &specs {
                let (closed, gauss) = canary::run_canary(spec)?;
                reports.push(closed);
                reports.push(gauss);
            }
            Outcome::ok(render_canary(&reports, fmt))
        }
    })
}

fn check_trials(config: &RunConfig) -> Result<(), Error> {
    if config.trials == 0 {
        return Err(Error::Shape("--trials must be at least 1".into()));
    }
    if config.max_n == 0 || config.max_n > COFACTOR_LIMIT {
        return Err(Error::SizeGuard { size: config.max_n, limit: COFACTOR_LIMIT });
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            }
        }
    }
}
