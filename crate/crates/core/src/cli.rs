//! The `znfal` command line. [`run`] is the whole program; the binary only
//! forwards process arguments and exits with its return value.
//!
//! Exit codes: 0 success (including negative results), 2 input error,
//! 3 budget exceeded, 4 invariant violation. `ZNFAL_BUDGET_MS` sets a
//! soft wall-clock budget; when it runs out the partial report is still
//! written, marked `"partial": true`, and the exit code is 3.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use crate::constructions::{
    appendix_b_set, example_2_3, random_set, random_skew_matrix, submodule_coset, SkewMatrix,
};
use crate::crt::{
    fiber_stats, holder_check, local_distance_diagnostics, local_energy_ratios, product_set,
    project_all,
};
use crate::energy::{
    cauchy_schwarz_holds, distance_profile_threaded, mixed_cross_terms,
    near_extremality_from_profile, scale_profile, shells_from_profile, ExtremalityThresholds,
    PointSet,
};
use crate::error::Error;
use crate::format::{digest, parse_rational, point_set_json, rational_string, read_point_set};
use crate::poly::{
    b_construction_identity_checks, psi_vanishing_check, vanishing_space, BCheckConfig, Coverage,
    VanishingConfig,
};
use crate::report::{
    affine_list_json, certificate_json, local_json, shells_json, to_json, vanishing_json,
    AnalysisReport, ClassifyReport, Flags, PitReport, VerifyReport, ANALYSIS_SCHEMA,
    CLASSIFY_SCHEMA, PIT_SCHEMA, VERIFY_SCHEMA,
};
use crate::ring::factorize;
use crate::structure::{classify, classify_peel, local_summaries, Classification, ClassifyConfig};
use crate::verify::{random_locals, run_trials, Lemma};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

pub const BUDGET_ENV: &str = "ZNFAL_BUDGET_MS";

#[derive(Debug, Parser)]
#[command(
    name = "znfal",
    version,
    about = "Squared-distance statistics and structure certificates over Z_n^d"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Distance profile, energy and optional decompositions of a point set.
    Analyze(AnalyzeArgs),
    /// Write a named or random point set.
    Construct(ConstructArgs),
    /// Search for a concentrated isotropic coset.
    Classify(ClassifyArgs),
    /// Polynomial checks.
    Pit {
        #[command(subcommand)]
        check: PitCommand,
    },
    /// Randomised trials of an exact identity or inequality.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct Budgets {
    /// Largest |E| accepted for pair loops.
    #[arg(long, default_value_t = 5000)]
    pub max_points: usize,
    /// Largest modulus accepted.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_modulus: u64,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub input: PathBuf,
    /// Energy shells by divisor scale and the mixed term.
    #[arg(long)]
    pub shells: bool,
    /// Per-component ratios, distance counts and fiber sizes.
    #[arg(long)]
    pub local: bool,
    /// Attach a structure certificate when one exists.
    #[arg(long)]
    pub classify: bool,
    /// Attach the vanishing space of this total degree.
    #[arg(long, value_name = "D")]
    pub vanish: Option<u32>,
    #[arg(long, default_value_t = 5000)]
    pub monomial_budget: u128,
    /// Energy-ratio threshold K for the high-energy flag.
    #[arg(long, default_value = "2")]
    pub energy_threshold: String,
    /// Distance-density threshold for the few-distances flag.
    #[arg(long, default_value = "1/10")]
    pub density_threshold: String,
    /// Local density at or below which a component counts as heavy.
    #[arg(long, default_value = "1/10")]
    pub heavy_density: String,
    /// Worker threads for pair loops; output does not depend on it.
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    #[command(flatten)]
    pub budgets: Budgets,
    /// Also write the report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(subcommand)]
    pub kind: ConstructKind,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// The four-point set in Z_6^2.
    #[command(name = "example-2-3")]
    Example23,
    /// The skew lift {x + pAx} in Z_{p^2}^d.
    #[command(name = "appendix-b")]
    AppendixB {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        /// Rows separated by ';', entries by ','. Default: 1 above the diagonal, p-1 below.
        #[arg(long)]
        matrix: Option<String>,
        /// Draw a random nonzero skew matrix with this seed instead.
        #[arg(long, conflicts_with = "matrix")]
        seed: Option<u64>,
    },
    /// The full coset v + Ann(K)^d.
    Coset {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long = "K")]
        k: u64,
        /// Comma-separated coordinates; zero vector when absent.
        #[arg(long)]
        v: Option<String>,
    },
    /// Seeded uniform sample of distinct points.
    Random {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        size: usize,
        #[arg(long)]
        seed: u64,
    },
    /// CRT product of seeded random local sets, one per prime-power component.
    Product {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: usize,
        /// Comma-separated local sizes in component order; random sizes up to 6 when absent.
        #[arg(long)]
        sizes: Option<String>,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    pub input: PathBuf,
    #[arg(long, default_value = "1/2")]
    pub alpha_min: String,
    /// Accept cosets without a nontrivial isotropy divisor.
    #[arg(long)]
    pub no_isotropy: bool,
    /// Greedily certify, remove and repeat.
    #[arg(long)]
    pub peel: bool,
    #[arg(long, default_value_t = 8)]
    pub max_rounds: usize,
    /// Affine summaries of every component projection.
    #[arg(long)]
    pub local: bool,
    /// Highest affine subspace dimension searched; d-1 when absent.
    #[arg(long)]
    pub max_affine_dim: Option<usize>,
    #[arg(long, default_value = "1")]
    pub affine_threshold: String,
    #[arg(long, default_value_t = 100_000_000)]
    pub affine_budget: u128,
    #[command(flatten)]
    pub budgets: Budgets,
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum PitCommand {
    /// Q(|x-y|^2) = 0 on all pairs, Q the annihilator of the distance set.
    #[command(name = "psi-check")]
    PsiCheck {
        input: PathBuf,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Polynomials of total degree at most D vanishing on the set.
    Vanish {
        input: PathBuf,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 5000)]
        monomial_budget: u128,
        #[command(flatten)]
        budgets: Budgets,
    },
    /// Identities of the skew lift for a matrix over F_p.
    #[command(name = "b-checks")]
    BChecks {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 1_000_000)]
        exhaustive_limit: u128,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// product-energy, pigeonhole, cs-bound or shell-sum.
    pub lemma: String,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Soft wall-clock budget read from the environment.
#[derive(Debug, Clone, Copy)]
pub struct Deadline(Option<Instant>);

impl Deadline {
    pub fn from_env() -> Result<Self, Failure> {
        match std::env::var(BUDGET_ENV) {
            Err(_) => Ok(Deadline(None)),
            Ok(v) => {
                let ms: u64 = v.trim().parse().map_err(|_| {
                    Failure::input(format!(
                        "{BUDGET_ENV} must be a number of milliseconds, got {v:?}"
                    ))
                })?;
                Ok(Deadline(Some(Instant::now() + Duration::from_millis(ms))))
            }
        }
    }

    pub fn none() -> Self {
        Deadline(None)
    }

    pub fn expired(&self) -> bool {
        self.0.is_some_and(|t| Instant::now() >= t)
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn invariant(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INVARIANT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_budget() {
                EXIT_BUDGET
            } else {
                EXIT_INPUT
            },
            message: e.to_string(),
        }
    }
}

/// A command's output: text for stdout and its exit code.
struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output {
            text,
            code: EXIT_OK,
        }
    }
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(stderr, "{rendered}");
            } else {
                let _ = write!(stdout, "{rendered}");
            }
            return code;
        }
    };
    let result = Deadline::from_env().and_then(|deadline| dispatch(cli.command, deadline));
    match result {
        Ok(out) => {
            let _ = stdout.write_all(out.text.as_bytes());
            if out.code == EXIT_BUDGET {
                let _ = writeln!(stderr, "znfal: time budget exhausted; output is partial");
            }
            out.code
        }
        Err(f) => {
            let _ = writeln!(stderr, "znfal: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, deadline: Deadline) -> Result<Output, Failure> {
    match command {
        Command::Analyze(a) => analyze(&a, deadline),
        Command::Construct(c) => construct(&c),
        Command::Classify(c) => classify_cmd(&c),
        Command::Pit { check } => pit(&check),
        Command::Verify(v) => verify_cmd(&v, deadline),
    }
}

fn rational(flag: &str, value: &str) -> Result<BigRational, Failure> {
    parse_rational(value)
        .map_err(|_| Failure::input(format!("--{flag}: not a rational: {value:?}")))
}

fn load(path: &Path, budgets: &Budgets) -> Result<PointSet, Failure> {
    let set = read_point_set(path)?;
    if set.n() > budgets.max_modulus {
        return Err(Error::BudgetExceeded {
            what: "modulus",
            required: set.n() as u128,
            limit: budgets.max_modulus as u128,
        }
        .into());
    }
    if set.len() > budgets.max_points {
        return Err(Error::BudgetExceeded {
            what: "points in pair loop",
            required: set.len() as u128,
            limit: budgets.max_points as u128,
        }
        .into());
    }
    Ok(set)
}

fn write_copy(path: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Failure::input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn flag_map(pairs: &[(&str, String)]) -> Flags {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn components(set: &PointSet) -> Vec<(u64, u64)> {
    set.modulus()
        .factors()
        .iter()
        .map(|f| (f.value(), f.prime))
        .collect()
}

type Stage<'a> = &'a dyn Fn(&mut AnalysisReport) -> Result<(), Failure>;

pub fn analyze_report(
    a: &AnalyzeArgs,
    set: &PointSet,
    deadline: Deadline,
) -> Result<AnalysisReport, Failure> {
    let thresholds = ExtremalityThresholds {
        energy_ratio: rational("energy-threshold", &a.energy_threshold)?,
        distance_density: rational("density-threshold", &a.density_threshold)?,
    };
    let heavy = rational("heavy-density", &a.heavy_density)?;
    let threads = a.threads.max(1);
    // Threads are deliberately absent: reports must not depend on them.
    let flags = flag_map(&[
        ("shells", a.shells.to_string()),
        ("local", a.local.to_string()),
        ("classify", a.classify.to_string()),
        ("vanish", a.vanish.map_or("none".into(), |d| d.to_string())),
        ("monomial_budget", a.monomial_budget.to_string()),
        (
            "energy_threshold",
            rational_string(&thresholds.energy_ratio),
        ),
        (
            "density_threshold",
            rational_string(&thresholds.distance_density),
        ),
        ("heavy_density", rational_string(&heavy)),
        ("max_points", a.budgets.max_points.to_string()),
        ("max_modulus", a.budgets.max_modulus.to_string()),
    ]);

    let profile = distance_profile_threaded(set, threads);
    let energy = profile.energy();
    let near = near_extremality_from_profile(set, &profile, &thresholds);
    let cs = cauchy_schwarz_holds(&profile);
    if !cs {
        return Err(Failure::invariant("Cauchy-Schwarz bound violated"));
    }
    let mut report = AnalysisReport {
        schema: ANALYSIS_SCHEMA.into(),
        input_digest: digest(set),
        flags,
        partial: false,
        n: set.n().to_string(),
        d: set.dim().to_string(),
        size: set.len().to_string(),
        distance_count: profile.distance_count().to_string(),
        distance_set: profile.distance_set().iter().map(u64::to_string).collect(),
        energy: energy.to_string(),
        energy_ratio: rational_string(&near.energy_ratio),
        cauchy_schwarz: cs,
        near_extremality: Some((&near).into()),
        shells: None,
        mixed: None,
        local: None,
        certificate: None,
        vanishing: None,
    };

    let stages: [(bool, Stage); 4] = [
        (a.shells, &|r| {
            let sp = scale_profile(set, threads);
            let dec = shells_from_profile(&sp, energy.clone());
            if dec.mixed != mixed_cross_terms(&sp) {
                return Err(Failure::invariant(
                    "shell sum plus mixed term does not match total energy",
                ));
            }
            r.shells = Some(shells_json(&dec));
            r.mixed = Some(dec.mixed.to_string());
            Ok(())
        }),
        (a.local, &|r| {
            let diag = local_distance_diagnostics(set, &heavy);
            let ratios = local_energy_ratios(set);
            let sizes: Vec<usize> = project_all(set).iter().map(|l| l.len()).collect();
            let fibers: Vec<usize> = set
                .modulus()
                .components()
                .into_iter()
                .map(|q| fiber_stats(set, q).map(|f| f.max_multiplicity))
                .collect::<Result<_, _>>()?;
            let holder = holder_check(set);
            if !holder.holds {
                return Err(Failure::invariant("local energy bound violated"));
            }
            r.local = Some(local_json(&diag, &ratios, &sizes, &fibers, &holder));
            Ok(())
        }),
        (a.classify, &|r| {
            if let Classification::Structured(c) = classify(set, &ClassifyConfig::default()) {
                c.verify(set).map_err(Failure::invariant)?;
                r.certificate = Some(certificate_json(&c, &components(set)));
            }
            Ok(())
        }),
        (a.vanish.is_some(), &|r| {
            let cfg = VanishingConfig {
                monomial_budget: a.monomial_budget,
                ..VanishingConfig::default()
            };
            let b = vanishing_space(set, a.vanish.unwrap_or(0), &cfg)?;
            if !b
                .generators
                .iter()
                .all(|g| set.points().iter().all(|x| g.eval(x) == 0))
            {
                return Err(Failure::invariant(
                    "vanishing basis element does not vanish",
                ));
            }
            r.vanishing = Some(vanishing_json(&b));
            Ok(())
        }),
    ];
    for (enabled, stage) in stages {
        if !enabled {
            continue;
        }
        if deadline.expired() {
            report.partial = true;
            break;
        }
        stage(&mut report)?;
    }
    if deadline.expired() {
        report.partial = true;
    }
    Ok(report)
}

fn analyze(a: &AnalyzeArgs, deadline: Deadline) -> Result<Output, Failure> {
    let set = load(&a.input, &a.budgets)?;
    let report = analyze_report(a, &set, deadline)?;
    let text = to_json(&report);
    write_copy(a.report.as_ref(), &text)?;
    Ok(Output {
        code: if report.partial { EXIT_BUDGET } else { EXIT_OK },
        text,
    })
}

fn parse_list(flag: &str, s: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|x| x.trim().parse::<u64>())
        .collect::<Result<_, _>>()
        .map_err(|_| {
            Failure::input(format!(
                "--{flag}: expected comma-separated integers, got {s:?}"
            ))
        })
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<u64>>, Failure> {
    s.split(';').map(|row| parse_list("matrix", row)).collect()
}

fn construct(c: &ConstructArgs) -> Result<Output, Failure> {
    let set = match &c.kind {
        ConstructKind::Example23 => example_2_3(),
        ConstructKind::AppendixB { p, d, matrix, seed } => {
            let a = match (matrix, seed) {
                (Some(m), _) => SkewMatrix::new(*p, parse_matrix(m)?)?,
                (None, Some(s)) => random_skew_matrix(*p, *d, *s)?,
                (None, None) => SkewMatrix::standard(*p, *d)?,
            };
            if a.dim() != *d {
                return Err(Failure::input(format!(
                    "--matrix is {0}x{0} but --d is {d}",
                    a.dim()
                )));
            }
            appendix_b_set(&a)?
        }
        ConstructKind::Coset { n, d, k, v } => {
            let v = match v {
                Some(s) => parse_list("v", s)?,
                None => vec![0; *d],
            };
            submodule_coset(&factorize(*n)?, *d, *k, &v)?
        }
        ConstructKind::Random { n, d, size, seed } => {
            random_set(&factorize(*n)?, *d, *size, *seed)?
        }
        ConstructKind::Product { n, d, sizes, seed } => {
            let m = factorize(*n)?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let locals = match sizes {
                None => random_locals(&m, *d, 6, &mut rng)?,
                Some(s) => {
                    let sizes = parse_list("sizes", s)?;
                    if sizes.len() != m.factors().len() {
                        return Err(Error::ComponentMismatch {
                            expected: m.factors().len(),
                            found: sizes.len(),
                        }
                        .into());
                    }
                    m.factors()
                        .iter()
                        .zip(sizes)
                        .map(|(pp, size)| {
                            crate::constructions::random_local_set(
                                pp.prime,
                                pp.exponent,
                                *d,
                                size as usize,
                                rand::Rng::gen(&mut rng),
                            )
                        })
                        .collect::<Result<_, _>>()?
                }
            };
            product_set(&m, &locals)?
        }
    };
    let text = point_set_json(&set);
    match &c.out {
        Some(path) => {
            write_copy(Some(path), &text)?;
            Ok(Output::ok(String::new()))
        }
        None => Ok(Output::ok(text)),
    }
}

pub fn classify_report(c: &ClassifyArgs, set: &PointSet) -> Result<ClassifyReport, Failure> {
    let mut cfg = ClassifyConfig {
        alpha_min: rational("alpha-min", &c.alpha_min)?,
        require_isotropy: !c.no_isotropy,
        ..ClassifyConfig::default()
    };
    cfg.affine.max_dim = c.max_affine_dim;
    cfg.affine.threshold = rational("affine-threshold", &c.affine_threshold)?;
    cfg.affine.budget = c.affine_budget;
    let flags = flag_map(&[
        ("alpha_min", rational_string(&cfg.alpha_min)),
        ("require_isotropy", cfg.require_isotropy.to_string()),
        ("peel", c.peel.to_string()),
        ("max_rounds", c.max_rounds.to_string()),
        ("local", c.local.to_string()),
        (
            "max_affine_dim",
            c.max_affine_dim.map_or("d-1".into(), |k| k.to_string()),
        ),
        ("affine_threshold", rational_string(&cfg.affine.threshold)),
        ("affine_budget", cfg.affine.budget.to_string()),
    ]);
    let certs = if c.peel {
        classify_peel(set, &cfg, c.max_rounds)
    } else {
        classify(set, &cfg)
            .certificate()
            .cloned()
            .into_iter()
            .collect()
    };
    // Peeled certificates refer to the remainder they were found in, so
    // only the first is re-verified against the full input.
    if let Some(first) = certs.first() {
        first.verify(set).map_err(Failure::invariant)?;
    }
    let comps = components(set);
    Ok(ClassifyReport {
        schema: CLASSIFY_SCHEMA.into(),
        input_digest: digest(set),
        flags,
        result: if certs.is_empty() {
            "unstructured"
        } else {
            "structured"
        }
        .into(),
        verified: true,
        certificates: certs.iter().map(|x| certificate_json(x, &comps)).collect(),
        local_summaries: c
            .local
            .then(|| affine_list_json(&local_summaries(set, &cfg.affine), &comps)),
    })
}

fn classify_cmd(c: &ClassifyArgs) -> Result<Output, Failure> {
    let set = load(&c.input, &c.budgets)?;
    let text = to_json(&classify_report(c, &set)?);
    write_copy(c.report.as_ref(), &text)?;
    Ok(Output::ok(text))
}

fn coverage_json(c: &Coverage) -> serde_json::Value {
    match c {
        Coverage::Exhaustive { count } => json!({"mode": "exhaustive", "count": count.to_string()}),
        Coverage::Sampled { count, seed } => {
            json!({"mode": "sampled", "count": count.to_string(), "seed": seed.to_string()})
        }
    }
}

fn pit(check: &PitCommand) -> Result<Output, Failure> {
    let report = match check {
        PitCommand::PsiCheck { input, budgets } => {
            let set = load(input, budgets)?;
            let r = psi_vanishing_check(&set);
            if !r.holds {
                return Err(Failure::invariant(
                    "annihilator polynomial does not vanish on the distance set",
                ));
            }
            PitReport {
                schema: PIT_SCHEMA.into(),
                check: "psi-check".into(),
                input_digest: Some(digest(&set)),
                flags: Flags::new(),
                passed: r.holds,
                details: BTreeMap::from([
                    ("degree".into(), json!(r.degree.to_string())),
                    (
                        "distance_set".into(),
                        json!(r
                            .distance_set
                            .iter()
                            .map(u64::to_string)
                            .collect::<Vec<_>>()),
                    ),
                ]),
            }
        }
        PitCommand::Vanish {
            input,
            degree,
            monomial_budget,
            budgets,
        } => {
            let set = load(input, budgets)?;
            let cfg = VanishingConfig {
                monomial_budget: *monomial_budget,
                ..VanishingConfig::default()
            };
            let b = vanishing_space(&set, *degree, &cfg)?;
            if !b
                .generators
                .iter()
                .all(|g| set.points().iter().all(|x| g.eval(x) == 0))
            {
                return Err(Failure::invariant(
                    "vanishing basis element does not vanish",
                ));
            }
            PitReport {
                schema: PIT_SCHEMA.into(),
                check: "vanish".into(),
                input_digest: Some(digest(&set)),
                flags: flag_map(&[
                    ("degree", degree.to_string()),
                    ("monomial_budget", monomial_budget.to_string()),
                ]),
                passed: true,
                details: BTreeMap::from([
                    ("empty".into(), json!(b.is_empty())),
                    (
                        "basis".into(),
                        serde_json::to_value(vanishing_json(&b)).expect("plain data"),
                    ),
                ]),
            }
        }
        PitCommand::BChecks {
            p,
            d,
            matrix,
            exhaustive_limit,
            samples,
            seed,
        } => {
            let a = match matrix {
                Some(m) => parse_matrix(m)?,
                None => SkewMatrix::standard(*p, *d)?.entries().to_vec(),
            };
            if a.len() != *d {
                return Err(Failure::input(format!(
                    "--matrix has {} rows but --d is {d}",
                    a.len()
                )));
            }
            let cfg = BCheckConfig {
                exhaustive_limit: *exhaustive_limit,
                samples: *samples,
                seed: *seed,
            };
            let r = b_construction_identity_checks(*p, &a, &cfg)?;
            PitReport {
                schema: PIT_SCHEMA.into(),
                check: "b-checks".into(),
                input_digest: None,
                flags: flag_map(&[
                    ("p", p.to_string()),
                    ("d", d.to_string()),
                    ("exhaustive_limit", exhaustive_limit.to_string()),
                    ("samples", samples.to_string()),
                    ("seed", seed.to_string()),
                ]),
                passed: r.all_pass(),
                details: BTreeMap::from([
                    (
                        "matrix".into(),
                        json!(a
                            .iter()
                            .map(|row| row.iter().map(u64::to_string).collect::<Vec<_>>())
                            .collect::<Vec<_>>()),
                    ),
                    ("skew_symmetric".into(), json!(r.skew_symmetric)),
                    (
                        "quadratic_form_vanishes".into(),
                        json!(r.quadratic_form_vanishes),
                    ),
                    (
                        "quadratic_coverage".into(),
                        coverage_json(&r.quadratic_coverage),
                    ),
                    ("distance_preserved".into(), json!(r.distance_preserved)),
                    ("pair_coverage".into(), coverage_json(&r.pair_coverage)),
                ]),
            }
        }
    };
    Ok(Output::ok(to_json(&report)))
}

fn verify_cmd(v: &VerifyArgs, deadline: Deadline) -> Result<Output, Failure> {
    let lemma: Lemma = v.lemma.parse()?;
    let outcome = run_trials(lemma, v.trials, v.seed, || !deadline.expired())?;
    let partial = outcome.trials < v.trials;
    let report = VerifyReport {
        schema: VERIFY_SCHEMA.into(),
        lemma: lemma.name().into(),
        trials: v.trials.to_string(),
        seed: v.seed.to_string(),
        passed: outcome.passed.to_string(),
        failed: (outcome.trials - outcome.passed).to_string(),
        counterexample: outcome.counterexample.clone(),
        partial,
    };
    let code = if !outcome.ok() {
        EXIT_INVARIANT
    } else if partial {
        EXIT_BUDGET
    } else {
        EXIT_OK
    };
    Ok(Output {
        text: to_json(&report),
        code,
    })
}
