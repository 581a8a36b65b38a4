//! Command-line front end: argument handling, dispatch and exit codes.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use trivext::module::ModuleSpec;
use trivext::paperlab::{
    ex22_scenario, ex23_scenario, lemma12_scenario, residue_extension, thm11_part2_bounded, thm11_structure_scenario,
    thm13_product_scenario, CheckStatus, ScenarioId, ScenarioReport,
};
use trivext::resolve::{factor_verdicts, global_dim_factors, minimal_resolution, pd_verdict, verdict_of, PdVerdict};
use trivext::trivial::{enumerate_ideals_with, ideal_pair_form_probe};
use trivext::{construct_ring_with, Config, Ring};

use crate::expr::{elements, parse_ideal, parse_module_expr, parse_ring_expr, RingExpr, SyntaxError};
use crate::report::{
    FactorProbeEntry, FactorVerdict, GlobalDimensionPayload, IdealEntry, IdealsPayload, ParsePayload, Payload,
    PdPayload, Periodicity, ReportDocument, ResolutionPayload,
};

#[derive(Debug, Parser)]
#[command(name = "trivext", version, about = "Finite rings, trivial extensions and free resolutions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Resolution depth [default: 6]
    #[arg(long, global = true)]
    depth: Option<usize>,
    /// Seed for randomized scenarios
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Candidate cap for exhaustive searches, e.g. 1000000 or 1e6 [default: 1e6]
    #[arg(long, global = true, value_parser = parse_count)]
    budget: Option<u64>,
    /// Include differentials and timings
    #[arg(long, global = true)]
    verbose: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// TOML file with configuration overrides
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a ring expression and print its canonical form
    Parse {
        #[arg(long)]
        expr: String,
    },
    /// Minimal free resolution of a module over a local ring
    Resolve(RingModule),
    /// Projective-dimension verdict, factor by factor
    Pd(RingModule),
    /// Global-dimension probe through the residue fields of the local factors
    Gldim {
        #[arg(long)]
        ring: String,
    },
    /// Every ideal of a finite ring, with the pair-form probe on trivial extensions
    Ideals {
        #[arg(long)]
        ring: String,
    },
    /// Run a scenario, or all of them
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct RingModule {
    #[arg(long)]
    ring: String,
    #[arg(long)]
    module: String,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// lemma12, thm11-structure, thm11-part2, thm13, ex22, ex23 or all
    scenario: String,
    #[arg(long)]
    ring: Option<String>,
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long)]
    module: Option<String>,
    #[arg(long)]
    prime: Option<u64>,
    #[arg(long)]
    precision: Option<usize>,
    #[arg(long)]
    degree_bound: Option<usize>,
    #[arg(long)]
    dim_e: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
}

fn parse_count(s: &str) -> Result<u64, String> {
    if let Ok(n) = s.parse::<u64>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x >= 0.0 && x.fract() == 0.0 && x < u64::MAX as f64 => Ok(x as u64),
        _ => Err(format!("{s:?} is not a non-negative integer")),
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("--{flag}: {source}")]
    Syntax { flag: &'static str, source: SyntaxError },
    #[error("config {path}: {message}")]
    Config { path: String, message: String },
    #[error(transparent)]
    Core(#[from] trivext::Error),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Core(trivext::Error::Inconsistent(_) | trivext::Error::AxiomViolation(_)) => 1,
            _ => 2,
        }
    }
}

pub fn status_code(s: CheckStatus) -> i32 {
    match s {
        CheckStatus::Pass => 0,
        CheckStatus::Fail => 1,
        CheckStatus::RecordedDiscrepancy => 3,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    let format = cli.format;
    match execute(cli) {
        Ok(doc) => {
            let stdout = match format {
                Format::Json => doc.to_json() + "\n",
                Format::Markdown => doc.to_markdown(),
            };
            Outcome { code: status_code(doc.status), stdout, stderr: String::new() }
        }
        Err(e) => Outcome { code: e.exit_code(), stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

struct Ctx {
    cfg: Config,
    seed: u64,
    verbose: bool,
    settings: BTreeMap<String, String>,
}

impl Ctx {
    fn set(&mut self, key: &str, value: impl ToString) {
        self.settings.insert(key.to_string(), value.to_string());
    }

    fn ring(&self, text: &str) -> Result<Ring, AppError> {
        let expr = parse_ring_expr(text).map_err(|source| AppError::Syntax { flag: "ring", source })?;
        Ok(construct_ring_with(&expr.to_descriptor(), &self.cfg)?)
    }

    fn module(&self, ring: &Ring, text: &str) -> Result<ModuleSpec, AppError> {
        let expr = parse_module_expr(text).map_err(|source| AppError::Syntax { flag: "module", source })?;
        Ok(expr.to_module(ring)?)
    }
}

fn load_config(path: &PathBuf) -> Result<Config, AppError> {
    let err = |message: String| AppError::Config { path: path.display().to_string(), message };
    let text = std::fs::read_to_string(path).map_err(|e| err(e.to_string()))?;
    toml::from_str(&text).map_err(|e| err(e.to_string()))
}

fn execute(cli: Cli) -> Result<ReportDocument, AppError> {
    let mut cfg = match &cli.config {
        Some(path) => load_config(path)?,
        None => Config::default(),
    };
    if let Some(d) = cli.depth {
        cfg.depth = d;
    }
    if let Some(b) = cli.budget {
        cfg.budget = b;
    }
    let mut ctx = Ctx { cfg, seed: cli.seed, verbose: cli.verbose, settings: BTreeMap::new() };
    ctx.set("depth", ctx.cfg.depth);
    ctx.set("budget", ctx.cfg.budget);
    ctx.set("seed", ctx.seed);
    ctx.set("verbose", ctx.verbose);
    let (name, payloads) = match cli.command {
        Command::Parse { expr } => ("parse", vec![parse_cmd(&mut ctx, &expr)?]),
        Command::Resolve(rm) => ("resolve", vec![resolve_cmd(&mut ctx, &rm)?]),
        Command::Pd(rm) => ("pd", vec![pd_cmd(&mut ctx, &rm)?]),
        Command::Gldim { ring } => ("gldim", vec![gldim_cmd(&mut ctx, &ring)?]),
        Command::Ideals { ring } => ("ideals", vec![ideals_cmd(&mut ctx, &ring)?]),
        Command::Verify(args) => ("verify", verify_cmd(&mut ctx, &args)?),
    };
    Ok(ReportDocument::new(name, ctx.settings, payloads))
}

fn parse_cmd(ctx: &mut Ctx, text: &str) -> Result<Payload, AppError> {
    ctx.set("expr", text);
    let expr = parse_ring_expr(text).map_err(|source| AppError::Syntax { flag: "expr", source })?;
    let descriptor = expr.to_descriptor();
    descriptor.validate()?;
    Ok(Payload::Parse(ParsePayload {
        input: text.to_string(),
        canonical: expr.to_string(),
        descriptor: descriptor.to_string(),
        ast: serde_json::to_value(&expr).expect("ast serializes"),
    }))
}

fn resolve_cmd(ctx: &mut Ctx, rm: &RingModule) -> Result<Payload, AppError> {
    ctx.set("ring", &rm.ring);
    ctx.set("module", &rm.module);
    let r = ctx.ring(&rm.ring)?;
    let m = ctx.module(&r, &rm.module)?;
    let res = minimal_resolution(&m, ctx.cfg.depth)?;
    let differentials = ctx.verbose.then(|| {
        res.steps.iter().map(|d| (0..d.rows()).map(|i| d.row(i).iter().map(|&x| r.render(x)).collect()).collect()).collect()
    });
    Ok(Payload::Resolution(ResolutionPayload {
        ring: r.to_string(),
        module: m.to_string(),
        betti: res.betti.clone(),
        depth_reached: res.depth_reached,
        terminated: res.terminated,
        minimal: res.minimal,
        periodicity: res.periodicity().map(|(offset, period)| Periodicity { offset, period }),
        verdict: verdict_of(&res)?,
        differentials,
    }))
}

fn pd_cmd(ctx: &mut Ctx, rm: &RingModule) -> Result<Payload, AppError> {
    ctx.set("ring", &rm.ring);
    ctx.set("module", &rm.module);
    let r = ctx.ring(&rm.ring)?;
    let m = ctx.module(&r, &rm.module)?;
    let factors: Vec<FactorVerdict> = if r.is_local() {
        vec![FactorVerdict { factor: r.to_string(), verdict: pd_verdict(&m, ctx.cfg.depth)? }]
    } else {
        let split = factor_verdicts(&m, ctx.cfg.depth)?;
        split.into_iter().map(|(f, verdict)| FactorVerdict { factor: f.ring.to_string(), verdict }).collect()
    };
    let verdict = factors.iter().fold(PdVerdict::Finite { pd: 0 }, |acc, f| acc.max(f.verdict.clone()));
    Ok(Payload::Pd(PdPayload { ring: r.to_string(), module: m.to_string(), verdict, factors }))
}

fn gldim_cmd(ctx: &mut Ctx, ring: &str) -> Result<Payload, AppError> {
    ctx.set("ring", ring);
    let r = ctx.ring(ring)?;
    let factors: Vec<FactorProbeEntry> = if r.is_local() {
        let is_field = r.is_field();
        let residue_verdict = if is_field {
            PdVerdict::Finite { pd: 0 }
        } else {
            pd_verdict(&ModuleSpec::residue_field(&r)?, ctx.cfg.depth)?
        };
        vec![FactorProbeEntry { factor: r.to_string(), is_field, residue_verdict }]
    } else {
        let probes = global_dim_factors(&r, ctx.cfg.depth)?;
        probes
            .into_iter()
            .map(|p| FactorProbeEntry { factor: p.factor.to_string(), is_field: p.is_field, residue_verdict: p.residue_verdict })
            .collect()
    };
    let verdict = factors.iter().fold(PdVerdict::Finite { pd: 0 }, |acc, p| acc.max(p.residue_verdict.clone()));
    Ok(Payload::GlobalDimension(GlobalDimensionPayload { ring: r.to_string(), verdict, factors }))
}

fn ideals_cmd(ctx: &mut Ctx, ring: &str) -> Result<Payload, AppError> {
    ctx.set("ring", ring);
    let r = ctx.ring(ring)?;
    let census = enumerate_ideals_with(&r, ctx.cfg.ideal_cutoff)?;
    let trivial = r.trivial_parts().is_some();
    let ideals = census
        .par_iter()
        .map(|ideal| {
            let generators = ideal.generators.iter().map(|&g| r.render(g)).collect();
            let (pair_form, witness) = if trivial {
                let probe = ideal_pair_form_probe(&r, &ideal.generators)?;
                (Some(probe.has_pair_form), probe.counterexample_witness.map(|w| r.render(w)))
            } else {
                (None, None)
            };
            Ok(IdealEntry { generators, size: ideal.members.len(), pair_form, witness })
        })
        .collect::<trivext::Result<Vec<_>>>()?;
    Ok(Payload::Ideals(IdealsPayload {
        ring: r.to_string(),
        count: ideals.len(),
        pair_form_count: trivial.then(|| ideals.iter().filter(|e| e.pair_form == Some(true)).count()),
        ideals,
    }))
}

type Job = Box<dyn Fn(&Config, u64) -> Result<ScenarioReport, AppError> + Send + Sync>;

fn verify_cmd(ctx: &mut Ctx, args: &VerifyArgs) -> Result<Vec<Payload>, AppError> {
    ctx.set("scenario", &args.scenario);
    let ids: Vec<ScenarioId> = if args.scenario == "all" {
        let given = given_flags(args);
        if let Some(flag) = given.first() {
            return Err(AppError::Usage(format!("--{flag} needs a single scenario, not all")));
        }
        ScenarioId::ALL.to_vec()
    } else {
        vec![args.scenario.parse().map_err(|_| {
            AppError::Usage(format!(
                "unknown scenario {:?}; expected one of {} or all",
                args.scenario,
                ScenarioId::ALL.map(ScenarioId::as_str).join(", ")
            ))
        })?]
    };
    for (k, v) in instance_settings(args) {
        ctx.set(k, v);
    }
    let mut jobs: Vec<Job> = Vec::new();
    for id in ids {
        jobs.extend(scenario_jobs(id, args)?);
    }
    let (cfg, seed, verbose) = (ctx.cfg.clone(), ctx.seed, ctx.verbose);
    let reports: Vec<Result<ScenarioReport, AppError>> = jobs
        .par_iter()
        .map(|job| {
            let start = Instant::now();
            let mut report = job(&cfg, seed)?;
            if verbose {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            Ok(report)
        })
        .collect();
    reports.into_iter().map(|r| r.map(Payload::Scenario)).collect()
}

fn instance_settings(args: &VerifyArgs) -> Vec<(&'static str, String)> {
    let mut out = Vec::new();
    let strings = [("ring", &args.ring), ("ideal", &args.ideal), ("module", &args.module)];
    out.extend(strings.into_iter().filter_map(|(k, v)| v.clone().map(|v| (k, v))));
    let numbers = [
        ("prime", args.prime.map(|x| x as usize)),
        ("precision", args.precision),
        ("degree-bound", args.degree_bound),
        ("dim-e", args.dim_e),
        ("trials", args.trials),
    ];
    out.extend(numbers.into_iter().filter_map(|(k, v)| v.map(|v| (k, v.to_string()))));
    out
}

fn given_flags(args: &VerifyArgs) -> Vec<&'static str> {
    instance_settings(args).into_iter().map(|(k, _)| k).collect()
}

fn only(args: &VerifyArgs, id: ScenarioId, allowed: &[&str]) -> Result<(), AppError> {
    match given_flags(args).into_iter().find(|f| !allowed.contains(f)) {
        Some(flag) => Err(AppError::Usage(format!("--{flag} does not apply to {id}"))),
        None => Ok(()),
    }
}

fn ring_of(text: &str, cfg: &Config) -> Result<Ring, AppError> {
    let expr = parse_ring_expr(text).map_err(|source| AppError::Syntax { flag: "ring", source })?;
    Ok(construct_ring_with(&expr.to_descriptor(), cfg)?)
}

fn check_syntax(flag: &'static str, text: &Option<String>, parse: fn(&str) -> Result<(), SyntaxError>) -> Result<(), AppError> {
    match text {
        Some(t) => parse(t).map_err(|source| AppError::Syntax { flag, source }),
        None => Ok(()),
    }
}

/// Default instances, or the single instance the flags describe.
fn scenario_jobs(id: ScenarioId, args: &VerifyArgs) -> Result<Vec<Job>, AppError> {
    check_syntax("ring", &args.ring, |t| parse_ring_expr(t).map(drop))?;
    check_syntax("ideal", &args.ideal, |t| parse_ideal(t).map(drop))?;
    check_syntax("module", &args.module, |t| parse_module_expr(t).map(drop))?;
    let jobs: Vec<Job> = match id {
        ScenarioId::Lemma12 => {
            only(args, id, &["ring", "ideal"])?;
            let instances: Vec<(String, String)> = match (&args.ring, &args.ideal) {
                (Some(r), Some(i)) => vec![(r.clone(), i.clone())],
                (None, None) => [("Z/4", "(2)"), ("GF(2)[x]/(x^2)", "(x)"), ("GF(2)[x]/(x^4)", "(x)")]
                    .map(|(r, i)| (r.to_string(), i.to_string()))
                    .to_vec(),
                _ => return Err(AppError::Usage("lemma12 takes --ring and --ideal together".into())),
            };
            instances
                .into_iter()
                .map(|(ring, ideal)| -> Job {
                    Box::new(move |cfg, _| {
                        let a = ring_of(&ring, cfg)?;
                        let gens = parse_ideal(&ideal).map_err(|source| AppError::Syntax { flag: "ideal", source })?;
                        Ok(lemma12_scenario(&a, &elements(&a, &gens)?, cfg)?)
                    })
                })
                .collect()
        }
        ScenarioId::Thm11Structure => {
            only(args, id, &["ring", "module"])?;
            let instances: Vec<(String, Option<String>)> = match (&args.ring, &args.module) {
                (Some(r), m) => vec![(r.clone(), m.clone())],
                (None, None) => vec![
                    ("Z/4".into(), Some("quot(((2,0)))".into())),
                    ("GF(2)[x]/(x^2)".into(), None),
                    ("Z/4".into(), Some("free(1)".into())),
                ],
                (None, Some(_)) => return Err(AppError::Usage("thm11-structure takes --module only with --ring".into())),
            };
            instances
                .into_iter()
                .map(|(ring, module)| -> Job {
                    Box::new(move |cfg, _| {
                        let r = residue_extension(&ring_of(&ring, cfg)?)?;
                        let h0 = match &module {
                            Some(text) => {
                                let m = parse_module_expr(text).map_err(|source| AppError::Syntax { flag: "module", source })?;
                                m.to_module(&r)?
                            }
                            None => ModuleSpec::residue_field(&r)?,
                        };
                        Ok(thm11_structure_scenario(&h0, cfg)?)
                    })
                })
                .collect()
        }
        ScenarioId::Thm11Part2 => {
            only(args, id, &["prime", "precision", "degree-bound"])?;
            let instances = if args.prime.is_none() && args.precision.is_none() && args.degree_bound.is_none() {
                vec![(2, 8, 6), (3, 5, 3)]
            } else {
                let n = args.precision.unwrap_or(8);
                vec![(args.prime.unwrap_or(2), n, args.degree_bound.unwrap_or(n.saturating_sub(2)))]
            };
            instances
                .into_iter()
                .map(|(p, n, dg)| -> Job { Box::new(move |_, _| Ok(thm11_part2_bounded(p, n, dg)?)) })
                .collect()
        }
        ScenarioId::Thm13 => {
            only(args, id, &["ring", "trials"])?;
            let ring = args.ring.clone().unwrap_or_else(|| "prod(Z/4, GF(2))".into());
            let trials = args.trials.unwrap_or(20);
            let job: Job = Box::new(move |cfg, seed| {
                let expr = parse_ring_expr(&ring).map_err(|source| AppError::Syntax { flag: "ring", source })?;
                let RingExpr::Prod { mut factors } = expr else {
                    return Err(AppError::Usage(format!("thm13 needs a product ring, got {ring}")));
                };
                let first = factors.remove(0);
                let rest = if factors.len() == 1 { factors.remove(0) } else { RingExpr::Prod { factors } };
                let a = construct_ring_with(&first.to_descriptor(), cfg)?;
                let b = construct_ring_with(&rest.to_descriptor(), cfg)?;
                Ok(thm13_product_scenario(&a, &b, trials, seed, cfg)?)
            });
            vec![job]
        }
        ScenarioId::Ex22 => {
            only(args, id, &["prime", "precision"])?;
            let instances = if args.prime.is_none() && args.precision.is_none() {
                vec![(2, 4), (2, 2), (3, 2)]
            } else {
                vec![(args.prime.unwrap_or(2), args.precision.unwrap_or(4))]
            };
            instances.into_iter().map(|(p, n)| -> Job { Box::new(move |cfg, _| Ok(ex22_scenario(p, n, cfg)?)) }).collect()
        }
        ScenarioId::Ex23 => {
            only(args, id, &["prime", "dim-e"])?;
            let instances = if args.prime.is_none() && args.dim_e.is_none() {
                vec![(2, 1), (2, 2)]
            } else {
                vec![(args.prime.unwrap_or(2), args.dim_e.unwrap_or(1))]
            };
            instances.into_iter().map(|(p, d)| -> Job { Box::new(move |cfg, _| Ok(ex23_scenario(p, d, cfg)?)) }).collect()
        }
    };
    Ok(jobs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Outcome {
        run(std::iter::once("trivext").chain(args.iter().copied()))
    }

    #[test]
    fn counts_accept_scientific_notation() {
        assert_eq!(parse_count("1e6"), Ok(1_000_000));
        assert_eq!(parse_count("250"), Ok(250));
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("-3").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run_args(&["verify"]).code, 2);
        assert_eq!(run_args(&["verify", "nope"]).code, 2);
        assert_eq!(run_args(&["verify", "ex22", "--ring", "Z/4"]).code, 2);
        assert_eq!(run_args(&["verify", "all", "--prime", "3"]).code, 2);
        assert_eq!(run_args(&["verify", "lemma12", "--ring", "Z/4"]).code, 2);
        assert_eq!(run_args(&["--help"]).code, 0);
    }

    #[test]
    fn syntax_errors_name_the_flag() {
        let out = run_args(&["parse", "--expr", "triv(Z/4"]);
        assert_eq!(out.code, 2);
        assert_eq!(out.stderr, "error: --expr: syntax error at line 1, column 9: expected \",\"\n");
    }
}
