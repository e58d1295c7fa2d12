use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use quiver_lr::counting::{count_subreps_detailed, gamma_of};
use quiver_lr::oracles::{sampled_subrep_count, si_rank_oracle, trial_seeds, OracleError, SamplePlan, DEFAULT_BUDGET};
use quiver_lr::suites::{
    kronecker_family, random_zero_pairing_suite, sample_plan_for, triple_flag_suite, Named, RandomShape,
};
use quiver_lr::{
    covariant_count, covariant_multiplicity, fiber_class, si_dimension, weight_of, BigUint, CountError, CovariantError,
    FiniteField, Instance, LrEngine,
};

mod report;

use report::{Outcome, Report, Table};

/// Seed used by randomized commands when `--seed` is not given.
const DEFAULT_SEED: u64 = 1;
/// Prime field for the determinant-rank oracle.
const RANK_PRIME: u64 = 101;

#[derive(Parser)]
#[command(
    name = "quiver-lr",
    version,
    about = "Subrepresentation counts and semi-invariant dimensions of quiver representations"
)]
struct Cli {
    /// Worker threads for labeling sums and suites.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Number of beta-dimensional subrepresentations of a general alpha-dimensional representation.
    Count {
        #[command(flatten)]
        input: InputArgs,
        /// List every nonzero summand of the labeled sum.
        #[arg(long)]
        list: bool,
    },
    /// Dimension of the semi-invariant weight space of weight <beta,.> on Rep(Q, alpha - beta).
    Sidim {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Class of the general fiber, one coefficient per vertex labeling.
    FiberClass {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Covariant count and multiplicity for the `mu` lines of the instance.
    Covariant {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Finite-field subrepresentation counts of sampled representations.
    Sample {
        #[command(flatten)]
        input: InputArgs,
        /// Prime base field.
        #[arg(long, default_value_t = 101)]
        p: u64,
        /// Largest extension degree to enumerate over.
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Largest number of subspaces one enumeration may generate.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check N = M and the oracles on an instance or a generated suite.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file, or `-` for standard input.
    file: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Instance file, or `-` for standard input.
    file: Option<PathBuf>,
    /// The theta(2r) family, r = 1..4.
    #[arg(long)]
    paper_examples: bool,
    /// Number of random instances with <beta,gamma> = 0.
    #[arg(long, value_name = "N")]
    random: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = 4)]
    max_verts: usize,
    #[arg(long, default_value_t = 4)]
    max_arrows: usize,
    #[arg(long, default_value_t = 3)]
    max_dim: usize,
    /// All triple flag instances in the r x (n-r) box.
    #[arg(long)]
    tripleflag: bool,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    r: usize,
    /// Also compare with modal finite-field counts.
    #[arg(long)]
    sample: bool,
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

/// Errors that end a command, with their exit code.
enum Failure {
    Usage(String),
    Budget(String),
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<CovariantError> for Failure {
    fn from(e: CovariantError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.jobs.max(1))
        .build_global()
    {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let engine = LrEngine::new();
    let result = match cli.command {
        Command::Count { input, list } => load(&input).and_then(|i| cmd_count(&engine, &i, list)),
        Command::Sidim { input } => load(&input).and_then(|i| cmd_sidim(&engine, &i)),
        Command::FiberClass { input } => load(&input).and_then(|i| cmd_fiber_class(&engine, &i)),
        Command::Covariant { input } => load(&input).and_then(|i| cmd_covariant(&engine, &i)),
        Command::Sample {
            input,
            p,
            degree,
            trials,
            seed,
            budget,
        } => load(&input).and_then(|i| {
            let mut plan = SamplePlan::new(p, degree, trials, seed);
            plan.budget = budget;
            cmd_sample(&i, &plan)
        }),
        Command::Verify(args) => cmd_verify(&engine, &args),
    };
    match result {
        Ok(report) => {
            // A closed pipe (for example `| head`) is not an error.
            let _ = write!(std::io::stdout().lock(), "{report}");
            match report.outcome {
                Outcome::Pass => ExitCode::SUCCESS,
                Outcome::Fail => ExitCode::from(1),
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn load(input: &InputArgs) -> Result<Instance, Failure> {
    let text = if input.file.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Usage(format!("reading standard input: {e}")))?;
        s
    } else {
        std::fs::read_to_string(&input.file)
            .map_err(|e| Failure::Usage(format!("reading {}: {e}", input.file.display())))?
    };
    text.parse::<Instance>()
        .map_err(|e| Failure::Usage(format!("{}: {e}", input.file.display())))
}

fn cmd_count(engine: &LrEngine, inst: &Instance, list: bool) -> Result<Report, Failure> {
    let start = Instant::now();
    let sum = count_subreps_detailed(engine, &inst.quiver, &inst.beta, &inst.alpha, list)?;
    let mut r = Report::new("count");
    r.deterministic();
    r.line(format!("N = {}", sum.total));
    for s in &sum.summands {
        r.line(format!("  {} -> {}", s.labeling, s.value));
    }
    r.kv("euler_pairing", inst.pairing());
    r.kv("n", &sum.total);
    r.kv("labelings_examined", sum.examined);
    r.kv("elapsed_ms", start.elapsed().as_millis());
    Ok(r)
}

fn cmd_sidim(engine: &LrEngine, inst: &Instance) -> Result<Report, Failure> {
    let start = Instant::now();
    let m = si_dimension(engine, &inst.quiver, &inst.beta, &inst.alpha)?;
    let sigma = weight_of(&inst.quiver, &inst.beta)?;
    let mut r = Report::new("sidim");
    r.deterministic();
    r.line(format!("M = {m}, sigma = {sigma}"));
    r.kv("euler_pairing", inst.pairing());
    r.kv("m", &m);
    r.kv("sigma", &sigma);
    r.kv("elapsed_ms", start.elapsed().as_millis());
    Ok(r)
}

fn cmd_fiber_class(engine: &LrEngine, inst: &Instance) -> Result<Report, Failure> {
    let start = Instant::now();
    let fc = fiber_class(engine, &inst.quiver, &inst.beta, &inst.alpha)?;
    let mut r = Report::new("fiber-class");
    r.deterministic();
    for (key, c) in &fc.coeffs {
        r.line(format!("{key} = {c}"));
    }
    if fc.coeffs.is_empty() {
        r.line("(zero class)");
    }
    r.kv("euler_pairing", inst.pairing());
    r.kv("terms", fc.coeffs.len());
    r.kv("elapsed_ms", start.elapsed().as_millis());
    Ok(r)
}

fn cmd_covariant(engine: &LrEngine, inst: &Instance) -> Result<Report, Failure> {
    let mu = inst
        .mu
        .as_ref()
        .ok_or_else(|| Failure::Usage("instance has no `mu` lines".into()))?;
    let n = covariant_count(engine, &inst.quiver, &inst.beta, &inst.alpha, mu)?;
    let m = covariant_multiplicity(engine, &inst.quiver, &inst.beta, &inst.alpha, mu)?;
    let mut r = Report::new("covariant");
    r.deterministic();
    r.line(format!("N(mu) = {n}, M(mu) = {m}"));
    r.kv("mu", mu);
    r.kv("n", &n);
    r.kv("m", &m);
    if n != m {
        r.fail();
    }
    Ok(r)
}

fn cmd_sample(inst: &Instance, plan: &SamplePlan) -> Result<Report, Failure> {
    let s = sampled_subrep_count(&inst.quiver, &inst.beta, &inst.alpha, plan)?;
    let mut r = Report::new("sample");
    match s.modal {
        Some(m) => r.line(format!("modal count = {m} over F_{}^{}", plan.p, plan.max_degree)),
        None => r.line(format!(
            "inconclusive: tied modal count over F_{}^{}",
            plan.p, plan.max_degree
        )),
    }
    for (i, t) in s.trials.iter().enumerate() {
        let mut counts: Vec<String> = t.counts.iter().map(u64::to_string).collect();
        if t.over_budget {
            counts.push("over budget".into());
        }
        r.line(format!(
            "  trial {i} seed {} counts by degree {}",
            t.seed,
            counts.join(",")
        ));
    }
    r.kv("seed", plan.seed);
    r.kv("p", plan.p);
    r.kv("max_degree", plan.max_degree);
    r.kv("trials", plan.trials);
    r.kv("budget", plan.budget);
    let tally: Vec<String> = s.tally.iter().map(|(k, v)| format!("{k}:{v}")).collect();
    r.kv("tally", tally.join(","));
    r.kv("over_budget", s.over_budget);
    r.kv("modal", s.modal.map_or("inconclusive".to_string(), |m| m.to_string()));
    if s.modal.is_none() {
        r.fail();
    }
    Ok(r)
}

/// Columns of the verification table for one zero-pairing instance.
struct Row {
    n: BigUint,
    m: BigUint,
    rank: usize,
    sampled: Option<String>,
    expected: Option<BigUint>,
    pass: bool,
}

fn check_instance(
    engine: &LrEngine,
    inst: &Instance,
    seed: u64,
    args: &VerifyArgs,
    expected: Option<BigUint>,
) -> Result<Row, Failure> {
    let (q, beta, alpha) = (&inst.quiver, &inst.beta, &inst.alpha);
    let n = count_subreps_detailed(engine, q, beta, alpha, false)?.total;
    let m = si_dimension(engine, q, beta, alpha)?;
    let gamma = gamma_of(q, beta, alpha)?;
    let extra = usize::try_from(&m).unwrap_or(usize::MAX - 3) + 3;
    let field = FiniteField::prime(RANK_PRIME).expect("101 is prime");
    let rank = si_rank_oracle(q, beta, &gamma, extra, extra, &field, seed)?;
    let mut pass = n == m && BigUint::from(rank) == m && expected.as_ref().is_none_or(|e| *e == n);
    let sampled = if args.sample {
        match sample_plan_for(&inst.quiver, alpha, beta, args.trials, seed, args.budget) {
            None => Some("over budget".to_string()),
            Some(plan) => match sampled_subrep_count(q, beta, alpha, &plan) {
                Ok(s) => {
                    pass &= s.modal.map(BigUint::from) == Some(n.clone());
                    Some(format!(
                        "{} (F_{}^{})",
                        s.modal.map_or("tie".to_string(), |v| v.to_string()),
                        plan.p,
                        plan.max_degree
                    ))
                }
                Err(OracleError::BudgetExceeded { .. }) => Some("over budget".to_string()),
                Err(e) => return Err(e.into()),
            },
        }
    } else {
        None
    };
    Ok(Row {
        n,
        m,
        rank,
        sampled,
        expected,
        pass,
    })
}

fn cmd_verify(engine: &LrEngine, args: &VerifyArgs) -> Result<Report, Failure> {
    let mut suites: Vec<(Named, Option<BigUint>)> = Vec::new();
    let mut r = Report::new("verify");
    if let Some(file) = &args.file {
        let inst = load(&InputArgs { file: file.clone() })?;
        if inst.pairing() != 0 || inst.mu.is_some() {
            return verify_covariants(engine, &inst);
        }
        suites.push((
            Named {
                name: file.display().to_string(),
                instance: inst,
            },
            None,
        ));
    }
    if args.paper_examples {
        for rr in 1..=4u32 {
            let binom = (1..=rr).fold(BigUint::from(1u8), |acc, i| acc * (rr + i) / i);
            suites.push((kronecker_family(rr as usize), Some(binom)));
        }
    }
    if let Some(count) = args.random {
        let shape = RandomShape {
            max_verts: args.max_verts,
            max_arrows: args.max_arrows,
            max_dim: args.max_dim,
        };
        suites.extend(
            random_zero_pairing_suite(args.seed, count, shape)
                .into_iter()
                .map(|n| (n, None)),
        );
        r.kv("random_instances", count);
    }
    if args.tripleflag {
        if args.r > args.n {
            return Err(Failure::Usage(format!("--r {} exceeds --n {}", args.r, args.n)));
        }
        for (named, expected) in triple_flag_suite(engine, args.r, args.n)? {
            suites.push((named, Some(BigUint::from(expected))));
        }
    }
    if suites.is_empty() {
        return Err(Failure::Usage(
            "nothing to verify; give a file, --paper-examples, --random N or --tripleflag".into(),
        ));
    }
    let seeds = trial_seeds(args.seed, suites.len());
    use rayon::prelude::*;
    let rows: Vec<Result<Row, Failure>> = suites
        .par_iter()
        .zip(seeds.par_iter())
        .map(|((named, expected), &seed)| check_instance(engine, &named.instance, seed, args, expected.clone()))
        .collect();
    let mut table = Table::new(&["instance", "expected", "N", "M", "rank", "sampled", "verdict"]);
    let mut failures = Vec::new();
    let mut passed = 0;
    for ((named, _), row) in suites.iter().zip(rows) {
        let row = row?;
        let dash = || "-".to_string();
        table.row(vec![
            named.name.clone(),
            row.expected.as_ref().map_or_else(dash, |e| e.to_string()),
            row.n.to_string(),
            row.m.to_string(),
            row.rank.to_string(),
            row.sampled.clone().unwrap_or_else(dash),
            if row.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
        if row.pass {
            passed += 1;
        } else {
            failures.push(named);
        }
    }
    r.line(table.to_string());
    r.line(format!("{passed}/{} passed", suites.len()));
    for named in &failures {
        r.line(format!("# replay: {}", named.name));
        r.line(named.instance.to_string());
        r.fail();
    }
    r.kv("seed", args.seed);
    r.kv("instances", suites.len());
    r.kv("passed", passed);
    r.kv("rank_field", RANK_PRIME);
    Ok(r)
}

/// For a positive pairing (or explicit `mu`), compares the covariant count,
/// the covariant multiplicity and the fiber class coefficient for every
/// labeling in the support of the class, or just the given one.
fn verify_covariants(engine: &LrEngine, inst: &Instance) -> Result<Report, Failure> {
    let (q, beta, alpha) = (&inst.quiver, &inst.beta, &inst.alpha);
    let fc = fiber_class(engine, q, beta, alpha)?;
    let keys: Vec<_> = match &inst.mu {
        Some(mu) => vec![mu.clone()],
        None => fc.coeffs.keys().cloned().collect(),
    };
    let mut r = Report::new("verify");
    r.deterministic();
    let mut table = Table::new(&["mu", "fiber", "N(mu)", "M(mu)", "verdict"]);
    let mut passed = 0;
    for mu in &keys {
        let coeff = fc.coefficient(mu);
        let n = covariant_count(engine, q, beta, alpha, mu)?;
        let m = covariant_multiplicity(engine, q, beta, alpha, mu)?;
        let ok = n == m && n == coeff;
        passed += ok as usize;
        table.row(vec![
            mu.to_string(),
            coeff.to_string(),
            n.to_string(),
            m.to_string(),
            if ok { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    r.line(table.to_string());
    r.line(format!("{passed}/{} passed", keys.len()));
    if passed != keys.len() {
        r.fail();
    }
    r.kv("euler_pairing", inst.pairing());
    r.kv("instances", keys.len());
    r.kv("passed", passed);
    Ok(r)
}
