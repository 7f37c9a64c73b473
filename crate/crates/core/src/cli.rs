//! Command-line interface.
//!
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 check failed (fixture mismatch or unmet `--expect`), 2 usage or
//! input error, 3 capacity exceeded.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cores::{compute_core_diagnostic, inclusion_report, Concept};
use crate::doc::{allocation_literal, parse_allocation, parse_economy, serialize_economy};
use crate::economy::{Allocation, Economy};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::fixtures;
use crate::generator::{generate, GeneratorSpec};
use crate::reduction::{check, reduce, Counterexample, Mode, Solution};
use crate::set::SmallSet;
use crate::taxonomy;
use crate::yrmh::{render_trace, validate_order, yrmh_all_outcomes, yrmh_run};

#[derive(Parser)]
#[command(
    name = "coresolve",
    version,
    about = "Solver for discrete exchange economies with general endowments"
)]
struct Cli {
    /// Force sequential execution even when parallel support is compiled in.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute one or more core concepts of an economy.
    Cores(CoresArgs),
    /// Run the trading mechanism for one priority order, or collect all outcomes.
    Yrmh(YrmhArgs),
    /// Compute every core concept and report all pairwise inclusion relations.
    Inclusions { file: PathBuf },
    /// List the ownership-structure classes an economy belongs to.
    Classify { file: PathBuf },
    /// Build the reduced economy after a coalition departs with its assignment.
    Reduce(ReduceArgs),
    /// Augment an economy with an artificial agent.
    Augment(AugmentArgs),
    /// Check a consistency property of a solution concept on an economy.
    Consistency(ConsistencyArgs),
    /// Generate a random economy from a seed.
    Gen(GenArgs),
    /// List or replay the built-in example economies.
    Fixtures(FixturesArgs),
}

#[derive(Args)]
struct CoresArgs {
    file: PathBuf,
    /// Concept name; repeatable. Defaults to all seven concepts.
    #[arg(long = "concept")]
    concepts: Vec<String>,
}

#[derive(Args)]
struct YrmhArgs {
    file: PathBuf,
    /// Priority order as comma-separated agent labels, highest first.
    #[arg(long, conflicts_with = "all_orders")]
    order: Option<String>,
    /// Print the step-by-step trace before the outcome.
    #[arg(long, requires = "order")]
    trace: bool,
    /// Collect the outcomes over every priority order.
    #[arg(long)]
    all_orders: bool,
}

#[derive(Args)]
struct ReduceArgs {
    file: PathBuf,
    /// Allocation literal, e.g. {"1":"a","2":"null"}.
    #[arg(long)]
    allocation: String,
    /// Departing coalition as comma-separated agent labels.
    #[arg(long)]
    remove: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum AugmentKind {
    Housing,
    PrivatePublic,
}

#[derive(Args)]
struct AugmentArgs {
    file: PathBuf,
    #[arg(long, value_enum)]
    kind: AugmentKind,
}

#[derive(Clone, Copy, ValueEnum)]
enum Expectation {
    Holds,
    Fails,
}

#[derive(Args)]
struct ConsistencyArgs {
    file: PathBuf,
    /// Solution concept: a core name, or "yrmh".
    #[arg(long)]
    concept: String,
    /// full | weak | strong | strong-e0
    #[arg(long)]
    mode: String,
    /// Exit nonzero when the verdict differs from the expectation.
    #[arg(long, value_enum)]
    expect: Option<Expectation>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    agents: usize,
    #[arg(long)]
    objects: usize,
    /// Constrain the ownership structure to a named class.
    #[arg(long)]
    class: Option<String>,
    /// Acceptability density in (0, 1].
    #[arg(long, default_value_t = 1.0)]
    density: f64,
}

#[derive(Args)]
struct FixturesArgs {
    /// List the registered fixture ids and descriptions.
    #[arg(long, conflicts_with = "run")]
    list: bool,
    /// Replay one fixture by id, or "all".
    #[arg(long)]
    run: Option<String>,
}

/// Entry point: parse argv, dispatch, and return the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version output are successes; everything else is usage.
            let code = if err.exit_code() == 0 { 0 } else { 2 };
            let _ = err.print();
            return code;
        }
    };
    let exec = if cli.sequential {
        Exec::Sequential
    } else {
        Exec::default()
    };
    match dispatch(cli.command, exec) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            err.exit_code()
        }
    }
}

fn dispatch(command: Command, exec: Exec) -> Result<i32> {
    match command {
        Command::Cores(args) => cmd_cores(args, exec),
        Command::Yrmh(args) => cmd_yrmh(args, exec),
        Command::Inclusions { file } => cmd_inclusions(file, exec),
        Command::Classify { file } => cmd_classify(file),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Augment(args) => cmd_augment(args),
        Command::Consistency(args) => cmd_consistency(args, exec),
        Command::Gen(args) => cmd_gen(args),
        Command::Fixtures(args) => cmd_fixtures(args),
    }
}

fn load_economy(path: &PathBuf) -> Result<Economy> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_economy(&text)
}

fn parse_labels(economy: &Economy, list: &str) -> Result<Vec<usize>> {
    list.split(',')
        .map(|label| economy.agent_index(label.trim()))
        .collect()
}

fn print_members(economy: &Economy, members: &[Allocation]) {
    for member in members {
        println!("  {}", allocation_literal(economy, member));
    }
}

fn cmd_cores(args: CoresArgs, exec: Exec) -> Result<i32> {
    let economy = load_economy(&args.file)?;
    let concepts: Vec<Concept> = if args.concepts.is_empty() {
        Concept::ALL.to_vec()
    } else {
        args.concepts
            .iter()
            .map(|name| Concept::parse(name))
            .collect::<Result<_>>()?
    };
    for concept in concepts {
        let set = compute_core_diagnostic(&economy, concept, exec)?;
        println!("{} core ({} members)", concept.name(), set.members.len());
        print_members(&economy, &set.members);
    }
    Ok(0)
}

fn cmd_yrmh(args: YrmhArgs, exec: Exec) -> Result<i32> {
    let economy = load_economy(&args.file)?;
    if args.all_orders {
        let outcomes = yrmh_all_outcomes(&economy, exec)?;
        println!("outcomes ({})", outcomes.len());
        print_members(&economy, &outcomes);
        return Ok(0);
    }
    let Some(order_text) = args.order else {
        return Err(Error::parse("either --order or --all-orders is required"));
    };
    let order = parse_labels(&economy, &order_text)?;
    validate_order(&economy, &order)?;
    let (outcome, trace) = yrmh_run(&economy, &order)?;
    if args.trace {
        print!("{}", render_trace(&economy, &trace));
    }
    println!("{}", allocation_literal(&economy, &outcome));
    Ok(0)
}

fn cmd_inclusions(file: PathBuf, exec: Exec) -> Result<i32> {
    let economy = load_economy(&file)?;
    let report = inclusion_report(&economy, exec)?;
    for set in &report.cores {
        println!("{} core ({} members)", set.concept.name(), set.members.len());
        print_members(&economy, &set.members);
    }
    println!("relations");
    for entry in &report.relations {
        println!(
            "  {} {} {}",
            entry.left.name(),
            entry.relation.symbol(),
            entry.right.name()
        );
        if let Some(witness) = &entry.left_only {
            println!(
                "    only in {}: {}",
                entry.left.name(),
                allocation_literal(&economy, witness)
            );
        }
        if let Some(witness) = &entry.right_only {
            println!(
                "    only in {}: {}",
                entry.right.name(),
                allocation_literal(&economy, witness)
            );
        }
    }
    Ok(0)
}

fn cmd_classify(file: PathBuf) -> Result<i32> {
    let economy = load_economy(&file)?;
    for label in taxonomy::classify(&economy)? {
        println!("{}", label.name());
    }
    Ok(0)
}

fn cmd_reduce(args: ReduceArgs) -> Result<i32> {
    let economy = load_economy(&args.file)?;
    let mu = parse_allocation(&args.allocation, &economy)?;
    let removed: SmallSet = parse_labels(&economy, &args.remove)?.into_iter().collect();
    let reduced = reduce(&economy, &mu, removed)?;
    let restriction = reduced.restrict(&mu)?;
    print!("{}", serialize_economy(&reduced.economy));
    println!(
        "restriction: {}",
        allocation_literal(&reduced.economy, &restriction)
    );
    Ok(0)
}

fn cmd_augment(args: AugmentArgs) -> Result<i32> {
    let economy = load_economy(&args.file)?;
    let augmented = match args.kind {
        AugmentKind::Housing => taxonomy::augment_housing_market(&economy)?,
        AugmentKind::PrivatePublic => taxonomy::augment_private_public(&economy)?,
    };
    print!("{}", serialize_economy(&augmented));
    Ok(0)
}

fn render_counterexample(
    original: &Economy,
    mode: Mode,
    counterexample: &Counterexample,
) {
    if let Some(mu) = &counterexample.mu {
        println!("member: {}", allocation_literal(original, mu));
    }
    if let Some(removed) = counterexample.removed {
        let labels: Vec<&str> = removed
            .iter()
            .map(|i| original.agents[i].as_str())
            .collect();
        println!("departing: {}", labels.join(","));
    }
    if let Some(comparison) = &counterexample.comparison {
        println!("comparison economy:");
        print!("{}", serialize_economy(comparison));
        // Witness allocations live in the comparison economy, except in the
        // augmentation mode where both solution sets are restricted back to
        // the original agents.
        let witness_economy = if matches!(mode, Mode::StrongE0) {
            original
        } else {
            comparison
        };
        if let Some(missing) = &counterexample.missing {
            println!("missing: {}", allocation_literal(witness_economy, missing));
        }
        if let Some(extra) = &counterexample.extra {
            println!("extra: {}", allocation_literal(witness_economy, extra));
        }
    }
}

fn cmd_consistency(args: ConsistencyArgs, exec: Exec) -> Result<i32> {
    let economy = load_economy(&args.file)?;
    let solution = Solution::parse(&args.concept)?;
    let mode = Mode::parse(&args.mode)?;
    let verdict = check(&economy, solution, mode, exec)?;
    println!(
        "{} under {} consistency: {}",
        solution.name(),
        mode.name(),
        if verdict.holds { "holds" } else { "fails" }
    );
    if let Some(counterexample) = &verdict.counterexample {
        render_counterexample(&economy, mode, counterexample);
    }
    let ok = match args.expect {
        None => true,
        Some(Expectation::Holds) => verdict.holds,
        Some(Expectation::Fails) => !verdict.holds,
    };
    if !ok {
        eprintln!("expectation not met");
        return Ok(1);
    }
    Ok(0)
}

fn cmd_gen(args: GenArgs) -> Result<i32> {
    let mut spec = GeneratorSpec::new(args.seed, args.agents, args.objects);
    spec.density = args.density;
    spec.class = match &args.class {
        Some(name) => Some(taxonomy::ClassLabel::parse(name)?),
        None => None,
    };
    let economy = generate(&spec)?;
    print!("{}", serialize_economy(&economy));
    Ok(0)
}

fn cmd_fixtures(args: FixturesArgs) -> Result<i32> {
    if args.list || args.run.is_none() {
        for fixture in fixtures::all() {
            println!("{}\t{}", fixture.id, fixture.description);
        }
        return Ok(0);
    }
    let target = args.run.unwrap();
    let selected: Vec<&fixtures::Fixture> = if target == "all" {
        fixtures::all().iter().collect()
    } else {
        vec![fixtures::find(&target)
            .ok_or_else(|| Error::parse(format!("unknown fixture id: {target}")))?]
    };
    let mut failed = false;
    for fixture in selected {
        let problems = fixture.verify()?;
        if problems.is_empty() {
            println!("{}: ok", fixture.id);
        } else {
            failed = true;
            println!("{}: FAIL", fixture.id);
            for problem in problems {
                eprintln!("{}: {}", fixture.id, problem);
            }
        }
    }
    Ok(if failed { 1 } else { 0 })
}
