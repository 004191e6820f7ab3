//! `aef` — check, solve, and generate fair-division instances under the
//! average-envy-freeness family of fairness notions.
//!
//! Exit codes are a total function of the outcome: 0 = allocation found /
//! all requested checks pass, 1 = a requested check failed, 2 = input
//! error, 3 = proven NO, 4 = resource cap hit.

mod formats;

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use aef_core::{
    brute_force_aef, brute_force_aef1, dp_approx_quota, dp_binary_quota, format_rational,
    gen_ef_embedding, gen_from_eqcard_partition, gen_from_partition, gen_random, is_aef, is_aef1,
    is_alpha_aef1, is_eps_aef1, max_alpha, parse_rational, satisfies_quota, solve_aef1_picking,
    Aef1Verdict, AefVerdict, Allocation, ApproxConfig, ApproxOutcome, BruteForceConfig, DpConfig,
    Error, Instance, MaxAlpha, PartitionInput, Quota, Rational,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num::{One, Zero};
use serde_json::{Map, Value};

use formats::{
    parse_allocation_doc, parse_instance_doc, parse_value_model, rational_value,
    render_allocation_doc, render_instance_doc, render_value_model, render_verdict_doc,
    FormatError, InstanceDoc,
};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT_ERROR: u8 = 2;
const EXIT_NO: u8 = 3;
const EXIT_RESOURCE_CAP: u8 = 4;

#[derive(Parser)]
#[command(
    name = "aef",
    version,
    about = "Fairness toolkit for allocating indivisible items by bundle averages",
    long_about = "Checks, solves, and generates fair-division instances where fairness is \
                  judged by per-item bundle averages: exact (AEF), up-to-one-removal (AEF-1), \
                  additive-slack (eps-AEF-1), and multiplicative (alpha-AEF-1) variants.\n\n\
                  Exit codes: 0 = found / all requested checks pass, 1 = a requested check \
                  failed, 2 = input error, 3 = proven NO, 4 = resource cap hit."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an allocation against an instance and report verdicts.
    Check(CheckArgs),
    /// Search for a fair allocation with a chosen algorithm.
    Solve(SolveArgs),
    /// Generate an instance: reduction gadgets or seeded random values.
    Gen(GenArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Allocation file (JSON) with an "owner" array.
    allocation: PathBuf,
    /// Make the exact average-envy-freeness verdict affect the exit code
    /// (it is always reported).
    #[arg(long)]
    aef: bool,
    /// Also check the multiplicative relaxation at this factor in (0, 1],
    /// e.g. 2/3.
    #[arg(long, value_name = "P/Q")]
    alpha: Option<String>,
    /// Also check the additive relaxation at this slack >= 0, e.g. 1/4.
    #[arg(long, value_name = "P/Q")]
    eps: Option<String>,
    /// Write the allocation file back with the verdicts block attached.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    /// Instance file (JSON).
    instance: PathBuf,
    /// Search algorithm.
    #[arg(long, value_enum)]
    algorithm: Algorithm,
    /// Enforce the quota block from the instance file (required for
    /// dp-binary and dp-approx; rejected for picking).
    #[arg(long)]
    quota_from_file: bool,
    /// Write the allocation (or NO verdict) here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Cap on stored DP states (dp-binary, dp-approx).
    #[arg(long, value_name = "N")]
    max_states: Option<u64>,
    /// Cap on removing matrices examined (dp-approx).
    #[arg(long, value_name = "N")]
    max_matrices: Option<u64>,
    /// Cap on enumerated allocations (brute-aef, brute-aef1).
    #[arg(long, value_name = "N")]
    max_allocs: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Algorithm {
    /// Alternating picking scheme; always finds an AEF-1 allocation.
    Picking,
    /// Exhaustive search for an exactly fair allocation.
    BruteAef,
    /// Exhaustive search for a one-removal-fair allocation.
    BruteAef1,
    /// Exact state-space search for AEF-1 under a quota (binary values).
    DpBinary,
    /// Rounded state-space search with a (1 - 4/(nm))-AEF-1 guarantee.
    DpApprox,
}

impl Algorithm {
    fn name(self) -> &'static str {
        match self {
            Algorithm::Picking => "picking",
            Algorithm::BruteAef => "brute-aef",
            Algorithm::BruteAef1 => "brute-aef1",
            Algorithm::DpBinary => "dp-binary",
            Algorithm::DpApprox => "dp-approx",
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Reduction gadget family to generate (needs --input).
    #[arg(long, value_enum, requires = "input", conflicts_with = "random")]
    gadget: Option<Gadget>,
    /// Input file for the gadget: a JSON array of positive integers for
    /// partition/eqcard, an instance file for ef-embedding.
    #[arg(long, value_name = "PATH", requires = "gadget")]
    input: Option<PathBuf>,
    /// Total number of agents for the eqcard gadget (>= 3; extra agents
    /// beyond the first three are zero-valuation padding). Default 3.
    #[arg(long, value_name = "N")]
    agents: Option<usize>,
    /// Seeded random instance: N agents, M items, MODEL is one of
    /// binary(p), uniform_int(lo,hi), uniform_rational(den_max).
    #[arg(
        long,
        value_names = ["N", "M", "MODEL", "SEED"],
        num_args = 4,
        conflicts_with = "gadget"
    )]
    random: Option<Vec<String>>,
    /// Write the instance here instead of stdout.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Gadget {
    /// Two agents, paired small/large items scaling a partition input.
    Partition,
    /// Binary instance padded with zero items plus an exact per-agent quota.
    EfEmbedding,
    /// Three agents, bonus-shifted mains and fillers from an even-size
    /// partition input, with an exact quota.
    Eqcard,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Check(args) => run_check(args),
        Command::Solve(args) => run_solve(args),
        Command::Gen(args) => run_gen(args),
    }
}

fn fail(code: u8, message: impl Display) -> ExitCode {
    eprintln!("error: {message}");
    ExitCode::from(code)
}

fn read_text(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<(), String> {
    match path {
        Some(path) => {
            fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<InstanceDoc, String> {
    let text = read_text(path)?;
    parse_instance_doc(&text).map_err(|e| format!("{}: {e}", path.display()))
}

/// Maps a solver error to its exit code: blown budgets are reported as
/// "resource cap hit", everything else as an input error.
fn solver_failure(e: &Error) -> ExitCode {
    match e {
        Error::ResourceCap { .. } => fail(EXIT_RESOURCE_CAP, e),
        _ => fail(EXIT_INPUT_ERROR, e),
    }
}

/// Every verdict the checkers can attach to an allocation, plus which of
/// them were requested to gate the exit code.
struct Report {
    aef: AefVerdict,
    aef1: Aef1Verdict,
    alpha: Option<(Rational, bool)>,
    eps: Option<(Rational, bool)>,
    quota: Option<bool>,
    max_alpha: MaxAlpha,
    alpha_guarantee: Option<(Rational, bool)>,
}

fn build_report(
    inst: &Instance,
    alloc: &Allocation,
    quota: Option<&Quota>,
    alpha: Option<&Rational>,
    eps: Option<&Rational>,
) -> Result<Report, Error> {
    Ok(Report {
        aef: is_aef(inst, alloc)?,
        aef1: is_aef1(inst, alloc)?,
        alpha: match alpha {
            Some(a) => Some((a.clone(), is_alpha_aef1(inst, alloc, a)?)),
            None => None,
        },
        eps: match eps {
            Some(e) => Some((e.clone(), is_eps_aef1(inst, alloc, e)?)),
            None => None,
        },
        quota: match quota {
            Some(q) => Some(satisfies_quota(alloc, q)?.is_satisfied()),
            None => None,
        },
        max_alpha: max_alpha(inst, alloc)?,
        alpha_guarantee: None,
    })
}

impl Report {
    /// The verdicts block in canonical field order.
    fn verdicts_value(&self) -> Value {
        let mut block = Map::new();
        block.insert("aef".into(), self.aef.holds().into());
        block.insert("aef1".into(), self.aef1.holds().into());
        if let Some((requested, holds)) = &self.alpha {
            block.insert("alpha".into(), check_entry(requested, *holds));
        }
        if let Some((requested, holds)) = &self.eps {
            block.insert("eps".into(), check_entry(requested, *holds));
        }
        if let Some(satisfied) = self.quota {
            block.insert("quota".into(), satisfied.into());
        }
        let max_alpha_value = match &self.max_alpha {
            MaxAlpha::Bounded(a) => Value::String(format_rational(a)),
            MaxAlpha::Unbounded => Value::String("unbounded".into()),
        };
        block.insert("max_alpha".into(), max_alpha_value);
        if let Some((guarantee, confirmed)) = &self.alpha_guarantee {
            block.insert(
                "alpha_guarantee".into(),
                Value::String(format_rational(guarantee)),
            );
            block.insert("confirmed".into(), (*confirmed).into());
        }
        block.insert("witnesses".into(), self.witnesses_value());
        Value::Object(block)
    }

    fn witnesses_value(&self) -> Value {
        let mut block = Map::new();
        if let AefVerdict::NotAef(w) = &self.aef {
            let mut entry = Map::new();
            entry.insert("envious".into(), w.envious.into());
            entry.insert("envied".into(), w.envied.into());
            entry.insert("margin".into(), Value::String(format_rational(&w.margin)));
            block.insert("aef_violation".into(), Value::Object(entry));
        }
        match &self.aef1 {
            Aef1Verdict::Aef1(certificates) => {
                let removals: Vec<Value> = certificates
                    .iter()
                    .map(|c| {
                        let mut entry = Map::new();
                        entry.insert("agent".into(), c.agent.into());
                        entry.insert("other".into(), c.other.into());
                        entry.insert(
                            "removed_item".into(),
                            c.removed_item.map_or(Value::Null, |g| g.into()),
                        );
                        Value::Object(entry)
                    })
                    .collect();
                block.insert("aef1_removals".into(), Value::Array(removals));
            }
            Aef1Verdict::NotAef1(w) => {
                let mut entry = Map::new();
                entry.insert("envious".into(), w.envious.into());
                entry.insert("envied".into(), w.envied.into());
                entry.insert(
                    "removed_item".into(),
                    w.removed_item.map_or(Value::Null, |g| g.into()),
                );
                entry.insert("margin".into(), Value::String(format_rational(&w.margin)));
                block.insert("aef1_violation".into(), Value::Object(entry));
            }
        }
        Value::Object(block)
    }
}

fn check_entry(requested: &Rational, holds: bool) -> Value {
    let mut entry = Map::new();
    entry.insert(
        "requested".into(),
        Value::String(format_rational(requested)),
    );
    entry.insert("holds".into(), holds.into());
    Value::Object(entry)
}

fn parse_flag_rational(flag: &str, text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| format!("invalid --{flag} {text:?}: {e}"))
}

/// An allocation file may arrive with a verdicts block from an earlier run;
/// the fresh checks are authoritative, but a disagreement on the stable keys
/// means the file was edited or computed against a different instance, which
/// deserves a warning.
fn warn_on_stale_verdicts(stored: &Value, fresh: &Value) {
    let Some(stored) = stored.as_object() else {
        return;
    };
    let fresh = fresh.as_object().expect("verdicts block is an object");
    for key in ["aef", "aef1", "max_alpha"] {
        if let (Some(old), Some(new)) = (stored.get(key), fresh.get(key)) {
            if old != new {
                eprintln!(
                    "warning: stored verdict {key} = {old} disagrees with the fresh check ({new})"
                );
            }
        }
    }
}

fn run_check(args: CheckArgs) -> ExitCode {
    let doc = match load_instance(&args.instance) {
        Ok(doc) => doc,
        Err(e) => return fail(EXIT_INPUT_ERROR, e),
    };
    let allocation_text = match read_text(&args.allocation) {
        Ok(text) => text,
        Err(e) => return fail(EXIT_INPUT_ERROR, e),
    };
    let allocation_doc = match parse_allocation_doc(
        &allocation_text,
        doc.instance.agents(),
        doc.instance.items(),
    ) {
        Ok(parsed) => parsed,
        Err(e) => {
            return fail(
                EXIT_INPUT_ERROR,
                format!("{}: {e}", args.allocation.display()),
            )
        }
    };
    let alpha = match args
        .alpha
        .as_deref()
        .map(|s| parse_flag_rational("alpha", s))
    {
        Some(Ok(a)) => Some(a),
        Some(Err(e)) => return fail(EXIT_INPUT_ERROR, e),
        None => None,
    };
    let eps = match args.eps.as_deref().map(|s| parse_flag_rational("eps", s)) {
        Some(Ok(e)) => Some(e),
        Some(Err(e)) => return fail(EXIT_INPUT_ERROR, e),
        None => None,
    };

    let report = match build_report(
        &doc.instance,
        &allocation_doc.allocation,
        doc.quota.as_ref(),
        alpha.as_ref(),
        eps.as_ref(),
    ) {
        Ok(report) => report,
        // Domain errors (alpha outside (0, 1], negative eps) and any shape
        // mismatch the parser cannot see are input errors.
        Err(e) => return fail(EXIT_INPUT_ERROR, e),
    };

    let verdicts = report.verdicts_value();
    if let Some(stored) = &allocation_doc.verdicts {
        warn_on_stale_verdicts(stored, &verdicts);
    }
    print!("{}", render_verdict_doc(&verdicts));
    if let Some(output) = &args.output {
        let owners = allocation_doc
            .allocation
            .owners()
            .expect("parsed allocations are complete");
        if let Err(e) = write_or_print(
            Some(output),
            &render_allocation_doc(&owners, Some(&verdicts)),
        ) {
            return fail(EXIT_INPUT_ERROR, e);
        }
    }

    // Exit-code gate: a requested relaxation (--alpha/--eps) replaces the
    // strict one-removal check, which gates by default; --aef adds the exact
    // check; a quota block in the instance file always gates.
    let mut all_pass = match (&report.alpha, &report.eps) {
        (None, None) => report.aef1.holds(),
        (alpha, eps) => {
            alpha.as_ref().is_none_or(|(_, holds)| *holds)
                && eps.as_ref().is_none_or(|(_, holds)| *holds)
        }
    };
    if args.aef {
        all_pass &= report.aef.holds();
    }
    if let Some(satisfied) = report.quota {
        all_pass &= satisfied;
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    }
}

fn run_solve(args: SolveArgs) -> ExitCode {
    let doc = match load_instance(&args.instance) {
        Ok(doc) => doc,
        Err(e) => return fail(EXIT_INPUT_ERROR, e),
    };
    let inst = &doc.instance;

    let quota: Option<Quota> = if args.quota_from_file {
        if args.algorithm == Algorithm::Picking {
            return fail(
                EXIT_INPUT_ERROR,
                "the picking scheme ignores quotas; drop --quota-from-file",
            );
        }
        match &doc.quota {
            Some(q) => Some(q.clone()),
            None => {
                return fail(
                    EXIT_INPUT_ERROR,
                    format!("{} has no quota block", args.instance.display()),
                )
            }
        }
    } else {
        if matches!(args.algorithm, Algorithm::DpBinary | Algorithm::DpApprox) {
            return fail(
                EXIT_INPUT_ERROR,
                format!(
                    "--algorithm {} requires --quota-from-file and a quota block in the instance file",
                    args.algorithm.name()
                ),
            );
        }
        None
    };

    let brute_cfg = BruteForceConfig {
        max_allocations: args
            .max_allocs
            .unwrap_or(BruteForceConfig::default().max_allocations),
    };
    let dp_cfg = DpConfig {
        max_states: args.max_states.unwrap_or(DpConfig::default().max_states),
        ..DpConfig::default()
    };
    let approx_cfg = ApproxConfig {
        dp: dp_cfg.clone(),
        max_matrices: args
            .max_matrices
            .unwrap_or(ApproxConfig::default().max_matrices),
        ..ApproxConfig::default()
    };

    // Run the chosen search; `guarantee` carries dp-approx's multiplicative
    // fairness level for the verdict block.
    let mut guarantee: Option<Rational> = None;
    let found: Option<Allocation> = match args.algorithm {
        Algorithm::Picking => Some(solve_aef1_picking(inst)),
        Algorithm::BruteAef => match brute_force_aef(inst, quota.as_ref(), &brute_cfg) {
            Ok(found) => found,
            Err(e) => return solver_failure(&e),
        },
        Algorithm::BruteAef1 => match brute_force_aef1(inst, quota.as_ref(), &brute_cfg) {
            Ok(found) => found,
            Err(e) => return solver_failure(&e),
        },
        Algorithm::DpBinary => {
            let q = quota.as_ref().expect("checked above");
            match dp_binary_quota(inst, q, &dp_cfg) {
                Ok(found) => found,
                Err(e) => return solver_failure(&e),
            }
        }
        Algorithm::DpApprox => {
            let q = quota.as_ref().expect("checked above");
            match dp_approx_quota(inst, q, &approx_cfg) {
                Ok(ApproxOutcome::Yes(solution)) => {
                    guarantee = Some(solution.alpha_guarantee.clone());
                    Some(solution.allocation)
                }
                Ok(ApproxOutcome::No) => None,
                Err(e) => return solver_failure(&e),
            }
        }
    };

    let Some(allocation) = found else {
        let mut no_doc = Map::new();
        no_doc.insert("outcome".into(), Value::String("no".into()));
        no_doc.insert(
            "algorithm".into(),
            Value::String(args.algorithm.name().into()),
        );
        let mut line = serde_json::to_string(&Value::Object(no_doc)).expect("JSON tree serializes");
        line.push('\n');
        if let Err(e) = write_or_print(args.output.as_deref(), &line) {
            return fail(EXIT_INPUT_ERROR, e);
        }
        return ExitCode::from(EXIT_NO);
    };

    // Never trust the solver: re-verify the allocation with the checkers
    // before writing anything.
    let mut report = match build_report(inst, &allocation, quota.as_ref(), None, None) {
        Ok(report) => report,
        Err(e) => return fail(EXIT_INPUT_ERROR, e),
    };
    let confirmed = match &guarantee {
        // A non-positive level constrains nothing, so it is vacuously met;
        // otherwise re-check the multiplicative inequality exactly.
        Some(alpha) if alpha > &Rational::zero() => {
            debug_assert!(alpha <= &Rational::one());
            match is_alpha_aef1(inst, &allocation, alpha) {
                Ok(holds) => Some(holds),
                Err(e) => return fail(EXIT_INPUT_ERROR, e),
            }
        }
        Some(_) => Some(true),
        None => None,
    };
    if let Some(alpha) = guarantee {
        report.alpha_guarantee = Some((alpha, confirmed.unwrap_or(false)));
    }

    let self_check_passed = {
        let quota_ok = report.quota.unwrap_or(true);
        let fairness_ok = match args.algorithm {
            Algorithm::Picking | Algorithm::BruteAef1 | Algorithm::DpBinary => report.aef1.holds(),
            Algorithm::BruteAef => report.aef.holds(),
            Algorithm::DpApprox => confirmed == Some(true),
        };
        quota_ok && fairness_ok
    };
    if !self_check_passed {
        return fail(
            EXIT_CHECK_FAILED,
            format!(
                "self-check failed: the {} result does not pass re-verification",
                args.algorithm.name()
            ),
        );
    }

    let owners = allocation.owners().expect("solver outputs are complete");
    let text = render_allocation_doc(&owners, Some(&report.verdicts_value()));
    if let Err(e) = write_or_print(args.output.as_deref(), &text) {
        return fail(EXIT_INPUT_ERROR, e);
    }
    ExitCode::SUCCESS
}

/// Parses a gadget input file holding a JSON array of positive integers.
fn parse_partition_file(path: &Path) -> Result<Vec<u64>, String> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| format!("{}: invalid document: {e}", path.display()))?;
    let Value::Array(entries) = value else {
        return Err(format!(
            "{}: expected a JSON array of positive integers",
            path.display()
        ));
    };
    entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            entry.as_u64().filter(|&x| x > 0).ok_or_else(|| {
                format!(
                    "{}: elements must be positive integers at [{i}]",
                    path.display()
                )
            })
        })
        .collect()
}

fn run_gen(args: GenArgs) -> ExitCode {
    if args.agents.is_some() && args.gadget != Some(Gadget::Eqcard) {
        return fail(EXIT_INPUT_ERROR, "--agents applies only to --gadget eqcard");
    }
    let doc = if let Some(gadget) = args.gadget {
        let input = args.input.as_deref().expect("clap enforces --input");
        match generate_gadget(gadget, input, args.agents) {
            Ok(doc) => doc,
            Err(GenError::Input(message)) => return fail(EXIT_INPUT_ERROR, message),
        }
    } else if let Some(random) = &args.random {
        match generate_random(random) {
            Ok(doc) => doc,
            Err(GenError::Input(message)) => return fail(EXIT_INPUT_ERROR, message),
        }
    } else {
        return fail(
            EXIT_INPUT_ERROR,
            "choose --gadget <FAMILY> --input <PATH> or --random N M MODEL SEED",
        );
    };

    let text = render_instance_doc(&doc);
    if let Err(e) = write_or_print(args.output.as_deref(), &text) {
        return fail(EXIT_INPUT_ERROR, e);
    }
    ExitCode::SUCCESS
}

enum GenError {
    Input(String),
}

impl From<String> for GenError {
    fn from(message: String) -> Self {
        GenError::Input(message)
    }
}

impl From<Error> for GenError {
    fn from(e: Error) -> Self {
        GenError::Input(e.to_string())
    }
}

impl From<FormatError> for GenError {
    fn from(e: FormatError) -> Self {
        GenError::Input(e.to_string())
    }
}

fn generate_gadget(
    gadget: Gadget,
    input: &Path,
    agents: Option<usize>,
) -> Result<InstanceDoc, GenError> {
    match gadget {
        Gadget::Partition => {
            let elements = parse_partition_file(input)?;
            let partition = PartitionInput::new(elements)?;
            let gadget = gen_from_partition(&partition)?;
            let mut metadata = Map::new();
            metadata.insert("gadget".into(), Value::String("partition".into()));
            metadata.insert("k".into(), gadget.element_count.into());
            metadata.insert("T".into(), rational_value(&gadget.half_sum));
            metadata.insert(
                "valid_assumptions".into(),
                gadget.meets_size_assumptions.into(),
            );
            Ok(InstanceDoc {
                instance: gadget.instance,
                quota: None,
                metadata: Some(metadata),
            })
        }
        Gadget::EfEmbedding => {
            let source = load_instance(input).map_err(GenError::Input)?;
            let embedding = gen_ef_embedding(&source.instance)?;
            let mut metadata = Map::new();
            metadata.insert("gadget".into(), Value::String("ef-embedding".into()));
            metadata.insert("source_agents".into(), source.instance.agents().into());
            metadata.insert("source_items".into(), source.instance.items().into());
            metadata.insert("faithful_for_no".into(), embedding.faithful_for_no.into());
            Ok(InstanceDoc {
                instance: embedding.instance,
                quota: Some(embedding.quota),
                metadata: Some(metadata),
            })
        }
        Gadget::Eqcard => {
            let elements = parse_partition_file(input)?;
            let partition = PartitionInput::new(elements)?;
            let gadget = gen_from_eqcard_partition(&partition, agents.unwrap_or(3))?;
            let mut metadata = Map::new();
            metadata.insert("gadget".into(), Value::String("eqcard".into()));
            metadata.insert("k".into(), gadget.pair_count.into());
            metadata.insert("T".into(), rational_value(&gadget.half_sum));
            metadata.insert("T_prime".into(), rational_value(&gadget.main_half_value));
            metadata.insert("filler_value".into(), rational_value(&gadget.filler_value));
            metadata.insert(
                "valid_assumptions".into(),
                gadget.meets_size_assumptions.into(),
            );
            Ok(InstanceDoc {
                instance: gadget.instance,
                quota: Some(gadget.quota),
                metadata: Some(metadata),
            })
        }
    }
}

fn generate_random(random: &[String]) -> Result<InstanceDoc, GenError> {
    let agents: usize = random[0]
        .parse()
        .map_err(|_| format!("{:?} is not an agent count", random[0]))?;
    let items: usize = random[1]
        .parse()
        .map_err(|_| format!("{:?} is not an item count", random[1]))?;
    let model = parse_value_model(&random[2])?;
    let seed: u64 = random[3].parse().map_err(|_| {
        format!(
            "{:?} is not a seed (expected a non-negative integer)",
            random[3]
        )
    })?;
    let instance = gen_random(agents, items, &model, seed)?;
    let mut metadata = Map::new();
    metadata.insert("model".into(), Value::String(render_value_model(&model)));
    metadata.insert("seed".into(), seed.into());
    Ok(InstanceDoc {
        instance,
        quota: None,
        metadata: Some(metadata),
    })
}
