//! Command-line front end: binds instance files and inline flags to the
//! checking, reduction, integral, and search operations.
//!
//! Exit codes: 0 when the inequality holds (or equality is certified),
//! 1 for a certified violation, 2 for indeterminate, 3 for parse or domain
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use certineq::check::{check_instance, equality_condition};
use certineq::dyadic::DyadicInterval;
use certineq::error::{Error, Result};
use certineq::format::{parse_instance, parse_piecewise, serialize_instance, verdict_record};
use certineq::instance::{equality_witness, Family, InequalityInstance};
use certineq::integral::{check_integral_radon, check_integral_radon_general, MAX_PARTITIONS};
use certineq::poly::PiecewisePoly;
use certineq::rational::Rational;
use certineq::reduce::{powermean_to_radon, radon_to_powermean, ReductionRecord};
use certineq::search::{
    find_counterexample, SearchOutcome, SearchSpec, DEFAULT_SEED, DEFAULT_TRIALS,
};
use certineq::verdict::{Outcome, Verdict};
use certineq::DEFAULT_BUDGET_BITS;

const BUDGET_ENV: &str = "CERTINEQ_BUDGET_BITS";

#[derive(Parser)]
#[command(
    name = "certineq",
    version,
    about = "Certified checks for the Radon / power-mean inequality family",
    after_help = "Exit codes: 0 holds or equality certified, 1 violated, \
                  2 indeterminate, 3 parse or domain error.\n\
                  The precision budget defaults to CERTINEQ_BUDGET_BITS when set."
)]
struct Cli {
    /// Output mode: human-readable report or one machine-readable JSON line
    #[arg(long, global = true, value_enum, default_value_t = OutputMode::Human)]
    output: OutputMode,

    /// Precision-refinement budget in bits (positive)
    #[arg(long, global = true)]
    budget: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    Human,
    Machine,
}

#[derive(Subcommand)]
enum Command {
    /// Check one inequality instance, from a file or inline flags
    #[command(after_help = "Powers follow the convention 0^0 = 1.")]
    Check(CheckArgs),
    /// Report the exact equality witnesses of an instance file
    Equality {
        /// Instance file
        instance: PathBuf,
    },
    /// Transform an instance across the Radon / power-mean equivalence
    Reduce {
        #[arg(value_enum)]
        direction: Direction,
        /// Instance file (power_mean for to-radon, radon for to-powermean)
        instance: PathBuf,
    },
    /// Certify an integral inequality for piecewise polynomials
    IntegralCheck(IntegralArgs),
    /// Search for certified counterexamples, inside or outside the domain
    Fuzz(FuzzArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Direction {
    /// Power-mean instance to the Radon instance with identical terms
    ToRadon,
    /// Radon instance to the power-mean instance with identical terms
    ToPowermean,
}

#[derive(Args)]
struct CheckArgs {
    /// Family name, e.g. radon, bergstrom, power_mean
    family: String,

    /// Instance file; conflicts with all inline flags
    #[arg(long)]
    file: Option<PathBuf>,

    /// Comma-separated rationals for the first vector
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Vec<String>,

    /// Comma-separated rationals for the second vector
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    b: Vec<String>,

    /// Comma-separated convex weights
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lambda: Vec<String>,

    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
}

#[derive(Args)]
struct IntegralArgs {
    /// Numerator: piecewise polynomial as inline JSON or a file path
    #[arg(long)]
    f: String,

    /// Denominator: same form; defaults to the constant 1 on f's domain
    #[arg(long)]
    g: Option<String>,

    /// Radon exponent (compares against integral of f^(m+1)/g^m)
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,

    /// Numerator exponent of the generalized form (requires --s)
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,

    /// Denominator exponent of the generalized form (requires --r)
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,

    /// Ceiling for the partition-doubling schedule
    #[arg(long, default_value_t = MAX_PARTITIONS)]
    partitions: u32,
}

#[derive(Args)]
struct FuzzArgs {
    /// Family to sample
    #[arg(long)]
    family: String,

    /// Domain precondition to violate, e.g. "r<s+1" or "nonpositive"
    #[arg(long, allow_hyphen_values = true)]
    violate: Option<String>,

    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,

    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Vector length, fixed ("3") or inclusive range ("2..5")
    #[arg(long)]
    n: Option<String>,

    /// Value range for sampled entries, "LO..HI" in rationals
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,

    /// Pin a parameter, e.g. --param r=1 (repeatable)
    #[arg(long = "param", allow_hyphen_values = true)]
    params: Vec<String>,
}

fn main() -> ExitCode {
    // die quietly when stdout is a closed pipe (e.g. piped into head)
    // instead of panicking mid-print
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    env_logger::init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let budget = resolve_budget(cli.budget)?;
    match &cli.command {
        Command::Check(args) => cmd_check(args, budget, cli.output),
        Command::Equality { instance } => cmd_equality(instance, cli.output),
        Command::Reduce {
            direction,
            instance,
        } => cmd_reduce(*direction, instance, budget, cli.output),
        Command::IntegralCheck(args) => cmd_integral(args, cli.output),
        Command::Fuzz(args) => cmd_fuzz(args, budget, cli.output),
    }
}

fn resolve_budget(flag: Option<u32>) -> Result<u32> {
    let budget = match flag {
        Some(bits) => bits,
        None => match std::env::var(BUDGET_ENV) {
            Ok(text) => text
                .trim()
                .parse()
                .map_err(|_| Error::parse(format!("{BUDGET_ENV} must be a positive integer")))?,
            Err(_) => DEFAULT_BUDGET_BITS,
        },
    };
    if budget == 0 {
        return Err(Error::parse("precision budget must be positive"));
    }
    Ok(budget)
}

fn parse_rational(text: &str, what: &str) -> Result<Rational> {
    text.parse().map_err(|e| match e {
        Error::Parse { message, .. } => Error::parse(format!("{what}: {message}")),
        other => other,
    })
}

fn parse_vector(items: &[String], what: &str) -> Result<Vec<Rational>> {
    items.iter().map(|t| parse_rational(t, what)).collect()
}

/// Equation tag printed in human mode, matching the statement the verdict
/// certifies.
fn family_tag(inst: &InequalityInstance) -> &'static str {
    let negative = |name: &str| {
        inst.params
            .get(name)
            .map(Rational::is_negative)
            .unwrap_or(false)
    };
    match inst.family {
        Family::Bergstrom => "Eq (1.1)",
        Family::Radon => {
            if negative("m") {
                "Eq (2.7)"
            } else {
                "Eq (1.2)"
            }
        }
        Family::RadonGeneral => {
            if negative("r") || negative("s") {
                "Eq (2.8)"
            } else {
                "Eq (2.1)"
            }
        }
        Family::PowerMean => "Eq (1.4)",
        Family::GeoSuperadd => "Eq (2.4)",
        Family::Chrystal => "Remark 2.1",
        Family::CauchySchwarz => "Sec. 1 display",
        Family::Bernoulli => "Theorem 2.3 (i)",
        Family::WeightedAmgm => "Theorem 2.3 (ii)",
        Family::Holder => "Theorem 2.3 (iii)",
        Family::Minkowski => "Theorem 2.3 (v)",
    }
}

fn approx_midpoint(interval: &DyadicInterval) -> f64 {
    let half = Rational::ratio(1, 2);
    let mid = &(interval.lo().to_rational() + &interval.hi().to_rational()) * &half;
    mid.to_f64_lossy()
}

fn print_verdict_human(heading: &str, verdict: &Verdict) {
    println!("{heading}: {}", verdict.outcome);
    println!("  lhs    in {}", verdict.lhs);
    println!("  rhs    in {}", verdict.rhs);
    println!(
        "  margin in {}  ~ {:.6} (approximate)",
        verdict.margin,
        approx_midpoint(&verdict.margin)
    );
    if verdict.precision_used == 0 {
        println!("  decided by exact arithmetic");
    } else {
        println!("  decided at {}-bit intervals", verdict.precision_used);
    }
}

fn emit_verdict(heading: &str, verdict: &Verdict, mode: OutputMode) -> ExitCode {
    match mode {
        OutputMode::Machine => println!("{}", verdict_record(verdict)),
        OutputMode::Human => print_verdict_human(heading, verdict),
    }
    match verdict.outcome {
        Outcome::Holds | Outcome::EqualityCertified => ExitCode::SUCCESS,
        Outcome::Violated => ExitCode::from(1),
        Outcome::Indeterminate => ExitCode::from(2),
    }
}

fn read_instance_file(path: &Path) -> Result<InequalityInstance> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse(format!("cannot read {}: {e}", path.display())))?;
    parse_instance(&text)
}

fn cmd_check(args: &CheckArgs, budget: u32, mode: OutputMode) -> Result<ExitCode> {
    let family: Family = args.family.parse()?;
    let inline_used = !args.a.is_empty()
        || !args.b.is_empty()
        || !args.lambda.is_empty()
        || args.m.is_some()
        || args.r.is_some()
        || args.s.is_some()
        || args.p.is_some()
        || args.q.is_some();

    let instance = match (&args.file, inline_used) {
        (Some(_), true) => {
            return Err(Error::parse(
                "choose one instance source: --file or inline flags, not both",
            ))
        }
        (Some(path), false) => {
            let instance = read_instance_file(path)?;
            if instance.family != family {
                return Err(Error::parse(format!(
                    "instance file is {}, command says {}",
                    instance.family, family
                )));
            }
            instance
        }
        (None, _) => {
            if args.a.is_empty() {
                return Err(Error::parse("missing a"));
            }
            let a = parse_vector(&args.a, "--a")?;
            let b = parse_vector(&args.b, "--b")?;
            let mut instance = InequalityInstance::new(family, a, b, []);
            if !args.lambda.is_empty() {
                instance.lambda = Some(parse_vector(&args.lambda, "--lambda")?);
            }
            let flags = [
                ("m", &args.m),
                ("r", &args.r),
                ("s", &args.s),
                ("p", &args.p),
                ("q", &args.q),
            ];
            for (name, value) in flags {
                if let Some(text) = value {
                    instance
                        .params
                        .insert(name.to_string(), parse_rational(text, name)?);
                }
            }
            for required in family.required_params() {
                if !instance.params.contains_key(*required) {
                    return Err(Error::parse(format!("missing {required}")));
                }
            }
            instance
        }
    };

    let verdict = check_instance(&instance, budget)?;
    let heading = format!("{} ({})", instance.family, family_tag(&instance));
    Ok(emit_verdict(&heading, &verdict, mode))
}

fn cmd_equality(path: &Path, mode: OutputMode) -> Result<ExitCode> {
    let instance = read_instance_file(path)?;
    instance.validate_domain()?;
    let witness = equality_witness(&instance);
    let certifies = equality_condition(&instance)?;
    match mode {
        OutputMode::Machine => {
            println!(
                "{}",
                serde_json::json!({
                    "all_equal": witness.all_equal,
                    "certifies_equality": certifies,
                    "proportional": witness.proportional,
                })
            );
        }
        OutputMode::Human => {
            let yn = |b: bool| if b { "yes" } else { "no" };
            println!("{} ({})", instance.family, family_tag(&instance));
            println!("  proportional vectors: {}", yn(witness.proportional));
            println!("  all entries equal:    {}", yn(witness.all_equal));
            println!("  certifies equality:   {}", yn(certifies));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_reduce(
    direction: Direction,
    path: &Path,
    budget: u32,
    mode: OutputMode,
) -> Result<ExitCode> {
    let instance = read_instance_file(path)?;
    instance.validate_domain()?;
    let record: ReductionRecord = match direction {
        Direction::ToRadon => {
            if instance.family != Family::PowerMean {
                return Err(Error::parse(format!(
                    "to-radon expects a power_mean instance, got {}",
                    instance.family
                )));
            }
            let r = instance.param("r")?.clone();
            let s = instance.param("s")?.clone();
            radon_to_powermean(&instance.b, &instance.a, &r, &s)?
        }
        Direction::ToPowermean => {
            if instance.family != Family::Radon {
                return Err(Error::parse(format!(
                    "to-powermean expects a radon instance, got {}",
                    instance.family
                )));
            }
            let m = instance.param("m")?.clone();
            powermean_to_radon(&instance.a, &instance.b, &m)?
        }
    };
    let target_verdict = check_instance(&record.target, budget)?;
    match mode {
        OutputMode::Machine => {
            println!("{}", serialize_instance(&record.target));
            println!(
                "{}",
                serde_json::json!({
                    "identity_checked": record.identity_checked,
                    "target_outcome": target_verdict.outcome.token(),
                })
            );
        }
        OutputMode::Human => {
            println!("target: {}", serialize_instance(&record.target));
            println!(
                "term identity verified exactly: {}",
                if record.identity_checked {
                    "yes"
                } else {
                    "no (irrational exponents)"
                }
            );
            let heading = format!("{} ({})", record.target.family, family_tag(&record.target));
            print_verdict_human(&heading, &target_verdict);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn load_piecewise(source: &str, what: &str) -> Result<PiecewisePoly> {
    let trimmed = source.trim();
    // anything JSON-shaped is inline; a malformed inline value should fail
    // as a parse error, not as a missing file
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        parse_piecewise(trimmed)
    } else {
        let text = fs::read_to_string(trimmed)
            .map_err(|e| Error::parse(format!("cannot read {what} from {trimmed}: {e}")))?;
        parse_piecewise(&text)
    }
}

fn cmd_integral(args: &IntegralArgs, mode: OutputMode) -> Result<ExitCode> {
    let f = load_piecewise(&args.f, "--f")?;
    let (lo, hi) = {
        let (lo, hi) = f.domain();
        (lo.clone(), hi.clone())
    };
    let g = match &args.g {
        Some(source) => load_piecewise(source, "--g")?,
        None => PiecewisePoly::constant(Rational::one(), lo.clone(), hi.clone())?,
    };
    if args.partitions == 0 {
        return Err(Error::parse("partition budget must be positive"));
    }

    let (verdict, tag) = match (&args.m, &args.r, &args.s) {
        (Some(m), None, None) => {
            let m = parse_rational(m, "m")?;
            let verdict = check_integral_radon(&f, &g, &lo, &hi, &m, args.partitions)?;
            (verdict, "Eq (2.10)")
        }
        (None, Some(r), Some(s)) => {
            let r = parse_rational(r, "r")?;
            let s = parse_rational(s, "s")?;
            let verdict = check_integral_radon_general(&f, &g, &lo, &hi, &r, &s, args.partitions)?;
            (verdict, "Eq (2.11)")
        }
        _ => return Err(Error::parse("supply either --m or both --r and --s")),
    };
    let heading = format!("integral on [{lo}, {hi}] ({tag})");
    Ok(emit_verdict(&heading, &verdict, mode))
}

fn parse_n_range(text: &str) -> Result<(usize, usize)> {
    let bad = || Error::parse(format!("--n expects N or MIN..MAX, got {text:?}"));
    match text.split_once("..") {
        Some((min, max)) => {
            let min = min.trim().parse().map_err(|_| bad())?;
            let max = max.trim().parse().map_err(|_| bad())?;
            Ok((min, max))
        }
        None => {
            let n = text.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn parse_value_range(text: &str) -> Result<(Rational, Rational)> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::parse(format!("--range expects LO..HI, got {text:?}")))?;
    Ok((
        parse_rational(lo.trim(), "--range lower bound")?,
        parse_rational(hi.trim(), "--range upper bound")?,
    ))
}

fn cmd_fuzz(args: &FuzzArgs, budget: u32, mode: OutputMode) -> Result<ExitCode> {
    let family: Family = args.family.parse()?;
    let mut spec = SearchSpec::new(family)
        .with_trials(args.trials)
        .with_seed(args.seed);
    if let Some(text) = &args.violate {
        spec = spec.with_override(text.parse()?);
    }
    if let Some(text) = &args.n {
        let (min, max) = parse_n_range(text)?;
        spec = spec.with_n_range(min, max);
    }
    if let Some(text) = &args.range {
        let (lo, hi) = parse_value_range(text)?;
        spec = spec.with_value_range(lo, hi);
    }
    for pin in &args.params {
        let (name, value) = pin
            .split_once('=')
            .ok_or_else(|| Error::parse(format!("--param expects NAME=VALUE, got {pin:?}")))?;
        spec = spec.with_param(name.trim(), parse_rational(value.trim(), name)?);
    }

    match find_counterexample(&spec, budget)? {
        SearchOutcome::Witness {
            trial,
            instance,
            verdict,
        } => {
            match mode {
                OutputMode::Machine => {
                    let instance_json: Value = serde_json::from_str(&serialize_instance(&instance))
                        .expect("serialized instance is valid JSON");
                    let verdict_json: Value = serde_json::from_str(&verdict_record(&verdict))
                        .expect("verdict record is valid JSON");
                    println!(
                        "{}",
                        serde_json::json!({
                            "instance": instance_json,
                            "outcome": "witness",
                            "trial": trial,
                            "verdict": verdict_json,
                        })
                    );
                }
                OutputMode::Human => {
                    println!(
                        "counterexample at trial {trial} for {} ({})",
                        instance.family,
                        family_tag(&instance)
                    );
                    println!("  instance: {}", serialize_instance(&instance));
                    print_verdict_human("  certified", &verdict);
                }
            }
            Ok(ExitCode::from(1))
        }
        SearchOutcome::NoneFound { trials } => {
            match mode {
                OutputMode::Machine => {
                    println!(
                        "{}",
                        serde_json::json!({ "outcome": "none_found", "trials": trials })
                    );
                }
                OutputMode::Human => {
                    println!(
                        "no counterexample in {trials} trials (seed {}, family {})",
                        args.seed, family
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
