//! `ech`: exact ECH capacities, gradings, and symplectic embedding
//! obstructions for four-dimensional ellipsoids.
//!
//! Every number is printed as an exact rational `p/q` (never a decimal); the
//! `plain` format can additionally show decimal approximations in parentheses
//! with `--approx`. Exit code 0 means success (for `obstruct`: no obstruction
//! found), 2 means an obstruction was found, 1 means a usage or domain error.

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use ech_core::capacity::{
    capacity_sequence, check_embedding, f_lower_bound, staircase_data, ObstructionVerdict,
};
use ech_core::ellipsoid::{filtered_count, Ellipsoid, EllipsoidGenerator};
use ech_core::exact::{Rational, Tilt};
use ech_core::oracle;
use ech_core::orbit::{hyperbolic_partition, EigenvalueSign};

#[derive(Parser)]
#[command(
    name = "ech",
    version,
    about = "Exact ECH capacities and symplectic embedding obstructions for 4d ellipsoids",
    after_help = "Rationals are written as `p` or `p/q` (no whitespace). \
                  Tilts are written `+` or `-` and stand in for an irrational axis ratio."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// The first K ECH capacities (a,b)_1 .. (a,b)_K.
    Capacities(CapacitiesArgs),
    /// Grading breakdown (c1, Q, CZ, total) of the generator (m1, m2).
    Grading(GradingArgs),
    /// Generator counts per grading, up to a maximum (even) grading.
    Homology(HomologyArgs),
    /// The first K generators in the action-ordered sweep.
    Generators(GeneratorsArgs),
    /// Test whether capacities obstruct embedding one ellipsoid in another.
    Obstruct(ObstructArgs),
    /// Count pairs (m,n) with a*m + b*n < limit.
    Count(CountArgs),
    /// Lower bound for the ball-embedding function at a.
    Fbound(FboundArgs),
    /// Tabulate the ball-embedding lower bound over an interval (CSV).
    Staircase(StaircaseArgs),
    /// End partitions of a hyperbolic orbit.
    Partition(PartitionArgs),
    /// Brute-force reference computations for cross-checking.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Capacities by enumerate-and-sort instead of the lazy merge.
    Capacities(CapacitiesArgs),
    /// Count by a plain double loop instead of closed-form rows.
    Count(CountArgs),
    /// Grading total by double-loop lattice counting.
    Grading(GradingArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "plain")]
    format: Format,
    /// In plain format, also show decimal approximations in parentheses.
    #[arg(long)]
    approx: bool,
}

#[derive(Args)]
struct CapacitiesArgs {
    /// First semi-axis, `p` or `p/q`.
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    /// Second semi-axis.
    #[arg(long, allow_hyphen_values = true)]
    b: Rational,
    /// How many capacities.
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GradingArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, allow_hyphen_values = true)]
    b: Rational,
    /// Side of the perturbed axis ratio: `+` or `-`.
    #[arg(long, allow_hyphen_values = true)]
    tilt: Tilt,
    /// Multiplicity of the orbit with action a.
    #[arg(long)]
    m1: u64,
    /// Multiplicity of the orbit with action b.
    #[arg(long)]
    m2: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, allow_hyphen_values = true)]
    b: Rational,
    #[arg(long, allow_hyphen_values = true)]
    tilt: Tilt,
    /// Largest grading to report; must be even.
    #[arg(long)]
    max_grading: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct GeneratorsArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, allow_hyphen_values = true)]
    b: Rational,
    #[arg(long, allow_hyphen_values = true)]
    tilt: Tilt,
    /// How many generators of the sweep to list.
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ObstructArgs {
    /// Source ellipsoid axes as `A,B`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    source: (Rational, Rational),
    /// Target ellipsoid axes as `C,D`.
    #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
    target: (Rational, Rational),
    /// How many capacities to compare.
    #[arg(long)]
    k: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    #[arg(long, allow_hyphen_values = true)]
    b: Rational,
    /// Strict upper bound on the action a*m + b*n.
    #[arg(long, allow_hyphen_values = true)]
    limit: Rational,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct FboundArgs {
    /// Stretch factor, at least 1.
    #[arg(long, allow_hyphen_values = true)]
    a: Rational,
    /// Largest capacity index to scan.
    #[arg(long, default_value_t = 1000)]
    k: u64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StaircaseArgs {
    /// Left endpoint, at least 1.
    #[arg(long, allow_hyphen_values = true)]
    from: Rational,
    /// Right endpoint, greater than `from`.
    #[arg(long, allow_hyphen_values = true)]
    to: Rational,
    /// Number of evenly spaced samples (at least 2).
    #[arg(long)]
    samples: u64,
    /// Largest capacity index to scan per sample.
    #[arg(long)]
    k: u64,
}

#[derive(Args)]
struct PartitionArgs {
    /// Eigenvalue sign of the hyperbolic orbit: `+` or `-`.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    hyperbolic: EigenvalueSign,
    /// Multiplicity to partition.
    #[arg(long)]
    mult: u64,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_pair(s: &str) -> Result<(Rational, Rational), String> {
    let (first, second) = s
        .split_once(',')
        .ok_or_else(|| format!("expected `A,B`, got `{s}`"))?;
    let parse = |t: &str| t.parse::<Rational>().map_err(|e| e.to_string());
    Ok((parse(first)?, parse(second)?))
}

fn parse_sign(s: &str) -> Result<EigenvalueSign, String> {
    match s {
        "+" => Ok(EigenvalueSign::Positive),
        "-" => Ok(EigenvalueSign::Negative),
        _ => Err(format!("expected `+` or `-`, got `{s}`")),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<u8, String> {
    match command {
        Command::Capacities(args) => {
            check_axes(&args.a, &args.b)?;
            check_k(args.k)?;
            let seq = capacity_sequence(args.a.clone(), args.b.clone(), args.k);
            emit_capacities(&args.a, &args.b, seq.values(), &args.output);
            Ok(0)
        }
        Command::Grading(args) => {
            let e = ellipsoid(&args.a, &args.b, args.tilt)?;
            let breakdown = e.grading(EllipsoidGenerator::new(args.m1, args.m2));
            match args.output.format {
                Format::Plain => {
                    println!("c1 = {}", breakdown.c1);
                    println!("Q = {}", breakdown.q);
                    println!("CZ = {}", breakdown.cz);
                    println!("total = {}", breakdown.total);
                }
                Format::Json => print_json(json!({
                    "c1": bigint_json(&breakdown.c1),
                    "q": bigint_json(&breakdown.q),
                    "cz": bigint_json(&breakdown.cz),
                    "total": bigint_json(&breakdown.total),
                })),
                Format::Csv => {
                    println!("c1,q,cz,total");
                    println!(
                        "{},{},{},{}",
                        breakdown.c1, breakdown.q, breakdown.cz, breakdown.total
                    );
                }
            }
            Ok(0)
        }
        Command::Homology(args) => {
            let e = ellipsoid(&args.a, &args.b, args.tilt)?;
            if args.max_grading % 2 != 0 {
                return Err("--max-grading must be even".into());
            }
            let table = e
                .homology_table(args.max_grading / 2)
                .map_err(|err| err.to_string())?;
            match args.output.format {
                Format::Plain => {
                    for (grading, count) in &table {
                        println!("grading {grading}: {count}");
                    }
                }
                Format::Json => print_json(Value::Array(
                    table
                        .iter()
                        .map(|(grading, count)| json!({"grading": grading, "count": count}))
                        .collect(),
                )),
                Format::Csv => {
                    println!("grading,count");
                    for (grading, count) in &table {
                        println!("{grading},{count}");
                    }
                }
            }
            Ok(0)
        }
        Command::Generators(args) => {
            check_k(args.k)?;
            let e = ellipsoid(&args.a, &args.b, args.tilt)?;
            let records = e.sorted_generators(args.k);
            match args.output.format {
                Format::Plain => {
                    for r in &records {
                        println!(
                            "m1={} m2={} grading={} action={}",
                            r.generator.m1,
                            r.generator.m2,
                            r.grading,
                            rational_label(&r.action, args.output.approx)
                        );
                    }
                }
                Format::Json => {
                    println!(
                        "{}",
                        serde_json::to_string(&records).expect("records serialize")
                    )
                }
                Format::Csv => {
                    println!("m1,m2,grading,action");
                    for r in &records {
                        println!(
                            "{},{},{},{}",
                            r.generator.m1, r.generator.m2, r.grading, r.action
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::Obstruct(args) => {
            let (a, b) = &args.source;
            let (c, d) = &args.target;
            check_axes(a, b)?;
            check_axes(c, d)?;
            check_k(args.k)?;
            let verdict = check_embedding(a, b, c, d, args.k);
            let obstructed = matches!(verdict, ObstructionVerdict::Obstructed { .. });
            match args.output.format {
                Format::Plain => match &verdict {
                    ObstructionVerdict::Obstructed { k, lhs, rhs } => println!(
                        "obstructed at k = {k}: ({a},{b})_{k} = {} > ({c},{d})_{k} = {}",
                        rational_label(lhs, args.output.approx),
                        rational_label(rhs, args.output.approx),
                    ),
                    ObstructionVerdict::NoObstructionUpTo(k) => println!(
                        "no obstruction up to k = {k} (not a certificate that an embedding exists)"
                    ),
                },
                Format::Json => print_json(match &verdict {
                    ObstructionVerdict::Obstructed { k, lhs, rhs } => json!({
                        "outcome": "obstructed",
                        "k": k,
                        "lhs": lhs.to_string(),
                        "rhs": rhs.to_string(),
                    }),
                    ObstructionVerdict::NoObstructionUpTo(k) => json!({
                        "outcome": "no_obstruction_up_to",
                        "k": k,
                        "certifies_embedding": false,
                    }),
                }),
                Format::Csv => {
                    println!("outcome,k,lhs,rhs");
                    match &verdict {
                        ObstructionVerdict::Obstructed { k, lhs, rhs } => {
                            println!("obstructed,{k},{lhs},{rhs}")
                        }
                        ObstructionVerdict::NoObstructionUpTo(k) => {
                            println!("no_obstruction_up_to,{k},,")
                        }
                    }
                }
            }
            Ok(if obstructed { 2 } else { 0 })
        }
        Command::Count(args) => {
            check_axes(&args.a, &args.b)?;
            let count = filtered_count(&args.a, &args.b, &args.limit);
            emit_count(count, &args.output);
            Ok(0)
        }
        Command::Fbound(args) => {
            if args.a < Rational::one() {
                return Err("--a must be at least 1".into());
            }
            if args.k < 2 {
                return Err("--k must be at least 2".into());
            }
            let result = f_lower_bound(&args.a, args.k);
            match args.output.format {
                Format::Plain => println!(
                    "f({}) >= {} (attained at k = {}, checked k <= {})",
                    args.a,
                    rational_label(&result.bound, args.output.approx),
                    result.witness_k,
                    args.k
                ),
                Format::Json => print_json(json!({
                    "a": args.a.to_string(),
                    "k_max": args.k,
                    "bound": result.bound.to_string(),
                    "witness_k": result.witness_k,
                })),
                Format::Csv => {
                    println!("a,bound,witness_k");
                    println!("{},{},{}", args.a, result.bound, result.witness_k);
                }
            }
            Ok(0)
        }
        Command::Staircase(args) => {
            if args.from < Rational::one() {
                return Err("--from must be at least 1".into());
            }
            if args.from >= args.to {
                return Err("--from must be strictly less than --to".into());
            }
            if args.samples < 2 {
                return Err("--samples must be at least 2".into());
            }
            if args.k < 2 {
                return Err("--k must be at least 2".into());
            }
            let points = staircase_data(&args.from, &args.to, args.samples, args.k);
            println!("a,bound");
            for p in &points {
                println!("{},{}", p.a, p.bound);
            }
            Ok(0)
        }
        Command::Partition(args) => {
            if args.mult == 0 {
                return Err("--mult must be at least 1".into());
            }
            let partition = hyperbolic_partition(args.hyperbolic, args.mult);
            match args.output.format {
                Format::Plain => println!("{partition}"),
                Format::Json => print_json(json!({"parts": partition.parts()})),
                Format::Csv => {
                    println!("part");
                    for part in partition.parts() {
                        println!("{part}");
                    }
                }
            }
            Ok(0)
        }
        Command::Oracle(oracle_command) => run_oracle(oracle_command),
    }
}

fn run_oracle(command: OracleCommand) -> Result<u8, String> {
    match command {
        OracleCommand::Capacities(args) => {
            check_axes(&args.a, &args.b)?;
            check_k(args.k)?;
            let values = oracle::capacities_by_sorting(&args.a, &args.b, args.k);
            emit_capacities(&args.a, &args.b, &values, &args.output);
            Ok(0)
        }
        OracleCommand::Count(args) => {
            check_axes(&args.a, &args.b)?;
            let count = oracle::count_by_double_loop(&args.a, &args.b, &args.limit);
            emit_count(count, &args.output);
            Ok(0)
        }
        OracleCommand::Grading(args) => {
            let e = ellipsoid(&args.a, &args.b, args.tilt)?;
            let total = oracle::grading_by_double_loop(&e, EllipsoidGenerator::new(args.m1, args.m2));
            match args.output.format {
                Format::Plain => println!("total = {total}"),
                Format::Json => print_json(json!({"total": bigint_json(&total)})),
                Format::Csv => {
                    println!("total");
                    println!("{total}");
                }
            }
            Ok(0)
        }
    }
}

fn check_axes(a: &Rational, b: &Rational) -> Result<(), String> {
    if !a.is_positive() || !b.is_positive() {
        return Err("semi-axes must be positive rationals".into());
    }
    Ok(())
}

fn check_k(k: u64) -> Result<(), String> {
    if k == 0 {
        return Err("--k must be at least 1".into());
    }
    Ok(())
}

fn ellipsoid(a: &Rational, b: &Rational, tilt: Tilt) -> Result<Ellipsoid, String> {
    Ellipsoid::new(a.clone(), b.clone(), tilt).map_err(|err| err.to_string())
}

fn rational_label(value: &Rational, approx: bool) -> String {
    if approx && !value.is_integer() {
        format!("{value} ({})", value.to_f64())
    } else {
        value.to_string()
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(small) => Value::from(small),
        None => Value::from(n.to_string()),
    }
}

fn print_json(value: Value) {
    println!("{value}");
}

fn emit_capacities(a: &Rational, b: &Rational, values: &[Rational], output: &OutputArgs) {
    match output.format {
        Format::Plain => {
            for (i, value) in values.iter().enumerate() {
                println!(
                    "({a},{b})_{} = {}",
                    i + 1,
                    rational_label(value, output.approx)
                );
            }
        }
        Format::Json => print_json(json!({
            "a": a.to_string(),
            "b": b.to_string(),
            "values": values.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("k,value");
            for (i, value) in values.iter().enumerate() {
                println!("{},{value}", i + 1);
            }
        }
    }
}

fn emit_count(count: u64, output: &OutputArgs) {
    match output.format {
        Format::Plain => println!("{count}"),
        Format::Json => print_json(json!({"count": count})),
        Format::Csv => {
            println!("count");
            println!("{count}");
        }
    }
}
