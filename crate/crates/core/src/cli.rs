//! Command-line front end. Exit codes: 0 success or feasible, 1 infeasible or
//! a failed claim, 2 usage or input error, 3 size cap exceeded.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::compat::{build_conflict_graph, min_coloring, stacking_from_tours};
use crate::error::{Error, Result};
use crate::families::{
    gen_family, random_instance, verify_family_claims, ClaimOptions, Family, FamilyParams,
};
use crate::format::{
    claims_to_csv, instance_from_json, instance_to_json, solution_from_json, solution_to_json,
    stacking_from_json,
};
use crate::model::{check_triple_feasible, simulate_triple, Cost, Instance, Tour};
use crate::solve::{
    bounds_report, exact_oracle_pairs, exact_oracle_stacks, twd, tws, tws_from, Alpha, Caps,
    Objective, Side,
};
use crate::stackdp::optimal_tours_given_stacks;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "kstsp",
    version,
    about = "Multiple-stack double TSP solver toolkit"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family or seeded random instance
    Generate(GenerateArgs),
    /// Check a solution against an instance
    CheckTriple(CheckTripleArgs),
    /// Decide whether two tours admit a stacking order
    CheckPair(CheckPairArgs),
    /// Solve an instance
    Solve(SolveArgs),
    /// Print TSP and kSTSP extremal values and check their relations
    Bounds(BoundsArgs),
    /// Verify the claims about an instance family over a range of sizes
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Instance family (I, J or H); omit for a random instance
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: usize,
    /// Stack count of random instances (families always use 2)
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 1000)]
    pub unit: Cost,
    #[arg(long, default_value_t = 1)]
    pub eps: Cost,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub lo: Cost,
    #[arg(long, default_value_t = 100)]
    pub hi: Cost,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckTripleArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub solution: PathBuf,
}

#[derive(Debug, Args)]
pub struct CheckPairArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Pickup tour as comma-separated items
    #[arg(long)]
    pub t1: String,
    /// Delivery tour as comma-separated items
    #[arg(long)]
    pub t2: String,
    /// Overrides the instance's stack count
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    DpStacks,
    OraclePairs,
    OracleStacks,
    Tws,
    Twd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Pickup,
    Delivery,
}

#[derive(Debug, Args)]
pub struct CapArgs {
    /// Enumeration cap for stack arrangements and stack labelings
    #[arg(long)]
    pub cap: Option<u128>,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        let mut caps = Caps::default();
        if let Some(cap) = self.cap {
            caps.stack_arrangements = cap;
            caps.labelings = cap;
        }
        caps
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long, value_enum)]
    pub method: Method,
    /// Stacking order file (JSON array of stacks), for dp-stacks
    #[arg(long)]
    pub stacks: Option<PathBuf>,
    /// Tour fixed by tws
    #[arg(long, value_enum, default_value = "pickup")]
    pub side: SideArg,
    /// Fix the tws tour to (1, 2, ..., n)
    #[arg(long)]
    pub fix_tour: bool,
    /// Weight of the pickup distances for twd, as p/q
    #[arg(long, default_value = "1/2")]
    pub alpha: String,
    /// Multiplier making the twd aggregate distance integral (default: smallest that works)
    #[arg(long)]
    pub scale: Option<u64>,
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[command(flatten)]
    pub caps: CapArgs,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long)]
    pub family: String,
    /// Sizes as `a..b` (inclusive), a comma list, or a single value
    #[arg(long)]
    pub n: String,
    #[arg(long, default_value_t = 1000)]
    pub unit: Cost,
    #[arg(long, default_value_t = 1)]
    pub eps: Cost,
    #[arg(long)]
    pub fix_tour: bool,
    #[command(flatten)]
    pub caps: CapArgs,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Positive,
    Negative,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn write_or_print(path: Option<&Path>, text: &str, out: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::Format(format!("{}: {e}", p.display()))),
        None => out
            .write_all(text.as_bytes())
            .map_err(|e| Error::Format(e.to_string())),
    }
}

fn load_instance(path: &Path) -> Result<Instance> {
    instance_from_json(&read(path)?)
}

pub fn parse_tour(text: &str) -> Result<Tour> {
    let items = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidTour(format!("cannot parse {s:?} as an item")))
        })
        .collect::<Result<Vec<_>>>()?;
    Tour::new(items)
}

/// Parses `a..b` (inclusive), `a,b,c` or a single size.
pub fn parse_sizes(text: &str) -> Result<Vec<usize>> {
    let bad = || Error::InvalidParameter(format!("cannot parse sizes {text:?}"));
    if let Some((a, b)) = text.split_once("..") {
        let b = b.strip_prefix('=').unwrap_or(b);
        let (a, b): (usize, usize) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        );
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    text.split(',')
        .map(|s| s.trim().parse().map_err(|_| bad()))
        .collect()
}

fn print(out: &mut dyn Write, line: impl AsRef<str>) -> Result<()> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| Error::Format(e.to_string()))
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "FEASIBLE"
    } else {
        "INFEASIBLE"
    }
}

fn stacks_text(stacks: &[Vec<usize>]) -> String {
    serde_json::to_string(stacks).expect("plain data")
}

fn generate(args: &GenerateArgs, out: &mut dyn Write) -> Result<Verdict> {
    let inst = match &args.family {
        Some(f) => gen_family(&FamilyParams::new(
            f.parse::<Family>()?,
            args.n,
            args.unit,
            args.eps,
        )?)?,
        None => random_instance(args.n, args.k, args.lo, args.hi, args.seed)?,
    };
    write_or_print(args.output.as_deref(), &instance_to_json(&inst), out)?;
    Ok(Verdict::Positive)
}

fn check_triple(args: &CheckTripleArgs, out: &mut dyn Write) -> Result<Verdict> {
    let inst = load_instance(&args.instance)?;
    let sol = solution_from_json(&read(&args.solution)?)?;
    if sol.t1.len() != inst.n() {
        return Err(Error::ItemSetMismatch(format!(
            "solution covers {} items, instance has {}",
            sol.t1.len(),
            inst.n()
        )));
    }
    let by_order = check_triple_feasible(&sol.t1, &sol.t2, &sol.stacking)?;
    let replay = simulate_triple(&sol.t1, &sol.t2, &sol.stacking)?;
    let stacks_ok = sol.stacking.nonempty_count() <= inst.k();
    let value = inst.solution_value(&sol.t1, &sol.t2)?;
    print(out, format!("order check: {}", verdict_word(by_order)))?;
    print(out, format!("replay: {}", verdict_word(replay)))?;
    print(
        out,
        format!(
            "stacks used: {} of {}",
            sol.stacking.nonempty_count(),
            inst.k()
        ),
    )?;
    print(out, format!("value: {value} (stated {})", sol.value))?;
    let ok = by_order && replay && stacks_ok && value == sol.value;
    print(out, verdict_word(ok))?;
    Ok(if ok {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}

fn check_pair(args: &CheckPairArgs, out: &mut dyn Write) -> Result<Verdict> {
    let inst = load_instance(&args.instance)?;
    let (t1, t2) = (parse_tour(&args.t1)?, parse_tour(&args.t2)?);
    if t1.len() != inst.n() || t2.len() != inst.n() {
        return Err(Error::ItemSetMismatch(format!(
            "tours must cover the instance's {} items",
            inst.n()
        )));
    }
    let k = args.k.unwrap_or(inst.k());
    let chi = min_coloring(&build_conflict_graph(&t1, &t2)?).chi();
    print(out, format!("chi={chi}"))?;
    match stacking_from_tours(&t1, &t2, k)? {
        Some(p) => {
            print(out, format!("verdict: FEASIBLE with k={k}"))?;
            print(out, format!("stacks: {}", stacks_text(p.stacks())))?;
            print(out, format!("value: {}", inst.solution_value(&t1, &t2)?))?;
            Ok(Verdict::Positive)
        }
        None => {
            print(out, format!("verdict: INFEASIBLE with k={k}"))?;
            Ok(Verdict::Negative)
        }
    }
}

fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<Verdict> {
    let inst = load_instance(&args.instance)?;
    let caps = args.caps.caps();
    let side = match args.side {
        SideArg::Pickup => Side::Pickup,
        SideArg::Delivery => Side::Delivery,
    };
    let sol = match args.method {
        Method::DpStacks => {
            let path = args
                .stacks
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("dp-stacks needs --stacks".into()))?;
            optimal_tours_given_stacks(&inst, &stacking_from_json(&read(path)?)?)?
        }
        Method::OraclePairs => exact_oracle_pairs(&inst, Objective::Min, &caps)?,
        Method::OracleStacks => exact_oracle_stacks(&inst, &caps)?,
        Method::Tws if args.fix_tour => tws_from(&inst, side, &Tour::identity(inst.n()), &caps)?,
        Method::Tws => tws(&inst, side, &caps)?,
        Method::Twd => twd(&inst, args.alpha.parse::<Alpha>()?, args.scale, &caps)?,
    };
    match &args.output {
        Some(path) => {
            write_or_print(Some(path), &solution_to_json(&sol), out)?;
            print(out, format!("value: {}", sol.value))?;
        }
        None => write_or_print(None, &solution_to_json(&sol), out)?,
    }
    Ok(Verdict::Positive)
}

fn bounds(args: &BoundsArgs, out: &mut dyn Write) -> Result<Verdict> {
    let inst = load_instance(&args.instance)?;
    let r = bounds_report(&inst, &args.caps.caps())?;
    for (name, v) in [
        ("opt_tsp1", r.opt_tsp1),
        ("opt_tsp2", r.opt_tsp2),
        ("wor_tsp1", r.wor_tsp1),
        ("wor_tsp2", r.wor_tsp2),
        ("opt_kstsp", r.opt_kstsp),
        ("wor_kstsp", r.wor_kstsp),
    ] {
        print(out, format!("{name}: {v}"))?;
    }
    print(
        out,
        format!("chain: {}", if r.chain_ok { "OK" } else { "VIOLATED" }),
    )?;
    Ok(if r.chain_ok {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}

fn experiment(args: &ExperimentArgs, out: &mut dyn Write) -> Result<Verdict> {
    let family: Family = args.family.parse()?;
    let sizes = parse_sizes(&args.n)?;
    let opts = ClaimOptions {
        caps: args.caps.caps(),
        fix_tour: args.fix_tour,
    };
    let rows = verify_family_claims(family, &sizes, args.unit, args.eps, &opts)?;
    write_or_print(args.output.as_deref(), &claims_to_csv(&rows), out)?;
    let failures = rows.iter().filter(|r| r.status.is_failure()).count();
    if args.output.is_some() {
        print(
            out,
            format!("{} claims checked, {failures} failed", rows.len()),
        )?;
    }
    Ok(if failures == 0 {
        Verdict::Positive
    } else {
        Verdict::Negative
    })
}

/// Runs the command line `args` (including the program name), writing normal
/// output to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Generate(a) => generate(a, out),
        Command::CheckTriple(a) => check_triple(a, out),
        Command::CheckPair(a) => check_pair(a, out),
        Command::Solve(a) => solve(a, out),
        Command::Bounds(a) => bounds(a, out),
        Command::Experiment(a) => experiment(a, out),
    };
    match result {
        Ok(Verdict::Positive) => EXIT_OK,
        Ok(Verdict::Negative) => EXIT_NEGATIVE,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::CapExceeded { .. } => EXIT_CAP,
                _ => EXIT_USAGE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn size_parsing() {
        assert_eq!(parse_sizes("4..8").unwrap(), vec![4, 5, 6, 7, 8]);
        assert_eq!(parse_sizes("4..=6").unwrap(), vec![4, 5, 6]);
        assert_eq!(parse_sizes("4,6,8").unwrap(), vec![4, 6, 8]);
        assert_eq!(parse_sizes("6").unwrap(), vec![6]);
        assert!(parse_sizes("8..4").is_err());
        assert!(parse_sizes("a").is_err());
    }

    #[test]
    fn tour_parsing() {
        assert_eq!(parse_tour("3, 1,2").unwrap().seq(), &[3, 1, 2]);
        assert!(parse_tour("1,1").is_err());
        assert!(parse_tour("1,x").is_err());
    }

    #[test]
    fn usage_errors_exit_two() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["kstsp", "frobnicate"], &mut out, &mut err), EXIT_USAGE);
        assert_eq!(
            run(
                ["kstsp", "generate", "--family", "Q", "--n", "4"],
                &mut out,
                &mut err
            ),
            EXIT_USAGE
        );
    }
}
