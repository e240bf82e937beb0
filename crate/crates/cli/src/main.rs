//! `schmidt`: play games, sweep diagrams and query the turn scheduler.
//!
//! Exit codes: 0 success, 1 other failure, 2 usage, 3 hypothesis violated,
//! 4 precision cap reached.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use schmidt_core::analysis::{analyze, digit_prefix, freq_stats, TargetReport, TargetSet};
use schmidt_core::diagram::{render, sweep, DiagramError, Format, ProbeConfig, SweepOptions};
use schmidt_core::game::{
    outcome_interval, play_logged, GameError, GameParams, LoggedEvent, Side, StrategyError,
};
use schmidt_core::numerics::rational::{fmt_rational, serde_rational};
use schmidt_core::numerics::{
    eval_log_with, first_window_hit_with, parse_rational, Escalation, LogExpr, NumericsError,
    Precision, Rational,
};
use schmidt_core::strategies::{build, SpecError};

#[derive(Parser)]
#[command(
    name = "schmidt",
    version,
    about = "Exact simulation of Schmidt (alpha, beta)-games"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Play one game and analyze its outcome interval.
    Play(PlayArgs),
    /// Classify a grid of (alpha, beta) points and render the diagram.
    Sweep(SweepArgs),
    /// First t >= start with frac(t*log_B(X) + log_B(Y)) in [lo, hi).
    Schedule(ScheduleArgs),
}

fn rational(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetKind {
    Dplus,
    Dminus,
    Bba,
    BbaTail,
    Ba,
    #[value(name = "3ba-sixth")]
    ThreeBaSixth,
    ReferenceS,
    Generic,
}

#[derive(Args)]
struct TargetArgs {
    /// Target set.
    #[arg(long, value_enum)]
    target: Option<TargetKind>,
    /// Target constant c.
    #[arg(long, value_parser = rational)]
    c: Option<Rational>,
    /// Base B of the approximation targets.
    #[arg(long, default_value_t = 2)]
    base: u32,
    /// Levels up to N are exempt for bba-tail.
    #[arg(long)]
    tail_n: Option<i64>,
}

impl TargetArgs {
    fn resolve(&self, default: TargetKind) -> Result<TargetSet, CliError> {
        let c = || {
            self.c
                .clone()
                .ok_or_else(|| CliError::Usage("this target needs --c".into()))
        };
        let t = match self.target.unwrap_or(default) {
            TargetKind::Dplus => TargetSet::DPlus { c: c()? },
            TargetKind::Dminus => TargetSet::DMinus { c: c()? },
            TargetKind::Bba => TargetSet::Bba {
                base: self.base,
                c: c()?,
            },
            TargetKind::BbaTail => TargetSet::BbaTail {
                base: self.base,
                c: c()?,
                n: self
                    .tail_n
                    .ok_or_else(|| CliError::Usage("bba-tail needs --tail-n".into()))?,
            },
            TargetKind::Ba => TargetSet::Ba { c: c()? },
            TargetKind::ThreeBaSixth => TargetSet::ThreeBaSixth,
            TargetKind::ReferenceS => TargetSet::ReferenceS,
            TargetKind::Generic => TargetSet::Generic,
        };
        t.validate().map_err(CliError::Usage)?;
        Ok(t)
    }
}

#[derive(Args)]
struct PlayArgs {
    #[arg(long, value_parser = rational)]
    alpha: Rational,
    #[arg(long, value_parser = rational)]
    beta: Rational,
    /// Alice's strategy spec.
    #[arg(long)]
    alice: String,
    /// Bob's strategy spec.
    #[arg(long)]
    bob: String,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    rounds: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    target: TargetArgs,
    /// Transcript JSON path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report JSON path; printed to stdout when absent.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Points i/(N+1), i = 1..=N, on each axis.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    grid: u64,
    /// Worker threads; defaults to one per core.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    /// Attach rollouts of this many rounds where a theorem has a strategy.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    probe_rounds: Option<u64>,
    #[arg(long, default_value_t = 4)]
    probe_games: u64,
    /// Output paths; the format follows the extension (.csv or .svg).
    /// CSV goes to stdout when absent.
    #[arg(long)]
    out: Vec<PathBuf>,
}

#[derive(Args)]
struct ScheduleArgs {
    #[arg(long)]
    base: u32,
    /// X in xi = log_B(X).
    #[arg(long, value_parser = rational)]
    xi_log: Rational,
    /// Y in chi = log_B(Y).
    #[arg(long, value_parser = rational, default_value = "1")]
    chi_log: Rational,
    #[arg(long, value_parser = rational)]
    lo: Rational,
    #[arg(long, value_parser = rational)]
    hi: Rational,
    #[arg(long, default_value_t = 0)]
    start: u64,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Hypothesis(String),
    PrecisionCap(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Other(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::PrecisionCap(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m)
            | CliError::Hypothesis(m)
            | CliError::PrecisionCap(m)
            | CliError::Other(m) => m,
        }
    }
}

impl From<NumericsError> for CliError {
    fn from(e: NumericsError) -> Self {
        match e {
            NumericsError::PrecisionCap { .. } => CliError::PrecisionCap(e.to_string()),
            NumericsError::EquidistributionViolated { .. } => CliError::Hypothesis(e.to_string()),
            NumericsError::SearchLimit { .. } => CliError::Other(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<StrategyError> for CliError {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Hypothesis(_) => CliError::Hypothesis(e.to_string()),
            StrategyError::Numerics(n) => n.into(),
            StrategyError::Game(g) => g.into(),
            StrategyError::WrongSide { .. } | StrategyError::ParamsMismatch { .. } => {
                CliError::Usage(e.to_string())
            }
            StrategyError::Internal(_) => CliError::Other(e.to_string()),
        }
    }
}

impl From<GameError> for CliError {
    fn from(e: GameError) -> Self {
        match e {
            GameError::Strategy {
                side,
                index,
                source,
            } => match CliError::from(*source) {
                CliError::Usage(m) => CliError::Usage(format!("{side} at move {index}: {m}")),
                CliError::Hypothesis(m) => {
                    CliError::Hypothesis(format!("{side} at move {index}: {m}"))
                }
                CliError::PrecisionCap(m) => {
                    CliError::PrecisionCap(format!("{side} at move {index}: {m}"))
                }
                CliError::Other(m) => CliError::Other(format!("{side} at move {index}: {m}")),
            },
            GameError::InvalidParams { .. }
            | GameError::InvalidRounds(_)
            | GameError::DegenerateInterval { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Other(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        match e {
            SpecError::Syntax { .. } => CliError::Usage(e.to_string()),
            SpecError::Strategy(s) => s.into(),
        }
    }
}

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::Contradiction { .. } | DiagramError::Pool(_) => {
                CliError::Other(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Other(format!("cannot write {}: {e}", path.display())))
}

fn escalation() -> Result<Escalation, CliError> {
    Escalation::from_env().map_err(|e| CliError::Usage(e.to_string()))
}

#[derive(Serialize)]
struct PlayReport<'a> {
    #[serde(with = "serde_rational")]
    alpha: Rational,
    #[serde(with = "serde_rational")]
    beta: Rational,
    alice: &'a str,
    bob: &'a str,
    rounds: u64,
    seed: u64,
    events: &'a [LoggedEvent],
    analysis: TargetReport,
}

fn cmd_play(args: &PlayArgs) -> Result<(), CliError> {
    let params = GameParams::new(args.alpha.clone(), args.beta.clone())?;
    let target = args
        .target
        .target
        .map(|k| args.target.resolve(k))
        .transpose()?;
    let alice = build(&args.alice, &params, Side::Alice)?;
    let bob = build(&args.bob, &params, Side::Bob)?;
    let rounds =
        usize::try_from(args.rounds).map_err(|_| CliError::Usage("too many rounds".into()))?;
    let rec = play_logged(
        &params,
        bob.as_ref(),
        alice.as_ref(),
        rounds,
        None,
        args.seed,
    )?;
    let analysis = match &target {
        Some(t) => analyze(&rec.transcript, t),
        None => match outcome_interval(&rec.transcript) {
            Some(last) => {
                let prefix = digit_prefix(last, 2);
                let stats = freq_stats(&prefix.digits);
                TargetReport::Frequency {
                    target: "binary-digits".into(),
                    prefix,
                    stats,
                }
            }
            None => TargetReport::NoCertificate {
                target: "binary-digits".into(),
            },
        },
    };
    let report = PlayReport {
        alpha: args.alpha.clone(),
        beta: args.beta.clone(),
        alice: &args.alice,
        bob: &args.bob,
        rounds: args.rounds,
        seed: args.seed,
        events: &rec.events,
        analysis,
    };
    let json =
        serde_json::to_string_pretty(&report).map_err(|e| CliError::Other(e.to_string()))? + "\n";
    if let Some(path) = &args.out {
        write(path, &(rec.transcript.to_json() + "\n"))?;
    }
    match &args.report {
        Some(path) => write(path, &json),
        None => {
            print!("{json}");
            Ok(())
        }
    }
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let target = args.target.resolve(TargetKind::Generic)?;
    let formats = args
        .out
        .iter()
        .map(|p| match p.extension().and_then(|e| e.to_str()) {
            Some("csv") => Ok(Format::Csv),
            Some("svg") => Ok(Format::Svg),
            _ => Err(CliError::Usage(format!(
                "{}: expected a .csv or .svg path",
                p.display()
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let opts = SweepOptions {
        probes: args.probe_rounds.map(|r| ProbeConfig {
            rounds: r as usize,
            games: args.probe_games,
        }),
        threads: args.threads.map(|t| t as usize),
        escalation: escalation()?,
    };
    let grid = sweep(&target, args.grid as usize, &opts)?;
    if args.out.is_empty() {
        print!("{}", render(&grid, Format::Csv));
    }
    for (path, format) in args.out.iter().zip(formats) {
        write(path, &render(&grid, format))?;
    }
    Ok(())
}

fn cmd_schedule(args: &ScheduleArgs) -> Result<(), CliError> {
    let esc = escalation()?;
    let xi = LogExpr::log(args.base, args.xi_log.clone())?;
    let chi = LogExpr::log(args.base, args.chi_log.clone())?;
    let t = first_window_hit_with(&xi, &chi, &args.lo, &args.hi, args.start, &esc)?;
    // The realized value {t·xi + chi}, enclosed at 256 bits.
    let prec = Precision::new(256)?;
    let value = xi
        .clone()
        .times(i64::try_from(t).map_err(|_| CliError::Other("t overflows".into()))?);
    let (ev, ec) = (
        eval_log_with(&value, prec, &esc),
        eval_log_with(&chi, prec, &esc),
    );
    let (lo, hi) = (ev.lower + ec.lower, ev.upper + ec.upper);
    let shift = lo.floor();
    let (lo, hi) = (lo - &shift, hi - &shift);
    println!("t = {t}");
    println!(
        "frac in [{:.12}, {:.12}] within [{}, {})",
        to_f(&lo),
        to_f(&hi),
        fmt_rational(&args.lo),
        fmt_rational(&args.hi)
    );
    Ok(())
}

fn to_f(q: &Rational) -> f64 {
    schmidt_core::numerics::rational::to_f64(q)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Play(a) => cmd_play(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Schedule(a) => cmd_schedule(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
