//! The `realgame` command line.
//!
//! Exit codes: 0 on success, 1 when a certificate fails or a strategy
//! faults, 2 for bad arguments or unreadable input.

use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use realgame::certificate::{
    convergence_text_report, exclusion_report, legality_report, membership_report, CertificateReport,
    LEGALITY_CLAIM,
};
use realgame::related::banach_mazur::{bm_check_legality, bm_play, bm_report, BmPlayError, BmTrace};
use realgame::related::choquet::{
    baire_demo, choquet_play, paul_report, pierre_report, Ambient, ChoquetPlayError, ChoquetTrace,
};
use realgame::strategy::enumeration_by_name;
use realgame::{play, AnyTrace, PlayError, SetDescription, StrategySpec, Trace};
use thiserror::Error;

use crate::specs::IntervalSpec;

#[derive(Debug, Parser)]
#[command(name = "realgame", version, about = "Exact rational games on the real line")]
pub struct Cli {
    /// Trace file: written by `play`, read by `verify` (`-` for stdin).
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Play one game between two strategies.
    Play(PlayArgs),
    /// Check a certificate against a trace.
    Verify(VerifyArgs),
    /// Serve the session API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
    },
    /// Choquet games on [0, 1] and on the rationals, side by side.
    BaireDemo {
        #[arg(long, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
        rounds: u64,
        /// Comma-separated enumerations for Pierre.
        #[arg(long, value_delimiter = ',', default_value = "farey,dyadic")]
        enumeration: Vec<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GameKind {
    Baker,
    BanachMazur,
    Choquet,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    #[arg(long, value_enum, default_value_t = GameKind::Baker)]
    pub game: GameKind,
    /// Set document (JSON) or shorthand such as `cantor`.
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..), default_value_t = 10)]
    pub rounds: u64,
    #[arg(long, default_value = "perfect")]
    pub alice: String,
    #[arg(long, default_value = "midpoint")]
    pub bob: String,
    #[arg(long, default_value = "random:1")]
    pub anna: String,
    #[arg(long, default_value = "meagre")]
    pub bartek: String,
    #[arg(long, default_value = "countable:farey")]
    pub pierre: String,
    #[arg(long, default_value = "complete")]
    pub paul: String,
    #[arg(long, default_value = "unit")]
    pub ambient: Ambient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CertificateKind {
    Legality,
    Exclusion,
    Membership,
    Convergence,
    Bm,
    Paul,
    Pierre,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = CertificateKind::Legality)]
    pub certificate: CertificateKind,
    /// Enumeration for `exclusion` and `pierre`; defaults to the trace's set.
    #[arg(long)]
    pub enumeration: Option<String>,
    /// Set for `membership`; defaults to the trace's set.
    #[arg(long)]
    pub set: Option<String>,
    /// How many rounds the certificate covers; defaults to all it can.
    #[arg(long)]
    pub rounds: Option<usize>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Fault(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Fault(_) => 1,
            CliError::Config(_) | CliError::Io(_) => 2,
        }
    }
}

fn config(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

fn parse_set(text: &str) -> Result<SetDescription, CliError> {
    SetDescription::parse_spec(text).map_err(|e| CliError::Config(format!("bad set {text:?}: {e}")))
}

/// Runs one command. `Ok(false)` means a certificate or check did not hold.
pub fn run(cli: Cli, out: &mut impl Write) -> Result<bool, CliError> {
    match cli.command {
        Command::Play(args) => play_command(&args, cli.trace.as_ref(), cli.format, out),
        Command::Verify(args) => verify_command(&args, cli.trace.as_ref(), cli.format, out),
        Command::Serve { port, host } => {
            let runtime = tokio::runtime::Runtime::new()?;
            runtime.block_on(crate::service::serve(SocketAddr::new(host, port)))?;
            Ok(true)
        }
        Command::BaireDemo { rounds, enumeration } => {
            let enumerations = enumeration
                .iter()
                .map(|name| enumeration_by_name(name).map_err(config))
                .collect::<Result<Vec<_>, _>>()?;
            let demo = baire_demo(&enumerations, rounds as usize).map_err(|e| CliError::Fault(e.to_string()))?;
            match cli.format {
                Format::Text => out.write_all(demo.to_text().as_bytes())?,
                Format::Json => writeln!(out, "{}", serde_json::to_string(&demo).expect("demo serializes"))?,
            }
            Ok(demo.as_expected())
        }
    }
}

fn play_command(args: &PlayArgs, trace_path: Option<&PathBuf>, format: Format, out: &mut impl Write) -> Result<bool, CliError> {
    let rounds = args.rounds as usize;
    let (trace, summary): (AnyTrace, String) = match args.game {
        GameKind::Baker => {
            let set = parse_set(args.set.as_deref().unwrap_or("cantor"))?;
            let alice_spec: StrategySpec = args.alice.parse().map_err(config)?;
            let bob_spec: StrategySpec = args.bob.parse().map_err(config)?;
            let alice = alice_spec.build(&set).map_err(config)?;
            let bob = bob_spec.build(&set).map_err(config)?;
            let trace = play(alice.as_ref(), bob.as_ref(), rounds, &set).map_err(|e| match e {
                PlayError::StrategyFault { .. } | PlayError::Strategy { .. } => CliError::Fault(e.to_string()),
                other => config(other),
            })?;
            let (lo, hi) = &trace.enclosure;
            let summary = format!(
                "baker: {rounds} rounds, alice {alice_spec} vs bob {bob_spec}\nenclosure: [{lo}, {hi}]\n"
            );
            (trace.into(), summary)
        }
        GameKind::BanachMazur => {
            let set = parse_set(args.set.as_deref().unwrap_or(r#"{"type":"enumeration","name":"farey"}"#))?;
            let anna_spec: IntervalSpec = args.anna.parse().map_err(config)?;
            let bartek_spec: IntervalSpec = args.bartek.parse().map_err(config)?;
            let anna = anna_spec.build_bm(&set).map_err(config)?;
            let bartek = bartek_spec.build_bm(&set).map_err(config)?;
            let trace = bm_play(anna.as_ref(), bartek.as_ref(), &set, rounds).map_err(|e| match e {
                BmPlayError::StrategyFault { .. } => CliError::Fault(e.to_string()),
                other => config(other),
            })?;
            let summary = format!(
                "banach-mazur: {rounds} rounds, anna {anna_spec} vs bartek {bartek_spec}\nfinal interval: {}\n",
                trace.final_interval.as_ref().map_or("none".to_string(), |i| i.to_string())
            );
            (trace.into(), summary)
        }
        GameKind::Choquet => {
            let pierre_spec: IntervalSpec = args.pierre.parse().map_err(config)?;
            let paul_spec: IntervalSpec = args.paul.parse().map_err(config)?;
            let pierre = pierre_spec.build_choquet().map_err(config)?;
            let paul = paul_spec.build_choquet().map_err(config)?;
            let trace = choquet_play(pierre.as_ref(), paul.as_ref(), args.ambient, rounds).map_err(|e| match e {
                ChoquetPlayError::StrategyFault { .. } => CliError::Fault(e.to_string()),
                other => config(other),
            })?;
            let summary = format!(
                "choquet on {}: {rounds} rounds, pierre {pierre_spec} vs paul {paul_spec}\nfinal set: {}\n",
                args.ambient,
                trace.final_interval.as_ref().map_or("none".to_string(), |i| i.to_string())
            );
            (trace.into(), summary)
        }
    };
    let json = trace.to_json();
    if let Some(path) = trace_path {
        std::fs::write(path, &json)?;
    }
    match format {
        Format::Text => {
            out.write_all(summary.as_bytes())?;
            if let Some(path) = trace_path {
                writeln!(out, "trace written to {}", path.display())?;
            }
        }
        Format::Json => out.write_all(json.as_bytes())?,
    }
    Ok(true)
}

fn read_trace(path: Option<&PathBuf>) -> Result<AnyTrace, CliError> {
    let path = path.ok_or_else(|| CliError::Config("verify needs --trace <path>".into()))?;
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?
    };
    AnyTrace::from_json(&text).map_err(|e| CliError::Config(format!("{} is not a trace: {e}", path.display())))
}

fn mismatch(cert: CertificateKind, game: &str) -> CliError {
    CliError::Config(format!("certificate {cert:?} does not apply to a {game} trace").to_lowercase())
}

fn verify_command(args: &VerifyArgs, trace_path: Option<&PathBuf>, format: Format, out: &mut impl Write) -> Result<bool, CliError> {
    let trace = read_trace(trace_path)?;
    let report = match (&trace, args.certificate) {
        (AnyTrace::Baker(t), cert) => baker_report(t, cert, args)?,
        (AnyTrace::BanachMazur(t), CertificateKind::Legality) => bm_legality(t),
        (AnyTrace::BanachMazur(t), CertificateKind::Bm) => bm_report(t, args.rounds.unwrap_or(t.rounds)),
        (AnyTrace::Choquet(t), CertificateKind::Legality) => choquet_legality(t),
        (AnyTrace::Choquet(t), CertificateKind::Paul) => paul_report(t, args.rounds.unwrap_or(t.rounds)),
        (AnyTrace::Choquet(t), CertificateKind::Pierre) => {
            let name = args
                .enumeration
                .as_deref()
                .ok_or_else(|| CliError::Config("the pierre certificate needs --enumeration".into()))?;
            let e = enumeration_by_name(name).map_err(config)?;
            pierre_report(t, &e, args.rounds.unwrap_or(t.rounds.saturating_sub(1)))
        }
        (other, cert) => return Err(mismatch(cert, other.game())),
    };
    match format {
        Format::Text => out.write_all(report.to_text().as_bytes())?,
        Format::Json => out.write_all(report.to_json().as_bytes())?,
    }
    Ok(report.passed())
}

fn baker_report(trace: &Trace, cert: CertificateKind, args: &VerifyArgs) -> Result<CertificateReport, CliError> {
    if let Some(n) = args.rounds {
        if n != trace.rounds {
            return Err(CliError::Config(format!(
                "baker certificates cover the whole trace ({} rounds)",
                trace.rounds
            )));
        }
    }
    Ok(match cert {
        CertificateKind::Legality => legality_report(trace),
        CertificateKind::Convergence => convergence_text_report(trace),
        CertificateKind::Exclusion => {
            let e = match &args.enumeration {
                Some(name) => enumeration_by_name(name).map_err(config)?,
                None => trace.set.enumeration().cloned().ok_or_else(|| {
                    CliError::Config("the trace's set is not an enumeration; pass --enumeration".into())
                })?,
            };
            exclusion_report(trace, &e)
        }
        CertificateKind::Membership => {
            let set = match &args.set {
                Some(text) => parse_set(text)?,
                None => trace.set.clone(),
            };
            membership_report(trace, &set)
        }
        other => return Err(mismatch(other, "baker")),
    })
}

fn bm_legality(trace: &BmTrace) -> CertificateReport {
    let report = CertificateReport::new("legality", "banach-mazur", trace.rounds, LEGALITY_CLAIM);
    match bm_check_legality(trace) {
        Ok(()) => CertificateReport {
            enclosure: trace.final_interval.as_ref().map(|i| (i.lo().clone(), i.hi().clone())),
            ..report
        },
        Err(e) => report.fail(&e),
    }
}

fn choquet_legality(trace: &ChoquetTrace) -> CertificateReport {
    let report = CertificateReport::new("legality", "choquet", trace.rounds, LEGALITY_CLAIM);
    match trace.replay() {
        Ok(_) => report,
        Err(e) => report.fail(&e),
    }
}
