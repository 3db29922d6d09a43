//! Argument parsing and the top-level driver mapping outcomes to exit codes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::commands::{self, Output};
use crate::config::{CommandKind, Number, RunConfig, Sequence, Suite};
use crate::error::{CliError, CliResult};
use crate::report::OutputFormat;

#[derive(Debug, Parser)]
#[command(name = "ermm", version, about = "Exact tables, identity checks and Monte Carlo for discrete Erdős–Rényi matrix models")]
pub struct Cli {
    /// JSON run configuration; flags given on the command line take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
    /// Directory for gnuplot-ready `.dat` files.
    #[arg(long, global = true)]
    pub plot: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact sequences and limit tables.
    Tables(TablesArgs),
    /// Run identity suites; exits 1 on the first failing identity.
    Verify(VerifyArgs),
    /// Monte Carlo convergence or CLT diagnostics.
    Simulate(SimulateArgs),
    /// Truncated small-t free energy.
    FreeEnergy(FreeEnergyArgs),
    /// Tab-separated list of diagrams.
    DiagramsDump(DiagramsArgs),
    /// CSV of every graph on n <= 5 vertices with its walk counts.
    OracleDump(OracleArgs),
}

#[derive(Debug, Default, Args)]
pub struct TablesArgs {
    #[arg(long, value_enum)]
    seq: Option<Sequence>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    c: Option<String>,
}

#[derive(Debug, Default, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    suite: Option<Suite>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    kmax: Option<u32>,
    /// Series order for the series suite.
    #[arg(long)]
    order: Option<u32>,
    /// Vertex count for the oracle suite.
    #[arg(long)]
    n: Option<String>,
}

#[derive(Debug, Default, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    c: Option<String>,
    #[arg(long)]
    exponent: Option<f64>,
    #[arg(long)]
    prefactor: Option<f64>,
    /// Vertex counts, comma separated (`1e3,1e4`).
    #[arg(long, value_delimiter = ',')]
    n: Vec<String>,
    #[arg(long)]
    samples: Option<u64>,
    #[arg(long)]
    seed: Option<u64>,
    /// Report Gaussianity diagnostics instead of cumulant convergence.
    #[arg(long)]
    clt: bool,
}

#[derive(Debug, Default, Args)]
pub struct FreeEnergyArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    regime: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    c: Option<String>,
    /// Truncation order K.
    #[arg(long)]
    order: Option<u32>,
    /// Times, comma separated.
    #[arg(long, value_delimiter = ',')]
    t: Vec<String>,
}

#[derive(Debug, Default, Args)]
pub struct DiagramsArgs {
    #[arg(long)]
    model: Option<String>,
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    /// all, connected or tree-arcs.
    #[arg(long)]
    filter: Option<String>,
}

#[derive(Debug, Default, Args)]
pub struct OracleArgs {
    #[arg(long, value_delimiter = ',')]
    n: Vec<String>,
    #[arg(long)]
    q: Option<u32>,
}

fn text(v: Option<String>) -> Option<Number> {
    v.map(Number::Text)
}

fn list(v: Vec<String>) -> Option<Vec<Number>> {
    (!v.is_empty()).then(|| v.into_iter().map(Number::Text).collect())
}

impl Cli {
    /// The flag layer of the configuration.
    pub fn flags(self) -> RunConfig {
        let mut cfg = RunConfig { format: self.format, output: self.output, plot: self.plot, ..RunConfig::default() };
        match self.command {
            None => {}
            Some(Command::Tables(a)) => {
                cfg.command = Some(CommandKind::Tables);
                cfg.seq = a.seq;
                cfg.q = a.q;
                cfg.kmax = a.kmax;
                cfg.model = a.model;
                cfg.regime = a.regime;
                cfg.p = text(a.p);
                cfg.c = text(a.c);
            }
            Some(Command::Verify(a)) => {
                cfg.command = Some(CommandKind::Verify);
                cfg.suite = a.suite;
                cfg.q = a.q;
                cfg.kmax = a.kmax;
                cfg.order = a.order;
                cfg.n = a.n.map(|n| vec![Number::Text(n)]);
            }
            Some(Command::Simulate(a)) => {
                cfg.command = Some(CommandKind::Simulate);
                cfg.model = a.model;
                cfg.q = a.q;
                cfg.k = a.k;
                cfg.regime = a.regime;
                cfg.p = text(a.p);
                cfg.c = text(a.c);
                cfg.exponent = a.exponent;
                cfg.prefactor = a.prefactor;
                cfg.n = list(a.n);
                cfg.samples = a.samples;
                cfg.seed = a.seed;
                cfg.clt = a.clt.then_some(true);
            }
            Some(Command::FreeEnergy(a)) => {
                cfg.command = Some(CommandKind::FreeEnergy);
                cfg.q = a.q;
                cfg.regime = a.regime;
                cfg.p = text(a.p);
                cfg.c = text(a.c);
                cfg.order = a.order;
                cfg.t = list(a.t);
            }
            Some(Command::DiagramsDump(a)) => {
                cfg.command = Some(CommandKind::DiagramsDump);
                cfg.model = a.model;
                cfg.q = a.q;
                cfg.k = a.k;
                cfg.filter = a.filter;
            }
            Some(Command::OracleDump(a)) => {
                cfg.command = Some(CommandKind::OracleDump);
                cfg.n = list(a.n);
                cfg.q = a.q;
            }
        }
        cfg
    }
}

/// Resolves the configuration, runs the command and writes its output.
pub fn execute(cli: Cli) -> CliResult<()> {
    let file = cli.config.clone();
    let flags = cli.flags();
    let config = match file {
        Some(path) => RunConfig::load(&path)?.overlay(&flags),
        None => flags,
    };
    match commands::run(&config)? {
        Output::Text(text) => match &config.output {
            Some(path) => std::fs::write(path, text).map_err(CliError::io)?,
            None => std::io::stdout().write_all(text.as_bytes()).map_err(CliError::io)?,
        },
        Output::Report(report) => {
            report.write(config.format(), config.output.as_deref())?;
            if let Some(dir) = &config.plot {
                report.write_plots(dir)?;
            }
            if config.command == Some(CommandKind::Verify) {
                if let Some(row) = report.first_failure() {
                    return Err(CliError::Verification(format!(
                        "{} [{}]: got {}, expected {}",
                        row.quantity,
                        row.reference,
                        row.value,
                        row.target.as_deref().unwrap_or("")
                    )));
                }
            }
        }
    }
    Ok(())
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("ermm: {e}");
            e.exit_code()
        }
    }
}
