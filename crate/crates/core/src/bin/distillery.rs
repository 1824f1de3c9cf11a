use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use distillery::sweep::{run, validate_config, write_output, Command, RawConfig, SweepError};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Cmd {
    Decay,
    MaltTrace,
    Pij,
    Distill,
    McSweep,
    AvgEnt,
}

impl From<Cmd> for Command {
    fn from(c: Cmd) -> Self {
        match c {
            Cmd::Decay => Command::Decay,
            Cmd::MaltTrace => Command::MaltTrace,
            Cmd::Pij => Command::Pij,
            Cmd::Distill => Command::Distill,
            Cmd::McSweep => Command::McSweep,
            Cmd::AvgEnt => Command::AvgEnt,
        }
    }
}

/// Entanglement distillation with lossy quantum memories: parameter sweeps as CSV.
#[derive(Debug, Parser)]
#[command(name = "distillery", version = distillery::sweep::VERSION)]
struct Cli {
    #[arg(value_enum)]
    command: Cmd,
    /// Squeezing parameter, 0 <= lambda < 1.
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    /// Memory time-bandwidth product; overrides --t.
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
    /// Memory amplitude transmissivity per clock cycle.
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Subtraction transmissivity: a value or start:stop:step.
    #[arg(long, allow_hyphen_values = true)]
    ts: Option<String>,
    /// Clock cycle at which arm A's subtraction succeeds (default 1).
    #[arg(long)]
    ma: Option<usize>,
    /// Clock cycle at which arm B's subtraction succeeds (default 10).
    #[arg(long)]
    mb: Option<usize>,
    /// Memory cycles for `decay` (default 40).
    #[arg(long)]
    steps: Option<usize>,
    /// Largest i for `pij` (default 20).
    #[arg(long)]
    imax: Option<usize>,
    /// Largest j for `pij` (default 20).
    #[arg(long)]
    jmax: Option<usize>,
    /// Mashing iteration cap (default 50).
    #[arg(long)]
    max_iter: Option<usize>,
    /// Fock cutoff per mode; 0 picks the smallest admissible value.
    #[arg(long)]
    n_max: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; 0 uses all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Gain criterion for m_c: `tmss` (full protocol) or `malt-only`.
    #[arg(long)]
    baseline: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let raw = RawConfig {
        command: Some(cli.command.into()),
        lambda: cli.lambda,
        tau: cli.tau,
        t: cli.t,
        ts: cli.ts,
        m_a: cli.ma,
        m_b: cli.mb,
        steps: cli.steps,
        i_max: cli.imax,
        j_max: cli.jmax,
        max_iter: cli.max_iter,
        n_max: cli.n_max,
        out: cli.out,
        threads: cli.threads,
        baseline: cli.baseline,
    };
    match execute(&raw) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn execute(raw: &RawConfig) -> Result<(), SweepError> {
    let cfg = validate_config(raw)?;
    for (k, v) in cfg.describe() {
        eprintln!("{k}={v}");
    }
    let result = run(&cfg)?;
    write_output(&result, &cfg)
}
