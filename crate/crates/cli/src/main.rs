use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ddatopo", version, about = "Topology design and distributed dual averaging experiments")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// TOML file overlaid on the preset.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, global = true, value_enum, default_value_t = ScaleArg::Desk)]
    pub scale: ScaleArg,
    #[arg(long, global = true)]
    pub gamma: Option<f64>,
    /// Switching interval.
    #[arg(long, global = true)]
    pub delta: Option<usize>,
    /// Edge budget (`k`).
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Base graph file; a sensor graph is generated when absent.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleArg {
    Desk,
    Paper,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Gamma,
    Delta,
    Budget,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Select edges; writes graph.txt, selection.txt and selected_edges.txt.
    Design,
    /// Order selected edges in time; writes schedule.txt.
    Schedule {
        /// Selection file from `design`; designs from scratch when absent.
        #[arg(long)]
        selection: Option<PathBuf>,
    },
    /// Simulate DDA over the scheduled network; writes trajectory.csv.
    Run {
        /// Schedule file from `schedule`; designs and schedules when absent.
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Mixing time and regret bounds; writes theory.csv and theory_checkpoints.csv.
    Theory {
        #[arg(long)]
        schedule: Option<PathBuf>,
    },
    /// Parameter sweep; writes sweep.csv and sweep_design.csv.
    Sweep {
        #[arg(long, value_enum)]
        axis: Axis,
        /// Comma-separated axis values; defaults depend on the axis.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
    },
}

fn error_line(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": kind, "message": message }).to_string()
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ");
            eprintln!("{}", error_line("usage", first));
            return ExitCode::from(2);
        }
    };
    let result = commands::Context::new(&cli.global).and_then(|ctx| match cli.command {
        Command::Design => ctx.design(),
        Command::Schedule { selection } => ctx.schedule(selection.as_deref()),
        Command::Run { schedule } => ctx.run(schedule.as_deref()),
        Command::Theory { schedule } => ctx.theory(schedule.as_deref()),
        Command::Sweep { axis, values } => ctx.sweep(axis, &values),
    });
    match result {
        Ok(summary) => {
            println!("{summary}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_line(e.kind(), &e.to_string()));
            ExitCode::FAILURE
        }
    }
}
