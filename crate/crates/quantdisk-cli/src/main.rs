//! `quantdisk`: exact products, seminorm tables, evaluations and check suites.

mod checks;
mod commands;
mod config;
mod error;
mod registry;
mod table;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::checks::Suite;
use crate::commands::RepMethod;
use crate::config::{Output, Overrides, RunConfig};
use crate::error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "quantdisk", version, about = "Exact star products on the disk and their seminorms")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct GlobalArgs {
    /// Model name, see `algebra list`.
    #[arg(long, global = true)]
    model: Option<String>,
    /// ħ as p/q.
    #[arg(long, global = true, allow_hyphen_values = true)]
    hbar: Option<String>,
    /// Complex dimension of the disk and Wick models.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Largest index rank or level in tables and checks.
    #[arg(long = "gamma-max", global = true)]
    gamma_max: Option<u32>,
    /// Truncation depth of infinite sums.
    #[arg(long, global = true)]
    depth: Option<u32>,
    /// Relative tolerance for stopping series refinement.
    #[arg(long, global = true)]
    tolerance: Option<String>,
    /// Rescaling exponent for group algebras.
    #[arg(long, global = true)]
    epsilon: Option<String>,
    #[arg(long, global = true, value_enum)]
    output: Option<Output>,
    /// key = value file with defaults for the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Model registry.
    Algebra {
        #[command(subcommand)]
        action: AlgebraAction,
    },
    /// Exact product of two element files.
    Product { a: PathBuf, b: PathBuf },
    /// Table of h-values and seminorms.
    Seminorm {
        element: PathBuf,
        /// Largest recursion level m.
        #[arg(long, default_value_t = 2)]
        m_max: u32,
        /// Weighted sum over all levels with weight R^level (cone and disk).
        #[arg(long = "R")]
        r: Option<String>,
    },
    /// Evaluate an element at points of the cone or the disk.
    Eval {
        element: PathBuf,
        #[arg(long = "point-file")]
        point_file: PathBuf,
    },
    /// GNS construction at the origin of the disk.
    Gns {
        #[command(subcommand)]
        action: GnsAction,
    },
    /// Run a check suite.
    Check {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        level: Option<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum AlgebraAction {
    List,
}

#[derive(Subcommand, Debug)]
enum GnsAction {
    Inner { psi: PathBuf, phi: PathBuf },
    Rep {
        element: PathBuf,
        psi: PathBuf,
        #[arg(long, value_enum, default_value_t = RepMethod::Both)]
        method: RepMethod,
    },
    Coherent {
        /// Point of the disk as a JSON array, e.g. '["1/2"]'.
        #[arg(long)]
        point: String,
        /// Support cap Γ; defaults to --gamma-max.
        #[arg(long)]
        cap: Option<u32>,
    },
    Positivity { element: PathBuf },
}

fn run(cli: Cli) -> CliResult<String> {
    let g = cli.global;
    let flags = Overrides {
        model: g.model,
        hbar: g.hbar,
        n: g.n,
        gamma_max: g.gamma_max,
        depth: g.depth,
        tolerance: g.tolerance,
        epsilon: g.epsilon,
        output: g.output,
    };
    let cfg = RunConfig::resolve(g.config.as_deref(), &flags)?;
    match cli.command {
        Command::Algebra { action: AlgebraAction::List } => Ok(commands::algebra_list(&cfg)),
        Command::Product { a, b } => commands::product(&cfg, &a, &b),
        Command::Seminorm { element, m_max, r } => commands::seminorm(&cfg, &element, m_max, r.as_deref()),
        Command::Eval { element, point_file } => commands::eval(&cfg, &element, &point_file),
        Command::Gns { action } => match action {
            GnsAction::Inner { psi, phi } => commands::gns_inner_cmd(&cfg, &psi, &phi),
            GnsAction::Rep { element, psi, method } => commands::gns_rep_cmd(&cfg, &element, &psi, method),
            GnsAction::Coherent { point, cap } => commands::gns_coherent_cmd(&cfg, &point, cap),
            GnsAction::Positivity { element } => commands::gns_positivity_cmd(&cfg, &element),
        },
        Command::Check { suite, level } => {
            let (text, err) = checks::run_and_render(&cfg, suite, level)?;
            print!("{text}");
            match err {
                Some(e) => Err(e),
                None => Ok(String::new()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            let _ = out.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
