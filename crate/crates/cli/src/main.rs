mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser)]
#[command(name = "genera", version, about = "Weak Jacobi forms, elliptic genera and Euler-number divisibility")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Config {
    /// Highest q-order kept in series computations.
    #[arg(long, global = true, default_value_t = 10)]
    pub qmax: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Directory that relative data paths are resolved against.
    #[arg(long, global = true, env = "GENERA_DATA_DIR")]
    pub data_dir: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Weak Jacobi forms.
    #[command(subcommand)]
    Jf(JfCmd),
    /// Elliptic genera from Chern numbers.
    #[command(subcommand)]
    Genus(GenusCmd),
    /// Divisibility constants and Euler-number verdicts.
    #[command(subcommand)]
    Divis(DivisCmd),
    /// Homotopy of two-cell module complexes.
    #[command(subcommand)]
    Cells(CellsCmd),
    /// Hodge-number systems for hyperkaehler manifolds.
    #[command(subcommand)]
    Hk(HkCmd),
    /// Runs the acceptance suite.
    Selftest,
}

#[derive(Subcommand)]
pub enum JfCmd {
    /// Prints a generator: a, phi01, phi032, phi02 or phi04.
    Gen { name: String },
    /// Checks the elliptic transformation law of a form stored as JSON.
    Check {
        file: PathBuf,
        /// Translation to check; both signs when omitted.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<i32>,
    },
}

#[derive(Subcommand)]
pub enum GenusCmd {
    Compute {
        #[arg(long)]
        chern: PathBuf,
        #[arg(long, default_value_t = 1)]
        nvars: usize,
    },
    /// The z = 0 specialisation, checked against the top Chern number.
    Euler {
        #[arg(long)]
        chern: PathBuf,
    },
}

#[derive(Subcommand)]
pub enum DivisCmd {
    Table {
        #[arg(long, default_value_t = 24)]
        kmax: u32,
    },
    /// Compares the closed form of d_clas with the weight-0 lattice gcd.
    VerifyClas {
        #[arg(long, default_value_t = 12)]
        kmax: u32,
    },
    Verdict {
        #[arg(long)]
        structure: String,
        #[arg(long)]
        k: u32,
        #[arg(long, allow_hyphen_values = true)]
        euler: i64,
    },
}

#[derive(Subcommand)]
pub enum CellsCmd {
    Homotopy {
        #[arg(long)]
        complex: String,
        #[arg(long, default_value = "pi_tmf")]
        table: String,
        #[arg(long, allow_hyphen_values = true)]
        deg: i64,
        /// Two cells `I J` of a larger complex; uses the subquotient on them.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        cells: Option<Vec<usize>>,
    },
    /// Order of an element such as "2nu" or "eta + 12nu".
    Order {
        #[arg(long, default_value = "pi_S")]
        table: String,
        #[arg(long)]
        element: String,
    },
    DsuEasy {
        #[arg(long, default_value_t = 24)]
        kmax: u32,
    },
}

#[derive(Subcommand)]
pub enum HkCmd {
    Solve {
        #[arg(long)]
        k: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.config, cli.command) {
        Ok((report, verified)) => {
            print!("{}", report.render(cli.config.format));
            if verified {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
