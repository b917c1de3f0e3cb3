mod commands;
mod constraints;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::commands::Outcome;
use crate::render::Format;

/// Exact invariants of real del Pezzo surfaces of degree at most 3.
#[derive(Parser, Debug)]
#[command(name = "delpezzo", version, about)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Recursion,
    Closed,
    Both,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Parity {
    Even,
    Odd,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Application {
    Cubic,
    Dp2,
    Dp1,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Signed counts N_{m,k} and Gamma_{m,k}
    Invariants {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
        /// Also list the rows with k >= 2
        #[arg(long)]
        all_k: bool,
    },
    /// Layer sums N_m^GW of genus-0 Gromov-Witten invariants
    Gw {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
    },
    /// Generating functions of N_{2n+2,1} and N_{2n+1,0}
    Series {
        #[arg(long, value_enum)]
        which: Parity,
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
    /// Hyperbolic/elliptic splits on maximal surfaces
    Applications {
        #[arg(long, value_enum)]
        which: Application,
        /// Euler characteristic (chi(X_R) for cubics, chi(Omega) for dp2)
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<i64>,
    },
    /// Growth of N_{2m}^GW against N_{2m,1} and N_{2m+1,0}
    Growth {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 15)]
        max_m: u32,
    },
    /// Quadratic functions on the anti-invariant lattice
    Qhat {
        #[command(subcommand)]
        action: QhatAction,
    },
    /// Lattice enumerations
    Lattice {
        #[command(subcommand)]
        action: LatticeAction,
    },
}

#[derive(Subcommand, Debug)]
enum QhatAction {
    /// Print the basis of H_2^- used for solutions
    Basis {
        #[arg(long)]
        real_structure: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// All quadratic functions meeting the constraints
    Solve {
        #[arg(long)]
        real_structure: String,
        #[arg(long)]
        degree: Option<u32>,
        /// File with one `vector residue` pair per line
        #[arg(long)]
        constraints: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeAction {
    Lines {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        real_structure: Option<String>,
    },
    Roots {
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        real_structure: Option<String>,
    },
    Layer {
        #[arg(long)]
        degree: u32,
        #[arg(short, long)]
        m: u32,
        #[arg(long)]
        real_structure: Option<String>,
        /// Keep classes of negative genus or square below -1
        #[arg(long)]
        all: bool,
    },
    Orbit {
        #[arg(long)]
        degree: u32,
        /// Coordinates in the basis (h, e1, ...), comma separated
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// The set W_R of a real structure and its sum identities
    Wreal {
        #[arg(long)]
        real_structure: String,
        #[arg(long)]
        degree: Option<u32>,
    },
}

fn run(cli: Cli) -> Result<Outcome, commands::CliError> {
    use commands as c;
    match cli.command {
        Command::Invariants {
            degree,
            max_m,
            method,
            all_k,
        } => c::invariants(degree, max_m, method, all_k),
        Command::Gw { degree, max_m } => c::gw(degree, max_m),
        Command::Series {
            which,
            degree,
            order,
        } => c::series(which, degree, order),
        Command::Applications { which, chi } => c::applications(which, chi),
        Command::Growth { degree, max_m } => c::growth(degree, max_m),
        Command::Qhat { action } => match action {
            QhatAction::Basis {
                real_structure,
                degree,
            } => c::qhat_basis(&real_structure, degree),
            QhatAction::Solve {
                real_structure,
                degree,
                constraints,
            } => c::qhat_solve(&real_structure, degree, constraints.as_deref()),
        },
        Command::Lattice { action } => match action {
            LatticeAction::Lines {
                degree,
                real_structure,
            } => c::lines(degree, real_structure.as_deref()),
            LatticeAction::Roots {
                degree,
                real_structure,
            } => c::roots(degree, real_structure.as_deref()),
            LatticeAction::Layer {
                degree,
                m,
                real_structure,
                all,
            } => c::layer(degree, m, real_structure.as_deref(), all),
            LatticeAction::Orbit { degree, vector } => c::orbit(degree, &vector),
            LatticeAction::Wreal {
                real_structure,
                degree,
            } => c::wreal(&real_structure, degree),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(outcome) => {
            match render::render(&outcome.envelope, format) {
                Ok(text) => print!("{text}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(1);
                }
            }
            if outcome.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: cross-check failed");
                ExitCode::from(3)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
