use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;

/// Lift single-photon linear optical networks to n photons.
#[derive(Debug, Parser)]
#[command(name = "multiphoton", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Expansion,
    Permanent,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lift a scattering matrix S to the n-photon unitary U.
    LiftU {
        #[arg(long)]
        photons: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        #[arg(long, value_enum, default_value = "expansion")]
        method: Method,
        /// Unitarity tolerance for the input.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write rows/columns in the order |20>, |02>, |11> (two modes, two photons only).
        #[arg(long)]
        bunched_first: bool,
    },
    /// Lift a single-photon Hamiltonian H_S to the n-photon Hamiltonian H_U.
    LiftH {
        #[arg(long)]
        photons: usize,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Hermiticity tolerance for the input.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write rows/columns in the order |20>, |02>, |11> (two modes, two photons only).
        #[arg(long)]
        bunched_first: bool,
    },
    /// Principal Hermitian logarithm H = -i ln(Q) of a unitary Q.
    Log {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
        /// Unitarity tolerance for the input.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Check phi(exp(i H_S)) = exp(i dphi(H_S)) for a given H_S, or run a seeded random sweep.
    Verify {
        /// Hamiltonian to check; without it a random sweep is run.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        photons: usize,
        /// Mode count for the random sweep.
        #[arg(long, default_value_t = 3)]
        modes: usize,
        #[arg(long, default_value_t = multiphoton::verification::DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = multiphoton::verification::DEFAULT_DIAGRAM_TOL)]
        tol: f64,
    },
    /// Hong-Ou-Mandel: two photons on a balanced beam splitter.
    DemoHom,
    /// Print the canonical basis.
    Basis {
        #[arg(long)]
        modes: usize,
        #[arg(long)]
        photons: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::LiftU {
            photons,
            input,
            output,
            method,
            tol,
            bunched_first,
        } => commands::lift_u(photons, &input, &output, method, tol, bunched_first),
        Command::LiftH {
            photons,
            input,
            output,
            tol,
            bunched_first,
        } => commands::lift_h(photons, &input, &output, tol, bunched_first),
        Command::Log { input, output, tol } => commands::log(&input, &output, tol),
        Command::Verify {
            input,
            photons,
            modes,
            seed,
            trials,
            tol,
        } => commands::verify(input.as_deref(), photons, modes, seed, trials, tol),
        Command::DemoHom => commands::demo_hom(),
        Command::Basis { modes, photons } => commands::basis(modes, photons),
    };
    match result {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {failure}");
            failure.exit_code()
        }
    }
}
