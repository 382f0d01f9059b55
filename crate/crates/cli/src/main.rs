use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use finspinor_cli::{gen_basis, kernel, map, metric, verify, CliError};

/// Finslerian N-spinor algebra: Herm(N) bases, the SL(N,C) -> FL(N²,R) map,
/// the degree-N metric form and its verification suites.
#[derive(Debug, Parser)]
#[command(name = "finspinor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the standard Herm(N) basis and its dual as JSON.
    GenBasis {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Print L(C) for the unimodular matrix C read from FILE.
    Map {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        /// Basis document from `gen-basis` (defaults to the standard basis).
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Write the coefficients of the degree-N length form.
    Metric {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
    /// Report whether C lies in the kernel of L.
    Kernel {
        #[arg(short = 'n')]
        n: usize,
        #[arg(short = 'i', long = "input")]
        input: PathBuf,
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Run the seeded property suites for N = 2..=K.
    Verify {
        #[arg(long = "max-n")]
        max_n: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::GenBasis { n, out } => gen_basis(n, &out),
        Command::Map { n, input, basis } => map(n, &input, basis.as_deref(), &mut stdout),
        Command::Metric { n, out } => metric(n, &out),
        Command::Kernel { n, input, basis } => kernel(n, &input, basis.as_deref(), &mut stdout),
        Command::Verify {
            max_n,
            seed,
            samples,
        } => verify(max_n, seed, samples, &mut stdout),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if !matches!(e, CliError::Failed(None)) {
                eprintln!("finspinor: {e}");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
