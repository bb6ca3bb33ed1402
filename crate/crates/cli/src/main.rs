//! `fibertor`: torsion homology of mapping tori and their covers from the
//! command line. Inputs are JSON documents given inline, as a path, or `-`
//! for stdin.

mod commands;
mod input;
mod output;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error("{0}")]
    Domain(#[from] fibertor::Error),
    #[error("io error: {0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(e) if e.is_scale_refusal() => 3,
            CliError::Domain(_) | CliError::Io(_) => 1,
            CliError::Schema(_) => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "fibertor", version, about = "Torsion homology growth of fibered 3-manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "table")]
    format: Format,
    /// Worker threads for parallel levels (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also write plot data (CSV) to this file.
    #[arg(long, global = true)]
    plot: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Input {
    /// JSON document: inline, a file path, or `-` for stdin.
    input: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Smith normal form `U·M·V = D` of `matrix`.
    Snf(Input),
    /// Characteristic polynomial of `matrix`.
    Charpoly(Input),
    /// Certified Mahler measure of `poly` (or the char poly of `matrix`).
    Mahler {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Cyclotomic or not, with a spectral-radius witness.
    Classify(Input),
    /// `H_1` of the mapping torus of `matrix` (with `fiber`) or `automorphism`.
    Torus(Input),
    /// Torsion along the cyclic covers `k = 1..=kmax`.
    TowerCyclic {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 30)]
        kmax: u64,
    },
    /// Torsion along the mod-N coinvariant cover tower of `automorphism`.
    TowerAbelian {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "2,4,8")]
        moduli: Vec<u64>,
    },
    /// Build the `cover` of the fiber of `automorphism` (or of `fiber`).
    CoverBuild(Input),
    /// Lift `automorphism` to `cover` and report its action on `H_1`.
    CoverLift {
        #[command(flatten)]
        input: Input,
        /// Also list every lift `g·B·h` over deck transformations.
        #[arg(long)]
        all_lifts: bool,
    },
    /// Fox-calculus Alexander matrix and polynomial of the mapping torus.
    Alexander {
        #[command(flatten)]
        input: Input,
        /// Evaluate every character with values in the N-th roots of unity.
        #[arg(long)]
        characters: Option<u64>,
    },
    /// Search abelian covers for a lift with non-cyclotomic action.
    SearchLift {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
        moduli: Vec<u64>,
        /// Maximum number of covers to examine.
        #[arg(long, default_value_t = 16)]
        budget: usize,
        /// Skip the full mod-N homology covers.
        #[arg(long)]
        coinvariant_only: bool,
    },
    /// Growth lower bound `|χ(S)|·q·log λ₀` from a lifted action `matrix`.
    Bound {
        #[command(flatten)]
        input: Input,
        /// Threshold; defaults to just below the spectral radius.
        #[arg(long)]
        lambda0: Option<f64>,
        /// `|χ(S)|` of the fiber; defaults to the fiber in the document.
        #[arg(long)]
        chi: Option<u64>,
        /// Power `N` in `Σ log|μ^N − 1|`.
        #[arg(long, default_value_t = 1)]
        power: u64,
    },
}

fn run(cli: &Cli) -> Result<output::Report, CliError> {
    use commands as c;
    match &cli.command {
        Command::Snf(i) => c::snf(&input::load(&i.input)?),
        Command::Charpoly(i) => c::charpoly(&input::load(&i.input)?),
        Command::Mahler { input: i, tol } => c::mahler(&input::load(&i.input)?, *tol),
        Command::Classify(i) => c::classify(&input::load(&i.input)?),
        Command::Torus(i) => c::torus(&input::load(&i.input)?),
        Command::TowerCyclic { input: i, kmax } => c::tower_cyclic(&input::load(&i.input)?, *kmax),
        Command::TowerAbelian { input: i, moduli } => c::tower_abelian(&input::load(&i.input)?, moduli),
        Command::CoverBuild(i) => c::cover_build(&input::load(&i.input)?),
        Command::CoverLift { input: i, all_lifts } => c::cover_lift(&input::load(&i.input)?, *all_lifts),
        Command::Alexander { input: i, characters } => c::alexander(&input::load(&i.input)?, *characters),
        Command::SearchLift {
            input: i,
            moduli,
            budget,
            coinvariant_only,
        } => c::search_lift(&input::load(&i.input)?, moduli, *budget, !coinvariant_only),
        Command::Bound {
            input: i,
            lambda0,
            chi,
            power,
        } => c::bound(&input::load(&i.input)?, *lambda0, *chi, *power),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("fibertor: cannot configure {n} threads: {e}");
            return ExitCode::from(2);
        }
    }
    let result = run(&cli).and_then(|report| {
        if let (Some(path), Some(plot)) = (&cli.plot, &report.plot) {
            std::fs::write(path, plot).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        }
        let text = report.render(cli.format);
        std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string()))
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fibertor: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
