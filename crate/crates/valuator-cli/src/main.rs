use clap::{Parser, Subcommand};
use serde_json::Value;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use valuator_cli::catalog::Catalog;
use valuator_cli::commands::{self as cmd, functor};
use valuator_cli::io::{load_decomposition, load_matroid, CliError};
use valuator_cli::suite::{self, Context, DEFAULT_SEED};

/// Matroid invariants, decomposition complexes and exactness checks.
#[derive(Parser)]
#[command(name = "valuator", version)]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basic data of a matroid: rank, bases, flats, components.
    Matroid { file: PathBuf },
    /// A polynomial invariant of a matroid.
    Invariant {
        /// One of poincare, chow, augchow, kl, klt, z, zt, g, bergman.
        name: String,
        file: PathBuf,
        /// Write the G-invariant with the two letters exchanged.
        #[arg(long)]
        swap_letters: bool,
    },
    /// Relax a stressed flat, or its orbit under a group, and print the
    /// relaxed matroid with its decomposition.
    Relax {
        file: PathBuf,
        /// Comma separated labels.
        #[arg(long)]
        flat: String,
        /// Group generator in cycle notation; repeatable.
        #[arg(long = "gen")]
        generators: Vec<String>,
        /// Use the full automorphism group.
        #[arg(long, conflicts_with = "generators")]
        automorphisms: bool,
    },
    /// Validate a decomposition and check that a functor's complex is exact.
    Complex {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        /// Random interior points per cell during validation.
        #[arg(long, default_value_t = 16)]
        samples: usize,
    },
    /// Compare the face-maximization map with the complex for a linear
    /// functional.
    Deltapsi {
        file: PathBuf,
        /// Coefficients, comma separated rationals.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        psi: Vec<String>,
    },
    /// Equivariant computations.
    #[command(subcommand)]
    Equivariant(Equivariant),
    /// The built-in catalog of test matroids.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// The acceptance battery.
    Suite {
        /// Run only these criteria.
        #[arg(long, value_delimiter = ',')]
        only: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum Equivariant {
    /// Sign of a permutation on the top exterior power.
    Det {
        file: PathBuf,
        #[arg(long)]
        perm: String,
    },
    /// Graded character table of a functor, keyed by cycle type.
    Characters {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// Equivariant KL coefficients, keyed by cycle type.
    Kl {
        file: PathBuf,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// The signed character identity on a decomposition; the default group
    /// is every automorphism of the target preserving it.
    Identity {
        file: PathBuf,
        #[arg(long)]
        functor: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// The virtual identity for relaxing the orbit of a flat.
    Virtual {
        file: PathBuf,
        #[arg(long)]
        flat: String,
        #[arg(long)]
        functor: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
    /// The KL correction term against its skew-character formula.
    KlCorrection {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        hyperplane_size: usize,
        #[arg(long, default_value_t = 2)]
        extra: usize,
    },
    /// Which exterior power of the standard representation appears in the
    /// Orlik-Solomon correction at a stressed hyperplane.
    OsExponent {
        file: PathBuf,
        #[arg(long)]
        hyperplane: String,
        #[arg(long = "gen")]
        generators: Vec<String>,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    /// Names, sizes and ranks.
    List,
    /// Write every entry and the reference corpus as JSON files.
    Export { dir: PathBuf },
}

fn run(cli: Cli) -> Result<Value, CliError> {
    match cli.command {
        Command::Matroid { file } => Ok(cmd::matroid_info(&load_matroid(&file)?)),
        Command::Invariant { name, file, swap_letters } => {
            let m = load_matroid(&file)?;
            let value = cmd::invariant(&name, &m, swap_letters)?;
            Ok(valuator_cli::io::report("invariant", serde_json::json!({ "invariant": name, "value": value })))
        }
        Command::Relax { file, flat, generators, automorphisms } => cmd::relax(&load_matroid(&file)?, &flat, &generators, automorphisms),
        Command::Complex { file, functor, samples } => cmd::complex_check(&load_decomposition(&file)?, &functor, samples, cli.seed),
        Command::Deltapsi { file, psi } => {
            let d = load_decomposition(&file)?;
            let psi = cmd::parse_psi(&d, &psi)?;
            cmd::deltapsi(&d, &psi)
        }
        Command::Equivariant(e) => equivariant(e),
        Command::Catalog(CatalogCmd::List) => Ok(cmd::catalog_list(&Catalog::standard())),
        Command::Catalog(CatalogCmd::Export { dir }) => cmd::catalog_export(&Catalog::standard(), &dir),
        Command::Suite { only } => {
            let ctx = Context::new(cli.seed);
            let outcomes: Vec<_> = suite::CRITERIA
                .iter()
                .filter(|c| only.is_empty() || only.contains(&c.id))
                .map(|c| {
                    let o = c.run(&ctx);
                    eprintln!("{}", o.line());
                    o
                })
                .collect();
            let v = suite::report(&ctx, &outcomes);
            if outcomes.iter().all(suite::Outcome::passed) {
                Ok(v)
            } else {
                Err(CliError::Identity(serde_json::to_string_pretty(&v).expect("serializable")))
            }
        }
    }
}

fn equivariant(e: Equivariant) -> Result<Value, CliError> {
    match e {
        Equivariant::Det { file, perm } => cmd::det(&load_matroid(&file)?, &perm),
        Equivariant::Characters { file, functor: name, generators } => {
            let m = load_matroid(&file)?;
            cmd::character_table(&m, functor(&name)?.as_ref(), &cmd::group_for(&m, &generators)?)
        }
        Equivariant::Kl { file, generators } => {
            let m = load_matroid(&file)?;
            cmd::equivariant_kl_table(&m, &cmd::group_for(&m, &generators)?)
        }
        Equivariant::Identity { file, functor: name, generators } => {
            let d = load_decomposition(&file)?;
            let g = cmd::decomposition_group(&d, &generators)?;
            cmd::identity(&d, functor(&name)?.as_ref(), &g)
        }
        Equivariant::Virtual { file, flat, functor: name, generators } => {
            let m = load_matroid(&file)?;
            let g = cmd::group_for(&m, &generators)?;
            cmd::virtual_identity(&m, &flat, functor(&name)?.as_ref(), &g)
        }
        Equivariant::KlCorrection { rank, hyperplane_size, extra } => cmd::kl_correction(rank, hyperplane_size, extra),
        Equivariant::OsExponent { file, hyperplane, generators } => {
            let m = load_matroid(&file)?;
            let g = cmd::group_for(&m, &generators)?;
            cmd::os_exponent(&m, &hyperplane, &g)
        }
    }
}

/// Prints to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok(v) => {
            emit(&serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::SUCCESS
        }
        Err(CliError::Identity(report)) => {
            emit(&report);
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
