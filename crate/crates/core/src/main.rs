use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use regmat::catalogue::{
    self, CatalogueEntry, CatalogueError, CountsRequest, DualListingRequest, GenerateRequest,
    MatroidClass,
};

#[derive(Debug, Parser)]
#[command(
    name = "regmat",
    version,
    about = "Catalogue of binary and regular matroids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List standard representatives of one rank/size/class.
    Generate {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum)]
        class: MatroidClass,
        /// Keep only regular matroids.
        #[arg(long)]
        regular_only: bool,
        /// Attach Tutte polynomials.
        #[arg(long)]
        tutte: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Allow sizes above 15 or ranks above 7.
        #[arg(long)]
        force: bool,
    },
    /// List rank-K matroids by dualizing the rank-(N-K) list.
    DualListing {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum)]
        class: MatroidClass,
        #[arg(long)]
        regular_only: bool,
        #[arg(long)]
        tutte: bool,
        /// Replace each dual by its standard representative.
        #[arg(long)]
        canonicalize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
    /// Print a rank-by-size table of class counts.
    Counts {
        #[arg(long)]
        max_rank: usize,
        #[arg(long)]
        max_size: usize,
        #[arg(long, value_enum)]
        class: MatroidClass,
        #[arg(long)]
        regular_only: bool,
        #[arg(long)]
        force: bool,
    },
}

fn configure_threads() {
    let Ok(value) = std::env::var("MATROID_THREADS") else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                eprintln!("warning: could not configure {n} threads: {e}");
            }
        }
        _ => eprintln!("warning: ignoring MATROID_THREADS={value:?}"),
    }
}

fn emit(entries: &[CatalogueEntry], out: Option<PathBuf>) -> Result<(), CatalogueError> {
    match out {
        Some(path) => catalogue::write_entries(entries, BufWriter::new(File::create(path)?))?,
        None => catalogue::write_entries(entries, BufWriter::new(io::stdout().lock()))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), CatalogueError> {
    match cli.command {
        Command::Generate {
            rank,
            size,
            class,
            regular_only,
            tutte,
            out,
            force,
        } => {
            let entries = catalogue::run_generate(&GenerateRequest {
                rank,
                size,
                class,
                regular_only,
                with_tutte: tutte,
                force,
            })?;
            emit(&entries, out)
        }
        Command::DualListing {
            rank,
            size,
            class,
            regular_only,
            tutte,
            canonicalize,
            out,
            force,
        } => {
            let entries = catalogue::run_dual_listing(&DualListingRequest {
                rank,
                size,
                class,
                regular_only,
                with_tutte: tutte,
                canonicalize,
                force,
            })?;
            emit(&entries, out)
        }
        Command::Counts {
            max_rank,
            max_size,
            class,
            regular_only,
            force,
        } => {
            let table = catalogue::run_counts(&CountsRequest {
                max_rank,
                max_size,
                class,
                regular_only,
                force,
            })?;
            print!("{table}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    configure_threads();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
