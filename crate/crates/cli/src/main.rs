//! `cuplen`: cohomology, heights and cup-length bounds for oriented Grassmannians.

mod cache;
mod commands;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use cuplen_core::SizeCaps;

use cache::Cache;
use commands::{CliError, FieldSelector, Format, RunConfig, SweepSpec};
use verify::Group;

#[derive(Debug, Parser)]
#[command(name = "cuplen", version, about = "Mod-2 cohomology and cup-length bounds for Grassmann manifolds")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for cached computations.
    #[arg(long, global = true, default_value = ".cuplen-cache")]
    cache_dir: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest formal dimension k(n-k) to compute directly.
    #[arg(long, global = true, default_value_t = SizeCaps::default().max_formal_dim)]
    max_degree: u32,
    /// Largest number of monomials in one elimination.
    #[arg(long, global = true, default_value_t = SizeCaps::default().max_basis)]
    max_basis: usize,
    /// Use this degree for the second-lowest nonzero degree q instead of the computed one.
    #[arg(long, global = true)]
    q_override: Option<u32>,
    /// Coefficient field(s) for bounds.
    #[arg(long, global = true, value_enum, default_value_t = FieldSelector::Gf2)]
    field: FieldSelector,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Betti numbers of G(n,k) with duality and total-rank checks.
    Ring { n: u32, k: u32 },
    /// Generators of the defining ideal.
    IdealGens { n: u32, k: u32 },
    /// Height of a class, e.g. `w2` or `w2*w3 + w5`.
    Height {
        n: u32,
        k: u32,
        class: String,
        /// Compute in the oriented characteristic subalgebra.
        #[arg(long)]
        oriented: bool,
    },
    /// Cup-length and category bounds for the oriented Grassmannian.
    Bounds {
        n: u32,
        k: u32,
        /// Skip direct computation and report closed forms only.
        #[arg(long)]
        closed_form_only: bool,
    },
    /// Run self-checks.
    Verify {
        /// Restrict to these groups.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Group>,
        /// Largest n used by the checks.
        #[arg(long, default_value_t = 20)]
        max_n: u32,
    },
    /// Bounds for a range of n at fixed k.
    Sweep {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n_min: u32,
        #[arg(long)]
        n_max: u32,
        #[arg(long)]
        closed_form_only: bool,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
    },
}

fn run(cli: Cli) -> Result<commands::Output, CliError> {
    let cfg = RunConfig {
        format: cli.format,
        cache: (!cli.no_cache).then(|| Cache::new(cli.cache_dir)),
        caps: SizeCaps { max_formal_dim: cli.max_degree, max_basis: cli.max_basis },
        q_override: cli.q_override,
        field: cli.field,
    };
    match cli.command {
        Command::Ring { n, k } => commands::ring(&cfg, n, k),
        Command::IdealGens { n, k } => commands::ideal_gens(&cfg, n, k),
        Command::Height { n, k, class, oriented } => commands::height(&cfg, n, k, &class, oriented),
        Command::Bounds { n, k, closed_form_only } => commands::bounds(&cfg, n, k, closed_form_only),
        Command::Verify { only, max_n } => verify::verify(&cfg, &only, max_n),
        Command::Sweep { k, n_min, n_max, closed_form_only, jobs } => {
            let jobs = jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get().min(8)));
            commands::sweep(&cfg, SweepSpec { k, n_min, n_max, closed_form_only, jobs })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.body.as_bytes()).and_then(|()| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(out.exit.code())
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
