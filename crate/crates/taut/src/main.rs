use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use taut::commands::{self, CacheMode, Output};
use taut::config::DEFAULT_MAX_RING_GENUS;
use taut::criteria::Profile;
use taut::{CliError, Config, Format};
use taut_core::zip_oracle::{Guard, MAX_PRIME};

#[derive(Parser)]
#[command(
    name = "taut",
    version,
    about = "Tautological rings, zip enumeration and p-rank classes"
)]
struct Cli {
    #[arg(
        long,
        global = true,
        value_enum,
        default_value = "text",
        env = "TAUT_FORMAT"
    )]
    format: Format,
    #[arg(
        long,
        global = true,
        default_value = ".taut-cache",
        env = "TAUT_CACHE_DIR"
    )]
    cache_dir: PathBuf,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, env = "TAUT_JOBS")]
    jobs: usize,
    /// Seed for randomized property sampling.
    #[arg(long, global = true, default_value_t = 0, env = "TAUT_SEED")]
    seed: u64,
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_RING_GENUS, env = "TAUT_MAX_RING_GENUS")]
    max_ring_genus: usize,
    #[arg(
        long,
        global = true,
        default_value_t = 3,
        env = "TAUT_MAX_ORACLE_GENUS"
    )]
    max_oracle_genus: usize,
    #[arg(long, global = true, default_value_t = MAX_PRIME, env = "TAUT_MAX_PRIME")]
    max_prime: u32,
    /// Largest number of candidate matrices an enumeration may visit.
    #[arg(
        long,
        global = true,
        default_value_t = 1_000_000,
        env = "TAUT_MAX_CANDIDATES"
    )]
    max_candidates: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Presentation, Hilbert function and the flagship identities.
    Ring {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        d_max: Option<u32>,
    },
    /// Hilbert functions for a genus or a range such as 1-8.
    Hilbert {
        #[arg(long, value_parser = commands::parse_genus_range)]
        g: std::vec::Vec<usize>,
    },
    /// Minimal coset representatives of W_P \ W(C_g).
    Weyl {
        #[arg(long)]
        g: usize,
    },
    /// Compare the Borel and twisted ideals degree by degree.
    BorelCheck {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long)]
        d_max: Option<u32>,
        /// Also certify the image of the ring relation.
        #[arg(long)]
        chern: bool,
    },
    /// p-rank locus classes.
    Prank {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        f: Option<usize>,
        #[arg(long)]
        p: u64,
        /// Certify effectivity of every u_i, with an oracle cross-check when
        /// the enumeration fits the resource guard.
        #[arg(long)]
        certify: bool,
    },
    /// Enumerate zips over F_p and decompose them into orbits.
    Oracle {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        p: u32,
        /// Also derive iota for an isotropic subspace of this dimension.
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, conflicts_with = "refresh")]
        use_cache: bool,
        #[arg(long)]
        refresh: bool,
    },
    /// Derive iota from the zips preserving an isotropic flag.
    Iota {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, value_delimiter = ',', default_value = "2")]
        p: Vec<u32>,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        profile: ProfileArg,
        /// Run the dimension check on a presentation missing its degree-2
        /// relation; must fail.
        #[arg(long)]
        corrupt_relation: bool,
    },
}

fn dispatch(cli: Cli) -> Result<Output, CliError> {
    let cfg = Config {
        format: cli.format,
        cache_dir: cli.cache_dir,
        jobs: cli.jobs,
        seed: cli.seed,
        max_ring_genus: cli.max_ring_genus,
        guard: Guard {
            max_genus: cli.max_oracle_genus,
            max_prime: cli.max_prime,
            max_candidates: cli.max_candidates,
        },
    };
    cfg.validate()?;
    match cli.command {
        Command::Ring { g, d_max } => commands::cmd_ring(&cfg, g, d_max),
        Command::Hilbert { g } => commands::cmd_hilbert(&cfg, &g),
        Command::Weyl { g } => commands::cmd_weyl(&cfg, g),
        Command::BorelCheck { g, p, d_max, chern } => {
            commands::cmd_borel_check(&cfg, g, &p, d_max, chern)
        }
        Command::Prank { g, f, p, certify } => commands::cmd_prank(&cfg, g, f, p, certify),
        Command::Oracle {
            g,
            p,
            r,
            use_cache,
            refresh,
        } => {
            let mode = match (use_cache, refresh) {
                (true, _) => CacheMode::Use,
                (_, true) => CacheMode::Refresh,
                _ => CacheMode::Off,
            };
            commands::cmd_oracle(&cfg, g, p, r, mode)
        }
        Command::Iota { g, r, p } => commands::cmd_iota(&cfg, g, r, &p),
        Command::Selftest {
            profile,
            corrupt_relation,
        } => {
            let profile = match profile {
                ProfileArg::Quick => Profile::Quick,
                ProfileArg::Full => Profile::Full,
            };
            commands::cmd_selftest(&cfg, profile, corrupt_relation)
        }
    }
}

fn report(err: &CliError, format: Format) {
    let line = match format {
        Format::Json => err.to_json().to_string(),
        _ => format!(
            "error[{}]{}: {err}",
            err.kind(),
            err.module().map(|m| format!(" in {m}")).unwrap_or_default()
        ),
    };
    eprintln!("{line}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = dispatch(cli);
    let err = match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.stdout.as_bytes());
            let _ = stdout.flush();
            match out.failure {
                None => return ExitCode::SUCCESS,
                Some(e) => e,
            }
        }
        Err(e) => e,
    };
    report(&err, format);
    ExitCode::from(err.exit_code() as u8)
}
