use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod output;

use commands::{Outcome, RunConfig};

#[derive(Parser, Debug)]
#[command(
    name = "mmlb",
    version,
    about = "Border rank lower bounds for matrix multiplication tensors"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Comma-separated odd primes for modular rank computations.
    #[arg(
        long,
        global = true,
        env = "MMLB_PRIMES",
        value_delimiter = ',',
        default_value = "32003,32009"
    )]
    primes: Vec<u64>,

    /// Print timing and progress to stderr.
    #[arg(short, long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Optimal bound for `M⟨n,n,n⟩` next to the reference table value.
    Table {
        /// Sizes to tabulate, e.g. `--n 4,5,6`.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        n: Vec<u64>,
    },
    /// Closed-form bound for `M⟨n,n,w⟩` at one `m`, or the optimal `m` if omitted.
    Bound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        w: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
    },
    /// Rank of the projected Koszul flattening after removing a Young diagram of A-slots.
    FlattenRank {
        #[arg(long)]
        n: usize,
        /// Row lengths, e.g. `2,1`; empty for no removal.
        #[arg(long, default_value = "")]
        lambda: String,
        /// Wedge degree; defaults to `n - 1`.
        #[arg(long)]
        p: Option<usize>,
        /// Third matrix dimension used for the implied bound; defaults to `n`.
        #[arg(long)]
        w: Option<u64>,
        /// Write the flattening in coordinate format to this path.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// Koszul flattening rank of a tensor read from a JSON file.
    Koszul {
        /// File holding `{"dims": [a, b, c], "entries": [[i, j, k, v], ...]}`.
        #[arg(long)]
        tensor: std::path::PathBuf,
        #[arg(long, default_value_t = 0)]
        p: usize,
    },
    /// Run a named invariant suite; exits 1 if any check fails.
    Verify {
        #[arg(value_parser = commands::suite_names())]
        suite: String,
        /// Largest `n` to check; each suite has its own default.
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Dimension count and top Chern class for a compression profile.
    Compression {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u64>,
        #[arg(long, value_delimiter = ',', required = true)]
        sub: Vec<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = match RunConfig::new(cli.primes, cli.format, cli.verbose) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match cli.command {
        Command::Table { n } => commands::table(&config, &n),
        Command::Bound { n, w, m } => commands::bound(&config, n, w, m),
        Command::FlattenRank { n, lambda, p, w, dump } => {
            commands::flatten_rank(&config, n, &lambda, p, w, dump.as_deref())
        }
        Command::Koszul { tensor, p } => commands::koszul(&config, &tensor, p),
        Command::Verify { suite, max_n } => commands::verify(&config, &suite, max_n),
        Command::Compression { dims, sub } => commands::compression(&config, &dims, &sub),
    };
    match result {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::VerificationFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
