use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hurwitz_core::monodromy::Method;
use hurwitz_core::Error;

pub mod commands;
pub mod render;

use render::Format;

/// Exact checks on genus-zero Hurwitz numbers and the cohomology of
/// projectivized Hurwitz spaces.
#[derive(Parser, Debug)]
#[command(name = "hurwitz", version)]
pub struct Cli {
    #[command(flatten)]
    global: GlobalArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,

    /// Directory for the tuple-count cache
    #[arg(long, global = true, env = "HURWITZ_CACHE_DIR")]
    pub cache_dir: Option<PathBuf>,

    /// Worker threads for enumeration: a positive integer or "auto"
    #[arg(long, global = true, default_value = "auto", value_parser = parse_threads)]
    pub threads: Threads,

    /// Upper bound on the size parameter of the command (degree, n, or p+q)
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..))]
    pub bound: Option<u32>,

    /// Enumerate even when the projected tuple count exceeds 10^9
    #[arg(long, global = true)]
    pub force: bool,

    /// Include raw intermediate data (e.g. the full discriminant)
    #[arg(long, global = true)]
    pub raw: bool,

    /// Counting method for the monodromy oracle
    #[arg(long, global = true, value_enum, default_value_t = MethodArg::Enumerate)]
    pub method: MethodArg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Threads {
    Auto,
    Fixed(usize),
}

fn parse_threads(s: &str) -> Result<Threads, String> {
    if s == "auto" {
        return Ok(Threads::Auto);
    }
    match s.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("expected a positive integer or \"auto\", got {s:?}")),
        Ok(k) => Ok(Threads::Fixed(k)),
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MethodArg {
    Enumerate,
    Transfer,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Enumerate => Method::Enumerate,
            MethodArg::Transfer => Method::Transfer,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count coverings for a ramification profile and compare with closed forms
    Count {
        #[arg(long)]
        n: u32,
        /// Semicolon-separated ramification types, e.g. "2;2;1;1"
        #[arg(long)]
        profile: String,
    },
    /// Verification suites
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Top power of Ψ and the all-simple Hurwitz number it implies
    PsiTop {
        #[arg(long)]
        n: u32,
    },
    /// Recompute the caustic cubic of the degree-3 family
    CausticCubic,
    /// Inspect the tuple-count cache
    Cache {
        #[command(subcommand)]
        what: CacheCmd,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Linear identities among Ψ, Δ, C and M modulo the four-point relations
    Identities {
        #[arg(long)]
        n: u32,
    },
    /// σ-family pairings and the discriminant multiplicity ledger
    Sigma {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand, Debug)]
enum CacheCmd {
    Stats,
}

pub const EXIT_DISAGREE: u8 = 1;
pub const EXIT_REFUSED: u8 = 2;
pub const EXIT_INVALID: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::Invalid(_) => EXIT_INVALID,
        Error::Refused { .. } | Error::Io(_) => EXIT_REFUSED,
        Error::Inconsistent(_) => EXIT_DISAGREE,
    }
}

/// Parses the process arguments, runs the command, and maps the outcome to
/// an exit code: 0 success, 1 disagreement, 2 refusal, 3 invalid input.
pub fn run() -> ExitCode {
    let _ = env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).try_init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let g = &cli.global;
    let result = match cli.command {
        Command::Count { n, profile } => commands::count(n, &profile, g),
        Command::Verify { what: Verify::Identities { n } } => commands::identities(n, g),
        Command::Verify { what: Verify::Sigma { p, q } } => commands::verify_sigma(p, q, g),
        Command::PsiTop { n } => commands::psi_top(n, g),
        Command::CausticCubic => commands::caustic_cubic(g),
        Command::Cache { what: CacheCmd::Stats } => commands::cache_stats(g),
    };
    match result {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
