//! `diamonds`: count diamond sublattices of subgroup lattices from the shell.
//!
//! The binary is a thin wrapper around [`run`], which takes the argument list
//! and output streams so commands can be driven in-process by tests.

pub mod report;
pub mod spec;

use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use diamond_core::formula::MethodPreference;
use diamond_core::oracle::OracleConfig;

pub use spec::{format_group_spec, parse_group_spec, GroupSpec, SpecError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNAVAILABLE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "diamonds",
    version,
    about = "Count diamonds in subgroup lattices of finite abelian groups"
)]
pub struct Cli {
    /// Emit JSON instead of tables; every number is a decimal string.
    #[arg(long, global = true)]
    pub json: bool,

    /// Largest group order the brute-force oracle may build.
    #[arg(long, global = true, env = "DIAMONDS_ORACLE_CAP", default_value_t = OracleConfig::DEFAULT_ORDER_CAP)]
    pub oracle_cap: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Number of diamonds, with the method used and the per-prime breakdown.
    Dm {
        spec: GroupSpec,
        #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
        method: MethodArg,
    },
    /// Run every applicable method and the oracle; fails unless all agree.
    Verify { spec: GroupSpec },
    /// Section census, with the S x S sections and their primary diamonds.
    Sections { spec: GroupSpec },
    /// Order of the automorphism group.
    Aut { spec: GroupSpec },
    /// Number of subgroups, by order when the lattice is enumerated.
    Subgroups {
        spec: GroupSpec,
        /// Write one line per subgroup (index, order, elements, type) to this file.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
    /// dm over all types of order p^n, checking that it decreases in lexicographic order.
    Survey {
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        exponent: u32,
        #[arg(long, value_enum, default_value_t = SortKey::Lex)]
        sort: SortKey,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Auto,
    Formula,
    Oracle,
}

impl From<MethodArg> for MethodPreference {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Auto => MethodPreference::Auto,
            MethodArg::Formula => MethodPreference::Formula,
            MethodArg::Oracle => MethodPreference::Oracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SortKey {
    Dm,
    Lex,
}

/// Failure of a command, mapped onto the exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Unavailable(String),
    Mismatch(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Unavailable(_) => EXIT_UNAVAILABLE,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Unavailable(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<diamond_core::Error> for Failure {
    fn from(e: diamond_core::Error) -> Self {
        use diamond_core::Error as E;
        match e {
            E::OracleScaleExceeded { .. } | E::MethodUnavailable(_) => {
                Failure::Unavailable(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, Copy)]
pub struct Context {
    pub json: bool,
    pub oracle: OracleConfig,
    pub started: Instant,
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{text}")
            } else {
                write!(out, "{text}")
            };
            return code;
        }
    };
    let ctx = Context {
        json: cli.json,
        oracle: OracleConfig::with_order_cap(cli.oracle_cap),
        started: Instant::now(),
    };
    let result = match &cli.command {
        Command::Dm { spec, method } => report::dm_cmd(&ctx, spec, *method),
        Command::Verify { spec } => report::verify(&ctx, spec),
        Command::Sections { spec } => report::sections(&ctx, spec),
        Command::Aut { spec } => report::aut(&ctx, spec),
        Command::Subgroups { spec, dump } => report::subgroups(&ctx, spec, dump.as_deref()),
        Command::Survey {
            prime,
            exponent,
            sort,
        } => report::survey(&ctx, *prime, *exponent, *sort),
    };
    match result {
        Ok(output) => {
            let _ = write!(out, "{output}");
            EXIT_OK
        }
        Err((output, failure)) => {
            if let Some(output) = output {
                let _ = write!(out, "{output}");
            }
            let _ = writeln!(err, "error: {}", failure.message());
            failure.exit_code()
        }
    }
}
