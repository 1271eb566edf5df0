mod jobs;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use bineuler_core::limits::{DEFAULT_ENUM_LIMIT, ENUM_LIMIT_ENV};
use bineuler_core::{EnumLimit, Error};
use clap::{Parser, Subcommand, ValueEnum};

/// Binomial-Eulerian polynomials, their bijections and identities, in exact arithmetic.
#[derive(Debug, Parser)]
#[command(name = "bineuler", version)]
pub struct Cli {
    /// Largest permutation size that may be enumerated exhaustively.
    #[arg(long, global = true, env = ENUM_LIMIT_ENV, default_value_t = DEFAULT_ENUM_LIMIT)]
    pub enum_limit: usize,

    /// Write output here instead of standard output.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute a single polynomial.
    #[command(subcommand)]
    Poly(PolyCmd),
    /// Run an exhaustive verification.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Finite checks of open real-rootedness claims.
    #[command(subcommand)]
    Conjecture(ConjectureCmd),
    /// Emit an integer triangle.
    Table {
        #[arg(long, value_enum)]
        family: TableArg,
        #[arg(long)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Debug, Subcommand)]
pub enum PolyCmd {
    /// Eulerian polynomial `A_n(x)` by descents.
    Eulerian {
        #[arg(long)]
        n: usize,
    },
    /// Binomial-Eulerian polynomial.
    BinomialEulerian {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = BeRoute::Def)]
        route: BeRoute,
    },
    /// Four-variable exc/fix/cyc/fcyc polynomial.
    Multistat {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = MultistatRoute::Enum)]
        route: MultistatRoute,
    },
    /// Betti numbers `B(n,0..n)` as a polynomial.
    Betti {
        #[arg(long)]
        n: usize,
    },
    /// Cycle-count polynomial `T_n(q)`.
    T {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TArg::Rec)]
        route: TArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// The six lemma maps and the cardinality ledgers.
    Bijections {
        #[arg(long)]
        max_n: usize,
    },
    /// The recursive des-to-asc bijection on `Q_n`.
    Omega {
        #[arg(long)]
        max_n: usize,
    },
    /// Symmetric Eulerian binomial identity for `a + b <= max_ab`.
    Identity2 {
        #[arg(long)]
        max_ab: usize,
    },
    /// Generating-function identities, coefficientwise.
    Egf {
        #[arg(long, value_enum)]
        which: EgfArg,
        #[arg(long)]
        order: usize,
    },
    /// Both specializations of the four-variable polynomial.
    Specializations {
        #[arg(long)]
        max_n: usize,
    },
    /// Block statistics on `Q_n` against cycle statistics on `Q̂_n`.
    Prop31 {
        #[arg(long)]
        max_n: usize,
    },
    /// Closed-form Betti numbers against signed enumeration.
    BettiEnum {
        #[arg(long)]
        max_n: usize,
    },
    /// Recurrence for the four-variable polynomial against enumeration.
    MultistatRec {
        #[arg(long)]
        max_n: usize,
    },
    /// Agreement of the binomial-Eulerian routes.
    Routes {
        #[arg(long)]
        max_n: usize,
        /// Also compare the enumeration route (subject to the limit).
        #[arg(long)]
        with_enum: bool,
    },
    /// Palindromicity and γ-nonnegativity of `Ã_n`.
    Symmetry {
        #[arg(long)]
        max_n: usize,
    },
    /// Chain numbers `Ã_n(2)` by every route.
    Chain {
        #[arg(long)]
        max_n: usize,
    },
    /// All routes for `T_n`, with the `T_2` cell reported separately.
    TRoutes {
        #[arg(long)]
        max_n: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConjectureCmd {
    /// Sturm-sequence real-rootedness verdicts.
    RealRoots {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 30)]
        max_n: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BeRoute {
    Def,
    Table,
    ThreeTerm,
    NthOrder,
    Enum,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MultistatRoute {
    Enum,
    Rec,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TArg {
    Enum,
    #[value(alias = "recurrence")]
    Rec,
    Charlier,
    Egf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EgfArg {
    #[value(name = "tildeA")]
    TildeA,
    Pde,
    A2,
    Multistat,
    Betti,
    Tq,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "tildeA")]
    TildeA,
    T,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TableArg {
    Eulerian,
    BinomialEulerian,
    Betti,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

const EXIT_FAILED_CHECK: u8 = 1;
const EXIT_USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = match EnumLimit::new(cli.enum_limit) {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let outcome = match jobs::run(&cli.command, limit) {
        Ok(o) => o,
        Err(e @ Error::Dispatch { .. }) => jobs::Outcome::dispatch_failure(&e),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let written = match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text),
        None => std::io::stdout().write_all(outcome.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    if outcome.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILED_CHECK)
    }
}
