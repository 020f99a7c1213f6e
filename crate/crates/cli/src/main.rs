//! `yokonuma`: exact computations in Yokonuma–Hecke algebras from the
//! command line. Records go to stdout as JSON lines (or plain text), a
//! summary to stderr. Exit status: 0 all checks pass, 1 a check failed,
//! 2 bad usage.

mod commands;
mod output;
mod sweep;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use yokonuma::hecke::{KConvention, Tier};

use commands::{Group, Mode, UsageError};
use output::{Format, Out};

#[derive(Parser)]
#[command(
    name = "yokonuma",
    version,
    about = "Exact computations in Yokonuma-Hecke algebras"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Write records here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for parallel checks.
    #[arg(long, global = true, env = "YOKONUMA_WORKERS")]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TierArg {
    Quick,
    Exact,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KArg {
    AsPrinted,
    OffByOne,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the rank formula with a constructed basis.
    Rank {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "none")]
        group: Group,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Multiply two expressions and print the product in the E-basis.
    Mul {
        a: String,
        b: String,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "rational")]
        mode: Mode,
    },
    /// Check a relation set under an assignment chain.
    Verify {
        #[arg(long)]
        relset: String,
        /// Assignment names, outermost first; comma-separated or repeated.
        #[arg(long, value_delimiter = ',', required = true)]
        assign: Vec<String>,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        n: usize,
        /// Presentation file loaded on top of the builtin library; repeatable.
        #[arg(long)]
        library: Vec<PathBuf>,
    },
    /// Check that the block-matrix map is an algebra isomorphism.
    PsiCheck {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "exact")]
        tier: TierArg,
        /// Seeds the random specializations of the quick rank pass.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(
            long = "k-convention",
            value_enum,
            default_value = "as-printed",
            hide = true
        )]
        k_convention: KArg,
    },
    /// List simple modules of Y(d,n) or of a fixed-point subalgebra.
    Simples {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        /// Quantum characteristic: a positive integer or `inf`.
        #[arg(long, default_value = "inf")]
        e: String,
        #[arg(long, value_enum, default_value = "none")]
        group: Group,
        #[arg(long)]
        p: Option<usize>,
        /// Include dimensions (generic e only).
        #[arg(long)]
        dims: bool,
    },
    /// Build and check a basis of a fixed-point subalgebra.
    FixedBasis {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        group: Group,
        #[arg(long)]
        p: Option<usize>,
    },
    /// Run the full acceptance matrix.
    Sweep {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rank { .. } => "rank",
            Command::Mul { .. } => "mul",
            Command::Verify { .. } => "verify",
            Command::PsiCheck { .. } => "psi-check",
            Command::Simples { .. } => "simples",
            Command::FixedBasis { .. } => "fixed-basis",
            Command::Sweep { .. } => "sweep",
        }
    }
}

fn run(cmd: &Command, out: &mut Out) -> Result<serde_json::Value, UsageError> {
    Ok(match cmd {
        Command::Rank { d, n, group, p } => {
            commands::rank(out, *d, *n, *group, *p)?;
            json!({ "d": d, "n": n, "group": format!("{group:?}").to_lowercase(), "p": p })
        }
        Command::Mul { a, b, d, n, mode } => {
            commands::mul(out, a, b, *d, *n, *mode)?;
            json!({ "a": a, "b": b, "d": d, "n": n, "mode": format!("{mode:?}").to_lowercase() })
        }
        Command::Verify {
            relset,
            assign,
            d,
            p,
            n,
            library,
        } => {
            let lib = commands::library(library)?;
            commands::verify_relset(out, &lib, relset, assign, *d, *p, *n)?;
            json!({ "relset": relset, "assign": assign, "d": d, "p": p, "n": n, "library": library })
        }
        Command::PsiCheck {
            d,
            n,
            tier,
            seed,
            k_convention,
        } => {
            let t = match tier {
                TierArg::Quick => Tier::Quick,
                TierArg::Exact => Tier::Exact,
            };
            let k = match k_convention {
                KArg::AsPrinted => KConvention::AsPrinted,
                KArg::OffByOne => KConvention::OffByOne,
            };
            commands::psi_check(out, *d, *n, t, *seed, k)?;
            json!({ "d": d, "n": n, "tier": t, "seed": seed, "k_convention": k })
        }
        Command::Simples {
            d,
            n,
            e,
            group,
            p,
            dims,
        } => {
            let q = commands::parse_e(e)?;
            commands::simples(out, *d, *n, q, *group, *p, *dims)?;
            json!({ "d": d, "n": n, "e": e, "group": format!("{group:?}").to_lowercase(), "p": p, "dims": dims })
        }
        Command::FixedBasis { d, n, group, p } => {
            commands::fixed_basis_cmd(out, *d, *n, *group, *p)?;
            json!({ "d": d, "n": n, "group": format!("{group:?}").to_lowercase(), "p": p })
        }
        Command::Sweep { seed } => {
            sweep::sweep(out, *seed)?;
            json!({ "seed": seed })
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: worker count must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = match Out::new(cli.command.name(), cli.format, cli.output.as_deref()) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: cannot open output: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&cli.command, &mut out) {
        Ok(args) => ExitCode::from(out.finish(args)),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
