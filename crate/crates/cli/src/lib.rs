//! Command-line front end for `lieb-core`.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails (including an
//! input algebra that violates Jacobi), 2 for usage errors and unreadable or
//! malformed input.

pub mod commands;
pub mod input;
pub mod report;
pub mod suite;

use clap::{Parser, Subcommand};

use input::InputError;
use report::Report;

#[derive(Debug, Parser)]
#[command(name = "lieb", version, about = "Exact computations for Schrödinger Lie bialgebras and their quantizations")]
pub struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cocommutator of an r-matrix and its cocycle check.
    Delta {
        #[arg(long)]
        r: String,
        /// Overrides the `algebra:` header of the r-matrix file.
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Schouten bracket, modulo the co-Jacobi constraints, and its ad-invariance.
    Schouten {
        #[arg(long)]
        r: String,
        #[arg(long)]
        algebra: Option<String>,
        /// Oriented triple whose coefficient is the discriminant.
        #[arg(long)]
        orientation: Option<String>,
    },
    /// Discriminant, and the standard/non-standard label at a point.
    Classify {
        #[arg(long)]
        r: String,
        #[arg(long)]
        algebra: Option<String>,
        /// Parameter values, e.g. `c2=0,c1=1`.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, default_value = "K,M,P")]
        orientation: String,
    },
    /// General 1-cocycle of an algebra.
    CocycleSolve {
        #[arg(long)]
        algebra: String,
    },
    /// Co-Jacobi constraints of the general cocycle, or of an r-matrix.
    Cojacobi {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        r: Option<String>,
    },
    /// Match a target bialgebra inside a parent family along a generator map.
    Embed {
        #[arg(long)]
        algebra: String,
        /// Parent r-matrix family; a generic skew r when omitted.
        #[arg(long)]
        r: Option<String>,
        /// Parent generators spanning the image, e.g. `D,K,P,M`.
        #[arg(long)]
        sub: String,
        /// Target cocommutator file.
        #[arg(long)]
        target: String,
        #[arg(long)]
        map: String,
    },
    /// Sklyanin bracket table, its linearization and Jacobi identity.
    Sklyanin {
        #[arg(long)]
        r: String,
        #[arg(long)]
        algebra: Option<String>,
        /// Reference table `NAME.poisson` to compare with.
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        at: Option<String>,
    },
    /// Hopf axioms, antipode and R-matrix of a truncated quantum algebra.
    HopfCheck {
        /// `ucc`, `uac`, or a case file.
        #[arg(long)]
        case: String,
        #[arg(long, env = "LIEB_ORDER", default_value_t = 4)]
        order: i64,
    },
    /// Run every reproduction check.
    VerifySuite {
        #[arg(long, env = "LIEB_ORDER", default_value_t = 4)]
        order: i64,
    },
}

/// Output and exit code of one invocation; `args` excludes the program name.
pub fn run<I: IntoIterator<Item = String>>(args: I) -> (String, i32) {
    let args: Vec<String> = args.into_iter().collect();
    let cli = match Cli::try_parse_from(std::iter::once("lieb".to_string()).chain(args.iter().cloned())) {
        Ok(c) => c,
        Err(e) => return (e.render().to_string(), if e.use_stderr() { 2 } else { 0 }),
    };
    let echo: Vec<&str> = args.iter().map(String::as_str).filter(|a| *a != "--json").collect();
    let mut rep = Report::new(echo.join(" "));
    let outcome = match &cli.command {
        Command::Delta { r, algebra } => commands::delta(r, algebra.as_deref(), &mut rep),
        Command::Schouten { r, algebra, orientation } => {
            commands::schouten_cmd(r, algebra.as_deref(), orientation.as_deref(), &mut rep)
        }
        Command::Classify { r, algebra, at, orientation } => {
            commands::classify_cmd(r, algebra.as_deref(), at.as_deref(), orientation, &mut rep)
        }
        Command::CocycleSolve { algebra } => commands::cocycle_solve_cmd(algebra, &mut rep),
        Command::Cojacobi { algebra, r } => commands::cojacobi_cmd(algebra, r.as_deref(), &mut rep),
        Command::Embed { algebra, r, sub, target, map } => {
            commands::embed_cmd(algebra, r.as_deref(), sub, target, map, &mut rep)
        }
        Command::Sklyanin { r, algebra, family, at } => {
            commands::sklyanin_cmd(r, algebra.as_deref(), family.as_deref(), at.as_deref(), &mut rep)
        }
        Command::HopfCheck { case, order } => commands::hopf_check_cmd(case, *order, &mut rep),
        Command::VerifySuite { order } => {
            if *order < 1 {
                Err(InputError::Invalid(format!("--order must be at least 1, got {order}")))
            } else {
                rep = suite::run(*order, &rep.command);
                for (id, title, pass) in suite::summary(&rep) {
                    rep.put(format!("criterion {id}"), format!("{} {title}", if pass { "pass" } else { "FAIL" }));
                }
                Ok(())
            }
        }
    };
    match outcome {
        Err(InputError::Invalid(m)) => (format!("error: {m}\n"), 2),
        Err(e @ InputError::Jacobi { .. }) => {
            rep.check("input algebra satisfies Jacobi", false, e.to_string());
            finish(&rep, cli.json)
        }
        Ok(()) => finish(&rep, cli.json),
    }
}

fn finish(rep: &Report, json: bool) -> (String, i32) {
    let out = if json { rep.to_json() + "\n" } else { rep.to_text() };
    (out, rep.exit_code())
}
