use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spectralrec::eo::{is_stable, Engine};
use spectralrec::verify::{self, Bounds, Context, Suite};
use spectralrec::Error;

mod commands;
mod format;

#[derive(Parser, Debug)]
#[command(name = "spectralrec", version, about = "Exact topological recursion on x = z + 1/z and stationary invariants of P^1")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads.
    #[arg(long, global = true, env = "SPECTRALREC_JOBS")]
    jobs: Option<usize>,

    /// Lower bound on the curve truncation N.
    #[arg(long, global = true)]
    trunc: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Oracle {
    Plancherel,
    Toprec,
    Closed,
    All,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the multidifferential omega^g_n.
    Omega {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        n: u32,
    },
    /// Evaluate a stationary invariant <prod tau_{b_i}(w)>^g.
    Gw {
        #[arg(long)]
        g: u32,
        /// Descendant powers, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        b: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Oracle::Plancherel)]
        oracle: Oracle,
    },
    /// Compare the computed N- and m-polynomials with the built-in table.
    Table7 {
        #[arg(long)]
        g: Option<u32>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        suite: Suite,
        /// Weight bound for the generating-function and GW equation checks.
        #[arg(long)]
        max_weight: Option<u32>,
    },
}

/// Largest genus and `2g - 2 + n` served by `omega`.
const MAX_G: u32 = 3;
const MAX_CHI: i64 = 6;

pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Budget(_) | Error::Unsupported(_) | Error::Parse(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub fn check_budget(g: u32, n: u32) -> Result<(), Error> {
    if !is_stable(g, n) {
        return Err(Error::Budget(format!("(g,n)=({g},{n}) is not stable")));
    }
    if g > MAX_G || 2 * g as i64 - 2 + n as i64 > MAX_CHI {
        return Err(Error::Budget(format!(
            "(g,n)=({g},{n}) exceeds g <= {MAX_G}, 2g-2+n <= {MAX_CHI}"
        )));
    }
    Ok(())
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    let engine = match cli.trunc {
        Some(t) => Engine::with_truncation_floor(t),
        None => Engine::new(),
    };
    let ctx = Context {
        engine,
        ..Context::default()
    };
    match cli.command {
        Command::Omega { g, n } => commands::omega(&ctx, g, n, cli.format, out),
        Command::Gw { g, b, oracle } => commands::gw(&ctx, g, &b, oracle, cli.format, out),
        Command::Table7 { g, n, k } => commands::table7(&ctx, (g, n, k), cli.format, out),
        Command::Verify { suite, max_weight } => {
            let mut bounds = Bounds::default();
            if let Some(w) = max_weight {
                bounds.theorem1_weight = w as i64;
                bounds.gw_weight = w;
            }
            let cases = verify::run(&ctx, suite, &bounds)?;
            commands::report(&cases, cli.format, out)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let mut out = String::new();
    let res = run(cli, &mut out);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    let _ = stdout.flush();
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
