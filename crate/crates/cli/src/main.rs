use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use lensorbit::cli::{
    error_outcome, run, CliError, Command, FiberSelector, OutputMode, RunConfig, RunOutcome,
};

/// Orbit spaces of free involutions on lens spaces, spheres and projective
/// spaces, mod 2.
#[derive(Parser)]
#[command(name = "lensorbit", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Args)]
struct FiberArgs {
    /// fiber type: lens, sphere or rp
    #[arg(long)]
    fiber: Option<String>,
    /// lens parameter (dimension 2m-1)
    #[arg(long)]
    m: Option<usize>,
    /// sphere or projective space dimension
    #[arg(long)]
    n: Option<usize>,
    /// order of the cyclic group; picks the fiber type from p mod 4
    #[arg(long)]
    p: Option<i64>,
    /// fiber cohomology as a ring, e.g. "ring F2[v:1,w:2]/(v^2, w^3) cap 7"
    #[arg(long)]
    ring: Option<String>,
    /// treat the action on a ring fiber's cohomology as trivial
    #[arg(long)]
    assume_trivial_action: bool,
    /// override the window width in the k direction
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Search all differentials and classify the surviving orbit spaces
    Classify(FiberArgs),
    /// Print the pages of one scenario of the search
    Pages {
        #[command(flatten)]
        fiber: FiberArgs,
        /// scenario index, as listed by classify
        #[arg(long, default_value_t = 0)]
        scenario: usize,
    },
    /// Rank profiles of the Gysin sequence for given dimension vectors
    Gysin {
        /// dims of H^*(X/G), comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        orbit: Vec<usize>,
        /// dims of H^*(X), comma separated
        #[arg(long, value_delimiter = ',', required = true)]
        space: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Co-index and Borsuk-Ulam bound of a class in a presented ring
    Coindex {
        #[arg(long)]
        ring: String,
        #[arg(long, default_value = "x")]
        class: String,
        #[arg(long)]
        json: bool,
    },
    /// Check the involution of a lens space on a grid of sample points
    Involution {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        m: usize,
        /// rotation weights, comma separated (default all ones)
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<i64>>,
        #[arg(long, default_value_t = 16)]
        denominator: i64,
        /// a point such as "zero,1/8"
        #[arg(long)]
        point: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn selector(a: &FiberArgs) -> Result<FiberSelector, CliError> {
    let bad = |s: &str| Err(CliError::InvalidParam(s.into()));
    let groups = [a.fiber.is_some(), a.p.is_some(), a.ring.is_some()]
        .iter()
        .filter(|&&b| b)
        .count();
    if groups != 1 {
        return bad("give exactly one of --fiber, --p or --ring");
    }
    if let Some(text) = &a.ring {
        return Ok(FiberSelector::Ring {
            text: text.clone(),
            assume_trivial_action: a.assume_trivial_action,
        });
    }
    if let Some(p) = a.p {
        let Some(m) = a.m else {
            return bad("--p needs --m");
        };
        return Ok(FiberSelector::ByP { p, m });
    }
    match a.fiber.as_deref() {
        Some("lens") => match a.m {
            Some(m) => Ok(FiberSelector::Lens { m }),
            None => bad("--fiber lens needs --m"),
        },
        Some("sphere") => match a.n {
            Some(n) => Ok(FiberSelector::Sphere { n }),
            None => bad("--fiber sphere needs --n"),
        },
        Some("rp") => match a.n {
            Some(n) => Ok(FiberSelector::Projective { n }),
            None => bad("--fiber rp needs --n"),
        },
        Some(other) => Err(CliError::InvalidParam(format!(
            "unknown fiber {other:?}; expected lens, sphere or rp"
        ))),
        None => unreachable!(),
    }
}

fn mode(json: bool) -> OutputMode {
    if json {
        OutputMode::Json
    } else {
        OutputMode::Text
    }
}

fn config(cli: Cli) -> Result<RunConfig, (CliError, OutputMode)> {
    Ok(match cli.command {
        Cmd::Classify(a) => RunConfig {
            command: Command::Classify {
                fiber: selector(&a).map_err(|e| (e, mode(a.json)))?,
                kmax: a.kmax,
            },
            output: mode(a.json),
        },
        Cmd::Pages { fiber, scenario } => RunConfig {
            command: Command::Pages {
                fiber: selector(&fiber).map_err(|e| (e, mode(fiber.json)))?,
                kmax: fiber.kmax,
                scenario,
            },
            output: mode(fiber.json),
        },
        Cmd::Gysin { orbit, space, json } => RunConfig {
            command: Command::Gysin { orbit, space },
            output: mode(json),
        },
        Cmd::Coindex { ring, class, json } => RunConfig {
            command: Command::Coindex { ring, class },
            output: mode(json),
        },
        Cmd::Involution {
            p,
            m,
            q,
            denominator,
            point,
            json,
        } => RunConfig {
            command: Command::Involution {
                p,
                m,
                q,
                denominator,
                point,
            },
            output: mode(json),
        },
    })
}

fn execute<I, T>(args: I) -> RunOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let json = args.iter().any(|a| a == "--json");
    match Cli::try_parse_from(&args) {
        Ok(cli) => match config(cli) {
            Ok(cfg) => run(&cfg),
            Err((e, m)) => error_outcome(&e, m),
        },
        Err(e) if e.use_stderr() => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("bad arguments");
            let msg = first.trim_start_matches("error: ").to_string();
            error_outcome(&CliError::InvalidParam(msg), mode(json))
        }
        Err(e) => RunOutcome {
            code: 0,
            stdout: e.render().to_string(),
            stderr: String::new(),
        },
    }
}

fn main() -> ExitCode {
    let outcome = execute(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
