use clap::{Args, Parser, Subcommand};
use morphic_cli::job::tau_from_text;
use morphic_cli::run::error_document;
use morphic_cli::{parse_input, run, Command, Format, JobSpec, Options};
use morphic_core::{Error, Result};
use std::io::Read;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "morphic",
    version,
    about = "Eigenvalues, coboundaries and weak mixing of morphic subshifts"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Additive eigenvalue group with every intermediate object.
    Eigenvalues(Common),
    /// Coboundary graph and coboundary space.
    Coboundaries(Common),
    /// Derived-substitution trace and periodicity verdict.
    Aperiodic(Common),
    /// Bounded window search for recognizability of σ and τ.
    Recognizable(Common),
    /// Weak mixing verdict and the Galois graph of B.
    Weakmix(Common),
    /// Dimension of the rational span of the eigenvalues.
    Dimension(Common),
    /// Return substitution on a letter with its decode table.
    Derive {
        #[command(flatten)]
        common: Common,
        /// Letter to return to (default: the seed letter of the fixed point).
        #[arg(long)]
        letter: Option<String>,
    },
    /// Matrix, characteristic and minimal polynomials, spectrum.
    Info(Common),
    /// Run a structured job file, taking the command from the file.
    Run(Common),
}

#[derive(Args)]
struct Common {
    /// Substitution file, structured job file, or `-` for standard input.
    input: String,
    /// File with the coding τ, defined on the alphabet of σ.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long, default_value_t = 16)]
    max_window: usize,
    /// Depth of the general Δ computation (default: twice the alphabet size).
    #[arg(long)]
    fallback_depth: Option<usize>,
    #[arg(long)]
    assume_recognizable: bool,
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    format: String,
}

fn read_source(path: &str) -> Result<String> {
    let mut s = String::new();
    let res = if path == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Error::Precondition(format!("cannot read `{path}`: {e}")))?;
    Ok(s)
}

fn build(command: Option<Command>, common: &Common, letter: Option<String>) -> Result<JobSpec> {
    let options = Options {
        max_window: common.max_window,
        fallback_depth: common.fallback_depth,
        assume_recognizable: common.assume_recognizable,
        format: common.format.parse()?,
        letter,
    };
    let mut job = parse_input(&read_source(&common.input)?, command, options)?;
    if let Some(path) = &common.tau {
        job.tau = Some(tau_from_text(&read_source(path)?, &job.sigma)?);
    }
    Ok(job)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common, letter) = match cli.command {
        Sub::Eigenvalues(c) => (Some(Command::Eigenvalues), c, None),
        Sub::Coboundaries(c) => (Some(Command::Coboundaries), c, None),
        Sub::Aperiodic(c) => (Some(Command::Aperiodic), c, None),
        Sub::Recognizable(c) => (Some(Command::Recognizable), c, None),
        Sub::Weakmix(c) => (Some(Command::Weakmix), c, None),
        Sub::Dimension(c) => (Some(Command::Dimension), c, None),
        Sub::Derive { common, letter } => (Some(Command::Derive), common, letter),
        Sub::Info(c) => (Some(Command::Info), c, None),
        Sub::Run(c) => (None, c, None),
    };
    let json_requested = common.format == "json";
    let job = build(command, &common, letter);
    let result = job.as_ref().map_err(Clone::clone).and_then(run);
    let json = job
        .as_ref()
        .map_or(json_requested, |j| j.options.format == Format::Json);
    match result {
        Ok(outcome) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.document).expect("serializable")
                );
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.status.exit_code() as u8)
        }
        Err(e) => {
            if json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&error_document(job.as_ref().ok(), &e))
                        .expect("serializable")
                );
            }
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
