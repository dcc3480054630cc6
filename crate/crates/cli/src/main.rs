use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use stratcalc::elaborate::elaborate_program;
use stratcalc::eval::{run_program, EngineError, EvalConfig, Reduct, DEFAULT_FUEL};
use stratcalc::frontend::{parse_program_with, parse_term};
use stratcalc::prelude::PRELUDE;
use stratcalc::printer::render_program;
use stratcalc::typecheck::{check_program, type_of_application};
use stratcalc::{Diagnostic, Program};

const EXIT_FAIL: u8 = 1;
const EXIT_TYPE: u8 = 2;
const EXIT_FUEL: u8 = 3;
const EXIT_INPUT: u8 = 4;
const EXIT_INTERNAL: u8 = 5;

#[derive(Parser)]
#[command(name = "stratcalc", version, about = "Typecheck, elaborate and run strategy programs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Typecheck a program and print the type of each definition and of main.
    Check(Common),
    /// Apply the main strategy of a program to a ground term.
    Run {
        #[command(flatten)]
        common: Common,
        /// Input term, or a file containing it.
        #[arg(long)]
        term: String,
        /// Maximum number of combinator calls; 0 means unlimited.
        #[arg(long, default_value_t = DEFAULT_FUEL)]
        fuel: u64,
        /// Print the evaluation trace to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Print the elaborated program.
    Elaborate(Common),
}

#[derive(Args)]
struct Common {
    file: PathBuf,
    /// Do not load the standard prelude.
    #[arg(long)]
    no_prelude: bool,
    /// Load this prelude instead of the standard one.
    #[arg(long, conflicts_with = "no_prelude")]
    prelude: Option<PathBuf>,
}

struct Exit(u8);

/// Writes a line to stdout. A closed pipe is not an error worth reporting.
fn out(text: std::fmt::Arguments) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn read(path: &Path) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("ERROR input: cannot read {}: {e}", path.display());
        Exit(EXIT_INPUT)
    })
}

fn load(common: &Common) -> Result<Program, Exit> {
    let prelude = match (&common.prelude, common.no_prelude) {
        (Some(path), _) => Some(read(path)?),
        (None, true) => None,
        (None, false) => Some(PRELUDE.to_string()),
    };
    let text = read(&common.file)?;
    parse_program_with(prelude.as_deref(), &text).map_err(|e| {
        eprintln!("{e}");
        Exit(EXIT_INPUT)
    })
}

fn report(diags: Vec<Diagnostic>) -> Exit {
    for d in diags {
        eprintln!("{d}");
    }
    Exit(EXIT_TYPE)
}

fn execute(cli: Cli) -> Result<(), Exit> {
    match cli.command {
        Command::Check(common) => {
            let p = load(&common)?;
            let types = check_program(&p).map_err(report)?;
            for (name, ty) in &types.definitions {
                let user = p.definitions.get(name).is_some_and(|d| !d.from_prelude);
                if user {
                    out(format_args!("{name} : {ty}"));
                }
            }
            out(format_args!("main : {}", types.main));
            Ok(())
        }
        Command::Elaborate(common) => {
            let p = load(&common)?;
            let e = elaborate_program(&p).map_err(report)?;
            out(format_args!("{}", render_program(&e, false).trim_end()));
            Ok(())
        }
        Command::Run { common, term, fuel, trace } => {
            let p = elaborate_program(&load(&common)?).map_err(report)?;
            let text = if Path::new(&term).is_file() { read(Path::new(&term))? } else { term };
            let t = parse_term(text.trim(), &p.context).map_err(|e| {
                eprintln!("{e}");
                Exit(EXIT_INPUT)
            })?;
            type_of_application(&p.context, &p.main, &t).map_err(|d| report(vec![d]))?;
            let cfg = EvalConfig { fuel: (fuel > 0).then_some(fuel), trace };
            let result = run_program(&p, &t, cfg);
            for event in &result.trace {
                eprintln!("{event}");
            }
            match result.outcome {
                Ok(Reduct::Ok(t)) => {
                    out(format_args!("{t}"));
                    Ok(())
                }
                Ok(Reduct::Failure) => {
                    out(format_args!("FAIL"));
                    Err(Exit(EXIT_FAIL))
                }
                Err(EngineError::FuelExhausted) => {
                    eprintln!("ERROR fuel exhausted after {} calls", result.fuel_used);
                    Err(Exit(EXIT_FUEL))
                }
                Err(e) => {
                    eprintln!("ERROR engine: {e}");
                    Err(Exit(EXIT_INTERNAL))
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit(code)) => ExitCode::from(code),
    }
}
