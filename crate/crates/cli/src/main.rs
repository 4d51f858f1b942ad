use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polyalg::sweep::Execution;
use polyalg_cli::ast::{Program, StmtKind};
use polyalg_cli::parser::{parse, parse_params};
use polyalg_cli::render::{render, Format};
use polyalg_cli::run::run;
use polyalg_cli::selftest::selftest;

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "polyalg", version, about = "Polynomial algebras: definitions, fusion and checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a program and report the first error.
    Check { file: PathBuf },
    /// Run a program.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the verify statements of a program with parameter overrides.
    Verify {
        file: PathBuf,
        #[arg(long, default_value = "")]
        params: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the acceptance checks and the corpus round-trip.
    Selftest {
        /// Run the sweeps on one thread.
        #[arg(long)]
        sequential: bool,
    },
}

fn load(path: &Path) -> Result<Program, ExitCode> {
    let src = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })?;
    parse(&src).map_err(|e| {
        eprintln!("{}:{e}", path.display());
        ExitCode::from(EXIT_USAGE)
    })
}

fn execute(path: &Path, program: &Program, overrides: &[(String, polyalg::coeffring::Rational)], format: Format) -> ExitCode {
    match run(program, overrides) {
        Ok(report) => {
            print!("{}", render(&report, format));
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
        Err(e) => {
            eprintln!("{}:{e}", path.display());
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { file } => match load(&file) {
            Ok(program) => {
                println!("{}: {} statements", file.display(), program.statements.len());
                ExitCode::SUCCESS
            }
            Err(code) => code,
        },
        Command::Eval { file, format } => match load(&file) {
            Ok(program) => execute(&file, &program, &[], format),
            Err(code) => code,
        },
        Command::Verify {
            file,
            params,
            format,
        } => {
            let overrides = match parse_params(&params) {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("--params: {e}");
                    return ExitCode::from(EXIT_USAGE);
                }
            };
            let program = match load(&file) {
                Ok(p) => p,
                Err(code) => return code,
            };
            if !program
                .statements
                .iter()
                .any(|s| matches!(s.kind, StmtKind::Verify { .. }))
            {
                eprintln!("{}: no verify statements", file.display());
                return ExitCode::from(EXIT_USAGE);
            }
            let statements = program
                .statements
                .into_iter()
                .filter(|s| {
                    matches!(
                        s.kind,
                        StmtKind::Algebra { .. } | StmtKind::Let { .. } | StmtKind::Verify { .. }
                    )
                })
                .collect();
            execute(&file, &Program { statements }, &overrides, format)
        }
        Command::Selftest { sequential } => {
            let exec = if sequential {
                Execution::Sequential
            } else {
                Execution::default()
            };
            let report = selftest(exec);
            print!("{}", report.render());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FAILED)
            }
        }
    }
}
