use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use rzeta::group::DEFAULT_ORDER_CAP;
use rzeta::problem::{parse_document, run, validate, Problem, ProblemError, Scope};

/// Reidemeister numbers, zeta functions, torsion and Nielsen radius bounds.
#[derive(Parser)]
#[command(name = "rzeta", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a problem document and print its canonical form.
    Check(Common),
    /// Run every applicable computation and its cross-checks.
    Compute(Common),
    /// Reidemeister numbers and the zeta function only.
    Zeta(Common),
    /// Nielsen zeta radius bounds for a free-group endomorphism.
    Bounds(Common),
    /// Torsion special values at the document's angles.
    Torsion(Common),
}

#[derive(Args)]
struct Common {
    /// Problem file; standard input when absent or `-`.
    path: Option<PathBuf>,
    /// Override the number of iterates and the series order.
    #[arg(long)]
    order: Option<usize>,
    /// Emit JSON.
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (the default).
    #[arg(long)]
    text: bool,
    /// Largest finite group to build; also read from RZETA_MAX_GROUP_ORDER.
    #[arg(long)]
    max_group_order: Option<usize>,
}

fn read_input(path: Option<&PathBuf>) -> Result<String, ProblemError> {
    let mut text = String::new();
    match path {
        Some(p) if p.as_os_str() != "-" => {
            text = std::fs::read_to_string(p).map_err(|e| ProblemError::Schema(format!("{}: {e}", p.display())))?;
        }
        _ => {
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| ProblemError::Schema(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn group_cap(flag: Option<usize>) -> Result<usize, ProblemError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("RZETA_MAX_GROUP_ORDER") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| ProblemError::Schema(format!("RZETA_MAX_GROUP_ORDER={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn load(common: &Common) -> Result<Problem, ProblemError> {
    let text = read_input(common.path.as_ref())?;
    let mut doc = parse_document(&text)?;
    if let Some(order) = common.order {
        doc.options_mut().order = order;
    }
    validate(doc, group_cap(common.max_group_order)?)
}

fn execute(cli: &Cli) -> Result<i32, ProblemError> {
    let (common, scope) = match &cli.command {
        Command::Check(c) => {
            let problem = load(c)?;
            if c.json {
                println!("{}", problem.document.to_canonical_json());
            } else {
                println!("valid {} document", problem.document.kind());
            }
            return Ok(0);
        }
        Command::Compute(c) => (c, Scope::Full),
        Command::Zeta(c) => (c, Scope::Zeta),
        Command::Bounds(c) => (c, Scope::Bounds),
        Command::Torsion(c) => (c, Scope::Torsion),
    };
    let problem = load(common)?;
    let report = run(&problem, scope)?;
    if common.json {
        println!("{}", report.to_json());
    } else {
        print!("{report}");
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
