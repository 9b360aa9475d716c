use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use adjlab::anchors::{missing_from, ANCHORS};
use adjlab::{catalog, default_suite, run_many, run_target, FieldChoice, HarnessError, Params, Report};
use adjlab_core::exec::Exec;
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "adjlab", version, about = "Run adjlab verification scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a built-in scenario, `all` for the default suite, or a document file.
    Run {
        target: String,
        /// Document whose top-level args feed the op named by TARGET.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `q` or `p:PRIME`.
        #[arg(long)]
        field: Option<FieldChoice>,
        #[arg(long)]
        deg_cap: Option<u32>,
        /// Seconds.
        #[arg(long)]
        time_budget: Option<u64>,
        /// Write the full report as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Matrix size for the pfaffian scenario.
        #[arg(long)]
        n: Option<usize>,
        /// Allow stretch scenarios.
        #[arg(long)]
        stretch: bool,
        #[arg(long)]
        sequential: bool,
    },
    /// List the built-in scenarios.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Check that every anchor occurs verbatim in a source text.
    CheckAnchors {
        #[arg(long, default_value = "paper.md")]
        source: PathBuf,
    },
}

fn write_json(path: &PathBuf, reports: &[Report]) -> Result<(), HarnessError> {
    let body = if reports.len() == 1 {
        reports[0].to_json()
    } else {
        serde_json::to_string_pretty(reports).expect("reports serialize")
    };
    std::fs::write(path, body + "\n")?;
    Ok(())
}

fn run(cli: Cli) -> Result<i32, HarnessError> {
    match cli.command {
        Command::Run {
            target,
            input,
            seed,
            field,
            deg_cap,
            time_budget,
            json,
            n,
            stretch,
            sequential,
        } => {
            let params = Params {
                seed,
                field,
                deg_cap,
                time_budget: time_budget.map(Duration::from_secs),
                n,
                stretch,
                exec: if sequential { Exec::Sequential } else { Exec::default() },
            };
            let reports: Vec<Report> = if target == "all" && input.is_none() {
                run_many(&default_suite(), &params).into_iter().collect::<Result<_, _>>()?
            } else {
                vec![run_target(&target, input.as_deref(), &params)?]
            };
            for r in &reports {
                println!("{}\n", r.table());
            }
            if let Some(path) = &json {
                write_json(path, &reports)?;
            }
            Ok(reports.iter().map(Report::exit_code).max().unwrap_or(0))
        }
        Command::List { json } => {
            let cat = catalog();
            if json {
                println!("{}", serde_json::to_string_pretty(&cat).expect("catalog serializes"));
            } else {
                for e in &cat {
                    let field = e.default_field.map_or("none".to_string(), |f| f.to_string());
                    println!("{:<26} {:<8} {:<7} {}", e.name, format!("{:?}", e.runtime).to_lowercase(), field, e.verifies);
                    println!("{:<26} anchor: {}", "", e.anchor);
                }
            }
            Ok(0)
        }
        Command::CheckAnchors { source } => {
            let text = std::fs::read_to_string(&source)?;
            let missing = missing_from(&text);
            for (key, a) in &missing {
                println!("missing {key}: {a}");
            }
            println!("{} of {} anchors found", ANCHORS.len() - missing.len(), ANCHORS.len());
            Ok(if missing.is_empty() { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
