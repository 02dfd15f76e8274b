//! `subgrowth` command-line front end.

mod commands;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use subgrowth::Error;

use commands::{GroupSpec, IndexSet, LemmaArg, MethodArg};
use output::Format;

const EXIT_INVALID: u8 = 2;
const EXIT_CONSISTENCY: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "subgrowth",
    version,
    about = "Subgroup growth of Baumslag–Solitar groups and free products"
)]
struct Cli {
    /// Output format (montecarlo defaults to json).
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    /// Worker threads for parallel enumeration (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write to this file instead of stdout. Relative paths resolve against
    /// $SUBGROWTH_OUTPUT_DIR when set.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print one exact (or asymptotic) series.
    Sequence {
        #[command(flatten)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
        /// Indices: `1..10` (inclusive), `7`, or `100,1000`.
        #[arg(long)]
        n: IndexSet,
    },
    /// Compare two methods row by row.
    Compare {
        #[command(flatten)]
        group: GroupSpec,
        #[arg(long, value_enum)]
        method_a: MethodArg,
        #[arg(long, value_enum)]
        method_b: MethodArg,
        #[arg(long)]
        n: IndexSet,
        /// Allowed |ratio - 1| when comparing against the asymptotic main term.
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Evaluate the analytic estimates on a grid of n.
    Diagnostics {
        #[arg(long)]
        m: u64,
        #[arg(long, value_enum, default_value = "all")]
        lemma: LemmaArg,
        #[arg(long)]
        n: IndexSet,
    },
    /// Sample permutations of order dividing m and test generation of Alt/Sym.
    Montecarlo {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::InvalidParameter(_) => EXIT_INVALID,
        Error::Consistency(_) => EXIT_CONSISTENCY,
    }
}

/// Rendered output plus the exit status it should carry.
fn run(cli: &Cli) -> Result<(String, u8), Error> {
    let table_format = cli.format.unwrap_or(Format::Csv);
    match &cli.command {
        Command::Sequence { group, method, n } => {
            let method = method.unwrap_or_else(|| commands::default_method(group.group));
            Ok((commands::cmd_sequence(group, method, n)?.render(table_format), 0))
        }
        Command::Compare {
            group,
            method_a,
            method_b,
            n,
            tolerance,
        } => {
            let (table, agree) = commands::cmd_compare(group, *method_a, *method_b, n, *tolerance)?;
            Ok((table.render(table_format), if agree { 0 } else { EXIT_CONSISTENCY }))
        }
        Command::Diagnostics { m, lemma, n } => Ok((commands::cmd_diagnostics(*m, *lemma, n)?.render(table_format), 0)),
        Command::Montecarlo { m, n, trials, seed } => {
            let record = commands::cmd_montecarlo(*m, *n, *trials, *seed)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&record).expect("serialisable");
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let header: Vec<&str> = record.keys().map(String::as_str).collect();
                    let row: Vec<String> = record
                        .values()
                        .map(|v| match v {
                            serde_json::Value::Null => String::new(),
                            other => other.to_string(),
                        })
                        .collect();
                    format!("{}\n{}\n", header.join(","), row.join(","))
                }
            };
            Ok((text, 0))
        }
    }
}

fn resolve_output(path: &PathBuf) -> PathBuf {
    match std::env::var_os("SUBGROWTH_OUTPUT_DIR") {
        Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
        _ => path.clone(),
    }
}

fn emit(cli: &Cli, text: &str) -> std::io::Result<()> {
    match &cli.output {
        Some(path) => {
            let path = resolve_output(path);
            if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
                std::fs::create_dir_all(parent)?;
            }
            std::fs::write(path, text)
        }
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INVALID } else { 0 });
        }
    };

    let result = match cli.threads {
        Some(0) => Err(Error::InvalidParameter("--threads must be >= 1".into())),
        Some(t) => match rayon::ThreadPoolBuilder::new().num_threads(t).build() {
            Ok(pool) => pool.install(|| run(&cli)),
            Err(e) => Err(Error::InvalidParameter(format!("cannot build thread pool: {e}"))),
        },
        None => run(&cli),
    };

    match result {
        Ok((text, code)) => {
            if let Err(e) = emit(&cli, &text) {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
