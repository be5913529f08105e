use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use gradnil::ring::set_from;
use gradnil::Limits;
use gradnil_harness::{checks, corpus, report, search, spec, CheckReport, Format, Instance, Target};

/// Exact decisions about finite graded rings and m-nil clean decompositions.
#[derive(Parser)]
#[command(name = "gradnil", version)]
struct Cli {
    /// Largest ring that may be constructed.
    #[arg(long, global = true)]
    max_elements: Option<usize>,
    /// Largest number of ideals kept while enumerating graded-maximal ideals.
    #[arg(long, global = true)]
    max_ideals: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the checks a ring description requests (all when it lists none).
    Check {
        file: PathBuf,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run every check on every bundled corpus entry.
    Corpus {
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Print the Jacobson radical, or the graded one with --graded.
    Radical {
        file: PathBuf,
        #[arg(long)]
        graded: bool,
    },
    /// Sample small graded rings looking for counterexamples to a target.
    Search {
        #[arg(long)]
        target: Target,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "text")]
        format: Format,
    },
    /// Run the given files (or the corpus) and emit one report.
    Report {
        #[arg(long, default_value = "text")]
        format: Format,
        files: Vec<PathBuf>,
    },
    /// Rewrite a description as explicit tables.
    Export { file: PathBuf },
    /// List registered checks and bundled corpus entries.
    List,
}

const EXIT_SPEC: u8 = 2;

fn limits(cli: &Cli) -> Limits {
    let mut l = Limits::default();
    if let Some(n) = cli.max_elements {
        l.max_elements = n;
    }
    if let Some(n) = cli.max_ideals {
        l.max_ideals = n;
    }
    l
}

fn load(path: &Path, limits: &Limits) -> Result<Instance, ExitCode> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(EXIT_SPEC)
    })?;
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("ring");
    spec::load(&text, stem, limits).map_err(|e| {
        eprintln!("{}: {e}", path.display());
        ExitCode::from(if e.is_resource() { 3 } else { EXIT_SPEC })
    })
}

/// Writes to stdout, ignoring a closed pipe.
fn out(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn finish(reports: &[CheckReport], format: Format) -> ExitCode {
    out(&report::emit(reports, format));
    ExitCode::from(report::exit_code(reports) as u8)
}

fn run(cli: &Cli) -> Result<ExitCode, ExitCode> {
    let limits = limits(cli);
    match &cli.command {
        Command::Check { file, format } => {
            let instance = load(file, &limits)?;
            Ok(finish(&checks::run_checks(&instance), *format))
        }
        Command::Corpus { format } => Ok(finish(&corpus::run(&limits), *format)),
        Command::Report { format, files } => {
            if files.is_empty() {
                return Ok(finish(&corpus::run(&limits), *format));
            }
            let mut all = Vec::new();
            for f in files {
                all.extend(checks::run_checks(&load(f, &limits)?));
            }
            Ok(finish(&all, *format))
        }
        Command::Radical { file, graded } => {
            let instance = load(file, &limits)?;
            let ring = instance.ring();
            let set = if *graded {
                instance.graded_radical()
            } else {
                ring.jacobson_radical(&limits).map(|j| set_from(ring.size(), j))
            };
            let set = set.map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(if e.is_resource() { 3 } else { 1 })
            })?;
            let which = if *graded { "graded Jacobson radical" } else { "Jacobson radical" };
            let mut text = format!("{which} of {}: {} elements\n", ring.label(), set.count_ones(..));
            for x in set.ones() {
                let _ = writeln!(text, "  {}", instance.describe(x));
            }
            out(&text);
            Ok(ExitCode::SUCCESS)
        }
        Command::Search {
            target,
            budget,
            seed,
            format,
        } => {
            let found = search::search(*target, *budget, *seed, &limits);
            let mut records = found.records();
            for (k, c) in found.counterexamples.iter().enumerate().skip(1) {
                if let Some(first) = records.first_mut() {
                    first.witness.insert(format!("also[{k}]"), format!("{} (m = {}, sample {})", c.description, c.m, c.sample));
                }
            }
            Ok(finish(&records, *format))
        }
        Command::Export { file } => {
            let instance = load(file, &limits)?;
            let text = spec::export(&instance).map_err(|e| {
                eprintln!("{e}");
                ExitCode::from(EXIT_SPEC)
            })?;
            out(&text);
            Ok(ExitCode::SUCCESS)
        }
        Command::List => {
            let mut text = String::new();
            for c in checks::REGISTRY {
                let _ = writeln!(text, "check  {:<30} {}", c.name, c.summary);
            }
            for t in Target::ALL {
                let _ = writeln!(text, "target {}", t.name());
            }
            for (stem, _) in corpus::CORPUS {
                let _ = writeln!(text, "corpus {stem}");
            }
            out(&text);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    run(&cli).unwrap_or_else(|code| code)
}
