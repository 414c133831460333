use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use powclass_cli::{
    analyze, corpus_list, emit, exit_code, load_corpus, parse_suite, render_report, resolve_group,
    run_suite, summary_line, CliError, Format, ListFormat, CORPUS_ENV, EXIT_INFRA,
};

/// Powerful class, η-series and p-length checks on finite permutation groups.
#[derive(Parser)]
#[command(name = "powclass", version)]
struct Cli {
    /// Corpus file; defaults to the shipped corpus.
    #[arg(long, global = true, env = CORPUS_ENV)]
    corpus: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the η-series, powerful class, p-length and closure data of one group.
    Analyze {
        /// Corpus label or path to a single-group file.
        group: String,
        #[arg(long)]
        prime: u64,
    },
    /// Run the verification suite over the corpus.
    Verify {
        /// `all` or a theorem id such as `thm1.1`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads across groups; 0 uses one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Corpus operations.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List the corpus entries with recomputed tags.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: ListFormat,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let corpus = load_corpus(cli.corpus.as_deref())?;
    match cli.command {
        Command::Analyze { group, prime } => {
            let entry = resolve_group(&group, &corpus)?;
            emit(&analyze(&entry, prime)?, None)?;
            Ok(0)
        }
        Command::Verify {
            suite,
            format,
            jobs,
            out,
        } => {
            let theorems = parse_suite(&suite)?;
            let (rows, timings) = run_suite(&corpus.entries, &theorems, jobs)?;
            emit(&render_report(&rows, &timings, format), out.as_deref())?;
            eprintln!("{}: {}", corpus.origin, summary_line(&rows));
            Ok(exit_code(&rows))
        }
        Command::Corpus {
            action: CorpusAction::List { format },
        } => {
            emit(&corpus_list(&corpus.entries, format), None)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INFRA)
        }
    }
}
