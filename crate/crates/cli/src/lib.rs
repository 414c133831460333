//! Report harness behind the `powclass` binary: corpus loading, the
//! verification run, report rendering and the `analyze` summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::ValueEnum;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use powclass::corpus::{self, CorpusEntry, CorpusError, GroupDoc};
use powclass::group::is_prime;
use powclass::series::nilpotency_class;
use powclass::verify::{
    applies, check, p_length_bound, Status, SylowContext, TheoremId, G_LEVEL_MAX_ORDER,
};
use powclass::{Group, GroupError};

/// Environment variable naming the default corpus file.
pub const CORPUS_ENV: &str = "POWCLASS_CORPUS";

/// Version of the JSON report layout.
pub const REPORT_SCHEMA: u32 = 1;

#[derive(Error, Debug)]
pub enum CliError {
    #[error("unknown group `{0}`: not a corpus label or a readable file")]
    UnknownGroup(String),
    #[error("unknown suite `{0}`; expected `all` or a theorem id")]
    UnknownSuite(String),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("corpus {0} contains no groups")]
    EmptyCorpus(String),
    #[error("{path} holds {count} groups; pass a single-group file or a label")]
    AmbiguousFile { path: String, count: usize },
    #[error(transparent)]
    Corpus(#[from] CorpusError),
    #[error("{group}: {source}")]
    Group { group: String, source: GroupError },
    #[error("could not start worker threads: {0}")]
    Threads(#[from] rayon::ThreadPoolBuildError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn group(g: &Group, source: GroupError) -> Self {
        Self::Group {
            group: g.label().to_string(),
            source,
        }
    }
}

/// Exit status for an infrastructure error.
pub const EXIT_INFRA: u8 = 2;
/// Exit status when some row is `FAILED`.
pub const EXIT_FAILED: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Text,
    Json,
}

/// One `(group, prime, theorem)` result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub schema: u32,
    pub group: String,
    pub prime: u64,
    pub theorem: TheoremId,
    pub hypothesis: bool,
    pub conclusion: bool,
    pub status: Status,
    pub witnesses: BTreeMap<String, String>,
    /// Time spent in the check, excluding the shared per-prime setup.
    pub wall_time_ms: f64,
}

/// A loaded corpus and where it came from.
pub struct Corpus {
    pub origin: String,
    pub entries: Vec<CorpusEntry>,
}

/// Loads the corpus from `path`, else from `$POWCLASS_CORPUS`, else the
/// shipped corpus. The environment is consulted by the caller (clap reads
/// the variable into `path`).
pub fn load_corpus(path: Option<&Path>) -> Result<Corpus, CliError> {
    let (origin, entries) = match path {
        Some(p) => (p.display().to_string(), corpus::load(p)?),
        None => ("<shipped corpus>".to_string(), corpus::shipped_corpus()?),
    };
    if entries.is_empty() {
        return Err(CliError::EmptyCorpus(origin));
    }
    Ok(Corpus { origin, entries })
}

/// `all` or a single theorem id.
pub fn parse_suite(s: &str) -> Result<Vec<TheoremId>, CliError> {
    if s == "all" {
        return Ok(TheoremId::ALL.to_vec());
    }
    TheoremId::from_str(s)
        .map(|t| vec![t])
        .map_err(|_| CliError::UnknownSuite(s.to_string()))
}

/// Timings gathered alongside the rows; kept out of the report body.
#[derive(Debug, Clone, Default)]
pub struct Timings {
    /// `(group, prime, setup ms)` for each Sylow context built.
    pub setup: Vec<(String, u64, f64)>,
    pub total_ms: f64,
}

fn rows_for_entry(
    entry: &CorpusEntry,
    theorems: &[TheoremId],
) -> Result<(Vec<ReportRow>, Timings), CliError> {
    let mut rows = Vec::new();
    let mut timings = Timings::default();
    for &p in &entry.primes {
        let wanted: Vec<TheoremId> = TheoremId::ALL
            .into_iter()
            .filter(|t| theorems.contains(t) && applies(entry, p, *t))
            .collect();
        if wanted.is_empty() {
            continue;
        }
        let start = Instant::now();
        let ctx =
            SylowContext::new(&entry.group, p).map_err(|e| CliError::group(&entry.group, e))?;
        timings
            .setup
            .push((entry.label().to_string(), p, ms_since(start)));
        for t in wanted {
            let start = Instant::now();
            let r = check(&ctx, t).map_err(|e| CliError::group(&entry.group, e))?;
            rows.push(ReportRow {
                schema: REPORT_SCHEMA,
                group: r.group,
                prime: r.prime,
                theorem: r.theorem,
                hypothesis: r.hypothesis,
                conclusion: r.conclusion,
                status: r.status,
                witnesses: r.witnesses,
                wall_time_ms: ms_since(start),
            });
        }
    }
    Ok((rows, timings))
}

fn ms_since(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

/// Runs the checks over every entry. Entries are spread over `jobs` threads
/// (0 = one per core); rows come back in corpus order, then by prime, then
/// by theorem, whatever the thread count.
pub fn run_suite(
    entries: &[CorpusEntry],
    theorems: &[TheoremId],
    jobs: usize,
) -> Result<(Vec<ReportRow>, Timings), CliError> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let per_entry: Vec<(Vec<ReportRow>, Timings)> = pool.install(|| {
        entries
            .par_iter()
            .map(|e| rows_for_entry(e, theorems))
            .collect::<Result<_, _>>()
    })?;
    let mut rows = Vec::new();
    let mut timings = Timings::default();
    for (r, t) in per_entry {
        rows.extend(r);
        timings.setup.extend(t.setup);
    }
    timings.total_ms = ms_since(start);
    Ok((rows, timings))
}

pub fn exit_code(rows: &[ReportRow]) -> u8 {
    if rows.iter().any(|r| r.status == Status::Failed) {
        EXIT_FAILED
    } else {
        0
    }
}

pub fn summary_line(rows: &[ReportRow]) -> String {
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    format!(
        "{} rows: {} verified, {} vacuous, {} FAILED",
        rows.len(),
        count(Status::Verified),
        count(Status::Vacuous),
        count(Status::Failed)
    )
}

fn witness_text(w: &BTreeMap<String, String>) -> String {
    w.iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

const COLUMNS: [&str; 7] = [
    "group",
    "prime",
    "theorem",
    "hypothesis",
    "conclusion",
    "status",
    "witnesses",
];

fn row_fields(r: &ReportRow) -> [String; 7] {
    [
        r.group.clone(),
        r.prime.to_string(),
        r.theorem.to_string(),
        r.hypothesis.to_string(),
        r.conclusion.to_string(),
        r.status.to_string(),
        witness_text(&r.witnesses),
    ]
}

/// Lines starting with `#` after the report body, carrying wall times.
fn footer(rows: &[ReportRow], timings: &Timings) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# {}", summary_line(rows));
    let _ = writeln!(out, "# wall_time_ms total={:.3}", timings.total_ms);
    for (g, p, ms) in &timings.setup {
        let _ = writeln!(out, "# wall_time_ms setup group={g} prime={p} ms={ms:.3}");
    }
    for r in rows {
        let _ = writeln!(
            out,
            "# wall_time_ms check group={} prime={} theorem={} ms={:.3}",
            r.group, r.prime, r.theorem, r.wall_time_ms
        );
    }
    out
}

fn render_text(rows: &[ReportRow]) -> String {
    let table: Vec<[String; 7]> = rows.iter().map(row_fields).collect();
    let mut widths = COLUMNS.map(str::len);
    for fields in &table {
        for (w, f) in widths.iter_mut().zip(fields) {
            *w = (*w).max(f.chars().count());
        }
    }
    let line = |fields: &[&str]| -> String {
        let mut s = String::new();
        for (i, f) in fields.iter().enumerate() {
            if i + 1 == fields.len() {
                s.push_str(f);
            } else {
                let pad = widths[i] - f.chars().count();
                let _ = write!(s, "{f}{}  ", " ".repeat(pad));
            }
        }
        s.trim_end().to_string() + "\n"
    };
    let mut out = line(&COLUMNS);
    for fields in &table {
        let refs: Vec<&str> = fields.iter().map(String::as_str).collect();
        out.push_str(&line(&refs));
    }
    out
}

fn render_csv(rows: &[ReportRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let write = |w: &mut csv::Writer<Vec<u8>>| -> csv::Result<()> {
        w.write_record(COLUMNS)?;
        for r in rows {
            w.write_record(row_fields(r))?;
        }
        w.flush()?;
        Ok(())
    };
    write(&mut w).expect("writing CSV to memory cannot fail");
    String::from_utf8(w.into_inner().expect("flushed")).expect("CSV fields are UTF-8")
}

/// The full report: body followed by the `#` footer for text and CSV; a
/// JSON array of rows (wall times included per row) for JSON.
pub fn render_report(rows: &[ReportRow], timings: &Timings, format: Format) -> String {
    match format {
        Format::Text => render_text(rows) + &footer(rows, timings),
        Format::Csv => render_csv(rows) + &footer(rows, timings),
        Format::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
    }
}

/// A report with footer lines removed.
pub fn report_body(report: &str) -> String {
    report
        .lines()
        .filter(|l| !l.starts_with('#'))
        .map(|l| format!("{l}\n"))
        .collect()
}

/// Resolves a group reference: an existing file holding one group, or a
/// label of the corpus.
pub fn resolve_group(reference: &str, corpus: &Corpus) -> Result<CorpusEntry, CliError> {
    let path = PathBuf::from(reference);
    if path.is_file() {
        let mut entries = corpus::load(&path)?;
        return match entries.len() {
            1 => Ok(entries.remove(0)),
            count => Err(CliError::AmbiguousFile {
                path: reference.to_string(),
                count,
            }),
        };
    }
    corpus::find(&corpus.entries, reference)
        .cloned()
        .ok_or_else(|| CliError::UnknownGroup(reference.to_string()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The text printed by `analyze`.
pub fn analyze(entry: &CorpusEntry, p: u64) -> Result<String, CliError> {
    if !is_prime(p) {
        return Err(CliError::NotPrime(p));
    }
    let g: &Arc<Group> = &entry.group;
    let ctx = SylowContext::new(g, p).map_err(|e| CliError::group(g, e))?;
    let profile = ctx.profile().map_err(|e| CliError::group(g, e))?;
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<28}{v}");
    };
    line("group", entry.label().to_string());
    line("order", g.order().to_string());
    line("degree", g.degree().to_string());
    line("prime", p.to_string());
    line(
        "nilpotency class",
        nilpotency_class(g).map_or_else(|| "not nilpotent".to_string(), |c| c.to_string()),
    );
    line(
        "tags",
        entry.tags.iter().cloned().collect::<Vec<_>>().join(", "),
    );
    line("Sylow subgroup order", ctx.sylow.order().to_string());
    line("powerful class", profile.pwc.to_string());
    line(
        "upper eta-series orders",
        format!("{:?}", profile.eta_series.orders()),
    );
    line("powerful", yes_no(profile.is_powerful).to_string());
    line(
        "small powerful class",
        yes_no(profile.small_powerful_class).to_string(),
    );
    line(
        "η_i(P) = Z_i(P) for all i",
        yes_no(profile.matches_upper_central_series()).to_string(),
    );
    match &ctx.p_series {
        Some(series) => {
            line("p-solvable", yes_no(series.p_solvable).to_string());
            if let Some(ell) = series.p_length {
                line("p-length", ell.to_string());
                line(
                    "p-length bound from pwc",
                    p_length_bound(p, profile.pwc).to_string(),
                );
            }
            line(
                "upper p-series orders",
                format!("{:?}", series.chain.orders()),
            );
        }
        None => line("p-series", format!("skipped (|G| > {G_LEVEL_MAX_ORDER})")),
    }
    if ctx.g_level() {
        let weak = ctx
            .weak_closure_of_eta()
            .map_err(|e| CliError::group(g, e))?;
        let strong = ctx
            .strong_closure_of_eta()
            .map_err(|e| CliError::group(g, e))?;
        line("η(P) weakly closed in P", yes_no(weak.holds).to_string());
        line(
            "η(P) strongly closed in P",
            yes_no(strong.holds).to_string(),
        );
    } else {
        line("closure", format!("skipped (|G| > {G_LEVEL_MAX_ORDER})"));
    }
    Ok(out)
}

/// The `corpus list` output. JSON output is a corpus document (with a
/// `tags` metadata key) that loads back to the same groups.
pub fn corpus_list(entries: &[CorpusEntry], format: ListFormat) -> String {
    match format {
        ListFormat::Text => {
            let mut out = format!(
                "{:<16}{:>7}{:>8}  {:<8}{}\n",
                "label", "order", "degree", "primes", "tags"
            );
            for e in entries {
                let primes: Vec<String> = e.primes.iter().map(u64::to_string).collect();
                let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
                let _ = writeln!(
                    out,
                    "{:<16}{:>7}{:>8}  {:<8}{}",
                    e.label(),
                    e.group.order(),
                    e.group.degree(),
                    primes.join(","),
                    tags.join(",")
                );
            }
            out
        }
        ListFormat::Json => {
            let docs: Vec<GroupDoc> = entries
                .iter()
                .map(|e| {
                    let mut d = GroupDoc::from_entry(e);
                    let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
                    d.metadata.insert("tags".into(), tags.join(","));
                    d
                })
                .collect();
            corpus::render(&docs)
        }
    }
}

/// Writes `text` to `path`, or to stdout when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|()| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
