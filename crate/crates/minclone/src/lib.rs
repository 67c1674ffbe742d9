//! File formats, reports and the parallel census runner for `minclone-core`.

use std::fmt::{self, Write as _};
use std::path::Path;
use std::thread;

use minclone_core::census::{self, idempotent_range, CensusReport};
use minclone_core::{Classification, Error, Groupoid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input file or table.
    Input(String),
    /// A computation refused or failed.
    Compute(Error),
    Io(std::io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "malformed input: {m}"),
            CliError::Compute(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Compute(e)
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Serialize, Deserialize)]
struct GroupoidFile {
    size: usize,
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    names: Option<Vec<String>>,
}

/// `{"size": n, "table": [[..]], "names": [..]}`.
pub fn to_json(g: &Groupoid) -> String {
    let file = GroupoidFile { size: g.size(), table: g.rows(), names: g.names().map(|n| n.to_vec()) };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn from_json(text: &str) -> Result<Groupoid> {
    let file: GroupoidFile = serde_json::from_str(text).map_err(|e| CliError::Input(e.to_string()))?;
    if file.table.len() != file.size {
        return Err(CliError::Input(format!("size is {} but the table has {} rows", file.size, file.table.len())));
    }
    build(file.table, file.names)
}

fn build(rows: Vec<Vec<usize>>, names: Option<Vec<String>>) -> Result<Groupoid> {
    let g = Groupoid::new(rows).map_err(|e| CliError::Input(e.to_string()))?;
    match names {
        Some(n) => g.with_names(n).map_err(|e| CliError::Input(e.to_string())),
        None => Ok(g),
    }
}

/// Optional `names:` line, then one whitespace-separated row per line. `#` starts a comment.
pub fn to_text(g: &Groupoid) -> String {
    let mut out = String::new();
    if let Some(names) = g.names() {
        writeln!(out, "names: {}", names.join(" ")).unwrap();
    }
    for row in g.rows() {
        let cells: Vec<String> = row.iter().map(|c| c.to_string()).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    out
}

pub fn from_text(text: &str) -> Result<Groupoid> {
    let mut names = None;
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("names:") {
            if names.is_some() || !rows.is_empty() {
                return Err(CliError::Input(format!("line {}: names must come first", i + 1)));
            }
            names = Some(rest.split_whitespace().map(str::to_string).collect());
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|c| c.parse::<usize>().map_err(|_| CliError::Input(format!("line {}: bad entry {c:?}", i + 1))))
            .collect::<Result<Vec<_>>>()?;
        if let Some(first) = rows.first().map(Vec::len) {
            if row.len() != first {
                return Err(CliError::Input(format!("line {}: ragged row", i + 1)));
            }
        }
        rows.push(row);
    }
    build(rows, names)
}

/// JSON if the first non-blank character is `{`, text otherwise.
pub fn parse_groupoid(text: &str) -> Result<Groupoid> {
    if text.trim_start().starts_with('{') {
        from_json(text)
    } else {
        from_text(text)
    }
}

pub fn read_groupoid(path: &Path) -> Result<Groupoid> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?
    };
    parse_groupoid(&text)
}

pub fn classification_text(g: &Groupoid, c: &Classification) -> String {
    let mut out = String::new();
    writeln!(out, "size: {}", c.size).unwrap();
    writeln!(out, "taylor: {}", c.taylor).unwrap();
    writeln!(out, "orientation: {:?}", c.orientation).unwrap();
    writeln!(out, "tags: {}", c.signature()).unwrap();
    if let Some(ps) = &c.certificates.partial_semilattice {
        writeln!(out, "partial semilattice from {} on ({}, {})", ps.source_term, g.name(ps.a), g.name(ps.b)).unwrap();
    }
    if let Some(pc) = &c.certificates.p_cyclic {
        writeln!(out, "p-cyclic orbits: {:?}", pc.orbits).unwrap();
    }
    if let Some(d) = &c.certificates.dispersive {
        writeln!(out, "dispersive pairs: {}, inert: {}", d.pairs.len(), d.inert).unwrap();
    }
    out
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub n: usize,
    pub exhaustive: bool,
    pub samples: u64,
    pub seed: u64,
    pub dedup: bool,
    pub threads: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { n: 3, exhaustive: false, samples: 1_000_000, seed: 0, dedup: false, threads: 0 }
    }
}

fn worker_count(requested: usize) -> usize {
    if requested > 0 {
        requested
    } else {
        thread::available_parallelism().map_or(1, |n| n.get())
    }
}

fn split<T: Send + Sync>(items: &[T], workers: usize, run: impl Fn(&[T]) -> CensusReport + Sync) -> Vec<CensusReport> {
    let chunk = items.len().div_ceil(workers.max(1)).max(1);
    thread::scope(|s| {
        let handles: Vec<_> = items.chunks(chunk).map(|c| s.spawn(|| run(c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    })
}

/// Uniform over idempotent tables of size `n`.
fn random_table(n: usize, seed: u64) -> Groupoid {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Groupoid::from_fn(n, |a, b| if a == b { a } else { rng.gen_range(0..n) })
}

/// Exhaustive for `n ≤ 3` or with `exhaustive`; seeded sampling otherwise.
pub fn run_census(opts: &CensusOptions) -> Result<CensusReport> {
    let n = opts.n;
    if n == 0 {
        return Err(CliError::Compute(Error::EmptyTable));
    }
    let workers = worker_count(opts.threads);
    let exhaustive = n <= census::EXHAUSTIVE_LIMIT || opts.exhaustive;
    let total = match census::count_idempotent(n) {
        Some(t) => t,
        None if !exhaustive => 0,
        None => return Err(CliError::Compute(Error::SizeCap { what: "table count", limit: usize::MAX })),
    };
    let step = if exhaustive { total.div_ceil(workers as u64 * 16).max(1) } else { 1 };
    let indices: Vec<u64> = if exhaustive {
        (0..total).step_by(step as usize).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.samples).map(|_| rng.gen()).collect()
    };
    let tables = |chunk: &[u64]| -> Vec<Groupoid> {
        if exhaustive {
            chunk.iter().flat_map(|&start| idempotent_range(n, start, (start + step).min(total))).collect()
        } else {
            chunk.iter().map(|&seed| random_table(n, seed)).collect()
        }
    };
    let mut report = CensusReport::new(n);
    for part in split(&indices, workers, |chunk| census::census_of(n, tables(chunk))) {
        report.merge(part);
    }
    if opts.dedup {
        if n > census::CANONICAL_LIMIT {
            return Err(CliError::Compute(Error::SizeCap { what: "canonical form", limit: census::CANONICAL_LIMIT }));
        }
        census::dedup_classes(&mut report, tables(&indices))?;
    }
    Ok(report)
}

pub fn census_text(r: &CensusReport) -> String {
    let mut out = String::new();
    writeln!(out, "size {}: {} tables", r.size, r.total).unwrap();
    for (sig, count) in &r.counts {
        let classes = r.classes.as_ref().and_then(|c| c.get(sig)).map(|c| format!("  ({c} up to isomorphism)"));
        writeln!(out, "  {count:>10}  {sig}{}", classes.unwrap_or_default()).unwrap();
    }
    writeln!(out, "counterexamples: {}", r.counterexamples.len()).unwrap();
    out
}

/// Writes each counterexample table to `dir` in the text format.
pub fn write_counterexamples(r: &CensusReport, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for (i, c) in r.counterexamples.iter().enumerate() {
        let g = Groupoid::new(c.table.clone())?;
        let body = format!("# {}\n{}", c.reason, to_text(&g));
        std::fs::write(dir.join(format!("counterexample-{i}.txt")), body)?;
    }
    Ok(())
}
