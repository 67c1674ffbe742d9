use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use minclone::{
    census_text, classification_text, read_groupoid, run_census, to_json, to_text, write_counterexamples, CensusOptions,
    CliError,
};
use minclone_core::clone::{free_algebra_two_capped, DEFAULT_FREE_CAP};
use minclone_core::graphs::export_dot;
use minclone_core::meld::{solve, witness_meld, MeldPresentation};
use minclone_core::{classify, labeled_digraph, zoo, Groupoid};
use serde_json::json;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Parser)]
#[command(name = "minclone", version, about = "Finite binary idempotent groupoids")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a table (`-` reads standard input).
    Classify { input: PathBuf },
    /// The free algebra on two generators, with witness terms.
    Free2 {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_FREE_CAP)]
        cap: usize,
    },
    /// Right orbits, strongly connected components and their order.
    Orbits { input: PathBuf },
    /// The right-orbit digraph in DOT.
    Dot {
        input: PathBuf,
        /// Write here instead of standard output.
        #[arg(long = "dot")]
        out: Option<PathBuf>,
    },
    /// Decide `r = s` in a finitely presented meld. Exit 0 if it holds, 1 if not.
    MeldSolve {
        presentation: PathBuf,
        /// `term = term` over the presentation's generators.
        query: String,
        /// Write a countermodel table here when the equation fails.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Print a named algebra.
    Zoo {
        name: Option<String>,
        params: Vec<usize>,
        #[arg(long)]
        list: bool,
    },
    /// Classify every (or a sample of) idempotent table of a given size.
    Census {
        #[arg(short = 'n', value_parser = clap::value_parser!(u64).range(1..=6))]
        n: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also count isomorphism classes.
        #[arg(long)]
        dedup: bool,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Directory for counterexample tables.
        #[arg(long)]
        counterexamples: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Cli(CliError),
}

impl From<CliError> for Failure {
    fn from(e: CliError) -> Self {
        Failure::Cli(e)
    }
}

impl From<minclone_core::Error> for Failure {
    fn from(e: minclone_core::Error) -> Self {
        Failure::Cli(e.into())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Cli(e.into())
    }
}

fn emit(text: &str) -> std::io::Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(())
}

fn pretty(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn no_dot(what: &str) -> Failure {
    Failure::Usage(format!("--format dot is not available for {what}"))
}

fn dot_of(g: &Groupoid) -> String {
    export_dot(&labeled_digraph(g), &g.labels())
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    let format = cli.format;
    match cli.command {
        Command::Classify { input } => {
            let g = read_groupoid(&input)?;
            let c = classify(&g).map_err(|e| CliError::Input(e.to_string()))?;
            match format {
                Format::Json => emit(&pretty(&c))?,
                Format::Text => emit(&classification_text(&g, &c))?,
                Format::Dot => return Err(no_dot("classify")),
            }
        }
        Command::Free2 { input, cap } => {
            if cap == 0 {
                return Err(Failure::Usage("--cap must be positive".into()));
            }
            let g = read_groupoid(&input)?;
            let fa = free_algebra_two_capped(&g, cap)?;
            let names = g.labels();
            let witness = |i: usize| {
                let t = fa.element(i).witness().expect("free algebra elements carry witnesses");
                t.to_string()
            };
            match format {
                Format::Json => {
                    let elements: Vec<_> = (0..fa.len())
                        .map(|i| json!({"witness": witness(i), "depth": fa.depth(i), "values": fa.element(i).rows()}))
                        .collect();
                    emit(&pretty(&json!({"size": fa.len(), "elements": elements, "table": fa.groupoid().rows()})))?;
                }
                Format::Text => {
                    let mut s = format!("{} elements over {}\n", fa.len(), names.join(" "));
                    for i in 0..fa.len() {
                        s.push_str(&format!("{i:>4}  {}\n", witness(i)));
                    }
                    emit(&s)?;
                }
                Format::Dot => emit(&dot_of(&fa.groupoid()))?,
            }
        }
        Command::Orbits { input } => {
            let g = read_groupoid(&input)?;
            let d = labeled_digraph(&g);
            let name = |v: &[usize]| v.iter().map(|&a| g.name(a)).collect::<Vec<_>>();
            match format {
                Format::Json => {
                    let orbits: Vec<_> =
                        (0..g.size()).map(|a| json!({"element": g.name(a), "orbit": name(&g.right_orbit(a))})).collect();
                    let comps: Vec<_> = d.components().iter().map(|c| name(c)).collect();
                    let mut order = Vec::new();
                    for (i, ci) in d.components().iter().enumerate() {
                        for (j, cj) in d.components().iter().enumerate() {
                            if i != j && d.precedes(ci[0], cj[0]) {
                                order.push([i, j]);
                            }
                        }
                    }
                    emit(&pretty(&json!({"orbits": orbits, "components": comps, "order": order})))?;
                }
                Format::Text => {
                    let mut s = String::new();
                    for a in 0..g.size() {
                        s.push_str(&format!("O({}) = {{{}}}\n", g.name(a), name(&g.right_orbit(a)).join(", ")));
                    }
                    for c in d.components() {
                        s.push_str(&format!("component {{{}}}\n", name(c).join(", ")));
                    }
                    emit(&s)?;
                }
                Format::Dot => emit(&dot_of(&g))?,
            }
        }
        Command::Dot { input, out } => {
            let g = read_groupoid(&input)?;
            let dot = dot_of(&g);
            match out {
                Some(path) => std::fs::write(path, dot)?,
                None => emit(&dot)?,
            }
        }
        Command::MeldSolve { presentation, query, witness } => {
            let text = std::fs::read_to_string(&presentation)
                .map_err(|e| CliError::Input(format!("{}: {e}", presentation.display())))?;
            let pres = MeldPresentation::parse(&text).map_err(|e| CliError::Input(e.to_string()))?;
            let (r, s) = pres.parse_equation(&query).map_err(|e| CliError::Input(e.to_string()))?;
            let holds = solve(&pres, &r, &s)?;
            if !holds {
                if let Some(path) = witness {
                    let w = witness_meld(&pres, &r, &s)?;
                    let body = if format == Format::Text { to_text(&w.groupoid) } else { to_json(&w.groupoid) };
                    std::fs::write(path, body)?;
                }
            }
            match format {
                Format::Json => emit(&pretty(&json!({"query": query, "holds": holds})))?,
                Format::Text => emit(if holds { "holds" } else { "does not hold" })?,
                Format::Dot => return Err(no_dot("meld-solve")),
            }
            return Ok(if holds { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Zoo { name, params, list } => {
            if list {
                let mut s = String::new();
                for (f, p) in zoo::FAMILIES {
                    s.push_str(&format!("{f} {}\n", p.join(" ")).replace(" \n", "\n"));
                }
                emit(&s)?;
                return Ok(ExitCode::SUCCESS);
            }
            let name = name.ok_or_else(|| Failure::Usage("zoo needs a name or --list".into()))?;
            let g = zoo::build(&name, &params).map_err(|e| Failure::Usage(e.to_string()))?;
            match format {
                Format::Json => emit(&to_json(&g))?,
                Format::Text => emit(&to_text(&g))?,
                Format::Dot => emit(&dot_of(&g))?,
            }
        }
        Command::Census { n, exhaustive, samples, seed, dedup, threads, counterexamples } => {
            let opts = CensusOptions { n: n as usize, exhaustive, samples, seed, dedup, threads };
            let report = run_census(&opts)?;
            if let Some(dir) = counterexamples {
                write_counterexamples(&report, &dir)?;
            }
            match format {
                Format::Json => emit(&pretty(&report))?,
                Format::Text => emit(&census_text(&report))?,
                Format::Dot => return Err(no_dot("census")),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Cli(e)) => {
            eprintln!("error: {e}");
            match e {
                CliError::Input(_) => ExitCode::from(3),
                CliError::Compute(_) | CliError::Io(_) => ExitCode::from(4),
            }
        }
    }
}
