//! `isgw`: analysis and theorem verification over the JSON instance formats.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use isgw::corpus::{self, CorpusConfig, CorpusEntry, Instance};
use isgw::report::{InstanceReport, Report};
use isgw::semigroup::DEFAULT_ELEMENT_CAP;
use isgw::verify::{self, VerifyConfig};
use isgw::{DirectedGraph, Error, InverseSemigroup, SelfSimilarAction};

#[derive(Parser)]
#[command(name = "isgw", version, about = "Inverse semigroups, tight groupoids and graph actions")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Emit the JSON report (same as `--report json`).
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, value_enum)]
    report: Option<Format>,
    /// Seed for the random corpus and for sampled checks.
    #[arg(long, global = true, default_value_t = corpus::DEFAULT_SEED)]
    seed: u64,
    /// Closure cap when building semigroups from generators.
    #[arg(long, global = true, default_value_t = DEFAULT_ELEMENT_CAP)]
    max_elements: usize,
    /// Path length used when validating self-similar actions.
    #[arg(long, global = true, default_value_t = isgw::selfsimilar::DEFAULT_VALIDATION_DEPTH)]
    depth: usize,
    /// Largest semigroup on which every congruence is enumerated.
    #[arg(long, global = true, default_value_t = isgw::congruences::DEFAULT_ENUMERATE_BOUND)]
    enumerate_bound: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the properties of one instance.
    Analyze {
        #[arg(value_enum)]
        kind: Kind,
        file: PathBuf,
    },
    /// Run every applicable theorem check over a corpus.
    Verify {
        /// A directory of JSON instances, or `builtin`.
        #[arg(default_value = "builtin")]
        corpus: String,
    },
    /// Inspect corpora.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// One line per instance: id, kind and size.
    List {
        #[arg(default_value = "builtin")]
        corpus: String,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Semigroup,
    Semilattice,
    Relations,
    Congruences,
    Ideals,
    Groupoid,
    Graph,
    Selfsimilar,
}

enum Failure {
    Falsified,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::TooLarge { .. } | Error::Overflow { .. } => 3,
        Error::InternalContract(_) => 1,
        _ => 2,
    }
}

impl Opts {
    fn format(&self) -> Format {
        match (self.report, self.json) {
            (Some(f), _) => f,
            (None, true) => Format::Json,
            (None, false) => Format::Text,
        }
    }

    fn verify_config(&self) -> VerifyConfig {
        VerifyConfig {
            seed: self.seed,
            enumerate_bound: self.enumerate_bound,
            validation_depth: self.depth,
            ..VerifyConfig::default()
        }
    }

    fn emit(&self, report: &Report) {
        match self.format() {
            Format::Json => out(&(report.to_json() + "\n")),
            Format::Text => out(&report.to_text()),
        }
    }
}

/// Writes to stdout; a reader that hung up early (`| head`) is not an error.
fn out(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes()).and_then(|()| stdout.flush());
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn load_semigroup(path: &Path, cap: usize) -> Result<InverseSemigroup, Error> {
    match Instance::from_json(&read(path)?, cap)? {
        Instance::Semigroup(s) => Ok(s),
        other => Err(Error::Parse(format!("expected a semigroup, found a {}", other.kind()))),
    }
}

fn analyze(kind: Kind, path: &Path, opts: &Opts) -> Result<InstanceReport, Error> {
    let id = stem(path);
    let cfg = opts.verify_config();
    if kind == Kind::Graph {
        return verify::analyze_graph(&id, &DirectedGraph::from_json(&read(path)?)?);
    }
    if kind == Kind::Selfsimilar {
        let a = SelfSimilarAction::from_json(&read(path)?)?;
        a.validate_action(opts.depth)?;
        return verify::analyze_action(&id, &a, &cfg);
    }
    let s = load_semigroup(path, opts.max_elements)?;
    let mut r = InstanceReport::new(&id, "semigroup");
    r.property("size", s.len());
    match kind {
        Kind::Semigroup => return verify::analyze_semigroup(&id, &s, &cfg),
        Kind::Semilattice => verify::semilattice_properties(&s, &mut r),
        Kind::Relations => verify::relations_properties(&s, &mut r),
        Kind::Congruences => verify::congruence_properties(&s, opts.enumerate_bound, &mut r)?,
        Kind::Ideals => verify::ideal_properties(&s, &mut r)?,
        Kind::Groupoid => verify::groupoid_properties(&s, &mut r)?,
        Kind::Graph | Kind::Selfsimilar => unreachable!("handled above"),
    }
    Ok(r)
}

fn load_corpus(name: &str, opts: &Opts) -> Result<Vec<CorpusEntry>, Error> {
    if name == "builtin" {
        Ok(corpus::builtin(&CorpusConfig {
            seed: opts.seed,
            ..CorpusConfig::default()
        }))
    } else {
        corpus::load_dir(Path::new(name), opts.max_elements)
    }
}

fn size(instance: &Instance) -> String {
    match instance {
        Instance::Semigroup(s) => format!("{} elements", s.len()),
        Instance::Graph(g) => format!("{} vertices, {} edges", g.num_vertices(), g.num_edges()),
        Instance::Action(a) => format!(
            "group of order {} on {} vertices, {} edges",
            a.order(),
            a.graph().num_vertices(),
            a.graph().num_edges()
        ),
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let opts = &cli.opts;
    match &cli.command {
        Command::Analyze { kind, file } => {
            let r = analyze(*kind, file, opts)?;
            opts.emit(&Report::new(opts.verify_config().to_map(), vec![r]));
        }
        Command::Verify { corpus } => {
            let entries = load_corpus(corpus, opts)?;
            let report = verify::verify_corpus(&entries, &opts.verify_config())?;
            opts.emit(&report);
            if report.has_falsification() {
                for inst in &report.instances {
                    for (name, t) in inst.falsifications() {
                        eprintln!("falsified: {name} on {}: {}", inst.id, t.counterexample.as_deref().unwrap_or("?"));
                    }
                }
                return Err(Failure::Falsified);
            }
        }
        Command::Corpus {
            command: CorpusCommand::List { corpus },
        } => {
            let lines: String = load_corpus(corpus, opts)?
                .iter()
                .map(|e| format!("{}\t{}\t{}\n", e.id, e.instance.kind(), size(&e.instance)))
                .collect();
            out(&lines);
        }
    }
    Ok(())
}

fn configure_threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("ISGW_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("ISGW_THREADS must be a thread count, got {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Parse(format!("ISGW_THREADS: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().map_err(Failure::from).and_then(|()| run(&cli));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Falsified) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
