use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use focuscrawl::crawl::{
    run_bfs, write_records_csv, CrawlConfig, CrawlMode, CrawlOutcome, FocusedCrawler, RelevancyLimit,
};
use focuscrawl::harness::{
    generate_corpus, generate_graph, run_comparison, run_synthetic_suite, ComparisonConfig, HarnessError,
    SynthGraphParams, Vocabulary, CORPUS_DOCS, CORPUS_WORDS,
};
use focuscrawl::textproc::Stoplist;
use focuscrawl::topic::{self, WeightTable};
use focuscrawl::webio::{FixtureFetcher, LiveConfig, LiveFetcher, PageSource};

#[derive(Parser)]
#[command(name = "focuscrawl", version, about = "Topic-focused crawler with tunneling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a weight table from a directory of topic documents.
    BuildTable {
        topic_dir: PathBuf,
        #[arg(long, default_value_t = 50)]
        capacity: usize,
        /// Topic name whose terms are forced into the table. Defaults to the
        /// directory name.
        #[arg(long)]
        topic: Option<String>,
        /// Write the table here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Crawl a fixture graph or the live web.
    Crawl(CrawlArgs),
    /// Generate a labeled synthetic graph.
    GenGraph {
        /// JSON file with generator parameters; missing fields take defaults.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Built-in vocabulary to use (E-Business, Nanotechnology, Politics, Sports).
        #[arg(long)]
        topic: Option<String>,
        /// Also write a matching topic corpus into this directory.
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run focused and BFS on the same input and write curves and a summary.
    Compare(CompareArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Focused,
    Bfs,
}

#[derive(Args)]
struct CrawlArgs {
    #[arg(long, value_enum, default_value = "focused")]
    mode: Mode,
    /// Fixture graph to crawl.
    #[arg(long, conflicts_with = "live", required_unless_present = "live")]
    graph: Option<PathBuf>,
    /// Crawl the real web over HTTP.
    #[arg(long)]
    live: bool,
    /// One seed URL per line. Defaults to the graph's own seeds.
    #[arg(long, required_unless_present = "graph")]
    seeds: Option<PathBuf>,
    #[arg(long)]
    table: PathBuf,
    #[arg(long, default_value_t = 1000)]
    max_pages: usize,
    #[arg(long, default_value_t = 2)]
    max_level: u32,
    /// `auto` or a number in [0, 1].
    #[arg(long, default_value = "auto")]
    relevancy_limit: RelevancyLimit,
    /// Per-fetch log (CSV).
    #[arg(long)]
    out: PathBuf,
    /// Relevant-page database (JSON lines).
    #[arg(long)]
    db: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    #[arg(long, required_unless_present = "synthetic", requires = "topic_dir")]
    graph: Option<PathBuf>,
    #[arg(long)]
    topic_dir: Option<PathBuf>,
    /// Topic name. Defaults to the topic directory name.
    #[arg(long)]
    topic: Option<String>,
    /// Generate a graph and corpus for each built-in topic instead.
    #[arg(long, conflicts_with_all = ["graph", "topic_dir"])]
    synthetic: bool,
    /// Generator parameters for `--synthetic`.
    #[arg(long, requires = "synthetic")]
    params: Option<PathBuf>,
    #[arg(long, requires = "synthetic")]
    seed: Option<u64>,
    #[arg(long)]
    max_pages: Option<usize>,
    #[arg(long)]
    max_level: Option<u32>,
    #[arg(long)]
    capacity: Option<usize>,
    #[arg(long)]
    relevancy_limit: Option<RelevancyLimit>,
    #[arg(long)]
    out: PathBuf,
}

/// Bad input (exit 2) versus a run that went wrong (exit 3).
enum Failure {
    Config(String),
    Run(String),
}

fn config_err(e: impl std::fmt::Display) -> Failure {
    Failure::Config(e.to_string())
}

fn run_err(e: impl std::fmt::Display) -> Failure {
    Failure::Run(e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::BuildTable {
            topic_dir,
            capacity,
            topic,
            out,
        } => build_table(&topic_dir, capacity, topic, out),
        Command::Crawl(args) => crawl(args),
        Command::GenGraph {
            params,
            seed,
            topic,
            corpus,
            out,
        } => gen_graph(params, seed, topic, corpus, &out),
        Command::Compare(args) => compare(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn dir_name(dir: &Path) -> String {
    dir.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn build_table(dir: &Path, capacity: usize, topic: Option<String>, out: Option<PathBuf>) -> Result<(), Failure> {
    let name = topic.unwrap_or_else(|| dir_name(dir));
    let table = topic::build_topic_table(dir, &name, capacity, &Stoplist::default()).map_err(config_err)?;
    match out {
        Some(path) => table.save(&path).map_err(run_err),
        None => {
            print!("{}", table.to_tsv());
            Ok(())
        }
    }
}

fn read_seeds(path: &Path) -> Result<Vec<String>, Failure> {
    let text = fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn crawl(args: CrawlArgs) -> Result<(), Failure> {
    let table = WeightTable::load(&args.table).map_err(config_err)?;
    let fixture = match &args.graph {
        Some(path) => Some(FixtureFetcher::load(path).map_err(|e| config_err(format!("{}: {e}", path.display())))?),
        None => None,
    };
    let seeds = match (&args.seeds, &fixture) {
        (Some(path), _) => read_seeds(path)?,
        (None, Some(f)) => f.seeds().to_vec(),
        (None, None) => unreachable!("clap requires --seeds without --graph"),
    };
    if seeds.is_empty() {
        return Err(config_err("no seed URLs"));
    }
    let config = CrawlConfig {
        seeds,
        max_pages: args.max_pages,
        max_level: args.max_level,
        relevancy_limit: args.relevancy_limit,
        mode: match args.mode {
            Mode::Focused => CrawlMode::Focused,
            Mode::Bfs => CrawlMode::Bfs,
        },
        ..CrawlConfig::default()
    };
    let stoplist = Stoplist::default();
    let outcome = match fixture {
        Some(f) => run_engine(config, &f, table, &stoplist),
        None => {
            let live = LiveFetcher::new(LiveConfig::default()).map_err(run_err)?;
            run_engine(config, &live, table, &stoplist)
        }
    }
    .map_err(run_err)?;

    write_file(&args.out, |w| write_records_csv(&outcome.records, w))?;
    if let Some(path) = &args.db {
        write_file(path, |w| outcome.db.write_jsonl(w))?;
    }
    let relevant = outcome.records.iter().filter(|r| r.relevant).count();
    eprintln!(
        "fetched {} pages, {} relevant, limit {:.4}, {} failures",
        outcome.records.len(),
        relevant,
        outcome.relevancy_limit,
        outcome.failures.len()
    );
    Ok(())
}

fn run_engine<S: PageSource>(
    config: CrawlConfig,
    source: S,
    table: WeightTable,
    stoplist: &Stoplist,
) -> Result<CrawlOutcome, focuscrawl::crawl::CrawlError> {
    match config.mode {
        CrawlMode::Focused => FocusedCrawler::new(config, source, table, stoplist)?.run(),
        CrawlMode::Bfs => run_bfs(config, source, table, stoplist),
    }
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), Failure> {
    let io = |e: std::io::Error| run_err(format!("{}: {e}", path.display()));
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(io)?;
    }
    let mut w = BufWriter::new(File::create(path).map_err(io)?);
    f(&mut w).map_err(io)?;
    w.flush().map_err(io)
}

fn load_params(path: Option<&Path>, seed: Option<u64>) -> Result<SynthGraphParams, Failure> {
    let mut params = match path {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| config_err(format!("{}: {e}", p.display())))?;
            serde_json::from_str(&text).map_err(|e| config_err(format!("{}: {e}", p.display())))?
        }
        None => SynthGraphParams::default(),
    };
    if let Some(s) = seed {
        params.rng_seed = s;
    }
    params.validate().map_err(config_err)?;
    Ok(params)
}

fn gen_graph(
    params: Option<PathBuf>,
    seed: Option<u64>,
    topic: Option<String>,
    corpus: Option<PathBuf>,
    out: &Path,
) -> Result<(), Failure> {
    let mut params = load_params(params.as_deref(), seed)?;
    if let Some(name) = &topic {
        params.vocabulary =
            Vocabulary::builtin(name).ok_or_else(|| config_err(HarnessError::UnknownTopic(name.clone())))?;
    }
    let manifest = generate_graph(&params).map_err(config_err)?;
    write_file(out, |w| w.write_all(manifest.to_json().as_bytes()))?;
    if let Some(dir) = corpus {
        fs::create_dir_all(&dir).map_err(run_err)?;
        for (name, text) in generate_corpus(&params.vocabulary, CORPUS_DOCS, CORPUS_WORDS, params.rng_seed) {
            fs::write(dir.join(name), text).map_err(run_err)?;
        }
    }
    eprintln!("wrote {} pages to {}", manifest.pages.len(), out.display());
    Ok(())
}

fn harness_failure(e: HarnessError) -> Failure {
    match e {
        HarnessError::ParamInvalid(_)
        | HarnessError::NoSeeds
        | HarnessError::UnknownTopic(_)
        | HarnessError::Topic(_)
        | HarnessError::Manifest(_) => config_err(e),
        _ => run_err(e),
    }
}

fn compare(args: CompareArgs) -> Result<(), Failure> {
    let defaults = ComparisonConfig::default();
    let config = ComparisonConfig {
        max_pages: args.max_pages.unwrap_or(defaults.max_pages),
        max_level: args.max_level.unwrap_or(defaults.max_level),
        table_capacity: args.capacity.unwrap_or(defaults.table_capacity),
        relevancy_limit: args.relevancy_limit.unwrap_or(defaults.relevancy_limit),
    };
    let rows = if args.synthetic {
        let params = load_params(args.params.as_deref(), args.seed)?;
        run_synthetic_suite(&params, &config, &args.out).map_err(harness_failure)?
    } else {
        let graph = args.graph.expect("clap requires --graph");
        let topic_dir = args.topic_dir.expect("clap requires --topic-dir");
        let name = args.topic.unwrap_or_else(|| dir_name(&topic_dir));
        vec![run_comparison(&graph, &topic_dir, &name, &config, &args.out).map_err(harness_failure)?]
    };
    println!(
        "{:<16} {:>9} {:>9} {:>9} {:>9}",
        "topic", "focused", "bfs", "focused*", "bfs*"
    );
    for r in rows {
        println!(
            "{:<16} {:>9.4} {:>9.4} {:>9.4} {:>9.4}",
            r.topic, r.focused_precision, r.bfs_precision, r.focused_label_precision, r.bfs_label_precision
        );
    }
    println!("(* against graph labels)  report in {}", args.out.display());
    Ok(())
}
