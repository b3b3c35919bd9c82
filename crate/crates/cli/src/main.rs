use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Parser, ValueEnum};

use roughpart::{
    read_matrix_market, run_many, write_partition, BalanceBudget, ClusteringThreshold, Error,
    PartitionConfig, SimilarityThreshold, StatsDocument, WeightScheme,
};

/// Partition the column-net hypergraph of a Matrix Market matrix into k parts.
#[derive(Debug, Parser)]
#[command(name = "roughpart", version)]
struct Cli {
    /// Matrix Market file; rows become vertices and columns hyperedges.
    #[arg(long)]
    input: PathBuf,

    /// Number of parts (at least 2).
    #[arg(long)]
    k: usize,

    /// Imbalance tolerance.
    #[arg(long, default_value_t = 0.02)]
    epsilon: f64,

    /// Seed of the first run; run i uses seed + i.
    #[arg(long, default_value_t = 1)]
    seed: u64,

    /// Independent runs; the cheapest partition is written.
    #[arg(long, default_value_t = 1)]
    runs: usize,

    /// Hyperedge weights.
    #[arg(long, value_enum, default_value_t = EdgeWeights::Unit)]
    edge_weights: EdgeWeights,

    /// Hyperedge similarity threshold: `auto` or a value in (0, 1).
    #[arg(long, default_value = "auto", value_parser = parse_similarity)]
    sim_threshold: SimilarityThreshold,

    /// Core clustering threshold: `auto` (0 with unit edge partitions
    /// removed) or a value in [0, 1].
    #[arg(long, default_value = "auto", value_parser = parse_clustering)]
    clus_threshold: ClusteringThreshold,

    /// How the tolerance is shared between recursive bisections.
    #[arg(long, value_enum, default_value_t = Budget::Shaded)]
    balance_budget: Budget,

    /// Stop coarsening at this many vertices.
    #[arg(long, default_value_t = 100)]
    coarsest_size: usize,

    /// Initial partitioning candidates per method.
    #[arg(long, default_value_t = 4)]
    init_repeats: usize,

    /// Partition output path [default: <input>.part.<k>].
    #[arg(long)]
    out: Option<PathBuf>,

    /// Stats JSON output path; printed to stdout when absent.
    #[arg(long)]
    stats: Option<PathBuf>,

    /// Only print errors.
    #[arg(long)]
    quiet: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EdgeWeights {
    Unit,
    Size,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Budget {
    Shaded,
    Equal,
}

fn parse_similarity(s: &str) -> Result<SimilarityThreshold, String> {
    if s == "auto" {
        return Ok(SimilarityThreshold::Auto);
    }
    f64::from_str(s)
        .map(SimilarityThreshold::Fixed)
        .map_err(|_| format!("expected `auto` or a number, got `{s}`"))
}

fn parse_clustering(s: &str) -> Result<ClusteringThreshold, String> {
    if s == "auto" {
        return Ok(ClusteringThreshold::Auto);
    }
    f64::from_str(s)
        .map(ClusteringThreshold::Fixed)
        .map_err(|_| format!("expected `auto` or a number, got `{s}`"))
}

impl Cli {
    fn config(&self) -> PartitionConfig {
        PartitionConfig {
            k: self.k,
            epsilon: self.epsilon,
            coarsest_size: self.coarsest_size,
            similarity_threshold: self.sim_threshold,
            clustering_threshold: self.clus_threshold,
            balance_budget: match self.balance_budget {
                Budget::Shaded => BalanceBudget::Shaded,
                Budget::Equal => BalanceBudget::Equal,
            },
            init_repeats: self.init_repeats,
            seed: self.seed,
            runs: self.runs,
            ..PartitionConfig::default()
        }
    }

    fn out_path(&self) -> PathBuf {
        self.out.clone().unwrap_or_else(|| {
            let mut name = self.input.clone().into_os_string();
            name.push(format!(".part.{}", self.k));
            PathBuf::from(name)
        })
    }
}

const EXIT_USAGE: u8 = 1;
const EXIT_RUNTIME: u8 = 2;

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Config(_) => EXIT_USAGE,
        _ => EXIT_RUNTIME,
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    let cfg = cli.config();
    cfg.validate()?;
    if cli.input.as_os_str().is_empty() {
        return Err(Error::Config("input path is empty".into()));
    }
    let scheme = match cli.edge_weights {
        EdgeWeights::Unit => WeightScheme::UnitAll,
        EdgeWeights::Size => WeightScheme::EdgeSize,
    };

    let start = Instant::now();
    let file = File::open(&cli.input).map_err(|e| {
        Error::Io(io::Error::new(
            e.kind(),
            format!("{}: {e}", cli.input.display()),
        ))
    })?;
    let (h, ingest) = read_matrix_market(BufReader::new(file), scheme)?;
    let build = start.elapsed();
    log::info!(
        "{}: {} vertices, {} hyperedges, {} pins",
        cli.input.display(),
        h.num_vertices(),
        h.num_hyperedges(),
        ingest.pins
    );

    let summary = run_many(&h, &cfg)?;
    let out = cli.out_path();
    let mut w = BufWriter::new(File::create(&out)?);
    write_partition(&summary.best, &mut w)?;
    w.flush()?;

    let doc = StatsDocument::new(&summary, &h, build);
    let json = serde_json::to_string_pretty(&doc).map_err(io::Error::other)?;
    match &cli.stats {
        Some(path) => std::fs::write(path, json + "\n")?,
        None => println!("{json}"),
    }
    if !cli.quiet {
        eprintln!(
            "k={} cost={} imbalance={:.4} mean={:.1} std={:.2}% time={:.3}s -> {}",
            cfg.k,
            doc.cost,
            doc.imbalance,
            doc.mean,
            doc.std_dev_percent,
            doc.phases.overall,
            out.display()
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(if cli.quiet {
        "error"
    } else {
        "warn"
    }))
    .init();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
