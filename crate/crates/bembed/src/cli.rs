//! Command-line interface: `embed`, `eval` and `bench`.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bembed_core::datasets::rescale_minmax;
use bembed_core::metrics::evaluate_embedding_with;
use bembed_core::{
    Algorithm, AngleStrategy, DissimilarityKind, LinkageMethod, Recluster,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench::{run_table_experiment, BenchConfig, ConvertedDissimilarity};
use crate::error::{Error, Result};
use crate::io::{self, CsvOptions};
use crate::pipeline::{embed_and_score, Pipeline};
use crate::report::ReportJson;
use crate::svg::render_svg_scatter;

#[derive(Debug, Parser)]
#[command(name = "bembed", version, about = "Embed dendrograms in the plane and score the result")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Cluster a data table (or load a merge table) and embed it in 2D.
    Embed(EmbedArgs),
    /// Score an existing coordinates file against a merge table.
    Eval(EvalArgs),
    /// Compare angle strategies over random Gaussian matrices.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Metric {
    Euclidean,
    Correlation,
}

impl From<Metric> for DissimilarityKind {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Euclidean => DissimilarityKind::Euclidean,
            Metric::Correlation => DissimilarityKind::Correlation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Linkage {
    Single,
    Complete,
    Average,
    Ward,
}

impl From<Linkage> for LinkageMethod {
    fn from(l: Linkage) -> Self {
        match l {
            Linkage::Single => LinkageMethod::Single,
            Linkage::Complete => LinkageMethod::Complete,
            Linkage::Average => LinkageMethod::Average,
            Linkage::Ward => LinkageMethod::Ward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StrategyKind {
    Random,
    Fixed,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    /// Nearest-neighbor chain / minimum spanning tree.
    Fast,
    /// Dense Lance–Williams with lexicographic tie-breaking.
    Generic,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Fast => Algorithm::Fast,
            AlgorithmArg::Generic => Algorithm::Generic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConvertedMetric {
    /// Reuse the original dissimilarity.
    Same,
    Euclidean,
    Correlation,
}

#[derive(Debug, Args)]
pub struct SwapFlags {
    /// Move the larger child away from the sister (fixed strategy only; default).
    #[arg(long, overrides_with = "no_swap")]
    swap: bool,
    /// Disable the swap rule.
    #[arg(long, overrides_with = "swap")]
    no_swap: bool,
}

impl SwapFlags {
    fn enabled(&self) -> bool {
        !self.no_swap
    }
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    /// Numeric CSV, one observation per row.
    #[arg(long, required_unless_present = "dendrogram", conflicts_with = "dendrogram")]
    pub input: Option<PathBuf>,
    /// Precomputed merge table (left,right,height,size per line).
    #[arg(long)]
    pub dendrogram: Option<PathBuf>,
    /// The input CSV starts with a header row.
    #[arg(long)]
    pub header: bool,
    /// Zero-based column holding integer class labels.
    #[arg(long)]
    pub label_column: Option<usize>,
    /// Rescale every column to [0, 1] before clustering.
    #[arg(long)]
    pub rescale: bool,
    #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
    pub metric: Metric,
    #[arg(long, value_enum, default_value_t = Linkage::Average)]
    pub linkage: Linkage,
    #[arg(long, value_enum, default_value_t = StrategyKind::Fixed)]
    pub strategy: StrategyKind,
    /// Rotation in degrees for the fixed strategy, in [0, 90].
    #[arg(long, default_value_t = 15.0)]
    pub theta: f64,
    #[command(flatten)]
    pub swap: SwapFlags,
    /// Seed for the random strategy.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Linkage for the converted dendrogram (defaults to --linkage).
    #[arg(long, value_enum)]
    pub converted_linkage: Option<Linkage>,
    /// Dissimilarity for the converted dendrogram.
    #[arg(long, value_enum, default_value_t = ConvertedMetric::Same)]
    pub converted_metric: ConvertedMetric,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Fast)]
    pub algorithm: AlgorithmArg,
    /// Coordinates CSV (id,x,y[,label]).
    #[arg(long)]
    pub out: PathBuf,
    /// JSON report with r_c and r_k.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// SVG scatter plot of the coordinates.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Also write the original merge table.
    #[arg(long)]
    pub save_dendrogram: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Merge table of the original dendrogram.
    #[arg(long)]
    pub dendrogram: PathBuf,
    /// Coordinates CSV (id,x,y[,label]).
    #[arg(long)]
    pub coords: PathBuf,
    /// Linkage for the converted dendrogram.
    #[arg(long, value_enum, default_value_t = Linkage::Average)]
    pub converted_linkage: Linkage,
    #[arg(long, value_enum, default_value_t = Metric::Euclidean)]
    pub converted_metric: Metric,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Fast)]
    pub algorithm: AlgorithmArg,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 200, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 100)]
    pub rows: usize,
    #[arg(long, default_value_t = 5)]
    pub cols: usize,
    /// Base seed; trial t uses seed + t.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub swap: SwapFlags,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Fast)]
    pub algorithm: AlgorithmArg,
    /// Dissimilarity for reclustering the embedded points.
    #[arg(long, value_enum, default_value_t = ConvertedMetric::Same)]
    pub converted_metric: ConvertedMetric,
    /// Worker threads (defaults to one per core).
    #[arg(long)]
    pub threads: Option<usize>,
    /// Table CSV; printed to stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-cell statistics including standard errors and failures.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// 2 for unreadable inputs and bad arguments, 1 for everything else.
pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Config(_) | Error::Core(bembed_core::Error::InvalidAngle(_)) => 2,
        e if e.is_io() => 2,
        _ => 1,
    }
}

pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Embed(a) => cmd_embed(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Bench(a) => cmd_bench(&a),
    }
}

fn converted_kind(m: ConvertedMetric, original: DissimilarityKind) -> DissimilarityKind {
    match m {
        ConvertedMetric::Same => original,
        ConvertedMetric::Euclidean => DissimilarityKind::Euclidean,
        ConvertedMetric::Correlation => DissimilarityKind::Correlation,
    }
}

fn check_ward(linkage: LinkageMethod, kind: DissimilarityKind, what: &str) -> Result<()> {
    if linkage == LinkageMethod::Ward && kind != DissimilarityKind::Euclidean {
        return Err(Error::Config(format!("Ward linkage needs Euclidean {what} dissimilarity")));
    }
    Ok(())
}

pub fn cmd_embed(a: &EmbedArgs) -> Result<()> {
    let strategy = match a.strategy {
        StrategyKind::Random => AngleStrategy::random(a.seed),
        StrategyKind::Fixed => AngleStrategy::fixed_with_swap(a.theta, a.swap.enabled())?,
        StrategyKind::Even => AngleStrategy::Even,
    };
    let metric = DissimilarityKind::from(a.metric);
    let linkage = LinkageMethod::from(a.linkage);
    let converted_linkage = a.converted_linkage.map_or(linkage, LinkageMethod::from);
    let converted = converted_kind(a.converted_metric, metric);
    check_ward(converted_linkage, converted, "converted")?;
    let recluster = Recluster::euclidean(converted_linkage)
        .with_dissimilarity(converted)
        .with_algorithm(a.algorithm.into());

    let (original, labels, report_context) = if let Some(path) = &a.input {
        check_ward(linkage, metric, "original")?;
        let opts = CsvOptions { has_header: a.header, label_column: a.label_column };
        let data = io::load_csv(path, opts)?;
        let x = if a.rescale { rescale_minmax(&data.data)? } else { data.data };
        let pipeline = Pipeline::new(metric, linkage, strategy).algorithm(a.algorithm.into());
        (pipeline.cluster(&x)?, data.labels, Some((linkage, metric)))
    } else {
        let path = a.dendrogram.as_ref().expect("clap requires --input or --dendrogram");
        (io::read_dendrogram(path)?, None, None)
    };
    let (embedding, mut report) = embed_and_score(&original, &strategy, &recluster)?;
    if let Some((linkage, metric)) = report_context {
        report = report.with_original(linkage, metric);
    }

    io::write_coords(&a.out, &embedding, labels.as_deref())?;
    if let Some(p) = &a.report {
        io::write_text(p, &ReportJson::new(&report, a.seed).to_json())?;
    }
    if let Some(p) = &a.svg {
        io::write_text(p, &render_svg_scatter(&embedding, labels.as_deref()))?;
    }
    if let Some(p) = &a.save_dendrogram {
        io::write_dendrogram(p, &original)?;
    }
    eprintln!("r_c = {:.4}, r_k = {:.4}", report.r_c, report.r_k);
    Ok(())
}

pub fn cmd_eval(a: &EvalArgs) -> Result<()> {
    let linkage = LinkageMethod::from(a.converted_linkage);
    let kind = DissimilarityKind::from(a.converted_metric);
    check_ward(linkage, kind, "converted")?;
    let original = io::read_dendrogram(&a.dendrogram)?;
    let (coords, _) = io::read_coords(&a.coords)?;
    let recluster = Recluster::euclidean(linkage).with_dissimilarity(kind).with_algorithm(a.algorithm.into());
    let report = evaluate_embedding_with(&original, &coords, &recluster)?;
    let json = ReportJson::new(&report, 0).to_json();
    write_or_print(a.report.as_deref(), &json)
}

pub fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let mut cfg = BenchConfig::tables(a.trials, a.seed);
    cfg.rows = a.rows;
    cfg.cols = a.cols;
    cfg.swap = a.swap.enabled();
    cfg.algorithm = a.algorithm.into();
    cfg.converted = match a.converted_metric {
        ConvertedMetric::Same => ConvertedDissimilarity::SameAsOriginal,
        m => ConvertedDissimilarity::Always(converted_kind(m, DissimilarityKind::Euclidean)),
    };
    cfg.validate()?;

    let table = match a.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(e.to_string()))?
            .install(|| run_table_experiment(&cfg))?,
        None => run_table_experiment(&cfg)?,
    };
    let failures = table.total_failures();
    if failures > 0 {
        eprintln!("warning: {failures} cell evaluations failed and were excluded from the means");
    }
    if let Some(p) = &a.json {
        io::write_text(p, &table.to_json())?;
    }
    write_or_print(a.out.as_deref(), &table.to_csv())
}

fn write_or_print(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => io::write_text(p, text),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .map_err(|e| Error::io("<stdout>", e))
        }
    }
}
