use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wordrank::pipeline::{self, CliError, Format, GraphSource, RunConfig};
use wordrank_core::corpus::ParseOptions;
use wordrank_core::eval::TopK;
use wordrank_core::graph::ParserInit;
use wordrank_core::ranking::{Aggregate, AlgorithmId, HitsVariant, RefScorePolicy};
use wordrank_core::{IterationParams, Weighting};

/// Word-graph construction, ranking and evaluation for POS-tagged corpora.
#[derive(Debug, Parser)]
#[command(name = "wordrank", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank the words of a corpus with one algorithm.
    Rank(RankArgs),
    /// Compare all algorithm families against a gold set.
    Eval(EvalArgs),
    /// Structural statistics of the word graph as JSON.
    GraphStats(StatsArgs),
}

#[derive(Debug, Args)]
struct InputArgs {
    /// POS-tagged corpus, one sentence per line of `surface/TAG` items
    #[arg(long, value_name = "PATH", required_unless_present = "graph")]
    corpus: Option<PathBuf>,
    /// Graph dump to use instead of a corpus
    #[arg(long, value_name = "PATH", conflicts_with = "corpus")]
    graph: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    stopwords: Option<PathBuf>,
    /// Suffix list, one per line
    #[arg(long, value_name = "PATH")]
    stem_rules: Option<PathBuf>,
    #[arg(long, value_name = "N", default_value_t = 2)]
    min_stem_len: usize,
    /// Lowercase surfaces before stemming
    #[arg(long)]
    lowercase: bool,
    /// Separator between surface and tag
    #[arg(long, value_name = "CHAR", default_value_t = '/')]
    tag_sep: char,
    /// Skip lines starting with `<`
    #[arg(long)]
    skip_markup: bool,
    #[arg(long, value_enum, default_value_t = WeightingArg::Bigram)]
    weighting: WeightingArg,
    /// Reduce to unique label sequences and merge equivalent vertices before use
    #[arg(long)]
    compress: bool,
}

#[derive(Debug, Args)]
struct RankingArgs {
    #[arg(long, value_name = "FLOAT", default_value_t = 0.85)]
    damping: f64,
    #[arg(long, value_name = "FLOAT", default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_name = "INT", default_value_t = 100)]
    max_iter: usize,
    /// Reference score for `refscore`
    #[arg(long, value_name = "FLOAT|auto", default_value = "auto", value_parser = parse_ref_score)]
    ref_score: RefScorePolicy,
    #[arg(long, value_enum, default_value_t = AggregateArg::Sum)]
    aggregate: AggregateArg,
    /// Fail with exit status 4 when an iterative algorithm does not converge
    #[arg(long)]
    strict: bool,
}

#[derive(Debug, Args)]
struct RankArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    ranking: RankingArgs,
    /// One of minmax, refscore, hits-r1, hits-r2, hits-r3, hits-r4, ppf, pagerank
    #[arg(long, value_name = "ID", value_parser = parse_algorithm)]
    algorithm: AlgorithmId,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    /// Write the ranking here instead of standard output
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    ranking: RankingArgs,
    /// Gold words, one per line
    #[arg(long, value_name = "PATH")]
    gold: Option<PathBuf>,
    /// Tags whose tokens form the gold set when --gold is absent
    #[arg(long, value_name = "TAG[,TAG...]", value_delimiter = ',')]
    gold_tags: Option<Vec<String>>,
    #[arg(long, value_name = "INT|auto", default_value = "auto", value_parser = parse_top_k)]
    top_k: TopK,
    /// HITS rank used for the HITS row
    #[arg(long, value_enum, default_value_t = HitsArg::R1)]
    hits_variant: HitsArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Tsv)]
    format: FormatArg,
    /// Write the report here instead of standard output
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Also write the full-precision JSON report here
    #[arg(long, value_name = "PATH")]
    json_output: Option<PathBuf>,
    /// Write grouped-bar plot data here
    #[arg(long, value_name = "PATH")]
    plot_csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Seed of the parser-step count: every vertex, or the start vertex only
    #[arg(long, value_enum, default_value_t = ParserInitArg::All)]
    parser_init: ParserInitArg,
    #[arg(long, short, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WeightingArg {
    Bigram,
    Uniform,
    Logcount,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AggregateArg {
    Sum,
    Max,
    Mean,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Tsv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum HitsArg {
    R1,
    R2,
    R3,
    R4,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ParserInitArg {
    All,
    Start,
}

fn parse_algorithm(s: &str) -> Result<AlgorithmId, String> {
    s.parse().map_err(|e: wordrank_core::Error| e.to_string())
}

fn parse_top_k(s: &str) -> Result<TopK, String> {
    if s == "auto" {
        return Ok(TopK::Auto);
    }
    match s.parse::<usize>() {
        Ok(k) if k > 0 => Ok(TopK::Fixed(k)),
        _ => Err("expected a positive integer or `auto`".into()),
    }
}

fn parse_ref_score(s: &str) -> Result<RefScorePolicy, String> {
    if s == "auto" {
        return Ok(RefScorePolicy::Auto);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() => Ok(RefScorePolicy::Fixed(x)),
        _ => Err("expected a finite number or `auto`".into()),
    }
}

impl InputArgs {
    fn apply(&self) -> RunConfig {
        let source = match (&self.corpus, &self.graph) {
            (Some(p), _) => GraphSource::Corpus(p.clone()),
            (None, Some(p)) => GraphSource::Dump(p.clone()),
            (None, None) => unreachable!("clap requires --corpus or --graph"),
        };
        let mut cfg = RunConfig::new(source);
        cfg.parse = ParseOptions {
            tag_separator: self.tag_sep,
            skip_markup_lines: self.skip_markup,
        };
        cfg.stopwords = self.stopwords.clone();
        cfg.stem_rules = self.stem_rules.clone();
        cfg.min_stem_length = self.min_stem_len;
        cfg.lowercase = self.lowercase;
        cfg.weighting = match self.weighting {
            WeightingArg::Bigram => Weighting::Bigram,
            WeightingArg::Uniform => Weighting::Uniform,
            WeightingArg::Logcount => Weighting::LogCount,
        };
        cfg.compress = self.compress;
        cfg
    }
}

impl RankingArgs {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.params = IterationParams {
            damping: self.damping,
            tolerance: self.tol,
            max_iterations: self.max_iter,
        };
        cfg.ref_score = self.ref_score;
        cfg.aggregate = match self.aggregate {
            AggregateArg::Sum => Aggregate::Sum,
            AggregateArg::Max => Aggregate::Max,
            AggregateArg::Mean => Aggregate::Mean,
        };
        cfg.strict = self.strict;
    }
}

fn format(f: FormatArg) -> Format {
    match f {
        FormatArg::Tsv => Format::Tsv,
        FormatArg::Json => Format::Json,
    }
}

fn emit(path: Option<&Path>, data: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, data).map_err(|source| CliError::Io {
            path: p.to_path_buf(),
            source,
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(data.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|source| CliError::Io {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}

fn diagnostics(notes: &[String]) {
    for n in notes {
        eprintln!("{n}");
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Rank(a) => {
            let mut cfg = a.input.apply();
            a.ranking.apply(&mut cfg);
            cfg.algorithm = a.algorithm;
            cfg.format = format(a.format);
            let run = pipeline::cmd_rank(&cfg)?;
            diagnostics(&run.notes);
            emit(a.output.as_deref(), &run.output)
        }
        Command::Eval(a) => {
            let mut cfg = a.input.apply();
            a.ranking.apply(&mut cfg);
            cfg.gold = a.gold.clone();
            if let Some(tags) = a.gold_tags {
                cfg.gold_tags = tags;
            }
            cfg.top_k = a.top_k;
            cfg.hits_variant = match a.hits_variant {
                HitsArg::R1 => HitsVariant::R1,
                HitsArg::R2 => HitsVariant::R2,
                HitsArg::R3 => HitsVariant::R3,
                HitsArg::R4 => HitsVariant::R4,
            };
            cfg.format = format(a.format);
            let run = pipeline::cmd_eval(&cfg)?;
            diagnostics(&run.notes);
            let main = match cfg.format {
                Format::Tsv => &run.tsv,
                Format::Json => &run.json,
            };
            emit(a.output.as_deref(), main)?;
            if let Some(p) = &a.json_output {
                emit(Some(p), &run.json)?;
            }
            if let Some(p) = &a.plot_csv {
                emit(Some(p), &run.plot_csv)?;
            }
            Ok(())
        }
        Command::GraphStats(a) => {
            let mut cfg = a.input.apply();
            cfg.parser_init = match a.parser_init {
                ParserInitArg::All => ParserInit::AllVertices,
                ParserInitArg::Start => ParserInit::StartOnly,
            };
            let run = pipeline::cmd_graph_stats(&cfg)?;
            diagnostics(&run.notes);
            emit(a.output.as_deref(), &run.output)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wordrank: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
