use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use wordrank_core::corpus::{parse_pos_file_with, preprocess_with_stats, stem, ParseOptions};
use wordrank_core::eval::{compare_algorithms, derive_gold_from_pos, EvalOptions, TopK, DEFAULT_RELEVANT_TAGS};
use wordrank_core::graph::{
    build_word_graph, compress, count_paths_capped, density, parser_steps_with, topological_order,
    CountCap, ParserInit,
};
use wordrank_core::ranking::{rank_words, AlgorithmId, HitsVariant, RankOptions, RefScorePolicy};
use wordrank_core::{
    Error, EvalReport, GoldSet, IterationParams, PreprocessConfig, TokenizedDocument, Weighting,
    WordGraph, WordRanking,
};

use crate::formats::{self, FormatError, GraphStatsJson};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    EmptyInput(Error),
    #[error("{0} did not converge within the iteration limit")]
    NotConverged(String),
    #[error(transparent)]
    Core(Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } | CliError::Format { .. } | CliError::Core(_) => 2,
            CliError::EmptyInput(_) => 3,
            CliError::NotConverged(_) => 4,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyCorpus | Error::EmptyDocument | Error::EmptyGold => CliError::EmptyInput(e),
            e => CliError::Core(e),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Tsv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    /// A POS-tagged corpus, preprocessed and turned into a word graph.
    Corpus(PathBuf),
    /// A graph dump, used as is.
    Dump(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub source: GraphSource,
    pub parse: ParseOptions,
    pub stopwords: Option<PathBuf>,
    pub stem_rules: Option<PathBuf>,
    pub min_stem_length: usize,
    pub lowercase: bool,
    pub gold: Option<PathBuf>,
    pub gold_tags: Vec<String>,
    pub algorithm: AlgorithmId,
    pub hits_variant: HitsVariant,
    pub params: IterationParams,
    pub top_k: TopK,
    pub ref_score: RefScorePolicy,
    pub weighting: Weighting,
    pub aggregate: wordrank_core::ranking::Aggregate,
    pub compress: bool,
    pub format: Format,
    pub parser_init: ParserInit,
    pub strict: bool,
}

impl RunConfig {
    pub fn new(source: GraphSource) -> Self {
        RunConfig {
            source,
            parse: ParseOptions::default(),
            stopwords: None,
            stem_rules: None,
            min_stem_length: 2,
            lowercase: false,
            gold: None,
            gold_tags: DEFAULT_RELEVANT_TAGS.iter().map(|s| s.to_string()).collect(),
            algorithm: AlgorithmId::PageRank,
            hits_variant: HitsVariant::R1,
            params: IterationParams::default(),
            top_k: TopK::Auto,
            ref_score: RefScorePolicy::Auto,
            weighting: Weighting::Bigram,
            aggregate: Default::default(),
            compress: false,
            format: Format::Tsv,
            parser_init: ParserInit::AllVertices,
            strict: false,
        }
    }

    /// Checks numeric fields and that every referenced input file exists.
    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate().map_err(|e| CliError::Config(e.to_string()))?;
        if self.min_stem_length == 0 {
            return Err(CliError::Config("--min-stem-len must be at least 1".into()));
        }
        if let TopK::Fixed(0) = self.top_k {
            return Err(CliError::Config("--top-k must be positive".into()));
        }
        if let RefScorePolicy::Fixed(x) = self.ref_score {
            if !x.is_finite() {
                return Err(CliError::Config("--ref-score must be finite".into()));
            }
        }
        let src = match &self.source {
            GraphSource::Corpus(p) | GraphSource::Dump(p) => p,
        };
        for p in [Some(src), self.stopwords.as_ref(), self.stem_rules.as_ref(), self.gold.as_ref()]
            .into_iter()
            .flatten()
        {
            if !p.is_file() {
                return Err(CliError::Config(format!("{}: no such file", p.display())));
            }
        }
        Ok(())
    }

    fn rank_options(&self) -> RankOptions {
        RankOptions {
            params: self.params,
            ref_score: self.ref_score,
            aggregate: self.aggregate,
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_text(path: &Path) -> Result<String, CliError> {
    String::from_utf8(read(path)?)
        .map_err(|e| CliError::Config(format!("{}: invalid UTF-8 at byte {}", path.display(), e.utf8_error().valid_up_to())))
}

pub fn preprocess_config(cfg: &RunConfig) -> Result<PreprocessConfig, CliError> {
    let rules = match &cfg.stem_rules {
        Some(p) => formats::parse_word_list(&read_text(p)?),
        None => Vec::new(),
    };
    let stops: BTreeSet<String> = match &cfg.stopwords {
        Some(p) => formats::parse_word_list(&read_text(p)?).into_iter().collect(),
        None => BTreeSet::new(),
    };
    PreprocessConfig::new(rules, cfg.min_stem_length, stops, cfg.lowercase)
        .map_err(|e| CliError::Config(e.to_string()))
}

/// Everything the subcommands need: the graph and, when built from text, the document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub graph: WordGraph,
    pub document: Option<TokenizedDocument>,
    pub preprocess: PreprocessConfig,
    pub notes: Vec<String>,
}

pub fn load(cfg: &RunConfig) -> Result<Loaded, CliError> {
    cfg.validate()?;
    let pre = preprocess_config(cfg)?;
    let mut notes = Vec::new();
    let (graph, document) = match &cfg.source {
        GraphSource::Corpus(path) => {
            let doc = parse_pos_file_with(&read(path)?, &cfg.parse).map_err(|e| match e {
                Error::Decode { offset } => {
                    CliError::Config(format!("{}: invalid UTF-8 at byte {offset}", path.display()))
                }
                e => e.into(),
            })?;
            let doc = doc.with_source_id(path.display().to_string());
            let sentences = doc.sentences.len();
            let (doc, stats) = preprocess_with_stats(doc, &pre);
            notes.push(format!(
                "corpus: {sentences} sentences, {} tokens after preprocessing ({} stop words removed, {} sentences dropped)",
                doc.token_count(),
                stats.tokens_removed,
                stats.sentences_dropped
            ));
            if doc.is_empty() {
                return Err(Error::EmptyCorpus.into());
            }
            (build_word_graph(&doc, cfg.weighting)?, Some(doc))
        }
        GraphSource::Dump(path) => {
            let g = formats::parse_graph_dump(&read_text(path)?).map_err(|source| CliError::Format {
                path: path.clone(),
                source,
            })?;
            (g, None)
        }
    };
    let graph = if cfg.compress {
        let c = compress(&graph)?;
        notes.push(format!(
            "compress: {} -> {} vertices, {} -> {} edges",
            graph.vertex_count(),
            c.vertex_count(),
            graph.edge_count(),
            c.edge_count()
        ));
        c
    } else {
        graph
    };
    Ok(Loaded {
        graph,
        document,
        preprocess: pre,
        notes,
    })
}

fn count_or_none(r: wordrank_core::Result<BigUint>) -> Result<Option<String>, CliError> {
    match r {
        Ok(n) => Ok(Some(n.to_string())),
        Err(Error::CountOverflow) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// The one-line graph summary written to the diagnostic stream.
pub fn graph_summary(g: &WordGraph) -> String {
    let paths = count_or_none(count_paths_capped(g, &CountCap::default()))
        .ok()
        .flatten()
        .unwrap_or_else(|| format!("> {}", CountCap::default().limit()));
    format!(
        "graph: |V|={} |E|={} density={:.6} paths={paths}",
        g.vertex_count(),
        g.edge_count(),
        density(g)
    )
}

/// The gold set: words from `--gold` (folded and stemmed like the corpus), or
/// stems of corpus tokens whose tag is in `--gold-tags`.
pub fn gold_set(cfg: &RunConfig, loaded: &Loaded) -> Result<GoldSet, CliError> {
    if let Some(path) = &cfg.gold {
        let words = formats::parse_word_list(&read_text(path)?);
        let gold: BTreeSet<String> = words
            .iter()
            .map(|w| {
                if cfg.lowercase {
                    stem(&w.to_lowercase(), &loaded.preprocess)
                } else {
                    stem(w, &loaded.preprocess)
                }
            })
            .collect();
        return Ok(GoldSet::new(gold)?);
    }
    match &loaded.document {
        Some(doc) => Ok(derive_gold_from_pos(doc, &cfg.gold_tags)?),
        None => Err(CliError::Config(
            "a graph dump carries no tags; pass --gold".into(),
        )),
    }
}

#[derive(Debug, Clone)]
pub struct RankRun {
    pub ranking: WordRanking,
    pub output: String,
    pub notes: Vec<String>,
}

pub fn cmd_rank(cfg: &RunConfig) -> Result<RankRun, CliError> {
    let loaded = load(cfg)?;
    let mut notes = loaded.notes.clone();
    notes.push(graph_summary(&loaded.graph));
    let ranking = rank_words(&loaded.graph, cfg.algorithm, &cfg.rank_options())?;
    if !ranking.converged {
        if cfg.strict {
            return Err(CliError::NotConverged(cfg.algorithm.to_string()));
        }
        notes.push(format!(
            "warning: {} did not converge after {} iterations",
            cfg.algorithm, ranking.iterations
        ));
    }
    let output = match cfg.format {
        Format::Tsv => formats::write_ranking_tsv(&ranking),
        Format::Json => formats::write_ranking_json(&ranking),
    };
    Ok(RankRun {
        ranking,
        output,
        notes,
    })
}

#[derive(Debug, Clone)]
pub struct EvalRun {
    pub report: EvalReport,
    pub gold_size: usize,
    pub tsv: String,
    pub json: String,
    pub plot_csv: String,
    pub notes: Vec<String>,
}

pub fn cmd_eval(cfg: &RunConfig) -> Result<EvalRun, CliError> {
    let loaded = load(cfg)?;
    let mut notes = loaded.notes.clone();
    notes.push(graph_summary(&loaded.graph));
    let gold = gold_set(cfg, &loaded)?;
    notes.push(format!("gold: {} words", gold.len()));
    let options = EvalOptions {
        rank: cfg.rank_options(),
        top_k: cfg.top_k,
        hits_variant: cfg.hits_variant,
    };
    let report = compare_algorithms(&loaded.graph, &gold, &options)?;
    for row in &report.rows {
        if !row.converged {
            if cfg.strict {
                return Err(CliError::NotConverged(row.algorithm.to_string()));
            }
            notes.push(format!("warning: {} did not converge", row.algorithm));
        }
        if row.top_k_clamped {
            notes.push(format!(
                "note: {} top-k clamped to the {} ranked words",
                row.algorithm, row.words
            ));
        }
    }
    Ok(EvalRun {
        tsv: formats::write_report_tsv(&report),
        json: formats::write_report_json(&report, gold.len()),
        plot_csv: formats::write_plot_csv(&report),
        gold_size: gold.len(),
        report,
        notes,
    })
}

#[derive(Debug, Clone)]
pub struct StatsRun {
    pub stats: GraphStatsJson,
    pub output: String,
    pub notes: Vec<String>,
}

pub fn graph_stats(g: &WordGraph, init: ParserInit) -> Result<GraphStatsJson, CliError> {
    let cap = CountCap::default();
    let order = topological_order(g)?;
    let valid = order.len() == g.vertex_count()
        && g.edges().iter().all(|e| order.rank(e.src) < order.rank(e.tgt));
    Ok(GraphStatsJson {
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        start: g.start().0,
        end: g.end().0,
        density: density(g),
        paths: count_or_none(count_paths_capped(g, &cap))?,
        parser_steps: count_or_none(parser_steps_with(g, init, &cap))?,
        parser_init: match init {
            ParserInit::AllVertices => "all".into(),
            ParserInit::StartOnly => "start".into(),
        },
        count_cap: cap.limit().to_string(),
        topological_order_valid: valid,
    })
}

pub fn cmd_graph_stats(cfg: &RunConfig) -> Result<StatsRun, CliError> {
    let loaded = load(cfg)?;
    let mut notes = loaded.notes.clone();
    notes.push(graph_summary(&loaded.graph));
    let stats = graph_stats(&loaded.graph, cfg.parser_init)?;
    Ok(StatsRun {
        output: formats::write_stats_json(&stats),
        stats,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn corpus(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::from(Error::EmptyCorpus).exit_code(), 3);
        assert_eq!(CliError::from(Error::EmptyGold).exit_code(), 3);
        assert_eq!(CliError::from(Error::Cycle).exit_code(), 2);
        assert_eq!(CliError::NotConverged("hits-r1".into()).exit_code(), 4);
    }

    #[test]
    fn missing_files_are_config_errors() {
        let cfg = RunConfig::new(GraphSource::Corpus("/nonexistent/x.pos".into()));
        let err = cmd_rank(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn toy_corpus_stats() {
        let f = corpus("a/NN b/VM\na/NN c/NN\n");
        let run = cmd_graph_stats(&RunConfig::new(GraphSource::Corpus(f.path().into()))).unwrap();
        // 0 -a-> 1 -b-> 3, 0 -a-> 2 -c-> 3
        assert_eq!(run.stats.vertices, 4);
        assert_eq!(run.stats.edges, 4);
        assert_eq!(run.stats.paths.as_deref(), Some("2"));
        // non-empty paths: 4 single edges and 2 two-edge paths
        assert_eq!(run.stats.parser_steps.as_deref(), Some("6"));
        assert!((run.stats.density - 6.0 / 4.0).abs() < 1e-12);
        assert!(run.stats.topological_order_valid);
    }

    #[test]
    fn empty_corpus_and_empty_gold() {
        let f = corpus("\n\n");
        let err = cmd_graph_stats(&RunConfig::new(GraphSource::Corpus(f.path().into()))).unwrap_err();
        assert_eq!(err.exit_code(), 3);

        let f = corpus("a/VM b/VM\n");
        let err = cmd_eval(&RunConfig::new(GraphSource::Corpus(f.path().into()))).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }

    #[test]
    fn strict_fails_on_non_convergence() {
        let f = corpus("a/NN b/VM c/NN\na/NN d/NN c/JJ\nb/NN d/VM\n");
        let mut cfg = RunConfig::new(GraphSource::Corpus(f.path().into()));
        cfg.algorithm = AlgorithmId::PageRank;
        cfg.params.max_iterations = 1;
        cfg.params.tolerance = 1e-15;
        assert!(!cmd_rank(&cfg).unwrap().ranking.converged);
        cfg.strict = true;
        assert_eq!(cmd_rank(&cfg).unwrap_err().exit_code(), 4);
    }

    #[test]
    fn gold_file_words_are_stemmed() {
        let f = corpus("বইগুলো/NN পড়ে/VM\n");
        let rules = corpus("গুলো\n");
        let gold = corpus("# gold\nবইগুলো\n");
        let mut cfg = RunConfig::new(GraphSource::Corpus(f.path().into()));
        cfg.stem_rules = Some(rules.path().into());
        cfg.gold = Some(gold.path().into());
        let run = cmd_eval(&cfg).unwrap();
        assert_eq!(run.gold_size, 1);
        assert_eq!(run.report.rows.len(), 5);
        assert!(run.report.rows.iter().all(|r| r.top_k == 1));
    }
}
