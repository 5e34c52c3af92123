//! Text formats read and written by the command-line tool.
//!
//! | file            | layout                                                        |
//! |-----------------|---------------------------------------------------------------|
//! | word list       | one entry per line, `#` starts a comment line                 |
//! | graph dump      | `#vertices N start S end E`, then `src\ttgt\tlabel\tweight`   |
//! | ranking TSV     | `word\tscore`, score with 6 decimals                          |
//! | report TSV      | `algorithm\twords\tprecision\trecall\tf1`, 2 decimals         |
//! | plot CSV        | `algorithm,precision,recall,f1,top_k`                         |
//!
//! JSON variants carry full-precision floats.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wordrank_core::eval::EvalReport;
use wordrank_core::graph::{Edge, WordGraph};
use wordrank_core::ranking::WordRanking;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("missing header `{0}`")]
    MissingHeader(&'static str),
    #[error(transparent)]
    Graph(#[from] wordrank_core::Error),
}

fn malformed(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Malformed {
        line: line + 1,
        msg: msg.into(),
    }
}

/// Non-empty, non-comment lines, trimmed. Used for stop words, stem rules and gold words.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect()
}

pub fn write_graph_dump(g: &WordGraph) -> String {
    let mut out = format!(
        "#vertices {} start {} end {}\n",
        g.vertex_count(),
        g.start(),
        g.end()
    );
    for e in g.edges() {
        writeln!(out, "{}\t{}\t{}\t{:.6}", e.src, e.tgt, e.label, e.weight).unwrap();
    }
    out
}

pub fn parse_graph_dump(text: &str) -> Result<WordGraph, FormatError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (hline, header) = lines
        .next()
        .ok_or(FormatError::MissingHeader("#vertices N start S end E"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (n, start, end) = match fields.as_slice() {
        ["#vertices", n, "start", s, "end", e] => (
            n.parse::<usize>().map_err(|_| malformed(hline, "bad vertex count"))?,
            s.parse::<usize>().map_err(|_| malformed(hline, "bad start vertex"))?,
            e.parse::<usize>().map_err(|_| malformed(hline, "bad end vertex"))?,
        ),
        _ => return Err(FormatError::MissingHeader("#vertices N start S end E")),
    };
    let mut edges = Vec::new();
    for (i, line) in lines {
        let cols: Vec<&str> = line.split('\t').collect();
        let [src, tgt, label, weight] = cols.as_slice() else {
            return Err(malformed(i, "expected 4 tab-separated columns"));
        };
        edges.push(Edge::new(
            src.parse().map_err(|_| malformed(i, "bad source vertex"))?,
            tgt.parse().map_err(|_| malformed(i, "bad target vertex"))?,
            *label,
            weight.parse().map_err(|_| malformed(i, "bad weight"))?,
        ));
    }
    Ok(WordGraph::new(n, start, end, edges)?)
}

pub fn write_ranking_tsv(r: &WordRanking) -> String {
    let mut out = String::from("word\tscore\n");
    for (w, s) in &r.entries {
        writeln!(out, "{w}\t{s:.6}").unwrap();
    }
    out
}

pub fn parse_ranking_tsv(text: &str) -> Result<Vec<(String, f64)>, FormatError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, "word\tscore")) => {}
        _ => return Err(FormatError::MissingHeader("word\tscore")),
    }
    lines
        .map(|(i, l)| {
            let (w, s) = l.split_once('\t').ok_or_else(|| malformed(i, "expected word<TAB>score"))?;
            let s = s.parse().map_err(|_| malformed(i, "bad score"))?;
            Ok((w.to_string(), s))
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingJson {
    pub algorithm: String,
    pub converged: bool,
    pub iterations: usize,
    pub vertices: usize,
    pub edges: usize,
    pub entries: Vec<RankingEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingEntry {
    pub word: String,
    pub score: f64,
}

impl From<&WordRanking> for RankingJson {
    fn from(r: &WordRanking) -> Self {
        RankingJson {
            algorithm: r.algorithm.as_str().to_string(),
            converged: r.converged,
            iterations: r.iterations,
            vertices: r.graph_stats.0,
            edges: r.graph_stats.1,
            entries: r
                .entries
                .iter()
                .map(|(w, s)| RankingEntry {
                    word: w.clone(),
                    score: *s,
                })
                .collect(),
        }
    }
}

pub fn write_ranking_json(r: &WordRanking) -> String {
    let mut s = serde_json::to_string_pretty(&RankingJson::from(r)).unwrap();
    s.push('\n');
    s
}

pub const REPORT_HEADER: &str = "algorithm\twords\tprecision\trecall\tf1";

pub fn write_report_tsv(report: &EvalReport) -> String {
    let mut out = format!("{REPORT_HEADER}\n");
    for row in &report.rows {
        writeln!(
            out,
            "{}\t{}\t{:.2}\t{:.2}\t{:.2}",
            row.algorithm, row.words, row.precision, row.recall, row.f1
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRowJson {
    pub algorithm: String,
    pub words: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub top_k: usize,
    pub converged: bool,
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub tn: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportJson {
    pub gold_size: usize,
    pub rows: Vec<ReportRowJson>,
}

pub fn report_json(report: &EvalReport, gold_size: usize) -> ReportJson {
    ReportJson {
        gold_size,
        rows: report
            .rows
            .iter()
            .map(|r| ReportRowJson {
                algorithm: r.algorithm.as_str().to_string(),
                words: r.words,
                precision: r.precision,
                recall: r.recall,
                f1: r.f1,
                top_k: r.top_k,
                converged: r.converged,
                tp: r.counts.tp,
                fp: r.counts.fp,
                fn_: r.counts.fn_,
                tn: r.counts.tn,
            })
            .collect(),
    }
}

pub fn write_report_json(report: &EvalReport, gold_size: usize) -> String {
    let mut s = serde_json::to_string_pretty(&report_json(report, gold_size)).unwrap();
    s.push('\n');
    s
}

/// A parsed report TSV row.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportTsvRow {
    pub algorithm: String,
    pub words: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

pub fn parse_report_tsv(text: &str) -> Result<Vec<ReportTsvRow>, FormatError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == REPORT_HEADER => {}
        _ => return Err(FormatError::MissingHeader(REPORT_HEADER)),
    }
    lines
        .map(|(i, l)| {
            let cols: Vec<&str> = l.split('\t').collect();
            let [a, w, p, r, f] = cols.as_slice() else {
                return Err(malformed(i, "expected 5 columns"));
            };
            let num = |s: &str| s.parse::<f64>().map_err(|_| malformed(i, "bad metric"));
            Ok(ReportTsvRow {
                algorithm: a.to_string(),
                words: w.parse().map_err(|_| malformed(i, "bad word count"))?,
                precision: num(p)?,
                recall: num(r)?,
                f1: num(f)?,
            })
        })
        .collect()
}

pub const PLOT_HEADER: &str = "algorithm,precision,recall,f1,top_k";

/// Grouped-bar data: one row per algorithm.
pub fn write_plot_csv(report: &EvalReport) -> String {
    let mut out = format!("{PLOT_HEADER}\n");
    for row in &report.rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            row.algorithm, row.precision, row.recall, row.f1, row.top_k
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphStatsJson {
    pub vertices: usize,
    pub edges: usize,
    pub start: usize,
    pub end: usize,
    pub density: f64,
    /// Decimal string, `null` when above `count_cap`.
    pub paths: Option<String>,
    pub parser_steps: Option<String>,
    pub parser_init: String,
    pub count_cap: String,
    pub topological_order_valid: bool,
}

pub fn write_stats_json(stats: &GraphStatsJson) -> String {
    let mut s = serde_json::to_string_pretty(stats).unwrap();
    s.push('\n');
    s
}
