//! Gold sets, confusion counts and precision / recall / F1.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::corpus::TokenizedDocument;
use crate::error::{Error, Result};
use crate::graph::WordGraph;
use crate::ranking::{rank_words, AlgorithmId, HitsVariant, RankOptions, WordRanking};

/// Tags treated as relevant when no explicit gold list is given: the noun family
/// of the Indian-language POS tag sets.
pub const DEFAULT_RELEVANT_TAGS: [&str; 7] = ["NN", "NNP", "NNS", "NNPS", "NST", "NNC", "NNPC"];

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GoldSet {
    pub relevant: BTreeSet<String>,
}

impl GoldSet {
    pub fn new(relevant: BTreeSet<String>) -> Result<Self> {
        if relevant.is_empty() {
            return Err(Error::EmptyGold);
        }
        Ok(GoldSet { relevant })
    }

    pub fn len(&self) -> usize {
        self.relevant.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relevant.is_empty()
    }

    pub fn contains(&self, word: &str) -> bool {
        self.relevant.contains(word)
    }
}

impl FromIterator<String> for GoldSet {
    fn from_iter<I: IntoIterator<Item = String>>(iter: I) -> Self {
        GoldSet {
            relevant: iter.into_iter().collect(),
        }
    }
}

/// Stems of every token whose tag is in `relevant_tags`.
pub fn derive_gold_from_pos<S: AsRef<str>>(
    doc: &TokenizedDocument,
    relevant_tags: &[S],
) -> Result<GoldSet> {
    let tags: BTreeSet<&str> = relevant_tags.iter().map(AsRef::as_ref).collect();
    let relevant: BTreeSet<String> = doc
        .tokens()
        .filter(|t| tags.contains(t.pos_tag.as_str()))
        .map(|t| t.stem.clone())
        .collect();
    GoldSet::new(relevant)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConfusionCounts {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

impl ConfusionCounts {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }

    pub fn precision(&self) -> f64 {
        precision(self)
    }

    pub fn recall(&self) -> f64 {
        recall(self)
    }

    pub fn f1(&self) -> f64 {
        f1(self)
    }
}

/// `top_k` limited to the ranking length; the flag is set when it had to be clamped.
pub fn effective_top_k(ranking: &WordRanking, top_k: usize) -> (usize, bool) {
    if top_k > ranking.len() {
        (ranking.len(), true)
    } else {
        (top_k, false)
    }
}

/// The first `top_k` words are predicted relevant, the rest of the vocabulary
/// predicted irrelevant. Gold words absent from the ranking are ignored.
pub fn confusion(ranking: &WordRanking, gold: &GoldSet, top_k: usize) -> ConfusionCounts {
    let (k, _) = effective_top_k(ranking, top_k);
    let mut c = ConfusionCounts::default();
    for (i, word) in ranking.words().enumerate() {
        match (i < k, gold.contains(word)) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => c.tn += 1,
        }
    }
    c
}

pub fn precision(c: &ConfusionCounts) -> f64 {
    ratio(c.tp, c.tp + c.fp)
}

pub fn recall(c: &ConfusionCounts) -> f64 {
    ratio(c.tp, c.tp + c.fn_)
}

pub fn f1(c: &ConfusionCounts) -> f64 {
    f1_from(precision(c), recall(c))
}

/// Harmonic mean, 0 when both inputs are 0.
pub fn f1_from(p: f64, r: f64) -> f64 {
    if p + r == 0.0 {
        0.0
    } else {
        2.0 * p * r / (p + r)
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TopK {
    /// As many predictions as there are gold words.
    #[default]
    Auto,
    Fixed(usize),
}

impl TopK {
    pub fn resolve(self, gold: &GoldSet) -> usize {
        match self {
            TopK::Auto => gold.len(),
            TopK::Fixed(k) => k,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EvalOptions {
    pub rank: RankOptions,
    pub top_k: TopK,
    pub hits_variant: HitsVariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalRow {
    pub algorithm: AlgorithmId,
    /// Size of the ranked vocabulary.
    pub words: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub top_k: usize,
    pub top_k_clamped: bool,
    pub converged: bool,
    pub counts: ConfusionCounts,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct EvalReport {
    pub rows: Vec<EvalRow>,
}

pub fn evaluate(
    ranking: &WordRanking,
    gold: &GoldSet,
    top_k: usize,
) -> EvalRow {
    let (k, clamped) = effective_top_k(ranking, top_k);
    let counts = confusion(ranking, gold, k);
    EvalRow {
        algorithm: ranking.algorithm,
        words: ranking.len(),
        precision: counts.precision(),
        recall: counts.recall(),
        f1: counts.f1(),
        top_k: k,
        top_k_clamped: clamped,
        converged: ranking.converged,
        counts,
    }
}

/// One row per algorithm family, in the order minmax, refscore, hits, ppf, pagerank.
pub fn compare_algorithms(
    g: &WordGraph,
    gold: &GoldSet,
    options: &EvalOptions,
) -> Result<EvalReport> {
    if gold.is_empty() {
        return Err(Error::EmptyGold);
    }
    let top_k = options.top_k.resolve(gold);
    if top_k == 0 {
        return Err(Error::InvalidParameter("top_k must be positive"));
    }
    let rows = AlgorithmId::families(options.hits_variant)
        .into_iter()
        .map(|a| rank_words(g, a, &options.rank).map(|r| evaluate(&r, gold, top_k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(EvalReport { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{parse_pos_file, Token};
    use crate::graph::fixtures::lattice;
    use alloc::string::ToString;
    use alloc::vec;

    fn ranking(words: &[&str]) -> WordRanking {
        WordRanking {
            entries: words
                .iter()
                .enumerate()
                .map(|(i, w)| (w.to_string(), -(i as f64)))
                .collect(),
            algorithm: AlgorithmId::PageRank,
            graph_stats: (0, 0),
            converged: true,
            iterations: 0,
        }
    }

    fn gold(words: &[&str]) -> GoldSet {
        words.iter().map(|w| w.to_string()).collect()
    }

    #[test]
    fn confusion_set_arithmetic() {
        let c = confusion(&ranking(&["a", "b", "c", "d"]), &gold(&["a", "c"]), 2);
        assert_eq!(c, ConfusionCounts { tp: 1, fp: 1, fn_: 1, tn: 1 });

        let all = confusion(&ranking(&["a", "b"]), &gold(&["a", "b", "z"]), 2);
        assert_eq!((all.fp, all.fn_), (0, 0));

        let none = confusion(&ranking(&["a", "b"]), &gold(&["x"]), 1);
        assert_eq!(none.tp, 0);
        assert_eq!(none.precision(), 0.0);
    }

    #[test]
    fn top_k_is_clamped() {
        let r = ranking(&["a", "b"]);
        assert_eq!(effective_top_k(&r, 5), (2, true));
        assert_eq!(effective_top_k(&r, 2), (2, false));
        let c = confusion(&r, &gold(&["a"]), 5);
        assert_eq!(c.total(), 2);
    }

    #[test]
    fn metric_formulas() {
        let c = ConfusionCounts { tp: 2, fp: 2, fn_: 3, tn: 0 };
        assert_eq!(c.precision(), 0.5);
        assert_eq!(c.recall(), 0.4);
        assert!((c.f1() - 4.0 / 9.0).abs() < 1e-15);

        let zero = ConfusionCounts { tp: 0, fp: 3, fn_: 2, tn: 1 };
        assert_eq!((zero.precision(), zero.recall(), zero.f1()), (0.0, 0.0, 0.0));
        assert_eq!(ConfusionCounts::default().f1(), 0.0);

        let f = f1_from(0.36, 0.40);
        assert!((f - 0.378_947_368_421).abs() < 1e-9);
    }

    #[test]
    fn gold_from_tags() {
        let doc = parse_pos_file(b"a/NN b/VM\nc/JJ\n").unwrap();
        assert_eq!(derive_gold_from_pos(&doc, &["NN"]).unwrap(), gold(&["a"]));
        assert_eq!(derive_gold_from_pos::<&str>(&doc, &[]), Err(Error::EmptyGold));
        assert_eq!(
            derive_gold_from_pos(&doc, &["NN", "VM", "JJ"]).unwrap(),
            gold(&["a", "b", "c"])
        );
    }

    #[test]
    fn gold_uses_stems() {
        let mut t = Token::new("books", "NN");
        t.stem = "book".into();
        let doc = TokenizedDocument::new(vec![vec![t]]);
        assert_eq!(derive_gold_from_pos(&doc, &DEFAULT_RELEVANT_TAGS).unwrap(), gold(&["book"]));
    }

    #[test]
    fn report_has_five_rows_in_order() {
        let g = lattice();
        let gold = gold(&["w00", "w10", "w40", "w41"]);
        let rep = compare_algorithms(&g, &gold, &EvalOptions::default()).unwrap();
        let ids: Vec<&str> = rep.rows.iter().map(|r| r.algorithm.as_str()).collect();
        assert_eq!(ids, vec!["minmax", "refscore", "hits-r1", "ppf", "pagerank"]);
        for row in &rep.rows {
            assert_eq!(row.words, 25);
            assert_eq!(row.top_k, 4);
            for m in [row.precision, row.recall, row.f1] {
                assert!((0.0..=1.0).contains(&m));
            }
        }
        assert_eq!(compare_algorithms(&g, &gold, &EvalOptions::default()).unwrap(), rep);
        assert_eq!(
            compare_algorithms(&g, &GoldSet::default(), &EvalOptions::default()),
            Err(Error::EmptyGold)
        );
    }
}
