//! POS-tagged corpus parsing and the tokenize / stem / stop-word pipeline.
//!
//! A corpus holds one sentence per line. Tokens are separated by whitespace and
//! written as `surface/TAG`; the split happens at the *last* separator so that
//! surfaces may contain `/` themselves.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    pub pos_tag: String,
    /// Canonical form used for graph labels and stop-word matching.
    pub stem: String,
}

impl Token {
    pub fn new(surface: impl Into<String>, pos_tag: impl Into<String>) -> Self {
        let surface = surface.into();
        Token {
            stem: surface.clone(),
            surface,
            pos_tag: pos_tag.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TokenizedDocument {
    pub sentences: Vec<Vec<Token>>,
    pub source_id: String,
}

impl TokenizedDocument {
    pub fn new(sentences: Vec<Vec<Token>>) -> Self {
        TokenizedDocument {
            sentences,
            source_id: String::new(),
        }
    }

    pub fn with_source_id(mut self, id: impl Into<String>) -> Self {
        self.source_id = id.into();
        self
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Vec::len).sum()
    }

    pub fn tokens(&self) -> impl Iterator<Item = &Token> {
        self.sentences.iter().flatten()
    }

    /// Writes the document back in `surface/TAG` form, one sentence per line.
    /// Tokens with an empty tag are written as the bare surface, unless the
    /// surface itself contains `/`.
    pub fn to_pos_text(&self) -> String {
        let mut out = String::new();
        for sentence in &self.sentences {
            for (i, tok) in sentence.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&tok.surface);
                if !tok.pos_tag.is_empty() || tok.surface.contains('/') {
                    out.push('/');
                    out.push_str(&tok.pos_tag);
                }
            }
            out.push('\n');
        }
        out
    }
}

/// Knobs for corpora that deviate from the plain `surface/TAG` layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseOptions {
    pub tag_separator: char,
    /// Skip lines whose first non-blank character is `<` (XML-style markup).
    pub skip_markup_lines: bool,
}

impl Default for ParseOptions {
    fn default() -> Self {
        ParseOptions {
            tag_separator: '/',
            skip_markup_lines: false,
        }
    }
}

pub fn parse_pos_file(bytes: &[u8]) -> Result<TokenizedDocument> {
    parse_pos_file_with(bytes, &ParseOptions::default())
}

pub fn parse_pos_file_with(bytes: &[u8], options: &ParseOptions) -> Result<TokenizedDocument> {
    let text = core::str::from_utf8(bytes).map_err(|e| Error::Decode {
        offset: e.valid_up_to(),
    })?;
    let mut sentences = Vec::new();
    for line in text.lines() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if options.skip_markup_lines && trimmed.starts_with('<') {
            continue;
        }
        let sentence: Vec<Token> = trimmed
            .split_whitespace()
            .map(|item| split_item(item, options.tag_separator))
            .collect();
        sentences.push(sentence);
    }
    if sentences.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    Ok(TokenizedDocument::new(sentences))
}

fn split_item(item: &str, sep: char) -> Token {
    match item.rfind(sep) {
        // a leading separator would leave an empty surface
        Some(idx) if idx > 0 => Token::new(&item[..idx], &item[idx + sep.len_utf8()..]),
        _ => Token::new(item, ""),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreprocessConfig {
    stem_rules: Vec<String>,
    pub min_stem_length: usize,
    pub stop_words: BTreeSet<String>,
    pub lowercase_fold: bool,
}

impl Default for PreprocessConfig {
    fn default() -> Self {
        PreprocessConfig {
            stem_rules: Vec::new(),
            min_stem_length: 2,
            stop_words: BTreeSet::new(),
            lowercase_fold: false,
        }
    }
}

impl PreprocessConfig {
    /// Suffix rules are deduplicated and ordered longest first (ties by code point order).
    pub fn new<I, S>(
        stem_rules: I,
        min_stem_length: usize,
        stop_words: BTreeSet<String>,
        lowercase_fold: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        if min_stem_length == 0 {
            return Err(Error::InvalidParameter("min_stem_length must be at least 1"));
        }
        let mut cfg = PreprocessConfig {
            stem_rules: Vec::new(),
            min_stem_length,
            stop_words,
            lowercase_fold,
        };
        cfg.set_stem_rules(stem_rules);
        Ok(cfg)
    }

    pub fn stem_rules(&self) -> &[String] {
        &self.stem_rules
    }

    pub fn set_stem_rules<I, S>(&mut self, rules: I)
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut rules: Vec<String> = rules
            .into_iter()
            .map(Into::into)
            .filter(|r| !r.is_empty())
            .collect();
        rules.sort_by(|a, b| {
            b.chars()
                .count()
                .cmp(&a.chars().count())
                .then_with(|| a.cmp(b))
        });
        rules.dedup();
        self.stem_rules = rules;
    }
}

/// Strips the longest matching suffix that leaves at least `min_stem_length`
/// code points. At most one rule applies.
pub fn stem(word: &str, config: &PreprocessConfig) -> String {
    let len = word.chars().count();
    for rule in &config.stem_rules {
        if let Some(rest) = word.strip_suffix(rule.as_str()) {
            if len - rule.chars().count() >= config.min_stem_length {
                return rest.to_string();
            }
        }
    }
    word.to_string()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PreprocessStats {
    pub tokens_removed: usize,
    pub sentences_dropped: usize,
}

pub fn remove_stop_words(doc: TokenizedDocument, config: &PreprocessConfig) -> TokenizedDocument {
    remove_stop_words_with_stats(doc, config).0
}

pub fn remove_stop_words_with_stats(
    doc: TokenizedDocument,
    config: &PreprocessConfig,
) -> (TokenizedDocument, PreprocessStats) {
    let mut stats = PreprocessStats::default();
    if config.stop_words.is_empty() {
        return (doc, stats);
    }
    let TokenizedDocument {
        sentences,
        source_id,
    } = doc;
    let mut kept = Vec::with_capacity(sentences.len());
    for sentence in sentences {
        let before = sentence.len();
        let filtered: Vec<Token> = sentence
            .into_iter()
            .filter(|t| !config.stop_words.contains(&t.stem))
            .collect();
        stats.tokens_removed += before - filtered.len();
        if filtered.is_empty() {
            stats.sentences_dropped += 1;
        } else {
            kept.push(filtered);
        }
    }
    (
        TokenizedDocument {
            sentences: kept,
            source_id,
        },
        stats,
    )
}

/// Case folding (optional), stemming, then stop-word removal.
///
/// The stem is always recomputed from the surface form, which makes the
/// pipeline idempotent.
pub fn preprocess(doc: TokenizedDocument, config: &PreprocessConfig) -> TokenizedDocument {
    preprocess_with_stats(doc, config).0
}

pub fn preprocess_with_stats(
    mut doc: TokenizedDocument,
    config: &PreprocessConfig,
) -> (TokenizedDocument, PreprocessStats) {
    for tok in doc.sentences.iter_mut().flatten() {
        tok.stem = if config.lowercase_fold {
            stem(&tok.surface.to_lowercase(), config)
        } else {
            stem(&tok.surface, config)
        };
    }
    remove_stop_words_with_stats(doc, config)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn cfg(rules: &[&str], min: usize, stops: &[&str]) -> PreprocessConfig {
        PreprocessConfig::new(
            rules.iter().copied(),
            min,
            stops.iter().map(|s| s.to_string()).collect(),
            false,
        )
        .unwrap()
    }

    fn words(doc: &TokenizedDocument) -> Vec<Vec<&str>> {
        doc.sentences
            .iter()
            .map(|s| s.iter().map(|t| t.stem.as_str()).collect())
            .collect()
    }

    #[test]
    fn parses_surface_tag_pairs() {
        let doc = parse_pos_file(b"w1/NN w2/VM\n").unwrap();
        assert_eq!(doc.sentences.len(), 1);
        assert_eq!(
            doc.sentences[0],
            vec![Token::new("w1", "NN"), Token::new("w2", "VM")]
        );
    }

    #[test]
    fn splits_on_last_separator() {
        let doc = parse_pos_file("a/b/NN plain /X\n\n  \nদেশ/NN\n".as_bytes()).unwrap();
        assert_eq!(doc.sentences.len(), 2);
        assert_eq!(doc.sentences[0][0], Token::new("a/b", "NN"));
        assert_eq!(doc.sentences[0][1], Token::new("plain", ""));
        assert_eq!(doc.sentences[0][2], Token::new("/X", ""));
        assert_eq!(doc.sentences[1][0], Token::new("দেশ", "NN"));
    }

    #[test]
    fn empty_input_is_rejected() {
        assert_eq!(parse_pos_file(b""), Err(Error::EmptyCorpus));
        assert_eq!(parse_pos_file(b"\n   \n"), Err(Error::EmptyCorpus));
    }

    #[test]
    fn invalid_utf8_reports_offset() {
        assert_eq!(
            parse_pos_file(b"ab/NN \xff/X"),
            Err(Error::Decode { offset: 6 })
        );
    }

    #[test]
    fn markup_lines_are_optional() {
        let input = b"<Corpus lang=\"bn\">\nw/NN\n";
        assert_eq!(parse_pos_file(input).unwrap().sentences.len(), 2);
        let opts = ParseOptions {
            tag_separator: '_',
            skip_markup_lines: true,
        };
        let doc = parse_pos_file_with(b"<Corpus>\nw_x_NN v_VM\n", &opts).unwrap();
        assert_eq!(doc.sentences.len(), 1);
        assert_eq!(doc.sentences[0][0], Token::new("w_x", "NN"));
    }

    #[test]
    fn stem_examples() {
        assert_eq!(stem("booker", &cfg(&["er"], 2, &[])), "book");
        assert_eq!(stem("er", &cfg(&["er"], 2, &[])), "er");
        assert_eq!(stem("book", &cfg(&["er", "s"], 2, &[])), "book");
    }

    #[test]
    fn stem_prefers_longest_rule_that_fits() {
        let c = cfg(&["s", "ers", "rs"], 2, &[]);
        assert_eq!(c.stem_rules(), &["ers", "rs", "s"]);
        assert_eq!(stem("bookers", &c), "book");
        // "ers" would leave 1 code point, "rs" leaves 2
        assert_eq!(stem("aers", &c), "ae");
        // Bangla plural suffix
        let bn = cfg(&["গুলো", "রা"], 2, &[]);
        assert_eq!(stem("বইগুলো", &bn), "বই");
    }

    #[test]
    fn zero_min_stem_length_is_rejected() {
        assert!(PreprocessConfig::new(["s"], 0, BTreeSet::new(), false).is_err());
    }

    #[test]
    fn stop_word_removal() {
        let doc = TokenizedDocument::new(vec![vec![
            Token::new("a", ""),
            Token::new("b", ""),
            Token::new("c", ""),
        ]]);
        let out = remove_stop_words(doc.clone(), &cfg(&[], 1, &["b"]));
        assert_eq!(words(&out), vec![vec!["a", "c"]]);
        assert_eq!(remove_stop_words(doc.clone(), &cfg(&[], 1, &[])), doc);

        let (out, stats) = remove_stop_words_with_stats(doc, &cfg(&[], 1, &["a", "b", "c"]));
        assert!(out.is_empty());
        assert_eq!(
            stats,
            PreprocessStats {
                tokens_removed: 3,
                sentences_dropped: 1
            }
        );
    }

    #[test]
    fn preprocess_stems_then_removes_stops() {
        let doc = TokenizedDocument::new(vec![vec![
            Token::new("booker", "NN"),
            Token::new("the", "DT"),
        ]]);
        let c = cfg(&["er"], 2, &["the"]);
        let out = preprocess(doc, &c);
        assert_eq!(out.token_count(), 1);
        assert_eq!(out.sentences[0][0].stem, "book");
        assert_eq!(out.sentences[0][0].surface, "booker");
        assert_eq!(preprocess(out.clone(), &c), out);
    }

    #[test]
    fn stop_words_match_the_folded_stem() {
        let mut c = cfg(&["s"], 2, &["the", "cat"]);
        c.lowercase_fold = true;
        let doc = TokenizedDocument::new(vec![vec![
            Token::new("The", ""),
            Token::new("Cats", ""),
            Token::new("Dog", ""),
        ]]);
        let out = preprocess(doc, &c);
        assert_eq!(words(&out), vec![vec!["dog"]]);
    }

    #[test]
    fn identity_config_leaves_document_unchanged() {
        let doc = parse_pos_file(b"x/NN y/VM\nz/JJ\n").unwrap();
        assert_eq!(preprocess(doc.clone(), &PreprocessConfig::default()), doc);
    }

    #[test]
    fn serializes_back_to_normalized_text() {
        let text = "a/NN b/VM\nc/JJ d\n";
        assert_eq!(parse_pos_file(text.as_bytes()).unwrap().to_pos_text(), text);
    }
}
