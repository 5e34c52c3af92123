use std::collections::BTreeSet;

use proptest::prelude::*;
use wordrank_core::corpus::{
    parse_pos_file, preprocess, remove_stop_words, stem, PreprocessConfig, Token,
    TokenizedDocument,
};

const ALPHABET: &[&str] = &["a", "b", "s", "er", "ক", "ে", "র", "/"];

fn word() -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(ALPHABET), 1..6).prop_map(|p| p.concat())
}

fn tag() -> impl Strategy<Value = String> {
    prop::sample::select(&["NN", "VM", "JJ", ""][..]).prop_map(String::from)
}

fn document() -> impl Strategy<Value = TokenizedDocument> {
    prop::collection::vec(prop::collection::vec((word(), tag()), 1..8), 1..6).prop_map(|s| {
        TokenizedDocument::new(
            s.into_iter()
                .map(|toks| toks.into_iter().map(|(w, t)| Token::new(w, t)).collect())
                .collect(),
        )
    })
}

fn config() -> impl Strategy<Value = PreprocessConfig> {
    (
        prop::collection::vec(word(), 0..4),
        1usize..4,
        prop::collection::btree_set(word(), 0..4),
        any::<bool>(),
    )
        .prop_map(|(rules, min, stops, fold)| PreprocessConfig::new(rules, min, stops, fold).unwrap())
}

proptest! {
    #[test]
    fn preprocess_is_idempotent(doc in document(), cfg in config()) {
        let once = preprocess(doc, &cfg);
        prop_assert_eq!(preprocess(once.clone(), &cfg), once);
    }

    #[test]
    fn stem_never_grows_or_undercuts_min(w in word(), cfg in config()) {
        let s = stem(&w, &cfg);
        prop_assert!(s.chars().count() <= w.chars().count());
        prop_assert!(w.ends_with(&s[s.len()..]));
        prop_assert!(w.starts_with(&s));
        if w.chars().count() >= cfg.min_stem_length {
            prop_assert!(s.chars().count() >= cfg.min_stem_length);
        }
    }

    #[test]
    fn stop_removal_never_adds_tokens(doc in document(), cfg in config()) {
        let before = doc.token_count();
        let after = remove_stop_words(doc, &cfg);
        prop_assert!(after.token_count() <= before);
        prop_assert!(after.sentences.iter().all(|s| !s.is_empty()));
    }

    #[test]
    fn parse_after_serialize_is_stable(doc in document()) {
        let text = doc.to_pos_text();
        let parsed = parse_pos_file(text.as_bytes()).unwrap();
        prop_assert_eq!(parse_pos_file(parsed.to_pos_text().as_bytes()).unwrap(), parsed.clone());
        prop_assert_eq!(parsed.to_pos_text(), parse_pos_file(text.as_bytes()).unwrap().to_pos_text());
    }

    #[test]
    fn normalized_text_round_trips_bytewise(
        lines in prop::collection::vec(prop::collection::vec(("[a-zক-হ]{1,4}", "[A-Z]{1,3}"), 1..6), 1..5)
    ) {
        let text: String = lines
            .iter()
            .map(|l| l.iter().map(|(w, t)| format!("{w}/{t}")).collect::<Vec<_>>().join(" ") + "\n")
            .collect();
        prop_assert_eq!(parse_pos_file(text.as_bytes()).unwrap().to_pos_text(), text);
    }
}

#[test]
fn one_stemmable_token_and_one_stop_word() {
    let doc = parse_pos_file("বইগুলো/NN এবং/CC\n".as_bytes()).unwrap();
    let cfg = PreprocessConfig::new(
        ["গুলো"],
        2,
        BTreeSet::from(["এবং".to_string()]),
        false,
    )
    .unwrap();
    let out = preprocess(doc, &cfg);
    assert_eq!(out.token_count(), 1);
    assert_eq!(out.sentences[0][0].stem, "বই");
    assert_eq!(out.sentences[0][0].pos_tag, "NN");
}
