mod common;

use mahanlp::tokenizer::{is_detachable_punct, sentence_tokenize, word_tokenize};
use proptest::prelude::*;

fn slice(s: &str, start: usize, end: usize) -> String {
    s.chars().skip(start).take(end - start).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1024))]

    #[test]
    fn word_offsets_round_trip(s in common::mixed_script()) {
        let tokens = word_tokenize(&s);
        let mut prev_end = 0;
        for t in &tokens {
            prop_assert!(t.start < t.end);
            prop_assert!(t.start >= prev_end);
            prop_assert_eq!(slice(&s, t.start, t.end), t.text.clone());
            prev_end = t.end;
        }
    }

    #[test]
    fn words_cover_all_non_whitespace(s in common::mixed_script()) {
        let covered: String = word_tokenize(&s).into_iter().map(|t| t.text).collect();
        let expected: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(covered, expected);
    }

    #[test]
    fn detached_punctuation_is_single_char(s in common::mixed_script()) {
        for t in word_tokenize(&s) {
            if t.text.chars().count() > 1 {
                let first = t.text.chars().next().unwrap();
                let last = t.text.chars().last().unwrap();
                prop_assert!(!is_detachable_punct(first) && !is_detachable_punct(last), "{:?}", t);
            }
        }
    }

    #[test]
    fn sentence_offsets_round_trip(s in common::mixed_script()) {
        let mut prev_end = 0;
        for span in sentence_tokenize(&s) {
            prop_assert!(!span.text.is_empty());
            prop_assert_eq!(span.text.trim(), span.text.as_str());
            prop_assert!(span.start >= prev_end);
            prop_assert_eq!(slice(&s, span.start, span.end), span.text.clone());
            prev_end = span.end;
        }
    }

    #[test]
    fn sentences_and_words_agree(s in common::mixed_script()) {
        let from_sentences: Vec<(String, usize, usize)> = sentence_tokenize(&s)
            .into_iter()
            .flat_map(|span| {
                word_tokenize(&span.text)
                    .into_iter()
                    .map(move |t| (t.text, t.start + span.start, t.end + span.start))
            })
            .collect();
        let direct: Vec<(String, usize, usize)> =
            word_tokenize(&s).into_iter().map(|t| (t.text, t.start, t.end)).collect();
        prop_assert_eq!(from_sentences, direct);
    }

    #[test]
    fn tokenizers_are_deterministic(s in common::mixed_script()) {
        prop_assert_eq!(word_tokenize(&s), word_tokenize(&s));
        prop_assert_eq!(sentence_tokenize(&s), sentence_tokenize(&s));
    }
}
