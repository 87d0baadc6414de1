//! Sentence segmentation and word tokenization for Devanagari text.
//!
//! All offsets are codepoint offsets into the source string, never byte
//! offsets. `source.chars().skip(start).take(end - start)` reproduces the
//! span text.

use serde::{Deserialize, Serialize};

pub const DANDA: char = '\u{0964}';
pub const DOUBLE_DANDA: char = '\u{0965}';

const SENTENCE_TERMINATORS: [char; 5] = [DANDA, DOUBLE_DANDA, '.', '?', '!'];

/// Punctuation peeled off the edges of a whitespace-delimited chunk.
const DETACHABLE: [char; 11] = [
    DANDA,
    DOUBLE_DANDA,
    '.',
    ',',
    '?',
    '!',
    '\'',
    '"',
    '(',
    ')',
    '-',
];

/// A word-level span of the source text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    /// Codepoint offset of the first character.
    pub start: usize,
    /// Codepoint offset one past the last character.
    pub end: usize,
}

/// A sentence-level span of the source text, terminator included.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SentenceSpan {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

pub fn is_sentence_terminator(c: char) -> bool {
    SENTENCE_TERMINATORS.contains(&c)
}

pub fn is_detachable_punct(c: char) -> bool {
    DETACHABLE.contains(&c)
}

/// Splits `text` into sentences.
///
/// A sentence ends after a terminator (danda, double danda, `.`, `?`, `!`)
/// that is followed by whitespace or the end of input, and at every newline.
/// Spans are trimmed and empty spans are dropped. There is no abbreviation
/// handling, so `डॉ. ` ends a sentence.
pub fn sentence_tokenize(text: &str) -> Vec<SentenceSpan> {
    let chars: Vec<char> = text.chars().collect();
    let mut spans = Vec::new();
    let mut seg_start = 0;
    for i in 0..chars.len() {
        let c = chars[i];
        let at_boundary = c == '\n'
            || (is_sentence_terminator(c)
                && chars.get(i + 1).is_none_or(|next| next.is_whitespace()));
        if at_boundary {
            push_trimmed(&chars, seg_start, i + 1, &mut spans);
            seg_start = i + 1;
        }
    }
    push_trimmed(&chars, seg_start, chars.len(), &mut spans);
    spans
}

fn push_trimmed(chars: &[char], mut start: usize, mut end: usize, out: &mut Vec<SentenceSpan>) {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start < end {
        out.push(SentenceSpan {
            text: chars[start..end].iter().collect(),
            start,
            end,
        });
    }
}

/// Splits `text` into word tokens.
///
/// Chunks are separated by Unicode whitespace. Leading and trailing
/// punctuation from the detachable set becomes one token per character;
/// punctuation inside a chunk (`३.५`, `एक-दोन`) stays put.
pub fn word_tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        split_chunk(&chars, start, i, &mut tokens);
    }
    tokens
}

fn split_chunk(chars: &[char], start: usize, end: usize, out: &mut Vec<Token>) {
    let make = |s: usize, e: usize| Token {
        text: chars[s..e].iter().collect(),
        start: s,
        end: e,
    };
    let mut lo = start;
    let mut hi = end;
    while lo < hi && is_detachable_punct(chars[lo]) {
        out.push(make(lo, lo + 1));
        lo += 1;
    }
    let mut trailing = Vec::new();
    while hi > lo && is_detachable_punct(chars[hi - 1]) {
        hi -= 1;
        trailing.push(hi);
    }
    if lo < hi {
        out.push(make(lo, hi));
    }
    out.extend(trailing.into_iter().rev().map(|p| make(p, p + 1)));
}

/// Byte offset of every codepoint boundary in `text`, including the end.
pub(crate) fn char_boundaries(text: &str) -> Vec<usize> {
    text.char_indices()
        .map(|(b, _)| b)
        .chain(std::iter::once(text.len()))
        .collect()
}

/// Joins tokens back into text. Tokens that touched in the source stay glued;
/// any gap collapses to a single space.
pub(crate) fn join_tokens<'a>(tokens: impl IntoIterator<Item = &'a Token>) -> String {
    let mut out = String::new();
    let mut prev_end: Option<usize> = None;
    for tok in tokens {
        if let Some(end) = prev_end {
            if end != tok.start {
                out.push(' ');
            }
        }
        out.push_str(&tok.text);
        prev_end = Some(tok.end);
    }
    out
}
