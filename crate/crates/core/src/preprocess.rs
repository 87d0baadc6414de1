//! Rule-based cleaning of raw Marathi text.
//!
//! The three removal steps (URLs, non-Devanagari words, stopwords) can be
//! used on their own or composed through [`clean`] with a [`CleanPolicy`].

use std::collections::HashSet;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};
use crate::tokenizer::{join_tokens, word_tokenize, Token, DANDA, DOUBLE_DANDA};

/// Name under which the bundled list is reported in errors.
pub const BUILTIN_STOPWORDS_FILE: &str = "resources/marathi_stopwords.txt";

const BUILTIN_STOPWORDS: &str = include_str!("../resources/marathi_stopwords.txt");

/// Which cleaning steps [`clean`] applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CleanPolicy {
    pub remove_urls: bool,
    pub remove_stopwords: bool,
    pub remove_non_devanagari: bool,
    pub collapse_whitespace: bool,
}

impl CleanPolicy {
    pub fn all() -> Self {
        CleanPolicy {
            remove_urls: true,
            remove_stopwords: true,
            remove_non_devanagari: true,
            collapse_whitespace: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == CleanPolicy::default()
    }
}

/// A versioned, immutable set of NFC-normalized stopwords.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StopwordList {
    version: String,
    words: HashSet<String>,
}

impl StopwordList {
    /// The list bundled with the crate.
    pub fn builtin() -> &'static StopwordList {
        static LIST: OnceLock<StopwordList> = OnceLock::new();
        LIST.get_or_init(|| {
            StopwordList::parse(BUILTIN_STOPWORDS, Path::new(BUILTIN_STOPWORDS_FILE))
                .expect("bundled stopword list is valid")
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<StopwordList> {
        let path = path.as_ref();
        let bytes = std::fs::read(path).map_err(|e| Error::Resource {
            path: path.to_path_buf(),
            reason: format!("cannot read stopword file: {e}"),
        })?;
        let text = String::from_utf8(bytes).map_err(|_| Error::Resource {
            path: path.to_path_buf(),
            reason: "stopword file is not valid UTF-8".into(),
        })?;
        StopwordList::parse(&text, path)
    }

    /// Parses the line format: `#` comments, a `# version: <v>` header and
    /// one word per line. `origin` is only used in error messages.
    pub fn parse(text: &str, origin: &Path) -> Result<StopwordList> {
        let corrupt = |reason: String| Error::Resource {
            path: PathBuf::from(origin),
            reason,
        };
        let mut version = None;
        let mut words = HashSet::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(comment) = line.strip_prefix('#') {
                if let Some(v) = comment.trim().strip_prefix("version:") {
                    version.get_or_insert_with(|| v.trim().to_string());
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let word: String = line.nfc().collect();
            if let Some(bad) = word.chars().find(|&c| !is_stopword_char(c)) {
                return Err(corrupt(format!(
                    "line {}: `{word}` contains non-Devanagari codepoint U+{:04X}",
                    lineno + 1,
                    bad as u32
                )));
            }
            words.insert(word);
        }
        let version = match version {
            Some(v) if !v.is_empty() => v,
            _ => return Err(corrupt("missing `# version:` header".into())),
        };
        Ok(StopwordList { version, words })
    }

    pub fn version(&self) -> &str {
        &self.version
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Exact whole-word lookup after NFC normalization.
    pub fn contains(&self, word: &str) -> bool {
        let nfc: String = word.nfc().collect();
        self.words.contains(&nfc)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }
}

fn is_stopword_char(c: char) -> bool {
    is_devanagari(c) || is_combining_mark(c)
}

/// Devanagari (U+0900–U+097F) or Devanagari Extended (U+A8E0–U+A8FF).
pub fn is_devanagari(c: char) -> bool {
    matches!(c, '\u{0900}'..='\u{097F}' | '\u{A8E0}'..='\u{A8FF}')
}

/// Codepoints a word may contain and still survive [`remove_non_devanagari`].
///
/// ZWNJ/ZWJ are included because Marathi spellings such as the eyelash ra
/// (`र्‍`) need them; they are format characters, not letters.
pub fn is_allowed_codepoint(c: char) -> bool {
    is_devanagari(c)
        || c == DANDA
        || c == DOUBLE_DANDA
        || c.is_ascii_digit()
        || matches!(c, '.' | ',' | '?' | '!' | '\u{200C}' | '\u{200D}')
}

fn url_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"(?i)(?:https?://|ftp://|www\.)\S+").expect("valid regex"))
}

fn space_run_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(" {2,}").expect("valid regex"))
}

/// Removes every `http://`, `https://`, `ftp://` or `www.` run up to the next
/// whitespace. Runs of spaces are collapsed and the ends trimmed.
pub fn remove_urls(text: &str) -> String {
    let replaced = url_regex().replace_all(text, " ");
    space_run_regex()
        .replace_all(&replaced, " ")
        .trim()
        .to_string()
}

/// Drops word tokens whose NFC form is in `stopwords`.
pub fn remove_stopwords(text: &str, stopwords: &StopwordList) -> String {
    let kept: Vec<Token> = word_tokenize(text)
        .into_iter()
        .filter(|t| !stopwords.contains(&t.text))
        .collect();
    join_tokens(&kept)
}

/// Drops every word token that contains a codepoint outside the allowed set
/// (Devanagari blocks, dandas, ASCII digits and `. , ? !`).
pub fn remove_non_devanagari(text: &str) -> String {
    let kept: Vec<Token> = word_tokenize(text)
        .into_iter()
        .filter(|t| t.text.chars().all(is_allowed_codepoint))
        .collect();
    join_tokens(&kept)
}

/// Replaces every run of whitespace by one space and trims the ends.
pub fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Applies the enabled steps in a fixed order: URLs, non-Devanagari words,
/// stopwords, whitespace.
pub fn clean(text: &str, policy: &CleanPolicy, stopwords: &StopwordList) -> String {
    let mut out = text.to_string();
    if policy.remove_urls {
        out = remove_urls(&out);
    }
    if policy.remove_non_devanagari {
        out = remove_non_devanagari(&out);
    }
    if policy.remove_stopwords {
        out = remove_stopwords(&out, stopwords);
    }
    if policy.collapse_whitespace {
        out = collapse_whitespace(&out);
    }
    out
}
