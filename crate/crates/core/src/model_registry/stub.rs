//! Deterministic hash-driven backend.
//!
//! Every output is a pure function of the operation, the NFC-normalized
//! input and the parameters, so results are identical across processes and
//! platforms and can be checked against an independent implementation.
//!
//! With `h = fnv1a64(nfc(text))`:
//!
//! * classify: index `h mod |labels|`, score `0.5 + (h mod 4096) / 8192`
//! * tag: the classify rule applied to each token's own hash
//! * generate: word `i` is `vocab[(h + i) mod |vocab|]`
//! * fill_mask: candidate `j` weighs `(h.rotate_left(j) mod 1000) + 1`,
//!   scores are weights over their sum
//! * embed: component `i` is nibble `i mod 16` of `h` divided by 15, with
//!   `h` re-hashed from its little-endian bytes every 16 components

use std::sync::{Arc, OnceLock};

use unicode_normalization::UnicodeNormalization;

use super::backend::{Candidate, ClassScore, InferenceBackend};
use crate::error::{Error, Result};

pub const STUB_EMBEDDING_DIM: usize = 16;

const STUB_VOCAB: &str = include_str!("../../resources/stub_vocab.txt");

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes.iter().fold(FNV_OFFSET, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(FNV_PRIME)
    })
}

/// FNV-1a 64 of the NFC form of `text`.
pub fn stub_hash(text: &str) -> u64 {
    let nfc: String = text.nfc().collect();
    fnv1a64(nfc.as_bytes())
}

pub fn stub_score(h: u64) -> f64 {
    0.5 + (h % 4096) as f64 / 8192.0
}

/// The 16-word generation and fill-mask vocabulary.
pub fn stub_vocabulary() -> &'static [String] {
    static VOCAB: OnceLock<Vec<String>> = OnceLock::new();
    VOCAB.get_or_init(|| {
        STUB_VOCAB
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(str::to_string)
            .collect()
    })
}

#[derive(Debug, Clone)]
pub struct StubBackend {
    vocab: Arc<[String]>,
    dim: usize,
}

impl Default for StubBackend {
    fn default() -> Self {
        StubBackend {
            vocab: stub_vocabulary().into(),
            dim: STUB_EMBEDDING_DIM,
        }
    }
}

impl StubBackend {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vocabulary(&self) -> &[String] {
        &self.vocab
    }
}

impl InferenceBackend for StubBackend {
    fn name(&self) -> &str {
        "stub"
    }

    fn classify(&self, text: &str, labels: &[&str]) -> Result<ClassScore> {
        if labels.is_empty() {
            return Err(Error::Input("label set is empty".into()));
        }
        let h = stub_hash(text);
        Ok(ClassScore {
            index: (h % labels.len() as u64) as usize,
            score: stub_score(h),
        })
    }

    fn tag(&self, tokens: &[&str], tagset: &[&str]) -> Result<Vec<ClassScore>> {
        if tagset.is_empty() {
            return Err(Error::Input("tag set is empty".into()));
        }
        let n = tagset.len() as u64;
        Ok(tokens
            .iter()
            .map(|t| {
                let h = stub_hash(t);
                ClassScore {
                    index: (h % n) as usize,
                    score: stub_score(h),
                }
            })
            .collect())
    }

    fn generate(&self, text: &str, n: usize) -> Result<Vec<String>> {
        let h = stub_hash(text);
        let len = self.vocab.len() as u64;
        Ok((0..n as u64)
            .map(|i| self.vocab[(h.wrapping_add(i) % len) as usize].clone())
            .collect())
    }

    fn fill_mask(&self, text: &str, k: usize) -> Result<Vec<Candidate>> {
        if k == 0 || k > self.vocab.len() {
            return Err(Error::Input(format!(
                "k must be between 1 and {}, got {k}",
                self.vocab.len()
            )));
        }
        let h = stub_hash(text);
        let weights: Vec<u64> = (0..self.vocab.len())
            .map(|j| h.rotate_left(j as u32) % 1000 + 1)
            .collect();
        let total: u64 = weights.iter().sum();
        let mut ranked: Vec<(u64, &String)> = weights.into_iter().zip(self.vocab.iter()).collect();
        ranked.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(b.1)));
        Ok(ranked
            .into_iter()
            .take(k)
            .map(|(w, token)| Candidate {
                token: token.clone(),
                score: w as f64 / total as f64,
            })
            .collect())
    }

    fn embed(&self, text: &str) -> Result<Vec<f64>> {
        let mut block = stub_hash(text);
        Ok((0..self.dim)
            .map(|i| {
                if i > 0 && i % 16 == 0 {
                    block = fnv1a64(&block.to_le_bytes());
                }
                ((block >> (4 * (i % 16))) & 0xF) as f64 / 15.0
            })
            .collect())
    }

    fn embedding_dim(&self) -> usize {
        self.dim
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_vectors() {
        assert_eq!(fnv1a64(b""), 0xcbf29ce484222325);
        assert_eq!(fnv1a64(b"a"), 0xaf63dc4c8601ec8c);
        assert_eq!(fnv1a64(b"foobar"), 0x85944171f73967e8);
    }

    #[test]
    fn vocabulary_has_sixteen_words_without_terminators() {
        let vocab = stub_vocabulary();
        assert_eq!(vocab.len(), 16);
        for w in vocab {
            assert!(!w
                .chars()
                .any(|c| c.is_whitespace() || crate::tokenizer::is_sentence_terminator(c)));
        }
    }

    #[test]
    fn hash_is_normalization_invariant() {
        assert_eq!(stub_hash("\u{0958}"), stub_hash("\u{0915}\u{093C}"));
    }

    #[test]
    fn fill_mask_rejects_bad_k() {
        let stub = StubBackend::new();
        assert!(stub.fill_mask("x", 0).is_err());
        assert!(stub.fill_mask("x", 17).is_err());
        assert_eq!(stub.fill_mask("x", 16).unwrap().len(), 16);
    }

    #[test]
    fn classify_needs_labels() {
        assert!(StubBackend::new().classify("x", &[]).is_err());
    }
}
