use serde::{Deserialize, Serialize};

use crate::error::Result;

/// A class (or tag) index with its confidence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassScore {
    pub index: usize,
    pub score: f64,
}

/// One fill-mask candidate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub token: String,
    pub score: f64,
}

/// The operations every inference engine provides.
///
/// Contract: scores lie in `[0, 1]`; `fill_mask` returns its candidates in
/// descending score order with ties broken by ascending token string; `embed`
/// always returns [`embedding_dim`](Self::embedding_dim) components.
pub trait InferenceBackend: Send + Sync {
    fn name(&self) -> &str;

    /// Whether concurrent calls on one instance are allowed. Backends that
    /// return `false` must be driven from a single thread.
    fn is_thread_safe(&self) -> bool {
        true
    }

    fn classify(&self, text: &str, labels: &[&str]) -> Result<ClassScore>;

    fn tag(&self, tokens: &[&str], tagset: &[&str]) -> Result<Vec<ClassScore>>;

    fn generate(&self, text: &str, n: usize) -> Result<Vec<String>>;

    fn fill_mask(&self, text: &str, k: usize) -> Result<Vec<Candidate>>;

    fn embed(&self, text: &str) -> Result<Vec<f64>>;

    fn embedding_dim(&self) -> usize;
}
