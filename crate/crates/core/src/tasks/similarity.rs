use super::{facade_constructors, require_text, SentenceEmbedding};
use crate::error::{Error, Result};
use crate::model_registry::{Feature, LoadedModel};

#[derive(Debug, Clone)]
pub struct SimilarityAnalyzer {
    model: LoadedModel,
}

facade_constructors!(SimilarityAnalyzer, Feature::Similarity);

impl SimilarityAnalyzer {
    pub fn embedding_dim(&self) -> usize {
        self.model.backend().embedding_dim()
    }

    pub fn embed_sentences<S: AsRef<str>>(&self, texts: &[S]) -> Result<Vec<SentenceEmbedding>> {
        if let Some(i) = texts.iter().position(|t| t.as_ref().trim().is_empty()) {
            return Err(Error::Input(format!("text at index {i} is empty")));
        }
        texts
            .iter()
            .map(|t| {
                let out = self.model.embed(t.as_ref())?;
                Ok(SentenceEmbedding {
                    vector: out.value,
                    source_text: t.as_ref().to_string(),
                    truncated: out.truncated,
                })
            })
            .collect()
    }

    /// Cosine similarity with negatives clamped to 0, so the result is in `[0, 1]`.
    pub fn get_similarity_score(&self, a: &str, b: &str) -> Result<f64> {
        require_text(a)?;
        require_text(b)?;
        let ea = self.model.embed(a)?.value;
        let eb = self.model.embed(b)?.value;
        Ok(cosine_similarity(&ea, &eb).clamp(0.0, 1.0))
    }
}

/// Plain cosine; 0 when either vector has zero norm.
///
/// Computed as `dot / sqrt(|a|² · |b|²)`, which is exactly 1 for a vector
/// against itself and exactly symmetric in its arguments.
pub fn cosine_similarity(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let na: f64 = a.iter().map(|x| x * x).sum();
    let nb: f64 = b.iter().map(|x| x * x).sum();
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    dot / (na * nb).sqrt()
}
