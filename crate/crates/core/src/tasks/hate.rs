use super::{facade_constructors, require_text, Prediction, HATE_LABELS};
use crate::error::Result;
use crate::model_registry::{Feature, LoadedModel};

/// Binary hate-speech detection.
#[derive(Debug, Clone)]
pub struct HateAnalyzer {
    model: LoadedModel,
}

facade_constructors!(HateAnalyzer, Feature::Hate);

impl HateAnalyzer {
    pub fn get_hate(&self, text: &str) -> Result<Prediction> {
        require_text(text)?;
        let out = self.model.classify(text, &HATE_LABELS)?;
        Ok(Prediction {
            label: HATE_LABELS[out.value.index].to_string(),
            score: out.value.score,
            truncated: out.truncated,
        })
    }

    pub fn get_hate_score(&self, text: &str) -> Result<f64> {
        self.get_hate(text).map(|p| p.score)
    }
}
