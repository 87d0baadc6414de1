use super::{facade_constructors, require_text, Prediction, SENTIMENT_LABELS};
use crate::error::Result;
use crate::model_registry::{Feature, LoadedModel};

/// Three-way sentiment: positive, negative or neutral.
#[derive(Debug, Clone)]
pub struct SentimentAnalyzer {
    model: LoadedModel,
}

facade_constructors!(SentimentAnalyzer, Feature::Sentiment);

impl SentimentAnalyzer {
    pub fn get_sentiment(&self, text: &str) -> Result<Prediction> {
        require_text(text)?;
        let out = self.model.classify(text, &SENTIMENT_LABELS)?;
        Ok(Prediction {
            label: SENTIMENT_LABELS[out.value.index].to_string(),
            score: out.value.score,
            truncated: out.truncated,
        })
    }

    /// Confidence of the predicted class, not a signed polarity.
    pub fn get_polarity_score(&self, text: &str) -> Result<f64> {
        self.get_sentiment(text).map(|p| p.score)
    }
}
