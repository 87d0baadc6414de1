//! Standard Flow: one facade per feature with every model argument
//! defaulted.
//!
//! ```no_run
//! use mahanlp::tasks::SentimentAnalyzer;
//!
//! let analyzer = SentimentAnalyzer::new()?;
//! let prediction = analyzer.get_sentiment("हा चित्रपट छान आहे")?;
//! println!("{} {:.3}", prediction.label, prediction.score);
//! # Ok::<(), mahanlp::Error>(())
//! ```
//!
//! Each facade is a thin wrapper over a [`LoadedModel`], the Model Flow
//! handle, so `SentimentAnalyzer::new()` behaves exactly like resolving the
//! default descriptor and loading it by hand.

mod autocomplete;
mod hate;
mod mask_fill;
mod sentiment;
mod similarity;
mod tagger;

use serde::{Deserialize, Serialize};

pub use autocomplete::Autocomplete;
pub use hate::HateAnalyzer;
pub use mask_fill::MaskFill;
pub use sentiment::SentimentAnalyzer;
pub use similarity::{cosine_similarity, SimilarityAnalyzer};
pub use tagger::NerTagger;

use crate::error::{Error, Result};
use crate::model_registry::{BackendConfig, Feature, LoadedModel};
use crate::runtime::Runtime;
use crate::tokenizer::Token;

pub const SENTIMENT_LABELS: [&str; 3] = ["positive", "negative", "neutral"];
pub const HATE_LABELS: [&str; 2] = ["hate", "non-hate"];
/// Outside-entity tag followed by the seven entity types.
pub const NER_TAGS: [&str; 8] = ["O", "NEP", "NEL", "NEO", "NEM", "NETI", "NED", "ED"];

/// A class label and the model's confidence in it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Prediction {
    pub label: String,
    pub score: f64,
    /// Set when the input exceeded the model's token limit.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaggedToken {
    #[serde(flatten)]
    pub token: Token,
    pub label: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaskFillResult {
    pub token_str: String,
    /// The input with the mask placeholder replaced by `token_str`.
    pub sequence: String,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceEmbedding {
    pub vector: Vec<f64>,
    pub source_text: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub truncated: bool,
}

/// Optional knobs for facade construction.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TaskOptions {
    /// Registry id or short name; `None` picks the feature's default.
    pub model_name: Option<String>,
    pub config: BackendConfig,
}

impl TaskOptions {
    pub fn model(name: impl Into<String>) -> Self {
        TaskOptions {
            model_name: Some(name.into()),
            ..Self::default()
        }
    }

    pub fn gpu(mut self, enabled: bool) -> Self {
        self.config.gpu_enabled = enabled;
        self
    }
}

fn open_model(runtime: &Runtime, feature: Feature, options: &TaskOptions) -> Result<LoadedModel> {
    let descriptor = runtime.resolve(feature, options.model_name.as_deref());
    runtime.load_backend(&descriptor, &options.config)
}

fn ensure_feature(model: &LoadedModel, feature: Feature) -> Result<()> {
    let actual = model.descriptor().feature;
    if actual != feature {
        return Err(Error::Input(format!(
            "model `{}` is registered for {actual}, not {feature}",
            model.descriptor().model_id
        )));
    }
    Ok(())
}

fn require_text(text: &str) -> Result<()> {
    if text.trim().is_empty() {
        return Err(Error::Input("text is empty".into()));
    }
    Ok(())
}

/// Shared constructors: defaults, explicit options, or an already loaded
/// Model Flow handle.
macro_rules! facade_constructors {
    ($ty:ident, $feature:expr) => {
        impl $ty {
            pub const FEATURE: $crate::model_registry::Feature = $feature;

            /// Default model, configured from the environment.
            pub fn new() -> $crate::error::Result<Self> {
                Self::with_options(
                    &$crate::runtime::Runtime::from_env()?,
                    &$crate::tasks::TaskOptions::default(),
                )
            }

            pub fn with_options(
                runtime: &$crate::runtime::Runtime,
                options: &$crate::tasks::TaskOptions,
            ) -> $crate::error::Result<Self> {
                Self::from_model($crate::tasks::open_model(runtime, Self::FEATURE, options)?)
            }

            pub fn from_model(
                model: $crate::model_registry::LoadedModel,
            ) -> $crate::error::Result<Self> {
                $crate::tasks::ensure_feature(&model, Self::FEATURE)?;
                Ok($ty { model })
            }

            pub fn model(&self) -> &$crate::model_registry::LoadedModel {
                &self.model
            }
        }
    };
}

pub(crate) use facade_constructors;
