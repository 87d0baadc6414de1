//! Model Flow: the catalog of models per feature, backend selection and the
//! inference contract shared by every backend.

mod backend;
pub mod hub;
mod stub;

use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

pub use backend::{Candidate, ClassScore, InferenceBackend};
pub use hub::{ModelArtifacts, ModelRuntime};
pub use stub::{fnv1a64, stub_hash, stub_score, stub_vocabulary, StubBackend, STUB_EMBEDDING_DIM};

use crate::error::{Error, Result};
use crate::runtime::Runtime;
use crate::tokenizer::{char_boundaries, word_tokenize};

pub const DEFAULT_MASK_TOKEN: &str = "[MASK]";
pub const DEFAULT_REVISION: &str = "main";
pub const DEFAULT_MAX_INPUT_TOKENS: usize = 512;
/// Model id of the per-feature stub entry.
pub const STUB_MODEL_ID: &str = "stub";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    Sentiment,
    Hate,
    Tagger,
    Autocomplete,
    MaskFill,
    Similarity,
}

impl Feature {
    pub const ALL: [Feature; 6] = [
        Feature::Sentiment,
        Feature::Hate,
        Feature::Tagger,
        Feature::Autocomplete,
        Feature::MaskFill,
        Feature::Similarity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Feature::Sentiment => "sentiment",
            Feature::Hate => "hate",
            Feature::Tagger => "tagger",
            Feature::Autocomplete => "autocomplete",
            Feature::MaskFill => "mask_fill",
            Feature::Similarity => "similarity",
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Feature {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Feature::ALL
            .into_iter()
            .find(|f| f.as_str() == s)
            .ok_or_else(|| Error::Catalog {
                kind: "feature",
                name: s.to_string(),
                valid: Feature::ALL
                    .iter()
                    .map(|f| f.as_str().to_string())
                    .collect(),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendKind {
    Stub,
    Hub,
}

impl BackendKind {
    pub fn as_str(self) -> &'static str {
        match self {
            BackendKind::Stub => "stub",
            BackendKind::Hub => "hub",
        }
    }
}

impl FromStr for BackendKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "stub" => Ok(BackendKind::Stub),
            "hub" => Ok(BackendKind::Hub),
            _ => Err(Error::Catalog {
                kind: "backend",
                name: s.to_string(),
                valid: vec!["stub".into(), "hub".into()],
            }),
        }
    }
}

/// A registry entry binding a feature to a concrete model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDescriptor {
    pub feature: Feature,
    pub model_id: String,
    pub revision: String,
    pub backend_kind: BackendKind,
    pub is_default: bool,
    /// Placeholder the model expects for masked-token prediction.
    pub mask_token: String,
}

impl ModelDescriptor {
    fn hub(feature: Feature, model_id: &str, is_default: bool) -> Self {
        ModelDescriptor {
            feature,
            model_id: model_id.to_string(),
            revision: DEFAULT_REVISION.to_string(),
            backend_kind: BackendKind::Hub,
            is_default,
            mask_token: DEFAULT_MASK_TOKEN.to_string(),
        }
    }

    pub fn stub(feature: Feature) -> Self {
        ModelDescriptor {
            backend_kind: BackendKind::Stub,
            ..Self::hub(feature, STUB_MODEL_ID, false)
        }
    }

    /// Short name: the part of the id after the organization prefix.
    pub fn short_name(&self) -> &str {
        self.model_id.rsplit('/').next().unwrap_or(&self.model_id)
    }

    fn matches(&self, name: &str) -> bool {
        self.model_id == name || self.short_name() == name
    }
}

/// The static feature → model catalog.
#[derive(Debug, Clone)]
pub struct Registry {
    entries: Vec<ModelDescriptor>,
}

impl Registry {
    pub fn builtin() -> &'static Registry {
        static REGISTRY: OnceLock<Registry> = OnceLock::new();
        REGISTRY.get_or_init(|| {
            use Feature::*;
            let mut entries = vec![
                ModelDescriptor::hub(Sentiment, "l3cube-pune/MarathiSentiment", true),
                ModelDescriptor::hub(Sentiment, "l3cube-pune/marathi-sentiment-md", false),
                ModelDescriptor::hub(Sentiment, "l3cube-pune/marathi-sentiment-tweets", false),
                ModelDescriptor::hub(
                    Sentiment,
                    "l3cube-pune/marathi-sentiment-movie-reviews",
                    false,
                ),
                ModelDescriptor::hub(
                    Sentiment,
                    "l3cube-pune/marathi-sentiment-political-tweets",
                    false,
                ),
                ModelDescriptor::hub(Sentiment, "l3cube-pune/marathi-sentiment-subtitles", false),
                ModelDescriptor::hub(Hate, "l3cube-pune/mahahate-bert", true),
                ModelDescriptor::hub(Hate, "l3cube-pune/mahahate-multi-roberta", false),
                ModelDescriptor::hub(Tagger, "l3cube-pune/marathi-ner", true),
                ModelDescriptor::hub(Autocomplete, "l3cube-pune/marathi-gpt", true),
                ModelDescriptor::hub(MaskFill, "l3cube-pune/marathi-bert-v2", true),
                ModelDescriptor {
                    mask_token: "<mask>".into(),
                    ..ModelDescriptor::hub(MaskFill, "l3cube-pune/marathi-roberta", false)
                },
                ModelDescriptor::hub(MaskFill, "l3cube-pune/marathi-albert", false),
                ModelDescriptor::hub(
                    Similarity,
                    "l3cube-pune/marathi-sentence-similarity-sbert",
                    true,
                ),
                ModelDescriptor::hub(Similarity, "l3cube-pune/marathi-sentence-bert-nli", false),
            ];
            entries.extend(Feature::ALL.into_iter().map(ModelDescriptor::stub));
            Registry { entries }
        })
    }

    pub fn entries(&self) -> &[ModelDescriptor] {
        &self.entries
    }

    /// All models registered for `feature`; exactly one is flagged default.
    pub fn list_models(&self, feature: Feature) -> Vec<ModelDescriptor> {
        self.entries
            .iter()
            .filter(|d| d.feature == feature)
            .cloned()
            .collect()
    }

    pub fn default_model(&self, feature: Feature) -> &ModelDescriptor {
        self.entries
            .iter()
            .find(|d| d.feature == feature && d.is_default)
            .expect("every feature has a default model")
    }

    /// Picks the descriptor for `model_name`, matched by full id or short
    /// name. Unknown names pass through as hub models and are only
    /// validated when loaded.
    pub fn resolve(&self, feature: Feature, model_name: Option<&str>) -> ModelDescriptor {
        let Some(name) = model_name else {
            return self.default_model(feature).clone();
        };
        self.entries
            .iter()
            .find(|d| d.feature == feature && d.matches(name))
            .cloned()
            .unwrap_or_else(|| ModelDescriptor::hub(feature, name, false))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BackendConfig {
    pub gpu_enabled: bool,
    /// Inputs longer than this many word tokens are cut at the backend
    /// boundary and the result is flagged as truncated.
    pub max_input_tokens: usize,
}

impl Default for BackendConfig {
    fn default() -> Self {
        BackendConfig {
            gpu_enabled: false,
            max_input_tokens: DEFAULT_MAX_INPUT_TOKENS,
        }
    }
}

impl BackendConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_input_tokens == 0 {
            return Err(Error::Input("max_input_tokens must be at least 1".into()));
        }
        Ok(())
    }
}

/// A backend output plus whether its input was truncated to fit.
#[derive(Debug, Clone, PartialEq)]
pub struct Inference<T> {
    pub value: T,
    pub truncated: bool,
}

/// A backend bound to its descriptor and configuration.
///
/// All calls go through here so input-length limits and output contracts
/// are enforced the same way for every backend.
#[derive(Clone)]
pub struct LoadedModel {
    descriptor: ModelDescriptor,
    config: BackendConfig,
    backend: Arc<dyn InferenceBackend>,
}

impl fmt::Debug for LoadedModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LoadedModel")
            .field("descriptor", &self.descriptor)
            .field("config", &self.config)
            .field("backend", &self.backend.name())
            .finish()
    }
}

impl LoadedModel {
    pub fn new(
        descriptor: ModelDescriptor,
        config: BackendConfig,
        backend: Arc<dyn InferenceBackend>,
    ) -> Self {
        LoadedModel {
            descriptor,
            config,
            backend,
        }
    }

    pub fn descriptor(&self) -> &ModelDescriptor {
        &self.descriptor
    }

    pub fn config(&self) -> &BackendConfig {
        &self.config
    }

    pub fn backend(&self) -> &Arc<dyn InferenceBackend> {
        &self.backend
    }

    pub fn classify(&self, text: &str, labels: &[&str]) -> Result<Inference<ClassScore>> {
        let (input, truncated) = keep_prefix(text, self.config.max_input_tokens);
        let value = self.backend.classify(input, labels)?;
        if value.index >= labels.len() {
            return Err(
                self.contract_violation(format!("label index {} out of range", value.index))
            );
        }
        self.check_score(value.score)?;
        Ok(Inference { value, truncated })
    }

    /// Tags each token. Sequences longer than the input limit are processed
    /// in consecutive windows, so the output always aligns with `tokens`.
    pub fn tag(&self, tokens: &[&str], tagset: &[&str]) -> Result<Vec<ClassScore>> {
        let mut out = Vec::with_capacity(tokens.len());
        for window in tokens.chunks(self.config.max_input_tokens) {
            let scores = self.backend.tag(window, tagset)?;
            if scores.len() != window.len() {
                return Err(self.contract_violation(format!(
                    "{} tags for {} tokens",
                    scores.len(),
                    window.len()
                )));
            }
            for s in &scores {
                if s.index >= tagset.len() {
                    return Err(
                        self.contract_violation(format!("tag index {} out of range", s.index))
                    );
                }
                self.check_score(s.score)?;
            }
            out.extend(scores);
        }
        Ok(out)
    }

    /// Generation conditions on the end of the text, so long inputs keep
    /// their last `max_input_tokens` tokens.
    pub fn generate(&self, text: &str, n: usize) -> Result<Inference<Vec<String>>> {
        let (input, truncated) = keep_suffix(text, self.config.max_input_tokens);
        let value = self.backend.generate(input, n)?;
        if value.len() != n {
            return Err(self.contract_violation(format!("{} words for n = {n}", value.len())));
        }
        Ok(Inference { value, truncated })
    }

    /// Long inputs keep a window of tokens that contains the mask.
    pub fn fill_mask(&self, text: &str, k: usize) -> Result<Inference<Vec<Candidate>>> {
        let (input, truncated) = keep_window_around(
            text,
            &self.descriptor.mask_token,
            self.config.max_input_tokens,
        );
        let value = self.backend.fill_mask(input, k)?;
        if value.len() != k {
            return Err(self.contract_violation(format!("{} candidates for k = {k}", value.len())));
        }
        for c in &value {
            self.check_score(c.score)?;
        }
        Ok(Inference { value, truncated })
    }

    pub fn embed(&self, text: &str) -> Result<Inference<Vec<f64>>> {
        let (input, truncated) = keep_prefix(text, self.config.max_input_tokens);
        let value = self.backend.embed(input)?;
        if value.len() != self.backend.embedding_dim() {
            return Err(self.contract_violation(format!(
                "embedding has {} components, expected {}",
                value.len(),
                self.backend.embedding_dim()
            )));
        }
        Ok(Inference { value, truncated })
    }

    fn check_score(&self, score: f64) -> Result<()> {
        if (0.0..=1.0).contains(&score) {
            Ok(())
        } else {
            Err(self.contract_violation(format!("score {score} outside [0, 1]")))
        }
    }

    fn contract_violation(&self, what: String) -> Error {
        Error::Load {
            model_id: self.descriptor.model_id.clone(),
            reason: format!(
                "backend `{}` broke its contract: {what}",
                self.backend.name()
            ),
        }
    }
}

fn keep_prefix(text: &str, max_tokens: usize) -> (&str, bool) {
    let tokens = word_tokenize(text);
    if tokens.len() <= max_tokens {
        return (text, false);
    }
    let bounds = char_boundaries(text);
    (&text[..bounds[tokens[max_tokens - 1].end]], true)
}

fn keep_suffix(text: &str, max_tokens: usize) -> (&str, bool) {
    let tokens = word_tokenize(text);
    if tokens.len() <= max_tokens {
        return (text, false);
    }
    let bounds = char_boundaries(text);
    (
        &text[bounds[tokens[tokens.len() - max_tokens].start]..],
        true,
    )
}

fn keep_window_around<'a>(text: &'a str, mask: &str, max_tokens: usize) -> (&'a str, bool) {
    let tokens = word_tokenize(text);
    if tokens.len() <= max_tokens {
        return (text, false);
    }
    let bounds = char_boundaries(text);
    let mask_idx = text
        .find(mask)
        .and_then(|byte| {
            tokens
                .iter()
                .position(|t| bounds[t.start] <= byte && byte < bounds[t.end])
        })
        .unwrap_or(0);
    let first = (mask_idx + 1).saturating_sub(max_tokens);
    let last = first + max_tokens - 1;
    (
        &text[bounds[tokens[first].start]..bounds[tokens[last].end]],
        true,
    )
}

/// Resolves and loads through the environment-configured [`Runtime`].
pub fn load_backend(descriptor: &ModelDescriptor, config: &BackendConfig) -> Result<LoadedModel> {
    Runtime::from_env()?.load_backend(descriptor, config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_the_catalog() {
        let reg = Registry::builtin();
        assert_eq!(
            reg.default_model(Feature::Tagger).model_id,
            "l3cube-pune/marathi-ner"
        );
        assert_eq!(
            reg.default_model(Feature::MaskFill).model_id,
            "l3cube-pune/marathi-bert-v2"
        );
        for f in Feature::ALL {
            let listed = reg.list_models(f);
            assert!(!listed.is_empty());
            assert_eq!(listed.iter().filter(|d| d.is_default).count(), 1);
            assert!(listed.iter().all(|d| !d.model_id.is_empty()));
        }
    }

    #[test]
    fn unknown_feature_is_a_catalog_error() {
        let err = "bogus".parse::<Feature>().unwrap_err();
        assert!(matches!(
            err,
            Error::Catalog {
                kind: "feature",
                ..
            }
        ));
        assert!(err.to_string().contains("mask_fill"));
    }

    #[test]
    fn resolve_variants() {
        let reg = Registry::builtin();
        assert_eq!(
            reg.resolve(Feature::Sentiment, None).model_id,
            "l3cube-pune/MarathiSentiment"
        );
        let hate = reg.resolve(Feature::Hate, Some("l3cube-pune/mahahate-bert"));
        assert!(hate.is_default);
        assert_eq!(reg.resolve(Feature::Hate, Some("mahahate-bert")), hate);
        let custom = reg.resolve(Feature::Sentiment, Some("custom/x"));
        assert_eq!(custom.backend_kind, BackendKind::Hub);
        assert_eq!(custom.model_id, "custom/x");
        assert!(!custom.is_default);
        assert_eq!(
            reg.resolve(Feature::Similarity, Some("stub")).backend_kind,
            BackendKind::Stub
        );
        assert_eq!(
            reg.resolve(Feature::MaskFill, Some("marathi-roberta"))
                .mask_token,
            "<mask>"
        );
    }

    #[test]
    fn truncation_windows() {
        let text = "अ ब क ड इ";
        assert_eq!(keep_prefix(text, 10), (text, false));
        assert_eq!(keep_prefix(text, 2), ("अ ब", true));
        assert_eq!(keep_suffix(text, 2), ("ड इ", true));
        let masked = "अ ब [MASK] ड इ";
        assert_eq!(keep_window_around(masked, "[MASK]", 2), ("ब [MASK]", true));
        assert_eq!(
            keep_window_around("[MASK] ब क", "[MASK]", 1),
            ("[MASK]", true)
        );
    }

    #[test]
    fn truncation_is_flagged() {
        let config = BackendConfig {
            gpu_enabled: false,
            max_input_tokens: 2,
        };
        let model = LoadedModel::new(
            ModelDescriptor::stub(Feature::Sentiment),
            config,
            Arc::new(StubBackend::new()),
        );
        let long = model.classify("अ ब क", &["x", "y"]).unwrap();
        let short = model.classify("अ ब", &["x", "y"]).unwrap();
        assert!(long.truncated);
        assert!(!short.truncated);
        assert_eq!(long.value, short.value);
        let tags = model.tag(&["अ", "ब", "क", "ड", "इ"], &["O", "X"]).unwrap();
        assert_eq!(tags.len(), 5);
    }

    #[test]
    fn zero_token_limit_is_rejected() {
        let cfg = BackendConfig {
            gpu_enabled: false,
            max_input_tokens: 0,
        };
        assert!(cfg.validate().is_err());
    }
}
