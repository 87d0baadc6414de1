//! Marathi (Devanagari) text analysis.
//!
//! Two ways in:
//!
//! * **Standard Flow**: [`tasks`] has one facade per feature
//!   ([`SentimentAnalyzer`], [`HateAnalyzer`], [`NerTagger`],
//!   [`Autocomplete`], [`MaskFill`], [`SimilarityAnalyzer`]) that picks the
//!   default model for you.
//! * **Model Flow**: [`model_registry`] lists the registered models per
//!   feature; [`Runtime::load_backend`] loads any of them with explicit
//!   settings.
//!
//! Rule-based [`preprocess`]ing and [`tokenizer`] functions need no model,
//! and [`datasets`] downloads and caches the supervised corpora.
//!
//! Setting `MAHANLP_BACKEND=stub` routes every model through the
//! deterministic hash-based stub, which is what the test suites use.

pub mod cli;
pub mod datasets;
mod error;
pub mod fetch;
pub mod model_registry;
pub mod preprocess;
pub mod runtime;
pub mod tasks;
pub mod tokenizer;

pub use error::{Error, Result};
pub use runtime::Runtime;
pub use tasks::{
    Autocomplete, HateAnalyzer, MaskFill, NerTagger, Prediction, SentimentAnalyzer,
    SimilarityAnalyzer,
};
