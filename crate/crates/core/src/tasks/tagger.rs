use super::{facade_constructors, TaggedToken, NER_TAGS};
use crate::error::Result;
use crate::model_registry::{Feature, LoadedModel};
use crate::tokenizer::{word_tokenize, Token};

/// Per-token named-entity labels. No span merging: every token gets its own
/// label from [`NER_TAGS`].
#[derive(Debug, Clone)]
pub struct NerTagger {
    model: LoadedModel,
}

facade_constructors!(NerTagger, Feature::Tagger);

impl NerTagger {
    pub fn get_tokens(&self, text: &str) -> Vec<Token> {
        word_tokenize(text)
    }

    pub fn get_token_labels(&self, text: &str) -> Result<Vec<TaggedToken>> {
        let tokens = word_tokenize(text);
        if tokens.is_empty() {
            return Ok(Vec::new());
        }
        let words: Vec<&str> = tokens.iter().map(|t| t.text.as_str()).collect();
        let tags = self.model.tag(&words, &NER_TAGS)?;
        Ok(tokens
            .into_iter()
            .zip(tags)
            .map(|(token, tag)| TaggedToken {
                token,
                label: NER_TAGS[tag.index].to_string(),
                score: tag.score,
            })
            .collect())
    }
}
