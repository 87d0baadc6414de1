use super::{facade_constructors, require_text};
use crate::error::{Error, Result};
use crate::model_registry::{Feature, LoadedModel};
use crate::tokenizer::is_sentence_terminator;

#[derive(Debug, Clone)]
pub struct Autocomplete {
    model: LoadedModel,
}

facade_constructors!(Autocomplete, Feature::Autocomplete);

impl Autocomplete {
    /// The next `n` words after `text`.
    pub fn next_word(&self, text: &str, n: usize) -> Result<Vec<String>> {
        require_text(text)?;
        if n == 0 {
            return Err(Error::Input("n must be at least 1".into()));
        }
        Ok(self.model.generate(text, n)?.value)
    }

    /// Appends up to `max_new_words` words, stopping after a word that ends
    /// a sentence. The result always starts with `text` unchanged.
    pub fn complete_sentence(&self, text: &str, max_new_words: usize) -> Result<String> {
        require_text(text)?;
        if max_new_words == 0 {
            return Err(Error::Input("max_new_words must be at least 1".into()));
        }
        let words = self.model.generate(text, max_new_words)?.value;
        let mut out = text.to_string();
        for word in words {
            if !out.ends_with(char::is_whitespace) {
                out.push(' ');
            }
            out.push_str(&word);
            if word.ends_with(is_sentence_terminator) {
                break;
            }
        }
        Ok(out)
    }
}
