use super::{facade_constructors, MaskFillResult};
use crate::error::{Error, Result};
use crate::model_registry::{Feature, LoadedModel};

/// Masked-word prediction.
#[derive(Debug, Clone)]
pub struct MaskFill {
    model: LoadedModel,
}

facade_constructors!(MaskFill, Feature::MaskFill);

impl MaskFill {
    pub const DEFAULT_TOP_K: usize = 5;

    /// Placeholder this model expects, `[MASK]` unless the descriptor says
    /// otherwise.
    pub fn mask_token(&self) -> &str {
        &self.model.descriptor().mask_token
    }

    /// The `k` best fillers for the single mask in `text`, best first.
    pub fn predict_mask(&self, text: &str, k: usize) -> Result<Vec<MaskFillResult>> {
        let mask = self.mask_token();
        let found = text.matches(mask).count();
        if found != 1 {
            return Err(Error::Input(format!(
                "text must contain exactly one `{mask}` placeholder, found {found}"
            )));
        }
        if k == 0 {
            return Err(Error::Input("k must be at least 1".into()));
        }
        let (before, after) = text.split_once(mask).expect("one mask present");
        let candidates = self.model.fill_mask(text, k)?.value;
        Ok(candidates
            .into_iter()
            .map(|c| MaskFillResult {
                sequence: format!("{before}{}{after}", c.token),
                token_str: c.token,
                score: c.score,
            })
            .collect())
    }
}
