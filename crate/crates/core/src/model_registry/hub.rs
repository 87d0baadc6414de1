//! Model hub adapter.
//!
//! Downloads a model's artifacts into
//! `<home>/models/<model_id>/<revision>/` and hands them to a registered
//! [`ModelRuntime`] that executes the network. The crate itself ships no
//! tensor runtime; without one, hub models fail to load with a clear error.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use super::{BackendConfig, InferenceBackend, LoadedModel, ModelDescriptor};
use crate::error::{Error, Result};
use crate::fetch::Fetcher;

pub const DEFAULT_HUB_ENDPOINT: &str = "https://huggingface.co";

const CONFIG_FILE: &str = "config.json";
const WEIGHT_FILES: [&str; 2] = ["model.safetensors", "pytorch_model.bin"];
const AUX_FILES: [&str; 9] = [
    "tokenizer.json",
    "tokenizer_config.json",
    "special_tokens_map.json",
    "vocab.txt",
    "vocab.json",
    "merges.txt",
    "sentencepiece.bpe.model",
    "modules.json",
    "sentence_bert_config.json",
];
const COMPLETE_MARKER: &str = ".complete";

/// Downloaded model files plus the parsed `config.json`.
#[derive(Debug, Clone)]
pub struct ModelArtifacts {
    pub model_id: String,
    pub revision: String,
    pub dir: PathBuf,
    pub config: serde_json::Value,
    /// File names present in `dir`.
    pub files: Vec<String>,
}

impl ModelArtifacts {
    /// Class labels from `config.json`'s `id2label`, ordered by id.
    pub fn id2label(&self) -> Vec<String> {
        let Some(map) = self.config.get("id2label").and_then(|v| v.as_object()) else {
            return Vec::new();
        };
        let mut pairs: Vec<(usize, String)> = map
            .iter()
            .filter_map(|(k, v)| Some((k.parse().ok()?, v.as_str()?.to_string())))
            .collect();
        pairs.sort();
        pairs.into_iter().map(|(_, l)| l).collect()
    }
}

/// Executes downloaded hub models.
pub trait ModelRuntime: Send + Sync {
    fn name(&self) -> &str;

    fn gpu_available(&self) -> bool;

    fn open(
        &self,
        artifacts: &ModelArtifacts,
        config: &BackendConfig,
    ) -> Result<Arc<dyn InferenceBackend>>;
}

pub(crate) struct HubLoader<'a> {
    pub home: &'a Path,
    pub endpoint: &'a str,
    pub fetcher: &'a dyn Fetcher,
    pub runtime: Option<&'a dyn ModelRuntime>,
}

impl HubLoader<'_> {
    pub fn model_dir(&self, descriptor: &ModelDescriptor) -> PathBuf {
        let mut dir = self.home.join("models");
        for part in descriptor.model_id.split('/') {
            dir.push(part);
        }
        dir.join(&descriptor.revision)
    }

    pub fn load(
        &self,
        descriptor: &ModelDescriptor,
        config: &BackendConfig,
    ) -> Result<LoadedModel> {
        if config.gpu_enabled && !self.runtime.is_some_and(|r| r.gpu_available()) {
            return Err(Error::Capability(format!(
                "GPU requested for `{}` but no GPU-capable runtime is available",
                descriptor.model_id
            )));
        }
        let artifacts = self.download(descriptor)?;
        let runtime = self.runtime.ok_or_else(|| Error::Load {
            model_id: descriptor.model_id.clone(),
            reason: format!(
                "artifacts cached in `{}` but no inference runtime is registered",
                artifacts.dir.display()
            ),
        })?;
        let backend = runtime.open(&artifacts, config)?;
        Ok(LoadedModel::new(descriptor.clone(), *config, backend))
    }

    /// Fetches the model files once; later calls only read the cache.
    pub fn download(&self, descriptor: &ModelDescriptor) -> Result<ModelArtifacts> {
        validate_id(&descriptor.model_id)?;
        validate_id(&descriptor.revision)?;
        let dir = self.model_dir(descriptor);
        fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;
        let lock_path = dir.join(".lock");
        let lock = File::create(&lock_path).map_err(|e| Error::io(&lock_path, e))?;
        lock.lock().map_err(|e| Error::io(&lock_path, e))?;

        if !dir.join(COMPLETE_MARKER).exists() {
            let unavailable = |reason: String| Error::Load {
                model_id: descriptor.model_id.clone(),
                reason,
            };
            self.fetch_file(descriptor, &dir, CONFIG_FILE)
                .map_err(|e| unavailable(format!("model unavailable: {e}")))?;
            let mut have_weights = false;
            for name in WEIGHT_FILES {
                if have_weights {
                    break;
                }
                have_weights = self.fetch_file(descriptor, &dir, name).is_ok();
            }
            if !have_weights {
                return Err(unavailable(format!(
                    "none of {} could be fetched",
                    WEIGHT_FILES.join(", ")
                )));
            }
            for name in AUX_FILES {
                // not every model family ships every tokenizer file
                let _ = self.fetch_file(descriptor, &dir, name);
            }
            let marker = dir.join(COMPLETE_MARKER);
            File::create(&marker).map_err(|e| Error::io(&marker, e))?;
        }

        let config_path = dir.join(CONFIG_FILE);
        let raw = fs::read(&config_path).map_err(|e| Error::io(&config_path, e))?;
        let config = serde_json::from_slice(&raw).map_err(|e| Error::Load {
            model_id: descriptor.model_id.clone(),
            reason: format!("invalid {CONFIG_FILE}: {e}"),
        })?;
        let mut files: Vec<String> = fs::read_dir(&dir)
            .map_err(|e| Error::io(&dir, e))?
            .filter_map(|e| e.ok())
            .filter_map(|e| e.file_name().into_string().ok())
            .filter(|n| !n.starts_with('.'))
            .collect();
        files.sort();
        Ok(ModelArtifacts {
            model_id: descriptor.model_id.clone(),
            revision: descriptor.revision.clone(),
            dir,
            config,
            files,
        })
    }

    fn fetch_file(&self, descriptor: &ModelDescriptor, dir: &Path, name: &str) -> Result<()> {
        let target = dir.join(name);
        if target.exists() {
            return Ok(());
        }
        let url = format!(
            "{}/{}/resolve/{}/{}",
            self.endpoint.trim_end_matches('/'),
            descriptor.model_id,
            descriptor.revision,
            name
        );
        let tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        let mut sink = BufWriter::new(tmp);
        self.fetcher
            .fetch(&url, &mut sink)
            .map_err(|e| Error::Fetch {
                url: url.clone(),
                reason: e.to_string(),
            })?;
        let tmp = sink
            .into_inner()
            .map_err(|e| Error::io(&target, e.into_error()))?;
        tmp.as_file()
            .sync_all()
            .map_err(|e| Error::io(&target, e))?;
        tmp.persist(&target)
            .map_err(|e| Error::io(&target, e.error))?;
        Ok(())
    }
}

/// Ids become cache paths, so each `/`-separated part must be a plain name.
fn validate_id(id: &str) -> Result<()> {
    let bad = id.is_empty()
        || id
            .split('/')
            .any(|p| p.is_empty() || p == "." || p == ".." || p.contains('\\'));
    if bad {
        return Err(Error::Input(format!("invalid model id or revision `{id}`")));
    }
    Ok(())
}
