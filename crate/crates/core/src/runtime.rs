//! Shared environment: cache root, network access and backend selection.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::datasets::DatasetStore;
use crate::error::Result;
use crate::fetch::{default_fetcher, Fetcher};
use crate::model_registry::hub::{HubLoader, DEFAULT_HUB_ENDPOINT};
use crate::model_registry::{
    BackendConfig, BackendKind, Feature, LoadedModel, ModelDescriptor, ModelRuntime, Registry,
    StubBackend,
};

/// Cache root override.
pub const HOME_ENV: &str = "MAHANLP_HOME";
/// `stub` forces every model onto the deterministic stub backend.
pub const BACKEND_ENV: &str = "MAHANLP_BACKEND";
pub const HUB_ENDPOINT_ENV: &str = "MAHANLP_HUB_ENDPOINT";

/// `$MAHANLP_HOME`, else the per-user data directory.
pub fn default_home() -> PathBuf {
    if let Some(home) = std::env::var_os(HOME_ENV).filter(|v| !v.is_empty()) {
        return PathBuf::from(home);
    }
    dirs::data_dir()
        .map(|d| d.join("mahanlp"))
        .unwrap_or_else(|| PathBuf::from(".mahanlp"))
}

#[derive(Clone)]
pub struct Runtime {
    home: PathBuf,
    fetcher: Arc<dyn Fetcher>,
    hub_endpoint: String,
    backend_override: Option<BackendKind>,
    model_runtime: Option<Arc<dyn ModelRuntime>>,
}

impl std::fmt::Debug for Runtime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Runtime")
            .field("home", &self.home)
            .field("hub_endpoint", &self.hub_endpoint)
            .field("backend_override", &self.backend_override)
            .field(
                "model_runtime",
                &self.model_runtime.as_ref().map(|r| r.name().to_string()),
            )
            .finish()
    }
}

impl Runtime {
    pub fn new(home: impl Into<PathBuf>) -> Self {
        Runtime {
            home: home.into(),
            fetcher: default_fetcher(),
            hub_endpoint: DEFAULT_HUB_ENDPOINT.to_string(),
            backend_override: None,
            model_runtime: None,
        }
    }

    /// Reads `MAHANLP_HOME`, `MAHANLP_BACKEND` and `MAHANLP_HUB_ENDPOINT`.
    pub fn from_env() -> Result<Self> {
        let mut rt = Runtime::new(default_home());
        if let Ok(kind) = std::env::var(BACKEND_ENV) {
            if !kind.is_empty() {
                rt.backend_override = Some(kind.parse()?);
            }
        }
        if let Ok(endpoint) = std::env::var(HUB_ENDPOINT_ENV) {
            if !endpoint.is_empty() {
                rt.hub_endpoint = endpoint;
            }
        }
        Ok(rt)
    }

    pub fn with_home(mut self, home: impl Into<PathBuf>) -> Self {
        self.home = home.into();
        self
    }

    pub fn with_fetcher(mut self, fetcher: Arc<dyn Fetcher>) -> Self {
        self.fetcher = fetcher;
        self
    }

    pub fn with_hub_endpoint(mut self, endpoint: impl Into<String>) -> Self {
        self.hub_endpoint = endpoint.into();
        self
    }

    /// Loads every descriptor with `kind` regardless of what it declares.
    pub fn with_backend_override(mut self, kind: Option<BackendKind>) -> Self {
        self.backend_override = kind;
        self
    }

    pub fn with_model_runtime(mut self, runtime: Arc<dyn ModelRuntime>) -> Self {
        self.model_runtime = Some(runtime);
        self
    }

    pub fn home(&self) -> &Path {
        &self.home
    }

    pub fn fetcher(&self) -> &Arc<dyn Fetcher> {
        &self.fetcher
    }

    pub fn backend_override(&self) -> Option<BackendKind> {
        self.backend_override
    }

    pub fn registry(&self) -> &'static Registry {
        Registry::builtin()
    }

    pub fn resolve(&self, feature: Feature, model_name: Option<&str>) -> ModelDescriptor {
        self.registry().resolve(feature, model_name)
    }

    pub fn datasets(&self) -> DatasetStore {
        DatasetStore::new(&self.home, self.fetcher.clone())
    }

    /// Directory a hub model is cached in.
    pub fn model_dir(&self, descriptor: &ModelDescriptor) -> PathBuf {
        self.hub_loader().model_dir(descriptor)
    }

    /// Stub descriptors get the stub backend, which ignores the GPU flag.
    /// Hub descriptors are downloaded and opened by the registered model
    /// runtime; asking for a GPU the runtime lacks is an error.
    pub fn load_backend(
        &self,
        descriptor: &ModelDescriptor,
        config: &BackendConfig,
    ) -> Result<LoadedModel> {
        config.validate()?;
        match self.backend_override.unwrap_or(descriptor.backend_kind) {
            BackendKind::Stub => Ok(LoadedModel::new(
                descriptor.clone(),
                *config,
                Arc::new(StubBackend::new()),
            )),
            BackendKind::Hub => self.hub_loader().load(descriptor, config),
        }
    }

    fn hub_loader(&self) -> HubLoader<'_> {
        HubLoader {
            home: &self.home,
            endpoint: &self.hub_endpoint,
            fetcher: self.fetcher.as_ref(),
            runtime: self.model_runtime.as_deref(),
        }
    }
}
