//! Registry configuration, read from a TOML file.

use std::fs;
use std::path::Path;
use std::time::Duration;

use serde::Deserialize;
use thiserror::Error;

use crate::metadata::{default_license_allow_list, ValidationPolicy, DEFAULT_MIN_ELEMENT_COUNT};
use crate::nanopub::DiscoveryOptions;
use crate::package::{PackageOptions, DEFAULT_CAP_LADDER};
use crate::rdf::{Iri, RdfFormat};
use crate::sitegen::SiteOptions;
use crate::vocab::{Vocabulary, DEFAULT_NAMESPACE};

/// Conventional file name, looked up in the working directory.
pub const DEFAULT_CONFIG_FILE: &str = "benchreg.toml";

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("{path}: {message}")]
    Read { path: String, message: String },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid configuration: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(default, rename_all = "kebab-case", deny_unknown_fields)]
pub struct RegistryConfig {
    pub vocabulary_namespace: Iri,
    pub license_allow_list: Vec<Iri>,
    pub min_element_count: u64,
    pub cap_ladder: Vec<u64>,
    /// `http(s)` index URL or a local directory of `.trig` files.
    pub report_index_url: Option<String>,
    pub source_repo_base: Option<Iri>,
    pub source_branch: String,
    pub purl_base: Iri,
    /// Names accepted by `RdfFormat::from_str` (`nquads`, `turtle`, ...).
    pub formats: Vec<String>,
    /// Release label of generated snapshots.
    pub version: String,
    pub parallelism: usize,
    pub timeout_secs: u64,
}

impl Default for RegistryConfig {
    fn default() -> Self {
        let site = SiteOptions::default();
        RegistryConfig {
            vocabulary_namespace: Iri::from_static(DEFAULT_NAMESPACE),
            license_allow_list: default_license_allow_list(),
            min_element_count: DEFAULT_MIN_ELEMENT_COUNT,
            cap_ladder: DEFAULT_CAP_LADDER.to_vec(),
            report_index_url: None,
            source_repo_base: None,
            source_branch: site.source_branch,
            purl_base: site.purl_base,
            formats: vec!["nquads".into()],
            version: "dev".into(),
            parallelism: 4,
            timeout_secs: 30,
        }
    }
}

impl RegistryConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let config: RegistryConfig =
            toml::from_str(text).map_err(|e| ConfigError::Parse { path: "<inline>".into(), message: e.message().to_owned() })?;
        config.check()?;
        Ok(config)
    }

    /// Reads `path`. A missing file is only an error when `required`.
    pub fn load(path: &Path, required: bool) -> Result<Self, ConfigError> {
        let shown = path.display().to_string();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound && !required => return Ok(Self::default()),
            Err(e) => return Err(ConfigError::Read { path: shown, message: e.to_string() }),
        };
        Self::from_toml(&text).map_err(|e| match e {
            ConfigError::Parse { message, .. } => ConfigError::Parse { path: shown, message },
            other => other,
        })
    }

    pub fn check(&self) -> Result<(), ConfigError> {
        if self.cap_ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(ConfigError::Invalid("cap-ladder must be strictly increasing".into()));
        }
        if self.cap_ladder.first() == Some(&0) {
            return Err(ConfigError::Invalid("cap-ladder entries must be positive".into()));
        }
        if self.formats.is_empty() {
            return Err(ConfigError::Invalid("formats must not be empty".into()));
        }
        self.rdf_formats()?;
        if self.version.is_empty() || self.version.contains('/') {
            return Err(ConfigError::Invalid("version must be a single path segment".into()));
        }
        Ok(())
    }

    pub fn rdf_formats(&self) -> Result<Vec<RdfFormat>, ConfigError> {
        let mut out = Vec::new();
        for f in &self.formats {
            let format: RdfFormat = f.parse().map_err(ConfigError::Invalid)?;
            if !out.contains(&format) {
                out.push(format);
            }
        }
        Ok(out)
    }

    pub fn vocabulary(&self) -> Vocabulary {
        Vocabulary::new(self.vocabulary_namespace.clone())
    }

    pub fn policy(&self) -> ValidationPolicy {
        ValidationPolicy { license_allow_list: self.license_allow_list.clone(), min_element_count: self.min_element_count }
    }

    pub fn package_options(&self) -> Result<PackageOptions, ConfigError> {
        Ok(PackageOptions {
            ladder: self.cap_ladder.clone(),
            formats: self.rdf_formats()?,
            policy: self.policy(),
            vocab: self.vocabulary(),
        })
    }

    pub fn site_options(&self) -> SiteOptions {
        SiteOptions {
            purl_base: self.purl_base.clone(),
            source_repo_base: self.source_repo_base.clone(),
            source_branch: self.source_branch.clone(),
            vocab: self.vocabulary(),
        }
    }

    pub fn discovery_options(&self) -> DiscoveryOptions {
        DiscoveryOptions { parallelism: self.parallelism.max(1), vocab: self.vocabulary() }
    }

    pub fn timeout(&self) -> Duration {
        Duration::from_secs(self.timeout_secs.max(1))
    }
}
