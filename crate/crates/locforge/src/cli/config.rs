//! The optional pipeline configuration file.
//!
//! JSON, pointed at by `--config` or the `LOCFORGE_CONFIG` environment
//! variable. Every field has a default; command-line flags win over config
//! values. Relative paths inside the file resolve against the file's own
//! directory.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::corpus::SplitSpec;
use crate::metrics::{Metric, MetricSignature};

pub const CONFIG_ENV: &str = "LOCFORGE_CONFIG";

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PipelineConfig {
    /// Default corpus manifest for `build`.
    pub manifest: Option<PathBuf>,
    /// Default output directory.
    pub out_dir: Option<PathBuf>,
    /// Drop empty, untranslated and duplicate segments during `build`.
    #[serde(default = "yes")]
    pub clean: bool,
    /// Rewrite segment text with typography normalization during `build`.
    #[serde(default = "yes")]
    pub typography: bool,
    /// Language tag driving the typography rules; each side's own language
    /// when unset.
    pub typography_lang: Option<String>,
    /// Default split parameters for `split`.
    pub split: Option<SplitSpec>,
    /// Per-metric signature overrides for `score` and `compare`.
    pub metrics: BTreeMap<Metric, MetricSignature>,
    /// Default QA configuration file for `qa`.
    pub qa_config: Option<PathBuf>,
    /// Log filter, e.g. `info` or `locforge=debug` (same syntax as
    /// `RUST_LOG`).
    pub log: Option<String>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            manifest: None,
            out_dir: None,
            clean: true,
            typography: true,
            typography_lang: None,
            split: None,
            metrics: BTreeMap::new(),
            qa_config: None,
            log: None,
        }
    }
}

impl PipelineConfig {
    /// Parses the file and validates that every referenced path exists,
    /// resolving relative ones against the file's directory.
    pub fn load(path: &Path) -> Result<PipelineConfig, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let mut config: PipelineConfig = serde_json::from_str(&text)
            .map_err(|e| format!("{}: {e}", path.display()))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        for field in [&mut config.manifest, &mut config.qa_config] {
            if let Some(p) = field {
                if p.is_relative() {
                    *p = base.join(&p);
                }
                if !p.exists() {
                    return Err(format!(
                        "{}: referenced file {} does not exist",
                        path.display(),
                        p.display()
                    ));
                }
            }
        }
        if let Some(dir) = &mut config.out_dir {
            if dir.is_relative() {
                *dir = base.join(&dir);
            }
        }
        Ok(config)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn empty_object_is_all_defaults() {
        let config: PipelineConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(config, PipelineConfig::default());
        assert!(config.clean);
        assert!(config.typography);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<PipelineConfig>(r#"{"cleann": true}"#).is_err());
    }

    #[test]
    fn relative_paths_resolve_and_must_exist() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("manifest.json"), "{\"entries\":[]}").unwrap();
        let config_path = dir.path().join("locforge.json");
        let mut f = std::fs::File::create(&config_path).unwrap();
        write!(f, r#"{{"manifest": "manifest.json", "out_dir": "out"}}"#).unwrap();

        let config = PipelineConfig::load(&config_path).unwrap();
        assert_eq!(config.manifest.unwrap(), dir.path().join("manifest.json"));
        assert_eq!(config.out_dir.unwrap(), dir.path().join("out"));

        let mut f = std::fs::File::create(&config_path).unwrap();
        write!(f, r#"{{"qa_config": "missing.json"}}"#).unwrap();
        let err = PipelineConfig::load(&config_path).unwrap_err();
        assert!(err.contains("missing.json"), "{err}");
    }

    #[test]
    fn metric_overrides_parse() {
        let json = r#"{"metrics": {"ter": {
            "metric": "ter", "case": "lower", "tokenizer": "thirteen_a",
            "smoothing": "none", "char_order": 0, "word_order": 0, "beta": 0.0,
            "normalized": true, "punctuation_tokenized": false, "version": "2.0.0"
        }}}"#;
        let config: PipelineConfig = serde_json::from_str(json).unwrap();
        let sig = &config.metrics[&Metric::Ter];
        assert!(sig.normalized);
        assert_eq!(sig.signature_string(1), "#:1|c:lc|t:tercom|nr:yes|pn:no|a:no|v:2.0.0");
    }
}
