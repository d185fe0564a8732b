//! The NMT training recipe document.
//!
//! The toolkit does not train models; it emits the hyperparameter set the
//! corpus was prepared for (a Transformer base configuration) so that runs
//! are self-describing. The recipe is serialized, never interpreted.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CorpusError;

pub const RECIPE_SCHEMA_VERSION: &str = "1";

/// Hyperparameters for a Transformer base training run, plus a schema
/// version for the emitted document. Defaults are fixed constants;
/// [`emit_recipe`] applies explicit overrides on top.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NmtRecipe {
    pub schema_version: String,
    pub vocab_size: u32,
    pub encoder_layers: u32,
    pub decoder_layers: u32,
    pub attention_heads: u32,
    pub model_dim: u32,
    pub ffn_dim: u32,
    pub dropout: f64,
    pub train_steps: u32,
    pub beam_size: u32,
}

impl Default for NmtRecipe {
    fn default() -> Self {
        NmtRecipe {
            schema_version: RECIPE_SCHEMA_VERSION.to_string(),
            vocab_size: 32_000,
            encoder_layers: 6,
            decoder_layers: 6,
            attention_heads: 8,
            model_dim: 512,
            ffn_dim: 2048,
            dropout: 0.1,
            train_steps: 200_000,
            beam_size: 5,
        }
    }
}

impl NmtRecipe {
    /// Serializes to the pretty-printed JSON document format.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("recipe serializes");
        out.push('\n');
        out
    }
}

/// Builds a recipe from the defaults and a set of field overrides.
///
/// Override keys must name recipe fields (`schema_version` is not
/// overridable), otherwise [`CorpusError::UnknownField`]; values must fit
/// the field's type, otherwise [`CorpusError::InvalidOverride`].
pub fn emit_recipe(overrides: Option<&BTreeMap<String, Value>>) -> Result<NmtRecipe, CorpusError> {
    let mut doc = serde_json::to_value(NmtRecipe::default()).expect("recipe serializes");
    if let Some(overrides) = overrides {
        let fields = doc.as_object_mut().expect("recipe is an object");
        for (key, value) in overrides {
            if key == "schema_version" || !fields.contains_key(key) {
                return Err(CorpusError::UnknownField { field: key.clone() });
            }
            fields.insert(key.clone(), value.clone());
        }
    }
    serde_json::from_value(doc)
        .map_err(|e| CorpusError::InvalidOverride { message: e.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_the_fixed_constants() {
        let r = emit_recipe(None).unwrap();
        assert_eq!(r, NmtRecipe::default());
        assert_eq!(r.vocab_size, 32_000);
        assert_eq!(r.model_dim, 512);
        assert_eq!(r.beam_size, 5);
        assert_eq!(r.schema_version, "1");
    }

    #[test]
    fn override_changes_only_that_field() {
        let mut overrides = BTreeMap::new();
        overrides.insert("train_steps".to_string(), Value::from(1000));
        let r = emit_recipe(Some(&overrides)).unwrap();
        assert_eq!(r.train_steps, 1000);
        assert_eq!(NmtRecipe { train_steps: 200_000, ..r }, NmtRecipe::default());
    }

    #[test]
    fn unknown_field_is_rejected() {
        let mut overrides = BTreeMap::new();
        overrides.insert("widthh".to_string(), Value::from(3));
        match emit_recipe(Some(&overrides)) {
            Err(CorpusError::UnknownField { field }) => assert_eq!(field, "widthh"),
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn schema_version_is_not_overridable() {
        let mut overrides = BTreeMap::new();
        overrides.insert("schema_version".to_string(), Value::from("2"));
        assert!(emit_recipe(Some(&overrides)).is_err());
    }

    #[test]
    fn json_document_shape() {
        let json = emit_recipe(None).unwrap().to_json();
        let parsed: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed["schema_version"], "1");
        assert_eq!(parsed["vocab_size"], 32_000);
        assert_eq!(parsed["dropout"], 0.1);
        assert_eq!(parsed.as_object().unwrap().len(), 10);
        assert!(json.ends_with('\n'));
    }
}
