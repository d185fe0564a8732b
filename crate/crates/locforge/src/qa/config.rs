//! QA configuration: termbase, lexicons, and check toggles.
//!
//! All linguistic knowledge lives in editable files; the crate ships small
//! defaults (embedded from `assets/`) tuned for EN→FR game text. The
//! checks read whatever the config says and nothing else.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::QaError;

/// One terminology rule: how a source term must be rendered.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermEntry {
    pub source_term: String,
    pub target_term: String,
    #[serde(default = "default_true")]
    pub case_sensitive: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub forbidden_targets: Vec<String>,
}

fn default_true() -> bool {
    true
}

/// The game's terminology, loaded from CSV
/// (`source_term,target_term,case_sensitive,forbidden_targets`), with
/// forbidden targets `;`-separated inside the last column.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Termbase {
    pub entries: Vec<TermEntry>,
}

impl Termbase {
    pub fn from_csv(bytes: &[u8]) -> Result<Termbase, QaError> {
        let bytes = bytes.strip_prefix("\u{FEFF}".as_bytes()).unwrap_or(bytes);
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .flexible(true)
            .from_reader(bytes);
        let mut entries = Vec::new();
        for (i, record) in reader.records().enumerate() {
            let record = record.map_err(|e| QaError::TermbaseRead { message: e.to_string() })?;
            if i == 0 && record.get(0) == Some("source_term") {
                continue;
            }
            if record.len() == 1 && record[0].is_empty() {
                continue;
            }
            let (Some(source_term), Some(target_term)) = (record.get(0), record.get(1)) else {
                return Err(QaError::TermbaseRead {
                    message: format!("row {}: expected at least 2 columns", i + 1),
                });
            };
            if source_term.is_empty() {
                return Err(QaError::TermbaseRead {
                    message: format!("row {}: empty source term", i + 1),
                });
            }
            let case_sensitive = match record.get(2).map(str::trim) {
                None | Some("") => true,
                Some(flag) => match flag.to_ascii_lowercase().as_str() {
                    "true" | "1" | "yes" => true,
                    "false" | "0" | "no" => false,
                    other => {
                        return Err(QaError::TermbaseRead {
                            message: format!("row {}: bad case_sensitive flag {other:?}", i + 1),
                        })
                    }
                },
            };
            let forbidden_targets = record
                .get(3)
                .unwrap_or("")
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(str::to_string)
                .collect();
            entries.push(TermEntry {
                source_term: source_term.to_string(),
                target_term: target_term.to_string(),
                case_sensitive,
                forbidden_targets,
            });
        }
        let tb = Termbase { entries };
        tb.validate()?;
        Ok(tb)
    }

    /// Enforces source-term uniqueness (case-folded for case-insensitive
    /// entries).
    pub fn validate(&self) -> Result<(), QaError> {
        let mut seen = std::collections::HashSet::new();
        for entry in &self.entries {
            let key = if entry.case_sensitive {
                entry.source_term.clone()
            } else {
                entry.source_term.to_lowercase()
            };
            if !seen.insert(key) {
                return Err(QaError::DuplicateTerm { term: entry.source_term.clone() });
            }
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("source_term,target_term,case_sensitive,forbidden_targets\n");
        let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
        for entry in &self.entries {
            writer
                .write_record([
                    entry.source_term.as_str(),
                    entry.target_term.as_str(),
                    if entry.case_sensitive { "true" } else { "false" },
                    &entry.forbidden_targets.join(";"),
                ])
                .expect("in-memory write");
        }
        out.push_str(&String::from_utf8(writer.into_inner().expect("flushed")).expect("utf-8"));
        out
    }
}

/// A masculine/feminine surface pair plus neutral rewordings to suggest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenderedPair {
    pub masculine: String,
    pub feminine: String,
    #[serde(default)]
    pub neutral_alternatives: Vec<String>,
}

/// Gendered vocabulary plus the markers showing a segment addresses the
/// player. Words are stored case-folded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenderLexicon {
    pub gendered_pairs: Vec<GenderedPair>,
    pub player_referent_markers: Vec<String>,
}

impl GenderLexicon {
    /// The check only runs with both word lists populated.
    pub fn is_usable(&self) -> bool {
        !self.gendered_pairs.is_empty() && !self.player_referent_markers.is_empty()
    }

    fn fold(&mut self) {
        for pair in &mut self.gendered_pairs {
            pair.masculine = pair.masculine.to_lowercase();
            pair.feminine = pair.feminine.to_lowercase();
        }
        for marker in &mut self.player_referent_markers {
            *marker = marker.to_lowercase();
        }
    }
}

impl Default for GenderLexicon {
    fn default() -> Self {
        let mut lex: GenderLexicon =
            serde_json::from_str(include_str!("../../assets/gender_lexicon.json"))
                .expect("shipped lexicon parses");
        lex.fold();
        lex
    }
}

/// Second-person register vocabulary for French targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegisterConfig {
    pub tu_words: Vec<String>,
    pub vous_words: Vec<String>,
    /// Verb suffixes counted as informal evidence (shipped default: none).
    #[serde(default)]
    pub tu_verb_endings: Vec<String>,
    /// Verb suffixes counted as formal evidence, e.g. `ez`.
    #[serde(default)]
    pub vous_verb_endings: Vec<String>,
    /// Words the suffix heuristics must ignore (`chez`, `assez`, …).
    #[serde(default)]
    pub ending_exempt: Vec<String>,
}

impl RegisterConfig {
    fn fold(&mut self) {
        for list in [
            &mut self.tu_words,
            &mut self.vous_words,
            &mut self.tu_verb_endings,
            &mut self.vous_verb_endings,
            &mut self.ending_exempt,
        ] {
            for word in list {
                *word = word.to_lowercase();
            }
        }
    }
}

impl Default for RegisterConfig {
    fn default() -> Self {
        let mut config: RegisterConfig =
            serde_json::from_str(include_str!("../../assets/register_fr.json"))
                .expect("shipped register config parses");
        config.fold();
        config
    }
}

/// The register a project mandates for player-directed text.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegisterProfile {
    Tu,
    Vous,
    #[default]
    Unconstrained,
}

/// English base-form verbs and subject pronouns for the imperative vs
/// infinitive ambiguity flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerbFormConfig {
    pub base_verbs: Vec<String>,
    pub subject_pronouns: Vec<String>,
}

impl VerbFormConfig {
    fn fold(&mut self) {
        for list in [&mut self.base_verbs, &mut self.subject_pronouns] {
            for word in list {
                *word = word.to_lowercase();
            }
        }
    }
}

impl Default for VerbFormConfig {
    fn default() -> Self {
        let mut config: VerbFormConfig =
            serde_json::from_str(include_str!("../../assets/verbs_en.json"))
                .expect("shipped verb list parses");
        config.fold();
        config
    }
}

/// Which checks `run_suite` applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnabledChecks {
    #[serde(default = "default_true")]
    pub placeholders: bool,
    #[serde(default = "default_true")]
    pub terms: bool,
    #[serde(default = "default_true")]
    pub capitalization: bool,
    #[serde(default = "default_true")]
    pub gender: bool,
    #[serde(default = "default_true")]
    pub register: bool,
    #[serde(default = "default_true")]
    pub ambiguous_verbs: bool,
    #[serde(default = "default_true")]
    pub all_caps: bool,
}

impl EnabledChecks {
    pub fn none() -> Self {
        EnabledChecks {
            placeholders: false,
            terms: false,
            capitalization: false,
            gender: false,
            register: false,
            ambiguous_verbs: false,
            all_caps: false,
        }
    }
}

impl Default for EnabledChecks {
    fn default() -> Self {
        EnabledChecks {
            placeholders: true,
            terms: true,
            capitalization: true,
            gender: true,
            register: true,
            ambiguous_verbs: true,
            all_caps: true,
        }
    }
}

/// Everything a QA run needs. Serializable as JSON; absent fields keep
/// their shipped defaults.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct QaConfig {
    pub enabled: EnabledChecks,
    pub termbase: Termbase,
    pub gender_lexicon: GenderLexicon,
    pub register: RegisterConfig,
    pub register_profile: RegisterProfile,
    /// Meta key grouping segments into conversations for the register
    /// check.
    pub conversation_key: String,
    pub verb_forms: VerbFormConfig,
    /// Extra literal strings treated as placeholders on both sides.
    pub placeholder_literals: Vec<String>,
}

impl QaConfig {
    pub fn from_json(json: &str) -> Result<QaConfig, QaError> {
        let mut config: QaConfig =
            serde_json::from_str(json).map_err(|e| QaError::ConfigRead { message: e.to_string() })?;
        config.termbase.validate()?;
        config.gender_lexicon.fold();
        config.register.fold();
        config.verb_forms.fold();
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<QaConfig, QaError> {
        let text = std::fs::read_to_string(path).map_err(|e| QaError::ConfigRead {
            message: format!("{}: {e}", path.display()),
        })?;
        QaConfig::from_json(&text)
    }
}

impl Default for QaConfig {
    fn default() -> Self {
        QaConfig {
            enabled: EnabledChecks::default(),
            termbase: Termbase::default(),
            gender_lexicon: GenderLexicon::default(),
            register: RegisterConfig::default(),
            register_profile: RegisterProfile::default(),
            conversation_key: "conversation".to_string(),
            verb_forms: VerbFormConfig::default(),
            placeholder_literals: Vec::new(),
        }
    }
}
