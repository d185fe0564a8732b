//! Translation QA: placeholder and terminology checks, French style
//! heuristics, and a manual annotation format, all producing [`QaFinding`]s.

mod checks;
mod config;
mod finding;
mod words;

pub use checks::{
    check_capitalization, check_capitalization_with, check_gender, check_placeholders,
    check_placeholders_with, check_register, check_terms, flag_allcaps, flag_allcaps_with,
    flag_ambiguous_verb_forms, run_suite, QaReport,
};
pub use config::{
    EnabledChecks, GenderLexicon, GenderedPair, QaConfig, RegisterConfig, RegisterProfile,
    TermEntry, Termbase, VerbFormConfig,
};
pub use finding::{
    read_annotations, read_findings_jsonl, summarize, summary_table, write_findings_jsonl,
    Evidence, ManualCategory, QaCategory, QaFinding, Severity,
};

/// Errors from QA configuration and the register check.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QaError {
    #[error("segment {segment_id:016x} lacks conversation meta key {key:?}")]
    MissingConversationKey { key: String, segment_id: u64 },
    #[error("termbase: {message}")]
    TermbaseRead { message: String },
    #[error("duplicate termbase source term {term:?}")]
    DuplicateTerm { term: String },
    #[error("qa config: {message}")]
    ConfigRead { message: String },
    #[error("annotations: {message}")]
    AnnotationRead { message: String },
}
