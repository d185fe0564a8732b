//! Corpus construction: clean, normalize, filter, merge, split, measure.
//!
//! The pipeline this module implements turns per-game localization files
//! into a training-ready bilingual corpus: merge per the manifest,
//! normalize typography, drop empty/untranslated/duplicate segments,
//! apply metadata filters, then draw seeded validation and test sets.
//! Every step is deterministic; parallel execution never changes results.

mod clean;
mod filter;
mod manifest;
mod recipe;
pub mod rng;
mod segment;
mod split;
mod stats;
mod typography;

use std::path::PathBuf;

pub use clean::{clean, CleanReport};
pub use filter::{filter_meta, MetaPredicate};
pub use manifest::{merge, CorpusManifest, ManifestEntry};
pub use recipe::{emit_recipe, NmtRecipe, RECIPE_SCHEMA_VERSION};
pub use segment::{content_id, BiSegment};
pub use split::{split, SplitResult, SplitSpec};
pub use stats::{stats, stats_lines, CorpusStats};
pub use typography::normalize_typography;

/// Errors from corpus construction.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CorpusError {
    #[error("split needs {needed} eligible segments, only {available} available")]
    InsufficientEligible { needed: usize, available: usize },
    #[error("manifest entries mix language pairs: {expected} vs {found}")]
    LanguagePairMismatch { expected: String, found: String },
    #[error("unknown recipe field {field:?}")]
    UnknownField { field: String },
    #[error("invalid recipe override: {message}")]
    InvalidOverride { message: String },
    #[error("duplicate game title {title:?} in manifest")]
    DuplicateGameTitle { title: String },
    #[error("manifest lists missing file {}", path.display())]
    MissingManifestFile { path: PathBuf },
    #[error("cannot read manifest: {message}")]
    ManifestRead { message: String },
    #[error("merge got {found} segment lists for {expected} manifest entries")]
    EntryCountMismatch { expected: usize, found: usize },
}
