//! Build bilingual corpora from video-game localization files and evaluate
//! machine-translation output against them.
//!
//! The crate covers the whole workflow end to end:
//!
//! * **`locfile`** — read and write the interchange formats localization data
//!   actually ships in: TMX 1.4/1.4b translation memories, TSV/CSV string
//!   tables keyed by game-internal identifiers, and plain parallel bitext.
//!   Key-based alignment joins the two language sides of a string table, and a
//!   placeholder lexer finds the markup tags and printf-style variables that
//!   must survive translation untouched.
//! * **`corpus`** — deterministic corpus pipeline: cleaning (empty,
//!   untranslated, duplicate segments), typography normalization (French
//!   narrow no-break spaces, guillemets, ellipses), metadata filtering,
//!   manifest-driven merging, seeded train/valid/test splits, token statistics,
//!   and an inert NMT training-recipe document.
//! * **`metrics`** — corpus-level BLEU, chrF2++ and TER with pinned,
//!   reproducible semantics (mteval-13a tokenization, exp smoothing, tercom
//!   shifts), each score carrying its full `key:value|…` signature string,
//!   plus single- and multi-system report rendering.
//! * **`qa`** — localization-specific checks over aligned segments:
//!   placeholder parity, terminology, capitalization drift, gendered wording
//!   behind player-referent gates, tu/vous register consistency,
//!   imperative/infinitive ambiguity and all-caps risk, with findings emitted
//!   as JSON lines.
//! * **`cli`** — the `locforge` binary: `build`, `clean`, `split`, `stats`,
//!   `export`, `score`, `compare`, `qa`, `recipe`.
//!
//! # Start with the examples
//!
//! The fastest way in is the `examples/` directory; each one is a small,
//! runnable program around one capability, with commented sample data under
//! `examples/data/`:
//!
//! | Example | What it shows |
//! |---------|---------------|
//! | `parse_tmx` | Reading a TMX file, inspecting units and parse issues |
//! | `build_pipeline` | String tables → align → merge → clean → normalized corpus |
//! | `split_corpus` | Seeded, reproducible train/valid/test splits |
//! | `score_systems` | BLEU/chrF2++/TER scoring and multi-system comparison |
//! | `qa_suite` | Running the QA checks and reading findings |
//! | `extract_placeholders` | The placeholder grammar on tricky game strings |
//! | `emit_recipe` | The NMT training-recipe document |
//!
//! ```text
//! cargo run -p locforge --example score_systems
//! ```
//!
//! # A taste
//!
//! ```
//! use locforge::metrics::bleu;
//!
//! let refs = vec!["The dragon guards the gate.".to_string()];
//! let hyps = refs.clone();
//! let result = bleu(&hyps, &refs).unwrap();
//! assert_eq!(format!("{:.2}", result.score), "100.00");
//! ```
//!
//! # Determinism
//!
//! Everything observable is reproducible: splits flow from an explicit 64-bit
//! seed through a fixed, documented PRNG; metric aggregation is an integer sum
//! that parallelizes without changing results; reports carry no timestamps.
//! Identical inputs give byte-identical outputs, run to run and machine to
//! machine.

pub mod corpus;
pub mod locfile;
pub mod metrics;
pub mod qa;

pub mod cli;

pub use corpus::{BiSegment, CleanReport, CorpusManifest, CorpusStats, NmtRecipe, SplitSpec};
pub use locfile::{PlaceholderKind, PlaceholderSpan, RawEntry, TranslationUnit};
pub use metrics::{ComparisonReport, MetricSignature, ScoreReport, TerAlignment};
pub use qa::{QaConfig, QaFinding};

/// Version string embedded in every report.
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
