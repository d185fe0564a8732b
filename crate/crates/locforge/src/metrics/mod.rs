//! Corpus-level MT evaluation: BLEU, chrF2++, and TER under pinned,
//! signature-carrying configurations, plus the tokenization and
//! detokenization passes around them and multi-system comparison reports.
//!
//! All three metrics share the same contract: segment-aligned hypothesis
//! and reference slices of equal non-zero length, single reference per
//! segment. Per-segment statistics are computed in parallel and aggregated
//! with integer sums, so scores are bit-identical run to run regardless of
//! thread count.

mod bleu;
mod chrf;
mod detokenize;
mod report;
mod signature;
mod ter;
mod tokenize;

pub use bleu::{bleu, bleu_with, BleuResult, MAX_NGRAM_ORDER};
pub use chrf::{chrf2pp, chrf2pp_with, ChrfResult};
pub use detokenize::detokenize;
pub use report::{
    compare, compare_with, round2, score_system, score_system_with, ComparisonReport, ScoreReport,
};
pub use signature::{
    CaseHandling, Metric, MetricSignature, Smoothing, TokenizerKind, SIGNATURE_VERSION,
};
pub use ter::{ter, ter_with, TerAlignment, TerResult};
pub use tokenize::{count_13a_tokens, tokenize_13a, tokenize_13a_joined};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum MetricsError {
    #[error("hypothesis/reference segment counts differ: {hyps} vs {refs}")]
    LengthMismatch { hyps: usize, refs: usize },
    #[error("cannot score an empty corpus")]
    EmptyCorpus,
    #[error("every reference segment is empty; the edit-rate denominator would be zero")]
    EmptyRef,
}
