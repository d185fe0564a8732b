//! Removal of empty, untranslated, and duplicate segments.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::segment::BiSegment;
use super::typography::normalize_typography;

/// Counts from one cleaning (and optional filtering) run.
///
/// The arithmetic identity `output_count == input_count - removed_empty -
/// removed_untranslated - removed_duplicates - removed_by_filter` always
/// holds; [`clean`] itself leaves `removed_by_filter` at zero and
/// [`CleanReport::record_filtered`] folds a later metadata filter in.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanReport {
    pub input_count: usize,
    pub removed_duplicates: usize,
    pub removed_empty: usize,
    pub removed_untranslated: usize,
    pub removed_by_filter: usize,
    pub output_count: usize,
}

impl CleanReport {
    /// Adds a downstream filter's removals while keeping the identity.
    pub fn record_filtered(&mut self, removed: usize) {
        self.removed_by_filter += removed;
        self.output_count -= removed;
    }
}

/// Drops unusable segments, keeping the rest in input order.
///
/// Rules apply in a fixed order, and each segment is counted once, under
/// the first rule it trips:
///
/// 1. empty: either side is empty after whitespace trim;
/// 2. untranslated: source equals target, comparing both sides after
///    trimming and normalizing typography under the target language
///    (case-sensitive, so `Menu`/`Menu` is caught while `Porte`/`porte`
///    is kept);
/// 3. duplicate: the normalized (source, target) pair was already seen,
///    first occurrence kept.
///
/// Cleaning never rewrites text; normalization is only the comparison key.
/// Running `clean` on its own output removes nothing.
pub fn clean(segments: Vec<BiSegment>) -> (Vec<BiSegment>, CleanReport) {
    let mut report = CleanReport { input_count: segments.len(), ..CleanReport::default() };
    let mut seen: HashSet<(String, String)> = HashSet::new();
    let mut kept = Vec::with_capacity(segments.len());

    for seg in segments {
        if seg.source_text.trim().is_empty() || seg.target_text.trim().is_empty() {
            report.removed_empty += 1;
            continue;
        }
        let norm_source = normalize_typography(&seg.source_text, &seg.target_lang);
        let norm_target = normalize_typography(&seg.target_text, &seg.target_lang);
        if norm_source == norm_target {
            report.removed_untranslated += 1;
            continue;
        }
        if !seen.insert((norm_source, norm_target)) {
            report.removed_duplicates += 1;
            continue;
        }
        kept.push(seg);
    }

    report.output_count = kept.len();
    (kept, report)
}
