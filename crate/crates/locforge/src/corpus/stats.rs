//! Corpus size accounting.

use std::iter::Sum;
use std::ops::{Add, AddAssign};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::metrics::count_13a_tokens;

use super::segment::BiSegment;

/// Segment and token counts for one corpus (tokens per the 13a tokenizer).
///
/// Stats are exactly additive: counting a concatenation equals summing the
/// parts, whatever the split points.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub sentences: u64,
    pub src_tokens: u64,
    pub tgt_tokens: u64,
}

impl Add for CorpusStats {
    type Output = CorpusStats;

    fn add(self, rhs: CorpusStats) -> CorpusStats {
        CorpusStats {
            sentences: self.sentences + rhs.sentences,
            src_tokens: self.src_tokens + rhs.src_tokens,
            tgt_tokens: self.tgt_tokens + rhs.tgt_tokens,
        }
    }
}

impl AddAssign for CorpusStats {
    fn add_assign(&mut self, rhs: CorpusStats) {
        *self = *self + rhs;
    }
}

impl Sum for CorpusStats {
    fn sum<I: Iterator<Item = CorpusStats>>(iter: I) -> CorpusStats {
        iter.fold(CorpusStats::default(), Add::add)
    }
}

/// Counts segments and 13a tokens on both sides.
pub fn stats(segments: &[BiSegment]) -> CorpusStats {
    segments
        .par_iter()
        .map(|seg| CorpusStats {
            sentences: 1,
            src_tokens: count_13a_tokens(&seg.source_text) as u64,
            tgt_tokens: count_13a_tokens(&seg.target_text) as u64,
        })
        .reduce(CorpusStats::default, Add::add)
}

/// Counts a plain bitext pair that never went through segment parsing.
pub fn stats_lines(src_lines: &[String], tgt_lines: &[String]) -> CorpusStats {
    let src_tokens: u64 = src_lines.par_iter().map(|l| count_13a_tokens(l) as u64).sum();
    let tgt_tokens: u64 = tgt_lines.par_iter().map(|l| count_13a_tokens(l) as u64).sum();
    CorpusStats { sentences: src_lines.len().max(tgt_lines.len()) as u64, src_tokens, tgt_tokens }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_is_all_zero() {
        assert_eq!(stats(&[]), CorpusStats::default());
    }

    #[test]
    fn counts_13a_tokens_per_side() {
        let segs = vec![BiSegment::new("Hello world.", "Bonjour.", "en", "fr")];
        // 13a splits the final period off both sides.
        assert_eq!(stats(&segs), CorpusStats { sentences: 1, src_tokens: 3, tgt_tokens: 2 });
    }

    #[test]
    fn additive_under_concatenation() {
        let a = vec![
            BiSegment::new("one two", "un deux", "en", "fr"),
            BiSegment::new("three!", "trois !", "en", "fr"),
        ];
        let b = vec![BiSegment::new("four", "quatre", "en", "fr")];
        let both: Vec<BiSegment> = a.iter().chain(b.iter()).cloned().collect();
        assert_eq!(stats(&a) + stats(&b), stats(&both));
    }

    #[test]
    fn line_stats_match_segment_stats() {
        let segs = vec![BiSegment::new("Hello world.", "Bonjour.", "en", "fr")];
        let src = vec!["Hello world.".to_string()];
        let tgt = vec!["Bonjour.".to_string()];
        assert_eq!(stats_lines(&src, &tgt), stats(&segs));
        assert_eq!(stats_lines(&[], &[]), CorpusStats::default());
    }
}
