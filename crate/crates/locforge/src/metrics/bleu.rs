//! Corpus BLEU with mteval-13a tokenization and exponential smoothing.

use std::collections::HashMap;

use rayon::prelude::*;

use super::signature::{CaseHandling, MetricSignature, Smoothing};
use super::tokenize::tokenize_13a_joined;
use super::MetricsError;

pub const MAX_NGRAM_ORDER: usize = 4;

/// Raw sufficient statistics plus the derived score. `counts[n-1]` and
/// `totals[n-1]` are clipped matches and candidate n-gram counts for order
/// `n`; summing these over corpora reproduces the corpus score exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct BleuResult {
    pub score: f64,
    pub counts: [u64; MAX_NGRAM_ORDER],
    pub totals: [u64; MAX_NGRAM_ORDER],
    pub precisions: [f64; MAX_NGRAM_ORDER],
    pub brevity_penalty: f64,
    pub sys_len: u64,
    pub ref_len: u64,
}

#[derive(Debug, Clone, Copy, Default)]
struct SegmentStats {
    sys_len: u64,
    ref_len: u64,
    counts: [u64; MAX_NGRAM_ORDER],
    totals: [u64; MAX_NGRAM_ORDER],
}

impl SegmentStats {
    fn add(mut self, other: SegmentStats) -> SegmentStats {
        self.sys_len += other.sys_len;
        self.ref_len += other.ref_len;
        for n in 0..MAX_NGRAM_ORDER {
            self.counts[n] += other.counts[n];
            self.totals[n] += other.totals[n];
        }
        self
    }
}

fn preprocess(text: &str, case: CaseHandling) -> String {
    let text = match case {
        CaseHandling::Lower => text.to_lowercase(),
        CaseHandling::Mixed => text.to_string(),
    };
    tokenize_13a_joined(text.trim_end())
}

/// Byte offsets of token boundaries in a space-joined token string, such
/// that the n-gram of order `n` starting at token `i` is the slice
/// `joined[starts[i]..ends[i + n - 1]]`.
fn token_bounds(joined: &str) -> (Vec<usize>, Vec<usize>) {
    let mut starts = Vec::new();
    let mut ends = Vec::new();
    let bytes = joined.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] != b' ' {
            starts.push(i);
            while i < bytes.len() && bytes[i] != b' ' {
                i += 1;
            }
            ends.push(i);
        } else {
            i += 1;
        }
    }
    (starts, ends)
}

fn segment_stats(hyp: &str, rf: &str, case: CaseHandling) -> SegmentStats {
    let hyp = preprocess(hyp, case);
    let rf = preprocess(rf, case);
    let (hs, he) = token_bounds(&hyp);
    let (rs, re) = token_bounds(&rf);

    let mut stats = SegmentStats {
        sys_len: hs.len() as u64,
        ref_len: rs.len() as u64,
        ..SegmentStats::default()
    };

    let mut hyp_counts: HashMap<&str, u64> = HashMap::new();
    let mut ref_counts: HashMap<&str, u64> = HashMap::new();
    for n in 1..=MAX_NGRAM_ORDER {
        if hs.len() < n {
            break;
        }
        let windows = hs.len() - n + 1;
        stats.totals[n - 1] = windows as u64;

        hyp_counts.clear();
        for i in 0..windows {
            *hyp_counts.entry(&hyp[hs[i]..he[i + n - 1]]).or_insert(0) += 1;
        }
        ref_counts.clear();
        if rs.len() >= n {
            for i in 0..=(rs.len() - n) {
                *ref_counts.entry(&rf[rs[i]..re[i + n - 1]]).or_insert(0) += 1;
            }
        }
        let mut correct = 0;
        for (gram, c) in &hyp_counts {
            if let Some(rc) = ref_counts.get(gram) {
                correct += (*c).min(*rc);
            }
        }
        stats.counts[n - 1] = correct;
    }
    stats
}

/// Natural log with the reference scorer's floor at zero: `ln(0)` is taken
/// as a large negative constant instead of -inf so a single empty precision
/// drives the score to zero without poisoning the arithmetic.
fn floored_ln(x: f64) -> f64 {
    if x == 0.0 {
        -9999999999.0
    } else {
        x.ln()
    }
}

fn compute(stats: SegmentStats, smoothing: Smoothing) -> BleuResult {
    let mut precisions = [0.0f64; MAX_NGRAM_ORDER];

    // Identical to the reference behaviour: a corpus with no unigram matches
    // at all scores exactly zero regardless of smoothing.
    if stats.counts.iter().all(|&c| c == 0) {
        return BleuResult {
            score: 0.0,
            counts: stats.counts,
            totals: stats.totals,
            precisions,
            brevity_penalty: 1.0,
            sys_len: stats.sys_len,
            ref_len: stats.ref_len,
        };
    }

    let mut smooth_mteval = 1.0f64;
    for n in 0..MAX_NGRAM_ORDER {
        if stats.totals[n] == 0 {
            break;
        }
        if stats.counts[n] == 0 {
            if matches!(smoothing, Smoothing::Exp) {
                smooth_mteval *= 2.0;
                precisions[n] = 100.0 / (smooth_mteval * stats.totals[n] as f64);
            }
        } else {
            precisions[n] = 100.0 * stats.counts[n] as f64 / stats.totals[n] as f64;
        }
    }

    let brevity_penalty = if stats.sys_len < stats.ref_len {
        if stats.sys_len > 0 {
            (1.0 - stats.ref_len as f64 / stats.sys_len as f64).exp()
        } else {
            0.0
        }
    } else {
        1.0
    };

    let log_sum: f64 = precisions.iter().map(|&p| floored_ln(p)).sum();
    let score = brevity_penalty * (log_sum / MAX_NGRAM_ORDER as f64).exp();

    BleuResult {
        score,
        counts: stats.counts,
        totals: stats.totals,
        precisions,
        brevity_penalty,
        sys_len: stats.sys_len,
        ref_len: stats.ref_len,
    }
}

/// Corpus BLEU of `hyps` against segment-aligned single references.
pub fn bleu_with(
    hyps: &[String],
    refs: &[String],
    sig: &MetricSignature,
) -> Result<BleuResult, MetricsError> {
    if hyps.len() != refs.len() {
        return Err(MetricsError::LengthMismatch { hyps: hyps.len(), refs: refs.len() });
    }
    if hyps.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let stats = hyps
        .par_iter()
        .zip(refs.par_iter())
        .map(|(h, r)| segment_stats(h, r, sig.case))
        .reduce(SegmentStats::default, SegmentStats::add);
    Ok(compute(stats, sig.smoothing))
}

/// [`bleu_with`] under the default signature
/// (`#:1|c:mixed|e:no|tok:13a|s:exp|v:2.0.0`).
pub fn bleu(hyps: &[String], refs: &[String]) -> Result<BleuResult, MetricsError> {
    bleu_with(hyps, refs, &MetricSignature::bleu())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_scores_100() {
        let text = v(&["The quick brown fox jumps over the lazy dog."]);
        let r = bleu(&text, &text).unwrap();
        assert!((r.score - 100.0).abs() < 1e-9);
        assert_eq!(r.brevity_penalty, 1.0);
        assert_eq!(r.counts, r.totals);
    }

    #[test]
    fn short_hypothesis_with_no_fourgrams_scores_zero() {
        let hyps = v(&["the cat sat"]);
        let refs = v(&["the cat sat on the mat"]);
        let r = bleu(&hyps, &refs).unwrap();
        assert_eq!(r.score, 0.0);
        assert_eq!(r.counts, [3, 2, 1, 0]);
        assert_eq!(r.totals, [3, 2, 1, 0]);
        assert_eq!(r.sys_len, 3);
        assert_eq!(r.ref_len, 6);
    }

    #[test]
    fn disjoint_corpus_scores_zero() {
        let r = bleu(&v(&["aaa bbb ccc"]), &v(&["xxx yyy zzz"])).unwrap();
        assert_eq!(r.score, 0.0);
        assert_eq!(r.brevity_penalty, 1.0);
        assert_eq!(r.precisions, [0.0; 4]);
    }

    #[test]
    fn clipping_caps_repeated_ngrams() {
        let r = bleu(&v(&["the the the the"]), &v(&["the cat"])).unwrap();
        assert_eq!(r.counts[0], 1);
        assert_eq!(r.totals[0], 4);
    }

    #[test]
    fn stats_sum_over_segments() {
        let hyps = v(&["a b c d", "e f g h"]);
        let refs = v(&["a b c d", "e f x h"]);
        let whole = bleu(&hyps, &refs).unwrap();
        let first = bleu(&hyps[..1].to_vec(), &refs[..1].to_vec()).unwrap();
        let second = bleu(&hyps[1..].to_vec(), &refs[1..].to_vec()).unwrap();
        for n in 0..4 {
            assert_eq!(whole.counts[n], first.counts[n] + second.counts[n]);
            assert_eq!(whole.totals[n], first.totals[n] + second.totals[n]);
        }
    }

    #[test]
    fn mismatched_lengths_rejected() {
        let e = bleu(&v(&["a", "b"]), &v(&["a"])).unwrap_err();
        assert!(matches!(e, MetricsError::LengthMismatch { hyps: 2, refs: 1 }));
        assert!(matches!(bleu(&[], &[]).unwrap_err(), MetricsError::EmptyCorpus));
    }

    #[test]
    fn empty_hypothesis_gets_zero_brevity_penalty() {
        let r = bleu(&v(&[""]), &v(&["a b"])).unwrap();
        assert_eq!(r.score, 0.0);
        assert_eq!(r.sys_len, 0);
        assert_eq!(r.ref_len, 2);
    }
}
