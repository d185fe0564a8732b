//! Corpus chrF2++: character n-gram F-score (orders 1..6) blended with word
//! n-grams (orders 1..2), beta = 2.

use std::collections::HashMap;

use rayon::prelude::*;

use super::signature::{CaseHandling, MetricSignature, Smoothing};
use super::MetricsError;

/// Punctuation split off word edges before word n-gram extraction.
const PUNCTS: &str = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

#[derive(Debug, Clone, PartialEq)]
pub struct ChrfResult {
    pub score: f64,
    pub char_order: usize,
    pub word_order: usize,
    pub beta: f64,
}

/// Byte offsets of char boundaries: `text[bounds[i]..bounds[i+n]]` is the
/// char n-gram of order `n` starting at char `i`.
fn char_bounds(text: &str) -> Vec<usize> {
    let mut bounds: Vec<usize> = text.char_indices().map(|(i, _)| i).collect();
    bounds.push(text.len());
    bounds
}

fn ngram_counts<'a>(
    text: &'a str,
    bounds: &[usize],
    n: usize,
) -> HashMap<&'a str, u64> {
    let chars = bounds.len() - 1;
    let mut counts = HashMap::new();
    if chars >= n {
        for i in 0..=(chars - n) {
            *counts.entry(&text[bounds[i]..bounds[i + n]]).or_insert(0) += 1;
        }
    }
    counts
}

/// Splits a leading or trailing punctuation char off each multi-char word.
fn punctuation_split(text: &str) -> Vec<&str> {
    let mut words = Vec::new();
    for w in text.split_whitespace() {
        let mut chars = w.char_indices();
        let (_, first) = chars.next().unwrap();
        match chars.next() {
            None => words.push(w),
            Some((second_start, _)) => {
                let last_start = w.char_indices().last().unwrap().0;
                let last = w[last_start..].chars().next().unwrap();
                if last.is_ascii() && PUNCTS.contains(last) {
                    words.push(&w[..last_start]);
                    words.push(&w[last_start..]);
                } else if first.is_ascii() && PUNCTS.contains(first) {
                    words.push(&w[..second_start]);
                    words.push(&w[second_start..]);
                } else {
                    words.push(w);
                }
            }
        }
    }
    words
}

fn word_ngram_counts<'a>(
    joined: &'a str,
    starts: &[usize],
    ends: &[usize],
    n: usize,
) -> HashMap<&'a str, u64> {
    let mut counts = HashMap::new();
    if starts.len() >= n {
        for i in 0..=(starts.len() - n) {
            *counts.entry(&joined[starts[i]..ends[i + n - 1]]).or_insert(0) += 1;
        }
    }
    counts
}

/// `[hyp_total, ref_total, matches]` for one order; the hypothesis total is
/// zeroed when the reference has no n-grams of that order so unmatched
/// hypothesis mass cannot hurt precision where no match was possible.
fn match_stats(hyp: &HashMap<&str, u64>, rf: &HashMap<&str, u64>) -> [u64; 3] {
    let mut matches = 0;
    let mut hyp_total = 0;
    for (gram, &count) in hyp {
        hyp_total += count;
        if let Some(&rc) = rf.get(gram) {
            matches += count.min(rc);
        }
    }
    let ref_total: u64 = rf.values().sum();
    [if rf.is_empty() { 0 } else { hyp_total }, ref_total, matches]
}

struct Prepared {
    stripped: String,
    word_joined: String,
    word_starts: Vec<usize>,
    word_ends: Vec<usize>,
}

fn prepare(text: &str, case: CaseHandling, word_order: usize) -> Prepared {
    let text = match case {
        CaseHandling::Lower => text.to_lowercase(),
        CaseHandling::Mixed => text.to_string(),
    };
    let stripped: String = text.split_whitespace().collect();
    let (word_joined, word_starts, word_ends) = if word_order > 0 {
        let words = punctuation_split(&text);
        let joined = words.join(" ");
        let mut starts = Vec::with_capacity(words.len());
        let mut ends = Vec::with_capacity(words.len());
        let mut pos = 0;
        for w in &words {
            starts.push(pos);
            pos += w.len();
            ends.push(pos);
            pos += 1;
        }
        (joined, starts, ends)
    } else {
        (String::new(), Vec::new(), Vec::new())
    };
    Prepared { stripped, word_joined, word_starts, word_ends }
}

fn segment_stats(hyp: &str, rf: &str, sig: &MetricSignature) -> Vec<u64> {
    let h = prepare(hyp, sig.case, sig.word_order);
    let r = prepare(rf, sig.case, sig.word_order);
    let hb = char_bounds(&h.stripped);
    let rb = char_bounds(&r.stripped);

    let mut stats = Vec::with_capacity(3 * (sig.char_order + sig.word_order));
    for n in 1..=sig.char_order {
        let hc = ngram_counts(&h.stripped, &hb, n);
        let rc = ngram_counts(&r.stripped, &rb, n);
        stats.extend_from_slice(&match_stats(&hc, &rc));
    }
    for n in 1..=sig.word_order {
        let hc = word_ngram_counts(&h.word_joined, &h.word_starts, &h.word_ends, n);
        let rc = word_ngram_counts(&r.word_joined, &r.word_starts, &r.word_ends, n);
        stats.extend_from_slice(&match_stats(&hc, &rc));
    }
    stats
}

fn f_score(stats: &[u64], order: usize, beta: f64, fixed_order_eps: bool) -> f64 {
    let eps = 1e-16;
    let factor = beta * beta;
    let mut score = 0.0;
    let mut effective_order = 0usize;
    let mut avg_prec = 0.0;
    let mut avg_rec = 0.0;

    for i in 0..order {
        let n_hyp = stats[3 * i] as f64;
        let n_ref = stats[3 * i + 1] as f64;
        let n_match = stats[3 * i + 2] as f64;

        let prec = if n_hyp > 0.0 { n_match / n_hyp } else { eps };
        let rec = if n_ref > 0.0 { n_match / n_ref } else { eps };
        let denom = factor * prec + rec;
        score += if denom > 0.0 { (1.0 + factor) * prec * rec / denom } else { eps };

        if n_hyp > 0.0 && n_ref > 0.0 {
            avg_prec += prec;
            avg_rec += rec;
            effective_order += 1;
        }
    }

    if fixed_order_eps {
        return 100.0 * score / order as f64;
    }

    if effective_order == 0 {
        return 0.0;
    }
    avg_prec /= effective_order as f64;
    avg_rec /= effective_order as f64;
    if avg_prec + avg_rec != 0.0 {
        100.0 * (1.0 + factor) * avg_prec * avg_rec / (factor * avg_prec + avg_rec)
    } else {
        0.0
    }
}

/// Corpus chrF of `hyps` against segment-aligned single references.
pub fn chrf2pp_with(
    hyps: &[String],
    refs: &[String],
    sig: &MetricSignature,
) -> Result<ChrfResult, MetricsError> {
    if hyps.len() != refs.len() {
        return Err(MetricsError::LengthMismatch { hyps: hyps.len(), refs: refs.len() });
    }
    if hyps.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let order = sig.char_order + sig.word_order;
    let agg = hyps
        .par_iter()
        .zip(refs.par_iter())
        .map(|(h, r)| segment_stats(h, r, sig))
        .reduce(
            || vec![0u64; 3 * order],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let fixed_order_eps = !matches!(sig.smoothing, Smoothing::Eps);
    Ok(ChrfResult {
        score: f_score(&agg, order, sig.beta, fixed_order_eps),
        char_order: sig.char_order,
        word_order: sig.word_order,
        beta: sig.beta,
    })
}

/// [`chrf2pp_with`] under the default signature
/// (`#:1|c:mixed|e:yes|nc:6|nw:2|s:no|v:2.0.0`).
pub fn chrf2pp(hyps: &[String], refs: &[String]) -> Result<ChrfResult, MetricsError> {
    chrf2pp_with(hyps, refs, &MetricSignature::chrf2pp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(items: &[&str]) -> Vec<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_scores_100() {
        let text = v(&["Le chat s'assit sur le tapis."]);
        let r = chrf2pp(&text, &text).unwrap();
        assert!((r.score - 100.0).abs() < 1e-9);
    }

    #[test]
    fn single_char_swap_worked_example() {
        let r = chrf2pp(&v(&["abcd"]), &v(&["abce"])).unwrap();
        assert!((r.score - 38.333333333333336).abs() < 1e-9, "got {}", r.score);
    }

    #[test]
    fn punctuation_split_edges() {
        assert_eq!(punctuation_split("Hello, world!"), vec!["Hello", ",", "world", "!"]);
        assert_eq!(punctuation_split("a !b c."), vec!["a", "!", "b", "c", "."]);
        assert_eq!(punctuation_split("word.."), vec!["word.", "."]);
        assert_eq!(punctuation_split("! ?"), vec!["!", "?"]);
        assert_eq!(punctuation_split("l'épée"), vec!["l'épée"]);
    }

    #[test]
    fn empty_hypothesis_scores_zero() {
        let r = chrf2pp(&v(&[""]), &v(&["abc"])).unwrap();
        assert_eq!(r.score, 0.0);
    }

    #[test]
    fn whitespace_is_ignored_for_char_ngrams() {
        let mut sig = MetricSignature::chrf2pp();
        sig.word_order = 0;
        let r = chrf2pp_with(&v(&["ab cd"]), &v(&["abcd"]), &sig).unwrap();
        assert!((r.score - 100.0).abs() < 1e-9);
    }

    #[test]
    fn length_checks() {
        assert!(matches!(
            chrf2pp(&v(&["a"]), &v(&[])).unwrap_err(),
            MetricsError::LengthMismatch { .. }
        ));
        assert!(matches!(chrf2pp(&[], &[]).unwrap_err(), MetricsError::EmptyCorpus));
    }
}
