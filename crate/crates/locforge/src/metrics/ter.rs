//! Translation edit rate with tercom semantics: greedy block shifts that
//! strictly reduce word edit distance, then insertions/deletions/
//! substitutions, all at cost 1, against the reference token count.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::signature::{CaseHandling, MetricSignature};
use super::MetricsError;

const MAX_SHIFT_SIZE: usize = 10;
const MAX_SHIFT_DIST: i64 = 50;
const BEAM_WIDTH: i64 = 25;
const MAX_SHIFT_CANDIDATES: usize = 1000;
const INT_INFINITY: i64 = 10_000_000_000_000_000;

/// Per-segment edit breakdown. `score()` is the segment-level rate; corpus
/// scores divide summed edits by summed reference lengths instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerAlignment {
    pub insertions: u64,
    pub deletions: u64,
    pub substitutions: u64,
    pub shifts: u64,
    pub ref_length: u64,
}

impl TerAlignment {
    pub fn num_edits(&self) -> u64 {
        self.insertions + self.deletions + self.substitutions + self.shifts
    }

    /// `100 * edits / ref_length`. A segment with an empty reference scores
    /// 100 if it has any edits, else 0 (tercom convention).
    pub fn score(&self) -> f64 {
        if self.ref_length > 0 {
            100.0 * self.num_edits() as f64 / self.ref_length as f64
        } else if self.num_edits() > 0 {
            100.0
        } else {
            0.0
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TerResult {
    pub score: f64,
    pub num_edits: u64,
    pub ref_length: u64,
}

/// Tokens are interned to integers per segment pair; the edit machinery
/// only ever tests equality.
type Tok = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Op {
    Match,
    Sub,
    /// Hypothesis word with no reference counterpart.
    Ins,
    /// Reference word with no hypothesis counterpart.
    Del,
}

/// Beam-limited Levenshtein distance against a fixed reference, with
/// operation traceback. The beam follows the length-ratio diagonal; the
/// final row is always evaluated in full so the returned distance is exact
/// for the paths the beam admits.
struct BeamEd<'a> {
    words_ref: &'a [Tok],
}

impl<'a> BeamEd<'a> {
    fn new(words_ref: &'a [Tok]) -> Self {
        BeamEd { words_ref }
    }

    fn call(&self, words_h: &[Tok]) -> (i64, Vec<Op>) {
        let n_h = words_h.len();
        let n_ref = self.words_ref.len();
        let mut dist = vec![vec![(INT_INFINITY, Op::Match); n_ref + 1]; n_h + 1];
        for (j, cell) in dist[0].iter_mut().enumerate() {
            *cell = (j as i64, Op::Del);
        }

        let length_ratio = if n_h > 0 { n_ref as f64 / n_h as f64 } else { 1.0 };
        let beam_width = if (BEAM_WIDTH as f64) < length_ratio / 2.0 {
            (length_ratio / 2.0 + BEAM_WIDTH as f64).ceil() as i64
        } else {
            BEAM_WIDTH
        };

        for i in 1..=n_h {
            let pseudo_diag = (i as f64 * length_ratio).floor() as i64;
            let min_j = (pseudo_diag - beam_width).max(0);
            let mut max_j = (pseudo_diag + beam_width).min(n_ref as i64 + 1);
            if i == n_h {
                max_j = n_ref as i64 + 1;
            }
            for j in min_j..max_j {
                let j = j as usize;
                if j == 0 {
                    dist[i][0] = (dist[i - 1][0].0 + 1, Op::Ins);
                } else {
                    let diag = if words_h[i - 1] == self.words_ref[j - 1] {
                        (dist[i - 1][j - 1].0, Op::Match)
                    } else {
                        (dist[i - 1][j - 1].0 + 1, Op::Sub)
                    };
                    let ops = [diag, (dist[i - 1][j].0 + 1, Op::Ins), (dist[i][j - 1].0 + 1, Op::Del)];
                    for (cost, op) in ops {
                        if dist[i][j].0 > cost {
                            dist[i][j] = (cost, op);
                        }
                    }
                }
            }
        }

        let mut trace = Vec::with_capacity(n_h + n_ref);
        let (mut i, mut j) = (n_h, n_ref);
        while i > 0 || j > 0 {
            let op = dist[i][j].1;
            trace.push(op);
            match op {
                Op::Match | Op::Sub => {
                    i -= 1;
                    j -= 1;
                }
                Op::Ins => i -= 1,
                Op::Del => j -= 1,
            }
        }
        trace.reverse();
        (dist[n_h][n_ref].0, trace)
    }
}

/// Per-reference-position hypothesis alignment plus error masks: which
/// hypothesis/reference words the current trace leaves mismatched. `align`
/// maps each reference index to the hypothesis index it sits at (-1 before
/// the first hypothesis word).
fn trace_to_alignment(trace: &[Op]) -> (Vec<i64>, Vec<u8>, Vec<u8>) {
    let mut pos_hyp: i64 = -1;
    let mut align = Vec::new();
    let mut hyp_err = Vec::new();
    let mut ref_err = Vec::new();
    for op in trace {
        match op {
            Op::Match => {
                pos_hyp += 1;
                align.push(pos_hyp);
                hyp_err.push(0);
                ref_err.push(0);
            }
            Op::Sub => {
                pos_hyp += 1;
                align.push(pos_hyp);
                hyp_err.push(1);
                ref_err.push(1);
            }
            Op::Ins => {
                pos_hyp += 1;
                hyp_err.push(1);
            }
            Op::Del => {
                align.push(pos_hyp);
                ref_err.push(1);
            }
        }
    }
    (align, ref_err, hyp_err)
}

/// All hypothesis/reference sub-sequence matches eligible for shifting:
/// `(start_h, start_r, length)` with length ≤ 10 and displacement ≤ 50.
fn find_shifted_pairs(words_h: &[Tok], words_r: &[Tok]) -> Vec<(usize, usize, usize)> {
    let n_h = words_h.len();
    let n_r = words_r.len();
    let mut out = Vec::new();
    for start_h in 0..n_h {
        for start_r in 0..n_r {
            if (start_r as i64 - start_h as i64).abs() > MAX_SHIFT_DIST {
                continue;
            }
            let mut length = 0usize;
            while start_h + length < n_h
                && start_r + length < n_r
                && words_h[start_h + length] == words_r[start_r + length]
                && length < MAX_SHIFT_SIZE
            {
                length += 1;
                out.push((start_h, start_r, length));
                if n_h == start_h + length || n_r == start_r + length {
                    break;
                }
            }
        }
    }
    out
}

fn perform_shift(words: &[Tok], start: usize, length: usize, target: usize) -> Vec<Tok> {
    let n = words.len();
    let cl = |x: usize| x.min(n);
    let mut out = Vec::with_capacity(n);
    if target < start {
        out.extend_from_slice(&words[..cl(target)]);
        out.extend_from_slice(&words[cl(start)..cl(start + length)]);
        out.extend_from_slice(&words[cl(target)..cl(start)]);
        out.extend_from_slice(&words[cl(start + length)..]);
    } else if target > start + length {
        out.extend_from_slice(&words[..cl(start)]);
        out.extend_from_slice(&words[cl(start + length)..cl(target)]);
        out.extend_from_slice(&words[cl(start)..cl(start + length)]);
        out.extend_from_slice(&words[cl(target)..]);
    } else {
        out.extend_from_slice(&words[..cl(start)]);
        out.extend_from_slice(&words[cl(start + length)..cl(length + target)]);
        out.extend_from_slice(&words[cl(start)..cl(start + length)]);
        out.extend_from_slice(&words[cl(length + target)..]);
    }
    out
}

/// The single most beneficial shift of the current hypothesis. A block must
/// contain a mismatched hypothesis word, land on reference words that are
/// currently mismatched, and not already be aligned in place; ties among
/// equal gains prefer the longest block, then the smallest source index,
/// then the smallest target index.
fn best_shift(
    words_h: &[Tok],
    words_r: &[Tok],
    ed: &BeamEd,
    mut checked: usize,
) -> (i64, Option<Vec<Tok>>, usize) {
    let (pre_score, trace) = ed.call(words_h);
    let (align, ref_err, hyp_err) = trace_to_alignment(&trace);

    let mut best: Option<((i64, i64, i64, i64), Vec<Tok>)> = None;

    for (start_h, start_r, length) in find_shifted_pairs(words_h, words_r) {
        if hyp_err[start_h..start_h + length].iter().all(|&e| e == 0) {
            continue;
        }
        if ref_err[start_r..start_r + length].iter().all(|&e| e == 0) {
            continue;
        }
        let aligned = align[start_r];
        if (start_h as i64) <= aligned && aligned < (start_h + length) as i64 {
            continue;
        }

        let mut prev_idx: i64 = -1;
        for offset in -1i64..length as i64 {
            let idx = if start_r as i64 + offset == -1 {
                0
            } else {
                align[(start_r as i64 + offset) as usize] + 1
            };
            if idx == prev_idx {
                continue;
            }
            prev_idx = idx;

            let shifted = perform_shift(words_h, start_h, length, idx as usize);
            let gain = pre_score - ed.call(&shifted).0;
            let key = (gain, length as i64, -(start_h as i64), -idx);
            checked += 1;
            if best.as_ref().is_none_or(|(k, _)| key > *k) {
                best = Some((key, shifted));
            }
        }

        if checked >= MAX_SHIFT_CANDIDATES {
            break;
        }
    }

    match best {
        None => (0, None, checked),
        Some(((gain, _, _, _), words)) => (gain, Some(words), checked),
    }
}

fn edit_rate(words_hyp: &[Tok], words_ref: &[Tok]) -> TerAlignment {
    if words_ref.is_empty() {
        return TerAlignment {
            insertions: words_hyp.len() as u64,
            deletions: 0,
            substitutions: 0,
            shifts: 0,
            ref_length: 0,
        };
    }

    let ed = BeamEd::new(words_ref);
    let mut shifts = 0u64;
    let mut words = words_hyp.to_vec();
    let mut checked = 0usize;
    loop {
        let (gain, shifted, c) = best_shift(&words, words_ref, &ed, checked);
        checked = c;
        if checked >= MAX_SHIFT_CANDIDATES || gain <= 0 {
            break;
        }
        shifts += 1;
        words = shifted.unwrap();
    }

    let (_, trace) = ed.call(&words);
    let mut out = TerAlignment {
        insertions: 0,
        deletions: 0,
        substitutions: 0,
        shifts,
        ref_length: words_ref.len() as u64,
    };
    for op in trace {
        match op {
            Op::Match => {}
            Op::Sub => out.substitutions += 1,
            Op::Ins => out.insertions += 1,
            Op::Del => out.deletions += 1,
        }
    }
    out
}

fn norm_rules() -> &'static [(Regex, &'static str)] {
    static RULES: OnceLock<Vec<(Regex, &'static str)>> = OnceLock::new();
    RULES.get_or_init(|| {
        vec![
            (Regex::new(r"([\x20-\x26\x28-\x2b\x2f\x3a-\x40\x5b-\x60\x7b-\x7e])").unwrap(), " $1 "),
            (Regex::new(r"'s$").unwrap(), " 's"),
            (Regex::new(r"([^0-9])([\.,])").unwrap(), "$1 $2 "),
            (Regex::new(r"([\.,])([^0-9])").unwrap(), " $1 $2"),
            (Regex::new(r"([0-9])(-)").unwrap(), "$1 $2 "),
        ]
    })
}

/// Tercom's Western normalization pass (signature `nr:yes`).
fn normalize_western(sent: &str) -> String {
    let mut s = sent.replace("\n-", "");
    s = s.replace('\n', " ");
    s = s.replace("&quot;", "\"");
    s = s.replace("&amp;", "&");
    s = s.replace("&lt;", "<");
    s = s.replace("&gt;", ">");
    s = format!(" {s} ");
    let rules = norm_rules();
    s = rules[0].0.replace_all(&s, rules[0].1).into_owned();
    s = s.replace("'s ", " 's ");
    s = rules[1].0.replace_all(&s, rules[1].1).into_owned();
    for (re, repl) in &rules[2..] {
        s = re.replace_all(&s, *repl).into_owned();
    }
    s
}

fn strip_punct(sent: &str) -> String {
    static RE: OnceLock<Regex> = OnceLock::new();
    let re = RE.get_or_init(|| Regex::new(r#"[.,?:;!"()]"#).unwrap());
    re.replace_all(sent, "").into_owned()
}

/// Tercom tokenization per signature: trim trailing whitespace, lowercase
/// (`c:lc`), optional normalization (`nr`), optional punctuation removal
/// (`pn:no`), split on whitespace.
fn tercom_tokenize(sent: &str, sig: &MetricSignature) -> Vec<String> {
    let sent = sent.trim_end();
    if sent.is_empty() {
        return Vec::new();
    }
    let mut s = match sig.case {
        CaseHandling::Lower => sent.to_lowercase(),
        CaseHandling::Mixed => sent.to_string(),
    };
    if sig.normalized {
        s = normalize_western(&s);
    }
    if !sig.punctuation_tokenized {
        s = strip_punct(&s);
    }
    s.split_whitespace().map(str::to_string).collect()
}

fn intern<'a>(hyp: &'a [String], rf: &'a [String]) -> (Vec<Tok>, Vec<Tok>) {
    let mut table: HashMap<&'a str, Tok> = HashMap::new();
    let mut out_h = Vec::with_capacity(hyp.len());
    let mut out_r = Vec::with_capacity(rf.len());
    for (words, out) in [(hyp, &mut out_h), (rf, &mut out_r)] {
        for w in words {
            let next = table.len() as Tok;
            out.push(*table.entry(w.as_str()).or_insert(next));
        }
    }
    (out_h, out_r)
}

fn segment_alignment(hyp: &str, rf: &str, sig: &MetricSignature) -> TerAlignment {
    let hyp_words = tercom_tokenize(hyp, sig);
    let ref_words = tercom_tokenize(rf, sig);
    let (h, r) = intern(&hyp_words, &ref_words);
    edit_rate(&h, &r)
}

/// Corpus TER of `hyps` against segment-aligned single references, with the
/// per-segment edit breakdowns.
pub fn ter_with(
    hyps: &[String],
    refs: &[String],
    sig: &MetricSignature,
) -> Result<(TerResult, Vec<TerAlignment>), MetricsError> {
    if hyps.len() != refs.len() {
        return Err(MetricsError::LengthMismatch { hyps: hyps.len(), refs: refs.len() });
    }
    if hyps.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let alignments: Vec<TerAlignment> = hyps
        .par_iter()
        .zip(refs.par_iter())
        .map(|(h, r)| segment_alignment(h, r, sig))
        .collect();
    let num_edits: u64 = alignments.iter().map(TerAlignment::num_edits).sum();
    let ref_length: u64 = alignments.iter().map(|a| a.ref_length).sum();
    if ref_length == 0 {
        return Err(MetricsError::EmptyRef);
    }
    let score = 100.0 * num_edits as f64 / ref_length as f64;
    Ok((TerResult { score, num_edits, ref_length }, alignments))
}

/// [`ter_with`] under the default signature
/// (`#:1|c:lc|t:tercom|nr:no|pn:yes|a:no|v:2.0.0`).
pub fn ter(hyps: &[String], refs: &[String]) -> Result<(TerResult, Vec<TerAlignment>), MetricsError> {
    ter_with(hyps, refs, &MetricSignature::ter())
}
