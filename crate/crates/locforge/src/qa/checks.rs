//! The automatic QA checks and the suite driver.

use std::collections::BTreeMap;
use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::BiSegment;
use crate::locfile::{extract_placeholders_with, PlaceholderConfig, Side};

use super::config::{
    GenderLexicon, QaConfig, RegisterConfig, RegisterProfile, Termbase, VerbFormConfig,
};
use super::finding::{summarize, Evidence, QaCategory, QaFinding, Severity};
use super::words::{find_term_spans, is_word_char, word_matches, word_spans};
use super::QaError;

fn is_french(lang: &str) -> bool {
    lang.split(['-', '_']).next().is_some_and(|p| p.eq_ignore_ascii_case("fr"))
}

fn is_english(lang: &str) -> bool {
    lang.split(['-', '_']).next().is_some_and(|p| p.eq_ignore_ascii_case("en"))
}

fn side_text(seg: &BiSegment, side: Side) -> &str {
    match side {
        Side::Source => &seg.source_text,
        Side::Target => &seg.target_text,
    }
}

fn placeholder_spans(seg: &BiSegment, side: Side, config: &PlaceholderConfig) -> Vec<(usize, usize)> {
    extract_placeholders_with(side_text(seg, side), config)
        .into_iter()
        .map(|p| (p.start, p.end))
        .collect()
}

fn inside_any(span: (usize, usize), regions: &[(usize, usize)]) -> bool {
    regions.iter().any(|&(s, e)| span.0 >= s && span.1 <= e)
}

fn overlaps_any(span: (usize, usize), regions: &[(usize, usize)]) -> bool {
    regions.iter().any(|&(s, e)| span.0 < e && span.1 > s)
}

/// Compares placeholder multisets between the two sides; a difference is
/// one error finding with per-literal evidence. No finding if and only if
/// the multisets are equal.
pub fn check_placeholders(seg: &BiSegment) -> Vec<QaFinding> {
    check_placeholders_with(seg, &PlaceholderConfig::default())
}

pub fn check_placeholders_with(seg: &BiSegment, config: &PlaceholderConfig) -> Vec<QaFinding> {
    let mut occurrences: BTreeMap<String, (Vec<(usize, usize)>, Vec<(usize, usize)>)> =
        BTreeMap::new();
    for p in extract_placeholders_with(&seg.source_text, config) {
        occurrences.entry(p.literal).or_default().0.push((p.start, p.end));
    }
    for p in extract_placeholders_with(&seg.target_text, config) {
        occurrences.entry(p.literal).or_default().1.push((p.start, p.end));
    }

    let mut finding = QaFinding::new(seg, QaCategory::PlaceholderMismatch, Severity::Error);
    for (literal, (src, tgt)) in &occurrences {
        // Cite the first unmatched occurrence on the surplus side.
        if src.len() > tgt.len() {
            finding.evidence.push(Evidence::cite(seg, Side::Source, src[tgt.len()]));
            finding.notes.push(format!(
                "`{literal}` missing on target (source has {}, target has {})",
                src.len(),
                tgt.len()
            ));
        } else if tgt.len() > src.len() {
            finding.evidence.push(Evidence::cite(seg, Side::Target, tgt[src.len()]));
            finding.notes.push(format!(
                "`{literal}` extra on target (source has {}, target has {})",
                src.len(),
                tgt.len()
            ));
        }
    }
    if finding.evidence.is_empty() {
        Vec::new()
    } else {
        vec![finding]
    }
}

/// Terminology conformance. Per termbase entry whose source term occurs in
/// the source text, the first matching clause wins:
/// a forbidden target rendering present → error; the source term itself
/// left verbatim in the target without the mandated rendering → error;
/// neither the mandated rendering nor the source term present → warning
/// (possible paraphrase).
pub fn check_terms(seg: &BiSegment, termbase: &Termbase) -> Vec<QaFinding> {
    let mut findings = Vec::new();
    for entry in &termbase.entries {
        let src_spans = find_term_spans(&seg.source_text, &entry.source_term, entry.case_sensitive);
        let Some(&first_src) = src_spans.first() else {
            continue;
        };
        let src_evidence = Evidence::cite(seg, Side::Source, first_src);

        let forbidden_hit = entry.forbidden_targets.iter().find_map(|forbidden| {
            find_term_spans(&seg.target_text, forbidden, entry.case_sensitive)
                .first()
                .map(|&span| (forbidden.as_str(), span))
        });
        if let Some((forbidden, span)) = forbidden_hit {
            findings.push(
                QaFinding::new(seg, QaCategory::TermViolation, Severity::Error)
                    .with_evidence(src_evidence)
                    .with_evidence(Evidence::cite(seg, Side::Target, span))
                    .with_note(format!(
                        "{:?} must be rendered {:?}; found forbidden {forbidden:?}",
                        entry.source_term, entry.target_term
                    )),
            );
            continue;
        }

        let term_ok =
            !find_term_spans(&seg.target_text, &entry.target_term, entry.case_sensitive).is_empty();
        let verbatim =
            find_term_spans(&seg.target_text, &entry.source_term, entry.case_sensitive);
        if let Some(&span) = verbatim.first() {
            if !term_ok {
                findings.push(
                    QaFinding::new(seg, QaCategory::UntranslatedTerm, Severity::Error)
                        .with_evidence(src_evidence)
                        .with_evidence(Evidence::cite(seg, Side::Target, span))
                        .with_note(format!(
                            "{:?} left untranslated; expected {:?}",
                            entry.source_term, entry.target_term
                        )),
                );
            }
            continue;
        }
        if !term_ok {
            findings.push(
                QaFinding::new(seg, QaCategory::TermViolation, Severity::Warning)
                    .with_evidence(src_evidence)
                    .with_note(format!(
                        "expected {:?} for {:?} in target; possible paraphrase",
                        entry.target_term, entry.source_term
                    )),
            );
        }
    }
    findings
}

/// Words of `text` outside `exempt` regions, each with its capitalization.
struct CasedWord {
    span: (usize, usize),
    capitalized: bool,
}

fn cased_words(text: &str, exempt: &[(usize, usize)]) -> Vec<CasedWord> {
    word_spans(text)
        .into_iter()
        .filter(|&span| !overlaps_any(span, exempt))
        .map(|span| CasedWord {
            span,
            capitalized: text[span.0..span.1].chars().next().is_some_and(char::is_uppercase),
        })
        .collect()
}

/// Whether the word starting at `start` opens a sentence: only whitespace,
/// quotes, or dashes back to the start of text or to closing punctuation.
fn sentence_initial(text: &str, start: usize) -> bool {
    for c in text[..start].chars().rev() {
        if c.is_whitespace() || matches!(c, '«' | '»' | '"' | '“' | '”' | '(' | '[' | '-' | '—') {
            continue;
        }
        return matches!(c, '.' | '!' | '?' | '…' | ':');
    }
    true
}

/// Whether two consecutive words are separated by spacing (and optional
/// hyphens) only, with no intervening punctuation.
fn plain_gap(text: &str, prev_end: usize, next_start: usize) -> bool {
    text[prev_end..next_start].chars().all(|c| c.is_whitespace() || c == '-' || c == '’' || c == '\'')
}

/// Maximal runs of consecutive words satisfying `qualify`, with gaps
/// restricted by `gap_ok`; returns (first_word_index, span) per run kept by
/// `min_len`.
fn capitalized_runs(
    text: &str,
    words: &[CasedWord],
    min_len: usize,
    mut qualify: impl FnMut(usize, &CasedWord) -> bool,
) -> Vec<(usize, usize)> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < words.len() {
        if !qualify(i, &words[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < words.len()
            && qualify(i + 1, &words[i + 1])
            && plain_gap(text, words[i].span.1, words[i + 1].span.0)
        {
            i += 1;
        }
        if i - start + 1 >= min_len {
            runs.push((words[start].span.0, words[i].span.1));
        }
        i += 1;
    }
    runs
}

/// Flags French targets that copy English title-casing: a run of two or
/// more capitalized words past the sentence start, while the source shows
/// a title-case run of its own. Termbase renderings and placeholders are
/// exempt. Non-French targets get one info note and are otherwise skipped.
pub fn check_capitalization(seg: &BiSegment, termbase: &Termbase) -> Vec<QaFinding> {
    check_capitalization_with(seg, termbase, &PlaceholderConfig::default())
}

pub fn check_capitalization_with(
    seg: &BiSegment,
    termbase: &Termbase,
    placeholders: &PlaceholderConfig,
) -> Vec<QaFinding> {
    if !is_french(&seg.target_lang) {
        return vec![QaFinding::new(seg, QaCategory::CapitalizationDrift, Severity::Info)
            .with_note(format!(
                "target language {:?} is not French; capitalization check skipped",
                seg.target_lang
            ))];
    }

    let src_exempt = placeholder_spans(seg, Side::Source, placeholders);
    let src_words = cased_words(&seg.source_text, &src_exempt);
    let src_runs =
        capitalized_runs(&seg.source_text, &src_words, 2, |_, w| w.capitalized);
    let Some(&src_run) = src_runs.first() else {
        return Vec::new();
    };

    let mut tgt_exempt = placeholder_spans(seg, Side::Target, placeholders);
    for entry in &termbase.entries {
        tgt_exempt.extend(find_term_spans(
            &seg.target_text,
            &entry.target_term,
            entry.case_sensitive,
        ));
    }
    let tgt_words = cased_words(&seg.target_text, &tgt_exempt);
    let tgt_runs = capitalized_runs(&seg.target_text, &tgt_words, 2, |_, w| {
        w.capitalized && !sentence_initial(&seg.target_text, w.span.0)
    });

    tgt_runs
        .into_iter()
        .map(|run| {
            QaFinding::new(seg, QaCategory::CapitalizationDrift, Severity::Warning)
                .with_evidence(Evidence::cite(seg, Side::Target, run))
                .with_evidence(Evidence::cite(seg, Side::Source, src_run))
                .with_note("French prose does not keep English title-casing".to_string())
        })
        .collect()
}

/// Whether the source addresses the player, per the lexicon's markers.
fn addresses_player(seg: &BiSegment, lex: &GenderLexicon) -> bool {
    let words = word_spans(&seg.source_text);
    let mut lowered: Option<String> = None;
    lex.player_referent_markers.iter().any(|marker| {
        if marker.chars().all(|c| is_word_char(c) || c == '\'' || c == '’') {
            words.iter().any(|&span| word_matches(&seg.source_text, span, marker))
        } else {
            lowered
                .get_or_insert_with(|| seg.source_text.to_lowercase())
                .contains(marker.as_str())
        }
    })
}

/// Flags gendered target vocabulary in player-directed lines. Purely
/// lexical: each target word matching a masculine or feminine lexicon form
/// is one warning, with the pair's neutral alternatives as suggestions.
pub fn check_gender(seg: &BiSegment, lex: &GenderLexicon) -> Vec<QaFinding> {
    if !lex.is_usable() || !addresses_player(seg, lex) {
        return Vec::new();
    }
    let mut findings = Vec::new();
    for &span in &word_spans(&seg.target_text) {
        for pair in &lex.gendered_pairs {
            let masculine = word_matches(&seg.target_text, span, &pair.masculine);
            let feminine = !masculine && word_matches(&seg.target_text, span, &pair.feminine);
            if !masculine && !feminine {
                continue;
            }
            let mut finding = QaFinding::new(seg, QaCategory::GenderMarked, Severity::Warning)
                .with_evidence(Evidence::cite(seg, Side::Target, span))
                .with_note(format!(
                    "gendered form in a player-directed line (pair {}/{})",
                    pair.masculine, pair.feminine
                ));
            for alt in &pair.neutral_alternatives {
                finding.notes.push(format!("neutral alternative: {alt}"));
            }
            findings.push(finding);
            break;
        }
    }
    findings
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RegisterFamily {
    Tu,
    Vous,
}

impl RegisterFamily {
    fn name(self) -> &'static str {
        match self {
            RegisterFamily::Tu => "tu",
            RegisterFamily::Vous => "vous",
        }
    }
}

fn register_hits(text: &str, config: &RegisterConfig) -> Vec<((usize, usize), RegisterFamily)> {
    let mut hits = Vec::new();
    for &span in &word_spans(text) {
        if config.tu_words.iter().any(|w| word_matches(text, span, w)) {
            hits.push((span, RegisterFamily::Tu));
            continue;
        }
        if config.vous_words.iter().any(|w| word_matches(text, span, w)) {
            hits.push((span, RegisterFamily::Vous));
            continue;
        }
        let folded = text[span.0..span.1].to_lowercase();
        if config.ending_exempt.iter().any(|w| *w == folded) {
            continue;
        }
        let ends = |suffixes: &[String]| {
            suffixes.iter().any(|s| folded.len() > s.len() && folded.ends_with(s.as_str()))
        };
        if ends(&config.vous_verb_endings) {
            hits.push((span, RegisterFamily::Vous));
        } else if ends(&config.tu_verb_endings) {
            hits.push((span, RegisterFamily::Tu));
        }
    }
    hits
}

/// Checks tu/vous consistency across one conversation.
///
/// The group must share one value under the `conversation_key` meta key.
/// One error is emitted if both register families occur in the group, or
/// if the observed family contradicts a `tu`/`vous` profile; the finding
/// attaches to the first segment with contradicting evidence.
/// `segment_index` in the returned findings is the position within
/// `group`.
pub fn check_register(
    group: &[BiSegment],
    config: &RegisterConfig,
    profile: RegisterProfile,
    conversation_key: &str,
) -> Result<Vec<QaFinding>, QaError> {
    let indexed: Vec<(usize, &BiSegment)> = group.iter().enumerate().collect();
    for (_, seg) in &indexed {
        if !seg.meta.contains_key(conversation_key) {
            return Err(QaError::MissingConversationKey {
                key: conversation_key.to_string(),
                segment_id: seg.id,
            });
        }
    }
    Ok(register_group(&indexed, config, profile))
}

/// Register analysis over `(position, segment)` pairs sharing one
/// conversation; positions flow into `segment_index`.
fn register_group(
    group: &[(usize, &BiSegment)],
    config: &RegisterConfig,
    profile: RegisterProfile,
) -> Vec<QaFinding> {
    let mut first_tu: Option<(usize, &BiSegment, (usize, usize))> = None;
    let mut first_vous: Option<(usize, &BiSegment, (usize, usize))> = None;
    for &(index, seg) in group {
        for (span, family) in register_hits(&seg.target_text, config) {
            let slot = match family {
                RegisterFamily::Tu => &mut first_tu,
                RegisterFamily::Vous => &mut first_vous,
            };
            if slot.is_none() {
                *slot = Some((index, seg, span));
            }
        }
    }

    let build = |at: (usize, &BiSegment, (usize, usize)), note: String| {
        let (index, seg, span) = at;
        let mut finding =
            QaFinding::new(seg, QaCategory::RegisterInconsistent, Severity::Error)
                .with_evidence(Evidence::cite(seg, Side::Target, span))
                .with_note(note);
        finding.segment_index = index;
        finding
    };

    match (first_tu, first_vous) {
        (Some(tu), Some(vous)) => {
            // Attach to whichever family appeared later in the corpus.
            let (later, earlier_excerpt, earlier_family) = if tu.0 <= vous.0 {
                (vous, &tu.1.target_text[tu.2 .0..tu.2 .1], RegisterFamily::Tu)
            } else {
                (tu, &vous.1.target_text[vous.2 .0..vous.2 .1], RegisterFamily::Vous)
            };
            vec![build(
                later,
                format!(
                    "conversation mixes tu and vous; earlier {} evidence: {earlier_excerpt:?}",
                    earlier_family.name()
                ),
            )]
        }
        (Some(tu), None) if profile == RegisterProfile::Vous => vec![build(
            tu,
            "conversation uses tu but the project register profile mandates vous".to_string(),
        )],
        (None, Some(vous)) if profile == RegisterProfile::Tu => vec![build(
            vous,
            "conversation uses vous but the project register profile mandates tu".to_string(),
        )],
        _ => Vec::new(),
    }
}

/// Flags English segments opening on a bare base-form verb, where French
/// must choose between imperative (`-ez`) and infinitive (`-er`) readings.
pub fn flag_ambiguous_verb_forms(seg: &BiSegment, config: &VerbFormConfig) -> Vec<QaFinding> {
    if !is_english(&seg.source_lang) {
        return Vec::new();
    }
    let exempt = placeholder_spans(seg, Side::Source, &PlaceholderConfig::default());
    let mut words =
        word_spans(&seg.source_text).into_iter().filter(|&span| !inside_any(span, &exempt));
    let Some(first) = words.next() else {
        return Vec::new();
    };
    let is_verb =
        config.base_verbs.iter().any(|verb| word_matches(&seg.source_text, first, verb));
    if !is_verb {
        return Vec::new();
    }
    vec![QaFinding::new(seg, QaCategory::AmbiguousVerbForm, Severity::Info)
        .with_evidence(Evidence::cite(seg, Side::Source, first))
        .with_note("reading: imperative (French -ez)".to_string())
        .with_note("reading: infinitive (French -er)".to_string())]
}

fn all_caps_word(word: &str) -> bool {
    word.chars().count() >= 2
        && word.chars().any(char::is_alphabetic)
        && !word.chars().any(char::is_lowercase)
}

/// Flags maximal runs of all-caps source words (length ≥ 2), which MT
/// systems tend to garble. Placeholders are exempt; runs break at any
/// non-space character.
pub fn flag_allcaps(seg: &BiSegment) -> Vec<QaFinding> {
    flag_allcaps_with(seg, &PlaceholderConfig::default())
}

pub fn flag_allcaps_with(seg: &BiSegment, config: &PlaceholderConfig) -> Vec<QaFinding> {
    let exempt = placeholder_spans(seg, Side::Source, config);
    let text = &seg.source_text;
    let words: Vec<(usize, usize)> =
        word_spans(text).into_iter().filter(|&span| !inside_any(span, &exempt)).collect();

    let mut findings = Vec::new();
    let mut i = 0;
    while i < words.len() {
        if !all_caps_word(&text[words[i].0..words[i].1]) {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < words.len()
            && all_caps_word(&text[words[i + 1].0..words[i + 1].1])
            && text[words[i].1..words[i + 1].0].chars().all(char::is_whitespace)
        {
            i += 1;
        }
        let span = (words[start].0, words[i].1);
        findings.push(
            QaFinding::new(seg, QaCategory::AllCapsRisk, Severity::Info)
                .with_evidence(Evidence::cite(seg, Side::Source, span))
                .with_note("all-caps runs often confuse MT systems".to_string()),
        );
        i += 1;
    }
    findings
}

/// A full QA run: every finding plus per-category counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QaReport {
    pub findings: Vec<QaFinding>,
    pub summary: BTreeMap<String, usize>,
}

/// Runs the enabled checks over a corpus.
///
/// Per-segment checks run in parallel; the register check runs once per
/// conversation group (segments sharing a value under the configured
/// conversation meta key — segments without the key are not register
/// checked). Findings come back sorted by (segment position, category,
/// first evidence position), identically on every run.
pub fn run_suite(segments: &[BiSegment], config: &QaConfig) -> Result<QaReport, QaError> {
    let placeholders = PlaceholderConfig { extra_literals: config.placeholder_literals.clone() };

    let per_segment: Vec<Vec<QaFinding>> = segments
        .par_iter()
        .enumerate()
        .map(|(index, seg)| {
            let mut findings = Vec::new();
            if config.enabled.placeholders {
                findings.extend(check_placeholders_with(seg, &placeholders));
            }
            if config.enabled.terms {
                findings.extend(check_terms(seg, &config.termbase));
            }
            if config.enabled.capitalization {
                findings.extend(check_capitalization_with(seg, &config.termbase, &placeholders));
            }
            if config.enabled.gender {
                findings.extend(check_gender(seg, &config.gender_lexicon));
            }
            if config.enabled.ambiguous_verbs {
                findings.extend(flag_ambiguous_verb_forms(seg, &config.verb_forms));
            }
            if config.enabled.all_caps {
                findings.extend(flag_allcaps_with(seg, &placeholders));
            }
            for finding in &mut findings {
                finding.segment_index = index;
            }
            findings
        })
        .collect();
    let mut findings: Vec<QaFinding> = per_segment.into_iter().flatten().collect();

    if config.enabled.register {
        let mut order: Vec<&str> = Vec::new();
        let mut groups: HashMap<&str, Vec<(usize, &BiSegment)>> = HashMap::new();
        for (index, seg) in segments.iter().enumerate() {
            if let Some(value) = seg.meta.get(&config.conversation_key) {
                groups
                    .entry(value.as_str())
                    .or_insert_with(|| {
                        order.push(value.as_str());
                        Vec::new()
                    })
                    .push((index, seg));
            }
        }
        for key in order {
            findings.extend(register_group(
                &groups[key],
                &config.register,
                config.register_profile,
            ));
        }
    }

    findings.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    let summary = summarize(&findings);
    Ok(QaReport { findings, summary })
}
