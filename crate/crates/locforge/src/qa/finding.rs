//! Finding types, JSONL round-trip, and the summary table.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::corpus::BiSegment;
use crate::locfile::Side;

use super::QaError;

/// Human-judgment error categories, imported from annotation files and
/// never produced by the automatic checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ManualCategory {
    OppositeMeaning,
    MeaningShift,
    WrongTranslation,
    Omission,
    Hallucination,
}

/// What a finding is about. Declaration order is the tiebreak order for
/// sorting findings within one segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QaCategory {
    PlaceholderMismatch,
    TermViolation,
    UntranslatedTerm,
    CapitalizationDrift,
    GenderMarked,
    RegisterInconsistent,
    AmbiguousVerbForm,
    AllCapsRisk,
    Manual(ManualCategory),
}

impl QaCategory {
    /// Stable identifier used in summaries (`manual:omission` style for
    /// annotation categories).
    pub fn slug(&self) -> String {
        match self {
            QaCategory::PlaceholderMismatch => "placeholder_mismatch".into(),
            QaCategory::TermViolation => "term_violation".into(),
            QaCategory::UntranslatedTerm => "untranslated_term".into(),
            QaCategory::CapitalizationDrift => "capitalization_drift".into(),
            QaCategory::GenderMarked => "gender_marked".into(),
            QaCategory::RegisterInconsistent => "register_inconsistent".into(),
            QaCategory::AmbiguousVerbForm => "ambiguous_verb_form".into(),
            QaCategory::AllCapsRisk => "all_caps_risk".into(),
            QaCategory::Manual(m) => format!(
                "manual:{}",
                match m {
                    ManualCategory::OppositeMeaning => "opposite_meaning",
                    ManualCategory::MeaningShift => "meaning_shift",
                    ManualCategory::WrongTranslation => "wrong_translation",
                    ManualCategory::Omission => "omission",
                    ManualCategory::Hallucination => "hallucination",
                }
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
    Info,
}

/// One cited location: a byte span of the named side plus its excerpt.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub side: Side,
    pub start: usize,
    pub end: usize,
    pub excerpt: String,
}

impl Evidence {
    /// Cites `span` of the given side of `seg`; the excerpt is copied out
    /// of the text, so the span is valid by construction.
    pub fn cite(seg: &BiSegment, side: Side, span: (usize, usize)) -> Evidence {
        let text = match side {
            Side::Source => &seg.source_text,
            Side::Target => &seg.target_text,
        };
        Evidence { side, start: span.0, end: span.1, excerpt: text[span.0..span.1].to_string() }
    }
}

/// One QA observation about one segment.
///
/// `segment_index` is the segment's position in the checked corpus
/// (assigned by `run_suite`; zero when a check is called directly), and
/// `segment_id` is the content hash, stable under reordering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QaFinding {
    pub segment_index: usize,
    pub segment_id: u64,
    pub category: QaCategory,
    pub severity: Severity,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Evidence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl QaFinding {
    pub fn new(seg: &BiSegment, category: QaCategory, severity: Severity) -> QaFinding {
        QaFinding {
            segment_index: 0,
            segment_id: seg.id,
            category,
            severity,
            evidence: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn with_evidence(mut self, evidence: Evidence) -> QaFinding {
        self.evidence.push(evidence);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> QaFinding {
        self.notes.push(note.into());
        self
    }

    /// Sort key: segment position, then category declaration order, then
    /// first evidence position.
    pub(crate) fn sort_key(&self) -> (usize, QaCategory, Option<(Side, usize)>) {
        (self.segment_index, self.category, self.evidence.first().map(|e| (e.side, e.start)))
    }
}

/// Serializes findings as JSON lines, one finding per line.
pub fn write_findings_jsonl(findings: &[QaFinding]) -> String {
    let mut out = String::new();
    for finding in findings {
        out.push_str(&serde_json::to_string(finding).expect("finding serializes"));
        out.push('\n');
    }
    out
}

/// Reads findings from JSON lines (blank lines ignored).
pub fn read_findings_jsonl(text: &str) -> Result<Vec<QaFinding>, QaError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| QaError::AnnotationRead {
                message: format!("line {}: {e}", i + 1),
            })
        })
        .collect()
}

/// Reads a human annotation file: JSON lines restricted to `Manual`
/// categories, the only findings a person may assert.
pub fn read_annotations(text: &str) -> Result<Vec<QaFinding>, QaError> {
    let findings = read_findings_jsonl(text)?;
    for (i, finding) in findings.iter().enumerate() {
        if !matches!(finding.category, QaCategory::Manual(_)) {
            return Err(QaError::AnnotationRead {
                message: format!(
                    "finding {} has automatic category {}; annotation files carry manual categories only",
                    i + 1,
                    finding.category.slug()
                ),
            });
        }
    }
    Ok(findings)
}

/// Counts findings per category slug.
pub fn summarize(findings: &[QaFinding]) -> BTreeMap<String, usize> {
    let mut summary = BTreeMap::new();
    for finding in findings {
        *summary.entry(finding.category.slug()).or_insert(0) += 1;
    }
    summary
}

/// The human-readable counts table printed after a QA run.
pub fn summary_table(summary: &BTreeMap<String, usize>) -> String {
    let mut out = String::new();
    let width = summary.keys().map(|k| k.len()).max().unwrap_or(8).max("category".len());
    let _ = writeln!(out, "{:<width$}  findings", "category");
    for (slug, count) in summary {
        let _ = writeln!(out, "{slug:<width$}  {count}");
    }
    let total: usize = summary.values().sum();
    let _ = writeln!(out, "{:<width$}  {total}", "total");
    out
}
