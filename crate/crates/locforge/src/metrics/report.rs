//! Score reports and multi-system comparison tables.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::bleu::bleu_with;
use super::chrf::chrf2pp_with;
use super::signature::{Metric, MetricSignature};
use super::ter::{ter_with, TerAlignment};
use super::MetricsError;

/// Rounds half-up to 2 decimals. Applied at report boundaries only;
/// internal metric math stays in full precision.
pub fn round2(x: f64) -> f64 {
    (x * 100.0 + 0.5).floor() / 100.0
}

/// All three metrics for one system, scores rounded to 2 decimals, each
/// carrying the full signature string it was computed under.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub system_name: String,
    pub segment_count: usize,
    pub scores: BTreeMap<Metric, f64>,
    pub signatures: BTreeMap<Metric, String>,
    pub tool_version: String,
}

impl ScoreReport {
    pub fn score(&self, metric: Metric) -> f64 {
        self.scores[&metric]
    }
}

/// Scores `hyps` against `refs` with the default signature of every metric.
/// Also returns the per-segment TER breakdowns.
pub fn score_system(
    system_name: &str,
    hyps: &[String],
    refs: &[String],
) -> Result<(ScoreReport, Vec<TerAlignment>), MetricsError> {
    score_system_with(system_name, hyps, refs, &BTreeMap::new())
}

/// Like [`score_system`], with per-metric signature overrides; metrics not
/// present in `overrides` run under their defaults.
pub fn score_system_with(
    system_name: &str,
    hyps: &[String],
    refs: &[String],
    overrides: &BTreeMap<Metric, MetricSignature>,
) -> Result<(ScoreReport, Vec<TerAlignment>), MetricsError> {
    let sigs: BTreeMap<Metric, MetricSignature> = [Metric::Bleu, Metric::Chrf2pp, Metric::Ter]
        .into_iter()
        .map(|m| (m, overrides.get(&m).cloned().unwrap_or_else(|| MetricSignature::default_for(m))))
        .collect();

    let mut scores = BTreeMap::new();
    scores.insert(Metric::Bleu, round2(bleu_with(hyps, refs, &sigs[&Metric::Bleu])?.score));
    scores.insert(Metric::Chrf2pp, round2(chrf2pp_with(hyps, refs, &sigs[&Metric::Chrf2pp])?.score));
    let (ter_result, alignments) = ter_with(hyps, refs, &sigs[&Metric::Ter])?;
    scores.insert(Metric::Ter, round2(ter_result.score));

    let signatures = sigs.iter().map(|(m, s)| (*m, s.signature_string(1))).collect();
    Ok((
        ScoreReport {
            system_name: system_name.to_string(),
            segment_count: hyps.len(),
            scores,
            signatures,
            tool_version: crate::TOOL_VERSION.to_string(),
        },
        alignments,
    ))
}

/// Several systems scored against one reference, sorted by BLEU descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub systems: Vec<ScoreReport>,
    pub signatures: BTreeMap<Metric, String>,
    pub tool_version: String,
}

/// Scores every `(name, hyps)` pair against `refs`.
pub fn compare(
    systems: &[(String, Vec<String>)],
    refs: &[String],
) -> Result<ComparisonReport, MetricsError> {
    compare_with(systems, refs, &BTreeMap::new())
}

/// Like [`compare`], with per-metric signature overrides.
pub fn compare_with(
    systems: &[(String, Vec<String>)],
    refs: &[String],
    overrides: &BTreeMap<Metric, MetricSignature>,
) -> Result<ComparisonReport, MetricsError> {
    let mut reports = Vec::with_capacity(systems.len());
    for (name, hyps) in systems {
        let (report, _) = score_system_with(name, hyps, refs, overrides)?;
        reports.push(report);
    }
    reports.sort_by(|a, b| {
        b.score(Metric::Bleu)
            .total_cmp(&a.score(Metric::Bleu))
            .then_with(|| a.system_name.cmp(&b.system_name))
    });
    let signatures = reports
        .first()
        .map(|r| r.signatures.clone())
        .unwrap_or_default();
    Ok(ComparisonReport {
        systems: reports,
        signatures,
        tool_version: crate::TOOL_VERSION.to_string(),
    })
}

const TABLE_METRICS: [Metric; 3] = [Metric::Bleu, Metric::Chrf2pp, Metric::Ter];

impl ComparisonReport {
    /// Plain-text table, one row per system, best BLEU first, improvement
    /// arrows in the header, signature block underneath.
    pub fn render_text(&self) -> String {
        let name_width = self
            .systems
            .iter()
            .map(|s| s.system_name.chars().count())
            .chain(["system".len()].into_iter())
            .max()
            .unwrap();

        let headers: Vec<String> =
            TABLE_METRICS.iter().map(|m| format!("{}{}", m.display_name(), m.arrow())).collect();
        let widths: Vec<usize> = headers.iter().map(|h| h.chars().count().max(8)).collect();

        let mut out = String::new();
        out.push_str(&pad_right("system", name_width));
        for (h, w) in headers.iter().zip(&widths) {
            out.push_str("  ");
            out.push_str(&pad_left(h, *w));
        }
        out.push('\n');

        for sys in &self.systems {
            out.push_str(&pad_right(&sys.system_name, name_width));
            for (m, w) in TABLE_METRICS.iter().zip(&widths) {
                out.push_str("  ");
                out.push_str(&pad_left(&format!("{:.2}", sys.score(*m)), *w));
            }
            out.push('\n');
        }

        out.push_str("\nsignatures:\n");
        for m in TABLE_METRICS {
            if let Some(sig) = self.signatures.get(&m) {
                out.push_str(&format!("  {}  {}\n", pad_right(m.display_name(), 7), sig));
            }
        }
        out
    }
}

fn pad_right(s: &str, width: usize) -> String {
    let len = s.chars().count();
    format!("{s}{}", " ".repeat(width.saturating_sub(len)))
}

fn pad_left(s: &str, width: usize) -> String {
    let len = s.chars().count();
    format!("{}{s}", " ".repeat(width.saturating_sub(len)))
}
