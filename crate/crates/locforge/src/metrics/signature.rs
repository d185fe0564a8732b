//! Pinned metric configurations and their `key:value|…` signature strings.
//!
//! A score without its configuration is not reproducible; every report line
//! in this crate therefore carries a signature string in the established
//! sacre-style short form, e.g.
//! `BLEU|#:1|c:mixed|e:no|tok:13a|s:exp|v:2.0.0` (sans metric prefix).
//! The defaults here are the fixed reference configurations; the rendered
//! strings match them field for field.

use serde::{Deserialize, Serialize};

pub const SIGNATURE_VERSION: &str = "2.0.0";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Bleu,
    Chrf2pp,
    Ter,
}

impl Metric {
    pub fn display_name(self) -> &'static str {
        match self {
            Metric::Bleu => "BLEU",
            Metric::Chrf2pp => "chrF2++",
            Metric::Ter => "TER",
        }
    }

    /// Whether bigger values are better (`false` for edit rates).
    pub fn higher_is_better(self) -> bool {
        !matches!(self, Metric::Ter)
    }

    /// The improvement arrow used in comparison tables.
    pub fn arrow(self) -> char {
        if self.higher_is_better() {
            '↑'
        } else {
            '↓'
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseHandling {
    Mixed,
    Lower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenizerKind {
    ThirteenA,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    /// BLEU: mteval-style exponential smoothing of zero-match orders.
    Exp,
    /// chrF: the reference scorer's default smoothing (signature `e:yes`),
    /// which averages F over the orders that actually occur.
    Eps,
    /// No smoothing: BLEU leaves zero-match orders at zero; chrF falls back
    /// to a fixed-order epsilon average (signature `e:no`).
    None,
}

/// A full metric configuration, pinned.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricSignature {
    pub metric: Metric,
    pub case: CaseHandling,
    pub tokenizer: TokenizerKind,
    pub smoothing: Smoothing,
    /// chrF character n-gram order (unused by BLEU/TER).
    pub char_order: usize,
    /// chrF word n-gram order (unused by BLEU/TER).
    pub word_order: usize,
    /// chrF F-score beta (unused by BLEU/TER).
    pub beta: f64,
    /// TER: apply tercom's pre-tokenization normalization (`nr`).
    pub normalized: bool,
    /// TER: keep punctuation as part of tokens (`pn`). Setting this to false
    /// deletes `.,?:;!"()` before tokenizing.
    pub punctuation_tokenized: bool,
    pub version: String,
}

impl MetricSignature {
    /// BLEU defaults: mixed case, 13a tokenizer, exp smoothing.
    pub fn bleu() -> Self {
        MetricSignature {
            metric: Metric::Bleu,
            case: CaseHandling::Mixed,
            tokenizer: TokenizerKind::ThirteenA,
            smoothing: Smoothing::Exp,
            char_order: 0,
            word_order: 0,
            beta: 0.0,
            normalized: false,
            punctuation_tokenized: true,
            version: SIGNATURE_VERSION.to_string(),
        }
    }

    /// chrF2++ defaults: char order 6, word order 2, beta 2.
    pub fn chrf2pp() -> Self {
        MetricSignature {
            metric: Metric::Chrf2pp,
            case: CaseHandling::Mixed,
            tokenizer: TokenizerKind::ThirteenA,
            smoothing: Smoothing::Eps,
            char_order: 6,
            word_order: 2,
            beta: 2.0,
            normalized: false,
            punctuation_tokenized: true,
            version: SIGNATURE_VERSION.to_string(),
        }
    }

    /// TER defaults: lowercased, tercom tokenization with punctuation kept,
    /// no extra normalization.
    pub fn ter() -> Self {
        MetricSignature {
            metric: Metric::Ter,
            case: CaseHandling::Lower,
            tokenizer: TokenizerKind::ThirteenA,
            smoothing: Smoothing::None,
            char_order: 0,
            word_order: 0,
            beta: 0.0,
            normalized: false,
            punctuation_tokenized: true,
            version: SIGNATURE_VERSION.to_string(),
        }
    }

    pub fn default_for(metric: Metric) -> Self {
        match metric {
            Metric::Bleu => Self::bleu(),
            Metric::Chrf2pp => Self::chrf2pp(),
            Metric::Ter => Self::ter(),
        }
    }

    fn case_str(&self) -> &'static str {
        match self.case {
            CaseHandling::Mixed => "mixed",
            CaseHandling::Lower => "lc",
        }
    }

    /// Renders the signature string for a run against `nrefs` references
    /// (always 1 in this crate's single-reference pipeline).
    pub fn signature_string(&self, nrefs: usize) -> String {
        let c = self.case_str();
        let v = &self.version;
        match self.metric {
            Metric::Bleu => {
                let s = match self.smoothing {
                    Smoothing::Exp => "exp",
                    _ => "none",
                };
                format!("#:{nrefs}|c:{c}|e:no|tok:13a|s:{s}|v:{v}")
            }
            Metric::Chrf2pp => {
                let e = if matches!(self.smoothing, Smoothing::Eps) { "yes" } else { "no" };
                format!(
                    "#:{nrefs}|c:{c}|e:{e}|nc:{}|nw:{}|s:no|v:{v}",
                    self.char_order, self.word_order
                )
            }
            Metric::Ter => {
                let nr = if self.normalized { "yes" } else { "no" };
                let pn = if self.punctuation_tokenized { "yes" } else { "no" };
                format!("#:{nrefs}|c:{c}|t:tercom|nr:{nr}|pn:{pn}|a:no|v:{v}")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_signature_strings() {
        assert_eq!(
            MetricSignature::bleu().signature_string(1),
            "#:1|c:mixed|e:no|tok:13a|s:exp|v:2.0.0"
        );
        assert_eq!(
            MetricSignature::chrf2pp().signature_string(1),
            "#:1|c:mixed|e:yes|nc:6|nw:2|s:no|v:2.0.0"
        );
        assert_eq!(
            MetricSignature::ter().signature_string(1),
            "#:1|c:lc|t:tercom|nr:no|pn:yes|a:no|v:2.0.0"
        );
    }
}
