//! Lexer for non-translatable placeholders: engine tags and format
//! variables embedded in segment text.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaceholderKind {
    /// Bracketed engine markup: `<Alias=Player>`, `[pagebreak]`.
    Tag,
    /// printf-style or named format variable: `%d`, `%{name}`.
    Variable,
}

/// A located placeholder. `literal` equals `text[start..end]` of the owning
/// string; spans from one extraction are non-overlapping and sorted by
/// `start`, so splicing literals back into the gap text reconstructs the
/// original exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceholderSpan {
    pub start: usize,
    pub end: usize,
    pub kind: PlaceholderKind,
    pub literal: String,
}

/// Grammar extension: extra literal strings (matched exactly, treated as
/// tags) on top of the built-in bracket and variable forms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaceholderConfig {
    #[serde(default)]
    pub extra_literals: Vec<String>,
}

/// A bracketed tag may span at most this many bytes including brackets.
const MAX_TAG_LEN: usize = 64;

fn match_bracket(bytes: &[u8], start: usize, open: u8, close: u8) -> Option<usize> {
    debug_assert_eq!(bytes[start], open);
    let limit = (start + MAX_TAG_LEN).min(bytes.len());
    for i in start + 1..limit {
        if bytes[i] == open {
            return None;
        }
        if bytes[i] == close {
            // Reject empty brackets like `<>`.
            return if i > start + 1 { Some(i + 1) } else { None };
        }
    }
    None
}

fn match_variable(bytes: &[u8], start: usize) -> Option<usize> {
    debug_assert_eq!(bytes[start], b'%');
    match bytes.get(start + 1)? {
        b's' | b'd' | b'i' | b'u' | b'f' | b'%' => Some(start + 2),
        b'{' => {
            let first = *bytes.get(start + 2)?;
            if !(first.is_ascii_alphabetic() || first == b'_') {
                return None;
            }
            let mut i = start + 3;
            while let Some(&b) = bytes.get(i) {
                if b == b'}' {
                    return Some(i + 1);
                }
                if !(b.is_ascii_alphanumeric() || b == b'_') {
                    return None;
                }
                i += 1;
            }
            None
        }
        _ => None,
    }
}

/// All placeholders in `text`, left to right, longest match first at each
/// position, non-overlapping. Unterminated or nested brackets simply fail
/// to match; they are never an error.
pub fn extract_placeholders(text: &str) -> Vec<PlaceholderSpan> {
    extract_placeholders_with(text, &PlaceholderConfig::default())
}

pub fn extract_placeholders_with(text: &str, config: &PlaceholderConfig) -> Vec<PlaceholderSpan> {
    let bytes = text.as_bytes();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut best: Option<(usize, PlaceholderKind)> = None;
        let candidate = match bytes[i] {
            b'<' => match_bracket(bytes, i, b'<', b'>').map(|end| (end, PlaceholderKind::Tag)),
            b'[' => match_bracket(bytes, i, b'[', b']').map(|end| (end, PlaceholderKind::Tag)),
            b'%' => match_variable(bytes, i).map(|end| (end, PlaceholderKind::Variable)),
            _ => None,
        };
        if let Some(c) = candidate {
            best = Some(c);
        }
        for lit in &config.extra_literals {
            if !lit.is_empty()
                && bytes[i..].starts_with(lit.as_bytes())
                && best.is_none_or(|(end, _)| i + lit.len() > end)
            {
                best = Some((i + lit.len(), PlaceholderKind::Tag));
            }
        }
        match best {
            Some((end, kind)) => {
                spans.push(PlaceholderSpan {
                    start: i,
                    end,
                    kind,
                    literal: text[i..end].to_string(),
                });
                i = end;
            }
            None => {
                // Advance one full character so spans stay on char
                // boundaries.
                i += text[i..].chars().next().map_or(1, char::len_utf8);
            }
        }
    }
    spans
}

#[cfg(test)]
mod tests {
    use super::*;

    fn literals(text: &str) -> Vec<(String, PlaceholderKind)> {
        extract_placeholders(text).into_iter().map(|s| (s.literal, s.kind)).collect()
    }

    #[test]
    fn tags_and_variables() {
        assert_eq!(
            literals("Hello <Alias=Player>, take [pagebreak] this."),
            vec![
                ("<Alias=Player>".to_string(), PlaceholderKind::Tag),
                ("[pagebreak]".to_string(), PlaceholderKind::Tag),
            ]
        );
        assert_eq!(literals("Gain %d gold"), vec![("%d".to_string(), PlaceholderKind::Variable)]);
        assert_eq!(literals("No markup here."), vec![]);
    }

    #[test]
    fn variables_cover_the_whole_set() {
        assert_eq!(
            literals("%s %d %i %u %f %% %{player_name}"),
            vec![
                ("%s".into(), PlaceholderKind::Variable),
                ("%d".into(), PlaceholderKind::Variable),
                ("%i".into(), PlaceholderKind::Variable),
                ("%u".into(), PlaceholderKind::Variable),
                ("%f".into(), PlaceholderKind::Variable),
                ("%%".into(), PlaceholderKind::Variable),
                ("%{player_name}".into(), PlaceholderKind::Variable),
            ]
        );
        assert_eq!(literals("100% done, %x and %{9bad} skipped"), vec![]);
    }

    #[test]
    fn nesting_and_termination_rules() {
        // The outer bracket fails (inner opener), the inner one matches.
        assert_eq!(literals("[a[b]c]"), vec![("[b]".into(), PlaceholderKind::Tag)]);
        assert_eq!(literals("unclosed <tag"), vec![]);
        assert_eq!(literals("empty <> pair"), vec![]);
        let long = format!("<{}>", "x".repeat(80));
        assert_eq!(literals(&long), vec![]);
        let ok = format!("<{}>", "x".repeat(62));
        assert_eq!(literals(&ok).len(), 1);
    }

    #[test]
    fn spans_reconstruct_original() {
        let text = "A <b> c %s d [e] %% fin.";
        let spans = extract_placeholders(text);
        let mut rebuilt = String::new();
        let mut pos = 0;
        for s in &spans {
            rebuilt.push_str(&text[pos..s.start]);
            rebuilt.push_str(&s.literal);
            assert_eq!(&text[s.start..s.end], s.literal);
            pos = s.end;
        }
        rebuilt.push_str(&text[pos..]);
        assert_eq!(rebuilt, text);
    }

    #[test]
    fn extra_literals_extend_the_grammar() {
        let config =
            PlaceholderConfig { extra_literals: vec!["{NAME}".to_string(), "\\n".to_string()] };
        let spans = extract_placeholders_with("Hi {NAME}!\\nBye", &config);
        let lits: Vec<&str> = spans.iter().map(|s| s.literal.as_str()).collect();
        assert_eq!(lits, ["{NAME}", "\\n"]);
    }

    #[test]
    fn non_ascii_text_is_skipped_cleanly() {
        assert_eq!(
            literals("héros «%s» à l'épée"),
            vec![("%s".into(), PlaceholderKind::Variable)]
        );
    }
}
