//! Metadata-driven segment exclusion.

use serde::{Deserialize, Serialize};

use crate::metrics::count_13a_tokens;

use super::segment::BiSegment;

/// An exclusion rule over segment metadata or source length.
///
/// Serialized form (pipeline configs):
/// `{"key_value": {"key": "record_type", "value": "BOOK"}}` or
/// `{"max_source_tokens": 200}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MetaPredicate {
    /// Excludes segments whose meta has exactly this key/value pair.
    KeyValue { key: String, value: String },
    /// Excludes segments whose source exceeds this many 13a tokens.
    MaxSourceTokens(usize),
}

impl MetaPredicate {
    /// Whether `seg` matches the rule. A key absent from the segment's
    /// meta never matches.
    pub fn matches(&self, seg: &BiSegment) -> bool {
        match self {
            MetaPredicate::KeyValue { key, value } => {
                seg.meta.get(key).is_some_and(|v| v == value)
            }
            MetaPredicate::MaxSourceTokens(max) => count_13a_tokens(&seg.source_text) > *max,
        }
    }
}

/// Drops segments matching the exclusion predicate; `None` keeps everything.
///
/// Returns the survivors in input order and the number removed. A
/// [`MetaPredicate::KeyValue`] whose key appears in no segment at all is
/// reported at warning level and removes nothing.
pub fn filter_meta(
    segments: Vec<BiSegment>,
    predicate: Option<&MetaPredicate>,
) -> (Vec<BiSegment>, usize) {
    let Some(predicate) = predicate else {
        return (segments, 0);
    };
    if let MetaPredicate::KeyValue { key, .. } = predicate {
        if !segments.iter().any(|seg| seg.meta.contains_key(key)) {
            log::warn!("filter references meta key {key:?}, which no segment carries");
        }
    }
    let before = segments.len();
    let kept: Vec<BiSegment> = segments.into_iter().filter(|seg| !predicate.matches(seg)).collect();
    let removed = before - kept.len();
    (kept, removed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(src: &str, meta: &[(&str, &str)]) -> BiSegment {
        let mut s = BiSegment::new(src, "cible", "en", "fr");
        for (k, v) in meta {
            s = s.with_meta(*k, *v);
        }
        s
    }

    #[test]
    fn key_value_excludes_matches_only() {
        let input = vec![
            seg("a", &[("record_type", "BOOK")]),
            seg("b", &[("record_type", "DIAL")]),
            seg("c", &[]),
        ];
        let pred = MetaPredicate::KeyValue { key: "record_type".into(), value: "BOOK".into() };
        let (kept, removed) = filter_meta(input, Some(&pred));
        assert_eq!(removed, 1);
        assert_eq!(kept.iter().map(|s| s.source_text.as_str()).collect::<Vec<_>>(), ["b", "c"]);
    }

    #[test]
    fn no_predicate_is_identity() {
        let input = vec![seg("a", &[]), seg("b", &[])];
        let expect = input.clone();
        let (kept, removed) = filter_meta(input, None);
        assert_eq!(removed, 0);
        assert_eq!(kept, expect);
    }

    #[test]
    fn unknown_key_removes_nothing() {
        let input = vec![seg("a", &[("x", "1")])];
        let pred = MetaPredicate::KeyValue { key: "nope".into(), value: "1".into() };
        let (kept, removed) = filter_meta(input, Some(&pred));
        assert_eq!(removed, 0);
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn max_source_tokens_drops_long_segments() {
        let long = vec!["word"; 500].join(" ");
        let input = vec![seg("short one", &[]), seg(&long, &[])];
        let (kept, removed) = filter_meta(input, Some(&MetaPredicate::MaxSourceTokens(200)));
        assert_eq!(removed, 1);
        assert_eq!(kept[0].source_text, "short one");
    }

    #[test]
    fn predicate_serde_round_trip() {
        let kv = MetaPredicate::KeyValue { key: "record_type".into(), value: "BOOK".into() };
        let json = serde_json::to_string(&kv).unwrap();
        assert_eq!(json, r#"{"key_value":{"key":"record_type","value":"BOOK"}}"#);
        assert_eq!(serde_json::from_str::<MetaPredicate>(&json).unwrap(), kv);

        let max = MetaPredicate::MaxSourceTokens(200);
        let json = serde_json::to_string(&max).unwrap();
        assert_eq!(json, r#"{"max_source_tokens":200}"#);
        assert_eq!(serde_json::from_str::<MetaPredicate>(&json).unwrap(), max);
    }
}
