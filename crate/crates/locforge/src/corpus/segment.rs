//! The aligned segment every pipeline stage operates on.

use std::collections::BTreeMap;

use crate::locfile::TranslationUnit;

/// One aligned source/target pair plus provenance metadata.
///
/// `id` is a pure function of `(source_text, target_text, source_lang,
/// target_lang)` — FNV-1a 64-bit over the four fields joined with `0xFF`
/// separator bytes. Like the split PRNG, the hash is a compatibility
/// contract: ids must stay stable across releases so split membership and
/// dedup decisions are reproducible. Metadata does not participate, so
/// re-tagging a corpus never changes any id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSegment {
    pub source_text: String,
    pub target_text: String,
    pub source_lang: String,
    pub target_lang: String,
    pub meta: BTreeMap<String, String>,
    pub id: u64,
}

impl BiSegment {
    pub fn new(
        source_text: impl Into<String>,
        target_text: impl Into<String>,
        source_lang: impl Into<String>,
        target_lang: impl Into<String>,
    ) -> Self {
        let (source_text, target_text) = (source_text.into(), target_text.into());
        let (source_lang, target_lang) = (source_lang.into(), target_lang.into());
        let id = content_id(&source_text, &target_text, &source_lang, &target_lang);
        BiSegment { source_text, target_text, source_lang, target_lang, meta: BTreeMap::new(), id }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }

    /// Recomputes the content hash; equals `self.id` unless a text or
    /// language field was edited in place.
    pub fn rehash(&self) -> u64 {
        content_id(&self.source_text, &self.target_text, &self.source_lang, &self.target_lang)
    }
}

impl From<&TranslationUnit> for BiSegment {
    fn from(unit: &TranslationUnit) -> Self {
        let mut seg = BiSegment::new(
            unit.source.text.clone(),
            unit.target.text.clone(),
            unit.source.lang.clone(),
            unit.target.lang.clone(),
        );
        for (k, v) in &unit.source.meta {
            seg.meta.insert(k.clone(), v.clone());
        }
        seg.meta.insert("key".into(), unit.source.key.clone());
        if !unit.origin.is_empty() {
            seg.meta.insert("origin".into(), unit.origin.clone());
        }
        seg
    }
}

/// FNV-1a 64-bit over the content fields with `0xFF` separators.
pub fn content_id(source_text: &str, target_text: &str, source_lang: &str, target_lang: &str) -> u64 {
    const OFFSET: u64 = 0xCBF2_9CE4_8422_2325;
    const PRIME: u64 = 0x0000_0100_0000_01B3;
    let mut h = OFFSET;
    for part in [source_text, target_text, source_lang, target_lang] {
        for &b in part.as_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(PRIME);
        }
        h ^= 0xFF;
        h = h.wrapping_mul(PRIME);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv1a_known_vectors() {
        // FNV-1a 64 of "a" is 0xaf63dc4c8601ec8c; of "" the offset basis.
        // content_id appends a 0xFF separator per field, so check the raw
        // stepping against those published constants.
        let mut h: u64 = 0xCBF2_9CE4_8422_2325;
        h ^= b'a' as u64;
        h = h.wrapping_mul(0x100000001B3);
        assert_eq!(h, 0xaf63dc4c8601ec8c);
    }

    #[test]
    fn id_ignores_meta_and_tracks_content() {
        let a = BiSegment::new("Hello", "Bonjour", "en", "fr");
        let b = BiSegment::new("Hello", "Bonjour", "en", "fr").with_meta("game", "x");
        assert_eq!(a.id, b.id);
        let c = BiSegment::new("Hello!", "Bonjour", "en", "fr");
        assert_ne!(a.id, c.id);
        assert_eq!(a.id, a.rehash());
    }

    #[test]
    fn separator_prevents_field_bleed() {
        let a = BiSegment::new("ab", "c", "en", "fr");
        let b = BiSegment::new("a", "bc", "en", "fr");
        assert_ne!(a.id, b.id);
    }
}
