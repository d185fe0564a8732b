//! Game localization file formats: TMX translation memories, key/value
//! string tables (TSV/CSV), key-based alignment, bitext export, and the
//! placeholder lexer that keeps engine markup out of translatable text.

mod align;
mod bitext;
mod kv;
mod placeholder;
mod tmx;

pub use align::align_by_key;
pub use bitext::{read_lines, write_bitext, write_parallel};
pub use kv::{parse_kv_table, KvIssue, TableFormat};
pub use placeholder::{
    extract_placeholders, extract_placeholders_with, PlaceholderConfig, PlaceholderKind,
    PlaceholderSpan,
};
pub use tmx::{parse_tmx, parse_tmx_document, write_tmx, TmxDocument, TmxIssue};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// One keyed string as it appears in a game's localization table.
///
/// `text` preserves the original content byte for byte; nothing is trimmed
/// or normalized at parse time.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEntry {
    /// Game-internal string identifier, non-empty.
    pub key: String,
    pub text: String,
    /// BCP-47-style language code, non-empty.
    pub lang: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub meta: BTreeMap<String, String>,
}

impl RawEntry {
    pub fn new(key: impl Into<String>, text: impl Into<String>, lang: impl Into<String>) -> Self {
        RawEntry { key: key.into(), text: text.into(), lang: lang.into(), meta: BTreeMap::new() }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl Into<String>) -> Self {
        self.meta.insert(key.into(), value.into());
        self
    }
}

/// A source entry paired with its translation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationUnit {
    pub source: RawEntry,
    pub target: RawEntry,
    /// Manifest entry id of the file pair this unit came from; empty when
    /// unknown.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub origin: String,
}

impl TranslationUnit {
    pub fn new(source: RawEntry, target: RawEntry) -> Self {
        TranslationUnit { source, target, origin: String::new() }
    }
}

/// Which half of a bilingual input an error or finding refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Source,
    Target,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Source => "source",
            Side::Target => "target",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LocfileError {
    #[error("malformed XML at byte {position}: {message}")]
    MalformedXml { position: u64, message: String },
    #[error("unsupported TMX version {found:?} (expected 1.4 or 1.4b)")]
    UnsupportedVersion { found: String },
    #[error("unit {index} violates format preconditions: {reason}")]
    InvalidUnit { index: usize, reason: String },
    #[error("duplicate key {key:?} on {side} side at positions {first} and {second}")]
    DuplicateKey { side: Side, key: String, first: usize, second: usize },
    #[error("line {line} is not valid UTF-8")]
    EncodingError { line: u64 },
    #[error("unit {index} contains an embedded newline")]
    EmbeddedNewline { index: usize },
    #[error("table read failed: {message}")]
    TableRead { message: String },
}
