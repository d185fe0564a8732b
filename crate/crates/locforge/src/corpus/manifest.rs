//! Corpus manifests: which games, which files, how many segments expected.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::segment::BiSegment;
use super::CorpusError;

/// One game's slice of the corpus.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestEntry {
    pub game_title: String,
    pub developer_year: String,
    pub files: Vec<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_segments: Option<u64>,
}

/// An ordered list of games and their localization files.
///
/// Loading enforces two invariants: game titles are unique, and every
/// listed file exists (relative paths resolve against the manifest's
/// directory and are stored resolved).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusManifest {
    pub entries: Vec<ManifestEntry>,
}

impl CorpusManifest {
    /// Reads and validates a manifest file.
    pub fn load(path: &Path) -> Result<CorpusManifest, CorpusError> {
        let text = fs::read_to_string(path).map_err(|e| CorpusError::ManifestRead {
            message: format!("{}: {e}", path.display()),
        })?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        CorpusManifest::from_json(&text, base)
    }

    /// Parses manifest JSON, resolving file paths against `base`.
    pub fn from_json(json: &str, base: &Path) -> Result<CorpusManifest, CorpusError> {
        let mut manifest: CorpusManifest = serde_json::from_str(json)
            .map_err(|e| CorpusError::ManifestRead { message: e.to_string() })?;
        let mut titles = std::collections::HashSet::new();
        for entry in &mut manifest.entries {
            if !titles.insert(entry.game_title.clone()) {
                return Err(CorpusError::DuplicateGameTitle { title: entry.game_title.clone() });
            }
            for file in &mut entry.files {
                if file.is_relative() {
                    *file = base.join(&*file);
                }
                if !file.exists() {
                    return Err(CorpusError::MissingManifestFile { path: file.clone() });
                }
            }
        }
        Ok(manifest)
    }
}

/// Concatenates per-entry segment lists in manifest order.
///
/// Each segment's meta gains `game_title`. All entries must share one
/// language pair. An entry whose `expected_segments` differs from the
/// actual count produces a warning string; the merge still succeeds.
pub fn merge(
    manifest: &CorpusManifest,
    parsed: Vec<Vec<BiSegment>>,
) -> Result<(Vec<BiSegment>, Vec<String>), CorpusError> {
    if parsed.len() != manifest.entries.len() {
        return Err(CorpusError::EntryCountMismatch {
            expected: manifest.entries.len(),
            found: parsed.len(),
        });
    }

    let mut pair: Option<(String, String)> = None;
    let mut merged = Vec::with_capacity(parsed.iter().map(Vec::len).sum());
    let mut warnings = Vec::new();

    for (entry, segments) in manifest.entries.iter().zip(parsed) {
        if let Some(expected) = entry.expected_segments {
            if expected != segments.len() as u64 {
                warnings.push(format!(
                    "{}: expected {} segments, found {}",
                    entry.game_title,
                    expected,
                    segments.len()
                ));
            }
        }
        for mut seg in segments {
            let found = (seg.source_lang.clone(), seg.target_lang.clone());
            match &pair {
                None => pair = Some(found),
                Some(expected) if *expected != found => {
                    return Err(CorpusError::LanguagePairMismatch {
                        expected: format!("{}->{}", expected.0, expected.1),
                        found: format!("{}->{}", found.0, found.1),
                    });
                }
                Some(_) => {}
            }
            seg.meta.insert("game_title".to_string(), entry.game_title.clone());
            merged.push(seg);
        }
    }

    Ok((merged, warnings))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::stats::stats;

    fn entry(title: &str, expected: Option<u64>) -> ManifestEntry {
        ManifestEntry {
            game_title: title.to_string(),
            developer_year: "Studio, 2011".to_string(),
            files: Vec::new(),
            expected_segments: expected,
        }
    }

    fn segs(n: usize, prefix: &str) -> Vec<BiSegment> {
        (0..n)
            .map(|i| BiSegment::new(format!("{prefix} {i}"), format!("t{prefix} {i}"), "en", "fr"))
            .collect()
    }

    #[test]
    fn concatenates_in_manifest_order_and_tags_game() {
        let manifest =
            CorpusManifest { entries: vec![entry("Alpha", None), entry("Beta", None)] };
        let (merged, warnings) = merge(&manifest, vec![segs(3, "a"), segs(4, "b")]).unwrap();
        assert_eq!(merged.len(), 7);
        assert!(warnings.is_empty());
        assert_eq!(merged[0].meta["game_title"], "Alpha");
        assert_eq!(merged[3].meta["game_title"], "Beta");
        assert_eq!(merged[0].source_text, "a 0");
        assert_eq!(merged[6].source_text, "b 3");
    }

    #[test]
    fn expected_segment_mismatch_is_a_warning() {
        let manifest = CorpusManifest { entries: vec![entry("Alpha", Some(19_000))] };
        let (merged, warnings) = merge(&manifest, vec![segs(5, "a")]).unwrap();
        assert_eq!(merged.len(), 5);
        assert_eq!(warnings, vec!["Alpha: expected 19000 segments, found 5"]);
    }

    #[test]
    fn language_pair_mismatch_is_fatal() {
        let manifest =
            CorpusManifest { entries: vec![entry("Alpha", None), entry("Beta", None)] };
        let german = vec![BiSegment::new("hi", "hallo", "en", "de")];
        let err = merge(&manifest, vec![segs(1, "a"), german]).unwrap_err();
        match err {
            CorpusError::LanguagePairMismatch { expected, found } => {
                assert_eq!(expected, "en->fr");
                assert_eq!(found, "en->de");
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn merged_stats_equal_sum_of_parts() {
        let manifest =
            CorpusManifest { entries: vec![entry("Alpha", None), entry("Beta", None)] };
        let (a, b) = (segs(3, "one two"), segs(2, "three"));
        let sum = stats(&a) + stats(&b);
        let (merged, _) = merge(&manifest, vec![a, b]).unwrap();
        assert_eq!(stats(&merged), sum);
    }

    #[test]
    fn duplicate_titles_rejected_at_load() {
        let json = r#"{"entries": [
            {"game_title": "Alpha", "developer_year": "X, 2000", "files": []},
            {"game_title": "Alpha", "developer_year": "Y, 2001", "files": []}
        ]}"#;
        let err = CorpusManifest::from_json(json, Path::new(".")).unwrap_err();
        assert!(matches!(err, CorpusError::DuplicateGameTitle { title } if title == "Alpha"));
    }

    #[test]
    fn missing_files_rejected_at_load() {
        let json = r#"{"entries": [
            {"game_title": "Alpha", "developer_year": "X, 2000", "files": ["nope.tmx"]}
        ]}"#;
        let err = CorpusManifest::from_json(json, Path::new("/definitely/absent")).unwrap_err();
        assert!(matches!(err, CorpusError::MissingManifestFile { .. }));
    }

    #[test]
    fn relative_paths_resolve_against_base() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("game.tmx"), "x").unwrap();
        let json = r#"{"entries": [
            {"game_title": "Alpha", "developer_year": "X, 2000", "files": ["game.tmx"],
             "expected_segments": 10}
        ]}"#;
        let manifest = CorpusManifest::from_json(json, dir.path()).unwrap();
        assert_eq!(manifest.entries[0].files[0], dir.path().join("game.tmx"));
        assert_eq!(manifest.entries[0].expected_segments, Some(10));
    }
}
