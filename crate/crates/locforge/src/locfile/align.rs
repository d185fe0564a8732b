//! Key-based alignment of two monolingual entry lists into translation
//! units.

use std::collections::HashMap;

use super::{LocfileError, RawEntry, Side, TranslationUnit};

/// Position of an entry for error reports: the 1-based source line the
/// parser stashed in `meta["line"]` when available, else the 1-based list
/// position.
fn position_of(entry: &RawEntry, index: usize) -> usize {
    entry
        .meta
        .get("line")
        .and_then(|l| l.parse().ok())
        .unwrap_or(index + 1)
}

fn check_unique(entries: &[RawEntry], side: Side) -> Result<(), LocfileError> {
    let mut seen: HashMap<&str, usize> = HashMap::with_capacity(entries.len());
    for (index, entry) in entries.iter().enumerate() {
        if let Some(&first) = seen.get(entry.key.as_str()) {
            return Err(LocfileError::DuplicateKey {
                side,
                key: entry.key.clone(),
                first: position_of(&entries[first], first),
                second: position_of(entry, index),
            });
        }
        seen.insert(&entry.key, index);
    }
    Ok(())
}

/// Exact inner join on `key`, preserving source order. Unmatched entries
/// from both sides come back as orphans (source orphans first, then
/// target), so `2·|units| + |orphans| == |src| + |tgt|`. Duplicate keys
/// within one side are an error carrying both occurrences' positions
/// (source line numbers when the parser recorded them, 1-based list
/// positions otherwise).
///
/// Unit origin is taken from the source entry's `origin` metadata when
/// present.
pub fn align_by_key(
    src: Vec<RawEntry>,
    tgt: Vec<RawEntry>,
) -> Result<(Vec<TranslationUnit>, Vec<RawEntry>), LocfileError> {
    check_unique(&src, Side::Source)?;
    check_unique(&tgt, Side::Target)?;

    let mut slots: Vec<Option<RawEntry>> = tgt.into_iter().map(Some).collect();
    let slot_of: HashMap<String, usize> = slots
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_ref().expect("fresh slot").key.clone(), i))
        .collect();

    let mut units = Vec::new();
    let mut orphans = Vec::new();
    for entry in src {
        match slot_of.get(&entry.key).and_then(|&i| slots[i].take()) {
            Some(target) => {
                let origin = entry.meta.get("origin").cloned().unwrap_or_default();
                units.push(TranslationUnit { source: entry, target, origin });
            }
            None => orphans.push(entry),
        }
    }
    orphans.extend(slots.into_iter().flatten());
    Ok((units, orphans))
}
