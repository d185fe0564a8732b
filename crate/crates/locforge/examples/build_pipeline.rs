//! String tables to a training-ready corpus: parse both language sides,
//! align by key, merge per the manifest, clean, normalize typography.
//!
//! ```text
//! cargo run -p locforge --example build_pipeline
//! ```

use std::path::Path;

use locforge::corpus::{clean, merge, normalize_typography, stats, CorpusManifest};
use locforge::locfile::{align_by_key, parse_kv_table, TableFormat};
use locforge::BiSegment;

fn main() {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/data");
    let manifest = CorpusManifest::load(&data.join("manifest.json")).unwrap();
    let entry = &manifest.entries[0];
    println!("building {} ({})", entry.game_title, entry.developer_year);

    // The manifest stores file paths resolved against its own directory.
    let en = std::fs::read(&entry.files[0]).unwrap();
    let fr = std::fs::read(&entry.files[1]).unwrap();
    let (en_entries, en_issues) = parse_kv_table(&en, TableFormat::Tsv, "en").unwrap();
    let (fr_entries, fr_issues) = parse_kv_table(&fr, TableFormat::Tsv, "fr").unwrap();
    println!(
        "parsed {} en rows, {} fr rows ({} table issue(s))",
        en_entries.len(),
        fr_entries.len(),
        en_issues.len() + fr_issues.len()
    );

    let (units, unmatched) = align_by_key(en_entries, fr_entries).unwrap();
    println!("aligned {} units; {} key(s) without a counterpart:", units.len(), unmatched.len());
    for orphan in &unmatched {
        println!("  {} ({}): {}", orphan.key, orphan.lang, orphan.text);
    }

    let segments: Vec<BiSegment> = units.iter().map(BiSegment::from).collect();
    let (merged, warnings) = merge(&manifest, vec![segments]).unwrap();
    for warning in &warnings {
        println!("warning: {warning}");
    }

    let (mut cleaned, report) = clean(merged);
    println!();
    println!("clean: {} in, {} out", report.input_count, report.output_count);
    println!("  empty         {}", report.removed_empty);
    println!("  untranslated  {}", report.removed_untranslated);
    println!("  duplicates    {}", report.removed_duplicates);

    // Typography normalization is language-aware; French gets narrow
    // no-break spaces before high punctuation. Editing text in place means
    // re-deriving the content id.
    for seg in &mut cleaned {
        let before = seg.target_text.clone();
        seg.source_text = normalize_typography(&seg.source_text, &seg.source_lang);
        seg.target_text = normalize_typography(&seg.target_text, &seg.target_lang);
        seg.id = seg.rehash();
        if seg.target_text != before {
            println!("normalized: {before:?} -> {:?}", seg.target_text);
        }
    }

    let counts = stats(&cleaned);
    println!();
    println!(
        "final corpus: {} segments, {} en tokens, {} fr tokens",
        counts.sentences, counts.src_tokens, counts.tgt_tokens
    );
    for seg in cleaned.iter().take(3) {
        println!("  [{}] {} | {}", seg.meta["key"], seg.source_text, seg.target_text);
    }
}
