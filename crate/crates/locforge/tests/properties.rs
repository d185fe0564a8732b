//! Invariant checks over random inputs for the corpus pipeline and the
//! placeholder parity QA check.

use std::collections::BTreeMap;
use std::collections::HashSet;

use proptest::prelude::*;

use locforge::corpus::{
    clean, content_id, emit_recipe, filter_meta, normalize_typography, split, MetaPredicate,
    SplitSpec,
};
use locforge::locfile::extract_placeholders;
use locforge::qa::check_placeholders;
use locforge::BiSegment;

const WORDS: &[&str] = &[
    "the", "cat", "dragon", "sword", "guard", "take", "gold", "door", "left", "right",
    "le", "chat", "épée", "garde", "porte", "l'or", "déjà", "oui", "non",
];

const NOISE: &[&str] = &["  ", "\t", "\n", "\u{00A0}", "...", "\"", "«", "»", "'", "?", "!", ":", " ;"];

fn text_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec(
        prop_oneof![
            3 => prop::sample::select(WORDS).prop_map(str::to_string),
            1 => prop::sample::select(NOISE).prop_map(str::to_string),
        ],
        0..12,
    )
    .prop_map(|parts| parts.join(" "))
}

fn segment_strategy() -> impl Strategy<Value = BiSegment> {
    (text_strategy(), text_strategy(), prop::bool::ANY).prop_map(|(src, tgt, same)| {
        // A slice of pairs are "untranslated": both sides carry one text.
        if same {
            BiSegment::new(src.clone(), src, "en", "fr")
        } else {
            BiSegment::new(src, tgt, "en", "fr")
        }
    })
}

fn corpus_strategy() -> impl Strategy<Value = Vec<BiSegment>> {
    prop::collection::vec(segment_strategy(), 0..40)
}

proptest! {
    #[test]
    fn typography_is_idempotent_and_only_adds_nbsp(text in text_strategy(), french in prop::bool::ANY) {
        let lang = if french { "fr" } else { "en" };
        let once = normalize_typography(&text, lang);
        let twice = normalize_typography(&once, lang);
        prop_assert_eq!(&once, &twice);

        // Growth comes only from inserted no-break spaces.
        let without_nbsp =
            once.chars().filter(|c| !matches!(c, '\u{00A0}' | '\u{202F}')).count();
        prop_assert!(without_nbsp <= text.chars().count());

        // Admitted segments are single-line with no stray spacing.
        prop_assert!(!once.contains('\n') && !once.contains('\t') && !once.contains("  "));
        prop_assert_eq!(once.trim(), &once);
    }

    #[test]
    fn clean_is_idempotent_and_counts_add_up(corpus in corpus_strategy()) {
        let input_count = corpus.len();
        let (cleaned, report) = clean(corpus);

        prop_assert_eq!(report.input_count, input_count);
        prop_assert_eq!(
            report.output_count,
            input_count
                - report.removed_empty
                - report.removed_untranslated
                - report.removed_duplicates
        );
        prop_assert_eq!(report.output_count, cleaned.len());
        prop_assert_eq!(report.removed_by_filter, 0);

        let (again, second) = clean(cleaned.clone());
        prop_assert_eq!(again, cleaned);
        prop_assert_eq!(second.input_count, second.output_count);
    }

    #[test]
    fn clean_output_has_no_removable_segment(corpus in corpus_strategy()) {
        let (cleaned, _) = clean(corpus);
        let mut seen = HashSet::new();
        for seg in &cleaned {
            let src = normalize_typography(&seg.source_text, &seg.target_lang);
            let tgt = normalize_typography(&seg.target_text, &seg.target_lang);
            prop_assert!(!seg.source_text.trim().is_empty());
            prop_assert!(!seg.target_text.trim().is_empty());
            prop_assert_ne!(&src, &tgt);
            prop_assert!(seen.insert((src, tgt)));
        }
    }

    #[test]
    fn split_partitions_the_corpus(seed in any::<u64>(), n in 10usize..60, valid in 0usize..5, test in 0usize..5) {
        let corpus: Vec<BiSegment> = (0..n)
            .map(|i| BiSegment::new(format!("src {i}"), format!("tgt {i}"), "en", "fr"))
            .collect();
        let spec = SplitSpec::new(valid, test, seed);
        let result = split(corpus.clone(), &spec).unwrap();

        prop_assert_eq!(result.valid.len(), valid);
        prop_assert_eq!(result.test.len(), test);
        prop_assert_eq!(result.train.len(), n - valid - test);

        let mut ids = HashSet::new();
        for seg in result.train.iter().chain(&result.valid).chain(&result.test) {
            prop_assert!(ids.insert(seg.id));
        }
        prop_assert_eq!(ids.len(), n);

        // Same seed, same draw; train preserves input order.
        let rerun = split(corpus.clone(), &spec).unwrap();
        prop_assert_eq!(&rerun.train, &result.train);
        prop_assert_eq!(&rerun.valid, &result.valid);
        prop_assert_eq!(&rerun.test, &result.test);
        let positions: Vec<usize> = result
            .train
            .iter()
            .map(|seg| corpus.iter().position(|c| c.id == seg.id).unwrap())
            .collect();
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn segment_ids_depend_only_on_content(src in text_strategy(), tgt in text_strategy(), key in "[a-z]{1,8}") {
        let plain = BiSegment::new(src.clone(), tgt.clone(), "en", "fr");
        let tagged = BiSegment::new(src.clone(), tgt.clone(), "en", "fr")
            .with_meta("game_title", key);
        prop_assert_eq!(plain.id, tagged.id);
        prop_assert_eq!(plain.id, content_id(&src, &tgt, "en", "fr"));
    }

    #[test]
    fn placeholder_findings_iff_multisets_differ(
        src_words in prop::collection::vec(prop::sample::select(WORDS), 1..6),
        tgt_words in prop::collection::vec(prop::sample::select(WORDS), 1..6),
        src_ph in prop::collection::vec(prop::sample::select(&["%d", "%s", "<b>", "[pagebreak]", "<Alias=P>"]), 0..4),
        tgt_ph in prop::collection::vec(prop::sample::select(&["%d", "%s", "<b>", "[pagebreak]", "<Alias=P>"]), 0..4),
    ) {
        let mut src: Vec<String> = src_words.iter().map(|w| w.to_string()).collect();
        src.extend(src_ph.iter().map(|p| p.to_string()));
        let mut tgt: Vec<String> = tgt_words.iter().map(|w| w.to_string()).collect();
        tgt.extend(tgt_ph.iter().map(|p| p.to_string()));
        let seg = BiSegment::new(src.join(" "), tgt.join(" "), "en", "fr");

        let count = |side: &str| {
            let mut counts: BTreeMap<String, usize> = BTreeMap::new();
            for span in extract_placeholders(side) {
                *counts.entry(span.literal).or_default() += 1;
            }
            counts
        };
        let equal = count(&seg.source_text) == count(&seg.target_text);
        let findings = check_placeholders(&seg);
        prop_assert_eq!(findings.is_empty(), equal);
        if let Some(finding) = findings.first() {
            for e in &finding.evidence {
                let text = match e.side {
                    locforge::locfile::Side::Source => &seg.source_text,
                    locforge::locfile::Side::Target => &seg.target_text,
                };
                prop_assert_eq!(&text[e.start..e.end], &e.excerpt);
            }
        }
    }

    #[test]
    fn meta_filter_removes_exactly_the_matching_segments(corpus in corpus_strategy(), tag in 0usize..3) {
        let tagged: Vec<BiSegment> = corpus
            .into_iter()
            .enumerate()
            .map(|(i, seg)| seg.with_meta("kind", if i % 3 == tag { "BOOK" } else { "DIALOG" }))
            .collect();
        let expected: Vec<u64> = tagged
            .iter()
            .filter(|s| s.meta["kind"] != "BOOK")
            .map(|s| s.id)
            .collect();
        let matching = tagged.len() - expected.len();

        let predicate = MetaPredicate::KeyValue { key: "kind".into(), value: "BOOK".into() };
        let (kept, removed) = filter_meta(tagged, Some(&predicate));
        prop_assert_eq!(removed, matching);
        let kept_ids: Vec<u64> = kept.iter().map(|s| s.id).collect();
        prop_assert_eq!(kept_ids, expected);
    }

    #[test]
    fn recipe_overrides_round_trip(vocab in 1u32..200_000, steps in 1u32..1_000_000) {
        let mut overrides = BTreeMap::new();
        overrides.insert("vocab_size".to_string(), serde_json::json!(vocab));
        overrides.insert("train_steps".to_string(), serde_json::json!(steps));
        let recipe = emit_recipe(Some(&overrides)).unwrap();
        prop_assert_eq!(recipe.vocab_size, vocab);
        prop_assert_eq!(recipe.train_steps, steps);
        prop_assert_eq!(recipe.decoder_layers, 6);

        let mut bogus = BTreeMap::new();
        bogus.insert("vocabsize".to_string(), serde_json::json!(vocab));
        prop_assert!(emit_recipe(Some(&bogus)).is_err());
    }
}
