//! End-to-end tests of the `locforge` binary: exit codes, stdout shapes,
//! and the files each subcommand writes.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::{Command, Output};

use locforge::locfile::{parse_tmx, write_tmx, RawEntry, TranslationUnit};

fn locforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locforge"))
        .args(args)
        .current_dir(dir)
        .env_remove("LOCFORGE_CONFIG")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("stdout is UTF-8")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("stderr is UTF-8")
}

fn tmx_bytes(pairs: &[(&str, &str)]) -> Vec<u8> {
    let units: Vec<TranslationUnit> = pairs
        .iter()
        .enumerate()
        .map(|(i, (en, fr))| TranslationUnit {
            source: RawEntry::new(format!("k{i:04}"), *en, "en"),
            target: RawEntry::new(format!("k{i:04}"), *fr, "fr"),
            origin: String::new(),
        })
        .collect();
    write_tmx(&units, &BTreeMap::new()).expect("fixture serializes")
}

fn write(dir: &Path, name: &str, bytes: &[u8]) {
    std::fs::write(dir.join(name), bytes).expect("fixture written");
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

#[test]
fn help_and_version_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = locforge(dir.path(), &["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("locforge"));
    assert!(stdout(&out).contains("score"));

    let out = locforge(dir.path(), &["--version"]);
    assert_eq!(code(&out), 0);

    let out = locforge(dir.path(), &["split", "--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("--seed"));
}

#[test]
fn usage_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = locforge(dir.path(), &["frobnicate"]);
    assert_eq!(code(&out), 1);

    let out = locforge(dir.path(), &["score", "--ref", "r.txt"]);
    assert_eq!(code(&out), 1);

    let out = locforge(dir.path(), &["stats"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--src FILE --tgt FILE"));

    write(dir.path(), "c.tmx", &tmx_bytes(&[("Hello", "Bonjour")]));
    let out = locforge(dir.path(), &["split", "--input", "c.tmx", "--valid-size", "1", "--test-size", "1"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("explicit seeds"));

    // A conflicting flag pair is caught by the parser itself.
    let out = locforge(dir.path(), &["stats", "--input", "c.tmx", "--src", "a", "--tgt", "b"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn data_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = locforge(dir.path(), &["stats", "--input", "missing.tmx"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("missing.tmx"));

    write(dir.path(), "notes.txt", b"not a corpus\n");
    let out = locforge(dir.path(), &["clean", "--input", "notes.txt", "--out", "o"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("expected a .tmx corpus"));

    // Hypothesis and reference line counts must match.
    write(dir.path(), "h.txt", b"one\ntwo\n");
    write(dir.path(), "r.txt", b"one\n");
    let out = locforge(dir.path(), &["score", "--hyp", "h.txt", "--ref", "r.txt"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn stats_on_empty_bitext_pair() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "empty.en", b"");
    write(dir.path(), "empty.fr", b"");
    let out = locforge(dir.path(), &["stats", "--src", "empty.en", "--tgt", "empty.fr"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "{\"sentences\":0,\"src_tokens\":0,\"tgt_tokens\":0}\n");
}

#[test]
fn stats_counts_a_corpus_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "c.tmx", &tmx_bytes(&[("Hello there", "Bonjour"), ("Go now", "Va vite")]));
    let out = locforge(dir.path(), &["stats", "--input", "c.tmx", "--out", "rep"]);
    assert_eq!(code(&out), 0);
    let counts: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(counts["sentences"], 2);
    assert_eq!(counts["src_tokens"], 4);
    assert_eq!(counts["tgt_tokens"], 3);

    let json: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "rep/stats.json")).unwrap();
    assert_eq!(json["sentences"], 2);
    let text = String::from_utf8(read(dir.path(), "rep/stats.txt")).unwrap();
    assert!(text.contains("source tokens"));
}

#[test]
fn export_writes_the_bitext_pair() {
    let dir = tempfile::tempdir().unwrap();
    let pairs = [("Hello", "Bonjour"), ("Bye", "Au revoir"), ("Coin", "Pièce")];
    write(dir.path(), "c.tmx", &tmx_bytes(&pairs));
    let out = locforge(
        dir.path(),
        &["export", "--input", "c.tmx", "--src-out", "c.en", "--tgt-out", "c.fr"],
    );
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("3 segments exported"));
    assert_eq!(read(dir.path(), "c.en"), b"Hello\nBye\nCoin\n");
    assert_eq!(read(dir.path(), "c.fr"), "Bonjour\nAu revoir\nPièce\n".as_bytes());
}

#[test]
fn score_reports_the_three_metrics_with_signatures() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "h.txt", b"the cat sat on the mat\n");
    write(dir.path(), "r.txt", b"the cat sat on the mat\n");
    let out = locforge(
        dir.path(),
        &["score", "--hyp", "h.txt", "--ref", "r.txt", "--name", "identity", "--out", "rep"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("identity"));
    assert!(text.contains("BLEU↑"));
    assert!(text.contains("chrF2++↑"));
    assert!(text.contains("TER↓"));
    assert!(text.contains("100.00"));
    assert!(text.contains("0.00"));
    assert!(text.contains("#:1|c:mixed|e:no|tok:13a|s:exp|v:2.0.0"));

    let json: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "rep/score.json")).unwrap();
    assert_eq!(json["system_name"], "identity");
    assert_eq!(json["segment_count"], 1);
    assert!(json["tool_version"].as_str().unwrap().contains('.'));
    assert!(json["signatures"]["ter"].as_str().unwrap().contains("t:tercom"));
}

#[test]
fn compare_tabulates_named_systems() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "r.txt", b"the cat sat on the mat\nopen the old door\n");
    write(dir.path(), "perfect.txt", b"the cat sat on the mat\nopen the old door\n");
    write(dir.path(), "worse.txt", b"a cat sat\nshut that door\n");
    let out = locforge(
        dir.path(),
        &["compare", "--ref", "r.txt", "--hyp", "mt=perfect.txt", "--hyp", "worse.txt", "--out", "rep"],
    );
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("mt"));
    assert!(text.contains("worse"));
    assert!(text.contains("BLEU↑"));
    assert!(text.contains("100.00"));
    assert!(text.contains("0.00"));

    let json: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "rep/compare.json")).unwrap();
    assert_eq!(json["systems"][0]["system_name"], "mt");
    assert_eq!(json["systems"][1]["system_name"], "worse");

    // An empty system name is rejected by the argument parser.
    let out = locforge(dir.path(), &["compare", "--ref", "r.txt", "--hyp", "=perfect.txt"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn split_reruns_are_byte_identical_and_seeds_matter() {
    let dir = tempfile::tempdir().unwrap();
    let pairs: Vec<(String, String)> =
        (0..30).map(|i| (format!("source line {i}"), format!("ligne cible {i}"))).collect();
    let borrowed: Vec<(&str, &str)> =
        pairs.iter().map(|(s, t)| (s.as_str(), t.as_str())).collect();
    write(dir.path(), "c.tmx", &tmx_bytes(&borrowed));

    let base = ["split", "--input", "c.tmx", "--valid-size", "5", "--test-size", "5"];
    for out_dir in ["a", "b"] {
        let mut args = base.to_vec();
        args.extend(["--seed", "7", "--out", out_dir]);
        assert_eq!(code(&locforge(dir.path(), &args)), 0);
    }
    let mut args = base.to_vec();
    args.extend(["--seed", "8", "--out", "c"]);
    assert_eq!(code(&locforge(dir.path(), &args)), 0);

    for name in ["train.tmx", "valid.tmx", "test.tmx", "split_report.json"] {
        assert_eq!(read(dir.path(), &format!("a/{name}")), read(dir.path(), &format!("b/{name}")));
    }
    assert_ne!(read(dir.path(), "a/valid.tmx"), read(dir.path(), "c/valid.tmx"));

    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "a/split_report.json")).unwrap();
    assert_eq!(report["train"], 20);
    assert_eq!(report["valid"], 5);
    assert_eq!(report["test"], 5);

    // Asking for more than the corpus holds is a data error.
    let out = locforge(
        dir.path(),
        &["split", "--input", "c.tmx", "--valid-size", "20", "--test-size", "20", "--seed", "1", "--out", "d"],
    );
    assert_eq!(code(&out), 2);
}

fn write_build_fixture(dir: &Path) {
    write(
        dir,
        "alpha.en.tsv",
        b"k1\tHello %s\nk2\t\nk3\tSame\nk4\tBye\nk5\tCoin\nk6\tCoin\n",
    );
    write(
        dir,
        "alpha.fr.tsv",
        "k1\tBonjour  %s\nk2\tVide\nk3\tSame\nk4\tAu revoir\nk5\tPièce\nk6\tPièce\n".as_bytes(),
    );
    write(
        dir,
        "manifest.json",
        br#"{"entries":[{"game_title":"Alpha","developer_year":"Studio, 2020","files":["alpha.en.tsv","alpha.fr.tsv"]}]}"#,
    );
}

#[test]
fn build_cleans_normalizes_and_reports() {
    let dir = tempfile::tempdir().unwrap();
    write_build_fixture(dir.path());
    let out = locforge(dir.path(), &["build", "--manifest", "manifest.json", "--out", "out"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("corpus written to"));

    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "out/clean_report.json")).unwrap();
    assert_eq!(report["input_count"], 6);
    assert_eq!(report["removed_empty"], 1);
    assert_eq!(report["removed_untranslated"], 1);
    assert_eq!(report["removed_duplicates"], 1);
    assert_eq!(report["output_count"], 3);

    let (units, issues) = parse_tmx(&read(dir.path(), "out/corpus.tmx")).unwrap();
    assert!(issues.is_empty());
    let mut keys: Vec<&str> = units.iter().map(|u| u.source.key.as_str()).collect();
    keys.sort_unstable();
    assert_eq!(keys, ["k1", "k4", "k5"]);
    let k1 = units.iter().find(|u| u.source.key == "k1").unwrap();
    // Typography normalization collapsed the double space.
    assert_eq!(k1.target.text, "Bonjour %s");

    // Same inputs, same bytes.
    let out = locforge(dir.path(), &["build", "--manifest", "manifest.json", "--out", "out2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(read(dir.path(), "out/corpus.tmx"), read(dir.path(), "out2/corpus.tmx"));

    // --no-clean keeps everything.
    let out = locforge(
        dir.path(),
        &["build", "--manifest", "manifest.json", "--out", "raw", "--no-clean"],
    );
    assert_eq!(code(&out), 0);
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "raw/clean_report.json")).unwrap();
    assert_eq!(report["output_count"], 6);
}

#[test]
fn build_without_manifest_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = locforge(dir.path(), &["build", "--out", "out"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("--manifest"));
}

#[test]
fn config_file_supplies_defaults_via_env() {
    let dir = tempfile::tempdir().unwrap();
    write_build_fixture(dir.path());
    write(dir.path(), "pipeline.json", br#"{"manifest":"manifest.json","out_dir":"cfgout"}"#);

    let out = Command::new(env!("CARGO_BIN_EXE_locforge"))
        .args(["build"])
        .current_dir(dir.path())
        .env("LOCFORGE_CONFIG", "pipeline.json")
        .env_remove("RUST_LOG")
        .output()
        .expect("binary runs");
    assert_eq!(code(&out), 0);
    assert!(dir.path().join("cfgout/corpus.tmx").exists());

    // A config with an unknown key is a data error, flag and env alike.
    write(dir.path(), "bad.json", br#"{"manifst":"manifest.json"}"#);
    let out = locforge(dir.path(), &["--config", "bad.json", "build"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("manifst"));
}

#[test]
fn qa_reports_a_planted_placeholder_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.tmx",
        &tmx_bytes(&[
            ("You gain %d coins.", "Vous gagnez des pièces."),
            ("Press the button.", "Appuyez sur le bouton."),
        ]),
    );
    let out = locforge(dir.path(), &["qa", "--input", "c.tmx", "--out", "rep"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("placeholder_mismatch"));

    let findings = String::from_utf8(read(dir.path(), "rep/findings.jsonl")).unwrap();
    assert!(findings.contains("\"placeholder_mismatch\""));
    assert!(findings.contains("%d"));
    let report: serde_json::Value =
        serde_json::from_slice(&read(dir.path(), "rep/qa_report.json")).unwrap();
    assert_eq!(report["summary"]["placeholder_mismatch"], 1);
}

#[test]
fn recipe_prints_overrides_and_rejects_unknown_fields() {
    let dir = tempfile::tempdir().unwrap();
    let out = locforge(dir.path(), &["recipe"]);
    assert_eq!(code(&out), 0);
    let recipe: serde_json::Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(recipe["vocab_size"], 32000);
    assert_eq!(recipe["train_steps"], 200000);

    let out = locforge(dir.path(), &["recipe", "--set", "train_steps=1000", "--out", "r.json"]);
    assert_eq!(code(&out), 0);
    let recipe: serde_json::Value = serde_json::from_slice(&read(dir.path(), "r.json")).unwrap();
    assert_eq!(recipe["train_steps"], 1000);
    assert_eq!(recipe["vocab_size"], 32000);

    let out = locforge(dir.path(), &["recipe", "--set", "warmup=4000"]);
    assert_eq!(code(&out), 2);

    // FIELD=VALUE syntax is checked by the parser.
    let out = locforge(dir.path(), &["recipe", "--set", "train_steps"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn clean_subcommand_reports_and_rewrites() {
    let dir = tempfile::tempdir().unwrap();
    write(
        dir.path(),
        "c.tmx",
        &tmx_bytes(&[("Hello", "Bonjour"), ("Hello", "Bonjour"), ("Menu", "Menu")]),
    );
    let out = locforge(dir.path(), &["clean", "--input", "c.tmx", "--out", "rep"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("output segments"));
    let (units, _) = parse_tmx(&read(dir.path(), "rep/corpus.tmx")).unwrap();
    assert_eq!(units.len(), 1);
    assert_eq!(units[0].source.text, "Hello");
}
