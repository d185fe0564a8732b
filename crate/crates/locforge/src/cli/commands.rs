//! One handler per subcommand. Handlers return [`CmdError`] so the driver
//! can map usage problems to exit 1 and data problems to exit 2.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::Args;
use serde::Serialize;

use crate::corpus::{
    clean, emit_recipe, filter_meta, merge, normalize_typography, split, stats, stats_lines,
    BiSegment, CleanReport, CorpusManifest, ManifestEntry, MetaPredicate, SplitSpec,
};
use crate::locfile::{
    align_by_key, parse_kv_table, parse_tmx, write_bitext, write_tmx, RawEntry, TableFormat,
    TranslationUnit,
};
use crate::metrics::{compare_with, score_system_with, ComparisonReport, Metric, ScoreReport};
use crate::qa::{run_suite, summary_table, write_findings_jsonl, QaConfig};

use super::config::PipelineConfig;

#[derive(Debug)]
pub enum CmdError {
    Usage(String),
    Data(String),
}

fn usage(message: impl Into<String>) -> CmdError {
    CmdError::Usage(message.into())
}

fn data(message: impl Into<String>) -> CmdError {
    CmdError::Data(message.into())
}

impl<E: std::error::Error> From<E> for CmdError {
    fn from(e: E) -> Self {
        CmdError::Data(e.to_string())
    }
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, CmdError> {
    std::fs::read(path).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CmdError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| data(format!("{}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, bytes).map_err(|e| data(format!("{}: {e}", path.display())))
}

fn in_file(path: &Path, e: impl std::fmt::Display) -> CmdError {
    data(format!("{}: {e}", path.display()))
}

/// Reads an aligned corpus from a TMX file.
fn read_corpus(path: &Path) -> Result<Vec<BiSegment>, CmdError> {
    let bytes = read_bytes(path)?;
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("tmx") => {
            let (units, issues) = parse_tmx(&bytes).map_err(|e| in_file(path, e))?;
            for issue in &issues {
                log::warn!("{}: {issue:?}", path.display());
            }
            Ok(units.iter().map(BiSegment::from).collect())
        }
        _ => Err(data(format!(
            "{}: expected a .tmx corpus (use `export` for bitext)",
            path.display()
        ))),
    }
}

fn to_unit(seg: &BiSegment) -> TranslationUnit {
    let mut meta = seg.meta.clone();
    let key = meta.remove("key").unwrap_or_else(|| format!("{:016x}", seg.id));
    let origin = meta.remove("origin").unwrap_or_default();
    let mut source = RawEntry::new(key.clone(), seg.source_text.clone(), seg.source_lang.clone());
    source.meta = meta;
    let target = RawEntry::new(key, seg.target_text.clone(), seg.target_lang.clone());
    TranslationUnit { source, target, origin }
}

fn write_corpus_tmx(path: &Path, segments: &[BiSegment]) -> Result<(), CmdError> {
    let units: Vec<TranslationUnit> = segments.iter().map(to_unit).collect();
    let bytes = write_tmx(&units, &BTreeMap::new()).map_err(|e| in_file(path, e))?;
    write_bytes(path, &bytes)
}

/// Writes `<stem>.json` and `<stem>.txt` under `dir`.
fn write_report<T: Serialize>(
    dir: &Path,
    stem: &str,
    value: &T,
    text: &str,
) -> Result<(), CmdError> {
    let mut json = serde_json::to_string_pretty(value).expect("report serializes");
    json.push('\n');
    write_bytes(&dir.join(format!("{stem}.json")), json.as_bytes())?;
    write_bytes(&dir.join(format!("{stem}.txt")), text.as_bytes())
}

fn out_dir(flag: &Option<PathBuf>, config: &PipelineConfig) -> Result<PathBuf, CmdError> {
    flag.clone()
        .or_else(|| config.out_dir.clone())
        .ok_or_else(|| usage("no output directory: pass --out or set out_dir in the config"))
}

fn clean_report_text(report: &CleanReport) -> String {
    format!(
        "input segments        {:>10}\n\
         removed empty         {:>10}\n\
         removed untranslated  {:>10}\n\
         removed duplicates    {:>10}\n\
         removed by filter     {:>10}\n\
         output segments       {:>10}\n",
        report.input_count,
        report.removed_empty,
        report.removed_untranslated,
        report.removed_duplicates,
        report.removed_by_filter,
        report.output_count
    )
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    /// Corpus manifest (JSON)
    #[arg(long, value_name = "FILE")]
    manifest: Option<PathBuf>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Language of the source side of string tables
    #[arg(long, default_value = "en")]
    source_lang: String,
    /// Language of the target side of string tables
    #[arg(long, default_value = "fr")]
    target_lang: String,
    /// Keep empty, untranslated and duplicate segments
    #[arg(long)]
    no_clean: bool,
    /// Keep the original typography
    #[arg(long)]
    no_typography: bool,
    /// Drop segments matching this metadata predicate (JSON)
    #[arg(long, value_name = "JSON")]
    exclude: Option<String>,
}

pub fn build(args: &BuildArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let manifest_path = args
        .manifest
        .clone()
        .or_else(|| config.manifest.clone())
        .ok_or_else(|| usage("no manifest: pass --manifest or set manifest in the config"))?;
    let manifest = CorpusManifest::load(&manifest_path)?;

    let mut per_entry = Vec::with_capacity(manifest.entries.len());
    for entry in &manifest.entries {
        per_entry.push(parse_entry(entry, &args.source_lang, &args.target_lang)?);
    }
    let (mut segments, warnings) = merge(&manifest, per_entry)?;
    for warning in warnings {
        log::warn!("{warning}");
    }

    let mut report = CleanReport {
        input_count: segments.len(),
        output_count: segments.len(),
        ..CleanReport::default()
    };
    if config.clean && !args.no_clean {
        (segments, report) = clean(segments);
    }
    if let Some(json) = &args.exclude {
        let predicate: MetaPredicate = serde_json::from_str(json)
            .map_err(|e| usage(format!("--exclude is not a metadata predicate: {e}")))?;
        let removed;
        (segments, removed) = filter_meta(segments, Some(&predicate));
        report.record_filtered(removed);
    }
    if config.typography && !args.no_typography {
        for seg in &mut segments {
            let src_lang = config.typography_lang.as_deref().unwrap_or(&seg.source_lang);
            let tgt_lang = config.typography_lang.as_deref().unwrap_or(&seg.target_lang);
            seg.source_text = normalize_typography(&seg.source_text, src_lang);
            seg.target_text = normalize_typography(&seg.target_text, tgt_lang);
            seg.id = seg.rehash();
        }
    }

    let out = out_dir(&args.out, config)?;
    write_corpus_tmx(&out.join("corpus.tmx"), &segments)?;
    let text = clean_report_text(&report);
    write_report(&out, "clean_report", &report, &text)?;
    print!("{text}");
    println!("corpus written to {}", out.join("corpus.tmx").display());
    Ok(())
}

/// Parses one manifest entry's files into segments: TMX files directly,
/// string tables paired by stem (`ui.en.tsv` + `ui.fr.tsv`) and aligned by
/// key.
fn parse_entry(
    entry: &ManifestEntry,
    source_lang: &str,
    target_lang: &str,
) -> Result<Vec<BiSegment>, CmdError> {
    let mut segments = Vec::new();
    let mut tables: BTreeMap<String, BTreeMap<String, (&Path, TableFormat)>> = BTreeMap::new();

    for path in &entry.files {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("").to_ascii_lowercase();
        match ext.as_str() {
            "tmx" => {
                let bytes = read_bytes(path)?;
                let (units, issues) = parse_tmx(&bytes).map_err(|e| in_file(path, e))?;
                for issue in &issues {
                    log::warn!("{}: {issue:?}", path.display());
                }
                segments.extend(units.iter().map(BiSegment::from));
            }
            "tsv" | "csv" => {
                let format = if ext == "tsv" { TableFormat::Tsv } else { TableFormat::Csv };
                let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("");
                let (base, lang) = stem.rsplit_once('.').ok_or_else(|| {
                    data(format!(
                        "{}: cannot infer the table language; name tables like ui.en.tsv",
                        path.display()
                    ))
                })?;
                tables
                    .entry(format!("{}/{base}", path.parent().unwrap_or(Path::new("")).display()))
                    .or_default()
                    .insert(lang.to_string(), (path.as_path(), format));
            }
            _ => {
                return Err(data(format!(
                    "{}: unsupported localization file type",
                    path.display()
                )))
            }
        }
    }

    for (table, mut by_lang) in tables {
        let src = by_lang
            .remove(source_lang)
            .ok_or_else(|| data(format!("table {table}: no {source_lang} file listed")))?;
        let tgt = by_lang
            .remove(target_lang)
            .ok_or_else(|| data(format!("table {table}: no {target_lang} file listed")))?;
        if let Some(extra) = by_lang.keys().next() {
            return Err(data(format!(
                "table {table}: unexpected {extra} file (building {source_lang}->{target_lang})"
            )));
        }
        let mut sides = Vec::new();
        for (lang, (path, format)) in [(source_lang, src), (target_lang, tgt)] {
            let bytes = read_bytes(path)?;
            let (entries, issues) = parse_kv_table(&bytes, format, lang).map_err(|e| in_file(path, e))?;
            for issue in &issues {
                log::warn!("{}: {issue:?}", path.display());
            }
            sides.push(entries);
        }
        let tgt_entries = sides.pop().expect("two sides");
        let src_entries = sides.pop().expect("two sides");
        let (units, unmatched) = align_by_key(src_entries, tgt_entries)?;
        if !unmatched.is_empty() {
            log::warn!("table {table}: {} keys have no counterpart", unmatched.len());
        }
        segments.extend(units.iter().map(BiSegment::from));
    }
    Ok(segments)
}

#[derive(Args, Debug)]
pub struct CleanArgs {
    /// Input corpus (TMX)
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn clean_cmd(args: &CleanArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let segments = read_corpus(&args.input)?;
    let (segments, report) = clean(segments);
    let out = out_dir(&args.out, config)?;
    write_corpus_tmx(&out.join("corpus.tmx"), &segments)?;
    let text = clean_report_text(&report);
    write_report(&out, "clean_report", &report, &text)?;
    print!("{text}");
    Ok(())
}

#[derive(Args, Debug)]
pub struct SplitArgs {
    /// Input corpus (TMX)
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Segments drawn for the validation set
    #[arg(long, value_name = "N")]
    valid_size: Option<usize>,
    /// Segments drawn for the test set
    #[arg(long, value_name = "N")]
    test_size: Option<usize>,
    /// Shuffle seed; same seed, same split
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,
    /// Only segments matching this metadata predicate (JSON) are drawn
    #[arg(long, value_name = "JSON")]
    scope: Option<String>,
    /// Output directory
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct SplitReport {
    seed: u64,
    valid_size: usize,
    test_size: usize,
    train: usize,
    valid: usize,
    test: usize,
}

pub fn split_cmd(args: &SplitArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let base = config.split.clone();
    let valid_size = args
        .valid_size
        .or(base.as_ref().map(|s| s.valid_size))
        .ok_or_else(|| usage("no --valid-size given (and no split in the config)"))?;
    let test_size = args
        .test_size
        .or(base.as_ref().map(|s| s.test_size))
        .ok_or_else(|| usage("no --test-size given (and no split in the config)"))?;
    let seed = args
        .seed
        .or(base.as_ref().map(|s| s.seed))
        .ok_or_else(|| usage("no --seed given; splits only ever use explicit seeds"))?;
    let scope = match &args.scope {
        Some(json) => Some(
            serde_json::from_str::<MetaPredicate>(json)
                .map_err(|e| usage(format!("--scope is not a metadata predicate: {e}")))?,
        ),
        None => base.and_then(|s| s.scope),
    };
    let spec = SplitSpec { valid_size, test_size, seed, scope };

    let segments = read_corpus(&args.input)?;
    let result = split(segments, &spec)?;
    let out = out_dir(&args.out, config)?;
    write_corpus_tmx(&out.join("train.tmx"), &result.train)?;
    write_corpus_tmx(&out.join("valid.tmx"), &result.valid)?;
    write_corpus_tmx(&out.join("test.tmx"), &result.test)?;

    let report = SplitReport {
        seed,
        valid_size,
        test_size,
        train: result.train.len(),
        valid: result.valid.len(),
        test: result.test.len(),
    };
    let text = format!(
        "seed   {}\ntrain  {:>10}\nvalid  {:>10}\ntest   {:>10}\n",
        report.seed, report.train, report.valid, report.test
    );
    write_report(&out, "split_report", &report, &text)?;
    print!("{text}");
    Ok(())
}

#[derive(Args, Debug)]
pub struct StatsArgs {
    /// Input corpus (TMX)
    #[arg(long, value_name = "FILE", conflicts_with_all = ["src", "tgt"])]
    input: Option<PathBuf>,
    /// Source side of a bitext pair (one segment per line)
    #[arg(long, value_name = "FILE", requires = "tgt")]
    src: Option<PathBuf>,
    /// Target side of a bitext pair
    #[arg(long, value_name = "FILE", requires = "src")]
    tgt: Option<PathBuf>,
    /// Also write stats.json / stats.txt here
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn stats_cmd(args: &StatsArgs, _config: &PipelineConfig) -> Result<(), CmdError> {
    let counts = match (&args.input, &args.src, &args.tgt) {
        (Some(input), None, None) => stats(&read_corpus(input)?),
        (None, Some(src), Some(tgt)) => {
            let src_lines = crate::locfile::read_lines(&read_bytes(src)?)
                .map_err(|e| in_file(src, e))?;
            let tgt_lines = crate::locfile::read_lines(&read_bytes(tgt)?)
                .map_err(|e| in_file(tgt, e))?;
            stats_lines(&src_lines, &tgt_lines)
        }
        _ => return Err(usage("pass either --input CORPUS.tmx or --src FILE --tgt FILE")),
    };
    println!("{}", serde_json::to_string(&counts).expect("stats serialize"));
    if let Some(out) = &args.out {
        let text = format!(
            "sentences      {:>12}\nsource tokens  {:>12}\ntarget tokens  {:>12}\n",
            counts.sentences, counts.src_tokens, counts.tgt_tokens
        );
        write_report(out, "stats", &counts, &text)?;
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct ExportArgs {
    /// Input corpus (TMX)
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// Where to write the source side, one segment per line
    #[arg(long, value_name = "FILE")]
    src_out: PathBuf,
    /// Where to write the target side, one segment per line
    #[arg(long, value_name = "FILE")]
    tgt_out: PathBuf,
}

pub fn export(args: &ExportArgs, _config: &PipelineConfig) -> Result<(), CmdError> {
    let bytes = read_bytes(&args.input)?;
    let (units, issues) = parse_tmx(&bytes).map_err(|e| in_file(&args.input, e))?;
    for issue in &issues {
        log::warn!("{}: {issue:?}", args.input.display());
    }
    let (src, tgt) = write_bitext(&units).map_err(|e| in_file(&args.input, e))?;
    write_bytes(&args.src_out, &src)?;
    write_bytes(&args.tgt_out, &tgt)?;
    println!("{} segments exported", units.len());
    Ok(())
}

fn read_segment_lines(path: &Path) -> Result<Vec<String>, CmdError> {
    crate::locfile::read_lines(&read_bytes(path)?).map_err(|e| in_file(path, e))
}

fn score_text(report: &ScoreReport) -> String {
    let mut out = format!("{}  ({} segments)\n", report.system_name, report.segment_count);
    for metric in [Metric::Bleu, Metric::Chrf2pp, Metric::Ter] {
        out.push_str(&format!(
            "{:<9} {:>7.2}  {}\n",
            format!("{}{}", metric.display_name(), metric.arrow()),
            report.score(metric),
            report.signatures[&metric]
        ));
    }
    out
}

#[derive(Args, Debug)]
pub struct ScoreArgs {
    /// Hypothesis file, one segment per line
    #[arg(long, value_name = "FILE")]
    hyp: PathBuf,
    /// Reference file, one segment per line
    #[arg(long = "ref", value_name = "FILE")]
    reference: PathBuf,
    /// System name shown in the report
    #[arg(long, default_value = "system")]
    name: String,
    /// Also write score.json / score.txt here
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn score(args: &ScoreArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let hyps = read_segment_lines(&args.hyp)?;
    let refs = read_segment_lines(&args.reference)?;
    let (report, _) = score_system_with(&args.name, &hyps, &refs, &config.metrics)?;
    let text = score_text(&report);
    print!("{text}");
    if let Some(out) = &args.out {
        write_report(out, "score", &report, &text)?;
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct NamedPath {
    name: String,
    path: PathBuf,
}

fn parse_named_path(value: &str) -> Result<NamedPath, String> {
    let (name, path) = match value.split_once('=') {
        Some((name, path)) if !name.is_empty() => (name.to_string(), PathBuf::from(path)),
        Some(_) => return Err("empty system name".to_string()),
        None => {
            let path = PathBuf::from(value);
            let name = path
                .file_stem()
                .and_then(|s| s.to_str())
                .ok_or("cannot derive a system name; use NAME=FILE")?
                .to_string();
            (name, path)
        }
    };
    Ok(NamedPath { name, path })
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// Reference file, one segment per line
    #[arg(long = "ref", value_name = "FILE")]
    reference: PathBuf,
    /// Hypothesis file as NAME=FILE (repeatable; NAME defaults to the stem)
    #[arg(long = "hyp", value_name = "NAME=FILE", required = true, value_parser = parse_named_path)]
    hyps: Vec<NamedPath>,
    /// Also write compare.json / compare.txt here
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn compare_cmd(args: &CompareArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let refs = read_segment_lines(&args.reference)?;
    let mut systems = Vec::with_capacity(args.hyps.len());
    for named in &args.hyps {
        systems.push((named.name.clone(), read_segment_lines(&named.path)?));
    }
    let report: ComparisonReport = compare_with(&systems, &refs, &config.metrics)?;
    let text = report.render_text();
    print!("{text}");
    if let Some(out) = &args.out {
        write_report(out, "compare", &report, &text)?;
    }
    Ok(())
}

#[derive(Args, Debug)]
pub struct QaArgs {
    /// Input corpus (TMX)
    #[arg(long, value_name = "FILE")]
    input: PathBuf,
    /// QA configuration (JSON); built-in defaults when absent
    #[arg(long, value_name = "FILE")]
    qa_config: Option<PathBuf>,
    /// Write findings.jsonl and qa_report.{json,txt} here
    #[arg(long, value_name = "DIR")]
    out: Option<PathBuf>,
}

pub fn qa(args: &QaArgs, config: &PipelineConfig) -> Result<(), CmdError> {
    let qa_config = match args.qa_config.clone().or_else(|| config.qa_config.clone()) {
        Some(path) => QaConfig::load(&path).map_err(|e| in_file(&path, e))?,
        None => QaConfig::default(),
    };
    let segments = read_corpus(&args.input)?;
    let report = run_suite(&segments, &qa_config)?;
    let text = summary_table(&report.summary);
    print!("{text}");
    if let Some(out) = &args.out {
        write_bytes(&out.join("findings.jsonl"), write_findings_jsonl(&report.findings).as_bytes())?;
        write_report(out, "qa_report", &report, &text)?;
    }
    Ok(())
}

fn parse_override(value: &str) -> Result<(String, serde_json::Value), String> {
    let (field, raw) = value.split_once('=').ok_or("expected FIELD=VALUE")?;
    if field.is_empty() {
        return Err("empty field name".to_string());
    }
    let parsed = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    Ok((field.to_string(), parsed))
}

#[derive(Args, Debug)]
pub struct RecipeArgs {
    /// Override one recipe field, as FIELD=VALUE (repeatable)
    #[arg(long = "set", value_name = "FIELD=VALUE", value_parser = parse_override)]
    sets: Vec<(String, serde_json::Value)>,
    /// Write the recipe here instead of stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

pub fn recipe(args: &RecipeArgs, _config: &PipelineConfig) -> Result<(), CmdError> {
    let overrides: BTreeMap<String, serde_json::Value> = args.sets.iter().cloned().collect();
    let recipe = emit_recipe(if overrides.is_empty() { None } else { Some(&overrides) })?;
    let json = recipe.to_json();
    match &args.out {
        Some(path) => write_bytes(path, json.as_bytes())?,
        None => print!("{json}"),
    }
    Ok(())
}
