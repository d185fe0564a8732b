//! The `locforge` command line.
//!
//! `run` is the whole binary: parse argv, load the optional pipeline
//! config, dispatch. Exit codes are a contract: 0 success, 1 usage error,
//! 2 data error. Given the same argv and input files, every output file is
//! byte-identical run to run; reports carry the tool version and the full
//! metric signatures instead of timestamps.

mod commands;
mod config;

pub use commands::CmdError;
pub use config::{PipelineConfig, CONFIG_ENV};

use std::ffi::OsString;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgAction, Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(
    name = "locforge",
    version,
    about = "Build bilingual corpora from game localization files and score MT output against them"
)]
struct Cli {
    /// Pipeline config file (JSON); defaults to $LOCFORGE_CONFIG
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// More log output (-v info, -vv debug)
    #[arg(short, long, global = true, action = ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse, align, clean and normalize a corpus per its manifest
    Build(commands::BuildArgs),
    /// Drop empty, untranslated and duplicate segments from a corpus
    Clean(commands::CleanArgs),
    /// Draw seeded validation and test sets, deterministically
    Split(commands::SplitArgs),
    /// Sentence and token counts
    Stats(commands::StatsArgs),
    /// Write a TMX corpus as an aligned bitext pair
    Export(commands::ExportArgs),
    /// Score one system with BLEU, chrF2++ and TER
    Score(commands::ScoreArgs),
    /// Score several systems against one reference and tabulate
    Compare(commands::CompareArgs),
    /// Run the localization QA checks over an aligned corpus
    Qa(commands::QaArgs),
    /// Emit the NMT training recipe document
    Recipe(commands::RecipeArgs),
}

fn init_logging(verbose: u8, config_filter: Option<&str>) {
    let filter = match (verbose, config_filter) {
        (0, Some(f)) => f.to_string(),
        (0, None) => "warn".to_string(),
        (1, _) => "info".to_string(),
        (_, _) => "debug".to_string(),
    };
    let mut builder = env_logger::Builder::new();
    builder.parse_filters(&filter);
    if let Ok(env_filter) = std::env::var("RUST_LOG") {
        builder.parse_filters(&env_filter);
    }
    let _ = builder.try_init();
}

/// Runs the CLI on `argv` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };

    let config_path = cli
        .config
        .clone()
        .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
    let config = match config_path {
        Some(path) => match PipelineConfig::load(&path) {
            Ok(config) => config,
            Err(message) => {
                eprintln!("error: {message}");
                return 2;
            }
        },
        None => PipelineConfig::default(),
    };
    init_logging(cli.verbose, config.log.as_deref());

    let result = match &cli.command {
        Command::Build(args) => commands::build(args, &config),
        Command::Clean(args) => commands::clean_cmd(args, &config),
        Command::Split(args) => commands::split_cmd(args, &config),
        Command::Stats(args) => commands::stats_cmd(args, &config),
        Command::Export(args) => commands::export(args, &config),
        Command::Score(args) => commands::score(args, &config),
        Command::Compare(args) => commands::compare_cmd(args, &config),
        Command::Qa(args) => commands::qa(args, &config),
        Command::Recipe(args) => commands::recipe(args, &config),
    };
    match result {
        Ok(()) => 0,
        Err(CmdError::Usage(message)) => {
            eprintln!("error: {message}");
            eprintln!("run 'locforge <subcommand> --help' for usage");
            1
        }
        Err(CmdError::Data(message)) => {
            eprintln!("error: {message}");
            2
        }
    }
}
