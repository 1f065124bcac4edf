use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Compile and simulate AppIntent test intents.
///
/// Exit codes: 0 success, 1 simulated run FAILED (or `fmt --check` found
/// unformatted input), 2 resolution findings, 3 parse or invocation errors,
/// 4 output I/O errors.
#[derive(Debug, Parser)]
#[command(name = "appintent", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check every intent against its mapping table.
    Validate {
        intent: PathBuf,
        #[command(flatten)]
        mappings: Mappings,
    },
    /// Render an executable script per intent.
    Compile {
        intent: PathBuf,
        #[command(flatten)]
        mappings: Mappings,
        /// Script template; the shipped Appium-Python template when omitted.
        #[arg(long)]
        template: Option<PathBuf>,
        /// Device configuration filling the template's device slots.
        #[arg(long)]
        device: PathBuf,
        /// Output file. Only valid when the intent file holds one intent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Execute intents on the page-graph simulator and write run reports.
    Run {
        intent: PathBuf,
        #[command(flatten)]
        mappings: Mappings,
        /// App model, matched to intents by app label. Repeatable.
        #[arg(long = "app-model", required = true)]
        app_models: Vec<PathBuf>,
        /// Report directory [default: $APPINTENT_REPORT_DIR, else `reports`]
        #[arg(long)]
        report_dir: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Xml)]
        report_format: Format,
    },
    /// Rewrite an intent file in canonical form. Comments are not kept.
    Fmt {
        intent: PathBuf,
        /// Exit 1 instead of rewriting when the file is not canonical.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Args)]
pub struct Mappings {
    /// Mapping table, matched to intents by app label. Repeatable.
    #[arg(long = "mappings", required = true)]
    pub paths: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Xml,
    Plain,
}
