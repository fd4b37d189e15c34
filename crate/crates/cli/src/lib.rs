//! Command-line front end. `run` parses arguments, validates inputs and
//! outputs before any work, and maps failures to exit codes
//! (0 ok, 1 runtime failure, 2 usage).

mod commands;
mod inputs;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use output::sibling;

/// Directory searched for default configuration files (`relations.toml`).
pub const CONFIG_DIR_ENV: &str = "ECONLEX_CONFIG_DIR";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "econlex", version, about = "Economic sentiment lexicons, pessimism indices and recession-forecast evaluation")]
pub struct Cli {
    /// Worker threads for corpus stages (default: available cores). Results do not depend on it.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    pub jobs: Option<u16>,
    /// Overwrite existing output files.
    #[arg(long, global = true)]
    pub force: bool,
    /// More log output (-v info, -vv debug).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Aggregate annotator scores into a fine-grained lexicon, removing terms
    /// with high sign disagreement or repeated ambiguity flags.
    BuildLexicon(BuildLexiconArgs),
    /// Harvest modifier candidates around economic-concept nouns from CoNLL-U parses.
    Candidates(CandidatesArgs),
    /// Word-level comparison of two lexicons (overlap, agreement by class, disagreement).
    Compare(CompareArgs),
    /// Score every economic sentence of a corpus against a lexicon.
    Score(ScoreArgs),
    /// Build the economic pessimism (EP) series from a corpus and a lexicon.
    EpSeries(EpSeriesArgs),
    /// Autoregressive OLS of a series on its lags and regressors, with Newey-West errors.
    Regress(RegressArgs),
    /// Logistic recession model: target at t+h on regressors at t.
    Forecast(ForecastArgs),
    /// Compare the AUC of two logistic models across forecast horizons (one-sided DeLong test).
    AucTest(AucTestArgs),
    /// EP on a base lexicon and the changes from fixing disagreements and adding reference-only terms.
    Decompose(DecomposeArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::BuildLexicon(_) => "build-lexicon",
            Command::Candidates(_) => "candidates",
            Command::Compare(_) => "compare",
            Command::Score(_) => "score",
            Command::EpSeries(_) => "ep-series",
            Command::Regress(_) => "regress",
            Command::Forecast(_) => "forecast",
            Command::AucTest(_) => "auc-test",
            Command::Decompose(_) => "decompose",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Categorical,
    Fine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Freq {
    Monthly,
    Daily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DenominatorArg {
    /// Tokens of the economic sentences.
    Filtered,
    /// Tokens of every sentence in the corpus.
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Key {
    Lemma,
    Form,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Table,
    Both,
}

#[derive(Debug, Args, Serialize)]
pub struct CorpusArgs {
    /// JSON-lines corpus (id, date, source, title, body, optional topic).
    #[arg(long)]
    pub corpus: PathBuf,
    /// Concept list, one unigram or bigram per line.
    #[arg(long)]
    pub concepts: PathBuf,
    /// Fail on the first malformed corpus line instead of skipping it.
    #[arg(long)]
    pub strict: bool,
    /// Drop documents whose topic equals NAME.
    #[arg(long, value_name = "NAME")]
    pub exclude_topic: Option<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct BuildLexiconArgs {
    /// Annotations CSV: term,annotator_id,score,phrase.
    #[arg(long)]
    pub annotations: PathBuf,
    /// Review flags CSV: term,flag_count.
    #[arg(long)]
    pub review_flags: Option<PathBuf>,
    /// Drop terms whose minority-sign share is at least this value.
    #[arg(long, default_value_t = econlex::annotate::DEFAULT_DISAGREEMENT_THRESHOLD)]
    pub disagreement_threshold: f64,
    /// Drop terms flagged at least this many times in review.
    #[arg(long, default_value_t = 1)]
    pub min_flags: u32,
    /// Name recorded for the lexicon.
    #[arg(long, default_value = "EL")]
    pub name: String,
    /// Output lexicon (.tsv or .csv).
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CandidatesArgs {
    /// Dependency-parsed sentences in CoNLL-U.
    #[arg(long)]
    pub conllu: PathBuf,
    #[arg(long)]
    pub concepts: PathBuf,
    /// Keep modifiers seen at least this many times.
    #[arg(long, default_value_t = econlex::depparse::DEFAULT_MIN_COUNT)]
    pub min_count: u64,
    /// TOML overriding the admitted relations (default: $ECONLEX_CONFIG_DIR/relations.toml if present).
    #[arg(long)]
    pub relations: Option<PathBuf>,
    /// Count modifiers by lemma or by surface form.
    #[arg(long, value_enum, default_value_t = Key::Lemma)]
    pub key: Key,
    /// Expert votes (lemma followed by one 0/1 per expert) for the shortlist.
    #[arg(long)]
    pub votes: Option<PathBuf>,
    /// Votes needed to enter the shortlist.
    #[arg(long, default_value_t = econlex::depparse::DEFAULT_QUORUM)]
    pub quorum: usize,
    /// Candidate table, lemma<TAB>count.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CompareArgs {
    /// First lexicon: term,score file (.tsv/.csv) or NEG.txt,POS.txt word lists.
    #[arg(long)]
    pub a: String,
    /// Second lexicon, same forms as --a.
    #[arg(long)]
    pub b: String,
    /// What to print on standard output.
    #[arg(long, value_enum, default_value_t = OutputFormat::Both)]
    pub format: OutputFormat,
    /// Also write the JSON report here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ScoreArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// term,score file (.tsv/.csv) or NEG.txt,POS.txt word lists.
    #[arg(long)]
    pub lexicon: String,
    #[arg(long, value_enum, default_value_t = Mode::Categorical)]
    pub mode: Mode,
    /// Per-sentence scores CSV.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct EpSeriesArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// term,score file (.tsv/.csv) or NEG.txt,POS.txt word lists.
    #[arg(long)]
    pub lexicon: String,
    #[arg(long, value_enum, default_value_t = Mode::Categorical)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Freq::Monthly)]
    pub freq: Freq,
    /// Word universe for the denominator.
    #[arg(long, value_enum, default_value_t = DenominatorArg::Filtered)]
    pub denominator: DenominatorArg,
    /// Standardize to zero mean and unit variance (applied before smoothing).
    #[arg(long)]
    pub standardize: bool,
    /// Trailing moving-average window in periods.
    #[arg(long, value_name = "K", default_value_t = 1)]
    pub smooth: usize,
    /// Series CSV; metadata goes to <stem>.meta.json beside it.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct SeriesArgs {
    /// Monthly series as NAME=PATH (CSV date,value). Repeatable.
    #[arg(long = "series", value_name = "NAME=PATH", value_parser = inputs::parse_named_path, required = true)]
    pub series: Vec<(String, PathBuf)>,
    /// Name of the dependent series.
    #[arg(long)]
    pub target: String,
    /// Regressors dated t, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub regressors: Vec<String>,
    /// Lags of the target included as regressors.
    #[arg(long, default_value_t = 0)]
    pub ar_lags: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct RegressArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Newey-West lag truncation: "auto" or a number.
    #[arg(long, default_value = "auto", value_parser = inputs::parse_bandwidth)]
    pub bandwidth: econlex::econ::Bandwidth,
    /// Fit JSON.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct ForecastArgs {
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Forecast horizon in months.
    #[arg(long, default_value_t = 0)]
    pub horizon: usize,
    /// Fit JSON.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct AucTestArgs {
    /// Monthly series as NAME=PATH (CSV date,value). Repeatable.
    #[arg(long = "series", value_name = "NAME=PATH", value_parser = inputs::parse_named_path, required = true)]
    pub series: Vec<(String, PathBuf)>,
    /// Binary target series.
    #[arg(long)]
    pub target: String,
    /// Regressors of model a, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub model_a: Vec<String>,
    /// Regressors of model b, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub model_b: Vec<String>,
    /// Horizons as a range "1..12" or a list "1,3,6".
    #[arg(long, default_value = "1..12", value_parser = inputs::parse_horizons)]
    pub horizons: Horizons,
    /// Use a stratified bootstrap with this many draws instead of DeLong.
    #[arg(long, value_name = "DRAWS")]
    pub bootstrap: Option<usize>,
    /// Seed for --bootstrap.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Results JSON.
    #[arg(long)]
    pub out: PathBuf,
}

/// Forecast horizons in months.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Horizons(pub Vec<usize>);

#[derive(Debug, Args, Serialize)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub corpus: CorpusArgs,
    /// Base lexicon.
    #[arg(long)]
    pub lexicon: String,
    /// Reference lexicon supplying corrected and additional terms.
    #[arg(long)]
    pub reference: String,
    #[arg(long, value_enum, default_value_t = Mode::Categorical)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Freq::Monthly)]
    pub freq: Freq,
    #[arg(long, value_enum, default_value_t = DenominatorArg::Filtered)]
    pub denominator: DenominatorArg,
    /// CSV with base, modified and delta columns.
    #[arg(long)]
    pub out: PathBuf,
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new().filter_level(level).format_timestamp(None).try_init();
}

/// Parse `argv` (including the program name), run the subcommand, return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
        }
    };
    init_logging(cli.verbose);
    let argv: Vec<String> = argv.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    match execute(&cli, &argv) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cli.jobs {
        pool = pool.num_threads(n as usize);
    }
    let pool = pool.build().map_err(|e| CliError::Runtime(format!("thread pool: {e}")))?;
    pool.install(|| commands::dispatch(cli, argv))
}
