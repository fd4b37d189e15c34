//! Argument parsers and loaders shared by the subcommands.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use econlex::corpus::{self, ConceptList, Document, IngestOptions, IngestStats};
use econlex::econ::{parse_series_csv, Bandwidth, SeriesSet};
use econlex::lexicon::{parse_lexicon, parse_word_list, Granularity, Lexicon, LexiconFormat};
use econlex::Frequency;

use crate::output::Outputs;
use crate::{CliError, CorpusArgs, Horizons};

pub fn parse_named_path(s: &str) -> Result<(String, PathBuf), String> {
    let (name, path) = s.split_once('=').ok_or_else(|| format!("expected NAME=PATH, got {s:?}"))?;
    let name = name.trim();
    if name.is_empty() || path.is_empty() {
        return Err(format!("expected NAME=PATH, got {s:?}"));
    }
    Ok((name.to_string(), PathBuf::from(path)))
}

pub fn parse_bandwidth(s: &str) -> Result<Bandwidth, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Bandwidth::Auto);
    }
    s.parse::<usize>()
        .map(Bandwidth::Fixed)
        .map_err(|_| format!("bandwidth must be \"auto\" or a non-negative integer, got {s:?}"))
}

/// `a..b` (inclusive) or a comma-separated list.
pub fn parse_horizons(s: &str) -> Result<Horizons, String> {
    let bad = || format!("horizons must look like 1..12 or 1,3,6, got {s:?}");
    let out: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        (a..=b).collect()
    } else {
        s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_, _>>()?
    };
    if out.is_empty() {
        return Err(bad());
    }
    Ok(Horizons(out))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Runtime(format!("reading {}: {e}", path.display())))
}

fn stem(path: &Path) -> String {
    path.file_stem().and_then(|s| s.to_str()).unwrap_or("lexicon").to_string()
}

/// Paths named by a lexicon argument: one scored file or `NEG,POS` word lists.
pub fn lexicon_paths(spec: &str) -> Vec<PathBuf> {
    if !Path::new(spec).is_file() {
        if let Some((neg, pos)) = spec.split_once(',') {
            return vec![PathBuf::from(neg), PathBuf::from(pos)];
        }
    }
    vec![PathBuf::from(spec)]
}

pub fn register_lexicon(out: &mut Outputs, spec: &str) -> Result<(), CliError> {
    lexicon_paths(spec).iter().try_for_each(|p| out.input(p))
}

/// A scored file whose values are all -1, 0 or +1 loads as categorical.
pub fn load_lexicon(spec: &str) -> Result<Lexicon, CliError> {
    let paths = lexicon_paths(spec);
    let bad = |e: econlex::lexicon::LexiconError| CliError::Runtime(format!("lexicon {spec}: {e}"));
    if let [neg, pos] = paths.as_slice() {
        let name = stem(neg).trim_end_matches("_negative").trim_end_matches("_neg").to_string();
        let lex = Lexicon::from_word_lists(name, parse_word_list(&read(neg)?), parse_word_list(&read(pos)?))
            .map_err(bad)?;
        return Ok(lex.with_source_note(spec));
    }
    let path = &paths[0];
    let text = read(path)?;
    let fine = parse_lexicon(&stem(path), &text, LexiconFormat::from_path(path), Granularity::FineGrained).map_err(bad)?;
    let lex = if fine.iter().all(|(_, s)| s == -1.0 || s == 0.0 || s == 1.0) {
        Lexicon::from_entries(fine.name(), Granularity::Categorical, fine.iter()).map_err(bad)?
    } else {
        fine
    };
    Ok(lex.with_source_note(path.display().to_string()))
}

pub fn register_corpus(out: &mut Outputs, args: &CorpusArgs) -> Result<(), CliError> {
    out.input(&args.corpus)?;
    out.input(&args.concepts)
}

pub struct LoadedCorpus {
    pub docs: Vec<Document>,
    pub concepts: ConceptList,
    pub stats: IngestStats,
}

pub fn load_corpus(args: &CorpusArgs) -> Result<LoadedCorpus, CliError> {
    let concepts = ConceptList::parse(&read(&args.concepts)?)
        .map_err(|e| CliError::Runtime(format!("{}: {e}", args.concepts.display())))?;
    let file = File::open(&args.corpus).map_err(|e| CliError::Runtime(format!("{}: {e}", args.corpus.display())))?;
    let mut it = corpus::ingest(
        BufReader::new(file),
        IngestOptions {
            strict: args.strict,
            exclude_topic: args.exclude_topic.clone(),
        },
    );
    let docs = it
        .by_ref()
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Runtime(format!("{}: {e}", args.corpus.display())))?;
    let stats = it.stats();
    log::info!(
        "{} documents read, {} skipped, {} excluded",
        stats.documents,
        stats.skipped,
        stats.excluded
    );
    Ok(LoadedCorpus { docs, concepts, stats })
}

pub fn load_series(named: &[(String, PathBuf)]) -> Result<SeriesSet, CliError> {
    let mut set = SeriesSet::new();
    for (name, path) in named {
        let file = File::open(path).map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        let s = parse_series_csv(file, Frequency::Monthly)
            .map_err(|e| CliError::Runtime(format!("{}: {e}", path.display())))?;
        if set.insert(name.clone(), s).is_some() {
            return Err(CliError::Usage(format!("series {name:?} given twice")));
        }
    }
    Ok(set)
}
