//! Replays the fuzz seed corpora through the parsers on stable, so a seed
//! that panics is caught without a fuzzing toolchain.

use std::path::PathBuf;

use econlex::annotate::{aggregate, parse_annotations, parse_review_flags};
use econlex::corpus::{ingest, ConceptList, IngestOptions};
use econlex::depparse::{parse_conllu_str, parse_votes, RelationConfig};
use econlex::econ::parse_series_csv;
use econlex::lexicon::{parse_lexicon, parse_word_list, Granularity, Lexicon, LexiconFormat};
use econlex::Frequency;

fn seeds(target: &str) -> Vec<Vec<u8>> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut files: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    assert!(!files.is_empty(), "no seeds in {}", dir.display());
    files.iter().map(|p| std::fs::read(p).unwrap()).collect()
}

fn text(b: &[u8]) -> &str {
    std::str::from_utf8(b).unwrap()
}

#[test]
fn conllu_seeds_parse() {
    for s in seeds("conllu") {
        assert!(!parse_conllu_str(text(&s)).unwrap().is_empty());
    }
}

#[test]
fn lexicon_seeds_parse() {
    for s in seeds("lexicon") {
        let t = text(&s);
        let format = if t.contains('\t') { LexiconFormat::Tsv } else { LexiconFormat::Csv };
        parse_lexicon("seed", t, format, Granularity::FineGrained).unwrap();
    }
    for s in seeds("word_list") {
        let (neg, pos) = text(&s).split_once('\u{0}').unwrap_or((text(&s), ""));
        Lexicon::from_word_lists("seed", parse_word_list(neg), parse_word_list(pos)).unwrap();
    }
}

#[test]
fn concept_and_corpus_seeds() {
    for s in seeds("concept_list") {
        assert!(!ConceptList::parse(text(&s)).unwrap().is_empty());
    }
    for s in seeds("corpus_jsonl") {
        let _ = ingest(s.as_slice(), IngestOptions::default()).count();
    }
}

#[test]
fn csv_seeds() {
    for s in seeds("annotations") {
        for sheet in parse_annotations(s.as_slice()).unwrap() {
            aggregate(&sheet).unwrap();
        }
    }
    for s in seeds("review_flags") {
        parse_review_flags(s.as_slice()).unwrap();
    }
    for s in seeds("series_csv") {
        let freq = if text(&s).contains("-01-02") { Frequency::Daily } else { Frequency::Monthly };
        parse_series_csv(s.as_slice(), freq).unwrap();
    }
}

#[test]
fn config_and_vote_seeds() {
    for s in seeds("relations_toml") {
        RelationConfig::from_toml_str(text(&s)).unwrap();
    }
    for s in seeds("votes") {
        parse_votes(text(&s)).unwrap();
    }
}
