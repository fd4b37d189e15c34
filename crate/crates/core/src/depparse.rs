//! CoNLL-U reading and modifier harvesting around economic-concept nouns.
//!
//! The extraction rule is declarative (see [`RelationConfig`]): a noun phrase
//! is a NOUN/PROPN token whose lemma is a concept, and its modifiers are
//!
//! * children of the head attached by one of `head_children`;
//! * the head's governor, when the head attaches to it via one of
//!   `governor_relations` and the governor's UPOS is in `governor_upos`;
//! * that governor's own children attached via `governor_children`
//!   (excluding the head itself).
//!
//! Bigram concepts ("economic growth") match a head lemma equal to the second
//! word with a `compound` or `amod` child equal to the first; that child is
//! part of the concept and is not reported as a modifier.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::io::BufRead;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::ConceptList;

#[derive(Debug, Error, PartialEq)]
pub enum ConlluError {
    #[error("line {line}: expected 10 tab-separated columns, found {found}")]
    ColumnCount { line: usize, found: usize },
    #[error("line {line}: bad token id {id:?}")]
    BadId { line: usize, id: String },
    #[error("line {line}: token id {found} out of sequence (expected {expected})")]
    OutOfSequence { line: usize, expected: usize, found: usize },
    #[error("line {line}: bad head {head:?}")]
    BadHead { line: usize, head: String },
    #[error("line {line}: head {head} out of range for sentence of length {len}")]
    HeadOutOfRange { line: usize, head: usize, len: usize },
    #[error("line {line}: cyclic head at token {index}")]
    CyclicHead { line: usize, index: usize },
    #[error("line {line}: sentence has {roots} roots")]
    RootCount { line: usize, roots: usize },
    #[error("read error at line {line}: {message}")]
    Io { line: usize, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DepToken {
    pub index: usize,
    pub form: String,
    pub lemma: String,
    pub upos: String,
    pub head: usize,
    pub deprel: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DepSentence {
    pub sent_id: Option<String>,
    pub date: Option<NaiveDate>,
    pub text: Option<String>,
    pub tokens: Vec<DepToken>,
}

impl DepSentence {
    /// Token by 1-based index.
    pub fn token(&self, index: usize) -> Option<&DepToken> {
        index.checked_sub(1).and_then(|i| self.tokens.get(i))
    }

    pub fn children(&self, head: usize) -> impl Iterator<Item = &DepToken> {
        self.tokens.iter().filter(move |t| t.head == head)
    }
}

/// Streaming reader over CoNLL-U text. Sentences are validated as they are
/// completed; errors carry the line of the offending token (or the last line
/// of the sentence for structural errors).
pub struct ConlluReader<R> {
    reader: R,
    line_no: usize,
    done: bool,
}

impl<R: BufRead> ConlluReader<R> {
    pub fn new(reader: R) -> Self {
        ConlluReader {
            reader,
            line_no: 0,
            done: false,
        }
    }

    fn read_sentence(&mut self) -> Result<Option<DepSentence>, ConlluError> {
        let mut sentence = DepSentence::default();
        let mut token_lines = Vec::new();
        let mut any = false;
        let mut buf = String::new();
        loop {
            buf.clear();
            let n = self.reader.read_line(&mut buf).map_err(|e| ConlluError::Io {
                line: self.line_no + 1,
                message: e.to_string(),
            })?;
            if n == 0 {
                break;
            }
            self.line_no += 1;
            let line = buf.trim_end_matches(['\n', '\r']);
            if line.trim().is_empty() {
                if any {
                    break;
                }
                continue;
            }
            any = true;
            if let Some(meta) = line.strip_prefix('#') {
                parse_metadata(meta, &mut sentence);
                continue;
            }
            if let Some(tok) = parse_token_line(line, self.line_no)? {
                if tok.index != sentence.tokens.len() + 1 {
                    return Err(ConlluError::OutOfSequence {
                        line: self.line_no,
                        expected: sentence.tokens.len() + 1,
                        found: tok.index,
                    });
                }
                sentence.tokens.push(tok);
                token_lines.push(self.line_no);
            }
        }
        if !any {
            return Ok(None);
        }
        validate(&sentence, &token_lines, self.line_no)?;
        Ok(Some(sentence))
    }
}

impl<R: BufRead> Iterator for ConlluReader<R> {
    type Item = Result<DepSentence, ConlluError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.read_sentence() {
            Ok(Some(s)) => Some(Ok(s)),
            Ok(None) => {
                self.done = true;
                None
            }
            Err(e) => {
                self.done = true;
                Some(Err(e))
            }
        }
    }
}

pub fn parse_conllu<R: BufRead>(reader: R) -> ConlluReader<R> {
    ConlluReader::new(reader)
}

pub fn parse_conllu_str(text: &str) -> Result<Vec<DepSentence>, ConlluError> {
    parse_conllu(text.as_bytes()).collect()
}

fn parse_metadata(meta: &str, sentence: &mut DepSentence) {
    let Some((key, value)) = meta.split_once('=') else {
        return;
    };
    let value = value.trim();
    match key.trim() {
        "sent_id" => sentence.sent_id = Some(value.to_string()),
        "text" => sentence.text = Some(value.to_string()),
        "date" => sentence.date = NaiveDate::parse_from_str(value, "%Y-%m-%d").ok(),
        _ => {}
    }
}

/// `None` for multi-word-token ranges (`3-4`) and empty nodes (`3.1`).
fn parse_token_line(line: &str, line_no: usize) -> Result<Option<DepToken>, ConlluError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != 10 {
        return Err(ConlluError::ColumnCount {
            line: line_no,
            found: cols.len(),
        });
    }
    let id = cols[0];
    if id.contains('-') || id.contains('.') {
        return Ok(None);
    }
    let index: usize = match id.parse() {
        Ok(i) if i >= 1 => i,
        _ => {
            return Err(ConlluError::BadId {
                line: line_no,
                id: id.to_string(),
            })
        }
    };
    let head: usize = cols[6].parse().map_err(|_| ConlluError::BadHead {
        line: line_no,
        head: cols[6].to_string(),
    })?;
    Ok(Some(DepToken {
        index,
        form: cols[1].to_string(),
        lemma: cols[2].to_string(),
        upos: cols[3].to_string(),
        head,
        deprel: cols[7].to_string(),
    }))
}

fn validate(sentence: &DepSentence, token_lines: &[usize], last_line: usize) -> Result<(), ConlluError> {
    let n = sentence.tokens.len();
    for (tok, &line) in sentence.tokens.iter().zip(token_lines) {
        if tok.head > n {
            return Err(ConlluError::HeadOutOfRange {
                line,
                head: tok.head,
                len: n,
            });
        }
        if tok.head == tok.index {
            return Err(ConlluError::CyclicHead { line, index: tok.index });
        }
    }
    let roots = sentence.tokens.iter().filter(|t| t.head == 0).count();
    if roots != 1 {
        return Err(ConlluError::RootCount { line: last_line, roots });
    }
    // every governor chain must reach the root within n steps
    for (tok, &line) in sentence.tokens.iter().zip(token_lines) {
        let mut cur = tok.head;
        let mut steps = 0;
        while cur != 0 {
            steps += 1;
            if steps > n {
                return Err(ConlluError::CyclicHead { line, index: tok.index });
            }
            cur = sentence.tokens[cur - 1].head;
        }
    }
    Ok(())
}

/// Which dependency relations count as modifier attachments.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RelationConfig {
    pub head_upos: Vec<String>,
    pub head_children: Vec<String>,
    pub governor_relations: Vec<String>,
    pub governor_upos: Vec<String>,
    pub governor_children: Vec<String>,
    pub compound_relations: Vec<String>,
}

impl Default for RelationConfig {
    fn default() -> Self {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect();
        RelationConfig {
            head_upos: v(&["NOUN", "PROPN"]),
            head_children: v(&["amod", "advmod", "nmod", "acl", "acl:relcl"]),
            governor_relations: v(&["nsubj", "nsubj:pass", "obj", "obl"]),
            governor_upos: v(&["VERB"]),
            governor_children: v(&["advmod", "xcomp", "obj"]),
            compound_relations: v(&["compound", "amod"]),
        }
    }
}

impl RelationConfig {
    /// TOML with any subset of the fields; missing ones take defaults.
    pub fn from_toml_str(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }
}

fn has(list: &[String], s: &str) -> bool {
    list.iter().any(|x| x == s)
}

/// Which token field a modifier is counted by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountKey {
    #[default]
    Lemma,
    Form,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modifier {
    pub index: usize,
    pub lemma: String,
    pub form: String,
    pub upos: String,
    pub deprel: String,
}

impl Modifier {
    pub fn key(&self, key: CountKey) -> String {
        match key {
            CountKey::Lemma => self.lemma.to_lowercase(),
            CountKey::Form => self.form.to_lowercase(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounPhrase {
    pub head_term: String,
    pub head_index: usize,
    pub modifiers: Vec<Modifier>,
    pub sentence_ref: Option<String>,
    pub date: Option<NaiveDate>,
}

impl fmt::Display for NounPhrase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mods: Vec<&str> = self.modifiers.iter().map(|m| m.lemma.as_str()).collect();
        write!(f, "{} <- [{}]", self.head_term, mods.join(", "))
    }
}

fn to_modifier(t: &DepToken, deprel: &str) -> Modifier {
    Modifier {
        index: t.index,
        lemma: t.lemma.clone(),
        form: t.form.clone(),
        upos: t.upos.clone(),
        deprel: deprel.to_string(),
    }
}

/// One noun phrase per concept-headed NOUN/PROPN token. Modifiers are listed
/// in sentence order without duplicates.
pub fn extract_noun_phrases(sentence: &DepSentence, concepts: &ConceptList, config: &RelationConfig) -> Vec<NounPhrase> {
    let mut out = Vec::new();
    for head in &sentence.tokens {
        if !has(&config.head_upos, &head.upos) {
            continue;
        }
        let lemma = head.lemma.to_lowercase();
        let compound_part = sentence.children(head.index).find(|c| {
            has(&config.compound_relations, &c.deprel) && concepts.is_bigram(&c.lemma.to_lowercase(), &lemma)
        });
        let (head_term, skip) = match compound_part {
            Some(c) => (format!("{} {}", c.lemma.to_lowercase(), lemma), Some(c.index)),
            None if concepts.is_unigram(&lemma) => (lemma, None),
            None => continue,
        };

        let mut mods: BTreeMap<usize, Modifier> = BTreeMap::new();
        for child in sentence.children(head.index) {
            if Some(child.index) != skip && has(&config.head_children, &child.deprel) {
                mods.entry(child.index).or_insert_with(|| to_modifier(child, &child.deprel));
            }
        }
        if head.head != 0 && has(&config.governor_relations, &head.deprel) {
            if let Some(gov) = sentence.token(head.head) {
                if has(&config.governor_upos, &gov.upos) {
                    let rel = format!("gov:{}", head.deprel);
                    mods.entry(gov.index).or_insert_with(|| to_modifier(gov, &rel));
                    for sib in sentence.children(gov.index) {
                        if sib.index != head.index && has(&config.governor_children, &sib.deprel) {
                            let rel = format!("gov>{}", sib.deprel);
                            mods.entry(sib.index).or_insert_with(|| to_modifier(sib, &rel));
                        }
                    }
                }
            }
        }
        out.push(NounPhrase {
            head_term,
            head_index: head.index,
            modifiers: mods.into_values().collect(),
            sentence_ref: sentence.sent_id.clone(),
            date: sentence.date,
        });
    }
    out
}

/// Multiset of modifier keys. Merging is order independent.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CandidateTable {
    counts: BTreeMap<String, u64>,
}

impl CandidateTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: impl Into<String>) {
        *self.counts.entry(key.into()).or_insert(0) += 1;
    }

    pub fn add_phrase(&mut self, phrase: &NounPhrase, key: CountKey) {
        for m in &phrase.modifiers {
            self.add(m.key(key));
        }
    }

    pub fn merge(mut self, other: &CandidateTable) -> Self {
        for (k, v) in &other.counts {
            *self.counts.entry(k.clone()).or_insert(0) += v;
        }
        self
    }

    pub fn retain_min_count(mut self, min_count: u64) -> Self {
        self.counts.retain(|_, c| *c >= min_count);
        self
    }

    pub fn get(&self, key: &str) -> Option<u64> {
        self.counts.get(key).copied()
    }

    pub fn contains(&self, key: &str) -> bool {
        self.counts.contains_key(key)
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn counts(&self) -> &BTreeMap<String, u64> {
        &self.counts
    }

    /// Descending count, then lexicographic.
    pub fn sorted(&self) -> Vec<(&str, u64)> {
        let mut v: Vec<(&str, u64)> = self.counts.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
        v
    }

    /// `lemma<TAB>count` lines in [`CandidateTable::sorted`] order.
    pub fn to_tsv(&self) -> String {
        self.sorted().into_iter().map(|(k, c)| format!("{k}\t{c}\n")).collect()
    }
}

pub const DEFAULT_MIN_COUNT: u64 = 65;
pub const DEFAULT_QUORUM: usize = 2;

pub fn harvest_candidates<'a, I>(phrases: I, min_count: u64, key: CountKey) -> CandidateTable
where
    I: IntoIterator<Item = &'a NounPhrase>,
{
    let mut table = CandidateTable::new();
    for p in phrases {
        table.add_phrase(p, key);
    }
    table.retain_min_count(min_count.max(1))
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ShortlistError {
    #[error("{0:?} has votes but is not in the candidate table")]
    UnknownLemma(String),
    #[error("{0:?} has an empty vote list")]
    EmptyVotes(String),
}

/// Lemmas with at least `quorum` positive votes, in lexicographic order.
pub fn shortlist(
    table: &CandidateTable,
    votes: &BTreeMap<String, Vec<bool>>,
    quorum: usize,
) -> Result<Vec<String>, ShortlistError> {
    let mut out = Vec::new();
    for (lemma, v) in votes {
        if !table.contains(lemma) {
            return Err(ShortlistError::UnknownLemma(lemma.clone()));
        }
        if v.is_empty() {
            return Err(ShortlistError::EmptyVotes(lemma.clone()));
        }
        if v.iter().filter(|&&b| b).count() >= quorum {
            out.push(lemma.clone());
        }
    }
    Ok(out)
}

/// Vote file: `lemma,vote,vote,...` with votes as 1/0, true/false or y/n.
pub fn parse_votes(text: &str) -> Result<BTreeMap<String, Vec<bool>>, String> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split([',', '\t']).map(str::trim);
        let lemma = fields.next().unwrap_or_default().to_lowercase();
        if lemma.is_empty() || (i == 0 && lemma == "lemma") {
            continue;
        }
        let mut v = Vec::new();
        for f in fields {
            v.push(match f.to_ascii_lowercase().as_str() {
                "1" | "true" | "t" | "y" | "yes" => true,
                "0" | "false" | "f" | "n" | "no" => false,
                other => return Err(format!("line {}: bad vote {other:?}", i + 1)),
            });
        }
        if out.insert(lemma.clone(), v).is_some() {
            return Err(format!("line {}: duplicate lemma {lemma:?}", i + 1));
        }
    }
    Ok(out)
}

/// Every modifier lemma occurs in the sentence; used by tests and fuzzing.
pub fn modifiers_are_grounded(sentence: &DepSentence, phrase: &NounPhrase) -> bool {
    let lemmas: HashSet<&str> = sentence.tokens.iter().map(|t| t.lemma.as_str()).collect();
    phrase.modifiers.iter().all(|m| lemmas.contains(m.lemma.as_str()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const EXAMPLE: &str = "# sent_id = ex1
# date = 1991-03-04
# text = The economy suffered a slowdown
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\teconomy\teconomy\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tsuffered\tsuffer\tVERB\t_\t_\t0\troot\t_\t_
4\ta\ta\tDET\t_\t_\t5\tdet\t_\t_
5\tslowdown\tslowdown\tNOUN\t_\t_\t3\tobj\t_\t_

1\tstrong\tstrong\tADJ\t_\t_\t2\tamod\t_\t_
2\tgrowth\tgrowth\tNOUN\t_\t_\t0\troot\t_\t_
";

    fn concepts(terms: &[&str]) -> ConceptList {
        ConceptList::from_terms(terms.iter().copied()).unwrap()
    }

    #[test]
    fn parses_two_sentences() {
        let s = parse_conllu_str(EXAMPLE).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].tokens.len(), 5);
        assert_eq!(s[1].tokens.len(), 2);
        assert_eq!(s[0].sent_id.as_deref(), Some("ex1"));
        assert_eq!(s[0].date, NaiveDate::from_ymd_opt(1991, 3, 4));
    }

    #[test]
    fn rejects_self_head() {
        let text = "1\ta\ta\tX\t_\t_\t1\tdep\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n";
        let err = parse_conllu_str(text).unwrap_err();
        assert_eq!(err, ConlluError::CyclicHead { line: 1, index: 1 });
        assert!(err.to_string().contains("cyclic head"));
    }

    #[test]
    fn rejects_longer_cycles_range_and_roots() {
        let cyc = "1\ta\ta\tX\t_\t_\t2\tdep\t_\t_\n2\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n3\tc\tc\tX\t_\t_\t0\troot\t_\t_\n";
        assert!(matches!(parse_conllu_str(cyc), Err(ConlluError::CyclicHead { .. })));
        let range = "1\ta\ta\tX\t_\t_\t5\tdep\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n";
        assert!(matches!(parse_conllu_str(range), Err(ConlluError::HeadOutOfRange { head: 5, .. })));
        let two = "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n2\tb\tb\tX\t_\t_\t0\troot\t_\t_\n";
        assert!(matches!(parse_conllu_str(two), Err(ConlluError::RootCount { roots: 2, .. })));
        let cols = "1\ta\ta\tX\t_\t_\t0\troot\n";
        assert_eq!(parse_conllu_str(cols).unwrap_err(), ConlluError::ColumnCount { line: 1, found: 8 });
        let seq = "1\ta\ta\tX\t_\t_\t0\troot\t_\t_\n3\tb\tb\tX\t_\t_\t1\tdep\t_\t_\n";
        assert!(matches!(parse_conllu_str(seq), Err(ConlluError::OutOfSequence { .. })));
    }

    /// Format rule: range lines carry `N-M` ids and are surface-only; the
    /// syntactic words N..M follow as regular lines.
    #[test]
    fn skips_multiword_ranges_and_empty_nodes() {
        let text = "1\tPrices\tprice\tNOUN\t_\t_\t2\tnsubj\t_\t_
2\tfell\tfall\tVERB\t_\t_\t0\troot\t_\t_
3-4\tdon't\t_\t_\t_\t_\t_\t_\t_\t_
3\tdo\tdo\tAUX\t_\t_\t2\taux\t_\t_
4\tn't\tnot\tPART\t_\t_\t2\tadvmod\t_\t_
4.1\tgone\tgo\tVERB\t_\t_\t_\t_\t_\t_
";
        let s = parse_conllu_str(text).unwrap();
        assert_eq!(s[0].tokens.len(), 4);
        assert_eq!(s[0].tokens[2].form, "do");
        assert_eq!(s[0].tokens[3].form, "n't");
    }

    #[test]
    fn worked_example_modifiers() {
        let s = parse_conllu_str(EXAMPLE).unwrap();
        let np = extract_noun_phrases(&s[0], &concepts(&["economy"]), &RelationConfig::default());
        assert_eq!(np.len(), 1);
        assert_eq!(np[0].head_term, "economy");
        let lemmas: Vec<(&str, &str)> = np[0].modifiers.iter().map(|m| (m.lemma.as_str(), m.upos.as_str())).collect();
        assert_eq!(lemmas, vec![("suffer", "VERB"), ("slowdown", "NOUN")]);
        assert_eq!(np[0].sentence_ref.as_deref(), Some("ex1"));
    }

    #[test]
    fn amod_modifier() {
        let s = parse_conllu_str(EXAMPLE).unwrap();
        let np = extract_noun_phrases(&s[1], &concepts(&["growth"]), &RelationConfig::default());
        assert_eq!(np.len(), 1);
        assert_eq!(np[0].modifiers.len(), 1);
        assert_eq!((np[0].modifiers[0].lemma.as_str(), np[0].modifiers[0].upos.as_str()), ("strong", "ADJ"));
    }

    #[test]
    fn no_concept_no_phrase() {
        let s = parse_conllu_str(EXAMPLE).unwrap();
        assert!(extract_noun_phrases(&s[0], &concepts(&["inflation"]), &RelationConfig::default()).is_empty());
    }

    #[test]
    fn bigram_concept_consumes_its_modifier() {
        let text = "1\tstrong\tstrong\tADJ\t_\t_\t3\tamod\t_\t_
2\teconomic\teconomic\tADJ\t_\t_\t3\tamod\t_\t_
3\tgrowth\tgrowth\tNOUN\t_\t_\t0\troot\t_\t_
";
        let s = parse_conllu_str(text).unwrap();
        let np = extract_noun_phrases(&s[0], &concepts(&["economic growth", "growth"]), &RelationConfig::default());
        assert_eq!(np.len(), 1);
        assert_eq!(np[0].head_term, "economic growth");
        let lemmas: Vec<&str> = np[0].modifiers.iter().map(|m| m.lemma.as_str()).collect();
        assert_eq!(lemmas, vec!["strong"]);
    }

    #[test]
    fn relation_config_from_toml() {
        let cfg = RelationConfig::from_toml_str("head_children = [\"amod\"]\n").unwrap();
        assert_eq!(cfg.head_children, vec!["amod"]);
        assert_eq!(cfg.governor_upos, vec!["VERB"]);
        assert!(RelationConfig::from_toml_str("bogus = 1").is_err());
    }

    fn phrase_with(mods: &[&str]) -> NounPhrase {
        NounPhrase {
            head_term: "gdp".into(),
            head_index: 1,
            modifiers: mods
                .iter()
                .enumerate()
                .map(|(i, m)| Modifier {
                    index: i + 2,
                    lemma: m.to_string(),
                    form: m.to_string(),
                    upos: "VERB".into(),
                    deprel: "gov:nsubj".into(),
                })
                .collect(),
            sentence_ref: None,
            date: None,
        }
    }

    #[test]
    fn harvest_thresholds() {
        let phrases: Vec<_> = (0..100).map(|_| phrase_with(&["fall"])).collect();
        let t = harvest_candidates(&phrases, 65, CountKey::Lemma);
        assert_eq!(t.get("fall"), Some(100));

        let phrases: Vec<_> = (0..64).map(|_| phrase_with(&["wobble"])).collect();
        assert!(harvest_candidates(&phrases, 65, CountKey::Lemma).is_empty());

        let phrases = vec![phrase_with(&["a", "b"]), phrase_with(&["c"])];
        let t = harvest_candidates(&phrases, 1, CountKey::Lemma);
        assert_eq!(t.len(), 3);
        assert_eq!(t.total(), 3);
    }

    #[test]
    fn candidate_tsv_ordering() {
        let mut t = CandidateTable::new();
        for k in ["rise", "fall", "fall", "dip", "rise", "fall"] {
            t.add(k);
        }
        assert_eq!(t.to_tsv(), "fall\t3\nrise\t2\ndip\t1\n");
    }

    #[test]
    fn shortlist_examples() {
        let mut t = CandidateTable::new();
        t.add("fall");
        t.add("above");
        let votes = parse_votes("lemma,a1,a2,a3,a4\nfall,1,1,0,0\nabove,1,0,0,0\n").unwrap();
        assert_eq!(shortlist(&t, &votes, 2).unwrap(), vec!["fall"]);
        assert_eq!(shortlist(&t, &votes, 0).unwrap(), vec!["above", "fall"]);
        let bad = parse_votes("wobble,1,1\n").unwrap();
        assert_eq!(shortlist(&t, &bad, 2), Err(ShortlistError::UnknownLemma("wobble".into())));
        let empty = parse_votes("fall\n").unwrap();
        assert_eq!(shortlist(&t, &empty, 2), Err(ShortlistError::EmptyVotes("fall".into())));
        assert!(parse_votes("fall,maybe\n").is_err());
    }

    proptest! {
        #[test]
        fn raising_min_count_never_adds(keys in proptest::collection::vec("[a-e]", 0..60), lo in 1u64..5, extra in 0u64..5) {
            let phrases: Vec<_> = keys.iter().map(|k| phrase_with(&[k.as_str()])).collect();
            let low = harvest_candidates(&phrases, lo, CountKey::Lemma);
            let high = harvest_candidates(&phrases, lo + extra, CountKey::Lemma);
            for k in high.counts().keys() {
                prop_assert!(low.contains(k));
            }
            let all = harvest_candidates(&phrases, 1, CountKey::Lemma);
            prop_assert_eq!(all.total(), keys.len() as u64);
        }

        #[test]
        fn merge_is_commutative(a in proptest::collection::vec("[a-d]", 0..20), b in proptest::collection::vec("[a-d]", 0..20)) {
            let mut ta = CandidateTable::new();
            a.iter().for_each(|k| ta.add(k.clone()));
            let mut tb = CandidateTable::new();
            b.iter().for_each(|k| tb.add(k.clone()));
            prop_assert_eq!(ta.clone().merge(&tb), tb.merge(&ta));
        }
    }
}
