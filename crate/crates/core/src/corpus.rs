//! Document ingestion, sentence segmentation, tokenization and selection of
//! sentences that mention an economic concept.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::io::BufRead;

use chrono::{NaiveDate, Utc};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::period::Frequency;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("line {line}: {reason}")]
    MalformedLine { line: usize, reason: String },
    #[error("read error at line {line}: {source}")]
    Io {
        line: usize,
        #[source]
        source: std::io::Error,
    },
    #[error("concept list line {line}: {reason}")]
    BadConcept { line: usize, reason: String },
    #[error("concept list is empty")]
    EmptyConceptList,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub date: NaiveDate,
    pub source: String,
    pub title: String,
    pub body: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
}

#[derive(Deserialize)]
struct RawDocument {
    id: String,
    date: String,
    source: String,
    title: String,
    body: String,
    #[serde(default)]
    topic: Option<String>,
}

fn earliest_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(1900, 1, 1).expect("valid date")
}

/// Parse one JSON-lines record. Dates must be `YYYY-MM-DD` and fall between
/// 1900-01-01 and today.
pub fn parse_document(line: &str) -> Result<Document, String> {
    let raw: RawDocument = serde_json::from_str(line).map_err(|e| format!("invalid JSON record: {e}"))?;
    if raw.id.trim().is_empty() {
        return Err("empty document id".into());
    }
    let date = NaiveDate::parse_from_str(raw.date.trim(), "%Y-%m-%d")
        .map_err(|_| format!("bad date {:?}", raw.date))?;
    let today = Utc::now().date_naive();
    if date < earliest_date() || date > today {
        return Err(format!("date {date} outside [1900-01-01, {today}]"));
    }
    Ok(Document {
        id: raw.id,
        date,
        source: raw.source,
        title: raw.title,
        body: raw.body,
        topic: raw.topic,
    })
}

#[derive(Debug, Clone, Default)]
pub struct IngestOptions {
    pub strict: bool,
    pub exclude_topic: Option<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct IngestStats {
    pub lines: usize,
    pub documents: usize,
    pub skipped: usize,
    pub excluded: usize,
}

/// Streaming JSON-lines reader. Bad lines are skipped with a warning, or end
/// the stream with an error when `strict` is set. Blank lines are ignored.
pub struct Ingest<R> {
    reader: R,
    options: IngestOptions,
    stats: IngestStats,
    seen_ids: HashSet<String>,
    buf: String,
    failed: bool,
}

impl<R: BufRead> Ingest<R> {
    pub fn new(reader: R, options: IngestOptions) -> Self {
        Ingest {
            reader,
            options,
            stats: IngestStats::default(),
            seen_ids: HashSet::new(),
            buf: String::new(),
            failed: false,
        }
    }

    pub fn stats(&self) -> IngestStats {
        self.stats
    }

    fn check(&mut self, line: &str) -> Result<Option<Document>, String> {
        let doc = parse_document(line)?;
        if !self.seen_ids.insert(doc.id.clone()) {
            return Err(format!("duplicate document id {:?}", doc.id));
        }
        if let (Some(excl), Some(topic)) = (&self.options.exclude_topic, &doc.topic) {
            if excl.eq_ignore_ascii_case(topic) {
                self.stats.excluded += 1;
                return Ok(None);
            }
        }
        Ok(Some(doc))
    }
}

impl<R: BufRead> Iterator for Ingest<R> {
    type Item = Result<Document, CorpusError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.failed {
            return None;
        }
        loop {
            self.buf.clear();
            let line_no = self.stats.lines + 1;
            match self.reader.read_line(&mut self.buf) {
                Ok(0) => return None,
                Ok(_) => {}
                Err(source) => {
                    self.failed = true;
                    return Some(Err(CorpusError::Io { line: line_no, source }));
                }
            }
            self.stats.lines += 1;
            let line = std::mem::take(&mut self.buf);
            if line.trim().is_empty() {
                continue;
            }
            match self.check(line.trim_end()) {
                Ok(Some(doc)) => {
                    self.stats.documents += 1;
                    return Some(Ok(doc));
                }
                Ok(None) => continue,
                Err(reason) if self.options.strict => {
                    self.failed = true;
                    return Some(Err(CorpusError::MalformedLine { line: line_no, reason }));
                }
                Err(reason) => {
                    log::warn!("skipping corpus line {line_no}: {reason}");
                    self.stats.skipped += 1;
                }
            }
        }
    }
}

pub fn ingest<R: BufRead>(reader: R, options: IngestOptions) -> Ingest<R> {
    Ingest::new(reader, options)
}

/// Words that end in a period without ending a sentence.
pub const ABBREVIATIONS: &[&str] = &[
    "Mr.", "Mrs.", "Dr.", "U.S.", "U.K.", "Inc.", "Corp.", "e.g.", "i.e.", "vs.", "Jan.", "Feb.", "Mar.",
    "Apr.", "Jun.", "Jul.", "Aug.", "Sep.", "Sept.", "Oct.", "Nov.", "Dec.",
];

fn ends_with_abbreviation(text: &str, dot_idx: usize) -> bool {
    let upto = &text[..=dot_idx];
    let start = upto.rfind(char::is_whitespace).map(|i| i + upto[i..].chars().next().unwrap().len_utf8()).unwrap_or(0);
    let word = upto[start..].trim_start_matches(|c: char| !c.is_alphanumeric());
    ABBREVIATIONS.contains(&word)
}

/// Rule-based sentence splitter: a break follows `.`, `?` or `!` when the
/// next characters are whitespace and then an uppercase letter, unless the
/// period closes a listed abbreviation.
pub fn segment(body: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    for (k, &(i, c)) in chars.iter().enumerate() {
        if !matches!(c, '.' | '?' | '!') {
            continue;
        }
        let mut j = k + 1;
        if j >= chars.len() || !chars[j].1.is_whitespace() {
            continue;
        }
        while j < chars.len() && chars[j].1.is_whitespace() {
            j += 1;
        }
        if j >= chars.len() || !chars[j].1.is_uppercase() {
            continue;
        }
        if c == '.' && ends_with_abbreviation(body, i) {
            continue;
        }
        let end = i + c.len_utf8();
        let sentence = body[start..end].trim();
        if !sentence.is_empty() {
            out.push(sentence.to_string());
        }
        start = end;
    }
    let tail = body[start..].trim();
    if !tail.is_empty() {
        out.push(tail.to_string());
    }
    out
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '.' | '\'' | '\u{2019}' | '&')
}

fn is_dotted_initials(s: &str) -> bool {
    // "u.s", "e.g": single letters separated by dots
    let parts: Vec<&str> = s.split('.').collect();
    parts.len() >= 2 && parts.iter().all(|p| p.chars().count() == 1 && p.chars().all(char::is_alphabetic))
}

/// Lowercased word tokens. A token is a run of alphanumerics joined by
/// `-`, `.`, `'` or `&`; joiners at the edges are dropped except the final
/// period of dotted initials (`u.s.`). Tokens without any alphanumeric
/// character are discarded.
pub fn tokenize(sentence: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut push = |run: &str| {
        let trimmed = run.trim_matches(is_joiner);
        if !trimmed.chars().any(char::is_alphanumeric) {
            return;
        }
        let mut tok = trimmed.to_lowercase();
        let trailing_dot = run[run.find(trimmed).unwrap_or(0) + trimmed.len()..].starts_with('.');
        if trailing_dot && is_dotted_initials(&tok) {
            tok.push('.');
        }
        tokens.push(tok);
    };
    let mut run_start: Option<usize> = None;
    for (i, c) in sentence.char_indices() {
        let keep = c.is_alphanumeric() || is_joiner(c);
        match (keep, run_start) {
            (true, None) => run_start = Some(i),
            (false, Some(s)) => {
                push(&sentence[s..i]);
                run_start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = run_start {
        push(&sentence[s..]);
    }
    tokens
}

/// Unigram and bigram economic concepts, lowercased.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConceptList {
    entries: BTreeSet<String>,
    unigrams: HashSet<String>,
    bigrams: HashMap<String, Vec<String>>,
}

impl ConceptList {
    /// One term per line; `#` starts a comment line. Terms longer than two
    /// words and duplicates are rejected.
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        let mut terms = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            terms.push((idx + 1, line));
        }
        Self::build(terms)
    }

    pub fn from_terms<I, S>(terms: I) -> Result<Self, CorpusError>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let owned: Vec<String> = terms.into_iter().map(|s| s.as_ref().to_string()).collect();
        Self::build(owned.iter().enumerate().map(|(i, s)| (i + 1, s.as_str())))
    }

    fn build<'a>(terms: impl IntoIterator<Item = (usize, &'a str)>) -> Result<Self, CorpusError> {
        let mut entries = BTreeSet::new();
        let mut unigrams = HashSet::new();
        let mut bigrams: HashMap<String, Vec<String>> = HashMap::new();
        for (line, raw) in terms {
            let words: Vec<String> = raw.split_whitespace().map(str::to_lowercase).collect();
            let term = words.join(" ");
            match words.len() {
                1 => {
                    unigrams.insert(term.clone());
                }
                2 => bigrams.entry(words[0].clone()).or_default().push(words[1].clone()),
                0 => continue,
                n => {
                    return Err(CorpusError::BadConcept {
                        line,
                        reason: format!("{raw:?} has {n} words; only unigrams and bigrams are supported"),
                    })
                }
            }
            if !entries.insert(term.clone()) {
                return Err(CorpusError::BadConcept {
                    line,
                    reason: format!("duplicate concept {term:?}"),
                });
            }
        }
        if entries.is_empty() {
            return Err(CorpusError::EmptyConceptList);
        }
        Ok(ConceptList {
            entries,
            unigrams,
            bigrams,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains(term)
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(String::as_str)
    }

    pub fn is_unigram(&self, word: &str) -> bool {
        self.unigrams.contains(word)
    }

    pub fn is_bigram(&self, first: &str, second: &str) -> bool {
        self.bigrams.get(first).is_some_and(|v| v.iter().any(|s| s == second))
    }

    /// Concepts occurring in a token sequence (bigrams as adjacent tokens).
    pub fn match_tokens(&self, tokens: &[String]) -> BTreeSet<String> {
        let mut found = BTreeSet::new();
        for (i, tok) in tokens.iter().enumerate() {
            if self.unigrams.contains(tok) {
                found.insert(tok.clone());
            }
            if let Some(next) = tokens.get(i + 1) {
                if self.is_bigram(tok, next) {
                    found.insert(format!("{tok} {next}"));
                }
            }
        }
        found
    }
}

/// A segmented but not yet filtered sentence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawSentence {
    pub doc_id: String,
    pub date: NaiveDate,
    pub index: usize,
    pub text: String,
}

impl Document {
    pub fn sentences(&self) -> Vec<RawSentence> {
        segment(&self.body)
            .into_iter()
            .enumerate()
            .map(|(index, text)| RawSentence {
                doc_id: self.id.clone(),
                date: self.date,
                index,
                text,
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceRecord {
    pub doc_id: String,
    pub date: NaiveDate,
    pub index: usize,
    pub tokens: Vec<String>,
    pub matched_concepts: BTreeSet<String>,
    pub raw_text: String,
}

impl SentenceRecord {
    pub fn sentence_ref(&self) -> String {
        format!("{}#{}", self.doc_id, self.index)
    }
}

fn record_if_economic(sentence: RawSentence, concepts: &ConceptList) -> Option<SentenceRecord> {
    let tokens = tokenize(&sentence.text);
    if tokens.is_empty() {
        return None;
    }
    let matched = concepts.match_tokens(&tokens);
    if matched.is_empty() {
        return None;
    }
    Some(SentenceRecord {
        doc_id: sentence.doc_id,
        date: sentence.date,
        index: sentence.index,
        tokens,
        matched_concepts: matched,
        raw_text: sentence.text,
    })
}

/// Keep sentences that mention at least one concept.
pub fn filter_economic<'a, I>(sentences: I, concepts: &'a ConceptList) -> impl Iterator<Item = SentenceRecord> + 'a
where
    I: IntoIterator<Item = RawSentence>,
    I::IntoIter: 'a,
{
    sentences.into_iter().filter_map(move |s| record_if_economic(s, concepts))
}

/// Re-apply the concept filter to existing records (recomputing matches).
pub fn refilter(records: &[SentenceRecord], concepts: &ConceptList) -> Vec<SentenceRecord> {
    records
        .iter()
        .filter_map(|r| {
            let matched = concepts.match_tokens(&r.tokens);
            (!matched.is_empty()).then(|| SentenceRecord {
                matched_concepts: matched,
                ..r.clone()
            })
        })
        .collect()
}

/// Segment, tokenize and filter a batch of documents on the current rayon
/// pool. Output order is document order then sentence order, whatever the
/// pool width.
pub fn extract_records(docs: &[Document], concepts: &ConceptList) -> Vec<SentenceRecord> {
    docs.par_iter()
        .map(|d| filter_economic(d.sentences(), concepts).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodCounts {
    pub sentences: u64,
    pub tokens: u64,
}

pub fn period_counts(records: &[SentenceRecord], freq: Frequency) -> BTreeMap<NaiveDate, PeriodCounts> {
    let mut out: BTreeMap<NaiveDate, PeriodCounts> = BTreeMap::new();
    for r in records {
        let c = out.entry(freq.bucket(r.date)).or_default();
        c.sentences += 1;
        c.tokens += r.tokens.len() as u64;
    }
    out
}

pub fn monthly_counts(records: &[SentenceRecord]) -> BTreeMap<NaiveDate, PeriodCounts> {
    period_counts(records, Frequency::Monthly)
}

/// Merge partial count maps; associative and commutative.
pub fn merge_counts(
    mut a: BTreeMap<NaiveDate, PeriodCounts>,
    b: &BTreeMap<NaiveDate, PeriodCounts>,
) -> BTreeMap<NaiveDate, PeriodCounts> {
    for (k, v) in b {
        let e = a.entry(*k).or_default();
        e.sentences += v.sentences;
        e.tokens += v.tokens;
    }
    a
}

/// Token totals over every sentence of every document, filtered or not.
pub fn all_token_totals(docs: &[Document], freq: Frequency) -> BTreeMap<NaiveDate, u64> {
    docs.par_iter()
        .map(|d| {
            let n: u64 = segment(&d.body).iter().map(|s| tokenize(s).len() as u64).sum();
            (freq.bucket(d.date), n)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(BTreeMap::new(), |mut acc, (k, n)| {
            *acc.entry(k).or_insert(0) += n;
            acc
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::io::Cursor;

    fn d(y: i32, m: u32, day: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, day).unwrap()
    }

    const GOOD: &str = r#"{"id":"a","date":"1990-01-05","source":"nyt","title":"t","body":"GDP fell."}
{"id":"b","date":"1990-01-20","source":"nyt","title":"t","body":"Markets rallied."}
{"id":"c","date":"1990-02-01","source":"wsj","title":"t","body":"Unemployment rose.","topic":"sports"}
"#;

    #[test]
    fn ingests_valid_lines() {
        let mut it = ingest(Cursor::new(GOOD), IngestOptions::default());
        let docs: Vec<_> = it.by_ref().collect::<Result<_, _>>().unwrap();
        assert_eq!(docs.len(), 3);
        assert_eq!(docs[0].id, "a");
        assert_eq!(it.stats().documents, 3);
    }

    #[test]
    fn empty_file_is_empty_stream() {
        let mut it = ingest(Cursor::new(""), IngestOptions::default());
        assert!(it.next().is_none());
        assert_eq!(it.stats().documents, 0);
    }

    #[test]
    fn strict_mode_fails_on_bad_date() {
        let text = format!("{GOOD}{{\"id\":\"d\",\"date\":\"1990-13-01\",\"source\":\"x\",\"title\":\"\",\"body\":\"\"}}\n");
        let strict = IngestOptions {
            strict: true,
            ..Default::default()
        };
        let res: Result<Vec<_>, _> = ingest(Cursor::new(text.as_str()), strict).collect();
        let err = res.unwrap_err();
        assert!(matches!(err, CorpusError::MalformedLine { line: 4, .. }), "{err}");

        let mut lenient = ingest(Cursor::new(text.as_str()), IngestOptions::default());
        let docs: Vec<_> = lenient.by_ref().collect::<Result<_, _>>().unwrap();
        assert_eq!(docs.len(), 3);
        assert_eq!(lenient.stats().skipped, 1);
    }

    #[test]
    fn rejects_future_and_ancient_dates_and_duplicates() {
        assert!(parse_document(r#"{"id":"x","date":"1899-12-31","source":"","title":"","body":""}"#).is_err());
        assert!(parse_document(r#"{"id":"x","date":"9999-01-01","source":"","title":"","body":""}"#).is_err());
        let text = "{\"id\":\"a\",\"date\":\"1990-01-05\",\"source\":\"\",\"title\":\"\",\"body\":\"\"}\n".repeat(2);
        let mut it = ingest(Cursor::new(text), IngestOptions::default());
        assert_eq!(it.by_ref().count(), 1);
        assert_eq!(it.stats().skipped, 1);
    }

    #[test]
    fn excludes_topic() {
        let opts = IngestOptions {
            exclude_topic: Some("Sports".into()),
            ..Default::default()
        };
        let mut it = ingest(Cursor::new(GOOD), opts);
        assert_eq!(it.by_ref().count(), 2);
        assert_eq!(it.stats().excluded, 1);
    }

    #[test]
    fn segments_simple_sentences() {
        assert_eq!(segment("GDP fell. Markets rallied."), vec!["GDP fell.", "Markets rallied."]);
        assert!(segment("").is_empty());
        assert!(segment("   ").is_empty());
        assert_eq!(segment("Why? Because! Yes."), vec!["Why?", "Because!", "Yes."]);
    }

    /// Hand-checked abbreviation cases: none of these should split.
    #[test]
    fn abbreviation_guard() {
        for s in [
            "Mr. Smith said GDP fell.",
            "Mrs. Jones runs Acme Inc. Board meetings are rare.",
            "Dr. Lee left the U.S. Treasury in Jan. Last year.",
            "Sales at Big Corp. Rose sharply.",
            "Compare apples vs. Oranges here.",
            "Prices rose in Sept. Analysts were surprised.",
        ] {
            let got = segment(s);
            assert_eq!(got.len(), 1, "{s:?} -> {got:?}");
        }
        // a lowercase continuation never splits, an unlisted abbreviation does
        assert_eq!(segment("It fell 3 p.c. over the year.").len(), 1);
        assert_eq!(segment("Prof. Smith spoke.").len(), 2);
    }

    #[test]
    fn segmentation_covers_all_text() {
        let body = "Output fell. Mr. Smith said so!  Then what? Nothing.";
        let joined: String = segment(body).concat();
        let strip = |s: &str| s.chars().filter(|c| !c.is_whitespace()).collect::<String>();
        assert_eq!(strip(&joined), strip(body));
    }

    #[test]
    fn tokenizer_examples() {
        assert_eq!(
            tokenize("The economy suffered a slowdown"),
            vec!["the", "economy", "suffered", "a", "slowdown"]
        );
        assert_eq!(tokenize("U.S.-based firms"), vec!["u.s.-based", "firms"]);
        assert!(tokenize("!!!").is_empty());
        assert_eq!(tokenize("in the U.S. economy."), vec!["in", "the", "u.s.", "economy"]);
        assert_eq!(tokenize("prices (rose), didn't fall -- 3.5%"), vec!["prices", "rose", "didn't", "fall", "3.5"]);
        assert_eq!(tokenize("well-being, e.g. S&P"), vec!["well-being", "e.g.", "s&p"]);
        assert_eq!(tokenize("Économie forte"), vec!["économie", "forte"]);
    }

    #[test]
    fn concept_list_parsing() {
        let c = ConceptList::parse("# concepts\nUnemployment\neconomic growth\n\n").unwrap();
        assert_eq!(c.len(), 2);
        assert!(c.is_unigram("unemployment"));
        assert!(c.is_bigram("economic", "growth"));
        assert!(matches!(
            ConceptList::parse("a b c\n"),
            Err(CorpusError::BadConcept { line: 1, .. })
        ));
        assert!(matches!(ConceptList::parse("gdp\nGDP\n"), Err(CorpusError::BadConcept { line: 2, .. })));
        assert!(matches!(ConceptList::parse("# only\n"), Err(CorpusError::EmptyConceptList)));
    }

    fn raw(text: &str) -> RawSentence {
        RawSentence {
            doc_id: "d".into(),
            date: d(1990, 1, 1),
            index: 0,
            text: text.into(),
        }
    }

    #[test]
    fn filter_examples() {
        let c = ConceptList::from_terms(["unemployment", "economic growth"]).unwrap();
        let out: Vec<_> = filter_economic(
            vec![raw("Unemployment rose sharply"), raw("The weather was pleasant"), raw("Economic growth slowed")],
            &c,
        )
        .collect();
        assert_eq!(out.len(), 2);
        assert_eq!(out[0].matched_concepts, BTreeSet::from(["unemployment".to_string()]));
        assert_eq!(out[1].matched_concepts, BTreeSet::from(["economic growth".to_string()]));
    }

    #[test]
    fn monthly_count_examples() {
        let c = ConceptList::from_terms(["gdp"]).unwrap();
        let mk = |date, text: &str| RawSentence {
            date,
            ..raw(text)
        };
        let recs: Vec<_> = filter_economic(
            vec![mk(d(1990, 1, 5), "GDP fell"), mk(d(1990, 1, 20), "GDP rose again"), mk(d(1990, 2, 3), "GDP")],
            &c,
        )
        .collect();
        let m = monthly_counts(&recs);
        assert_eq!(m.len(), 2);
        assert_eq!(m[&d(1990, 1, 1)], PeriodCounts { sentences: 2, tokens: 5 });
        assert_eq!(m[&d(1990, 2, 1)], PeriodCounts { sentences: 1, tokens: 1 });
        assert!(monthly_counts(&[]).is_empty());
    }

    #[test]
    fn all_token_totals_include_unfiltered_sentences() {
        let doc = Document {
            id: "a".into(),
            date: d(2000, 5, 9),
            source: String::new(),
            title: String::new(),
            body: "GDP fell. The weather was nice.".into(),
            topic: None,
        };
        let totals = all_token_totals(&[doc], Frequency::Monthly);
        assert_eq!(totals[&d(2000, 5, 1)], 6);
    }

    fn word() -> impl Strategy<Value = String> {
        prop_oneof![
            Just("gdp".to_string()),
            Just("growth".to_string()),
            Just("economic".to_string()),
            "[a-z]{1,6}",
        ]
    }

    proptest! {
        #[test]
        fn filtering_is_subset_and_idempotent(sents in proptest::collection::vec(proptest::collection::vec(word(), 1..8), 0..20)) {
            let c = ConceptList::from_terms(["gdp", "economic growth"]).unwrap();
            let input: Vec<_> = sents.iter().map(|ws| raw(&ws.join(" "))).collect();
            let out: Vec<_> = filter_economic(input.clone(), &c).collect();
            prop_assert!(out.len() <= input.len());
            for r in &out {
                prop_assert!(!r.matched_concepts.is_empty());
                prop_assert!(r.matched_concepts.iter().all(|m| c.contains(m)));
            }
            prop_assert_eq!(refilter(&out, &c), out.clone());
            let counts = monthly_counts(&out);
            prop_assert_eq!(counts.values().map(|c| c.sentences).sum::<u64>(), out.len() as u64);
        }

        #[test]
        fn tokenize_is_lowercase_and_nonempty(s in "\\PC{0,40}") {
            for t in tokenize(&s) {
                prop_assert!(t.chars().any(char::is_alphanumeric));
                prop_assert_eq!(t.to_lowercase(), t.clone());
            }
        }

        #[test]
        fn count_merge_is_order_independent(a in proptest::collection::vec((1u32..4, 1u64..5), 0..10), b in proptest::collection::vec((1u32..4, 1u64..5), 0..10)) {
            let to_map = |v: &[(u32, u64)]| {
                let mut m = BTreeMap::new();
                for &(mo, n) in v {
                    let e: &mut PeriodCounts = m.entry(d(2000, mo, 1)).or_default();
                    e.sentences += 1;
                    e.tokens += n;
                }
                m
            };
            let (ma, mb) = (to_map(&a), to_map(&b));
            prop_assert_eq!(merge_counts(ma.clone(), &mb), merge_counts(mb, &ma));
        }
    }
}
