//! Sentiment lexicons: loading, classification, pairwise comparison and the
//! two lexicon modifications used to attribute forecasting gains to either
//! sign disagreements or coverage differences.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: score out of range for {term:?}: {score}")]
    ScoreOutOfRange { line: usize, term: String, score: f64 },
    #[error("line {line}: duplicate term {term:?}")]
    DuplicateTerm { line: usize, term: String },
    #[error("line {line}: categorical lexicon requires scores in {{-1, 0, 1}}, got {score} for {term:?}")]
    NotCategorical { line: usize, term: String, score: f64 },
}

/// File layout of a lexicon: two delimiter-separated columns `term,score`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LexiconFormat {
    Tsv,
    Csv,
}

impl LexiconFormat {
    pub fn delimiter(self) -> char {
        match self {
            LexiconFormat::Tsv => '\t',
            LexiconFormat::Csv => ',',
        }
    }

    /// Guess from the file extension; anything that is not `.tsv` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("tsv") => LexiconFormat::Tsv,
            _ => LexiconFormat::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    Categorical,
    FineGrained,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentimentClass {
    Negative,
    Neutral,
    Positive,
}

impl SentimentClass {
    /// Exact comparison against zero; no tolerance band.
    pub fn of(score: f64) -> Self {
        if score < 0.0 {
            SentimentClass::Negative
        } else if score > 0.0 {
            SentimentClass::Positive
        } else {
            SentimentClass::Neutral
        }
    }

    pub fn is_opposite(self, other: SentimentClass) -> bool {
        matches!(
            (self, other),
            (SentimentClass::Negative, SentimentClass::Positive)
                | (SentimentClass::Positive, SentimentClass::Negative)
        )
    }
}

/// A named term → score map. Immutable once built; the modification
/// operations return new lexicons.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Lexicon {
    name: String,
    entries: BTreeMap<String, f64>,
    granularity: Granularity,
    source_note: String,
}

fn is_categorical_score(s: f64) -> bool {
    s == -1.0 || s == 0.0 || s == 1.0
}

/// Lowercase, trim and collapse internal whitespace. Returns an error message
/// if the term is empty or has more than one internal space.
fn normalize_term(raw: &str) -> Result<String, String> {
    let words: Vec<&str> = raw.split_whitespace().collect();
    match words.len() {
        0 => Err("empty term".to_string()),
        1 | 2 => Ok(words.join(" ").to_lowercase()),
        n => Err(format!("term {raw:?} has {n} words; at most two are supported")),
    }
}

impl Lexicon {
    /// Build a lexicon from (term, score) pairs, enforcing every invariant.
    /// Line numbers in errors are 1-based positions in the iterator.
    pub fn from_entries<I, S>(
        name: impl Into<String>,
        granularity: Granularity,
        entries: I,
    ) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, f64)>,
        S: AsRef<str>,
    {
        let mut map = BTreeMap::new();
        for (i, (term, score)) in entries.into_iter().enumerate() {
            insert_checked(&mut map, granularity, i + 1, term.as_ref(), score)?;
        }
        Ok(Lexicon {
            name: name.into(),
            entries: map,
            granularity,
            source_note: String::new(),
        })
    }

    /// Categorical lexicon from separate negative and positive word lists,
    /// coded -1 and +1. A word in both lists is a duplicate.
    pub fn from_word_lists<N, P, S, T>(
        name: impl Into<String>,
        negative: N,
        positive: P,
    ) -> Result<Self, LexiconError>
    where
        N: IntoIterator<Item = S>,
        P: IntoIterator<Item = T>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let neg = negative.into_iter().map(|w| (w.as_ref().to_string(), -1.0));
        let pos = positive.into_iter().map(|w| (w.as_ref().to_string(), 1.0));
        Lexicon::from_entries(name, Granularity::Categorical, neg.chain(pos))
    }

    pub fn with_source_note(mut self, note: impl Into<String>) -> Self {
        self.source_note = note.into();
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn granularity(&self) -> Granularity {
        self.granularity
    }

    pub fn source_note(&self) -> &str {
        &self.source_note
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, term: &str) -> Option<f64> {
        self.entries.get(term).copied()
    }

    pub fn contains(&self, term: &str) -> bool {
        self.entries.contains_key(term)
    }

    /// Entries in lexicographic term order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn entries(&self) -> &BTreeMap<String, f64> {
        &self.entries
    }

    /// Serialize in the on-disk `term,score` layout.
    pub fn to_delimited(&self, format: LexiconFormat) -> String {
        let d = format.delimiter();
        let mut out = format!("term{d}score\n");
        for (term, score) in self.iter() {
            out.push_str(&format!("{term}{d}{score}\n"));
        }
        out
    }

    /// Granularity implied by a set of scores when an operation may have
    /// mixed categorical and fine-grained inputs.
    fn infer_granularity(base: Granularity, entries: &BTreeMap<String, f64>) -> Granularity {
        if base == Granularity::Categorical && entries.values().all(|&s| is_categorical_score(s)) {
            Granularity::Categorical
        } else {
            Granularity::FineGrained
        }
    }
}

fn insert_checked(
    map: &mut BTreeMap<String, f64>,
    granularity: Granularity,
    line: usize,
    raw_term: &str,
    score: f64,
) -> Result<(), LexiconError> {
    let term = normalize_term(raw_term).map_err(|reason| LexiconError::MalformedRow { line, reason })?;
    if !score.is_finite() || !(-1.0..=1.0).contains(&score) {
        return Err(LexiconError::ScoreOutOfRange { line, term, score });
    }
    if granularity == Granularity::Categorical && !is_categorical_score(score) {
        return Err(LexiconError::NotCategorical { line, term, score });
    }
    if map.contains_key(&term) {
        return Err(LexiconError::DuplicateTerm { line, term });
    }
    // -0.0 is stored as 0.0 so that serialization is stable
    map.insert(term, if score == 0.0 { 0.0 } else { score });
    Ok(())
}

/// Parse a lexicon from text. A leading `term<delim>score` header is
/// optional; lines starting with `#` and blank lines are ignored.
pub fn parse_lexicon(
    name: &str,
    text: &str,
    format: LexiconFormat,
    granularity: Granularity,
) -> Result<Lexicon, LexiconError> {
    let delim = format.delimiter();
    let mut map = BTreeMap::new();
    let mut seen_data = false;
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(delim).collect();
        if fields.len() != 2 {
            return Err(LexiconError::MalformedRow {
                line: line_no,
                reason: format!("expected 2 columns, found {}", fields.len()),
            });
        }
        let (term, score) = (fields[0].trim(), fields[1].trim());
        if !seen_data && term.eq_ignore_ascii_case("term") && score.eq_ignore_ascii_case("score") {
            seen_data = true;
            continue;
        }
        seen_data = true;
        let score: f64 = score.parse().map_err(|_| LexiconError::MalformedRow {
            line: line_no,
            reason: format!("score {score:?} is not a number"),
        })?;
        insert_checked(&mut map, granularity, line_no, term, score)?;
    }
    Ok(Lexicon {
        name: name.to_string(),
        entries: map,
        granularity,
        source_note: String::new(),
    })
}

pub fn load_lexicon(
    path: impl AsRef<Path>,
    format: LexiconFormat,
    granularity: Granularity,
) -> Result<Lexicon, LexiconError> {
    let path = path.as_ref();
    let text = read_to_string(path)?;
    let name = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("lexicon")
        .to_string();
    Ok(parse_lexicon(&name, &text, format, granularity)?.with_source_note(path.display().to_string()))
}

/// One word per line, `#` comments. Used for category lists such as the
/// Loughran-McDonald negative and positive files.
pub fn parse_word_list(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Load a categorical lexicon from a negative and a positive word-list file.
pub fn load_word_lists(
    name: &str,
    negative: impl AsRef<Path>,
    positive: impl AsRef<Path>,
) -> Result<Lexicon, LexiconError> {
    let neg = parse_word_list(&read_to_string(negative.as_ref())?);
    let pos = parse_word_list(&read_to_string(positive.as_ref())?);
    Ok(Lexicon::from_word_lists(name, neg, pos)?.with_source_note(format!(
        "{} (-1), {} (+1)",
        negative.as_ref().display(),
        positive.as_ref().display()
    )))
}

fn read_to_string(path: &Path) -> Result<String, LexiconError> {
    fs::read_to_string(path).map_err(|source| LexiconError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryCounts {
    pub negative: usize,
    pub neutral: usize,
    pub positive: usize,
    pub total: usize,
}

impl CategoryCounts {
    fn add(&mut self, class: SentimentClass) {
        match class {
            SentimentClass::Negative => self.negative += 1,
            SentimentClass::Neutral => self.neutral += 1,
            SentimentClass::Positive => self.positive += 1,
        }
        self.total += 1;
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize) {
        (self.negative, self.neutral, self.positive, self.total)
    }
}

pub fn category_counts(lex: &Lexicon) -> CategoryCounts {
    let mut counts = CategoryCounts::default();
    for (_, score) in lex.iter() {
        counts.add(SentimentClass::of(score));
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedScore {
    pub term: String,
    pub score_a: f64,
    pub score_b: f64,
}

/// Word-level comparison of two lexicons.
///
/// `disagree` counts common terms whose classes differ (including a neutral
/// term against a signed one); `opposite_sign` is the stricter subset where
/// one lexicon says negative and the other positive.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub lexicon_a: String,
    pub lexicon_b: String,
    pub size_a: usize,
    pub size_b: usize,
    pub common_terms: usize,
    pub agree_by_class: CategoryCounts,
    pub disagree: usize,
    pub opposite_sign: usize,
    pub only_in_a: CategoryCounts,
    pub only_in_b: CategoryCounts,
    pub paired_scores: Vec<PairedScore>,
}

impl ComparisonReport {
    pub fn agreement(&self) -> usize {
        self.agree_by_class.total
    }

    /// Plain-text summary table.
    pub fn render_table(&self) -> String {
        let a = &self.lexicon_a;
        let b = &self.lexicon_b;
        let rows: Vec<(String, String)> = vec![
            (format!("|{a}|"), self.size_a.to_string()),
            (format!("|{b}|"), self.size_b.to_string()),
            ("common terms".into(), self.common_terms.to_string()),
            (
                "agree (neg/neu/pos)".into(),
                format!(
                    "{} ({}/{}/{})",
                    self.agree_by_class.total,
                    self.agree_by_class.negative,
                    self.agree_by_class.neutral,
                    self.agree_by_class.positive
                ),
            ),
            ("disagree".into(), self.disagree.to_string()),
            ("opposite sign".into(), self.opposite_sign.to_string()),
            (
                format!("only in {a} (neg/neu/pos)"),
                format!(
                    "{} ({}/{}/{})",
                    self.only_in_a.total, self.only_in_a.negative, self.only_in_a.neutral, self.only_in_a.positive
                ),
            ),
            (
                format!("only in {b} (neg/neu/pos)"),
                format!(
                    "{} ({}/{}/{})",
                    self.only_in_b.total, self.only_in_b.negative, self.only_in_b.neutral, self.only_in_b.positive
                ),
            ),
        ];
        let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

pub fn compare(a: &Lexicon, b: &Lexicon) -> ComparisonReport {
    let mut agree_by_class = CategoryCounts::default();
    let mut only_in_a = CategoryCounts::default();
    let mut only_in_b = CategoryCounts::default();
    let mut disagree = 0;
    let mut opposite_sign = 0;
    let mut paired_scores = Vec::new();

    for (term, sa) in a.iter() {
        match b.get(term) {
            Some(sb) => {
                let (ca, cb) = (SentimentClass::of(sa), SentimentClass::of(sb));
                if ca == cb {
                    agree_by_class.add(ca);
                } else {
                    disagree += 1;
                    if ca.is_opposite(cb) {
                        opposite_sign += 1;
                    }
                }
                paired_scores.push(PairedScore {
                    term: term.to_string(),
                    score_a: sa,
                    score_b: sb,
                });
            }
            None => only_in_a.add(SentimentClass::of(sa)),
        }
    }
    for (term, sb) in b.iter() {
        if !a.contains(term) {
            only_in_b.add(SentimentClass::of(sb));
        }
    }

    ComparisonReport {
        lexicon_a: a.name.clone(),
        lexicon_b: b.name.clone(),
        size_a: a.len(),
        size_b: b.len(),
        common_terms: paired_scores.len(),
        agree_by_class,
        disagree,
        opposite_sign,
        only_in_a,
        only_in_b,
        paired_scores,
    }
}

/// Terms shared with `reference` whose classes are strictly opposite take the
/// reference score. Neutral on either side is never "opposite".
pub fn modify_disagree(base: &Lexicon, reference: &Lexicon) -> Lexicon {
    let entries: BTreeMap<String, f64> = base
        .entries
        .iter()
        .map(|(term, &score)| {
            let new = match reference.get(term) {
                Some(r) if SentimentClass::of(score).is_opposite(SentimentClass::of(r)) => r,
                _ => score,
            };
            (term.clone(), new)
        })
        .collect();
    Lexicon {
        name: format!("{}+disagree({})", base.name, reference.name),
        granularity: Lexicon::infer_granularity(base.granularity, &entries),
        entries,
        source_note: base.source_note.clone(),
    }
}

/// Reference terms missing from `base`, or scored exactly zero there, are
/// added with the reference score. Non-zero base scores are kept.
pub fn modify_only_el(base: &Lexicon, reference: &Lexicon) -> Lexicon {
    let mut entries = base.entries.clone();
    for (term, r) in reference.iter() {
        match entries.get_mut(term) {
            Some(s) if *s == 0.0 => *s = r,
            Some(_) => {}
            None => {
                entries.insert(term.to_string(), r);
            }
        }
    }
    Lexicon {
        name: format!("{}+only({})", base.name, reference.name),
        granularity: Lexicon::infer_granularity(base.granularity, &entries),
        entries,
        source_note: base.source_note.clone(),
    }
}

pub fn to_categorical(lex: &Lexicon) -> Lexicon {
    let entries = lex
        .entries
        .iter()
        .map(|(term, &s)| {
            let c = match SentimentClass::of(s) {
                SentimentClass::Negative => -1.0,
                SentimentClass::Neutral => 0.0,
                SentimentClass::Positive => 1.0,
            };
            (term.clone(), c)
        })
        .collect();
    Lexicon {
        name: lex.name.clone(),
        entries,
        granularity: Granularity::Categorical,
        source_note: lex.source_note.clone(),
    }
}

impl fmt::Display for SentimentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SentimentClass::Negative => "negative",
            SentimentClass::Neutral => "neutral",
            SentimentClass::Positive => "positive",
        })
    }
}
