//! Aggregation of annotator scores into term sentiment and removal of
//! ambiguous terms.

use std::collections::{BTreeMap, HashMap};
use std::io::Read;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{Granularity, Lexicon, LexiconError};

#[derive(Debug, Error)]
pub enum AnnotateError {
    #[error("term {0:?} has no scores")]
    EmptyScores(String),
    #[error("term {term:?}: score {score} is outside [-1, 1] or not on the 0.1 grid")]
    BadScore { term: String, score: f64 },
    #[error("disagreement threshold must be in (0, 0.5], got {0}")]
    BadThreshold(f64),
    #[error("min_flags must be at least 1")]
    BadMinFlags,
    #[error("record {record}: {reason}")]
    Malformed { record: usize, reason: String },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotationSheet {
    pub term: String,
    pub scores: Vec<f64>,
    pub context_phrase: String,
}

fn on_decimal_grid(s: f64) -> bool {
    (s * 10.0 - (s * 10.0).round()).abs() < 1e-9
}

impl AnnotationSheet {
    pub fn validate(&self) -> Result<(), AnnotateError> {
        if self.scores.is_empty() {
            return Err(AnnotateError::EmptyScores(self.term.clone()));
        }
        for &s in &self.scores {
            if !s.is_finite() || !(-1.0..=1.0).contains(&s) || !on_decimal_grid(s) {
                return Err(AnnotateError::BadScore {
                    term: self.term.clone(),
                    score: s,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignSplit {
    pub negative: usize,
    pub zero: usize,
    pub positive: usize,
}

impl SignSplit {
    pub fn total(&self) -> usize {
        self.negative + self.zero + self.positive
    }

    /// Share of annotators on the minority side of the sign; zeros count for
    /// neither side.
    pub fn minority_fraction(&self) -> f64 {
        let n = self.total();
        if n == 0 {
            return 0.0;
        }
        self.negative.min(self.positive) as f64 / n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregatedTerm {
    pub term: String,
    pub median_score: f64,
    pub sign_split: SignSplit,
    pub ambiguous_flags: u32,
}

/// Middle order statistic, or the mean of the two middle ones for even n.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let n = v.len();
    Some(if n % 2 == 1 {
        v[n / 2]
    } else {
        (v[n / 2 - 1] + v[n / 2]) / 2.0
    })
}

pub fn aggregate(sheet: &AnnotationSheet) -> Result<AggregatedTerm, AnnotateError> {
    sheet.validate()?;
    let mut split = SignSplit::default();
    for &s in &sheet.scores {
        if s < 0.0 {
            split.negative += 1;
        } else if s > 0.0 {
            split.positive += 1;
        } else {
            split.zero += 1;
        }
    }
    let m = median(&sheet.scores).expect("validated non-empty");
    Ok(AggregatedTerm {
        term: sheet.term.clone(),
        // two one-decimal values average onto a 0.05 grid
        median_score: (m * 20.0).round() / 20.0,
        sign_split: split,
        ambiguous_flags: 0,
    })
}

pub const DEFAULT_DISAGREEMENT_THRESHOLD: f64 = 0.3;

/// Terms whose minority-sign fraction reaches `threshold`.
pub fn flag_disagreement(terms: &[AggregatedTerm], threshold: f64) -> Result<Vec<String>, AnnotateError> {
    if !(threshold > 0.0 && threshold <= 0.5) {
        return Err(AnnotateError::BadThreshold(threshold));
    }
    Ok(terms
        .iter()
        .filter(|t| t.sign_split.minority_fraction() >= threshold - 1e-12)
        .map(|t| t.term.clone())
        .collect())
}

/// Drop every term flagged at least `min_flags` times during review and
/// return the rest as a fine-grained lexicon of median scores.
pub fn disambiguate(
    name: &str,
    terms: &[AggregatedTerm],
    review_flags: &HashMap<String, u32>,
    min_flags: u32,
) -> Result<Lexicon, AnnotateError> {
    if min_flags < 1 {
        return Err(AnnotateError::BadMinFlags);
    }
    let kept: Vec<(&str, f64)> = terms
        .iter()
        .filter(|t| review_flags.get(&t.term).copied().unwrap_or(0).max(t.ambiguous_flags) < min_flags)
        .map(|t| (t.term.as_str(), t.median_score))
        .collect();
    if kept.is_empty() && !terms.is_empty() {
        log::warn!("disambiguation removed all {} terms; lexicon is empty", terms.len());
    }
    Ok(Lexicon::from_entries(name, Granularity::FineGrained, kept)?)
}

#[derive(Debug, Deserialize)]
struct AnnotationRow {
    term: String,
    annotator_id: String,
    score: f64,
    #[serde(default)]
    phrase: String,
}

/// Read `term,annotator_id,score,phrase` rows (with header) into one sheet
/// per term, in first-appearance order. A repeated (term, annotator) pair is
/// an error.
pub fn parse_annotations<R: Read>(reader: R) -> Result<Vec<AnnotationSheet>, AnnotateError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut order: Vec<String> = Vec::new();
    let mut sheets: HashMap<String, (AnnotationSheet, Vec<String>)> = HashMap::new();
    for (i, row) in rdr.deserialize::<AnnotationRow>().enumerate() {
        let row = row?;
        let term = row.term.to_lowercase();
        if term.is_empty() {
            return Err(AnnotateError::Malformed {
                record: i + 1,
                reason: "empty term".into(),
            });
        }
        let (sheet, annotators) = sheets.entry(term.clone()).or_insert_with(|| {
            order.push(term.clone());
            (
                AnnotationSheet {
                    term: term.clone(),
                    scores: Vec::new(),
                    context_phrase: String::new(),
                },
                Vec::new(),
            )
        });
        if annotators.contains(&row.annotator_id) {
            return Err(AnnotateError::Malformed {
                record: i + 1,
                reason: format!("annotator {:?} scored {term:?} twice", row.annotator_id),
            });
        }
        annotators.push(row.annotator_id);
        sheet.scores.push(row.score);
        if sheet.context_phrase.is_empty() {
            sheet.context_phrase = row.phrase;
        }
    }
    Ok(order.into_iter().map(|t| sheets.remove(&t).expect("present").0).collect())
}

#[derive(Debug, Deserialize)]
struct FlagRow {
    term: String,
    flag_count: u32,
}

/// Read `term,flag_count` rows (with header).
pub fn parse_review_flags<R: Read>(reader: R) -> Result<HashMap<String, u32>, AnnotateError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(reader);
    let mut out = HashMap::new();
    for (i, row) in rdr.deserialize::<FlagRow>().enumerate() {
        let row = row?;
        if out.insert(row.term.to_lowercase(), row.flag_count).is_some() {
            return Err(AnnotateError::Malformed {
                record: i + 1,
                reason: format!("duplicate term {:?}", row.term),
            });
        }
    }
    Ok(out)
}

/// Aggregated terms keyed by term, for reporting.
pub fn by_term(terms: &[AggregatedTerm]) -> BTreeMap<&str, &AggregatedTerm> {
    terms.iter().map(|t| (t.term.as_str(), t)).collect()
}
