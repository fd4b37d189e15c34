//! Sentence scoring and the Economic Pessimism (EP) index.
//!
//! For each period t with token total N_t and lexicon scores S_i,
//!
//! ```text
//! EP_t = -(Σ_i S_i · f_{i,t}) / N_t
//! ```
//!
//! where f_{i,t} counts matches of term i in period t. Higher values mean a
//! more pessimistic tone.

use std::collections::{BTreeMap, HashMap};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::SentenceRecord;
use crate::lexicon::{to_categorical, Lexicon};
use crate::period::Frequency;

#[derive(Debug, Error, PartialEq)]
pub enum SentimentError {
    #[error("no sentence records to score")]
    EmptyInput,
    #[error("standardization needs at least 2 observed periods, found {0}")]
    TooFewObservations(usize),
    #[error("series is constant; standard deviation is zero")]
    ConstantSeries,
    #[error("smoothing window must be at least 1")]
    BadWindow,
    #[error("need at least 3 overlapping periods, found {0}")]
    InsufficientOverlap(usize),
    #[error("correlation undefined: a series has zero variance over the overlap")]
    ZeroVariance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScoreMode {
    #[default]
    Categorical,
    Fine,
}

/// Greedy left-to-right matcher; a two-word term beats the unigram at the
/// same position and consumes both tokens.
#[derive(Debug, Clone)]
pub struct LexiconMatcher {
    unigrams: HashMap<String, f64>,
    bigrams: HashMap<String, HashMap<String, f64>>,
}

impl LexiconMatcher {
    pub fn new(lex: &Lexicon) -> Self {
        let mut unigrams = HashMap::new();
        let mut bigrams: HashMap<String, HashMap<String, f64>> = HashMap::new();
        for (term, score) in lex.iter() {
            match term.split_once(' ') {
                Some((a, b)) => {
                    bigrams.entry(a.to_string()).or_default().insert(b.to_string(), score);
                }
                None => {
                    unigrams.insert(term.to_string(), score);
                }
            }
        }
        LexiconMatcher { unigrams, bigrams }
    }

    /// Call `hit` with the score of each match in token order.
    pub fn for_each_match(&self, tokens: &[String], mut hit: impl FnMut(f64)) {
        let mut i = 0;
        while i < tokens.len() {
            if let (Some(next), Some(seconds)) = (tokens.get(i + 1), self.bigrams.get(&tokens[i])) {
                if let Some(&s) = seconds.get(next) {
                    hit(s);
                    i += 2;
                    continue;
                }
            }
            if let Some(&s) = self.unigrams.get(&tokens[i]) {
                hit(s);
            }
            i += 1;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentenceScore {
    pub sentence_ref: String,
    pub pos_count: u32,
    pub neg_count: u32,
    pub count_score: i64,
    pub sum_score: f64,
}

pub fn score_tokens(tokens: &[String], matcher: &LexiconMatcher) -> (u32, u32, f64) {
    let (mut pos, mut neg, mut sum) = (0u32, 0u32, 0.0f64);
    matcher.for_each_match(tokens, |s| {
        if s > 0.0 {
            pos += 1;
        } else if s < 0.0 {
            neg += 1;
        }
        sum += s;
    });
    (pos, neg, sum)
}

pub fn score_sentence(record: &SentenceRecord, lex: &Lexicon) -> SentenceScore {
    score_with(record, &LexiconMatcher::new(lex))
}

pub fn score_with(record: &SentenceRecord, matcher: &LexiconMatcher) -> SentenceScore {
    let (pos, neg, sum) = score_tokens(&record.tokens, matcher);
    SentenceScore {
        sentence_ref: record.sentence_ref(),
        pos_count: pos,
        neg_count: neg,
        count_score: pos as i64 - neg as i64,
        sum_score: sum,
    }
}

/// Universe of words in the EP denominator.
#[derive(Debug, Clone, PartialEq, Default)]
pub enum Denominator {
    /// Tokens of the economic sentences being scored.
    #[default]
    Filtered,
    /// Externally supplied per-period totals (e.g. every sentence).
    Totals(BTreeMap<NaiveDate, u64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpSeries {
    pub lexicon_name: String,
    pub mode: ScoreMode,
    pub frequency: Frequency,
    /// Period start → value; `None` marks a missing period.
    pub values: BTreeMap<NaiveDate, Option<f64>>,
    pub standardized: bool,
    pub smoothing_window: usize,
}

impl EpSeries {
    pub fn new(lexicon_name: impl Into<String>, mode: ScoreMode, frequency: Frequency) -> Self {
        EpSeries {
            lexicon_name: lexicon_name.into(),
            mode,
            frequency,
            values: BTreeMap::new(),
            standardized: false,
            smoothing_window: 1,
        }
    }

    pub fn observed(&self) -> BTreeMap<NaiveDate, f64> {
        self.values.iter().filter_map(|(k, v)| v.map(|x| (*k, x))).collect()
    }

    pub fn get(&self, period: NaiveDate) -> Option<f64> {
        self.values.get(&period).copied().flatten()
    }

    /// Periods inside the covered range that are absent or missing.
    pub fn gaps(&self) -> Vec<NaiveDate> {
        let (Some(&first), Some(&last)) = (self.values.keys().next(), self.values.keys().next_back()) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut p = first;
        while p <= last {
            if self.get(p).is_none() {
                out.push(p);
            }
            match self.frequency.shift(p, 1) {
                Some(n) => p = n,
                None => break,
            }
        }
        out
    }

    /// `month,value` (or `date,value` for daily) with empty cells for
    /// missing periods. Values use the shortest round-trip representation.
    pub fn to_csv(&self) -> String {
        let mut out = format!("{},value\n", self.frequency.column_name());
        for (p, v) in &self.values {
            let cell = v.map(|x| format!("{x:?}")).unwrap_or_default();
            out.push_str(&format!("{},{}\n", self.frequency.format(*p), cell));
        }
        out
    }

    pub fn metadata(&self) -> serde_json::Value {
        serde_json::json!({
            "lexicon": self.lexicon_name,
            "mode": self.mode,
            "frequency": self.frequency,
            "standardized": self.standardized,
            "smoothing_window": self.smoothing_window,
            "periods": self.values.len(),
            "missing": self.gaps().iter().map(|p| self.frequency.format(*p)).collect::<Vec<_>>(),
        })
    }
}

/// Per-period (Σ S·f, N) accumulator; merging is a plain sum.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct PeriodSums {
    pub weighted: f64,
    pub tokens: u64,
}

pub fn period_sums(
    records: &[SentenceRecord],
    matcher: &LexiconMatcher,
    frequency: Frequency,
) -> BTreeMap<NaiveDate, PeriodSums> {
    let mut out: BTreeMap<NaiveDate, PeriodSums> = BTreeMap::new();
    for r in records {
        let (_, _, sum) = score_tokens(&r.tokens, matcher);
        let e = out.entry(frequency.bucket(r.date)).or_default();
        e.weighted += sum;
        e.tokens += r.tokens.len() as u64;
    }
    out
}

/// -w/n with a zero numerator giving +0.0, so output never shows `-0.0`.
fn negate_ratio(w: f64, n: u64) -> f64 {
    if w == 0.0 {
        0.0
    } else {
        -w / n as f64
    }
}

pub fn ep_series(
    records: &[SentenceRecord],
    lex: &Lexicon,
    mode: ScoreMode,
    frequency: Frequency,
    denominator: &Denominator,
) -> Result<EpSeries, SentimentError> {
    if records.is_empty() {
        return Err(SentimentError::EmptyInput);
    }
    let lex = match mode {
        ScoreMode::Categorical => to_categorical(lex),
        ScoreMode::Fine => lex.clone(),
    };
    let matcher = LexiconMatcher::new(&lex);
    let sums = period_sums(records, &matcher, frequency);

    let mut series = EpSeries::new(lex.name(), mode, frequency);
    match denominator {
        Denominator::Filtered => {
            for (p, s) in sums {
                let v = (s.tokens > 0).then(|| negate_ratio(s.weighted, s.tokens));
                series.values.insert(p, v);
            }
        }
        Denominator::Totals(totals) => {
            for (&p, &n) in totals {
                let w = sums.get(&p).map_or(0.0, |s| s.weighted);
                series.values.insert(p, (n > 0).then(|| negate_ratio(w, n)));
            }
            for p in sums.keys() {
                series.values.entry(*p).or_insert(None);
            }
        }
    }
    Ok(series)
}

/// Subtract the mean and divide by the sample standard deviation (n − 1)
/// over observed periods. Missing periods stay missing.
pub fn standardize(series: &EpSeries) -> Result<EpSeries, SentimentError> {
    let obs: Vec<f64> = series.values.values().filter_map(|v| *v).collect();
    if obs.len() < 2 {
        return Err(SentimentError::TooFewObservations(obs.len()));
    }
    let n = obs.len() as f64;
    let mean = obs.iter().sum::<f64>() / n;
    let var = obs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    let sd = var.sqrt();
    if !sd.is_finite() || sd <= 0.0 {
        return Err(SentimentError::ConstantSeries);
    }
    let mut out = series.clone();
    for v in out.values.values_mut() {
        *v = v.map(|x| (x - mean) / sd);
    }
    out.standardized = true;
    Ok(out)
}

/// Trailing calendar moving average over `window` periods. Early periods
/// average whatever prefix exists; missing values are skipped inside a window
/// and a missing period stays missing.
pub fn smooth(series: &EpSeries, window: usize) -> Result<EpSeries, SentimentError> {
    if window == 0 {
        return Err(SentimentError::BadWindow);
    }
    let mut out = series.clone();
    for (p, v) in out.values.iter_mut() {
        if v.is_none() {
            continue;
        }
        let mut sum = 0.0;
        let mut count = 0usize;
        for lag in 0..window {
            let Some(q) = series.frequency.shift(*p, -(lag as i64)) else {
                break;
            };
            if let Some(x) = series.get(q) {
                sum += x;
                count += 1;
            }
        }
        *v = Some(sum / count as f64);
    }
    out.smoothing_window = window;
    Ok(out)
}

/// Pearson correlation over the periods both series observe.
pub fn correlate(a: &BTreeMap<NaiveDate, f64>, b: &BTreeMap<NaiveDate, f64>) -> Result<f64, SentimentError> {
    let pairs: Vec<(f64, f64)> = a.iter().filter_map(|(k, &x)| b.get(k).map(|&y| (x, y))).collect();
    if pairs.len() < 3 {
        return Err(SentimentError::InsufficientOverlap(pairs.len()));
    }
    let n = pairs.len() as f64;
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in &pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx).powi(2);
        syy += (y - my).powi(2);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(SentimentError::ZeroVariance);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}
