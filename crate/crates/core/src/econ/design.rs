use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use super::EconError;
use crate::period::Frequency;

/// Named, period-indexed series.
pub type SeriesSet = BTreeMap<String, BTreeMap<NaiveDate, f64>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignSpec {
    pub target: String,
    /// Own lags of the target, dated t-1 .. t-p.
    pub ar_lags: usize,
    /// The dependent variable is the target at t+h.
    pub horizon: usize,
    /// Exogenous regressors, all dated t.
    pub regressors: Vec<String>,
    pub intercept: bool,
    pub frequency: Frequency,
}

impl DesignSpec {
    pub fn new(target: impl Into<String>) -> Self {
        DesignSpec {
            target: target.into(),
            ar_lags: 0,
            horizon: 0,
            regressors: Vec::new(),
            intercept: true,
            frequency: Frequency::Monthly,
        }
    }

    pub fn ar_lags(mut self, p: usize) -> Self {
        self.ar_lags = p;
        self
    }

    pub fn horizon(mut self, h: usize) -> Self {
        self.horizon = h;
        self
    }

    pub fn regressors<I, S>(mut self, names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.regressors = names.into_iter().map(Into::into).collect();
        self
    }
}

/// Row-major design with named columns; rows are in time order and labelled
/// by the period t at which the regressors are observed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DesignMatrix {
    pub column_names: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub target_name: String,
    pub target: Vec<f64>,
    pub periods: Vec<NaiveDate>,
}

impl DesignMatrix {
    pub fn from_rows(
        column_names: Vec<String>,
        rows: Vec<Vec<f64>>,
        target_name: impl Into<String>,
        target: Vec<f64>,
    ) -> Result<Self, EconError> {
        if rows.len() != target.len() {
            return Err(EconError::LengthMismatch(rows.len(), target.len()));
        }
        if let Some(r) = rows.iter().find(|r| r.len() != column_names.len()) {
            return Err(EconError::LengthMismatch(r.len(), column_names.len()));
        }
        if rows.iter().flatten().chain(&target).any(|v| !v.is_finite()) {
            return Err(EconError::NonFinite);
        }
        let base = NaiveDate::from_ymd_opt(1970, 1, 1).expect("valid date");
        let periods = (0..rows.len())
            .map(|i| Frequency::Monthly.shift(base, i as i64).expect("in range"))
            .collect();
        Ok(DesignMatrix {
            column_names,
            rows,
            target_name: target_name.into(),
            target,
            periods,
        })
    }

    pub fn n_obs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.column_names.len()
    }

    pub fn has_intercept(&self) -> bool {
        self.column_names.first().is_some_and(|c| c == "const")
    }
}

pub fn build_design(series: &SeriesSet, spec: &DesignSpec) -> Result<DesignMatrix, EconError> {
    let get = |name: &str| series.get(name).ok_or_else(|| EconError::MissingSeries(name.to_string()));
    let target = get(&spec.target)?;
    let regs = spec.regressors.iter().map(|r| get(r)).collect::<Result<Vec<_>, _>>()?;

    let mut column_names = Vec::new();
    if spec.intercept {
        column_names.push("const".to_string());
    }
    for j in 1..=spec.ar_lags {
        column_names.push(format!("{}_lag{j}", spec.target));
    }
    column_names.extend(spec.regressors.iter().cloned());
    let unique: BTreeSet<&String> = column_names.iter().collect();
    if unique.len() != column_names.len() {
        return Err(EconError::Parse {
            line: 0,
            reason: "duplicate column names in design".into(),
        });
    }

    let mut candidates: BTreeSet<NaiveDate> = target.keys().copied().collect();
    for r in &regs {
        candidates.extend(r.keys().copied());
    }

    let f = spec.frequency;
    let (mut rows, mut y, mut periods) = (Vec::new(), Vec::new(), Vec::new());
    'rows: for t in candidates {
        let Some(lead) = f.shift(t, spec.horizon as i64).and_then(|p| target.get(&p)) else {
            continue;
        };
        let mut row = Vec::with_capacity(column_names.len());
        if spec.intercept {
            row.push(1.0);
        }
        for j in 1..=spec.ar_lags {
            match f.shift(t, -(j as i64)).and_then(|p| target.get(&p)) {
                Some(v) => row.push(*v),
                None => continue 'rows,
            }
        }
        for r in &regs {
            match r.get(&t) {
                Some(v) => row.push(*v),
                None => continue 'rows,
            }
        }
        rows.push(row);
        y.push(*lead);
        periods.push(t);
    }
    if rows.is_empty() {
        return Err(EconError::EmptyDesign);
    }
    let target_name = if spec.horizon == 0 {
        spec.target.clone()
    } else {
        format!("{}_lead{}", spec.target, spec.horizon)
    };
    Ok(DesignMatrix {
        column_names,
        rows,
        target_name,
        target: y,
        periods,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monthly(n: usize, f: impl Fn(usize) -> f64) -> BTreeMap<NaiveDate, f64> {
        let start = NaiveDate::from_ymd_opt(1980, 1, 1).unwrap();
        (0..n).map(|i| (Frequency::Monthly.shift(start, i as i64).unwrap(), f(i))).collect()
    }

    #[test]
    fn lag_arithmetic() {
        let mut s = SeriesSet::new();
        s.insert("y".into(), monthly(100, |i| i as f64));
        s.insert("x".into(), monthly(100, |i| (i * 2) as f64));
        let d = build_design(&s, &DesignSpec::new("y").ar_lags(2).regressors(["x"])).unwrap();
        assert_eq!(d.n_obs(), 98);
        assert_eq!(d.column_names, vec!["const", "y_lag1", "y_lag2", "x"]);
        assert_eq!(d.rows[0], vec![1.0, 1.0, 0.0, 4.0]);
        assert_eq!(d.target[0], 2.0);

        let d = build_design(&s, &DesignSpec::new("y").regressors(["x"])).unwrap();
        assert_eq!(d.n_obs(), 100);
    }

    #[test]
    fn horizon_leads_target() {
        let mut s = SeriesSet::new();
        s.insert("rec".into(), monthly(492, |i| (i % 7 == 0) as u8 as f64));
        s.insert("ep".into(), monthly(492, |i| i as f64));
        let d = build_design(&s, &DesignSpec::new("rec").horizon(3).regressors(["ep"])).unwrap();
        assert_eq!(d.n_obs(), 489);
        assert_eq!(d.target_name, "rec_lead3");
        // row 0: regressor at month 0, target at month 3
        assert_eq!(d.rows[0][1], 0.0);
        assert_eq!(d.target[0], 0.0);
        assert_eq!(d.target[4], 1.0);
    }

    #[test]
    fn regressor_gaps_drop_rows() {
        let mut s = SeriesSet::new();
        s.insert("y".into(), monthly(10, |i| i as f64));
        let mut x = monthly(10, |i| i as f64);
        x.remove(&NaiveDate::from_ymd_opt(1980, 5, 1).unwrap());
        s.insert("x".into(), x);
        let d = build_design(&s, &DesignSpec::new("y").regressors(["x"])).unwrap();
        assert_eq!(d.n_obs(), 9);
    }

    #[test]
    fn errors() {
        let mut s = SeriesSet::new();
        s.insert("y".into(), monthly(3, |i| i as f64));
        assert_eq!(
            build_design(&s, &DesignSpec::new("y").regressors(["nope"])),
            Err(EconError::MissingSeries("nope".into()))
        );
        assert_eq!(build_design(&s, &DesignSpec::new("y").ar_lags(5)), Err(EconError::EmptyDesign));
    }
}
