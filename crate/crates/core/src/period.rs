//! Calendar bucketing for monthly and daily series.
//!
//! A period is represented by its first day (`NaiveDate`), so monthly keys are
//! always the 1st of the month.

use chrono::{Datelike, Days, Months, NaiveDate};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Frequency {
    #[default]
    Monthly,
    Daily,
}

impl Frequency {
    pub fn bucket(self, date: NaiveDate) -> NaiveDate {
        match self {
            Frequency::Monthly => date.with_day(1).expect("day 1 exists in every month"),
            Frequency::Daily => date,
        }
    }

    /// Shift a period key by `n` periods (negative = back in time).
    pub fn shift(self, period: NaiveDate, n: i64) -> Option<NaiveDate> {
        match self {
            Frequency::Monthly => {
                let m = Months::new(n.unsigned_abs() as u32);
                if n >= 0 {
                    period.checked_add_months(m)
                } else {
                    period.checked_sub_months(m)
                }
            }
            Frequency::Daily => {
                let d = Days::new(n.unsigned_abs());
                if n >= 0 {
                    period.checked_add_days(d)
                } else {
                    period.checked_sub_days(d)
                }
            }
        }
    }

    pub fn format(self, period: NaiveDate) -> String {
        match self {
            Frequency::Monthly => period.format("%Y-%m").to_string(),
            Frequency::Daily => period.format("%Y-%m-%d").to_string(),
        }
    }

    /// Column header used for the period column in CSV output.
    pub fn column_name(self) -> &'static str {
        match self {
            Frequency::Monthly => "month",
            Frequency::Daily => "date",
        }
    }
}

/// Parse `YYYY-MM` or `YYYY-MM-DD`; a bare month maps to its first day.
pub fn parse_period(s: &str) -> Option<NaiveDate> {
    let s = s.trim();
    if let Ok(d) = NaiveDate::parse_from_str(s, "%Y-%m-%d") {
        return Some(d);
    }
    if s.len() == 7 {
        return NaiveDate::parse_from_str(&format!("{s}-01"), "%Y-%m-%d").ok();
    }
    None
}
