use std::collections::BTreeMap;
use std::io::Read;

use chrono::NaiveDate;

use super::EconError;
use crate::period::{parse_period, Frequency};

/// Read a two-column `date,value` CSV (header required, column names free).
/// Dates are `YYYY-MM` or `YYYY-MM-DD` and are bucketed by `frequency`; an
/// empty value marks a missing observation and is skipped. Two rows in the
/// same period are an error.
pub fn parse_series_csv<R: Read>(reader: R, frequency: Frequency) -> Result<BTreeMap<NaiveDate, f64>, EconError> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .flexible(false)
        .from_reader(reader);
    let mut out = BTreeMap::new();
    for (i, rec) in rdr.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| EconError::Parse {
            line,
            reason: e.to_string(),
        })?;
        if rec.len() != 2 {
            return Err(EconError::Parse {
                line,
                reason: format!("expected 2 columns, found {}", rec.len()),
            });
        }
        let period = parse_period(&rec[0]).ok_or_else(|| EconError::Parse {
            line,
            reason: format!("bad date {:?}", &rec[0]),
        })?;
        if rec[1].is_empty() {
            continue;
        }
        let value: f64 = rec[1].parse().map_err(|_| EconError::Parse {
            line,
            reason: format!("bad value {:?}", &rec[1]),
        })?;
        if !value.is_finite() {
            return Err(EconError::Parse {
                line,
                reason: "non-finite value".into(),
            });
        }
        if out.insert(frequency.bucket(period), value).is_some() {
            return Err(EconError::Parse {
                line,
                reason: format!("duplicate period {}", frequency.format(period)),
            });
        }
    }
    Ok(out)
}

pub fn write_series_csv(series: &BTreeMap<NaiveDate, f64>, frequency: Frequency) -> String {
    let mut out = format!("{},value\n", frequency.column_name());
    for (p, v) in series {
        out.push_str(&format!("{},{v:?}\n", frequency.format(*p)));
    }
    out
}
