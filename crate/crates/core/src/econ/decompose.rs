use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::Serialize;

use crate::corpus::SentenceRecord;
use crate::lexicon::{modify_disagree, modify_only_el, Lexicon};
use crate::period::Frequency;
use crate::sentiment::{ep_series, Denominator, EpSeries, ScoreMode, SentimentError};

/// EP on a base lexicon and on its two modifications against a reference,
/// with the per-period differences.
#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub base: EpSeries,
    pub disagree: EpSeries,
    pub only_el: EpSeries,
    pub delta_disagree: BTreeMap<NaiveDate, Option<f64>>,
    pub delta_only_el: BTreeMap<NaiveDate, Option<f64>>,
}

fn diff(a: &EpSeries, b: &EpSeries) -> BTreeMap<NaiveDate, Option<f64>> {
    a.values
        .keys()
        .chain(b.values.keys())
        .map(|&p| (p, a.get(p).zip(b.get(p)).map(|(x, y)| x - y)))
        .collect()
}

pub fn delta_ep_decomposition(
    records: &[SentenceRecord],
    base: &Lexicon,
    reference: &Lexicon,
    mode: ScoreMode,
    frequency: Frequency,
    denominator: &Denominator,
) -> Result<Decomposition, SentimentError> {
    let ep = |lex: &Lexicon| ep_series(records, lex, mode, frequency, denominator);
    let base_ep = ep(base)?;
    let disagree = ep(&modify_disagree(base, reference))?;
    let only_el = ep(&modify_only_el(base, reference))?;
    Ok(Decomposition {
        delta_disagree: diff(&disagree, &base_ep),
        delta_only_el: diff(&only_el, &base_ep),
        base: base_ep,
        disagree,
        only_el,
    })
}

impl Decomposition {
    /// `month,base,disagree,only_el,delta_disagree,delta_only_el`.
    pub fn to_csv(&self) -> String {
        let f = self.base.frequency;
        let cell = |v: Option<f64>| v.map(|x| format!("{x:?}")).unwrap_or_default();
        let mut out = format!("{},base,disagree,only_el,delta_disagree,delta_only_el\n", f.column_name());
        for (p, dd) in &self.delta_disagree {
            let d_only = self.delta_only_el.get(p).copied().flatten();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                f.format(*p),
                cell(self.base.get(*p)),
                cell(self.disagree.get(*p)),
                cell(self.only_el.get(*p)),
                cell(*dd),
                cell(d_only)
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::tokenize;
    use crate::lexicon::Granularity;
    use std::collections::BTreeSet;

    fn rec(date: (i32, u32, u32), text: &str) -> SentenceRecord {
        SentenceRecord {
            doc_id: "d".into(),
            date: NaiveDate::from_ymd_opt(date.0, date.1, date.2).unwrap(),
            index: 0,
            tokens: tokenize(text),
            matched_concepts: BTreeSet::new(),
            raw_text: text.into(),
        }
    }

    #[test]
    fn deltas_follow_the_modifications() {
        let records = vec![
            rec((2000, 1, 3), "growth is strong but debt is a burden"),
            rec((2000, 2, 3), "strong exports and volatile markets"),
        ];
        let base = Lexicon::from_entries("l", Granularity::Categorical, [("strong", 1.0), ("volatile", 1.0)]).unwrap();
        let el = Lexicon::from_entries("el", Granularity::FineGrained, [("strong", 1.0), ("volatile", -0.5), ("burden", -1.0)])
            .unwrap();
        let d = delta_ep_decomposition(&records, &base, &el, ScoreMode::Categorical, Frequency::Monthly, &Denominator::Filtered)
            .unwrap();
        let jan = NaiveDate::from_ymd_opt(2000, 1, 1).unwrap();
        let feb = NaiveDate::from_ymd_opt(2000, 2, 1).unwrap();
        // January has 8 tokens: base scores +1, only_el adds "burden" at -1
        assert_eq!(d.base.get(jan), Some(-1.0 / 8.0));
        assert_eq!(d.delta_disagree[&jan], Some(0.0));
        assert!((d.delta_only_el[&jan].unwrap() - 1.0 / 8.0).abs() < 1e-15);
        // February: "volatile" flips from +1 to -1 under the disagreement fix
        assert!((d.delta_disagree[&feb].unwrap() - 2.0 / 5.0).abs() < 1e-15);
        assert!(d.to_csv().starts_with("month,base,"));
    }
}
