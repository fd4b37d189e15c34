use std::collections::BTreeMap;

use chrono::NaiveDate;
use econlex::econ::{
    auc_compare, build_design, logit_mle, ols_newey_west, parse_series_csv, roc_auc, write_series_csv, Bandwidth,
    DesignMatrix, DesignSpec, EconError, LogitOptions, SeriesSet,
};
use econlex::sentiment::correlate;
use econlex::Frequency;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn months(n: usize) -> Vec<NaiveDate> {
    let start = NaiveDate::from_ymd_opt(1980, 1, 1).unwrap();
    (0..n).map(|i| Frequency::Monthly.shift(start, i as i64).unwrap()).collect()
}

fn series(values: &[f64]) -> BTreeMap<NaiveDate, f64> {
    months(values.len()).into_iter().zip(values.iter().copied()).collect()
}

fn gauss(rng: &mut ChaCha8Rng) -> f64 {
    // Box-Muller; enough for test data
    let u: f64 = rng.random::<f64>().max(1e-300);
    let v: f64 = rng.random();
    (-2.0 * u.ln()).sqrt() * (2.0 * std::f64::consts::PI * v).cos()
}

#[test]
fn ols_residuals_are_orthogonal_to_regressors() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let x: Vec<f64> = (0..200).map(|_| gauss(&mut rng)).collect();
    let y: Vec<f64> = x.iter().map(|v| 0.5 - 1.2 * v + gauss(&mut rng)).collect();
    let set: SeriesSet = [("y".to_string(), series(&y)), ("x".to_string(), series(&x))].into();
    let d = build_design(&set, &DesignSpec::new("y").ar_lags(2).regressors(["x"])).unwrap();
    let fit = ols_newey_west(&d, Bandwidth::Auto).unwrap();
    let beta = fit.estimates();
    for j in 0..d.n_cols() {
        let dot: f64 = d
            .rows
            .iter()
            .zip(&d.target)
            .map(|(r, t)| r[j] * (t - r.iter().zip(&beta).map(|(a, b)| a * b).sum::<f64>()))
            .sum();
        assert!(dot.abs() < 1e-9, "column {j}: {dot}");
    }
}

#[test]
fn slope_of_noisy_line_within_three_standard_errors() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let rows: Vec<Vec<f64>> = (0..300).map(|i| vec![1.0, i as f64 / 30.0]).collect();
    let y: Vec<f64> = rows.iter().map(|r| 2.0 * r[1] + gauss(&mut rng)).collect();
    let d = DesignMatrix::from_rows(vec!["const".into(), "x".into()], rows, "y", y).unwrap();
    let fit = ols_newey_west(&d, Bandwidth::Fixed(3)).unwrap();
    let c = fit.coefficient("x").unwrap();
    assert!((c.estimate - 2.0).abs() < 3.0 * c.std_error, "{c:?}");
    assert_eq!(fit.bandwidth, Some(3));
}

#[test]
fn coin_flip_target_gives_insignificant_slopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let rows: Vec<Vec<f64>> = (0..400).map(|_| vec![1.0, gauss(&mut rng), gauss(&mut rng)]).collect();
    let y: Vec<f64> = (0..400).map(|_| (rng.random::<f64>() < 0.5) as u8 as f64).collect();
    let d = DesignMatrix::from_rows(vec!["const".into(), "a".into(), "b".into()], rows, "y", y).unwrap();
    let fit = logit_mle(&d, LogitOptions::default()).unwrap();
    assert!(fit.converged);
    for name in ["a", "b"] {
        let c = fit.coefficient(name).unwrap();
        assert!(c.estimate.abs() < 3.0 * c.std_error, "{c:?}");
    }
}

#[test]
fn separating_model_beats_reversed_one() {
    let labels: Vec<bool> = (0..40).map(|i| i % 3 == 0).collect();
    let good: Vec<f64> = labels.iter().enumerate().map(|(i, &l)| if l { 10.0 + i as f64 } else { i as f64 / 10.0 }).collect();
    let bad: Vec<f64> = good.iter().map(|s| -s).collect();
    assert_eq!(roc_auc(&good, &labels).unwrap().auc, 1.0);
    assert_eq!(roc_auc(&bad, &labels).unwrap().auc, 0.0);
    let c = auc_compare(&good, &bad, &labels).unwrap();
    assert!(c.p_value > 0.999, "{c:?}");
    let r = auc_compare(&bad, &good, &labels).unwrap();
    assert!(r.p_value < 0.001, "{r:?}");
}

#[test]
fn independent_white_noise_is_nearly_uncorrelated() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a: Vec<f64> = (0..2000).map(|_| gauss(&mut rng)).collect();
    let b: Vec<f64> = (0..2000).map(|_| gauss(&mut rng)).collect();
    let r = correlate(&series(&a), &series(&b)).unwrap();
    assert!(r.abs() < 0.1, "{r}");
}

#[test]
fn design_row_count_follows_lags_and_horizon() {
    // 500 months, 6 AR lags and a 3-month lead leave 500 - 6 - 3 = 491 rows
    let y: Vec<f64> = (0..500).map(|i| (i % 7) as f64).collect();
    let x: Vec<f64> = (0..500).map(|i| (i % 5) as f64).collect();
    let set: SeriesSet = [("y".to_string(), series(&y)), ("x".to_string(), series(&x))].into();
    let d = build_design(&set, &DesignSpec::new("y").ar_lags(6).horizon(3).regressors(["x"])).unwrap();
    assert_eq!(d.n_obs(), 491);
    assert_eq!(d.column_names, ["const", "y_lag1", "y_lag2", "y_lag3", "y_lag4", "y_lag5", "y_lag6", "x"]);
    assert_eq!(d.target_name, "y_lead3");
    assert_eq!(d.periods[0], months(7)[6]);
    assert_eq!(d.target[0], y[9]);
}

#[test]
fn missing_series_is_reported() {
    let set: SeriesSet = [("y".to_string(), series(&[1.0, 2.0, 3.0]))].into();
    let err = build_design(&set, &DesignSpec::new("y").regressors(["ep"])).unwrap_err();
    assert_eq!(err, EconError::MissingSeries("ep".into()));
}

proptest! {
    #[test]
    fn series_csv_round_trips(values in prop::collection::vec(-1e6f64..1e6, 1..50)) {
        let s = series(&values);
        let text = write_series_csv(&s, Frequency::Monthly);
        prop_assert_eq!(parse_series_csv(text.as_bytes(), Frequency::Monthly).unwrap(), s);
    }

    #[test]
    fn ols_fit_is_exact_on_noiseless_lines(a in -5.0f64..5.0, b in -5.0f64..5.0, n in 5usize..60) {
        let rows: Vec<Vec<f64>> = (0..n).map(|i| vec![1.0, i as f64]).collect();
        let y: Vec<f64> = rows.iter().map(|r| a + b * r[1]).collect();
        let d = DesignMatrix::from_rows(vec!["const".into(), "x".into()], rows, "y", y).unwrap();
        let fit = ols_newey_west(&d, Bandwidth::Auto).unwrap();
        prop_assert!((fit.estimates()[0] - a).abs() < 1e-8);
        prop_assert!((fit.estimates()[1] - b).abs() < 1e-9);
    }
}
