use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{normal_cdf, EconError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocPoint {
    /// Classify as positive when score ≥ threshold.
    pub threshold: f64,
    pub tpr: f64,
    pub fpr: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RocResult {
    pub auc: f64,
    /// DeLong variance of the AUC estimate.
    pub variance: f64,
    pub n_pos: usize,
    pub n_neg: usize,
    pub points: Vec<RocPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AucComparison {
    pub auc_a: f64,
    pub auc_b: f64,
    pub difference: f64,
    pub std_error: f64,
    pub z: f64,
    /// Φ((AUC_a − AUC_b)/sd): small values favour model b.
    pub p_value: f64,
    pub method: String,
    /// Set when the variance of the difference is zero.
    pub degenerate: bool,
}

fn check(scores: &[f64], labels: &[bool]) -> Result<(usize, usize), EconError> {
    if scores.len() != labels.len() {
        return Err(EconError::LengthMismatch(scores.len(), labels.len()));
    }
    if scores.iter().any(|s| !s.is_finite()) {
        return Err(EconError::NonFinite);
    }
    let n1 = labels.iter().filter(|&&l| l).count();
    let n0 = labels.len() - n1;
    if n1 == 0 || n0 == 0 {
        return Err(EconError::SingleClass);
    }
    Ok((n1, n0))
}

/// ROC curve by descending score with ties grouped into one step. The
/// trapezoid area is accumulated in integers, so it equals the
/// Mann-Whitney statistic (ties counting one half) exactly.
pub fn roc_auc(scores: &[f64], labels: &[bool]) -> Result<RocResult, EconError> {
    let (n1, n0) = check(scores, labels)?;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));

    let mut points = vec![RocPoint {
        threshold: f64::INFINITY,
        tpr: 0.0,
        fpr: 0.0,
    }];
    let (mut tp, mut fp) = (0u64, 0u64);
    let mut twice_area: u128 = 0;
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        let (tp0, fp0) = (tp, fp);
        while i < order.len() && scores[order[i]] == s {
            if labels[order[i]] {
                tp += 1;
            } else {
                fp += 1;
            }
            i += 1;
        }
        twice_area += (fp - fp0) as u128 * (tp + tp0) as u128;
        points.push(RocPoint {
            threshold: s,
            tpr: tp as f64 / n1 as f64,
            fpr: fp as f64 / n0 as f64,
        });
    }
    let auc = twice_area as f64 / (2 * n1 as u128 * n0 as u128) as f64;
    let (v10, v01) = placements(scores, labels);
    Ok(RocResult {
        auc,
        variance: sample_var(&v10) / n1 as f64 + sample_var(&v01) / n0 as f64,
        n_pos: n1,
        n_neg: n0,
        points,
    })
}

/// DeLong structural components: for each positive, the share of negatives
/// it outranks; for each negative, the share of positives outranking it.
fn placements(scores: &[f64], labels: &[bool]) -> (Vec<f64>, Vec<f64>) {
    let mut pos: Vec<f64> = scores.iter().zip(labels).filter(|(_, &l)| l).map(|(s, _)| *s).collect();
    let mut neg: Vec<f64> = scores.iter().zip(labels).filter(|(_, &l)| !l).map(|(s, _)| *s).collect();
    pos.sort_by(f64::total_cmp);
    neg.sort_by(f64::total_cmp);
    let (n1, n0) = (pos.len() as f64, neg.len() as f64);
    let v10 = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| l)
        .map(|(&x, _)| {
            let below = neg.partition_point(|&v| v < x);
            let upto = neg.partition_point(|&v| v <= x);
            (below as f64 + 0.5 * (upto - below) as f64) / n0
        })
        .collect();
    let v01 = scores
        .iter()
        .zip(labels)
        .filter(|(_, &l)| !l)
        .map(|(&y, _)| {
            let below = pos.partition_point(|&v| v < y);
            let upto = pos.partition_point(|&v| v <= y);
            ((pos.len() - upto) as f64 + 0.5 * (upto - below) as f64) / n1
        })
        .collect();
    (v10, v01)
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn sample_cov(a: &[f64], b: &[f64]) -> f64 {
    if a.len() < 2 {
        return 0.0;
    }
    let (ma, mb) = (mean(a), mean(b));
    a.iter().zip(b).map(|(x, y)| (x - ma) * (y - mb)).sum::<f64>() / (a.len() - 1) as f64
}

fn sample_var(a: &[f64]) -> f64 {
    sample_cov(a, a)
}

fn comparison(auc_a: f64, auc_b: f64, var: f64, method: &str) -> AucComparison {
    let difference = auc_a - auc_b;
    let std_error = var.max(0.0).sqrt();
    let degenerate = std_error == 0.0;
    let (z, p_value) = if !degenerate {
        let z = difference / std_error;
        (z, normal_cdf(z))
    } else if difference == 0.0 {
        (0.0, 0.5)
    } else {
        let z = difference.signum() * f64::INFINITY;
        (z, normal_cdf(z))
    };
    AucComparison {
        auc_a,
        auc_b,
        difference,
        std_error,
        z,
        p_value,
        method: method.to_string(),
        degenerate,
    }
}

/// Paired DeLong test of two score vectors against the same labels.
pub fn auc_compare(scores_a: &[f64], scores_b: &[f64], labels: &[bool]) -> Result<AucComparison, EconError> {
    if scores_a.len() != scores_b.len() {
        return Err(EconError::LengthMismatch(scores_a.len(), scores_b.len()));
    }
    let (n1, n0) = check(scores_a, labels)?;
    check(scores_b, labels)?;
    let (a10, a01) = placements(scores_a, labels);
    let (b10, b01) = placements(scores_b, labels);
    let auc_a = roc_auc(scores_a, labels)?.auc;
    let auc_b = roc_auc(scores_b, labels)?.auc;
    let s10 = sample_var(&a10) + sample_var(&b10) - 2.0 * sample_cov(&a10, &b10);
    let s01 = sample_var(&a01) + sample_var(&b01) - 2.0 * sample_cov(&a01, &b01);
    Ok(comparison(auc_a, auc_b, s10 / n1 as f64 + s01 / n0 as f64, "delong"))
}

/// Stratified bootstrap alternative: resample positives and negatives
/// separately, use the spread of the AUC difference as its standard error.
pub fn auc_compare_bootstrap(
    scores_a: &[f64],
    scores_b: &[f64],
    labels: &[bool],
    draws: usize,
    seed: u64,
) -> Result<AucComparison, EconError> {
    if scores_a.len() != scores_b.len() {
        return Err(EconError::LengthMismatch(scores_a.len(), scores_b.len()));
    }
    check(scores_a, labels)?;
    check(scores_b, labels)?;
    let pos: Vec<usize> = (0..labels.len()).filter(|&i| labels[i]).collect();
    let neg: Vec<usize> = (0..labels.len()).filter(|&i| !labels[i]).collect();
    let auc_a = roc_auc(scores_a, labels)?.auc;
    let auc_b = roc_auc(scores_b, labels)?.auc;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut diffs = Vec::with_capacity(draws);
    let (mut sa, mut sb, mut lab) = (Vec::new(), Vec::new(), Vec::new());
    for _ in 0..draws {
        sa.clear();
        sb.clear();
        lab.clear();
        for (group, flag) in [(&pos, true), (&neg, false)] {
            for _ in 0..group.len() {
                let i = group[rng.random_range(0..group.len())];
                sa.push(scores_a[i]);
                sb.push(scores_b[i]);
                lab.push(flag);
            }
        }
        diffs.push(roc_auc(&sa, &lab)?.auc - roc_auc(&sb, &lab)?.auc);
    }
    Ok(comparison(auc_a, auc_b, sample_var(&diffs), "bootstrap"))
}
