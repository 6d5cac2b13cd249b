//! Multinomial naive Bayes over sparse document-term features.
//!
//! All arithmetic runs in log space; the Bayes denominator becomes a
//! log-sum-exp over classes. Fractional feature values (TF-IDF weights)
//! are accepted as-is.

use serde::{Deserialize, Serialize};

use crate::corpus::SentimentLabel;
use crate::error::{Error, Result};
use crate::features::{DocTermMatrix, SparseRow};

/// Fitted model: per-class log priors and a 3 x V log-likelihood table.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NaiveBayesModel {
    pub class_log_prior: [f64; 3],
    /// `feature_log_likelihood[c][t] = ln P(term t | class c)`.
    pub feature_log_likelihood: [Vec<f64>; 3],
    pub smoothing_alpha: f64,
    /// Hash of the vocabulary the features were indexed against.
    pub vocab_hash: String,
    pub n_features: usize,
}

/// Fit with Lidstone smoothing:
/// `P(t|c) = (sum_c x_t + alpha) / (sum_c sum_t x_t + alpha * V)`.
///
/// At least two classes must be present; a class absent from `y` gets a
/// zero prior (`-inf` log prior) and uniform smoothed likelihoods.
pub fn nb_fit(
    x: &DocTermMatrix,
    y: &[SentimentLabel],
    alpha: f64,
    vocab_hash: &str,
) -> Result<NaiveBayesModel> {
    if x.n_rows != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.n_rows,
            got: y.len(),
        });
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput(format!(
            "smoothing alpha must be positive, got {alpha}"
        )));
    }
    if x.n_rows == 0 {
        return Err(Error::InvalidInput("cannot fit on an empty corpus".into()));
    }
    let v = x.n_cols;

    let mut class_counts = [0usize; 3];
    let mut feature_sums = [vec![0.0f64; v], vec![0.0f64; v], vec![0.0f64; v]];
    let mut class_totals = [0.0f64; 3];
    for (row, &label) in x.rows.iter().zip(y) {
        let c = label.index();
        class_counts[c] += 1;
        for (t, value) in row.iter() {
            feature_sums[c][t] += value;
            class_totals[c] += value;
        }
    }

    let present = class_counts.iter().filter(|&&n| n > 0).count();
    if present < 2 {
        return Err(Error::InvalidInput(
            "naive Bayes needs at least two classes present".into(),
        ));
    }

    let n = y.len() as f64;
    let mut class_log_prior = [0.0f64; 3];
    let mut feature_log_likelihood = [vec![0.0; v], vec![0.0; v], vec![0.0; v]];
    for c in 0..3 {
        class_log_prior[c] = (class_counts[c] as f64 / n).ln();
        let denom = class_totals[c] + alpha * v as f64;
        for t in 0..v {
            feature_log_likelihood[c][t] = ((feature_sums[c][t] + alpha) / denom).ln();
        }
    }

    Ok(NaiveBayesModel {
        class_log_prior,
        feature_log_likelihood,
        smoothing_alpha: alpha,
        vocab_hash: vocab_hash.to_string(),
        n_features: v,
    })
}

/// Log posteriors over (-1, 0, 1), normalized with log-sum-exp.
/// An all-zero row falls back to the priors.
pub fn nb_predict_log_proba(model: &NaiveBayesModel, x: &SparseRow) -> [f64; 3] {
    let mut scores = model.class_log_prior;
    for (t, value) in x.iter() {
        debug_assert!(t < model.n_features, "feature index out of range");
        if t >= model.n_features {
            continue;
        }
        for c in 0..3 {
            scores[c] += value * model.feature_log_likelihood[c][t];
        }
    }
    let norm = log_sum_exp(&scores);
    for s in scores.iter_mut() {
        *s -= norm;
    }
    scores
}

/// Argmax posterior; ties break toward the smallest label value.
pub fn nb_predict(model: &NaiveBayesModel, x: &SparseRow) -> SentimentLabel {
    let log_proba = nb_predict_log_proba(model, x);
    argmax_label(&log_proba)
}

pub(crate) fn argmax_label(scores: &[f64; 3]) -> SentimentLabel {
    let mut best = 0usize;
    for c in 1..3 {
        if scores[c] > scores[best] {
            best = c;
        }
    }
    SentimentLabel::from_index(best)
}

fn log_sum_exp(values: &[f64; 3]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    max + values.iter().map(|v| (v - max).exp()).sum::<f64>().ln()
}
