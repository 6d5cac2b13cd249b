//! Confusion matrix and classification metrics with macro and weighted
//! averaging.

use serde::{Deserialize, Serialize};

use crate::corpus::SentimentLabel;
use crate::error::{Error, Result};

/// 3x3 counts, rows = gold label, columns = predicted label, both ordered
/// (-1, 0, 1).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub counts: [[u64; 3]; 3],
}

impl ConfusionMatrix {
    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    /// Gold count for a class.
    pub fn support(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    /// Cell-wise addition, for shard-and-merge evaluation.
    pub fn merge(&mut self, other: &ConfusionMatrix) {
        for g in 0..3 {
            for p in 0..3 {
                self.counts[g][p] += other.counts[g][p];
            }
        }
    }
}

/// Tally gold/predicted label pairs.
pub fn confusion_matrix(
    gold: &[SentimentLabel],
    pred: &[SentimentLabel],
) -> Result<ConfusionMatrix> {
    if gold.len() != pred.len() {
        return Err(Error::DimensionMismatch {
            expected: gold.len(),
            got: pred.len(),
        });
    }
    if gold.is_empty() {
        return Err(Error::InvalidInput(
            "cannot tally an empty evaluation set".into(),
        ));
    }
    let mut cm = ConfusionMatrix::default();
    for (g, p) in gold.iter().zip(pred) {
        cm.counts[g.index()][p.index()] += 1;
    }
    Ok(cm)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassMetrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: u64,
}

/// Accuracy plus per-class and aggregated precision/recall/F1.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricsReport {
    pub accuracy: f64,
    /// Indexed in label order (-1, 0, 1).
    pub per_class: [ClassMetrics; 3],
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
    pub weighted_precision: f64,
    pub weighted_recall: f64,
    pub weighted_f1: f64,
    /// Labels whose precision or recall had a zero denominator and were
    /// reported as 0.
    pub zero_division_labels: Vec<i8>,
}

/// Derive the report from a confusion matrix. Zero-denominator precision
/// or recall yields 0 for that class and flags the label; macro averages
/// run over all three classes, weighted averages weight by support.
pub fn compute_metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::InvalidInput("empty confusion matrix".into()));
    }

    let trace: u64 = (0..3).map(|c| cm.counts[c][c]).sum();
    let accuracy = trace as f64 / total as f64;

    let mut per_class = [ClassMetrics {
        precision: 0.0,
        recall: 0.0,
        f1: 0.0,
        support: 0,
    }; 3];
    let mut zero_division = Vec::new();

    for c in 0..3 {
        let tp = cm.counts[c][c] as f64;
        let predicted: u64 = (0..3).map(|g| cm.counts[g][c]).sum();
        let support = cm.support(c);
        let mut flagged = false;

        let precision = if predicted > 0 {
            tp / predicted as f64
        } else {
            flagged = true;
            0.0
        };
        let recall = if support > 0 {
            tp / support as f64
        } else {
            flagged = true;
            0.0
        };
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        per_class[c] = ClassMetrics {
            precision,
            recall,
            f1,
            support,
        };
        if flagged {
            zero_division.push(SentimentLabel::from_index(c).to_int() as i8);
        }
    }

    let macro_avg = |f: fn(&ClassMetrics) -> f64| per_class.iter().map(f).sum::<f64>() / 3.0;
    let weighted_avg = |f: fn(&ClassMetrics) -> f64| {
        per_class
            .iter()
            .map(|m| f(m) * m.support as f64)
            .sum::<f64>()
            / total as f64
    };

    Ok(MetricsReport {
        accuracy,
        per_class,
        macro_precision: macro_avg(|m| m.precision),
        macro_recall: macro_avg(|m| m.recall),
        macro_f1: macro_avg(|m| m.f1),
        weighted_precision: weighted_avg(|m| m.precision),
        weighted_recall: weighted_avg(|m| m.recall),
        weighted_f1: weighted_avg(|m| m.f1),
        zero_division_labels: zero_division,
    })
}

/// Render reports as an aligned text table: one row per model, the four
/// metrics in both macro and weighted variants.
pub fn render_table(rows: &[(String, MetricsReport)]) -> String {
    let headers = [
        "Model",
        "Accuracy",
        "Precision (macro)",
        "Recall (macro)",
        "F1 (macro)",
        "Precision (wtd)",
        "Recall (wtd)",
        "F1 (wtd)",
    ];
    let mut cells: Vec<Vec<String>> = vec![headers.iter().map(|s| s.to_string()).collect()];
    for (name, report) in rows {
        cells.push(vec![
            name.clone(),
            format!("{:.4}", report.accuracy),
            format!("{:.4}", report.macro_precision),
            format!("{:.4}", report.macro_recall),
            format!("{:.4}", report.macro_f1),
            format!("{:.4}", report.weighted_precision),
            format!("{:.4}", report.weighted_recall),
            format!("{:.4}", report.weighted_f1),
        ]);
    }
    let widths: Vec<usize> = (0..headers.len())
        .map(|i| cells.iter().map(|r| r[i].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (ri, row) in cells.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(i, c)| format!("{:<width$}", c, width = widths[i]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
        if ri == 0 {
            let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
            out.push_str(&rule.join("  "));
            out.push('\n');
        }
    }
    out
}
