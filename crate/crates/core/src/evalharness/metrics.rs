//! Confusion matrices, per-label precision/recall and report tables.

use std::collections::HashMap;
use std::fmt::Write;

use serde::Serialize;

use super::HarnessError;
use crate::types::{NliLabel, ProblemRecord};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LabelScores {
    pub label: NliLabel,
    /// Percentage; 0 when nothing was predicted with this label.
    pub precision: f64,
    pub recall: f64,
    /// The precision denominator was zero.
    pub precision_degenerate: bool,
    pub recall_degenerate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvalReport {
    pub total: usize,
    pub accuracy: f64,
    pub per_label: [LabelScores; 3],
    pub macro_precision: f64,
    pub macro_recall: f64,
    /// `confusion[gold][predicted]`, indexed by `NliLabel::index`.
    pub confusion: [[usize; 3]; 3],
}

fn pct(num: usize, den: usize) -> (f64, bool) {
    if den == 0 {
        (0.0, true)
    } else {
        (100.0 * num as f64 / den as f64, false)
    }
}

impl EvalReport {
    pub fn from_confusion(confusion: [[usize; 3]; 3]) -> EvalReport {
        let total: usize = confusion.iter().flatten().sum();
        let trace: usize = (0..3).map(|i| confusion[i][i]).sum();
        let per_label = NliLabel::ALL.map(|label| {
            let i = label.index();
            let predicted: usize = (0..3).map(|g| confusion[g][i]).sum();
            let gold: usize = confusion[i].iter().sum();
            let (precision, precision_degenerate) = pct(confusion[i][i], predicted);
            let (recall, recall_degenerate) = pct(confusion[i][i], gold);
            LabelScores {
                label,
                precision,
                recall,
                precision_degenerate,
                recall_degenerate,
            }
        });
        EvalReport {
            total,
            accuracy: pct(trace, total).0,
            macro_precision: per_label.iter().map(|s| s.precision).sum::<f64>() / 3.0,
            macro_recall: per_label.iter().map(|s| s.recall).sum::<f64>() / 3.0,
            per_label,
            confusion,
        }
    }

    pub fn scores(&self, label: NliLabel) -> &LabelScores {
        &self.per_label[label.index()]
    }

    /// One `key = value` line per metric.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "total = {}", self.total);
        let _ = writeln!(out, "accuracy = {:.2}", self.accuracy);
        let _ = writeln!(out, "macro_precision = {:.2}", self.macro_precision);
        let _ = writeln!(out, "macro_recall = {:.2}", self.macro_recall);
        for s in &self.per_label {
            let flag = if s.precision_degenerate {
                " (no predictions)"
            } else {
                ""
            };
            let name = s.label.corpus_name().to_lowercase();
            let _ = writeln!(out, "precision.{name} = {:.2}{flag}", s.precision);
            let _ = writeln!(out, "recall.{name} = {:.2}", s.recall);
        }
        for gold in NliLabel::ALL {
            let row = &self.confusion[gold.index()];
            let _ = writeln!(out, "confusion.{} = {} {} {}", gold.short(), row[0], row[1], row[2]);
        }
        out
    }
}

/// Scores predictions against gold labels. Every gold problem needs a
/// prediction; extra predictions are ignored.
pub fn evaluate(predictions: &HashMap<String, NliLabel>, gold: &[ProblemRecord]) -> Result<EvalReport, HarnessError> {
    let mut confusion = [[0usize; 3]; 3];
    for p in gold {
        let g = p.gold.ok_or_else(|| HarnessError::MissingGold(p.id.clone()))?;
        let predicted = predictions
            .get(&p.id)
            .ok_or_else(|| HarnessError::MissingPrediction(p.id.clone()))?;
        confusion[g.index()][predicted.index()] += 1;
    }
    Ok(EvalReport::from_confusion(confusion))
}

/// Aligned table: one row per system, columns P, R and accuracy.
pub fn render_table(rows: &[(&str, &EvalReport)]) -> String {
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(0).max(6);
    let mut out = format!("{:<width$}  {:>6}  {:>6}  {:>6}\n", "system", "P", "R", "acc.");
    for (name, r) in rows {
        let _ = writeln!(
            out,
            "{:<width$}  {:>6.2}  {:>6.2}  {:>6.2}",
            name, r.macro_precision, r.macro_recall, r.accuracy
        );
    }
    out
}
