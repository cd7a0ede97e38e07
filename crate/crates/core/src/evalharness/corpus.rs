//! Corpus and label-overlay ingestion.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use super::HarnessError;
use crate::types::{NliLabel, ProblemRecord};

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .quoting(false)
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn column(headers: &csv::StringRecord, names: &[&str]) -> Result<usize, HarnessError> {
    headers
        .iter()
        .position(|h| names.contains(&h.trim()))
        .ok_or_else(|| HarnessError::Schema {
            line: 1,
            message: format!("missing column {}", names[0]),
        })
}

fn label_at(record: &csv::StringRecord, col: usize, line: usize) -> Result<NliLabel, HarnessError> {
    let raw = record.get(col).unwrap_or("");
    raw.parse().map_err(|_| HarnessError::Schema {
        line,
        message: format!("unknown label {raw:?}"),
    })
}

fn cell(record: &csv::StringRecord, col: usize, line: usize) -> Result<String, HarnessError> {
    record.get(col).map(str::to_owned).ok_or_else(|| HarnessError::Schema {
        line,
        message: format!("row has {} columns, expected more than {col}", record.len()),
    })
}

/// Parses corpus TSV with columns `pair_ID`, `sentence_A`, `sentence_B`
/// and `entailment_judgment` (or `entailment_label`); other columns are
/// ignored.
pub fn parse_corpus(text: &str) -> Result<Vec<ProblemRecord>, HarnessError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut rdr = reader(text);
    let headers = rdr.headers()?.clone();
    let id = column(&headers, &["pair_ID"])?;
    let a = column(&headers, &["sentence_A"])?;
    let b = column(&headers, &["sentence_B"])?;
    let label = column(&headers, &["entailment_judgment", "entailment_label"])?;
    let mut out = Vec::new();
    for (i, record) in rdr.records().enumerate() {
        let record = record?;
        let line = i + 2;
        out.push(ProblemRecord::new(
            cell(&record, id, line)?,
            cell(&record, a, line)?,
            cell(&record, b, line)?,
            Some(label_at(&record, label, line)?),
        ));
    }
    Ok(out)
}

pub fn load_corpus(path: &Path) -> Result<Vec<ProblemRecord>, HarnessError> {
    parse_corpus(&std::fs::read_to_string(path)?)
}

/// Overlay rows `pair_ID`, `corrected_label`, in file order.
pub fn parse_overlay(text: &str) -> Result<Vec<(String, NliLabel)>, HarnessError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut rdr = reader(text);
    let headers = rdr.headers()?.clone();
    let id = column(&headers, &["pair_ID"])?;
    let label = column(&headers, &["corrected_label"])?;
    rdr.records()
        .enumerate()
        .map(|(i, r)| {
            let r = r?;
            Ok((cell(&r, id, i + 2)?, label_at(&r, label, i + 2)?))
        })
        .collect()
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorrectionSummary {
    /// Problems whose gold label actually changed.
    pub applied: usize,
    /// Changes by (original, corrected) label.
    pub breakdown: BTreeMap<(NliLabel, NliLabel), usize>,
}

impl CorrectionSummary {
    pub fn count(&self, from: NliLabel, to: NliLabel) -> usize {
        self.breakdown.get(&(from, to)).copied().unwrap_or(0)
    }
}

/// Replaces gold labels for the overlay's ids. Every overlay id must name
/// a problem in the corpus.
pub fn apply_overlay(
    problems: &[ProblemRecord],
    overlay: &[(String, NliLabel)],
) -> Result<(Vec<ProblemRecord>, CorrectionSummary), HarnessError> {
    let index: HashMap<&str, usize> = problems.iter().enumerate().map(|(i, p)| (p.id.as_str(), i)).collect();
    let mut out = problems.to_vec();
    let mut summary = CorrectionSummary::default();
    for (id, label) in overlay {
        let &i = index
            .get(id.as_str())
            .ok_or_else(|| HarnessError::UnknownId(id.clone()))?;
        let old = out[i].gold;
        if old != Some(*label) {
            summary.applied += 1;
            if let Some(old) = old {
                *summary.breakdown.entry((old, *label)).or_default() += 1;
            }
            out[i].gold = Some(*label);
        }
    }
    Ok((out, summary))
}

pub fn apply_corrections(
    problems: &[ProblemRecord],
    overlay_path: &Path,
) -> Result<(Vec<ProblemRecord>, CorrectionSummary), HarnessError> {
    let overlay = parse_overlay(&std::fs::read_to_string(overlay_path)?)?;
    apply_overlay(problems, &overlay)
}
