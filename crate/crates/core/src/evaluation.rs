//! Precision, recall and F1 of predicted pairs against gold pairs.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::Serialize;

use crate::corpus::GoldPair;
use crate::pipeline::Processed;
use crate::textmodel::{features, AnnotationKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MatchPolicy {
    /// Short and long forms equal after removing whitespace and case folding.
    #[default]
    Text,
    /// As `Text`, plus identical short-form spans.
    Span,
}

impl FromStr for MatchPolicy {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(MatchPolicy::Text),
            "span" => Ok(MatchPolicy::Span),
            other => Err(EvalError::UnknownPolicy(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("span policy needs spans on every pair; {side} pair {index} has none")]
    MissingSpan { side: &'static str, index: usize },
    #[error("unknown match policy `{0}` (expected text or span)")]
    UnknownPolicy(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Counts {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

fn normalize(text: &str) -> String {
    text.chars()
        .filter(|c| !c.is_whitespace())
        .flat_map(char::to_lowercase)
        .collect()
}

/// Greedy one-to-one matching in prediction order; each gold pair can be
/// claimed by at most one prediction from the same document.
pub fn match_pairs(
    predicted: &[GoldPair],
    gold: &[GoldPair],
    policy: MatchPolicy,
) -> Result<Counts, EvalError> {
    if policy == MatchPolicy::Span {
        for (side, list) in [("predicted", predicted), ("gold", gold)] {
            if let Some(index) = list.iter().position(|p| p.sf_span.is_none()) {
                return Err(EvalError::MissingSpan { side, index });
            }
        }
    }
    let gold_keys: Vec<(String, String)> = gold
        .iter()
        .map(|g| (normalize(&g.sf_text), normalize(&g.lf_text)))
        .collect();
    let mut used = vec![false; gold.len()];
    let mut tp = 0;

    for pred in predicted {
        let key = (normalize(&pred.sf_text), normalize(&pred.lf_text));
        let hit = gold.iter().enumerate().position(|(i, g)| {
            !used[i]
                && g.doc_id == pred.doc_id
                && gold_keys[i] == key
                && (policy == MatchPolicy::Text || g.sf_span == pred.sf_span)
        });
        if let Some(i) = hit {
            used[i] = true;
            tp += 1;
        }
    }
    Ok(Counts {
        tp,
        fp: predicted.len() as u64 - tp,
        fn_: gold.len() as u64 - tp,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalReport {
    pub counts: Counts,
    pub precision: Ratio<u64>,
    pub recall: Ratio<u64>,
    pub f1: Ratio<u64>,
}

pub fn compute_metrics(counts: Counts) -> EvalReport {
    let Counts { tp, fp, fn_ } = counts;
    let one = Ratio::from_integer(1);
    let precision = if tp + fp == 0 {
        one
    } else {
        Ratio::new(tp, tp + fp)
    };
    let recall = if tp + fn_ == 0 {
        one
    } else {
        Ratio::new(tp, tp + fn_)
    };
    let sum = precision + recall;
    let f1 = if sum == Ratio::from_integer(0) {
        Ratio::from_integer(0)
    } else {
        Ratio::from_integer(2) * precision * recall / sum
    };
    EvalReport {
        counts,
        precision,
        recall,
        f1,
    }
}

fn to_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

#[derive(Serialize)]
struct ReportJson {
    tp: u64,
    fp: u64,
    #[serde(rename = "fn")]
    fn_: u64,
    precision: f64,
    recall: f64,
    f1: f64,
}

impl EvalReport {
    pub fn precision_f64(&self) -> f64 {
        to_f64(self.precision)
    }

    pub fn recall_f64(&self) -> f64 {
        to_f64(self.recall)
    }

    pub fn f1_f64(&self) -> f64 {
        to_f64(self.f1)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ReportJson {
            tp: self.counts.tp,
            fp: self.counts.fp,
            fn_: self.counts.fn_,
            precision: self.precision_f64(),
            recall: self.recall_f64(),
            f1: self.f1_f64(),
        })
        .expect("plain struct serializes")
    }

    pub fn to_table(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for EvalReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<10} {:>8}", "metric", "value")?;
        writeln!(f, "{:<10} {:>8}", "tp", self.counts.tp)?;
        writeln!(f, "{:<10} {:>8}", "fp", self.counts.fp)?;
        writeln!(f, "{:<10} {:>8}", "fn", self.counts.fn_)?;
        writeln!(f, "{:<10} {:>8.4}", "precision", self.precision_f64())?;
        writeln!(f, "{:<10} {:>8.4}", "recall", self.recall_f64())?;
        writeln!(f, "{:<10} {:>8.4}", "f1", self.f1_f64())
    }
}

/// Predicted pairs read back from a processed document's annotations.
pub fn predictions(processed: &Processed) -> Vec<GoldPair> {
    let doc = &processed.document;
    doc.annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::ShortForm)
        .filter_map(|sf| {
            let id = sf.pair_id()?;
            let pair = processed.pairs.iter().find(|p| p.pair_id == id)?;
            let lf_text = sf.feature(features::LONG_FORM)?.to_string();
            Some(
                GoldPair::new(doc.id.clone(), doc.covered_text(sf.span).ok()?, lf_text)
                    .with_spans(sf.span, pair.lf_span),
            )
        })
        .collect()
}
