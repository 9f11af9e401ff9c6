//! Turning accepted pairs into document annotations.

use std::collections::BTreeSet;

use crate::config::Dictionary;
use crate::extraction::{AcceptedPair, PatternKind, Score};
use crate::textmodel::{
    features, is_word_char, Annotation, AnnotationKind, Document, Span, SpanError,
};

/// An accepted pair with spans resolved to document offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedPair {
    pub pair_id: usize,
    pub sf_span: Span,
    pub lf_span: Span,
    pub sf_text: String,
    pub lf_text: String,
    pub score: Score,
    pub sentence_index: usize,
    pub kind: PatternKind,
}

impl ResolvedPair {
    pub fn resolve(
        pair: &AcceptedPair,
        pair_id: usize,
        sentence_start: usize,
        doc_len: usize,
    ) -> Result<Self, SpanError> {
        Ok(ResolvedPair {
            pair_id,
            sf_span: project_span(sentence_start, pair.candidate.sf_span, doc_len)?,
            lf_span: project_span(sentence_start, pair.candidate.lf_span, doc_len)?,
            sf_text: pair.candidate.sf_text.clone(),
            lf_text: pair.candidate.lf_text.clone(),
            score: pair.score,
            sentence_index: pair.sentence_index,
            kind: pair.candidate.kind,
        })
    }
}

/// Shifts a sentence-local span to document offsets.
pub fn project_span(sentence_start: usize, local: Span, doc_len: usize) -> Result<Span, SpanError> {
    let span = local.shift(sentence_start);
    if span.is_empty() {
        return Err(SpanError::Empty {
            start: span.start,
            end: span.end,
        });
    }
    if span.end > doc_len {
        return Err(SpanError::OutOfBounds {
            start: span.start,
            end: span.end,
            len: doc_len,
        });
    }
    Ok(span)
}

/// One LongForm and one ShortForm annotation per pair, each carrying the
/// other side's text.
pub fn annotate_pairs(
    doc: &Document,
    pairs: &[ResolvedPair],
) -> Result<Vec<Annotation>, SpanError> {
    let mut out = Vec::with_capacity(pairs.len() * 2);
    for pair in pairs {
        let lf_covered = doc.covered_text(pair.lf_span)?;
        let sf_covered = doc.covered_text(pair.sf_span)?;
        let score = pair.score.to_string();
        let id = pair.pair_id.to_string();
        out.push(
            Annotation::new(pair.lf_span, AnnotationKind::LongForm)
                .with_feature(features::SHORT_FORM, sf_covered)
                .with_feature(features::SCORE, score.clone())
                .with_feature(features::PAIR_ID, id.clone()),
        );
        out.push(
            Annotation::new(pair.sf_span, AnnotationKind::ShortForm)
                .with_feature(features::LONG_FORM, lf_covered)
                .with_feature(features::SCORE, score)
                .with_feature(features::PAIR_ID, id),
        );
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    Ok(out)
}

/// Semantic types eligible for copying from a long form to its short forms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PropagationConfig {
    pub types: BTreeSet<String>,
}

impl PropagationConfig {
    pub fn new<I, S>(types: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PropagationConfig {
            types: types
                .into_iter()
                .map(Into::into)
                .filter(|t: &String| !t.is_empty())
                .collect(),
        }
    }

    /// Parses a comma-separated list.
    pub fn parse_list(list: &str) -> Self {
        Self::new(list.split(',').map(str::trim))
    }
}

/// For every long form lying inside a pre-existing annotation of a
/// propagatable type, emits that type over the pair's short form and every
/// coreferred mention bound to the same pair.
pub fn propagate_semantic_type(
    existing: &[Annotation],
    pair_annotations: &[Annotation],
    cfg: &PropagationConfig,
) -> Vec<Annotation> {
    let mut out = Vec::new();
    if cfg.types.is_empty() {
        return out;
    }
    for lf in pair_annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::LongForm)
    {
        let Some(pair_id) = lf.pair_id() else {
            continue;
        };
        let types: BTreeSet<&str> = existing
            .iter()
            .filter(|e| cfg.types.contains(e.kind.as_str()) && e.span.contains(&lf.span))
            .map(|e| e.kind.as_str())
            .collect();
        for ty in types {
            for sf in pair_annotations.iter().filter(|a| {
                matches!(
                    a.kind,
                    AnnotationKind::ShortForm | AnnotationKind::CorefShortForm
                ) && a.pair_id() == Some(pair_id)
            }) {
                out.push(
                    Annotation::new(sf.span, AnnotationKind::Semantic(ty.to_string()))
                        .with_feature(features::PAIR_ID, pair_id.to_string()),
                );
            }
        }
    }
    out.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
    out
}

/// Whole-word, case-sensitive dictionary lookups outside existing pair and
/// coreference annotations. Overlapping hits resolve leftmost, then longest.
pub fn annotate_dictionary(
    doc: &Document,
    dict: &Dictionary,
    occupied: &[Span],
) -> Vec<Annotation> {
    let text = doc.text();
    let mut hits: Vec<(Span, &str)> = Vec::new();
    for (sf, lf) in dict.iter() {
        let bounded_start = sf.chars().next().is_some_and(is_word_char);
        let bounded_end = sf.chars().last().is_some_and(is_word_char);
        for (b, m) in text.match_indices(sf) {
            let e = b + m.len();
            if bounded_start && text[..b].chars().next_back().is_some_and(is_word_char) {
                continue;
            }
            if bounded_end && text[e..].chars().next().is_some_and(is_word_char) {
                continue;
            }
            let span = Span {
                start: doc.char_offset(b),
                end: doc.char_offset(e),
            };
            if !occupied.iter().any(|o| o.overlaps(&span)) {
                hits.push((span, lf));
            }
        }
    }
    hits.sort_by_key(|(s, _)| (s.start, std::cmp::Reverse(s.end)));

    let mut out: Vec<Annotation> = Vec::new();
    let mut last_end = 0;
    for (span, lf) in hits {
        if span.start < last_end {
            continue;
        }
        last_end = span.end;
        out.push(
            Annotation::new(span, AnnotationKind::DictionaryShortForm)
                .with_feature(features::LONG_FORM, lf),
        );
    }
    out
}
