//! Long-form/short-form pair extraction for a single sentence.
//!
//! The flow per sentence is: find bracketed candidates (head pattern, falling
//! back to the tail pattern when the head finds nothing), orient each pair so
//! the short form is the shorter side, drop short forms hit by a discard rule,
//! truncate the long form after its last usable preposition, then accept the
//! pair when its character-match score reaches the threshold.

mod pattern;
mod score;
mod table;

pub use pattern::{HeadPattern, PatternKind, PatternMatch, TailPattern};
pub use score::{char_match_score, Score, UnscorableShortForm};
pub use table::{PairTable, TableEntry};

use crate::config::{DiscardRuleSet, Params, Prepositions};
use crate::textmodel::Span;
use pattern::{same_char, word_spans};

/// A bracketed pairing before scoring. Spans are sentence-local char offsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidatePair {
    pub lf_span: Span,
    pub sf_span: Span,
    pub lf_text: String,
    pub sf_text: String,
    pub kind: PatternKind,
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcceptedPair {
    pub candidate: CandidatePair,
    pub score: Score,
    pub sentence_index: usize,
    /// Long-form span before truncation.
    pub original_lf_span: Span,
}

impl AcceptedPair {
    pub fn sf_text(&self) -> &str {
        &self.candidate.sf_text
    }

    pub fn lf_text(&self) -> &str {
        &self.candidate.lf_text
    }
}

/// Both matchers, compiled once per parameter set.
#[derive(Debug, Clone, Copy)]
pub struct Patterns {
    pub head: HeadPattern,
    pub tail: TailPattern,
}

impl Patterns {
    pub fn compile(params: &Params) -> Self {
        Patterns {
            head: HeadPattern::compile(params),
            tail: TailPattern::compile(params),
        }
    }
}

pub fn compile_head_pattern(params: &Params) -> HeadPattern {
    HeadPattern::compile(params)
}

pub fn compile_tail_pattern(params: &Params) -> TailPattern {
    TailPattern::compile(params)
}

fn slice(chars: &[char], span: Span) -> String {
    chars[span.start..span.end].iter().collect()
}

/// Head matches if there are any, otherwise tail matches. Outer group becomes
/// the long form, inner group the short form.
pub fn find_candidates(sentence: &str, patterns: &Patterns) -> Vec<CandidatePair> {
    let chars: Vec<char> = sentence.chars().collect();
    find_candidates_in(&chars, patterns)
}

fn find_candidates_in(chars: &[char], patterns: &Patterns) -> Vec<CandidatePair> {
    let mut kind = PatternKind::Head;
    let mut matches = patterns.head.find_iter(chars);
    if matches.is_empty() {
        kind = PatternKind::Tail;
        matches = patterns.tail.find_iter(chars);
    }
    matches
        .into_iter()
        .map(|m| CandidatePair {
            lf_span: m.outer,
            sf_span: m.inner,
            lf_text: slice(chars, m.outer),
            sf_text: slice(chars, m.inner),
            kind,
            swapped: false,
        })
        .collect()
}

/// Swaps long and short form when the short form is strictly longer.
pub fn normalize_orientation(mut c: CandidatePair) -> CandidatePair {
    if c.sf_text.chars().count() > c.lf_text.chars().count() {
        std::mem::swap(&mut c.lf_span, &mut c.sf_span);
        std::mem::swap(&mut c.lf_text, &mut c.sf_text);
        c.swapped = true;
    }
    c
}

pub fn is_discarded(sf_text: &str, rules: &DiscardRuleSet, prepositions: &Prepositions) -> bool {
    if rules.first_match(sf_text).is_some() {
        return true;
    }
    let words: Vec<String> = sf_text
        .split(|c: char| !crate::textmodel::is_word_char(c))
        .filter(|w| !w.is_empty())
        .map(str::to_lowercase)
        .collect();
    prepositions
        .word_sequences()
        .iter()
        .any(|seq| words.len() >= seq.len() && words.iter().zip(seq).all(|(w, p)| w == p))
}

/// Shrinks the long form to the shortest suffix that starts after a
/// preposition, satisfies the pattern's character constraint, and still
/// scores at or above the threshold. Returns the candidate unchanged when
/// there is no preposition or no suffix qualifies.
pub fn truncate_long_form(
    c: CandidatePair,
    prepositions: &Prepositions,
    params: &Params,
) -> CandidatePair {
    let lf: Vec<char> = c.lf_text.chars().collect();
    let words = word_spans(
        &lf,
        Span {
            start: 0,
            end: lf.len(),
        },
    );
    let lowered: Vec<String> = words
        .iter()
        .map(|w| slice(&lf, *w).to_lowercase())
        .collect();

    // Word index right after the leftmost preposition occurrence. Suffixes
    // after later prepositions are a subset of these, so scanning shortest
    // first from here covers every occurrence right-to-left.
    let mut first_after = None;
    for seq in prepositions.word_sequences() {
        for start in 0..lowered.len() {
            let end = start + seq.len();
            if end <= lowered.len() && lowered[start..end].iter().zip(&seq).all(|(w, p)| w == p) {
                first_after = Some(first_after.map_or(end, |e: usize| e.min(end)));
                break;
            }
        }
    }
    let Some(first_after) = first_after else {
        return c;
    };
    let Some(sf_first) = c.sf_text.chars().next() else {
        return c;
    };

    for idx in (first_after..words.len()).rev() {
        let start = words[idx].start;
        if c.kind == PatternKind::Head && !same_char(lf[start], sf_first) {
            continue;
        }
        let suffix: String = lf[start..].iter().collect();
        let passes = char_match_score(&suffix, &c.sf_text)
            .map(|s| s.meets(params.threshold))
            .unwrap_or(false);
        if passes {
            return CandidatePair {
                lf_span: Span {
                    start: c.lf_span.start + start,
                    end: c.lf_span.end,
                },
                lf_text: suffix,
                ..c
            };
        }
    }
    c
}

/// Runs candidate identification through scoring for one sentence.
pub fn extract_pairs(
    sentence: &str,
    sentence_index: usize,
    params: &Params,
    rules: &DiscardRuleSet,
    prepositions: &Prepositions,
) -> Vec<AcceptedPair> {
    let patterns = Patterns::compile(params);
    extract_with(
        sentence,
        sentence_index,
        &patterns,
        params,
        rules,
        prepositions,
    )
}

/// As [`extract_pairs`] with patterns compiled ahead of time.
pub fn extract_with(
    sentence: &str,
    sentence_index: usize,
    patterns: &Patterns,
    params: &Params,
    rules: &DiscardRuleSet,
    prepositions: &Prepositions,
) -> Vec<AcceptedPair> {
    let chars: Vec<char> = sentence.chars().collect();
    let mut accepted: Vec<AcceptedPair> = find_candidates_in(&chars, patterns)
        .into_iter()
        .map(normalize_orientation)
        .filter(|c| !is_discarded(&c.sf_text, rules, prepositions))
        .filter_map(|c| {
            let original_lf_span = c.lf_span;
            let c = truncate_long_form(c, prepositions, params);
            let score = char_match_score(&c.lf_text, &c.sf_text).ok()?;
            score.meets(params.threshold).then_some(AcceptedPair {
                candidate: c,
                score,
                sentence_index,
                original_lf_span,
            })
        })
        .collect();
    accepted.sort_by_key(|p| p.candidate.lf_span.start.min(p.candidate.sf_span.start));
    accepted
}
