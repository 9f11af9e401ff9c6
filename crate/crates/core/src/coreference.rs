//! Later, unpaired mentions of recorded short forms.
//!
//! Each recorded short form gets its own regex: literal characters with every
//! internal whitespace run relaxed to `\s*`, so "2D1H NMR" still finds
//! "2D 1H NMR". Matches must sit on word boundaries wherever the short form
//! itself starts or ends with a word character.

use regex::Regex;

use crate::extraction::PairTable;
use crate::textmodel::{features, is_word_char, Annotation, AnnotationKind, Document, Span};

#[derive(Debug, Clone)]
pub struct SfMatcher {
    regex: Regex,
    bounded_start: bool,
    bounded_end: bool,
}

impl SfMatcher {
    pub fn new(short_form: &str) -> Self {
        let pattern = short_form
            .split_whitespace()
            .map(regex::escape)
            .collect::<Vec<_>>()
            .join(r"\s*");
        SfMatcher {
            regex: Regex::new(&pattern).expect("escaped literal always compiles"),
            bounded_start: short_form
                .trim_start()
                .chars()
                .next()
                .is_some_and(is_word_char),
            bounded_end: short_form
                .trim_end()
                .chars()
                .last()
                .is_some_and(is_word_char),
        }
    }

    pub fn as_str(&self) -> &str {
        self.regex.as_str()
    }

    /// Byte ranges of all boundary-respecting, non-overlapping matches.
    pub fn find_all(&self, text: &str) -> Vec<(usize, usize)> {
        let mut found = Vec::new();
        let mut at = 0;
        while at <= text.len() {
            let Some(m) = self.regex.find_at(text, at) else {
                break;
            };
            let before_ok = !self.bounded_start
                || !text[..m.start()]
                    .chars()
                    .next_back()
                    .is_some_and(is_word_char);
            let after_ok =
                !self.bounded_end || !text[m.end()..].chars().next().is_some_and(is_word_char);
            if before_ok && after_ok && m.end() > m.start() {
                found.push((m.start(), m.end()));
                at = m.end();
            } else {
                // Retry one char further on.
                at = m.start() + text[m.start()..].chars().next().map_or(1, char::len_utf8);
            }
        }
        found
    }

    pub fn is_match(&self, text: &str) -> bool {
        !self.find_all(text).is_empty()
    }
}

pub fn build_sf_matcher(short_form: &str) -> SfMatcher {
    SfMatcher::new(short_form)
}

/// Annotates unpaired mentions inside one sentence. `table` must only hold
/// definitions from earlier sentences. Longer short forms are matched first;
/// every new annotation is added to `occupied`.
pub fn corefer_sentence(
    doc: &Document,
    sentence: Span,
    sentence_index: usize,
    table: &PairTable,
    occupied: &mut Vec<Span>,
) -> Vec<Annotation> {
    let mut entries: Vec<_> = table
        .iter()
        .enumerate()
        .filter(|(_, (_, e))| e.defining_sentence < sentence_index)
        .collect();
    entries.sort_by_key(|(pos, (sf, _))| (std::cmp::Reverse(sf.chars().count()), *pos));

    let Ok(text) = doc.covered_text(sentence) else {
        return Vec::new();
    };
    let base = doc.byte_offset(sentence.start);

    let mut out = Vec::new();
    for (_, (_, entry)) in entries {
        for (bs, be) in entry.matcher.find_all(text) {
            let span = Span {
                start: doc.char_offset(base + bs),
                end: doc.char_offset(base + be),
            };
            if occupied.iter().any(|o| o.overlaps(&span)) {
                continue;
            }
            occupied.push(span);
            out.push(
                Annotation::new(span, AnnotationKind::CorefShortForm)
                    .with_feature(features::LONG_FORM, entry.long_form.clone())
                    .with_feature(features::PAIR_ID, entry.pair_id.to_string()),
            );
        }
    }
    out.sort_by_key(|a| a.span);
    out
}
