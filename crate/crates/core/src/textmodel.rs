//! Documents, character-offset spans, annotations and sentence splitting.
//!
//! All offsets are counted in Unicode scalar values (Rust `char`s), not bytes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpanError {
    #[error("empty or inverted span [{start}, {end})")]
    Empty { start: usize, end: usize },
    #[error("span [{start}, {end}) out of bounds for length {len}")]
    OutOfBounds {
        start: usize,
        end: usize,
        len: usize,
    },
}

/// Half-open character range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Result<Self, SpanError> {
        if start < end {
            Ok(Span { start, end })
        } else {
            Err(SpanError::Empty { start, end })
        }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn contains(&self, other: &Span) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn shift(&self, offset: usize) -> Span {
        Span {
            start: self.start + offset,
            end: self.end + offset,
        }
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnnotationKind {
    LongForm,
    ShortForm,
    CorefShortForm,
    DictionaryShortForm,
    /// A semantic type carried over from a pre-existing annotation.
    Semantic(String),
}

impl AnnotationKind {
    pub fn as_str(&self) -> &str {
        match self {
            AnnotationKind::LongForm => "LongForm",
            AnnotationKind::ShortForm => "ShortForm",
            AnnotationKind::CorefShortForm => "CorefShortForm",
            AnnotationKind::DictionaryShortForm => "DictionaryShortForm",
            AnnotationKind::Semantic(name) => name,
        }
    }

    pub fn parse(name: &str) -> Self {
        match name {
            "LongForm" => AnnotationKind::LongForm,
            "ShortForm" => AnnotationKind::ShortForm,
            "CorefShortForm" => AnnotationKind::CorefShortForm,
            "DictionaryShortForm" => AnnotationKind::DictionaryShortForm,
            other => AnnotationKind::Semantic(other.to_string()),
        }
    }

    /// True for the kinds this library emits itself for a short-form mention.
    pub fn is_short_form(&self) -> bool {
        matches!(
            self,
            AnnotationKind::ShortForm
                | AnnotationKind::CorefShortForm
                | AnnotationKind::DictionaryShortForm
        )
    }
}

impl fmt::Display for AnnotationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for AnnotationKind {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for AnnotationKind {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        Ok(AnnotationKind::parse(&name))
    }
}

pub mod features {
    pub const LONG_FORM: &str = "longForm";
    pub const SHORT_FORM: &str = "shortForm";
    pub const SCORE: &str = "score";
    pub const PAIR_ID: &str = "pairId";
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Annotation {
    pub span: Span,
    #[serde(rename = "type")]
    pub kind: AnnotationKind,
    #[serde(default)]
    pub features: BTreeMap<String, String>,
}

impl Annotation {
    pub fn new(span: Span, kind: AnnotationKind) -> Self {
        Annotation {
            span,
            kind,
            features: BTreeMap::new(),
        }
    }

    pub fn with_feature(mut self, key: &str, value: impl Into<String>) -> Self {
        self.features.insert(key.to_string(), value.into());
        self
    }

    pub fn feature(&self, key: &str) -> Option<&str> {
        self.features.get(key).map(String::as_str)
    }

    pub fn pair_id(&self) -> Option<usize> {
        self.feature(features::PAIR_ID)?.parse().ok()
    }

    /// Output ordering: by start, then end, then type name and features.
    pub fn sort_key(&self) -> (usize, usize, &str, &BTreeMap<String, String>) {
        (
            self.span.start,
            self.span.end,
            self.kind.as_str(),
            &self.features,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub id: String,
    text: String,
    /// Byte offset of every char, plus a trailing `text.len()`.
    char_bytes: Vec<usize>,
    pub sentences: Vec<Span>,
    pub annotations: Vec<Annotation>,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        let text = text.into();
        let mut char_bytes: Vec<usize> = text.char_indices().map(|(b, _)| b).collect();
        char_bytes.push(text.len());
        Document {
            id: id.into(),
            text,
            char_bytes,
            sentences: Vec::new(),
            annotations: Vec::new(),
        }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Length in chars.
    pub fn len(&self) -> usize {
        self.char_bytes.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check_span(&self, span: Span) -> Result<Span, SpanError> {
        if span.start >= span.end {
            return Err(SpanError::Empty {
                start: span.start,
                end: span.end,
            });
        }
        if span.end > self.len() {
            return Err(SpanError::OutOfBounds {
                start: span.start,
                end: span.end,
                len: self.len(),
            });
        }
        Ok(span)
    }

    pub fn covered_text(&self, span: Span) -> Result<&str, SpanError> {
        let span = self.check_span(span)?;
        Ok(&self.text[self.char_bytes[span.start]..self.char_bytes[span.end]])
    }

    pub fn byte_offset(&self, char_offset: usize) -> usize {
        self.char_bytes[char_offset]
    }

    /// Char offset of a byte offset that lies on a char boundary.
    pub fn char_offset(&self, byte_offset: usize) -> usize {
        self.char_bytes
            .binary_search(&byte_offset)
            .expect("byte offset on a char boundary")
    }

    /// Populates `sentences` with [`split_sentences`] if it is empty.
    pub fn ensure_sentences(&mut self) {
        if self.sentences.is_empty() {
            self.sentences = split_sentences(&self.text);
        }
    }
}

/// Convenience wrapper over [`Document::covered_text`].
pub fn covered_text(doc: &Document, span: Span) -> Result<&str, SpanError> {
    doc.covered_text(span)
}

pub(crate) fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Tokens that end in a period without ending the sentence.
const NON_TERMINAL_ABBREVIATIONS: &[&str] = &[
    "e.g", "i.e", "vs", "viz", "cf", "fig", "figs", "eq", "eqs", "ref", "refs", "al", "approx",
    "ca", "no", "nos", "dr", "mr", "mrs", "ms", "prof", "st", "sp", "spp", "resp", "vol", "pp",
];

fn is_guarded(token: &[char]) -> bool {
    let token: String = token
        .iter()
        .skip_while(|c| matches!(c, '(' | '[' | '"' | '\''))
        .collect();
    let mut chars = token.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if c.is_uppercase() {
            return true;
        }
    }
    NON_TERMINAL_ABBREVIATIONS.contains(&token.to_lowercase().as_str())
}

/// Splits text into sentence spans. A boundary follows `.`, `?` or `!` when the
/// next non-whitespace character is an uppercase letter or a digit, unless
/// the terminating token is a known abbreviation or a single capital letter.
/// Spans exclude surrounding whitespace.
pub fn split_sentences(text: &str) -> Vec<Span> {
    let chars: Vec<char> = text.chars().collect();
    let mut sentences = Vec::new();
    let mut seg_start = 0;

    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if matches!(c, '.' | '?' | '!') && chars.get(i + 1).is_some_and(|n| n.is_whitespace()) {
            let next = chars[i + 1..].iter().position(|c| !c.is_whitespace());
            if let Some(offset) = next {
                let next_char = chars[i + 1 + offset];
                let token_start = chars[..i]
                    .iter()
                    .rposition(|c| c.is_whitespace())
                    .map_or(0, |p| p + 1);
                let boundary = (next_char.is_uppercase() || next_char.is_ascii_digit())
                    && !(c == '.' && is_guarded(&chars[token_start..i]));
                if boundary {
                    push_trimmed(&chars, seg_start, i + 1, &mut sentences);
                    seg_start = i + 1;
                }
            }
        }
        i += 1;
    }
    push_trimmed(&chars, seg_start, chars.len(), &mut sentences);
    sentences
}

fn push_trimmed(chars: &[char], mut start: usize, mut end: usize, out: &mut Vec<Span>) {
    while start < end && chars[start].is_whitespace() {
        start += 1;
    }
    while end > start && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if start < end {
        out.push(Span { start, end });
    }
}
