//! Document input formats and annotation output formats.
//!
//! Input: plain UTF-8 text (one document) or JSON lines with `id`, `text`
//! and optional `annotations: [{start, end, type}]`.
//!
//! Output: standoff JSON (`{doc_id, annotations: [{start, end, type,
//! features}]}`, keys sorted) or inline markup where pair, coreference and
//! dictionary annotations wrap the text they cover.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Value};

use crate::textmodel::{features, Annotation, AnnotationKind, Document, Span, SpanError};

#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("line {line}: {source}")]
    Json {
        line: usize,
        #[source]
        source: serde_json::Error,
    },
    #[error("line {line}: annotation {span}: {source}")]
    Span {
        line: usize,
        span: Span,
        #[source]
        source: SpanError,
    },
}

#[derive(Deserialize)]
struct InputAnnotation {
    start: usize,
    end: usize,
    #[serde(rename = "type")]
    kind: String,
    #[serde(default)]
    features: BTreeMap<String, String>,
}

#[derive(Deserialize)]
struct InputDocument {
    id: String,
    text: String,
    #[serde(default)]
    annotations: Vec<InputAnnotation>,
}

pub fn read_plain_text(id: &str, text: &str) -> Document {
    Document::new(id, text)
}

pub fn read_jsonl(source: &str) -> Result<Vec<Document>, InputError> {
    let mut docs = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() {
            continue;
        }
        let input: InputDocument =
            serde_json::from_str(line).map_err(|source| InputError::Json {
                line: line_no,
                source,
            })?;
        let mut doc = Document::new(input.id, input.text);
        for a in input.annotations {
            let span = Span {
                start: a.start,
                end: a.end,
            };
            doc.check_span(span).map_err(|source| InputError::Span {
                line: line_no,
                span,
                source,
            })?;
            doc.annotations.push(Annotation {
                span,
                kind: AnnotationKind::parse(&a.kind),
                features: a.features,
            });
        }
        docs.push(doc);
    }
    Ok(docs)
}

pub fn standoff_value(doc: &Document) -> Value {
    let annotations: Vec<Value> = doc
        .annotations
        .iter()
        .map(|a| {
            json!({
                "start": a.span.start,
                "end": a.span.end,
                "type": a.kind.as_str(),
                "features": a.features,
            })
        })
        .collect();
    json!({ "doc_id": doc.id, "annotations": annotations })
}

/// One compact JSON object; keys come out sorted.
pub fn to_standoff_json(doc: &Document) -> String {
    standoff_value(doc).to_string()
}

fn escape_text(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            c => out.push(c),
        }
    }
}

fn escape_attr(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => escape_text(c.encode_utf8(&mut [0; 4]), &mut out),
        }
    }
    out
}

fn inline_tag(a: &Annotation) -> Option<(&'static str, &'static str)> {
    match a.kind {
        AnnotationKind::LongForm => Some(("LongForm", features::SHORT_FORM)),
        AnnotationKind::ShortForm => Some(("ShortForm", features::LONG_FORM)),
        AnnotationKind::CorefShortForm => Some(("CorefShortForm", features::LONG_FORM)),
        AnnotationKind::DictionaryShortForm => Some(("DictionaryShortForm", features::LONG_FORM)),
        AnnotationKind::Semantic(_) => None,
    }
}

/// Inline markup. Annotations that would cross an already-open element are
/// left out so the result stays well nested.
pub fn to_inline(doc: &Document) -> String {
    let mut tagged: Vec<&Annotation> = doc
        .annotations
        .iter()
        .filter(|a| inline_tag(a).is_some())
        .collect();
    tagged.sort_by_key(|a| (a.span.start, std::cmp::Reverse(a.span.end)));

    let mut kept: Vec<&Annotation> = Vec::new();
    let mut stack: Vec<Span> = Vec::new();
    for a in tagged {
        while stack.last().is_some_and(|s| s.end <= a.span.start) {
            stack.pop();
        }
        if stack.last().is_none_or(|s| s.contains(&a.span)) {
            stack.push(a.span);
            kept.push(a);
        }
    }

    let chars: Vec<char> = doc.text().chars().collect();
    let mut opens: BTreeMap<usize, Vec<&Annotation>> = BTreeMap::new();
    let mut closes: BTreeMap<usize, Vec<&Annotation>> = BTreeMap::new();
    for a in &kept {
        opens.entry(a.span.start).or_default().push(a);
        closes.entry(a.span.end).or_default().push(a);
    }

    let mut out = String::with_capacity(doc.text().len() * 2);
    for pos in 0..=chars.len() {
        if let Some(list) = closes.get(&pos) {
            // Innermost (latest opened) closes first.
            for a in list.iter().rev() {
                let (name, _) = inline_tag(a).unwrap();
                out.push_str(&format!("</{name}>"));
            }
        }
        if let Some(list) = opens.get(&pos) {
            for a in list {
                let (name, attr) = inline_tag(a).unwrap();
                let value = a.feature(attr).unwrap_or("");
                out.push_str(&format!("<{name} {attr}=\"{}\">", escape_attr(value)));
            }
        }
        if let Some(&c) = chars.get(pos) {
            escape_text(c.encode_utf8(&mut [0; 4]), &mut out);
        }
    }
    out
}
