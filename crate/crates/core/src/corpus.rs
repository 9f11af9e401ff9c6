//! Gold-standard corpora: the inline `<Long id=N>…</Long> (<Short id=N>…</Short>)`
//! format and a normalized tab-separated pair file.
//!
//! The inline parser never aborts. Structural defects are reported as
//! [`ParseIssue`]s so a human can fix the source file and re-run.

use std::collections::HashMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use crate::textmodel::{Document, Span};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GoldPair {
    pub doc_id: String,
    pub sf_text: String,
    pub lf_text: String,
    pub sf_span: Option<Span>,
    pub lf_span: Option<Span>,
}

impl GoldPair {
    pub fn new(doc_id: impl Into<String>, sf: impl Into<String>, lf: impl Into<String>) -> Self {
        GoldPair {
            doc_id: doc_id.into(),
            sf_text: sf.into(),
            lf_text: lf.into(),
            sf_span: None,
            lf_span: None,
        }
    }

    pub fn with_spans(mut self, sf: Span, lf: Span) -> Self {
        self.sf_span = Some(sf);
        self.lf_span = Some(lf);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IssueKind {
    MalformedTag,
    MismatchedId,
    UnclosedTag,
    OrphanShort,
    OrphanLong,
    BadSpan,
}

impl fmt::Display for IssueKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IssueKind::MalformedTag => "malformed-tag",
            IssueKind::MismatchedId => "mismatched-id",
            IssueKind::UnclosedTag => "unclosed-tag",
            IssueKind::OrphanShort => "orphan-short",
            IssueKind::OrphanLong => "orphan-long",
            IssueKind::BadSpan => "bad-span",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseIssue {
    pub kind: IssueKind,
    /// Char offset in the source text.
    pub location: usize,
    pub detail: String,
}

impl ParseIssue {
    fn new(kind: IssueKind, location: usize, detail: impl Into<String>) -> Self {
        ParseIssue {
            kind,
            location,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BioTextParse {
    pub clean_text: String,
    pub pairs: Vec<GoldPair>,
    pub issues: Vec<ParseIssue>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Role {
    Long,
    Short,
}

impl Role {
    fn name(self) -> &'static str {
        match self {
            Role::Long => "Long",
            Role::Short => "Short",
        }
    }
}

struct OpenElement {
    role: Role,
    id: String,
    clean_start: usize,
    clean_start_byte: usize,
    location: usize,
}

struct Element {
    role: Role,
    id: String,
    span: Span,
    text: String,
    location: usize,
}

fn tag_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^<(/?)([A-Za-z][A-Za-z0-9]*)((?:\s+[^<>]*)?)\s*>").unwrap())
}

fn id_regex() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| {
        Regex::new(r#"^\s*id\s*=\s*(?:"([^"\s]+)"|'([^'\s]+)'|([^"'\s]+))\s*$"#).unwrap()
    })
}

/// Parses inline-tagged text. Tags are stripped from `clean_text`; each Long
/// element pairs with the nearest following unused Short of the same id, or
/// failing that the nearest preceding one.
pub fn parse_biotext(doc_id: &str, raw: &str) -> BioTextParse {
    let mut clean = String::with_capacity(raw.len());
    let mut clean_len = 0usize;
    let mut issues = Vec::new();
    let mut open: Vec<OpenElement> = Vec::new();
    let mut elements: Vec<Element> = Vec::new();

    let mut byte = 0;
    let mut location = 0;
    while byte < raw.len() {
        let rest = &raw[byte..];
        if rest.starts_with('<') {
            if let Some(caps) = tag_regex().captures(rest) {
                let whole = caps.get(0).unwrap().as_str();
                let closing = !caps[1].is_empty();
                let name = &caps[2];
                let attrs = caps.get(3).map_or("", |m| m.as_str());
                let role = match name {
                    "Long" => Some(Role::Long),
                    "Short" => Some(Role::Short),
                    _ => None,
                };
                match role {
                    None => issues.push(ParseIssue::new(
                        IssueKind::MalformedTag,
                        location,
                        format!("unknown tag `{whole}`"),
                    )),
                    Some(role) if closing => {
                        if !attrs.trim().is_empty() {
                            issues.push(ParseIssue::new(
                                IssueKind::MalformedTag,
                                location,
                                format!("attributes on closing tag `{whole}`"),
                            ));
                        }
                        close_element(
                            role,
                            location,
                            clean_len,
                            &clean,
                            &mut open,
                            &mut elements,
                            &mut issues,
                        );
                    }
                    Some(role) => match id_regex().captures(attrs) {
                        Some(c) => {
                            let id = c
                                .get(1)
                                .or_else(|| c.get(2))
                                .or_else(|| c.get(3))
                                .unwrap()
                                .as_str()
                                .to_string();
                            open.push(OpenElement {
                                role,
                                id,
                                clean_start: clean_len,
                                clean_start_byte: clean.len(),
                                location,
                            });
                        }
                        None => {
                            issues.push(ParseIssue::new(
                                IssueKind::MalformedTag,
                                location,
                                format!("missing or malformed id in `{whole}`"),
                            ));
                            // Keep the structure so the closing tag has a partner.
                            open.push(OpenElement {
                                role,
                                id: String::new(),
                                clean_start: clean_len,
                                clean_start_byte: clean.len(),
                                location,
                            });
                        }
                    },
                }
                byte += whole.len();
                location += whole.chars().count();
                continue;
            }
        }
        let c = rest.chars().next().unwrap();
        clean.push(c);
        clean_len += 1;
        byte += c.len_utf8();
        location += 1;
    }

    for el in open.drain(..).rev() {
        issues.push(ParseIssue::new(
            IssueKind::UnclosedTag,
            el.location,
            format!("<{} id={}> never closed", el.role.name(), el.id),
        ));
    }

    let pairs = pair_elements(doc_id, &elements, &mut issues);
    issues.sort_by_key(|i| (i.location, i.kind));
    BioTextParse {
        clean_text: clean,
        pairs,
        issues,
    }
}

#[allow(clippy::too_many_arguments)]
fn close_element(
    role: Role,
    location: usize,
    clean_len: usize,
    clean: &str,
    open: &mut Vec<OpenElement>,
    elements: &mut Vec<Element>,
    issues: &mut Vec<ParseIssue>,
) {
    let Some(pos) = open.iter().rposition(|o| o.role == role) else {
        issues.push(ParseIssue::new(
            IssueKind::MalformedTag,
            location,
            format!("</{}> without opening tag", role.name()),
        ));
        return;
    };
    for inner in open.drain(pos + 1..).rev() {
        issues.push(ParseIssue::new(
            IssueKind::UnclosedTag,
            inner.location,
            format!(
                "<{} id={}> not closed before </{}>",
                inner.role.name(),
                inner.id,
                role.name()
            ),
        ));
    }
    let el = open.pop().unwrap();
    if el.id.is_empty() {
        return;
    }
    if el.clean_start == clean_len {
        issues.push(ParseIssue::new(
            IssueKind::MalformedTag,
            el.location,
            format!("empty <{}> element", role.name()),
        ));
        return;
    }
    let text = clean[el.clean_start_byte..].to_string();
    elements.push(Element {
        role,
        id: el.id,
        span: Span {
            start: el.clean_start,
            end: clean_len,
        },
        text,
        location: el.location,
    });
}

fn pair_elements(
    doc_id: &str,
    elements: &[Element],
    issues: &mut Vec<ParseIssue>,
) -> Vec<GoldPair> {
    let shorts: Vec<usize> = (0..elements.len())
        .filter(|&i| elements[i].role == Role::Short)
        .collect();
    let mut used = vec![false; elements.len()];
    let mut pairs = Vec::new();
    let mut orphan_longs = Vec::new();

    for (li, long) in elements
        .iter()
        .enumerate()
        .filter(|(_, e)| e.role == Role::Long)
    {
        let following = shorts
            .iter()
            .copied()
            .find(|&s| s > li && !used[s] && elements[s].id == long.id);
        let chosen = following.or_else(|| {
            shorts
                .iter()
                .rev()
                .copied()
                .find(|&s| s < li && !used[s] && elements[s].id == long.id)
        });
        match chosen {
            Some(si) => {
                used[si] = true;
                used[li] = true;
                let short = &elements[si];
                pairs.push(
                    GoldPair::new(doc_id, short.text.clone(), long.text.clone())
                        .with_spans(short.span, long.span),
                );
            }
            None => orphan_longs.push(li),
        }
    }

    for &li in &orphan_longs {
        let long = &elements[li];
        if let Some(&si) = shorts.iter().find(|&&s| s > li && !used[s]) {
            issues.push(ParseIssue::new(
                IssueKind::MismatchedId,
                long.location,
                format!(
                    "<Long id={}> is followed by <Short id={}>",
                    long.id, elements[si].id
                ),
            ));
        }
        issues.push(ParseIssue::new(
            IssueKind::OrphanLong,
            long.location,
            format!("no <Short id={}> for `{}`", long.id, long.text),
        ));
    }
    for &si in shorts.iter().filter(|&&s| !used[s]) {
        let short = &elements[si];
        issues.push(ParseIssue::new(
            IssueKind::OrphanShort,
            short.location,
            format!("no <Long id={}> for `{}`", short.id, short.text),
        ));
    }
    pairs.sort_by_key(|p| p.lf_span.map(|s| s.start).unwrap_or(0));
    pairs
}

#[derive(Debug, thiserror::Error)]
pub enum GoldFormatError {
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected 3 or 7 tab-separated fields, found {found}")]
    FieldCount { line: usize, found: usize },
    #[error("line {line}: offset `{value}` is not a non-negative integer")]
    BadOffset { line: usize, value: String },
    #[error("line {line}: empty short or long form")]
    EmptyField { line: usize },
    #[error("line {line}: {detail}")]
    BadSpan { line: usize, detail: String },
}

/// Parses the gold pair format:
/// `doc_id<TAB>short<TAB>long[<TAB>sf_start<TAB>sf_end<TAB>lf_start<TAB>lf_end]`.
pub fn parse_gold_tsv(source: &str) -> Result<Vec<GoldPair>, GoldFormatError> {
    let mut pairs = Vec::new();
    for (idx, line) in source.lines().enumerate() {
        let line_no = idx + 1;
        let line = line.trim_end_matches('\r');
        if line.trim().is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 3 && fields.len() != 7 {
            return Err(GoldFormatError::FieldCount {
                line: line_no,
                found: fields.len(),
            });
        }
        if fields[1].is_empty() || fields[2].is_empty() {
            return Err(GoldFormatError::EmptyField { line: line_no });
        }
        let mut pair = GoldPair::new(fields[0], fields[1], fields[2]);
        if fields.len() == 7 {
            let mut offsets = [0usize; 4];
            for (slot, raw) in offsets.iter_mut().zip(&fields[3..]) {
                *slot = raw.trim().parse().map_err(|_| GoldFormatError::BadOffset {
                    line: line_no,
                    value: raw.to_string(),
                })?;
            }
            let sf = Span::new(offsets[0], offsets[1]).map_err(|e| GoldFormatError::BadSpan {
                line: line_no,
                detail: e.to_string(),
            })?;
            let lf = Span::new(offsets[2], offsets[3]).map_err(|e| GoldFormatError::BadSpan {
                line: line_no,
                detail: e.to_string(),
            })?;
            pair = pair.with_spans(sf, lf);
        }
        pairs.push(pair);
    }
    Ok(pairs)
}

pub fn load_gold_tsv(path: &Path) -> Result<Vec<GoldPair>, GoldFormatError> {
    let source = fs::read_to_string(path).map_err(|source| GoldFormatError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_gold_tsv(&source)
}

/// Writes pairs back in the gold TSV format.
pub fn format_gold_tsv(pairs: &[GoldPair]) -> String {
    let mut out = String::new();
    for p in pairs {
        out.push_str(&format!("{}\t{}\t{}", p.doc_id, p.sf_text, p.lf_text));
        if let (Some(sf), Some(lf)) = (p.sf_span, p.lf_span) {
            out.push_str(&format!(
                "\t{}\t{}\t{}\t{}",
                sf.start, sf.end, lf.start, lf.end
            ));
        }
        out.push('\n');
    }
    out
}

/// Checks gold pairs against their documents: spans must slice to the
/// recorded texts and every doc id must resolve. `location` on the returned
/// issues is the pair's index in `pairs`.
pub fn validate_gold(pairs: &[GoldPair], docs: &[Document]) -> Vec<ParseIssue> {
    let by_id: HashMap<&str, &Document> = docs.iter().map(|d| (d.id.as_str(), d)).collect();
    let mut issues = Vec::new();
    for (idx, pair) in pairs.iter().enumerate() {
        let Some(doc) = by_id.get(pair.doc_id.as_str()) else {
            issues.push(ParseIssue::new(
                IssueKind::OrphanLong,
                idx,
                format!("unknown document id `{}`", pair.doc_id),
            ));
            continue;
        };
        for (label, span, expected) in [
            ("short form", pair.sf_span, &pair.sf_text),
            ("long form", pair.lf_span, &pair.lf_text),
        ] {
            let Some(span) = span else { continue };
            match doc.covered_text(span) {
                Ok(found) if found == expected => {}
                Ok(found) => issues.push(ParseIssue::new(
                    IssueKind::BadSpan,
                    idx,
                    format!("{label} span {span} covers `{found}`, expected `{expected}`"),
                )),
                Err(e) => issues.push(ParseIssue::new(
                    IssueKind::BadSpan,
                    idx,
                    format!("{label} span {span}: {e}"),
                )),
            }
        }
    }
    issues
}
