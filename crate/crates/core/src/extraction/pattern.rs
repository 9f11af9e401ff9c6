//! Head and tail candidate matchers.
//!
//! Both look for an outer group of words immediately followed by a bracketed
//! inner group. The head matcher ties the first character of the outer group
//! to the first character of the inner group; the tail matcher ties the first
//! character of the outer group's last word to the last character of the
//! inner group's core. Character comparisons ignore case.
//!
//! The matchers are hand-compiled from [`Params`] rather than expressed as a
//! backtracking regex: the constraints need case-insensitive backreferences.

use crate::config::Params;
use crate::textmodel::{is_word_char, Span};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PatternKind {
    Head,
    Tail,
}

impl PatternKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            PatternKind::Head => "head",
            PatternKind::Tail => "tail",
        }
    }
}

/// One match: the outer (pre-bracket) group and the inner (bracketed) core,
/// both as sentence-local char spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternMatch {
    pub outer: Span,
    pub inner: Span,
    /// Position of the closing bracket.
    pub close: usize,
}

pub(crate) fn fold(c: char) -> char {
    c.to_lowercase().next().unwrap_or(c)
}

pub(crate) fn same_char(a: char, b: char) -> bool {
    a == b || fold(a) == fold(b)
}

fn is_bracket(c: char) -> bool {
    matches!(c, '(' | ')' | '[' | ']')
}

/// Maximal runs of word characters.
pub(crate) fn word_spans(chars: &[char], within: Span) -> Vec<Span> {
    let mut words = Vec::new();
    let mut i = within.start;
    while i < within.end {
        if is_word_char(chars[i]) {
            let start = i;
            while i < within.end && is_word_char(chars[i]) {
                i += 1;
            }
            words.push(Span { start, end: i });
        } else {
            i += 1;
        }
    }
    words
}

/// Bracketed group starting at an opener: content up to the first matching
/// closer (no nesting).
struct Bracketed {
    open: usize,
    close: usize,
}

fn bracketed_at(chars: &[char], open: usize) -> Option<Bracketed> {
    let closer = match chars[open] {
        '(' => ')',
        '[' => ']',
        _ => return None,
    };
    let close = open + 1 + chars[open + 1..].iter().position(|&c| c == closer)?;
    if close == open + 1 || chars[open + 1..close].contains(&'\n') {
        return None;
    }
    Some(Bracketed { open, close })
}

/// Candidate cores of a bracketed group, longest first: the whole content,
/// then every split leaving a trailing `punct ws* word` suffix.
fn inner_cores(chars: &[char], b: &Bracketed, max_inner_chars: usize) -> Vec<Span> {
    let content = Span {
        start: b.open + 1,
        end: b.close,
    };
    let mut cores = Vec::new();
    if content.len() <= max_inner_chars {
        cores.push(content);
    }
    // Trailing word run, then optional whitespace, then one punctuation char.
    let mut word_start = content.end;
    while word_start > content.start && is_word_char(chars[word_start - 1]) {
        word_start -= 1;
    }
    if word_start == content.end {
        return cores;
    }
    let mut p = word_start;
    while p > content.start && chars[p - 1].is_whitespace() {
        p -= 1;
    }
    // The suffix word is the trailing word run, so at most one split exists.
    if p > content.start && chars[p - 1].is_ascii_punctuation() {
        let core_end = p - 1;
        if core_end > content.start && core_end - content.start <= max_inner_chars {
            cores.push(Span {
                start: content.start,
                end: core_end,
            });
        }
    }
    cores
}

/// The word that ends right before `open`, allowing only whitespace between.
fn final_word_before(words: &[Span], chars: &[char], open: usize, floor: usize) -> Option<usize> {
    let mut end = open;
    while end > floor && chars[end - 1].is_whitespace() {
        end -= 1;
    }
    if end == floor || !is_word_char(chars[end - 1]) {
        return None;
    }
    let idx = words.partition_point(|w| w.end < end);
    (idx < words.len() && words[idx].end == end && words[idx].start >= floor).then_some(idx)
}

fn gap_is_clean(chars: &[char], from: usize, to: usize) -> bool {
    !chars[from..to].iter().any(|&c| is_bracket(c) || c == '\n')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeadPattern {
    max_outer_words: usize,
    max_inner_chars: usize,
}

impl HeadPattern {
    pub fn compile(params: &Params) -> Self {
        HeadPattern {
            max_outer_words: params.max_outer_words,
            max_inner_chars: params.max_inner_chars,
        }
    }

    /// Non-overlapping matches, leftmost first.
    pub fn find_iter(&self, chars: &[char]) -> Vec<PatternMatch> {
        let words = word_spans(
            chars,
            Span {
                start: 0,
                end: chars.len(),
            },
        );
        let mut matches = Vec::new();
        let mut floor = 0;

        for open in 0..chars.len() {
            if open < floor {
                continue;
            }
            let Some(b) = bracketed_at(chars, open) else {
                continue;
            };
            let Some(core) = inner_cores(chars, &b, self.max_inner_chars)
                .first()
                .copied()
            else {
                continue;
            };
            let Some(last) = final_word_before(&words, chars, open, floor) else {
                continue;
            };
            let target = chars[core.start];

            // Walk back over up to max_outer_words words separated by one or
            // two non-word characters; keep the leftmost start that satisfies
            // the first-character constraint.
            let mut best = None;
            let mut idx = last;
            let mut count = 1;
            loop {
                let w = words[idx];
                let first = chars[w.start];
                if first.is_alphanumeric() && same_char(first, target) {
                    best = Some(w.start);
                }
                if count == self.max_outer_words || idx == 0 {
                    break;
                }
                let prev = words[idx - 1];
                let gap = w.start - prev.end;
                if prev.start < floor || gap > 2 || !gap_is_clean(chars, prev.end, w.start) {
                    break;
                }
                idx -= 1;
                count += 1;
            }

            if let Some(start) = best {
                matches.push(PatternMatch {
                    outer: Span {
                        start,
                        end: words[last].end,
                    },
                    inner: core,
                    close: b.close,
                });
                floor = b.close + 1;
            }
        }
        matches
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TailPattern {
    max_outer_chars: usize,
    max_inner_chars: usize,
}

impl TailPattern {
    pub fn compile(params: &Params) -> Self {
        TailPattern {
            max_outer_chars: params.max_outer_chars,
            max_inner_chars: params.max_inner_chars,
        }
    }

    /// Non-overlapping matches, leftmost first.
    pub fn find_iter(&self, chars: &[char]) -> Vec<PatternMatch> {
        let words = word_spans(
            chars,
            Span {
                start: 0,
                end: chars.len(),
            },
        );
        let mut matches = Vec::new();
        let mut floor = 0;

        for open in 0..chars.len() {
            if open < floor {
                continue;
            }
            let Some(b) = bracketed_at(chars, open) else {
                continue;
            };
            let Some(last) = final_word_before(&words, chars, open, floor) else {
                continue;
            };
            let final_word = words[last];
            let first = chars[final_word.start];
            if !first.is_alphanumeric() {
                continue;
            }
            let Some(core) = inner_cores(chars, &b, self.max_inner_chars)
                .into_iter()
                .find(|core| same_char(chars[core.end - 1], first))
            else {
                continue;
            };

            // The outer group is the final word plus up to max_outer_chars
            // characters before it, starting at a word start.
            let mut start = final_word.start;
            for idx in (0..last).rev() {
                let w = words[idx];
                if w.start < floor
                    || final_word.start - w.start > self.max_outer_chars
                    || !gap_is_clean(chars, w.end, words[idx + 1].start)
                {
                    break;
                }
                if chars[w.start].is_alphanumeric() {
                    start = w.start;
                }
            }

            matches.push(PatternMatch {
                outer: Span {
                    start,
                    end: final_word.end,
                },
                inner: core,
                close: b.close,
            });
            floor = b.close + 1;
        }
        matches
    }
}
