use indexmap::IndexMap;

use crate::coreference::SfMatcher;
use crate::textmodel::Span;

/// What the table remembers about the latest definition of a short form.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub long_form: String,
    pub defining_sentence: usize,
    pub sf_span: Span,
    pub lf_span: Span,
    pub pair_id: usize,
    pub(crate) matcher: SfMatcher,
}

/// Short form to most recent long form, in first-definition order.
#[derive(Debug, Clone, Default)]
pub struct PairTable {
    entries: IndexMap<String, TableEntry>,
}

impl PairTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Upserts a definition. A redefined short form keeps its original
    /// position but takes the new long form.
    pub fn record(
        &mut self,
        short_form: &str,
        long_form: &str,
        defining_sentence: usize,
        sf_span: Span,
        lf_span: Span,
        pair_id: usize,
    ) {
        let matcher = match self.entries.get(short_form) {
            Some(existing) => existing.matcher.clone(),
            None => SfMatcher::new(short_form),
        };
        self.entries.insert(
            short_form.to_string(),
            TableEntry {
                long_form: long_form.to_string(),
                defining_sentence,
                sf_span,
                lf_span,
                pair_id,
                matcher,
            },
        );
    }

    pub fn get(&self, short_form: &str) -> Option<&TableEntry> {
        self.entries.get(short_form)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &TableEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}
