//! Single-pass document processing.

use crate::annotation::{
    annotate_dictionary, annotate_pairs, propagate_semantic_type, PropagationConfig, ResolvedPair,
};
use crate::config::{Dictionary, DiscardRuleSet, Params, Prepositions};
use crate::coreference::corefer_sentence;
use crate::extraction::{extract_with, PairTable, Patterns};
use crate::textmodel::{Annotation, AnnotationKind, Document, Span, SpanError};

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("document `{doc}`: internal span error: {source}")]
    Span {
        doc: String,
        #[source]
        source: SpanError,
    },
}

/// Everything needed to process documents; immutable and shareable.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub params: Params,
    pub rules: DiscardRuleSet,
    pub prepositions: Prepositions,
    pub propagation: PropagationConfig,
    pub dictionary: Option<Dictionary>,
    patterns: Patterns,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline::new(
            Params::default(),
            DiscardRuleSet::builtin(),
            Prepositions::builtin(),
            PropagationConfig::default(),
            None,
        )
    }
}

/// A processed document along with the pairs accepted in it.
#[derive(Debug, Clone)]
pub struct Processed {
    pub document: Document,
    pub pairs: Vec<ResolvedPair>,
}

impl Pipeline {
    pub fn new(
        params: Params,
        rules: DiscardRuleSet,
        prepositions: Prepositions,
        propagation: PropagationConfig,
        dictionary: Option<Dictionary>,
    ) -> Self {
        let patterns = Patterns::compile(&params);
        Pipeline {
            params,
            rules,
            prepositions,
            propagation,
            dictionary,
            patterns,
        }
    }

    pub fn with_params(params: Params) -> Self {
        Pipeline {
            patterns: Patterns::compile(&params),
            params,
            ..Pipeline::default()
        }
    }

    /// Convenience over [`Pipeline::process_full`].
    pub fn process(&self, doc: Document) -> Result<Document, PipelineError> {
        Ok(self.process_full(doc)?.document)
    }

    /// Iterates the sentences once. Per sentence: extract pairs, annotate
    /// them, corefer earlier short forms, then record the new definitions.
    /// Propagation and dictionary lookup run after the pass. Annotations
    /// already on the document are kept and serve as propagation sources.
    pub fn process_full(&self, mut doc: Document) -> Result<Processed, PipelineError> {
        let doc_id = doc.id.clone();
        let span_err = |source| PipelineError::Span {
            doc: doc_id.clone(),
            source,
        };
        doc.ensure_sentences();
        let existing = std::mem::take(&mut doc.annotations);

        let mut table = PairTable::new();
        let mut pairs: Vec<ResolvedPair> = Vec::new();
        let mut produced: Vec<Annotation> = Vec::new();
        let mut occupied: Vec<Span> = Vec::new();

        for (index, sentence) in doc.sentences.iter().copied().enumerate() {
            let text = doc.covered_text(sentence).map_err(span_err)?;
            let accepted = extract_with(
                text,
                index,
                &self.patterns,
                &self.params,
                &self.rules,
                &self.prepositions,
            );
            let mut resolved = Vec::with_capacity(accepted.len());
            for pair in &accepted {
                resolved.push(
                    ResolvedPair::resolve(
                        pair,
                        pairs.len() + resolved.len(),
                        sentence.start,
                        doc.len(),
                    )
                    .map_err(span_err)?,
                );
            }
            let pair_anns = annotate_pairs(&doc, &resolved).map_err(span_err)?;
            occupied.extend(
                pair_anns
                    .iter()
                    .filter(|a| a.kind == AnnotationKind::ShortForm)
                    .map(|a| a.span),
            );
            produced.extend(pair_anns);

            if self.params.coreference_enabled {
                produced.extend(corefer_sentence(
                    &doc,
                    sentence,
                    index,
                    &table,
                    &mut occupied,
                ));
            }
            for p in &resolved {
                table.record(
                    &p.sf_text, &p.lf_text, index, p.sf_span, p.lf_span, p.pair_id,
                );
            }
            pairs.extend(resolved);
        }

        let propagated = propagate_semantic_type(&existing, &produced, &self.propagation);
        produced.extend(propagated);

        if self.params.dictionary_enabled {
            if let Some(dict) = &self.dictionary {
                let taken: Vec<Span> = produced
                    .iter()
                    .filter(|a| {
                        matches!(
                            a.kind,
                            AnnotationKind::LongForm
                                | AnnotationKind::ShortForm
                                | AnnotationKind::CorefShortForm
                        )
                    })
                    .map(|a| a.span)
                    .collect();
                produced.extend(annotate_dictionary(&doc, dict, &taken));
            }
        }

        let mut all = existing;
        all.extend(produced);
        all.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        all.dedup();
        doc.annotations = all;
        Ok(Processed {
            document: doc,
            pairs,
        })
    }
}

/// Free-function form of [`Pipeline::process`].
pub fn process_document(pipeline: &Pipeline, doc: Document) -> Result<Document, PipelineError> {
    pipeline.process(doc)
}
