//! Finds long-form/short-form (definition/abbreviation) pairs in biomedical
//! text, annotates both sides in place, links later bare mentions of a short
//! form back to its most recent definition, and scores the output against
//! gold-standard pair lists.
//!
//! ```
//! use abbrx_core::{Document, Pipeline};
//!
//! let doc = Document::new(
//!     "ex",
//!     "Cells were grown in heat shock protein (HSP) medium. HSP was then removed.",
//! );
//! let out = Pipeline::default().process(doc).unwrap();
//! let kinds: Vec<_> = out.annotations.iter().map(|a| a.kind.to_string()).collect();
//! assert_eq!(kinds, ["LongForm", "ShortForm", "CorefShortForm"]);
//! ```

pub mod annotation;
pub mod config;
pub mod coreference;
pub mod corpus;
pub mod evaluation;
pub mod extraction;
pub mod io;
pub mod pipeline;
pub mod textmodel;

pub use annotation::{PropagationConfig, ResolvedPair};
pub use config::{ConfigError, Dictionary, DiscardRuleSet, Params, Prepositions, Threshold};
pub use corpus::{GoldPair, IssueKind, ParseIssue};
pub use evaluation::{compute_metrics, match_pairs, Counts, EvalReport, MatchPolicy};
pub use extraction::{AcceptedPair, CandidatePair, PairTable, PatternKind, Score};
pub use pipeline::{Pipeline, PipelineError, Processed};
pub use textmodel::{Annotation, AnnotationKind, Document, Span, SpanError};
