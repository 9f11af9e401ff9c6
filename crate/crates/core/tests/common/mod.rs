#![allow(dead_code)]

use std::collections::HashMap;

use abbrx_core::corpus::GoldPair;
use abbrx_core::{AnnotationKind, Document, Processed};
use proptest::prelude::*;

/// Largest number of short-form letters that can be aligned, in order, with
/// long-form letters: tries every subset of the short form and keeps the
/// biggest one that is a subsequence of the long form.
pub fn optimal_alignment(long_form: &str, short_form: &str) -> (u32, u32) {
    let fold = |s: &str| -> Vec<char> {
        s.chars()
            .filter(|c| c.is_alphabetic())
            .map(|c| c.to_lowercase().next().unwrap())
            .collect()
    };
    let (lf, sf) = (fold(long_form), fold(short_form));
    assert!(sf.len() <= 16, "oracle is exponential in the short form");
    let is_subsequence = |needle: &[char]| {
        let mut it = lf.iter();
        needle.iter().all(|c| it.any(|l| l == c))
    };
    let mut best = 0;
    for mask in 0u32..(1 << sf.len()) {
        let picked: Vec<char> = (0..sf.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| sf[i])
            .collect();
        if picked.len() as u32 > best && is_subsequence(&picked) {
            best = picked.len() as u32;
        }
    }
    (best, sf.len() as u32)
}

/// Multiset intersection size per (doc, normalized sf, normalized lf).
pub fn brute_force_confusion(predicted: &[GoldPair], gold: &[GoldPair]) -> (u64, u64, u64) {
    let key = |p: &GoldPair| {
        let norm = |s: &str| -> String {
            s.chars()
                .filter(|c| !c.is_whitespace())
                .flat_map(char::to_lowercase)
                .collect()
        };
        (p.doc_id.clone(), norm(&p.sf_text), norm(&p.lf_text))
    };
    let mut pred_counts: HashMap<_, u64> = HashMap::new();
    for p in predicted {
        *pred_counts.entry(key(p)).or_default() += 1;
    }
    let mut gold_counts: HashMap<_, u64> = HashMap::new();
    for g in gold {
        *gold_counts.entry(key(g)).or_default() += 1;
    }
    let tp: u64 = pred_counts
        .iter()
        .map(|(k, n)| (*n).min(*gold_counts.get(k).unwrap_or(&0)))
        .sum();
    (tp, predicted.len() as u64 - tp, gold.len() as u64 - tp)
}

/// 43 curated (short form, long form) pairs that the original Medstract
/// markables left out, in their published order.
pub const MINI_CORPUS_PAIRS: [(&str, &str); 43] = [
    ("hCG", "human chorionic gonadotrophin"),
    ("eNOS", "endothelial type of NO synthase"),
    ("3beta-HSD II", "3beta-hydroxysteroid dehydrogenase type II"),
    ("tTGase", "tissue transglutaminase"),
    ("hMG", "human menopausal gonadotrophin"),
    ("IVF ET", "in vitro fertilization/embryo transfer"),
    ("hMG", "human menopausal gonadotrophin"),
    ("hCG", "human chorionic gonadotrophin"),
    ("ds", "double-stranded"),
    ("frag", "fragmentation"),
    ("3-D", "3-dimensional"),
    ("22K hGH", "22 kDa growth hormone"),
    ("alpha-DB", "alpha-dystrobrevin"),
    ("bHLH", "basic helix-loop-helix"),
    ("b FGF", "basic fibroblast growth factor"),
    ("CI", "confidence interval"),
    ("oc", "Osteosclerosis"),
    ("topo II", "topoisomerase II"),
    ("ALP", "alkaline phosphatase levels"),
    ("BMD", "bone mineral density"),
    ("CI", "confidence interval"),
    ("micro-CT", "micro-computed tomography"),
    ("PrE", "primitive endoderm"),
    ("hHb1", "Human hair keratin basic 1"),
    ("bp", "base pair"),
    ("mtDNA", "mitochondrial genome"),
    ("beta 2M", "beta 2-microglobulin"),
    ("pb", "peripheral blood"),
    ("AT", "Ataxia teleangiectasia"),
    ("I.L.S.G.", "International Lymphoma Study Group"),
    (
        "R.E.A.L.",
        "Revised European-American Classification of Lymphoid Neoplasms",
    ),
    ("tHcy", "total homocysteine"),
    ("iNOS", "inducible nitric oxide synthase"),
    ("5-FU", "5-fluorouracil"),
    ("rAAV", "recombinant adeno-associated virus"),
    ("oriP", "origin of latent viral DNA replication"),
    ("HVJ", "hemagglutinating virus of Japan"),
    ("E0'", "equilibrium reduction potential"),
    ("O2-", "superoxide"),
    ("eNOS", "endothelial NO synthase"),
    ("GIOx", "glutamate oxidase"),
    ("beta-END", "beta endorphin"),
    ("tRCEC", "transformed rabbit corneal epithelial cells"),
];

pub fn mini_corpus_sentence(sf: &str, lf: &str) -> String {
    format!("We studied {lf} ({sf}) in this work.")
}

/// Definitions used by the random document generator. Two short forms are
/// defined twice with different long forms to exercise redefinition.
pub const DEFINITIONS: [(&str, &str); 10] = [
    ("heat shock protein", "HSP"),
    ("endoplasmic reticulum", "ER"),
    ("estrogen receptor", "ER"),
    ("bone mineral density", "BMD"),
    ("tumour necrosis factor", "TNF"),
    ("Wiskott-Aldrich syndrome", "WAS"),
    (
        "two-dimensional proton nuclear magnetic resonance",
        "2D 1H NMR",
    ),
    ("confidence interval", "CI"),
    ("cardiac index", "CI"),
    ("topoisomerase I", "Top1p"),
];

const FILLER: [&str; 16] = [
    "cells",
    "were",
    "grown",
    "levels",
    "rose",
    "markedly",
    "after",
    "treatment",
    "samples",
    "showed",
    "reduced",
    "activity",
    "patients",
    "with",
    "the",
    "of",
];

#[derive(Debug, Clone)]
pub enum SentencePlan {
    Define {
        def: usize,
        filler: Vec<usize>,
        reverse: bool,
    },
    Mention {
        def: usize,
        filler: Vec<usize>,
        squash_spaces: bool,
    },
    Plain {
        filler: Vec<usize>,
    },
}

fn filler_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..FILLER.len(), 0..5)
}

pub fn sentence_strategy() -> impl Strategy<Value = SentencePlan> {
    prop_oneof![
        3 => (0..DEFINITIONS.len(), filler_strategy(), any::<bool>())
            .prop_map(|(def, filler, reverse)| SentencePlan::Define { def, filler, reverse }),
        3 => (0..DEFINITIONS.len(), filler_strategy(), any::<bool>())
            .prop_map(|(def, filler, squash_spaces)| SentencePlan::Mention { def, filler, squash_spaces }),
        1 => filler_strategy().prop_map(|filler| SentencePlan::Plain { filler }),
    ]
}

fn words(filler: &[usize]) -> String {
    filler
        .iter()
        .map(|&i| FILLER[i])
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn render(plans: &[SentencePlan]) -> String {
    let mut sentences = Vec::new();
    for plan in plans {
        let body = match plan {
            SentencePlan::Define {
                def,
                filler,
                reverse,
            } => {
                let (lf, sf) = DEFINITIONS[*def];
                let core = if *reverse {
                    format!("{sf} ({lf})")
                } else {
                    format!("{lf} ({sf})")
                };
                format!("Our {} {core} {}", words(filler), words(filler))
            }
            SentencePlan::Mention {
                def,
                filler,
                squash_spaces,
            } => {
                let (_, sf) = DEFINITIONS[*def];
                let sf = if *squash_spaces {
                    sf.replacen(' ', "", 1)
                } else {
                    sf.to_string()
                };
                format!("Here {sf} {}", words(filler))
            }
            SentencePlan::Plain { filler } => format!("Next {}", words(filler)),
        };
        let body = body.split_whitespace().collect::<Vec<_>>().join(" ");
        sentences.push(format!("{body}."));
    }
    sentences.join(" ")
}

pub fn document_strategy() -> impl Strategy<Value = String> {
    prop::collection::vec(sentence_strategy(), 0..8).prop_map(|plans| render(&plans))
}

/// Span and feature invariants on every emitted annotation.
pub fn check_annotation_invariants(doc: &Document) -> Result<(), String> {
    for a in &doc.annotations {
        let covered = doc
            .covered_text(a.span)
            .map_err(|e| format!("{:?} out of bounds: {e}", a))?;
        match a.kind {
            AnnotationKind::ShortForm => {
                let lf = a.feature("longForm").ok_or("ShortForm without longForm")?;
                let id = a.pair_id().ok_or("ShortForm without pairId")?;
                let partner = doc
                    .annotations
                    .iter()
                    .find(|b| b.kind == AnnotationKind::LongForm && b.pair_id() == Some(id))
                    .ok_or("ShortForm without LongForm partner")?;
                if doc.covered_text(partner.span).unwrap() != lf {
                    return Err(format!("longForm feature `{lf}` != partner text"));
                }
                if partner.feature("shortForm") != Some(covered) {
                    return Err(format!("shortForm feature mismatch for `{covered}`"));
                }
            }
            AnnotationKind::LongForm if a.feature("shortForm").is_none() => {
                return Err("LongForm without shortForm".into());
            }
            _ => {}
        }
    }
    Ok(())
}

/// Forward-only and most-recent-binding checks for coreference output.
pub fn check_coref_invariants(processed: &Processed) -> Result<(), String> {
    let doc = &processed.document;
    let sentence_of = |pos: usize| {
        doc.sentences
            .iter()
            .position(|s| s.start <= pos && pos < s.end)
            .expect("annotation inside a sentence")
    };
    let sf_spans: Vec<_> = doc
        .annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::ShortForm)
        .map(|a| a.span)
        .collect();
    let corefs: Vec<_> = doc
        .annotations
        .iter()
        .filter(|a| a.kind == AnnotationKind::CorefShortForm)
        .collect();
    for (i, c) in corefs.iter().enumerate() {
        let id = c.pair_id().ok_or("coref without pairId")?;
        let pair = processed
            .pairs
            .iter()
            .find(|p| p.pair_id == id)
            .ok_or("coref bound to unknown pair")?;
        let here = sentence_of(c.span.start);
        if pair.sentence_index >= here {
            return Err(format!(
                "coref at sentence {here} bound to pair from {}",
                pair.sentence_index
            ));
        }
        if let Some(newer) = processed.pairs.iter().find(|q| {
            q.sf_text == pair.sf_text
                && q.sentence_index > pair.sentence_index
                && q.sentence_index < here
        }) {
            return Err(format!(
                "coref `{}` at sentence {here} bound to stale definition (newer at {})",
                pair.sf_text, newer.sentence_index
            ));
        }
        if c.feature("longForm") != Some(pair.lf_text.as_str()) {
            return Err("coref longForm differs from its pair".into());
        }
        if sf_spans.iter().any(|s| s.overlaps(&c.span)) {
            return Err("coref overlaps a ShortForm".into());
        }
        if corefs[i + 1..].iter().any(|o| o.span.overlaps(&c.span)) {
            return Err("overlapping corefs".into());
        }
    }
    Ok(())
}

pub mod props {
    //! Property bodies shared by the property suite and the acceptance run.

    use super::*;
    use abbrx_core::config::DiscardRule;
    use abbrx_core::corpus::parse_biotext;
    use abbrx_core::evaluation::{compute_metrics, match_pairs, predictions};
    use abbrx_core::extraction::{char_match_score, extract_pairs};
    use abbrx_core::io::to_standoff_json;
    use abbrx_core::textmodel::split_sentences;
    use abbrx_core::{
        DiscardRuleSet, MatchPolicy, Params, Pipeline, Prepositions, Span, Threshold,
    };
    use proptest::test_runner::TestCaseError;
    use std::collections::BTreeSet;

    type PropResult = Result<(), TestCaseError>;

    fn fail(msg: String) -> TestCaseError {
        TestCaseError::fail(msg)
    }

    pub const THRESHOLDS: [&str; 7] = ["0.5", "0.6", "0.7", "0.75", "0.8", "0.9", "1"];

    fn params_at(threshold: &str) -> Params {
        Params {
            threshold: threshold.parse::<Threshold>().unwrap(),
            ..Params::default()
        }
    }

    /// Short-form spans accepted at a threshold, across all sentences.
    fn accepted_sf_spans(text: &str, threshold: &str) -> BTreeSet<(usize, usize, usize)> {
        let params = params_at(threshold);
        let rules = DiscardRuleSet::builtin();
        let preps = Prepositions::builtin();
        let mut out = BTreeSet::new();
        for (i, s) in split_sentences(text).into_iter().enumerate() {
            let sentence: String = text.chars().skip(s.start).take(s.len()).collect();
            for p in extract_pairs(&sentence, i, &params, &rules, &preps) {
                out.insert((i, p.candidate.sf_span.start, p.candidate.sf_span.end));
            }
        }
        out
    }

    pub fn threshold_monotone(text: &str, a: usize, b: usize) -> PropResult {
        let (lo, hi) = (a.min(b), a.max(b));
        let low = accepted_sf_spans(text, THRESHOLDS[lo]);
        let high = accepted_sf_spans(text, THRESHOLDS[hi]);
        if !high.is_subset(&low) {
            return Err(fail(format!(
                "accepted at {} but not at {}: {:?}",
                THRESHOLDS[hi],
                THRESHOLDS[lo],
                high.difference(&low).collect::<Vec<_>>()
            )));
        }
        // Every pair that survives reports a score meeting its threshold.
        let params = params_at(THRESHOLDS[hi]);
        for (i, s) in split_sentences(text).into_iter().enumerate() {
            let sentence: String = text.chars().skip(s.start).take(s.len()).collect();
            for p in extract_pairs(
                &sentence,
                i,
                &params,
                &DiscardRuleSet::builtin(),
                &Prepositions::builtin(),
            ) {
                let rescored = char_match_score(p.lf_text(), p.sf_text()).unwrap();
                if rescored != p.score || !p.score.meets(params.threshold) {
                    return Err(fail(format!("bad score for {:?}", p)));
                }
            }
        }
        Ok(())
    }

    pub fn annotation_invariants(text: &str) -> PropResult {
        let out = Pipeline::default()
            .process(Document::new("p", text))
            .map_err(|e| fail(e.to_string()))?;
        check_annotation_invariants(&out).map_err(fail)
    }

    pub fn coref_invariants(text: &str) -> PropResult {
        let out = Pipeline::default()
            .process_full(Document::new("p", text))
            .map_err(|e| fail(e.to_string()))?;
        check_coref_invariants(&out).map_err(fail)
    }

    pub fn deterministic(text: &str) -> PropResult {
        let a = to_standoff_json(
            &Pipeline::default()
                .process(Document::new("p", text))
                .unwrap(),
        );
        let b = to_standoff_json(
            &Pipeline::default()
                .process(Document::new("p", text))
                .unwrap(),
        );
        if a != b {
            return Err(fail(format!("runs differ:\n{a}\n{b}")));
        }
        Ok(())
    }

    pub fn no_coref_is_subset(text: &str) -> PropResult {
        let with = Pipeline::default()
            .process(Document::new("p", text))
            .unwrap();
        let without = Pipeline::with_params(Params {
            coreference_enabled: false,
            ..Params::default()
        })
        .process(Document::new("p", text))
        .unwrap();
        let stripped: Vec<_> = with
            .annotations
            .iter()
            .filter(|a| a.kind != AnnotationKind::CorefShortForm)
            .cloned()
            .collect();
        if stripped != without.annotations {
            return Err(fail("coreference changed non-coreference output".into()));
        }
        Ok(())
    }

    pub fn gold_strategy() -> impl Strategy<Value = Vec<GoldPair>> {
        let pair = (0..3usize, 0..3usize, 0..3usize, 0..2usize, any::<bool>()).prop_map(
            |(d, s, l, pos, spaced)| {
                let sf = ["ER", "HSP", "CI"][s];
                let sf = if spaced {
                    format!(" {} ", sf.to_lowercase())
                } else {
                    sf.to_string()
                };
                let lf = [
                    "endoplasmic reticulum",
                    "heat shock protein",
                    "confidence interval",
                ][l];
                GoldPair::new(format!("d{d}"), sf, lf).with_spans(
                    Span {
                        start: pos,
                        end: pos + 2,
                    },
                    Span { start: 10, end: 20 },
                )
            },
        );
        prop::collection::vec(pair, 0..12)
    }

    pub fn evaluation_counts(predicted: &[GoldPair], gold: &[GoldPair], seed: u64) -> PropResult {
        let counts = match_pairs(predicted, gold, MatchPolicy::Text).unwrap();
        if counts.tp + counts.fn_ != gold.len() as u64
            || counts.tp + counts.fp != predicted.len() as u64
        {
            return Err(fail(format!("counts do not add up: {:?}", counts)));
        }
        let (tp, fp, fn_) = brute_force_confusion(predicted, gold);
        if (counts.tp, counts.fp, counts.fn_) != (tp, fp, fn_) {
            return Err(fail(format!(
                "{:?} != brute force {:?}",
                counts,
                (tp, fp, fn_)
            )));
        }
        // Prediction order does not change the outcome.
        let mut shuffled = predicted.to_vec();
        let n = shuffled.len();
        if n > 1 {
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                shuffled.swap(i, (state % (i as u64 + 1)) as usize);
            }
        }
        if match_pairs(&shuffled, gold, MatchPolicy::Text).unwrap() != counts {
            return Err(fail("order-dependent counts".into()));
        }
        let span_counts = match_pairs(predicted, gold, MatchPolicy::Span).unwrap();
        if span_counts.tp > counts.tp {
            return Err(fail("span policy matched more than text policy".into()));
        }
        let report = compute_metrics(counts);
        let p = if tp + fp == 0 {
            1.0
        } else {
            tp as f64 / (tp + fp) as f64
        };
        let r = if tp + fn_ == 0 {
            1.0
        } else {
            tp as f64 / (tp + fn_) as f64
        };
        if (report.precision_f64() - p).abs() > 1e-12 || (report.recall_f64() - r).abs() > 1e-12 {
            return Err(fail("metrics disagree with brute force".into()));
        }
        Ok(())
    }

    pub fn pipeline_predictions_count(text: &str) -> PropResult {
        let out = Pipeline::default()
            .process_full(Document::new("p", text))
            .unwrap();
        let preds = predictions(&out);
        if preds.len() != out.pairs.len() {
            return Err(fail("one prediction per resolved pair expected".into()));
        }
        Ok(())
    }

    pub fn split_idempotent(text: &str) -> PropResult {
        let spans = split_sentences(text);
        for s in &spans {
            let sentence: String = text.chars().skip(s.start).take(s.len()).collect();
            let again = split_sentences(&sentence);
            if again
                != vec![Span {
                    start: 0,
                    end: s.len(),
                }]
            {
                return Err(fail(format!("`{sentence}` re-splits into {:?}", again)));
            }
        }
        if spans.windows(2).any(|w| w[0].end > w[1].start) {
            return Err(fail("sentences overlap".into()));
        }
        Ok(())
    }

    pub const RULE_POOL: [&str; 6] = [
        r"^\d+$",
        r"(?i)^(?:of|in)\b",
        r"^[A-Z]$",
        r"^\d(?:.*\d)?$",
        r"p\s*[<>=]",
        r"^(?:i|ii|iii|iv)$",
    ];

    pub fn discard_round_trip(picks: &[(usize, String)], probes: &[String]) -> PropResult {
        let source: String = picks
            .iter()
            .map(|(i, d)| format!("{}\t{}\n", RULE_POOL[*i], d))
            .collect();
        let set = DiscardRuleSet::parse(&source).map_err(|e| fail(e.to_string()))?;
        let again =
            DiscardRuleSet::parse(&set.to_file_string()).map_err(|e| fail(e.to_string()))?;
        let view = |s: &DiscardRuleSet| -> Vec<(String, String)> {
            s.rules
                .iter()
                .map(|r: &DiscardRule| (r.pattern_text().to_string(), r.description.clone()))
                .collect()
        };
        if view(&set) != view(&again) || set.len() != picks.len() {
            return Err(fail("rule set changed across a round trip".into()));
        }
        for probe in probes {
            let a = set.first_match(probe).map(|r| r.pattern_text().to_string());
            let b = again
                .first_match(probe)
                .map(|r| r.pattern_text().to_string());
            if a != b {
                return Err(fail(format!("`{probe}` matched differently")));
            }
        }
        Ok(())
    }

    /// `(skipped words, long-form words, words before the bracket, id)`.
    pub type Insertion = (usize, usize, usize, u32);

    /// Words plus tag insertions laid out left to right, each short form
    /// bracketed shortly after its long form.
    pub fn biotext_case() -> impl Strategy<Value = (Vec<String>, Vec<Insertion>)> {
        let words = prop::collection::vec("[a-z]{1,6}", 10..40);
        let inserts = prop::collection::vec((0..3usize, 1..4usize, 0..2usize, 1..50u32), 0..5);
        (words, inserts)
    }

    pub fn biotext_round_trip(words: &[String], inserts: &[Insertion]) -> PropResult {
        // Lay out pairs without overlap; ids are made unique by position.
        let mut raw = String::new();
        let mut clean = String::new();
        let mut expected = Vec::new();
        let mut w = 0;
        let push = |raw: &mut String, clean: &mut String, s: &str| {
            raw.push_str(s);
            clean.push_str(s);
        };
        for (k, &(skip, lf_len, gap, id)) in inserts.iter().enumerate() {
            let id = id * 10 + k as u32;
            if w + skip + lf_len + gap + 1 > words.len() {
                break;
            }
            for word in &words[w..w + skip] {
                push(&mut raw, &mut clean, word);
                push(&mut raw, &mut clean, " ");
            }
            w += skip;
            let lf_text = words[w..w + lf_len].join(" ");
            let lf_start = clean.chars().count();
            raw.push_str(&format!("<Long id={id}>"));
            push(&mut raw, &mut clean, &lf_text);
            raw.push_str("</Long>");
            push(&mut raw, &mut clean, " ");
            for word in &words[w + lf_len..w + lf_len + gap] {
                push(&mut raw, &mut clean, word);
                push(&mut raw, &mut clean, " ");
            }
            let sf_text = words[w + lf_len + gap].to_uppercase();
            push(&mut raw, &mut clean, "(");
            let sf_start = clean.chars().count();
            raw.push_str(&format!("<Short id=\"{id}\">"));
            push(&mut raw, &mut clean, &sf_text);
            raw.push_str("</Short>");
            push(&mut raw, &mut clean, ") ");
            expected.push(
                GoldPair::new("r", sf_text.clone(), lf_text.clone()).with_spans(
                    Span {
                        start: sf_start,
                        end: sf_start + sf_text.chars().count(),
                    },
                    Span {
                        start: lf_start,
                        end: lf_start + lf_text.chars().count(),
                    },
                ),
            );
            w += lf_len + gap + 1;
        }
        let tail = words[w.min(words.len())..].join(" ");
        push(&mut raw, &mut clean, &tail);

        let parsed = parse_biotext("r", &raw);
        if !parsed.issues.is_empty() {
            return Err(fail(format!("unexpected issues {:?}", parsed.issues)));
        }
        if parsed.clean_text != clean {
            return Err(fail("clean text differs from the untagged source".into()));
        }
        if parsed.pairs != expected {
            return Err(fail(format!("{:?} != {:?}", parsed.pairs, expected)));
        }

        // Re-insert tags at the recorded spans and strip them again.
        let chars: Vec<char> = parsed.clean_text.chars().collect();
        let mut marks: Vec<(usize, u8, String)> = Vec::new();
        for (i, p) in parsed.pairs.iter().enumerate() {
            let (lf, sf) = (p.lf_span.unwrap(), p.sf_span.unwrap());
            marks.push((lf.start, 1, format!("<Long id={i}>")));
            marks.push((lf.end, 0, "</Long>".into()));
            marks.push((sf.start, 1, format!("<Short id={i}>")));
            marks.push((sf.end, 0, "</Short>".into()));
        }
        marks.sort();
        let mut rebuilt = String::new();
        let mut m = marks.iter().peekable();
        for pos in 0..=chars.len() {
            while let Some((at, _, tag)) = m.peek() {
                if *at != pos {
                    break;
                }
                rebuilt.push_str(tag);
                m.next();
            }
            if let Some(c) = chars.get(pos) {
                rebuilt.push(*c);
            }
        }
        let reparsed = parse_biotext("r", &rebuilt);
        if reparsed.clean_text != parsed.clean_text || reparsed.pairs != parsed.pairs {
            return Err(fail("round trip through recorded spans failed".into()));
        }
        Ok(())
    }

    pub fn sentence_text_strategy() -> impl Strategy<Value = String> {
        let token = prop_oneof![
            4 => "[a-z]{1,7}",
            2 => "[A-Z][a-z]{0,6}",
            1 => Just("e.g.".to_string()),
            1 => Just("Fig.".to_string()),
            1 => Just("al.".to_string()),
            1 => "[0-9]{1,3}",
            2 => "[a-z]{1,5}[.?!]",
            1 => Just("A.".to_string()),
            1 => Just("(see".to_string()),
        ];
        prop::collection::vec(
            (
                token,
                prop_oneof![4 => Just(" "), 1 => Just("  "), 1 => Just("\n")],
            ),
            0..30,
        )
        .prop_map(|parts| parts.into_iter().map(|(t, s)| format!("{t}{s}")).collect())
    }
}
