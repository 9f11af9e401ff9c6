//! Synthetic abstracts for benchmarking.

const DEFINITIONS: [(&str, &str); 8] = [
    ("heat shock protein", "HSP"),
    ("endoplasmic reticulum", "ER"),
    ("bone mineral density", "BMD"),
    ("tumour necrosis factor", "TNF"),
    (
        "two-dimensional proton nuclear magnetic resonance",
        "2D 1H NMR",
    ),
    ("confidence interval", "CI"),
    ("inducible nitric oxide synthase", "iNOS"),
    ("transformed rabbit corneal epithelial cells", "TRCEC"),
];

const FILLER: [&str; 6] = [
    "Samples were collected from all patients after treatment.",
    "Results were consistent across the three cohorts (p < 0.05).",
    "These findings suggest a role in cellular stress responses (see Fig. 2).",
    "Expression levels rose markedly during the second week.",
    "No adverse events were recorded in the control group.",
    "The effect persisted in 12 of 15 cases (80%).",
];

/// An abstract of `sentences` sentences that defines abbreviations and
/// mentions them again later. The same `seed` always gives the same text.
pub fn synthetic_abstract(seed: usize, sentences: usize) -> String {
    let mut out = Vec::with_capacity(sentences);
    for i in 0..sentences {
        let k = seed.wrapping_mul(31).wrapping_add(i * 7);
        let (lf, sf) = DEFINITIONS[k % DEFINITIONS.len()];
        let sentence = match i % 3 {
            0 => format!("We measured the activity of {lf} ({sf}) in treated cells."),
            1 => format!("Levels of {sf} were higher than expected."),
            _ => FILLER[k % FILLER.len()].to_string(),
        };
        out.push(sentence);
    }
    out.join(" ")
}
