use std::fmt;

use num_rational::Ratio;

use super::pattern::fold;
use crate::config::Threshold;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unscorable short form `{0}`: no alphabetic characters")]
pub struct UnscorableShortForm(pub String);

/// Fraction of the short form's alphabetic characters found, in order, in the
/// long form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Score {
    pub matched: u32,
    pub total: u32,
}

impl Score {
    pub fn ratio(&self) -> Ratio<u64> {
        Ratio::new(self.matched as u64, self.total as u64)
    }

    pub fn as_f64(&self) -> f64 {
        self.matched as f64 / self.total as f64
    }

    pub fn meets(&self, threshold: Threshold) -> bool {
        self.ratio() >= threshold.ratio()
    }

    pub fn is_perfect(&self) -> bool {
        self.matched == self.total
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.ratio().cmp(&other.ratio()))
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

fn alpha_folded(text: &str) -> Vec<char> {
    text.chars()
        .filter(|c| c.is_alphabetic())
        .map(fold)
        .collect()
}

/// Greedy forward scan: each short-form letter is looked up at or after the
/// cursor in the long form; a hit moves the cursor past it, a miss leaves the
/// cursor where it was.
pub fn char_match_score(long_form: &str, short_form: &str) -> Result<Score, UnscorableShortForm> {
    let sf = alpha_folded(short_form);
    if sf.is_empty() {
        return Err(UnscorableShortForm(short_form.to_string()));
    }
    let lf = alpha_folded(long_form);

    let mut cursor = 0;
    let mut matched = 0u32;
    for c in &sf {
        if let Some(pos) = lf[cursor..].iter().position(|l| l == c) {
            cursor += pos + 1;
            matched += 1;
        }
    }
    Ok(Score {
        matched,
        total: sf.len() as u32,
    })
}
