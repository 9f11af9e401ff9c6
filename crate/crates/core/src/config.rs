//! Runtime parameters, discard rules and word lists.
//!
//! Everything here is immutable once loaded, so a single [`Params`] /
//! [`DiscardRuleSet`] / [`Prepositions`] can be shared by any number of
//! document-processing tasks.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use indexmap::IndexMap;
use num_rational::Ratio;
use regex::Regex;

const DEFAULT_DISCARD_RULES: &str = include_str!("../data/discard_rules.txt");
const DEFAULT_PREPOSITIONS: &str = include_str!("../data/prepositions.txt");

pub const DEFAULT_MAX_OUTER_WORDS: usize = 10;
pub const DEFAULT_MAX_INNER_CHARS: usize = 40;
/// Characters allowed per long-form word when deriving `max_outer_chars`.
pub const OUTER_CHARS_PER_WORD: usize = 4;

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown parameter `{0}`")]
    UnknownKey(String),
    #[error("invalid value `{value}` for `{key}`")]
    InvalidValue { key: String, value: String },
    #[error("threshold out of range: {0} (expected 0 < threshold <= 1)")]
    ThresholdOutOfRange(String),
    #[error("`{0}` must be a positive integer")]
    NonPositive(String),
    #[error("cannot read {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: pattern does not compile: {source}")]
    RuleCompile {
        line: usize,
        #[source]
        source: regex::Error,
    },
    #[error("line {line}: expected `SHORT<TAB>LONG`")]
    MissingTab { line: usize },
    #[error("line {line}: empty entry")]
    EmptyEntry { line: usize },
    #[error("duplicate dictionary short form `{0}`")]
    DuplicateEntry(String),
    #[error("config file: {0}")]
    ConfigFile(String),
}

/// Acceptance threshold for the character-match score, kept as an exact
/// rational so that `4/5 >= 0.80` compares exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Threshold(Ratio<u64>);

impl Threshold {
    pub fn new(value: Ratio<u64>) -> Option<Self> {
        if value > Ratio::from_integer(0) && value <= Ratio::from_integer(1) {
            Some(Threshold(value))
        } else {
            None
        }
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.0
    }

    pub fn as_f64(&self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64
    }
}

impl Default for Threshold {
    fn default() -> Self {
        Threshold(Ratio::new(4, 5))
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_f64())
    }
}

impl FromStr for Threshold {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_decimal(s.trim()).ok_or_else(|| ConfigError::InvalidValue {
            key: "threshold".into(),
            value: s.into(),
        })?;
        Threshold::new(value).ok_or_else(|| ConfigError::ThresholdOutOfRange(s.into()))
    }
}

/// Parses a plain non-negative decimal ("0.8", "1", ".75") into an exact ratio.
fn parse_decimal(s: &str) -> Option<Ratio<u64>> {
    let (int_part, frac_part) = match s.split_once('.') {
        Some((i, f)) => (i, f),
        None => (s, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
        || frac_part.len() > 18
    {
        return None;
    }
    let int: u64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let denom = 10u64.checked_pow(frac_part.len() as u32)?;
    let frac: u64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let numer = int.checked_mul(denom)?.checked_add(frac)?;
    Some(Ratio::new(numer, denom))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    /// Maximum number of words in a head-pattern long form.
    pub max_outer_words: usize,
    /// Maximum number of characters in the bracketed group.
    pub max_inner_chars: usize,
    /// Maximum number of characters preceding the final word of a
    /// tail-pattern long form.
    pub max_outer_chars: usize,
    pub threshold: Threshold,
    pub coreference_enabled: bool,
    pub dictionary_enabled: bool,
}

impl Default for Params {
    fn default() -> Self {
        Params {
            max_outer_words: DEFAULT_MAX_OUTER_WORDS,
            max_inner_chars: DEFAULT_MAX_INNER_CHARS,
            max_outer_chars: DEFAULT_MAX_OUTER_WORDS * OUTER_CHARS_PER_WORD,
            threshold: Threshold::default(),
            coreference_enabled: true,
            dictionary_enabled: false,
        }
    }
}

/// Recognised parameter keys, in the camelCase form used by config files.
pub const PARAM_KEYS: [&str; 6] = [
    "maxOuterWords",
    "maxInnerChars",
    "maxOuterChars",
    "threshold",
    "coreferenceEnabled",
    "dictionaryEnabled",
];

/// Builds [`Params`] from key/value pairs. Later pairs override earlier ones,
/// so layering a config file under CLI flags is a matter of concatenation.
pub fn load_params<K, V>(args: &[(K, V)]) -> Result<Params, ConfigError>
where
    K: AsRef<str>,
    V: AsRef<str>,
{
    let mut params = Params::default();
    let mut outer_chars_given = false;

    for (key, value) in args {
        let (key, value) = (key.as_ref(), value.as_ref().trim());
        match key {
            "maxOuterWords" => params.max_outer_words = parse_positive(key, value)?,
            "maxInnerChars" => params.max_inner_chars = parse_positive(key, value)?,
            "maxOuterChars" => {
                params.max_outer_chars = parse_positive(key, value)?;
                outer_chars_given = true;
            }
            "threshold" => params.threshold = value.parse()?,
            "coreferenceEnabled" => params.coreference_enabled = parse_bool(key, value)?,
            "dictionaryEnabled" => params.dictionary_enabled = parse_bool(key, value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
    }

    if !outer_chars_given {
        params.max_outer_chars = params
            .max_outer_words
            .checked_mul(OUTER_CHARS_PER_WORD)
            .ok_or_else(|| ConfigError::InvalidValue {
                key: "maxOuterWords".into(),
                value: params.max_outer_words.to_string(),
            })?;
    }
    Ok(params)
}

fn parse_positive(key: &str, value: &str) -> Result<usize, ConfigError> {
    if let Some(stripped) = value.strip_prefix('-') {
        if stripped.parse::<u64>().is_ok() {
            return Err(ConfigError::NonPositive(key.into()));
        }
    }
    match value.parse::<usize>() {
        Ok(0) => Err(ConfigError::NonPositive(key.into())),
        Ok(n) => Ok(n),
        Err(_) => Err(ConfigError::InvalidValue {
            key: key.into(),
            value: value.into(),
        }),
    }
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(ConfigError::InvalidValue {
            key: key.into(),
            value: value.into(),
        }),
    }
}

/// Reads a TOML parameter file (`threshold = 0.75`, `maxOuterWords = 8`, ...)
/// into key/value pairs suitable for [`load_params`].
pub fn load_config_file(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let raw = read_file(path)?;
    let table: toml::Table = raw
        .parse()
        .map_err(|e: toml::de::Error| ConfigError::ConfigFile(e.to_string()))?;
    let mut pairs = Vec::with_capacity(table.len());
    for (key, value) in table {
        let value = match value {
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            toml::Value::Float(f) => f.to_string(),
            toml::Value::Boolean(b) => b.to_string(),
            other => {
                return Err(ConfigError::InvalidValue {
                    key,
                    value: other.to_string(),
                })
            }
        };
        pairs.push((key, value));
    }
    Ok(pairs)
}

fn read_file(path: &Path) -> Result<String, ConfigError> {
    fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone)]
pub struct DiscardRule {
    pattern: Regex,
    pub description: String,
}

impl DiscardRule {
    pub fn pattern_text(&self) -> &str {
        self.pattern.as_str()
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.pattern.is_match(text)
    }
}

impl PartialEq for DiscardRule {
    fn eq(&self, other: &Self) -> bool {
        self.pattern_text() == other.pattern_text() && self.description == other.description
    }
}

/// Ordered short-form discard conditions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DiscardRuleSet {
    pub rules: Vec<DiscardRule>,
}

impl DiscardRuleSet {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        let mut rules = Vec::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let (pattern, description) = match line.split_once('\t') {
                Some((p, d)) => (p, d.trim()),
                None => (line, ""),
            };
            let pattern = Regex::new(pattern).map_err(|source| ConfigError::RuleCompile {
                line: idx + 1,
                source,
            })?;
            rules.push(DiscardRule {
                pattern,
                description: description.to_string(),
            });
        }
        Ok(DiscardRuleSet { rules })
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_DISCARD_RULES).expect("packaged discard rules compile")
    }

    /// Serializes back into the rule-file format.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for rule in &self.rules {
            out.push_str(rule.pattern_text());
            if !rule.description.is_empty() {
                out.push('\t');
                out.push_str(&rule.description);
            }
            out.push('\n');
        }
        out
    }

    /// First rule matching `text`, if any.
    pub fn first_match(&self, text: &str) -> Option<&DiscardRule> {
        self.rules.iter().find(|r| r.is_match(text))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }
}

pub fn load_discard_rules(path: &Path) -> Result<DiscardRuleSet, ConfigError> {
    DiscardRuleSet::parse(&read_file(path)?)
}

/// Lowercased preposition list. Multi-word entries ("of the") are matched as
/// word sequences.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Prepositions {
    words: BTreeSet<String>,
}

impl Prepositions {
    pub fn parse(source: &str) -> Self {
        let words = source
            .lines()
            .map(|l| l.split_whitespace().collect::<Vec<_>>().join(" "))
            .filter(|l| !l.is_empty())
            .map(|l| l.to_lowercase())
            .collect();
        Prepositions { words }
    }

    pub fn builtin() -> Self {
        Self::parse(DEFAULT_PREPOSITIONS)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(&word.to_lowercase())
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Entries split into their constituent words.
    pub fn word_sequences(&self) -> Vec<Vec<&str>> {
        self.words.iter().map(|w| w.split(' ').collect()).collect()
    }
}

/// Short form to long form lookup table, in file order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dictionary {
    entries: IndexMap<String, String>,
}

impl Dictionary {
    pub fn parse(source: &str) -> Result<Self, ConfigError> {
        let mut entries = IndexMap::new();
        for (idx, line) in source.lines().enumerate() {
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let line_no = idx + 1;
            let (sf, lf) = line
                .split_once('\t')
                .ok_or(ConfigError::MissingTab { line: line_no })?;
            let (sf, lf) = (sf.trim(), lf.trim());
            if sf.is_empty() || lf.is_empty() {
                return Err(ConfigError::EmptyEntry { line: line_no });
            }
            if entries.insert(sf.to_string(), lf.to_string()).is_some() {
                return Err(ConfigError::DuplicateEntry(sf.to_string()));
            }
        }
        Ok(Dictionary { entries })
    }

    pub fn get(&self, sf: &str) -> Option<&str> {
        self.entries.get(sf).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LexiconKind {
    Prepositions,
    Dictionary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Lexicon {
    Prepositions(Prepositions),
    Dictionary(Dictionary),
}

pub fn load_lexicon(path: &Path, kind: LexiconKind) -> Result<Lexicon, ConfigError> {
    let source = read_file(path)?;
    Ok(match kind {
        LexiconKind::Prepositions => Lexicon::Prepositions(Prepositions::parse(&source)),
        LexiconKind::Dictionary => Lexicon::Dictionary(Dictionary::parse(&source)?),
    })
}
