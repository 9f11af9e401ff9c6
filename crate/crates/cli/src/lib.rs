//! `abbrx` command-line driver: `annotate`, `eval` and `validate`.
//!
//! Exit codes: 0 on success, 1 on bad input (arguments, files, formats),
//! 2 when the pipeline reports an internal invariant violation.

use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use abbrx_core::config::{
    load_config_file, load_discard_rules, load_lexicon, load_params, Lexicon, LexiconKind,
};
use abbrx_core::corpus::{load_gold_tsv, parse_biotext, validate_gold, GoldPair, ParseIssue};
use abbrx_core::evaluation::{compute_metrics, match_pairs, predictions};
use abbrx_core::io::{read_jsonl, read_plain_text, to_inline, to_standoff_json};
use abbrx_core::{
    DiscardRuleSet, Document, MatchPolicy, Params, Pipeline, PipelineError, Prepositions,
    PropagationConfig,
};
use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

#[derive(Debug, Parser)]
#[command(
    name = "abbrx",
    version,
    about = "Abbreviation definition extraction for biomedical text"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Annotate documents with long forms, short forms and coreferences.
    Annotate(AnnotateArgs),
    /// Score extracted pairs against a gold standard.
    Eval(EvalArgs),
    /// Check gold-standard files for structural and offset errors.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct PipelineArgs {
    /// Maximum words in the outer (non-bracketed) group.
    #[arg(long, value_name = "N")]
    max_outer_words: Option<String>,
    /// Maximum characters inside the brackets.
    #[arg(long, value_name = "N")]
    max_inner_chars: Option<String>,
    /// Maximum characters before the final word for the tail pattern.
    #[arg(long, value_name = "N")]
    max_outer_chars: Option<String>,
    /// Minimum character-match score, a decimal in [0, 1].
    #[arg(long, value_name = "T")]
    threshold: Option<String>,
    /// Disable coreference of later short-form mentions.
    #[arg(long)]
    no_coref: bool,
    /// Discard-rule file replacing the built-in rules.
    #[arg(long, value_name = "FILE")]
    discard_rules: Option<PathBuf>,
    /// Preposition list replacing the built-in one.
    #[arg(long, value_name = "FILE")]
    prepositions: Option<PathBuf>,
    /// Abbreviation dictionary (SF<TAB>LF per line); enables dictionary lookup.
    #[arg(long, value_name = "FILE")]
    dictionary: Option<PathBuf>,
    /// Comma-separated semantic types copied from long forms to short forms.
    #[arg(long, value_name = "LIST")]
    propagate_types: Option<String>,
    /// TOML parameter file; command-line flags take precedence.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutputFormat {
    Standoff,
    Inline,
}

#[derive(Debug, Args)]
struct AnnotateArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    #[arg(long, value_enum, default_value = "standoff")]
    format: OutputFormat,
    /// Write output here instead of standard output.
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
    /// Plain-text or .jsonl documents; standard input when omitted.
    inputs: Vec<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GoldFormat {
    Tsv,
    Biotext,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum PolicyArg {
    Text,
    Span,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[command(flatten)]
    pipeline: PipelineArgs,
    /// Gold-standard file.
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// `tsv` pairs refer to the input documents; `biotext` files carry both
    /// the text and the gold pairs, one document per non-empty line.
    #[arg(long, value_enum, default_value = "tsv")]
    gold_format: GoldFormat,
    #[arg(long, value_enum, default_value = "text")]
    policy: PolicyArg,
    #[arg(long, value_enum, default_value = "json")]
    report: ReportFormat,
    /// Documents the TSV gold pairs refer to.
    inputs: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Check this gold TSV against the input documents instead of parsing
    /// the inputs as inline-tagged files.
    #[arg(long, value_name = "FILE")]
    gold: Option<PathBuf>,
    /// Inline-tagged files, or documents when --gold is given.
    inputs: Vec<PathBuf>,
}

/// Runs the tool on real standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdin = std::io::stdin();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(
        args,
        &mut stdin.lock(),
        &mut stdout.lock(),
        &mut stderr.lock(),
    )
}

/// As [`run`] with injectable streams.
pub fn run_with<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(rendered.as_bytes())
            } else {
                stdout.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Annotate(a) => annotate(a, stdin, stdout),
        Command::Eval(a) => eval(a, stdout),
        Command::Validate(a) => validate(a, stdout, stderr),
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.chain().any(|c| c.is::<PipelineError>()) {
        2
    } else {
        1
    }
}

fn build_pipeline(args: &PipelineArgs, force_no_coref: bool) -> Result<Pipeline> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    if let Some(path) = &args.config {
        pairs.extend(load_config_file(path)?);
    }
    let flags = [
        ("maxOuterWords", &args.max_outer_words),
        ("maxInnerChars", &args.max_inner_chars),
        ("maxOuterChars", &args.max_outer_chars),
        ("threshold", &args.threshold),
    ];
    for (key, value) in flags {
        if let Some(v) = value {
            pairs.push((key.to_string(), v.clone()));
        }
    }
    if args.no_coref || force_no_coref {
        pairs.push(("coreferenceEnabled".into(), "false".into()));
    }
    if args.dictionary.is_some() {
        pairs.push(("dictionaryEnabled".into(), "true".into()));
    }
    let params: Params = load_params(&pairs)?;

    let rules = match &args.discard_rules {
        Some(path) => load_discard_rules(path)?,
        None => DiscardRuleSet::builtin(),
    };
    let prepositions = match &args.prepositions {
        Some(path) => match load_lexicon(path, LexiconKind::Prepositions)? {
            Lexicon::Prepositions(p) => p,
            Lexicon::Dictionary(_) => unreachable!("asked for prepositions"),
        },
        None => Prepositions::builtin(),
    };
    let dictionary = match &args.dictionary {
        Some(path) => match load_lexicon(path, LexiconKind::Dictionary)? {
            Lexicon::Dictionary(d) => Some(d),
            Lexicon::Prepositions(_) => unreachable!("asked for a dictionary"),
        },
        None => None,
    };
    let propagation = args
        .propagate_types
        .as_deref()
        .map(PropagationConfig::parse_list)
        .unwrap_or_default();
    Ok(Pipeline::new(
        params,
        rules,
        prepositions,
        propagation,
        dictionary,
    ))
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

/// `.jsonl` files hold many documents; anything else is one plain-text
/// document named after its file stem. No paths means standard input.
fn load_documents(inputs: &[PathBuf], stdin: &mut dyn Read) -> Result<Vec<Document>> {
    if inputs.is_empty() {
        let mut text = String::new();
        stdin
            .read_to_string(&mut text)
            .context("reading standard input")?;
        return Ok(vec![read_plain_text("stdin", &text)]);
    }
    let mut docs = Vec::new();
    for path in inputs {
        let text = read_text(path)?;
        if path.extension().is_some_and(|e| e == "jsonl") {
            docs.extend(read_jsonl(&text).with_context(|| format!("parsing {}", path.display()))?);
        } else {
            docs.push(read_plain_text(&file_stem(path), &text));
        }
    }
    Ok(docs)
}

fn annotate(args: AnnotateArgs, stdin: &mut dyn Read, stdout: &mut dyn Write) -> Result<()> {
    let pipeline = build_pipeline(&args.pipeline, false)?;
    let docs = load_documents(&args.inputs, stdin)?;
    let annotated: Vec<Document> = docs
        .into_par_iter()
        .map(|d| pipeline.process(d))
        .collect::<Result<_, _>>()?;

    let mut out = String::new();
    for doc in &annotated {
        match args.format {
            OutputFormat::Standoff => out.push_str(&to_standoff_json(doc)),
            OutputFormat::Inline => out.push_str(&to_inline(doc)),
        }
        out.push('\n');
    }
    match &args.output {
        Some(path) => {
            fs::write(path, out).with_context(|| format!("writing {}", path.display()))?
        }
        None => stdout.write_all(out.as_bytes())?,
    }
    Ok(())
}

/// Documents, gold pairs and per-document parse issues from a BioText file.
type BioTextCorpus = (Vec<Document>, Vec<GoldPair>, Vec<(String, ParseIssue)>);

/// One document per non-empty line, named `<stem>:<line>`.
fn biotext_documents(path: &Path) -> Result<BioTextCorpus> {
    let raw = read_text(path)?;
    let stem = file_stem(path);
    let mut docs = Vec::new();
    let mut gold = Vec::new();
    let mut issues = Vec::new();
    for (i, line) in raw
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
    {
        let id = format!("{stem}:{}", i + 1);
        let parsed = parse_biotext(&id, line);
        issues.extend(parsed.issues.into_iter().map(|issue| (id.clone(), issue)));
        gold.extend(parsed.pairs);
        docs.push(Document::new(id, parsed.clean_text));
    }
    Ok((docs, gold, issues))
}

fn eval(args: EvalArgs, stdout: &mut dyn Write) -> Result<()> {
    let pipeline = build_pipeline(&args.pipeline, true)?;
    let (docs, gold) = match args.gold_format {
        GoldFormat::Tsv => {
            if args.inputs.is_empty() {
                bail!("eval with a TSV gold file needs the documents it refers to");
            }
            let gold = load_gold_tsv(&args.gold)?;
            (load_documents(&args.inputs, &mut std::io::empty())?, gold)
        }
        GoldFormat::Biotext => {
            if !args.inputs.is_empty() {
                bail!("a BioText gold file carries its own text; drop the document arguments");
            }
            let (docs, gold, _) = biotext_documents(&args.gold)?;
            (docs, gold)
        }
    };
    let policy = match args.policy {
        PolicyArg::Text => MatchPolicy::Text,
        PolicyArg::Span => MatchPolicy::Span,
    };

    let processed = docs
        .into_par_iter()
        .map(|d| pipeline.process_full(d))
        .collect::<Result<Vec<_>, _>>()?;
    let predicted: Vec<GoldPair> = processed.iter().flat_map(predictions).collect();
    let report = compute_metrics(match_pairs(&predicted, &gold, policy)?);
    match args.report {
        ReportFormat::Json => writeln!(stdout, "{}", report.to_json())?,
        ReportFormat::Table => write!(stdout, "{}", report.to_table())?,
    }
    Ok(())
}

fn issue_line(doc_id: &str, issue: &ParseIssue) -> Result<String> {
    let mut value = serde_json::to_value(issue)?;
    value["doc_id"] = serde_json::Value::from(doc_id);
    Ok(value.to_string())
}

fn validate(args: ValidateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    if args.inputs.is_empty() {
        bail!("validate needs at least one input file");
    }
    let mut issues: Vec<(String, ParseIssue)> = Vec::new();
    match &args.gold {
        Some(gold) => {
            let pairs = load_gold_tsv(gold)?;
            let docs = load_documents(&args.inputs, &mut std::io::empty())?;
            let id = file_stem(gold);
            issues.extend(
                validate_gold(&pairs, &docs)
                    .into_iter()
                    .map(|i| (id.clone(), i)),
            );
        }
        None => {
            for path in &args.inputs {
                let id = file_stem(path);
                let parsed = parse_biotext(&id, &read_text(path)?);
                issues.extend(parsed.issues.into_iter().map(|i| (id.clone(), i)));
            }
        }
    }
    for (id, issue) in &issues {
        writeln!(stdout, "{}", issue_line(id, issue)?)?;
    }
    writeln!(stderr, "{} issue(s)", issues.len())?;
    Ok(())
}
