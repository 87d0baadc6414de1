//! The `mahanlp` command line.
//!
//! Results go to stdout as one JSON object per line (or plain text with
//! `--format plain`); diagnostics go to stderr. Exit codes: 0 success,
//! 1 bad input, 2 resource, network or model failure.
//!
//! Output records per subcommand:
//!
//! | subcommand | record |
//! |---|---|
//! | `clean` | `{"text"}` |
//! | `tokenize` | `{"tokens": [{"text","start","end"}]}` or `{"sentences": [...]}` |
//! | `sentiment`, `hate` | `{"label","score"}` |
//! | `ner` | `{"tokens": [{"text","start","end","label","score"}]}` |
//! | `autocomplete` | `{"words": [...]}` or, with `--complete`, `{"text"}` |
//! | `maskfill` | `{"predictions": [{"token_str","sequence","score"}]}` |
//! | `similarity` | `{"score"}` |
//! | `datasets list` | one descriptor per line |
//! | `datasets load` | one row per line, keyed by column name |
//! | `datasets clear` | `{"removed"}` |
//! | `models` | one model descriptor per line |
//!
//! When the text argument is `-`, every stdin line is one input and yields
//! one record; a failing line yields `{"error": {"kind", "message"}}` so
//! records stay aligned with input lines.

use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::datasets::{DatasetName, Split};
use crate::error::{Error, Result};
use crate::model_registry::{BackendConfig, Feature};
use crate::preprocess::{self, CleanPolicy, StopwordList};
use crate::runtime::Runtime;
use crate::tasks::{
    Autocomplete, HateAnalyzer, MaskFill, NerTagger, SentimentAnalyzer, SimilarityAnalyzer,
    TaskOptions,
};
use crate::tokenizer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "mahanlp", version, about = "Marathi text analysis toolkit")]
pub struct Cli {
    /// Model id or short name (`stub` selects the deterministic test backend)
    #[arg(long, global = true)]
    pub model: Option<String>,

    /// Run inference on a GPU; fails if none is available
    #[arg(long, global = true)]
    pub gpu: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Cache root, overrides MAHANLP_HOME
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Remove URLs, non-Devanagari words and stopwords
    Clean(CleanArgs),
    /// Split into words (default) or sentences
    Tokenize {
        #[arg(long)]
        sentences: bool,
        text: String,
    },
    /// Positive / negative / neutral sentiment
    Sentiment { text: String },
    /// Hate / non-hate classification
    Hate { text: String },
    /// Named-entity label per token
    Ner { text: String },
    /// Predict the next words, or complete the sentence
    Autocomplete {
        #[arg(short = 'n', long, default_value_t = 1)]
        n: usize,
        /// Complete the sentence with at most this many words
        #[arg(long, value_name = "MAX_WORDS")]
        complete: Option<usize>,
        text: String,
    },
    /// Fill the single [MASK] placeholder
    Maskfill {
        #[arg(short = 'k', long, default_value_t = MaskFill::DEFAULT_TOP_K)]
        k: usize,
        text: String,
    },
    /// Similarity of two sentences in [0, 1]; with `-`, stdin lines are `a<TAB>b`
    Similarity { a: String, b: Option<String> },
    /// List, load or clear the cached corpora
    Datasets {
        #[command(subcommand)]
        action: DatasetAction,
    },
    /// List registered models
    Models {
        #[arg(long)]
        feature: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct CleanArgs {
    #[arg(long)]
    pub urls: bool,
    #[arg(long)]
    pub stopwords: bool,
    #[arg(long)]
    pub non_devanagari: bool,
    #[arg(long)]
    pub whitespace: bool,
    /// Stopword file to use instead of the bundled list
    #[arg(long)]
    pub stopword_file: Option<PathBuf>,
    pub text: String,
}

#[derive(Debug, Subcommand)]
pub enum DatasetAction {
    List,
    Load {
        name: String,
        #[arg(long, default_value = "train")]
        split: String,
        /// Print at most this many rows
        #[arg(long)]
        limit: Option<usize>,
    },
    Clear {
        name: Option<String>,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
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
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let mut out = Output {
        format: cli.format,
        stdout,
        stderr,
    };
    match execute(&cli, stdin, &mut out) {
        Ok(code) => code,
        Err(e) => {
            out.diagnostic(&e);
            exit_code(&e)
        }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    if err.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_RESOURCE
    }
}

fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::Input(_) => "input",
        Error::Catalog { .. } => "catalog",
        Error::Resource { .. } => "resource",
        Error::Integrity { .. } => "integrity",
        Error::Fetch { .. } => "fetch",
        Error::Load { .. } => "load",
        Error::Capability(_) => "capability",
        Error::Io { .. } => "io",
    }
}

struct Output<'a> {
    format: Format,
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
}

impl Output<'_> {
    fn record(&mut self, json: &serde_json::Value, plain: &str) -> Result<()> {
        let line = match self.format {
            Format::Json => json.to_string(),
            Format::Plain => plain.to_string(),
        };
        writeln!(self.stdout, "{line}").map_err(|e| Error::io("<stdout>", e))
    }

    fn diagnostic(&mut self, err: &Error) {
        let _ = writeln!(self.stderr, "error: {err}");
    }

    fn error_record(&mut self, err: &Error) -> Result<()> {
        self.diagnostic(err);
        let json = json!({"error": {"kind": error_kind(err), "message": err.to_string()}});
        self.record(&json, &format!("error: {err}"))
    }
}

fn to_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("output types serialize")
}

/// A rendered result: JSON record plus its plain-text form.
type Rendered = (serde_json::Value, String);

/// Runs `f` over the text argument, or over each stdin line when it is `-`.
fn for_each_input(
    text: &str,
    stdin: &mut dyn BufRead,
    out: &mut Output<'_>,
    mut f: impl FnMut(&str) -> Result<Rendered>,
) -> Result<i32> {
    if text != "-" {
        let (json, plain) = f(text)?;
        out.record(&json, &plain)?;
        return Ok(EXIT_OK);
    }
    let mut code = EXIT_OK;
    for line in stdin.lines() {
        let line = line.map_err(|e| Error::io("<stdin>", e))?;
        match f(&line) {
            Ok((json, plain)) => out.record(&json, &plain)?,
            Err(e) => {
                out.error_record(&e)?;
                code = code.max(exit_code(&e));
            }
        }
    }
    Ok(code)
}

fn fmt_score(score: f64) -> String {
    format!("{score:.6}")
}

fn execute(cli: &Cli, stdin: &mut dyn BufRead, out: &mut Output<'_>) -> Result<i32> {
    let mut runtime = Runtime::from_env()?;
    if let Some(dir) = &cli.cache_dir {
        runtime = runtime.with_home(dir);
    }
    let options = TaskOptions {
        model_name: cli.model.clone(),
        config: BackendConfig {
            gpu_enabled: cli.gpu,
            ..BackendConfig::default()
        },
    };

    match &cli.command {
        Command::Clean(args) => {
            let loaded;
            let stopwords = match &args.stopword_file {
                Some(path) => {
                    loaded = StopwordList::from_path(path)?;
                    &loaded
                }
                None => StopwordList::builtin(),
            };
            let mut policy = CleanPolicy {
                remove_urls: args.urls,
                remove_stopwords: args.stopwords,
                remove_non_devanagari: args.non_devanagari,
                collapse_whitespace: args.whitespace,
            };
            if policy.is_identity() {
                policy = CleanPolicy::all();
            }
            for_each_input(&args.text, stdin, out, |t| {
                let cleaned = preprocess::clean(t, &policy, stopwords);
                Ok((json!({ "text": cleaned }), cleaned))
            })
        }
        Command::Tokenize { sentences, text } => for_each_input(text, stdin, out, |t| {
            if *sentences {
                let spans = tokenizer::sentence_tokenize(t);
                let plain = spans
                    .iter()
                    .map(|s| s.text.as_str())
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok((json!({ "sentences": spans }), plain))
            } else {
                let tokens = tokenizer::word_tokenize(t);
                let plain = tokens
                    .iter()
                    .map(|s| s.text.as_str())
                    .collect::<Vec<_>>()
                    .join(" ");
                Ok((json!({ "tokens": tokens }), plain))
            }
        }),
        Command::Sentiment { text } => {
            let task = SentimentAnalyzer::with_options(&runtime, &options)?;
            for_each_input(text, stdin, out, |t| {
                let p = task.get_sentiment(t)?;
                let plain = format!("{}\t{}", p.label, fmt_score(p.score));
                Ok((to_json(&p), plain))
            })
        }
        Command::Hate { text } => {
            let task = HateAnalyzer::with_options(&runtime, &options)?;
            for_each_input(text, stdin, out, |t| {
                let p = task.get_hate(t)?;
                let plain = format!("{}\t{}", p.label, fmt_score(p.score));
                Ok((to_json(&p), plain))
            })
        }
        Command::Ner { text } => {
            let task = NerTagger::with_options(&runtime, &options)?;
            for_each_input(text, stdin, out, |t| {
                let tagged = task.get_token_labels(t)?;
                let plain = tagged
                    .iter()
                    .map(|tt| format!("{}/{}", tt.token.text, tt.label))
                    .collect::<Vec<_>>()
                    .join(" ");
                Ok((json!({ "tokens": tagged }), plain))
            })
        }
        Command::Autocomplete { n, complete, text } => {
            let task = Autocomplete::with_options(&runtime, &options)?;
            for_each_input(text, stdin, out, |t| match complete {
                Some(max) => {
                    let completed = task.complete_sentence(t, *max)?;
                    Ok((json!({ "text": completed }), completed))
                }
                None => {
                    let words = task.next_word(t, *n)?;
                    let plain = words.join(" ");
                    Ok((json!({ "words": words }), plain))
                }
            })
        }
        Command::Maskfill { k, text } => {
            let task = MaskFill::with_options(&runtime, &options)?;
            for_each_input(text, stdin, out, |t| {
                let preds = task.predict_mask(t, *k)?;
                let plain = preds
                    .iter()
                    .map(|p| format!("{}\t{}\t{}", p.token_str, fmt_score(p.score), p.sequence))
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok((json!({ "predictions": preds }), plain))
            })
        }
        Command::Similarity { a, b } => {
            let task = SimilarityAnalyzer::with_options(&runtime, &options)?;
            let score = |x: &str, y: &str| -> Result<Rendered> {
                let s = task.get_similarity_score(x, y)?;
                Ok((json!({ "score": s }), fmt_score(s)))
            };
            match b {
                Some(b) => for_each_input(a, stdin, out, |x| score(x, b)),
                None if a == "-" => for_each_input(a, stdin, out, |line| {
                    let (x, y) = line.split_once('\t').ok_or_else(|| {
                        Error::Input("expected two tab-separated sentences".into())
                    })?;
                    score(x, y)
                }),
                None => Err(Error::Input(
                    "similarity needs two sentences, or `-` to read `a<TAB>b` lines".into(),
                )),
            }
        }
        Command::Datasets { action } => {
            let store = runtime.datasets();
            match action {
                DatasetAction::List => {
                    for d in store.catalog().entries() {
                        let splits: Vec<_> = d.splits.iter().map(|s| s.split.as_str()).collect();
                        out.record(&to_json(d), &format!("{}\t{}", d.name, splits.join(",")))?;
                    }
                }
                DatasetAction::Load { name, split, limit } => {
                    let name: DatasetName = name.parse()?;
                    let split: Split = split.parse()?;
                    let table = store.load(name, split)?;
                    for record in table.records().take(limit.unwrap_or(usize::MAX)) {
                        let plain = record
                            .values()
                            .map(|v| match v {
                                serde_json::Value::String(s) => s.clone(),
                                other => other.to_string(),
                            })
                            .collect::<Vec<_>>()
                            .join("\t");
                        out.record(&serde_json::Value::Object(record), &plain)?;
                    }
                }
                DatasetAction::Clear { name } => {
                    let name = name.as_deref().map(str::parse::<DatasetName>).transpose()?;
                    let removed = store.clear_cache(name)?;
                    out.record(&json!({ "removed": removed }), &removed.to_string())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Models { feature } => {
            let features = match feature {
                Some(f) => vec![f.parse::<Feature>()?],
                None => Feature::ALL.to_vec(),
            };
            for f in features {
                for d in runtime.registry().list_models(f) {
                    let plain = format!(
                        "{}\t{}\t{}{}",
                        d.feature,
                        d.model_id,
                        d.backend_kind.as_str(),
                        if d.is_default { "\tdefault" } else { "" }
                    );
                    out.record(&to_json(&d), &plain)?;
                }
            }
            Ok(EXIT_OK)
        }
    }
}
