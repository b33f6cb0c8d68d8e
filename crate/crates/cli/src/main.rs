//! `q4eda`: convert selections to search queries, retrieve documents,
//! rank suggestions, run the stability harness, or serve the HTTP API.
//!
//! Exit codes: 0 success, 1 runtime or data error, 2 usage error.

use std::io::Write;
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use q4eda_core::config::{BackendKind, Config};
use q4eda_core::data::{load_corpus, Selection, WeightProfile, YearRange};
use q4eda_core::search::Index;
use q4eda_core::stability::run_stability;
use q4eda_core::suggest::{suggest_from_pattern, PatternMethod, TextMode};
use q4eda_core::text::Tokenizer;
use q4eda_core::{Engine, Execution};
use serde_json::json;

#[derive(Parser)]
#[command(name = "q4eda", version, about = "Visual selections to weighted search queries")]
struct Cli {
    /// Config file; defaults to $Q4EDA_CONFIG, then ./q4eda.json.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Overrides the configured search backend.
    #[arg(long, global = true, value_enum)]
    backend: Option<Backend>,

    /// Run everything on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the query for a selection.
    Convert {
        #[command(flatten)]
        selection: SelectionArgs,
        #[arg(long, value_enum, default_value_t = Format::Es)]
        format: Format,
    },
    /// Retrieve documents for a selection, one JSON hit per line.
    Query {
        #[command(flatten)]
        selection: SelectionArgs,
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Rank datasets and keys for a corpus document or a selected pattern.
    Suggest {
        /// Suggest from this document's text.
        #[arg(long, conflicts_with_all = ["dataset", "key", "from", "to"])]
        doc: Option<String>,
        #[arg(long, default_value_t = TextMode::Direct)]
        mode: TextMode,
        #[arg(long, requires_all = ["key", "from", "to"])]
        dataset: Option<String>,
        #[arg(long)]
        key: Option<String>,
        #[arg(long)]
        from: Option<i32>,
        #[arg(long)]
        to: Option<i32>,
        #[arg(long, default_value_t = PatternMethod::Pearson)]
        method: PatternMethod,
    },
    /// Run the stability harness over every loaded series.
    Stability {
        /// Where to write the JSON report.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        top_n: Option<usize>,
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        top_k: Option<usize>,
    },
    /// Build the inverted index and report its size.
    Index {
        /// Corpus to index instead of the configured one.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Serve the HTTP API until interrupted.
    Serve {
        #[arg(long)]
        bind: Option<SocketAddr>,
    },
}

#[derive(Args)]
struct SelectionArgs {
    /// Dataset name; repeat for several.
    #[arg(long = "dataset", required = true)]
    datasets: Vec<String>,
    /// Key (country or keyword); repeat for several.
    #[arg(long = "key", required = true)]
    keys: Vec<String>,
    #[arg(long)]
    from: i32,
    #[arg(long)]
    to: i32,
    #[arg(long, value_enum, default_value_t = Profile::Uniform)]
    profile: Profile,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Inner,
    Es,
}

#[derive(Clone, Copy, ValueEnum)]
enum Profile {
    Uniform,
    Gaussian,
}

#[derive(Clone, Copy, ValueEnum)]
enum Backend {
    Local,
    Es,
}

impl SelectionArgs {
    fn selection(&self) -> Selection {
        Selection {
            dataset_names: self.datasets.clone(),
            keys: self.keys.clone(),
            year_ranges: vec![YearRange { start: self.from, end: self.to }],
            profile: match self.profile {
                Profile::Uniform => WeightProfile::Uniform,
                Profile::Gaussian => WeightProfile::Gaussian,
            },
        }
    }
}

type Failure = Box<dyn std::error::Error>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    check_ranges(&cli.command);
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

/// Inverted year ranges are usage errors, reported like clap's own.
fn check_ranges(command: &Command) {
    let range = match command {
        Command::Convert { selection, .. } | Command::Query { selection, .. } => {
            Some((selection.from, selection.to))
        }
        Command::Suggest { from: Some(f), to: Some(t), .. } => Some((*f, *t)),
        _ => None,
    };
    if let Some((from, to)) = range.filter(|(f, t)| f > t) {
        Cli::command()
            .error(ErrorKind::ValueValidation, format!("--from {from} is after --to {to}"))
            .exit();
    }
}

fn load_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = Config::load(&Config::locate(cli.config.as_deref()))?;
    config.paths.check_exist()?;
    if let Some(b) = cli.backend {
        config.backend = match b {
            Backend::Local => BackendKind::Local,
            Backend::Es => BackendKind::Es,
        };
    }
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let mut out = std::io::stdout().lock();
    match &cli.command {
        Command::Convert { selection, format } => {
            let engine = Engine::load(load_config(&cli)?)?;
            let c = engine.convert(&selection.selection())?;
            let text = match format {
                Format::Inner => c.ir_text,
                Format::Es => c.es_query,
            };
            writeln!(out, "{text}")?;
        }
        Command::Query { selection, top_k } => {
            let engine = Engine::load(load_config(&cli)?)?;
            let selection = selection.selection();
            let conversion = engine.convert(&selection)?;
            let hits = engine.search(&conversion.expr, top_k.unwrap_or(engine.config.top_k))?;
            for hit in hits {
                writeln!(out, "{}", serde_json::to_string(&hit)?)?;
            }
        }
        Command::Suggest { doc, mode, dataset, key, from, to, method } => {
            let engine = Engine::load(load_config(&cli)?)?;
            let (datasets, keys) = match (doc, dataset, key, from, to) {
                (Some(id), ..) => {
                    let doc = engine.document(id).ok_or_else(|| format!("unknown document {id:?}"))?;
                    engine.suggest_text(doc, *mode)
                }
                (None, Some(d), Some(k), Some(f), Some(t)) => {
                    let (keys, datasets) = suggest_from_pattern(
                        &engine.collection,
                        d,
                        k,
                        YearRange { start: *f, end: *t },
                        *method,
                        exec,
                    )?;
                    (datasets, keys)
                }
                _ => Cli::command()
                    .error(ErrorKind::MissingRequiredArgument, "give --doc, or --dataset --key --from --to")
                    .exit(),
            };
            writeln!(out, "{}", json!({ "datasets": datasets, "keys": keys }))?;
        }
        Command::Stability { out: path, top_n, window, top_k } => {
            let engine = Engine::load(load_config(&cli)?)?;
            let mut config = engine.config.stability.clone();
            config.top_n = top_n.unwrap_or(config.top_n);
            config.window = window.unwrap_or(config.window);
            config.top_k = top_k.unwrap_or(config.top_k);
            config.validate()?;
            let report = run_stability(&engine, engine.backend(), &config, exec)?;
            std::fs::write(path, serde_json::to_string_pretty(&report)?)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            eprint!("{}", report.to_table());
        }
        Command::Index { corpus } => {
            let path = match corpus {
                Some(p) => p.clone(),
                None => load_config(&cli)?.paths.corpus,
            };
            let docs = load_corpus(&path)?;
            let index = Index::build(&docs, Tokenizer::default());
            writeln!(out, "{} documents, {} terms", docs.len(), index.term_count())?;
        }
        Command::Serve { bind } => {
            let config = load_config(&cli)?;
            let addr = match bind {
                Some(a) => *a,
                None => config.bind.parse().map_err(|e| format!("bind {:?}: {e}", config.bind))?,
            };
            let engine = Engine::load(config)?;
            let rt = tokio::runtime::Runtime::new()?;
            rt.block_on(q4eda_service::serve(engine, addr, |a| eprintln!("listening on http://{a}")))?;
        }
    }
    Ok(())
}
