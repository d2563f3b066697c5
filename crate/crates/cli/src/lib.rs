//! The `graceful` command line: argument parsing, document I/O and exit codes.
//!
//! Exit codes: 0 on success, 2 for bad input or a provably impossible
//! request, 3 when a search budget runs out, 4 when a construction breaks its
//! own correctness argument. Failures print `{"error": {...}}` on stderr.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use graceful_core::attach::attach_path;
use graceful_core::cache::PathCache;
use graceful_core::compose::{amalgamate, label_three_long_legs, AmalgamationInput};
use graceful_core::document::TreeDocument;
use graceful_core::doubling::label_doubling_spider;
use graceful_core::error::{Error, ErrorKind, Result};
use graceful_core::model::{
    alpha_index, is_graceful, AlphaLabeling, ConstructionTrace, Labeling, Tree,
};
use graceful_core::oracle::{count_graceful, find_graceful, SearchOptions, SearchReport};
use graceful_core::path::{
    enumerate_alpha_paths, zigzag_alpha_path, PathProvider, DEFAULT_NODE_BUDGET,
};
use graceful_core::short_legs::{formula_with_one_two_leg, label_short_leg_spider, ShortLegSpec};
use serde_json::{json, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Dot,
}

/// Settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    /// Falls back to the `GRACEFUL_PATH_CACHE` environment variable.
    pub cache_path: Option<PathBuf>,
    pub node_budget: u64,
    pub output_format: OutputFormat,
    pub trace: bool,
}

#[derive(Debug, Parser)]
#[command(
    name = "graceful",
    version,
    about = "Graceful labelings of spiders and related trees"
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalArgs {
    /// Search node budget for path searches and the oracle.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET,
          value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    /// Print the construction trace as JSON on stderr.
    #[arg(long, global = true)]
    trace: bool,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// Path-labeling cache file; overrides GRACEFUL_PATH_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Label a spider.
    #[command(subcommand)]
    Spider(SpiderCommand),
    /// Attach a path to a vertex of a gracefully labeled tree.
    Attach {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
        #[arg(long)]
        path_len: usize,
    },
    /// Join an α-labeled tree and a graceful tree at one vertex.
    Amalgamate {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        u: usize,
        #[arg(long)]
        graceful: PathBuf,
        #[arg(long)]
        v: usize,
    },
    /// Label a path.
    #[command(subcommand)]
    Path(PathCommand),
    /// Exhaustive search for graceful labelings.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        /// Count every labeling instead of stopping at the first.
        #[arg(long)]
        count: bool,
        /// Pin a vertex label, as `vertex=label`; repeatable.
        #[arg(long, value_parser = parse_fix)]
        fix: Vec<(usize, usize)>,
        /// Only accept α-labelings.
        #[arg(long)]
        alpha: bool,
        /// Split the search across threads.
        #[arg(long)]
        parallel: bool,
    },
    /// Check a labeled document.
    Verify {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Re-emit a document in canonical JSON or DOT.
    Export {
        #[arg(long)]
        graph: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum SpiderCommand {
    /// Legs that at least double in length.
    Doubling {
        #[arg(long, value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
    /// One leg of any length plus legs of length 2 and 1; the center gets 0.
    Short {
        #[arg(long)]
        long: usize,
        #[arg(long, default_value_t = 0)]
        two: usize,
        #[arg(long, default_value_t = 0)]
        one: usize,
        /// Evaluate the closed form with a single length-2 leg and report
        /// whether it is graceful, instead of labeling the spider.
        #[arg(long)]
        closed_form: bool,
    },
    /// At most three legs of length 3 or more.
    ThreeLong {
        #[arg(long, value_delimiter = ',', required = true)]
        legs: Vec<usize>,
    },
}

#[derive(Debug, Subcommand)]
enum PathCommand {
    /// α-labeling with an endpoint label or a vertex labeled 0.
    Alpha {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "zero_at", required_unless_present = "zero_at")]
        end_label: Option<usize>,
        #[arg(long)]
        zero_at: Option<usize>,
        /// Required index, for end-label requests.
        #[arg(long, requires = "end_label")]
        index: Option<usize>,
    },
    /// Graceful labeling with the vertex at a position labeled 0.
    Graceful {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        zero_at: usize,
    },
    /// The zigzag labeling 0, n-1, 1, n-2, ...
    Zigzag {
        #[arg(long)]
        n: usize,
    },
    /// Every α-labeling of a short path.
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

fn parse_fix(s: &str) -> std::result::Result<(usize, usize), String> {
    let (v, l) = s
        .split_once('=')
        .ok_or_else(|| format!("expected vertex=label, got {s:?}"))?;
    let v = v
        .trim()
        .parse()
        .map_err(|e| format!("bad vertex in {s:?}: {e}"))?;
    let l = l
        .trim()
        .parse()
        .map_err(|e| format!("bad label in {s:?}: {e}"))?;
    Ok((v, l))
}

/// What a successful command prints.
enum Output {
    Document(TreeDocument),
    Report(Value),
}

struct Success {
    output: Output,
    exit: i32,
    trace: Option<ConstructionTrace>,
}

impl Success {
    fn document(doc: TreeDocument) -> Self {
        Success {
            output: Output::Document(doc),
            exit: EXIT_OK,
            trace: None,
        }
    }

    fn report(value: Value) -> Self {
        Success {
            output: Output::Report(value),
            exit: EXIT_OK,
            trace: None,
        }
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            if matches!(e.kind(), K::DisplayHelp | K::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = writeln!(err, "{}", error_object("validation", &e.to_string(), None));
            return EXIT_INPUT;
        }
    };
    let config = CliConfig {
        cache_path: cli.global.cache,
        node_budget: cli.global.budget,
        output_format: cli.global.format,
        trace: cli.global.trace,
    };
    match execute(cli.command, &config) {
        Ok(success) => {
            if config.trace {
                if let Some(trace) = &success.trace {
                    let _ = writeln!(err, "{}", json!({ "trace": trace.steps() }));
                }
            }
            let text = match (&success.output, config.output_format) {
                (Output::Document(doc), OutputFormat::Dot) => doc.to_dot(),
                (Output::Document(doc), OutputFormat::Json) => doc.to_json(),
                (Output::Report(value), _) => format!("{value:#}\n"),
            };
            let _ = out.write_all(text.as_bytes());
            success.exit
        }
        Err(e) => {
            let trace = match &e {
                Error::Internal { trace: Some(t), .. } => {
                    Some(serde_json::to_value(t.steps()).unwrap_or(Value::Null))
                }
                _ => None,
            };
            let _ = writeln!(
                err,
                "{}",
                error_object(e.kind().as_str(), &e.to_string(), trace)
            );
            exit_code(e.kind())
        }
    }
}

pub fn exit_code(kind: ErrorKind) -> i32 {
    match kind {
        ErrorKind::Validation | ErrorKind::Infeasible | ErrorKind::Io => EXIT_INPUT,
        ErrorKind::Resource => EXIT_RESOURCE,
        ErrorKind::Internal => EXIT_INTERNAL,
    }
}

fn error_object(kind: &str, message: &str, trace: Option<Value>) -> Value {
    let mut error = json!({ "kind": kind, "message": message.trim_end() });
    if let Some(trace) = trace {
        error["trace"] = trace;
    }
    json!({ "error": error })
}

fn provider(config: &CliConfig) -> Result<PathProvider> {
    let provider = match &config.cache_path {
        Some(path) => PathProvider::new().with_cache(PathCache::open(path)?),
        None => PathProvider::from_env()?,
    };
    Ok(provider.with_budget(config.node_budget))
}

fn read_document(path: &Path) -> Result<TreeDocument> {
    let text = std::fs::read_to_string(path)?;
    TreeDocument::parse(&text)
}

fn required_labeling(doc: &TreeDocument, path: &Path) -> Result<Labeling> {
    doc.labeling()?
        .ok_or_else(|| Error::Validation(format!("{} has no labels", path.display())))
}

fn execute(command: Command, config: &CliConfig) -> Result<Success> {
    match command {
        Command::Spider(SpiderCommand::Doubling { legs }) => {
            let (spider, labeling, trace) = label_doubling_spider(&legs, &provider(config)?)?;
            Ok(Success {
                trace: Some(trace),
                ..Success::document(TreeDocument::from_spider(&spider, Some(&labeling)))
            })
        }
        Command::Spider(SpiderCommand::Short {
            long,
            two,
            one,
            closed_form,
        }) => {
            if closed_form {
                if two != 1 || one != 0 {
                    return Err(Error::Validation(
                        "--closed-form evaluates the spider with exactly one length-2 leg: use --two 1 --one 0".into(),
                    ));
                }
                let experiment = formula_with_one_two_leg(long)?;
                return Ok(Success::report(serde_json::to_value(experiment)?));
            }
            let spec = ShortLegSpec::new(long, two, one)?;
            let (spider, labeling) = label_short_leg_spider(spec, &provider(config)?)?;
            Ok(Success::document(TreeDocument::from_spider(
                &spider,
                Some(&labeling),
            )))
        }
        Command::Spider(SpiderCommand::ThreeLong { legs }) => {
            let (spider, labeling) = label_three_long_legs(&legs, &provider(config)?)?;
            Ok(Success::document(TreeDocument::from_spider(
                &spider,
                Some(&labeling),
            )))
        }
        Command::Attach {
            graph,
            vertex,
            path_len,
        } => {
            let doc = read_document(&graph)?;
            let tree = doc.tree()?;
            let labeling = required_labeling(&doc, &graph)?;
            let r = attach_path(&tree, &labeling, vertex, path_len, &provider(config)?)?;
            let mut trace = ConstructionTrace::new();
            trace.push(
                "attach",
                [
                    ("vertex", vertex as i64),
                    ("path_len", path_len as i64),
                    ("shift", r.shift as i64),
                    ("bridge_label", r.bridge_label as i64),
                ],
                r.tree.edge_count(),
            )?;
            Ok(Success {
                trace: Some(trace),
                ..Success::document(TreeDocument::from_tree(&r.tree, Some(&r.labeling)))
            })
        }
        Command::Amalgamate {
            alpha,
            u,
            graceful,
            v,
        } => {
            let g_doc = read_document(&alpha)?;
            let g_tree = g_doc.tree()?;
            let g_labeling = AlphaLabeling::new(&g_tree, required_labeling(&g_doc, &alpha)?)?;
            let h_doc = read_document(&graceful)?;
            let h_tree = h_doc.tree()?;
            let h_labeling = required_labeling(&h_doc, &graceful)?;
            let r = amalgamate(&AmalgamationInput {
                g_tree,
                g_labeling,
                u,
                h_tree,
                h_labeling,
                v,
            })?;
            Ok(Success::document(TreeDocument::from_tree(
                &r.tree,
                Some(&r.labeling),
            )))
        }
        Command::Path(cmd) => path_command(cmd, config),
        Command::Oracle {
            graph,
            count,
            fix,
            alpha,
            parallel,
        } => {
            let doc = read_document(&graph)?;
            let tree = doc.tree()?;
            let mut fixed = BTreeMap::new();
            for (v, l) in fix {
                if fixed.insert(v, l).is_some() {
                    return Err(Error::Validation(format!("vertex {v} is fixed twice")));
                }
            }
            let options = SearchOptions {
                budget: config.node_budget,
                alpha,
                parallel,
            };
            let report = if count {
                count_graceful(&tree, &fixed, options)?
            } else {
                find_graceful(&tree, &fixed, options)?
            };
            Ok(oracle_success(&report))
        }
        Command::Verify { graph } => {
            let doc = read_document(&graph)?;
            let tree = doc.tree()?;
            let labeling = required_labeling(&doc, &graph)?;
            let graceful = is_graceful(&tree, &labeling)?;
            let alpha = if graceful {
                alpha_index(&tree, &labeling)?
            } else {
                None
            };
            Ok(Success::report(
                json!({ "graceful": graceful, "alpha_index": alpha }),
            ))
        }
        Command::Export { graph } => {
            let doc = read_document(&graph)?;
            doc.labeling()?;
            doc.spider()?;
            Ok(Success::document(doc.canonical()?))
        }
    }
}

fn path_command(cmd: PathCommand, config: &CliConfig) -> Result<Success> {
    let labeled_path = |labeling: &Labeling| -> Result<Success> {
        let tree = Tree::path(labeling.len())?;
        Ok(Success::document(TreeDocument::from_tree(
            &tree,
            Some(labeling),
        )))
    };
    match cmd {
        PathCommand::Alpha {
            n,
            end_label,
            zero_at,
            index,
        } => {
            let provider = provider(config)?;
            let al = match (end_label, zero_at) {
                (Some(e), _) => provider.alpha_path_end_label(n, e, index)?,
                (None, Some(p)) => provider.alpha_path_zero_at(n, p)?,
                (None, None) => {
                    return Err(Error::Validation("give --end-label or --zero-at".into()))
                }
            };
            labeled_path(al.labeling())
        }
        PathCommand::Graceful { n, zero_at } => {
            labeled_path(&provider(config)?.graceful_path_zero_at(n, zero_at)?)
        }
        PathCommand::Zigzag { n } => labeled_path(zigzag_alpha_path(n)?.labeling()),
        PathCommand::Enumerate { n } => {
            let all = enumerate_alpha_paths(n)?;
            let labelings: Vec<Value> = all
                .iter()
                .map(|al| json!({ "alpha": al.alpha(), "labels": al.labeling() }))
                .collect();
            Ok(Success::report(
                json!({ "n": n, "count": all.len(), "labelings": labelings }),
            ))
        }
    }
}

/// A search that stopped on its budget without an answer exits as a
/// resource failure, but still reports what it explored.
fn oracle_success(report: &SearchReport) -> Success {
    let mut value = json!({
        "found": report.found.is_some(),
        "nodes_explored": report.nodes_explored,
        "exhausted": report.exhausted,
        "elapsed_secs": report.elapsed.as_secs_f64(),
    });
    if let Some(labeling) = &report.found {
        value["labels"] = json!(labeling.values());
    }
    if let Some(count) = report.count {
        value["count"] = json!(count);
    }
    let stopped_early = if report.count.is_some() {
        !report.exhausted
    } else {
        report.found.is_none() && !report.exhausted
    };
    Success {
        exit: if stopped_early {
            EXIT_RESOURCE
        } else {
            EXIT_OK
        },
        ..Success::report(value)
    }
}
