use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use klsparse::flow::build_flow_instance;
use klsparse::gadget::{
    audit_gadget, refute_behaviorally, search_gadgets, sparse_multiplicity, AuditVerdict,
    FixtureSet, GadgetCandidate, GadgetMode,
};
use klsparse::graph::parse_text;
use klsparse::planarity::{disjoint_terminal_paths, has_terminal_face, planar_embedding};
use klsparse::random::{random_graph, rng};
use klsparse::sparsity::{recognize, Method, DEFAULT_ORACLE_LIMIT};
use klsparse::{Error, MultiGraph, Predicate, SparsityParams};
use rand::Rng;

mod render;

#[derive(Parser)]
#[command(
    name = "klsparse",
    version,
    about = "(k,l)-sparsity checks and crossing-gadget audits"
)]
struct Cli {
    /// Largest graph the brute-force oracle will take.
    #[arg(long, global = true, env = "SPARSITY_ORACLE_LIMIT", default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_limit: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMode {
    Sparse,
    Tight,
    Spanning,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Pebble,
    Flow,
}

#[derive(Clone, Copy, ValueEnum)]
enum GadgetModeArg {
    Tight,
    Sparse,
}

impl From<GadgetModeArg> for GadgetMode {
    fn from(m: GadgetModeArg) -> Self {
        match m {
            GadgetModeArg::Tight => GadgetMode::Tight,
            GadgetModeArg::Sparse => GadgetMode::Sparse,
        }
    }
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Brute => Method::Brute,
            MethodArg::Pebble => Method::Pebble,
            MethodArg::Flow => Method::Flow,
        }
    }
}

#[derive(clap::Args)]
struct ParamArgs {
    #[arg(long)]
    k: i64,
    #[arg(long)]
    l: i64,
}

impl ParamArgs {
    fn params(&self) -> Result<SparsityParams, Error> {
        SparsityParams::new(self.k, self.l)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a graph is (k,l)-sparse, tight or spanning.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = CheckMode::Sparse)]
        mode: CheckMode,
        #[arg(long, value_enum, default_value_t = MethodArg::Pebble)]
        method: MethodArg,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Re-derive the status of every fixture graph with all three methods.
    Fixtures {
        /// Fixture corpus to check instead of the built-in set.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Print the built-in corpus as JSON and exit.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value_t = Output::Text)]
        output: Output,
    },
    #[command(subcommand)]
    Gadget(GadgetCommand),
    #[command(subcommand)]
    Flow(FlowCommand),
    /// Planarity test with an embedding and optional terminal-face check.
    Planar {
        #[arg(long)]
        graph: PathBuf,
        /// Four labels a,b,c,d to test for a common face in order a,c,b,d.
        #[arg(long, value_delimiter = ',')]
        terminals: Option<Vec<String>>,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Compare the recognizers on seeded random graphs.
    Crosscheck {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum GadgetCommand {
    /// Run the structural audit on a gadget file. Exits 0 when refuted.
    Audit {
        #[arg(long)]
        gadget: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = GadgetModeArg::Tight)]
        mode: GadgetModeArg,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Look for a fixture whose status the gadget changes. Exits 0 when found.
    Refute {
        #[arg(long)]
        gadget: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value_t = GadgetModeArg::Tight)]
        mode: GadgetModeArg,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
    /// Exhaustive search over small gadgets. Exits 0 when nothing survives.
    Search {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        max_internal: usize,
        /// Most parallel copies of any one edge; 1 searches simple gadgets
        /// only. Defaults to 2k - l, the most a sparse gadget can have.
        #[arg(long)]
        max_multiplicity: Option<usize>,
        #[arg(long, value_enum, default_value_t = GadgetModeArg::Tight)]
        mode: GadgetModeArg,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
}

#[derive(Subcommand)]
enum FlowCommand {
    /// Build the flow network for one boosted edge.
    Build {
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
        /// Index of the edge whose source gets capacity l + 1.
        #[arg(long)]
        edge: usize,
        #[arg(long, value_enum, default_value_t = Output::Json)]
        output: Output,
    },
}

/// What a command produced: the report and the exit code it implies.
struct Report {
    value: Value,
    dot: Option<String>,
    success: bool,
}

impl Report {
    fn new(value: Value, success: bool) -> Self {
        Report {
            value,
            dot: None,
            success,
        }
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

/// JSON when the file starts with `{`, the `n m` edge-list format otherwise.
fn load_graph(path: &Path) -> Result<MultiGraph, Error> {
    let text = read(path)?;
    let located = |e: Error| match e {
        Error::Parse { location, message } => Error::Parse {
            location: format!("{}: {location}", path.display()),
            message,
        },
        other => other,
    };
    if text.trim_start().starts_with('{') {
        MultiGraph::from_json(&text).map_err(located)
    } else {
        parse_text(&text).map_err(located)
    }
}

fn load_gadget(path: &Path) -> Result<GadgetCandidate, Error> {
    GadgetCandidate::from_json(&read(path)?)
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn graph_summary(g: &MultiGraph) -> Value {
    json!({"vertices": g.vertex_count(), "edges": g.edge_count()})
}

fn run(cli: &Cli) -> Result<(Report, Output), Error> {
    let limit = cli.oracle_limit;
    Ok(match &cli.command {
        Command::Check {
            graph,
            params,
            mode,
            method,
            output,
        } => {
            let p = params.params()?;
            let g = load_graph(graph)?;
            let verdict = recognize(&g, p, (*method).into(), limit)?;
            let predicate = match mode {
                CheckMode::Sparse => Predicate::Sparse,
                CheckMode::Tight => Predicate::Tight,
                CheckMode::Spanning => Predicate::Spanning,
            };
            let holds = verdict.holds(predicate);
            let value = json!({
                "graph": graph_summary(&g),
                "params": p,
                "mode": predicate,
                "method": Method::from(*method),
                "holds": holds,
                "verdict": verdict,
            });
            (Report::new(value, holds), *output)
        }
        Command::Fixtures {
            corpus,
            dump,
            output,
        } => {
            if *dump {
                return Ok((
                    Report::new(FixtureSet::standard().to_json_value(), true),
                    Output::Json,
                ));
            }
            let set = match corpus {
                Some(path) => FixtureSet::from_json(&read(path)?)?,
                None => FixtureSet::standard(),
            };
            let checks = set.verify(&Method::ALL, limit);
            let all = checks.iter().all(|c| c.agrees());
            (Report::new(to_value(&checks), all), *output)
        }
        Command::Gadget(GadgetCommand::Audit {
            gadget,
            params,
            mode,
            output,
        }) => {
            let p = params.params()?;
            let gamma = load_gadget(gadget)?;
            let report = audit_gadget(&gamma, p, (*mode).into())?;
            let refuted = report.verdict == AuditVerdict::Refuted;
            let mut value = to_value(&report);
            value["failed_check"] = to_value(&report.failed_check());
            (Report::new(value, refuted), *output)
        }
        Command::Gadget(GadgetCommand::Refute {
            gadget,
            params,
            mode,
            output,
        }) => {
            let p = params.params()?;
            let gamma = load_gadget(gadget)?;
            let found = refute_behaviorally(&gamma, p, (*mode).into());
            let value = match &found {
                Some(r) => json!({
                    "refuted": true,
                    "fixture": r.fixture,
                    "relabeling": r.relabeling,
                    "direction": r.direction(),
                    "original": r.original,
                    "substituted": r.substituted,
                    "substituted_graph": r.substituted_graph,
                }),
                None => json!({"refuted": false}),
            };
            (Report::new(value, found.is_some()), *output)
        }
        Command::Gadget(GadgetCommand::Search {
            params,
            max_internal,
            max_multiplicity,
            mode,
            output,
        }) => {
            let p = params.params()?;
            let mu = max_multiplicity.unwrap_or_else(|| sparse_multiplicity(p));
            let report = search_gadgets(p, *max_internal, mu, (*mode).into())?;
            let none = report.survivors.is_empty();
            (Report::new(to_value(&report), none), *output)
        }
        Command::Flow(FlowCommand::Build {
            graph,
            params,
            edge,
            output,
        }) => {
            let p = params.params()?;
            let g = load_graph(graph)?;
            let inst = build_flow_instance(&g, p, *edge)?;
            let mut report = Report::new(inst.to_json_value(), true);
            report.dot = Some(inst.to_dot());
            (report, *output)
        }
        Command::Planar {
            graph,
            terminals,
            output,
        } => {
            let g = load_graph(graph)?;
            let embedding = planar_embedding(&g)?;
            let mut value = json!({
                "graph": graph_summary(&g),
                "planar": embedding.is_some(),
            });
            if let Some(rot) = &embedding {
                let names = |i: &usize| rot.labels()[*i].to_string();
                let rotation: serde_json::Map<String, Value> = (0..g.vertex_count())
                    .map(|v| {
                        (
                            names(&v),
                            json!(rot.rotation(v).iter().map(names).collect::<Vec<_>>()),
                        )
                    })
                    .collect();
                value["rotation"] = Value::Object(rotation);
                value["faces"] = json!(rot.faces().len());
            }
            if let Some(t) = terminals {
                if t.len() != 4 {
                    return Err(Error::Input(format!(
                        "--terminals needs four labels, got {}",
                        t.len()
                    )));
                }
                let (a, b, c, d) = (&t[0], &t[1], &t[2], &t[3]);
                value["terminal_face"] = json!(has_terminal_face(&g, a, b, c, d)?);
                value["disjoint_paths"] = to_value(&disjoint_terminal_paths(&g, a, b, c, d)?);
            }
            let mut report = Report::new(value, embedding.is_some());
            report.dot = embedding.map(|rot| rot.to_dot());
            (report, *output)
        }
        Command::Crosscheck {
            seed,
            count,
            max_n,
            output,
        } => {
            let mut r = rng(*seed);
            let params = SparsityParams::all_up_to(3);
            let mut disagreements = Vec::new();
            for i in 0..*count {
                let g = random_graph(&mut r, (*max_n).max(2));
                let p = params[r.gen_range(0..params.len())];
                let mut verdicts = Vec::new();
                for method in Method::ALL {
                    match recognize(&g, p, method, limit) {
                        Ok(v) => verdicts.push((method, v.sparse, v.tight)),
                        Err(Error::Capacity { .. }) => {}
                        Err(e) => return Err(e),
                    }
                }
                if verdicts
                    .windows(2)
                    .any(|w| (w[0].1, w[0].2) != (w[1].1, w[1].2))
                {
                    disagreements.push(json!({
                        "trial": i,
                        "params": p,
                        "graph": g,
                        "verdicts": verdicts
                            .iter()
                            .map(|(m, s, t)| json!({"method": m, "sparse": s, "tight": t}))
                            .collect::<Vec<_>>(),
                    }));
                }
            }
            let ok = disagreements.is_empty();
            let value = json!({
                "seed": seed,
                "count": count,
                "max_n": max_n,
                "disagreements": disagreements,
            });
            (Report::new(value, ok), *output)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, output)) => {
            let body = match output {
                Output::Json => serde_json::to_string_pretty(&report.value).expect("json") + "\n",
                Output::Text => render::text(&report.value),
                Output::Dot => match report.dot {
                    Some(dot) => dot,
                    None => {
                        eprintln!("error: this command has no DOT output");
                        return ExitCode::from(2);
                    }
                },
            };
            print!("{body}");
            if report.success {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
