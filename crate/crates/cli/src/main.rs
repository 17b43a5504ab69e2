use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use equivcurv::equivalence::{
    is_regular_partition, is_strong_regular_partition, is_strong_structural_partition, is_structural_partition,
    is_weak_regular_partition, is_weak_structural_partition, EquivalenceWitness,
};
use equivcurv::neighborhood::{hyper_neighborhood_graph_with, neighborhood_graph_with, PathLimits, WalkMode};
use equivcurv::partitions::{
    regular_from_curvature_subcliques, regular_from_g2, regular_from_gn_with, regular_from_kcycle_removal_with,
    regular_from_triangle_removal, structural_from_curvature, weak_regular_from_h2, weak_regular_from_hn_with,
    ConstructionReport, RemovalSet,
};
use equivcurv::report::{
    ConstructionJson, CurvatureJson, CurvaturePairJson, NeighborhoodJson, PartitionJson, SimilarityJson,
    VerificationJson,
};
use equivcurv::similarity::{hyper_similarity_report, similarity_report, SimilarityReport, WalkKind};
use equivcurv::transport::{ee_orc, en_orc, orc, CurvatureResult};
use equivcurv::{fixtures, Error, ErrorKind, Graph, Hypergraph, Vertex, VertexSet};
use serde_json::json;

const PATH_CAP_ENV: &str = "EQUIVCURV_PATH_CAP";

#[derive(Parser)]
#[command(
    name = "equivcurv",
    version,
    about = "Neighbourhood graphs, curvature and equivalence checks"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Output::Json, global = true)]
    output: Output,
    /// Longest path enumerated in path mode [env: EQUIVCURV_PATH_CAP, default 8]
    #[arg(long, global = true)]
    path_cap: Option<usize>,
    /// Largest vertex count accepted for path enumeration.
    #[arg(long, default_value_t = 256, global = true)]
    vertex_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// n-neighbourhood graph edges and components
    Neigh {
        input: PathBuf,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "path")]
        mode: WalkMode,
        #[arg(long)]
        hyper: bool,
    },
    /// Exact Ollivier-Ricci curvature
    Curv {
        input: PathBuf,
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value = "graph")]
        walk: WalkKind,
        #[arg(long)]
        hyper: bool,
    },
    /// Build a partition and verify it
    Partition {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        /// Edge to remove, as `u:v` (repeatable)
        #[arg(long = "remove", value_name = "U:V")]
        remove: Vec<String>,
        /// Comma-separated block for `subcliques` (repeatable)
        #[arg(long = "block", value_name = "A,B,..")]
        block: Vec<String>,
    },
    /// Check a partition (JSON `{"blocks": [[...], ...]}`) against a notion
    Verify {
        input: PathBuf,
        partition: PathBuf,
        #[arg(long, value_enum)]
        notion: Notion,
    },
    /// Cosine similarity with curvature bounds
    Sim {
        input: PathBuf,
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value = "graph")]
        walk: WalkKind,
        #[arg(long)]
        hyper: bool,
        /// Exit with status 1 if any bound fails
        #[arg(long)]
        check_bounds: bool,
    },
    /// Evaluate the bundled example corpus
    Fixtures,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PairArgs {
    #[arg(long, num_args = 2, value_names = ["X", "Y"])]
    pair: Option<Vec<String>>,
    #[arg(long)]
    all: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    G2,
    Gn,
    Structural,
    Subcliques,
    TriangleRemoval,
    KcycleRemoval,
    H2,
    Hn,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Notion {
    Structural,
    Regular,
    WeakStructural,
    StrongStructural,
    WeakRegular,
    StrongRegular,
}

enum Failure {
    Core(Error),
    Usage(String),
    Io(PathBuf, std::io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) => match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::Domain => 3,
                ErrorKind::Resource => 4,
            },
            Failure::Usage(_) | Failure::Io(..) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::Io(p, e) => format!("{}: {e}", p.display()),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// What a command printed and whether it wants a non-zero status.
struct Emitted {
    text: String,
    failed: bool,
}

fn ok(text: String) -> CliResult<Emitted> {
    Ok(Emitted { text, failed: false })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            println!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn limits(cli: &Cli) -> CliResult<PathLimits> {
    let path_cap = match cli.path_cap {
        Some(c) => c,
        None => match std::env::var(PATH_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Failure::Usage(format!("{PATH_CAP_ENV}: not a number: `{v}`")))?,
            Err(_) => PathLimits::default().max_length,
        },
    };
    if path_cap == 0 || cli.vertex_cap == 0 {
        return Err(Failure::Usage("caps must be positive".into()));
    }
    Ok(PathLimits {
        max_length: path_cap,
        max_vertices: cli.vertex_cap,
        ..PathLimits::default()
    })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    Ok(Graph::parse(&read(path)?)?)
}

fn load_hypergraph(path: &Path) -> CliResult<Hypergraph> {
    Ok(Hypergraph::parse(&read(path)?)?)
}

fn render<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialise")
}

fn blocks_line(blocks: &[Vec<String>]) -> String {
    blocks
        .iter()
        .map(|b| format!("{{{}}}", b.join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: &Cli) -> CliResult<Emitted> {
    let table = cli.output == Output::Table;
    match &cli.command {
        Command::Neigh { input, n, mode, hyper } => {
            let limits = limits(cli)?;
            let json = if *hyper {
                let h = load_hypergraph(input)?;
                NeighborhoodJson::new(&hyper_neighborhood_graph_with(&h, *n, limits)?)
            } else {
                let g = load_graph(input)?;
                NeighborhoodJson::new(&neighborhood_graph_with(&g, *n, *mode, limits)?)
            };
            if !table {
                return ok(render(&json));
            }
            let edges: Vec<String> = json.edges.iter().map(|[u, v]| format!("{u}-{v}")).collect();
            ok(format!(
                "n {}  mode {}\nedges ({}): {}\ncomponents ({}): {}",
                json.n,
                json.mode,
                edges.len(),
                edges.join(" "),
                json.blocks.len(),
                blocks_line(&json.blocks)
            ))
        }
        Command::Curv {
            input,
            pairs,
            walk,
            hyper,
        } => {
            let pairs_json = if *hyper {
                let h = load_hypergraph(input)?;
                let selected = select_pairs(&h, pairs, h.connected_components().blocks())?;
                selected
                    .into_iter()
                    .map(|(x, y)| Ok(CurvaturePairJson::new(&h, x, y, &hyper_curvature(&h, x, y, *walk)?)))
                    .collect::<CliResult<Vec<_>>>()?
            } else {
                if *walk != WalkKind::Graph {
                    return Err(Failure::Usage(format!("--walk {} needs --hyper", walk.as_str())));
                }
                let g = load_graph(input)?;
                let selected = select_pairs(&g, pairs, g.connected_components().blocks())?;
                selected
                    .into_iter()
                    .map(|(x, y)| Ok(CurvaturePairJson::new(&g, x, y, &orc(&g, x, y)?)))
                    .collect::<CliResult<Vec<_>>>()?
            };
            let json = CurvatureJson { pairs: pairs_json };
            if !table {
                return ok(render(&json));
            }
            let mut rows = vec![format!(
                "{:<10} {:<10} {:>4} {:>10} {:>10}",
                "x", "y", "d", "W1", "kappa"
            )];
            rows.extend(
                json.pairs
                    .iter()
                    .map(|p| format!("{:<10} {:<10} {:>4} {:>10} {:>10}", p.x, p.y, p.distance, p.w1, p.kappa)),
            );
            ok(rows.join("\n"))
        }
        Command::Partition {
            input,
            method,
            n,
            k,
            remove,
            block,
        } => {
            let limits = limits(cli)?;
            let need =
                |v: &Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("this method needs --{flag}")));
            let json = match method {
                Method::H2 | Method::Hn => {
                    let h = load_hypergraph(input)?;
                    let report = match method {
                        Method::H2 => weak_regular_from_h2(&h)?,
                        _ => weak_regular_from_hn_with(&h, need(n, "n")?, limits)?,
                    };
                    ConstructionJson::new(&report, &h)
                }
                _ => {
                    let g = load_graph(input)?;
                    let report: ConstructionReport = match method {
                        Method::G2 => regular_from_g2(&g)?,
                        Method::Gn => regular_from_gn_with(&g, need(n, "n")?, limits)?,
                        Method::Structural => structural_from_curvature(&g)?,
                        Method::Subcliques => {
                            let chosen = block
                                .iter()
                                .map(|b| b.split(',').map(|name| g.vertex(name.trim())).collect())
                                .collect::<equivcurv::Result<Vec<Vec<Vertex>>>>()?;
                            regular_from_curvature_subcliques(&g, &chosen)?
                        }
                        Method::TriangleRemoval => regular_from_triangle_removal(&g, &removal_set(&g, remove)?)?,
                        Method::KcycleRemoval => {
                            regular_from_kcycle_removal_with(&g, need(k, "k")?, &removal_set(&g, remove)?, limits)?
                        }
                        Method::H2 | Method::Hn => unreachable!(),
                    };
                    ConstructionJson::new(&report, &g)
                }
            };
            if !table {
                return ok(render(&json));
            }
            let mut lines = vec![format!("method {}", json.method)];
            lines.extend(
                json.preconditions
                    .iter()
                    .map(|p| format!("precondition {}: {}", p.name, if p.met { "met" } else { "NOT met" })),
            );
            lines.push(format!("blocks ({}): {}", json.blocks.len(), blocks_line(&json.blocks)));
            lines.push(format!("verified {}", json.verified));
            if let Some(v) = &json.violation {
                lines.push(format!(
                    "violation pair ({}, {}) neighbour {} block {}",
                    v.pair[0], v.pair[1], v.neighbor, v.block
                ));
            }
            lines.extend(json.notes.iter().map(|n| format!("note {n}")));
            ok(lines.join("\n"))
        }
        Command::Verify {
            input,
            partition,
            notion,
        } => {
            let spec = PartitionJson::parse(&read(partition)?)?;
            let json = match notion {
                Notion::Structural | Notion::Regular => {
                    let g = load_graph(input)?;
                    let p = spec.resolve(&g)?;
                    let w: EquivalenceWitness = match notion {
                        Notion::Structural => is_structural_partition(&g, &p)?,
                        _ => is_regular_partition(&g, &p)?,
                    };
                    VerificationJson::new(&w, &g)
                }
                _ => {
                    let h = load_hypergraph(input)?;
                    let p = spec.resolve(&h)?;
                    let w = match notion {
                        Notion::WeakStructural => is_weak_structural_partition(&h, &p)?,
                        Notion::StrongStructural => is_strong_structural_partition(&h, &p)?,
                        Notion::WeakRegular => is_weak_regular_partition(&h, &p)?,
                        _ => is_strong_regular_partition(&h, &p)?,
                    };
                    VerificationJson::new(&w, &h)
                }
            };
            if !table {
                return ok(render(&json));
            }
            let mut text = format!("verdict {}", json.verdict);
            if let Some(v) = &json.violation {
                text.push_str(&format!(
                    "\nviolation pair ({}, {}) neighbour {} block {}",
                    v.pair[0], v.pair[1], v.neighbor, v.block
                ));
            }
            ok(text)
        }
        Command::Sim {
            input,
            pairs,
            walk,
            hyper,
            check_bounds,
        } => {
            let reports: Vec<SimilarityJson> = if *hyper {
                let h = load_hypergraph(input)?;
                let selected = select_pairs(&h, pairs, &[(0..h.vertex_count()).collect()])?;
                similarity_rows(&h, selected, |x, y| hyper_similarity_report(&h, x, y, *walk))?
            } else {
                if *walk != WalkKind::Graph {
                    return Err(Failure::Usage(format!("--walk {} needs --hyper", walk.as_str())));
                }
                let g = load_graph(input)?;
                let selected = select_pairs(&g, pairs, &[(0..g.vertex_count()).collect()])?;
                similarity_rows(&g, selected, |x, y| similarity_report(&g, x, y))?
            };
            let failed = *check_bounds && reports.iter().any(|r| r.bounds_hold == Some(false));
            let text = if table {
                let head = format!(
                    "{:<8} {:<8} {:>3} {:>14} {:>5} {:>8} {:>8} {:>16} {:>6} {:>5}",
                    "x", "y", "eta", "sigma", "d", "kappa", "lower", "upper", "holds", "far"
                );
                let rows = reports.iter().map(|r| {
                    let upper = match &r.upper_bound {
                        Some(equivcurv::report::UpperJson::Exact(u)) => u.clone(),
                        Some(equivcurv::report::UpperJson::Interval { lo, hi }) => {
                            format!("~{:.6}", approx(lo).max(approx(hi)))
                        }
                        None => "-".into(),
                    };
                    let d = match &r.distance {
                        equivcurv::report::DistanceJson::Finite(d) => d.to_string(),
                        equivcurv::report::DistanceJson::Unreachable(s) => s.clone(),
                    };
                    format!(
                        "{:<8} {:<8} {:>3} {:>14} {:>5} {:>8} {:>8} {:>16} {:>6} {:>5}",
                        r.x,
                        r.y,
                        r.eta,
                        r.sigma_exact.clone().unwrap_or_else(|| r.sigma.clone()),
                        d,
                        r.kappa.clone().unwrap_or_else(|| "-".into()),
                        r.lower_bound.clone().unwrap_or_else(|| "-".into()),
                        upper,
                        r.bounds_hold.map_or("-".into(), |b| b.to_string()),
                        r.fully_dissimilar
                    )
                });
                std::iter::once(head).chain(rows).collect::<Vec<_>>().join("\n")
            } else {
                render(&reports)
            };
            Ok(Emitted { text, failed })
        }
        Command::Fixtures => {
            let claims = fixtures::run_claims();
            let text = if table {
                let mut lines: Vec<String> = claims
                    .iter()
                    .map(|c| {
                        let status = match &c.result {
                            Ok(true) => "PASS".to_string(),
                            Ok(false) => "FAIL".to_string(),
                            Err(e) => format!("ERROR ({e})"),
                        };
                        format!("{status:<5} {:<22} {}", c.id, c.statement)
                    })
                    .collect();
                let passed = claims.iter().filter(|c| c.passed()).count();
                lines.push(format!("{passed}/{} claims hold", claims.len()));
                lines.join("\n")
            } else {
                let rows: Vec<_> = claims
                    .iter()
                    .map(|c| match &c.result {
                        Ok(v) => json!({"id": c.id, "statement": c.statement, "holds": v}),
                        Err(e) => json!({"id": c.id, "statement": c.statement, "error": e}),
                    })
                    .collect();
                render(&rows)
            };
            ok(text)
        }
    }
}

fn approx(s: &str) -> f64 {
    match s.split_once('/') {
        Some((p, q)) => p.parse::<f64>().unwrap_or(f64::NAN) / q.parse::<f64>().unwrap_or(f64::NAN),
        None => s.parse().unwrap_or(f64::NAN),
    }
}

fn hyper_curvature(h: &Hypergraph, x: Vertex, y: Vertex, walk: WalkKind) -> CliResult<CurvatureResult> {
    Ok(match walk {
        WalkKind::Graph => orc(h.associated_graph(), x, y)?,
        WalkKind::En => en_orc(h, x, y)?,
        WalkKind::Ee => ee_orc(h, x, y)?,
    })
}

/// `--pair` as given, or every `x < y` inside each group for `--all`.
fn select_pairs(s: &impl VertexSet, args: &PairArgs, groups: &[Vec<Vertex>]) -> CliResult<Vec<(Vertex, Vertex)>> {
    if let Some(names) = &args.pair {
        return Ok(vec![(s.vertex(&names[0])?, s.vertex(&names[1])?)]);
    }
    let mut out = Vec::new();
    for group in groups {
        let mut sorted = group.clone();
        sorted.sort_unstable();
        for (i, &x) in sorted.iter().enumerate() {
            out.extend(sorted[i + 1..].iter().map(|&y| (x, y)));
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn similarity_rows(
    s: &impl VertexSet,
    pairs: Vec<(Vertex, Vertex)>,
    report: impl Fn(Vertex, Vertex) -> equivcurv::Result<SimilarityReport>,
) -> CliResult<Vec<SimilarityJson>> {
    pairs
        .into_iter()
        .map(|(x, y)| Ok(SimilarityJson::new(&report(x, y)?, s)))
        .collect()
}

fn removal_set(g: &Graph, specs: &[String]) -> CliResult<RemovalSet> {
    let edges = specs
        .iter()
        .map(|s| {
            s.split_once(':')
                .map(|(u, v)| (u.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| Failure::Usage(format!("--remove expects `u:v`, got `{s}`")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(RemovalSet::from_named(g, &edges)?)
}
