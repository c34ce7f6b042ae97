//! The `motifclust` command line: apply functor expressions to graphs,
//! cluster weighted networks, compare networks, and run the motif-family
//! algebra and its checks from files.
//!
//! Exit codes: 0 on success, 1 for malformed input (file formats,
//! expression syntax, usage), 2 for violated preconditions (caps, chain
//! conditions, structural requirements).

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use motifclust::distance::{
    network_distance_exact, network_distance_upper, DistanceMode, DEFAULT_EXACT_CAP,
};
use motifclust::expr::{parse as parse_expr, FamilySource};
use motifclust::format::{
    family_from_json_str, family_to_json_string, graph_from_json_str, graph_from_text,
    graph_to_json_string, graph_to_text, network_from_json_str, network_to_json_string,
    treegram_to_json_string,
};
use motifclust::functor::{check_axiom, evaluate, graph_hierarchy, Axiom, FunctorExpr};
use motifclust::homsearch::{family_covers_pointed, family_covers_unpointed, CoverOutcome};
use motifclust::motif::{
    a1_partition_diagnostic, pointed_compose, wedge_cover_check, Caps, MotifFamily,
};
use motifclust::network::{apply_hat, scalar_to_string, ExtendedNetwork, Treegram};
use motifclust::render::{graph_to_dot, treegram_to_ascii, treegram_to_dot};
use motifclust::{Error, Graph, PointedGraph};

#[derive(Parser)]
#[command(
    name = "motifclust",
    about = "Motif-represented clustering of directed graphs and weighted networks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a functor expression to a graph.
    Apply(ApplyArgs),
    /// Apply a functor levelwise to a network's sublevel filtration.
    Cluster(ClusterArgs),
    /// Network distance: exact at desk scale, heuristic above it.
    Distance(DistanceArgs),
    /// Compose two pointed motif families.
    Compose(ComposeArgs),
    /// Remove motifs covered by other motifs of the same family.
    Simplify(SimplifyArgs),
    /// Axiom, covering, wedge-cover, and stability reports.
    #[command(subcommand)]
    Check(CheckCommand),
    /// The ultranetwork of a graph from a nested chain of motif families.
    Hierarchy(HierarchyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphRender {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreegramRender {
    Json,
    Ascii,
    Dot,
}

#[derive(Args)]
struct ApplyArgs {
    /// Functor expression, e.g. `tc.ls` or `us+tc` or `motif:family.json`.
    #[arg(long)]
    functor: String,
    /// Graph file (`.json` or text format).
    #[arg(long)]
    graph: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    render: GraphRender,
}

#[derive(Args)]
struct ClusterArgs {
    #[arg(long)]
    functor: String,
    /// Network JSON file.
    #[arg(long)]
    network: PathBuf,
    /// Also emit the treegram of the clustered network to this path
    /// (`-` for stdout).
    #[arg(long)]
    treegram: Option<String>,
    /// Rendering for the treegram output.
    #[arg(long, value_enum, default_value = "json")]
    render: TreegramRender,
}

#[derive(Args)]
struct DistanceArgs {
    /// First network JSON file.
    x: PathBuf,
    /// Second network JSON file.
    y: PathBuf,
    /// Exact enumeration (the default).
    #[arg(long, conflicts_with = "upper")]
    exact: bool,
    /// Heuristic upper bound for instances above the exact cap.
    #[arg(long)]
    upper: bool,
    /// Local-search restarts for the heuristic.
    #[arg(long, default_value_t = 8)]
    restarts: u32,
    /// Seed for the heuristic's randomness.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Cap on candidate pairs for the exact search.
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct ComposeArgs {
    /// Outer pointed family (applied second).
    #[arg(long)]
    outer: PathBuf,
    /// Inner pointed family (applied first).
    #[arg(long)]
    inner: PathBuf,
}

#[derive(Args)]
struct SimplifyArgs {
    #[arg(long)]
    family: PathBuf,
}

#[derive(Subcommand)]
enum CheckCommand {
    /// Does the functor satisfy an axiom of value?
    Axiom(AxiomArgs),
    /// Is the first family covered by the second?
    Covering(CoveringArgs),
    /// Is the family wedge covered (equivalently: is its functor a
    /// clustering functor)?
    Wedge(WedgeArgs),
    /// Does the stability inequality hold for this functor on this pair of
    /// networks?
    Stability(StabilityArgs),
}

#[derive(Args)]
struct AxiomArgs {
    #[arg(long)]
    functor: String,
    /// `a1`, `a1prime:N`, or `a1doubleprime`.
    #[arg(long)]
    axiom: String,
}

#[derive(Args)]
struct CoveringArgs {
    /// The family whose elements must be covered.
    #[arg(long)]
    covered: PathBuf,
    /// The family supplying the coverers.
    #[arg(long)]
    coverer: PathBuf,
}

#[derive(Args)]
struct WedgeArgs {
    #[arg(long)]
    family: PathBuf,
}

#[derive(Args)]
struct StabilityArgs {
    #[arg(long)]
    functor: String,
    #[arg(long)]
    x: PathBuf,
    #[arg(long)]
    y: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EXACT_CAP)]
    cap: usize,
}

#[derive(Args)]
struct HierarchyArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Motif-family files, one per level, each covered by the next.
    #[arg(long = "family", required = true)]
    families: Vec<PathBuf>,
    /// Also emit the treegram (`-` for stdout).
    #[arg(long)]
    treegram: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    render: TreegramRender,
}

/// Runs the CLI against explicit arguments and streams; returns the exit
/// code. `main` wraps this; tests call it directly.
pub fn run<W: Write, E: Write>(args: &[String], out: &mut W, err: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successes, not usage errors.
            if e.use_stderr() {
                let _ = write!(err, "{}", e);
                return 1;
            }
            let _ = write!(out, "{}", e);
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            if e.is_input_error() {
                1
            } else {
                2
            }
        }
    }
}

fn caps_from_env() -> Caps {
    let mut caps = Caps::default();
    if let Ok(value) = std::env::var("MOTIFCLUST_CAP") {
        if let Ok(cap) = value.parse::<u64>() {
            caps.compose = cap;
            caps.wedge = cap;
        }
    }
    caps
}

fn read_file(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format {
        format: "file",
        message: format!("{}: {}", path.display(), e),
    })
}

fn load_graph(path: &PathBuf) -> Result<Graph, Error> {
    let text = read_file(path)?;
    if path.extension().map(|e| e == "json").unwrap_or(false) || text.trim_start().starts_with('{')
    {
        graph_from_json_str(&text)
    } else {
        graph_from_text(&text)
    }
}

fn load_family(path: &PathBuf) -> Result<MotifFamily, Error> {
    family_from_json_str(&read_file(path)?)
}

fn load_network(path: &PathBuf) -> Result<ExtendedNetwork, Error> {
    network_from_json_str(&read_file(path)?)
}

/// Resolves `motif:`/`pmotif:` references in expressions against the file
/// system.
struct FileFamilies;

impl FamilySource for FileFamilies {
    fn load(&mut self, reference: &str) -> Result<MotifFamily, String> {
        let text = fs::read_to_string(reference).map_err(|e| e.to_string())?;
        family_from_json_str(&text).map_err(|e| e.to_string())
    }
}

fn parse_functor(text: &str) -> Result<FunctorExpr, Error> {
    parse_expr(text, &mut FileFamilies)
}

/// Writes to a path, or to the main output stream when the target is `-`.
fn emit<W: Write>(target: &str, content: &str, out: &mut W) -> Result<(), Error> {
    if target == "-" {
        out.write_all(content.as_bytes())
            .map_err(|e| Error::Format {
                format: "output",
                message: e.to_string(),
            })
    } else {
        fs::write(target, content).map_err(|e| Error::Format {
            format: "output",
            message: format!("{}: {}", target, e),
        })
    }
}

fn render_treegram(treegram: &Treegram, render: TreegramRender) -> String {
    match render {
        TreegramRender::Json => {
            let mut s = treegram_to_json_string(treegram);
            s.push('\n');
            s
        }
        TreegramRender::Ascii => treegram_to_ascii(treegram),
        TreegramRender::Dot => treegram_to_dot(treegram),
    }
}

fn pointed_json(motif: &PointedGraph) -> serde_json::Value {
    json!({
        "graph": motifclust::format::graph_to_json(motif.graph()),
        "z": motif.source_mark(),
        "zhat": motif.target_mark(),
    })
}

fn dispatch<W: Write>(cli: Cli, out: &mut W) -> Result<(), Error> {
    let print = |out: &mut W, line: String| -> Result<(), Error> {
        writeln!(out, "{}", line).map_err(|e| Error::Format {
            format: "output",
            message: e.to_string(),
        })
    };
    match cli.command {
        Command::Apply(args) => {
            let expr = parse_functor(&args.functor)?;
            let graph = load_graph(&args.graph)?;
            let image = evaluate(&expr, &graph);
            let rendered = match args.render {
                GraphRender::Json => {
                    let mut s = graph_to_json_string(&image);
                    s.push('\n');
                    s
                }
                GraphRender::Text => graph_to_text(&image),
                GraphRender::Dot => graph_to_dot(&image),
            };
            emit("-", &rendered, out)
        }
        Command::Cluster(args) => {
            let expr = parse_functor(&args.functor)?;
            let network = load_network(&args.network)?;
            let clustered = apply_hat(&expr, &network);
            print(out, network_to_json_string(&clustered))?;
            if let Some(target) = args.treegram {
                let treegram = clustered.treegram()?;
                emit(&target, &render_treegram(&treegram, args.render), out)?;
            }
            Ok(())
        }
        Command::Distance(args) => {
            let x = load_network(&args.x)?;
            let y = load_network(&args.y)?;
            let report = if args.upper {
                network_distance_upper(&x, &y, args.restarts, args.seed)?
            } else {
                network_distance_exact(&x, &y, args.cap)?
            };
            let value = json!({
                "distance": scalar_to_string(&report.distance),
                "mode": match report.mode {
                    DistanceMode::Exact => "exact",
                    DistanceMode::UpperBound => "upper-bound",
                },
                "witness": report.witness.pairs(),
            });
            print(out, value.to_string())
        }
        Command::Compose(args) => {
            let outer = load_family(&args.outer)?;
            let inner = load_family(&args.inner)?;
            let composed =
                pointed_compose(outer.as_pointed()?, inner.as_pointed()?, &caps_from_env())?;
            print(out, family_to_json_string(&MotifFamily::Pointed(composed)))
        }
        Command::Simplify(args) => {
            let family = load_family(&args.family)?;
            print(out, family_to_json_string(&family.simplify()))
        }
        Command::Check(check) => {
            let value = match check {
                CheckCommand::Axiom(args) => {
                    let expr = parse_functor(&args.functor)?;
                    let axiom = parse_axiom(&args.axiom)?;
                    let mut report = json!({
                        "functor": args.functor,
                        "axiom": args.axiom,
                        "holds": check_axiom(&expr, axiom),
                    });
                    // For plain motif functors the axiom of value has a
                    // combinatorial characterisation through two-block
                    // quotients; surface the failing partition when there
                    // is one.
                    if let (FunctorExpr::Motif(family), Axiom::Value) = (&expr, axiom) {
                        let diagnostic = a1_partition_diagnostic(family);
                        let mut detail = json!({
                            "has_multi_vertex_motif": diagnostic.has_multi_vertex_motif,
                        });
                        if let Some((motif, partition)) = diagnostic.failing {
                            detail["failing_motif"] = motifclust::format::graph_to_json(&motif);
                            detail["failing_partition"] = json!(partition
                                .blocks()
                                .iter()
                                .map(|b| b.iter().cloned().collect::<Vec<_>>())
                                .collect::<Vec<_>>());
                        }
                        report["diagnostic"] = detail;
                    }
                    report
                }
                CheckCommand::Covering(args) => {
                    let covered = load_family(&args.covered)?;
                    let coverer = load_family(&args.coverer)?;
                    let outcome = match (&covered, &coverer) {
                        (MotifFamily::Pointed(a), MotifFamily::Pointed(b)) => {
                            family_covers_pointed(a, b)
                        }
                        (MotifFamily::Unpointed(a), MotifFamily::Unpointed(b)) => {
                            family_covers_unpointed(a, b)
                        }
                        _ => {
                            return Err(Error::Format {
                                format: "covering check",
                                message: "both families must have the same pointedness".to_string(),
                            })
                        }
                    };
                    match outcome {
                        CoverOutcome::Covered => json!({ "covers": true }),
                        CoverOutcome::Uncovered(witness) => json!({
                            "covers": false,
                            "uncovered": pointed_json(&witness),
                        }),
                    }
                }
                CheckCommand::Wedge(args) => {
                    let family = load_family(&args.family)?;
                    let check = wedge_cover_check(family.as_unpointed()?, &caps_from_env())?;
                    match check.witness {
                        None => json!({ "wedge_covered": check.wedge_covered }),
                        Some(witness) => json!({
                            "wedge_covered": check.wedge_covered,
                            "witness": {
                                "wedge": motifclust::format::graph_to_json(&witness.wedge),
                                "pair": [witness.source, witness.target],
                            },
                        }),
                    }
                }
                CheckCommand::Stability(args) => {
                    let expr = parse_functor(&args.functor)?;
                    let x = load_network(&args.x)?;
                    let y = load_network(&args.y)?;
                    let report = motifclust::distance::stability_check(&expr, &x, &y, args.cap)?;
                    json!({
                        "functor": args.functor,
                        "lhs": scalar_to_string(&report.lhs),
                        "rhs": scalar_to_string(&report.rhs),
                        "holds": report.holds,
                    })
                }
            };
            print(out, value.to_string())
        }
        Command::Hierarchy(args) => {
            let graph = load_graph(&args.graph)?;
            let mut families = Vec::new();
            for path in &args.families {
                families.push(load_family(path)?.as_unpointed()?.clone());
            }
            let network = graph_hierarchy(&graph, &families)?;
            print(out, network_to_json_string(&network))?;
            if let Some(target) = args.treegram {
                let treegram = network.treegram()?;
                emit(&target, &render_treegram(&treegram, args.render), out)?;
            }
            Ok(())
        }
    }
}

fn parse_axiom(text: &str) -> Result<Axiom, Error> {
    if text == "a1" {
        return Ok(Axiom::Value);
    }
    if text == "a1doubleprime" {
        return Ok(Axiom::AlternativeValue);
    }
    if let Some(bound) = text.strip_prefix("a1prime:") {
        let n: usize = bound.parse().map_err(|_| Error::Format {
            format: "axiom",
            message: format!("`{}` is not a bound", bound),
        })?;
        return Ok(Axiom::ExtendedValue(n));
    }
    Err(Error::Format {
        format: "axiom",
        message: format!(
            "unknown axiom `{}`; expected a1, a1prime:N, or a1doubleprime",
            text
        ),
    })
}

/// Apply/cluster/distance helpers shared with tests.
pub mod testing {
    /// Convenience wrapper used by the integration tests.
    pub fn run_to_string(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> = std::iter::once("motifclust".to_string())
            .chain(args.iter().map(|s| s.to_string()))
            .collect();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = super::run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).expect("utf8 output"),
            String::from_utf8(err).expect("utf8 output"),
        )
    }
}
