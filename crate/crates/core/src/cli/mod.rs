//! The `transmat` command line.
//!
//! Every subcommand reads its input files, runs one computation and renders
//! either plain text or (with `--json`) a JSON document. Exit codes: 0 on
//! success, 1 for bad input, 2 when a budget is exceeded, 3 when two routes
//! that must agree do not.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{
    balanced_mutation, balanced_orientation, connected_sum, count_circuits, detachment_with_free_loops, euler_system,
    interlacement, is_planar, separation, touch_graph, trace_partition, CutPair, FourRegularGraph, Planarity,
    Reattachment, SumMatching, DEFAULT_PLANARITY_CAP,
};
use crate::invariants::{
    directed_martin, directed_martin_via_matroid, interlace_poly, martin_direct, martin_via_matroid, transition_poly,
    Enumeration,
};
use crate::knots::{bracket, normalized_bracket, PdCode};
use crate::matroid::{check_dual_pair, transition_matroid};
use crate::poly::SparsePoly;
use crate::ribbon::{bollobas_riordan, bollobas_riordan_weighted, euler_genus, medial, RibbonGraph};
use crate::simple_graph::SimpleGraph;
use crate::words::{family_from_euler_system, graph_from_family, interlacement_of, parse_dow, DowFamily};

#[derive(Parser, Debug)]
#[command(name = "transmat", version, about = "Transition matroids of 4-regular graphs")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for large enumerations (default: all cores, at most 16).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Direct,
    Matroid,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DowOp {
    /// Canonical form of the family.
    Normal,
    /// Interlacement graph.
    Interlace,
    /// The 4-regular graph the family traces.
    Graph,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file and summarize it.
    Validate { graph: PathBuf },
    /// An Euler system, written as double occurrence words.
    Euler { graph: PathBuf },
    /// Interlacement graph of the default Euler system.
    Interlace { graph: PathBuf },
    /// Rank of the transitions of one circuit partition.
    Rank {
        graph: PathBuf,
        #[arg(long)]
        transversal: String,
    },
    /// Martin polynomial.
    Martin {
        graph: PathBuf,
        /// Count only partitions compatible with a balanced orientation.
        #[arg(long)]
        directed: bool,
        #[arg(long, value_enum, default_value = "direct")]
        via: Route,
    },
    /// Weighted transition polynomial.
    TransitionPoly {
        graph: PathBuf,
        /// Lines `<vertex> <w0> <w1> <w2>`; unlisted vertices weigh 1 1 1.
        #[arg(long)]
        weights: Option<PathBuf>,
    },
    /// Interlace polynomial of the interlacement graph.
    InterlacePoly { graph: PathBuf },
    /// Touch graph of a circuit partition.
    Touch {
        graph: PathBuf,
        #[arg(long)]
        transversal: String,
    },
    /// Test whether two circuit partitions form a dual pair.
    DualPair {
        graph: PathBuf,
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// Planarity by searching the local-complementation orbit.
    Planar {
        graph: PathBuf,
        #[arg(long, default_value_t = DEFAULT_PLANARITY_CAP)]
        cap: usize,
    },
    /// Detach one vertex along a transition `name:tP`.
    Detach {
        graph: PathBuf,
        #[arg(long)]
        transition: String,
    },
    /// Connected sum along one edge of each graph.
    Sum {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        e2: usize,
        #[arg(long)]
        crossed: bool,
    },
    /// Separation along a 2-edge cut.
    Separate {
        graph: PathBuf,
        #[arg(long)]
        e1: usize,
        #[arg(long)]
        e2: usize,
    },
    /// Balanced mutation along a 4-edge cut `a,b,c,d` (pairs `a,b` and `c,d`).
    Mutate {
        graph: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        cut: Vec<usize>,
        /// Swap the far-side half-edges in each pair instead of keeping them.
        #[arg(long)]
        swap: bool,
    },
    /// Medial graph and the δ, ε partitions of a ribbon graph.
    Medial { ribbon: PathBuf },
    /// Bollobás–Riordan polynomial of a ribbon graph.
    RibbonBr {
        ribbon: PathBuf,
        /// Comma-separated integer edge weights.
        #[arg(long, value_delimiter = ',')]
        weights: Option<Vec<i64>>,
    },
    /// Kauffman bracket of a PD code.
    Bracket {
        pd: PathBuf,
        /// Multiply by `(−A³)^{−w}` using the `writhe:` header.
        #[arg(long)]
        normalize: bool,
    },
    /// Double occurrence word operations.
    Dow {
        words: PathBuf,
        #[arg(long, value_enum, default_value = "normal")]
        op: DowOp,
        /// Report whether the family is equivalent to the one in this file.
        #[arg(long)]
        compare: Option<PathBuf>,
    },
    /// Dump the transition matroid.
    Matroid { graph: PathBuf },
}

/// Output of one invocation.
struct Output {
    text: String,
    json: Value,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        Self { text: text.into(), json }
    }
}

/// Runs the CLI on `argv` (program name first) and returns the exit code
/// with everything that should be printed.
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let json = cli.json;
    match dispatch(cli) {
        Ok(out) if json => (0, format!("{}\n", serde_json::to_string_pretty(&out.json).expect("serializable"))),
        Ok(out) => {
            let mut text = out.text;
            if !text.ends_with('\n') {
                text.push('\n');
            }
            (0, text)
        }
        Err(e) => (exit_code(&e), format!("error: {e}\n")),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Input(_) | Error::Graph(_) => 1,
        Error::Budget(_) => 2,
        Error::Consistency(_) => 3,
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<FourRegularGraph> {
    read(path)?.parse()
}

fn poly_output(p: &SparsePoly) -> Output {
    Output::new(p.to_string(), p.to_json())
}

fn graph_output(g: &FourRegularGraph, extra: Value) -> Output {
    let mut j = json!({ "graph": g.to_json() });
    if let Value::Object(m) = extra {
        j.as_object_mut().expect("object").extend(m);
    }
    Output::new(g.to_frg(), j)
}

fn simple_graph_output(h: &SimpleGraph) -> Output {
    let names = h.names();
    let edges: Vec<[&str; 2]> = h.edges().into_iter().map(|(a, b)| [names[a].as_str(), names[b].as_str()]).collect();
    Output::new(h.to_string(), json!({ "vertices": names, "edges": edges }))
}

fn dispatch(cli: Cli) -> Result<Output> {
    let opts = match cli.workers {
        Some(w) => Enumeration { workers: w.max(1), ..Enumeration::default() },
        None => Enumeration::default(),
    };
    match cli.command {
        Command::Validate { graph } => {
            let g = read_graph(&graph)?;
            let (n, m, c) = (g.vertex_count(), g.edge_count(), g.component_count());
            Ok(Output::new(
                format!("ok: {n} vertices, {m} edges, {c} components"),
                json!({ "valid": true, "vertices": n, "edges": m, "components": c }),
            ))
        }
        Command::Euler { graph } => {
            let g = read_graph(&graph)?;
            let f = family_from_euler_system(&g, &euler_system(&g));
            Ok(dow_output(&f))
        }
        Command::Interlace { graph } => {
            let g = read_graph(&graph)?;
            Ok(simple_graph_output(&interlacement(&g, &euler_system(&g))))
        }
        Command::Rank { graph, transversal } => {
            let g = read_graph(&graph)?;
            let t = g.parse_transversal(&transversal)?;
            let tm = transition_matroid(&g, &euler_system(&g));
            let rank = tm.rank_of_transversal(&t);
            let circuits = count_circuits(&g, &t);
            let (n, c) = (g.vertex_count(), g.component_count());
            if rank + circuits != n + c {
                return Err(Error::Consistency(format!(
                    "rank {rank} and {circuits} circuits violate r = n + c − |P| with n = {n}, c = {c}"
                )));
            }
            Ok(Output::new(
                format!("rank {rank}, |P|={circuits}"),
                json!({ "transversal": t.to_string(), "rank": rank, "circuits": circuits }),
            ))
        }
        Command::Martin { graph, directed, via } => {
            let g = read_graph(&graph)?;
            let o = directed.then(|| balanced_orientation(&g));
            let direct = || match &o {
                Some(o) => directed_martin(&g, o, opts),
                None => martin_direct(&g, opts),
            };
            let matroid = || match &o {
                Some(o) => directed_martin_via_matroid(&g, o, opts),
                None => martin_via_matroid(&g, opts),
            };
            let p = match via {
                Route::Direct => direct()?,
                Route::Matroid => matroid()?,
                Route::Both => {
                    let (a, b) = (direct()?, matroid()?);
                    if a != b {
                        return Err(Error::Consistency(format!("direct route gives {a}, matroid route gives {b}")));
                    }
                    a
                }
            };
            Ok(poly_output(&p))
        }
        Command::TransitionPoly { graph, weights } => {
            let g = read_graph(&graph)?;
            let w = match weights {
                Some(path) => parse_weights(&g, &read(&path)?)?,
                None => vec![1; 3 * g.vertex_count()],
            };
            Ok(poly_output(&transition_poly(&g, &w, opts)?))
        }
        Command::InterlacePoly { graph } => {
            let g = read_graph(&graph)?;
            Ok(poly_output(&interlace_poly(&interlacement(&g, &euler_system(&g)), opts)?))
        }
        Command::Touch { graph, transversal } => {
            let g = read_graph(&graph)?;
            let t = g.parse_transversal(&transversal)?;
            let tg = touch_graph(&g, &trace_partition(&g, &t));
            let mut text = format!("{} circuits\n", tg.vertex_count());
            for (i, &(a, b)) in tg.edges().iter().enumerate() {
                text.push_str(&format!("{}: c{a} c{b}\n", tg.labels()[i]));
            }
            let edges: Vec<Value> = tg
                .edges()
                .iter()
                .zip(tg.labels())
                .map(|(&(a, b), l)| json!({ "vertex": l, "circuits": [a, b] }))
                .collect();
            Ok(Output::new(text, json!({ "circuits": tg.vertex_count(), "edges": edges })))
        }
        Command::DualPair { graph, t1, t2 } => {
            let g = read_graph(&graph)?;
            let (t1, t2) = (g.parse_transversal(&t1)?, g.parse_transversal(&t2)?);
            let r = check_dual_pair(&g, &t1, &t2)?;
            Ok(Output::new(
                format!(
                    "r1 {}, r2 {}, union rank {}, dual pair: {}",
                    r.r1,
                    r.r2,
                    r.union_rank,
                    if r.is_dual_pair { "yes" } else { "no" }
                ),
                json!({ "r1": r.r1, "r2": r.r2, "union_rank": r.union_rank, "dual_pair": r.is_dual_pair }),
            ))
        }
        Command::Planar { graph, cap } => {
            let g = read_graph(&graph)?;
            match is_planar(&g, cap) {
                Planarity::BudgetExceeded => Err(Error::Budget(format!("orbit search exceeded {cap} states"))),
                p => Ok(Output::new(p.to_string(), json!({ "planar": p == Planarity::Planar }))),
            }
        }
        Command::Detach { graph, transition } => {
            let g = read_graph(&graph)?;
            let t = g.parse_transition(&transition)?;
            let (d, free) = detachment_with_free_loops(&g, t);
            let mut out = graph_output(&d, json!({ "free_loops": free }));
            if free > 0 {
                out.text.push_str(&format!("# free loops: {free}\n"));
            }
            Ok(out)
        }
        Command::Sum { first, second, e1, e2, crossed } => {
            let (a, b) = (read_graph(&first)?, read_graph(&second)?);
            let m = if crossed { SumMatching::Crossed } else { SumMatching::Straight };
            Ok(graph_output(&connected_sum(&a, e1, &b, e2, m)?, json!({})))
        }
        Command::Separate { graph, e1, e2 } => {
            let g = read_graph(&graph)?;
            Ok(graph_output(&separation(&g, e1, e2)?, json!({})))
        }
        Command::Mutate { graph, cut, swap } => {
            let g = read_graph(&graph)?;
            if cut.len() != 4 {
                return Err(Error::Input(format!("--cut needs four edges, got {}", cut.len())));
            }
            let pairs = [CutPair(cut[0], cut[1]), CutPair(cut[2], cut[3])];
            let r = if swap { Reattachment::Swap } else { Reattachment::Identity };
            Ok(graph_output(&balanced_mutation(&g, pairs, &r)?, json!({})))
        }
        Command::Medial { ribbon } => {
            let r: RibbonGraph = read(&ribbon)?.parse()?;
            let m = medial(&r);
            let s = euler_genus(&r);
            let text = format!(
                "{}# delta: {}\n# epsilon: {}\n# euler characteristic: {}, orientable: {}\n",
                m.graph.to_frg(),
                m.delta,
                m.epsilon,
                s.euler_characteristic,
                if s.orientable { "yes" } else { "no" }
            );
            let mut out = graph_output(
                &m.graph,
                json!({
                    "delta": m.delta.to_string(),
                    "epsilon": m.epsilon.to_string(),
                    "isolated_vertices": m.isolated,
                    "euler_characteristic": s.euler_characteristic,
                    "orientable": s.orientable,
                }),
            );
            out.text = text;
            Ok(out)
        }
        Command::RibbonBr { ribbon, weights } => {
            let r: RibbonGraph = read(&ribbon)?.parse()?;
            let p = match weights {
                Some(w) => bollobas_riordan_weighted(&r, &w, opts)?,
                None => bollobas_riordan(&r, opts)?,
            };
            Ok(poly_output(&p))
        }
        Command::Bracket { pd, normalize } => {
            let code: PdCode = read(&pd)?.parse()?;
            let p = if normalize {
                let w = code.writhe().ok_or_else(|| Error::Input("--normalize needs a `writhe:` header".into()))?;
                normalized_bracket(&code, w, opts)?
            } else {
                bracket(&code, opts)?
            };
            Ok(poly_output(&p))
        }
        Command::Dow { words, op, compare } => {
            let f = parse_dow(&read(&words)?)?;
            if let Some(other) = compare {
                let g = parse_dow(&read(&other)?)?;
                let same = f.is_equivalent(&g);
                return Ok(Output::new(if same { "equivalent" } else { "not equivalent" }, json!({ "equivalent": same })));
            }
            match op {
                DowOp::Normal => Ok(dow_output(&f.normal_form())),
                DowOp::Interlace => Ok(simple_graph_output(&interlacement_of(&f))),
                DowOp::Graph => Ok(graph_output(&graph_from_family(&f).0, json!({}))),
            }
        }
        Command::Matroid { graph } => {
            let g = read_graph(&graph)?;
            let tm = transition_matroid(&g, &euler_system(&g));
            let m = tm.matroid();
            let rows: Vec<String> = (0..m.rep().rows()).map(|r| m.rep().row_string(r)).collect();
            let ground: Vec<String> = tm.labels().iter().map(|l| l.to_string()).collect();
            Ok(Output::new(tm.to_string(), json!({ "ground": ground, "rows": rows })))
        }
    }
}

fn dow_output(f: &DowFamily) -> Output {
    Output::new(f.to_string(), json!({ "words": f.words() }))
}

/// `<vertex> <w0> <w1> <w2>` per line; `#` starts a comment.
fn parse_weights(g: &FourRegularGraph, text: &str) -> Result<Vec<i64>> {
    let mut w = vec![1; 3 * g.vertex_count()];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = || Error::Input(format!("weights line {}: expected `<vertex> <w0> <w1> <w2>`", n + 1));
        if parts.len() != 4 {
            return Err(bad());
        }
        let v = g.vertex_index(parts[0]).ok_or_else(|| Error::Input(format!("unknown vertex {}", parts[0])))?;
        for p in 0..3 {
            w[3 * v + p] = parts[p + 1].parse().map_err(|_| bad())?;
        }
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(text: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(text.as_bytes()).unwrap();
        f
    }

    fn call(args: &[&str]) -> (i32, String) {
        run(std::iter::once("transmat").chain(args.iter().copied()))
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["validate", "/nonexistent/file.frg"]).0, 1);
        assert_eq!(call(&["nope"]).0, 1);
        assert_eq!(call(&["--help"]).0, 0);
        let g = file("v a\ne a.0 a.1\n");
        assert_eq!(call(&["validate", g.path().to_str().unwrap()]).0, 1);
    }

    #[test]
    fn weights_file() {
        let g: FourRegularGraph = "v a\ne a.0 a.1\ne a.2 a.3\n".parse().unwrap();
        assert_eq!(parse_weights(&g, "a 2 0 5 # comment\n").unwrap(), vec![2, 0, 5]);
        assert!(parse_weights(&g, "b 1 1 1\n").is_err());
        assert!(parse_weights(&g, "a 1 1\n").is_err());
    }
}
