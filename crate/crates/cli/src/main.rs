use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bbsplit_core::classify::{
    classify_triangle, in_family_g, optimize_spanning_tree, TreeSearchMode, TreeSearchOutcome,
    DEFAULT_TREE_CAP,
};
use bbsplit_core::complex::{build_flag_complex, is_simply_connected, Status, DEFAULT_BUDGET};
use bbsplit_core::decompose::{
    flatten_presentation, iterated_decomposition, render_expression, DecompNode,
    DecompositionTree,
};
use bbsplit_core::graph::{kirchhoff_count, spanning_trees, Edge, SimplicialGraph, SpanningTree};
use bbsplit_core::io::{
    emit_presentation, parse_dot, parse_graph, GraphDocument, PresentationFormat,
};
use bbsplit_core::presentation::{abelianization, dicks_leary, papadima_suciu};
use bbsplit_core::Error;

#[derive(Parser)]
#[command(name = "bbsplit", version, about = "Bestvina-Brady group computations from graph data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    EdgeList,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Style {
    Dl,
    Ps,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Plain,
    Cas,
    Json,
}

#[derive(Args)]
struct InputArgs {
    /// Graph file (or a directory with --batch).
    path: PathBuf,
    #[arg(long, value_enum, default_value = "edge-list")]
    format: InputFormat,
}

#[derive(Subcommand)]
enum Command {
    /// Full report: connectivity, flag-complex statistics, simple
    /// connectivity, favourability, and family membership.
    Analyze {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        budget: Option<usize>,
        /// Treat PATH as a directory and analyze every .graph file in it.
        #[arg(long)]
        batch: bool,
    },
    /// Edge-generated or spanning-tree-generated presentation.
    Presentation {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum)]
        style: Style,
        /// Spanning tree as comma-separated label pairs, e.g. v1-v2,v2-v3.
        #[arg(long)]
        tree: Option<String>,
        #[arg(long, value_enum, default_value = "plain")]
        output: OutputFormat,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Iterated amalgam decomposition (or a diagnostic if none applies).
    Decompose {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        tree: Option<String>,
        /// Write the decomposition as JSON to this path.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Spanning-tree statistics and tree optimization.
    Trees {
        #[command(flatten)]
        input: InputArgs,
        /// List up to N spanning trees.
        #[arg(long, value_name = "N")]
        enumerate: Option<usize>,
        /// Search for a tree minimizing unfavourable triangles.
        #[arg(long)]
        optimize: bool,
    },
    /// Verification checks on the flag complex.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        simply_connected: bool,
        #[arg(long)]
        budget: Option<usize>,
    },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::VerdictUnknown(_) => 4,
        _ => 3,
    }
}

fn resolve_budget(flag: Option<usize>) -> usize {
    flag.or_else(|| {
        std::env::var("BB_BUDGET")
            .ok()
            .and_then(|v| v.parse().ok())
    })
    .unwrap_or(DEFAULT_BUDGET)
}

fn load_graph(path: &Path, format: InputFormat) -> Result<GraphDocument, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    match format {
        InputFormat::EdgeList => parse_graph(&text),
        InputFormat::Dot => parse_dot(&text),
    }
}

fn parse_tree_flag(g: &SimplicialGraph, spec: &str) -> Result<SpanningTree, Error> {
    let mut edges = BTreeSet::new();
    for part in spec.split(',') {
        let part = part.trim();
        let Some((a, b)) = part.split_once('-') else {
            return Err(Error::NotASpanningTree(format!(
                "bad edge syntax {part:?}; expected label-label"
            )));
        };
        let lookup = |name: &str| {
            g.vertex_by_label(name)
                .ok_or_else(|| Error::NotASpanningTree(format!("unknown vertex {name:?}")))
        };
        let e = Edge::new(lookup(a.trim())?, lookup(b.trim())?);
        if !g.edge_set().contains(&e) {
            return Err(Error::EdgeNotInGraph(e));
        }
        edges.insert(e);
    }
    SpanningTree::new(g, edges)
}

fn analyze_one(g: &SimplicialGraph, budget: usize) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "vertices: {}  edges: {}  triangles: {}\n",
        g.vertex_count(),
        g.edge_count(),
        g.triangles().len()
    ));
    out.push_str(&format!(
        "connected: {}\n",
        if g.is_connected() { "yes" } else { "no" }
    ));
    if !g.is_connected() {
        return out;
    }
    let complex = build_flag_complex(g);
    out.push_str(&format!(
        "flag complex: dimension {}, euler characteristic (2-skeleton) {}\n",
        complex
            .dimension()
            .map(|d| d.to_string())
            .unwrap_or_else(|| "empty".into()),
        complex.euler_characteristic_2_skeleton()
    ));
    let sc = is_simply_connected(&complex, budget);
    out.push_str(&format!("simply connected: {}\n", status_str(sc.status)));
    match optimize_spanning_tree(g, TreeSearchMode::MinimizeUnfavourable, DEFAULT_TREE_CAP) {
        Ok(TreeSearchOutcome::Found(r)) => {
            out.push_str(&format!(
                "best tree: {} unfavourable ({} internal){}\n",
                r.unfavourable_count,
                r.unfavourable_internal_count,
                if r.exhaustive { "" } else { " [search capped]" }
            ));
            out.push_str(&format!(
                "favourable graph: {}\n",
                if r.unfavourable_count == 0 { "yes" } else { "no" }
            ));
        }
        Ok(_) | Err(_) => out.push_str("best tree: search failed\n"),
    }
    match in_family_g(g, budget, DEFAULT_TREE_CAP) {
        Ok(v) => out.push_str(&format!(
            "decomposable family member: {} ({})\n",
            status_str(v.status),
            v.explanation
        )),
        Err(e) => out.push_str(&format!("decomposable family member: error ({e})\n")),
    }
    out
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Yes => "yes",
        Status::No => "no",
        Status::Unknown => "unknown",
    }
}

fn cmd_analyze(input: &InputArgs, budget: Option<usize>, batch: bool) -> Result<(), Error> {
    let budget = resolve_budget(budget);
    if !batch {
        let doc = load_graph(&input.path, input.format)?;
        print!("{}", analyze_one(&doc.graph, budget));
        return Ok(());
    }
    let mut files: Vec<PathBuf> = std::fs::read_dir(&input.path)
        .map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot read directory {}: {e}", input.path.display()),
        })?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    let format = input.format;
    let reports: Vec<(PathBuf, Result<String, Error>)> = std::thread::scope(|scope| {
        let handles: Vec<_> = files
            .iter()
            .map(|path| {
                scope.spawn(move || {
                    load_graph(path, format).map(|doc| analyze_one(&doc.graph, budget))
                })
            })
            .collect();
        files
            .iter()
            .cloned()
            .zip(handles.into_iter().map(|h| h.join().expect("analysis thread")))
            .collect()
    });
    let mut first_err = None;
    for (path, report) in reports {
        println!("== {} ==", path.display());
        match report {
            Ok(text) => print!("{text}"),
            Err(e) => {
                println!("error: {e}");
                first_err.get_or_insert(e);
            }
        }
    }
    match first_err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn cmd_presentation(
    input: &InputArgs,
    style: Style,
    tree: Option<&str>,
    output: OutputFormat,
    budget: Option<usize>,
) -> Result<(), Error> {
    let doc = load_graph(&input.path, input.format)?;
    let g = &doc.graph;
    let budget = resolve_budget(budget);
    let sc = is_simply_connected(&build_flag_complex(g), budget);
    let p = match style {
        Style::Dl => dicks_leary(g)?,
        Style::Ps => {
            let t = match tree {
                Some(spec) => parse_tree_flag(g, spec)?,
                None => {
                    let (edges, _) = spanning_trees(g, 1)?;
                    edges.into_iter().next().ok_or(Error::Disconnected)?
                }
            };
            papadima_suciu(g, &t)?
        }
    };
    if sc.status != Status::Yes {
        println!(
            "# warning: unverified hypothesis - flag complex simple connectivity is {}",
            status_str(sc.status)
        );
    }
    let fmt = match output {
        OutputFormat::Plain => PresentationFormat::Plain,
        OutputFormat::Cas => PresentationFormat::Cas,
        OutputFormat::Json => PresentationFormat::Json,
    };
    print!("{}", emit_presentation(&p, fmt));
    if output == OutputFormat::Plain {
        let ab = abelianization(&p);
        println!(
            "abelianization: free rank {}, torsion [{}]",
            ab.free_rank,
            ab.torsion
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    Ok(())
}

fn leaf_summaries(node: &DecompNode, out: &mut Vec<String>) {
    match node {
        DecompNode::Leaf { presentation } => {
            out.push(emit_presentation(presentation, PresentationFormat::Plain));
        }
        DecompNode::Amalgam { left, right, .. } => {
            leaf_summaries(left, out);
            leaf_summaries(right, out);
        }
    }
}

fn decomposition_json(d: &DecompositionTree) -> serde_json::Value {
    let mut value = serde_json::to_value(d).expect("decomposition serializes");
    value
        .as_object_mut()
        .expect("decomposition is an object")
        .insert(
            "expression".into(),
            serde_json::Value::String(render_expression(d)),
        );
    value
}

fn cmd_decompose(
    input: &InputArgs,
    tree: Option<&str>,
    json: Option<&Path>,
    budget: Option<usize>,
) -> Result<(), Error> {
    let doc = load_graph(&input.path, input.format)?;
    let g = &doc.graph;
    let budget = resolve_budget(budget);
    let override_tree = tree.map(|spec| parse_tree_flag(g, spec)).transpose()?;
    let d = iterated_decomposition(g, override_tree, budget, DEFAULT_TREE_CAP)?;
    println!("{}", render_expression(&d));
    if !d.exact_raag {
        println!(
            "# note: final leaf keeps residual relators; the RAAG identification is unverified"
        );
    }
    for (i, peel) in d.peels.iter().enumerate() {
        println!(
            "peel {}: triangle {{{} {} {}}}, tree edge {}, shared edge {}",
            i + 1,
            g.label(peel.triangle.a),
            g.label(peel.triangle.b),
            g.label(peel.triangle.c),
            g.edge_label(peel.tree_edge),
            g.edge_label(peel.shared_edge),
        );
    }
    let mut leaves = Vec::new();
    leaf_summaries(&d.root, &mut leaves);
    for (i, text) in leaves.iter().enumerate() {
        println!("leaf {}:", i + 1);
        for line in text.lines() {
            println!("  {line}");
        }
    }
    let flat = flatten_presentation(&d);
    let ab = abelianization(&flat);
    println!(
        "flattened abelianization: free rank {}, torsion [{}]",
        ab.free_rank,
        ab.torsion
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    if let Some(path) = json {
        let text = serde_json::to_string_pretty(&decomposition_json(&d))
            .expect("decomposition serializes");
        std::fs::write(path, text + "\n").map_err(|e| Error::Parse {
            line: 0,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
    }
    Ok(())
}

fn cmd_trees(input: &InputArgs, enumerate: Option<usize>, optimize: bool) -> Result<(), Error> {
    let doc = load_graph(&input.path, input.format)?;
    let g = &doc.graph;
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    println!("spanning trees: {}", kirchhoff_count(g));
    if let Some(n) = enumerate {
        let (trees, complete) = spanning_trees(g, n)?;
        for t in &trees {
            let labels: Vec<String> = t.edges().iter().map(|&e| g.edge_label(e)).collect();
            println!("tree: {}", labels.join(","));
        }
        if !complete {
            println!("(list truncated at {n})");
        }
    }
    if optimize {
        match optimize_spanning_tree(g, TreeSearchMode::MinimizeUnfavourable, DEFAULT_TREE_CAP)? {
            TreeSearchOutcome::Found(r) => {
                let labels: Vec<String> =
                    r.best_tree.edges().iter().map(|&e| g.edge_label(e)).collect();
                println!("optimal tree: {}", labels.join(","));
                println!(
                    "unfavourable: {} ({} internal){}",
                    r.unfavourable_count,
                    r.unfavourable_internal_count,
                    if r.exhaustive { "" } else { " [search capped]" }
                );
                match optimize_spanning_tree(
                    g,
                    TreeSearchMode::ForbidInternalUnfavourable,
                    DEFAULT_TREE_CAP,
                )? {
                    TreeSearchOutcome::Found(_) => {
                        println!("tree with no internal unfavourable triangles: exists");
                    }
                    TreeSearchOutcome::NoneExists => {
                        let floor = min_internal_unfavourable(g)?;
                        println!(
                            "tree with no internal unfavourable triangles: none \
                             (minimum internal unfavourable over all trees: {floor})"
                        );
                    }
                    TreeSearchOutcome::CapReached => {
                        println!("tree with no internal unfavourable triangles: undecided (cap)");
                    }
                }
            }
            TreeSearchOutcome::NoneExists | TreeSearchOutcome::CapReached => {
                println!("optimization failed");
            }
        }
    }
    Ok(())
}

fn min_internal_unfavourable(g: &SimplicialGraph) -> Result<usize, Error> {
    let internal = bbsplit_core::classify::internal_triangles(g)?;
    let mut best = usize::MAX;
    bbsplit_core::graph::for_each_spanning_tree(g, |t| {
        let count = internal
            .iter()
            .filter(|&&tri| {
                classify_triangle(g, t, tri)
                    .map(|r| !r.favourable)
                    .unwrap_or(false)
            })
            .count();
        best = best.min(count);
        std::ops::ControlFlow::Continue(())
    })?;
    Ok(best)
}

fn cmd_check(input: &InputArgs, simply_connected: bool, budget: Option<usize>) -> Result<(), Error> {
    let doc = load_graph(&input.path, input.format)?;
    let g = &doc.graph;
    if !simply_connected {
        return Err(Error::NotInFamily(
            "nothing to check; pass --simply-connected".into(),
        ));
    }
    let budget = resolve_budget(budget);
    let verdict = is_simply_connected(&build_flag_complex(g), budget);
    println!("simply connected: {}", status_str(verdict.status));
    println!(
        "evidence: {}",
        serde_json::to_string(&verdict.evidence).expect("evidence serializes")
    );
    match verdict.status {
        Status::Unknown => Err(Error::VerdictUnknown("budget exhausted".into())),
        _ => Ok(()),
    }
}

fn run(cli: &Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Analyze {
            input,
            budget,
            batch,
        } => cmd_analyze(input, *budget, *batch),
        Command::Presentation {
            input,
            style,
            tree,
            output,
            budget,
        } => cmd_presentation(input, *style, tree.as_deref(), *output, *budget),
        Command::Decompose {
            input,
            tree,
            json,
            budget,
        } => cmd_decompose(input, tree.as_deref(), json.as_deref(), *budget),
        Command::Trees {
            input,
            enumerate,
            optimize,
        } => cmd_trees(input, *enumerate, *optimize),
        Command::Check {
            input,
            simply_connected,
            budget,
        } => cmd_check(input, *simply_connected, *budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
