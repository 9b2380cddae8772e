//! End-to-end acceptance checks. Each test prints a single pass/fail line
//! so the suite doubles as a checklist; run with `--nocapture` to see them.

use std::collections::BTreeSet;
use std::ops::ControlFlow;
use std::path::PathBuf;
use std::process::Command;

use bbsplit_core::classify::{classify_triangle, in_family_g, recognize_special_triangulation};
use bbsplit_core::complex::{build_flag_complex, is_simply_connected, Status, DEFAULT_BUDGET};
use bbsplit_core::decompose::{
    find_chang_tree, flatten_presentation, iterated_decomposition, verify_chang_round_trip,
    z2_leaf_count, DecompNode,
};
use bbsplit_core::graph::{
    for_each_spanning_tree, kirchhoff_count, Edge, SimplicialGraph, SpanningTree,
};
use bbsplit_core::io::parse_graph;
use bbsplit_core::presentation::{abelianization, dicks_leary, papadima_suciu};
use bbsplit_core::word::Word;
use bbsplit_core::{generate, graph};

const CAP: usize = 1_000_000;

fn pass(n: usize, what: &str) {
    println!("acceptance criterion {n} ({what}): pass");
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn bbsplit(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_bbsplit"))
        .args(args)
        .output()
        .expect("bbsplit runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

fn first_tree(g: &SimplicialGraph) -> SpanningTree {
    graph::spanning_trees(g, 1).unwrap().0.remove(0)
}

fn graph_from_edge_set(edges: &BTreeSet<Edge>) -> SimplicialGraph {
    let n = edges.iter().map(|e| e.hi + 1).max().unwrap_or(0);
    let mut g = SimplicialGraph::new(n, None);
    for e in edges {
        g.add_edge(e.lo, e.hi);
    }
    g
}

fn write_complete_graph(n: u32, dir: &std::path::Path) -> PathBuf {
    let mut text = String::from("vertices:");
    for v in 0..n {
        text.push_str(&format!(" x{v}"));
    }
    text.push('\n');
    for a in 0..n {
        for b in a + 1..n {
            text.push_str(&format!("x{a} x{b}\n"));
        }
    }
    let path = dir.join(format!("k{n}.graph"));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn criterion_1_complete_graphs() {
    let dir = std::env::temp_dir().join("bbsplit-acceptance-k");
    std::fs::create_dir_all(&dir).unwrap();
    for n in 3..=6u32 {
        let path = write_complete_graph(n, &dir);
        let (stdout, stderr, code) = bbsplit(&[
            "presentation",
            path.to_str().unwrap(),
            "--style",
            "ps",
            "--output",
            "json",
        ]);
        assert_eq!(code, 0, "K_{n}: {stderr}");
        let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
        let gens = doc["generators"].as_array().unwrap();
        assert_eq!(gens.len(), (n - 1) as usize, "K_{n} generators");
        let relators = doc["relators"].as_array().unwrap();
        let expected = ((n - 1) * (n - 2) / 2) as usize;
        assert_eq!(relators.len(), expected, "K_{n} relators");
        let mut pairs = BTreeSet::new();
        for r in relators {
            let seq: Vec<i64> = r
                .as_array()
                .unwrap()
                .iter()
                .map(|v| v.as_i64().unwrap())
                .collect();
            // Each relator must be a commutator of two distinct generators
            // (stored up to rotation/inversion, so signs vary).
            assert_eq!(seq.len(), 4, "K_{n}: {seq:?}");
            assert_eq!(seq[2], -seq[0], "K_{n}: {seq:?}");
            assert_eq!(seq[3], -seq[1], "K_{n}: {seq:?}");
            let (a, b) = (seq[0].abs(), seq[1].abs());
            assert_ne!(a, b, "K_{n}: {seq:?}");
            pairs.insert((a.min(b), a.max(b)));
        }
        assert_eq!(pairs.len(), expected, "K_{n}: commutator pairs distinct");

        let g = generate::complete_graph(n);
        let ab = abelianization(&papadima_suciu(&g, &first_tree(&g)).unwrap());
        assert_eq!(ab.free_rank, (n - 1) as usize);
        assert!(ab.torsion.is_empty());
    }
    pass(1, "complete graphs K_3..K_6");
}

#[test]
fn criterion_2_random_trees_give_free_groups() {
    for seed in 0..10u64 {
        let n = 3 + (seed % 8) as u32; // 3..=10 vertices
        let g = generate::random_tree(n, seed);
        let t = first_tree(&g);
        let ps = papadima_suciu(&g, &t).unwrap();
        assert_eq!(ps.generator_count(), (n - 1) as usize, "seed {seed}");
        assert!(ps.relators.is_empty(), "seed {seed}: {:?}", ps.relators);
    }
    pass(2, "random trees are free of rank n-1");
}

#[test]
fn criterion_3_hexagon_central_tree_golden_presentation() {
    let fix = generate::hexagon_central_tree();
    let ps = papadima_suciu(&fix.graph, &fix.tree).unwrap();
    let gen = |name: &str| {
        Word::generator(ps.generator_of_edge(fix.edges[name]).expect("tree generator"))
    };
    let expected = [
        Word::commutator(&gen("e1"), &gen("e2")),
        Word::commutator(&gen("e2"), &gen("e3")),
        Word::commutator(&gen("e3"), &gen("e4")),
        Word::commutator(&gen("e5"), &gen("e2").inverse().concat(&gen("e3"))),
    ];
    let mut expected: Vec<Word> = expected.iter().map(|w| w.normal_form()).collect();
    expected.sort();
    assert_eq!(ps.relator_normal_forms(), expected);
    pass(3, "hexagon central-tree presentation matches");
}

#[test]
fn criterion_4_hexagon_peel_tree_presentation_and_decomposition() {
    let fix = generate::hexagon_peel_tree();
    let ps = papadima_suciu(&fix.graph, &fix.tree).unwrap();
    let gen = |name: &str| {
        Word::generator(ps.generator_of_edge(fix.edges[name]).expect("tree generator"))
    };
    let mut expected: Vec<Word> = [
        Word::commutator(&gen("e2"), &gen("e3")),
        Word::commutator(&gen("e2"), &gen("e4")),
        Word::commutator(&gen("e4"), &gen("e5")),
        Word::commutator(&gen("e1"), &gen("e2").concat(&gen("e4").inverse())),
    ]
    .iter()
    .map(|w| w.normal_form())
    .collect();
    expected.sort();
    assert_eq!(ps.relator_normal_forms(), expected);

    let json_path = std::env::temp_dir().join("bbsplit-acceptance-hexagon.json");
    let (stdout, stderr, code) = bbsplit(&[
        "decompose",
        fixture("hexagon.graph").to_str().unwrap(),
        "--tree",
        "v1-v2,v2-v4,v2-v3,v5-v4,v4-v6",
        "--json",
        json_path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout.lines().next(), Some("A_Gamma1 *_Z Z^2"));

    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/decomposition.schema.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    jsonschema::validate(&schema, &doc).expect("decomposition JSON matches schema");

    // One peel, and the remaining graph is favourable under {e2..e5}.
    let d = iterated_decomposition(&fix.graph, Some(fix.tree.clone()), DEFAULT_BUDGET, CAP)
        .unwrap();
    assert_eq!(d.peels.len(), 1);
    let DecompNode::Amalgam { left, .. } = &d.root else {
        panic!("expected amalgam root");
    };
    let DecompNode::Leaf { presentation } = left.as_ref() else {
        panic!("expected RAAG leaf");
    };
    let leaf_edges: BTreeSet<Edge> = presentation
        .generators
        .iter()
        .map(|g| g.source_edge.unwrap())
        .collect();
    let expected_edges: BTreeSet<Edge> = ["e2", "e3", "e4", "e5"]
        .iter()
        .map(|n| fix.edges[*n])
        .collect();
    assert_eq!(leaf_edges, expected_edges);
    pass(4, "hexagon peel-tree presentation and one-peel decomposition");
}

#[test]
fn criterion_5_twelve_vertex_decomposition() {
    let fix = generate::bridged_hexagons();
    let (stdout, stderr, code) = bbsplit(&[
        "decompose",
        fixture("bridged.graph").to_str().unwrap(),
        "--tree",
        "v1-v2,v2-v4,v2-v3,v5-v4,v4-v6,v6-v7,v8-v7,v9-v8,v11-v8,v10-v11,v11-v12",
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert_eq!(stdout.lines().next(), Some("(A_Gamma2 *_Z Z^2) *_Z Z^2"));

    let d = iterated_decomposition(&fix.graph, Some(fix.tree.clone()), DEFAULT_BUDGET, CAP)
        .unwrap();
    assert_eq!(d.complements[0], generate::bridged_complement_one());
    assert_eq!(d.complements[1], generate::bridged_complement_two());

    let DecompNode::Amalgam { left, .. } = &d.root else {
        panic!("expected amalgam root");
    };
    let DecompNode::Amalgam { left, .. } = left.as_ref() else {
        panic!("expected nested amalgam");
    };
    let DecompNode::Leaf { presentation } = left.as_ref() else {
        panic!("expected RAAG leaf");
    };
    let pairs: BTreeSet<(Edge, Edge)> = presentation
        .relators
        .iter()
        .map(|r| {
            let (a, b) = r.as_generator_commutator().expect("RAAG relator");
            let ea = presentation.generators[a].source_edge.unwrap();
            let eb = presentation.generators[b].source_edge.unwrap();
            (ea.min(eb), ea.max(eb))
        })
        .collect();
    let e = &fix.edges;
    let expected: BTreeSet<(Edge, Edge)> = [
        (e["e2"], e["e3"]),
        (e["e2"], e["e4"]),
        (e["e4"], e["e5"]),
        (e["e7"], e["e8"]),
        (e["e8"], e["e9"]),
        (e["e9"], e["e11"]),
    ]
    .iter()
    .map(|&(a, b)| (a.min(b), a.max(b)))
    .collect();
    assert_eq!(pairs, expected);
    pass(5, "12-vertex two-peel decomposition with exact RAAG commutators");
}

#[test]
fn criterion_6_special_triangulation_counting() {
    for i in 0..50u64 {
        let triangles = 3 + (i % 10) as u32; // 3..=12
        let (g, _) = generate::random_special_triangulation(triangles, 1000 + i);
        assert!(
            recognize_special_triangulation(&g).is_some(),
            "sample {i} not recognized"
        );
        let v = g.vertex_count() as i64;
        let e = g.edge_count() as i64;
        assert_eq!(2 * v - e, 3, "sample {i}: 2|V|-|E|");
        let ps = papadima_suciu(&g, &first_tree(&g)).unwrap();
        assert_eq!(ps.generator_count(), (v - 1) as usize, "sample {i} generators");
        assert_eq!(ps.relators.len(), (v - 2) as usize, "sample {i} relators");
    }
    pass(6, "50 random special triangulations");
}

#[test]
fn criterion_7_octahedron_exhaustive_sweep() {
    let g = generate::octahedron();
    let internal: Vec<_> = bbsplit_core::classify::internal_triangles(&g).unwrap();
    assert!(!internal.is_empty());
    let mut tree_count: i128 = 0;
    for_each_spanning_tree(&g, |t| {
        tree_count += 1;
        let unfavourable_internal = internal
            .iter()
            .filter(|&&tri| !classify_triangle(&g, t, tri).unwrap().favourable)
            .count();
        assert!(
            unfavourable_internal >= 2,
            "tree {:?} has only {unfavourable_internal}",
            t.edges()
        );
        ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(tree_count, kirchhoff_count(&g));
    assert_eq!(tree_count, 384);
    let verdict = in_family_g(&g, DEFAULT_BUDGET, CAP).unwrap();
    assert_eq!(verdict.status, Status::No);
    pass(7, "octahedron: every tree leaves >= 2 internal unfavourable");
}

#[test]
fn criterion_8_small_graph_oracle_equivalence() {
    let mut favourable_checked = 0;
    let mut no_witness: Vec<std::collections::BTreeSet<Edge>> = Vec::new();
    for n in 1..=6u32 {
        for g in generate::connected_graphs_exactly(n) {
            if is_simply_connected(&build_flag_complex(&g), DEFAULT_BUDGET).status != Status::Yes
            {
                continue;
            }
            let dl = abelianization(&dicks_leary(&g).unwrap());
            let ps = abelianization(&papadima_suciu(&g, &first_tree(&g)).unwrap());
            assert_eq!(dl, ps, "{:?}", g.edge_set());
            assert_eq!(dl.free_rank, (n - 1) as usize, "{:?}", g.edge_set());
            assert!(dl.torsion.is_empty());
            if n >= 2 {
                let (witness, exhaustive) =
                    bbsplit_core::classify::is_favourable_graph(&g, CAP).unwrap();
                assert!(exhaustive);
                if witness.is_some() {
                    // For almost every favourable graph some favourable
                    // tree witnesses the RAAG isomorphism with an exact
                    // relator match. A triangle with zero tree edges can
                    // leave a path-word commutator behind that is not a
                    // consequence of the generator commutators; in rare
                    // graphs every favourable tree has such a triangle and
                    // no exact witness exists.
                    match find_chang_tree(&g).unwrap() {
                        Some(t) => {
                            assert!(
                                verify_chang_round_trip(&g, &t).unwrap(),
                                "{:?}",
                                g.edge_set()
                            );
                            favourable_checked += 1;
                        }
                        None => {
                            no_witness.push(g.edge_set().clone());
                        }
                    }
                }
            }
        }
    }
    assert!(favourable_checked > 50, "only {favourable_checked} favourable graphs");
    // The witness-free graphs are a small deterministic set; each one must
    // exhibit the zero-tree-edge obstruction on every favourable tree.
    assert!(
        no_witness.len() * 10 < favourable_checked,
        "{} of {} favourable graphs lack an exact witness",
        no_witness.len(),
        favourable_checked
    );
    for edges in &no_witness {
        let g = graph_from_edge_set(edges);
        let mut every_favourable_tree_has_empty_triangle = true;
        for_each_spanning_tree(&g, |t| {
            let favourable = g.triangles().iter().all(|tri| {
                let c = tri.edges().iter().filter(|e| t.contains(**e)).count();
                c == 0 || c == 2
            });
            if favourable
                && !g.triangles().iter().any(|tri| {
                    tri.edges().iter().all(|e| !t.contains(*e))
                })
            {
                every_favourable_tree_has_empty_triangle = false;
                return ControlFlow::Break(());
            }
            ControlFlow::Continue(())
        })
        .unwrap();
        assert!(
            every_favourable_tree_has_empty_triangle,
            "unexplained witness failure: {edges:?}"
        );
    }
    pass(8, "<=6-vertex oracle equivalence and RAAG round-trips");
}

fn gluing_corpus() -> Vec<SimplicialGraph> {
    let hexagon = generate::hexagon();
    let triangle = generate::complete_graph(3);
    let k4 = generate::complete_graph(4);
    let strip = generate::triangle_strip().graph;
    let mut corpus = Vec::new();
    // Pendant triangles along each hexagon edge (clique separator K_2).
    for e in hexagon.edges() {
        corpus.push(hexagon.union(&triangle, &[(0, e.lo), (1, e.hi)]).unwrap());
    }
    // K_4 glued along a hexagon triangle (clique separator K_3).
    for tri in hexagon.triangles() {
        corpus.push(
            hexagon
                .union(&k4, &[(0, tri.a), (1, tri.b), (2, tri.c)])
                .unwrap(),
        );
    }
    // Strip glued along an end edge of the hexagon.
    for e in hexagon.edges() {
        corpus.push(hexagon.union(&strip, &[(0, e.lo), (1, e.hi)]).unwrap());
    }
    // Two hexagons sharing an edge.
    for e in hexagon.edges().take(4) {
        corpus.push(hexagon.union(&hexagon, &[(0, e.lo), (1, e.hi)]).unwrap());
    }
    // Pendant triangles on two hexagon edges at once.
    let edges: Vec<Edge> = hexagon.edges().collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let once = hexagon
                .union(&triangle, &[(0, edges[i].lo), (1, edges[i].hi)])
                .unwrap();
            corpus.push(
                once.union(&triangle, &[(0, edges[j].lo), (1, edges[j].hi)])
                    .unwrap(),
            );
        }
    }
    corpus
}

#[test]
fn criterion_9_decomposition_soundness_over_the_corpus() {
    let mut members: Vec<SimplicialGraph> =
        vec![generate::hexagon(), generate::bridged_hexagons().graph];
    for g in gluing_corpus() {
        if members.len() >= 22 {
            break;
        }
        if in_family_g(&g, DEFAULT_BUDGET, CAP).unwrap().status == Status::Yes {
            members.push(g);
        }
    }
    assert!(
        members.len() >= 22,
        "corpus too small: {} members",
        members.len()
    );
    for (i, g) in members.iter().enumerate() {
        let d = iterated_decomposition(g, None, DEFAULT_BUDGET, CAP).unwrap();
        let flat_ab = abelianization(&flatten_presentation(&d));
        let ps_ab = abelianization(&papadima_suciu(g, &d.witness_tree).unwrap());
        assert_eq!(flat_ab, ps_ab, "member {i}");
        let unfavourable = g
            .triangles()
            .iter()
            .filter(|&&tri| !classify_triangle(g, &d.witness_tree, tri).unwrap().favourable)
            .count();
        assert_eq!(z2_leaf_count(&d.root), unfavourable, "member {i}");
    }
    pass(9, "decomposition soundness on 22 family members");
}

#[test]
fn criterion_10_simple_connectivity_gate() {
    let (stdout, _, code) = bbsplit(&[
        "check",
        fixture("square.graph").to_str().unwrap(),
        "--simply-connected",
    ]);
    assert_eq!(code, 0);
    assert!(stdout.contains("simply connected: no"), "{stdout}");
    assert!(stdout.contains("h1_certificate"), "{stdout}");

    for name in ["hexagon.graph", "strip.graph", "fan.graph", "bridged.graph"] {
        let (stdout, stderr, code) = bbsplit(&[
            "check",
            fixture(name).to_str().unwrap(),
            "--simply-connected",
        ]);
        assert_eq!(code, 0, "{name}: {stderr}");
        assert!(stdout.contains("simply connected: yes"), "{name}: {stdout}");
        assert!(stdout.contains("\"kind\":\"collapse\""), "{name}: {stdout}");
    }
    pass(10, "simple-connectivity verdicts with certificates");
}

#[test]
fn parse_error_exit_code() {
    let dir = std::env::temp_dir();
    let bad = dir.join("bbsplit-acceptance-bad.graph");
    std::fs::write(&bad, "u u\n").unwrap();
    let (_, stderr, code) = bbsplit(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 2, "{stderr}");
}

#[test]
fn precondition_failure_exit_code() {
    let (_, stderr, code) = bbsplit(&["decompose", fixture("octahedron.graph").to_str().unwrap()]);
    assert_eq!(code, 3, "{stderr}");
    let (_, stderr, code) = bbsplit(&["decompose", fixture("strip.graph").to_str().unwrap()]);
    assert_eq!(code, 3, "{stderr}");
}

#[test]
fn budget_exhaustion_exit_code_and_env_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_bbsplit"))
        .args([
            "check",
            fixture("bridged.graph").to_str().unwrap(),
            "--simply-connected",
        ])
        .env("BB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    // Flag takes precedence over the environment.
    let out = Command::new(env!("CARGO_BIN_EXE_bbsplit"))
        .args([
            "check",
            fixture("bridged.graph").to_str().unwrap(),
            "--simply-connected",
            "--budget",
            "100000",
        ])
        .env("BB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn presentation_json_matches_schema() {
    let (stdout, stderr, code) = bbsplit(&[
        "presentation",
        fixture("hexagon.graph").to_str().unwrap(),
        "--style",
        "ps",
        "--output",
        "json",
    ]);
    assert_eq!(code, 0, "{stderr}");
    let schema: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(
            PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas/presentation.schema.json"),
        )
        .unwrap(),
    )
    .unwrap();
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    jsonschema::validate(&schema, &doc).expect("presentation JSON matches schema");
}

#[test]
fn batch_mode_processes_a_directory() {
    let dir = std::env::temp_dir().join("bbsplit-acceptance-batch");
    std::fs::create_dir_all(&dir).unwrap();
    for name in ["hexagon.graph", "strip.graph"] {
        std::fs::copy(fixture(name), dir.join(name)).unwrap();
    }
    let (stdout, stderr, code) = bbsplit(&["analyze", dir.to_str().unwrap(), "--batch"]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("hexagon.graph"), "{stdout}");
    assert!(stdout.contains("strip.graph"), "{stdout}");
    assert_eq!(
        stdout.lines().filter(|l| *l == "connected: yes").count(),
        2,
        "{stdout}"
    );
}

#[test]
fn dot_format_reader_via_cli() {
    let dir = std::env::temp_dir();
    let path = dir.join("bbsplit-acceptance-k3.dot");
    std::fs::write(&path, "graph k3 {\n a -- b;\n b -- c;\n a -- c;\n}\n").unwrap();
    let (stdout, stderr, code) = bbsplit(&[
        "analyze",
        path.to_str().unwrap(),
        "--format",
        "dot",
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.contains("vertices: 3  edges: 3  triangles: 1"), "{stdout}");
}

#[test]
fn fixtures_match_generated_graphs() {
    let hex = parse_graph(&std::fs::read_to_string(fixture("hexagon.graph")).unwrap()).unwrap();
    assert_eq!(hex.graph, generate::hexagon());
    let bridged =
        parse_graph(&std::fs::read_to_string(fixture("bridged.graph")).unwrap()).unwrap();
    assert_eq!(bridged.graph, generate::bridged_hexagons().graph);
    let strip = parse_graph(&std::fs::read_to_string(fixture("strip.graph")).unwrap()).unwrap();
    assert_eq!(strip.graph, generate::triangle_strip().graph);
    let oct =
        parse_graph(&std::fs::read_to_string(fixture("octahedron.graph")).unwrap()).unwrap();
    assert_eq!(oct.graph.edge_set(), generate::octahedron().edge_set());
}
