//! Graph constructors: standard families, the worked 6- and 12-vertex
//! disk-triangulation fixtures used across the test suite, random special /
//! extra-special triangulations, and an exhaustive small-graph enumerator.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::graph::{Edge, SimplicialGraph, SpanningTree, VertexId};

/// A graph together with a distinguished spanning tree and a name -> edge
/// table for the edges the tests talk about.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub graph: SimplicialGraph,
    pub edges: BTreeMap<&'static str, Edge>,
    pub tree: SpanningTree,
}

impl Fixture {
    fn new(
        graph: SimplicialGraph,
        named: &[(&'static str, (VertexId, VertexId))],
        tree_names: &[&'static str],
    ) -> Self {
        let edges: BTreeMap<&'static str, Edge> = named
            .iter()
            .map(|&(n, (a, b))| (n, Edge::new(a, b)))
            .collect();
        let tree_edges = tree_names.iter().map(|n| edges[n]).collect();
        let tree = SpanningTree::new(&graph, tree_edges).expect("fixture tree");
        Fixture { graph, edges, tree }
    }
}

pub fn complete_graph(n: u32) -> SimplicialGraph {
    let mut g = SimplicialGraph::new(n, None);
    for a in 0..n {
        for b in (a + 1)..n {
            g.add_edge(a, b);
        }
    }
    g
}

pub fn cycle_graph(n: u32) -> SimplicialGraph {
    assert!(n >= 3);
    let mut g = SimplicialGraph::new(n, None);
    for v in 0..n {
        g.add_edge(v, (v + 1) % n);
    }
    g
}

pub fn path_graph(n: u32) -> SimplicialGraph {
    let mut g = SimplicialGraph::new(n, None);
    for v in 1..n {
        g.add_edge(v - 1, v);
    }
    g
}

pub fn star_graph(n: u32) -> SimplicialGraph {
    let mut g = SimplicialGraph::new(n, None);
    for v in 1..n {
        g.add_edge(0, v);
    }
    g
}

/// Cone over `base`: the apex is appended as the last vertex.
pub fn cone(base: &SimplicialGraph) -> SimplicialGraph {
    let n = base.vertex_count();
    let mut labels: Vec<String> = base.labels().to_vec();
    let mut apex = String::from("apex");
    while labels.contains(&apex) {
        apex.push('_');
    }
    labels.push(apex);
    let mut g = SimplicialGraph::new(n + 1, Some(labels));
    for e in base.edges() {
        g.add_edge(e.lo, e.hi);
    }
    for v in 0..n {
        g.add_edge(v, n);
    }
    g
}

/// The 3-fold join of two isolated vertices: every edge except the three
/// pairings (0,1), (2,3), (4,5).
pub fn octahedron() -> SimplicialGraph {
    let mut g = SimplicialGraph::new(6, None);
    for a in 0..6u32 {
        for b in (a + 1)..6 {
            if !(b == a + 1 && a % 2 == 0) {
                g.add_edge(a, b);
            }
        }
    }
    g
}

/// Shared 6-vertex disk triangulation (an extra-special triangulation):
/// a central triangle {v2, v5, v4} with one apex on each of its edges.
/// Vertex order v1 < v2 < v3 < v5 < v4 < v6 makes every drawn orientation
/// run from the smaller to the larger index.
pub fn hexagon() -> SimplicialGraph {
    let labels = ["v1", "v2", "v3", "v5", "v4", "v6"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut g = SimplicialGraph::new(6, Some(labels));
    for (a, b) in [
        (0, 1), // v1-v2
        (1, 3), // v2-v5
        (1, 4), // v2-v4
        (1, 2), // v2-v3
        (4, 5), // v4-v6
        (0, 3), // v1-v5
        (3, 4), // v5-v4
        (3, 5), // v5-v6
        (2, 4), // v3-v4
    ] {
        g.add_edge(a, b);
    }
    g
}

/// Hexagon with the mostly-central spanning tree {v1v2, v2v5, v2v4, v2v3,
/// v4v6}; its tree presentation has three single-generator commutators plus
/// one mixed commutator.
pub fn hexagon_central_tree() -> Fixture {
    Fixture::new(
        hexagon(),
        &[
            ("e1", (0, 1)),
            ("e2", (1, 3)),
            ("e3", (1, 4)),
            ("e4", (1, 2)),
            ("e5", (4, 5)),
            ("v1v5", (0, 3)),
            ("v5v4", (3, 4)),
            ("v5v6", (3, 5)),
            ("v3v4", (2, 4)),
        ],
        &["e1", "e2", "e3", "e4", "e5"],
    )
}

/// Hexagon with the spanning tree {v1v2, v2v4, v2v3, v5v4, v4v6}, which has
/// exactly one unfavourable triangle {v1, v2, v5} and supports a single
/// amalgam peel.
pub fn hexagon_peel_tree() -> Fixture {
    Fixture::new(
        hexagon(),
        &[
            ("e1", (0, 1)),
            ("e2", (1, 4)),
            ("e3", (1, 2)),
            ("e4", (3, 4)),
            ("e5", (4, 5)),
            ("f1", (1, 3)),
            ("f1p", (0, 3)),
            ("v5v6", (3, 5)),
            ("v3v4", (2, 4)),
        ],
        &["e1", "e2", "e3", "e4", "e5"],
    )
}

/// A strip of four triangles between two horizontal paths; every triangle
/// is favourable with respect to the zigzag tree, and the resulting group
/// is the RAAG on a 5-vertex path. Vertex order v1 < v4 < v2 < v5 < v3 <
/// v6 follows the drawn orientations.
pub fn triangle_strip() -> Fixture {
    let labels = ["v1", "v4", "v2", "v5", "v3", "v6"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut g = SimplicialGraph::new(6, Some(labels));
    for (a, b) in [
        (0, 1), // v1-v4
        (1, 2), // v4-v2
        (2, 3), // v2-v5
        (3, 4), // v5-v3
        (4, 5), // v3-v6
        (1, 3), // v4-v5
        (3, 5), // v5-v6
        (0, 2), // v1-v2
        (2, 4), // v2-v3
    ] {
        g.add_edge(a, b);
    }
    Fixture::new(
        g,
        &[
            ("e1", (0, 1)),
            ("e2", (1, 2)),
            ("e3", (2, 3)),
            ("e4", (3, 4)),
            ("e5", (4, 5)),
            ("v4v5", (1, 3)),
            ("v5v6", (3, 5)),
            ("v1v2", (0, 2)),
            ("v2v3", (2, 4)),
        ],
        &["e1", "e2", "e3", "e4", "e5"],
    )
}

/// Two hexagon blocks joined by the bridge edge v6-v7; the canonical
/// 12-vertex input whose group splits as two iterated amalgam peels over a
/// RAAG on nine generators.
pub fn bridged_hexagons() -> Fixture {
    let labels = [
        "v1", "v2", "v3", "v5", "v4", "v6", "v10", "v11", "v12", "v9", "v8", "v7",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut g = SimplicialGraph::new(12, Some(labels));
    let named: &[(&'static str, (VertexId, VertexId))] = &[
        ("e1", (0, 1)),    // v1-v2
        ("f1", (1, 3)),    // v2-v5
        ("e2", (1, 4)),    // v2-v4
        ("e3", (1, 2)),    // v2-v3
        ("e5", (4, 5)),    // v4-v6
        ("f1p", (0, 3)),   // v1-v5
        ("e4", (3, 4)),    // v5-v4
        ("v5v6", (3, 5)),  // v5-v6
        ("v3v4", (2, 4)),  // v3-v4
        ("e6", (5, 11)),   // v6-v7
        ("e10", (6, 7)),   // v10-v11
        ("f2", (7, 9)),    // v11-v9
        ("e9", (7, 10)),   // v11-v8
        ("e11", (7, 8)),   // v11-v12
        ("e7", (10, 11)),  // v8-v7
        ("f2p", (6, 9)),   // v10-v9
        ("e8", (9, 10)),   // v9-v8
        ("v9v7", (9, 11)), // v9-v7
        ("v12v8", (8, 10)),// v12-v8
    ];
    for &(_, (a, b)) in named {
        g.add_edge(a, b);
    }
    Fixture::new(
        g,
        named,
        &[
            "e1", "e2", "e3", "e4", "e5", "e6", "e7", "e8", "e9", "e10", "e11",
        ],
    )
}

/// Expected edge-set complement of the triangle {v1, v2, v5} in
/// `bridged_hexagons`: v1 drops out, the edge v2-v5 reappears between the
/// survivors.
pub fn bridged_complement_one() -> SimplicialGraph {
    let labels = [
        "v2", "v3", "v5", "v4", "v6", "v10", "v11", "v12", "v9", "v8", "v7",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    let mut g = SimplicialGraph::new(11, Some(labels));
    for (a, b) in [
        (0, 2), // v2-v5
        (0, 3), // v2-v4
        (0, 1), // v2-v3
        (2, 3), // v5-v4
        (3, 4), // v4-v6
        (2, 4), // v5-v6
        (1, 3), // v3-v4
        (4, 10),// v6-v7
        (5, 6), // v10-v11
        (6, 8), // v11-v9
        (6, 9), // v11-v8
        (6, 7), // v11-v12
        (9, 10),// v8-v7
        (5, 8), // v10-v9
        (8, 9), // v9-v8
        (8, 10),// v9-v7
        (7, 9), // v12-v8
    ] {
        g.add_edge(a, b);
    }
    g
}

/// Expected edge-set complement of {v10, v11, v9} inside
/// `bridged_complement_one`: v10 drops out, v11-v9 reappears.
pub fn bridged_complement_two() -> SimplicialGraph {
    let labels = ["v2", "v3", "v5", "v4", "v6", "v11", "v12", "v9", "v8", "v7"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let mut g = SimplicialGraph::new(10, Some(labels));
    for (a, b) in [
        (0, 2), // v2-v5
        (0, 3), // v2-v4
        (0, 1), // v2-v3
        (2, 3), // v5-v4
        (3, 4), // v4-v6
        (2, 4), // v5-v6
        (1, 3), // v3-v4
        (4, 9), // v6-v7
        (5, 7), // v11-v9
        (5, 8), // v11-v8
        (5, 6), // v11-v12
        (8, 9), // v8-v7
        (7, 8), // v9-v8
        (7, 9), // v9-v7
        (6, 8), // v12-v8
    ] {
        g.add_edge(a, b);
    }
    g
}

/// Uniform-ish random tree on `n` vertices: each vertex attaches to a
/// uniformly chosen earlier vertex.
pub fn random_tree(n: u32, seed: u64) -> SimplicialGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = SimplicialGraph::new(n, None);
    for v in 1..n {
        let u = rng.gen_range(0..v);
        g.add_edge(u, v);
    }
    g
}

/// Random special triangulation of the disk with `triangles` faces, built
/// forward: start from one triangle and repeatedly cone a new vertex onto a
/// randomly chosen boundary edge. Returns the graph and its final boundary
/// cycle edges.
pub fn random_special_triangulation(triangles: u32, seed: u64) -> (SimplicialGraph, Vec<Edge>) {
    assert!(triangles >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = triangles + 2;
    let mut g = SimplicialGraph::new(n, None);
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    let mut boundary = vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
    for w in 3..n {
        let i = rng.gen_range(0..boundary.len());
        let e = boundary.swap_remove(i);
        g.add_edge(e.lo, w);
        g.add_edge(e.hi, w);
        boundary.push(Edge::new(e.lo, w));
        boundary.push(Edge::new(e.hi, w));
    }
    (g, boundary)
}

/// Random extra-special triangulation: a random special core with one new
/// apex vertex coned onto every boundary edge.
pub fn random_extra_special_triangulation(core_triangles: u32, seed: u64) -> SimplicialGraph {
    let (core, boundary) = random_special_triangulation(core_triangles, seed);
    let n0 = core.vertex_count();
    let mut g = SimplicialGraph::new(n0 + boundary.len() as u32, None);
    for e in core.edges() {
        g.add_edge(e.lo, e.hi);
    }
    for (k, e) in boundary.iter().enumerate() {
        let w = n0 + k as u32;
        g.add_edge(e.lo, w);
        g.add_edge(e.hi, w);
    }
    g
}

/// All connected graphs on exactly `n` labelled vertices, one representative
/// per isomorphism class. Exhaustive bitmask sweep; intended for n <= 6.
pub fn connected_graphs_exactly(n: u32) -> Vec<SimplicialGraph> {
    assert!(n >= 1 && n <= 6);
    let pairs: Vec<(u32, u32)> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut g = SimplicialGraph::new(n, None);
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                g.add_edge(a, b);
            }
        }
        if !g.is_connected() {
            continue;
        }
        if seen.insert(g.canonical_key()) {
            out.push(g);
        }
    }
    out
}
