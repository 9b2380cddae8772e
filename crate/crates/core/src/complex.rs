//! Flag (clique) complexes and the simple-connectivity gate for finite
//! presentability.
//!
//! Deciding simple connectivity is undecidable in general, so the verdict is
//! tri-state. Strategy A collapses the 2-skeleton greedily; strategy B
//! computes the edge-path fundamental-group presentation and simplifies it
//! with bounded Tietze moves, falling back to an integral H1 certificate for
//! refutation.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, SimplicialGraph, SpanningTree, VertexId};
use crate::snf::smith_normal_form;
use crate::word::Word;

pub const DEFAULT_BUDGET: usize = 100_000;

/// Simplicial complex whose simplices are exactly the cliques of the host.
#[derive(Clone, Debug)]
pub struct FlagComplex {
    pub host: SimplicialGraph,
    /// `simplices_by_dim[d]` holds the (d+1)-vertex cliques, sorted.
    pub simplices_by_dim: Vec<Vec<Vec<VertexId>>>,
}

pub fn build_flag_complex(g: &SimplicialGraph) -> FlagComplex {
    let mut by_dim: Vec<Vec<Vec<VertexId>>> = Vec::new();
    let verts: Vec<Vec<VertexId>> = (0..g.vertex_count()).map(|v| vec![v]).collect();
    if !verts.is_empty() {
        by_dim.push(verts);
    }
    // Expand cliques one vertex at a time, always past the current maximum.
    while let Some(prev) = by_dim.last() {
        let mut next = Vec::new();
        for clique in prev {
            let last = *clique.last().unwrap();
            for v in (last + 1)..g.vertex_count() {
                if clique.iter().all(|&u| g.has_edge(u, v)) {
                    let mut bigger = clique.clone();
                    bigger.push(v);
                    next.push(bigger);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        by_dim.push(next);
    }
    FlagComplex {
        host: g.clone(),
        simplices_by_dim: by_dim,
    }
}

impl FlagComplex {
    pub fn simplex_count(&self, dim: usize) -> usize {
        self.simplices_by_dim.get(dim).map_or(0, |s| s.len())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices_by_dim.len().checked_sub(1)
    }

    pub fn triangles(&self) -> &[Vec<VertexId>] {
        self.simplices_by_dim
            .get(2)
            .map_or(&[], |s| s.as_slice())
    }

    pub fn euler_characteristic_2_skeleton(&self) -> i64 {
        self.simplex_count(0) as i64 - self.simplex_count(1) as i64
            + self.simplex_count(2) as i64
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

/// One elementary collapse of the 2-skeleton.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollapseStep {
    /// Free edge removed together with its unique triangle.
    EdgeTriangle { edge: Edge, triangle: [VertexId; 3] },
    /// Free vertex removed together with its unique edge.
    VertexEdge { vertex: VertexId, edge: Edge },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Evidence {
    /// The 2-skeleton collapses to a single vertex through these moves.
    Collapse {
        steps: Vec<CollapseStep>,
        final_vertex: VertexId,
    },
    /// The edge-path group presentation Tietze-trivializes.
    TietzeTrivial {
        initial_generators: usize,
        initial_relators: usize,
        moves: usize,
    },
    /// Nonzero first homology refutes simple connectivity.
    H1Certificate {
        free_rank: usize,
        torsion: Vec<String>,
        boundary_rank: usize,
    },
    Disconnected {
        components: usize,
    },
    Exhausted {
        budget: usize,
        residual_generators: usize,
        residual_relators: usize,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SimplyConnectedVerdict {
    pub status: Status,
    pub evidence: Evidence,
}

/// Tri-state simple-connectivity check of the flag complex.
pub fn is_simply_connected(c: &FlagComplex, budget: usize) -> SimplyConnectedVerdict {
    let comps = c.host.components().len();
    if comps != 1 {
        return SimplyConnectedVerdict {
            status: Status::No,
            evidence: Evidence::Disconnected { components: comps },
        };
    }
    if let Some(v) = try_collapse(c, budget) {
        return v;
    }
    edge_path_verdict(c, budget)
}

/// Strategy A: greedy elementary collapse of the 2-skeleton.
fn try_collapse(c: &FlagComplex, budget: usize) -> Option<SimplyConnectedVerdict> {
    let mut vertices: BTreeSet<VertexId> = (0..c.host.vertex_count()).collect();
    let mut edges: BTreeSet<Edge> = c.host.edges().collect();
    let mut triangles: BTreeSet<[VertexId; 3]> = c
        .triangles()
        .iter()
        .map(|t| [t[0], t[1], t[2]])
        .collect();
    let mut steps = Vec::new();

    let tri_edges = |t: &[VertexId; 3]| {
        [
            Edge::new(t[0], t[1]),
            Edge::new(t[1], t[2]),
            Edge::new(t[0], t[2]),
        ]
    };

    for _ in 0..budget {
        if vertices.len() == 1 && edges.is_empty() && triangles.is_empty() {
            return Some(SimplyConnectedVerdict {
                status: Status::Yes,
                evidence: Evidence::Collapse {
                    steps,
                    final_vertex: *vertices.iter().next().unwrap(),
                },
            });
        }
        // Free edge: contained in exactly one remaining triangle.
        let free_edge = edges.iter().copied().find_map(|e| {
            let mut owner = None;
            for t in &triangles {
                if tri_edges(t).contains(&e) {
                    if owner.is_some() {
                        return None;
                    }
                    owner = Some(*t);
                }
            }
            owner.map(|t| (e, t))
        });
        if let Some((e, t)) = free_edge {
            edges.remove(&e);
            triangles.remove(&t);
            steps.push(CollapseStep::EdgeTriangle {
                edge: e,
                triangle: t,
            });
            continue;
        }
        // Free vertex: contained in exactly one remaining edge.
        let free_vertex = vertices.iter().copied().find_map(|v| {
            let mut owner = None;
            for e in &edges {
                if e.touches(v) {
                    if owner.is_some() {
                        return None;
                    }
                    owner = Some(*e);
                }
            }
            owner.map(|e| (v, e))
        });
        if let Some((v, e)) = free_vertex {
            vertices.remove(&v);
            edges.remove(&e);
            steps.push(CollapseStep::VertexEdge { vertex: v, edge: e });
            continue;
        }
        return None; // stalled
    }
    None
}

/// Replays a collapse certificate against the complex; used by tests.
pub fn verify_collapse(c: &FlagComplex, steps: &[CollapseStep], final_vertex: VertexId) -> bool {
    let mut vertices: BTreeSet<VertexId> = (0..c.host.vertex_count()).collect();
    let mut edges: BTreeSet<Edge> = c.host.edges().collect();
    let mut triangles: BTreeSet<[VertexId; 3]> =
        c.triangles().iter().map(|t| [t[0], t[1], t[2]]).collect();
    for step in steps {
        match step {
            CollapseStep::EdgeTriangle { edge, triangle } => {
                let owners = triangles
                    .iter()
                    .filter(|t| {
                        [
                            Edge::new(t[0], t[1]),
                            Edge::new(t[1], t[2]),
                            Edge::new(t[0], t[2]),
                        ]
                        .contains(edge)
                    })
                    .count();
                if owners != 1 || !edges.remove(edge) || !triangles.remove(triangle) {
                    return false;
                }
            }
            CollapseStep::VertexEdge { vertex, edge } => {
                let owners = edges.iter().filter(|e| e.touches(*vertex)).count();
                if owners != 1 || !vertices.remove(vertex) || !edges.remove(edge) {
                    return false;
                }
            }
        }
    }
    vertices.len() == 1
        && edges.is_empty()
        && triangles.is_empty()
        && vertices.contains(&final_vertex)
}

/// Strategy B: edge-path fundamental group of the 2-skeleton, simplified by
/// bounded Tietze moves, with an H1 fallback certificate.
fn edge_path_verdict(c: &FlagComplex, budget: usize) -> SimplyConnectedVerdict {
    let g = &c.host;
    // Lexicographically least spanning tree of the 1-skeleton.
    let tree_edges = {
        let mut dsu: BTreeMap<VertexId, VertexId> = (0..g.vertex_count()).map(|v| (v, v)).collect();
        fn find(dsu: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
            let p = dsu[&v];
            if p == v {
                return v;
            }
            let r = find(dsu, p);
            dsu.insert(v, r);
            r
        }
        let mut chosen = BTreeSet::new();
        for e in g.edges() {
            let (a, b) = (find(&mut dsu, e.lo), find(&mut dsu, e.hi));
            if a != b {
                dsu.insert(a, b);
                chosen.insert(e);
            }
        }
        chosen
    };
    let tree = SpanningTree::new(g, tree_edges).expect("connected host");

    let nontree: Vec<Edge> = g.edges().filter(|e| !tree.contains(*e)).collect();
    let gen_of: BTreeMap<Edge, usize> = nontree.iter().enumerate().map(|(i, e)| (*e, i)).collect();

    // One relator per triangle: the boundary word with tree edges trivial.
    let mut relators = Vec::new();
    for t in c.triangles() {
        let path = [
            (t[0], t[1]),
            (t[1], t[2]),
            (t[2], t[0]),
        ];
        let mut letters = Vec::new();
        for (u, v) in path {
            let e = Edge::new(u, v);
            if let Some(&gidx) = gen_of.get(&e) {
                let exp = if e.lo == u { 1 } else { -1 };
                letters.push((gidx, exp));
            }
        }
        relators.push(Word::from_letters(letters));
    }

    let initial_generators = nontree.len();
    let initial_relators = relators.len();
    let (alive, relators, moves, exhausted) =
        tietze_simplify(initial_generators, relators, budget);

    if alive.is_empty() {
        return SimplyConnectedVerdict {
            status: Status::Yes,
            evidence: Evidence::TietzeTrivial {
                initial_generators,
                initial_relators,
                moves,
            },
        };
    }

    // H1 of the 2-skeleton from the triangle boundary matrix.
    let tri_count = c.simplex_count(2);
    let edge_list: Vec<Edge> = g.edges().collect();
    let edge_idx: BTreeMap<Edge, usize> = edge_list.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut boundary = vec![vec![0i64; edge_list.len()]; tri_count];
    for (r, t) in c.triangles().iter().enumerate() {
        // d[a,b,c] = [b,c] - [a,c] + [a,b]
        boundary[r][edge_idx[&Edge::new(t[1], t[2])]] += 1;
        boundary[r][edge_idx[&Edge::new(t[0], t[2])]] -= 1;
        boundary[r][edge_idx[&Edge::new(t[0], t[1])]] += 1;
    }
    let snf = smith_normal_form(&boundary);
    let cycle_rank = edge_list.len() - (g.vertex_count() as usize - 1);
    let h1_free = cycle_rank - snf.rank();
    let torsion = snf.nonunit_divisors();
    if h1_free > 0 || !torsion.is_empty() {
        return SimplyConnectedVerdict {
            status: Status::No,
            evidence: Evidence::H1Certificate {
                free_rank: h1_free,
                torsion: torsion.iter().map(|d| d.to_string()).collect(),
                boundary_rank: snf.rank(),
            },
        };
    }

    let _ = exhausted;
    SimplyConnectedVerdict {
        status: Status::Unknown,
        evidence: Evidence::Exhausted {
            budget,
            residual_generators: alive.len(),
            residual_relators: relators.len(),
        },
    }
}

/// Bounded Tietze simplification. Returns the surviving generator indices,
/// the surviving relators, the number of moves, and whether the budget ran
/// out.
pub fn tietze_simplify(
    generators: usize,
    relators: Vec<Word>,
    budget: usize,
) -> (BTreeSet<usize>, Vec<Word>, usize, bool) {
    let mut alive: BTreeSet<usize> = (0..generators).collect();
    let mut rels: Vec<Word> = relators;
    let mut moves = 0usize;

    loop {
        if moves >= budget {
            return (alive, rels, moves, true);
        }
        // Normalize: cyclically reduce, drop trivial, dedup by normal form.
        let mut seen = BTreeSet::new();
        let mut next = Vec::new();
        for r in &rels {
            let w = r.cyclically_reduced();
            if w.is_empty() {
                continue;
            }
            if seen.insert(w.normal_form()) {
                next.push(w);
            }
        }
        rels = next;

        // Eliminate a generator that occurs exactly once in some relator.
        // Prefer short relators; deterministic by (length, position).
        let mut pick: Option<(usize, usize)> = None; // (relator idx, gen)
        let mut order: Vec<usize> = (0..rels.len()).collect();
        order.sort_by_key(|&i| (rels[i].len(), i));
        'search: for &ri in &order {
            let r = &rels[ri];
            let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
            for l in &r.letters {
                *counts.entry(l.gen).or_default() += 1;
            }
            for (&g, &n) in &counts {
                if n == 1 {
                    pick = Some((ri, g));
                    break 'search;
                }
            }
        }
        let Some((ri, gen)) = pick else {
            return (alive, rels, moves, false);
        };
        // Rotate the relator so it starts with gen^e, then solve for gen.
        let r = rels.remove(ri);
        let pos = r.letters.iter().position(|l| l.gen == gen).unwrap();
        let mut rot = r.letters[pos..].to_vec();
        rot.extend_from_slice(&r.letters[..pos]);
        let head = rot.remove(0);
        // head * rest = 1  =>  gen^e = rest^-1.
        let rest = Word { letters: rot };
        let replacement = if head.exp == 1 {
            rest.inverse()
        } else {
            rest
        };
        rels = rels
            .iter()
            .map(|w| w.substitute(gen, &replacement).expect("gen-free replacement"))
            .collect();
        alive.remove(&gen);
        moves += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn k4_flag_complex_is_a_full_simplex() {
        let c = build_flag_complex(&generate::complete_graph(4));
        assert_eq!(c.simplex_count(0), 4);
        assert_eq!(c.simplex_count(1), 6);
        assert_eq!(c.simplex_count(2), 4);
        assert_eq!(c.simplex_count(3), 1);
    }

    #[test]
    fn square_flag_complex_has_no_triangles() {
        let c = build_flag_complex(&generate::cycle_graph(4));
        assert_eq!(c.simplex_count(2), 0);
        let v = is_simply_connected(&c, DEFAULT_BUDGET);
        assert_eq!(v.status, Status::No);
        match v.evidence {
            Evidence::H1Certificate { free_rank, .. } => assert_eq!(free_rank, 1),
            other => panic!("expected H1 certificate, got {other:?}"),
        }
    }

    #[test]
    fn flag_property_matches_brute_force_cliques() {
        // Oracle: subset scan on small graphs.
        for g in [
            generate::octahedron(),
            generate::hexagon(),
            generate::complete_graph(5),
        ] {
            let c = build_flag_complex(&g);
            let n = g.vertex_count();
            for mask in 1u32..(1 << n) {
                let verts: Vec<u32> = (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                let is_clique = verts
                    .iter()
                    .enumerate()
                    .all(|(i, &u)| verts[i + 1..].iter().all(|&v| g.has_edge(u, v)));
                let dim = verts.len() - 1;
                let present = c
                    .simplices_by_dim
                    .get(dim)
                    .is_some_and(|s| s.binary_search(&verts).is_ok());
                assert_eq!(is_clique, present, "verts {verts:?} of {g:?}");
            }
        }
    }

    #[test]
    fn chordal_graphs_are_simply_connected() {
        // K4 stalls the collapse (its 2-skeleton is a sphere) but Tietze
        // trivializes the edge-path group.
        for g in [
            generate::complete_graph(4),
            generate::complete_graph(6),
            SimplicialGraph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)]),
        ] {
            let v = is_simply_connected(&build_flag_complex(&g), DEFAULT_BUDGET);
            assert_eq!(v.status, Status::Yes, "{g:?}");
        }
    }

    #[test]
    fn disk_triangulation_collapses_to_a_point() {
        let c = build_flag_complex(&generate::hexagon());
        let v = is_simply_connected(&c, DEFAULT_BUDGET);
        assert_eq!(v.status, Status::Yes);
        match v.evidence {
            Evidence::Collapse { steps, final_vertex } => {
                assert!(verify_collapse(&c, &steps, final_vertex));
                assert_eq!(c.euler_characteristic_2_skeleton(), 1);
            }
            other => panic!("expected collapse evidence, got {other:?}"),
        }
    }

    #[test]
    fn octahedron_sphere_is_simply_connected() {
        let v = is_simply_connected(&build_flag_complex(&generate::octahedron()), DEFAULT_BUDGET);
        assert_eq!(v.status, Status::Yes);
    }

    #[test]
    fn disconnected_host_is_rejected() {
        let g = SimplicialGraph::from_edges(4, &[(0, 1), (2, 3)]);
        let v = is_simply_connected(&build_flag_complex(&g), DEFAULT_BUDGET);
        assert_eq!(v.status, Status::No);
        assert!(matches!(v.evidence, Evidence::Disconnected { components: 2 }));
    }
}
