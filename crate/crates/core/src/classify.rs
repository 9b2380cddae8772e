//! Triangle classification relative to a spanning tree, spanning-tree
//! optimization, and recognizers for the graph classes whose groups admit a
//! RAAG isomorphism or an iterated amalgam splitting.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::complex::{build_flag_complex, is_simply_connected, Status};
use crate::graph::{
    intersect, Edge, SimplicialGraph, SpanningTree, Triangle, VertexId,
};
use crate::{Error, Result};

pub const DEFAULT_TREE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComplementIntersection {
    Empty,
    OneVertex,
    OneEdge,
    Larger,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TriangleReport {
    pub triangle: Triangle,
    pub tree_edge_count: u8,
    pub favourable: bool,
    pub internal: bool,
    pub complement_intersection: ComplementIntersection,
}

/// Classifies one triangle: how many of its edges the tree uses (0 or 2 is
/// favourable) and how it meets its edge-set complement. An empty
/// intersection (a standalone triangle component) counts as NOT internal.
pub fn classify_triangle(
    g: &SimplicialGraph,
    t: &SpanningTree,
    tri: Triangle,
) -> Result<TriangleReport> {
    let tree_edge_count = tri.edges().iter().filter(|e| t.contains(**e)).count() as u8;
    debug_assert!(tree_edge_count < 3, "tree contains a cycle");
    let complement = g.edge_set_complement_subgraph(tri)?;
    let (verts, edges) = intersect(&complement, &g.triangle_subgraph(tri))?;
    let complement_intersection = match (verts.len(), edges.len()) {
        (0, 0) => ComplementIntersection::Empty,
        (1, 0) => ComplementIntersection::OneVertex,
        (2, 1) => ComplementIntersection::OneEdge,
        _ => ComplementIntersection::Larger,
    };
    Ok(TriangleReport {
        triangle: tri,
        tree_edge_count,
        favourable: tree_edge_count == 0 || tree_edge_count == 2,
        internal: complement_intersection == ComplementIntersection::Larger,
        complement_intersection,
    })
}

/// Triangles of `g` that are internal (a tree-independent notion).
pub fn internal_triangles(g: &SimplicialGraph) -> Result<Vec<Triangle>> {
    let mut out = Vec::new();
    for tri in g.triangles() {
        let complement = g.edge_set_complement_subgraph(tri)?;
        let (verts, _) = intersect(&complement, &g.triangle_subgraph(tri))?;
        if verts.len() == 3 {
            out.push(tri);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TreeSearchMode {
    /// Minimize the number of unfavourable triangles.
    MinimizeUnfavourable,
    /// Among trees with no unfavourable internal triangle, minimize the
    /// number of unfavourable triangles.
    ForbidInternalUnfavourable,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeSearchResult {
    pub best_tree: SpanningTree,
    pub unfavourable_count: usize,
    pub unfavourable_internal_count: usize,
    pub exhaustive: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub enum TreeSearchOutcome {
    Found(TreeSearchResult),
    /// Exhaustively verified that no tree satisfies the mode's constraint.
    NoneExists,
    /// The candidate cap was hit before any satisfying tree appeared.
    CapReached,
}

/// Deterministic branch-and-bound over the spanning trees of `g` in
/// canonical (lexicographic) order. The bound counts only triangles whose
/// three in/out decisions are already fixed, which is admissible; ties are
/// broken toward the lexicographically least edge set because the first
/// optimum found in canonical order is kept.
pub fn optimize_spanning_tree(
    g: &SimplicialGraph,
    mode: TreeSearchMode,
    cap: usize,
) -> Result<TreeSearchOutcome> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count() as usize;
    let edges: Vec<Edge> = g.edges().collect();
    let triangles = g.triangles();
    let internal: Vec<bool> = {
        let ints: BTreeSet<Triangle> = internal_triangles(g)?.into_iter().collect();
        triangles.iter().map(|t| ints.contains(t)).collect()
    };
    // For each triangle, the positions of its edges in the edge list.
    let tri_edge_pos: Vec<[usize; 3]> = triangles
        .iter()
        .map(|t| {
            let mut pos = [0usize; 3];
            for (k, e) in t.edges().iter().enumerate() {
                pos[k] = edges.iter().position(|x| x == e).unwrap();
            }
            pos
        })
        .collect();

    struct Search<'a> {
        edges: &'a [Edge],
        n: usize,
        tri_edge_pos: &'a [[usize; 3]],
        internal: &'a [bool],
        mode: TreeSearchMode,
        cap: usize,
        visited: usize,
        best: Option<(usize, Vec<Edge>, usize)>, // (unfav, tree, unfav_internal)
        capped: bool,
    }

    impl Search<'_> {
        /// Unfavourable count over triangles fully decided by `in_set` /
        /// `decided` (edges with index < idx are decided). Returns
        /// (lower bound, violates_internal_constraint).
        fn decided_counts(&self, idx: usize, in_set: &[bool]) -> (usize, bool) {
            let mut unfav = 0;
            let mut internal_unfav = false;
            for (ti, pos) in self.tri_edge_pos.iter().enumerate() {
                if pos.iter().any(|&p| p >= idx) {
                    continue;
                }
                let count = pos.iter().filter(|&&p| in_set[p]).count();
                if count == 1 {
                    unfav += 1;
                    if self.internal[ti] {
                        internal_unfav = true;
                    }
                }
            }
            (unfav, internal_unfav)
        }

        fn leaf_counts(&self, in_set: &[bool]) -> (usize, usize) {
            let mut unfav = 0;
            let mut internal_unfav = 0;
            for (ti, pos) in self.tri_edge_pos.iter().enumerate() {
                let count = pos.iter().filter(|&&p| in_set[p]).count();
                if count == 1 {
                    unfav += 1;
                    if self.internal[ti] {
                        internal_unfav += 1;
                    }
                }
            }
            (unfav, internal_unfav)
        }

        fn rec(
            &mut self,
            idx: usize,
            chosen: usize,
            in_set: &mut Vec<bool>,
            parent: &mut Vec<usize>,
        ) {
            if self.capped {
                return;
            }
            if chosen == self.n - 1 {
                self.visited += 1;
                if self.visited > self.cap {
                    self.capped = true;
                    return;
                }
                // Remaining edges are implicitly excluded.
                let (unfav, internal_unfav) = self.leaf_counts(in_set);
                if self.mode == TreeSearchMode::ForbidInternalUnfavourable && internal_unfav > 0 {
                    return;
                }
                if self.best.as_ref().map_or(true, |(b, _, _)| unfav < *b) {
                    let tree = self
                        .edges
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| in_set[*i])
                        .map(|(_, e)| *e)
                        .collect();
                    self.best = Some((unfav, tree, internal_unfav));
                }
                return;
            }
            if idx == self.edges.len() {
                return;
            }
            // Prune on the decided-triangle bound.
            let (bound, internal_violation) = self.decided_counts(idx, in_set);
            if self.mode == TreeSearchMode::ForbidInternalUnfavourable && internal_violation {
                return;
            }
            if let Some((best, _, _)) = &self.best {
                if bound >= *best {
                    return;
                }
            }
            // Feasibility: the remaining edges must still connect everything.
            let mut probe = parent.clone();
            for e in &self.edges[idx..] {
                union(&mut probe, e.lo as usize, e.hi as usize);
            }
            let roots = (0..self.n)
                .map(|v| find(&mut probe, v))
                .collect::<BTreeSet<_>>()
                .len();
            if roots > 1 {
                return;
            }
            let e = self.edges[idx];
            let mut with = parent.clone();
            if union(&mut with, e.lo as usize, e.hi as usize) {
                in_set[idx] = true;
                self.rec(idx + 1, chosen + 1, in_set, &mut with);
                in_set[idx] = false;
            }
            self.rec(idx + 1, chosen, in_set, parent);
        }
    }

    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    fn union(parent: &mut Vec<usize>, a: usize, b: usize) -> bool {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
        true
    }

    if n == 1 {
        return Ok(TreeSearchOutcome::Found(TreeSearchResult {
            best_tree: SpanningTree::new(g, BTreeSet::new())?,
            unfavourable_count: 0,
            unfavourable_internal_count: 0,
            exhaustive: true,
        }));
    }

    let mut search = Search {
        edges: &edges,
        n,
        tri_edge_pos: &tri_edge_pos,
        internal: &internal,
        mode,
        cap,
        visited: 0,
        best: None,
        capped: false,
    };
    let mut in_set = vec![false; edges.len()];
    let mut parent: Vec<usize> = (0..n).collect();
    search.rec(0, 0, &mut in_set, &mut parent);

    let exhaustive = !search.capped;
    match search.best {
        Some((unfav, tree_edges, internal_unfav)) => {
            let best_tree = SpanningTree::new(g, tree_edges.into_iter().collect())?;
            Ok(TreeSearchOutcome::Found(TreeSearchResult {
                best_tree,
                unfavourable_count: unfav,
                unfavourable_internal_count: internal_unfav,
                exhaustive,
            }))
        }
        None if exhaustive => Ok(TreeSearchOutcome::NoneExists),
        None => Ok(TreeSearchOutcome::CapReached),
    }
}

/// Witness spanning tree making every triangle favourable, when one exists.
/// The boolean reports whether the search was exhaustive.
pub fn is_favourable_graph(
    g: &SimplicialGraph,
    cap: usize,
) -> Result<(Option<SpanningTree>, bool)> {
    match optimize_spanning_tree(g, TreeSearchMode::MinimizeUnfavourable, cap)? {
        TreeSearchOutcome::Found(r) if r.unfavourable_count == 0 => {
            Ok((Some(r.best_tree), r.exhaustive))
        }
        TreeSearchOutcome::Found(r) => Ok((None, r.exhaustive)),
        TreeSearchOutcome::NoneExists => Ok((None, true)),
        TreeSearchOutcome::CapReached => Ok((None, false)),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyVerdict {
    pub status: Status,
    pub witness: Option<SpanningTree>,
    pub explanation: String,
}

/// Membership in the decomposable family: connected, unfavourable, simply
/// connected flag complex, and some spanning tree keeps every internal
/// triangle favourable.
pub fn in_family_g(g: &SimplicialGraph, budget: usize, cap: usize) -> Result<FamilyVerdict> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let sc = is_simply_connected(&build_flag_complex(g), budget);
    match sc.status {
        Status::No => {
            return Ok(FamilyVerdict {
                status: Status::No,
                witness: None,
                explanation: "flag complex is not simply connected".into(),
            })
        }
        Status::Unknown => {
            return Ok(FamilyVerdict {
                status: Status::Unknown,
                witness: None,
                explanation: "simple-connectivity verdict unknown within budget".into(),
            })
        }
        Status::Yes => {}
    }
    let (fav_witness, fav_exhaustive) = is_favourable_graph(g, cap)?;
    if fav_witness.is_some() {
        return Ok(FamilyVerdict {
            status: Status::No,
            witness: None,
            explanation: "graph is favourable; its group is already a RAAG".into(),
        });
    }
    if !fav_exhaustive {
        return Ok(FamilyVerdict {
            status: Status::Unknown,
            witness: None,
            explanation: "spanning-tree search capped before settling favourability".into(),
        });
    }
    match optimize_spanning_tree(g, TreeSearchMode::ForbidInternalUnfavourable, cap)? {
        TreeSearchOutcome::Found(r) => Ok(FamilyVerdict {
            status: Status::Yes,
            witness: Some(r.best_tree),
            explanation: format!(
                "witness tree with {} unfavourable, none internal",
                r.unfavourable_count
            ),
        }),
        TreeSearchOutcome::NoneExists => Ok(FamilyVerdict {
            status: Status::No,
            witness: None,
            explanation: "every spanning tree leaves an internal triangle unfavourable".into(),
        }),
        TreeSearchOutcome::CapReached => Ok(FamilyVerdict {
            status: Status::Unknown,
            witness: None,
            explanation: "spanning-tree search capped before finding a witness".into(),
        }),
    }
}

/// One ear of a special triangulation: the peeled apex and its two
/// neighbors (the base edge it was coned onto).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ear {
    pub apex: VertexId,
    pub base: Edge,
}

/// Greedy reverse ear-peeling: repeatedly remove the least-index degree-2
/// vertex whose two neighbors are adjacent. Succeeds when the residue is a
/// single triangle; the returned ears, replayed in reverse, rebuild `g`.
pub fn recognize_special_triangulation(g: &SimplicialGraph) -> Option<Vec<Ear>> {
    if !g.is_connected() {
        return None;
    }
    let mut alive: BTreeSet<VertexId> = (0..g.vertex_count()).collect();
    let mut edges: BTreeSet<Edge> = g.edges().collect();
    let mut ears = Vec::new();
    loop {
        if alive.len() == 3 && edges.len() == 3 {
            let v: Vec<VertexId> = alive.iter().copied().collect();
            let is_triangle = edges.contains(&Edge::new(v[0], v[1]))
                && edges.contains(&Edge::new(v[1], v[2]))
                && edges.contains(&Edge::new(v[0], v[2]));
            return if is_triangle { Some(ears) } else { None };
        }
        let ear = alive.iter().copied().find_map(|v| {
            let nbrs: Vec<VertexId> = edges
                .iter()
                .filter(|e| e.touches(v))
                .map(|e| e.other(v))
                .collect();
            match nbrs.as_slice() {
                [a, b] if edges.contains(&Edge::new(*a, *b)) => Some(Ear {
                    apex: v,
                    base: Edge::new(*a, *b),
                }),
                _ => None,
            }
        })?;
        alive.remove(&ear.apex);
        edges.remove(&Edge::new(ear.apex, ear.base.lo));
        edges.remove(&Edge::new(ear.apex, ear.base.hi));
        ears.push(ear);
    }
}

/// Rebuilds a graph from a residual triangle plus ears (in reverse peel
/// order) and compares it to `g`; certificate check for the recognizer.
pub fn replay_special_triangulation(g: &SimplicialGraph, ears: &[Ear]) -> bool {
    let mut alive: BTreeSet<VertexId> = (0..g.vertex_count()).collect();
    for e in ears {
        alive.remove(&e.apex);
    }
    if alive.len() != 3 {
        return false;
    }
    let v: Vec<VertexId> = alive.iter().copied().collect();
    let mut edges = BTreeSet::from([
        Edge::new(v[0], v[1]),
        Edge::new(v[1], v[2]),
        Edge::new(v[0], v[2]),
    ]);
    for ear in ears.iter().rev() {
        if !edges.contains(&ear.base) {
            return false;
        }
        alive.insert(ear.apex);
        edges.insert(Edge::new(ear.apex, ear.base.lo));
        edges.insert(Edge::new(ear.apex, ear.base.hi));
    }
    alive.len() == g.vertex_count() as usize && edges == *g.edge_set()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtraSpecialWitness {
    /// Vertices of the special core, in host coordinates.
    pub core_vertices: Vec<VertexId>,
    /// Peel sequence of the core (host coordinates).
    pub core_ears: Vec<Ear>,
    /// Added apexes paired with the core boundary edge each one covers.
    pub apexes: Vec<(VertexId, Edge)>,
}

/// Recognizes graphs obtained from a special triangulation by coning one
/// apex onto every boundary edge. All candidate apexes (degree-2 vertices
/// with adjacent neighbors) are removed at once; the residue must be a
/// special triangulation whose boundary edges biject with the apexes.
pub fn recognize_extra_special_triangulation(
    g: &SimplicialGraph,
) -> Option<ExtraSpecialWitness> {
    if !g.is_connected() {
        return None;
    }
    let mut apexes = Vec::new();
    for v in 0..g.vertex_count() {
        let nbrs = g.neighbors(v);
        if let [a, b] = nbrs.as_slice() {
            if g.has_edge(*a, *b) {
                apexes.push((v, Edge::new(*a, *b)));
            }
        }
    }
    if apexes.is_empty() {
        return None;
    }
    let apex_set: BTreeSet<VertexId> = apexes.iter().map(|(v, _)| *v).collect();
    let core_verts: BTreeSet<VertexId> =
        (0..g.vertex_count()).filter(|v| !apex_set.contains(v)).collect();
    let core = g.induced_subgraph(&core_verts);
    let local_ears = recognize_special_triangulation(&core.graph)?;
    let core_ears: Vec<Ear> = local_ears
        .iter()
        .map(|e| Ear {
            apex: core.to_host(e.apex),
            base: core.edge_to_host(e.base),
        })
        .collect();
    // Boundary edges of the core: edges lying in exactly one core triangle.
    let core_triangles = core.graph.triangles();
    let boundary: BTreeSet<Edge> = core
        .graph
        .edges()
        .filter(|e| {
            core_triangles
                .iter()
                .filter(|t| t.edges().contains(e))
                .count()
                == 1
        })
        .map(|e| core.edge_to_host(e))
        .collect();
    let covered: BTreeSet<Edge> = apexes.iter().map(|(_, e)| *e).collect();
    if covered.len() != apexes.len() || covered != boundary {
        return None;
    }
    Some(ExtraSpecialWitness {
        core_vertices: core.vertex_map.clone(),
        core_ears,
        apexes,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SplittingWitness {
    pub gamma1: BTreeSet<VertexId>,
    pub gamma2: BTreeSet<VertexId>,
    pub gamma3: BTreeSet<VertexId>,
    pub clique_size: usize,
}

/// Finds a connected splitting of `g` whose intersection part is a clique
/// of at least `min_clique` vertices. First witness under (clique size
/// ascending, lexicographic clique, lexicographic component) order.
pub fn find_clique_splitting(
    g: &SimplicialGraph,
    min_clique: usize,
) -> Result<Option<SplittingWitness>> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut cliques: Vec<Vec<VertexId>> = Vec::new();
    fn extend(
        g: &SimplicialGraph,
        current: &mut Vec<VertexId>,
        start: VertexId,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        for v in start..g.vertex_count() {
            if current.iter().all(|&u| g.has_edge(u, v)) {
                current.push(v);
                out.push(current.clone());
                extend(g, current, v + 1, out);
                current.pop();
            }
        }
    }
    extend(g, &mut Vec::new(), 0, &mut cliques);
    cliques.retain(|c| c.len() >= min_clique);
    cliques.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    for clique in cliques {
        let rest: BTreeSet<VertexId> = (0..g.vertex_count())
            .filter(|v| !clique.contains(v))
            .collect();
        if rest.is_empty() {
            continue;
        }
        let ind = g.induced_subgraph(&rest);
        let comps = ind.graph.components();
        if comps.len() < 2 {
            continue;
        }
        let host_comps: Vec<BTreeSet<VertexId>> = comps
            .iter()
            .map(|c| c.iter().map(|&v| ind.to_host(v)).collect())
            .collect();
        let gamma3: BTreeSet<VertexId> = clique.iter().copied().collect();
        let mut gamma1 = gamma3.clone();
        gamma1.extend(&host_comps[0]);
        let mut gamma2 = gamma3.clone();
        for comp in &host_comps[1..] {
            gamma2.extend(comp);
        }
        return Ok(Some(SplittingWitness {
            gamma1,
            gamma2,
            gamma3,
            clique_size: clique.len(),
        }));
    }
    Ok(None)
}

/// Validity check for a splitting witness: union covers the graph, the
/// intersection part separates, and no edge crosses between the private
/// sides.
pub fn validate_splitting(g: &SimplicialGraph, w: &SplittingWitness) -> bool {
    let inter: BTreeSet<VertexId> = w.gamma1.intersection(&w.gamma2).copied().collect();
    if inter != w.gamma3 || w.gamma3.len() != w.clique_size {
        return false;
    }
    let all: BTreeSet<VertexId> = w.gamma1.union(&w.gamma2).copied().collect();
    if all.len() != g.vertex_count() as usize {
        return false;
    }
    for a in w.gamma3.iter() {
        for b in w.gamma3.iter() {
            if a < b && !g.has_edge(*a, *b) {
                return false;
            }
        }
    }
    // No cross edge between the private sides.
    for e in g.edges() {
        let lo_in_1 = w.gamma1.contains(&e.lo) && !w.gamma3.contains(&e.lo);
        let lo_in_2 = w.gamma2.contains(&e.lo) && !w.gamma3.contains(&e.lo);
        let hi_in_1 = w.gamma1.contains(&e.hi) && !w.gamma3.contains(&e.hi);
        let hi_in_2 = w.gamma2.contains(&e.hi) && !w.gamma3.contains(&e.hi);
        if (lo_in_1 && hi_in_2) || (lo_in_2 && hi_in_1) {
            return false;
        }
    }
    // Removing the intersection part disconnects the graph.
    let rest: BTreeSet<VertexId> = (0..g.vertex_count())
        .filter(|v| !w.gamma3.contains(v))
        .collect();
    g.induced_subgraph(&rest).graph.components().len() >= 2
}
