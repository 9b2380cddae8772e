//! Finite simplicial graphs and the constructions used throughout:
//! induced subgraphs, edge-set complements of triangles, spanning-tree
//! enumeration, and small-scale isomorphism testing.
//!
//! Vertices carry a fixed linear order (their index); every edge is stored
//! with its canonical orientation from the smaller to the larger endpoint,
//! and all directed-triangle conventions derive from that order.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type VertexId = u32;

/// Undirected simple edge, stored as `lo < hi`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub lo: VertexId,
    pub hi: VertexId,
}

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        assert!(a != b, "loops are not allowed");
        Edge {
            lo: a.min(b),
            hi: a.max(b),
        }
    }

    pub fn touches(&self, v: VertexId) -> bool {
        self.lo == v || self.hi == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if v == self.lo {
            self.hi
        } else {
            self.lo
        }
    }
}

impl fmt::Debug for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.lo, self.hi)
    }
}

/// A 3-clique with `a < b < c`. The directed triple of the Dicks-Leary
/// convention is `e = (a,b)`, `f = (b,c)`, `g = (a,c)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Triangle {
    pub a: VertexId,
    pub b: VertexId,
    pub c: VertexId,
}

impl Triangle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        assert!(v[0] < v[1] && v[1] < v[2], "degenerate triangle");
        Triangle {
            a: v[0],
            b: v[1],
            c: v[2],
        }
    }

    pub fn vertices(&self) -> [VertexId; 3] {
        [self.a, self.b, self.c]
    }

    pub fn edges(&self) -> [Edge; 3] {
        [
            Edge::new(self.a, self.b),
            Edge::new(self.b, self.c),
            Edge::new(self.a, self.c),
        ]
    }

    /// `(e, f, g)` with `e = (a,b)`, `f = (b,c)`, `g = (a,c)`.
    pub fn directed_triple(&self) -> (Edge, Edge, Edge) {
        (
            Edge::new(self.a, self.b),
            Edge::new(self.b, self.c),
            Edge::new(self.a, self.c),
        )
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.a == v || self.b == v || self.c == v
    }
}

impl fmt::Debug for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// A finite simplicial graph: dense vertex indices `0..n`, a duplicate-free
/// edge set, and display labels fixed at construction time.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicialGraph {
    vertex_count: u32,
    edges: BTreeSet<Edge>,
    labels: Vec<String>,
}

/// Result of restricting a graph to a vertex subset: the reindexed graph
/// plus the map from new indices back to host indices.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: SimplicialGraph,
    /// `vertex_map[new] = old`.
    pub vertex_map: Vec<VertexId>,
}

impl InducedSubgraph {
    pub fn to_host(&self, v: VertexId) -> VertexId {
        self.vertex_map[v as usize]
    }

    pub fn from_host(&self, old: VertexId) -> Option<VertexId> {
        self.vertex_map
            .iter()
            .position(|&o| o == old)
            .map(|i| i as VertexId)
    }

    pub fn edge_to_host(&self, e: Edge) -> Edge {
        Edge::new(self.to_host(e.lo), self.to_host(e.hi))
    }

    pub fn edge_from_host(&self, e: Edge) -> Option<Edge> {
        Some(Edge::new(self.from_host(e.lo)?, self.from_host(e.hi)?))
    }
}

/// View of a subgraph in host coordinates; used for intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgraph {
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<Edge>,
    host_tag: u64,
}

impl SimplicialGraph {
    pub fn new(vertex_count: u32, labels: Option<Vec<String>>) -> Self {
        let labels = labels
            .unwrap_or_else(|| (0..vertex_count).map(|i| format!("v{i}")).collect());
        assert_eq!(labels.len(), vertex_count as usize);
        SimplicialGraph {
            vertex_count,
            edges: BTreeSet::new(),
            labels,
        }
    }

    pub fn from_edges(vertex_count: u32, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = SimplicialGraph::new(vertex_count, None);
        for &(a, b) in edges {
            g.add_edge(a, b);
        }
        g
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
        assert!(a < self.vertex_count && b < self.vertex_count);
        self.edges.insert(Edge::new(a, b));
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_set(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v as usize]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.vertex_count as usize);
        self.labels = labels;
    }

    pub fn vertex_by_label(&self, name: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == name).map(|i| i as u32)
    }

    pub fn edge_label(&self, e: Edge) -> String {
        format!("{}-{}", self.label(e.lo), self.label(e.hi))
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for e in &self.edges {
            if e.touches(v) {
                out.push(e.other(v));
            }
        }
        out.sort_unstable();
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    fn host_tag(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.vertex_count.hash(&mut h);
        for e in &self.edges {
            (e.lo, e.hi).hash(&mut h);
        }
        h.finish()
    }

    pub fn as_subgraph(&self) -> Subgraph {
        Subgraph {
            vertices: (0..self.vertex_count).collect(),
            edges: self.edges.clone(),
            host_tag: self.host_tag(),
        }
    }

    pub fn subgraph_of(&self, vertices: BTreeSet<VertexId>, edges: BTreeSet<Edge>) -> Subgraph {
        Subgraph {
            vertices,
            edges,
            host_tag: self.host_tag(),
        }
    }

    pub fn triangle_subgraph(&self, t: Triangle) -> Subgraph {
        self.subgraph_of(t.vertices().iter().copied().collect(), t.edges().into())
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.component_of(0).len() == self.vertex_count as usize
    }

    fn component_of(&self, start: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start);
        queue.push_back(start);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut out: Vec<BTreeSet<VertexId>> = Vec::new();
        let mut seen = vec![false; self.vertex_count as usize];
        for v in 0..self.vertex_count {
            if !seen[v as usize] {
                let comp = self.component_of(v);
                for &w in &comp {
                    seen[w as usize] = true;
                }
                out.push(comp);
            }
        }
        out
    }

    /// Induced subgraph on `verts`, reindexed in host order.
    pub fn induced_subgraph(&self, verts: &BTreeSet<VertexId>) -> InducedSubgraph {
        let vertex_map: Vec<VertexId> = verts.iter().copied().collect();
        let labels = vertex_map
            .iter()
            .map(|&v| self.labels[v as usize].clone())
            .collect();
        let mut graph = SimplicialGraph::new(vertex_map.len() as u32, Some(labels));
        for (i, &u) in vertex_map.iter().enumerate() {
            for (j, &v) in vertex_map.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    graph.add_edge(i as u32, j as u32);
                }
            }
        }
        InducedSubgraph { graph, vertex_map }
    }

    /// All 3-cliques, lexicographically by `(a, b, c)`.
    pub fn triangles(&self) -> Vec<Triangle> {
        let mut out = Vec::new();
        for a in 0..self.vertex_count {
            for b in (a + 1)..self.vertex_count {
                if !self.has_edge(a, b) {
                    continue;
                }
                for c in (b + 1)..self.vertex_count {
                    if self.has_edge(a, c) && self.has_edge(b, c) {
                        out.push(Triangle::new(a, b, c));
                    }
                }
            }
        }
        out
    }

    /// Edge-set complement of a triangle: delete the three triangle edges,
    /// drop the vertices left isolated, and take the induced subgraph on the
    /// survivors. Triangle edges between two surviving vertices reappear.
    pub fn edge_set_complement(&self, t: Triangle) -> Result<InducedSubgraph> {
        for e in t.edges() {
            if !self.edges.contains(&e) {
                return Err(Error::NotATriangle(t));
            }
        }
        let tri_edges: BTreeSet<Edge> = t.edges().into();
        let mut survivors = BTreeSet::new();
        for e in &self.edges {
            if !tri_edges.contains(e) {
                survivors.insert(e.lo);
                survivors.insert(e.hi);
            }
        }
        Ok(self.induced_subgraph(&survivors))
    }

    /// Host-coordinate view of the edge-set complement.
    pub fn edge_set_complement_subgraph(&self, t: Triangle) -> Result<Subgraph> {
        let ind = self.edge_set_complement(t)?;
        let vertices: BTreeSet<VertexId> = ind.vertex_map.iter().copied().collect();
        let edges = ind.graph.edges().map(|e| ind.edge_to_host(e)).collect();
        Ok(self.subgraph_of(vertices, edges))
    }

    /// Least-index vertex adjacent to every other vertex, if any.
    pub fn dominating_vertex(&self) -> Option<VertexId> {
        (0..self.vertex_count)
            .find(|&v| self.degree(v) as u32 == self.vertex_count - 1)
    }

    /// Disjoint union of `self` and `other` plus all cross edges.
    pub fn join(&self, other: &SimplicialGraph) -> SimplicialGraph {
        let n1 = self.vertex_count;
        let n2 = other.vertex_count;
        let mut labels = self.labels.clone();
        for l in &other.labels {
            let mut name = l.clone();
            while labels.contains(&name) {
                name.push('_');
            }
            labels.push(name);
        }
        let mut g = SimplicialGraph::new(n1 + n2, Some(labels));
        for e in &self.edges {
            g.add_edge(e.lo, e.hi);
        }
        for e in &other.edges {
            g.add_edge(e.lo + n1, e.hi + n1);
        }
        for a in 0..n1 {
            for b in 0..n2 {
                g.add_edge(a, n1 + b);
            }
        }
        g
    }

    /// Glue `other` onto `self` along `overlap`, which maps vertices of
    /// `other` to vertices of `self`. Unmapped vertices of `other` are
    /// appended; the edge sets are united.
    pub fn union(
        &self,
        other: &SimplicialGraph,
        overlap: &[(VertexId, VertexId)],
    ) -> Result<SimplicialGraph> {
        let mut seen_src = BTreeSet::new();
        let mut seen_dst = BTreeSet::new();
        for &(src, dst) in overlap {
            if !seen_src.insert(src) || !seen_dst.insert(dst) {
                return Err(Error::OverlapNotInjective);
            }
            if src >= other.vertex_count {
                return Err(Error::VertexOutOfRange(src, other.vertex_count));
            }
            if dst >= self.vertex_count {
                return Err(Error::VertexOutOfRange(dst, self.vertex_count));
            }
        }
        let mut map = vec![None; other.vertex_count as usize];
        for &(src, dst) in overlap {
            map[src as usize] = Some(dst);
        }
        let mut labels = self.labels.clone();
        let mut next = self.vertex_count;
        for (v, slot) in map.iter_mut().enumerate() {
            if slot.is_none() {
                *slot = Some(next);
                let mut name = other.labels[v].clone();
                while labels.contains(&name) {
                    name.push('_');
                }
                labels.push(name);
                next += 1;
            }
        }
        let mut g = SimplicialGraph::new(next, Some(labels));
        for e in &self.edges {
            g.add_edge(e.lo, e.hi);
        }
        for e in &other.edges {
            g.add_edge(map[e.lo as usize].unwrap(), map[e.hi as usize].unwrap());
        }
        Ok(g)
    }

    /// Canonical adjacency key: minimum upper-triangle bit string over all
    /// vertex permutations. Exponential; intended for graphs up to ~8
    /// vertices when bucketing exhaustive corpora.
    pub fn canonical_key(&self) -> Vec<u8> {
        let n = self.vertex_count as usize;
        let mut perm: Vec<u32> = (0..n as u32).collect();
        let mut best: Option<Vec<u8>> = None;
        permute(&mut perm, 0, &mut |p| {
            let mut bits = Vec::with_capacity(n * (n - 1) / 2);
            for i in 0..n {
                for j in (i + 1)..n {
                    bits.push(self.has_edge(p[i], p[j]) as u8);
                }
            }
            if best.as_ref().map_or(true, |b| bits < *b) {
                best = Some(bits);
            }
        });
        best.unwrap_or_default()
    }
}

fn permute(perm: &mut Vec<u32>, k: usize, f: &mut impl FnMut(&[u32])) {
    if k == perm.len() {
        f(perm);
        return;
    }
    for i in k..perm.len() {
        perm.swap(k, i);
        permute(perm, k + 1, f);
        perm.swap(k, i);
    }
}

impl fmt::Debug for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialGraph(n={}, E={:?})", self.vertex_count, self.edges)
    }
}

/// Common vertices and edges of two subgraphs of the same host.
pub fn intersect(a: &Subgraph, b: &Subgraph) -> Result<(BTreeSet<VertexId>, BTreeSet<Edge>)> {
    if a.host_tag != b.host_tag {
        return Err(Error::InconsistentHosts);
    }
    let verts = a.vertices.intersection(&b.vertices).copied().collect();
    let edges = a.edges.intersection(&b.edges).copied().collect();
    Ok((verts, edges))
}

/// Spanning tree of a host graph, stored as its edge set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpanningTree {
    edges: BTreeSet<Edge>,
}

impl SpanningTree {
    /// Validates `|E| = |V| - 1`, acyclicity, and connectivity against `g`.
    pub fn new(g: &SimplicialGraph, edges: BTreeSet<Edge>) -> Result<Self> {
        if g.vertex_count == 0 || edges.len() != g.vertex_count as usize - 1 {
            return Err(Error::NotASpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                g.vertex_count
            )));
        }
        let mut dsu = Dsu::new(g.vertex_count as usize);
        for e in &edges {
            if !g.edge_set().contains(e) {
                return Err(Error::EdgeNotInGraph(*e));
            }
            if !dsu.union(e.lo as usize, e.hi as usize) {
                return Err(Error::NotASpanningTree(format!("cycle through {e}")));
            }
        }
        Ok(SpanningTree { edges })
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    /// Edges of the unique tree path from `from` to `to`, each with the sign
    /// of traversal relative to the canonical lo->hi orientation.
    pub fn path(&self, from: VertexId, to: VertexId) -> Option<Vec<(Edge, i8)>> {
        if from == to {
            return Some(Vec::new());
        }
        // BFS over tree edges.
        let mut prev: std::collections::HashMap<VertexId, (VertexId, Edge)> = Default::default();
        let mut queue = VecDeque::new();
        queue.push_back(from);
        let mut seen = BTreeSet::new();
        seen.insert(from);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for e in &self.edges {
                if e.touches(v) {
                    let w = e.other(v);
                    if seen.insert(w) {
                        prev.insert(w, (v, *e));
                        queue.push_back(w);
                    }
                }
            }
        }
        if !seen.contains(&to) {
            return None;
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, e) = prev[&cur];
            // Traversal p -> cur: positive when it follows lo -> hi.
            let sign = if e.lo == p { 1 } else { -1 };
            path.push((e, sign));
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }

    fn count_roots(&mut self, n: usize) -> usize {
        (0..n).map(|i| self.find(i)).collect::<BTreeSet<_>>().len()
    }
}

/// Visits every spanning tree of `g` in canonical order (lexicographic on
/// the sorted edge set). The visitor may stop the walk early.
pub fn for_each_spanning_tree<F>(g: &SimplicialGraph, mut visit: F) -> Result<bool>
where
    F: FnMut(&SpanningTree) -> ControlFlow<()>,
{
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let n = g.vertex_count as usize;
    if n == 0 {
        return Ok(true);
    }
    let edges: Vec<Edge> = g.edges().collect();
    let mut chosen: Vec<Edge> = Vec::new();
    let mut dsu_stack: Vec<Dsu> = vec![Dsu::new(n)];

    fn rec(
        edges: &[Edge],
        idx: usize,
        n: usize,
        chosen: &mut Vec<Edge>,
        dsu: &Dsu,
        visit: &mut dyn FnMut(&SpanningTree) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if chosen.len() == n - 1 {
            let tree = SpanningTree {
                edges: chosen.iter().copied().collect(),
            };
            return visit(&tree);
        }
        if idx == edges.len() {
            return ControlFlow::Continue(());
        }
        // Feasibility: remaining edges together with the current forest must
        // still be able to connect everything.
        let mut probe = Dsu {
            parent: dsu.parent.clone(),
        };
        for e in &edges[idx..] {
            probe.union(e.lo as usize, e.hi as usize);
        }
        if probe.count_roots(n) > 1 {
            return ControlFlow::Continue(());
        }
        let e = edges[idx];
        let mut with = Dsu {
            parent: dsu.parent.clone(),
        };
        if with.union(e.lo as usize, e.hi as usize) {
            chosen.push(e);
            rec(edges, idx + 1, n, chosen, &with, visit)?;
            chosen.pop();
        }
        rec(edges, idx + 1, n, chosen, dsu, visit)
    }

    let complete = rec(
        &edges,
        0,
        n,
        &mut chosen,
        &dsu_stack.pop().unwrap(),
        &mut visit,
    );
    Ok(complete.is_continue())
}

/// First `cap` spanning trees in canonical order, plus whether the
/// enumeration was exhaustive.
pub fn spanning_trees(g: &SimplicialGraph, cap: usize) -> Result<(Vec<SpanningTree>, bool)> {
    let mut out = Vec::new();
    let exhausted = for_each_spanning_tree(g, |t| {
        out.push(t.clone());
        if out.len() >= cap {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok((out, exhausted))
}

/// Spanning-tree count via the matrix-tree theorem (determinant of a
/// Laplacian minor, computed exactly with Bareiss elimination).
pub fn kirchhoff_count(g: &SimplicialGraph) -> i128 {
    let n = g.vertex_count() as usize;
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let m = n - 1;
    let mut a = vec![vec![0i128; m]; m];
    for i in 0..m {
        a[i][i] = g.degree(i as u32) as i128;
    }
    for e in g.edges() {
        let (u, v) = (e.lo as usize, e.hi as usize);
        if u < m && v < m {
            a[u][v] -= 1;
            a[v][u] -= 1;
        }
    }
    // Bareiss fraction-free elimination.
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..m {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..m).find(|&r| a[r][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in (k + 1)..m {
            for j in (k + 1)..m {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    sign * a[m - 1][m - 1]
}

/// Adjacency-preserving bijection between two graphs, found by degree
/// prefiltering plus backtracking. Intended for small graphs.
pub fn graphs_isomorphic(g1: &SimplicialGraph, g2: &SimplicialGraph) -> Option<Vec<VertexId>> {
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return None;
    }
    let deg1: Vec<usize> = (0..n).map(|v| g1.degree(v)).collect();
    let deg2: Vec<usize> = (0..n).map(|v| g2.degree(v)).collect();
    let mut s1 = deg1.clone();
    let mut s2 = deg2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return None;
    }
    // Neighbor-degree multiset refinement.
    let nd = |g: &SimplicialGraph, deg: &[usize], v: u32| -> Vec<usize> {
        let mut m: Vec<usize> = g.neighbors(v).iter().map(|&w| deg[w as usize]).collect();
        m.sort_unstable();
        m
    };
    let nd1: Vec<Vec<usize>> = (0..n).map(|v| nd(g1, &deg1, v)).collect();
    let nd2: Vec<Vec<usize>> = (0..n).map(|v| nd(g2, &deg2, v)).collect();

    let mut map = vec![u32::MAX; n as usize];
    let mut used = vec![false; n as usize];

    fn assign(
        v: usize,
        n: usize,
        g1: &SimplicialGraph,
        g2: &SimplicialGraph,
        nd1: &[Vec<usize>],
        nd2: &[Vec<usize>],
        map: &mut Vec<u32>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == n {
            return true;
        }
        for w in 0..n {
            if used[w] || nd1[v] != nd2[w] {
                continue;
            }
            let ok = (0..v).all(|u| {
                g1.has_edge(u as u32, v as u32) == g2.has_edge(map[u], w as u32)
            });
            if ok {
                map[v] = w as u32;
                used[w] = true;
                if assign(v + 1, n, g1, g2, nd1, nd2, map, used) {
                    return true;
                }
                used[w] = false;
                map[v] = u32::MAX;
            }
        }
        false
    }

    if assign(0, n as usize, g1, g2, &nd1, &nd2, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;

    #[test]
    fn induced_subgraph_of_k4_is_k3() {
        let k4 = generate::complete_graph(4);
        let ind = k4.induced_subgraph(&[0, 1, 2].into_iter().collect());
        assert_eq!(ind.graph.vertex_count(), 3);
        assert_eq!(ind.graph.edge_count(), 3);
    }

    #[test]
    fn induced_subgraph_of_path_endpoints_is_edgeless() {
        let p = SimplicialGraph::from_edges(3, &[(0, 1), (1, 2)]);
        let ind = p.induced_subgraph(&[0, 2].into_iter().collect());
        assert_eq!(ind.graph.vertex_count(), 2);
        assert_eq!(ind.graph.edge_count(), 0);
    }

    #[test]
    fn triangles_of_k3_and_trees() {
        let k3 = generate::complete_graph(3);
        assert_eq!(k3.triangles(), vec![Triangle::new(0, 1, 2)]);
        let tree = SimplicialGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4)]);
        assert!(tree.triangles().is_empty());
    }

    #[test]
    fn octahedron_has_eight_triangles() {
        let oct = generate::octahedron();
        // Oracle: brute force over all C(6,3) = 20 triples.
        let mut count = 0;
        for a in 0..6u32 {
            for b in (a + 1)..6 {
                for c in (b + 1)..6 {
                    if oct.has_edge(a, b) && oct.has_edge(a, c) && oct.has_edge(b, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 8);
        assert_eq!(oct.triangles().len(), 8);
    }

    #[test]
    fn complement_of_lone_k3_is_empty() {
        let k3 = generate::complete_graph(3);
        let c = k3.edge_set_complement(Triangle::new(0, 1, 2)).unwrap();
        assert_eq!(c.graph.vertex_count(), 0);
    }

    #[test]
    fn complement_of_pendant_triangle_drops_private_vertices() {
        // Path 0-1-2 with a triangle {2,3,4} hanging off vertex 2.
        let g = SimplicialGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 4)]);
        let c = g.edge_set_complement(Triangle::new(2, 3, 4)).unwrap();
        assert_eq!(c.vertex_map, vec![0, 1, 2]);
        assert_eq!(c.graph.edge_count(), 2);
    }

    #[test]
    fn intersect_requires_same_host() {
        let g1 = generate::complete_graph(3);
        let g2 = generate::complete_graph(4);
        let r = intersect(&g1.as_subgraph(), &g2.as_subgraph());
        assert!(matches!(r, Err(Error::InconsistentHosts)));
        let (v, e) = intersect(&g1.as_subgraph(), &g1.as_subgraph()).unwrap();
        assert_eq!(v.len(), 3);
        assert_eq!(e.len(), 3);
    }

    #[test]
    fn spanning_tree_counts_match_cayley() {
        let k3 = generate::complete_graph(3);
        let (trees, exhausted) = spanning_trees(&k3, 1000).unwrap();
        assert_eq!(trees.len(), 3);
        assert!(exhausted);
        assert_eq!(kirchhoff_count(&k3), 3);

        let k4 = generate::complete_graph(4);
        let (trees, _) = spanning_trees(&k4, 1000).unwrap();
        assert_eq!(trees.len(), 16);
        assert_eq!(kirchhoff_count(&k4), 16);
    }

    #[test]
    fn spanning_trees_are_distinct_and_valid() {
        let oct = generate::octahedron();
        let (trees, exhausted) = spanning_trees(&oct, 100_000).unwrap();
        assert!(exhausted);
        assert_eq!(trees.len(), 384);
        assert_eq!(kirchhoff_count(&oct), 384);
        let distinct: BTreeSet<_> = trees.iter().map(|t| t.edges().clone()).collect();
        assert_eq!(distinct.len(), trees.len());
        for t in &trees {
            SpanningTree::new(&oct, t.edges().clone()).unwrap();
        }
    }

    #[test]
    fn spanning_tree_cap_reports_overflow() {
        let k4 = generate::complete_graph(4);
        let (trees, exhausted) = spanning_trees(&k4, 5).unwrap();
        assert_eq!(trees.len(), 5);
        assert!(!exhausted);
    }

    #[test]
    fn disconnected_graph_has_no_spanning_trees() {
        let g = SimplicialGraph::from_edges(4, &[(0, 1), (2, 3)]);
        assert!(matches!(spanning_trees(&g, 10), Err(Error::Disconnected)));
    }

    #[test]
    fn dominating_vertex_cases() {
        let wheel = generate::cone(&generate::cycle_graph(4));
        assert_eq!(wheel.dominating_vertex(), Some(4));
        let kn = generate::complete_graph(5);
        assert_eq!(kn.dominating_vertex(), Some(0));
        let fav = generate::triangle_strip();
        assert_eq!(fav.graph.dominating_vertex(), None);
    }

    #[test]
    fn star_is_complete_bipartite_1_n() {
        let s4 = SimplicialGraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let k13 = SimplicialGraph::from_edges(4, &[(3, 0), (3, 1), (3, 2)]);
        assert!(graphs_isomorphic(&s4, &k13).is_some());
        let p4 = SimplicialGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        assert!(graphs_isomorphic(&p4, &s4).is_none());
    }

    #[test]
    fn relabeled_cycles_are_isomorphic() {
        let c5 = generate::cycle_graph(5);
        let shuffled = SimplicialGraph::from_edges(5, &[(0, 2), (2, 4), (4, 1), (1, 3), (3, 0)]);
        let map = graphs_isomorphic(&c5, &shuffled).unwrap();
        for e in c5.edges() {
            assert!(shuffled.has_edge(map[e.lo as usize], map[e.hi as usize]));
        }
    }

    #[test]
    fn join_of_two_pairs_is_a_square() {
        let two = SimplicialGraph::new(2, None);
        let square = two.join(&two);
        assert_eq!(square.vertex_count(), 4);
        assert_eq!(square.edge_count(), 4);
        assert!(graphs_isomorphic(&square, &generate::cycle_graph(4)).is_some());
    }

    #[test]
    fn threefold_join_is_octahedron() {
        let two = SimplicialGraph::new(2, None);
        let oct = two.join(&two).join(&two);
        assert!(graphs_isomorphic(&oct, &generate::octahedron()).is_some());
    }

    #[test]
    fn union_of_triangles_along_an_edge() {
        let k3 = generate::complete_graph(3);
        let glued = k3.union(&k3, &[(0, 0), (1, 1)]).unwrap();
        assert_eq!(glued.vertex_count(), 4);
        assert_eq!(glued.edge_count(), 5);
        assert!(matches!(
            k3.union(&k3, &[(0, 0), (1, 0)]),
            Err(Error::OverlapNotInjective)
        ));
    }

    #[test]
    fn tree_path_signs_follow_canonical_orientation() {
        let g = SimplicialGraph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]);
        let t = SpanningTree::new(&g, [Edge::new(0, 1), Edge::new(1, 2)].into()).unwrap();
        let path = t.path(2, 0).unwrap();
        assert_eq!(path, vec![(Edge::new(1, 2), -1), (Edge::new(0, 1), -1)]);
    }
}
