//! Structural output: the RAAG isomorphism for favourable graphs, single
//! amalgam peels, and the full iterated amalgamated-product decomposition.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_triangle, in_family_g, TriangleReport};
use crate::complex::{build_flag_complex, is_simply_connected, Status};
use crate::graph::{Edge, InducedSubgraph, SimplicialGraph, SpanningTree, Triangle, VertexId};
use crate::presentation::{
    papadima_suciu, raag_presentation, Generator, GroupPresentation, PresentationKind,
};
use crate::word::Word;
use crate::{Error, Result};

/// RAAG target of a favourable graph: one vertex per tree edge, adjacency
/// exactly when two tree edges share a triangle.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RaagWitness {
    pub gamma_prime: SimplicialGraph,
    /// `generator_map[v]` is the tree edge behind vertex `v` of
    /// `gamma_prime`.
    pub generator_map: Vec<Edge>,
}

pub fn chang_raag(g: &SimplicialGraph, t: &SpanningTree) -> Result<RaagWitness> {
    for tri in g.triangles() {
        let count = tri.edges().iter().filter(|e| t.contains(**e)).count();
        if count == 1 {
            return Err(Error::UnfavourableTriangle(tri));
        }
    }
    let tree_edges: Vec<Edge> = t.edges().iter().copied().collect();
    let labels = tree_edges.iter().map(|&e| g.edge_label(e)).collect();
    let mut gamma_prime = SimplicialGraph::new(tree_edges.len() as u32, Some(labels));
    for tri in g.triangles() {
        let members: Vec<usize> = tri
            .edges()
            .iter()
            .filter_map(|e| tree_edges.iter().position(|te| te == e))
            .collect();
        if let [a, b] = members.as_slice() {
            gamma_prime.add_edge(*a as u32, *b as u32);
        }
    }
    Ok(RaagWitness {
        gamma_prime,
        generator_map: tree_edges,
    })
}

/// A word whose letters are (edge, exponent) pairs; edges identify
/// generators across the leaves of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeWord(pub Vec<(Edge, i8)>);

/// Result of peeling one unfavourable, non-internal triangle.
#[derive(Clone, Debug)]
pub struct PeelStep {
    pub report: TriangleReport,
    /// Edge-set complement within the peeled graph.
    pub complement: InducedSubgraph,
    /// Restriction of the tree to the complement (complement coordinates).
    pub restricted_tree: SpanningTree,
    /// `<e1, f | [e1, f]>` on the triangle's tree edge and shared edge.
    pub z2: GroupPresentation,
    /// The shared edge rewritten over the restricted tree's generators.
    pub amalgam_word_left: Word,
    /// The single letter `f` inside `z2`.
    pub amalgam_word_right: Word,
    /// Triangle edge lying in the tree (host coordinates).
    pub tree_edge: Edge,
    /// Edge shared with the complement (host coordinates).
    pub shared_edge: Edge,
}

pub fn peel_once(g: &SimplicialGraph, t: &SpanningTree, tri: Triangle) -> Result<PeelStep> {
    let report = classify_triangle(g, t, tri)?;
    if report.favourable {
        return Err(Error::FavourableTriangle(tri));
    }
    let complement_view = g.edge_set_complement_subgraph(tri)?;
    let (verts, shared) = crate::graph::intersect(&complement_view, &g.triangle_subgraph(tri))?;
    if shared.len() != 1 || verts.len() != 2 {
        return Err(Error::BadPeelIntersection(
            tri,
            format!("{} vertices, {} edges", verts.len(), shared.len()),
        ));
    }
    let shared_edge = *shared.iter().next().unwrap();
    let tree_edge = *tri
        .edges()
        .iter()
        .find(|e| t.contains(**e))
        .expect("unfavourable triangle has one tree edge");

    let complement = g.edge_set_complement(tri)?;
    let restricted: BTreeSet<Edge> = t
        .edges()
        .iter()
        .filter_map(|e| complement.edge_from_host(*e))
        .filter(|e| complement.graph.edge_set().contains(e))
        .collect();
    let restricted_tree = SpanningTree::new(&complement.graph, restricted)
        .map_err(|_| Error::RestrictedTreeNotSpanning(tri))?;

    let local_shared = complement
        .edge_from_host(shared_edge)
        .expect("shared edge survives");
    let amalgam_word_left =
        crate::presentation::tree_path_word(&complement.graph, &restricted_tree, local_shared)?;

    let z2 = GroupPresentation::z_squared(
        (g.edge_label(tree_edge), Some(tree_edge)),
        (g.edge_label(shared_edge), Some(shared_edge)),
    );
    let amalgam_word_right = Word::generator(1);
    Ok(PeelStep {
        report,
        complement,
        restricted_tree,
        z2,
        amalgam_word_left,
        amalgam_word_right,
        tree_edge,
        shared_edge,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "node")]
pub enum DecompNode {
    Leaf {
        presentation: GroupPresentation,
    },
    Amalgam {
        left: Box<DecompNode>,
        right: Box<DecompNode>,
        /// Word over left-subtree generators, tagged by source edge.
        amalgam_word_left: EdgeWord,
        /// Word over right-subtree generators, tagged by source edge.
        amalgam_word_right: EdgeWord,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeelRecord {
    pub triangle: Triangle,
    pub tree_edge: Edge,
    pub shared_edge: Edge,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecompositionTree {
    pub root: DecompNode,
    /// Witness spanning tree of the input graph.
    pub witness_tree: SpanningTree,
    /// Peeled triangles, outermost first, in input-graph coordinates.
    pub peels: Vec<PeelRecord>,
    /// Successive edge-set complements, one per peel.
    pub complements: Vec<SimplicialGraph>,
    /// RAAG witness of the final favourable complement (its coordinates).
    pub raag: RaagWitness,
    /// When the RAAG leaf uses a different spanning tree of the final
    /// complement than the one inherited through the peels, every displaced
    /// inherited tree edge is rewritten here as a word over the leaf's
    /// generators (input-graph coordinates on both sides).
    #[serde(default)]
    pub rewrites: Vec<(Edge, EdgeWord)>,
    /// Whether the final leaf's relators are exactly the commutators of
    /// `raag.gamma_prime`. When `false`, a triangle with zero tree edges
    /// left a path-word commutator that no spanning tree eliminates, the
    /// leaf carries the full tree presentation, and the RAAG identification
    /// is recorded as a claim rather than verified relator-for-relator.
    #[serde(default = "default_true")]
    pub exact_raag: bool,
}

fn default_true() -> bool {
    true
}

/// Splits the group of `g` as an iterated amalgamated product over infinite
/// cyclic subgroups, peeling unfavourable triangles in lexicographic order
/// until a favourable complement remains. `tree_override` fixes the witness
/// tree instead of searching for one.
pub fn iterated_decomposition(
    g: &SimplicialGraph,
    tree_override: Option<SpanningTree>,
    budget: usize,
    cap: usize,
) -> Result<DecompositionTree> {
    let witness_tree = match tree_override {
        Some(t) => {
            let sc = is_simply_connected(&build_flag_complex(g), budget);
            match sc.status {
                Status::Yes => {}
                Status::No => {
                    return Err(Error::NotInFamily(
                        "flag complex is not simply connected".into(),
                    ))
                }
                Status::Unknown => {
                    return Err(Error::VerdictUnknown(
                        "simple connectivity undecided within budget".into(),
                    ))
                }
            }
            for tri in g.triangles() {
                let r = classify_triangle(g, &t, tri)?;
                if r.internal && !r.favourable {
                    return Err(Error::NotInFamily(format!(
                        "override tree leaves internal triangle {tri} unfavourable"
                    )));
                }
            }
            t
        }
        None => {
            let verdict = in_family_g(g, budget, cap)?;
            match verdict.status {
                Status::Yes => verdict.witness.expect("witness accompanies yes"),
                Status::No if verdict.explanation.starts_with("graph is favourable") => {
                    return Err(Error::FavourableInput)
                }
                Status::No => return Err(Error::NotInFamily(verdict.explanation)),
                Status::Unknown => return Err(Error::VerdictUnknown(verdict.explanation)),
            }
        }
    };

    let mut cur_g = g.clone();
    let mut cur_t = witness_tree.clone();
    let mut to_orig: Vec<VertexId> = (0..g.vertex_count()).collect();
    let mut peels: Vec<PeelRecord> = Vec::new();
    let mut complements: Vec<SimplicialGraph> = Vec::new();
    let mut z2_leaves: Vec<GroupPresentation> = Vec::new();
    let mut left_words: Vec<EdgeWord> = Vec::new();
    let mut right_words: Vec<EdgeWord> = Vec::new();

    let orig_edge = |map: &[VertexId], e: Edge| Edge::new(map[e.lo as usize], map[e.hi as usize]);

    let triangle_cap = g.triangles().len();
    loop {
        let unfavourable: Vec<Triangle> = cur_g
            .triangles()
            .into_iter()
            .filter(|tri| {
                let c = tri.edges().iter().filter(|e| cur_t.contains(**e)).count();
                c == 1
            })
            .collect();
        let Some(&tri) = unfavourable.first() else {
            break;
        };
        if peels.len() > triangle_cap {
            return Err(Error::NotInFamily("peeling did not terminate".into()));
        }
        let step = peel_once(&cur_g, &cur_t, tri)?;

        let tree_edge = orig_edge(&to_orig, step.tree_edge);
        let shared_edge = orig_edge(&to_orig, step.shared_edge);
        peels.push(PeelRecord {
            triangle: Triangle::new(
                to_orig[tri.a as usize],
                to_orig[tri.b as usize],
                to_orig[tri.c as usize],
            ),
            tree_edge,
            shared_edge,
        });
        // Z^2 leaf with source edges in input-graph coordinates.
        z2_leaves.push(GroupPresentation::z_squared(
            (cur_g.edge_label(step.tree_edge), Some(tree_edge)),
            (cur_g.edge_label(step.shared_edge), Some(shared_edge)),
        ));
        right_words.push(EdgeWord(vec![(shared_edge, 1)]));

        // Rewrite the amalgam word over edges of the input graph. Its
        // letters index the restricted tree's edges in complement
        // coordinates.
        let next_to_orig: Vec<VertexId> = step
            .complement
            .vertex_map
            .iter()
            .map(|&v| to_orig[v as usize])
            .collect();
        let rt_edges: Vec<Edge> = step.restricted_tree.edges().iter().copied().collect();
        left_words.push(EdgeWord(
            step.amalgam_word_left
                .letters
                .iter()
                .map(|l| (orig_edge(&next_to_orig, rt_edges[l.gen]), l.exp))
                .collect(),
        ));

        complements.push(step.complement.graph.clone());
        cur_g = step.complement.graph;
        cur_t = step.restricted_tree;
        to_orig = next_to_orig;
    }

    if peels.is_empty() {
        return Err(Error::FavourableInput);
    }
    // The final complement must present as a RAAG over some favourable
    // tree: a triangle with zero tree edges can contribute a commutator of
    // tree-path words that is not a consequence of the generator
    // commutators, in which case the inherited tree fails to witness the
    // RAAG structure and another spanning tree has to be found. Displaced
    // inherited tree edges are then rewritten over the new tree so the
    // amalgam words stay resolvable.
    let mut rewrites: Vec<(Edge, EdgeWord)> = Vec::new();
    let mut exact_raag = verify_chang_round_trip(&cur_g, &cur_t)?;
    if !exact_raag {
        if let Some(better) = find_chang_tree(&cur_g)? {
            let better_edges: Vec<Edge> = better.edges().iter().copied().collect();
            for &e in cur_t.edges() {
                if better.contains(e) {
                    continue;
                }
                let w = crate::presentation::tree_path_word(&cur_g, &better, e)?;
                rewrites.push((
                    orig_edge(&to_orig, e),
                    EdgeWord(
                        w.letters
                            .iter()
                            .map(|l| (orig_edge(&to_orig, better_edges[l.gen]), l.exp))
                            .collect(),
                    ),
                ));
            }
            cur_t = better;
            exact_raag = true;
        }
    }
    let raag = chang_raag(&cur_g, &cur_t)?;
    let tree_edges: Vec<Edge> = cur_t.edges().iter().copied().collect();
    let leaf_generators: Vec<Generator> = tree_edges
        .iter()
        .map(|&e| Generator {
            name: cur_g.edge_label(e),
            source_edge: Some(orig_edge(&to_orig, e)),
        })
        .collect();
    // When exact, the leaf relators are the RAAG commutators. Otherwise
    // the leaf keeps the full tree presentation so the flattened group is
    // still presented faithfully; the residual relators abelianize to
    // nothing, so downstream invariants are unaffected.
    let raag_leaf = if exact_raag {
        GroupPresentation {
            generators: leaf_generators,
            relators: raag_presentation(&raag.gamma_prime).relators,
            kind: PresentationKind::Raag,
        }
    } else {
        GroupPresentation {
            generators: leaf_generators,
            relators: papadima_suciu(&cur_g, &cur_t)?.relators,
            kind: PresentationKind::PapadimaSuciu,
        }
    };

    // Innermost node is the RAAG leaf; peels wrap around it in reverse
    // order so that the first peel becomes the outermost amalgam.
    let mut node = DecompNode::Leaf {
        presentation: raag_leaf,
    };
    for i in (0..peels.len()).rev() {
        node = DecompNode::Amalgam {
            left: Box::new(node),
            right: Box::new(DecompNode::Leaf {
                presentation: z2_leaves[i].clone(),
            }),
            amalgam_word_left: left_words[i].clone(),
            amalgam_word_right: right_words[i].clone(),
        };
    }

    Ok(DecompositionTree {
        root: node,
        witness_tree,
        peels,
        complements,
        raag,
        rewrites,
        exact_raag,
    })
}

/// Number of `Z^2` leaves in the tree.
pub fn z2_leaf_count(node: &DecompNode) -> usize {
    match node {
        DecompNode::Leaf { presentation } => {
            usize::from(presentation.kind == PresentationKind::ZSquared)
        }
        DecompNode::Amalgam { left, right, .. } => z2_leaf_count(left) + z2_leaf_count(right),
    }
}

/// Free product of all leaves plus one identification relator per amalgam
/// node. Generator identities are resolved through their source edges,
/// which are pairwise distinct across leaves.
pub fn flatten_presentation(d: &DecompositionTree) -> GroupPresentation {
    let mut generators: Vec<Generator> = Vec::new();
    let mut relators: Vec<Word> = Vec::new();
    let mut edge_to_global: std::collections::BTreeMap<Edge, usize> = Default::default();

    fn collect_leaves<'a>(node: &'a DecompNode, out: &mut Vec<&'a GroupPresentation>) {
        match node {
            DecompNode::Leaf { presentation } => out.push(presentation),
            DecompNode::Amalgam { left, right, .. } => {
                collect_leaves(left, out);
                collect_leaves(right, out);
            }
        }
    }
    let mut leaves = Vec::new();
    collect_leaves(&d.root, &mut leaves);

    for leaf in &leaves {
        let offset = generators.len();
        for gen in &leaf.generators {
            if let Some(e) = gen.source_edge {
                edge_to_global.insert(e, generators.len());
            }
            generators.push(gen.clone());
        }
        for r in &leaf.relators {
            relators.push(r.map_generators(|g| g + offset));
        }
    }

    let rewrite_map: std::collections::BTreeMap<Edge, &EdgeWord> =
        d.rewrites.iter().map(|(e, w)| (*e, w)).collect();
    fn amalgam_relators(
        node: &DecompNode,
        edge_to_global: &std::collections::BTreeMap<Edge, usize>,
        rewrite_map: &std::collections::BTreeMap<Edge, &EdgeWord>,
        out: &mut Vec<Word>,
    ) {
        if let DecompNode::Amalgam {
            left,
            right,
            amalgam_word_left,
            amalgam_word_right,
        } = node
        {
            let resolve = |w: &EdgeWord| {
                let mut word = Word::identity();
                for &(e, exp) in &w.0 {
                    if let Some(&g) = edge_to_global.get(&e) {
                        word = word.concat(&Word::from_letters([(g, exp)]));
                    } else {
                        let sub = Word::from_letters(
                            rewrite_map[&e].0.iter().map(|&(se, sx)| (edge_to_global[&se], sx)),
                        );
                        word = word.concat(&if exp < 0 { sub.inverse() } else { sub });
                    }
                }
                word
            };
            let lhs = resolve(amalgam_word_left);
            let rhs = resolve(amalgam_word_right);
            out.push(lhs.concat(&rhs.inverse()).reduced());
            amalgam_relators(left, edge_to_global, rewrite_map, out);
            amalgam_relators(right, edge_to_global, rewrite_map, out);
        }
    }
    amalgam_relators(&d.root, &edge_to_global, &rewrite_map, &mut relators);

    GroupPresentation {
        generators,
        relators,
        kind: PresentationKind::Generic,
    }
}

/// Human-readable nested amalgam expression, e.g.
/// `(A_Gamma2 *_Z Z^2) *_Z Z^2`.
pub fn render_expression(d: &DecompositionTree) -> String {
    let n = d.peels.len();
    let mut expr = format!("A_Gamma{n}");
    for i in 0..n {
        if i == 0 {
            expr = format!("{expr} *_Z Z^2");
        } else {
            expr = format!("({expr}) *_Z Z^2");
        }
    }
    expr
}

/// Checks that the RAAG built from a favourable pair matches its
/// spanning-tree presentation relator-for-relator through the generator
/// map.
pub fn verify_chang_round_trip(g: &SimplicialGraph, t: &SpanningTree) -> Result<bool> {
    let witness = chang_raag(g, t)?;
    let ps = papadima_suciu(g, t)?;
    let tree_edges: Vec<Edge> = t.edges().iter().copied().collect();
    let to_pairs = |rels: &[Word], map: &dyn Fn(usize) -> Edge| -> Option<BTreeSet<(Edge, Edge)>> {
        let mut out = BTreeSet::new();
        for r in rels {
            let (a, b) = r.as_generator_commutator()?;
            let (ea, eb) = (map(a), map(b));
            out.insert((ea.min(eb), ea.max(eb)));
        }
        Some(out)
    };
    let raag = raag_presentation(&witness.gamma_prime);
    let raag_pairs = to_pairs(&raag.relators, &|i| witness.generator_map[i]);
    let ps_pairs = to_pairs(&ps.relators, &|i| tree_edges[i]);
    Ok(match (raag_pairs, ps_pairs) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    })
}

/// Finds a spanning tree making every triangle favourable AND whose
/// tree-generated presentation consists purely of generator commutators
/// matching the RAAG adjacency. The second condition matters: a
/// favourable tree can leave a triangle with zero tree edges whose
/// path-word commutator is not implied by the generator commutators.
pub fn find_chang_tree(g: &SimplicialGraph) -> Result<Option<SpanningTree>> {
    let triangles = g.triangles();
    let mut found = None;
    crate::graph::for_each_spanning_tree(g, |t| {
        let favourable = triangles.iter().all(|tri| {
            let c = tri.edges().iter().filter(|e| t.contains(**e)).count();
            c == 0 || c == 2
        });
        if favourable && verify_chang_round_trip(g, t).unwrap_or(false) {
            found = Some(t.clone());
            return std::ops::ControlFlow::Break(());
        }
        std::ops::ControlFlow::Continue(())
    })?;
    Ok(found)
}
