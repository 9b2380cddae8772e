//! Group presentations of Bestvina-Brady groups: the edge-generated
//! (Dicks-Leary) presentation, the spanning-tree-generated (Papadima-Suciu)
//! presentation obtained by Tietze elimination, RAAG presentations, and the
//! abelianization oracle used to cross-check everything.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, SimplicialGraph, SpanningTree};
use crate::snf::smith_normal_form;
use crate::word::{trivial_in_raag, Word};
use crate::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PresentationKind {
    DicksLeary,
    PapadimaSuciu,
    Raag,
    ZSquared,
    Generic,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    /// Edge of the source graph this generator stands for, when applicable.
    pub source_edge: Option<Edge>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub kind: PresentationKind,
}

impl GroupPresentation {
    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn generator_of_edge(&self, e: Edge) -> Option<usize> {
        self.generators.iter().position(|g| g.source_edge == Some(e))
    }

    /// Relator multiset in comparison normal form.
    pub fn relator_normal_forms(&self) -> Vec<Word> {
        let mut out: Vec<Word> = self.relators.iter().map(|r| r.normal_form()).collect();
        out.sort();
        out
    }

    /// `Z^2 = <a, b | [a, b]>` with the generators tagged by source edges.
    pub fn z_squared(a: (String, Option<Edge>), b: (String, Option<Edge>)) -> Self {
        GroupPresentation {
            generators: vec![
                Generator {
                    name: a.0,
                    source_edge: a.1,
                },
                Generator {
                    name: b.0,
                    source_edge: b.1,
                },
            ],
            relators: vec![Word::commutator(&Word::generator(0), &Word::generator(1))],
            kind: PresentationKind::ZSquared,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    /// Elementary divisors greater than 1, each dividing the next.
    pub torsion: Vec<BigInt>,
}

/// Edge-generated presentation: one generator per edge, and for every
/// triangle with directed triple `(e, f, g)` the relators `e f e^-1 f^-1`
/// and `e f g^-1`.
pub fn dicks_leary(g: &SimplicialGraph) -> Result<GroupPresentation> {
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let edges: Vec<Edge> = g.edges().collect();
    let idx: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let generators = edges
        .iter()
        .map(|&e| Generator {
            name: g.edge_label(e),
            source_edge: Some(e),
        })
        .collect();
    let mut relators = Vec::new();
    for t in g.triangles() {
        let (e, f, gg) = t.directed_triple();
        let (ei, fi, gi) = (idx[&e], idx[&f], idx[&gg]);
        relators.push(Word::commutator(
            &Word::generator(ei),
            &Word::generator(fi),
        ));
        relators.push(Word::from_letters([(ei, 1), (fi, 1), (gi, -1)]));
    }
    Ok(GroupPresentation {
        generators,
        relators,
        kind: PresentationKind::DicksLeary,
    })
}

/// Expresses an edge of `g` as a word over the tree-edge generators of `t`
/// (indexed by lexicographic position in the tree's edge set). A tree edge
/// maps to itself; any other edge maps to the word along the unique tree
/// path from its smaller to its larger endpoint, a letter getting exponent
/// +1 exactly when the traversal follows the tree edge's lo -> hi
/// orientation.
pub fn tree_path_word(g: &SimplicialGraph, t: &SpanningTree, e: Edge) -> Result<Word> {
    if !g.edge_set().contains(&e) {
        return Err(Error::EdgeNotInGraph(e));
    }
    let tree_idx: BTreeMap<Edge, usize> = t
        .edges()
        .iter()
        .enumerate()
        .map(|(i, te)| (*te, i))
        .collect();
    if let Some(&i) = tree_idx.get(&e) {
        return Ok(Word::generator(i));
    }
    let path = t
        .path(e.lo, e.hi)
        .ok_or_else(|| Error::NotASpanningTree("tree does not connect the endpoints".into()))?;
    Ok(Word::from_letters(
        path.into_iter().map(|(te, sign)| (tree_idx[&te], sign)),
    )
    .reduced())
}

/// Spanning-tree presentation: eliminate every non-tree generator of the
/// edge-generated presentation by substituting its tree-path word, freely
/// reduce, and drop relators that become trivial, duplicate another relator
/// up to rotation and inversion, or follow from the partial commutations
/// already present. Generators are the tree edges in lexicographic order,
/// named `e1..ek`.
pub fn papadima_suciu(g: &SimplicialGraph, t: &SpanningTree) -> Result<GroupPresentation> {
    let dl = dicks_leary(g)?;
    let edges: Vec<Edge> = g.edges().collect();
    let tree_edges: Vec<Edge> = t.edges().iter().copied().collect();
    for te in &tree_edges {
        if !g.edge_set().contains(te) {
            return Err(Error::EdgeNotInGraph(*te));
        }
    }
    // Tree-path words, lifted to the edge-generator index space.
    let edge_idx: BTreeMap<Edge, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let tree_pos: BTreeMap<Edge, usize> = tree_edges
        .iter()
        .enumerate()
        .map(|(i, e)| (*e, i))
        .collect();
    let mut relators = dl.relators;
    for (i, e) in edges.iter().enumerate() {
        if tree_pos.contains_key(e) {
            continue;
        }
        let replacement =
            tree_path_word(g, t, *e)?.map_generators(|j| edge_idx[&tree_edges[j]]);
        relators = relators
            .iter()
            .map(|r| r.substitute(i, &replacement))
            .collect::<Result<_>>()?;
    }
    // Reindex onto tree generators.
    let reindex: BTreeMap<usize, usize> = tree_edges
        .iter()
        .enumerate()
        .map(|(i, e)| (edge_idx[e], i))
        .collect();
    let relators: Vec<Word> = relators
        .iter()
        .map(|r| r.map_generators(|j| reindex[&j]))
        .collect();

    // Drop trivial relators and duplicates up to rotation and inversion.
    let mut seen = BTreeSet::new();
    let mut kept = Vec::new();
    for r in relators {
        let w = r.cyclically_reduced();
        if w.is_empty() {
            continue;
        }
        if seen.insert(w.normal_form()) {
            kept.push(w);
        }
    }
    // Drop relators that are consequences of the single-generator
    // commutators in the set: anything trivial in the right-angled Artin
    // group those commutations define is redundant.
    let commuting: BTreeSet<(usize, usize)> = kept
        .iter()
        .filter_map(|r| r.as_generator_commutator())
        .collect();
    let kept: Vec<Word> = kept
        .into_iter()
        .filter(|r| {
            r.as_generator_commutator().is_some() || !trivial_in_raag(r, &commuting)
        })
        .collect();

    let generators = tree_edges
        .iter()
        .enumerate()
        .map(|(i, e)| Generator {
            name: format!("e{}", i + 1),
            source_edge: Some(*e),
        })
        .collect();
    Ok(GroupPresentation {
        generators,
        relators: kept,
        kind: PresentationKind::PapadimaSuciu,
    })
}

/// Right-angled Artin group of `g`: one generator per vertex, one
/// commutator relator per edge.
pub fn raag_presentation(g: &SimplicialGraph) -> GroupPresentation {
    let generators = (0..g.vertex_count())
        .map(|v| Generator {
            name: g.label(v).to_string(),
            source_edge: None,
        })
        .collect();
    let relators = g
        .edges()
        .map(|e| {
            Word::commutator(
                &Word::generator(e.lo as usize),
                &Word::generator(e.hi as usize),
            )
        })
        .collect();
    GroupPresentation {
        generators,
        relators,
        kind: PresentationKind::Raag,
    }
}

/// Abelian invariants of the presented group, from the Smith normal form of
/// the relator exponent-sum matrix.
pub fn abelianization(p: &GroupPresentation) -> AbelianInvariants {
    let gens = p.generators.len();
    let matrix: Vec<Vec<i64>> = p
        .relators
        .iter()
        .map(|r| (0..gens).map(|g| r.exponent_sum(g)).collect())
        .collect();
    if matrix.is_empty() || gens == 0 {
        return AbelianInvariants {
            free_rank: gens,
            torsion: Vec::new(),
        };
    }
    let snf = smith_normal_form(&matrix);
    AbelianInvariants {
        free_rank: gens - snf.rank(),
        torsion: snf.nonunit_divisors(),
    }
}
