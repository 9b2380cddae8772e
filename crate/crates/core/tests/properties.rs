use std::collections::BTreeSet;
use std::ops::ControlFlow;

use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use bbsplit_core::classify::{classify_triangle, optimize_spanning_tree, TreeSearchMode, TreeSearchOutcome};
use bbsplit_core::complex::{build_flag_complex, is_simply_connected, Status, DEFAULT_BUDGET};
use bbsplit_core::graph::{
    for_each_spanning_tree, kirchhoff_count, Edge, SimplicialGraph, SpanningTree,
};
use bbsplit_core::io::{emit_graph, parse_graph};
use bbsplit_core::presentation::{abelianization, dicks_leary, papadima_suciu};
use bbsplit_core::snf::smith_normal_form;
use bbsplit_core::word::Word;
use bbsplit_core::{generate, Error};

fn arb_word(max_gen: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((0..max_gen, prop::bool::ANY), 0..max_len).prop_map(|letters| {
        Word::from_letters(
            letters
                .into_iter()
                .map(|(g, pos)| (g, if pos { 1 } else { -1 })),
        )
    })
}

proptest! {
    #[test]
    fn reduction_is_idempotent(w in arb_word(4, 16)) {
        let r = w.reduced();
        prop_assert_eq!(r.reduced(), r);
    }

    #[test]
    fn normal_form_ignores_rotation_and_inversion(w in arb_word(4, 12), rot in 0usize..12) {
        let c = w.cyclically_reduced();
        if !c.is_empty() {
            let k = rot % c.letters.len();
            let rotated = Word {
                letters: c.letters[k..].iter().chain(&c.letters[..k]).copied().collect(),
            };
            prop_assert_eq!(rotated.normal_form(), c.normal_form());
        }
        prop_assert_eq!(w.inverse().normal_form(), w.normal_form());
    }

    #[test]
    fn concat_with_inverse_reduces_to_identity(w in arb_word(5, 14)) {
        prop_assert!(w.concat(&w.inverse()).reduced().is_empty());
    }

    #[test]
    fn signed_indices_round_trip(w in arb_word(6, 14)) {
        prop_assert_eq!(Word::from_signed_indices(&w.signed_indices()), w);
    }

    #[test]
    fn smith_form_diagonal_divides(rows in prop::collection::vec(
        prop::collection::vec(-6i64..=6, 3), 1..5)) {
        let s = smith_normal_form(&rows);
        let d = &s.diag;
        for i in 1..d.len() {
            if d[i - 1] != num_bigint::BigInt::from(0) {
                prop_assert_eq!(&d[i] % &d[i - 1], num_bigint::BigInt::from(0));
            } else {
                prop_assert_eq!(&d[i], &num_bigint::BigInt::from(0));
            }
        }
        prop_assert!(s.rank() <= rows.len().min(3));
    }
}

fn random_connected_graph(n: u32, extra_edges: usize, seed: u64) -> SimplicialGraph {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut g = SimplicialGraph::new(n, None);
    for v in 1..n {
        let parent = rng.gen_range(0..v);
        g.add_edge(parent, v);
    }
    for _ in 0..extra_edges {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            g.add_edge(a, b);
        }
    }
    g
}

#[test]
fn enumeration_count_matches_the_matrix_tree_theorem() {
    for seed in 0..12u64 {
        let g = random_connected_graph(6, 4, seed);
        let mut count: i128 = 0;
        for_each_spanning_tree(&g, |_| {
            count += 1;
            ControlFlow::Continue(())
        })
        .unwrap();
        assert_eq!(count, kirchhoff_count(&g), "seed {seed}");
    }
}

#[test]
fn enumeration_is_strictly_increasing_and_duplicate_free() {
    let g = generate::octahedron();
    let mut seen: Vec<BTreeSet<Edge>> = Vec::new();
    for_each_spanning_tree(&g, |t| {
        if let Some(last) = seen.last() {
            assert!(last < t.edges(), "order violated");
        }
        seen.push(t.edges().clone());
        ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(seen.len(), 384);
}

#[test]
fn optimized_tree_is_a_lower_bound_for_every_tree() {
    let g = generate::hexagon();
    let TreeSearchOutcome::Found(best) =
        optimize_spanning_tree(&g, TreeSearchMode::MinimizeUnfavourable, 1_000_000).unwrap()
    else {
        panic!("search must succeed");
    };
    for_each_spanning_tree(&g, |t| {
        let count = g
            .triangles()
            .iter()
            .filter(|&&tri| !classify_triangle(&g, t, tri).unwrap().favourable)
            .count();
        assert!(best.unfavourable_count <= count);
        ControlFlow::Continue(())
    })
    .unwrap();
}

#[test]
fn presentation_abelianizations_agree_on_random_simply_connected_graphs() {
    let mut tested = 0;
    for seed in 0..40u64 {
        let g = random_connected_graph(6, 5, seed);
        if is_simply_connected(&build_flag_complex(&g), DEFAULT_BUDGET).status != Status::Yes {
            continue;
        }
        let dl = abelianization(&dicks_leary(&g).unwrap());
        let mut trees = Vec::new();
        for_each_spanning_tree(&g, |t| {
            trees.push(t.clone());
            if trees.len() >= 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        for t in trees {
            let ps = abelianization(&papadima_suciu(&g, &t).unwrap());
            assert_eq!(ps.free_rank, (g.vertex_count() - 1) as usize, "seed {seed}");
            assert!(ps.torsion.is_empty());
            assert_eq!(dl, ps, "seed {seed}");
        }
        tested += 1;
    }
    assert!(tested >= 10, "not enough simply connected samples: {tested}");
}

#[test]
fn spanning_tree_presentation_is_tree_independent_up_to_abelianization() {
    // Different spanning trees of the same graph can give different
    // relator words, but the group (hence H_1) is the same.
    let g = generate::hexagon();
    let mut invariants = BTreeSet::new();
    for_each_spanning_tree(&g, |t| {
        let ps = papadima_suciu(&g, t).unwrap();
        let ab = abelianization(&ps);
        invariants.insert((ab.free_rank, ab.torsion.len(), ps.generator_count()));
        ControlFlow::Continue(())
    })
    .unwrap();
    assert_eq!(invariants.len(), 1);
    assert!(invariants.contains(&(5, 0, 5)));
}

#[test]
fn parse_emit_round_trip_on_random_graphs() {
    for seed in 0..10u64 {
        let g = random_connected_graph(7, 6, seed);
        let text = emit_graph(&g);
        let doc = parse_graph(&text).unwrap();
        assert_eq!(doc.graph, g);
        assert_eq!(emit_graph(&doc.graph), text);
    }
}

#[test]
fn tree_override_must_span() {
    let g = generate::hexagon();
    let err = SpanningTree::new(
        &g,
        [Edge::new(0, 1), Edge::new(1, 2)].into_iter().collect(),
    )
    .unwrap_err();
    assert!(matches!(err, Error::NotASpanningTree(_)));
}
