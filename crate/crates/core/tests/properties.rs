use std::collections::BTreeSet;

use dualgraph::singularity::fundamental_cycle_ordered;
use dualgraph::{
    apply_sequence, blow_down, blow_up_at_edge, blow_up_on_curve, canonical_boundary,
    canonical_tree, classify_k, compute_d_sharp, fundamental_cycle, pa_genus, pairing,
    peel_step, BoundaryConfig, Cycle, HirzebruchSeed, Int, KValue, Move, MoveSequence,
    Rational, VertexId, WeightedDualGraph,
};
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::sample::Index;

fn tree(max: usize, weights: std::ops::RangeInclusive<i64>) -> impl Strategy<Value = WeightedDualGraph> {
    (1..=max)
        .prop_flat_map(move |n| {
            (
                prop::collection::vec(weights.clone(), n),
                prop::collection::vec(any::<Index>(), n),
            )
        })
        .prop_map(|(ws, parents)| {
            let mut g = WeightedDualGraph::new();
            for (i, w) in ws.iter().enumerate() {
                g.add_vertex(format!("V{i}"), *w).unwrap();
                if i > 0 {
                    g.add_edge(format!("V{i}"), format!("V{}", parents[i].index(i))).unwrap();
                }
            }
            g
        })
}

/// Trees with weights at most -2 and a negative definite form.
fn definite_tree(max: usize) -> impl Strategy<Value = WeightedDualGraph> {
    tree(max, -5..=-2).prop_filter("negative definite", |g| g.is_negative_definite())
}

/// A valid move sequence chosen by `picks`: each later move either blows up
/// a point of the newest curve or one of its nodes.
fn moves_from(m: i64, picks: &[Index]) -> MoveSequence {
    let mut moves = vec![Move::OnCurve("F".into())];
    let mut g = HirzebruchSeed::new(m).unwrap().graph();
    g = blow_up_on_curve(&g, &"F".into(), VertexId::from("E1")).unwrap();
    for (k, p) in picks.iter().enumerate() {
        let latest = VertexId::new(format!("E{}", k + 1));
        let new = VertexId::new(format!("E{}", k + 2));
        let nbrs: Vec<VertexId> = g.neighbors(&latest).cloned().collect();
        let choice = p.index(nbrs.len() + 1);
        let mv = if choice == 0 {
            Move::OnCurve(latest.clone())
        } else {
            Move::AtEdge(latest.clone(), nbrs[choice - 1].clone())
        };
        g = match &mv {
            Move::OnCurve(v) => blow_up_on_curve(&g, v, new).unwrap(),
            Move::AtEdge(a, b) => blow_up_at_edge(&g, a, b, new).unwrap(),
        };
        moves.push(mv);
    }
    MoveSequence::new(moves)
}

fn built_boundary() -> impl Strategy<Value = BoundaryConfig> {
    (2i64..=5, prop::collection::vec(any::<Index>(), 0..12)).prop_map(|(m, picks)| {
        apply_sequence(&HirzebruchSeed::new(m).unwrap(), &moves_from(m, &picks)).unwrap()
    })
}

fn rename(g: &WeightedDualGraph, perm: &[Index]) -> (WeightedDualGraph, Vec<(VertexId, VertexId)>) {
    let ids: Vec<VertexId> = g.ids().cloned().collect();
    let mut targets: Vec<usize> = (0..ids.len()).collect();
    for (i, p) in perm.iter().enumerate().take(ids.len()) {
        let j = i + p.index(ids.len() - i);
        targets.swap(i, j);
    }
    let map: Vec<(VertexId, VertexId)> = ids
        .iter()
        .zip(&targets)
        .map(|(a, &t)| (a.clone(), VertexId::new(format!("R{t}"))))
        .collect();
    let lookup = |v: &VertexId| map.iter().find(|(a, _)| a == v).unwrap().1.clone();
    let mut h = WeightedDualGraph::new();
    for v in g.vertices() {
        h.add_vertex(lookup(&v.id), v.weight).unwrap();
    }
    for (a, b) in g.edges() {
        h.add_edge(lookup(&a), lookup(&b)).unwrap();
    }
    (h, map)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn definite_graphs_have_definite_subgraphs(g in tree(8, -4..=0), mask in any::<u16>()) {
        prop_assume!(g.is_negative_definite());
        let keep: BTreeSet<VertexId> = g
            .ids()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, id)| id.clone())
            .collect();
        prop_assume!(!keep.is_empty());
        prop_assert!(g.induced_subgraph(&keep).unwrap().is_negative_definite());
    }

    #[test]
    fn minus_two_chain_determinant(n in 1usize..40) {
        let names: Vec<(String, i64)> = (0..n).map(|i| (format!("A{i}"), -2)).collect();
        let g = WeightedDualGraph::chain(&names);
        prop_assert_eq!(g.determinant(), Int::from(n as i64 + 1));
    }

    #[test]
    fn determinant_survives_blow_up(g in tree(8, -5..=1), pick in any::<Index>(), at_edge: bool) {
        let new = VertexId::from("X");
        let up = if at_edge && g.edge_count() > 0 {
            let e = g.edges();
            let (a, b) = &e[pick.index(e.len())];
            blow_up_at_edge(&g, a, b, new.clone()).unwrap()
        } else {
            let ids: Vec<VertexId> = g.ids().cloned().collect();
            blow_up_on_curve(&g, &ids[pick.index(ids.len())], new.clone()).unwrap()
        };
        prop_assert_eq!(up.determinant(), g.determinant());
        prop_assert_eq!(blow_down(&up, &new).unwrap(), g);
    }

    #[test]
    fn genus_is_quadratic(
        g in tree(7, -5..=-1),
        a in prop::collection::vec(0i64..4, 7),
        b in prop::collection::vec(0i64..4, 7),
    ) {
        let ids: Vec<VertexId> = g.ids().cloned().collect();
        let mk = |xs: &[i64]| {
            Cycle::new(&g, ids.iter().cloned().zip(xs.iter().map(|&x| Rational::from_integer(Int::from(x))))).unwrap()
        };
        let (z1, z2) = (mk(&a), mk(&b));
        prop_assume!(!z1.is_zero() && !z2.is_zero());
        let lhs = pa_genus(&g, &z1.add(&z2)).unwrap();
        let rhs = pa_genus(&g, &z1).unwrap() + pa_genus(&g, &z2).unwrap()
            + pairing(&g, &z1, &z2).unwrap() - Rational::one();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_sharp_solves_adjunction(g in definite_tree(9)) {
        let r = compute_d_sharp(&g, None).unwrap();
        for (_, v) in r.residuals(&g).unwrap() {
            prop_assert!(v.is_zero());
        }
        // Weights at most -2 give nonnegative canonical degrees.
        for id in g.ids() {
            prop_assert!(!r.coeff(id).is_negative());
        }
    }

    #[test]
    fn fundamental_cycle_is_order_free(g in definite_tree(9)) {
        let ids: Vec<VertexId> = g.ids().cloned().collect();
        let rev: Vec<VertexId> = ids.iter().rev().cloned().collect();
        let a = fundamental_cycle_ordered(&g, &ids).unwrap();
        let b = fundamental_cycle_ordered(&g, &rev).unwrap();
        prop_assert_eq!(&a.cycle, &b.cycle);
        let total: Int = a.cycle.iter().map(|(_, v)| v.to_integer()).sum();
        prop_assert_eq!(Int::from(a.iterations + ids.len()), total);
        for id in &ids {
            let d = Cycle::reduced_on([id]);
            prop_assert!(!pairing(&g, &a.cycle, &d).unwrap().is_positive());
            prop_assert!(a.cycle.coeff(id) >= Rational::one());
        }
        prop_assert_eq!(fundamental_cycle(&g).unwrap(), a.cycle);
    }

    #[test]
    fn canonical_forms_ignore_names(g in tree(10, -4..=0), perm in prop::collection::vec(any::<Index>(), 10)) {
        let (h, map) = rename(&g, &perm);
        prop_assert_eq!(canonical_tree(&g).unwrap(), canonical_tree(&h).unwrap());
        let root = g.ids().next().unwrap().clone();
        let image = map.iter().find(|(a, _)| *a == root).unwrap().1.clone();
        let bg = BoundaryConfig::new(g.clone(), root).unwrap();
        let bh = BoundaryConfig::new(h, image).unwrap();
        prop_assert_eq!(canonical_boundary(&bg).unwrap(), canonical_boundary(&bh).unwrap());
    }

    #[test]
    fn built_boundaries_are_plane_boundaries(b in built_boundary()) {
        prop_assert!(b.graph.is_tree());
        prop_assert_eq!(b.graph.determinant(), Int::from(-1));
        prop_assert_eq!(b.c_weight(), -1);
    }

    #[test]
    fn peeling_keeps_determinant(b in built_boundary()) {
        prop_assume!(b.d().has_branching());
        if let Ok(next) = peel_step(&b) {
            prop_assert_eq!(next.graph.determinant(), Int::from(-1));
            prop_assert_eq!(next.c_weight(), -1);
            prop_assert!(next.graph.is_tree());
        }
    }
}

#[test]
fn trivial_builds_pin_the_section_and_first_curve() {
    use dualgraph::corpus::{k_trivial_comb_moves, k_trivial_two_point_moves, FAMILY_RANGE};
    let mut cases = Vec::new();
    for m in FAMILY_RANGE {
        cases.push((m, k_trivial_comb_moves(m)));
        cases.push((2, k_trivial_two_point_moves(m)));
    }
    for (m, moves) in cases {
        let b = apply_sequence(&HirzebruchSeed::new(m).unwrap(), &moves.parse().unwrap()).unwrap();
        assert_eq!(classify_k(&b).unwrap().value, KValue::Trivial, "{moves}");
        let ds = b.d_sharp().unwrap();
        assert_eq!(ds.coeff(&"M".into()), Rational::from_integer(Int::from(2)), "{moves}");
        assert_eq!(ds.coeff(&"E1".into()), Rational::from_integer(Int::from(m + 1)), "{moves}");
    }
}
