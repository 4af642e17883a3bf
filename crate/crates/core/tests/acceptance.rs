//! One line per acceptance criterion. Every comparison is exact; the only
//! pinned tolerances are the wall-clock limits below.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use dualgraph::corpus::{
    self, chain_id, k_trivial_comb, k_trivial_two_point, spine_id, twig_id, FAMILY_RANGE,
};
use dualgraph::singularity::max_pa_bounded_with_limit;
use dualgraph::{
    blow_down, blow_up_at_edge, blow_up_on_curve, build_z, canonical_boundary, classify_k,
    enumerate_boundaries, is_rational, max_pa_bounded, pa_genus, reduce_to_trivial,
    validate_boundary, BoundaryConfig, EnumerationConfig, Filters, Int, KValue, Rational,
    VertexId, WeightedDualGraph,
};
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Check = Result<String, String>;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

fn qi(n: i64) -> Rational {
    q(n, 1)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn corpus_boundary(name: &str) -> BoundaryConfig {
    corpus::entry(name).expect("entry").boundary().expect("parses")
}

fn corpus_d(name: &str) -> WeightedDualGraph {
    let f = corpus::entry(name).expect("entry").graph_file().expect("parses");
    match &f.marked {
        Some(c) => f.graph.without(&[c]),
        None => f.graph,
    }
}

fn check_alpha(b: &BoundaryConfig, want: &[(String, Rational)]) -> Result<(), String> {
    let ds = b.d_sharp().map_err(|e| e.to_string())?;
    ensure(want.len() == b.d().len(), || {
        format!("table has {} entries for {} curves", want.len(), b.d().len())
    })?;
    for (id, v) in want {
        let got = ds.coeff(&VertexId::from(id.as_str()));
        ensure(got == *v, || format!("alpha({id}) = {got}, expected {v}"))?;
    }
    Ok(())
}

fn check_z(b: &BoundaryConfig, want: &[(&str, i64)]) -> Check {
    let trace = reduce_to_trivial(b).map_err(|e| e.to_string())?;
    let z = build_z(b, &trace).map_err(|e| e.to_string())?;
    for (id, x) in want {
        let got = z.coefficient(&VertexId::from(*id));
        ensure(got == qi(*x), || format!("x({id}) = {got}, expected {x}"))?;
    }
    let pa = pa_genus(&b.graph, &z.cycle).map_err(|e| e.to_string())?;
    ensure(pa.is_one(), || format!("p_a(Z) = {pa}"))?;
    Ok(format!("{} contractions, Z = {}", trace.steps.len(), z.cycle.to_literal()))
}

fn ac1() -> Check {
    for m in FAMILY_RANGE {
        let b = k_trivial_comb(m);
        let d = b.d();
        ensure(d.determinant() == Int::from(2 * (m - 2)), || {
            format!("m={m}: d(D) = {}", d.determinant())
        })?;
        let mut alpha: Vec<(String, Rational)> =
            (1..=2 * m + 1).map(|i| (chain_id(0, i as usize), qi(i))).collect();
        alpha.push((spine_id(1), qi(2 * (m + 1))));
        alpha.push((chain_id(1, 1), qi(m + 2)));
        alpha.push((chain_id(1, 2), qi(2)));
        alpha.push((twig_id(1, 1), qi(m + 1)));
        check_alpha(&b, &alpha).map_err(|e| format!("m={m}: {e}"))?;
        let k = classify_k(&b).map_err(|e| e.to_string())?;
        ensure(k.value == KValue::Trivial, || format!("m={m}: class {}", k.value))?;
        let r = is_rational(&d).map_err(|e| e.to_string())?;
        ensure(!r.rational, || format!("m={m}: E reported rational"))?;
    }
    Ok("m = 3..8".into())
}

fn ac2() -> Check {
    for m in FAMILY_RANGE {
        let b = k_trivial_two_point(m);
        let d = b.d();
        ensure(d.determinant() == Int::from((m - 2) * (m - 1)), || {
            format!("m={m}: d(D) = {}", d.determinant())
        })?;
        let mut alpha: Vec<(String, Rational)> =
            (1..=5).map(|i| (chain_id(0, i as usize), qi(i))).collect();
        alpha.extend((1..=m - 2).map(|j| (twig_id(0, j as usize), qi(0))));
        alpha.push((spine_id(1), qi(6)));
        alpha.push((chain_id(1, 1), qi(4)));
        alpha.push((chain_id(1, 2), qi(2)));
        alpha.push((twig_id(1, 1), qi(3)));
        check_alpha(&b, &alpha).map_err(|e| format!("m={m}: {e}"))?;
        let k = classify_k(&b).map_err(|e| e.to_string())?;
        ensure(k.value == KValue::Trivial, || format!("m={m}: class {}", k.value))?;
        let comps = d.connected_components();
        ensure(comps.len() == 2, || format!("m={m}: {} components", comps.len()))?;
        let mut seen = (0, 0);
        for c in &comps {
            let r = is_rational(c).map_err(|e| e.to_string())?;
            match (c.is_chain(), r.rational) {
                (true, true) => seen.0 += 1,
                (false, false) => seen.1 += 1,
                other => return Err(format!("m={m}: component (chain, rational) = {other:?}")),
            }
        }
        ensure(seen == (1, 1), || format!("m={m}: {seen:?}"))?;
    }
    Ok("m = 3..8".into())
}

fn ac3() -> Check {
    let b = corpus_boundary("k-ample-connected");
    ensure(b.d().determinant() == Int::from(21), || "d(D) != 21".into())?;
    let mut alpha = vec![
        ("D1".to_string(), q(20, 7)),
        ("D2".into(), q(53, 7)),
        ("D3".into(), q(43, 7)),
    ];
    alpha.extend((4..=11).map(|i| (format!("D{i}"), q(126 - 10 * i, 7))));
    alpha.extend([
        ("D12".into(), q(8, 7)),
        ("D13".into(), q(16, 7)),
        ("D14".into(), q(24, 7)),
        ("D15".into(), q(16, 7)),
        ("D16".into(), q(8, 7)),
    ]);
    check_alpha(&b, &alpha)?;
    let k = classify_k(&b).map_err(|e| e.to_string())?;
    ensure(k.c_pairing == q(8, 7) && k.value == KValue::Ample, || {
        format!("c = {}, class {}", k.c_pairing, k.value)
    })?;
    let t = reduce_to_trivial(&b).map_err(|e| e.to_string())?;
    ensure(
        canonical_boundary(&t.final_boundary).unwrap()
            == canonical_boundary(&k_trivial_comb(3)).unwrap(),
        || format!("final boundary:\n{}", t.final_boundary.to_text()),
    )?;
    let mut z = vec![("D1", 2), ("D2", 5), ("D3", 4)];
    let names: Vec<String> = (4..=16).map(|j| format!("D{j}")).collect();
    for (j, n) in (4..=16).zip(&names) {
        z.push((n.as_str(), if j <= 11 { 12 - j } else { 1 }));
    }
    check_z(&b, &z)
}

fn ac4() -> Check {
    let b = corpus_boundary("k-ample-split");
    ensure(b.d().determinant() == Int::from(15), || "d(D) != 15".into())?;
    let mut alpha = vec![
        ("D1".to_string(), q(8, 3)),
        ("D2".into(), q(16, 3)),
        ("D3".into(), qi(4)),
    ];
    alpha.extend((4..=9).map(|i| (format!("D{i}"), q(40 - 4 * i, 3))));
    alpha.extend([
        ("D10".into(), q(1, 5)),
        ("D11".into(), q(2, 5)),
        ("D12".into(), q(2, 3)),
    ]);
    check_alpha(&b, &alpha)?;
    let k = classify_k(&b).map_err(|e| e.to_string())?;
    ensure(k.c_pairing == q(16, 15), || format!("c = {}", k.c_pairing))?;
    let t = reduce_to_trivial(&b).map_err(|e| e.to_string())?;
    ensure(
        canonical_boundary(&t.final_boundary).unwrap()
            == canonical_boundary(&k_trivial_two_point(3)).unwrap(),
        || format!("final boundary:\n{}", t.final_boundary.to_text()),
    )?;
    let mut z = vec![("D1", 2), ("D2", 4), ("D3", 3)];
    let names: Vec<String> = (4..=9).map(|j| format!("D{j}")).collect();
    for (j, n) in (4..=9).zip(&names) {
        z.push((n.as_str(), 10 - j));
    }
    z.extend([("D10", 0), ("D11", 0), ("D12", 1)]);
    check_z(&b, &z)
}

fn ac5() -> Check {
    let b = corpus_boundary("indefinite-intermediate");
    ensure(b.d().is_negative_definite(), || "D itself is not definite".into())?;
    let image = blow_down(&b.graph, &b.c).map_err(|e| e.to_string())?;
    let minus_one: Vec<&VertexId> = image
        .vertices()
        .filter(|v| v.weight == -1)
        .map(|v| &v.id)
        .collect();
    ensure(minus_one.len() == 1, || format!("(-1)-curves: {minus_one:?}"))?;
    let d_prime = image.without(&[minus_one[0]]);
    ensure(!d_prime.is_negative_definite(), || "D' is negative definite".into())?;
    Ok(format!("C' = {}, d(D') = {}", minus_one[0], d_prime.determinant()))
}

fn ac6() -> Check {
    let b = corpus_boundary("conic-complement");
    ensure(b.d().determinant() == Int::from(16), || "d(D) != 16".into())?;
    let mut alpha = vec![("D1".to_string(), q(3, 2))];
    alpha.extend((2..=7).map(|i| (format!("D{i}"), q(i - 1, 2))));
    alpha.extend([
        ("D8".into(), qi(2)),
        ("D9".into(), qi(1)),
        ("D10".into(), qi(2)),
        ("D11".into(), qi(1)),
    ]);
    check_alpha(&b, &alpha)?;
    let k = classify_k(&b).map_err(|e| e.to_string())?;
    ensure(k.c_pairing.is_one() && k.value == KValue::Trivial, || {
        format!("c = {}", k.c_pairing)
    })?;
    let d = corpus_d("conic-complement-d");
    ensure(is_rational(&d).map_err(|e| e.to_string())?.rational, || "not rational".into())?;
    let m = max_pa_bounded(&d, 6).map_err(|e| e.to_string())?;
    ensure(m.max <= Int::zero(), || format!("max p_a = {}", m.max))?;
    Ok(format!("max p_a over 1..=6 is {} ({} nodes)", m.max, m.nodes))
}

/// Checks the structural properties on one enumerated boundary; returns the
/// class it exercised.
fn check_enumerated(b: &BoundaryConfig) -> Result<Option<KValue>, String> {
    let v = validate_boundary(b);
    ensure(v.structural_ok() && v.determinant == Int::from(-1), || {
        format!("d(C+D) = {}\n{}", v.determinant, b.to_text())
    })?;
    let k = classify_k(b).map_err(|e| e.to_string())?;
    let d = b.d();
    match k.value {
        KValue::Trivial => {
            let ds = b.d_sharp().map_err(|e| e.to_string())?;
            let branched: Vec<_> = d
                .connected_components()
                .into_iter()
                .filter(|c| c.has_branching())
                .collect();
            ensure(!branched.is_empty(), || format!("no branched component\n{}", b.to_text()))?;
            for comp in branched {
                ensure(comp.ids().all(|id| ds.coeff(id).is_integer()), || {
                    format!("D# not integral\n{}", b.to_text())
                })?;
                let r = is_rational(&comp).map_err(|e| e.to_string())?;
                ensure(!r.rational, || format!("rational branched component\n{}", b.to_text()))?;
            }
        }
        KValue::Ample if d.has_branching() => {
            let t = reduce_to_trivial(b).map_err(|e| format!("{e}\n{}", b.to_text()))?;
            let cs = t.c_pairings();
            for w in cs.windows(2) {
                let ok = if w[0] > Rational::one() {
                    w[1] >= Rational::one()
                } else if w[0].is_one() {
                    w[1] <= Rational::one()
                } else {
                    false
                };
                ensure(ok, || format!("monotonicity: {} then {}", w[0], w[1]))?;
            }
            let z = build_z(b, &t).map_err(|e| e.to_string())?;
            let pa = pa_genus(&b.graph, &z.cycle).map_err(|e| e.to_string())?;
            ensure(pa.is_one(), || format!("p_a(Z) = {pa}"))?;
        }
        _ => {}
    }
    Ok(Some(k.value))
}

fn property_suite(depth: usize) -> Check {
    let cfg = EnumerationConfig::new(2..=4, depth).with_filters(Filters {
        negdef: true,
        minres: true,
        classes: None,
    });
    let found = enumerate_boundaries(&cfg).map_err(|e| e.to_string())?;
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for e in &found {
        if let Some(k) = check_enumerated(&e.boundary)? {
            *counts.entry(k.to_string()).or_default() += 1;
        }
    }
    let parts: Vec<String> = counts.iter().map(|(k, n)| format!("{k} {n}")).collect();
    Ok(format!("{} boundaries: {}", found.len(), parts.join(", ")))
}

fn ac7() -> Check {
    property_suite(8)
}

fn ac7_deep() -> Check {
    property_suite(10)
}

/// Laplace expansion along the first row.
fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(k, _)| k != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * cofactor_det(&minor)
        })
        .sum()
}

fn runner(seed: u8) -> TestRunner {
    let rng = TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]);
    TestRunner::new_with_rng(
        Config {
            cases: 1000,
            failure_persistence: None,
            ..Config::default()
        },
        rng,
    )
}

fn random_graph() -> impl Strategy<Value = WeightedDualGraph> {
    (0usize..=7)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-6i64..=2, n),
                prop::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2),
            )
        })
        .prop_map(|(weights, edges)| {
            let mut g = WeightedDualGraph::new();
            for (i, w) in weights.iter().enumerate() {
                g.add_vertex(format!("V{i}"), *w).unwrap();
            }
            let n = weights.len();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if edges[k] {
                        g.add_edge(format!("V{i}"), format!("V{j}")).unwrap();
                    }
                    k += 1;
                }
            }
            g
        })
}

fn random_tree() -> impl Strategy<Value = WeightedDualGraph> {
    (1usize..=9)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-5i64..=1, n),
                prop::collection::vec(any::<prop::sample::Index>(), n),
            )
        })
        .prop_map(|(weights, parents)| {
            let mut g = WeightedDualGraph::new();
            for (i, w) in weights.iter().enumerate() {
                g.add_vertex(format!("V{i}"), *w).unwrap();
                if i > 0 {
                    g.add_edge(format!("V{i}"), format!("V{}", parents[i].index(i)))
                        .unwrap();
                }
            }
            g
        })
}

fn ac8() -> Check {
    let mut r = runner(7);
    r.run(&random_graph(), |g| {
        let ids: Vec<VertexId> = g.ids().cloned().collect();
        let m = g.intersection_matrix(&ids).unwrap();
        let neg: Vec<Vec<i128>> = (0..ids.len())
            .map(|i| (0..ids.len()).map(|j| -i128::from(*m.entries.get(i, j))).collect())
            .collect();
        prop_assert_eq!(g.determinant(), Int::from(cofactor_det(&neg)));
        Ok(())
    })
    .map_err(|e| format!("determinant oracle: {e}"))?;

    let mut components = 0;
    for e in corpus::corpus() {
        let f = e.graph_file().unwrap();
        let d = match &f.marked {
            Some(c) => f.graph.without(&[c]),
            None => f.graph.clone(),
        };
        for comp in d.connected_components() {
            let Ok(r) = is_rational(&comp) else { continue };
            let bound = r
                .fundamental_cycle
                .iter()
                .map(|(_, v)| v.to_integer())
                .max()
                .expect("nonempty");
            let bound: u64 = bound.try_into().expect("small coefficients");
            let m = max_pa_bounded_with_limit(&comp, bound, u128::MAX).map_err(|e| e.to_string())?;
            let agrees = r.rational == (m.max <= Int::zero());
            ensure(agrees, || {
                format!("{}: rational = {}, max p_a = {}", e.name, r.rational, m.max)
            })?;
            components += 1;
        }
    }

    let mut r = runner(11);
    r.run(
        &(random_tree(), any::<prop::sample::Index>(), any::<bool>()),
        |(g, pick, at_edge)| {
            let new: VertexId = "X".into();
            let up = if at_edge && g.edge_count() > 0 {
                let edges = g.edges();
                let (a, b) = &edges[pick.index(edges.len())];
                blow_up_at_edge(&g, a, b, new.clone()).unwrap()
            } else {
                let ids: Vec<VertexId> = g.ids().cloned().collect();
                blow_up_on_curve(&g, &ids[pick.index(ids.len())], new.clone()).unwrap()
            };
            prop_assert_eq!(blow_down(&up, &new).unwrap(), g);
            Ok(())
        },
    )
    .map_err(|e| format!("blow-up round trip: {e}"))?;

    Ok(format!(
        "1000 determinants, {components} corpus components, 1000 round trips"
    ))
}

type Criterion = (&'static str, &'static str, u64, fn() -> Check);

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("AC1", "K-trivial comb family", 1, ac1),
        ("AC2", "K-trivial two-point family", 1, ac2),
        ("AC3", "K-ample boundary with connected D", 1, ac3),
        ("AC4", "K-ample boundary with split D", 1, ac4),
        ("AC5", "D' indefinite after contracting C", 1, ac5),
        ("AC6", "conic complement", 10, ac6),
        ("AC7", "property suite, m 2..4, depth 8", 60, ac7),
        ("AC7+", "property suite, m 2..4, depth 10", 60, ac7_deep),
        ("AC8", "oracle agreements", 30, ac8),
    ];
    let mut failed = Vec::new();
    for (id, what, limit, f) in criteria {
        let start = Instant::now();
        let result = f();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(limit);
        let (ok, detail) = match result {
            Ok(d) if in_time => (true, d),
            Ok(d) => (false, format!("{d}; over the time limit")),
            Err(e) => (false, e),
        };
        println!(
            "{id:<5} {} {what} [{:.2}s / {limit}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
        if !ok {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
