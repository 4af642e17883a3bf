//! Worked examples with their expected invariants, and a runner that checks
//! every expectation against the library.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::birational::{build_z, peel_step_traced, reduce_to_trivial};
use crate::boundary::{
    classify_k, comb_decompose, coprime_check, split_determinants, validate_boundary,
    BoundaryConfig, KValue,
};
use crate::construct::{apply_sequence, canonical_boundary, component_summaries, HirzebruchSeed};
use crate::cycle::{pa_genus, Cycle};
use crate::error::Result;
use crate::format::parse_graph;
use crate::graph::{VertexId, WeightedDualGraph};
use crate::singularity::{is_rational, max_pa_bounded};
use crate::{Int, Rational};

pub const K_AMPLE_CONNECTED: &str = include_str!("../corpus/k-ample-connected.graph");
pub const K_AMPLE_SPLIT: &str = include_str!("../corpus/k-ample-split.graph");
pub const CONIC_COMPLEMENT: &str = include_str!("../corpus/conic-complement.graph");
pub const CONIC_COMPLEMENT_D: &str = include_str!("../corpus/conic-complement-d.graph");
pub const INDEFINITE_INTERMEDIATE: &str = include_str!("../corpus/indefinite-intermediate.graph");

/// Parameters of the two K-trivial families.
pub const FAMILY_RANGE: std::ops::RangeInclusive<i64> = 3..=8;

fn q(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

fn qi(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Spine vertex of level `i`.
pub fn spine_id(i: usize) -> String {
    format!("D0^{i}")
}

/// `j`-th curve of the horizontal chain of level `i`.
pub fn chain_id(i: usize, j: usize) -> String {
    format!("D1_{j}^{i}")
}

/// `j`-th curve of the twig of level `i`.
pub fn twig_id(i: usize, j: usize) -> String {
    format!("D2_{j}^{i}")
}

/// The K-trivial comb over `F_m`: a chain of `2m+1` (-2)-curves from `C` to a
/// single branch vertex carrying a (-2) twig and the chain `(-2) - (-m)`.
pub fn k_trivial_comb(m: i64) -> BoundaryConfig {
    let s0 = (2 * m + 1) as usize;
    let mut g = WeightedDualGraph::new();
    g.add_vertex("C", -1).expect("fresh");
    let mut prev = VertexId::from("C");
    for j in 1..=s0 {
        g.add_vertex(chain_id(0, j), -2).expect("fresh");
        g.add_edge(prev.clone(), chain_id(0, j)).expect("fresh");
        prev = chain_id(0, j).into();
    }
    for (id, w) in [
        (spine_id(1), -2),
        (chain_id(1, 1), -2),
        (chain_id(1, 2), -m),
        (twig_id(1, 1), -2),
    ] {
        g.add_vertex(id, w).expect("fresh");
    }
    for (a, b) in [
        (prev.to_string(), spine_id(1)),
        (spine_id(1), chain_id(1, 1)),
        (chain_id(1, 1), chain_id(1, 2)),
        (spine_id(1), twig_id(1, 1)),
    ] {
        g.add_edge(a, b).expect("fresh");
    }
    BoundaryConfig::new(g, "C").expect("C present")
}

/// The K-trivial boundary with two singular points: a (-m)-curve next to `C`
/// on the branched side and a chain of `m-2` (-2)-curves on the other.
pub fn k_trivial_two_point(m: i64) -> BoundaryConfig {
    let mut g = WeightedDualGraph::new();
    g.add_vertex("C", -1).expect("fresh");
    let mut prev = VertexId::from("C");
    for j in 1..=5 {
        g.add_vertex(chain_id(0, j), if j == 1 { -m } else { -2 })
            .expect("fresh");
        g.add_edge(prev.clone(), chain_id(0, j)).expect("fresh");
        prev = chain_id(0, j).into();
    }
    for id in [spine_id(1), chain_id(1, 1), chain_id(1, 2), twig_id(1, 1)] {
        g.add_vertex(id, -2).expect("fresh");
    }
    for (a, b) in [
        (prev.to_string(), spine_id(1)),
        (spine_id(1), chain_id(1, 1)),
        (chain_id(1, 1), chain_id(1, 2)),
        (spine_id(1), twig_id(1, 1)),
    ] {
        g.add_edge(a, b).expect("fresh");
    }
    let mut prev = VertexId::from("C");
    for j in 1..=(m - 2) as usize {
        g.add_vertex(twig_id(0, j), -2).expect("fresh");
        g.add_edge(prev.clone(), twig_id(0, j)).expect("fresh");
        prev = twig_id(0, j).into();
    }
    BoundaryConfig::new(g, "C").expect("C present")
}

/// Blow-ups of `F_m` producing [`k_trivial_comb`].
pub fn k_trivial_comb_moves(m: i64) -> String {
    let mut s = String::from("F F-E1 E2");
    for k in 3..(2 * m + 4) {
        s.push_str(&format!(" E{k}"));
    }
    s
}

/// Blow-ups of `F_2` producing [`k_trivial_two_point`].
pub fn k_trivial_two_point_moves(m: i64) -> String {
    let mut s = String::from("F F-E1 E2 E3 E4 E5 E6 E7 E7-E8");
    for k in 9..(m + 6) {
        s.push_str(&format!(" E7-E{k}"));
    }
    s
}

pub const K_AMPLE_CONNECTED_MOVES: (i64, &str) =
    (3, "F F-E1 E2 E3 E4 E5 E6 E7 E8 E9 E10-E9 E11-E9 E12 E13 E14");
pub const K_AMPLE_SPLIT_MOVES: (i64, &str) = (2, "F E1-F E2 E3 E4 E5 E6 E7 E8-E7 E9-E7 E10-E9");
pub const INDEFINITE_INTERMEDIATE_MOVES: (i64, &str) = (2, "F E1-F E2 E3 E4 E5 E6 E7 E8-E7");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentExpectation {
    /// A vertex identifying the component.
    pub contains: String,
    pub chain: bool,
    pub rational: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expected {
    /// `d(D)`.
    Determinant(Int),
    /// `d(C + D)`.
    BoundaryDeterminant(Int),
    DSharp(Vec<(String, Rational)>),
    CPairing(Rational),
    KClass(KValue),
    /// Reduction ends at a boundary with the same canonical form as the
    /// named entry.
    ReducesTo(String),
    /// Coefficients of `Z` from [`build_z`], zeros included.
    ZCycle(Vec<(String, i64)>),
    ZGenus(i64),
    Components(Vec<ComponentExpectation>),
    /// `D` is connected and contracts to a rational point.
    Rational(bool),
    Coprime(bool),
    SplitIdentities,
    MaxPaAtMost { bound: u64, max: i64 },
    ReducedGenusAtMost(i64),
    /// After contracting `C`, the new `D` is not negative definite.
    IndefiniteAfterPeel,
    Comb { r: usize, s: Vec<usize>, t: Vec<usize> },
    BuiltBy { seed: i64, moves: String },
    ValidBoundary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    /// What the expectation records, in words.
    pub claim: String,
    pub expected: Expected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub description: String,
    /// Graph file text.
    pub text: String,
    pub expectations: Vec<Expectation>,
}

fn exp(claim: impl Into<String>, expected: Expected) -> Expectation {
    Expectation {
        claim: claim.into(),
        expected,
    }
}

impl CorpusEntry {
    pub fn graph_file(&self) -> Result<crate::format::GraphFile> {
        parse_graph(&self.text)
    }

    pub fn boundary(&self) -> Result<BoundaryConfig> {
        BoundaryConfig::parse(&self.text)
    }
}

fn comb_entry(m: i64) -> CorpusEntry {
    let b = k_trivial_comb(m);
    let s0 = (2 * m + 1) as usize;
    let mut alpha: Vec<(String, Rational)> = (1..=s0).map(|i| (chain_id(0, i), qi(i as i64))).collect();
    alpha.extend([
        (spine_id(1), qi(2 * (m + 1))),
        (chain_id(1, 1), qi(m + 2)),
        (chain_id(1, 2), qi(2)),
        (twig_id(1, 1), qi(m + 1)),
    ]);
    CorpusEntry {
        name: format!("k-trivial-comb-m{m}"),
        description: format!("K-trivial comb over F_{m}"),
        text: b.to_text(),
        expectations: vec![
            exp("d(D) = 2(m-2)", Expected::Determinant(Int::from(2 * (m - 2)))),
            exp("D# coefficients of the comb", Expected::DSharp(alpha)),
            exp("(D#.C) = 1", Expected::CPairing(qi(1))),
            exp("K_X numerically trivial", Expected::KClass(KValue::Trivial)),
            exp(
                "the single singular point is irrational",
                Expected::Components(vec![ComponentExpectation {
                    contains: spine_id(1),
                    chain: false,
                    rational: false,
                }]),
            ),
            exp(
                "one branch vertex; chain of 2m+1 from C; (-2)-(-m) chain and (-2) twig",
                Expected::Comb {
                    r: 0,
                    s: vec![s0, 2],
                    t: vec![0, 1],
                },
            ),
            exp(
                "built from F_m by 2(m+2) blow-ups",
                Expected::BuiltBy {
                    seed: m,
                    moves: k_trivial_comb_moves(m),
                },
            ),
            exp("valid boundary of the plane", Expected::ValidBoundary),
        ],
    }
}

fn two_point_entry(m: i64) -> CorpusEntry {
    let b = k_trivial_two_point(m);
    let mut alpha: Vec<(String, Rational)> = (1..=5).map(|i| (chain_id(0, i), qi(i as i64))).collect();
    alpha.extend((1..=(m - 2) as usize).map(|j| (twig_id(0, j), qi(0))));
    alpha.extend([
        (spine_id(1), qi(6)),
        (chain_id(1, 1), qi(4)),
        (chain_id(1, 2), qi(2)),
        (twig_id(1, 1), qi(3)),
    ]);
    CorpusEntry {
        name: format!("k-trivial-two-point-m{m}"),
        description: format!("K-trivial boundary over F_2 with a (-{m})-curve next to C"),
        text: b.to_text(),
        expectations: vec![
            exp(
                "d(D) = (m-2)(m-1)",
                Expected::Determinant(Int::from((m - 2) * (m - 1))),
            ),
            exp("D# coefficients, zero on the twig under C", Expected::DSharp(alpha)),
            exp("K_X numerically trivial", Expected::KClass(KValue::Trivial)),
            exp(
                "one cyclic quotient point and one irrational point",
                Expected::Components(vec![
                    ComponentExpectation {
                        contains: twig_id(0, 1),
                        chain: true,
                        rational: true,
                    },
                    ComponentExpectation {
                        contains: spine_id(1),
                        chain: false,
                        rational: false,
                    },
                ]),
            ),
            exp("determinants of the two components are coprime", Expected::Coprime(true)),
            exp(
                "built from F_2 by blow-ups",
                Expected::BuiltBy {
                    seed: 2,
                    moves: k_trivial_two_point_moves(m),
                },
            ),
            exp("valid boundary of the plane", Expected::ValidBoundary),
        ],
    }
}

fn ample_connected_entry() -> CorpusEntry {
    let mut alpha = vec![
        ("D1".to_string(), q(20, 7)),
        ("D2".into(), q(53, 7)),
        ("D3".into(), q(43, 7)),
    ];
    alpha.extend((4..=11).map(|i| (format!("D{i}"), q(126 - 10 * i, 7))));
    alpha.extend([
        ("D12".into(), q(8, 7)),
        ("D16".into(), q(8, 7)),
        ("D13".into(), q(16, 7)),
        ("D15".into(), q(16, 7)),
        ("D14".into(), q(24, 7)),
    ]);
    let mut z = vec![("D1".to_string(), 2), ("D2".into(), 5), ("D3".into(), 4)];
    z.extend((4..=11).map(|j| (format!("D{j}"), 12 - j)));
    z.extend((12..=16).map(|j| (format!("D{j}"), 1)));
    let (seed, moves) = K_AMPLE_CONNECTED_MOVES;
    CorpusEntry {
        name: "k-ample-connected".into(),
        description: "K-ample boundary whose D is connected".into(),
        text: K_AMPLE_CONNECTED.into(),
        expectations: vec![
            exp("d(D) = 21", Expected::Determinant(Int::from(21))),
            exp("D# has denominator 7", Expected::DSharp(alpha)),
            exp("(D#.C) = 8/7", Expected::CPairing(q(8, 7))),
            exp("K_X numerically ample", Expected::KClass(KValue::Ample)),
            exp(
                "reduces to the K-trivial comb with m = 3",
                Expected::ReducesTo("k-trivial-comb-m3".into()),
            ),
            exp("Z pulled back from the K-trivial boundary", Expected::ZCycle(z)),
            exp("p_a(Z) = 1", Expected::ZGenus(1)),
            exp(
                "built by blow-ups of F_3",
                Expected::BuiltBy {
                    seed,
                    moves: moves.into(),
                },
            ),
            exp("valid boundary of the plane", Expected::ValidBoundary),
        ],
    }
}

fn ample_split_entry() -> CorpusEntry {
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
    let mut z = vec![("D1".to_string(), 2), ("D2".into(), 4), ("D3".into(), 3)];
    z.extend((4..=9).map(|j| (format!("D{j}"), 10 - j)));
    z.extend([("D10".into(), 0), ("D11".into(), 0), ("D12".into(), 1)]);
    let (seed, moves) = K_AMPLE_SPLIT_MOVES;
    CorpusEntry {
        name: "k-ample-split".into(),
        description: "K-ample boundary with two singular points".into(),
        text: K_AMPLE_SPLIT.into(),
        expectations: vec![
            exp("d(D) = 3 * 5 = 15", Expected::Determinant(Int::from(15))),
            exp("D# in thirds and fifths", Expected::DSharp(alpha)),
            exp("(D#.C) = 2/3 + 2/5 = 16/15", Expected::CPairing(q(16, 15))),
            exp("K_X numerically ample", Expected::KClass(KValue::Ample)),
            exp(
                "reduces to the two-point K-trivial boundary with m = 3",
                Expected::ReducesTo("k-trivial-two-point-m3".into()),
            ),
            exp("Z vanishes on the chain side", Expected::ZCycle(z)),
            exp("p_a(Z) = 1", Expected::ZGenus(1)),
            exp("d(A) = 3 and d(B) = 5 are coprime", Expected::Coprime(true)),
            exp(
                "determinant identities around the contraction of C",
                Expected::SplitIdentities,
            ),
            exp(
                "built by blow-ups of F_2",
                Expected::BuiltBy {
                    seed,
                    moves: moves.into(),
                },
            ),
            exp("valid boundary of the plane", Expected::ValidBoundary),
        ],
    }
}

fn indefinite_entry() -> CorpusEntry {
    let (seed, moves) = INDEFINITE_INTERMEDIATE_MOVES;
    CorpusEntry {
        name: "indefinite-intermediate".into(),
        description: "split boundary whose D stops being definite after one contraction".into(),
        text: INDEFINITE_INTERMEDIATE.into(),
        expectations: vec![
            exp("d(D) = 2", Expected::Determinant(Int::from(2))),
            exp(
                "the D left after contracting C is not negative definite",
                Expected::IndefiniteAfterPeel,
            ),
            exp(
                "built by blow-ups of F_2",
                Expected::BuiltBy {
                    seed,
                    moves: moves.into(),
                },
            ),
            exp("valid boundary of the plane", Expected::ValidBoundary),
        ],
    }
}

fn conic_entry() -> CorpusEntry {
    let mut alpha = vec![("D1".to_string(), q(3, 2))];
    alpha.extend((2..=7).map(|i| (format!("D{i}"), q(i - 1, 2))));
    alpha.extend([
        ("D8".into(), qi(2)),
        ("D9".into(), qi(1)),
        ("D10".into(), qi(2)),
        ("D11".into(), qi(1)),
    ]);
    CorpusEntry {
        name: "conic-complement".into(),
        description: "boundary of a compactification of the complement of a smooth conic".into(),
        text: CONIC_COMPLEMENT.into(),
        expectations: vec![
            exp("d(D) = 16", Expected::Determinant(Int::from(16))),
            exp(
                "d(C+D) = -4: not a boundary of the affine plane",
                Expected::BoundaryDeterminant(Int::from(-4)),
            ),
            exp("D# coefficients", Expected::DSharp(alpha)),
            exp("(D#.C) = 1", Expected::CPairing(qi(1))),
            exp("K_X numerically trivial", Expected::KClass(KValue::Trivial)),
            exp("the singular point is rational", Expected::Rational(true)),
        ],
    }
}

fn conic_d_entry() -> CorpusEntry {
    CorpusEntry {
        name: "conic-complement-d".into(),
        description: "D of the conic complement on its own".into(),
        text: CONIC_COMPLEMENT_D.into(),
        expectations: vec![
            exp("d(D) = 16", Expected::Determinant(Int::from(16))),
            exp(
                "p_a(Z) <= 0 for every Z with coefficients in 1..=6",
                Expected::MaxPaAtMost { bound: 6, max: 0 },
            ),
            exp("p_a of the reduced divisor is <= 0", Expected::ReducedGenusAtMost(0)),
            exp("rational", Expected::Rational(true)),
        ],
    }
}

/// Every corpus entry, ordered by name.
pub fn corpus() -> Vec<CorpusEntry> {
    let mut out = vec![
        ample_connected_entry(),
        ample_split_entry(),
        indefinite_entry(),
        conic_entry(),
        conic_d_entry(),
    ];
    out.extend(FAMILY_RANGE.map(comb_entry));
    out.extend(FAMILY_RANGE.map(two_point_entry));
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub fn entry(name: &str) -> Option<CorpusEntry> {
    corpus().into_iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub claim: String,
    pub kind: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub checks: Vec<CheckOutcome>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn kind(e: &Expected) -> &'static str {
    match e {
        Expected::Determinant(_) => "determinant",
        Expected::BoundaryDeterminant(_) => "boundary_determinant",
        Expected::DSharp(_) => "d_sharp",
        Expected::CPairing(_) => "c_pairing",
        Expected::KClass(_) => "k_class",
        Expected::ReducesTo(_) => "reduction",
        Expected::ZCycle(_) => "z_cycle",
        Expected::ZGenus(_) => "z_genus",
        Expected::Components(_) => "components",
        Expected::Rational(_) => "rational",
        Expected::Coprime(_) => "coprime",
        Expected::SplitIdentities => "split_identities",
        Expected::MaxPaAtMost { .. } => "max_pa",
        Expected::ReducedGenusAtMost(_) => "reduced_genus",
        Expected::IndefiniteAfterPeel => "indefinite_after_peel",
        Expected::Comb { .. } => "comb",
        Expected::BuiltBy { .. } => "construction",
        Expected::ValidBoundary => "validation",
    }
}

fn fmt_q(v: &Rational) -> String {
    crate::format::format_rational(v)
}

fn evaluate(entry: &CorpusEntry, e: &Expected) -> Result<(bool, String)> {
    let file = entry.graph_file()?;
    let graph = &file.graph;
    let boundary = || entry.boundary();
    let d = || -> Result<WeightedDualGraph> {
        Ok(match &file.marked {
            Some(c) => graph.without(&[c]),
            None => graph.clone(),
        })
    };
    Ok(match e {
        Expected::Determinant(want) => {
            let got = d()?.determinant();
            (got == *want, format!("d(D) = {got}"))
        }
        Expected::BoundaryDeterminant(want) => {
            let got = graph.determinant();
            (got == *want, format!("d(C+D) = {got}"))
        }
        Expected::DSharp(want) => {
            let ds = boundary()?.d_sharp()?;
            let all_present = want.len() == d()?.len();
            let bad: Vec<String> = want
                .iter()
                .filter(|(id, v)| ds.coeff(&id.as_str().into()) != *v)
                .map(|(id, v)| {
                    format!("{id}: got {} want {}", fmt_q(&ds.coeff(&id.as_str().into())), fmt_q(v))
                })
                .collect();
            (
                bad.is_empty() && all_present,
                if bad.is_empty() {
                    format!("{} coefficients match", want.len())
                } else {
                    bad.join("; ")
                },
            )
        }
        Expected::CPairing(want) => {
            let got = classify_k(&boundary()?)?.c_pairing;
            (got == *want, format!("(D#.C) = {}", fmt_q(&got)))
        }
        Expected::KClass(want) => {
            let got = classify_k(&boundary()?)?.value;
            (got == *want, format!("class {got}"))
        }
        Expected::ReducesTo(target) => {
            let trace = reduce_to_trivial(&boundary()?)?;
            let target = entry_boundary(target)?;
            let got = canonical_boundary(&trace.final_boundary)?;
            (
                got == canonical_boundary(&target)?,
                format!("{} contractions", trace.steps.len()),
            )
        }
        Expected::ZCycle(want) => {
            let b = boundary()?;
            let z = build_z(&b, &reduce_to_trivial(&b)?)?;
            let bad: Vec<String> = want
                .iter()
                .filter(|(id, v)| z.coefficient(&id.as_str().into()) != qi(*v))
                .map(|(id, v)| format!("{id}: got {} want {v}", fmt_q(&z.coefficient(&id.as_str().into()))))
                .collect();
            (
                bad.is_empty(),
                if bad.is_empty() {
                    format!("Z = {}", z.cycle.to_literal())
                } else {
                    bad.join("; ")
                },
            )
        }
        Expected::ZGenus(want) => {
            let b = boundary()?;
            let z = build_z(&b, &reduce_to_trivial(&b)?)?;
            (z.pa == Int::from(*want), format!("p_a(Z) = {}", z.pa))
        }
        Expected::Components(want) => {
            let comps = component_summaries(&boundary()?);
            let mut ok = comps.len() == want.len();
            let mut detail = vec![format!("{} components", comps.len())];
            for w in want {
                let id = VertexId::from(w.contains.as_str());
                match comps.iter().find(|c| c.vertices.contains(&id)) {
                    Some(c) => {
                        let good = c.rational == Some(w.rational) && c.branched != w.chain;
                        ok &= good;
                        detail.push(format!(
                            "{}: {}, {}",
                            w.contains,
                            if c.branched { "branched" } else { "chain" },
                            match c.rational {
                                Some(true) => "rational",
                                Some(false) => "irrational",
                                None => "undecided",
                            }
                        ));
                    }
                    None => {
                        ok = false;
                        detail.push(format!("no component contains {}", w.contains));
                    }
                }
            }
            (ok, detail.join("; "))
        }
        Expected::Rational(want) => {
            let r = is_rational(&d()?)?;
            (
                r.rational == *want,
                format!("p_a(Z_fund) = {}", r.pa_fundamental),
            )
        }
        Expected::Coprime(want) => {
            let got = coprime_check(&boundary()?)?;
            (got == *want, format!("coprime: {got}"))
        }
        Expected::SplitIdentities => {
            let s = split_determinants(&boundary()?)?;
            (
                s.all_hold(),
                format!(
                    "case {}: d(A) = {}, d(B) = {}, d(A_) = {}, d(B_) = {}",
                    s.case.number(),
                    s.d_a,
                    s.d_b,
                    s.d_a_under,
                    s.d_b_under
                ),
            )
        }
        Expected::MaxPaAtMost { bound, max } => {
            let r = max_pa_bounded(&d()?, *bound)?;
            (
                r.max <= Int::from(*max),
                format!("max p_a = {} at {}", r.max, r.witness.to_literal()),
            )
        }
        Expected::ReducedGenusAtMost(max) => {
            let g = d()?;
            let pa = pa_genus(&g, &Cycle::reduced(&g))?;
            (pa <= qi(*max), format!("p_a = {}", fmt_q(&pa)))
        }
        Expected::IndefiniteAfterPeel => {
            let step = peel_step_traced(&boundary()?)?;
            let definite = step.boundary.d().is_negative_definite();
            (
                !definite,
                format!("new C = {}, definite: {definite}", step.boundary.c),
            )
        }
        Expected::Comb { r, s, t } => match comb_decompose(&boundary()?) {
            Ok(c) => {
                let gs: Vec<usize> = (0..c.chains.len()).map(|i| c.s(i)).collect();
                let gt: Vec<usize> = (0..c.twigs.len()).map(|i| c.t(i)).collect();
                (
                    c.r == *r && gs == *s && gt == *t,
                    format!("r = {}, s = {gs:?}, t = {gt:?}", c.r),
                )
            }
            Err(e) => (false, format!("no match: {e}")),
        },
        Expected::BuiltBy { seed, moves } => {
            let built = apply_sequence(&HirzebruchSeed::new(*seed)?, &moves.parse()?)?;
            (
                canonical_boundary(&built)? == canonical_boundary(&boundary()?)?,
                format!("{} moves", built.graph.len() - 2),
            )
        }
        Expected::ValidBoundary => {
            let r = validate_boundary(&boundary()?);
            let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect();
            (
                failed.is_empty(),
                if failed.is_empty() {
                    "all checks pass".into()
                } else {
                    format!("failed: {}", failed.join(", "))
                },
            )
        }
    })
}

fn entry_boundary(name: &str) -> Result<BoundaryConfig> {
    entry(name)
        .ok_or_else(|| crate::Error::Precondition(format!("no corpus entry `{name}`")))?
        .boundary()
}

pub fn verify_entry(entry: &CorpusEntry) -> EntryReport {
    let checks = entry
        .expectations
        .iter()
        .map(|x| {
            let (passed, detail) = match evaluate(entry, &x.expected) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            CheckOutcome {
                claim: x.claim.clone(),
                kind: kind(&x.expected),
                passed,
                detail,
            }
        })
        .collect();
    EntryReport {
        name: entry.name.clone(),
        checks,
    }
}

/// Checks every expectation of every entry; reports are ordered by name.
pub fn verify_corpus() -> Vec<EntryReport> {
    corpus().par_iter().map(verify_entry).collect()
}

/// Coefficient map of a D# result keyed by id string, for reporting.
pub fn d_sharp_table(b: &BoundaryConfig) -> Result<BTreeMap<String, Rational>> {
    let ds = b.d_sharp()?;
    Ok(b
        .d()
        .ids()
        .map(|id| (id.to_string(), ds.coeff(id)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_corpus_expectation_holds() {
        let mut failures = Vec::new();
        for r in verify_corpus() {
            for c in r.checks.iter().filter(|c| !c.passed) {
                failures.push(format!("{} / {}: {}", r.name, c.claim, c.detail));
            }
        }
        assert!(failures.is_empty(), "{}", failures.join("\n"));
    }

    #[test]
    fn reports_are_sorted_by_name() {
        let names: Vec<String> = verify_corpus().into_iter().map(|r| r.name).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
        assert_eq!(names.len(), 17);
    }

    #[test]
    fn generated_files_parse_back() {
        for m in FAMILY_RANGE {
            let b = k_trivial_comb(m);
            assert_eq!(BoundaryConfig::parse(&b.to_text()).unwrap(), b);
        }
    }
}
