//! Compactification boundaries `C + D`: validation, the comb normal form,
//! the sign of `K_X`, and the determinant identities around a contraction.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cycle::{compute_d_sharp, DSharpResult};
use crate::error::{Error, Result};
use crate::format::{emit_graph, GraphFile};
use crate::graph::{VertexId, WeightedDualGraph};
use crate::{Int, Rational};

/// A boundary graph together with the marked curve `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryConfig {
    pub graph: WeightedDualGraph,
    pub c: VertexId,
}

impl BoundaryConfig {
    pub fn new(graph: WeightedDualGraph, c: impl Into<VertexId>) -> Result<Self> {
        let c = c.into();
        if !graph.contains(&c) {
            return Err(Error::UnknownVertex(c));
        }
        Ok(BoundaryConfig { graph, c })
    }

    pub fn from_file(file: GraphFile) -> Result<Self> {
        let c = file.marked.ok_or(Error::NoMarkedCurve)?;
        Self::new(file.graph, c)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_file(crate::format::parse_graph(text)?)
    }

    pub fn to_text(&self) -> String {
        emit_graph(&self.graph, Some(&self.c))
    }

    /// `D`: everything except `C`.
    pub fn d(&self) -> WeightedDualGraph {
        self.graph.without(&[&self.c])
    }

    pub fn c_weight(&self) -> i64 {
        self.graph.weight(&self.c).expect("C is a vertex")
    }

    /// Components of `D` met by `C`, in canonical order.
    pub fn c_neighbors(&self) -> Vec<VertexId> {
        self.graph.neighbors(&self.c).cloned().collect()
    }

    /// The first component of `D` with a vertex of degree at least three.
    pub fn branched_component(&self) -> Option<WeightedDualGraph> {
        self.d()
            .connected_components()
            .into_iter()
            .find(WeightedDualGraph::has_branching)
    }

    /// `D#` of `D`, with `(D# . C)` filled in.
    pub fn d_sharp(&self) -> Result<DSharpResult> {
        compute_d_sharp(&self.d(), Some(&self.c_neighbors()))
    }

    /// The Hirzebruch boundary `M + F`, where `C` need not be a (-1)-curve.
    pub fn is_hirzebruch_pair(&self) -> bool {
        self.graph.len() == 2 && self.graph.edge_count() == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    /// `d(C + D)`.
    pub determinant: Int,
    pub d_components: usize,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Tree and determinant checks, the two that hold for every boundary of
    /// the affine plane regardless of minimality.
    pub fn structural_ok(&self) -> bool {
        ["tree", "determinant"]
            .iter()
            .all(|n| self.check(n).is_some_and(|c| c.passed))
    }
}

pub fn validate_boundary(b: &BoundaryConfig) -> ValidationReport {
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    let tree = b.graph.is_tree();
    push(
        "tree",
        tree,
        format!(
            "{} vertices, {} edges, {} components",
            b.graph.len(),
            b.graph.edge_count(),
            b.graph.component_count()
        ),
    );
    let det = b.graph.determinant();
    push("determinant", det == -Int::one(), format!("d(C+D) = {det}"));
    let d = b.d();
    let comps = d.component_count();
    push("components", comps <= 2, format!("D has {comps} components"));
    let w = b.c_weight();
    push(
        "c_weight",
        w == -1 || b.is_hirzebruch_pair(),
        format!("(C)^2 = {w}"),
    );
    let heavy: Vec<String> = d
        .vertices()
        .filter(|v| v.weight > -2)
        .map(|v| v.id.to_string())
        .collect();
    push(
        "minimal",
        heavy.is_empty(),
        if heavy.is_empty() {
            "all weights of D are at most -2".into()
        } else {
            format!("weight > -2 on {}", heavy.join(", "))
        },
    );
    ValidationReport {
        checks,
        determinant: det,
        d_components: comps,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum KValue {
    AntiAmple,
    Trivial,
    Ample,
}

impl KValue {
    pub fn as_str(self) -> &'static str {
        match self {
            KValue::AntiAmple => "anti_ample",
            KValue::Trivial => "trivial",
            KValue::Ample => "ample",
        }
    }

    pub fn from_c_pairing(c: &Rational) -> Self {
        let one = Rational::one();
        if *c < one {
            KValue::AntiAmple
        } else if *c == one {
            KValue::Trivial
        } else {
            KValue::Ample
        }
    }
}

impl fmt::Display for KValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for KValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "anti_ample" | "anti-ample" => Ok(KValue::AntiAmple),
            "trivial" => Ok(KValue::Trivial),
            "ample" => Ok(KValue::Ample),
            _ => Err(Error::Precondition(format!("unknown K class `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KClass {
    pub value: KValue,
    /// `(D# . C)`.
    pub c_pairing: Rational,
}

/// Sign of `K_X` on the contracted surface, read off from `(D# . C)`.
pub fn classify_k(b: &BoundaryConfig) -> Result<KClass> {
    if b.c_weight() != -1 {
        return Err(Error::Precondition(format!(
            "C has weight {}, expected -1",
            b.c_weight()
        )));
    }
    let ds = b.d_sharp()?;
    let c_pairing = ds.c_pairing.expect("neighbours supplied");
    Ok(KClass {
        value: KValue::from_c_pairing(&c_pairing),
        c_pairing,
    })
}

/// The three ways a contraction of `C` can interact with `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PeelCase {
    /// `D` connected.
    One,
    /// `D` disconnected, image connected.
    Two,
    /// `D` and its image both disconnected.
    Three,
}

impl PeelCase {
    pub fn number(self) -> u8 {
        match self {
            PeelCase::One => 1,
            PeelCase::Two => 2,
            PeelCase::Three => 3,
        }
    }
}

/// The curves of `D` met by `C`, named after their role.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseShape {
    pub case: PeelCase,
    /// Case 1: the (-2)-curve meeting C. Case 2: the (-3)-curve.
    /// Case 3: the (-2)-curve.
    pub d1: VertexId,
    /// Case 2: the isolated (-2)-curve. Case 3: the (-m)-curve.
    pub d2: Option<VertexId>,
    /// `-(D_2)^2` in Case 3.
    pub m: Option<i64>,
}

fn shape_err(msg: impl Into<String>) -> Error {
    Error::ShapeMismatch(msg.into())
}

/// Recognises which contraction case `b` falls into.
pub fn detect_case(b: &BoundaryConfig) -> Result<CaseShape> {
    if b.c_weight() != -1 {
        return Err(shape_err(format!("C has weight {}", b.c_weight())));
    }
    let d = b.d();
    let ns = b.c_neighbors();
    let comps = d.component_count();
    match (comps, ns.as_slice()) {
        (1, [d1]) => {
            if d.weight(d1)? != -2 {
                return Err(shape_err(format!("{d1} meets C but is not a (-2)-curve")));
            }
            Ok(CaseShape {
                case: PeelCase::One,
                d1: d1.clone(),
                d2: None,
                m: None,
            })
        }
        (2, [x, y]) => {
            let (wx, wy) = (d.weight(x)?, d.weight(y)?);
            let (p, q, wq) = match (wx == -2, wy == -2) {
                (true, false) => (x, y, wy),
                (false, true) => (y, x, wx),
                (true, true) => return Err(shape_err("both curves meeting C are (-2)-curves")),
                (false, false) => return Err(shape_err("no (-2)-curve meets C")),
            };
            if d.degree(p) == 0 {
                if wq != -3 {
                    return Err(shape_err(format!(
                        "{q} opposite the isolated (-2)-curve has weight {wq}, expected -3"
                    )));
                }
                Ok(CaseShape {
                    case: PeelCase::Two,
                    d1: q.clone(),
                    d2: Some(p.clone()),
                    m: None,
                })
            } else if wq <= -3 {
                Ok(CaseShape {
                    case: PeelCase::Three,
                    d1: p.clone(),
                    d2: Some(q.clone()),
                    m: Some(-wq),
                })
            } else {
                Err(shape_err(format!("{q} has weight {wq} > -3")))
            }
        }
        _ => Err(shape_err(format!(
            "D has {comps} components met {} times by C",
            ns.len()
        ))),
    }
}

/// An identity or inequality between subgraph determinants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

/// Determinants of the pieces `A`, `B` left after the contraction, and of
/// `A` and `B` with their vertex next to the new `C` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDeterminants {
    pub case: PeelCase,
    pub a: BTreeSet<VertexId>,
    pub b: BTreeSet<VertexId>,
    pub d_a: Int,
    pub d_b: Int,
    pub d_a_under: Int,
    /// `d(B)` with its attaching vertex removed; 0 when `B` is empty.
    pub d_b_under: Int,
    pub m: Option<i64>,
}

impl SplitDeterminants {
    pub fn identities(&self) -> Vec<IdentityCheck> {
        let (a, b, au, bu) = (&self.d_a, &self.d_b, &self.d_a_under, &self.d_b_under);
        let zero = Int::zero();
        let minus_one = -Int::one();
        let mut out = Vec::new();
        match self.case {
            PeelCase::One | PeelCase::Two => {
                let det: Int = a * b - a * bu - au * b;
                out.push(IdentityCheck {
                    name: "boundary_determinant",
                    holds: det == minus_one,
                    lhs: "d(A)d(B) - d(A)d(B_) - d(A_)d(B)".into(),
                    rhs: det.to_string(),
                });
                let k = if self.case == PeelCase::One { 1 } else { 2 };
                let pos = Int::from(k) * a * b - Int::one();
                out.push(IdentityCheck {
                    name: "definite_before",
                    holds: pos > zero,
                    lhs: format!("{k}d(A)d(B) - 1"),
                    rhs: pos.to_string(),
                });
            }
            PeelCase::Three => {
                let m = Int::from(self.m.expect("case three carries m"));
                let det: Int = (&m - 2) * a * b - a * bu - (&m - 1) * au * b + au * bu;
                out.push(IdentityCheck {
                    name: "boundary_determinant",
                    holds: det == minus_one,
                    lhs: "(m-2)d(A)d(B) - d(A)d(B~) - (m-1)d(A_)d(B) + d(A_)d(B~)".into(),
                    rhs: det.to_string(),
                });
                let left = Int::from(2) * a - au;
                let right = &m * b - bu;
                out.push(IdentityCheck {
                    name: "definite_before",
                    holds: left > zero && right > zero,
                    lhs: "2d(A) - d(A_), m d(B) - d(B~)".into(),
                    rhs: format!("{left}, {right}"),
                });
            }
        }
        out
    }

    pub fn all_hold(&self) -> bool {
        self.identities().iter().all(|c| c.holds)
    }
}

/// Vertex sets of `A` and `B`, then `d(A)`, `d(B)`, `d(A_)`, `d(B_)`.
type Pieces = (BTreeSet<VertexId>, BTreeSet<VertexId>, Int, Int, Int, Int);

/// Splits `rest` (which no longer contains `hub`) into the components met by
/// `hub`: `A` is the branched one when there is a choice.
fn pieces_around(
    original: &WeightedDualGraph,
    rest: &WeightedDualGraph,
    hub: &VertexId,
) -> Result<Pieces> {
    let mut comps: Vec<(WeightedDualGraph, VertexId)> = Vec::new();
    for n in original.neighbors(hub).filter(|n| rest.contains(n)) {
        let comp = rest
            .connected_components()
            .into_iter()
            .find(|c| c.contains(n))
            .expect("n is in rest");
        if comps.iter().any(|(c, _)| c.contains(n)) {
            return Err(shape_err(format!("{hub} meets one component twice")));
        }
        comps.push((comp, n.clone()));
    }
    if comps.len() > 2 {
        return Err(shape_err(format!("{hub} meets {} components", comps.len())));
    }
    if comps.is_empty() {
        return Err(shape_err(format!("nothing remains next to {hub}")));
    }
    if comps.len() == 2 && !comps[0].0.has_branching() && comps[1].0.has_branching() {
        comps.swap(0, 1);
    }
    let (a, a_att) = comps.remove(0);
    let d_a = a.determinant();
    let d_a_under = a.without(&[&a_att]).determinant();
    let (b_set, d_b, d_b_under) = match comps.pop() {
        Some((b, b_att)) => (
            b.vertex_set(),
            b.determinant(),
            b.without(&[&b_att]).determinant(),
        ),
        None => (BTreeSet::new(), Int::one(), Int::zero()),
    };
    Ok((a.vertex_set(), b_set, d_a, d_b, d_a_under, d_b_under))
}

pub fn split_determinants(b: &BoundaryConfig) -> Result<SplitDeterminants> {
    let shape = detect_case(b)?;
    let d = b.d();
    match shape.case {
        PeelCase::One | PeelCase::Two => {
            let mut removed = vec![&shape.d1];
            if let Some(p) = &shape.d2 {
                removed.push(p);
            }
            let rest = d.without(&removed);
            let (a, bs, d_a, d_b, d_a_under, d_b_under) = pieces_around(&d, &rest, &shape.d1)?;
            Ok(SplitDeterminants {
                case: shape.case,
                a,
                b: bs,
                d_a,
                d_b,
                d_a_under,
                d_b_under,
                m: None,
            })
        }
        PeelCase::Three => {
            let q = shape.d2.as_ref().expect("case three has d2");
            let rest = d.without(&[&shape.d1, q]);
            let (a, extra, d_a, _, d_a_under, _) = pieces_around(&d, &rest, &shape.d1)?;
            if !extra.is_empty() {
                return Err(shape_err(format!("{} meets two components", shape.d1)));
            }
            let (b_set, d_b, d_b_under) = if d.degree(q) == 0 {
                (BTreeSet::new(), Int::one(), Int::zero())
            } else {
                let (bs, none, d_b, _, d_b_under, _) = pieces_around(&d, &rest, q)?;
                if !none.is_empty() {
                    return Err(shape_err(format!("{q} meets two components")));
                }
                (bs, d_b, d_b_under)
            };
            Ok(SplitDeterminants {
                case: PeelCase::Three,
                a,
                b: b_set,
                d_a,
                d_b,
                d_a_under,
                d_b_under,
                m: shape.m,
            })
        }
    }
}

/// For a `D` with two components each met once by `C`: are their
/// determinants coprime?
pub fn coprime_check(b: &BoundaryConfig) -> Result<bool> {
    let comps = b.d().connected_components();
    let ns = b.c_neighbors();
    if comps.len() != 2 {
        return Err(shape_err(format!("D has {} components, expected 2", comps.len())));
    }
    for c in &comps {
        let hits = ns.iter().filter(|n| c.contains(n)).count();
        if hits != 1 {
            return Err(shape_err(format!("C meets a component of D {hits} times")));
        }
    }
    let g = comps[0].determinant().abs().gcd(&comps[1].determinant().abs());
    Ok(g.is_one())
}

/// The comb normal form of a boundary, read outward from `C`.
///
/// `spine[i - 1]` is the branch vertex of level `i`; `chains[i]` runs from
/// the level `i` vertex (or `C`) away from `C`; `twigs[i]` hangs off the level
/// `i` vertex (or `C`). A boundary without branch vertices is stored with an
/// empty spine and one chain and one twig.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombDecomposition {
    pub c: VertexId,
    pub r: usize,
    pub spine: Vec<VertexId>,
    pub chains: Vec<Vec<VertexId>>,
    pub twigs: Vec<Vec<VertexId>>,
}

/// Why a boundary is not a comb.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombMismatch {
    pub constraint: String,
}

impl fmt::Display for CombMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.constraint)
    }
}

impl CombDecomposition {
    pub fn s(&self, i: usize) -> usize {
        self.chains.get(i).map_or(0, Vec::len)
    }

    pub fn t(&self, i: usize) -> usize {
        self.twigs.get(i).map_or(0, Vec::len)
    }

    pub fn is_degenerate(&self) -> bool {
        self.spine.is_empty()
    }

    /// Rebuilds the graph, taking weights from `source`.
    pub fn reassemble(&self, source: &WeightedDualGraph) -> Result<WeightedDualGraph> {
        let mut g = WeightedDualGraph::new();
        let all = std::iter::once(&self.c)
            .chain(&self.spine)
            .chain(self.chains.iter().flatten())
            .chain(self.twigs.iter().flatten());
        for id in all {
            g.add_curve(source.vertex(id).ok_or_else(|| Error::UnknownVertex(id.clone()))?.clone())?;
        }
        let anchor = |i: usize| if i == 0 { &self.c } else { &self.spine[i - 1] };
        for (i, chain) in self.chains.iter().enumerate() {
            let mut prev = anchor(i);
            for v in chain {
                g.add_edge(prev.clone(), v.clone())?;
                prev = v;
            }
            if let Some(next) = self.spine.get(i) {
                g.add_edge(prev.clone(), next.clone())?;
            }
        }
        for (i, twig) in self.twigs.iter().enumerate() {
            let mut prev = anchor(i);
            for v in twig {
                g.add_edge(prev.clone(), v.clone())?;
                prev = v;
            }
        }
        Ok(g)
    }
}

/// Follows a path starting at `start` coming from `from`; `None` if the arm
/// branches.
fn pure_arm(g: &WeightedDualGraph, from: &VertexId, start: &VertexId) -> Option<Vec<VertexId>> {
    let mut out = vec![start.clone()];
    let mut prev = from.clone();
    let mut cur = start.clone();
    loop {
        let next: Vec<&VertexId> = g.neighbors(&cur).filter(|n| **n != prev).collect();
        match next.as_slice() {
            [] => return Some(out),
            [n] => {
                let n = (*n).clone();
                out.push(n.clone());
                prev = std::mem::replace(&mut cur, n);
            }
            _ => return None,
        }
    }
}

/// Orders two pure arms as (horizontal chain, twig): the longer one is the
/// chain, ties go to the arm whose first vertex has the smaller id.
fn order_arms(x: Vec<VertexId>, y: Vec<VertexId>) -> (Vec<VertexId>, Vec<VertexId>) {
    if (y.len(), &x[0]) > (x.len(), &y[0]) {
        (y, x)
    } else {
        (x, y)
    }
}

pub fn comb_decompose(b: &BoundaryConfig) -> std::result::Result<CombDecomposition, CombMismatch> {
    let no = |s: String| CombMismatch { constraint: s };
    let g = &b.graph;
    if !g.is_tree() {
        return Err(no("C+D is not a tree".into()));
    }
    let c = &b.c;
    let ns = b.c_neighbors();
    if ns.len() > 2 {
        return Err(no("C adjacent to > 2 curves".into()));
    }
    let arms: Vec<(VertexId, Option<Vec<VertexId>>)> = ns
        .iter()
        .map(|n| (n.clone(), pure_arm(g, c, n)))
        .collect();
    let branched: Vec<&VertexId> = arms.iter().filter(|(_, a)| a.is_none()).map(|(n, _)| n).collect();
    let (start, twig0) = match branched.as_slice() {
        [] => {
            let mut pure: Vec<Vec<VertexId>> = arms.into_iter().filter_map(|(_, a)| a).collect();
            let (chain, twig) = match pure.len() {
                0 => return Err(no("s0 = 0 with r = 0".into())),
                1 => (pure.pop().expect("one"), Vec::new()),
                _ => {
                    let y = pure.pop().expect("two");
                    let x = pure.pop().expect("two");
                    order_arms(x, y)
                }
            };
            return Ok(CombDecomposition {
                c: c.clone(),
                r: 0,
                spine: Vec::new(),
                chains: vec![chain],
                twigs: vec![twig],
            });
        }
        [one] => {
            let twig = arms
                .iter()
                .find_map(|(n, a)| if n != *one { a.clone() } else { None })
                .unwrap_or_default();
            ((*one).clone(), twig)
        }
        _ => return Err(no("both sides of C branch".into())),
    };

    let mut spine = Vec::new();
    let mut chains = vec![Vec::new()];
    let mut twigs = vec![twig0];
    let mut prev = c.clone();
    let mut cur = start;
    loop {
        let out: Vec<VertexId> = g.neighbors(&cur).filter(|n| **n != prev).cloned().collect();
        match out.len() {
            0 => return Err(no(format!("path from C ends at {cur} without a branch vertex"))),
            1 => {
                chains.last_mut().expect("nonempty").push(cur.clone());
                prev = std::mem::replace(&mut cur, out[0].clone());
            }
            2 => {
                let x = pure_arm(g, &cur, &out[0]);
                let y = pure_arm(g, &cur, &out[1]);
                spine.push(cur.clone());
                match (x, y) {
                    (Some(x), Some(y)) => {
                        let (chain, twig) = order_arms(x, y);
                        chains.push(chain);
                        twigs.push(twig);
                        break;
                    }
                    (Some(twig), None) => {
                        twigs.push(twig);
                        chains.push(Vec::new());
                        prev = std::mem::replace(&mut cur, out[1].clone());
                    }
                    (None, Some(twig)) => {
                        twigs.push(twig);
                        chains.push(Vec::new());
                        prev = std::mem::replace(&mut cur, out[0].clone());
                    }
                    (None, None) => return Err(no(format!("two branched arms at {cur}"))),
                }
            }
            _ => return Err(no(format!("{cur} has degree > 3"))),
        }
    }
    let r = spine.len() - 1;
    if r == 0 && chains[0].is_empty() {
        return Err(no("s0 = 0 with r = 0".into()));
    }
    let comb = CombDecomposition {
        c: c.clone(),
        r,
        spine,
        chains,
        twigs,
    };
    match comb.reassemble(g) {
        Ok(h) if h == *g => Ok(comb),
        _ => Err(no("reassembly does not reproduce the graph".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(Int::from(n), Int::from(d))
    }

    fn boundary(text: &str) -> BoundaryConfig {
        BoundaryConfig::parse(text).unwrap()
    }

    #[test]
    fn lone_minus_one_fails_determinant() {
        let b = boundary("v C -1\nc C\n");
        let r = validate_boundary(&b);
        assert_eq!(r.determinant, Int::one());
        assert!(!r.check("determinant").unwrap().passed);
        assert!(r.check("tree").unwrap().passed);
    }

    #[test]
    fn hirzebruch_pair_is_allowed() {
        let b = boundary("v M -3\nv F 0\ne M F\nc F\n");
        let r = validate_boundary(&b);
        assert!(r.passed(), "{r:?}");
        assert!(classify_k(&b).is_err());
    }

    #[test]
    fn a1_is_anti_ample() {
        // -2 - -1 - -2 is not a boundary of the plane, but D# still makes sense
        let b = boundary("v D -2\nv C -1\ne D C\nc C\n");
        let k = classify_k(&b).unwrap();
        assert_eq!(k.value, KValue::AntiAmple);
        assert_eq!(k.c_pairing, q(0, 1));
    }

    #[test]
    fn trichotomy_thresholds() {
        assert_eq!(KValue::from_c_pairing(&q(99, 100)), KValue::AntiAmple);
        assert_eq!(KValue::from_c_pairing(&q(1, 1)), KValue::Trivial);
        assert_eq!(KValue::from_c_pairing(&q(101, 100)), KValue::Ample);
        for v in [KValue::AntiAmple, KValue::Trivial, KValue::Ample] {
            assert_eq!(v.as_str().parse::<KValue>().unwrap(), v);
        }
    }

    #[test]
    fn smallest_comb() {
        let b = boundary("v D -2\nv C -1\ne D C\nc C\n");
        let comb = comb_decompose(&b).unwrap();
        assert_eq!((comb.r, comb.s(0), comb.t(0)), (0, 1, 0));
        assert!(comb.is_degenerate());
    }

    #[test]
    fn c_of_degree_three_is_not_a_comb() {
        let b = boundary("v C -1\nv A -2\nv B -2\nv E -2\ne C A\ne C B\ne C E\nc C\n");
        let err = comb_decompose(&b).unwrap_err();
        assert_eq!(err.constraint, "C adjacent to > 2 curves");
    }

    #[test]
    fn spine_with_two_levels() {
        // C - a - S1(t: u) - S2(chain x y, twig z)
        let text = "v C -1\nv a -2\nv S1 -2\nv u -2\nv S2 -2\nv x -2\nv y -2\nv z -2\n\
                    e C a\ne a S1\ne S1 u\ne S1 S2\ne S2 x\ne x y\ne S2 z\nc C\n";
        let b = boundary(text);
        let comb = comb_decompose(&b).unwrap();
        assert_eq!(comb.r, 1);
        assert_eq!(comb.spine, vec![VertexId::from("S1"), VertexId::from("S2")]);
        assert_eq!(comb.chains[0], vec![VertexId::from("a")]);
        assert!(comb.chains[1].is_empty());
        assert_eq!(comb.chains[2], vec![VertexId::from("x"), VertexId::from("y")]);
        assert_eq!(comb.twigs[1], vec![VertexId::from("u")]);
        assert_eq!(comb.twigs[2], vec![VertexId::from("z")]);
        assert_eq!(comb.reassemble(&b.graph).unwrap(), b.graph);
    }

    #[test]
    fn case_one_with_empty_b() {
        // C meets a (-2) tip; the rest is a single vertex A.
        let b = boundary("v A -3\nv D1 -2\nv C -1\ne A D1\ne D1 C\nc C\n");
        let s = split_determinants(&b).unwrap();
        assert_eq!(s.case, PeelCase::One);
        assert_eq!(s.d_b, Int::one());
        assert_eq!(s.d_b_under, Int::zero());
        assert_eq!(s.d_a, Int::from(3));
        assert_eq!(s.d_a_under, Int::one());
    }

    #[test]
    fn coprime_needs_two_components() {
        let b = boundary("v A -3\nv D1 -2\nv C -1\ne A D1\ne D1 C\nc C\n");
        assert!(matches!(coprime_check(&b), Err(Error::ShapeMismatch(_))));
        let b = boundary("v A -3\nv B -2\nv C -1\ne A C\ne B C\nc C\n");
        assert!(coprime_check(&b).unwrap());
        let b = boundary("v A -2\nv B -4\nv C -1\ne A C\ne B C\nc C\n");
        assert!(!coprime_check(&b).unwrap());
    }
}
