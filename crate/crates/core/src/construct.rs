//! Boundaries built by blowing up the pair `M + F` on a Hirzebruch surface,
//! canonical forms for boundary trees, and exhaustive enumeration of short
//! blow-up sequences.
//!
//! Move grammar: the first blow-up is at a general point of `F`; every later
//! blow-up is at a general point of the newest exceptional curve or at a
//! point where it meets another boundary curve. The exceptional curve of the
//! `k`-th move is named `E<k>` and the last one is `C`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;

use rayon::prelude::*;

use crate::birational::{blow_up_at_edge, blow_up_on_curve};
use crate::boundary::{classify_k, BoundaryConfig, KClass, KValue};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDualGraph};
use crate::singularity::{is_rational, SingularityKind};
use crate::Int;

pub const DEFAULT_MAX_DEPTH: usize = 10;
pub const DEFAULT_MAX_BOUNDARIES: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HirzebruchSeed {
    pub m: i64,
}

impl HirzebruchSeed {
    pub fn new(m: i64) -> Result<Self> {
        if m < 2 {
            return Err(Error::Precondition(format!("seed needs m >= 2, got {m}")));
        }
        Ok(HirzebruchSeed { m })
    }

    /// `M (-m) --- F (0)`.
    pub fn graph(&self) -> WeightedDualGraph {
        WeightedDualGraph::chain(&[("M", -self.m), ("F", 0)])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Move {
    OnCurve(VertexId),
    AtEdge(VertexId, VertexId),
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::OnCurve(v) => write!(f, "{v}"),
            Move::AtEdge(a, b) => write!(f, "{a}-{b}"),
        }
    }
}

/// Whitespace-separated moves: `X` blows up a point of `X`, `X-Y` the
/// point `X` meets `Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MoveSequence {
    pub moves: Vec<Move>,
}

impl MoveSequence {
    pub fn new(moves: Vec<Move>) -> Self {
        MoveSequence { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

impl fmt::Display for MoveSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moves.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for MoveSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let moves = s
            .split_whitespace()
            .map(|tok| match tok.split_once('-') {
                Some((a, b)) if !a.is_empty() && !b.is_empty() => {
                    Ok(Move::AtEdge(a.into(), b.into()))
                }
                Some(_) => Err(Error::InvalidMove(format!("malformed move `{tok}`"))),
                None => Ok(Move::OnCurve(tok.into())),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MoveSequence { moves })
    }
}

fn exceptional(k: usize) -> VertexId {
    VertexId::new(format!("E{k}"))
}

/// Applies move `k` (1-based) to `g`, checking the grammar.
fn apply_move(g: &WeightedDualGraph, k: usize, mv: &Move) -> Result<WeightedDualGraph> {
    let new_id = exceptional(k);
    if k == 1 {
        return match mv {
            Move::OnCurve(v) if v.as_str() == "F" => blow_up_on_curve(g, v, new_id),
            _ => Err(Error::InvalidMove(format!(
                "first move must blow up a point of F, got `{mv}`"
            ))),
        };
    }
    let latest = exceptional(k - 1);
    match mv {
        Move::OnCurve(v) if *v == latest => blow_up_on_curve(g, v, new_id),
        Move::AtEdge(a, b) if *a == latest || *b == latest => {
            if !g.has_edge(a, b) {
                return Err(Error::InvalidMove(format!("{a} and {b} do not meet")));
            }
            blow_up_at_edge(g, a, b, new_id)
        }
        _ => Err(Error::InvalidMove(format!(
            "move {k} (`{mv}`) does not involve the newest curve {latest}"
        ))),
    }
}

/// The boundary obtained by the blow-ups `moves` of `seed`; `C` is the last
/// exceptional curve.
pub fn apply_sequence(seed: &HirzebruchSeed, moves: &MoveSequence) -> Result<BoundaryConfig> {
    if moves.is_empty() {
        return Err(Error::InvalidMove("empty move sequence leaves C undefined".into()));
    }
    let mut g = seed.graph();
    for (i, mv) in moves.moves.iter().enumerate() {
        g = apply_move(&g, i + 1, mv)?;
    }
    BoundaryConfig::new(g, exceptional(moves.len()))
}

fn rooted_code(g: &WeightedDualGraph, v: &VertexId, parent: Option<&VertexId>) -> String {
    let mut kids: Vec<String> = g
        .neighbors(v)
        .filter(|n| Some(*n) != parent)
        .map(|n| rooted_code(g, n, Some(v)))
        .collect();
    kids.sort();
    format!("({}{})", g.weight(v).expect("own vertex"), kids.concat())
}

/// Encoding of a weighted tree rooted at `root`; equal iff the rooted
/// weighted trees are isomorphic.
pub fn canonical_rooted(g: &WeightedDualGraph, root: &VertexId) -> Result<String> {
    if !g.contains(root) {
        return Err(Error::UnknownVertex(root.clone()));
    }
    if !g.is_tree() {
        return Err(Error::ShapeMismatch("canonical forms need a tree".into()));
    }
    Ok(rooted_code(g, root, None))
}

/// Canonical form of a boundary: its tree rooted at `C`.
pub fn canonical_boundary(b: &BoundaryConfig) -> Result<String> {
    canonical_rooted(&b.graph, &b.c)
}

/// Canonical form of an unrooted weighted tree, rooted at its centre.
pub fn canonical_tree(g: &WeightedDualGraph) -> Result<String> {
    if !g.is_tree() {
        return Err(Error::ShapeMismatch("canonical forms need a tree".into()));
    }
    let mut degree: BTreeMap<&VertexId, usize> = g.ids().map(|v| (v, g.degree(v))).collect();
    let mut layer: Vec<&VertexId> = degree
        .iter()
        .filter(|(_, d)| **d <= 1)
        .map(|(v, _)| *v)
        .collect();
    let mut left = g.len();
    while left > 2 {
        left -= layer.len();
        let mut next = Vec::new();
        for v in &layer {
            degree.remove(v);
            for n in g.neighbors(v) {
                if let Some(d) = degree.get_mut(n) {
                    *d -= 1;
                    if *d == 1 {
                        next.push(n);
                    }
                }
            }
        }
        layer = next;
    }
    let centres: Vec<&VertexId> = degree.keys().copied().collect();
    Ok(centres
        .iter()
        .map(|c| rooted_code(g, c, None))
        .min()
        .expect("nonempty tree"))
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    /// `D` negative definite.
    pub negdef: bool,
    /// Every curve of `D` has weight at most -2.
    pub minres: bool,
    /// Keep only these K classes (implies `negdef`).
    pub classes: Option<BTreeSet<KValue>>,
}

impl FromStr for Filters {
    type Err = Error;

    /// Comma-separated: `negdef`, `minres`, `trivial`, `ample`, `anti_ample`.
    fn from_str(s: &str) -> Result<Self> {
        let mut f = Filters::default();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            match tok {
                "negdef" => f.negdef = true,
                "minres" => f.minres = true,
                other => {
                    let k: KValue = other
                        .parse()
                        .map_err(|_| Error::Precondition(format!("unknown filter `{other}`")))?;
                    f.classes.get_or_insert_with(BTreeSet::new).insert(k);
                }
            }
        }
        Ok(f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationConfig {
    pub m_range: RangeInclusive<i64>,
    pub depth: usize,
    pub filters: Filters,
    pub max_depth: usize,
    pub max_boundaries: usize,
}

impl EnumerationConfig {
    pub fn new(m_range: RangeInclusive<i64>, depth: usize) -> Self {
        EnumerationConfig {
            m_range,
            depth,
            filters: Filters::default(),
            max_depth: DEFAULT_MAX_DEPTH,
            max_boundaries: DEFAULT_MAX_BOUNDARIES,
        }
    }

    pub fn with_filters(mut self, filters: Filters) -> Self {
        self.filters = filters;
        self
    }
}

/// One connected component of `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentSummary {
    pub vertices: BTreeSet<VertexId>,
    pub determinant: Int,
    pub branched: bool,
    /// `None` unless the component is negative definite with weights <= -2.
    pub rational: Option<bool>,
}

impl ComponentSummary {
    pub fn of(component: &WeightedDualGraph) -> Self {
        let rational = is_rational(component).ok().map(|r| r.rational);
        ComponentSummary {
            vertices: component.vertex_set(),
            determinant: component.determinant(),
            branched: component.has_branching(),
            rational,
        }
    }

    pub fn kind(&self) -> SingularityKind {
        if self.branched {
            SingularityKind::Branched
        } else {
            SingularityKind::Chain
        }
    }
}

/// Components of `D` for a boundary, with rationality where decidable.
pub fn component_summaries(b: &BoundaryConfig) -> Vec<ComponentSummary> {
    b.d()
        .connected_components()
        .iter()
        .map(ComponentSummary::of)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumeratedBoundary {
    pub m: i64,
    pub moves: MoveSequence,
    pub boundary: BoundaryConfig,
    pub canonical: String,
    /// Present when `D` is negative definite.
    pub k_class: Option<KClass>,
    pub components: Vec<ComponentSummary>,
}

fn passes(f: &Filters, b: &BoundaryConfig, k: &Option<KClass>) -> bool {
    let d = b.d();
    if (f.negdef || f.classes.is_some()) && !d.is_negative_definite() {
        return false;
    }
    if f.minres && d.vertices().any(|v| v.weight > -2) {
        return false;
    }
    match (&f.classes, k) {
        (Some(set), Some(k)) => set.contains(&k.value),
        (Some(_), None) => false,
        (None, _) => true,
    }
}

/// Every boundary reachable in `1..=depth` moves, for every seed.
fn sequences_for(m: i64, depth: usize) -> Result<Vec<(MoveSequence, BoundaryConfig)>> {
    let seed = HirzebruchSeed::new(m)?;
    let mut out = Vec::new();
    let first = MoveSequence::new(vec![Move::OnCurve("F".into())]);
    let mut stack = vec![(first.clone(), apply_sequence(&seed, &first)?)];
    while let Some((seq, b)) = stack.pop() {
        if seq.len() < depth {
            let latest = exceptional(seq.len());
            let mut next: Vec<Move> = vec![Move::OnCurve(latest.clone())];
            next.extend(
                b.graph
                    .neighbors(&latest)
                    .map(|n| Move::AtEdge(latest.clone(), n.clone())),
            );
            for mv in next.into_iter().rev() {
                let g = apply_move(&b.graph, seq.len() + 1, &mv)?;
                let mut s = seq.clone();
                s.moves.push(mv);
                let c = exceptional(s.len());
                stack.push((s, BoundaryConfig::new(g, c)?));
            }
        }
        out.push((seq, b));
    }
    Ok(out)
}

/// Exhaustive, deduplicated and canonically ordered enumeration.
pub fn enumerate_boundaries(cfg: &EnumerationConfig) -> Result<Vec<EnumeratedBoundary>> {
    if cfg.depth > cfg.max_depth {
        return Err(Error::EnumerationLimit(format!(
            "depth {} exceeds the maximum {}",
            cfg.depth, cfg.max_depth
        )));
    }
    if cfg.depth == 0 {
        return Err(Error::Precondition("depth must be at least 1".into()));
    }
    let ms: Vec<i64> = cfg.m_range.clone().collect();
    let per_m: Vec<Vec<EnumeratedBoundary>> = ms
        .par_iter()
        .map(|&m| -> Result<Vec<EnumeratedBoundary>> {
            let mut seen = BTreeSet::new();
            let mut out = Vec::new();
            for (moves, boundary) in sequences_for(m, cfg.depth)? {
                let canonical = canonical_boundary(&boundary)?;
                if !seen.insert(canonical.clone()) {
                    continue;
                }
                let k_class = if boundary.d().is_negative_definite() {
                    Some(classify_k(&boundary)?)
                } else {
                    None
                };
                if !passes(&cfg.filters, &boundary, &k_class) {
                    continue;
                }
                out.push(EnumeratedBoundary {
                    m,
                    moves,
                    components: component_summaries(&boundary),
                    boundary,
                    canonical,
                    k_class,
                });
                if out.len() > cfg.max_boundaries {
                    return Err(Error::EnumerationLimit(format!(
                        "more than {} boundaries",
                        cfg.max_boundaries
                    )));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut seen = BTreeSet::new();
    let mut all: Vec<EnumeratedBoundary> = per_m
        .into_iter()
        .flatten()
        .filter(|e| seen.insert(e.canonical.clone()))
        .collect();
    if all.len() > cfg.max_boundaries {
        return Err(Error::EnumerationLimit(format!(
            "more than {} boundaries",
            cfg.max_boundaries
        )));
    }
    all.sort_by(|a, b| {
        (a.boundary.graph.len(), &a.canonical).cmp(&(b.boundary.graph.len(), &b.canonical))
    });
    Ok(all)
}
