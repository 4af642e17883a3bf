//! Blow-ups and blow-downs of boundary graphs, the contraction step that
//! peels `C` off a boundary, and the reduction of a K-ample boundary to a
//! K-trivial one together with the cycle `Z` it produces.
//!
//! Vertices never change id. A curve whose image becomes the new `C` keeps
//! its own id, so strict transforms are identified by id throughout.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::boundary::{classify_k, validate_boundary, BoundaryConfig, KValue};
use crate::cycle::{pa_genus, pairing, canonical_pairing, Cycle};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDualGraph};
use crate::{Int, Rational};

/// Contracts the (-1)-curve `v`.
pub fn blow_down(g: &WeightedDualGraph, v: &VertexId) -> Result<WeightedDualGraph> {
    let w = g.weight(v)?;
    let fail = |reason: String| Error::BlowDown {
        id: v.clone(),
        reason,
    };
    if w != -1 {
        return Err(fail(format!("weight is {w}, not -1")));
    }
    let ns: Vec<VertexId> = g.neighbors(v).cloned().collect();
    if ns.len() > 2 {
        return Err(fail(format!("meets {} curves", ns.len())));
    }
    if let [a, b] = ns.as_slice() {
        if g.has_edge(a, b) {
            return Err(fail(format!("neighbours {a} and {b} already meet")));
        }
    }
    let mut out = g.clone();
    out.remove_vertex(v)?;
    for n in &ns {
        out.set_weight(n, g.weight(n)? + 1)?;
    }
    if let [a, b] = ns.as_slice() {
        out.add_edge(a.clone(), b.clone())?;
    }
    Ok(out)
}

/// Blows up a general point of `v`; the exceptional curve is `new_id`.
pub fn blow_up_on_curve(
    g: &WeightedDualGraph,
    v: &VertexId,
    new_id: impl Into<VertexId>,
) -> Result<WeightedDualGraph> {
    let new_id = new_id.into();
    let w = g.weight(v)?;
    let mut out = g.clone();
    out.add_vertex(new_id.clone(), -1)?;
    out.set_weight(v, w - 1)?;
    out.add_edge(v.clone(), new_id)?;
    Ok(out)
}

/// Blows up the intersection point of `a` and `b`.
pub fn blow_up_at_edge(
    g: &WeightedDualGraph,
    a: &VertexId,
    b: &VertexId,
    new_id: impl Into<VertexId>,
) -> Result<WeightedDualGraph> {
    let new_id = new_id.into();
    let mut out = g.clone();
    out.remove_edge(a, b)?;
    out.add_vertex(new_id.clone(), -1)?;
    for x in [a, b] {
        out.set_weight(x, g.weight(x)? - 1)?;
        out.add_edge(x.clone(), new_id.clone())?;
    }
    Ok(out)
}

/// Case of a single contraction, or a contraction performed while `D` is
/// not negative definite.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepTag {
    One,
    Two,
    Three,
    IndefiniteIntermediate,
}

impl StepTag {
    pub fn as_str(self) -> &'static str {
        match self {
            StepTag::One => "1",
            StepTag::Two => "2",
            StepTag::Three => "3",
            StepTag::IndefiniteIntermediate => "indefinite-intermediate",
        }
    }
}

impl fmt::Display for StepTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for StepTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeelStep {
    /// The old `C`.
    pub contracted: VertexId,
    pub tag: StepTag,
    /// The boundary after the step; its `c` is the new (-1)-curve.
    pub boundary: BoundaryConfig,
    /// `(D# . C)` of the new boundary, when its `D` is negative definite.
    pub c_pairing: Option<Rational>,
}

/// Contracts `C` and marks the unique (-1)-curve among the images of `D`.
pub fn peel_step(b: &BoundaryConfig) -> Result<BoundaryConfig> {
    peel_step_traced(b).map(|s| s.boundary)
}

pub fn peel_step_traced(b: &BoundaryConfig) -> Result<PeelStep> {
    if b.c_weight() != -1 {
        return Err(Error::Precondition(format!(
            "C has weight {}, expected -1",
            b.c_weight()
        )));
    }
    let d = b.d();
    if d.is_empty() {
        return Err(Error::Precondition("D is empty".into()));
    }
    if !d.has_branching() {
        return Err(Error::Precondition("D has no branching component".into()));
    }
    let report = validate_boundary(b);
    if !report.structural_ok() {
        return Err(Error::Precondition(format!(
            "not a boundary of the plane: d(C+D) = {}, tree = {}",
            report.determinant,
            b.graph.is_tree()
        )));
    }
    let image = blow_down(&b.graph, &b.c)?;
    let candidates: Vec<VertexId> = image
        .vertices()
        .filter(|v| v.weight == -1)
        .map(|v| v.id.clone())
        .collect();
    let new_c = match candidates.as_slice() {
        [one] => one.clone(),
        [] => {
            return Err(Error::InvariantViolation(format!(
                "no (-1)-curve after contracting {}",
                b.c
            )))
        }
        many => {
            let names: Vec<String> = many.iter().map(ToString::to_string).collect();
            return Err(Error::InvariantViolation(format!(
                "several (-1)-curves after contracting {}: {}",
                b.c,
                names.join(", ")
            )));
        }
    };
    let next = BoundaryConfig::new(image, new_c)?;
    let new_d = next.d();
    let tag = if !d.is_negative_definite() {
        StepTag::IndefiniteIntermediate
    } else if d.is_connected() {
        StepTag::One
    } else if new_d.is_connected() {
        StepTag::Two
    } else {
        StepTag::Three
    };
    let c_pairing = if new_d.is_negative_definite() {
        next.d_sharp()?.c_pairing
    } else {
        None
    };
    Ok(PeelStep {
        contracted: b.c.clone(),
        tag,
        boundary: next,
        c_pairing,
    })
}

/// The contractions taking a K-ample boundary to a K-trivial one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub initial: BoundaryConfig,
    pub initial_c_pairing: Rational,
    pub steps: Vec<PeelStep>,
    pub final_boundary: BoundaryConfig,
}

impl ReductionTrace {
    /// The empty trace of a boundary that is already K-trivial.
    pub fn identity(b: &BoundaryConfig) -> Result<Self> {
        let k = classify_k(b)?;
        if k.value != KValue::Trivial {
            return Err(Error::Precondition(format!("K is {}, not trivial", k.value)));
        }
        Ok(ReductionTrace {
            initial: b.clone(),
            initial_c_pairing: k.c_pairing,
            steps: Vec::new(),
            final_boundary: b.clone(),
        })
    }

    /// `(D# . C)` at every negative definite stage, starting with the input.
    pub fn c_pairings(&self) -> Vec<Rational> {
        std::iter::once(self.initial_c_pairing.clone())
            .chain(self.steps.iter().filter_map(|s| s.c_pairing.clone()))
            .collect()
    }
}

/// Peels until `(D# . C) = 1`, then keeps peeling for as long as every
/// definite stage stays K-trivial, and returns the last K-trivial stage.
/// Every definite stage before the first K-trivial one must have
/// `(D# . C) > 1`.
pub fn reduce_to_trivial(b: &BoundaryConfig) -> Result<ReductionTrace> {
    let k = classify_k(b)?;
    if k.value != KValue::Ample {
        return Err(Error::Precondition(format!("K is {}, not ample", k.value)));
    }
    if !b.d().has_branching() {
        return Err(Error::Precondition("D has no branching component".into()));
    }
    let mut steps: Vec<PeelStep> = Vec::new();
    let mut cur = b.clone();
    let mut trivial_at: Option<usize> = None;
    loop {
        let exhausted = !cur.d().has_branching() || steps.len() > b.graph.len();
        if exhausted && trivial_at.is_none() {
            return Err(Error::InvariantViolation(format!(
                "graph exhausted after {} contractions without reaching (D#.C) = 1",
                steps.len()
            )));
        }
        if exhausted {
            break;
        }
        let step = match peel_step_traced(&cur) {
            Ok(s) => s,
            Err(_) if trivial_at.is_some() => break,
            Err(e) => return Err(e),
        };
        cur = step.boundary.clone();
        let c = step.c_pairing.clone();
        let contracted = step.contracted.clone();
        steps.push(step);
        let Some(c) = c else { continue };
        match (trivial_at, c.cmp(&Rational::one())) {
            (None, Ordering::Less) => {
                return Err(Error::InvariantViolation(format!(
                    "(D#.C) dropped to {c} after contracting {contracted}"
                )))
            }
            (_, Ordering::Equal) => trivial_at = Some(steps.len()),
            (None, Ordering::Greater) => {}
            (Some(_), Ordering::Less) => break,
            (Some(_), Ordering::Greater) => {
                return Err(Error::InvariantViolation(format!(
                    "(D#.C) rose to {c} after a K-trivial stage, contracting {contracted}"
                )))
            }
        }
    }
    let n = trivial_at.expect("loop exits only after a K-trivial stage");
    steps.truncate(n);
    let final_boundary = steps.last().expect("n >= 1").boundary.clone();
    Ok(ReductionTrace {
        initial: b.clone(),
        initial_c_pairing: k.c_pairing,
        steps,
        final_boundary,
    })
}

/// The cycle `Z` on the original boundary together with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZCycle {
    pub cycle: Cycle,
    pub pa: Int,
    /// Support of `Z`: the branched component of the original `D`.
    pub support: BTreeSet<VertexId>,
    /// `D#` of the final boundary on its branched component, pulled back.
    pub pullback: Cycle,
    /// Vertices of the branched component not in the pullback.
    pub remainder: BTreeSet<VertexId>,
    /// `(pullback . remainder)`; `None` when the remainder is empty.
    pub pullback_dot_remainder: Option<Rational>,
    /// `(R . K + R)` for the reduced remainder `R`.
    pub remainder_adjunction: Option<Rational>,
}

/// Builds `Z` from the K-trivial end of `trace`: the integral part of the
/// final `D#` on its branched component, plus one on every contracted vertex
/// of the original branched component.
pub fn build_z(original: &BoundaryConfig, trace: &ReductionTrace) -> Result<ZCycle> {
    let fin = &trace.final_boundary;
    let k = classify_k(fin)?;
    if k.value != KValue::Trivial {
        return Err(Error::Precondition(format!(
            "final boundary is {}, not trivial",
            k.value
        )));
    }
    let fin_e = fin
        .branched_component()
        .ok_or_else(|| Error::Precondition("final D has no branched component".into()))?
        .vertex_set();
    let e = original
        .branched_component()
        .ok_or_else(|| Error::Precondition("D has no branched component".into()))?
        .vertex_set();
    let ds = fin.d_sharp()?;
    let z_tilde = ds.cycle.restrict(&fin_e);
    if let Some((id, _)) = z_tilde.iter().find(|(_, c)| !c.is_integer()) {
        return Err(Error::InvariantViolation(format!(
            "D# of the final boundary is not integral at {id}"
        )));
    }
    if z_tilde.support() != fin_e {
        return Err(Error::InvariantViolation(
            "D# does not cover the final branched component".into(),
        ));
    }
    if let Some(stray) = fin_e.iter().find(|id| !e.contains(*id)) {
        return Err(Error::InvariantViolation(format!(
            "{stray} survives but is not in the original branched component"
        )));
    }
    let g = &original.graph;
    let pullback = Cycle::new(g, z_tilde.iter().map(|(id, c)| (id.clone(), c.clone())))?;
    let remainder: BTreeSet<VertexId> = e.difference(&fin_e).cloned().collect();
    let r_cycle = Cycle::reduced_on(&remainder);
    let z = pullback.add(&r_cycle);
    if z.support() != e {
        return Err(Error::InvariantViolation(
            "support of Z differs from the branched component".into(),
        ));
    }
    let pa = pa_genus(g, &z)?.to_integer();
    if !pa.is_one() {
        return Err(Error::InvariantViolation(format!("p_a(Z) = {pa}, expected 1")));
    }
    let (dot, adj) = if remainder.is_empty() {
        (None, None)
    } else {
        (
            Some(pairing(g, &pullback, &r_cycle)?),
            Some(pairing(g, &r_cycle, &r_cycle)? + canonical_pairing(g, &r_cycle)?),
        )
    };
    Ok(ZCycle {
        cycle: z,
        pa,
        support: e,
        pullback,
        remainder,
        pullback_dot_remainder: dot,
        remainder_adjunction: adj,
    })
}

impl ZCycle {
    /// `(P . R) = 1` and `(R . K + R) = -2` whenever `R` is nonempty.
    pub fn bookkeeping_holds(&self) -> bool {
        match (&self.pullback_dot_remainder, &self.remainder_adjunction) {
            (Some(d), Some(a)) => d.is_one() && *a == Rational::from_integer(Int::from(-2)),
            (None, None) => true,
            _ => false,
        }
    }

    pub fn coefficient(&self, id: &VertexId) -> Rational {
        self.cycle.coeff(id)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(s: &str) -> VertexId {
        VertexId::from(s)
    }

    #[test]
    fn isolated_minus_one() {
        let g = WeightedDualGraph::chain(&[("E", -1)]);
        assert!(blow_down(&g, &id("E")).unwrap().is_empty());
    }

    #[test]
    fn contract_middle_of_chain() {
        let g = WeightedDualGraph::chain(&[("A", -2), ("E", -1), ("B", -3)]);
        let h = blow_down(&g, &id("E")).unwrap();
        assert_eq!(h, WeightedDualGraph::chain(&[("A", -1), ("B", -2)]));
    }

    #[test]
    fn blow_down_errors() {
        let g = WeightedDualGraph::chain(&[("A", -2), ("E", -2)]);
        assert!(matches!(blow_down(&g, &id("E")), Err(Error::BlowDown { .. })));
        let mut star = WeightedDualGraph::new();
        star.add_vertex("E", -1).unwrap();
        for a in ["A", "B", "C"] {
            star.add_vertex(a, -2).unwrap();
            star.add_edge("E", a).unwrap();
        }
        assert!(matches!(blow_down(&star, &id("E")), Err(Error::BlowDown { .. })));
        let mut tri = WeightedDualGraph::chain(&[("A", -2), ("E", -1), ("B", -2)]);
        tri.add_edge("A", "B").unwrap();
        assert!(matches!(blow_down(&tri, &id("E")), Err(Error::BlowDown { .. })));
    }

    #[test]
    fn round_trips() {
        let g = WeightedDualGraph::chain(&[("A", -2), ("B", -3)]);
        let up = blow_up_on_curve(&g, &id("A"), "X").unwrap();
        assert_eq!(up.weight(&id("A")).unwrap(), -3);
        assert_eq!(blow_down(&up, &id("X")).unwrap(), g);
        let up = blow_up_at_edge(&g, &id("A"), &id("B"), "X").unwrap();
        assert!(!up.has_edge(&id("A"), &id("B")));
        assert_eq!(blow_down(&up, &id("X")).unwrap(), g);
        assert!(blow_up_at_edge(&g, &id("A"), &id("Q"), "X").is_err());
        assert!(blow_up_on_curve(&g, &id("A"), "B").is_err());
    }

    #[test]
    fn peel_requires_branching() {
        let b = BoundaryConfig::parse("v A -3\nv D1 -2\nv C -1\ne A D1\ne D1 C\nc C\n").unwrap();
        assert!(matches!(peel_step(&b), Err(Error::Precondition(_))));
    }

    #[test]
    fn reduction_runs_to_the_last_trivial_stage() {
        let b = BoundaryConfig::parse(crate::corpus::K_AMPLE_CONNECTED).unwrap();
        let t = reduce_to_trivial(&b).unwrap();
        let cs: Vec<String> = t.c_pairings().iter().map(ToString::to_string).collect();
        assert_eq!(cs, ["8/7", "12/11", "24/23", "1", "1", "1"]);
        assert_eq!(t.final_boundary.c, id("D12"));
        let tags: Vec<&str> = t.steps.iter().map(|s| s.tag.as_str()).collect();
        assert_eq!(tags, ["1", "1", "1", "3", "2"]);
    }

    #[test]
    fn already_trivial_is_rejected() {
        let b = crate::corpus::k_trivial_comb(3);
        assert!(matches!(reduce_to_trivial(&b), Err(Error::Precondition(_))));
        assert!(ReductionTrace::identity(&b).unwrap().steps.is_empty());
    }
}
