//! Cycles (divisors supported on a graph), the adjunction pairing with the
//! canonical class, arithmetic genus, and the anti-canonical cycle `D#`.
//!
//! The canonical class is never stored; only `(D_i . K) = -2 - (D_i)^2` is
//! ever needed, which is what adjunction gives for a smooth rational curve.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{CurveVertex, VertexId, WeightedDualGraph};
use crate::linalg;
use crate::scalar::{rat_from_i64, ExactInt};
use crate::Int;

/// `(D_i . K_V)` for a smooth rational curve of self-intersection `w`.
pub fn canonical_degree(v: &CurveVertex) -> i64 {
    -2 - v.weight
}

/// A rational linear combination of the vertices of some graph.
/// Zero coefficients are not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cycle<T: ExactInt = Int> {
    coeffs: BTreeMap<VertexId, Ratio<T>>,
}

impl<T: ExactInt> Default for Cycle<T> {
    fn default() -> Self {
        Cycle {
            coeffs: BTreeMap::new(),
        }
    }
}

impl<T: ExactInt> Cycle<T> {
    /// Every key must be a vertex of `g`.
    pub fn new(
        g: &WeightedDualGraph,
        coeffs: impl IntoIterator<Item = (VertexId, Ratio<T>)>,
    ) -> Result<Self> {
        let mut out = BTreeMap::new();
        for (id, c) in coeffs {
            if !g.contains(&id) {
                return Err(Error::UnknownVertex(id));
            }
            if !c.is_zero() {
                out.insert(id, c);
            }
        }
        Ok(Cycle { coeffs: out })
    }

    pub fn from_integers<S: Into<VertexId>>(
        g: &WeightedDualGraph,
        coeffs: impl IntoIterator<Item = (S, i64)>,
    ) -> Result<Self> {
        Self::new(
            g,
            coeffs.into_iter().map(|(id, c)| (id.into(), rat_from_i64(c))),
        )
    }

    /// The reduced cycle `sum D_i` over all vertices of `g`.
    pub fn reduced(g: &WeightedDualGraph) -> Self {
        Cycle {
            coeffs: g.ids().map(|id| (id.clone(), Ratio::one())).collect(),
        }
    }

    /// The reduced cycle on a subset of vertices.
    pub fn reduced_on<'a>(ids: impl IntoIterator<Item = &'a VertexId>) -> Self {
        Cycle {
            coeffs: ids.into_iter().map(|id| (id.clone(), Ratio::one())).collect(),
        }
    }

    pub fn coeff(&self, id: &VertexId) -> Ratio<T> {
        self.coeffs.get(id).cloned().unwrap_or_else(Ratio::zero)
    }

    pub fn set(&mut self, id: VertexId, c: Ratio<T>) {
        if c.is_zero() {
            self.coeffs.remove(&id);
        } else {
            self.coeffs.insert(id, c);
        }
    }

    /// Nonzero entries in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&VertexId, &Ratio<T>)> {
        self.coeffs.iter()
    }

    pub fn support(&self) -> BTreeSet<VertexId> {
        self.coeffs.keys().cloned().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Ratio::is_integer)
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|c| *c > Ratio::zero())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in &other.coeffs {
            let sum = out.coeff(id) + c.clone();
            out.set(id.clone(), sum);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (id, c) in &other.coeffs {
            let diff = out.coeff(id) - c.clone();
            out.set(id.clone(), diff);
        }
        out
    }

    /// Keeps only the coefficients on `ids`.
    pub fn restrict(&self, ids: &BTreeSet<VertexId>) -> Self {
        Cycle {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(id, _)| ids.contains(*id))
                .map(|(id, c)| (id.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Z_red`: coefficient one on the support.
    pub fn reduction(&self) -> Self {
        Cycle::reduced_on(self.coeffs.keys())
    }

    /// Comma-separated `<id>=<value>` literal.
    pub fn to_literal(&self) -> String {
        self.coeffs
            .iter()
            .map(|(id, c)| {
                if c.is_integer() {
                    format!("{id}={}", c.numer())
                } else {
                    format!("{id}={}/{}", c.numer(), c.denom())
                }
            })
            .collect::<Vec<_>>()
            .join(",")
    }

    fn check_graph(&self, g: &WeightedDualGraph) -> Result<()> {
        match self.coeffs.keys().find(|id| !g.contains(id)) {
            Some(id) => Err(Error::UnknownVertex(id.clone())),
            None => Ok(()),
        }
    }
}

/// `(Z1 . Z2)`, the bilinear extension of `I(D)`.
pub fn pairing<T: ExactInt>(
    g: &WeightedDualGraph,
    z1: &Cycle<T>,
    z2: &Cycle<T>,
) -> Result<Ratio<T>> {
    z1.check_graph(g)?;
    z2.check_graph(g)?;
    let mut total = Ratio::zero();
    for (a, ca) in z1.iter() {
        let w = g.weight(a)?;
        total = total + ca.clone() * z2.coeff(a) * rat_from_i64::<T>(w);
        for b in g.neighbors(a) {
            total = total + ca.clone() * z2.coeff(b);
        }
    }
    Ok(total)
}

/// `(Z . K_V)`.
pub fn canonical_pairing<T: ExactInt>(g: &WeightedDualGraph, z: &Cycle<T>) -> Result<Ratio<T>> {
    z.check_graph(g)?;
    let mut total = Ratio::zero();
    for (id, c) in z.iter() {
        let v = g.vertex(id).expect("checked");
        total = total + c.clone() * rat_from_i64::<T>(canonical_degree(v));
    }
    Ok(total)
}

/// `p_a(Z) = (Z . Z + K_V) / 2 + 1` for a nonzero integral cycle.
pub fn pa_genus<T: ExactInt>(g: &WeightedDualGraph, z: &Cycle<T>) -> Result<Ratio<T>> {
    if let Some((id, _)) = z.iter().find(|(_, c)| !c.is_integer()) {
        return Err(Error::NonIntegralCycle(id.clone()));
    }
    if z.is_zero() {
        return Err(Error::Precondition("arithmetic genus of the zero cycle".into()));
    }
    let two = rat_from_i64::<T>(2);
    Ok((pairing(g, z, z)? + canonical_pairing(g, z)?) / two + Ratio::one())
}

/// The solution of `(D_i . K_V + D#) = 0` for every vertex `D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DSharpResult<T: ExactInt = Int> {
    pub cycle: Cycle<T>,
    /// `(D# . C)`, present when the neighbours of a marked curve were given.
    pub c_pairing: Option<Ratio<T>>,
    /// All coefficients are integers.
    pub integral: bool,
}

impl<T: ExactInt> DSharpResult<T> {
    /// `(D_i . K_V + D#)` for every vertex, which must all vanish.
    pub fn residuals(&self, g: &WeightedDualGraph) -> Result<Vec<(VertexId, Ratio<T>)>> {
        g.ids()
            .map(|id| {
                let di = Cycle::reduced_on([id]);
                let v = g.vertex(id).expect("own id");
                let r = rat_from_i64::<T>(canonical_degree(v)) + pairing(g, &di, &self.cycle)?;
                Ok((id.clone(), r))
            })
            .collect()
    }

    pub fn coeff(&self, id: &VertexId) -> Ratio<T> {
        self.cycle.coeff(id)
    }
}

/// `D#` on a negative definite graph `d`. `c_neighbors` lists the vertices
/// of `d` met by the marked curve `C`; `(D# . C)` is their coefficient sum.
pub fn compute_d_sharp(
    d: &WeightedDualGraph,
    c_neighbors: Option<&[VertexId]>,
) -> Result<DSharpResult> {
    compute_d_sharp_in::<Int>(d, c_neighbors)
}

pub fn compute_d_sharp_in<T: ExactInt>(
    d: &WeightedDualGraph,
    c_neighbors: Option<&[VertexId]>,
) -> Result<DSharpResult<T>> {
    if let Some(ns) = c_neighbors {
        if let Some(bad) = ns.iter().find(|n| !d.contains(n)) {
            return Err(Error::UnknownVertex((*bad).clone()));
        }
    }
    let m = d.canonical_matrix();
    let neg = m.negated::<T>();
    if !linalg::is_positive_definite(&neg) {
        return Err(Error::NotNegativeDefinite);
    }
    // I(D) alpha = (-(D_i . K))_i, i.e. (-I) alpha = (D_i . K)_i.
    let rhs: Vec<T> = m
        .ordering
        .iter()
        .map(|id| T::from(canonical_degree(d.vertex(id).expect("own id"))))
        .collect();
    let alpha = linalg::solve(&neg, &rhs).ok_or(Error::NotNegativeDefinite)?;
    let cycle = Cycle::new(d, m.ordering.iter().cloned().zip(alpha))?;
    let c_pairing = c_neighbors.map(|ns| {
        ns.iter()
            .fold(Ratio::zero(), |acc, n| acc + cycle.coeff(n))
    });
    let integral = cycle.is_integral();
    Ok(DSharpResult {
        cycle,
        c_pairing,
        integral,
    })
}

/// `(K_X . Gamma) = -1 + (D# . C)`.
pub fn k_gamma_mumford<T: ExactInt>(d_sharp: &DSharpResult<T>) -> Result<Ratio<T>> {
    d_sharp
        .c_pairing
        .clone()
        .map(|c| c - Ratio::one())
        .ok_or(Error::NoMarkedCurve)
}
