//! Weighted dual graphs: one vertex per smooth rational curve, weighted by its
//! self-intersection number, one edge per transverse intersection point.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, SquareMatrix};
use crate::scalar::ExactInt;
use crate::Int;

/// User-supplied vertex identifier. Ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        VertexId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        VertexId(s.to_owned())
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        VertexId(s)
    }
}

impl AsRef<str> for VertexId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveVertex {
    pub id: VertexId,
    /// Self-intersection number.
    pub weight: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// A simple graph of weighted curves.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedDualGraph {
    vertices: BTreeMap<VertexId, CurveVertex>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

/// `I(D)` in a fixed vertex ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionMatrix {
    pub ordering: Vec<VertexId>,
    pub entries: SquareMatrix<i64>,
}

impl IntersectionMatrix {
    /// `-I(D)` lifted to an exact scalar type.
    pub fn negated<T: ExactInt>(&self) -> SquareMatrix<T> {
        self.entries.map(|&v| T::from(-v))
    }
}

impl WeightedDualGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from `(id, weight)` pairs and edges.
    pub fn from_parts<I, S, E, A>(vertices: I, edges: E) -> Result<Self>
    where
        I: IntoIterator<Item = (S, i64)>,
        S: Into<VertexId>,
        E: IntoIterator<Item = (A, A)>,
        A: Into<VertexId>,
    {
        let mut g = WeightedDualGraph::new();
        for (id, w) in vertices {
            g.add_vertex(id, w)?;
        }
        for (a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// A path `ids[0] - ids[1] - ...` with the given weights.
    pub fn chain(weights: &[(impl AsRef<str>, i64)]) -> Self {
        let mut g = WeightedDualGraph::new();
        for (id, w) in weights {
            g.add_vertex(id.as_ref(), *w).expect("chain ids must be distinct");
        }
        for pair in weights.windows(2) {
            g.add_edge(pair[0].0.as_ref(), pair[1].0.as_ref())
                .expect("chain edges are new");
        }
        g
    }

    pub fn add_vertex(&mut self, id: impl Into<VertexId>, weight: i64) -> Result<()> {
        self.add_curve(CurveVertex {
            id: id.into(),
            weight,
            label: None,
        })
    }

    pub fn add_curve(&mut self, v: CurveVertex) -> Result<()> {
        if self.vertices.contains_key(&v.id) {
            return Err(Error::DuplicateVertex(v.id));
        }
        self.adjacency.insert(v.id.clone(), BTreeSet::new());
        self.vertices.insert(v.id.clone(), v);
        Ok(())
    }

    pub fn add_edge(&mut self, a: impl Into<VertexId>, b: impl Into<VertexId>) -> Result<()> {
        let (a, b) = (a.into(), b.into());
        for id in [&a, &b] {
            if !self.vertices.contains_key(id) {
                return Err(Error::UnknownVertex(id.clone()));
            }
        }
        if a == b {
            return Err(Error::SelfLoop(a));
        }
        if self.adjacency[&a].contains(&b) {
            return Err(Error::DuplicateEdge(a, b));
        }
        self.adjacency.get_mut(&a).unwrap().insert(b.clone());
        self.adjacency.get_mut(&b).unwrap().insert(a);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: &VertexId, b: &VertexId) -> Result<()> {
        if !self.has_edge(a, b) {
            return Err(Error::UnknownEdge(a.clone(), b.clone()));
        }
        self.adjacency.get_mut(a).unwrap().remove(b);
        self.adjacency.get_mut(b).unwrap().remove(a);
        Ok(())
    }

    /// Removes a vertex and its incident edges.
    pub fn remove_vertex(&mut self, id: &VertexId) -> Result<CurveVertex> {
        let v = self
            .vertices
            .remove(id)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
        for n in self.adjacency.remove(id).unwrap_or_default() {
            self.adjacency.get_mut(&n).unwrap().remove(id);
        }
        Ok(v)
    }

    pub fn set_weight(&mut self, id: &VertexId, weight: i64) -> Result<()> {
        self.vertices
            .get_mut(id)
            .map(|v| v.weight = weight)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))
    }

    pub fn set_label(&mut self, id: &VertexId, label: Option<String>) -> Result<()> {
        self.vertices
            .get_mut(id)
            .map(|v| v.label = label)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, id: &VertexId) -> bool {
        self.vertices.contains_key(id)
    }

    pub fn vertex(&self, id: &VertexId) -> Option<&CurveVertex> {
        self.vertices.get(id)
    }

    /// Vertices in canonical (lexicographic id) order.
    pub fn vertices(&self) -> impl Iterator<Item = &CurveVertex> {
        self.vertices.values()
    }

    pub fn ids(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.keys()
    }

    pub fn weight(&self, id: &VertexId) -> Result<i64> {
        self.vertices
            .get(id)
            .map(|v| v.weight)
            .ok_or_else(|| Error::UnknownVertex(id.clone()))
    }

    pub fn neighbors(&self, id: &VertexId) -> impl Iterator<Item = &VertexId> {
        self.adjacency.get(id).into_iter().flatten()
    }

    pub fn degree(&self, id: &VertexId) -> usize {
        self.adjacency.get(id).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, a: &VertexId, b: &VertexId) -> bool {
        self.adjacency.get(a).is_some_and(|s| s.contains(b))
    }

    /// Edges as ordered pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        self.adjacency
            .iter()
            .flat_map(|(a, ns)| {
                ns.iter()
                    .filter(move |b| a < *b)
                    .map(move |b| (a.clone(), b.clone()))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    /// `I(D)` in the given ordering, which must be a permutation of the ids.
    pub fn intersection_matrix(&self, ordering: &[VertexId]) -> Result<IntersectionMatrix> {
        let mut seen = BTreeSet::new();
        for id in ordering {
            if !self.contains(id) {
                return Err(Error::InvalidOrdering(format!("unknown id `{id}`")));
            }
            if !seen.insert(id) {
                return Err(Error::InvalidOrdering(format!("duplicate id `{id}`")));
            }
        }
        if seen.len() != self.len() {
            return Err(Error::InvalidOrdering(format!(
                "{} of {} vertices listed",
                seen.len(),
                self.len()
            )));
        }
        let entries = SquareMatrix::from_fn(ordering.len(), |i, j| {
            if i == j {
                self.vertices[&ordering[i]].weight
            } else if self.has_edge(&ordering[i], &ordering[j]) {
                1
            } else {
                0
            }
        });
        Ok(IntersectionMatrix {
            ordering: ordering.to_vec(),
            entries,
        })
    }

    /// `I(D)` in canonical order.
    pub fn canonical_matrix(&self) -> IntersectionMatrix {
        let ordering: Vec<VertexId> = self.ids().cloned().collect();
        self.intersection_matrix(&ordering)
            .expect("canonical ordering is a permutation")
    }

    /// `d(D) = det(-I(D))`; the empty graph has determinant 1.
    pub fn determinant(&self) -> Int {
        self.determinant_in::<Int>()
    }

    pub fn determinant_in<T: ExactInt>(&self) -> T {
        linalg::bareiss_determinant(&self.canonical_matrix().negated::<T>())
    }

    /// Leading principal minors of `-I(D)` in canonical order, up to and
    /// including the first non-positive one.
    pub fn leading_minors(&self) -> Vec<Int> {
        let minors = linalg::leading_principal_minors(&self.canonical_matrix().negated::<Int>());
        let stop = minors
            .iter()
            .position(|d| *d <= Int::from(0))
            .map_or(minors.len(), |p| p + 1);
        minors[..stop].to_vec()
    }

    /// Sylvester's criterion on `-I(D)`. The empty graph is negative definite.
    pub fn is_negative_definite(&self) -> bool {
        linalg::is_positive_definite(&self.canonical_matrix().negated::<Int>())
    }

    /// Maximal connected subgraphs, ordered by smallest vertex id.
    pub fn connected_components(&self) -> Vec<WeightedDualGraph> {
        let mut seen: BTreeSet<&VertexId> = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.ids() {
            if seen.contains(start) {
                continue;
            }
            let mut members = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            seen.insert(start);
            while let Some(v) = queue.pop_front() {
                members.insert(v.clone());
                for n in self.neighbors(v) {
                    if seen.insert(n) {
                        queue.push_back(n);
                    }
                }
            }
            out.push(
                self.induced_subgraph(&members)
                    .expect("component ids belong to the graph"),
            );
        }
        out
    }

    pub fn component_count(&self) -> usize {
        self.connected_components().len()
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Vertices in `ids` and the edges between them.
    pub fn induced_subgraph(&self, ids: &BTreeSet<VertexId>) -> Result<WeightedDualGraph> {
        let mut g = WeightedDualGraph::new();
        for id in ids {
            let v = self
                .vertices
                .get(id)
                .ok_or_else(|| Error::UnknownVertex(id.clone()))?;
            g.add_curve(v.clone())?;
        }
        for id in ids {
            let ns: BTreeSet<VertexId> = self.adjacency[id]
                .iter()
                .filter(|n| ids.contains(*n))
                .cloned()
                .collect();
            g.adjacency.insert(id.clone(), ns);
        }
        Ok(g)
    }

    /// The graph with the given vertices deleted.
    pub fn without(&self, removed: &[&VertexId]) -> WeightedDualGraph {
        let keep: BTreeSet<VertexId> = self
            .ids()
            .filter(|id| !removed.contains(id))
            .cloned()
            .collect();
        self.induced_subgraph(&keep).expect("subset of own ids")
    }

    /// Connected, with `|E| = |V| - 1`.
    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.is_connected() && self.edge_count() + 1 == self.len()
    }

    /// A path: a tree of maximum degree two.
    pub fn is_chain(&self) -> bool {
        self.is_tree() && self.vertices.keys().all(|v| self.degree(v) <= 2)
    }

    /// Some vertex has degree at least three.
    pub fn has_branching(&self) -> bool {
        self.vertices.keys().any(|v| self.degree(v) >= 3)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.ids().cloned().collect()
    }
}
