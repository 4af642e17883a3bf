//! Rationality of the point obtained by contracting a connected negative
//! definite configuration, decided through the fundamental cycle.

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::cycle::{canonical_degree, pa_genus, Cycle};
use crate::error::{Error, Result};
use crate::graph::{VertexId, WeightedDualGraph};
use crate::linalg::{self, SquareMatrix};
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SingularityKind {
    /// The graph is a path: a cyclic quotient point.
    Chain,
    Branched,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub fundamental_cycle: Cycle,
    pub pa_fundamental: Int,
    pub rational: bool,
    pub kind: SingularityKind,
    /// Number of increments performed by the Laufer loop.
    pub iterations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub cycle: Cycle,
    pub iterations: usize,
}

fn check_contractible(g: &WeightedDualGraph) -> Result<()> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    Ok(())
}

/// Laufer's computation sequence, choosing the lowest id when several
/// vertices pair positively with the current cycle.
pub fn fundamental_cycle(g: &WeightedDualGraph) -> Result<Cycle> {
    let order: Vec<VertexId> = g.ids().cloned().collect();
    fundamental_cycle_ordered(g, &order).map(|f| f.cycle)
}

/// Laufer's loop with an explicit tie-break order, which must list every
/// vertex exactly once.
pub fn fundamental_cycle_ordered(
    g: &WeightedDualGraph,
    order: &[VertexId],
) -> Result<FundamentalCycle> {
    check_contractible(g)?;
    let m = g.intersection_matrix(order)?;
    let n = order.len();
    let mut z: Vec<BigInt> = vec![BigInt::one(); n];
    let mut iterations = 0;
    loop {
        let positive = (0..n).find(|&i| {
            let s: BigInt = (0..n)
                .map(|j| BigInt::from(*m.entries.get(i, j)) * &z[j])
                .sum();
            s.is_positive()
        });
        match positive {
            Some(i) => {
                z[i] += 1;
                iterations += 1;
            }
            None => break,
        }
    }
    let cycle = Cycle::new(
        g,
        order
            .iter()
            .cloned()
            .zip(z.into_iter().map(Ratio::from_integer)),
    )?;
    Ok(FundamentalCycle { cycle, iterations })
}

/// Artin's criterion: rational iff `p_a` of the fundamental cycle is zero.
/// Requires a minimal resolution graph (all weights at most -2).
pub fn is_rational(g: &WeightedDualGraph) -> Result<SingularityReport> {
    check_contractible(g)?;
    if let Some(v) = g.vertices().find(|v| v.weight > -2) {
        return Err(Error::Precondition(format!(
            "vertex {} has weight {} > -2",
            v.id, v.weight
        )));
    }
    let order: Vec<VertexId> = g.ids().cloned().collect();
    let f = fundamental_cycle_ordered(g, &order)?;
    let pa = pa_genus(g, &f.cycle)?.to_integer();
    Ok(SingularityReport {
        rational: pa.is_zero(),
        pa_fundamental: pa,
        kind: if g.is_chain() {
            SingularityKind::Chain
        } else {
            SingularityKind::Branched
        },
        fundamental_cycle: f.cycle,
        iterations: f.iterations,
    })
}

/// Default cap on the size of the coefficient box `bound^n`.
pub const DEFAULT_BOX_LIMIT: u128 = 1 << 64;

/// Result of [`max_pa_bounded`]. The maximum is over the box only and says
/// nothing about cycles with larger coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedGenus {
    pub max: Int,
    /// Lexicographically least maximiser in canonical vertex order.
    pub witness: Cycle,
    pub bound: u64,
    /// Search nodes visited, for diagnostics.
    pub nodes: u64,
}

/// Maximum of `p_a(Z)` over integer cycles with every coefficient in
/// `1..=bound`.
pub fn max_pa_bounded(g: &WeightedDualGraph, bound: u64) -> Result<BoundedGenus> {
    max_pa_bounded_with_limit(g, bound, DEFAULT_BOX_LIMIT)
}

pub fn max_pa_bounded_with_limit(
    g: &WeightedDualGraph,
    bound: u64,
    box_limit: u128,
) -> Result<BoundedGenus> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if bound == 0 {
        return Err(Error::Precondition("bound must be at least 1".into()));
    }
    let n = g.len();
    let size = BigInt::from(bound).pow(n as u32);
    if size > BigInt::from(box_limit) {
        return Err(Error::EnumerationLimit(format!(
            "{bound}^{n} coefficient vectors exceed the limit {box_limit}"
        )));
    }
    let overflow = || Error::EnumerationLimit("coefficients too large for exact search".into());
    let m = g.canonical_matrix();
    let ids = m.ordering.clone();
    let a: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| *m.entries.get(i, j) as i128).collect())
        .collect();
    let k: Vec<i128> = ids
        .iter()
        .map(|id| canonical_degree(g.vertex(id).expect("own id")) as i128)
        .collect();
    let mut search = Search {
        n,
        bound: i128::from(bound),
        suffix: (0..=n).map(|s| Relaxation::new(&a, s)).collect(),
        a,
        k,
        x: vec![0; n],
        best: None,
        nodes: 0,
    };
    // Any point of the box is a valid lower bound; the all-ones cycle is
    // cheap, and the fundamental cycle is usually much better when it fits.
    let mut seeds = vec![vec![1i128; n]];
    if let Ok(f) = fundamental_cycle(g) {
        seeds.push(
            ids.iter()
                .map(|id| {
                    f.coeff(id)
                        .to_integer()
                        .to_i128()
                        .unwrap_or(i128::MAX)
                        .min(search.bound)
                })
                .collect(),
        );
    }
    let mut floor = None;
    for s in &seeds {
        let v = search.value(s).ok_or_else(overflow)?;
        floor = Some(floor.map_or(v, |f: i128| f.max(v)));
    }
    search.best = floor.map(|v| (v, None));
    search.descend(0).ok_or_else(overflow)?;
    let (value, witness) = search.best.expect("seeded");
    let witness = witness.expect("the seed is inside the box");
    // p_a = f / 2 + 1, and f = Z.Z + Z.K is always even.
    let max = Int::from(value / 2 + 1);
    let witness = Cycle::new(
        g,
        ids.into_iter()
            .zip(witness.into_iter().map(|c| Ratio::from_integer(Int::from(c)))),
    )?;
    Ok(BoundedGenus {
        max,
        witness,
        bound,
        nodes: search.nodes,
    })
}

/// Precomputed data for relaxing the trailing block `s..n` of `-I`.
struct Relaxation {
    /// `det` and adjugate of the trailing block, when it is positive definite.
    det_adj: Option<(i128, SquareMatrix<i128>)>,
}

impl Relaxation {
    fn new(a: &[Vec<i128>], s: usize) -> Self {
        let n = a.len();
        let block = SquareMatrix::from_fn(n - s, |i, j| -a[s + i][s + j]);
        let det_adj = if linalg::is_positive_definite(&block) {
            linalg::adjugate(&block)
        } else {
            None
        };
        Relaxation { det_adj }
    }
}

struct Search {
    n: usize,
    bound: i128,
    a: Vec<Vec<i128>>,
    k: Vec<i128>,
    suffix: Vec<Relaxation>,
    x: Vec<i128>,
    /// Best objective `Z.Z + Z.K` so far and its witness. The value may come
    /// from a seed whose witness is not yet the lexicographically least one.
    best: Option<(i128, Option<Vec<i128>>)>,
    nodes: u64,
}

impl Search {
    fn value(&self, x: &[i128]) -> Option<i128> {
        let mut total: i128 = 0;
        for i in 0..self.n {
            let mut row: i128 = self.k[i];
            for (aij, xj) in self.a[i].iter().zip(x) {
                row = row.checked_add(aij.checked_mul(*xj)?)?;
            }
            total = total.checked_add(row.checked_mul(x[i])?)?;
        }
        Some(total)
    }

    /// Is the best value over completions of `x[..s]` possibly worth
    /// visiting? `None` on overflow.
    fn promising(&self, s: usize) -> Option<bool> {
        let Some((best, witness)) = &self.best else {
            return Some(true);
        };
        let Some((det, adj)) = &self.suffix[s].det_adj else {
            return Some(true);
        };
        let n = self.n;
        // Fixed part: p^T I p + k_p . p
        let mut fixed: i128 = 0;
        for i in 0..s {
            let mut row = self.k[i];
            for j in 0..s {
                row = row.checked_add(self.a[i][j].checked_mul(self.x[j])?)?;
            }
            fixed = fixed.checked_add(row.checked_mul(self.x[i])?)?;
        }
        // Linear coefficient on the free block: h = 2 I_yp p + k_y
        let mut h = Vec::with_capacity(n - s);
        for i in s..n {
            let mut v: i128 = 0;
            for j in 0..s {
                v = v.checked_add(self.a[i][j].checked_mul(self.x[j])?)?;
            }
            h.push(v.checked_mul(2)?.checked_add(self.k[i])?);
        }
        // sup over reals of fixed + h.y - y^T P y is fixed + h^T P^{-1} h / 4.
        let mut quad: i128 = 0;
        for i in 0..h.len() {
            let mut row: i128 = 0;
            for (j, hj) in h.iter().enumerate() {
                row = row.checked_add(adj.get(i, j).checked_mul(*hj)?)?;
            }
            quad = quad.checked_add(row.checked_mul(h[i])?)?;
        }
        let four_det = det.checked_mul(4)?;
        let lhs = four_det.checked_mul(fixed)?.checked_add(quad)?;
        let rhs = four_det.checked_mul(*best)?;
        Some(if witness.is_some() { lhs > rhs } else { lhs >= rhs })
    }

    fn descend(&mut self, s: usize) -> Option<()> {
        self.nodes += 1;
        if s == self.n {
            let v = self.value(&self.x)?;
            let better = match &self.best {
                None => true,
                Some((b, None)) => v >= *b,
                Some((b, Some(_))) => v > *b,
            };
            if better {
                self.best = Some((v, Some(self.x.clone())));
            }
            return Some(());
        }
        for c in 1..=self.bound {
            self.x[s] = c;
            if self.promising(s + 1)? {
                self.descend(s + 1)?;
            }
        }
        self.x[s] = 0;
        Some(())
    }
}
