//! Backtracking isomorphism search with degree and label pruning.
//!
//! Deterministic: the search always branches on the least unmatched source
//! vertex and tries target candidates in ascending order, so the first hit
//! is the lexicographically least isomorphism (as the sequence of images of
//! the sorted source vertices).

use std::collections::{BTreeMap, BTreeSet};

use super::{SimplicialComplex, SimplicialMap, VertexId};
use crate::labeling::Labeling;

/// Optional constraints for the isomorphism search.
#[derive(Clone, Copy, Default)]
pub struct IsoConstraints<'a> {
    /// Require the first vertex to map to the second.
    pub base: Option<(VertexId, VertexId)>,
    /// Require labels to correspond: a source item is labeled exactly when
    /// its image is, with equal label.
    pub labels: Option<(&'a Labeling, &'a Labeling)>,
}

impl<'a> IsoConstraints<'a> {
    pub fn base(u: VertexId, w: VertexId) -> Self {
        IsoConstraints {
            base: Some((u, w)),
            labels: None,
        }
    }

    pub fn labels(l1: &'a Labeling, l2: &'a Labeling) -> Self {
        IsoConstraints {
            base: None,
            labels: Some((l1, l2)),
        }
    }
}

/// First isomorphism in canonical order satisfying the constraints, if any.
pub fn find_isomorphism(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    constraints: IsoConstraints<'_>,
) -> Option<SimplicialMap> {
    search(k1, k2, constraints, Some(1)).into_iter().next()
}

/// Every isomorphism satisfying the constraints, in canonical order.
pub fn isomorphisms(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    constraints: IsoConstraints<'_>,
) -> Vec<SimplicialMap> {
    search(k1, k2, constraints, None)
}

struct Search<'a> {
    k1: &'a SimplicialComplex,
    k2: &'a SimplicialComplex,
    constraints: IsoConstraints<'a>,
    order: Vec<VertexId>,
    limit: Option<usize>,
    found: Vec<SimplicialMap>,
}

fn search(
    k1: &SimplicialComplex,
    k2: &SimplicialComplex,
    constraints: IsoConstraints<'_>,
    limit: Option<usize>,
) -> Vec<SimplicialMap> {
    if k1.vertex_count() != k2.vertex_count() {
        return Vec::new();
    }
    if k1.dim() != k2.dim() {
        return Vec::new();
    }
    let max_dim = k1.dim().map_or(0, |d| d);
    for d in 0..=max_dim {
        if k1.simplices_of_dim(d).count() != k2.simplices_of_dim(d).count() {
            return Vec::new();
        }
    }
    let mut deg1: Vec<usize> = k1.vertices().map(|v| k1.degree(v).unwrap()).collect();
    let mut deg2: Vec<usize> = k2.vertices().map(|v| k2.degree(v).unwrap()).collect();
    deg1.sort_unstable();
    deg2.sort_unstable();
    if deg1 != deg2 {
        return Vec::new();
    }
    if k1.is_empty() {
        return vec![SimplicialMap::identity(k1)];
    }

    let mut s = Search {
        k1,
        k2,
        constraints,
        order: k1.vertices().collect(),
        limit,
        found: Vec::new(),
    };
    let mut assignment = BTreeMap::new();
    let mut used = BTreeSet::new();
    s.extend(0, &mut assignment, &mut used);
    s.found
}

impl Search<'_> {
    fn done(&self) -> bool {
        self.limit.is_some_and(|l| self.found.len() >= l)
    }

    fn vertex_compatible(&self, u: VertexId, w: VertexId) -> bool {
        if let Some((bu, bw)) = self.constraints.base {
            if (u == bu) != (w == bw) {
                return false;
            }
        }
        if self.k1.degree(u).unwrap() != self.k2.degree(w).unwrap() {
            return false;
        }
        if let Some((l1, l2)) = self.constraints.labels {
            if l1.vertex_label(u) != l2.vertex_label(w) {
                return false;
            }
        }
        true
    }

    fn extend(
        &mut self,
        depth: usize,
        assignment: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
    ) {
        if self.done() {
            return;
        }
        if depth == self.order.len() {
            if let Some(map) = self.finish(assignment) {
                self.found.push(map);
            }
            return;
        }
        let u = self.order[depth];
        let candidates: Vec<VertexId> = self.k2.vertices().filter(|w| !used.contains(w)).collect();
        for w in candidates {
            if !self.vertex_compatible(u, w) {
                continue;
            }
            // adjacency must match in both directions against everything
            // already assigned
            let consistent = assignment.iter().all(|(u2, w2)| {
                let adj1 = self.k1.neighbors(u).unwrap().contains(u2);
                let adj2 = self.k2.neighbors(w).unwrap().contains(w2);
                adj1 == adj2
            });
            if !consistent {
                continue;
            }
            assignment.insert(u, w);
            used.insert(w);
            self.extend(depth + 1, assignment, used);
            assignment.remove(&u);
            used.remove(&w);
            if self.done() {
                return;
            }
        }
    }

    fn finish(&self, assignment: &BTreeMap<VertexId, VertexId>) -> Option<SimplicialMap> {
        // edges are already consistent; confirm every higher simplex lands
        // in the target (counts per dimension were checked up front, so a
        // total injective simplex map is a bijection)
        for s in self.k1.simplices() {
            let image = super::Simplex::new(s.vertices().iter().map(|v| assignment[v]));
            if !self.k2.contains_simplex(&image) {
                return None;
            }
        }
        if let Some((l1, l2)) = self.constraints.labels {
            let n = self.k1.dim()?;
            for s in self.k1.simplices_of_dim(n) {
                let image = super::Simplex::new(s.vertices().iter().map(|v| assignment[v]));
                if l1.simplex_label(s) != l2.simplex_label(&image) {
                    return None;
                }
            }
        }
        SimplicialMap::new(self.k1.clone(), self.k2.clone(), assignment.clone()).ok()
    }
}
