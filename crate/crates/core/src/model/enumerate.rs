//! Bounded enumeration of closed connected combinatorial manifolds, up to
//! isomorphism.
//!
//! Dimension 1 is just the cycles. Dimension 2 generates triangle sets by
//! always completing the least edge that still lies in a single triangle,
//! introducing new vertices in canonical order; results are deduplicated by
//! explicit isomorphism. Feasible for the vertex counts the toolkit needs
//! (single digits), not a general-purpose census.

use std::collections::BTreeMap;

use crate::complex::{
    find_isomorphism, IsoConstraints, ManifoldStatus, Simplex, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::fixtures;

/// All closed connected combinatorial n-manifolds on at most `max_vertices`
/// vertices, up to isomorphism, in deterministic order. Supports n = 1, 2.
pub fn enumerate_closed_manifolds(n: usize, max_vertices: usize) -> Result<Vec<SimplicialComplex>> {
    match n {
        1 => Ok((3..=max_vertices).map(fixtures::cycle).collect()),
        2 => {
            let mut out = Vec::new();
            for v in 4..=max_vertices {
                out.extend(surfaces_on(v));
            }
            Ok(out)
        }
        _ => Err(Error::EnumerationDimension(n)),
    }
}

type Edge = (u32, u32);

struct SurfaceSearch {
    target_vertices: u32,
    triangles: Vec<[u32; 3]>,
    edge_count: BTreeMap<Edge, u8>,
    max_used: u32,
    found: Vec<SimplicialComplex>,
}

/// Closed connected surfaces using exactly `v` vertices, up to isomorphism.
fn surfaces_on(v: usize) -> Vec<SimplicialComplex> {
    if v < 4 {
        return Vec::new();
    }
    let mut search = SurfaceSearch {
        target_vertices: v as u32,
        triangles: vec![[0, 1, 2]],
        edge_count: BTreeMap::from([((0, 1), 1), ((0, 2), 1), ((1, 2), 1)]),
        max_used: 2,
        found: Vec::new(),
    };
    search.run();
    search.found
}

fn edge(a: u32, b: u32) -> Edge {
    (a.min(b), a.max(b))
}

impl SurfaceSearch {
    fn run(&mut self) {
        let open = self
            .edge_count
            .iter()
            .find(|(_, c)| **c == 1)
            .map(|(e, _)| *e);
        let Some((a, b)) = open else {
            self.finish();
            return;
        };
        // upper bound on vertices we may still touch: existing plus one new
        let limit = (self.max_used + 2).min(self.target_vertices);
        for w in 0..limit {
            if w == a || w == b {
                continue;
            }
            let tri = {
                let mut t = [a, b, w];
                t.sort_unstable();
                t
            };
            if self.triangles.contains(&tri) {
                continue;
            }
            let ea = edge(a, w);
            let eb = edge(b, w);
            if self.edge_count.get(&ea).copied().unwrap_or(0) >= 2
                || self.edge_count.get(&eb).copied().unwrap_or(0) >= 2
            {
                continue;
            }
            // a vertex whose link already closed up cannot take new edges
            if self.is_saturated(w) && (!self.has_edge(ea) || !self.has_edge(eb)) {
                continue;
            }

            self.triangles.push(tri);
            *self.edge_count.entry(edge(a, b)).or_insert(0) += 1;
            *self.edge_count.entry(ea).or_insert(0) += 1;
            *self.edge_count.entry(eb).or_insert(0) += 1;
            let prev_max = self.max_used;
            self.max_used = self.max_used.max(w);

            self.run();

            self.max_used = prev_max;
            self.triangles.pop();
            for e in [edge(a, b), ea, eb] {
                let c = self.edge_count.get_mut(&e).expect("just incremented");
                *c -= 1;
                if *c == 0 {
                    self.edge_count.remove(&e);
                }
            }
        }
    }

    fn has_edge(&self, e: Edge) -> bool {
        self.edge_count.contains_key(&e)
    }

    fn is_saturated(&self, w: u32) -> bool {
        let mut any = false;
        for ((a, b), c) in &self.edge_count {
            if *a == w || *b == w {
                any = true;
                if *c < 2 {
                    return false;
                }
            }
        }
        any
    }

    fn finish(&mut self) {
        if self.max_used + 1 != self.target_vertices {
            return;
        }
        let complex = SimplicialComplex::from_maximal(
            self.triangles
                .iter()
                .map(|t| Simplex::from_ids(&[t[0], t[1], t[2]])),
        );
        if complex.manifold_status(2) != ManifoldStatus::Closed {
            return;
        }
        // growth along open edges keeps everything attached to the seed
        // triangle, so the result is connected; dedupe by isomorphism
        if self
            .found
            .iter()
            .any(|k| find_isomorphism(k, &complex, IsoConstraints::default()).is_some())
        {
            return;
        }
        self.found.push(complex);
    }
}
