//! Combinatorial manifold, sphere, and ball recognition.
//!
//! Exact answers through dimension 3 via recursive link checks; sphere and
//! ball recognition is exact through dimension 2 (connectivity, Euler
//! characteristic, manifold links) and uses a budgeted collapsibility search
//! for 3-balls. Everything higher returns `Unknown` rather than guessing.

use std::collections::BTreeSet;

use super::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Verdict of the combinatorial manifold check.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ManifoldStatus {
    Closed,
    WithBoundary,
    NotManifold,
    Unknown,
}

impl ManifoldStatus {
    pub fn is_manifold(&self) -> bool {
        matches!(self, ManifoldStatus::Closed | ManifoldStatus::WithBoundary)
    }
}

impl std::fmt::Display for ManifoldStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ManifoldStatus::Closed => "closed-manifold",
            ManifoldStatus::WithBoundary => "manifold-with-boundary",
            ManifoldStatus::NotManifold => "not-manifold",
            ManifoldStatus::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// Three-valued answer for recognition questions that may be undecidable at
/// the implemented dimensions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Recognition {
    Yes,
    No,
    Unknown,
}

impl SimplicialComplex {
    /// Decides whether the complex is a combinatorial `n`-manifold.
    ///
    /// Exact for `n <= 3`. Impure or wrongly sized inputs are
    /// `NotManifold`; for `n >= 4` the answer is `Unknown` unless a cheap
    /// necessary condition already fails.
    pub fn manifold_status(&self, n: usize) -> ManifoldStatus {
        if self.is_empty() || self.dim() != Some(n) || !self.is_pure(n) {
            return ManifoldStatus::NotManifold;
        }
        if n == 0 {
            return ManifoldStatus::Closed;
        }
        let mut has_boundary = false;
        let mut unknown = false;
        for v in self.vertices() {
            let link = self.link(v).expect("vertex of own complex");
            match (link.is_sphere(n - 1), link.is_ball(n - 1)) {
                (Recognition::Yes, _) => {}
                (_, Recognition::Yes) => has_boundary = true,
                (Recognition::No, Recognition::No) => return ManifoldStatus::NotManifold,
                _ => unknown = true,
            }
        }
        if unknown {
            ManifoldStatus::Unknown
        } else if has_boundary {
            ManifoldStatus::WithBoundary
        } else {
            ManifoldStatus::Closed
        }
    }

    /// Is this a combinatorial `d`-sphere? Exact for `d <= 2`.
    pub fn is_sphere(&self, d: usize) -> Recognition {
        if self.is_empty() || self.dim() != Some(d) || !self.is_pure(d) || !self.is_connected() {
            // S^0 is the one disconnected sphere; handle it first
            if d == 0 {
                return if self.dim() == Some(0) && self.vertex_count() == 2 {
                    Recognition::Yes
                } else {
                    Recognition::No
                };
            }
            return Recognition::No;
        }
        match d {
            0 => {
                if self.vertex_count() == 2 {
                    Recognition::Yes
                } else {
                    Recognition::No
                }
            }
            1 => {
                // a single cycle: connected with all degrees 2
                let all_two = self
                    .vertices()
                    .all(|v| self.degree(v).expect("own vertex") == 2);
                if all_two {
                    Recognition::Yes
                } else {
                    Recognition::No
                }
            }
            2 => match self.manifold_status(2) {
                ManifoldStatus::Closed => {
                    if self.euler_characteristic() == 2 {
                        Recognition::Yes
                    } else {
                        Recognition::No
                    }
                }
                _ => Recognition::No,
            },
            _ => {
                let expected_chi = if d.is_multiple_of(2) { 2 } else { 0 };
                if self.euler_characteristic() != expected_chi {
                    return Recognition::No;
                }
                match self.manifold_status(d) {
                    ManifoldStatus::NotManifold | ManifoldStatus::WithBoundary => Recognition::No,
                    _ => Recognition::Unknown,
                }
            }
        }
    }

    /// Is this a combinatorial `d`-ball? Exact for `d <= 2`; dimension 3
    /// combines exact necessary conditions with a budgeted collapse search.
    pub fn is_ball(&self, d: usize) -> Recognition {
        if self.is_empty() || self.dim() != Some(d) || !self.is_pure(d) || !self.is_connected() {
            return Recognition::No;
        }
        match d {
            0 => {
                if self.vertex_count() == 1 {
                    Recognition::Yes
                } else {
                    Recognition::No
                }
            }
            1 => {
                // an arc: two endpoints of degree 1, the rest of degree 2
                let mut ones = 0usize;
                for v in self.vertices() {
                    match self.degree(v).expect("own vertex") {
                        1 => ones += 1,
                        2 => {}
                        _ => return Recognition::No,
                    }
                }
                if ones == 2 {
                    Recognition::Yes
                } else {
                    Recognition::No
                }
            }
            2 => {
                // connected manifold with boundary and Euler characteristic 1
                // is a disk; no other compact surface qualifies
                if self.manifold_status(2) == ManifoldStatus::WithBoundary
                    && self.euler_characteristic() == 1
                {
                    Recognition::Yes
                } else {
                    Recognition::No
                }
            }
            3 => {
                match self.manifold_status(3) {
                    ManifoldStatus::WithBoundary => {}
                    ManifoldStatus::Closed | ManifoldStatus::NotManifold => return Recognition::No,
                    ManifoldStatus::Unknown => return Recognition::Unknown,
                }
                if self.euler_characteristic() != 1 {
                    return Recognition::No;
                }
                match boundary_complex(self) {
                    Ok(b) => {
                        if b.is_sphere(2) != Recognition::Yes {
                            return Recognition::No;
                        }
                    }
                    Err(_) => return Recognition::Unknown,
                }
                // a collapsible manifold with boundary is a ball
                if is_collapsible(self, 20_000) {
                    Recognition::Yes
                } else {
                    Recognition::Unknown
                }
            }
            _ => {
                if self.euler_characteristic() != 1 {
                    return Recognition::No;
                }
                match self.manifold_status(d) {
                    ManifoldStatus::NotManifold | ManifoldStatus::Closed => Recognition::No,
                    _ => Recognition::Unknown,
                }
            }
        }
    }
}

/// The subcomplex of codimension-one simplices lying in exactly one top
/// simplex, with their faces.
///
/// Errors when the input is definitely not a manifold; an `Unknown` status
/// is allowed and the boundary is computed mechanically.
pub fn boundary_complex(k: &SimplicialComplex) -> Result<SimplicialComplex> {
    let n = k
        .dim()
        .ok_or_else(|| Error::NotAManifold("empty complex".into()))?;
    if k.manifold_status(n) == ManifoldStatus::NotManifold {
        return Err(Error::NotAManifold(
            "boundary is defined for combinatorial manifolds only".into(),
        ));
    }
    if n == 0 {
        return Ok(SimplicialComplex::empty());
    }
    let tops: Vec<&Simplex> = k.simplices_of_dim(n).collect();
    let mut boundary = Vec::new();
    for f in k.simplices_of_dim(n - 1) {
        let cofaces = tops.iter().filter(|t| f.is_face_of(t)).count();
        if cofaces == 1 {
            boundary.push(f.clone());
        }
    }
    Ok(SimplicialComplex::from_simplices(boundary))
}

/// Searches for a sequence of elementary collapses down to a single vertex.
///
/// Deterministic greedy choice with backtracking, bounded by `budget`
/// expansions; `false` means "no collapse found within budget", not a proof
/// of non-collapsibility.
pub fn is_collapsible(k: &SimplicialComplex, budget: usize) -> bool {
    if k.is_empty() {
        return false;
    }
    if k.simplex_count() == 1 {
        return true;
    }
    let simplices: BTreeSet<Simplex> = k.simplices().cloned().collect();
    let mut budget = budget;
    collapse_search(simplices, &mut budget)
}

fn collapse_search(simplices: BTreeSet<Simplex>, budget: &mut usize) -> bool {
    if simplices.len() == 1 {
        return simplices.iter().next().is_some_and(|s| s.dim() == 0);
    }
    if *budget == 0 {
        return false;
    }
    *budget -= 1;

    // free pairs (t, s): t is a proper face of exactly one simplex s
    let mut free_pairs: Vec<(Simplex, Simplex)> = Vec::new();
    for t in &simplices {
        let mut containing = simplices.iter().filter(|s| *s != t && t.is_face_of(s));
        let first = containing.next();
        let second = containing.next();
        if let (Some(s), None) = (first, second) {
            free_pairs.push((t.clone(), s.clone()));
        }
    }
    // collapse highest-dimensional pairs first; lexicographic within a level
    free_pairs.sort_by(|a, b| b.1.dim().cmp(&a.1.dim()).then_with(|| a.cmp(b)));
    for (t, s) in free_pairs {
        let mut next = simplices.clone();
        next.remove(&t);
        next.remove(&s);
        if collapse_search(next, budget) {
            return true;
        }
        if *budget == 0 {
            return false;
        }
    }
    false
}
