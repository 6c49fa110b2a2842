//! Abstract simplicial complexes over ordered vertex identifiers.
//!
//! A complex stores its full face-closed simplex set, so face queries and
//! closure checks are direct set lookups. All operations are pure and
//! deterministic; iteration order is the lexicographic order on sorted
//! vertex sequences.

mod iso;
mod map;
mod recognition;

pub use iso::{find_isomorphism, isomorphisms, IsoConstraints};
pub use map::SimplicialMap;
pub use recognition::{boundary_complex, is_collapsible, ManifoldStatus, Recognition};

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Identifier of a vertex, unique within a complex and totally ordered.
///
/// The ordering is used for tie-breaking in every search, which is what makes
/// the searches deterministic.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A simplex: a sorted, duplicate-free, nonempty sequence of vertices.
///
/// Equality is set equality. Dimension is one less than the vertex count.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    /// Builds a simplex from vertices, sorting and removing duplicates.
    ///
    /// Panics on an empty vertex set; the empty simplex is not represented.
    pub fn new(vertices: impl IntoIterator<Item = VertexId>) -> Self {
        let mut vs: Vec<VertexId> = vertices.into_iter().collect();
        vs.sort_unstable();
        vs.dedup();
        assert!(!vs.is_empty(), "a simplex needs at least one vertex");
        Simplex(vs)
    }

    pub fn from_ids(ids: &[u32]) -> Self {
        Simplex::new(ids.iter().map(|&i| VertexId(i)))
    }

    pub fn vertex(v: VertexId) -> Self {
        Simplex(vec![v])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// All nonempty faces, the simplex itself included.
    pub fn faces(&self) -> Vec<Simplex> {
        let k = self.0.len();
        let mut out = Vec::with_capacity((1 << k) - 1);
        for mask in 1u32..(1 << k) {
            let vs: Vec<VertexId> = (0..k)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.0[i])
                .collect();
            out.push(Simplex(vs));
        }
        out
    }

    /// Codimension-one faces.
    pub fn facets(&self) -> Vec<Simplex> {
        if self.0.len() == 1 {
            return Vec::new();
        }
        (0..self.0.len())
            .map(|skip| {
                Simplex(
                    self.0
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| *i != skip)
                        .map(|(_, v)| *v)
                        .collect(),
                )
            })
            .collect()
    }

    /// The simplex with `v` adjoined. Panics if `v` is already a vertex.
    pub fn join(&self, v: VertexId) -> Simplex {
        assert!(!self.contains(v), "join vertex already present");
        let mut vs = self.0.clone();
        vs.push(v);
        vs.sort_unstable();
        Simplex(vs)
    }

    pub fn without(&self, v: VertexId) -> Simplex {
        assert!(self.contains(v) && self.0.len() > 1);
        Simplex(self.0.iter().copied().filter(|u| *u != v).collect())
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// Simplicial distance between two vertices: length of a shortest edge path.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Distance {
    Finite(usize),
    Infinite,
}

impl Distance {
    pub fn is_finite(&self) -> bool {
        matches!(self, Distance::Finite(_))
    }

    pub fn at_most(&self, bound: usize) -> bool {
        match self {
            Distance::Finite(k) => *k <= bound,
            Distance::Infinite => false,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Finite(k) => write!(f, "{k}"),
            Distance::Infinite => write!(f, "infinite"),
        }
    }
}

/// A face-closed set of simplices.
///
/// Every face of a stored simplex is stored, and every vertex appears as a
/// 0-simplex. Values are immutable after construction.
#[derive(Clone, Debug)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    vertices: BTreeSet<VertexId>,
    adjacency: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

impl PartialOrd for SimplicialComplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SimplicialComplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.simplices.cmp(&other.simplices)
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex {
            simplices: BTreeSet::new(),
            vertices: BTreeSet::new(),
            adjacency: BTreeMap::new(),
        }
    }

    /// Builds the face closure of the given simplices.
    pub fn from_simplices(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        let mut set = BTreeSet::new();
        for s in simplices {
            for f in s.faces() {
                set.insert(f);
            }
        }
        let mut vertices = BTreeSet::new();
        let mut adjacency: BTreeMap<VertexId, BTreeSet<VertexId>> = BTreeMap::new();
        for s in &set {
            match s.vertices() {
                [v] => {
                    vertices.insert(*v);
                    adjacency.entry(*v).or_default();
                }
                [u, v] => {
                    adjacency.entry(*u).or_default().insert(*v);
                    adjacency.entry(*v).or_default().insert(*u);
                }
                _ => {}
            }
        }
        SimplicialComplex {
            simplices: set,
            vertices,
            adjacency,
        }
    }

    /// Same as [`from_simplices`](Self::from_simplices); named for callers
    /// holding only the maximal simplices.
    pub fn from_maximal(simplices: impl IntoIterator<Item = Simplex>) -> Self {
        Self::from_simplices(simplices)
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest simplex dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.dim()).max()
    }

    pub fn simplices(&self) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Simplex> {
        self.simplices.iter().filter(move |s| s.dim() == d)
    }

    /// Simplices of top dimension.
    pub fn top_simplices(&self) -> Vec<&Simplex> {
        match self.dim() {
            Some(n) => self.simplices_of_dim(n).collect(),
            None => Vec::new(),
        }
    }

    /// Simplices that are not a proper face of any stored simplex.
    pub fn maximal_simplices(&self) -> Vec<&Simplex> {
        let mut non_maximal: BTreeSet<&Simplex> = BTreeSet::new();
        let mut owned_faces: BTreeSet<Simplex> = BTreeSet::new();
        for s in &self.simplices {
            for f in s.faces() {
                if f != *s {
                    owned_faces.insert(f);
                }
            }
        }
        for s in &self.simplices {
            if owned_faces.contains(s) {
                non_maximal.insert(s);
            }
        }
        self.simplices
            .iter()
            .filter(|s| !non_maximal.contains(s))
            .collect()
    }

    pub fn contains_simplex(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn max_vertex_id(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    /// A vertex id strictly larger than every id in use.
    pub fn fresh_vertex(&self) -> VertexId {
        VertexId(self.max_vertex_id().map_or(0, |v| v.0 + 1))
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&BTreeSet<VertexId>> {
        self.adjacency.get(&v).ok_or(Error::UnknownVertex(v))
    }

    /// Number of edges incident to `v`.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        Ok(self.neighbors(v)?.len())
    }

    /// Length of a shortest edge path between `u` and `v`.
    pub fn distance(&self, u: VertexId, v: VertexId) -> Result<Distance> {
        if !self.contains_vertex(u) {
            return Err(Error::UnknownVertex(u));
        }
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        if u == v {
            return Ok(Distance::Finite(0));
        }
        let mut seen: BTreeMap<VertexId, usize> = BTreeMap::new();
        seen.insert(u, 0);
        let mut queue = VecDeque::from([u]);
        while let Some(w) = queue.pop_front() {
            let d = seen[&w];
            for &x in &self.adjacency[&w] {
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(x) {
                    if x == v {
                        return Ok(Distance::Finite(d + 1));
                    }
                    e.insert(d + 1);
                    queue.push_back(x);
                }
            }
        }
        Ok(Distance::Infinite)
    }

    /// Vertices within distance `r` of `v`.
    pub fn ball_vertices(&self, v: VertexId, r: usize) -> Result<BTreeSet<VertexId>> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        let mut seen: BTreeMap<VertexId, usize> = BTreeMap::new();
        seen.insert(v, 0);
        let mut queue = VecDeque::from([v]);
        while let Some(w) = queue.pop_front() {
            let d = seen[&w];
            if d == r {
                continue;
            }
            for &x in &self.adjacency[&w] {
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(x) {
                    e.insert(d + 1);
                    queue.push_back(x);
                }
            }
        }
        Ok(seen.into_keys().collect())
    }

    /// The `r`-neighborhood: all simplices whose vertices lie within
    /// distance `r` of `v`.
    pub fn neighborhood(&self, v: VertexId, r: usize) -> Result<SimplicialComplex> {
        let ball = self.ball_vertices(v, r)?;
        Ok(SimplicialComplex::from_simplices(
            self.simplices
                .iter()
                .filter(|s| s.vertices().iter().all(|u| ball.contains(u)))
                .cloned(),
        ))
    }

    /// The closed star: all simplices containing `v`, with their faces.
    ///
    /// This is the smallest subcomplex whose underlying space is a
    /// neighborhood of `v`.
    pub fn closed_star(&self, v: VertexId) -> Result<SimplicialComplex> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(SimplicialComplex::from_simplices(
            self.simplices.iter().filter(|s| s.contains(v)).cloned(),
        ))
    }

    /// Simplices containing every vertex of `s` and all their faces: the
    /// smallest subcomplex that is a neighborhood of the interior of `s`.
    pub fn face_star(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains_simplex(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        Ok(SimplicialComplex::from_simplices(
            self.simplices.iter().filter(|t| s.is_face_of(t)).cloned(),
        ))
    }

    /// The link of `v`: faces `t` with `v` not in `t` and `t + v` stored.
    pub fn link(&self, v: VertexId) -> Result<SimplicialComplex> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
        Ok(SimplicialComplex::from_simplices(
            self.simplices
                .iter()
                .filter(|s| !s.contains(v) && self.simplices.contains(&s.join(v)))
                .cloned(),
        ))
    }

    /// The link of a simplex: faces disjoint from `s` whose join with `s`
    /// is stored.
    pub fn simplex_link(&self, s: &Simplex) -> Result<SimplicialComplex> {
        if !self.contains_simplex(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        Ok(SimplicialComplex::from_simplices(
            self.simplices
                .iter()
                .filter(|t| {
                    t.vertices().iter().all(|v| !s.contains(*v)) && {
                        let join =
                            Simplex::new(t.vertices().iter().chain(s.vertices().iter()).copied());
                        self.simplices.contains(&join)
                    }
                })
                .cloned(),
        ))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    /// Connected components of the vertex set under the edge relation.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut remaining: BTreeSet<VertexId> = self.vertices.clone();
        let mut out = Vec::new();
        while let Some(&start) = remaining.iter().next() {
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start]);
            remaining.remove(&start);
            comp.insert(start);
            while let Some(w) = queue.pop_front() {
                for &x in &self.adjacency[&w] {
                    if remaining.remove(&x) {
                        comp.insert(x);
                        queue.push_back(x);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// True when every maximal simplex has dimension `n`.
    pub fn is_pure(&self, n: usize) -> bool {
        !self.is_empty() && self.maximal_simplices().iter().all(|s| s.dim() == n)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.iter().all(|s| other.contains_simplex(s))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            self.simplices.iter().chain(other.simplices.iter()).cloned(),
        )
    }

    pub fn intersection(&self, other: &SimplicialComplex) -> SimplicialComplex {
        SimplicialComplex::from_simplices(
            self.simplices
                .iter()
                .filter(|s| other.contains_simplex(s))
                .cloned(),
        )
    }

    /// Renames vertices through an injective map defined on all vertices.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<SimplicialComplex> {
        let images: BTreeSet<VertexId> = map.values().copied().collect();
        if images.len() != map.len() {
            return Err(Error::RelabelNotInjective);
        }
        let mut renamed = Vec::with_capacity(self.simplices.len());
        for s in &self.simplices {
            let vs: Result<Vec<VertexId>> = s
                .vertices()
                .iter()
                .map(|v| map.get(v).copied().ok_or(Error::MapNotTotal(*v)))
                .collect();
            renamed.push(Simplex::new(vs?));
        }
        Ok(SimplicialComplex::from_simplices(renamed))
    }

    /// Checks the face-closure invariant by enumeration. Always true for
    /// complexes built through the constructors; exposed for tests.
    pub fn is_face_closed(&self) -> bool {
        self.simplices
            .iter()
            .all(|s| s.faces().iter().all(|f| self.simplices.contains(f)))
            && self
                .vertices
                .iter()
                .all(|v| self.simplices.contains(&Simplex::vertex(*v)))
    }
}

/// Disjoint union with vertex ids shifted per part; returns the new complex
/// and, per part, the offset added to its vertex ids.
pub fn disjoint_union(parts: &[&SimplicialComplex]) -> (SimplicialComplex, Vec<u32>) {
    let mut offsets = Vec::with_capacity(parts.len());
    let mut next = 0u32;
    let mut all = Vec::new();
    for part in parts {
        offsets.push(next);
        for s in part.simplices() {
            all.push(Simplex::new(
                s.vertices().iter().map(|v| VertexId(v.0 + next)),
            ));
        }
        next += part.max_vertex_id().map_or(0, |v| v.0 + 1);
    }
    (SimplicialComplex::from_simplices(all), offsets)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn faces_are_closed_after_construction() {
        let k = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])]);
        assert!(k.is_face_closed());
        assert_eq!(k.simplex_count(), 7);
        assert_eq!(k.dim(), Some(2));
    }

    #[test]
    fn degree_on_fixtures() {
        let octa = fixtures::octahedron();
        for u in octa.vertices() {
            assert_eq!(octa.degree(u).unwrap(), 4);
        }
        let single = fixtures::single_vertex();
        assert_eq!(single.degree(v(0)).unwrap(), 0);
        let torus = fixtures::torus_7();
        for u in torus.vertices() {
            assert_eq!(torus.degree(u).unwrap(), 6);
        }
        assert!(octa.degree(v(99)).is_err());
    }

    #[test]
    fn distance_on_fixtures() {
        let c6 = fixtures::cycle(6);
        assert_eq!(c6.distance(v(0), v(3)).unwrap(), Distance::Finite(3));
        assert_eq!(c6.distance(v(2), v(2)).unwrap(), Distance::Finite(0));
        let two = fixtures::disjoint_edges();
        assert_eq!(two.distance(v(0), v(2)).unwrap(), Distance::Infinite);
        assert!(two.distance(v(0), v(9)).is_err());
    }

    #[test]
    fn neighborhood_on_fixtures() {
        let c6 = fixtures::cycle(6);
        let n1 = c6.neighborhood(v(0), 1).unwrap();
        assert_eq!(n1.vertex_count(), 3);
        assert_eq!(n1.simplices_of_dim(1).count(), 2);

        let n0 = c6.neighborhood(v(0), 0).unwrap();
        assert_eq!(n0.simplex_count(), 1);

        let octa = fixtures::octahedron();
        let star = octa.neighborhood(v(0), 1).unwrap();
        assert_eq!(star.simplices_of_dim(2).count(), 4);
        assert_eq!(star, octa.closed_star(v(0)).unwrap());
    }

    #[test]
    fn neighborhoods_are_monotone() {
        let torus = fixtures::torus_7();
        for r in 0..3 {
            let small = torus.neighborhood(v(0), r).unwrap();
            let big = torus.neighborhood(v(0), r + 1).unwrap();
            assert!(small.is_subcomplex_of(&big));
        }
        // eccentricity of any torus vertex is 1: the 1-skeleton is complete
        assert_eq!(torus.neighborhood(v(0), 1).unwrap(), torus);
    }

    #[test]
    fn link_on_fixtures() {
        let octa = fixtures::octahedron();
        let link = octa.link(v(0)).unwrap();
        assert_eq!(link.vertex_count(), 4);
        assert!(link.vertices().all(|u| link.degree(u).unwrap() == 2));

        let tri = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2])]);
        let opp = tri.link(v(0)).unwrap();
        assert_eq!(
            opp,
            SimplicialComplex::from_maximal([Simplex::from_ids(&[1, 2])])
        );

        let edge = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1])]);
        let other = edge.link(v(0)).unwrap();
        assert_eq!(
            other,
            SimplicialComplex::from_maximal([Simplex::from_ids(&[1])])
        );
    }

    #[test]
    fn closed_star_in_small_cycle_is_proper() {
        // N(v,1) in a 3-cycle is the whole cycle; the closed star is the
        // 2-edge path around v.
        let c3 = fixtures::cycle(3);
        assert_eq!(c3.neighborhood(v(0), 1).unwrap(), c3);
        let star = c3.closed_star(v(0)).unwrap();
        assert_eq!(star.simplices_of_dim(1).count(), 2);
    }

    #[test]
    fn euler_characteristic_on_fixtures() {
        assert_eq!(fixtures::octahedron().euler_characteristic(), 2);
        assert_eq!(fixtures::torus_7().euler_characteristic(), 0);
        assert_eq!(fixtures::annulus_6().euler_characteristic(), 0);
        assert_eq!(fixtures::wheel(5).euler_characteristic(), 1);
    }

    #[test]
    fn disjoint_union_offsets() {
        let (q, offsets) = disjoint_union(&[&fixtures::cycle(3), &fixtures::cycle(6)]);
        assert_eq!(offsets, vec![0, 3]);
        assert_eq!(q.vertex_count(), 9);
        assert_eq!(q.components().len(), 2);
    }

    #[test]
    fn maximal_simplices_of_wheel() {
        let w = fixtures::wheel(4);
        let max = w.maximal_simplices();
        assert_eq!(max.len(), 4);
        assert!(max.iter().all(|s| s.dim() == 2));
    }
}
