//! Stellar, chain, and standard subdivisions, and the label codec built on
//! them.
//!
//! A standard subdivision of an n-simplex (one stellar subdivision followed
//! by one chain per facet, of lengths N, N+1, ..., N+n) leaves the boundary
//! unsubdivided, gives the n+1 original vertices distinct degrees
//! `n+1 + sum_{i != j}(N+i)`, and keeps every interior degree at most
//! `2(n+1)`. Choosing disjoint degree ranges per labeled-simplex class makes
//! vertex labels recoverable from degrees alone, which is what the codec
//! (`encode`/`decode`) exploits.

pub mod codec;

pub use codec::{
    build_family, decode, decode_with_blocks, encode, DecodedBlock, FamilyEntry, SimplexClass,
    SubdivisionFamily,
};

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// The outcome of a subdivision: the new complex, where each top simplex
/// came from, and the vertices that were added.
#[derive(Clone, Debug)]
pub struct SubdivisionRecord {
    original: SimplicialComplex,
    result: SimplicialComplex,
    simplex_origin: BTreeMap<Simplex, Simplex>,
    new_vertices: BTreeSet<VertexId>,
}

impl SubdivisionRecord {
    pub fn original(&self) -> &SimplicialComplex {
        &self.original
    }

    pub fn result(&self) -> &SimplicialComplex {
        &self.result
    }

    /// For each top simplex of the result, the top simplex of the original
    /// complex containing it.
    pub fn simplex_origin(&self) -> &BTreeMap<Simplex, Simplex> {
        &self.simplex_origin
    }

    pub fn new_vertices(&self) -> &BTreeSet<VertexId> {
        &self.new_vertices
    }

    /// Runs `next` on our result and composes the origin maps.
    fn then(self, next: SubdivisionRecord) -> SubdivisionRecord {
        let mut origin = BTreeMap::new();
        for (s, mid) in &next.simplex_origin {
            let start = self.simplex_origin.get(mid).unwrap_or(mid).clone();
            origin.insert(s.clone(), start);
        }
        SubdivisionRecord {
            original: self.original,
            result: next.result,
            simplex_origin: origin,
            new_vertices: self
                .new_vertices
                .union(&next.new_vertices)
                .cloned()
                .collect(),
        }
    }
}

fn require_top(k: &SimplicialComplex, s: &Simplex) -> Result<usize> {
    if !k.contains_simplex(s) {
        return Err(Error::UnknownSimplex(s.clone()));
    }
    let n = s.dim();
    if k.dim() != Some(n) {
        return Err(Error::NotTopSimplex(s.clone()));
    }
    if n < 2 {
        return Err(Error::SubdivisionDimension(n));
    }
    Ok(n)
}

/// Replaces a top simplex by the cone from a fresh interior vertex over its
/// boundary, producing n+1 top simplices.
pub fn stellar_subdivide(k: &SimplicialComplex, s: &Simplex) -> Result<SubdivisionRecord> {
    let n = require_top(k, s)?;
    let x = k.fresh_vertex();
    let mut simplices: Vec<Simplex> = k.simplices().filter(|t| *t != s).cloned().collect();
    for facet in s.facets() {
        simplices.push(facet.join(x));
    }
    let result = SimplicialComplex::from_simplices(simplices);
    let mut origin = BTreeMap::new();
    for t in result.simplices_of_dim(n) {
        if t.contains(x) {
            origin.insert(t.clone(), s.clone());
        } else {
            origin.insert(t.clone(), t.clone());
        }
    }
    Ok(SubdivisionRecord {
        original: k.clone(),
        result,
        simplex_origin: origin,
        new_vertices: BTreeSet::from([x]),
    })
}

/// A k-step chain subdivision of `s` based on its facet `base`: stellar
/// subdivisions applied k times, each inside the latest simplex spanned by
/// the new vertex and `base`. Adds exactly k vertices; every vertex of
/// `base` gains k in degree.
pub fn chain_subdivide(
    k: &SimplicialComplex,
    s: &Simplex,
    base: &Simplex,
    steps: usize,
) -> Result<SubdivisionRecord> {
    let n = require_top(k, s)?;
    if steps == 0 {
        return Err(Error::EmptyChain);
    }
    if base.dim() + 1 != n || !base.is_face_of(s) {
        return Err(Error::NotAFacet {
            simplex: s.clone(),
            facet: base.clone(),
        });
    }
    let mut record = stellar_subdivide(k, s)?;
    let mut current = base.join(*record.new_vertices.iter().next().expect("one new vertex"));
    for _ in 1..steps {
        let step = stellar_subdivide(&record.result, &current)?;
        current = base.join(*step.new_vertices.iter().next().expect("one new vertex"));
        record = record.then(step);
    }
    Ok(record)
}

/// Degree that boundary vertex `j` of an n-simplex acquires in a standard
/// subdivision with parameter `big_n`: `n+1 + sum_{i != j}(big_n + i)`.
pub fn expected_boundary_degree(n: usize, big_n: usize, j: usize) -> Result<usize> {
    if big_n == 0 {
        return Err(Error::BadDegreeParameter);
    }
    if j > n {
        return Err(Error::DegreeIndex { index: j, dim: n });
    }
    Ok(n + 1 + n * big_n + n * (n + 1) / 2 - j)
}

/// Smallest boundary degree of a standard subdivision with parameter
/// `big_n`, i.e. the degree of the last vertex.
pub fn min_boundary_degree(n: usize, big_n: usize) -> usize {
    n + 1 + n * big_n + n * (n + 1) / 2 - n
}

/// The standard subdivision of a top n-simplex: one stellar subdivision at
/// a center vertex, then for the facet opposite vertex j (in sorted order)
/// an (N+j)-chain based on it.
///
/// Boundary degrees match [`expected_boundary_degree`]; the center ends at
/// degree 2(n+1) and every other interior vertex at n+1 or n+2; the result
/// has no nontrivial automorphisms.
pub fn standard_subdivide(
    k: &SimplicialComplex,
    s: &Simplex,
    big_n: usize,
) -> Result<SubdivisionRecord> {
    require_top(k, s)?;
    if big_n == 0 {
        return Err(Error::BadDegreeParameter);
    }
    let mut record = stellar_subdivide(k, s)?;
    let center = *record.new_vertices.iter().next().expect("one new vertex");
    let originals = s.vertices().to_vec();
    for (j, skipped) in originals.iter().enumerate() {
        let base = s.without(*skipped);
        let piece = base.join(center);
        let step = chain_subdivide(&record.result, &piece, &base, big_n + j)?;
        record = record.then(step);
    }
    Ok(record)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn triangle() -> (SimplicialComplex, Simplex) {
        (fixtures::full_simplex(2), Simplex::from_ids(&[0, 1, 2]))
    }

    #[test]
    fn stellar_of_triangle() {
        let (k, s) = triangle();
        let rec = stellar_subdivide(&k, &s).unwrap();
        assert_eq!(rec.result().simplices_of_dim(2).count(), 3);
        assert_eq!(rec.new_vertices().len(), 1);
        let x = *rec.new_vertices().iter().next().unwrap();
        assert_eq!(rec.result().degree(x).unwrap(), 3);
        // the boundary is untouched
        assert!(fixtures::boundary_of_simplex(2).is_subcomplex_of(rec.result()));
    }

    #[test]
    fn stellar_of_tetrahedron() {
        let k = fixtures::full_simplex(3);
        let rec = stellar_subdivide(&k, &Simplex::from_ids(&[0, 1, 2, 3])).unwrap();
        assert_eq!(rec.result().simplices_of_dim(3).count(), 4);
    }

    #[test]
    fn stellar_preserves_euler_characteristic() {
        let octa = fixtures::octahedron();
        let face = Simplex::from_ids(&[0, 1, 2]);
        let rec = stellar_subdivide(&octa, &face).unwrap();
        assert_eq!(
            rec.result().euler_characteristic(),
            octa.euler_characteristic()
        );
        assert_eq!(rec.result().vertex_count(), 7);
        assert_eq!(rec.result().simplices_of_dim(2).count(), 10);
    }

    #[test]
    fn stellar_rejects_faces_and_low_dimension() {
        let octa = fixtures::octahedron();
        assert!(stellar_subdivide(&octa, &Simplex::from_ids(&[0, 1])).is_err());
        let c3 = fixtures::cycle(3);
        assert!(stellar_subdivide(&c3, &Simplex::from_ids(&[0, 1])).is_err());
    }

    #[test]
    fn one_step_chain_is_stellar() {
        let (k, s) = triangle();
        let base = Simplex::from_ids(&[0, 1]);
        let chain = chain_subdivide(&k, &s, &base, 1).unwrap();
        let stellar = stellar_subdivide(&k, &s).unwrap();
        assert_eq!(chain.result(), stellar.result());
    }

    #[test]
    fn chain_adds_degree_along_base() {
        let (k, s) = triangle();
        let base = Simplex::from_ids(&[0, 1]);
        for steps in 1..=4 {
            let rec = chain_subdivide(&k, &s, &base, steps).unwrap();
            assert_eq!(rec.new_vertices().len(), steps);
            for v in base.vertices() {
                assert_eq!(
                    rec.result().degree(*v).unwrap(),
                    k.degree(*v).unwrap() + steps
                );
            }
            // the off-base vertex only ever meets the first cone point
            assert_eq!(rec.result().degree(VertexId(2)).unwrap(), 3);
        }
    }

    #[test]
    fn three_chain_of_triangle_has_seven_faces() {
        let (k, s) = triangle();
        let rec = chain_subdivide(&k, &s, &Simplex::from_ids(&[0, 1]), 3).unwrap();
        assert_eq!(rec.result().simplices_of_dim(2).count(), 7);
        assert_eq!(rec.new_vertices().len(), 3);
        assert_eq!(
            rec.result().euler_characteristic(),
            k.euler_characteristic()
        );
    }

    #[test]
    fn chain_rejects_non_facet() {
        let (k, s) = triangle();
        assert!(chain_subdivide(&k, &s, &Simplex::from_ids(&[0]), 2).is_err());
        assert!(chain_subdivide(&k, &s, &Simplex::from_ids(&[0, 1]), 0).is_err());
    }

    #[test]
    fn expected_degrees_small_cases() {
        assert_eq!(expected_boundary_degree(2, 1, 0).unwrap(), 8);
        assert_eq!(expected_boundary_degree(2, 1, 1).unwrap(), 7);
        assert_eq!(expected_boundary_degree(2, 1, 2).unwrap(), 6);
        assert_eq!(expected_boundary_degree(2, 5, 0).unwrap(), 16);
        assert_eq!(expected_boundary_degree(3, 2, 3).unwrap(), 13);
        assert!(expected_boundary_degree(2, 1, 3).is_err());
        assert!(expected_boundary_degree(2, 0, 0).is_err());
    }

    #[test]
    fn standard_subdivision_degrees() {
        let (k, s) = triangle();
        let rec = standard_subdivide(&k, &s, 1).unwrap();
        let degs: Vec<usize> = (0..3)
            .map(|i| rec.result().degree(VertexId(i)).unwrap())
            .collect();
        assert_eq!(degs, vec![8, 7, 6]);
        assert_eq!(rec.new_vertices().len(), 7); // 1 + (1 + 2 + 3)

        // the center is the first new vertex and reaches degree 2(n+1)
        let center = *rec.new_vertices().iter().next().unwrap();
        assert_eq!(rec.result().degree(center).unwrap(), 6);
        for v in rec.new_vertices() {
            let d = rec.result().degree(*v).unwrap();
            assert!(d <= 6, "interior degree {d} exceeds 2(n+1)");
        }
        assert!(fixtures::boundary_of_simplex(2).is_subcomplex_of(rec.result()));
        assert_eq!(rec.result().euler_characteristic(), 1);
    }

    #[test]
    fn standard_subdivision_is_asymmetric() {
        use crate::complex::{isomorphisms, IsoConstraints};
        let (k, s) = triangle();
        let rec = standard_subdivide(&k, &s, 1).unwrap();
        let autos = isomorphisms(rec.result(), rec.result(), IsoConstraints::default());
        assert_eq!(autos.len(), 1);
    }

    #[test]
    fn origin_map_covers_all_top_simplices() {
        let octa = fixtures::octahedron();
        let face = Simplex::from_ids(&[0, 1, 2]);
        let rec = standard_subdivide(&octa, &face, 2).unwrap();
        for t in rec.result().simplices_of_dim(2) {
            let o = rec.simplex_origin().get(t).unwrap();
            assert!(octa.contains_simplex(o));
        }
        // untouched faces map to themselves
        let other = Simplex::from_ids(&[5, 3, 4]);
        assert_eq!(rec.simplex_origin().get(&other), Some(&other));
    }
}
