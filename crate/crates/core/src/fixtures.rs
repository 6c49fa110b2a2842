//! Small standard complexes used throughout the tests and docs.

use crate::complex::{Simplex, SimplicialComplex, VertexId};

/// A single vertex `v0`.
pub fn single_vertex() -> SimplicialComplex {
    SimplicialComplex::from_maximal([Simplex::vertex(VertexId(0))])
}

/// The full `n`-simplex on vertices `0..=n`.
pub fn full_simplex(n: usize) -> SimplicialComplex {
    SimplicialComplex::from_maximal([Simplex::new((0..=n as u32).map(VertexId))])
}

/// The boundary sphere of the `n`-simplex.
pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    let top = Simplex::new((0..=n as u32).map(VertexId));
    SimplicialComplex::from_maximal(top.facets())
}

/// The cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> SimplicialComplex {
    assert!(k >= 3);
    let k = k as u32;
    SimplicialComplex::from_maximal((0..k).map(|i| Simplex::from_ids(&[i, (i + 1) % k])))
}

/// The path on `k >= 1` vertices.
pub fn path(k: usize) -> SimplicialComplex {
    assert!(k >= 1);
    if k == 1 {
        return single_vertex();
    }
    let k = k as u32;
    SimplicialComplex::from_maximal((0..k - 1).map(|i| Simplex::from_ids(&[i, i + 1])))
}

/// Two edges with no common vertex.
pub fn disjoint_edges() -> SimplicialComplex {
    SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1]), Simplex::from_ids(&[2, 3])])
}

/// The octahedron: poles 0 and 5 over the equator cycle 1-2-3-4.
pub fn octahedron() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        Simplex::from_ids(&[0, 1, 2]),
        Simplex::from_ids(&[0, 2, 3]),
        Simplex::from_ids(&[0, 3, 4]),
        Simplex::from_ids(&[0, 4, 1]),
        Simplex::from_ids(&[5, 1, 2]),
        Simplex::from_ids(&[5, 2, 3]),
        Simplex::from_ids(&[5, 3, 4]),
        Simplex::from_ids(&[5, 4, 1]),
    ])
}

/// The 7-vertex torus: triangles `{i, i+1, i+3}` and `{i, i+2, i+3}` mod 7.
/// Its 1-skeleton is complete; every vertex has degree 6.
pub fn torus_7() -> SimplicialComplex {
    let mut tris = Vec::new();
    for i in 0..7u32 {
        tris.push(Simplex::from_ids(&[i, (i + 1) % 7, (i + 3) % 7]));
        tris.push(Simplex::from_ids(&[i, (i + 2) % 7, (i + 3) % 7]));
    }
    SimplicialComplex::from_maximal(tris)
}

/// The disk made of `k >= 3` triangles around hub 0, rim `1..=k`.
pub fn wheel(k: usize) -> SimplicialComplex {
    assert!(k >= 3);
    let k = k as u32;
    SimplicialComplex::from_maximal(
        (0..k).map(|i| Simplex::new([VertexId(0), VertexId(1 + i), VertexId(1 + (i + 1) % k)])),
    )
}

/// A 6-vertex triangulated annulus: inner boundary 0-1-2, outer 3-4-5.
pub fn annulus_6() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        Simplex::from_ids(&[0, 1, 4]),
        Simplex::from_ids(&[0, 4, 3]),
        Simplex::from_ids(&[1, 2, 5]),
        Simplex::from_ids(&[1, 5, 4]),
        Simplex::from_ids(&[2, 0, 3]),
        Simplex::from_ids(&[2, 3, 5]),
    ])
}

/// Two triangles meeting in exactly one vertex (vertex 0).
pub fn two_triangles_sharing_vertex() -> SimplicialComplex {
    SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1, 2]), Simplex::from_ids(&[0, 3, 4])])
}

/// Wedge of two circles at vertex 0; circle A is 0-1-2, circle B is 0-3-4.
pub fn wedge_of_two_circles() -> SimplicialComplex {
    SimplicialComplex::from_maximal([
        Simplex::from_ids(&[0, 1]),
        Simplex::from_ids(&[1, 2]),
        Simplex::from_ids(&[2, 0]),
        Simplex::from_ids(&[0, 3]),
        Simplex::from_ids(&[3, 4]),
        Simplex::from_ids(&[4, 0]),
    ])
}
