use std::collections::{BTreeMap, BTreeSet};

use super::{Simplex, SimplicialComplex, VertexId};
use crate::error::{Error, Result};

/// A simplicial map: a total vertex map under which the image of every
/// simplex of the source is a simplex of the target.
///
/// The map owns copies of both complexes so a value can be re-validated on
/// its own. A map is *nondegenerate* when it is injective on the vertices of
/// every simplex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        for v in source.vertices() {
            let w = vertex_map.get(&v).copied().ok_or(Error::MapNotTotal(v))?;
            if !target.contains_vertex(w) {
                return Err(Error::MapNotSimplicial(Simplex::vertex(v)));
            }
        }
        for s in source.simplices() {
            let image = Simplex::new(s.vertices().iter().map(|v| vertex_map[v]));
            if !target.contains_simplex(&image) {
                return Err(Error::MapNotSimplicial(s.clone()));
            }
        }
        Ok(SimplicialMap {
            source,
            target,
            vertex_map,
        })
    }

    pub fn identity(k: &SimplicialComplex) -> Self {
        let map = k.vertices().map(|v| (v, v)).collect();
        SimplicialMap {
            source: k.clone(),
            target: k.clone(),
            vertex_map: map,
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    /// Image of a source vertex. Panics on vertices outside the source;
    /// the map is total on it by construction.
    pub fn apply(&self, v: VertexId) -> VertexId {
        self.vertex_map[&v]
    }

    /// Image of a simplex, with repeated vertex images collapsed.
    pub fn image_of(&self, s: &Simplex) -> Simplex {
        Simplex::new(s.vertices().iter().map(|v| self.vertex_map[v]))
    }

    /// The image subcomplex.
    pub fn image(&self) -> SimplicialComplex {
        SimplicialComplex::from_simplices(self.source.simplices().map(|s| self.image_of(s)))
    }

    pub fn is_injective(&self) -> bool {
        let images: BTreeSet<VertexId> = self.vertex_map.values().copied().collect();
        images.len() == self.vertex_map.len()
    }

    /// Injective on the vertices of every simplex of the source.
    pub fn is_nondegenerate(&self) -> bool {
        self.source
            .simplices()
            .all(|s| self.image_of(s).dim() == s.dim())
    }

    /// Bijective on vertices and inducing a bijection on simplices.
    pub fn is_isomorphism(&self) -> bool {
        self.is_injective()
            && self.vertex_map.len() == self.target.vertex_count()
            && self.source.simplex_count() == self.target.simplex_count()
        // injectivity on vertices makes the simplex map injective, and equal
        // counts then force it to be onto
    }

    pub fn inverse(&self) -> Option<SimplicialMap> {
        if !self.is_isomorphism() {
            return None;
        }
        let inv = self.vertex_map.iter().map(|(u, w)| (*w, *u)).collect();
        Some(SimplicialMap {
            source: self.target.clone(),
            target: self.source.clone(),
            vertex_map: inv,
        })
    }

    /// `other` after `self`; the source of `other` must contain the image.
    pub fn compose(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        let mut map = BTreeMap::new();
        for (u, w) in &self.vertex_map {
            let x = other
                .vertex_map
                .get(w)
                .copied()
                .ok_or(Error::MapNotTotal(*w))?;
            map.insert(*u, x);
        }
        SimplicialMap::new(self.source.clone(), other.target.clone(), map)
    }

    /// Restriction to a subcomplex of the source.
    pub fn restrict_to(&self, sub: &SimplicialComplex) -> Result<SimplicialMap> {
        if !sub.is_subcomplex_of(&self.source) {
            return Err(Error::Internal(
                "restriction domain is not a subcomplex of the source".into(),
            ));
        }
        let map = sub.vertices().map(|v| (v, self.vertex_map[&v])).collect();
        SimplicialMap::new(sub.clone(), self.target.clone(), map)
    }
}
