//! The label codec: encode labels of an n-complex into pure combinatorics
//! by replacing each labeled top simplex with a standard subdivision whose
//! boundary degrees identify the labels, and decode by recovering the
//! unique block decomposition.
//!
//! Interior vertices of every block have degree at most `lambda = 2(n+1)`,
//! boundary degrees are all larger and pairwise distinct across the family,
//! and degree ranges of distinct classes are disjoint. Decoding therefore
//! finds block interiors as components of low-degree vertices, matches each
//! block to its class by degree signature, confirms with an explicit
//! isomorphism, and reads labels back off the degrees.

use std::collections::{BTreeMap, BTreeSet};

use super::{expected_boundary_degree, min_boundary_degree, standard_subdivide, SubdivisionRecord};
use crate::complex::{
    find_isomorphism, IsoConstraints, ManifoldStatus, Simplex, SimplicialComplex, VertexId,
};
use crate::error::{Error, Result};
use crate::labeling::{Label, Labeling};

/// Isomorphism class of a labeled n-simplex: the sorted multiset of its
/// vertex labels plus the simplex label.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct SimplexClass {
    vertex_labels: Vec<Label>,
    simplex_label: Option<Label>,
}

impl SimplexClass {
    fn of(s: &Simplex, labeling: &Labeling) -> Result<SimplexClass> {
        let mut vertex_labels = Vec::with_capacity(s.vertices().len());
        for v in s.vertices() {
            let l = labeling
                .vertex_label(*v)
                .ok_or_else(|| Error::PartialLabeling(format!("vertex {v} has no label")))?;
            vertex_labels.push(l.clone());
        }
        vertex_labels.sort();
        Ok(SimplexClass {
            vertex_labels,
            simplex_label: labeling.simplex_label(s).cloned(),
        })
    }

    pub fn vertex_labels(&self) -> &[Label] {
        &self.vertex_labels
    }

    pub fn simplex_label(&self) -> Option<&Label> {
        self.simplex_label.as_ref()
    }
}

/// One standard subdivision per labeled-simplex class.
#[derive(Clone, Debug)]
pub struct FamilyEntry {
    class: SimplexClass,
    /// The block K(sigma): a standard subdivision of the simplex on
    /// vertices `0..=n`.
    block: SimplicialComplex,
    /// Boundary vertices `0..=n`; position j carries `vertex_labels[j]`
    /// and ends at degree `expected_boundary_degree(n, n_param, j)`.
    boundary: Vec<VertexId>,
    n_param: usize,
}

impl FamilyEntry {
    pub fn class(&self) -> &SimplexClass {
        &self.class
    }

    pub fn block(&self) -> &SimplicialComplex {
        &self.block
    }

    pub fn boundary(&self) -> &[VertexId] {
        &self.boundary
    }

    pub fn n_param(&self) -> usize {
        self.n_param
    }
}

/// The family of standard subdivisions for a labeled model set, with the
/// degree decoder.
#[derive(Clone, Debug)]
pub struct SubdivisionFamily {
    dim: usize,
    lambda: usize,
    entries: Vec<FamilyEntry>,
    decoder: BTreeMap<usize, Label>,
}

impl SubdivisionFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Interior degree bound `2(n+1)`; every boundary degree exceeds it.
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn entries(&self) -> &[FamilyEntry] {
        &self.entries
    }

    /// Vertex label recovered from a per-block boundary degree.
    pub fn decode_degree(&self, degree: usize) -> Option<&Label> {
        self.decoder.get(&degree)
    }

    fn entry_for(&self, class: &SimplexClass) -> Option<&FamilyEntry> {
        self.entries.iter().find(|e| e.class == *class)
    }
}

/// Builds the family for all labeled n-simplex classes appearing in the
/// given labeled complexes.
///
/// Class t gets parameter `N_t = N_min + t(n+1)` where `N_min` is the least
/// parameter whose minimum boundary degree exceeds `2(n+1)`. Degrees within
/// a class are n+1 consecutive integers, so the schedule keeps all degree
/// sets disjoint.
pub fn build_family(inputs: &[(&SimplicialComplex, &Labeling)]) -> Result<SubdivisionFamily> {
    let mut dim: Option<usize> = None;
    for (k, labeling) in inputs {
        labeling.validate_on(k)?;
        match (dim, k.dim()) {
            (_, None) => {}
            (None, Some(d)) => dim = Some(d),
            (Some(d0), Some(d)) if d0 == d => {}
            _ => return Err(Error::MixedDimensions),
        }
    }
    let Some(n) = dim else {
        // nothing labeled at all: the empty family
        return Ok(SubdivisionFamily {
            dim: 0,
            lambda: 0,
            entries: Vec::new(),
            decoder: BTreeMap::new(),
        });
    };
    if n < 2 {
        return Err(Error::CodecDimension(n));
    }

    let mut classes: BTreeSet<SimplexClass> = BTreeSet::new();
    for (k, labeling) in inputs {
        for s in k.simplices_of_dim(n) {
            classes.insert(SimplexClass::of(s, labeling)?);
        }
    }

    let lambda = 2 * (n + 1);
    let mut n_min = 1;
    while min_boundary_degree(n, n_min) <= lambda {
        n_min += 1;
    }

    let reference = Simplex::new((0..=n as u32).map(VertexId));
    let model = SimplicialComplex::from_maximal([reference.clone()]);
    let mut entries = Vec::new();
    let mut decoder: BTreeMap<usize, Label> = BTreeMap::new();
    for (t, class) in classes.into_iter().enumerate() {
        let n_param = n_min + t * (n + 1);
        let record = standard_subdivide(&model, &reference, n_param)?;
        let block = record.result().clone();
        let boundary: Vec<VertexId> = reference.vertices().to_vec();
        for (j, v) in boundary.iter().enumerate() {
            let expected = expected_boundary_degree(n, n_param, j)?;
            let actual = block.degree(*v)?;
            if actual != expected {
                return Err(Error::Internal(format!(
                    "boundary degree {actual} differs from expected {expected}"
                )));
            }
            if decoder
                .insert(expected, class.vertex_labels[j].clone())
                .is_some()
            {
                return Err(Error::Internal(format!(
                    "degree {expected} assigned twice in the decoder"
                )));
            }
        }
        // the construction must be asymmetric for decoding to be unambiguous
        let autos = crate::complex::isomorphisms(&block, &block, IsoConstraints::default());
        if autos.len() != 1 {
            return Err(Error::Internal(
                "standard subdivision has a nontrivial automorphism".into(),
            ));
        }
        entries.push(FamilyEntry {
            class,
            block,
            boundary,
            n_param,
        });
    }

    Ok(SubdivisionFamily {
        dim: n,
        lambda,
        entries,
        decoder,
    })
}

/// Replaces every labeled top simplex of `(m, labeling)` by its class's
/// block, glued along the unsubdivided boundary. The output carries no
/// labels.
pub fn encode(
    m: &SimplicialComplex,
    labeling: &Labeling,
    family: &SubdivisionFamily,
) -> Result<(SimplicialComplex, SubdivisionRecord)> {
    labeling.validate_on(m)?;
    let n = family.dim();
    if m.dim() != Some(n) {
        return Err(Error::CodecDimension(m.dim().unwrap_or(0)));
    }

    let mut simplices: Vec<Simplex> = m.simplices().filter(|s| s.dim() != n).cloned().collect();
    let mut origin: BTreeMap<Simplex, Simplex> = BTreeMap::new();
    let mut new_vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut next_fresh = m.fresh_vertex().0;

    for s in m.simplices_of_dim(n) {
        let class = SimplexClass::of(s, labeling)?;
        let entry = family
            .entry_for(&class)
            .ok_or_else(|| Error::UnmatchedSimplexClass(s.clone()))?;

        // align boundary vertices label-wise: both sides sorted by
        // (label, vertex id), so the matching is deterministic
        let mut by_label: Vec<VertexId> = s.vertices().to_vec();
        by_label.sort_by_key(|v| (labeling.vertex_label(*v).cloned(), *v));
        let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for (j, block_vertex) in entry.boundary().iter().enumerate() {
            rename.insert(*block_vertex, by_label[j]);
        }
        for v in entry.block().vertices() {
            if let std::collections::btree_map::Entry::Vacant(e) = rename.entry(v) {
                e.insert(VertexId(next_fresh));
                new_vertices.insert(VertexId(next_fresh));
                next_fresh += 1;
            }
        }
        let placed = entry.block().relabel(&rename)?;
        for t in placed.simplices() {
            if t.dim() == n {
                origin.insert(t.clone(), s.clone());
            }
            simplices.push(t.clone());
        }
    }

    let result = SimplicialComplex::from_simplices(simplices);
    Ok((
        result.clone(),
        SubdivisionRecord {
            original: m.clone(),
            result,
            simplex_origin: origin,
            new_vertices,
        },
    ))
}

/// A block found inside an encoded complex.
#[derive(Clone, Debug)]
pub struct DecodedBlock {
    pub entry_index: usize,
    pub complex: SimplicialComplex,
    pub boundary_vertices: Vec<VertexId>,
}

/// Recovers the labeled complex from an encoded one.
///
/// Block interiors are the connected sets of vertices with degree at most
/// `lambda`; each block is matched by its boundary-degree signature,
/// confirmed by explicit isomorphism with the family block, and replaced by
/// one n-simplex whose labels come from the degree decoder.
pub fn decode(
    m_star: &SimplicialComplex,
    family: &SubdivisionFamily,
) -> Result<(SimplicialComplex, Labeling)> {
    let (complex, labeling, _) = decode_with_blocks(m_star, family)?;
    Ok((complex, labeling))
}

/// Like [`decode`], additionally returning the blocks that were found.
pub fn decode_with_blocks(
    m_star: &SimplicialComplex,
    family: &SubdivisionFamily,
) -> Result<(SimplicialComplex, Labeling, Vec<DecodedBlock>)> {
    let n = family.dim();
    if m_star.dim() != Some(n) {
        return Err(Error::DecodeFailed(format!(
            "expected a {n}-dimensional complex"
        )));
    }
    if m_star.manifold_status(n) == ManifoldStatus::NotManifold {
        return Err(Error::DecodeFailed(
            "input is not a combinatorial manifold".into(),
        ));
    }

    let interior: BTreeSet<VertexId> = m_star
        .vertices()
        .filter(|v| m_star.degree(*v).expect("own vertex") <= family.lambda())
        .collect();
    if interior.is_empty() {
        return Err(Error::DecodeFailed(
            "no block interiors found (no vertex of interior degree)".into(),
        ));
    }

    // connected components of the interior vertex set
    let mut remaining = interior.clone();
    let mut components: Vec<BTreeSet<VertexId>> = Vec::new();
    while let Some(&start) = remaining.iter().next() {
        remaining.remove(&start);
        let mut comp = BTreeSet::from([start]);
        let mut queue = vec![start];
        while let Some(w) = queue.pop() {
            for &x in m_star.neighbors(w).expect("own vertex") {
                if remaining.remove(&x) {
                    comp.insert(x);
                    queue.push(x);
                }
            }
        }
        components.push(comp);
    }

    let mut blocks: Vec<DecodedBlock> = Vec::new();
    let mut covered_tops: BTreeSet<Simplex> = BTreeSet::new();
    for comp in components {
        let tops: Vec<Simplex> = m_star
            .simplices_of_dim(n)
            .filter(|s| s.vertices().iter().any(|v| comp.contains(v)))
            .cloned()
            .collect();
        let block = SimplicialComplex::from_simplices(tops.iter().cloned());
        let boundary_vertices: Vec<VertexId> =
            block.vertices().filter(|v| !comp.contains(v)).collect();

        let mut signature: Vec<usize> = boundary_vertices
            .iter()
            .map(|v| block.degree(*v).expect("own vertex"))
            .collect();
        signature.sort_unstable();

        let mut matches = family.entries().iter().enumerate().filter(|(_, e)| {
            let mut expected: Vec<usize> = (0..=n)
                .map(|j| expected_boundary_degree(n, e.n_param, j).expect("valid index"))
                .collect();
            expected.sort_unstable();
            expected == signature
        });
        let (entry_index, entry) = matches.next().ok_or_else(|| {
            Error::DecodeFailed(format!(
                "block with boundary degrees {signature:?} matches no family entry; \
                 complex is not covered by family blocks"
            ))
        })?;
        if matches.next().is_some() {
            return Err(Error::DecodeFailed(
                "block matches more than one family entry".into(),
            ));
        }
        if find_isomorphism(&block, entry.block(), IsoConstraints::default()).is_none() {
            return Err(Error::DecodeFailed(format!(
                "block with degrees {signature:?} is not isomorphic to its family block"
            )));
        }
        for t in &tops {
            if !covered_tops.insert(t.clone()) {
                return Err(Error::DecodeFailed(format!(
                    "top simplex {t} claimed by two blocks"
                )));
            }
        }
        blocks.push(DecodedBlock {
            entry_index,
            complex: block,
            boundary_vertices,
        });
    }

    if covered_tops.len() != m_star.simplices_of_dim(n).count() {
        return Err(Error::DecodeFailed(
            "some top simplices belong to no block; complex is not covered by family blocks".into(),
        ));
    }

    // rebuild the decoded complex and its labels
    let mut labeling = Labeling::new();
    let mut top_simplices = Vec::new();
    for block in &blocks {
        let entry = &family.entries()[block.entry_index];
        let s = Simplex::new(block.boundary_vertices.iter().copied());
        if s.dim() != n {
            return Err(Error::DecodeFailed(format!(
                "block boundary {s} does not span an {n}-simplex"
            )));
        }
        for v in &block.boundary_vertices {
            let degree = block.complex.degree(*v).expect("own vertex");
            let label = family.decode_degree(degree).ok_or_else(|| {
                Error::DecodeFailed(format!("no label for boundary degree {degree}"))
            })?;
            if let Some(existing) = labeling.vertex_label(*v) {
                if existing != label {
                    return Err(Error::DecodeFailed(format!(
                        "vertex {v} decodes to different labels from different blocks"
                    )));
                }
            } else {
                labeling.set_vertex_label(*v, label.clone());
            }
        }
        if let Some(sl) = entry.class().simplex_label() {
            labeling.set_simplex_label(s.clone(), sl.clone());
        }
        top_simplices.push(s);
    }

    Ok((
        SimplicialComplex::from_maximal(top_simplices),
        labeling,
        blocks,
    ))
}
