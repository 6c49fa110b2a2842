//! Local models, model sets, the modeled-on decision procedure, and bounded
//! enumeration of complexes modeled on a model set.
//!
//! A complex is modeled on a set of local models when every vertex has a
//! simplicial neighborhood isomorphic to one of the models, centers
//! matching. "Neighborhood of x" is formalized as: a subcomplex containing
//! every simplex incident to x (the closed star), which is exactly what it
//! takes for the underlying space to be a topological neighborhood.

mod enumerate;

pub use enumerate::enumerate_closed_manifolds;

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{Recognition, Simplex, SimplicialComplex, SimplicialMap, VertexId};
use crate::error::{Error, Result};
use crate::labeling::{Label, Labeling};

/// Verdict of the ball-surrogate check on a model complex.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Validity {
    Valid,
    Invalid,
    Unknown,
}

impl std::fmt::Display for Validity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Validity::Valid => "valid",
            Validity::Invalid => "invalid",
            Validity::Unknown => "unknown",
        };
        write!(f, "{s}")
    }
}

/// A complex with a distinguished center vertex and an optional labeling.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalModel {
    complex: SimplicialComplex,
    center: VertexId,
    labeling: Option<Labeling>,
}

impl LocalModel {
    pub fn new(
        complex: SimplicialComplex,
        center: VertexId,
        labeling: Option<Labeling>,
    ) -> Result<Self> {
        if !complex.contains_vertex(center) {
            return Err(Error::BadCenter(center));
        }
        if let Some(l) = &labeling {
            l.validate_on(&complex)?;
        }
        Ok(LocalModel {
            complex,
            center,
            labeling,
        })
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn center(&self) -> VertexId {
        self.center
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    /// Largest finite vertex distance in the model complex.
    pub fn diameter(&self) -> usize {
        let vs: Vec<VertexId> = self.complex.vertices().collect();
        let mut best = 0;
        for (i, u) in vs.iter().enumerate() {
            for v in &vs[i + 1..] {
                if let Ok(crate::complex::Distance::Finite(k)) = self.complex.distance(*u, *v) {
                    best = best.max(k);
                }
            }
        }
        best
    }

    /// Is the underlying space a combinatorial ball? Exact for dimension at
    /// most 2, collapsibility-backed for 3, `Unknown` beyond unless
    /// trivially invalid.
    pub fn validate(&self) -> Validity {
        match self.complex.is_ball(self.dim()) {
            Recognition::Yes => Validity::Valid,
            Recognition::No => Validity::Invalid,
            Recognition::Unknown => Validity::Unknown,
        }
    }
}

/// A finite set of local models sharing one dimension. Either all models
/// are labeled or none is.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModelSet {
    models: Vec<LocalModel>,
}

impl ModelSet {
    pub fn new(models: Vec<LocalModel>) -> Result<Self> {
        if let Some(first) = models.first() {
            if models.iter().any(|m| m.dim() != first.dim()) {
                return Err(Error::MixedDimensions);
            }
            let labeled = first.labeling.is_some();
            if models.iter().any(|m| m.labeling.is_some() != labeled) {
                return Err(Error::MixedLabels);
            }
        }
        Ok(ModelSet { models })
    }

    pub fn empty() -> Self {
        ModelSet::default()
    }

    pub fn models(&self) -> &[LocalModel] {
        &self.models
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }

    pub fn dim(&self) -> Option<usize> {
        self.models.first().map(|m| m.dim())
    }

    pub fn is_labeled(&self) -> bool {
        self.models.first().is_some_and(|m| m.labeling.is_some())
    }

    pub fn max_diameter(&self) -> usize {
        self.models.iter().map(|m| m.diameter()).max().unwrap_or(0)
    }
}

/// Proof that a complex is modeled on a model set: an embedding per vertex,
/// plus the labeling that was found when the models carry labels.
#[derive(Clone, Debug)]
pub struct ModelingCertificate {
    assignments: BTreeMap<VertexId, (usize, SimplicialMap)>,
    labeling: Option<Labeling>,
}

impl ModelingCertificate {
    pub fn model_index(&self, v: VertexId) -> Option<usize> {
        self.assignments.get(&v).map(|(i, _)| *i)
    }

    pub fn embedding(&self, v: VertexId) -> Option<&SimplicialMap> {
        self.assignments.get(&v).map(|(_, f)| f)
    }

    pub fn assignments(&self) -> &BTreeMap<VertexId, (usize, SimplicialMap)> {
        &self.assignments
    }

    pub fn labeling(&self) -> Option<&Labeling> {
        self.labeling.as_ref()
    }

    /// Re-checks every recorded embedding: injective simplicial map onto
    /// its image, center at the right vertex, star containment, and label
    /// preservation against the certificate labeling.
    pub fn validate(&self, m: &SimplicialComplex, models: &ModelSet) -> Result<()> {
        for x in m.vertices() {
            let (idx, f) = self
                .assignments
                .get(&x)
                .ok_or_else(|| Error::Internal(format!("no assignment for vertex {x}")))?;
            let model = &models.models()[*idx];
            if f.apply(model.center()) != x {
                return Err(Error::Internal(format!(
                    "embedding at {x} misses the center"
                )));
            }
            if !f.is_injective() {
                return Err(Error::Internal(format!(
                    "embedding at {x} is not injective"
                )));
            }
            let image = f.image();
            if !image.is_subcomplex_of(m) {
                return Err(Error::Internal(format!("image at {x} is not a subcomplex")));
            }
            if !m.closed_star(x)?.is_subcomplex_of(&image) {
                return Err(Error::Internal(format!(
                    "image at {x} is not a neighborhood: star not contained"
                )));
            }
            if let (Some(model_labels), Some(found)) = (model.labeling(), &self.labeling) {
                for (y, l) in model_labels.vertex_labels() {
                    if found.vertex_label(f.apply(*y)) != Some(l) {
                        return Err(Error::Internal(format!("label mismatch at image of {y}")));
                    }
                }
                for (s, l) in model_labels.simplex_labels() {
                    if found.simplex_label(&f.image_of(s)) != Some(l) {
                        return Err(Error::Internal(format!(
                            "simplex label mismatch at image of {s}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Partial labels accumulated while searching for a labeling of the
/// complex being modeled.
#[derive(Clone, Default)]
struct PartialLabels {
    vertices: BTreeMap<VertexId, Label>,
    simplices: BTreeMap<Simplex, Label>,
}

impl PartialLabels {
    /// Labels forced by mapping `model` through `f`, or `None` on conflict.
    fn extended_by(&self, model: &LocalModel, f: &SimplicialMap) -> Option<PartialLabels> {
        let labels = model.labeling()?;
        let mut next = self.clone();
        for (y, l) in labels.vertex_labels() {
            let w = f.apply(*y);
            match next.vertices.get(&w) {
                Some(existing) if existing != l => return None,
                Some(_) => {}
                None => {
                    next.vertices.insert(w, l.clone());
                }
            }
        }
        for (s, l) in labels.simplex_labels() {
            let image = f.image_of(s);
            match next.simplices.get(&image) {
                Some(existing) if existing != l => return None,
                Some(_) => {}
                None => {
                    next.simplices.insert(image, l.clone());
                }
            }
        }
        Some(next)
    }

    fn into_labeling(self) -> Labeling {
        let mut l = Labeling::new();
        for (v, label) in self.vertices {
            l.set_vertex_label(v, label);
        }
        for (s, label) in self.simplices {
            l.set_simplex_label(s, label);
        }
        l
    }
}

/// All embeddings of `model` into `m` sending the center to `x` whose image
/// contains the closed star of `x`, in deterministic order.
fn model_embeddings(m: &SimplicialComplex, x: VertexId, model: &LocalModel) -> Vec<SimplicialMap> {
    let mc = model.complex();
    if !m.contains_vertex(x) {
        return Vec::new();
    }
    let star = m.closed_star(x).expect("vertex checked");
    if m.degree(x).expect("vertex checked") != mc.degree(model.center()).unwrap_or(usize::MAX) {
        return Vec::new();
    }

    // breadth-first order from the center keeps every later vertex next to
    // an assigned one; stragglers (disconnected models) come last
    let mut order: Vec<VertexId> = Vec::with_capacity(mc.vertex_count());
    let mut seen: BTreeSet<VertexId> = BTreeSet::from([model.center()]);
    let mut queue = std::collections::VecDeque::from([model.center()]);
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in mc.neighbors(u).expect("model vertex") {
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    for u in mc.vertices() {
        if seen.insert(u) {
            order.push(u);
        }
    }

    let mut found = Vec::new();
    let mut assignment: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();
    embed(
        m,
        &star,
        mc,
        x,
        model.center(),
        &order,
        0,
        &mut assignment,
        &mut used,
        &mut found,
    );
    found
}

#[allow(clippy::too_many_arguments)]
fn embed(
    m: &SimplicialComplex,
    star: &SimplicialComplex,
    mc: &SimplicialComplex,
    x: VertexId,
    center: VertexId,
    order: &[VertexId],
    depth: usize,
    assignment: &mut BTreeMap<VertexId, VertexId>,
    used: &mut BTreeSet<VertexId>,
    found: &mut Vec<SimplicialMap>,
) {
    if depth == order.len() {
        // the image must swallow the whole closed star of x
        let image: BTreeSet<Simplex> = mc
            .simplices()
            .map(|s| Simplex::new(s.vertices().iter().map(|v| assignment[v])))
            .collect();
        if star.simplices().all(|s| image.contains(s)) {
            if let Ok(f) = SimplicialMap::new(mc.clone(), m.clone(), assignment.clone()) {
                found.push(f);
            }
        }
        return;
    }
    let u = order[depth];
    let candidates: Vec<VertexId> = if u == center {
        vec![x]
    } else {
        let mut base: Option<BTreeSet<VertexId>> = None;
        for w in mc.neighbors(u).expect("model vertex") {
            if let Some(img) = assignment.get(w) {
                let nbrs = m.neighbors(*img).expect("image vertex");
                base = Some(match base {
                    None => nbrs.clone(),
                    Some(prev) => prev.intersection(nbrs).copied().collect(),
                });
            }
        }
        match base {
            Some(set) => set.into_iter().filter(|w| !used.contains(w)).collect(),
            None => m.vertices().filter(|w| !used.contains(w)).collect(),
        }
    };
    for w in candidates {
        if used.contains(&w) {
            continue;
        }
        if m.degree(w).expect("candidate vertex") < mc.degree(u).expect("model vertex") {
            continue;
        }
        // simplices fully assigned once u lands must map into m
        assignment.insert(u, w);
        let ok = mc
            .simplices()
            .filter(|s| s.contains(u) && s.vertices().iter().all(|v| assignment.contains_key(v)))
            .all(|s| {
                let image = Simplex::new(s.vertices().iter().map(|v| assignment[v]));
                image.dim() == s.dim() && m.contains_simplex(&image)
            });
        if ok {
            used.insert(w);
            embed(
                m,
                star,
                mc,
                x,
                center,
                order,
                depth + 1,
                assignment,
                used,
                found,
            );
            used.remove(&w);
        }
        assignment.remove(&u);
    }
}

/// First embedding of `model` at `x` compatible with the given labels of
/// `m`, if any.
pub fn find_model_neighborhood(
    m: &SimplicialComplex,
    labeling: Option<&Labeling>,
    x: VertexId,
    model: &LocalModel,
) -> Option<SimplicialMap> {
    model_embeddings(m, x, model)
        .into_iter()
        .find(|f| match (model.labeling(), labeling) {
            (Some(ml), Some(l)) => {
                ml.vertex_labels()
                    .iter()
                    .all(|(y, lab)| l.vertex_label(f.apply(*y)) == Some(lab))
                    && ml
                        .simplex_labels()
                        .iter()
                        .all(|(s, lab)| l.simplex_label(&f.image_of(s)) == Some(lab))
            }
            _ => true,
        })
}

/// Searches for a modeling certificate covering every vertex of `m`.
///
/// For labeled model sets the search backtracks over the label assignments
/// the embeddings force on `m`, taking the first consistent assignment in
/// deterministic order.
pub fn is_modeled_on(m: &SimplicialComplex, models: &ModelSet) -> Option<ModelingCertificate> {
    if m.is_empty() {
        return Some(ModelingCertificate {
            assignments: BTreeMap::new(),
            labeling: None,
        });
    }
    if models.is_empty() || m.dim() != models.dim() {
        return None;
    }

    let vertices: Vec<VertexId> = m.vertices().collect();
    // embeddings per (vertex, model), computed once
    let mut options: Vec<Vec<(usize, SimplicialMap)>> = Vec::with_capacity(vertices.len());
    for x in &vertices {
        let mut per_vertex = Vec::new();
        for (i, model) in models.models().iter().enumerate() {
            for f in model_embeddings(m, *x, model) {
                per_vertex.push((i, f));
            }
        }
        if per_vertex.is_empty() {
            return None;
        }
        options.push(per_vertex);
    }

    if !models.is_labeled() {
        let assignments = vertices
            .iter()
            .zip(options)
            .map(|(x, per)| (*x, per.into_iter().next().expect("nonempty")))
            .collect();
        return Some(ModelingCertificate {
            assignments,
            labeling: None,
        });
    }

    let mut chosen: Vec<(usize, SimplicialMap)> = Vec::with_capacity(vertices.len());
    if search_labels(
        models,
        &vertices,
        &options,
        0,
        &PartialLabels::default(),
        &mut chosen,
    ) {
        let labeling = {
            let mut labels = PartialLabels::default();
            for (i, f) in chosen.iter() {
                labels = labels
                    .extended_by(&models.models()[*i], f)
                    .expect("consistent by construction");
            }
            labels.into_labeling()
        };
        let assignments = vertices.into_iter().zip(chosen).collect();
        return Some(ModelingCertificate {
            assignments,
            labeling: Some(labeling),
        });
    }
    None
}

fn search_labels(
    models: &ModelSet,
    vertices: &[VertexId],
    options: &[Vec<(usize, SimplicialMap)>],
    depth: usize,
    labels: &PartialLabels,
    chosen: &mut Vec<(usize, SimplicialMap)>,
) -> bool {
    if depth == vertices.len() {
        return true;
    }
    for (i, f) in &options[depth] {
        if let Some(next) = labels.extended_by(&models.models()[*i], f) {
            chosen.push((*i, f.clone()));
            if search_labels(models, vertices, options, depth + 1, &next, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// All closed connected combinatorial n-manifolds with at most
/// `max_vertices` vertices that are modeled on the set, up to isomorphism,
/// in deterministic order. Supports n = 1 and n = 2.
pub fn enumerate_modeled(models: &ModelSet, max_vertices: usize) -> Result<Vec<SimplicialComplex>> {
    if models.is_empty() {
        return Ok(Vec::new());
    }
    let n = models.dim().expect("nonempty set");
    let all = enumerate_closed_manifolds(n, max_vertices)?;
    Ok(all
        .into_iter()
        .filter(|k| is_modeled_on(k, models).is_some())
        .collect())
}

/// The standard models used in tests and examples.
pub mod kit {
    use super::*;
    use crate::fixtures;

    /// Path on three vertices 0-1-2, centered at the midpoint.
    pub fn path_of_three() -> LocalModel {
        LocalModel::new(fixtures::path(3), VertexId(1), None).expect("valid model")
    }

    /// Disk of `k` triangles around its hub, centered at the hub.
    pub fn wheel(k: usize) -> LocalModel {
        LocalModel::new(fixtures::wheel(k), VertexId(0), None).expect("valid model")
    }

    /// Three labeled path models with cyclic labels 1 -> 2 -> 3 -> 1: the
    /// model centered at a vertex labeled i has neighbors labeled i-1 and
    /// i+1.
    pub fn cyclic_paths() -> ModelSet {
        let mut models = Vec::new();
        for c in 0..3u32 {
            let mut l = Labeling::new();
            l.set_vertex_label(VertexId(0), Label::from(format!("{}", (c + 2) % 3 + 1)));
            l.set_vertex_label(VertexId(1), Label::from(format!("{}", c + 1)));
            l.set_vertex_label(VertexId(2), Label::from(format!("{}", (c + 1) % 3 + 1)));
            models.push(
                LocalModel::new(fixtures::path(3), VertexId(1), Some(l)).expect("valid model"),
            );
        }
        ModelSet::new(models).expect("uniform set")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn model_validation() {
        assert_eq!(kit::wheel(6).validate(), Validity::Valid);
        let closed = LocalModel::new(fixtures::boundary_of_simplex(3), v(0), None).unwrap();
        assert_eq!(closed.validate(), Validity::Invalid);
        for n in 1..=3 {
            let m = LocalModel::new(fixtures::full_simplex(n), v(0), None).unwrap();
            assert_eq!(m.validate(), Validity::Valid, "dimension {n}");
        }
    }

    #[test]
    fn bad_center_rejected() {
        assert!(LocalModel::new(fixtures::path(3), v(9), None).is_err());
    }

    #[test]
    fn neighborhood_in_cycle() {
        let c6 = fixtures::cycle(6);
        let f = find_model_neighborhood(&c6, None, v(2), &kit::path_of_three());
        let f = f.expect("stars in a cycle are paths of three");
        assert_eq!(f.apply(v(1)), v(2));
        // octahedron vertices have degree 4, the 6-wheel hub has degree 6
        let octa = fixtures::octahedron();
        assert!(find_model_neighborhood(&octa, None, v(0), &kit::wheel(6)).is_none());
        // every star of the 7-vertex torus is a 6-wheel
        let torus = fixtures::torus_7();
        assert!(find_model_neighborhood(&torus, None, v(3), &kit::wheel(6)).is_some());
    }

    #[test]
    fn modeled_on_examples() {
        let paths = ModelSet::new(vec![kit::path_of_three()]).unwrap();
        assert!(is_modeled_on(&fixtures::cycle(6), &paths).is_some());
        // a 3-cycle is covered too: each closed star is a path of three
        assert!(is_modeled_on(&fixtures::cycle(3), &paths).is_some());

        let wheels6 = ModelSet::new(vec![kit::wheel(6)]).unwrap();
        assert!(is_modeled_on(&fixtures::octahedron(), &wheels6).is_none());
        assert!(is_modeled_on(&fixtures::torus_7(), &wheels6).is_some());

        let wheels4 = ModelSet::new(vec![kit::wheel(4)]).unwrap();
        assert!(is_modeled_on(&fixtures::octahedron(), &wheels4).is_some());
    }

    #[test]
    fn certificates_revalidate() {
        let wheels4 = ModelSet::new(vec![kit::wheel(4)]).unwrap();
        let octa = fixtures::octahedron();
        let cert = is_modeled_on(&octa, &wheels4).unwrap();
        cert.validate(&octa, &wheels4).unwrap();

        let cyclic = kit::cyclic_paths();
        let c6 = fixtures::cycle(6);
        let cert = is_modeled_on(&c6, &cyclic).unwrap();
        cert.validate(&c6, &cyclic).unwrap();
        assert!(cert.labeling().is_some());
    }

    #[test]
    fn labeled_modeling_restricts_lengths() {
        let cyclic = kit::cyclic_paths();
        for k in 3..=9 {
            let modeled = is_modeled_on(&fixtures::cycle(k), &cyclic).is_some();
            assert_eq!(modeled, k % 3 == 0, "cycle length {k}");
        }
    }

    #[test]
    fn enumerate_cycles_on_paths() {
        let paths = ModelSet::new(vec![kit::path_of_three()]).unwrap();
        let found = enumerate_modeled(&paths, 5).unwrap();
        assert_eq!(
            found,
            vec![fixtures::cycle(3), fixtures::cycle(4), fixtures::cycle(5)]
        );
    }

    #[test]
    fn enumerate_wheel_models_gives_octahedron() {
        let wheels4 = ModelSet::new(vec![kit::wheel(4)]).unwrap();
        let found = enumerate_modeled(&wheels4, 6).unwrap();
        assert_eq!(found.len(), 1);
        assert!(crate::complex::find_isomorphism(
            &found[0],
            &fixtures::octahedron(),
            crate::complex::IsoConstraints::default()
        )
        .is_some());
    }

    #[test]
    fn enumeration_has_no_isomorphic_duplicates() {
        let all = enumerate_closed_manifolds(2, 6).unwrap();
        for (i, a) in all.iter().enumerate() {
            assert!(is_modeled_on(a, &ModelSet::empty()).is_none());
            for b in &all[i + 1..] {
                assert!(
                    crate::complex::find_isomorphism(
                        a,
                        b,
                        crate::complex::IsoConstraints::default()
                    )
                    .is_none(),
                    "duplicate surfaces in the census"
                );
            }
        }
    }

    #[test]
    fn enumerate_empty_set() {
        assert!(enumerate_modeled(&ModelSet::empty(), 8).unwrap().is_empty());
    }

    #[test]
    fn mixed_sets_rejected() {
        let labeled = kit::cyclic_paths().models()[0].clone();
        assert!(matches!(
            ModelSet::new(vec![kit::path_of_three(), labeled]),
            Err(Error::MixedLabels)
        ));
        let apart = LocalModel::new(fixtures::wheel(4), v(0), None).unwrap();
        assert!(matches!(
            ModelSet::new(vec![kit::path_of_three(), apart]),
            Err(Error::MixedDimensions)
        ));
    }
}
