//! Universal branched manifolds: models from a branched manifold, the
//! branched manifold built from a model set and witness complexes, and the
//! desk-scale equivalence verifier.
//!
//! The construction colors the disjoint union of the witnesses with one
//! shared palette, computes geographies, and takes the geography image: W's
//! vertices are the realized geographies, its simplices the images of
//! witness simplices. Charts are the color images of closed stars; the
//! projection sends a geography vertex to the chart vertex carrying its
//! center color. Only geographies realized by the supplied witnesses exist
//! in the build, so the verifier reports saturation empirically instead of
//! assuming it.

use std::collections::{BTreeMap, BTreeSet};

use crate::branched::{
    find_immersion, verify_immersion, BranchedManifold, Immersion, LocalProjection,
};
use crate::complex::{
    disjoint_union, find_isomorphism, IsoConstraints, Simplex, SimplicialComplex, SimplicialMap,
    VertexId,
};
use crate::error::{Error, Result};
use crate::labeling::{
    compute_d_coloring, geographize, Color, Coloring, Geography, GeographyLabeling, Label, Labeling,
};
use crate::model::{enumerate_closed_manifolds, is_modeled_on, LocalModel, ModelSet};

/// Labeled models read off a branched manifold: one per label-isomorphism
/// class of witness vertex stars, labeled by the image vertices.
pub fn models_from_branched(
    w: &BranchedManifold,
    witnesses: &[(SimplicialComplex, Immersion)],
) -> Result<ModelSet> {
    if !w.is_nice()? {
        return Err(Error::NotAManifold(
            "branched manifold is not nicely triangulated".into(),
        ));
    }
    let mut models: Vec<LocalModel> = Vec::new();
    for (index, (m, immersion)) in witnesses.iter().enumerate() {
        let revalidated = verify_immersion(m, w, immersion.map().vertex_map())
            .map_err(|_| Error::WitnessNotModeled(index))?;
        for u in m.vertices() {
            let star = m.closed_star(u)?;
            let mut labeling = Labeling::new();
            for y in star.vertices() {
                labeling.set_vertex_label(y, Label::from(revalidated.map().apply(y).to_string()));
            }
            let candidate = LocalModel::new(star, u, Some(labeling))?;
            let duplicate = models.iter().any(|existing| {
                find_isomorphism(
                    existing.complex(),
                    candidate.complex(),
                    IsoConstraints {
                        base: Some((existing.center(), candidate.center())),
                        labels: Some((
                            existing.labeling().expect("labeled"),
                            candidate.labeling().expect("labeled"),
                        )),
                    },
                )
                .is_some()
            });
            if !duplicate {
                models.push(candidate);
            }
        }
    }
    ModelSet::new(models)
}

/// The realized-geography branched manifold for a model set, together with
/// everything that went into it.
#[derive(Clone, Debug)]
pub struct UniversalBuild {
    models: ModelSet,
    radius: usize,
    witnesses: Vec<SimplicialComplex>,
    union: SimplicialComplex,
    offsets: Vec<u32>,
    coloring: Coloring,
    geographies: GeographyLabeling,
    w: BranchedManifold,
    theta: Vec<Immersion>,
    psi: Vec<Color>,
}

impl UniversalBuild {
    pub fn models(&self) -> &ModelSet {
        &self.models
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn witnesses(&self) -> &[SimplicialComplex] {
        &self.witnesses
    }

    /// The disjoint union of the witnesses the build colored.
    pub fn witness_union(&self) -> &SimplicialComplex {
        &self.union
    }

    pub fn offsets(&self) -> &[u32] {
        &self.offsets
    }

    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    pub fn geography_labeling(&self) -> &GeographyLabeling {
        &self.geographies
    }

    pub fn geographies(&self) -> &[Geography] {
        self.geographies.geographies()
    }

    pub fn branched(&self) -> &BranchedManifold {
        &self.w
    }

    /// The canonical immersion of each witness, by geography.
    pub fn theta(&self) -> &[Immersion] {
        &self.theta
    }

    /// Center color per geography vertex of W.
    pub fn psi(&self) -> &[Color] {
        &self.psi
    }

    /// The canonical immersion of `m` into the build: send each vertex to
    /// its geography. Works for the witnesses and for any complex whose
    /// fresh coloring realizes only known geographies.
    pub fn canonical_immersion(&self, m: &SimplicialComplex) -> Result<Immersion> {
        if let Some(i) = self.witnesses.iter().position(|w| w == m) {
            return Ok(self.theta[i].clone());
        }
        let coloring = compute_d_coloring(m, self.radius);
        let gl = geographize(m, &coloring)?;
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for v in m.vertices() {
            let g = gl.geography_of(v).expect("geographized vertex");
            let idx = self
                .geographies
                .geographies()
                .binary_search_by(|probe| probe.cmp(g))
                .map_err(|_| Error::UnsaturatedGeography(v))?;
            map.insert(v, VertexId(idx as u32));
        }
        verify_immersion(m, &self.w, &map)
            .map_err(|o| Error::Internal(format!("geography map fails to immerse: {o}")))
    }
}

/// Builds the universal branched manifold for `models` from the given
/// witness complexes.
///
/// Every witness must be modeled on the set. The radius defaults to
/// `max(2, max model diameter + 1)` and may only be enlarged.
pub fn build_universal(
    models: &ModelSet,
    witnesses: &[SimplicialComplex],
    radius: Option<usize>,
) -> Result<UniversalBuild> {
    for (i, m) in witnesses.iter().enumerate() {
        if is_modeled_on(m, models).is_none() {
            return Err(Error::WitnessNotModeled(i));
        }
    }
    let required = 2.max(models.max_diameter() + 1);
    let d = radius.unwrap_or(required);
    if d < required {
        return Err(Error::RadiusTooSmall { given: d, required });
    }

    let parts: Vec<&SimplicialComplex> = witnesses.iter().collect();
    let (union, offsets) = disjoint_union(&parts);
    let coloring = compute_d_coloring(&union, d);
    let geographies = geographize(&union, &coloring)?;

    let geo_count = geographies.geographies().len();
    let geo_vertex = |q: VertexId| -> VertexId {
        VertexId(geographies.geography_index(q).expect("geographized") as u32)
    };

    // W's simplices are the geography images of witness simplices
    let mut w_simplices: Vec<Simplex> = Vec::new();
    for s in union.simplices() {
        let image = Simplex::new(s.vertices().iter().map(|q| geo_vertex(*q)));
        if image.dim() != s.dim() {
            return Err(Error::Internal(format!(
                "geography image of {s} is degenerate"
            )));
        }
        w_simplices.push(image);
    }
    let w_complex = SimplicialComplex::from_simplices(w_simplices);

    // fibers of the geography map
    let mut fibers: Vec<Vec<VertexId>> = vec![Vec::new(); geo_count];
    for q in union.vertices() {
        fibers[geo_vertex(q).0 as usize].push(q);
    }

    let mut projections = Vec::new();
    let mut psi = Vec::with_capacity(geo_count);
    for (x, fiber) in fibers.iter().enumerate() {
        let x_vertex = VertexId(x as u32);
        psi.push(geographies.geographies()[x].center_color());
        let domain = w_complex.closed_star(x_vertex)?;

        // the chart is the color image of the closed star of any point in
        // the fiber; the geography makes it independent of the choice
        let color_rename = |q: VertexId| -> Result<BTreeMap<VertexId, VertexId>> {
            union
                .closed_star(q)?
                .vertices()
                .map(|u| {
                    Ok((
                        u,
                        coloring
                            .color(u)
                            .ok_or(Error::PartialColoring(u))?
                            .as_vertex(),
                    ))
                })
                .collect()
        };
        let q0 = fiber.first().expect("nonempty fiber");
        let chart = union.closed_star(*q0)?.relabel(&color_rename(*q0)?)?;
        for q in &fiber[1..] {
            let other = union.closed_star(*q)?.relabel(&color_rename(*q)?)?;
            if other != chart {
                return Err(Error::Internal(format!(
                    "pseudo-geography chart differs between fiber points {q0} and {q}"
                )));
            }
        }

        let vertex_map: BTreeMap<VertexId, VertexId> = domain
            .vertices()
            .map(|g| {
                let c = psi_color(&geographies, g);
                (g, c.as_vertex())
            })
            .collect();
        for (g, c) in &vertex_map {
            if !chart.contains_vertex(*c) {
                return Err(Error::Internal(format!(
                    "center color of geography {g} missing from the chart"
                )));
            }
        }
        let map = SimplicialMap::new(domain.clone(), chart.clone(), vertex_map)?;

        let mut sheets: BTreeSet<SimplicialComplex> = BTreeSet::new();
        for q in fiber {
            let sheet = SimplicialComplex::from_simplices(
                union
                    .closed_star(*q)?
                    .simplices()
                    .map(|s| Simplex::new(s.vertices().iter().map(|u| geo_vertex(*u)))),
            );
            sheets.insert(sheet);
        }
        projections.push(LocalProjection::new(
            domain,
            chart,
            map,
            sheets.into_iter().collect(),
        )?);
    }

    let w = BranchedManifold::new(w_complex, projections);
    let report = w.validate();
    if !report.is_ok() {
        return Err(Error::Internal(format!(
            "constructed branched manifold fails validation: {}",
            report
                .violations
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }

    let mut theta = Vec::with_capacity(witnesses.len());
    for (m, offset) in witnesses.iter().zip(&offsets) {
        let map: BTreeMap<VertexId, VertexId> = m
            .vertices()
            .map(|v| (v, geo_vertex(VertexId(v.0 + offset))))
            .collect();
        let immersion = verify_immersion(m, &w, &map)
            .map_err(|o| Error::Internal(format!("witness fails its canonical immersion: {o}")))?;
        theta.push(immersion);
    }

    Ok(UniversalBuild {
        models: models.clone(),
        radius: d,
        witnesses: witnesses.to_vec(),
        union,
        offsets,
        coloring,
        geographies,
        w,
        theta,
        psi,
    })
}

fn psi_color(gl: &GeographyLabeling, g: VertexId) -> Color {
    gl.geographies()[g.0 as usize].center_color()
}

/// One row of the equivalence report.
#[derive(Clone, Debug)]
pub struct EquivalenceEntry {
    pub complex: SimplicialComplex,
    pub modeled: bool,
    pub immersed: bool,
}

/// Outcome of comparing the modeled-on side with the immersion side over
/// all small closed manifolds.
#[derive(Clone, Debug, Default)]
pub struct EquivalenceReport {
    pub entries: Vec<EquivalenceEntry>,
}

impl EquivalenceReport {
    pub fn disagreements(&self) -> Vec<&EquivalenceEntry> {
        self.entries
            .iter()
            .filter(|e| e.modeled != e.immersed)
            .collect()
    }

    pub fn is_equivalent(&self) -> bool {
        self.disagreements().is_empty()
    }

    pub fn modeled(&self) -> Vec<&SimplicialComplex> {
        self.entries
            .iter()
            .filter(|e| e.modeled)
            .map(|e| &e.complex)
            .collect()
    }

    pub fn immersed(&self) -> Vec<&SimplicialComplex> {
        self.entries
            .iter()
            .filter(|e| e.immersed)
            .map(|e| &e.complex)
            .collect()
    }
}

/// Enumerates all closed connected n-manifolds up to `max_vertices` and
/// compares membership via `is_modeled_on` against membership via
/// `find_immersion` into the build.
pub fn verify_equivalence(
    models: &ModelSet,
    build: &UniversalBuild,
    max_vertices: usize,
) -> Result<EquivalenceReport> {
    let Some(n) = models.dim().or(build.branched().complex().dim()) else {
        return Ok(EquivalenceReport::default());
    };
    let mut report = EquivalenceReport::default();
    for complex in enumerate_closed_manifolds(n, max_vertices)? {
        let modeled = is_modeled_on(&complex, models).is_some();
        let immersed = find_immersion(&complex, build.branched()).is_some();
        report.entries.push(EquivalenceEntry {
            complex,
            modeled,
            immersed,
        });
    }
    Ok(report)
}
