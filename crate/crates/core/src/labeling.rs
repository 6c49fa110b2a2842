//! Labelings, distance-d colorings, and geography labels.
//!
//! A labeling assigns tags to vertices and top simplices. A d-coloring is a
//! vertex labeling injective on every d-neighborhood; the fast check uses
//! the equivalent pairwise criterion (two vertices lie in a common
//! d-neighborhood exactly when their distance is at most 2d). A geography is
//! the canonical form of a colored d-neighborhood: because colors are
//! distinct inside the neighborhood, renaming vertices to their colors is a
//! complete invariant and geography equality is plain structural equality.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::complex::{
    find_isomorphism, IsoConstraints, Simplex, SimplicialComplex, SimplicialMap, VertexId,
};
use crate::error::{Error, Result};

/// An arbitrary tag carried by a vertex or a top simplex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Label(String);

impl Label {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label(s.to_owned())
    }
}

impl From<String> for Label {
    fn from(s: String) -> Self {
        Label(s)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A partial map from vertices and top simplices to labels.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Labeling {
    vertex_labels: BTreeMap<VertexId, Label>,
    simplex_labels: BTreeMap<Simplex, Label>,
}

impl Labeling {
    pub fn new() -> Self {
        Labeling::default()
    }

    pub fn set_vertex_label(&mut self, v: VertexId, label: Label) {
        self.vertex_labels.insert(v, label);
    }

    pub fn set_simplex_label(&mut self, s: Simplex, label: Label) {
        self.simplex_labels.insert(s, label);
    }

    pub fn vertex_label(&self, v: VertexId) -> Option<&Label> {
        self.vertex_labels.get(&v)
    }

    pub fn simplex_label(&self, s: &Simplex) -> Option<&Label> {
        self.simplex_labels.get(s)
    }

    pub fn vertex_labels(&self) -> &BTreeMap<VertexId, Label> {
        &self.vertex_labels
    }

    pub fn simplex_labels(&self) -> &BTreeMap<Simplex, Label> {
        &self.simplex_labels
    }

    /// The set of labels in use.
    pub fn alphabet(&self) -> BTreeSet<&Label> {
        self.vertex_labels
            .values()
            .chain(self.simplex_labels.values())
            .collect()
    }

    /// Checks the domain lies inside the labelable items of `k`: its
    /// vertices and its top-dimensional simplices.
    pub fn validate_on(&self, k: &SimplicialComplex) -> Result<()> {
        for v in self.vertex_labels.keys() {
            if !k.contains_vertex(*v) {
                return Err(Error::UnknownVertex(*v));
            }
        }
        let n = k.dim();
        for s in self.simplex_labels.keys() {
            if !k.contains_simplex(s) {
                return Err(Error::UnknownSimplex(s.clone()));
            }
            if Some(s.dim()) != n {
                return Err(Error::NotTopSimplex(s.clone()));
            }
        }
        Ok(())
    }

    pub fn is_total_on_vertices(&self, k: &SimplicialComplex) -> bool {
        k.vertices().all(|v| self.vertex_labels.contains_key(&v))
    }

    /// Restriction to a subcomplex. Simplex labels survive only on
    /// simplices that are still top-dimensional in `sub`.
    pub fn restrict_to(&self, sub: &SimplicialComplex) -> Labeling {
        let n = sub.dim();
        Labeling {
            vertex_labels: self
                .vertex_labels
                .iter()
                .filter(|(v, _)| sub.contains_vertex(**v))
                .map(|(v, l)| (*v, l.clone()))
                .collect(),
            simplex_labels: self
                .simplex_labels
                .iter()
                .filter(|(s, _)| sub.contains_simplex(s) && Some(s.dim()) == n)
                .map(|(s, l)| (s.clone(), l.clone()))
                .collect(),
        }
    }

    /// Pushes labels through an injective vertex renaming.
    pub fn relabel(&self, map: &BTreeMap<VertexId, VertexId>) -> Result<Labeling> {
        let mut out = Labeling::new();
        for (v, l) in &self.vertex_labels {
            let w = map.get(v).copied().ok_or(Error::MapNotTotal(*v))?;
            out.vertex_labels.insert(w, l.clone());
        }
        for (s, l) in &self.simplex_labels {
            let vs: Result<Vec<VertexId>> = s
                .vertices()
                .iter()
                .map(|v| map.get(v).copied().ok_or(Error::MapNotTotal(*v)))
                .collect();
            out.simplex_labels.insert(Simplex::new(vs?), l.clone());
        }
        Ok(out)
    }
}

/// A color; colors double as vertex names in canonical geography charts.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Color(pub u32);

impl Color {
    pub fn as_vertex(self) -> VertexId {
        VertexId(self.0)
    }

    pub fn as_label(self) -> Label {
        Label(format!("c{}", self.0))
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// A total vertex coloring together with the radius it is valid for.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coloring {
    colors: BTreeMap<VertexId, Color>,
    radius: usize,
}

impl Coloring {
    pub fn new(colors: BTreeMap<VertexId, Color>, radius: usize) -> Self {
        Coloring { colors, radius }
    }

    pub fn color(&self, v: VertexId) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    pub fn colors(&self) -> &BTreeMap<VertexId, Color> {
        &self.colors
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn with_radius(&self, radius: usize) -> Coloring {
        Coloring {
            colors: self.colors.clone(),
            radius,
        }
    }

    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.values().copied().collect()
    }

    /// Colors as a vertex labeling, for label-constrained searches.
    pub fn as_labeling(&self) -> Labeling {
        let mut l = Labeling::new();
        for (v, c) in &self.colors {
            l.set_vertex_label(*v, c.as_label());
        }
        l
    }

    /// Restriction to the vertices of a subcomplex, keeping the radius.
    pub fn restrict_to(&self, sub: &SimplicialComplex) -> Coloring {
        Coloring {
            colors: self
                .colors
                .iter()
                .filter(|(v, _)| sub.contains_vertex(**v))
                .map(|(v, c)| (*v, *c))
                .collect(),
            radius: self.radius,
        }
    }
}

/// Is the coloring injective on every d-neighborhood of `k`?
///
/// Uses the pairwise criterion: equivalent to all vertex pairs at distance
/// at most `2d` carrying distinct colors.
pub fn is_d_coloring(k: &SimplicialComplex, coloring: &Coloring) -> Result<bool> {
    for v in k.vertices() {
        if coloring.color(v).is_none() {
            return Err(Error::PartialColoring(v));
        }
    }
    let d = coloring.radius();
    for v in k.vertices() {
        let ball = k.ball_vertices(v, 2 * d)?;
        let cv = coloring.color(v).expect("checked total");
        for u in ball {
            if u > v && coloring.color(u) == Some(cv) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Greedy d-coloring: least available color, vertices in ascending order.
///
/// Always valid, and uses at most `max |N(k, v, 2d)|` colors.
pub fn compute_d_coloring(k: &SimplicialComplex, d: usize) -> Coloring {
    let mut colors: BTreeMap<VertexId, Color> = BTreeMap::new();
    for v in k.vertices() {
        let ball = k.ball_vertices(v, 2 * d).expect("own vertex");
        let taken: BTreeSet<u32> = ball
            .iter()
            .filter_map(|u| colors.get(u).map(|c| c.0))
            .collect();
        let mut c = 0u32;
        while taken.contains(&c) {
            c += 1;
        }
        colors.insert(v, Color(c));
    }
    Coloring { colors, radius: d }
}

/// The canonical form of a colored d-neighborhood: the chart has its
/// vertices renamed to their colors and remembers the center's color.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Geography {
    center_color: Color,
    chart: SimplicialComplex,
}

impl Geography {
    pub fn center_color(&self) -> Color {
        self.center_color
    }

    /// The color-renamed chart complex; its vertex ids are color ids.
    pub fn chart(&self) -> &SimplicialComplex {
        &self.chart
    }
}

/// Canonical geography of `v`: its colored d-neighborhood with vertices
/// renamed to their colors, paired with the color of `v`.
pub fn compute_geography(
    k: &SimplicialComplex,
    coloring: &Coloring,
    v: VertexId,
) -> Result<Geography> {
    let nbhd = k.neighborhood(v, coloring.radius())?;
    let mut rename: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut seen: BTreeSet<Color> = BTreeSet::new();
    for u in nbhd.vertices() {
        let c = coloring.color(u).ok_or(Error::PartialColoring(u))?;
        if !seen.insert(c) {
            return Err(Error::InvalidColoring(format!(
                "color {c} repeats inside the {}-neighborhood of {v}",
                coloring.radius()
            )));
        }
        rename.insert(u, c.as_vertex());
    }
    let chart = nbhd.relabel(&rename)?;
    Ok(Geography {
        center_color: coloring.color(v).ok_or(Error::PartialColoring(v))?,
        chart,
    })
}

/// Geographies of all vertices plus the deduplicated geography set, in
/// canonical order.
#[derive(Clone, Debug)]
pub struct GeographyLabeling {
    coloring: Coloring,
    geographies: Vec<Geography>,
    assignment: BTreeMap<VertexId, usize>,
}

impl GeographyLabeling {
    pub fn coloring(&self) -> &Coloring {
        &self.coloring
    }

    /// The distinct geographies, sorted canonically.
    pub fn geographies(&self) -> &[Geography] {
        &self.geographies
    }

    pub fn geography_index(&self, v: VertexId) -> Option<usize> {
        self.assignment.get(&v).copied()
    }

    pub fn geography_of(&self, v: VertexId) -> Option<&Geography> {
        self.assignment.get(&v).map(|i| &self.geographies[*i])
    }

    pub fn assignment(&self) -> &BTreeMap<VertexId, usize> {
        &self.assignment
    }
}

/// Assigns every vertex its geography. Errors if the coloring is not a
/// valid d-coloring.
pub fn geographize(k: &SimplicialComplex, coloring: &Coloring) -> Result<GeographyLabeling> {
    if !is_d_coloring(k, coloring)? {
        return Err(Error::InvalidColoring(format!(
            "not a valid {}-coloring",
            coloring.radius()
        )));
    }
    let mut geographies: BTreeSet<Geography> = BTreeSet::new();
    let mut per_vertex: BTreeMap<VertexId, Geography> = BTreeMap::new();
    for v in k.vertices() {
        let g = compute_geography(k, coloring, v)?;
        geographies.insert(g.clone());
        per_vertex.insert(v, g);
    }
    let geographies: Vec<Geography> = geographies.into_iter().collect();
    let assignment = per_vertex
        .into_iter()
        .map(|(v, g)| {
            let idx = geographies
                .binary_search_by(|probe| probe.cmp(&g))
                .expect("geography present");
            (v, idx)
        })
        .collect();
    Ok(GeographyLabeling {
        coloring: coloring.clone(),
        geographies,
        assignment,
    })
}

/// The unique color-preserving isomorphism between the d-neighborhoods of
/// two vertices with equal geography: each vertex goes to the vertex
/// with the same color.
pub fn geography_transport(
    k: &SimplicialComplex,
    gl: &GeographyLabeling,
    u: VertexId,
    v: VertexId,
) -> Result<SimplicialMap> {
    let gu = gl.geography_index(u).ok_or(Error::UnknownVertex(u))?;
    let gv = gl.geography_index(v).ok_or(Error::UnknownVertex(v))?;
    if gu != gv {
        return Err(Error::GeographyMismatch(u, v));
    }
    let d = gl.coloring().radius();
    let from = k.neighborhood(u, d)?;
    let to = k.neighborhood(v, d)?;
    let by_color: BTreeMap<Color, VertexId> = to
        .vertices()
        .map(|w| (gl.coloring().color(w).expect("colored"), w))
        .collect();
    let map: BTreeMap<VertexId, VertexId> = from
        .vertices()
        .map(|w| {
            let c = gl.coloring().color(w).expect("colored");
            (w, by_color[&c])
        })
        .collect();
    let f = SimplicialMap::new(from, to, map)?;
    debug_assert!(f.is_isomorphism());
    Ok(f)
}

/// Color-preserving isomorphism search between colored neighborhoods, used
/// as an independent cross-check of canonical geography equality.
pub fn color_isomorphic(
    a: &SimplicialComplex,
    ca: &Coloring,
    b: &SimplicialComplex,
    cb: &Coloring,
) -> bool {
    let la = ca.as_labeling();
    let lb = cb.as_labeling();
    find_isomorphism(a, b, IsoConstraints::labels(&la, &lb)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    fn periodic_coloring(k: usize, period: u32, d: usize) -> Coloring {
        Coloring::new(
            (0..k as u32).map(|i| (v(i), Color(i % period))).collect(),
            d,
        )
    }

    #[test]
    fn periodic_coloring_of_c6_is_1_coloring() {
        let c6 = fixtures::cycle(6);
        assert!(is_d_coloring(&c6, &periodic_coloring(6, 3, 1)).unwrap());
    }

    #[test]
    fn repeated_color_on_edge_fails() {
        let edge = SimplicialComplex::from_maximal([Simplex::from_ids(&[0, 1])]);
        let c = Coloring::new([(v(0), Color(1)), (v(1), Color(1))].into(), 1);
        assert!(!is_d_coloring(&edge, &c).unwrap());
    }

    #[test]
    fn injective_coloring_is_always_valid() {
        let t = fixtures::torus_7();
        let c = Coloring::new(t.vertices().map(|u| (u, Color(u.0))).collect(), 3);
        assert!(is_d_coloring(&t, &c).unwrap());
    }

    #[test]
    fn partial_coloring_is_an_error() {
        let c6 = fixtures::cycle(6);
        let c = Coloring::new([(v(0), Color(0))].into(), 1);
        assert!(is_d_coloring(&c6, &c).is_err());
    }

    #[test]
    fn greedy_coloring_is_valid_and_small() {
        let c6 = fixtures::cycle(6);
        let col = compute_d_coloring(&c6, 1);
        assert!(is_d_coloring(&c6, &col).unwrap());
        assert_eq!(col.palette().len(), 3);

        let single = fixtures::single_vertex();
        assert_eq!(compute_d_coloring(&single, 4).palette().len(), 1);

        // complete 1-skeleton forces all colors distinct
        let t = fixtures::torus_7();
        assert_eq!(compute_d_coloring(&t, 1).palette().len(), 7);
    }

    #[test]
    fn geography_of_cycle_vertices() {
        let c6 = fixtures::cycle(6);
        let col = periodic_coloring(6, 3, 1);
        let g0 = compute_geography(&c6, &col, v(0)).unwrap();
        assert_eq!(g0.center_color(), Color(0));
        assert_eq!(g0.chart().vertex_count(), 3);
        assert_eq!(g0.chart().simplices_of_dim(1).count(), 2);
        let g3 = compute_geography(&c6, &col, v(3)).unwrap();
        assert_eq!(g0, g3);
        let g1 = compute_geography(&c6, &col, v(1)).unwrap();
        assert_ne!(g0, g1);
    }

    #[test]
    fn geography_of_single_vertex() {
        let k = fixtures::single_vertex();
        let col = Coloring::new([(v(0), Color(7))].into(), 2);
        let g = compute_geography(&k, &col, v(0)).unwrap();
        assert_eq!(g.center_color(), Color(7));
        assert_eq!(g.chart().vertex_count(), 1);
    }

    #[test]
    fn geographize_counts() {
        let c6 = fixtures::cycle(6);
        let gl = geographize(&c6, &periodic_coloring(6, 3, 1)).unwrap();
        assert_eq!(gl.geographies().len(), 3);

        // globally injective coloring: one geography per vertex
        let inj = Coloring::new(c6.vertices().map(|u| (u, Color(u.0))).collect(), 1);
        let gl = geographize(&c6, &inj).unwrap();
        assert_eq!(gl.geographies().len(), 6);

        // same local pictures in a longer cycle
        let c9 = fixtures::cycle(9);
        let gl6 = geographize(&c6, &periodic_coloring(6, 3, 1)).unwrap();
        let gl9 = geographize(&c9, &periodic_coloring(9, 3, 1)).unwrap();
        assert_eq!(gl6.geographies(), gl9.geographies());
    }

    #[test]
    fn geographize_rejects_invalid_coloring() {
        let c6 = fixtures::cycle(6);
        assert!(geographize(&c6, &periodic_coloring(6, 2, 1)).is_err());
    }

    #[test]
    fn recomputation_is_idempotent() {
        let t = fixtures::torus_7();
        let col = compute_d_coloring(&t, 1);
        let gl = geographize(&t, &col).unwrap();
        for u in t.vertices() {
            let g = compute_geography(&t, &col, u).unwrap();
            assert_eq!(Some(&g), gl.geography_of(u));
        }
    }

    #[test]
    fn transport_between_equal_geographies() {
        let c6 = fixtures::cycle(6);
        let gl = geographize(&c6, &periodic_coloring(6, 3, 1)).unwrap();

        let id = geography_transport(&c6, &gl, v(2), v(2)).unwrap();
        assert!(id.vertex_map().iter().all(|(a, b)| a == b));

        // rotation by three, restricted to the 1-neighborhood
        let f = geography_transport(&c6, &gl, v(0), v(3)).unwrap();
        assert_eq!(f.apply(v(0)), v(3));
        assert_eq!(f.apply(v(1)), v(4));
        assert_eq!(f.apply(v(5)), v(2));

        assert!(matches!(
            geography_transport(&c6, &gl, v(0), v(1)),
            Err(Error::GeographyMismatch(_, _))
        ));
    }

    #[test]
    fn transport_composes_to_identity() {
        let c6 = fixtures::cycle(6);
        let gl = geographize(&c6, &periodic_coloring(6, 3, 1)).unwrap();
        let f = geography_transport(&c6, &gl, v(0), v(3)).unwrap();
        let g = geography_transport(&c6, &gl, v(3), v(0)).unwrap();
        let round = f.compose(&g).unwrap();
        assert!(round.vertex_map().iter().all(|(a, b)| a == b));
    }
}
