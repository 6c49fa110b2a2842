//! Branched manifolds with combinatorial local projections, their
//! validation, branch sets, boundaries, and simplicial immersions.
//!
//! Charts are combinatorial balls rather than literal cubes; the
//! definition only ever uses charts up to PL homeomorphism, so nothing is
//! lost. Local injectivity of a nondegenerate simplicial map is decided on
//! the vertices of closed stars: injective there means injective on the
//! subcomplex.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{
    boundary_complex, Recognition, Simplex, SimplicialComplex, SimplicialMap, VertexId,
};
use crate::error::{Error, Result};

/// One local projection: a domain inside the branched manifold, a chart
/// ball, a nondegenerate simplicial map, and the sheets that cover the
/// domain and map isomorphically onto the chart.
#[derive(Clone, Debug)]
pub struct LocalProjection {
    domain: SimplicialComplex,
    chart: SimplicialComplex,
    map: SimplicialMap,
    sheets: Vec<SimplicialComplex>,
}

impl LocalProjection {
    pub fn new(
        domain: SimplicialComplex,
        chart: SimplicialComplex,
        map: SimplicialMap,
        sheets: Vec<SimplicialComplex>,
    ) -> Result<Self> {
        if map.source() != &domain || map.target() != &chart {
            return Err(Error::Internal(
                "projection map must go from its domain to its chart".into(),
            ));
        }
        Ok(LocalProjection {
            domain,
            chart,
            map,
            sheets,
        })
    }

    pub fn domain(&self) -> &SimplicialComplex {
        &self.domain
    }

    pub fn chart(&self) -> &SimplicialComplex {
        &self.chart
    }

    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn sheets(&self) -> &[SimplicialComplex] {
        &self.sheets
    }
}

/// A compact complex with finitely many local projections.
#[derive(Clone, Debug)]
pub struct BranchedManifold {
    complex: SimplicialComplex,
    projections: Vec<LocalProjection>,
}

/// A named defect found by [`BranchedManifold::validate`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    DomainNotSubcomplex {
        projection: usize,
    },
    DomainNotConnected {
        projection: usize,
    },
    MapDegenerate {
        projection: usize,
    },
    ChartNotBall {
        projection: usize,
    },
    SheetNotSubcomplex {
        projection: usize,
        sheet: usize,
    },
    SheetNotIsomorphic {
        projection: usize,
        sheet: usize,
    },
    SheetUnionIncomplete {
        projection: usize,
    },
    CoverageGap {
        vertex: VertexId,
    },
    Compatibility {
        first: usize,
        second: usize,
        p: VertexId,
        q: VertexId,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::DomainNotSubcomplex { projection } => {
                write!(f, "projection {projection}: domain is not a subcomplex")
            }
            Violation::DomainNotConnected { projection } => {
                write!(f, "projection {projection}: domain is not connected")
            }
            Violation::MapDegenerate { projection } => {
                write!(f, "projection {projection}: map is degenerate")
            }
            Violation::ChartNotBall { projection } => {
                write!(
                    f,
                    "projection {projection}: chart is not a combinatorial ball"
                )
            }
            Violation::SheetNotSubcomplex { projection, sheet } => {
                write!(
                    f,
                    "projection {projection}: sheet {sheet} is not inside the domain"
                )
            }
            Violation::SheetNotIsomorphic { projection, sheet } => write!(
                f,
                "projection {projection}: sheet {sheet} does not map isomorphically onto the chart"
            ),
            Violation::SheetUnionIncomplete { projection } => write!(
                f,
                "projection {projection}: sheet union differs from the domain"
            ),
            Violation::CoverageGap { vertex } => write!(
                f,
                "vertex {vertex} has no projection whose domain is a neighborhood"
            ),
            Violation::Compatibility {
                first,
                second,
                p,
                q,
            } => write!(
                f,
                "projections {first} and {second} disagree on identifying {p} and {q}"
            ),
        }
    }
}

/// Everything [`BranchedManifold::validate`] found.
#[derive(Clone, Debug, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl BranchedManifold {
    pub fn new(complex: SimplicialComplex, projections: Vec<LocalProjection>) -> Self {
        BranchedManifold {
            complex,
            projections,
        }
    }

    /// A manifold as a branched manifold: one projection per vertex with
    /// the closed star as domain, a renamed copy as chart, and a single
    /// sheet.
    pub fn from_manifold(k: &SimplicialComplex) -> Result<Self> {
        let n = k
            .dim()
            .ok_or_else(|| Error::NotAManifold("empty complex".into()))?;
        if !k.manifold_status(n).is_manifold() {
            return Err(Error::NotAManifold(
                "input complex fails the manifold check".into(),
            ));
        }
        let mut projections = Vec::new();
        for v in k.vertices() {
            let domain = k.closed_star(v)?;
            let rename: BTreeMap<VertexId, VertexId> = domain
                .vertices()
                .enumerate()
                .map(|(i, u)| (u, VertexId(i as u32)))
                .collect();
            let chart = domain.relabel(&rename)?;
            let map = SimplicialMap::new(domain.clone(), chart.clone(), rename)?;
            projections.push(LocalProjection::new(
                domain.clone(),
                chart,
                map,
                vec![domain],
            )?);
        }
        Ok(BranchedManifold::new(k.clone(), projections))
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn projections(&self) -> &[LocalProjection] {
        &self.projections
    }

    pub fn dim(&self) -> usize {
        self.complex.dim().unwrap_or(0)
    }

    /// Checks the covering, sheet, sheet-isomorphism, and compatibility
    /// conditions, plus chart ballness where decidable.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim();

        for (i, p) in self.projections.iter().enumerate() {
            if !p.domain().is_subcomplex_of(&self.complex) {
                report
                    .violations
                    .push(Violation::DomainNotSubcomplex { projection: i });
                continue;
            }
            if !p.domain().is_connected() {
                report
                    .violations
                    .push(Violation::DomainNotConnected { projection: i });
            }
            if !p.map().is_nondegenerate() {
                report
                    .violations
                    .push(Violation::MapDegenerate { projection: i });
            }
            match p.chart().is_ball(n) {
                Recognition::Yes => {}
                Recognition::No => report
                    .violations
                    .push(Violation::ChartNotBall { projection: i }),
                Recognition::Unknown => report.warnings.push(format!(
                    "projection {i}: chart ballness undecided at dimension {n}"
                )),
            }

            let mut union: BTreeSet<Simplex> = BTreeSet::new();
            for (j, sheet) in p.sheets().iter().enumerate() {
                if !sheet.is_subcomplex_of(p.domain()) {
                    report.violations.push(Violation::SheetNotSubcomplex {
                        projection: i,
                        sheet: j,
                    });
                    continue;
                }
                union.extend(sheet.simplices().cloned());
                match p.map().restrict_to(sheet) {
                    Ok(restricted) if restricted.is_isomorphism() => {}
                    _ => report.violations.push(Violation::SheetNotIsomorphic {
                        projection: i,
                        sheet: j,
                    }),
                }
            }
            if union.iter().cloned().collect::<BTreeSet<_>>()
                != p.domain().simplices().cloned().collect::<BTreeSet<_>>()
            {
                report
                    .violations
                    .push(Violation::SheetUnionIncomplete { projection: i });
            }
        }

        // every vertex needs a projection whose domain contains its star
        for v in self.complex.vertices() {
            let star = self.complex.closed_star(v).expect("own vertex");
            if !self
                .projections
                .iter()
                .any(|p| star.is_subcomplex_of(p.domain()))
            {
                report.violations.push(Violation::CoverageGap { vertex: v });
            }
        }

        // compatibility on vertices of overlaps; nondegeneracy extends the
        // conclusion to all points
        for i in 0..self.projections.len() {
            for j in (i + 1)..self.projections.len() {
                let pi = &self.projections[i];
                let pj = &self.projections[j];
                let common: Vec<VertexId> = pi
                    .domain()
                    .vertices()
                    .filter(|v| pj.domain().contains_vertex(*v))
                    .collect();
                'pairs: for (a, p) in common.iter().enumerate() {
                    for q in &common[a + 1..] {
                        let same_i = pi.map().apply(*p) == pi.map().apply(*q);
                        let same_j = pj.map().apply(*p) == pj.map().apply(*q);
                        if same_i != same_j {
                            report.violations.push(Violation::Compatibility {
                                first: i,
                                second: j,
                                p: *p,
                                q: *q,
                            });
                            break 'pairs;
                        }
                    }
                }
            }
        }

        report
    }

    /// The subcomplex of simplices whose interiors have no manifold
    /// neighborhood, found by link checks. Exact for dimension at most 3.
    pub fn branch_set(&self) -> Result<SimplicialComplex> {
        let n = self.dim();
        if n > 3 {
            return Err(Error::NotAManifold(format!(
                "branch set undecidable at dimension {n}"
            )));
        }
        let mut bad: Vec<Simplex> = Vec::new();
        for s in self.complex.simplices() {
            if s.dim() == n {
                continue;
            }
            let link = self.complex.simplex_link(s)?;
            let d = n - s.dim() - 1;
            let sphere = link.is_sphere(d);
            let ball = link.is_ball(d);
            if sphere != Recognition::Yes && ball != Recognition::Yes {
                bad.push(s.clone());
            }
        }
        Ok(SimplicialComplex::from_simplices(bad))
    }

    /// Simplices carried into the chart boundary by a projection whose
    /// domain is a neighborhood of them, with their faces.
    pub fn boundary(&self) -> Result<SimplicialComplex> {
        let mut chart_boundaries = Vec::with_capacity(self.projections.len());
        for p in &self.projections {
            chart_boundaries.push(boundary_complex(p.chart())?);
        }
        let mut boundary: Vec<Simplex> = Vec::new();
        for s in self.complex.simplices() {
            let star = self.complex.face_star(s)?;
            for (p, chart_boundary) in self.projections.iter().zip(&chart_boundaries) {
                if !star.is_subcomplex_of(p.domain()) {
                    continue;
                }
                if chart_boundary.contains_simplex(&p.map().image_of(s)) {
                    boundary.push(s.clone());
                    break;
                }
            }
        }
        Ok(SimplicialComplex::from_simplices(boundary))
    }

    /// Is the triangulation nice: the branch set is a subcomplex (always,
    /// by construction) and every simplex has a projection whose domain is
    /// a neighborhood of it.
    pub fn is_nice(&self) -> Result<bool> {
        let branch = self.branch_set()?;
        debug_assert!(branch.is_subcomplex_of(&self.complex));
        for s in self.complex.simplices() {
            let star = self.complex.face_star(s)?;
            if !self
                .projections
                .iter()
                .any(|p| star.is_subcomplex_of(p.domain()))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Witness that a map is an immersion: a chart per vertex in which the
/// composed projection is injective on the closed star.
#[derive(Clone, Debug)]
pub struct Immersion {
    map: SimplicialMap,
    witnesses: BTreeMap<VertexId, usize>,
}

impl Immersion {
    pub fn map(&self) -> &SimplicialMap {
        &self.map
    }

    pub fn witness(&self, v: VertexId) -> Option<usize> {
        self.witnesses.get(&v).copied()
    }

    pub fn witnesses(&self) -> &BTreeMap<VertexId, usize> {
        &self.witnesses
    }
}

/// Why a candidate map fails to be a proper immersion. A negative answer,
/// not an error.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Obstruction {
    NotSimplicial,
    Degenerate,
    SourceNotManifold,
    NoChartWitness { vertex: VertexId },
    LocallyNonInjective { vertex: VertexId, projection: usize },
    NotProper,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::NotSimplicial => write!(f, "vertex map is not simplicial"),
            Obstruction::Degenerate => write!(f, "map collapses a simplex"),
            Obstruction::SourceNotManifold => {
                write!(f, "source fails the combinatorial manifold check")
            }
            Obstruction::NoChartWitness { vertex } => write!(
                f,
                "no projection contains the image of the star of {vertex} injectively"
            ),
            Obstruction::LocallyNonInjective { vertex, projection } => write!(
                f,
                "projection {projection} composed with the map is not injective near {vertex}"
            ),
            Obstruction::NotProper => {
                write!(
                    f,
                    "preimage of the branched boundary differs from the source boundary"
                )
            }
        }
    }
}

/// Validates a vertex map as a proper immersion of `m` into `w`.
pub fn verify_immersion(
    m: &SimplicialComplex,
    w: &BranchedManifold,
    vertex_map: &BTreeMap<VertexId, VertexId>,
) -> std::result::Result<Immersion, Obstruction> {
    let map = SimplicialMap::new(m.clone(), w.complex().clone(), vertex_map.clone())
        .map_err(|_| Obstruction::NotSimplicial)?;
    if !map.is_nondegenerate() {
        return Err(Obstruction::Degenerate);
    }

    let mut witnesses = BTreeMap::new();
    for x in m.vertices() {
        let star = m.closed_star(x).expect("own vertex");
        let star_vertices: Vec<VertexId> = star.vertices().collect();
        let chosen = w.projections().iter().position(|p| {
            star.simplices()
                .all(|s| p.domain().contains_simplex(&map.image_of(s)))
                && injective_through(
                    &map,
                    p,
                    star_vertices
                        .iter()
                        .copied()
                        .filter(|u| p.domain().contains_vertex(map.apply(*u))),
                )
        });
        match chosen {
            Some(i) => {
                witnesses.insert(x, i);
            }
            None => return Err(Obstruction::NoChartWitness { vertex: x }),
        }

        // full definitional condition: every projection must be locally
        // injective on the part of the star it sees (compatibility makes
        // this redundant for valid targets; checked anyway)
        for (j, p) in w.projections().iter().enumerate() {
            let seen = star_vertices
                .iter()
                .copied()
                .filter(|u| p.domain().contains_vertex(map.apply(*u)));
            if !injective_through(&map, p, seen) {
                return Err(Obstruction::LocallyNonInjective {
                    vertex: x,
                    projection: j,
                });
            }
        }
    }

    // properness
    let source_boundary = boundary_complex(m).map_err(|_| Obstruction::SourceNotManifold)?;
    let target_boundary = w.boundary().map_err(|_| Obstruction::NotProper)?;
    let preimage: BTreeSet<&Simplex> = m
        .simplices()
        .filter(|s| target_boundary.contains_simplex(&map.image_of(s)))
        .collect();
    let expected: BTreeSet<&Simplex> = source_boundary.simplices().collect();
    if preimage != expected {
        return Err(Obstruction::NotProper);
    }

    Ok(Immersion { map, witnesses })
}

fn injective_through(
    map: &SimplicialMap,
    p: &LocalProjection,
    vertices: impl Iterator<Item = VertexId>,
) -> bool {
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for u in vertices {
        if !seen.insert(p.map().apply(map.apply(u))) {
            return false;
        }
    }
    true
}

/// Backtracking search for a proper immersion, deterministic, exhaustive
/// at the scales the toolkit works at.
pub fn find_immersion(m: &SimplicialComplex, w: &BranchedManifold) -> Option<Immersion> {
    if m.is_empty() {
        return verify_immersion(m, w, &BTreeMap::new()).ok();
    }
    if w.complex().is_empty() {
        return None;
    }

    // breadth-first order per component keeps candidates constrained
    let mut order: Vec<VertexId> = Vec::with_capacity(m.vertex_count());
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    for v in m.vertices() {
        if seen.contains(&v) {
            continue;
        }
        seen.insert(v);
        let mut queue = std::collections::VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &x in m.neighbors(u).expect("own vertex") {
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
    }

    // vertices within distance 2 must stay distinct under an immersion
    let near: BTreeMap<VertexId, BTreeSet<VertexId>> = m
        .vertices()
        .map(|v| {
            let mut ball = m.ball_vertices(v, 2).expect("own vertex");
            ball.remove(&v);
            (v, ball)
        })
        .collect();

    let mut assignment: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    extend_immersion(m, w, &order, &near, 0, &mut assignment)
}

fn extend_immersion(
    m: &SimplicialComplex,
    w: &BranchedManifold,
    order: &[VertexId],
    near: &BTreeMap<VertexId, BTreeSet<VertexId>>,
    depth: usize,
    assignment: &mut BTreeMap<VertexId, VertexId>,
) -> Option<Immersion> {
    if depth == order.len() {
        return verify_immersion(m, w, assignment).ok();
    }
    let u = order[depth];
    let candidates: Vec<VertexId> = {
        let mut base: Option<BTreeSet<VertexId>> = None;
        for x in m.neighbors(u).expect("own vertex") {
            if let Some(img) = assignment.get(x) {
                let nbrs = w.complex().neighbors(*img).expect("target vertex");
                base = Some(match base {
                    None => nbrs.clone(),
                    Some(prev) => prev.intersection(nbrs).copied().collect(),
                });
            }
        }
        match base {
            Some(set) => set.into_iter().collect(),
            None => w.complex().vertices().collect(),
        }
    };
    'candidates: for y in candidates {
        // star injectivity: no vertex within distance 2 shares the image
        for x in &near[&u] {
            if assignment.get(x) == Some(&y) {
                continue 'candidates;
            }
        }
        assignment.insert(u, y);
        let ok = m
            .simplices()
            .filter(|s| s.contains(u) && s.vertices().iter().all(|v| assignment.contains_key(v)))
            .all(|s| {
                let image = Simplex::new(s.vertices().iter().map(|v| assignment[v]));
                image.dim() == s.dim() && w.complex().contains_simplex(&image)
            });
        if ok {
            if let Some(found) = extend_immersion(m, w, order, near, depth + 1, assignment) {
                return Some(found);
            }
        }
        assignment.remove(&u);
    }
    None
}

/// Fixtures of branched one-manifolds used in tests and by the bundle
/// module.
pub mod tracks {
    use super::*;

    /// The wedge of `loops` circles, each subdivided into three edges, as a
    /// branched 1-manifold.
    ///
    /// Loop i runs wedge -> s_i -> t_i -> wedge where s_i = 2i+1 and
    /// t_i = 2i+2. At the wedge point every incoming end t_i may continue
    /// into every outgoing start s_j, so each path t_i - wedge - s_j is a
    /// sheet; a circle immersing through the wedge can switch loops but
    /// cannot turn back.
    pub fn wedge_track(loops: usize) -> BranchedManifold {
        assert!(loops >= 1);
        let mut edges = Vec::new();
        for i in 0..loops as u32 {
            let s = 2 * i + 1;
            let t = 2 * i + 2;
            edges.push(Simplex::from_ids(&[0, s]));
            edges.push(Simplex::from_ids(&[s, t]));
            edges.push(Simplex::from_ids(&[t, 0]));
        }
        let complex = SimplicialComplex::from_maximal(edges);

        let mut projections = Vec::new();
        // wedge-point projection: chart is the path 0-1-2 with the wedge in
        // the middle, all t's on the left, all s's on the right
        {
            let domain = complex.closed_star(VertexId(0)).expect("wedge vertex");
            let chart = SimplicialComplex::from_maximal([
                Simplex::from_ids(&[0, 1]),
                Simplex::from_ids(&[1, 2]),
            ]);
            let vertex_map: BTreeMap<VertexId, VertexId> = domain
                .vertices()
                .map(|v| {
                    let image = if v.0 == 0 {
                        1
                    } else if v.0 % 2 == 1 {
                        2 // an s vertex: outgoing
                    } else {
                        0 // a t vertex: incoming
                    };
                    (v, VertexId(image))
                })
                .collect();
            let map = SimplicialMap::new(domain.clone(), chart.clone(), vertex_map)
                .expect("track chart map");
            let mut sheets = Vec::new();
            for i in 0..loops as u32 {
                for j in 0..loops as u32 {
                    sheets.push(SimplicialComplex::from_maximal([
                        Simplex::from_ids(&[2 * i + 2, 0]),
                        Simplex::from_ids(&[0, 2 * j + 1]),
                    ]));
                }
            }
            projections
                .push(LocalProjection::new(domain, chart, map, sheets).expect("track projection"));
        }
        // interior vertices carry plain manifold charts
        for v in complex.vertices().filter(|v| v.0 != 0) {
            let domain = complex.closed_star(v).expect("own vertex");
            let rename: BTreeMap<VertexId, VertexId> = domain
                .vertices()
                .enumerate()
                .map(|(i, u)| (u, VertexId(i as u32)))
                .collect();
            let chart = domain.relabel(&rename).expect("injective rename");
            let map = SimplicialMap::new(domain.clone(), chart.clone(), rename).expect("track map");
            projections.push(
                LocalProjection::new(domain.clone(), chart, map, vec![domain])
                    .expect("track projection"),
            );
        }
        BranchedManifold::new(complex, projections)
    }

    /// Same wedge of two circles but with sheets that only follow their own
    /// circle through the wedge point: two sheets there instead of four.
    pub fn two_circles_following() -> BranchedManifold {
        let full = wedge_track(2);
        let mut projections = Vec::new();
        for (i, p) in full.projections().iter().enumerate() {
            if i == 0 {
                let sheets = vec![
                    SimplicialComplex::from_maximal([
                        Simplex::from_ids(&[2, 0]),
                        Simplex::from_ids(&[0, 1]),
                    ]),
                    SimplicialComplex::from_maximal([
                        Simplex::from_ids(&[4, 0]),
                        Simplex::from_ids(&[0, 3]),
                    ]),
                ];
                projections.push(
                    LocalProjection::new(
                        p.domain().clone(),
                        p.chart().clone(),
                        p.map().clone(),
                        sheets,
                    )
                    .expect("track projection"),
                );
            } else {
                projections.push(p.clone());
            }
        }
        BranchedManifold::new(full.complex().clone(), projections)
    }
}
