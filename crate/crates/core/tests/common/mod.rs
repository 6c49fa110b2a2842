//! Brute-force oracles shared by the integration tests. Everything here
//! re-derives answers from first principles, independent of the search
//! code under test.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use lcdkit::branched::BranchedManifold;
use lcdkit::labeling::{Color, Coloring};
use lcdkit::model::{LocalModel, ModelSet};
use lcdkit::{boundary_complex, Simplex, SimplicialComplex, VertexId};

/// Definitional d-coloring check: literally test injectivity on every
/// d-neighborhood.
pub fn definitional_is_d_coloring(k: &SimplicialComplex, coloring: &Coloring) -> bool {
    k.vertices().all(|v| {
        let nbhd = k.neighborhood(v, coloring.radius()).expect("own vertex");
        let colors: Vec<Color> = nbhd
            .vertices()
            .map(|u| coloring.color(u).expect("total coloring"))
            .collect();
        let distinct: BTreeSet<Color> = colors.iter().copied().collect();
        distinct.len() == colors.len()
    })
}

/// Is there an injective simplicial map of the model into `m` sending the
/// center to `x` whose image contains every simplex incident to `x`?
/// Enumerate all injective maps outright.
pub fn brute_force_has_model_neighborhood(
    m: &SimplicialComplex,
    labels: Option<&lcdkit::Labeling>,
    x: VertexId,
    model: &LocalModel,
) -> bool {
    let model_vertices: Vec<VertexId> = model
        .complex()
        .vertices()
        .filter(|v| *v != model.center())
        .collect();
    let m_vertices: Vec<VertexId> = m.vertices().filter(|v| *v != x).collect();
    if model_vertices.len() > m_vertices.len() {
        return false;
    }
    let star: Vec<Simplex> = m
        .closed_star(x)
        .expect("vertex of m")
        .simplices()
        .cloned()
        .collect();

    for images in m_vertices.iter().permutations(model_vertices.len()) {
        let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        map.insert(model.center(), x);
        for (v, w) in model_vertices.iter().zip(images) {
            map.insert(*v, *w);
        }
        let simplicial = model.complex().simplices().all(|s| {
            let image = Simplex::new(s.vertices().iter().map(|v| map[v]));
            image.dim() == s.dim() && m.contains_simplex(&image)
        });
        if !simplicial {
            continue;
        }
        let image_simplices: BTreeSet<Simplex> = model
            .complex()
            .simplices()
            .map(|s| Simplex::new(s.vertices().iter().map(|v| map[v])))
            .collect();
        if !star.iter().all(|s| image_simplices.contains(s)) {
            continue;
        }
        if let (Some(ml), Some(l)) = (model.labeling(), labels) {
            let vertex_ok = ml
                .vertex_labels()
                .iter()
                .all(|(y, lab)| l.vertex_label(map[y]) == Some(lab));
            let simplex_ok = ml.simplex_labels().iter().all(|(s, lab)| {
                let image = Simplex::new(s.vertices().iter().map(|v| map[v]));
                l.simplex_label(&image) == Some(lab)
            });
            if !vertex_ok || !simplex_ok {
                continue;
            }
        }
        return true;
    }
    false
}

/// Brute-force modeled-on check. For labeled sets, enumerates every total
/// vertex labeling over the model alphabet; feasible only for small
/// complexes.
pub fn brute_force_is_modeled_on(m: &SimplicialComplex, models: &ModelSet) -> bool {
    if m.is_empty() {
        return true;
    }
    if models.is_empty() {
        return false;
    }
    if !models.is_labeled() {
        return m.vertices().all(|x| {
            models
                .models()
                .iter()
                .any(|model| brute_force_has_model_neighborhood(m, None, x, model))
        });
    }

    // collect the vertex-label alphabet of the models
    let alphabet: Vec<lcdkit::Label> = models
        .models()
        .iter()
        .flat_map(|mo| {
            mo.labeling()
                .expect("labeled set")
                .vertex_labels()
                .values()
                .cloned()
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let vertices: Vec<VertexId> = m.vertices().collect();
    let mut counters = vec![0usize; vertices.len()];
    loop {
        let mut labeling = lcdkit::Labeling::new();
        for (v, c) in vertices.iter().zip(&counters) {
            labeling.set_vertex_label(*v, alphabet[*c].clone());
        }
        let covered = m.vertices().all(|x| {
            models
                .models()
                .iter()
                .any(|model| brute_force_has_model_neighborhood(m, Some(&labeling), x, model))
        });
        if covered {
            return true;
        }
        // odometer over labelings
        let mut i = 0;
        loop {
            if i == counters.len() {
                return false;
            }
            counters[i] += 1;
            if counters[i] < alphabet.len() {
                break;
            }
            counters[i] = 0;
            i += 1;
        }
    }
}

/// Definitional proper-immersion check for a total vertex map, written
/// from the definition: simplicial, nondegenerate, locally injective
/// through every projection wherever defined, star covered by some chart,
/// and proper.
pub fn definitional_is_immersion(
    m: &SimplicialComplex,
    w: &BranchedManifold,
    map: &BTreeMap<VertexId, VertexId>,
) -> bool {
    let image_of = |s: &Simplex| Simplex::new(s.vertices().iter().map(|v| map[v]));
    let simplicial = m
        .simplices()
        .all(|s| w.complex().contains_simplex(&image_of(s)));
    if !simplicial {
        return false;
    }
    if !m.simplices().all(|s| image_of(s).dim() == s.dim()) {
        return false;
    }

    for x in m.vertices() {
        let star = m.closed_star(x).expect("own vertex");
        let star_vertices: Vec<VertexId> = star.vertices().collect();
        // some projection sees the whole star image
        let witnessed = w.projections().iter().any(|p| {
            star.simplices()
                .all(|s| p.domain().contains_simplex(&image_of(s)))
        });
        if !witnessed {
            return false;
        }
        // every projection is injective on the part of the star it sees
        for p in w.projections() {
            let mut seen: BTreeSet<VertexId> = BTreeSet::new();
            for u in &star_vertices {
                let y = map[u];
                if p.domain().contains_vertex(y) && !seen.insert(p.map().apply(y)) {
                    return false;
                }
            }
        }
    }

    let Ok(source_boundary) = boundary_complex(m) else {
        return false;
    };
    let Ok(target_boundary) = w.boundary() else {
        return false;
    };
    let preimage: BTreeSet<Simplex> = m
        .simplices()
        .filter(|s| target_boundary.contains_simplex(&image_of(s)))
        .cloned()
        .collect();
    let expected: BTreeSet<Simplex> = source_boundary.simplices().cloned().collect();
    preimage == expected
}

/// Does any total vertex map give a proper immersion? Enumerates all maps.
pub fn brute_force_immersion_exists(m: &SimplicialComplex, w: &BranchedManifold) -> bool {
    let mvs: Vec<VertexId> = m.vertices().collect();
    let wvs: Vec<VertexId> = w.complex().vertices().collect();
    if mvs.is_empty() {
        return true;
    }
    mvs.iter()
        .map(|_| wvs.iter().copied())
        .multi_cartesian_product()
        .any(|choice| {
            let map: BTreeMap<VertexId, VertexId> = mvs.iter().copied().zip(choice).collect();
            definitional_is_immersion(m, w, &map)
        })
}

/// Fixture corpus used by the oracle-agreement and coloring tests.
pub fn fixture_corpus() -> Vec<(&'static str, SimplicialComplex)> {
    use lcdkit::fixtures as fx;
    vec![
        ("single-vertex", fx::single_vertex()),
        ("edge", fx::path(2)),
        ("path-3", fx::path(3)),
        ("path-5", fx::path(5)),
        ("cycle-3", fx::cycle(3)),
        ("cycle-4", fx::cycle(4)),
        ("cycle-5", fx::cycle(5)),
        ("cycle-6", fx::cycle(6)),
        ("cycle-9", fx::cycle(9)),
        ("cycle-12", fx::cycle(12)),
        ("disjoint-edges", fx::disjoint_edges()),
        ("triangle", fx::full_simplex(2)),
        ("tetrahedron", fx::full_simplex(3)),
        ("sphere-tetra", fx::boundary_of_simplex(3)),
        ("octahedron", fx::octahedron()),
        ("torus-7", fx::torus_7()),
        ("wheel-4", fx::wheel(4)),
        ("wheel-6", fx::wheel(6)),
        ("annulus", fx::annulus_6()),
        ("two-triangles", fx::two_triangles_sharing_vertex()),
        ("wedge-circles", fx::wedge_of_two_circles()),
    ]
}
