//! Structural invariants of the universal build, checked on the two main
//! fixtures: the cyclic path models with cycle witnesses and the wheel
//! models with the octahedron witness.

use std::collections::BTreeMap;

use lcdkit::branched::{BranchedManifold, LocalProjection};
use lcdkit::labeling::color_isomorphic;
use lcdkit::model::{kit, ModelSet};
use lcdkit::universal::{build_universal, models_from_branched, UniversalBuild};
use lcdkit::{find_isomorphism, fixtures, IsoConstraints, SimplicialComplex, VertexId};

fn builds() -> Vec<(&'static str, UniversalBuild)> {
    let cyclic = kit::cyclic_paths();
    let cycles = build_universal(&cyclic, &[fixtures::cycle(3), fixtures::cycle(6)], None).unwrap();
    let wheels = ModelSet::new(vec![kit::wheel(4)]).unwrap();
    let octa = build_universal(&wheels, &[fixtures::octahedron()], None).unwrap();
    vec![("cycles", cycles), ("octahedron", octa)]
}

#[test]
fn psi_after_geography_map_is_the_coloring() {
    for (name, build) in builds() {
        let gl = build.geography_labeling();
        for q in build.witness_union().vertices() {
            let g = gl.geography_index(q).expect("geographized");
            let center = build.psi()[g];
            assert_eq!(
                Some(center),
                build.coloring().color(q),
                "{name}: vertex {q}"
            );
        }
    }
}

#[test]
fn every_sheet_is_color_isomorphic_to_a_witness_star() {
    for (name, build) in builds() {
        let union = build.witness_union();
        // W vertex colors: geography center colors
        let w_coloring = lcdkit::Coloring::new(
            build
                .branched()
                .complex()
                .vertices()
                .map(|g| (g, build.psi()[g.0 as usize]))
                .collect(),
            build.coloring().radius(),
        );
        for p in build.branched().projections() {
            for sheet in p.sheets() {
                let matched = union.vertices().any(|q| {
                    let star = union.closed_star(q).expect("own vertex");
                    color_isomorphic(
                        sheet,
                        &w_coloring.restrict_to(sheet),
                        &star,
                        &build.coloring().restrict_to(&star),
                    )
                });
                assert!(matched, "{name}: a sheet matches no witness star");
            }
        }
    }
}

#[test]
fn geography_charts_overlap_along_edges() {
    // for adjacent vertices q, z of the witness union, the chart of q
    // contains the color image of the (d-1)-neighborhood of z, and that
    // image agrees with the neighborhood computed inside z's chart
    for (name, build) in builds() {
        let union = build.witness_union();
        let d = build.coloring().radius();
        let color_rename = |sub: &SimplicialComplex| -> SimplicialComplex {
            let map: BTreeMap<VertexId, VertexId> = sub
                .vertices()
                .map(|u| (u, build.coloring().color(u).expect("colored").as_vertex()))
                .collect();
            sub.relabel(&map).expect("colors distinct")
        };
        for q in union.vertices() {
            let chart_q = color_rename(&union.neighborhood(q, d).unwrap());
            for &z in union.neighbors(q).unwrap() {
                let inner = color_rename(&union.neighborhood(z, d - 1).unwrap());
                assert!(
                    inner.is_subcomplex_of(&chart_q),
                    "{name}: chart of {q} misses the (d-1)-ball of {z}"
                );
                let chart_z = color_rename(&union.neighborhood(z, d).unwrap());
                let z_color = build.coloring().color(z).unwrap().as_vertex();
                let inside = chart_z.neighborhood(z_color, d - 1).unwrap();
                assert_eq!(inside, inner, "{name}: neighborhood inside the chart");
            }
        }
    }
}

#[test]
fn parameterized_sheets_compose_to_the_chart_identity() {
    for (name, build) in builds() {
        for p in build.branched().projections() {
            for sheet in p.sheets() {
                let restricted = p.map().restrict_to(sheet).expect("sheet in domain");
                assert!(restricted.is_isomorphism(), "{name}");
                let back = restricted.inverse().expect("sheet map inverts");
                let round = back.compose(&restricted).expect("composable");
                for v in p.chart().vertices() {
                    assert_eq!(round.apply(v), v, "{name}");
                }
            }
        }
    }
}

#[test]
fn theta_is_nondegenerate_on_witness_simplices() {
    for (name, build) in builds() {
        for (m, imm) in build.witnesses().iter().zip(build.theta()) {
            for s in m.simplices() {
                assert_eq!(
                    imm.map().image_of(s).dim(),
                    s.dim(),
                    "{name}: degenerate image of {s}"
                );
            }
        }
    }
}

#[test]
fn compatibility_is_symmetric_and_transitive_on_overlaps() {
    for (name, build) in builds() {
        let w = build.branched();
        let projections = w.projections();
        for i in 0..projections.len() {
            for j in 0..projections.len() {
                let common: Vec<VertexId> = projections[i]
                    .domain()
                    .vertices()
                    .filter(|v| projections[j].domain().contains_vertex(*v))
                    .collect();
                for &p in &common {
                    for &q in &common {
                        let same_i = projections[i].map().apply(p) == projections[i].map().apply(q);
                        let same_j = projections[j].map().apply(p) == projections[j].map().apply(q);
                        assert_eq!(same_i, same_j, "{name}: projections {i},{j}");
                    }
                }
            }
        }
    }
}

#[test]
fn models_read_back_from_the_build_accept_the_witnesses() {
    // turn the built branched manifold back into labeled models; every
    // witness stays modeled on them
    for (name, build) in builds() {
        let witness_pairs: Vec<(SimplicialComplex, lcdkit::branched::Immersion)> = build
            .witnesses()
            .iter()
            .cloned()
            .zip(build.theta().iter().cloned())
            .collect();
        let models = models_from_branched(build.branched(), &witness_pairs).unwrap();
        assert!(models.is_labeled(), "{name}");
        for m in build.witnesses() {
            assert!(
                lcdkit::model::is_modeled_on(m, &models).is_some(),
                "{name}: witness stopped being modeled"
            );
        }
    }
}

#[test]
fn shrunk_domains_stop_being_nice() {
    // replace every projection domain by a single edge; simplices lose
    // their neighborhood charts
    let c6 = fixtures::cycle(6);
    let w = BranchedManifold::from_manifold(&c6).unwrap();
    assert!(w.is_nice().unwrap());
    let shrunk: Vec<LocalProjection> = w
        .projections()
        .iter()
        .map(|p| {
            let edge = p
                .domain()
                .simplices_of_dim(1)
                .next()
                .expect("an edge")
                .clone();
            let domain = SimplicialComplex::from_maximal([edge]);
            let map = p.map().restrict_to(&domain).unwrap();
            let chart = map.image();
            let map =
                lcdkit::SimplicialMap::new(domain.clone(), chart.clone(), map.vertex_map().clone())
                    .unwrap();
            LocalProjection::new(domain.clone(), chart, map, vec![domain]).unwrap()
        })
        .collect();
    let broken = BranchedManifold::new(c6, shrunk);
    assert!(!broken.is_nice().unwrap());
}

#[test]
fn witness_stars_match_universal_models_up_to_labels() {
    // the unlabeled complexes underlying the built models are witness stars
    let cyclic = kit::cyclic_paths();
    let build = build_universal(&cyclic, &[fixtures::cycle(3), fixtures::cycle(6)], None).unwrap();
    let witness_pairs: Vec<(SimplicialComplex, lcdkit::branched::Immersion)> = build
        .witnesses()
        .iter()
        .cloned()
        .zip(build.theta().iter().cloned())
        .collect();
    let models = models_from_branched(build.branched(), &witness_pairs).unwrap();
    for model in models.models() {
        let found = build.witnesses().iter().any(|m| {
            m.vertices().any(|u| {
                let star = m.closed_star(u).expect("own vertex");
                find_isomorphism(model.complex(), &star, IsoConstraints::default()).is_some()
            })
        });
        assert!(found);
    }
}
