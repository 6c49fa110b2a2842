//! Oracle cross-checks: the fast implementations must agree with
//! brute-force re-derivations on the fixture corpus.

mod common;

use common::*;
use lcdkit::branched::{find_immersion, BranchedManifold};
use lcdkit::bundles::{eval_word, factor_matrix, Letter, Matrix2, Word};
use lcdkit::labeling::{
    color_isomorphic, compute_d_coloring, compute_geography, geographize, geography_transport,
    is_d_coloring, Color, Coloring,
};
use lcdkit::model::{is_modeled_on, kit, ModelSet};
use lcdkit::{fixtures, isomorphisms, IsoConstraints, VertexId};

/// Deterministic family of colorings to test: the greedy one and simple
/// periodic patterns, valid or not.
fn candidate_colorings(k: &lcdkit::SimplicialComplex, d: usize) -> Vec<Coloring> {
    let mut out = vec![compute_d_coloring(k, d)];
    for period in 1..=4u32 {
        out.push(Coloring::new(
            k.vertices().map(|v| (v, Color(v.0 % period))).collect(),
            d,
        ));
    }
    out
}

#[test]
fn pairwise_criterion_agrees_with_definition() {
    for (name, k) in fixture_corpus() {
        for d in 1..=3 {
            for coloring in candidate_colorings(&k, d) {
                let fast = is_d_coloring(&k, &coloring).expect("total coloring");
                let slow = definitional_is_d_coloring(&k, &coloring);
                assert_eq!(fast, slow, "fixture {name}, d={d}");
            }
        }
    }
}

#[test]
fn greedy_coloring_respects_ball_bound() {
    for (name, k) in fixture_corpus() {
        for d in 1..=2 {
            let coloring = compute_d_coloring(&k, d);
            assert!(is_d_coloring(&k, &coloring).unwrap(), "fixture {name}");
            let bound = k
                .vertices()
                .map(|v| k.ball_vertices(v, 2 * d).unwrap().len())
                .max()
                .unwrap_or(1);
            assert!(
                coloring.palette().len() <= bound,
                "fixture {name}: {} colors exceeds ball bound {bound}",
                coloring.palette().len()
            );
        }
    }
}

#[test]
fn geography_equality_agrees_with_isomorphism_search() {
    for (name, k) in fixture_corpus() {
        if k.is_empty() {
            continue;
        }
        let d = 1;
        let coloring = compute_d_coloring(&k, d);
        let vertices: Vec<VertexId> = k.vertices().collect();
        for (i, u) in vertices.iter().enumerate() {
            for v in &vertices[i..] {
                let gu = compute_geography(&k, &coloring, *u).unwrap();
                let gv = compute_geography(&k, &coloring, *v).unwrap();
                let canonical_equal = gu == gv;
                let nu = k.neighborhood(*u, d).unwrap();
                let nv = k.neighborhood(*v, d).unwrap();
                // the explicit search must match centers as well as colors
                let cu = coloring.restrict_to(&nu).as_labeling();
                let cv = coloring.restrict_to(&nv).as_labeling();
                let searched = lcdkit::find_isomorphism(
                    &nu,
                    &nv,
                    IsoConstraints {
                        base: Some((*u, *v)),
                        labels: Some((&cu, &cv)),
                    },
                )
                .is_some();
                assert_eq!(
                    canonical_equal, searched,
                    "fixture {name}: vertices {u} and {v}"
                );
            }
        }
    }
}

#[test]
fn geography_transport_is_the_unique_color_isomorphism() {
    let cases = vec![
        ("cycle-6", fixtures::cycle(6)),
        ("cycle-9", fixtures::cycle(9)),
        ("torus-7", fixtures::torus_7()),
        ("octahedron", fixtures::octahedron()),
    ];
    for (name, k) in cases {
        let coloring = compute_d_coloring(&k, 1);
        let gl = geographize(&k, &coloring).unwrap();
        let vertices: Vec<VertexId> = k.vertices().collect();
        for u in &vertices {
            for v in &vertices {
                if gl.geography_index(*u) != gl.geography_index(*v) {
                    continue;
                }
                let f = geography_transport(&k, &gl, *u, *v).unwrap();
                let nu = k.neighborhood(*u, 1).unwrap();
                let nv = k.neighborhood(*v, 1).unwrap();
                let cu = coloring.restrict_to(&nu).as_labeling();
                let cv = coloring.restrict_to(&nv).as_labeling();
                let all = isomorphisms(&nu, &nv, IsoConstraints::labels(&cu, &cv));
                assert_eq!(all.len(), 1, "fixture {name}: {u} -> {v}");
                assert_eq!(all[0].vertex_map(), f.vertex_map(), "fixture {name}");
                assert!(color_isomorphic(&nu, &coloring, &nv, &coloring));
            }
        }
    }
}

#[test]
fn modeled_on_agrees_with_brute_force_unlabeled() {
    let sets = vec![
        ("path-3", ModelSet::new(vec![kit::path_of_three()]).unwrap()),
        ("wheel-4", ModelSet::new(vec![kit::wheel(4)]).unwrap()),
        ("wheel-6", ModelSet::new(vec![kit::wheel(6)]).unwrap()),
    ];
    for (set_name, models) in &sets {
        for (name, k) in fixture_corpus() {
            if k.vertex_count() > 8 {
                continue;
            }
            let fast = is_modeled_on(&k, models).is_some();
            let slow = brute_force_is_modeled_on(&k, models);
            assert_eq!(fast, slow, "fixture {name} against {set_name}");
        }
    }
}

#[test]
fn modeled_on_agrees_with_brute_force_labeled() {
    let cyclic = kit::cyclic_paths();
    for k in 3..=6 {
        let complex = fixtures::cycle(k);
        let fast = is_modeled_on(&complex, &cyclic).is_some();
        let slow = brute_force_is_modeled_on(&complex, &cyclic);
        assert_eq!(fast, slow, "cycle length {k}");
        assert_eq!(fast, k % 3 == 0);
    }
    // a path is not closed but the modeled-on predicate still applies
    let path = fixtures::path(4);
    assert_eq!(
        is_modeled_on(&path, &cyclic).is_some(),
        brute_force_is_modeled_on(&path, &cyclic)
    );
}

#[test]
fn immersion_search_agrees_with_brute_force() {
    let c3 = BranchedManifold::from_manifold(&fixtures::cycle(3)).unwrap();
    let c4 = BranchedManifold::from_manifold(&fixtures::cycle(4)).unwrap();
    let track = lcdkit::branched::tracks::wedge_track(2);
    let octa = BranchedManifold::from_manifold(&fixtures::octahedron()).unwrap();

    let cases: Vec<(&str, lcdkit::SimplicialComplex, &BranchedManifold)> = vec![
        ("c3-into-c3", fixtures::cycle(3), &c3),
        ("c4-into-c3", fixtures::cycle(4), &c3),
        ("c5-into-c3", fixtures::cycle(5), &c3),
        ("c6-into-c3", fixtures::cycle(6), &c3),
        ("c6-into-c4", fixtures::cycle(6), &c4),
        ("c8-into-c4", fixtures::cycle(8), &c4),
        ("path-into-c3", fixtures::path(4), &c3),
        ("c4-into-track", fixtures::cycle(4), &track),
        ("c6-into-track", fixtures::cycle(6), &track),
        ("octa-into-octa", fixtures::octahedron(), &octa),
        ("sphere-into-octa", fixtures::boundary_of_simplex(3), &octa),
    ];
    for (name, m, w) in cases {
        let fast = find_immersion(&m, w).is_some();
        let slow = brute_force_immersion_exists(&m, w);
        assert_eq!(fast, slow, "case {name}");
    }
}

#[test]
fn found_immersions_satisfy_the_definition() {
    let c3 = BranchedManifold::from_manifold(&fixtures::cycle(3)).unwrap();
    let track = lcdkit::branched::tracks::wedge_track(3);
    for (m, w) in [
        (fixtures::cycle(6), &c3),
        (fixtures::cycle(9), &c3),
        (fixtures::cycle(6), &track),
    ] {
        if let Some(imm) = find_immersion(&m, w) {
            assert!(definitional_is_immersion(&m, w, imm.map().vertex_map()));
        } else {
            panic!("expected an immersion");
        }
    }
}

#[test]
fn factorization_agrees_with_word_search() {
    // breadth-first search over words provides an independent witness
    let target = Matrix2::new(2, 1, 1, 1);
    let mut frontier: Vec<Word> = vec![Word::default()];
    let mut witness: Option<Word> = None;
    'outer: for _ in 0..8 {
        let mut next = Vec::new();
        for w in &frontier {
            for l in Letter::ALL {
                let mut letters = w.letters().to_vec();
                letters.push(l);
                let candidate = Word(letters);
                if eval_word(&candidate) == target {
                    witness = Some(candidate);
                    break 'outer;
                }
                next.push(candidate);
            }
        }
        frontier = next;
    }
    let witness = witness.expect("a word of length at most 8 hits the target");
    assert_eq!(eval_word(&witness), target);

    let factored = factor_matrix(&target).unwrap();
    assert_eq!(eval_word(&factored), target);
}

#[test]
fn factorization_roundtrip_exhaustive_small() {
    for a in -3..=3i64 {
        for b in -3..=3i64 {
            for c in -3..=3i64 {
                for d in -3..=3i64 {
                    let m = Matrix2::new(a, b, c, d);
                    if !m.is_unimodular() {
                        continue;
                    }
                    let w = factor_matrix(&m).unwrap();
                    assert_eq!(eval_word(&w), m, "matrix {m}");
                }
            }
        }
    }
}
