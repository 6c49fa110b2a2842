//! Randomized invariants over small generated complexes and words.

use std::collections::BTreeSet;

use proptest::prelude::*;

use lcdkit::bundles::{eval_word, factor_matrix, Letter, Word};
use lcdkit::labeling::{compute_d_coloring, is_d_coloring};
use lcdkit::{Distance, Simplex, SimplicialComplex, VertexId};

/// Random face-closed complexes on at most six vertices, built from a
/// random set of maximal candidate simplices.
fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..6, 1..=3), 1..8).prop_map(|sets| {
        SimplicialComplex::from_maximal(
            sets.into_iter()
                .map(|vs| Simplex::new(vs.into_iter().map(VertexId))),
        )
    })
}

fn letter_strategy() -> impl Strategy<Value = Letter> {
    prop::sample::select(vec![Letter::Shear, Letter::Reflect, Letter::Swap])
}

fn word_strategy() -> impl Strategy<Value = Word> {
    prop::collection::vec(letter_strategy(), 0..10).prop_map(Word)
}

proptest! {
    #[test]
    fn construction_is_face_closed(k in complex_strategy()) {
        prop_assert!(k.is_face_closed());
    }

    #[test]
    fn neighborhoods_grow_with_radius(k in complex_strategy(), r in 0usize..4) {
        let v = k.vertices().next().expect("nonempty");
        let small = k.neighborhood(v, r).unwrap();
        let big = k.neighborhood(v, r + 1).unwrap();
        prop_assert!(small.is_subcomplex_of(&big));
    }

    #[test]
    fn neighborhood_stabilizes_at_eccentricity(k in complex_strategy()) {
        let v = k.vertices().next().expect("nonempty");
        // the whole component of v is reached at its eccentricity
        let ecc = k
            .vertices()
            .filter_map(|u| match k.distance(v, u).unwrap() {
                Distance::Finite(x) => Some(x),
                Distance::Infinite => None,
            })
            .max()
            .unwrap();
        let n1 = k.neighborhood(v, ecc).unwrap();
        let n2 = k.neighborhood(v, ecc + 1).unwrap();
        prop_assert_eq!(n1, n2);
    }

    #[test]
    fn distance_satisfies_triangle_inequality(k in complex_strategy()) {
        let vs: Vec<VertexId> = k.vertices().collect();
        for &a in &vs {
            for &b in &vs {
                for &c in &vs {
                    let ab = k.distance(a, b).unwrap();
                    let bc = k.distance(b, c).unwrap();
                    let ac = k.distance(a, c).unwrap();
                    if let (Distance::Finite(x), Distance::Finite(y)) = (ab, bc) {
                        match ac {
                            Distance::Finite(z) => prop_assert!(z <= x + y),
                            Distance::Infinite => prop_assert!(false, "finite legs, infinite hypotenuse"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn greedy_colorings_validate(k in complex_strategy(), d in 1usize..3) {
        let coloring = compute_d_coloring(&k, d);
        prop_assert!(is_d_coloring(&k, &coloring).unwrap());
    }

    #[test]
    fn link_vertices_are_neighbors(k in complex_strategy()) {
        let v = k.vertices().next().expect("nonempty");
        let link = k.link(v).unwrap();
        let neighbors: BTreeSet<VertexId> = k.neighbors(v).unwrap().clone();
        for u in link.vertices() {
            prop_assert!(neighbors.contains(&u));
        }
    }

    #[test]
    fn evaluation_is_multiplicative(u in word_strategy(), w in word_strategy()) {
        let mut uv = u.letters().to_vec();
        uv.extend(w.letters().iter().copied());
        prop_assert_eq!(eval_word(&Word(uv)), eval_word(&u).mul(&eval_word(&w)));
    }

    #[test]
    fn rotation_conjugates_evaluation(w in word_strategy()) {
        prop_assume!(!w.is_empty());
        let first = w.letters()[0].matrix();
        let expected = first.inverse().unwrap().mul(&eval_word(&w)).mul(&first);
        prop_assert_eq!(eval_word(&w.rotated()), expected);
    }

    #[test]
    fn factorization_inverts_evaluation(w in word_strategy()) {
        let target = eval_word(&w);
        let factored = factor_matrix(&target).unwrap();
        prop_assert_eq!(eval_word(&factored), target);
    }
}
