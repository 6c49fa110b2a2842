//! Torus bundles over the circle at the descriptor level: an integer 2x2
//! word algebra over three generators, circle immersions into the wedge of
//! three circles, and bundle certificates pairing the two.
//!
//! The three generators multiply out every unimodular integer matrix. The
//! factorization runs a Euclidean scheme on the bottom row, emitting the
//! shear inverse as the positive word a2 a1 a2.

use std::collections::BTreeMap;
use std::fmt;

use crate::branched::{tracks, verify_immersion, BranchedManifold, Immersion};
use crate::complex::{IsoConstraints, SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::fixtures;

/// An integer 2x2 matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Matrix2 {
    pub rows: [[i64; 2]; 2],
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        rows: [[1, 0], [0, 1]],
    };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Matrix2 {
            rows: [[a, b], [c, d]],
        }
    }

    pub fn det(&self) -> i64 {
        self.rows[0][0] * self.rows[1][1] - self.rows[0][1] * self.rows[1][0]
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs() == 1
    }

    pub fn mul(&self, other: &Matrix2) -> Matrix2 {
        let a = &self.rows;
        let b = &other.rows;
        Matrix2 {
            rows: [
                [
                    a[0][0] * b[0][0] + a[0][1] * b[1][0],
                    a[0][0] * b[0][1] + a[0][1] * b[1][1],
                ],
                [
                    a[1][0] * b[0][0] + a[1][1] * b[1][0],
                    a[1][0] * b[0][1] + a[1][1] * b[1][1],
                ],
            ],
        }
    }

    pub fn inverse(&self) -> Result<Matrix2> {
        let det = self.det();
        if det.abs() != 1 {
            return Err(Error::NotUnimodular(det));
        }
        let [[a, b], [c, d]] = self.rows;
        Ok(Matrix2 {
            rows: [[d * det, -b * det], [-c * det, a * det]],
        })
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.rows[0][0], self.rows[0][1], self.rows[1][0], self.rows[1][1]
        )
    }
}

/// One of the three generator letters.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Letter {
    /// a1 = [[1, 1], [0, 1]], the shear.
    Shear,
    /// a2 = [[1, 0], [0, -1]], reflection in the first axis.
    Reflect,
    /// a3 = [[0, 1], [1, 0]], the coordinate swap.
    Swap,
}

impl Letter {
    pub const ALL: [Letter; 3] = [Letter::Shear, Letter::Reflect, Letter::Swap];

    pub fn matrix(&self) -> Matrix2 {
        match self {
            Letter::Shear => Matrix2::new(1, 1, 0, 1),
            Letter::Reflect => Matrix2::new(1, 0, 0, -1),
            Letter::Swap => Matrix2::new(0, 1, 1, 0),
        }
    }

    /// Loop index 1..=3 in the track.
    pub fn loop_index(&self) -> u32 {
        match self {
            Letter::Shear => 1,
            Letter::Reflect => 2,
            Letter::Swap => 3,
        }
    }

    pub fn parse(token: &str) -> Result<Letter> {
        match token {
            "a1" => Ok(Letter::Shear),
            "a2" => Ok(Letter::Reflect),
            "a3" => Ok(Letter::Swap),
            other => Err(Error::Internal(format!(
                "unknown letter {other:?}; expected a1, a2, or a3"
            ))),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.loop_index())
    }
}

/// A word over the three generator letters, read left to right.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Rotation by one: the first letter moves to the end.
    pub fn rotated(&self) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let mut letters = self.0[1..].to_vec();
        letters.push(self.0[0]);
        Word(letters)
    }

    pub fn parse(tokens: &[&str]) -> Result<Word> {
        tokens
            .iter()
            .map(|t| Letter::parse(t))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Left-to-right product of the letter matrices.
pub fn eval_word(word: &Word) -> Matrix2 {
    word.0
        .iter()
        .fold(Matrix2::IDENTITY, |acc, l| acc.mul(&l.matrix()))
}

/// Reduction moves recorded while driving a matrix to the identity.
#[derive(Clone, Copy, Debug)]
enum Move {
    ShearPower(i64),
    Reflect,
    Swap,
}

/// A word evaluating to the given unimodular matrix.
///
/// Reduces the matrix to the identity by right multiplication, pivoting on
/// the smaller bottom-row entry (ties take the left one), then emits the
/// inverse moves in reverse; the shear inverse becomes a2 a1 a2.
pub fn factor_matrix(c: &Matrix2) -> Result<Word> {
    if !c.is_unimodular() {
        return Err(Error::NotUnimodular(c.det()));
    }
    let mut m = *c;
    let mut moves: Vec<Move> = Vec::new();
    let mut apply = |m: &mut Matrix2, mv: Move| {
        *m = m.mul(&match mv {
            Move::ShearPower(t) => Matrix2::new(1, t, 0, 1),
            Move::Reflect => Letter::Reflect.matrix(),
            Move::Swap => Letter::Swap.matrix(),
        });
        moves.push(mv);
    };

    loop {
        let r = m.rows[1][0];
        let s = m.rows[1][1];
        if r == 0 {
            break;
        }
        if s == 0 || r.abs() <= s.abs() {
            // pivot on r: clear as much of s as possible
            let q = s.div_euclid(r);
            if q != 0 {
                apply(&mut m, Move::ShearPower(-q));
            }
            // now 0 <= s < |r|; swap to shrink r next round
            apply(&mut m, Move::Swap);
        } else {
            apply(&mut m, Move::Swap);
        }
    }

    // bottom row is (0, +-1)
    if m.rows[1][1] == -1 {
        apply(&mut m, Move::Reflect);
    }
    if m.rows[0][0] == -1 {
        // clear the sign of the top-left entry: a3 a2 a3 = [[-1,0],[0,1]]
        apply(&mut m, Move::Swap);
        apply(&mut m, Move::Reflect);
        apply(&mut m, Move::Swap);
    }
    let q = m.rows[0][1];
    if q != 0 {
        apply(&mut m, Move::ShearPower(-q));
    }
    debug_assert_eq!(m, Matrix2::IDENTITY);

    // undo the moves in reverse order
    let mut letters = Vec::new();
    for mv in moves.into_iter().rev() {
        match mv {
            Move::ShearPower(t) => {
                if t >= 0 {
                    // inverse of a1^t is emitted as (a2 a1 a2)^t
                    for _ in 0..t {
                        letters.extend([Letter::Reflect, Letter::Shear, Letter::Reflect]);
                    }
                } else {
                    for _ in 0..(-t) {
                        letters.push(Letter::Shear);
                    }
                }
            }
            Move::Reflect => letters.push(Letter::Reflect),
            Move::Swap => letters.push(Letter::Swap),
        }
    }
    Ok(Word(letters))
}

/// A circle immersed into the wedge of three circles along a word.
#[derive(Clone, Debug)]
pub struct CircleImmersion {
    word: Word,
    circle: SimplicialComplex,
    track: BranchedManifold,
    immersion: Immersion,
}

impl CircleImmersion {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn circle(&self) -> &SimplicialComplex {
        &self.circle
    }

    pub fn track(&self) -> &BranchedManifold {
        &self.track
    }

    pub fn immersion(&self) -> &Immersion {
        &self.immersion
    }
}

/// The wedge of three circles the bundle base maps into.
pub fn base_track() -> BranchedManifold {
    tracks::wedge_track(3)
}

/// Immerses the circle with 3 |word| vertices into the track along the
/// letters of the word, validating the result.
pub fn circle_immersion(word: &Word) -> Result<CircleImmersion> {
    if word.is_empty() {
        return Err(Error::EmptyWord);
    }
    let track = base_track();
    let circle = fixtures::cycle(3 * word.len());
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    for (k, letter) in word.letters().iter().enumerate() {
        let base = 3 * k as u32;
        let loop_index = letter.loop_index() - 1;
        map.insert(VertexId(base), VertexId(0));
        map.insert(VertexId(base + 1), VertexId(2 * loop_index + 1));
        map.insert(VertexId(base + 2), VertexId(2 * loop_index + 2));
    }
    let immersion = verify_immersion(&circle, &track, &map)
        .map_err(|o| Error::Internal(format!("word fails to immerse: {o}")))?;
    Ok(CircleImmersion {
        word: word.clone(),
        circle,
        track,
        immersion,
    })
}

/// Descriptor of the torus bundle over the circle determined by a word:
/// the base circle immersion plus the monodromy, the fiber being the
/// 2-torus. The bundle covers the track fiberwise, so the descriptor
/// records the covering relation without a 3-dimensional triangulation.
#[derive(Clone, Debug)]
pub struct BundleDescriptor {
    base: CircleImmersion,
    monodromy: Matrix2,
}

impl BundleDescriptor {
    pub fn word(&self) -> &Word {
        self.base.word()
    }

    pub fn base(&self) -> &CircleImmersion {
        &self.base
    }

    pub fn monodromy(&self) -> &Matrix2 {
        &self.monodromy
    }

    pub const FIBER: &'static str = "T2";
}

/// Builds the bundle descriptor for a word: its circle immersion together
/// with the evaluated monodromy.
pub fn bundle_certificate(word: &Word) -> Result<BundleDescriptor> {
    let base = circle_immersion(word)?;
    Ok(BundleDescriptor {
        base,
        monodromy: eval_word(word),
    })
}

/// Are two circle immersions equal up to relabeling the circle? Words that
/// differ by rotation produce isomorphic certificates.
pub fn immersions_isomorphic(a: &CircleImmersion, b: &CircleImmersion) -> bool {
    if a.circle.vertex_count() != b.circle.vertex_count() {
        return false;
    }
    // any isomorphism of the circles commuting with the two maps will do
    crate::complex::isomorphisms(&a.circle, &b.circle, IsoConstraints::default())
        .into_iter()
        .any(|f| {
            a.circle
                .vertices()
                .all(|v| a.immersion.map().apply(v) == b.immersion.map().apply(f.apply(v)))
        })
}
