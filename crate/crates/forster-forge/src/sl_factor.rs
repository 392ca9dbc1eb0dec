//! Factorization of determinant-one matrices into elementary transvections
//! along a position schedule that depends only on the matrix size.
//!
//! Over a ring with finitely many maximal ideals, every square matrix of
//! exact determinant one is a product of transvections `E_ij(c) = I + c·e_ij`.
//! More is true, and this module implements it: the *positions* `(i, j)` can
//! be fixed once per size `m` — see [`position_sequence`] — so that every
//! determinant-one matrix over every supported ring arises by filling in
//! coefficients. [`factor_sl`] computes those coefficients for a concrete
//! matrix and re-multiplies the word before returning it.
//!
//! The schedule for size `m` handles the last row and column first and then
//! recurses, so `position_sequence(m - 1)` is literally a suffix of
//! `position_sequence(m)`. One level consists of:
//!
//! 1. *Shrinking rounds* `ℓ = m, m-1, …, 2`: positions `(1, ℓ), …, (ℓ-1, ℓ)`.
//!    The round folds entry `ℓ` of the last column into the entries above it
//!    so that the folded prefix stays unimodular; after all rounds the top
//!    entry of the last column is a unit.
//! 2. A *pivot* at `(m, 1)` that makes the corner entry exactly 1.
//! 3. A *clearing block* `(1, m), …, (m-1, m)` that zeroes the rest of the
//!    last column.
//! 4. A *row block* `(m, m-1), …, (m, 1)` that zeroes the last row.
//!
//! When the corner entry is already 1 the rounds and the pivot emit zero
//! coefficients, which is what makes the identity factor with an all-zero
//! word and a single transvection factor with only its own coefficient.

use crate::error::{Error, Result};
use crate::linalg::{self, InverseOutcome, Matrix};
use crate::ring::{Elem, Ring};

/// A word in transvections `E_ij(c)`: the factor list of a determinant-one
/// matrix, or (with `coefficients: None`) just the position schedule.
///
/// Positions are 1-indexed `(row, column)` pairs with `row ≠ column`. The
/// word represents the ordered product `E_{p1}(c1) · E_{p2}(c2) · …` —
/// multiply factors left to right, as [`product`](Self::product) does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementaryWord {
    /// Size of the matrices the word multiplies out to.
    pub m: usize,
    /// Transvection positions, 1-indexed, fixed per `m`.
    pub positions: Vec<(usize, usize)>,
    /// One coefficient per position; `None` for a bare schedule.
    pub coefficients: Option<Vec<Elem>>,
}

impl ElementaryWord {
    /// Number of factors in the word.
    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Multiply the word out over `ring`.
    ///
    /// Fails if the word has no coefficients, the coefficient count does not
    /// match the position count, a position is out of range or on the
    /// diagonal, or a coefficient does not belong to `ring`.
    pub fn product(&self, ring: &Ring) -> Result<Matrix> {
        let coefficients = self.coefficients.as_ref().ok_or_else(|| {
            Error::DimensionMismatch("cannot multiply out a word without coefficients".into())
        })?;
        if coefficients.len() != self.positions.len() {
            return Err(Error::DimensionMismatch(format!(
                "word has {} positions but {} coefficients",
                self.positions.len(),
                coefficients.len()
            )));
        }
        let mut acc = Matrix::identity(ring, self.m);
        for (&(i, j), c) in self.positions.iter().zip(coefficients) {
            if i == 0 || j == 0 || i > self.m || j > self.m || i == j {
                return Err(Error::DimensionMismatch(format!(
                    "({i}, {j}) is not a transvection position for size {}",
                    self.m
                )));
            }
            ring.validate(c)?;
            if ring.is_zero(c) {
                continue;
            }
            // acc ← acc · E_ij(c): column j gains c times column i.
            for r in 0..self.m {
                let add = ring.mul(acc.at(r, i - 1), c);
                *acc.at_mut(r, j - 1) = ring.add(acc.at(r, j - 1), &add);
            }
        }
        Ok(acc)
    }
}

/// The fixed transvection schedule for size `m`, with no coefficients.
///
/// Every factorization produced by [`factor_sl`] for an `m × m` input uses
/// exactly these positions in exactly this order, whatever the ring and the
/// matrix; `position_sequence(m - 1)` is a suffix of `position_sequence(m)`.
/// The word length is `Σ_{j=2..m} (j(j-1)/2 + 2j - 1)`: 0, 4, 12, 25, … for
/// `m = 1, 2, 3, 4, …`.
pub fn position_sequence(m: usize) -> ElementaryWord {
    let mut positions = Vec::new();
    for level in (2..=m).rev() {
        // Shrinking rounds over the last column.
        for l in (2..=level).rev() {
            for i in 1..l {
                positions.push((i, l));
            }
        }
        // Pivot, clearing block, row block.
        positions.push((level, 1));
        for i in 1..level {
            positions.push((i, level));
        }
        for j in (1..level).rev() {
            positions.push((level, j));
        }
    }
    ElementaryWord {
        m,
        positions,
        coefficients: None,
    }
}

/// Factor a determinant-one matrix into transvections along
/// [`position_sequence`].
///
/// The ring must have an enumerable maximal spectrum
/// ([`Ring::is_semilocal_capable`]); quadratic orders are rejected with
/// [`Error::UnsupportedRing`]. A non-square input is a dimension error and a
/// determinant other than exactly 1 reports [`Error::NotSL`]. The returned
/// word has been multiplied back and compared with the input.
pub fn factor_sl(a: &Matrix) -> Result<ElementaryWord> {
    let ring = a.ring.clone();
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(format!(
            "cannot factor a {}x{} matrix into transvections: it must be square",
            a.rows, a.cols
        )));
    }
    if !ring.is_semilocal_capable() {
        return Err(Error::UnsupportedRing(format!(
            "transvection factorization needs an enumerable maximal spectrum; {ring} has none"
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(ElementaryWord {
            m: 0,
            positions: Vec::new(),
            coefficients: Some(Vec::new()),
        });
    }
    let d = linalg::det(a)?;
    if d != ring.one() {
        return Err(Error::NotSL { det: d.to_string() });
    }

    let mut b = a.clone();
    let mut positions = Vec::new();
    let mut coefficients = Vec::new();
    for level in (2..=n).rev() {
        peel_level(&ring, &mut b, level, &mut positions, &mut coefficients)?;
    }
    if !b.is_identity() {
        return Err(Error::Internal(
            "transvection peeling did not end at the identity".into(),
        ));
    }
    let word = ElementaryWord {
        m: n,
        positions,
        coefficients: Some(coefficients),
    };
    if word.positions != position_sequence(n).positions {
        return Err(Error::Internal(
            "emitted positions deviate from the fixed schedule".into(),
        ));
    }
    if word.product(&ring)? != *a {
        return Err(Error::Internal(
            "transvection word does not multiply back to its input".into(),
        ));
    }
    Ok(word)
}

/// Emit the factors of one level: after this returns, row and column `m` of
/// `b` (1-indexed) equal the corresponding identity row and column, and the
/// leading `(m-1)`-block still has determinant one.
///
/// Factors are *peeled from the left*: emitting `E_ij(c)` replaces `b` by
/// `E_ij(c)^{-1} · b`, i.e. subtracts `c` times row `j` from row `i`, so the
/// emitted word multiplies out to the original matrix.
fn peel_level(
    ring: &Ring,
    b: &mut Matrix,
    m: usize,
    positions: &mut Vec<(usize, usize)>,
    coefficients: &mut Vec<Elem>,
) -> Result<()> {
    let mi = m - 1; // 0-indexed last row/column of the active block
    let corner_is_one = *b.at(mi, mi) == ring.one();
    let ideals = ring.max_ideals()?;

    // Shrinking rounds: fold the bottom entry of the shrinking last-column
    // prefix into the entries above it. The invariant is that the prefix of
    // length l is unimodular when the round for l starts (for l = m it is a
    // column of an invertible matrix); the round keeps the prefix of length
    // l - 1 unimodular by adding the folded entry to slot 1 exactly at the
    // maximal ideals where the shorter prefix vanishes — there the folded
    // entry is forced to be a unit. Slots 2..l-1 always get coefficient 0;
    // they are in the schedule so that the schedule stays coefficient-free.
    for l in (2..=m).rev() {
        let li = l - 1;
        let slot1 = if corner_is_one {
            ring.zero()
        } else {
            let mut targets = Vec::with_capacity(ideals.len());
            for p in &ideals {
                let mut alive = false;
                for i in 0..li {
                    let r = ring.residue(b.at(i, mi), p)?;
                    if !p.residue_field.is_zero(&r) {
                        alive = true;
                        break;
                    }
                }
                let t = if alive {
                    p.residue_field.zero()
                } else {
                    p.residue_field.one()
                };
                targets.push((p.clone(), t));
            }
            ring.crt_lift(&targets)?
        };
        for i in 1..l {
            let c = if i == 1 { slot1.clone() } else { ring.zero() };
            positions.push((i, l));
            peel(ring, b, i - 1, li, &c);
            coefficients.push(c);
        }
    }

    // Pivot: make the corner entry exactly 1 using the now-unit top entry of
    // the last column. When the corner already is 1 the rounds were skipped
    // and the pivot coefficient is 0.
    let pivot = if corner_is_one {
        ring.zero()
    } else {
        let top_inv = ring.inv(b.at(0, mi)).map_err(|_| {
            Error::Internal("shrinking rounds failed to produce a unit column top".into())
        })?;
        ring.mul(&ring.sub(b.at(mi, mi), &ring.one()), &top_inv)
    };
    positions.push((m, 1));
    peel(ring, b, mi, 0, &pivot);
    coefficients.push(pivot);
    if *b.at(mi, mi) != ring.one() {
        return Err(Error::Internal("pivot failed to normalize the corner".into()));
    }

    // Clearing block: zero the last column above the corner.
    for i in 1..m {
        let c = b.at(i - 1, mi).clone();
        positions.push((i, m));
        peel(ring, b, i - 1, mi, &c);
        coefficients.push(c);
    }

    // Row block: the active block is now [[A', 0], [v, 1]] with det A' = 1;
    // subtracting (v · A'^{-1})_j times row j from the last row clears v.
    let aprime = Matrix::from_fn(ring, mi, mi, |i, j| b.at(i, j).clone());
    let ainv = match linalg::inverse_or_certificate(&aprime)? {
        InverseOutcome::Inverse(inv) => inv,
        _ => {
            return Err(Error::Internal(
                "leading block of a determinant-one matrix was not invertible".into(),
            ))
        }
    };
    let f: Vec<Elem> = (0..mi)
        .map(|j| {
            let mut s = ring.zero();
            for k in 0..mi {
                s = ring.add(&s, &ring.mul(b.at(mi, k), ainv.at(k, j)));
            }
            s
        })
        .collect();
    for j in (1..m).rev() {
        positions.push((m, j));
        peel(ring, b, mi, j - 1, &f[j - 1]);
        coefficients.push(f[j - 1].clone());
    }

    for k in 0..mi {
        if !ring.is_zero(b.at(mi, k)) || !ring.is_zero(b.at(k, mi)) {
            return Err(Error::Internal(
                "level peeling left residue in the last row or column".into(),
            ));
        }
    }
    Ok(())
}

/// Peel `E(target, source)(c)` off the left of `b`: subtract `c` times row
/// `source` from row `target`.
fn peel(ring: &Ring, b: &mut Matrix, target: usize, source: usize, c: &Elem) {
    if ring.is_zero(c) {
        return;
    }
    for col in 0..b.cols {
        let delta = ring.mul(c, b.at(source, col));
        *b.at_mut(target, col) = ring.sub(b.at(target, col), &delta);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use crate::sampling::{random_element, random_sl, seeded_rng};
    use rand::Rng;

    fn zmod(n: i64) -> Ring {
        Ring::ZMod { n: int(n) }
    }

    /// Explicit transvection matrix, independent of `ElementaryWord::product`.
    fn transvection(ring: &Ring, m: usize, i: usize, j: usize, c: &Elem) -> Matrix {
        Matrix::from_fn(ring, m, m, |r, s| {
            if r == s {
                ring.one()
            } else if r == i - 1 && s == j - 1 {
                c.clone()
            } else {
                ring.zero()
            }
        })
    }

    #[test]
    fn schedule_is_frozen_for_small_sizes() {
        assert!(position_sequence(0).positions.is_empty());
        assert!(position_sequence(1).positions.is_empty());
        assert_eq!(
            position_sequence(2).positions,
            vec![(1, 2), (2, 1), (1, 2), (2, 1)]
        );
        assert_eq!(
            position_sequence(3).positions,
            vec![
                // level 3: rounds (l = 3 then l = 2), pivot, clearing, row
                (1, 3),
                (2, 3),
                (1, 2),
                (3, 1),
                (1, 3),
                (2, 3),
                (3, 2),
                (3, 1),
                // level 2
                (1, 2),
                (2, 1),
                (1, 2),
                (2, 1),
            ]
        );
        assert_eq!(position_sequence(4).len(), 25);
        assert_eq!(position_sequence(5).len(), 44);
    }

    #[test]
    fn smaller_schedule_is_a_suffix_of_the_larger() {
        for m in 2..=6 {
            let big = position_sequence(m).positions;
            let small = position_sequence(m - 1).positions;
            assert!(big.ends_with(&small), "schedule for {} not nested", m);
        }
    }

    #[test]
    fn identity_factors_with_all_zero_coefficients() {
        let ring = zmod(6);
        let word = factor_sl(&Matrix::identity(&ring, 3)).unwrap();
        let coeffs = word.coefficients.as_ref().unwrap();
        assert_eq!(coeffs.len(), 12);
        assert!(coeffs.iter().all(|c| ring.is_zero(c)));
    }

    #[test]
    fn single_transvection_keeps_only_its_own_coefficient() {
        let ring = zmod(10);
        let c = ring.from_i64(3);
        let a = transvection(&ring, 2, 1, 2, &c);
        let word = factor_sl(&a).unwrap();
        let coeffs = word.coefficients.as_ref().unwrap();
        assert_eq!(coeffs, &vec![ring.zero(), ring.zero(), c, ring.zero()]);
        assert_eq!(word.product(&ring).unwrap(), a);
    }

    #[test]
    fn matrix_with_doubly_singular_leading_pair_factors() {
        // The leading column pair (a_13, a_33) = (2, 0) vanishes mod 2 and
        // stays dead under any operations confined to the last column, so
        // this input exercises the shrinking rounds in an essential way.
        let ring = zmod(6);
        let a = Matrix::from_i64(&ring, 3, 3, &[0, 5, 2, 0, 4, 3, 1, 0, 0]);
        assert_eq!(linalg::det(&a).unwrap(), ring.one());
        let word = factor_sl(&a).unwrap();
        assert_eq!(word.positions, position_sequence(3).positions);
        assert_eq!(word.product(&ring).unwrap(), a);
    }

    #[test]
    fn word_product_matches_explicit_transvection_product() {
        let ring = zmod(12);
        let mut rng = seeded_rng(11);
        for _ in 0..10 {
            let m = rng.gen_range(2..=4);
            let len = rng.gen_range(1..=8);
            let mut positions = Vec::new();
            let mut coefficients = Vec::new();
            for _ in 0..len {
                let i = rng.gen_range(1..=m);
                let mut j = rng.gen_range(1..=m - 1);
                if j >= i {
                    j += 1;
                }
                positions.push((i, j));
                coefficients.push(random_element(&ring, &mut rng));
            }
            let word = ElementaryWord {
                m,
                positions: positions.clone(),
                coefficients: Some(coefficients.clone()),
            };
            let mut expect = Matrix::identity(&ring, m);
            for (&(i, j), c) in positions.iter().zip(&coefficients) {
                expect = expect.mul(&transvection(&ring, m, i, j, c));
            }
            assert_eq!(word.product(&ring).unwrap(), expect);
        }
    }

    #[test]
    fn random_determinant_one_matrices_factor_back() {
        let rings = vec![
            zmod(6),
            zmod(720),
            Ring::PrimeField { p: int(7) },
            Ring::LocalInt { p: int(5) },
            Ring::Product {
                factors: vec![zmod(4), Ring::PrimeField { p: int(3) }],
            },
        ];
        let mut rng = seeded_rng(17);
        for ring in &rings {
            for m in 2..=4 {
                for _ in 0..4 {
                    let a = random_sl(ring, m, 20, &mut rng);
                    let word = factor_sl(&a).unwrap();
                    assert_eq!(word.positions, position_sequence(m).positions);
                    assert_eq!(word.product(ring).unwrap(), a, "ring {ring}, size {m}");
                }
            }
        }
    }

    #[test]
    fn many_prime_modulus_stresses_per_ideal_rounds() {
        let ring = zmod(30030); // 2·3·5·7·11·13
        let mut rng = seeded_rng(23);
        let a = random_sl(&ring, 4, 30, &mut rng);
        let word = factor_sl(&a).unwrap();
        assert_eq!(word.product(&ring).unwrap(), a);
    }

    #[test]
    fn positions_do_not_depend_on_the_ring_or_the_matrix() {
        let mut rng = seeded_rng(5);
        let schedule = position_sequence(3).positions;
        for ring in [zmod(6), Ring::PrimeField { p: int(13) }, Ring::LocalInt { p: int(3) }] {
            let a = random_sl(&ring, 3, 15, &mut rng);
            assert_eq!(factor_sl(&a).unwrap().positions, schedule);
        }
    }

    #[test]
    fn one_by_one_and_empty_inputs() {
        let ring = zmod(6);
        let word = factor_sl(&Matrix::identity(&ring, 1)).unwrap();
        assert!(word.is_empty());
        assert_eq!(word.m, 1);
        let bad = Matrix::from_i64(&ring, 1, 1, &[5]);
        assert!(matches!(factor_sl(&bad), Err(Error::NotSL { .. })));
    }

    #[test]
    fn non_unit_determinant_is_rejected_with_the_value() {
        let ring = zmod(6);
        let a = Matrix::from_i64(&ring, 2, 2, &[0, 1, 1, 0]); // det = -1 = 5
        match factor_sl(&a) {
            Err(Error::NotSL { det }) => assert_eq!(det, "5"),
            other => panic!("expected NotSL, got {other:?}"),
        }
    }

    #[test]
    fn quadratic_orders_are_rejected() {
        let ring = Ring::QuadOrder { d: int(-5) };
        let a = Matrix::identity(&ring, 2);
        assert!(matches!(factor_sl(&a), Err(Error::UnsupportedRing(_))));
    }

    #[test]
    fn rectangular_input_is_rejected() {
        let ring = zmod(6);
        let a = Matrix::from_i64(&ring, 2, 3, &[1, 0, 0, 0, 1, 0]);
        assert!(matches!(factor_sl(&a), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn bare_schedule_refuses_to_multiply() {
        let ring = zmod(6);
        assert!(matches!(
            position_sequence(2).product(&ring),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn malformed_positions_are_rejected() {
        let ring = zmod(6);
        let word = ElementaryWord {
            m: 2,
            positions: vec![(1, 1)],
            coefficients: Some(vec![ring.one()]),
        };
        assert!(matches!(word.product(&ring), Err(Error::DimensionMismatch(_))));
        let word = ElementaryWord {
            m: 2,
            positions: vec![(1, 3)],
            coefficients: Some(vec![ring.one()]),
        };
        assert!(matches!(word.product(&ring), Err(Error::DimensionMismatch(_))));
    }
}
