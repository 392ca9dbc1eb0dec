//! Seeded random generation of ring elements and matrices.
//!
//! All sampling is driven by a caller-supplied [`rand::Rng`], so every
//! randomized routine in the crate is reproducible from a single `u64` seed
//! (see [`seeded_rng`]). For finite rings the element samplers are uniform;
//! for the infinite rings (local integers, quadratic orders) they draw from a
//! fixed bounded-height window, which is all the randomized checks need.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::linalg::Matrix;
use crate::ring::{Elem, Ring};

/// The deterministic generator used for every seeded entry point.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform integer in `[0, n)` for `n ≥ 1`, by rejection on `bits(n)`-bit
/// draws (at most half the draws are rejected per round).
fn random_below(n: &BigInt, rng: &mut impl Rng) -> BigInt {
    let bits = n.bits();
    loop {
        let mut v = BigInt::zero();
        let mut remaining = bits;
        while remaining > 0 {
            let take = remaining.min(32);
            let chunk = rng.gen_range(0..(1u64 << take));
            v = (v << (take as usize)) + BigInt::from(chunk);
            remaining -= take;
        }
        if &v < n {
            return v;
        }
    }
}

/// Draw an element of `ring`: uniform over finite rings, bounded-height over
/// local integers (fractions `a/s` with small `a`, `s`) and quadratic orders
/// (coordinates in `[-9, 9]`).
pub fn random_element(ring: &Ring, rng: &mut impl Rng) -> Elem {
    match ring {
        Ring::ZMod { n } => Elem::Int(random_below(n, rng)),
        Ring::PrimeField { p } => Elem::Int(random_below(p, rng)),
        Ring::ExtField { p, f } => {
            Elem::Pol((1..f.len()).map(|_| random_below(p, rng)).collect())
        }
        Ring::Product { factors } => {
            Elem::Tup(factors.iter().map(|r| random_element(r, rng)).collect())
        }
        Ring::LocalInt { p } => {
            let num = ring.from_i64(rng.gen_range(-64..=64));
            let den = loop {
                let s = rng.gen_range(1..=9i64);
                if !(BigInt::from(s) % p).is_zero() {
                    break ring.from_i64(s);
                }
            };
            let dinv = ring.inv(&den).expect("denominator was chosen prime to p");
            ring.mul(&num, &dinv)
        }
        Ring::QuadOrder { .. } => Elem::Quad {
            a: BigInt::from(rng.gen_range(-9..=9i32)),
            b: BigInt::from(rng.gen_range(-9..=9i32)),
        },
    }
}

/// Draw a unit of `ring` by rejection on [`random_element`].
pub fn random_unit(ring: &Ring, rng: &mut impl Rng) -> Elem {
    loop {
        let x = random_element(ring, rng);
        if ring.is_unit(&x) {
            return x;
        }
    }
}

/// Matrix with independently drawn entries.
pub fn random_matrix(ring: &Ring, rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(ring, rows, cols, |_, _| random_element(ring, rng))
}

/// Rejection-sample an invertible square matrix; returns it with its inverse.
pub fn random_invertible(ring: &Ring, m: usize, rng: &mut impl Rng) -> (Matrix, Matrix) {
    loop {
        let a = random_matrix(ring, m, m, rng);
        if let Ok(crate::linalg::InverseOutcome::Inverse(inv)) =
            crate::linalg::inverse_or_certificate(&a)
        {
            return (a, inv);
        }
    }
}

/// Product of `steps` random transvections `I + c·e_{ij}`: a uniform-ish
/// determinant-one matrix, exact determinant one by construction.
pub fn random_sl(ring: &Ring, m: usize, steps: usize, rng: &mut impl Rng) -> Matrix {
    let mut a = Matrix::identity(ring, m);
    if m < 2 {
        return a;
    }
    for _ in 0..steps {
        let i = rng.gen_range(0..m);
        let mut j = rng.gen_range(0..m - 1);
        if j >= i {
            j += 1;
        }
        let c = random_element(ring, rng);
        if ring.is_zero(&c) {
            continue;
        }
        // Right-multiply by the transvection: column j gains c times column i.
        for r in 0..m {
            let add = ring.mul(a.at(r, i), &c);
            *a.at_mut(r, j) = ring.add(a.at(r, j), &add);
        }
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg;
    use crate::ring::int;
    use num_traits::ToPrimitive;

    fn menu() -> Vec<Ring> {
        vec![
            Ring::ZMod { n: int(720) },
            Ring::PrimeField { p: int(13) },
            Ring::ExtField {
                p: int(2),
                f: vec![int(1), int(1), int(1)],
            },
            Ring::LocalInt { p: int(5) },
            Ring::QuadOrder { d: int(-5) },
            Ring::Product {
                factors: vec![Ring::ZMod { n: int(4) }, Ring::PrimeField { p: int(3) }],
            },
        ]
    }

    #[test]
    fn sampled_elements_are_canonical() {
        let mut rng = seeded_rng(7);
        for ring in menu() {
            for _ in 0..50 {
                let x = random_element(&ring, &mut rng);
                ring.validate(&x).unwrap();
            }
        }
    }

    #[test]
    fn small_modulus_sampling_hits_every_residue() {
        let ring = Ring::ZMod { n: int(6) };
        let mut rng = seeded_rng(1);
        let mut seen = [false; 6];
        for _ in 0..200 {
            if let Elem::Int(v) = random_element(&ring, &mut rng) {
                seen[v.to_usize().unwrap()] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn random_units_are_units() {
        let mut rng = seeded_rng(2);
        for ring in menu() {
            for _ in 0..10 {
                assert!(ring.is_unit(&random_unit(&ring, &mut rng)));
            }
        }
    }

    #[test]
    fn random_sl_has_determinant_one() {
        let mut rng = seeded_rng(3);
        for ring in [
            Ring::ZMod { n: int(6) },
            Ring::PrimeField { p: int(7) },
            Ring::LocalInt { p: int(3) },
        ] {
            for m in 1..=4 {
                let a = random_sl(&ring, m, 12, &mut rng);
                assert_eq!(linalg::det(&a).unwrap(), ring.one());
            }
        }
    }
}
