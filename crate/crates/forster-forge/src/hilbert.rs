//! Local Hilbert symbols over the rationals.
//!
//! [`hilbert_symbol`] evaluates the ±1-valued pairing `(a, b)_v` deciding
//! whether `z² = a·x² + b·y²` has a nontrivial solution over the completion
//! at the place `v` (a prime or ∞), by the classical closed-form criteria.
//! [`hilbert_symbol_by_search`] answers the same question by an exhaustive
//! search for primitive solutions modulo `p³` (odd `p`) or `2⁵` — enough,
//! by Hensel lifting, once the inputs are reduced so their valuations are at
//! most 1. The two routes are independent and the test suite keeps them in
//! agreement; [`product_formula`] multiplies the symbols over all relevant
//! places, which must give +1.
//!
//! Symbols depend only on the square classes of the arguments, so the search
//! normalizes to small class representatives and caches verdicts per class
//! pair — a bounded table per place, whatever the range of inputs.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::{int, is_prime, trial_bound, trial_factor};

/// A place of the rationals: a finite prime or the real place.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Finite(u64),
    Infinity,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "{p}"),
            Place::Infinity => write!(f, "infinity"),
        }
    }
}

fn check_inputs(a: &BigInt, b: &BigInt, place: &Place) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::BadInput(
            "Hilbert symbol arguments must be nonzero".into(),
        ));
    }
    if let Place::Finite(p) = place {
        if !is_prime(&int(*p as i64))? {
            return Err(Error::BadInput(format!("{p} is not a prime place")));
        }
    }
    Ok(())
}

/// `x = p^α·u` with `p ∤ u`; returns `(α, u)`. Requires `x ≠ 0`.
fn split_valuation(x: &BigInt, p: u64) -> (u64, BigInt) {
    let pb = int(p as i64);
    let mut alpha = 0;
    let mut u = x.clone();
    while (&u % &pb).is_zero() {
        u /= &pb;
        alpha += 1;
    }
    (alpha, u)
}

/// Legendre symbol `(u/p)` for odd prime `p`, `p ∤ u`, by Euler's criterion.
fn legendre(u: &BigInt, p: u64) -> i32 {
    let pb = int(p as i64);
    let e = (&pb - BigInt::one()) / 2;
    let r = u.mod_floor(&pb).modpow(&e, &pb);
    if r.is_one() {
        1
    } else {
        -1
    }
}

/// `(u-1)/2 mod 2` for odd `u` — whether `u ≡ 3 (mod 4)`.
fn eps(u: &BigInt) -> u64 {
    ((u - BigInt::one()) / int(2))
        .mod_floor(&int(2))
        .to_u64()
        .unwrap()
}

/// `(u²-1)/8 mod 2` for odd `u` — whether `u ≡ ±3 (mod 8)`.
fn omega(u: &BigInt) -> u64 {
    ((u * u - BigInt::one()) / int(8))
        .mod_floor(&int(2))
        .to_u64()
        .unwrap()
}

/// Local Hilbert symbol `(a, b)` at `place`, by the closed-form criteria.
///
/// Writes `a = p^α·u`, `b = p^β·v` and evaluates: at odd `p` the sign
/// `(-1)^{αβ(p-1)/2}·(u/p)^β·(v/p)^α`; at `p = 2` the parity
/// `ε(u)ε(v) + α·ω(v) + β·ω(u)`; at ∞ the sign test `a < 0 ∧ b < 0`.
pub fn hilbert_symbol(a: &BigInt, b: &BigInt, place: &Place) -> Result<i32> {
    check_inputs(a, b, place)?;
    match place {
        Place::Infinity => Ok(if a.is_negative() && b.is_negative() {
            -1
        } else {
            1
        }),
        Place::Finite(2) => {
            let (alpha, u) = split_valuation(a, 2);
            let (beta, v) = split_valuation(b, 2);
            let exponent = eps(&u) * eps(&v) + alpha * omega(&v) + beta * omega(&u);
            Ok(if exponent % 2 == 0 { 1 } else { -1 })
        }
        Place::Finite(p) => {
            let (alpha, u) = split_valuation(a, *p);
            let (beta, v) = split_valuation(b, *p);
            let mut sign = 1;
            if alpha % 2 == 1 && beta % 2 == 1 && (p - 1) / 2 % 2 == 1 {
                sign = -sign;
            }
            if beta % 2 == 1 {
                sign *= legendre(&u, *p);
            }
            if alpha % 2 == 1 {
                sign *= legendre(&v, *p);
            }
            Ok(sign)
        }
    }
}

/// Smallest quadratic non-residue modulo an odd prime.
fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&n| legendre(&int(n as i64), p) == -1)
        .expect("odd primes have non-residues")
}

/// Canonical small positive representative of the square class of `x` in
/// `Q_p^*`: `p^(α mod 2)` times a unit representative (1 or the least
/// non-residue for odd `p`; the residue mod 8 for `p = 2`).
fn class_rep(x: &BigInt, p: u64) -> u64 {
    let (alpha, u) = split_valuation(x, p);
    let unit = if p == 2 {
        u.mod_floor(&int(8)).to_u64().unwrap()
    } else if legendre(&u, p) == 1 {
        1
    } else {
        least_nonresidue(p)
    };
    if alpha % 2 == 0 {
        unit
    } else {
        p * unit
    }
}

/// Exhaustive verdict for small nonnegative class representatives `a`, `b`
/// with `v_p ≤ 1`: is there a primitive solution of `z² ≡ a·x² + b·y²`
/// modulo `p³` (odd `p`) or `2⁵`? By Hensel's lemma, for these valuations
/// that is equivalent to solvability over `Q_p`.
fn search_solvable(a: u64, b: u64, p: u64) -> bool {
    let k = if p == 2 { 5 } else { 3 };
    let m = p.pow(k);
    let mu = m as usize;
    // Squares modulo m, split by whether the root can be a unit: an all-
    // divisible triple (x, y, z) is not primitive, so when x ≡ y ≡ 0 (mod p)
    // the root z must be a unit.
    let mut square_any = vec![false; mu];
    let mut square_unit = vec![false; mu];
    for z in 0..m {
        let t = (z * z % m) as usize;
        square_any[t] = true;
        if z % p != 0 {
            square_unit[t] = true;
        }
    }
    let ax: Vec<u64> = (0..m).map(|x| a % m * (x * x % m) % m).collect();
    let by: Vec<u64> = (0..m).map(|y| b % m * (y * y % m) % m).collect();
    for x in 0..mu {
        for y in 0..mu {
            let t = ((ax[x] + by[y]) % m) as usize;
            let found = if x as u64 % p == 0 && y as u64 % p == 0 {
                square_unit[t]
            } else {
                square_any[t]
            };
            if found {
                return true;
            }
        }
    }
    false
}

/// Local Hilbert symbol by exhaustive modular search — the independent
/// cross-check for [`hilbert_symbol`].
///
/// Arguments are reduced to square-class representatives first (the symbol
/// only depends on those), and verdicts are cached per class pair, so grids
/// of inputs cost a bounded number of searches per place. Places with
/// `p³ > 10⁷` are rejected as too large for the oracle.
pub fn hilbert_symbol_by_search(a: &BigInt, b: &BigInt, place: &Place) -> Result<i32> {
    check_inputs(a, b, place)?;
    let p = match place {
        Place::Infinity => {
            // Solvability over the reals is the visible sign condition:
            // a·x² + b·y² takes a positive value iff a > 0 or b > 0.
            return Ok(if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            });
        }
        Place::Finite(p) => *p,
    };
    if p.pow(if p == 2 { 5 } else { 3 }) > 10_000_000 {
        return Err(Error::BadInput(format!(
            "place {p} is too large for the exhaustive oracle"
        )));
    }
    let ca = class_rep(a, p);
    let cb = class_rep(b, p);
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64, u64), bool>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(&solvable) = cache.lock().unwrap().get(&(p, ca, cb)) {
        return Ok(if solvable { 1 } else { -1 });
    }
    let solvable = search_solvable(ca, cb, p);
    cache.lock().unwrap().insert((p, ca, cb), solvable);
    Ok(if solvable { 1 } else { -1 })
}

/// The places at which `(a, b)` can be nontrivial: ∞, 2, and the primes
/// dividing `a` or `b`.
pub fn relevant_places(a: &BigInt, b: &BigInt) -> Result<Vec<Place>> {
    let mut primes: BTreeSet<u64> = BTreeSet::new();
    primes.insert(2);
    for x in [a, b] {
        for (q, _) in trial_factor(&x.abs(), trial_bound())? {
            primes.insert(q.to_u64().ok_or_else(|| {
                Error::BadInput("prime factor too large for a place".into())
            })?);
        }
    }
    let mut places: Vec<Place> = primes.into_iter().map(Place::Finite).collect();
    places.push(Place::Infinity);
    Ok(places)
}

/// Evaluate `(a, b)` at every relevant place and multiply the results.
///
/// Returns the product — +1 for every valid input, by quadratic
/// reciprocity — together with the per-place breakdown.
pub fn product_formula(a: &BigInt, b: &BigInt) -> Result<(i32, Vec<(Place, i32)>)> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::BadInput(
            "Hilbert symbol arguments must be nonzero".into(),
        ));
    }
    let mut product = 1;
    let mut breakdown = Vec::new();
    for place in relevant_places(a, b)? {
        let s = hilbert_symbol(a, b, &place)?;
        product *= s;
        breakdown.push((place, s));
    }
    Ok((product, breakdown))
}

/// The square class of the rational `num/den` as an integer, `num·den`.
/// Symbols of rationals reduce to this: `num/den ≡ num·den (mod squares)`.
pub fn rational_square_class(num: &BigInt, den: &BigInt) -> Result<BigInt> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::BadInput(
            "rational must have nonzero numerator and denominator".into(),
        ));
    }
    Ok(num * den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn sym(a: i64, b: i64, place: Place) -> i32 {
        hilbert_symbol(&int(a), &int(b), &place).unwrap()
    }

    fn searched(a: i64, b: i64, place: Place) -> i32 {
        hilbert_symbol_by_search(&int(a), &int(b), &place).unwrap()
    }

    #[test]
    fn one_pairs_with_everything_trivially() {
        for b in [2, -3, 7, 30, -1] {
            for place in [
                Place::Finite(2),
                Place::Finite(3),
                Place::Finite(5),
                Place::Infinity,
            ] {
                assert_eq!(sym(1, b, place), 1);
                assert_eq!(searched(1, b, place), 1);
            }
        }
    }

    #[test]
    fn minus_one_minus_one_ramifies_exactly_at_two_and_infinity() {
        assert_eq!(sym(-1, -1, Place::Finite(2)), -1);
        assert_eq!(searched(-1, -1, Place::Finite(2)), -1);
        assert_eq!(sym(-1, -1, Place::Infinity), -1);
        assert_eq!(sym(-1, -1, Place::Finite(3)), 1);
        assert_eq!(sym(-1, -1, Place::Finite(5)), 1);
    }

    #[test]
    fn frozen_symbol_values() {
        // (2, 5): ramified at 2 and 5 only.
        assert_eq!(sym(2, 5, Place::Finite(2)), -1);
        assert_eq!(sym(2, 5, Place::Finite(5)), -1);
        assert_eq!(sym(2, 5, Place::Finite(7)), 1);
        assert_eq!(sym(2, 5, Place::Infinity), 1);
        // (-1, 3): ramified at 2 and 3.
        assert_eq!(sym(-1, 3, Place::Finite(2)), -1);
        assert_eq!(sym(-1, 3, Place::Finite(3)), -1);
        assert_eq!(sym(-1, 3, Place::Infinity), 1);
    }

    #[test]
    fn product_formula_on_fixed_pairs() {
        for (a, b) in [(-1, 3), (2, 5), (-2, -7)] {
            let (prod, breakdown) = product_formula(&int(a), &int(b)).unwrap();
            assert_eq!(prod, 1, "({a},{b})");
            // The breakdown covers infinity and the listed primes.
            assert!(breakdown.iter().any(|(p, _)| *p == Place::Infinity));
            assert!(breakdown.iter().any(|(p, _)| *p == Place::Finite(2)));
        }
    }

    #[test]
    fn closed_form_agrees_with_search_on_a_grid() {
        for a in -12i64..=12 {
            for b in -12i64..=12 {
                if a == 0 || b == 0 {
                    continue;
                }
                for place in [
                    Place::Finite(2),
                    Place::Finite(3),
                    Place::Finite(5),
                    Place::Infinity,
                ] {
                    assert_eq!(
                        sym(a, b, place),
                        searched(a, b, place),
                        "({a},{b}) at {place}"
                    );
                }
            }
        }
    }

    #[test]
    fn search_handles_a_larger_place() {
        for (a, b) in [(2, 13), (5, 13), (-1, 13), (13, 13)] {
            assert_eq!(
                sym(a, b, Place::Finite(13)),
                searched(a, b, Place::Finite(13)),
                "({a},{b})"
            );
        }
    }

    #[test]
    fn symbols_are_symmetric_and_bilinear() {
        let mut rng = crate::sampling::seeded_rng(9);
        let places = [
            Place::Finite(2),
            Place::Finite(3),
            Place::Finite(5),
            Place::Finite(7),
            Place::Infinity,
        ];
        for _ in 0..150 {
            let mut draw = || loop {
                let x = rng.gen_range(-30i64..=30);
                if x != 0 {
                    break x;
                }
            };
            let (a, b, c) = (draw(), draw(), draw());
            for place in places {
                assert_eq!(sym(a, b, place), sym(b, a, place));
                assert_eq!(sym(a, b * c, place), sym(a, b, place) * sym(a, c, place));
                assert_eq!(sym(a, -a, place), 1);
            }
        }
    }

    #[test]
    fn rational_arguments_reduce_to_square_classes() {
        // 3/4 has the square class of 3; -2/3 that of -6.
        let q = rational_square_class(&int(3), &int(4)).unwrap();
        assert_eq!(
            hilbert_symbol(&q, &int(-1), &Place::Finite(3)).unwrap(),
            sym(3, -1, Place::Finite(3))
        );
        let q = rational_square_class(&int(-2), &int(3)).unwrap();
        assert_eq!(q, int(-6));
        assert!(rational_square_class(&int(0), &int(1)).is_err());
    }

    #[test]
    fn invalid_inputs_are_rejected() {
        assert!(hilbert_symbol(&int(0), &int(1), &Place::Infinity).is_err());
        assert!(hilbert_symbol(&int(1), &int(1), &Place::Finite(4)).is_err());
        assert!(hilbert_symbol_by_search(&int(1), &int(1), &Place::Finite(100003)).is_err());
    }

    #[test]
    fn random_product_formula_is_plus_one() {
        let mut rng = crate::sampling::seeded_rng(27);
        for _ in 0..60 {
            let mut draw = || loop {
                let x = rng.gen_range(-100i64..=100);
                if x != 0 {
                    break x;
                }
            };
            let (prod, _) = product_formula(&int(draw()), &int(draw())).unwrap();
            assert_eq!(prod, 1);
        }
    }
}
