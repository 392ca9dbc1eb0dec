//! Dense univariate polynomials over a menu ring, and complete factorization
//! over finite fields.
//!
//! Polynomials are coefficient vectors, low degree first, with no trailing
//! zeros (the zero polynomial is the empty vector). General-ring helpers
//! (addition, multiplication, remainder by a monic divisor, evaluation) work
//! over any [`Ring`]; factorization requires a finite field and runs the
//! classical pipeline: squarefree split by gcd with the derivative (with the
//! inseparable `f(x) = g(x^p)` case handled by coefficient p-th roots),
//! distinct-degree split by gcd with `x^(q^d) - x`, and equal-degree split by
//! Cantor–Zassenhaus. The equal-degree stage draws candidates from a seeded
//! deterministic stream, so factorizations are reproducible given the seed,
//! and the seed is part of [`Factorization`].
//!
//! Every factor is re-certified irreducible ([`is_irreducible`]) and the
//! factorization is re-multiplied and compared with the input before it is
//! returned, so a successful return is a proof, not a claim.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

/// A polynomial as coefficients low-to-high with no trailing zeros.
pub type Poly = Vec<Elem>;

/// Outcome of [`factor_poly`]: monic irreducible factors with multiplicities
/// (sorted by degree, then by coefficient enumeration order for determinism),
/// the unit leading coefficient, and the seed that drove the equal-degree
/// splitting stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub leading_unit: Elem,
    pub factors: Vec<(Poly, u32)>,
    pub seed: u64,
}

/// Remove trailing zero coefficients in place.
pub fn normalize(ring: &Ring, f: &mut Poly) {
    while f.last().map(|c| ring.is_zero(c)).unwrap_or(false) {
        f.pop();
    }
}

pub fn deg(f: &Poly) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn add(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    let mut out = Vec::with_capacity(f.len().max(g.len()));
    for i in 0..f.len().max(g.len()) {
        let a = f.get(i).cloned().unwrap_or_else(|| ring.zero());
        let b = g.get(i).cloned().unwrap_or_else(|| ring.zero());
        out.push(ring.add(&a, &b));
    }
    normalize(ring, &mut out);
    out
}

pub fn neg(ring: &Ring, f: &Poly) -> Poly {
    f.iter().map(|c| ring.neg(c)).collect()
}

pub fn sub(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    add(ring, f, &neg(ring, g))
}

pub fn mul(ring: &Ring, f: &Poly, g: &Poly) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ring.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if ring.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = ring.add(&out[i + j], &ring.mul(a, b));
        }
    }
    normalize(ring, &mut out);
    out
}

pub fn scale(ring: &Ring, c: &Elem, f: &Poly) -> Poly {
    let mut out: Poly = f.iter().map(|a| ring.mul(c, a)).collect();
    normalize(ring, &mut out);
    out
}

/// Evaluate `f` at `x`.
pub fn eval(ring: &Ring, f: &Poly, x: &Elem) -> Elem {
    let mut acc = ring.zero();
    for c in f.iter().rev() {
        acc = ring.add(&ring.mul(&acc, x), c);
    }
    acc
}

pub fn derivative(ring: &Ring, f: &Poly) -> Poly {
    let mut out = Vec::new();
    for (i, c) in f.iter().enumerate().skip(1) {
        out.push(ring.mul(&ring.from_i64(i as i64), c));
    }
    normalize(ring, &mut out);
    out
}

/// Quotient and remainder by a polynomial with unit leading coefficient.
pub fn divmod(ring: &Ring, f: &Poly, g: &Poly) -> Result<(Poly, Poly)> {
    let gl = g
        .last()
        .ok_or_else(|| Error::BadInput("division by the zero polynomial".into()))?;
    let glinv = ring.inv(gl)?;
    let mut rem = f.clone();
    let mut quo = vec![ring.zero(); f.len().saturating_sub(g.len()) + 1];
    while rem.len() >= g.len() && !rem.is_empty() {
        let k = rem.len() - g.len();
        let c = ring.mul(rem.last().unwrap(), &glinv);
        if !ring.is_zero(&c) {
            quo[k] = c.clone();
            for (j, gj) in g.iter().enumerate() {
                let t = ring.mul(&c, gj);
                rem[k + j] = ring.sub(&rem[k + j], &t);
            }
        }
        rem.pop();
        normalize(ring, &mut rem);
        if rem.len() < g.len() {
            break;
        }
    }
    normalize(ring, &mut quo);
    Ok((quo, rem))
}

pub fn rem(ring: &Ring, f: &Poly, g: &Poly) -> Result<Poly> {
    Ok(divmod(ring, f, g)?.1)
}

/// Monic gcd over a field.
pub fn gcd(ring: &Ring, f: &Poly, g: &Poly) -> Result<Poly> {
    let mut a = f.clone();
    let mut b = g.clone();
    normalize(ring, &mut a);
    normalize(ring, &mut b);
    while !b.is_empty() {
        let r = rem(ring, &a, &b)?;
        a = b;
        b = r;
    }
    Ok(make_monic(ring, &a)?)
}

/// Extended Euclid over a field: `(d, s, t)` with `s·f + t·g = d` and `d`
/// the monic gcd (zero when both inputs are zero).
pub fn xgcd(ring: &Ring, f: &Poly, g: &Poly) -> Result<(Poly, Poly, Poly)> {
    let mut r0 = f.clone();
    let mut r1 = g.clone();
    normalize(ring, &mut r0);
    normalize(ring, &mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (vec![ring.one()], Vec::new());
    let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![ring.one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(ring, &r0, &r1)?;
        let s = sub(ring, &s0, &mul(ring, &q, &s1));
        let t = sub(ring, &t0, &mul(ring, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    if let Some(l) = r0.last() {
        let linv = ring.inv(l)?;
        r0 = scale(ring, &linv, &r0);
        s0 = scale(ring, &linv, &s0);
        t0 = scale(ring, &linv, &t0);
    }
    Ok((r0, s0, t0))
}

/// Scale to leading coefficient 1 (zero polynomial passes through).
pub fn make_monic(ring: &Ring, f: &Poly) -> Result<Poly> {
    match f.last() {
        None => Ok(Vec::new()),
        Some(l) => {
            let linv = ring.inv(l)?;
            Ok(scale(ring, &linv, f))
        }
    }
}

/// `base^e mod m` where `m` has unit leading coefficient.
pub fn pow_mod(ring: &Ring, base: &Poly, e: &BigInt, m: &Poly) -> Result<Poly> {
    let mut acc = vec![ring.one()];
    let mut b = rem(ring, base, m)?;
    let mut k = e.clone();
    let two = BigInt::from(2);
    while k > BigInt::zero() {
        if (&k % &two).is_one() {
            acc = rem(ring, &mul(ring, &acc, &b), m)?;
        }
        b = rem(ring, &mul(ring, &b, &b), m)?;
        k /= &two;
    }
    Ok(acc)
}

/// Inverse of an element of `F_p[x]/(f)` by the extended Euclidean algorithm,
/// exposed for the ring kernel's `ExtField` inverse. `None` when not a unit.
pub(crate) fn invert_mod(ring: &Ring, x: &Elem) -> Option<Elem> {
    let (p, f) = match ring {
        Ring::ExtField { p, f } => (p, f),
        _ => return None,
    };
    let base = Ring::PrimeField { p: p.clone() };
    let xs = match x {
        Elem::Pol(cs) => cs,
        _ => return None,
    };
    let mut a: Poly = xs.iter().map(|c| Elem::Int(c.clone())).collect();
    normalize(&base, &mut a);
    if a.is_empty() {
        return None;
    }
    let fpoly: Poly = f.iter().map(|c| Elem::Int(c.clone())).collect();
    // Extended Euclid: maintain u·a ≡ r (mod f).
    let (mut r0, mut r1) = (fpoly.clone(), a);
    let (mut u0, mut u1): (Poly, Poly) = (Vec::new(), vec![base.one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(&base, &r0, &r1).ok()?;
        let u = sub(&base, &u0, &mul(&base, &q, &u1));
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = u;
    }
    if deg(&r0) != Some(0) {
        return None;
    }
    let linv = base.inv(&r0[0]).ok()?;
    let inv = scale(&base, &linv, &u0);
    let inv = rem(&base, &inv, &fpoly).ok()?;
    let mut cs: Vec<BigInt> = inv
        .iter()
        .map(|c| match c {
            Elem::Int(v) => v.clone(),
            _ => unreachable!(),
        })
        .collect();
    cs.resize(f.len() - 1, BigInt::zero());
    Some(Elem::Pol(cs))
}

/// Field size `q` of a finite field ring.
fn field_size(ring: &Ring) -> Result<BigInt> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    Ok(ring.size().expect("finite fields are finite"))
}

/// Characteristic `p` of a finite field ring.
fn field_char(ring: &Ring) -> BigInt {
    ring.characteristic()
}

/// `p`-th root of a field element: `c^(q/p)`, inverse of Frobenius.
fn pth_root(ring: &Ring, c: &Elem) -> Elem {
    let q = ring.size().expect("finite field");
    let p = field_char(ring);
    let e = q / &p; // c^(q/p) satisfies (c^(q/p))^p = c^q = c.
    let mut acc = ring.one();
    let mut base = c.clone();
    let mut k = e;
    let two = BigInt::from(2);
    while k > BigInt::zero() {
        if (&k % &two).is_one() {
            acc = ring.mul(&acc, &base);
        }
        base = ring.mul(&base, &base);
        k /= &two;
    }
    acc
}

/// Monic irreducibility test over a finite field: `f` of degree `d ≥ 1` is
/// irreducible iff `x^(q^d) ≡ x (mod f)` and, for every prime `r | d`,
/// `gcd(x^(q^(d/r)) - x, f) = 1`.
pub fn is_irreducible(ring: &Ring, f: &Poly) -> Result<bool> {
    let q = field_size(ring)?;
    let d = match deg(f) {
        None | Some(0) => return Ok(false),
        Some(1) => return Ok(true),
        Some(d) => d,
    };
    let f = make_monic(ring, f)?;
    let x: Poly = vec![ring.zero(), ring.one()];
    let qd = q.pow(d as u32);
    let frob_d = pow_mod(ring, &x, &qd, &f)?;
    if sub(ring, &frob_d, &x) != Vec::<Elem>::new() {
        return Ok(false);
    }
    let dprimes = crate::ring::trial_factor(&BigInt::from(d), crate::ring::trial_bound())?;
    for (r, _) in dprimes {
        let e = d / r.to_usize().expect("degree fits usize");
        let frob_e = pow_mod(ring, &x, &q.pow(e as u32), &f)?;
        let g = gcd(ring, &sub(ring, &frob_e, &x), &f)?;
        if deg(&g) != Some(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Complete factorization of a nonzero polynomial over a finite field.
///
/// The result is certified: each factor passes [`is_irreducible`] and the
/// product of `leading_unit · ∏ factor^multiplicity` is re-expanded and
/// compared with the input (an internal-invariant error otherwise, which
/// would indicate a bug, not bad input).
pub fn factor_poly(ring: &Ring, f: &Poly, seed: u64) -> Result<Factorization> {
    let _ = field_size(ring)?;
    let mut f = f.clone();
    normalize(ring, &mut f);
    if f.is_empty() {
        return Err(Error::BadInput("cannot factor the zero polynomial".into()));
    }
    let leading_unit = f.last().unwrap().clone();
    let monic = make_monic(ring, &f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    squarefree_factor(ring, &monic, 1, &mut factors, &mut rng)?;

    // Canonical order: by degree, then by coefficient enumeration order.
    factors.sort_by(|(a, _), (b, _)| {
        a.len()
            .cmp(&b.len())
            .then_with(|| format!("{a:?}").cmp(&format!("{b:?}")))
    });

    // Certify: factors irreducible, product re-expands to the input.
    let mut check: Poly = vec![leading_unit.clone()];
    for (g, e) in &factors {
        if !is_irreducible(ring, g)? {
            return Err(Error::Internal(
                "factorization produced a reducible factor".into(),
            ));
        }
        for _ in 0..*e {
            check = mul(ring, &check, g);
        }
    }
    if check != f {
        return Err(Error::Internal(
            "factorization does not re-multiply to the input".into(),
        ));
    }
    Ok(Factorization {
        leading_unit,
        factors,
        seed,
    })
}

/// Squarefree stage: peel gcd(f, f'), recurse, and handle the inseparable
/// case `f' = 0` (then `f(x) = g(x^p)` with `g` obtained by p-th roots of
/// coefficients, and every multiplicity is multiplied by `p`).
fn squarefree_factor(
    ring: &Ring,
    f: &Poly,
    mult: u32,
    out: &mut Vec<(Poly, u32)>,
    rng: &mut ChaCha8Rng,
) -> Result<()> {
    if deg(f) == Some(0) {
        return Ok(());
    }
    let fd = derivative(ring, f);
    if fd.is_empty() {
        // f(x) = g(x^p): coefficients at indices divisible by p, p-th rooted.
        let p = field_char(ring).to_usize().expect("small characteristic");
        let mut g = Vec::new();
        for (i, c) in f.iter().enumerate() {
            if i % p == 0 {
                g.push(pth_root(ring, c));
            } else if !ring.is_zero(c) {
                return Err(Error::Internal(
                    "zero derivative but a coefficient off the p-grid".into(),
                ));
            }
        }
        let mut g = g;
        normalize(ring, &mut g);
        return squarefree_factor(ring, &g, mult * p as u32, out, rng);
    }
    let g = gcd(ring, f, &fd)?;
    let squarefree = divmod(ring, f, &g)?.0;
    // Factor the squarefree part, then account for the repeated part.
    let pieces = factor_squarefree(ring, &squarefree, rng)?;
    for piece in pieces {
        // Multiplicity of `piece` in f: divide out as many times as possible.
        let mut h = f.clone();
        let mut e = 0u32;
        loop {
            let (q, r) = divmod(ring, &h, &piece)?;
            if r.is_empty() {
                h = q;
                e += 1;
            } else {
                break;
            }
        }
        merge_factor(out, piece, e * mult);
    }
    Ok(())
}

fn merge_factor(out: &mut Vec<(Poly, u32)>, g: Poly, e: u32) {
    if e == 0 {
        return;
    }
    for (h, m) in out.iter_mut() {
        if *h == g {
            *m += e;
            return;
        }
    }
    out.push((g, e));
}

/// Distinct-degree then equal-degree splitting of a squarefree monic input.
fn factor_squarefree(ring: &Ring, f: &Poly, rng: &mut ChaCha8Rng) -> Result<Vec<Poly>> {
    let q = field_size(ring)?;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Poly = vec![ring.zero(), ring.one()];
    let mut d = 1usize;
    let mut frob = x.clone(); // x^(q^d) mod rest, maintained incrementally.
    while deg(&rest).unwrap_or(0) >= 1 {
        if 2 * d > deg(&rest).unwrap() {
            // What is left is irreducible.
            out.push(rest.clone());
            break;
        }
        frob = pow_mod(ring, &frob, &q, &rest)?;
        let g = gcd(ring, &sub(ring, &frob, &x), &rest)?;
        if deg(&g).unwrap_or(0) >= 1 {
            equal_degree_split(ring, &g, d, rng, &mut out)?;
            rest = divmod(ring, &rest, &g)?.0;
            frob = rem(ring, &frob, &rest)?;
        }
        d += 1;
    }
    Ok(out)
}

/// Cantor–Zassenhaus equal-degree splitting: `f` squarefree monic, all of
/// whose irreducible factors have degree `d`. Odd characteristic uses the
/// `h^((q^d-1)/2) - 1` trick; characteristic 2 uses the trace map
/// `h + h² + h⁴ + … + h^(2^(kd-1))` for `q = 2^k`.
fn equal_degree_split(
    ring: &Ring,
    f: &Poly,
    d: usize,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<Poly>,
) -> Result<()> {
    let n = deg(f).unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return Ok(());
    }
    let q = field_size(ring)?;
    let two = BigInt::from(2);
    loop {
        let h = random_poly_below(ring, n, rng);
        if deg(&h).is_none() {
            continue;
        }
        let g1 = gcd(ring, &h, f)?;
        let split = if deg(&g1).unwrap_or(0) >= 1 && deg(&g1).unwrap() < n {
            g1
        } else if (&q % &two).is_zero() {
            // Trace map for characteristic 2.
            let k = (q.bits() - 1) as usize; // q = 2^k
            let mut t = rem(ring, &h, f)?;
            let mut acc = t.clone();
            for _ in 1..(k * d) {
                t = rem(ring, &mul(ring, &t, &t), f)?;
                acc = add(ring, &acc, &t);
            }
            let g = gcd(ring, &acc, f)?;
            g
        } else {
            let e = (q.pow(d as u32) - BigInt::one()) / &two;
            let he = pow_mod(ring, &h, &e, f)?;
            let g = gcd(ring, &sub(ring, &he, &vec![ring.one()]), f)?;
            g
        };
        let k = deg(&split).unwrap_or(0);
        if k >= 1 && k < n {
            equal_degree_split(ring, &split, d, rng, out)?;
            let rest = divmod(ring, f, &split)?.0;
            equal_degree_split(ring, &rest, d, rng, out)?;
            return Ok(());
        }
    }
}

/// Random polynomial of degree < n with coefficients drawn from the seeded
/// stream, mapped into the field through its element enumeration.
fn random_poly_below(ring: &Ring, n: usize, rng: &mut ChaCha8Rng) -> Poly {
    let q = ring.size().expect("finite field").to_u64().unwrap_or(u64::MAX);
    let mut cs = Vec::with_capacity(n);
    for _ in 0..n {
        let k = rng.gen_range(0..q);
        cs.push(element_by_index(ring, k));
    }
    let mut p = cs;
    normalize(ring, &mut p);
    p
}

/// The k-th field element in enumeration order, computed without building
/// the full element list.
fn element_by_index(ring: &Ring, k: u64) -> Elem {
    match ring {
        Ring::PrimeField { .. } => ring.from_i64(k as i64),
        Ring::ExtField { p, f } => {
            let pu = p.to_u64().expect("small prime");
            let mut cs = Vec::with_capacity(f.len() - 1);
            let mut rest = k;
            for _ in 0..f.len() - 1 {
                cs.push(BigInt::from(rest % pu));
                rest /= pu;
            }
            Elem::Pol(cs)
        }
        _ => panic!("element_by_index needs a finite field"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;

    fn gf(p: i64) -> Ring {
        Ring::prime_field(int(p)).unwrap()
    }

    fn ip(ring: &Ring, cs: &[i64]) -> Poly {
        let mut p: Poly = cs.iter().map(|&c| ring.from_i64(c)).collect();
        normalize(ring, &mut p);
        p
    }

    #[test]
    fn division_round_trips() {
        let r = gf(7);
        let f = ip(&r, &[3, 0, 1, 5, 2]);
        let g = ip(&r, &[1, 4, 1]);
        let (q, rem_) = divmod(&r, &f, &g).unwrap();
        let back = add(&r, &mul(&r, &q, &g), &rem_);
        assert_eq!(back, f);
        assert!(deg(&rem_).unwrap_or(0) < deg(&g).unwrap());
    }

    #[test]
    fn extended_gcd_satisfies_the_bezout_identity() {
        let r = gf(7);
        // Frozen: gcd(x² − 1, x² + x) = x + 1 with x² − 1 − (x − 1)·(x + x²)
        // reading off s = 1, t = −1 after the monic rescale.
        let f = ip(&r, &[6, 0, 1]);
        let g = ip(&r, &[0, 1, 1]);
        let (d, s, t) = xgcd(&r, &f, &g).unwrap();
        assert_eq!(d, ip(&r, &[1, 1]));
        let combo = add(&r, &mul(&r, &s, &f), &mul(&r, &t, &g));
        assert_eq!(combo, d);

        // Coprime pair: the identity expresses 1.
        let f = ip(&r, &[1, 0, 1]);
        let g = ip(&r, &[3, 1]);
        let (d, s, t) = xgcd(&r, &f, &g).unwrap();
        assert_eq!(d, ip(&r, &[1]));
        let combo = add(&r, &mul(&r, &s, &f), &mul(&r, &t, &g));
        assert_eq!(combo, d);

        // Degenerate inputs.
        let zero: Poly = Vec::new();
        let (d, _, t) = xgcd(&r, &zero, &ip(&r, &[0, 2])).unwrap();
        assert_eq!(d, ip(&r, &[0, 1]));
        assert_eq!(mul(&r, &t, &ip(&r, &[0, 2])), d);
        let (d, _, _) = xgcd(&r, &zero, &zero).unwrap();
        assert!(d.is_empty());
    }

    #[test]
    fn x_squared_plus_one_splits_over_gf5_and_not_over_gf3() {
        // Oracle first: roots of x² + 1 by exhaustive evaluation.
        let r5 = gf(5);
        let f5 = ip(&r5, &[1, 0, 1]);
        let roots: Vec<i64> = (0..5)
            .filter(|&v| r5.is_zero(&eval(&r5, &f5, &r5.from_i64(v))))
            .collect();
        assert_eq!(roots, vec![2, 3]);

        let fac = factor_poly(&r5, &f5, 0).unwrap();
        assert_eq!(fac.factors.len(), 2);
        for (g, e) in &fac.factors {
            assert_eq!(*e, 1);
            assert_eq!(deg(g), Some(1));
        }
        // The linear factors are x - 2 = x + 3 and x - 3 = x + 2.
        let consts: Vec<Elem> = fac.factors.iter().map(|(g, _)| g[0].clone()).collect();
        assert!(consts.contains(&r5.from_i64(2)));
        assert!(consts.contains(&r5.from_i64(3)));

        let r3 = gf(3);
        let f3 = ip(&r3, &[1, 0, 1]);
        assert!(is_irreducible(&r3, &f3).unwrap());
        let fac3 = factor_poly(&r3, &f3, 0).unwrap();
        assert_eq!(fac3.factors.len(), 1);
        assert_eq!(fac3.factors[0].1, 1);
    }

    #[test]
    fn repeated_factors_get_their_multiplicity() {
        // x² + 1 = (x + 1)² over GF(2).
        let r = gf(2);
        let f = ip(&r, &[1, 0, 1]);
        let fac = factor_poly(&r, &f, 0).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0], (ip(&r, &[1, 1]), 2));
    }

    #[test]
    fn factorization_is_deterministic_for_a_fixed_seed() {
        let r = gf(13);
        // (x² + 1)(x² + x + 2)(x + 5) expanded, plus a leading unit 3.
        let f = scale(
            &r,
            &r.from_i64(3),
            &mul(
                &r,
                &mul(&r, &ip(&r, &[1, 0, 1]), &ip(&r, &[2, 1, 1])),
                &ip(&r, &[5, 1]),
            ),
        );
        let a = factor_poly(&r, &f, 42).unwrap();
        let b = factor_poly(&r, &f, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.leading_unit, r.from_i64(3));
        let total: usize = a
            .factors
            .iter()
            .map(|(g, e)| deg(g).unwrap() * *e as usize)
            .sum();
        assert_eq!(total, 5);
    }

    #[test]
    fn factorization_over_an_extension_field_works() {
        // Over GF(9), x² - g splits or stays irreducible depending on g;
        // exercise the q = p² path with x⁹ - x which splits completely.
        let f9 = Ring::ext_field(int(3), vec![int(1), int(0), int(1)]).unwrap();
        let x: Poly = vec![f9.zero(), f9.one()];
        let x9 = pow_mod(
            &f9,
            &x,
            &int(9),
            &ip(&f9, &[0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        )
        .unwrap();
        let f = sub(&f9, &x9, &x); // x⁹ - x as a degree-9 polynomial
        let fac = factor_poly(&f9, &f, 7).unwrap();
        assert_eq!(fac.factors.len(), 9);
        for (g, e) in &fac.factors {
            assert_eq!((deg(g), *e), (Some(1), 1));
        }
    }

    #[test]
    fn inseparable_inputs_factor_via_pth_roots() {
        // x⁴ + x² + 1 = (x² + x + 1)² over GF(2); derivative vanishes.
        let r = gf(2);
        let f = ip(&r, &[1, 0, 1, 0, 1]);
        assert!(derivative(&r, &f).is_empty());
        let fac = factor_poly(&r, &f, 0).unwrap();
        assert_eq!(fac.factors, vec![(ip(&r, &[1, 1, 1]), 2)]);
    }

    #[test]
    fn char2_trace_splitting_separates_linear_factors() {
        // x² + x = x(x+1) over GF(2): equal-degree split in characteristic 2.
        let r = gf(2);
        let f = ip(&r, &[0, 1, 1]);
        let fac = factor_poly(&r, &f, 1).unwrap();
        assert_eq!(fac.factors.len(), 2);
    }
}
