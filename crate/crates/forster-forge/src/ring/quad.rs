//! Ideal arithmetic in maximal quadratic orders `Z[ω]`.
//!
//! A nonzero ideal is stored by its two-row Hermite normal form over `Z` in
//! the coordinates `(1, ω)`:
//!
//! ```text
//!   [ a  0 ]      first basis vector  a            (a > 0)
//!   [ b  c ]      second basis vector b + cω       (c > 0, c | a, 0 ≤ b < a)
//! ```
//!
//! so equal ideals have identical representations and the norm is the
//! determinant `a·c`. Construction from generators closes the lattice under
//! multiplication by ω; construction from raw HNF rows *verifies* closure
//! instead and rejects lattices that are not ideals. Products, conjugates,
//! membership, exact division, and prime factorization (splitting behaviour
//! read off the minimal polynomial of ω modulo each rational prime, which is
//! factored by the certified routine in [`poly`](crate::ring::poly)) are all
//! exact; factorizations recompose to the input before being returned.
//!
//! Minimal-norm searches scan lattice coordinates ring by ring (sup-norm
//! radius) in a fixed order, so results are deterministic. For imaginary
//! discriminants the norm form is positive definite and the scan provably
//! terminates; for real discriminants a hard search box applies and a miss
//! reports `NormTooLarge`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::poly;
use crate::ring::{int, Elem, Ring};

/// Nonzero integral ideal of a maximal quadratic order, in HNF.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadIdeal {
    pub ring: Ring,
    /// `[[a, 0], [b, c]]` as documented at module level.
    pub basis: [[BigInt; 2]; 2],
}

/// How a rational prime sits in the order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SplitKind {
    /// Two distinct conjugate primes of norm `p`.
    Split,
    /// One prime of norm `p` with square `(p)`.
    Ramified,
    /// The principal prime `(p)` of norm `p²`.
    Inert,
}

/// A maximal ideal of the order above a rational prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadPrime {
    pub p: BigInt,
    pub kind: SplitKind,
    /// For `Split`/`Ramified`: the root `r` of the minimal polynomial of ω
    /// mod `p`, so the prime is `(p, ω - r)` and `ω ≡ r` in the residue field.
    pub root: Option<BigInt>,
    pub ideal: QuadIdeal,
}

impl QuadIdeal {
    /// Ideal generated by ring elements (at least one nonzero): the lattice
    /// spanned by the generators and their ω-multiples, in HNF.
    pub fn from_generators(ring: &Ring, gens: &[Elem]) -> Result<QuadIdeal> {
        require_quad(ring)?;
        let mut rows: Vec<[BigInt; 2]> = Vec::new();
        let w = Elem::Quad {
            a: BigInt::zero(),
            b: BigInt::one(),
        };
        for g in gens {
            ring.validate(g)?;
            for e in [g.clone(), ring.mul(g, &w)] {
                if let Elem::Quad { a, b } = e {
                    rows.push([a, b]);
                }
            }
        }
        let basis = hnf_two_columns(&rows)
            .ok_or_else(|| Error::BadInput("the zero ideal is not supported".into()))?;
        let ideal = QuadIdeal {
            ring: ring.clone(),
            basis,
        };
        debug_assert!(ideal.is_omega_closed());
        Ok(ideal)
    }

    /// Principal ideal `(x)`.
    pub fn principal(ring: &Ring, x: &Elem) -> Result<QuadIdeal> {
        QuadIdeal::from_generators(ring, std::slice::from_ref(x))
    }

    /// Build from raw HNF rows `[[a, 0], [b, c]]`, verifying shape and
    /// closure under multiplication by ω.
    pub fn from_hnf_rows(ring: &Ring, rows: [[BigInt; 2]; 2]) -> Result<QuadIdeal> {
        require_quad(ring)?;
        let [[a, z], [b, c]] = &rows;
        if !z.is_zero() {
            return Err(Error::BadInput(
                "HNF rows must look like [a, 0], [b, c]".into(),
            ));
        }
        if a.sign() != num_bigint::Sign::Plus || c.sign() != num_bigint::Sign::Plus {
            return Err(Error::BadInput("HNF pivots must be positive".into()));
        }
        if b.sign() == num_bigint::Sign::Minus || b >= a {
            return Err(Error::BadInput("HNF requires 0 ≤ b < a".into()));
        }
        let ideal = QuadIdeal {
            ring: ring.clone(),
            basis: rows,
        };
        if !ideal.is_omega_closed() {
            return Err(Error::BadInput(
                "lattice is not closed under multiplication by ω, so it is not an ideal".into(),
            ));
        }
        Ok(ideal)
    }

    /// The two basis vectors as ring elements.
    pub fn basis_elements(&self) -> [Elem; 2] {
        [
            Elem::Quad {
                a: self.basis[0][0].clone(),
                b: self.basis[0][1].clone(),
            },
            Elem::Quad {
                a: self.basis[1][0].clone(),
                b: self.basis[1][1].clone(),
            },
        ]
    }

    /// Ideal norm: the index `[Z[ω] : I]`, i.e. the HNF determinant.
    pub fn norm(&self) -> BigInt {
        &self.basis[0][0] * &self.basis[1][1]
    }

    /// Exact membership by solving against the HNF basis.
    pub fn contains(&self, x: &Elem) -> bool {
        let (u, v) = match x {
            Elem::Quad { a, b } => (a.clone(), b.clone()),
            _ => return false,
        };
        let (a0, b0, c0) = (&self.basis[0][0], &self.basis[1][0], &self.basis[1][1]);
        if !(&v % c0).is_zero() {
            return false;
        }
        let t = v / c0;
        let rest = u - t * b0;
        (rest % a0).is_zero()
    }

    /// Whether `other ⊆ self`.
    pub fn contains_ideal(&self, other: &QuadIdeal) -> bool {
        other.basis_elements().iter().all(|e| self.contains(e))
    }

    /// Ideal product: lattice spanned by pairwise products of basis vectors.
    pub fn product(&self, other: &QuadIdeal) -> Result<QuadIdeal> {
        if self.ring != other.ring {
            return Err(Error::MismatchedRing(
                "ideal product between different orders".into(),
            ));
        }
        let mut gens = Vec::with_capacity(4);
        for x in self.basis_elements() {
            for y in other.basis_elements() {
                gens.push(self.ring.mul(&x, &y));
            }
        }
        QuadIdeal::from_generators(&self.ring, &gens)
    }

    /// Conjugate ideal.
    pub fn conjugate(&self) -> Result<QuadIdeal> {
        let gens: Vec<Elem> = self
            .basis_elements()
            .iter()
            .map(|e| self.ring.quad_conj(e))
            .collect();
        QuadIdeal::from_generators(&self.ring, &gens)
    }

    /// Divide every basis entry by the positive integer `q`, which must be
    /// exact (used for `I · conj(I) = (N(I))` manipulations).
    pub fn divide_by_integer(&self, q: &BigInt) -> Result<QuadIdeal> {
        if q.sign() != num_bigint::Sign::Plus {
            return Err(Error::BadInput("divisor must be positive".into()));
        }
        let mut rows = self.basis.clone();
        for row in rows.iter_mut() {
            for e in row.iter_mut() {
                if !(&*e % q).is_zero() {
                    return Err(Error::NoSolution(format!(
                        "ideal basis entry {e} is not divisible by {q}"
                    )));
                }
                *e = &*e / q;
            }
        }
        QuadIdeal::from_hnf_rows(&self.ring, rows)
    }

    /// Exact ideal quotient `self · P⁻¹` for a maximal ideal `P ⊇ self`…
    /// more precisely for any prime `P` dividing `self`:
    /// `I · P⁻¹ = I · conj(P) / N(P)`.
    pub fn divide_by_prime(&self, prime: &QuadPrime) -> Result<QuadIdeal> {
        let num = self.product(&prime.ideal.conjugate()?)?;
        num.divide_by_integer(&prime.ideal.norm())
    }

    /// Closure of the lattice under multiplication by ω (both basis vectors
    /// times ω stay inside).
    fn is_omega_closed(&self) -> bool {
        let w = Elem::Quad {
            a: BigInt::zero(),
            b: BigInt::one(),
        };
        self.basis_elements()
            .iter()
            .all(|e| self.contains(&self.ring.mul(e, &w)))
    }

    /// Prime factorization by trial division of the norm.
    ///
    /// Returns `(prime, exponent)` pairs ordered by rational prime and root,
    /// certified before return: each factor has norm `p` or `p²`, and the
    /// product of prime powers re-multiplies to the ideal.
    pub fn prime_factorization(&self) -> Result<Vec<(QuadPrime, u32)>> {
        let norm = self.norm();
        let rational = crate::ring::trial_factor(&norm, crate::ring::trial_bound())?;
        let mut out: Vec<(QuadPrime, u32)> = Vec::new();
        let mut rest = self.clone();
        for (p, _) in rational {
            for prime in primes_above(&self.ring, &p)? {
                let mut e = 0u32;
                while prime.ideal.contains_ideal(&rest) {
                    rest = rest.divide_by_prime(&prime)?;
                    e += 1;
                }
                if e > 0 {
                    out.push((prime, e));
                }
            }
        }
        if rest.norm() != BigInt::one() {
            return Err(Error::Internal(
                "prime factorization left a non-unit cofactor".into(),
            ));
        }
        // Certificate: re-multiply.
        let mut acc = QuadIdeal::principal(&self.ring, &self.ring.one())?;
        for (prime, e) in &out {
            for _ in 0..*e {
                acc = acc.product(&prime.ideal)?;
            }
        }
        if acc != *self {
            return Err(Error::Internal(
                "prime factorization does not re-multiply to the ideal".into(),
            ));
        }
        Ok(out)
    }
}

fn require_quad(ring: &Ring) -> Result<()> {
    match ring {
        Ring::QuadOrder { .. } => Ok(()),
        _ => Err(Error::UnsupportedRing(format!(
            "{ring} is not a quadratic order"
        ))),
    }
}

/// Minimal polynomial of ω over `Z`: `x² - d` or `x² - x - (d-1)/4`.
pub fn omega_min_poly(ring: &Ring) -> Result<[BigInt; 3]> {
    match ring {
        Ring::QuadOrder { d } => {
            if d.mod_floor(&int(4)).is_one() {
                Ok([(BigInt::one() - d) / 4, -BigInt::one(), BigInt::one()])
            } else {
                Ok([-d.clone(), BigInt::zero(), BigInt::one()])
            }
        }
        _ => Err(Error::UnsupportedRing(format!(
            "{ring} is not a quadratic order"
        ))),
    }
}

/// The maximal ideals above a rational prime `p`, read off the factorization
/// of ω's minimal polynomial mod `p`. Split primes are returned with roots
/// ascending.
pub fn primes_above(ring: &Ring, p: &BigInt) -> Result<Vec<QuadPrime>> {
    require_quad(ring)?;
    let fp = Ring::prime_field(p.clone())?;
    let m = omega_min_poly(ring)?;
    let mpoly: poly::Poly = m.iter().map(|c| fp.from_bigint(c)).collect();
    let mut mpoly = mpoly;
    poly::normalize(&fp, &mut mpoly);
    let fac = poly::factor_poly(&fp, &mpoly, 0)?;
    let p_elem = ring.from_bigint(p);
    if fac.factors.len() == 1 && fac.factors[0].1 == 1 && poly::deg(&fac.factors[0].0) == Some(2) {
        // Inert: (p) itself is maximal with residue field GF(p²).
        let ideal = QuadIdeal::principal(ring, &p_elem)?;
        return Ok(vec![QuadPrime {
            p: p.clone(),
            kind: SplitKind::Inert,
            root: None,
            ideal,
        }]);
    }
    let mut roots: Vec<BigInt> = fac
        .factors
        .iter()
        .map(|(g, _)| match &g[0] {
            // g = x - r stored as [-r, 1] with -r canonical in [0, p).
            Elem::Int(c) => (-c).mod_floor(p),
            _ => unreachable!("prime field elements are integers"),
        })
        .collect();
    roots.sort();
    let ramified = fac.factors.len() == 1 && fac.factors[0].1 == 2;
    let kind = if ramified {
        SplitKind::Ramified
    } else {
        SplitKind::Split
    };
    let mut out = Vec::new();
    for r in roots {
        let gen = Elem::Quad {
            a: -r.clone(),
            b: BigInt::one(),
        };
        // Prime (p, ω - r).
        let ideal = QuadIdeal::from_generators(ring, &[p_elem.clone(), gen])?;
        if ideal.norm() != *p {
            return Err(Error::Internal(format!(
                "prime above {p} has norm {} instead of {p}",
                ideal.norm()
            )));
        }
        out.push(QuadPrime {
            p: p.clone(),
            kind,
            root: Some(r),
            ideal,
        });
    }
    Ok(out)
}

impl QuadPrime {
    /// Residue field: `GF(p)` for split/ramified primes, `GF(p²)` inert.
    pub fn residue_field(&self, ring: &Ring) -> Result<Ring> {
        match self.kind {
            SplitKind::Split | SplitKind::Ramified => Ring::prime_field(self.p.clone()),
            SplitKind::Inert => {
                let m = omega_min_poly(ring)?;
                Ring::ext_field(self.p.clone(), m.to_vec())
            }
        }
    }

    /// Residue of a ring element in the residue field: `a + bω ↦ a + b·r`
    /// for degree-one primes, `a + b·x̄` for inert primes.
    pub fn residue(&self, ring: &Ring, x: &Elem) -> Result<Elem> {
        let (a, b) = match x {
            Elem::Quad { a, b } => (a, b),
            _ => {
                return Err(Error::MismatchedRing(
                    "quadratic residue of a non-quadratic element".into(),
                ))
            }
        };
        match (&self.kind, &self.root) {
            (SplitKind::Inert, _) => {
                let _ = require_quad(ring)?;
                Ok(Elem::Pol(vec![
                    a.mod_floor(&self.p),
                    b.mod_floor(&self.p),
                ]))
            }
            (_, Some(r)) => Ok(Elem::Int((a + b * r).mod_floor(&self.p))),
            _ => Err(Error::Internal("split prime without a root".into())),
        }
    }
}

/// HNF of a stack of `(u, v)` rows meaning `u + vω`; `None` when the span is
/// not a full rank-2 lattice (the zero ideal, or a lattice with no ω part —
/// neither arises from a nonzero ideal, since `x` and `ωx` are independent).
fn hnf_two_columns(rows: &[[BigInt; 2]]) -> Option<[[BigInt; 2]; 2]> {
    // Fold every row carrying an ω-coordinate into one pivot row (b, c) by
    // unimodular 2-row combinations; the eliminated combinations fall into
    // the (u, 0) pile. The transform [[x, y], [v/g, -u/g]] for
    // x·u + y·v = g has determinant -1, so the lattice is preserved.
    let mut pivot: Option<[BigInt; 2]> = None;
    let mut plain: Vec<BigInt> = Vec::new(); // rows of shape (u, 0)
    for row in rows {
        if row[0].is_zero() && row[1].is_zero() {
            continue;
        }
        if row[1].is_zero() {
            plain.push(row[0].clone());
            continue;
        }
        pivot = Some(match pivot.take() {
            None => row.clone(),
            Some(cur) => {
                let e = cur[1].extended_gcd(&row[1]);
                let g = e.gcd.clone();
                let new = [&e.x * &cur[0] + &e.y * &row[0], g.clone()];
                let k1 = &cur[1] / &g;
                let k2 = &row[1] / &g;
                let rem = &k2 * &cur[0] - &k1 * &row[0];
                if !rem.is_zero() {
                    plain.push(rem);
                }
                new
            }
        });
    }
    let [b0, c0] = pivot?;
    let (b0, c0) = if c0.sign() == num_bigint::Sign::Minus {
        (-b0, -c0)
    } else {
        (b0, c0)
    };
    let mut a = BigInt::zero();
    for u in plain {
        a = a.gcd(&u);
    }
    if a.is_zero() {
        return None;
    }
    let b = b0.mod_floor(&a);
    Some([[a, BigInt::zero()], [b, c0]])
}

/// Deterministic lattice scan order: coordinate pairs `(s, t) ≠ (0, 0)`
/// grouped by sup-norm radius, within a ring ordered by `(|t|, |s|,
/// sign(t) < 0, sign(s) < 0)` — so `(1, 0)` comes first.
pub fn scan_pairs(radius: i64) -> Vec<(i64, i64)> {
    let mut ring_pairs: Vec<(i64, i64)> = Vec::new();
    for s in -radius..=radius {
        for t in -radius..=radius {
            if s.abs().max(t.abs()) == radius {
                ring_pairs.push((s, t));
            }
        }
    }
    ring_pairs.sort_by_key(|&(s, t)| (t.abs(), s.abs(), t < 0, s < 0));
    ring_pairs
}

/// Canonical unit normalization: flip the sign so the ω-coordinate (or, if
/// zero, the rational coordinate) is positive.
pub fn canonical_sign(ring: &Ring, x: &Elem) -> Elem {
    match x {
        Elem::Quad { a, b } => {
            let neg = if b.is_zero() {
                a.sign() == num_bigint::Sign::Minus
            } else {
                b.sign() == num_bigint::Sign::Minus
            };
            if neg {
                ring.neg(x)
            } else {
                x.clone()
            }
        }
        _ => x.clone(),
    }
}

/// A nonzero element of `I` of minimal absolute norm, by the deterministic
/// lattice scan. For imaginary `d` the positive-definite norm form bounds
/// the scan (`|N| ≥ radius²/4` in HNF coordinates) and the minimum is exact;
/// for real `d` the scan stops at the hard box and reports the best found,
/// or `NormTooLarge` if nothing within `16·N(I)` appears.
pub fn minimal_norm_element(ideal: &QuadIdeal) -> Result<Elem> {
    let ring = &ideal.ring;
    let norm_bound = int(16) * ideal.norm();
    let hard_cap: i64 = {
        let root = ideal.norm().sqrt().to_i64().unwrap_or(i64::MAX / 8);
        4 * (root + 1) + 4
    };
    let [r1, r2] = ideal.basis_elements();
    let mut best: Option<(BigInt, Elem)> = None;
    for radius in 1..=hard_cap {
        if let Some((bn, _)) = &best {
            // Imaginary: |N| ≥ radius²/4 once the radius ring is passed.
            if is_imaginary(ring) && int(radius) * int(radius) > int(4) * bn + int(4) {
                break;
            }
        }
        for (s, t) in scan_pairs(radius) {
            let cand = ring.add(
                &scale_elem(ring, &r1, s),
                &scale_elem(ring, &r2, t),
            );
            let n = ring.quad_norm(&cand).abs();
            if n.is_zero() {
                continue;
            }
            let better = match &best {
                None => n <= norm_bound,
                Some((bn, _)) => n < *bn,
            };
            if better {
                best = Some((n, canonical_sign(ring, &cand)));
            }
        }
    }
    best.map(|(_, e)| e).ok_or(Error::NormTooLarge {
        bound: norm_bound.to_string(),
    })
}

/// First element of `I` (in scan order) avoiding every ideal in `avoid`.
pub fn first_element_avoiding(ideal: &QuadIdeal, avoid: &[QuadIdeal]) -> Result<Elem> {
    let ring = &ideal.ring;
    let [r1, r2] = ideal.basis_elements();
    // Prime avoidance over a 2-dimensional lattice succeeds within a small
    // radius: each avoided sublattice P·I has index ≥ 2 in I.
    let hard_cap = 64 + 4 * avoid.len() as i64;
    for radius in 1..=hard_cap {
        for (s, t) in scan_pairs(radius) {
            let cand = ring.add(&scale_elem(ring, &r1, s), &scale_elem(ring, &r2, t));
            if avoid.iter().all(|a| !a.contains(&cand)) {
                return Ok(canonical_sign(ring, &cand));
            }
        }
    }
    Err(Error::SearchExhausted {
        tried: (2 * hard_cap as u64 + 1).pow(2),
        seed: 0,
    })
}

/// All elements of the order with `|norm| = n` (imaginary orders only, where
/// the count is finite), in scan order with canonical sign, deduplicated.
pub fn elements_of_norm(ring: &Ring, n: &BigInt) -> Result<Vec<Elem>> {
    if !is_imaginary(ring) {
        return Err(Error::UnsupportedRing(
            "norm fibers are infinite over real quadratic orders".into(),
        ));
    }
    if n.sign() != num_bigint::Sign::Plus {
        return Err(Error::BadInput("norm must be positive".into()));
    }
    // |N(a + bω)| ≥ (sup coordinate)²/4 as in minimal_norm_element, so the
    // box |a|,|b| ≤ 2·(sqrt(n)+1) is exhaustive.
    let cap = 2 * (n.sqrt().to_i64().unwrap_or(i64::MAX / 4) + 1);
    let mut out = Vec::new();
    for radius in 1..=cap {
        for (s, t) in scan_pairs(radius) {
            let cand = Elem::Quad {
                a: int(s),
                b: int(t),
            };
            if ring.quad_norm(&cand) == *n {
                let c = canonical_sign(ring, &cand);
                if !out.contains(&c) {
                    out.push(c);
                }
            }
        }
    }
    Ok(out)
}

/// Whether a principal generator exists; returns one if so (imaginary only).
pub fn principal_generator(ideal: &QuadIdeal) -> Result<Option<Elem>> {
    let ring = &ideal.ring;
    for x in elements_of_norm(ring, &ideal.norm())? {
        if ideal.contains(&x) && QuadIdeal::principal(ring, &x)? == *ideal {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn is_imaginary(ring: &Ring) -> bool {
    matches!(ring, Ring::QuadOrder { d } if d.sign() == num_bigint::Sign::Minus)
}

fn scale_elem(ring: &Ring, x: &Elem, k: i64) -> Elem {
    ring.mul(x, &ring.from_i64(k))
}
