//! Ring kernel: the menu of coefficient rings, exact element arithmetic,
//! maximal-ideal enumeration, residue maps, and Chinese-remainder lifting.
//!
//! The menu is deliberately small and fully exact:
//!
//! * [`Ring::ZMod`] — integers modulo `n ≥ 2`;
//! * [`Ring::PrimeField`] — the field with `p` elements;
//! * [`Ring::ExtField`] — `F_p[x]/(f)` for a monic irreducible `f`;
//! * [`Ring::Product`] — a finite product of menu rings;
//! * [`Ring::LocalInt`] — integers localized at a prime `p` (reduced
//!   fractions `a/s` with `p ∤ s`);
//! * [`Ring::QuadOrder`] — the maximal order of `Q(√d)`, `d` squarefree.
//!
//! All rings except `QuadOrder` are semilocal with an explicitly computable
//! set of maximal ideals; [`Ring::max_ideals`] enumerates them with stable
//! indices, [`Ring::residue`] maps elements to residue fields, and
//! [`Ring::crt_lift`] reconstructs an element from one residue target per
//! maximal ideal. Factorizations run by trial division below a configurable
//! bound (see [`trial_bound`]), so every primality claim in this module is
//! certified by an exhaustive divisor search, never by a probabilistic test.

pub mod poly;
pub mod quad;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound: divisors up to 10^6 are tried, so integers
/// below 10^12 factor completely.
pub const DEFAULT_TRIAL_BOUND: u64 = 1_000_000;

/// The trial-division bound in effect: `FORSTER_FORGE_TRIAL_BOUND` from the
/// environment if set to a positive integer, otherwise
/// [`DEFAULT_TRIAL_BOUND`]. Read once per process.
pub fn trial_bound() -> u64 {
    use std::sync::OnceLock;
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var("FORSTER_FORGE_TRIAL_BOUND")
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .filter(|&b| b > 0)
            .unwrap_or(DEFAULT_TRIAL_BOUND)
    })
}

/// Convenience constructor for small integer constants.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Factor `n > 0` by trial division with divisors `≤ bound`.
///
/// Returns prime/exponent pairs in increasing prime order. Fails with
/// [`Error::ModulusTooLarge`] when a cofactor survives that the bound cannot
/// certify prime (i.e. the cofactor exceeds `bound²` and has no divisor
/// `≤ bound`).
pub fn trial_factor(n: &BigInt, bound: u64) -> Result<Vec<(BigInt, u32)>> {
    if n.sign() == num_bigint::Sign::Minus || n.is_zero() {
        return Err(Error::BadInput(format!(
            "trial_factor expects a positive integer, got {n}"
        )));
    }
    let mut m = n.clone();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut push = |p: BigInt, e: u32| out.push((p, e));
    let mut d: u64 = 2;
    while m > BigInt::one() {
        let d_big = BigInt::from(d);
        if &d_big * &d_big > m {
            // No divisor up to sqrt(m): the cofactor is prime.
            push(m.clone(), 1);
            break;
        }
        if d > bound {
            return Err(Error::ModulusTooLarge {
                value: m.to_string(),
                bound,
            });
        }
        if (&m % d).is_zero() {
            let mut e = 0u32;
            while (&m % d).is_zero() {
                m /= d;
                e += 1;
            }
            push(d_big, e);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    Ok(out)
}

/// Certified primality by exhaustive trial division (`trial_bound()` cap).
pub fn is_prime(p: &BigInt) -> Result<bool> {
    if p < &int(2) {
        return Ok(false);
    }
    let f = trial_factor(p, trial_bound())?;
    Ok(f.len() == 1 && f[0].1 == 1)
}

/// The modulus when the ring is `F_p` or `Z/p` for a prime `p < 2³¹` — the
/// rings whose arithmetic the machine-word kernels can mirror (a product of
/// two reduced residues then fits in a `u64`).
pub(crate) fn small_prime_modulus(ring: &Ring) -> Option<u64> {
    let p = match ring {
        Ring::PrimeField { p } => p,
        Ring::ZMod { n } => match is_prime(n) {
            Ok(true) => n,
            _ => return None,
        },
        _ => return None,
    };
    p.to_u64().filter(|&p| p < (1 << 31))
}

/// Inverse of `a` modulo `n` (`n ≥ 2`), if `gcd(a, n) = 1`.
pub fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(n);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(n))
    } else {
        None
    }
}

/// A ring from the menu. Construct through the checked constructors
/// ([`Ring::zmod`], [`Ring::prime_field`], …) so the invariants hold;
/// the enum fields are public for pattern matching only.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ring {
    /// Integers modulo `n`, `n ≥ 2`.
    ZMod { n: BigInt },
    /// Field with `p` elements, `p` prime.
    PrimeField { p: BigInt },
    /// `F_p[x]/(f)`, `f` monic irreducible of degree ≥ 2, coefficients
    /// low-to-high and reduced mod `p` (leading coefficient 1 included).
    ExtField { p: BigInt, f: Vec<BigInt> },
    /// Product of one or more menu rings, in order.
    Product { factors: Vec<Ring> },
    /// Integers localized at the prime `p`: reduced fractions `a/s`, `p ∤ s`.
    LocalInt { p: BigInt },
    /// Maximal order `Z[ω]` of `Q(√d)`, `d ≠ 0, 1` squarefree;
    /// `ω = √d` for `d ≡ 2, 3 (mod 4)` and `ω = (1+√d)/2` for `d ≡ 1 (mod 4)`.
    QuadOrder { d: BigInt },
}

/// An element of a [`Ring`]. The variant must match the ring; every element
/// is kept in canonical form so `==` decides ring equality:
///
/// * `Int` — canonical representative in `[0, n)` (or `[0, p)`);
/// * `Pol` — exactly `deg f` coefficients, each in `[0, p)`, low-to-high;
/// * `Tup` — one canonical entry per product factor;
/// * `Frac` — `gcd(num, den) = 1`, `den ≥ 1`, `p ∤ den`;
/// * `Quad` — coordinates `(a, b)` for `a + b·ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Pol(Vec<BigInt>),
    Tup(Vec<Elem>),
    Frac { num: BigInt, den: BigInt },
    Quad { a: BigInt, b: BigInt },
}

impl fmt::Display for Elem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Int(v) => write!(out, "{v}"),
            Elem::Pol(cs) => {
                let parts: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                write!(out, "[{}]", parts.join(","))
            }
            Elem::Tup(es) => {
                let parts: Vec<String> = es.iter().map(|e| e.to_string()).collect();
                write!(out, "({})", parts.join(","))
            }
            Elem::Frac { num, den } => {
                if den.is_one() {
                    write!(out, "{num}")
                } else {
                    write!(out, "{num}/{den}")
                }
            }
            Elem::Quad { a, b } => write!(out, "{a}+{b}w"),
        }
    }
}

/// Handle to one maximal ideal of a semilocal menu ring.
///
/// Handles are produced by [`Ring::max_ideals`] with indices `0..k` that are
/// stable for a fixed ring descriptor: `ZMod` ideals are ordered by
/// increasing residue characteristic, product ideals by factor order. The
/// handle records where the ideal lives (`path` of product components), its
/// residue characteristic, and the residue field descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxIdealHandle {
    /// Position in the `max_ideals` enumeration of the ambient ring.
    pub index: usize,
    /// Product-component path from the ambient ring down to the factor that
    /// owns the ideal (empty for non-product rings).
    pub path: Vec<usize>,
    /// Residue characteristic `p`.
    pub residue_char: BigInt,
    /// Residue field: `PrimeField(p)` or `ExtField(p, f)`.
    pub residue_field: Ring,
}

impl MaxIdealHandle {
    /// Degree of the residue field over its prime field.
    pub fn residue_degree(&self) -> usize {
        match &self.residue_field {
            Ring::ExtField { f, .. } => f.len() - 1,
            _ => 1,
        }
    }

    /// Printable label, e.g. `(3)` or `component 1, (3)`.
    pub fn label(&self) -> String {
        let mut s = String::new();
        for c in &self.path {
            s.push_str(&format!("component {c}, "));
        }
        s.push_str(&format!("({})", self.residue_char));
        s
    }
}

impl fmt::Display for MaxIdealHandle {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{}", self.label())
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::ZMod { n } => write!(out, "Z/{n}"),
            Ring::PrimeField { p } => write!(out, "GF({p})"),
            Ring::ExtField { p, f } => write!(out, "GF({}^{})", p, f.len() - 1),
            Ring::Product { factors } => {
                let parts: Vec<String> = factors.iter().map(|r| r.to_string()).collect();
                write!(out, "{}", parts.join(" x "))
            }
            Ring::LocalInt { p } => write!(out, "Z_({p})"),
            Ring::QuadOrder { d } => write!(out, "Z[w], w = quad({d})"),
        }
    }
}

impl Ring {
    // ----- checked constructors ---------------------------------------

    /// Integers modulo `n ≥ 2`.
    pub fn zmod(n: BigInt) -> Result<Ring> {
        if n < int(2) {
            return Err(Error::InvalidRing(format!("modulus must be ≥ 2, got {n}")));
        }
        Ok(Ring::ZMod { n })
    }

    /// Prime field; primality certified by trial division.
    pub fn prime_field(p: BigInt) -> Result<Ring> {
        if !is_prime(&p)? {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField { p })
    }

    /// `F_p[x]/(f)` for monic irreducible `f` of degree ≥ 2. Coefficients are
    /// given low-to-high and are reduced mod `p` here; irreducibility is
    /// certified by the distinct-degree criterion in [`poly`].
    pub fn ext_field(p: BigInt, f_raw: Vec<BigInt>) -> Result<Ring> {
        if !is_prime(&p)? {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        if f_raw.len() < 3 {
            return Err(Error::InvalidRing(
                "extension degree must be ≥ 2 (use PrimeField for degree 1)".into(),
            ));
        }
        let f: Vec<BigInt> = f_raw.iter().map(|c| c.mod_floor(&p)).collect();
        if f.last().map(|c| !c.is_one()).unwrap_or(true) {
            return Err(Error::InvalidRing("defining polynomial must be monic".into()));
        }
        let base = Ring::PrimeField { p: p.clone() };
        let fe: Vec<Elem> = f.iter().map(|c| Elem::Int(c.clone())).collect();
        if !poly::is_irreducible(&base, &fe)? {
            return Err(Error::InvalidRing(
                "defining polynomial is reducible".into(),
            ));
        }
        Ok(Ring::ExtField { p, f })
    }

    /// Product of one or more menu rings.
    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        if factors.is_empty() {
            return Err(Error::InvalidRing("product needs at least one factor".into()));
        }
        Ok(Ring::Product { factors })
    }

    /// Integers localized at the prime `p`.
    pub fn local_int(p: BigInt) -> Result<Ring> {
        if !is_prime(&p)? {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::LocalInt { p })
    }

    /// Maximal quadratic order for squarefree `d ≠ 0, 1`.
    pub fn quad_order(d: BigInt) -> Result<Ring> {
        if d.is_zero() || d.is_one() {
            return Err(Error::InvalidRing("d must differ from 0 and 1".into()));
        }
        for (_, e) in trial_factor(&d.abs(), trial_bound())? {
            if e > 1 {
                return Err(Error::InvalidRing(format!("{d} is not squarefree")));
            }
        }
        Ok(Ring::QuadOrder { d })
    }

    // ----- basic elements ---------------------------------------------

    pub fn zero(&self) -> Elem {
        match self {
            Ring::ZMod { .. } | Ring::PrimeField { .. } => Elem::Int(BigInt::zero()),
            Ring::ExtField { f, .. } => Elem::Pol(vec![BigInt::zero(); f.len() - 1]),
            Ring::Product { factors } => Elem::Tup(factors.iter().map(|r| r.zero()).collect()),
            Ring::LocalInt { .. } => Elem::Frac {
                num: BigInt::zero(),
                den: BigInt::one(),
            },
            Ring::QuadOrder { .. } => Elem::Quad {
                a: BigInt::zero(),
                b: BigInt::zero(),
            },
        }
    }

    pub fn one(&self) -> Elem {
        self.from_bigint(&BigInt::one())
    }

    /// Canonical image of an integer.
    pub fn from_bigint(&self, v: &BigInt) -> Elem {
        match self {
            Ring::ZMod { n } => Elem::Int(v.mod_floor(n)),
            Ring::PrimeField { p } => Elem::Int(v.mod_floor(p)),
            Ring::ExtField { p, f } => {
                let mut cs = vec![BigInt::zero(); f.len() - 1];
                cs[0] = v.mod_floor(p);
                Elem::Pol(cs)
            }
            Ring::Product { factors } => {
                Elem::Tup(factors.iter().map(|r| r.from_bigint(v)).collect())
            }
            Ring::LocalInt { .. } => Elem::Frac {
                num: v.clone(),
                den: BigInt::one(),
            },
            Ring::QuadOrder { .. } => Elem::Quad {
                a: v.clone(),
                b: BigInt::zero(),
            },
        }
    }

    /// Canonical image of a small integer.
    pub fn from_i64(&self, v: i64) -> Elem {
        self.from_bigint(&int(v))
    }

    /// Shape-check an element against this ring (used at input boundaries;
    /// internal arithmetic assumes canonical elements).
    pub fn validate(&self, x: &Elem) -> Result<()> {
        let bad = |msg: &str| Err(Error::MismatchedRing(format!("{msg} (ring {self})")));
        match (self, x) {
            (Ring::ZMod { n }, Elem::Int(v)) => {
                if v.sign() == num_bigint::Sign::Minus || v >= n {
                    bad("integer out of canonical range")
                } else {
                    Ok(())
                }
            }
            (Ring::PrimeField { p }, Elem::Int(v)) => {
                if v.sign() == num_bigint::Sign::Minus || v >= p {
                    bad("integer out of canonical range")
                } else {
                    Ok(())
                }
            }
            (Ring::ExtField { p, f }, Elem::Pol(cs)) => {
                if cs.len() != f.len() - 1 {
                    return bad("coefficient vector has wrong length");
                }
                for c in cs {
                    if c.sign() == num_bigint::Sign::Minus || c >= p {
                        return bad("coefficient out of canonical range");
                    }
                }
                Ok(())
            }
            (Ring::Product { factors }, Elem::Tup(es)) => {
                if es.len() != factors.len() {
                    return bad("tuple length differs from factor count");
                }
                for (r, e) in factors.iter().zip(es) {
                    r.validate(e)?;
                }
                Ok(())
            }
            (Ring::LocalInt { p }, Elem::Frac { num, den }) => {
                if den.sign() != num_bigint::Sign::Plus {
                    return bad("denominator must be positive");
                }
                if !num.gcd(den).is_one() {
                    return bad("fraction not reduced");
                }
                if (den % p).is_zero() {
                    return bad("denominator divisible by the local prime");
                }
                Ok(())
            }
            (Ring::QuadOrder { .. }, Elem::Quad { .. }) => Ok(()),
            _ => bad("element variant does not match ring"),
        }
    }

    // ----- arithmetic ---------------------------------------------------

    pub fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::ZMod { n }, Elem::Int(a), Elem::Int(b)) => Elem::Int((a + b).mod_floor(n)),
            (Ring::PrimeField { p }, Elem::Int(a), Elem::Int(b)) => {
                Elem::Int((a + b).mod_floor(p))
            }
            (Ring::ExtField { p, .. }, Elem::Pol(a), Elem::Pol(b)) => Elem::Pol(
                a.iter()
                    .zip(b)
                    .map(|(u, v)| (u + v).mod_floor(p))
                    .collect(),
            ),
            (Ring::Product { factors }, Elem::Tup(a), Elem::Tup(b)) => Elem::Tup(
                factors
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(r, (u, v))| r.add(u, v))
                    .collect(),
            ),
            (Ring::LocalInt { .. }, Elem::Frac { num: a, den: s }, Elem::Frac { num: b, den: t }) => {
                frac_canon(a * t + b * s, s * t)
            }
            (Ring::QuadOrder { .. }, Elem::Quad { a, b }, Elem::Quad { a: c, b: d }) => {
                Elem::Quad { a: a + c, b: b + d }
            }
            _ => panic!("add: element shape does not match ring {self}"),
        }
    }

    pub fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::ZMod { n }, Elem::Int(a)) => Elem::Int((-a).mod_floor(n)),
            (Ring::PrimeField { p }, Elem::Int(a)) => Elem::Int((-a).mod_floor(p)),
            (Ring::ExtField { p, .. }, Elem::Pol(a)) => {
                Elem::Pol(a.iter().map(|u| (-u).mod_floor(p)).collect())
            }
            (Ring::Product { factors }, Elem::Tup(a)) => Elem::Tup(
                factors
                    .iter()
                    .zip(a)
                    .map(|(r, u)| r.neg(u))
                    .collect(),
            ),
            (Ring::LocalInt { .. }, Elem::Frac { num, den }) => Elem::Frac {
                num: -num,
                den: den.clone(),
            },
            (Ring::QuadOrder { .. }, Elem::Quad { a, b }) => Elem::Quad { a: -a, b: -b },
            _ => panic!("neg: element shape does not match ring {self}"),
        }
    }

    pub fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::ZMod { n }, Elem::Int(a), Elem::Int(b)) => Elem::Int((a * b).mod_floor(n)),
            (Ring::PrimeField { p }, Elem::Int(a), Elem::Int(b)) => {
                Elem::Int((a * b).mod_floor(p))
            }
            (Ring::ExtField { p, f }, Elem::Pol(a), Elem::Pol(b)) => {
                Elem::Pol(ext_mul(p, f, a, b))
            }
            (Ring::Product { factors }, Elem::Tup(a), Elem::Tup(b)) => Elem::Tup(
                factors
                    .iter()
                    .zip(a.iter().zip(b))
                    .map(|(r, (u, v))| r.mul(u, v))
                    .collect(),
            ),
            (Ring::LocalInt { .. }, Elem::Frac { num: a, den: s }, Elem::Frac { num: b, den: t }) => {
                frac_canon(a * b, s * t)
            }
            (Ring::QuadOrder { d }, Elem::Quad { a, b }, Elem::Quad { a: c, b: e }) => {
                // ω² = d          for d ≡ 2, 3 (mod 4)
                // ω² = ω + (d-1)/4 for d ≡ 1 (mod 4)
                let cross = a * e + b * c;
                if d.mod_floor(&int(4)).is_one() {
                    let q = (d - 1) / 4;
                    Elem::Quad {
                        a: a * c + b * e * q,
                        b: cross + b * e,
                    }
                } else {
                    Elem::Quad {
                        a: a * c + b * e * d,
                        b: cross,
                    }
                }
            }
            _ => panic!("mul: element shape does not match ring {self}"),
        }
    }

    pub fn is_zero(&self, x: &Elem) -> bool {
        *x == self.zero()
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        *x == self.one()
    }

    /// `x^k` by binary exponentiation (`k ≥ 0`).
    pub fn pow(&self, x: &Elem, k: u64) -> Elem {
        let mut base = x.clone();
        let mut acc = self.one();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Unit test: exact, by the ring-specific criterion (coprimality,
    /// nonvanishing, componentwise units, unit norm).
    pub fn is_unit(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::ZMod { n }, Elem::Int(a)) => a.gcd(n).is_one(),
            (Ring::PrimeField { .. }, Elem::Int(a)) => !a.is_zero(),
            (Ring::ExtField { .. }, Elem::Pol(a)) => a.iter().any(|c| !c.is_zero()),
            (Ring::Product { factors }, Elem::Tup(es)) => factors
                .iter()
                .zip(es)
                .all(|(r, e)| r.is_unit(e)),
            (Ring::LocalInt { p }, Elem::Frac { num, .. }) => !(num % p).is_zero(),
            (Ring::QuadOrder { .. }, Elem::Quad { .. }) => {
                let n = self.quad_norm(x);
                n.abs().is_one()
            }
            _ => panic!("is_unit: element shape does not match ring {self}"),
        }
    }

    /// Multiplicative inverse, or `Err(NotAUnit)`.
    pub fn inv(&self, x: &Elem) -> Result<Elem> {
        let not_unit = || Error::NotAUnit(format!("{x} in {self}"));
        match (self, x) {
            (Ring::ZMod { n }, Elem::Int(a)) => {
                mod_inverse(a, n).map(Elem::Int).ok_or_else(not_unit)
            }
            (Ring::PrimeField { p }, Elem::Int(a)) => {
                mod_inverse(a, p).map(Elem::Int).ok_or_else(not_unit)
            }
            (Ring::ExtField { .. }, Elem::Pol(_)) => {
                poly::invert_mod(self, x).ok_or_else(not_unit)
            }
            (Ring::Product { factors }, Elem::Tup(es)) => {
                let mut out = Vec::with_capacity(es.len());
                for (r, e) in factors.iter().zip(es) {
                    out.push(r.inv(e).map_err(|_| not_unit())?);
                }
                Ok(Elem::Tup(out))
            }
            (Ring::LocalInt { p }, Elem::Frac { num, den }) => {
                if (num % p).is_zero() || num.is_zero() {
                    return Err(not_unit());
                }
                Ok(frac_canon(den.clone(), num.clone()))
            }
            (Ring::QuadOrder { .. }, Elem::Quad { .. }) => {
                let n = self.quad_norm(x);
                if !n.abs().is_one() {
                    return Err(not_unit());
                }
                let c = self.quad_conj(x);
                // x · conj(x) = N(x) = ±1, so the inverse is ±conj(x).
                if n.is_one() {
                    Ok(c)
                } else {
                    Ok(self.neg(&c))
                }
            }
            _ => panic!("inv: element shape does not match ring {self}"),
        }
    }

    // ----- quadratic-order specifics ------------------------------------

    /// Field norm `N(a + bω)` as an integer (QuadOrder only).
    pub fn quad_norm(&self, x: &Elem) -> BigInt {
        match (self, x) {
            (Ring::QuadOrder { d }, Elem::Quad { a, b }) => {
                if d.mod_floor(&int(4)).is_one() {
                    // N(a + bω) = a² + ab + b²(1-d)/4 for ω = (1+√d)/2.
                    a * a + a * b + b * b * ((BigInt::one() - d) / 4)
                } else {
                    a * a - d * b * b
                }
            }
            _ => panic!("quad_norm: not a quadratic order element"),
        }
    }

    /// Galois conjugate (QuadOrder only).
    pub fn quad_conj(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::QuadOrder { d }, Elem::Quad { a, b }) => {
                if d.mod_floor(&int(4)).is_one() {
                    // conj(ω) = 1 - ω.
                    Elem::Quad { a: a + b, b: -b }
                } else {
                    Elem::Quad {
                        a: a.clone(),
                        b: -b,
                    }
                }
            }
            _ => panic!("quad_conj: not a quadratic order element"),
        }
    }

    // ----- structure ----------------------------------------------------

    /// Ring characteristic; 0 for `LocalInt` and `QuadOrder`.
    pub fn characteristic(&self) -> BigInt {
        match self {
            Ring::ZMod { n } => n.clone(),
            Ring::PrimeField { p } | Ring::ExtField { p, .. } => p.clone(),
            Ring::Product { factors } => {
                let mut c = BigInt::one();
                for r in factors {
                    let rc = r.characteristic();
                    if rc.is_zero() {
                        return BigInt::zero();
                    }
                    c = c.lcm(&rc);
                }
                c
            }
            Ring::LocalInt { .. } | Ring::QuadOrder { .. } => BigInt::zero(),
        }
    }

    /// Number of elements for finite rings, `None` otherwise.
    pub fn size(&self) -> Option<BigInt> {
        match self {
            Ring::ZMod { n } => Some(n.clone()),
            Ring::PrimeField { p } => Some(p.clone()),
            Ring::ExtField { p, f } => Some(p.pow((f.len() - 1) as u32)),
            Ring::Product { factors } => {
                let mut s = BigInt::one();
                for r in factors {
                    s *= r.size()?;
                }
                Some(s)
            }
            Ring::LocalInt { .. } | Ring::QuadOrder { .. } => None,
        }
    }

    /// Whether the ring is a field.
    pub fn is_field(&self) -> bool {
        matches!(self, Ring::PrimeField { .. } | Ring::ExtField { .. })
    }

    /// All elements of a finite ring, in a fixed order: integers ascending;
    /// extension fields by coefficient vectors counted with the constant
    /// coefficient varying fastest; products in mixed radix with the last
    /// factor varying fastest. Errors on infinite rings and on rings with
    /// more than 2^20 elements.
    pub fn elements(&self) -> Result<Vec<Elem>> {
        let size = self
            .size()
            .ok_or_else(|| Error::UnsupportedRing(format!("{self} is infinite")))?;
        let cap = int(1 << 20);
        if size > cap {
            return Err(Error::UnsupportedRing(format!(
                "{self} has {size} elements, enumeration cap is {cap}"
            )));
        }
        match self {
            Ring::ZMod { n } => {
                let mut out = Vec::new();
                let mut v = BigInt::zero();
                while &v < n {
                    out.push(Elem::Int(v.clone()));
                    v += 1;
                }
                Ok(out)
            }
            Ring::PrimeField { p } => {
                let mut out = Vec::new();
                let mut v = BigInt::zero();
                while &v < p {
                    out.push(Elem::Int(v.clone()));
                    v += 1;
                }
                Ok(out)
            }
            Ring::ExtField { p, f } => {
                let deg = f.len() - 1;
                let pu = p.to_u64().expect("prime fits u64 under the cap");
                let total = size.to_u64().expect("size fits u64 under the cap");
                let mut out = Vec::with_capacity(total as usize);
                for idx in 0..total {
                    let mut cs = Vec::with_capacity(deg);
                    let mut rest = idx;
                    for _ in 0..deg {
                        cs.push(int((rest % pu) as i64));
                        rest /= pu;
                    }
                    out.push(Elem::Pol(cs));
                }
                Ok(out)
            }
            Ring::Product { factors } => {
                let parts: Vec<Vec<Elem>> = factors
                    .iter()
                    .map(|r| r.elements())
                    .collect::<Result<_>>()?;
                let mut out: Vec<Vec<Elem>> = vec![Vec::new()];
                for comp in &parts {
                    let mut next = Vec::with_capacity(out.len() * comp.len());
                    for prefix in &out {
                        for e in comp {
                            let mut row = prefix.clone();
                            row.push(e.clone());
                            next.push(row);
                        }
                    }
                    out = next;
                }
                Ok(out.into_iter().map(Elem::Tup).collect())
            }
            _ => unreachable!("infinite rings handled above"),
        }
    }

    /// All units of a finite ring, in enumeration order.
    pub fn units(&self) -> Result<Vec<Elem>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|e| self.is_unit(e))
            .collect())
    }

    // ----- maximal ideals, residues, lifting ------------------------------

    /// Whether `max_ideals` supports this ring.
    pub fn is_semilocal_capable(&self) -> bool {
        match self {
            Ring::QuadOrder { .. } => false,
            Ring::Product { factors } => factors.iter().all(|r| r.is_semilocal_capable()),
            _ => true,
        }
    }

    /// Enumerate the maximal ideals with the configured trial bound.
    pub fn max_ideals(&self) -> Result<Vec<MaxIdealHandle>> {
        self.max_ideals_with_bound(trial_bound())
    }

    /// Enumerate the maximal ideals; factoring uses the given trial bound.
    ///
    /// Indices are assigned in enumeration order and are stable for a fixed
    /// descriptor. Fails with `UnsupportedRing` for quadratic orders (they
    /// have infinitely many maximal ideals) and `ModulusTooLarge` when the
    /// modulus cannot be factored under the bound.
    pub fn max_ideals_with_bound(&self, bound: u64) -> Result<Vec<MaxIdealHandle>> {
        let mut out = Vec::new();
        self.collect_max_ideals(bound, &mut Vec::new(), &mut out)?;
        Ok(out)
    }

    fn collect_max_ideals(
        &self,
        bound: u64,
        path: &mut Vec<usize>,
        out: &mut Vec<MaxIdealHandle>,
    ) -> Result<()> {
        match self {
            Ring::ZMod { n } => {
                for (p, _) in trial_factor(n, bound)? {
                    out.push(MaxIdealHandle {
                        index: out.len(),
                        path: path.clone(),
                        residue_char: p.clone(),
                        residue_field: Ring::PrimeField { p },
                    });
                }
                Ok(())
            }
            Ring::PrimeField { p } => {
                out.push(MaxIdealHandle {
                    index: out.len(),
                    path: path.clone(),
                    residue_char: p.clone(),
                    residue_field: self.clone(),
                });
                Ok(())
            }
            Ring::ExtField { p, .. } => {
                out.push(MaxIdealHandle {
                    index: out.len(),
                    path: path.clone(),
                    residue_char: p.clone(),
                    residue_field: self.clone(),
                });
                Ok(())
            }
            Ring::LocalInt { p } => {
                out.push(MaxIdealHandle {
                    index: out.len(),
                    path: path.clone(),
                    residue_char: p.clone(),
                    residue_field: Ring::PrimeField { p: p.clone() },
                });
                Ok(())
            }
            Ring::Product { factors } => {
                for (i, r) in factors.iter().enumerate() {
                    path.push(i);
                    r.collect_max_ideals(bound, path, out)?;
                    path.pop();
                }
                Ok(())
            }
            Ring::QuadOrder { .. } => Err(Error::UnsupportedRing(format!(
                "{self} has infinitely many maximal ideals"
            ))),
        }
    }

    /// Residue of `x` in the residue field of `m`.
    pub fn residue(&self, x: &Elem, m: &MaxIdealHandle) -> Result<Elem> {
        self.validate(x)?;
        self.residue_at_path(x, &m.path, &m.residue_char, &m.residue_field)
    }

    fn residue_at_path(
        &self,
        x: &Elem,
        path: &[usize],
        p: &BigInt,
        rf: &Ring,
    ) -> Result<Elem> {
        match (self, x) {
            (Ring::Product { factors }, Elem::Tup(es)) => {
                let (&head, rest) = path.split_first().ok_or_else(|| {
                    Error::MismatchedRing("ideal path too short for product ring".into())
                })?;
                let r = factors.get(head).ok_or_else(|| {
                    Error::MismatchedRing("ideal path component out of range".into())
                })?;
                r.residue_at_path(&es[head], rest, p, rf)
            }
            _ if !path.is_empty() => Err(Error::MismatchedRing(
                "ideal path given for a non-product ring".into(),
            )),
            (Ring::ZMod { n }, Elem::Int(v)) => {
                if !(n % p).is_zero() {
                    return Err(Error::MismatchedRing(format!(
                        "({p}) is not an ideal of {self}"
                    )));
                }
                Ok(Elem::Int(v.mod_floor(p)))
            }
            (Ring::PrimeField { p: q }, Elem::Int(_)) if q == p => Ok(x.clone()),
            (Ring::ExtField { p: q, .. }, Elem::Pol(_)) if q == p => Ok(x.clone()),
            (Ring::LocalInt { p: q }, Elem::Frac { num, den }) if q == p => {
                let dinv = mod_inverse(&den.mod_floor(p), p).ok_or_else(|| {
                    Error::Internal("denominator of a local integer vanished mod p".into())
                })?;
                Ok(Elem::Int((num.mod_floor(p) * dinv).mod_floor(p)))
            }
            _ => Err(Error::MismatchedRing(format!(
                "handle with residue characteristic {p} does not belong to {self}"
            ))),
        }
    }

    /// Reconstruct a ring element from one residue target per maximal ideal.
    ///
    /// `targets` must contain every maximal ideal of the ring exactly once
    /// (checked against `max_ideals`, error `IncompleteTargets` otherwise);
    /// each value must lie in that ideal's residue field. The result `x`
    /// satisfies `residue(x, m) = t_m` for every target and is canonical:
    /// for `ZMod(n)` the representative lies in `[0, rad(n))`, for local
    /// integers it is the smallest non-negative integer lift.
    pub fn crt_lift(&self, targets: &[(MaxIdealHandle, Elem)]) -> Result<Elem> {
        let ideals = self.max_ideals()?;
        if targets.len() != ideals.len() {
            return Err(Error::IncompleteTargets(format!(
                "need {} targets, got {}",
                ideals.len(),
                targets.len()
            )));
        }
        // Reorder targets by handle index, requiring each exactly once.
        let mut by_index: Vec<Option<&Elem>> = vec![None; ideals.len()];
        for (m, v) in targets {
            let slot = by_index
                .get_mut(m.index)
                .ok_or_else(|| Error::IncompleteTargets(format!("index {} out of range", m.index)))?;
            if slot.is_some() {
                return Err(Error::IncompleteTargets(format!(
                    "maximal ideal {} given twice",
                    m.label()
                )));
            }
            if ideals[m.index] != *m {
                return Err(Error::MismatchedRing(format!(
                    "handle {} does not belong to {self}",
                    m.label()
                )));
            }
            ideals[m.index].residue_field.validate(v)?;
            *slot = Some(v);
        }
        let ordered: Vec<&Elem> = by_index
            .into_iter()
            .map(|s| s.ok_or_else(|| Error::IncompleteTargets("missing maximal ideal".into())))
            .collect::<Result<_>>()?;
        self.crt_lift_ordered(&ideals, &ordered)
    }

    fn crt_lift_ordered(&self, ideals: &[MaxIdealHandle], vals: &[&Elem]) -> Result<Elem> {
        match self {
            Ring::ZMod { .. } => {
                // x ≡ v_i (mod p_i); canonical representative mod ∏ p_i.
                let mut x = BigInt::zero();
                let mut modulus = BigInt::one();
                for (m, v) in ideals.iter().zip(vals) {
                    let p = &m.residue_char;
                    let t = match v {
                        Elem::Int(t) => t.clone(),
                        _ => unreachable!("validated residue"),
                    };
                    // Merge x (mod modulus) with t (mod p), p coprime to modulus.
                    let minv = mod_inverse(&modulus.mod_floor(p), p)
                        .ok_or_else(|| Error::Internal("CRT moduli not coprime".into()))?;
                    let k = ((t - x.mod_floor(p)) * minv).mod_floor(p);
                    x += k * &modulus;
                    modulus *= p;
                }
                Ok(Elem::Int(x))
            }
            Ring::PrimeField { .. } | Ring::ExtField { .. } => Ok(vals[0].clone()),
            Ring::LocalInt { .. } => {
                let t = match vals[0] {
                    Elem::Int(t) => t.clone(),
                    _ => unreachable!("validated residue"),
                };
                Ok(Elem::Frac {
                    num: t,
                    den: BigInt::one(),
                })
            }
            Ring::Product { factors } => {
                let mut out = Vec::with_capacity(factors.len());
                let mut pos = 0usize;
                for (i, r) in factors.iter().enumerate() {
                    let sub = r.max_ideals()?;
                    let mut sub_ideals = Vec::with_capacity(sub.len());
                    let mut sub_vals = Vec::with_capacity(sub.len());
                    for local in sub {
                        let m = &ideals[pos];
                        debug_assert_eq!(m.path.first(), Some(&i));
                        let mut inner = local;
                        inner.index = sub_ideals.len();
                        sub_ideals.push(inner);
                        sub_vals.push(vals[pos]);
                        pos += 1;
                    }
                    out.push(r.crt_lift_ordered(&sub_ideals, &sub_vals)?);
                }
                Ok(Elem::Tup(out))
            }
            Ring::QuadOrder { .. } => Err(Error::UnsupportedRing(format!(
                "{self} does not support residue lifting"
            ))),
        }
    }
}

/// Canonical reduced fraction for `LocalInt` arithmetic.
fn frac_canon(num: BigInt, den: BigInt) -> Elem {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return Elem::Frac {
            num: BigInt::zero(),
            den: BigInt::one(),
        };
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = (num / &g, den / g);
    if d.sign() == num_bigint::Sign::Minus {
        n = -n;
        d = -d;
    }
    Elem::Frac { num: n, den: d }
}

/// Multiplication in `F_p[x]/(f)`: schoolbook product then reduction by the
/// monic `f`, all coefficients canonical mod `p`.
fn ext_mul(p: &BigInt, f: &[BigInt], a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let deg = f.len() - 1;
    let mut prod = vec![BigInt::zero(); 2 * deg - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            prod[i + j] += ai * bj;
        }
    }
    // Reduce by f: x^deg = -(f_0 + f_1 x + … + f_{deg-1} x^{deg-1}).
    for k in (deg..prod.len()).rev() {
        let c = std::mem::take(&mut prod[k]);
        if c.is_zero() {
            continue;
        }
        for j in 0..deg {
            let adj = &c * &f[j];
            prod[k - deg + j] -= adj;
        }
    }
    prod.truncate(deg);
    for c in &mut prod {
        *c = c.mod_floor(p);
    }
    prod
}
