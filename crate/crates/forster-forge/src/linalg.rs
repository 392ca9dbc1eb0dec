//! Exact dense linear algebra over menu rings.
//!
//! Everything is dense, exact, and desk-scale: matrix dimensions are capped
//! at [`MAX_DIM`] by a construction guard. The toolkit provides
//!
//! * reduced row echelon form and kernel/solve over fields;
//! * Howell normal form over `Z/N` — the canonical strong echelon form whose
//!   row span determines it uniquely, which decides membership in row spans
//!   and expresses members as explicit combinations;
//! * determinants: Gaussian for fields, fraction-free Bareiss over integral
//!   inputs (integer lifts for `Z/N`, exact domain division for local
//!   integers and quadratic orders), cofactor expansion as a small-dimension
//!   cross-check, componentwise over products;
//! * `inverse_or_certificate`: either an exact two-sided inverse (verified by
//!   multiplication before return) or a witness — a maximal ideal where the
//!   determinant vanishes for semilocal rings, the non-unit determinant for
//!   quadratic orders;
//! * characteristic polynomials by Faddeev–LeVerrier where `2..=m` are units,
//!   by memoized symbolic cofactor expansion otherwise.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{mod_inverse, Elem, MaxIdealHandle, Ring};

/// Hard cap on matrix rows/columns. Large enough for every supported
/// construction (the Galois comparison matrix of a degree-23 extension is
/// 529×529; sandwich matrices of degree-3 symbol algebras are 81×81), small
/// enough to keep dense exact arithmetic honest.
pub const MAX_DIM: usize = 1024;

/// Dense row-major matrix over a fixed ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    pub ring: Ring,
    pub rows: usize,
    pub cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(ring: Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if rows > MAX_DIM || cols > MAX_DIM {
            return Err(Error::DimensionGuard(rows.max(cols), MAX_DIM));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        for e in &data {
            ring.validate(e)?;
        }
        Ok(Matrix {
            ring,
            rows,
            cols,
            data,
        })
    }

    /// Construct without per-entry validation (internal use on canonical data).
    pub(crate) fn from_raw(ring: Ring, rows: usize, cols: usize, data: Vec<Elem>) -> Matrix {
        debug_assert_eq!(data.len(), rows * cols);
        Matrix {
            ring,
            rows,
            cols,
            data,
        }
    }

    pub fn zero(ring: &Ring, rows: usize, cols: usize) -> Matrix {
        Matrix::from_raw(ring.clone(), rows, cols, vec![ring.zero(); rows * cols])
    }

    pub fn identity(ring: &Ring, n: usize) -> Matrix {
        let mut m = Matrix::zero(ring, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = ring.one();
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix::from_raw(ring.clone(), rows, cols, data)
    }

    /// Build from integer entries (row-major), mapped through the ring.
    pub fn from_i64(ring: &Ring, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols);
        Matrix::from_fn(ring, rows, cols, |i, j| ring.from_i64(entries[i * cols + j]))
    }

    pub fn at(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Elem {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vec<Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.ring.add(self.at(i, j), other.at(i, j))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.ring.sub(self.at(i, j), other.at(i, j))
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        Matrix::from_fn(&self.ring, self.rows, other.cols, |i, j| {
            let mut acc = self.ring.zero();
            for k in 0..self.cols {
                acc = self.ring.add(&acc, &self.ring.mul(self.at(i, k), other.at(k, j)));
            }
            acc
        })
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| {
            self.ring.mul(c, self.at(i, j))
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.rows, self.cols, |i, j| self.ring.neg(self.at(i, j)))
    }

    /// Apply the matrix to a coordinate vector (length = cols).
    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = self.ring.zero();
                for k in 0..self.cols {
                    acc = self.ring.add(&acc, &self.ring.mul(self.at(i, k), &v[k]));
                }
                acc
            })
            .collect()
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        Matrix::from_fn(&self.ring, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.at(i, j).clone()
            } else {
                other.at(i, j - self.cols).clone()
            }
        })
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        Matrix::from_fn(&self.ring, self.rows + other.rows, self.cols, |i, j| {
            if i < self.rows {
                self.at(i, j).clone()
            } else {
                other.at(i - self.rows, j).clone()
            }
        })
    }

    pub fn from_cols(ring: &Ring, rows: usize, cols: &[Vec<Elem>]) -> Matrix {
        Matrix::from_fn(ring, rows, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn columns(&self) -> Vec<Vec<Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Keep the first `k` columns.
    pub fn take_cols(&self, k: usize) -> Matrix {
        assert!(k <= self.cols);
        Matrix::from_fn(&self.ring, self.rows, k, |i, j| self.at(i, j).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(&self.ring, self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    /// Entrywise residue in the residue field of `m`.
    pub fn residue(&self, m: &MaxIdealHandle) -> Result<Matrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for e in &self.data {
            data.push(self.ring.residue(e, m)?);
        }
        Ok(Matrix::from_raw(
            m.residue_field.clone(),
            self.rows,
            self.cols,
            data,
        ))
    }

    /// Project a matrix over a product ring onto one factor.
    pub fn project_component(&self, c: usize) -> Result<Matrix> {
        let factors = match &self.ring {
            Ring::Product { factors } => factors,
            _ => {
                return Err(Error::MismatchedRing(
                    "component projection needs a product ring".into(),
                ))
            }
        };
        let sub = factors
            .get(c)
            .ok_or_else(|| Error::MismatchedRing("component index out of range".into()))?;
        let mut data = Vec::with_capacity(self.data.len());
        for e in &self.data {
            match e {
                Elem::Tup(es) => data.push(es[c].clone()),
                _ => return Err(Error::MismatchedRing("non-tuple entry in product matrix".into())),
            }
        }
        Ok(Matrix::from_raw(sub.clone(), self.rows, self.cols, data))
    }
}

// ---------------------------------------------------------------------------
// Reduced row echelon form over fields
// ---------------------------------------------------------------------------

/// RREF result: the reduced matrix and its pivot columns.
#[derive(Debug, Clone)]
pub struct Rref {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Reduced row echelon form over a field (error [`Error::NotAField`] otherwise).
pub fn rref(a: &Matrix) -> Result<Rref> {
    let ring = &a.ring;
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    if let Some(r) = fast::rref(a) {
        return Ok(r);
    }
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for j in 0..m.cols {
        // Find a pivot row at or below r.
        let piv = (r..m.rows).find(|&i| !ring.is_zero(m.at(i, j)));
        let Some(piv) = piv else { continue };
        if piv != r {
            for k in 0..m.cols {
                let tmp = m.at(piv, k).clone();
                *m.at_mut(piv, k) = m.at(r, k).clone();
                *m.at_mut(r, k) = tmp;
            }
        }
        let inv = ring.inv(m.at(r, j))?;
        for k in 0..m.cols {
            *m.at_mut(r, k) = ring.mul(&inv, m.at(r, k));
        }
        for i in 0..m.rows {
            if i != r && !ring.is_zero(m.at(i, j)) {
                let c = m.at(i, j).clone();
                for k in 0..m.cols {
                    let t = ring.mul(&c, m.at(r, k));
                    *m.at_mut(i, k) = ring.sub(m.at(i, k), &t);
                }
            }
        }
        pivots.push(j);
        r += 1;
        if r == m.rows {
            break;
        }
    }
    Ok(Rref { mat: m, pivots })
}

/// Rank over a field.
pub fn rank(a: &Matrix) -> Result<usize> {
    Ok(rref(a)?.rank())
}

/// Solve `A·x = b` over a field; `None` if inconsistent.
pub fn solve_field(a: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let ring = &a.ring;
    assert_eq!(b.len(), a.rows);
    let bm = Matrix::from_cols(ring, a.rows, &[b.to_vec()]);
    let aug = a.hstack(&bm);
    let r = rref(&aug)?;
    if r.pivots.iter().any(|&p| p == a.cols) {
        return Ok(None); // pivot in the augmented column: inconsistent
    }
    let mut x = vec![ring.zero(); a.cols];
    for (row, &p) in r.pivots.iter().enumerate() {
        x[p] = r.mat.at(row, a.cols).clone();
    }
    Ok(Some(x))
}

// ---------------------------------------------------------------------------
// Howell normal form over Z/N
// ---------------------------------------------------------------------------

/// Howell normal form of a row span in `(Z/N)^cols`, with the transform
/// expressing each form row as a combination of the input rows.
///
/// The form is the canonical strong echelon form: leading entries divide `N`
/// and sit in strictly increasing columns, entries above a leading entry are
/// reduced modulo it, and — the Howell property — every row of the span
/// whose leading index is `≥ j` is a combination of the form rows with
/// leading index `≥ j`. Two row sets span the same module iff their forms
/// are identical, and membership is decided by greedy reduction.
#[derive(Debug, Clone)]
pub struct HowellForm {
    pub modulus: BigInt,
    pub cols: usize,
    /// Nonzero form rows as canonical integers in `[0, N)`.
    pub rows: Vec<Vec<BigInt>>,
    /// `rows[i] = transform[i] · input (mod N)`.
    pub transform: Vec<Vec<BigInt>>,
}

/// Compute the Howell form over `Z/N` (error [`Error::NotZMod`] otherwise).
pub fn howell_form(a: &Matrix) -> Result<HowellForm> {
    let n = match &a.ring {
        Ring::ZMod { n } => n.clone(),
        _ => return Err(Error::NotZMod(a.ring.to_string())),
    };
    // Working rows carry (vector, history); history tracks the expression in
    // terms of the input rows so membership certificates can be produced.
    let width = a.cols;
    let input_count = a.rows;
    let mut work: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..a.rows)
        .map(|i| {
            let v: Vec<BigInt> = (0..width)
                .map(|j| match a.at(i, j) {
                    Elem::Int(x) => x.clone(),
                    _ => unreachable!("ZMod entries are integers"),
                })
                .collect();
            let mut h = vec![BigInt::zero(); input_count];
            h[i] = BigInt::one();
            (v, h)
        })
        .collect();
    let mut placed: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();

    let leading = |v: &[BigInt]| v.iter().position(|x| !x.is_zero());

    for j in 0..width {
        // Combine every row with leading index j into a single pivot row.
        let mut pivot: Option<(Vec<BigInt>, Vec<BigInt>)> = None;
        let mut rest: Vec<(Vec<BigInt>, Vec<BigInt>)> = Vec::new();
        for (v, h) in work.drain(..) {
            if leading(&v) != Some(j) {
                rest.push((v, h));
                continue;
            }
            pivot = Some(match pivot.take() {
                None => (v, h),
                Some((pv, ph)) => {
                    let (nv, nh, rv, rh) = gcd_combine(&n, j, (&pv, &ph), (&v, &h));
                    if leading(&rv).is_some() {
                        rest.push((rv, rh));
                    }
                    (nv, nh)
                }
            });
        }
        work = rest;
        let Some((mut pv, mut ph)) = pivot else { continue };
        // Normalize the pivot to gcd(pivot, N) by a unit multiple.
        let g = pv[j].gcd(&n);
        let u = unit_scaling(&pv[j], &g, &n);
        for x in pv.iter_mut().chain(ph.iter_mut()) {
            *x = (&*x * &u).mod_floor(&n);
        }
        debug_assert_eq!(pv[j], g);
        // Howell property: the annihilator multiple (N/g)·row belongs to the
        // span and has a later leading index; push it back for processing.
        let ann = &n / &g;
        if !ann.is_one() {
            let av: Vec<BigInt> = pv.iter().map(|x| (x * &ann).mod_floor(&n)).collect();
            if leading(&av).is_some() {
                let ah: Vec<BigInt> = ph.iter().map(|x| (x * &ann).mod_floor(&n)).collect();
                work.push((av, ah));
            }
        }
        placed.push((pv, ph));
    }

    // Reduce entries above each leading entry modulo that entry, left pivot
    // first: later pivot rows vanish on earlier pivot columns, so earlier
    // reductions are never disturbed.
    for k in 0..placed.len() {
        let (pc, pe) = {
            let (pv, _) = &placed[k];
            let pc = leading(pv).expect("placed rows are nonzero");
            (pc, pv[pc].clone())
        };
        for i in 0..k {
            let q = (&placed[i].0[pc]).div_floor(&pe);
            if q.is_zero() {
                continue;
            }
            let (src_v, src_h) = placed[k].clone();
            let (v, h) = &mut placed[i];
            for (x, s) in v.iter_mut().zip(&src_v) {
                *x = (&*x - &q * s).mod_floor(&n);
            }
            for (x, s) in h.iter_mut().zip(&src_h) {
                *x = (&*x - &q * s).mod_floor(&n);
            }
        }
    }

    let (rows, transform): (Vec<_>, Vec<_>) = placed.into_iter().unzip();
    Ok(HowellForm {
        modulus: n,
        cols: width,
        rows,
        transform,
    })
}

/// Unimodular combination of two rows at column `j`: returns a row with the
/// gcd at `j` and a row with 0 at `j`, preserving the span.
fn gcd_combine(
    n: &BigInt,
    j: usize,
    (pv, ph): (&[BigInt], &[BigInt]),
    (qv, qh): (&[BigInt], &[BigInt]),
) -> (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) {
    let e = pv[j].extended_gcd(&qv[j]);
    let g = &e.gcd;
    let (k1, k2) = (&pv[j] / g, &qv[j] / g);
    let comb = |a: &[BigInt], b: &[BigInt], x: &BigInt, y: &BigInt| -> Vec<BigInt> {
        a.iter()
            .zip(b)
            .map(|(u, v)| (u * x + v * y).mod_floor(n))
            .collect()
    };
    let nv = comb(pv, qv, &e.x, &e.y);
    let nh = comb(ph, qh, &e.x, &e.y);
    let rv = comb(pv, qv, &k2, &(-k1.clone()));
    let rh = comb(ph, qh, &k2, &(-k1));
    (nv, nh, rv, rh)
}

/// A unit `u (mod n)` with `u·a ≡ gcd(a, n) (mod n)`.
fn unit_scaling(a: &BigInt, g: &BigInt, n: &BigInt) -> BigInt {
    let b = a / g; // coprime to n/g
    let ng = n / g;
    if ng.is_one() {
        return BigInt::one();
    }
    let mut u = mod_inverse(&b.mod_floor(&ng), &ng).expect("b is a unit mod n/g");
    // Lift to a unit mod n: u + k·(n/g) stays an inverse mod n/g; pick k so
    // gcd(u, n) = 1 (exists because u is already coprime to n/g).
    while !u.gcd(n).is_one() {
        u += &ng;
    }
    u
}

impl HowellForm {
    /// Greedy membership test for a canonical vector over `Z/N`.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.reduce_with_coeffs(v).is_some()
    }

    /// Express `v` as a combination of the *input* rows, or `None` if `v`
    /// is not in the span.
    pub fn membership_coeffs(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        let (coeffs, _) = self.reduce_with_coeffs(v)?;
        Some(coeffs)
    }

    /// Reduce `v` against the form; returns coefficients over the input rows
    /// and the (zero) remainder on success.
    fn reduce_with_coeffs(&self, v: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
        assert_eq!(v.len(), self.cols);
        let n = &self.modulus;
        let mut rem: Vec<BigInt> = v.iter().map(|x| x.mod_floor(n)).collect();
        let input_count = self.transform.first().map(|t| t.len()).unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); input_count];
        for (row, hist) in self.rows.iter().zip(&self.transform) {
            let pc = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
            if rem[..pc].iter().any(|x| !x.is_zero()) {
                return None; // unreachable leading entry to the left
            }
            if rem[pc].is_zero() {
                continue;
            }
            let g = &row[pc];
            if !(&rem[pc] % g).is_zero() {
                return None;
            }
            let q = &rem[pc] / g;
            for (x, s) in rem.iter_mut().zip(row) {
                *x = (&*x - &q * s).mod_floor(n);
            }
            for (c, s) in coeffs.iter_mut().zip(hist) {
                *c = (&*c + &q * s).mod_floor(n);
            }
        }
        if rem.iter().all(|x| x.is_zero()) {
            Some((coeffs, rem))
        } else {
            None
        }
    }

    /// The form as a matrix over `Z/N` (for comparisons and display).
    pub fn matrix(&self) -> Matrix {
        let ring = Ring::ZMod {
            n: self.modulus.clone(),
        };
        let mut data = Vec::with_capacity(self.rows.len() * self.cols);
        for row in &self.rows {
            for x in row {
                data.push(Elem::Int(x.clone()));
            }
        }
        Matrix::from_raw(ring, self.rows.len(), self.cols, data)
    }
}

/// Solve `A·x = b` over `Z/N` through the Howell form of the transposed
/// column span; `None` if no solution exists.
pub fn solve_zmod(a: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    let n = match &a.ring {
        Ring::ZMod { n } => n.clone(),
        _ => return Err(Error::NotZMod(a.ring.to_string())),
    };
    assert_eq!(b.len(), a.rows);
    let h = howell_form(&a.transpose())?;
    let bv: Vec<BigInt> = b
        .iter()
        .map(|e| match e {
            Elem::Int(x) => x.clone(),
            _ => unreachable!("ZMod entries are integers"),
        })
        .collect();
    match h.membership_coeffs(&bv) {
        None => Ok(None),
        Some(cs) => Ok(Some(
            cs.into_iter().map(|c| Elem::Int(c.mod_floor(&n))).collect(),
        )),
    }
}

/// Solve `A·x = b` over any semilocal menu ring that supports it (fields,
/// `Z/N`, and products of those).
pub fn solve_semilocal(a: &Matrix, b: &[Elem]) -> Result<Option<Vec<Elem>>> {
    match &a.ring {
        Ring::PrimeField { .. } | Ring::ExtField { .. } => solve_field(a, b),
        Ring::ZMod { .. } => solve_zmod(a, b),
        Ring::Product { factors } => {
            let mut per_component: Vec<Vec<Elem>> = Vec::with_capacity(factors.len());
            for (c, _) in factors.iter().enumerate() {
                let ac = a.project_component(c)?;
                let bc: Vec<Elem> = b
                    .iter()
                    .map(|e| match e {
                        Elem::Tup(es) => es[c].clone(),
                        _ => unreachable!("product entries are tuples"),
                    })
                    .collect();
                match solve_semilocal(&ac, &bc)? {
                    None => return Ok(None),
                    Some(x) => per_component.push(x),
                }
            }
            let width = a.cols;
            let mut out = Vec::with_capacity(width);
            for j in 0..width {
                out.push(Elem::Tup(
                    per_component.iter().map(|x| x[j].clone()).collect(),
                ));
            }
            Ok(Some(out))
        }
        other => Err(Error::UnsupportedRing(format!(
            "linear solve not supported over {other}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Determinants
// ---------------------------------------------------------------------------

/// Exact determinant by the ring-appropriate method.
pub fn det(a: &Matrix) -> Result<Elem> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(
            "determinant of a non-square matrix".into(),
        ));
    }
    let ring = &a.ring;
    if a.rows == 0 {
        return Ok(ring.one());
    }
    match ring {
        Ring::PrimeField { .. } | Ring::ExtField { .. } => det_field(a),
        Ring::ZMod { n } => {
            // Integer-lift Bareiss, reduced mod N at the end: exact because
            // the integer determinant of the canonical lifts reduces to the
            // determinant over Z/N.
            let lifts: Vec<BigInt> = a
                .entries()
                .iter()
                .map(|e| match e {
                    Elem::Int(x) => x.clone(),
                    _ => unreachable!("ZMod entries are integers"),
                })
                .collect();
            let d = bareiss_int(lifts, a.rows);
            Ok(Elem::Int(d.mod_floor(n)))
        }
        Ring::Product { factors } => {
            let mut comps = Vec::with_capacity(factors.len());
            for c in 0..factors.len() {
                let sub = a.project_component(c)?;
                comps.push(det(&sub)?);
            }
            Ok(Elem::Tup(comps))
        }
        Ring::LocalInt { .. } | Ring::QuadOrder { .. } => det_bareiss_domain(a),
    }
}

/// Cofactor-expansion determinant (any ring, small n): the independent
/// cross-check route for randomized agreement tests.
pub fn det_cofactor(a: &Matrix) -> Result<Elem> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(
            "determinant of a non-square matrix".into(),
        ));
    }
    if a.rows > 16 {
        return Err(Error::DimensionGuard(a.rows, 16));
    }
    let ring = a.ring.clone();
    // Memoized Laplace expansion along the first remaining row, keyed by the
    // set of remaining columns.
    fn go(a: &Matrix, ring: &Ring, cols: u32, memo: &mut HashMap<u32, Elem>) -> Elem {
        if cols == 0 {
            return ring.one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = a.rows - cols.count_ones() as usize;
        let mut acc = ring.zero();
        let mut sign = false;
        for j in 0..a.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = a.at(row, j);
            if !ring.is_zero(entry) {
                let minor = go(a, ring, cols & !(1 << j), memo);
                let term = ring.mul(entry, &minor);
                acc = if sign {
                    ring.sub(&acc, &term)
                } else {
                    ring.add(&acc, &term)
                };
            }
            sign = !sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full: u32 = if a.cols == 32 { u32::MAX } else { (1u32 << a.cols) - 1 };
    Ok(go(a, &ring, full, &mut HashMap::new()))
}

fn det_field(a: &Matrix) -> Result<Elem> {
    let ring = &a.ring;
    let mut m = a.clone();
    let mut detv = ring.one();
    for j in 0..m.cols {
        let piv = (j..m.rows).find(|&i| !ring.is_zero(m.at(i, j)));
        let Some(piv) = piv else { return Ok(ring.zero()) };
        if piv != j {
            for k in 0..m.cols {
                let tmp = m.at(piv, k).clone();
                *m.at_mut(piv, k) = m.at(j, k).clone();
                *m.at_mut(j, k) = tmp;
            }
            detv = ring.neg(&detv);
        }
        detv = ring.mul(&detv, m.at(j, j));
        let inv = ring.inv(m.at(j, j))?;
        for i in j + 1..m.rows {
            if ring.is_zero(m.at(i, j)) {
                continue;
            }
            let c = ring.mul(m.at(i, j), &inv);
            for k in j..m.cols {
                let t = ring.mul(&c, m.at(j, k));
                *m.at_mut(i, k) = ring.sub(m.at(i, k), &t);
            }
        }
    }
    Ok(detv)
}

/// Fraction-free Bareiss over integer lifts.
fn bareiss_int(mut m: Vec<BigInt>, n: usize) -> BigInt {
    let at = |m: &Vec<BigInt>, i: usize, j: usize| m[i * n + j].clone();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if at(&m, k, k).is_zero() {
            match (k + 1..n).find(|&i| !at(&m, i, k).is_zero()) {
                None => return BigInt::zero(),
                Some(swap) => {
                    for j in 0..n {
                        m.swap(k * n + j, swap * n + j);
                    }
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (at(&m, i, j) * at(&m, k, k) - at(&m, i, k) * at(&m, k, j)) / &prev;
                m[i * n + j] = v;
            }
            m[i * n + k] = BigInt::zero();
        }
        prev = at(&m, k, k);
    }
    let d = at(&m, n - 1, n - 1);
    if sign {
        -d
    } else {
        d
    }
}

/// Bareiss over an integral domain from the menu (exact division step).
fn det_bareiss_domain(a: &Matrix) -> Result<Elem> {
    let ring = &a.ring;
    let n = a.rows;
    let mut m = a.clone();
    let mut sign = false;
    let mut prev = ring.one();
    for k in 0..n.saturating_sub(1) {
        if ring.is_zero(m.at(k, k)) {
            match (k + 1..n).find(|&i| !ring.is_zero(m.at(i, k))) {
                None => return Ok(ring.zero()),
                Some(swap) => {
                    for j in 0..n {
                        let tmp = m.at(swap, j).clone();
                        *m.at_mut(swap, j) = m.at(k, j).clone();
                        *m.at_mut(k, j) = tmp;
                    }
                    sign = !sign;
                }
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let hi = ring.mul(m.at(i, j), m.at(k, k));
                let lo = ring.mul(m.at(i, k), m.at(k, j));
                let num = ring.sub(&hi, &lo);
                *m.at_mut(i, j) = domain_div_exact(ring, &num, &prev)?;
            }
            *m.at_mut(i, k) = ring.zero();
        }
        prev = m.at(k, k).clone();
    }
    let d = m.at(n - 1, n - 1).clone();
    Ok(if sign { ring.neg(&d) } else { d })
}

/// Exact division in an integral domain from the menu; internal error if the
/// division is not exact (Bareiss guarantees it is).
fn domain_div_exact(ring: &Ring, num: &Elem, den: &Elem) -> Result<Elem> {
    match ring {
        Ring::LocalInt { .. } => {
            // Division inside Q; Bareiss keeps results in the localization.
            match (num, den) {
                (Elem::Frac { num: a, den: s }, Elem::Frac { num: b, den: t }) => {
                    if b.is_zero() {
                        return Err(Error::Internal("Bareiss pivot is zero".into()));
                    }
                    let q = crate::ring::Ring::LocalInt {
                        p: match ring {
                            Ring::LocalInt { p } => p.clone(),
                            _ => unreachable!(),
                        },
                    };
                    let flipped = Elem::Frac {
                        num: t.clone(),
                        den: b.clone(),
                    };
                    // Canonicalize through multiplication (handles signs/gcd).
                    let prod = q.mul(
                        &Elem::Frac {
                            num: a.clone(),
                            den: s.clone(),
                        },
                        &flipped,
                    );
                    Ok(prod)
                }
                _ => unreachable!("local integer entries are fractions"),
            }
        }
        Ring::QuadOrder { .. } => {
            // num/den = num·conj(den)/N(den); exactness checked per coordinate.
            let nrm = ring.quad_norm(den);
            if nrm.is_zero() {
                return Err(Error::Internal("Bareiss pivot is zero".into()));
            }
            let prod = ring.mul(num, &ring.quad_conj(den));
            match prod {
                Elem::Quad { a, b } => {
                    if !(&a % &nrm).is_zero() || !(&b % &nrm).is_zero() {
                        return Err(Error::Internal(
                            "inexact division in the Bareiss recursion".into(),
                        ));
                    }
                    Ok(Elem::Quad { a: a / &nrm, b: b / &nrm })
                }
                _ => unreachable!("quadratic order entries"),
            }
        }
        _ => Err(Error::UnsupportedRing(format!(
            "exact domain division over {ring}"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Inverse with certificate
// ---------------------------------------------------------------------------

/// Outcome of [`inverse_or_certificate`].
#[derive(Debug, Clone)]
pub enum InverseOutcome {
    /// Exact two-sided inverse (verified by multiplication before return).
    Inverse(Matrix),
    /// The matrix is singular at this maximal ideal (semilocal rings).
    SingularAt(MaxIdealHandle),
    /// The determinant is not a unit (rings without ideal enumeration).
    NonUnitDet(Elem),
}

impl InverseOutcome {
    pub fn into_inverse(self) -> Result<Matrix> {
        match self {
            InverseOutcome::Inverse(m) => Ok(m),
            InverseOutcome::SingularAt(h) => Err(Error::NotAUnit(format!(
                "matrix is singular at maximal ideal {}",
                h.label()
            ))),
            InverseOutcome::NonUnitDet(d) => {
                Err(Error::NotAUnit(format!("determinant {d} is not a unit")))
            }
        }
    }
}

/// Exact inverse or an explicit witness of non-invertibility.
///
/// Semilocal rings report a maximal ideal where the determinant vanishes;
/// quadratic orders report the non-unit determinant. On success the product
/// `m·m⁻¹` is recomputed and compared with the identity before returning.
pub fn inverse_or_certificate(a: &Matrix) -> Result<InverseOutcome> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    if let Some(outcome) = fast::invert(a)? {
        return Ok(outcome);
    }
    let outcome = match &a.ring {
        Ring::PrimeField { .. } | Ring::ExtField { .. } => invert_field(a)?,
        Ring::ZMod { .. } => invert_zmod(a)?,
        Ring::LocalInt { .. } => invert_local(a)?,
        Ring::Product { .. } => invert_product(a)?,
        Ring::QuadOrder { .. } => invert_quad(a)?,
    };
    if let InverseOutcome::Inverse(inv) = &outcome {
        if !a.mul(inv).is_identity() || !inv.mul(a).is_identity() {
            return Err(Error::Internal(
                "computed inverse fails the multiplication check".into(),
            ));
        }
    }
    Ok(outcome)
}

fn invert_field(a: &Matrix) -> Result<InverseOutcome> {
    let n = a.rows;
    let aug = a.hstack(&Matrix::identity(&a.ring, n));
    let r = rref(&aug)?;
    if r.pivots.len() < n || r.pivots.iter().take(n).any(|&p| p >= n) {
        let h = a.ring.max_ideals()?.remove(0);
        return Ok(InverseOutcome::SingularAt(h));
    }
    let inv = Matrix::from_fn(&a.ring, n, n, |i, j| r.mat.at(i, n + j).clone());
    Ok(InverseOutcome::Inverse(inv))
}

/// Gauss–Jordan with unit pivots over a local ring (`Z/p^e` or `Z_(p)`);
/// returns `None` when some elimination column has no unit entry, which over
/// a local ring certifies a non-unit determinant.
fn unit_pivot_invert(a: &Matrix) -> Result<Option<Matrix>> {
    let ring = &a.ring;
    let n = a.rows;
    let mut m = a.hstack(&Matrix::identity(ring, n));
    for j in 0..n {
        let piv = (j..n).find(|&i| ring.is_unit(m.at(i, j)));
        let Some(piv) = piv else { return Ok(None) };
        if piv != j {
            for k in 0..m.cols {
                let tmp = m.at(piv, k).clone();
                *m.at_mut(piv, k) = m.at(j, k).clone();
                *m.at_mut(j, k) = tmp;
            }
        }
        let inv = ring.inv(m.at(j, j))?;
        for k in 0..m.cols {
            *m.at_mut(j, k) = ring.mul(&inv, m.at(j, k));
        }
        for i in 0..n {
            if i != j && !ring.is_zero(m.at(i, j)) {
                let c = m.at(i, j).clone();
                for k in 0..m.cols {
                    let t = ring.mul(&c, m.at(j, k));
                    *m.at_mut(i, k) = ring.sub(m.at(i, k), &t);
                }
            }
        }
    }
    Ok(Some(Matrix::from_fn(ring, n, n, |i, j| {
        m.at(i, n + j).clone()
    })))
}

fn invert_zmod(a: &Matrix) -> Result<InverseOutcome> {
    let n_mod = match &a.ring {
        Ring::ZMod { n } => n.clone(),
        _ => unreachable!(),
    };
    let ideals = a.ring.max_ideals()?;
    // Work prime power by prime power; a matrix over the local ring Z/p^e is
    // invertible iff unit-pivot elimination completes.
    let mut prime_powers: Vec<(BigInt, Matrix)> = Vec::new();
    for h in &ideals {
        let p = &h.residue_char;
        let mut pe = p.clone();
        while ((&n_mod / &pe) % p).is_zero() {
            pe *= p;
        }
        let local = Ring::ZMod { n: pe.clone() };
        let reduced = Matrix::from_fn(&local, a.rows, a.cols, |i, j| match a.at(i, j) {
            Elem::Int(x) => Elem::Int(x.mod_floor(&pe)),
            _ => unreachable!(),
        });
        match unit_pivot_invert(&reduced)? {
            None => return Ok(InverseOutcome::SingularAt(h.clone())),
            Some(inv) => prime_powers.push((pe, inv)),
        }
    }
    // CRT-combine the local inverses entrywise.
    let n = a.rows;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut x = BigInt::zero();
            let mut modulus = BigInt::one();
            for (pe, inv) in &prime_powers {
                let t = match inv.at(i, j) {
                    Elem::Int(t) => t.clone(),
                    _ => unreachable!(),
                };
                let minv = mod_inverse(&modulus.mod_floor(pe), pe)
                    .ok_or_else(|| Error::Internal("CRT prime powers not coprime".into()))?;
                let k = ((t - x.mod_floor(pe)) * minv).mod_floor(pe);
                x += k * &modulus;
                modulus *= pe;
            }
            data.push(Elem::Int(x.mod_floor(&n_mod)));
        }
    }
    Ok(InverseOutcome::Inverse(Matrix::from_raw(
        a.ring.clone(),
        n,
        n,
        data,
    )))
}

fn invert_local(a: &Matrix) -> Result<InverseOutcome> {
    match unit_pivot_invert(a)? {
        Some(inv) => Ok(InverseOutcome::Inverse(inv)),
        None => {
            let h = a.ring.max_ideals()?.remove(0);
            Ok(InverseOutcome::SingularAt(h))
        }
    }
}

fn invert_product(a: &Matrix) -> Result<InverseOutcome> {
    let factors = match &a.ring {
        Ring::Product { factors } => factors.clone(),
        _ => unreachable!(),
    };
    let mut inverses = Vec::with_capacity(factors.len());
    for c in 0..factors.len() {
        let sub = a.project_component(c)?;
        match inverse_or_certificate(&sub)? {
            InverseOutcome::Inverse(inv) => inverses.push(inv),
            InverseOutcome::SingularAt(local) => {
                // Map the component's handle to the ambient product handle.
                let mut path = vec![c];
                path.extend(local.path.iter().cloned());
                let ambient = a
                    .ring
                    .max_ideals()?
                    .into_iter()
                    .find(|h| h.path == path && h.residue_char == local.residue_char)
                    .ok_or_else(|| {
                        Error::Internal("component ideal missing from ambient enumeration".into())
                    })?;
                return Ok(InverseOutcome::SingularAt(ambient));
            }
            InverseOutcome::NonUnitDet(d) => return Ok(InverseOutcome::NonUnitDet(d)),
        }
    }
    let n = a.rows;
    let data = (0..n * n)
        .map(|idx| Elem::Tup(inverses.iter().map(|m| m.entries()[idx].clone()).collect()))
        .collect();
    Ok(InverseOutcome::Inverse(Matrix::from_raw(
        a.ring.clone(),
        n,
        n,
        data,
    )))
}

fn invert_quad(a: &Matrix) -> Result<InverseOutcome> {
    let ring = &a.ring;
    let d = det(a)?;
    if !ring.is_unit(&d) {
        return Ok(InverseOutcome::NonUnitDet(d));
    }
    let dinv = ring.inv(&d)?;
    let n = a.rows;
    // Adjugate by cofactors (desk-scale n).
    if n > 12 {
        return Err(Error::DimensionGuard(n, 12));
    }
    let mut adj = Matrix::zero(ring, n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = Matrix::from_fn(ring, n - 1, n - 1, |r, c| {
                let rr = if r < j { r } else { r + 1 };
                let cc = if c < i { c } else { c + 1 };
                a.at(rr, cc).clone()
            });
            let md = det_cofactor(&minor)?;
            let signed = if (i + j) % 2 == 0 { md } else { ring.neg(&md) };
            *adj.at_mut(i, j) = signed;
        }
    }
    Ok(InverseOutcome::Inverse(adj.scale(&dinv)))
}

// ---------------------------------------------------------------------------
// Machine-word kernels for small prime moduli
// ---------------------------------------------------------------------------

/// Gauss–Jordan in `u64` arithmetic when the modulus is a prime below 2³¹
/// (so a product of two reduced residues fits in a machine word). `rref` and
/// `inverse_or_certificate` route `F_p` and `Z/p` matrices through these
/// kernels and fall back to the generic big-integer code everywhere else;
/// the fast inverse verifies both products in the same arithmetic before it
/// is returned.
pub(crate) mod fast {
    use num_traits::ToPrimitive;

    use super::{InverseOutcome, Matrix, Rref};
    use crate::error::{Error, Result};
    use crate::ring::{int, small_prime_modulus, Elem, Ring};

    fn grid(a: &Matrix) -> Option<(u64, Vec<u64>)> {
        let p = small_prime_modulus(&a.ring)?;
        let mut g = Vec::with_capacity(a.entries().len());
        for e in a.entries() {
            match e {
                Elem::Int(x) => g.push(x.to_u64()? % p),
                _ => return None,
            }
        }
        Some((p, g))
    }

    fn matrix_from_grid(ring: &Ring, rows: usize, cols: usize, g: &[u64]) -> Matrix {
        let data = g.iter().map(|&x| Elem::Int(int(x as i64))).collect();
        Matrix::from_raw(ring.clone(), rows, cols, data)
    }

    /// Inverse modulo a prime by the extended Euclidean algorithm.
    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (p as i128, a as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(p as i128) as u64
    }

    /// Row-reduce a row-major grid in place; returns the pivot columns.
    fn rref_grid(g: &mut [u64], rows: usize, cols: usize, p: u64) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for j in 0..cols {
            let Some(piv) = (r..rows).find(|&i| g[i * cols + j] != 0) else {
                continue;
            };
            if piv != r {
                for k in 0..cols {
                    g.swap(piv * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(g[r * cols + j], p);
            for k in 0..cols {
                g[r * cols + k] = g[r * cols + k] * inv % p;
            }
            for i in 0..rows {
                if i != r && g[i * cols + j] != 0 {
                    let c = p - g[i * cols + j];
                    for k in 0..cols {
                        g[i * cols + k] = (g[i * cols + k] + c * g[r * cols + k]) % p;
                    }
                }
            }
            pivots.push(j);
            r += 1;
            if r == rows {
                break;
            }
        }
        pivots
    }

    /// Rank of a row-major grid by forward elimination; consumes the grid.
    pub(crate) fn rank_u64(g: &mut [u64], rows: usize, cols: usize, p: u64) -> usize {
        let mut r = 0usize;
        for j in 0..cols {
            let Some(piv) = (r..rows).find(|&i| g[i * cols + j] != 0) else {
                continue;
            };
            if piv != r {
                for k in j..cols {
                    g.swap(piv * cols + k, r * cols + k);
                }
            }
            let inv = inv_mod(g[r * cols + j], p);
            for i in r + 1..rows {
                if g[i * cols + j] != 0 {
                    let c = p - g[i * cols + j] * inv % p;
                    for k in j..cols {
                        g[i * cols + k] = (g[i * cols + k] + c * g[r * cols + k]) % p;
                    }
                }
            }
            r += 1;
            if r == rows {
                break;
            }
        }
        r
    }

    pub(super) fn rref(a: &Matrix) -> Option<Rref> {
        let (p, mut g) = grid(a)?;
        let pivots = rref_grid(&mut g, a.rows, a.cols, p);
        Some(Rref {
            mat: matrix_from_grid(&a.ring, a.rows, a.cols, &g),
            pivots,
        })
    }

    pub(super) fn invert(a: &Matrix) -> Result<Option<InverseOutcome>> {
        let Some((p, g)) = grid(a) else { return Ok(None) };
        let n = a.rows;
        let cols = 2 * n;
        let mut aug = vec![0u64; n * cols];
        for i in 0..n {
            aug[i * cols..i * cols + n].copy_from_slice(&g[i * n..(i + 1) * n]);
            aug[i * cols + n + i] = 1;
        }
        let pivots = rref_grid(&mut aug, n, cols, p);
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            let h = a.ring.max_ideals()?.remove(0);
            return Ok(Some(InverseOutcome::SingularAt(h)));
        }
        let mut inv = vec![0u64; n * n];
        for i in 0..n {
            inv[i * n..(i + 1) * n].copy_from_slice(&aug[i * cols + n..(i + 1) * cols]);
        }
        if !is_identity_product(&g, &inv, n, p) || !is_identity_product(&inv, &g, n, p) {
            return Err(Error::Internal(
                "computed inverse fails the multiplication check".into(),
            ));
        }
        Ok(Some(InverseOutcome::Inverse(matrix_from_grid(
            &a.ring, n, n, &inv,
        ))))
    }

    fn is_identity_product(a: &[u64], b: &[u64], n: usize, p: u64) -> bool {
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u128;
                for k in 0..n {
                    acc += (a[i * n + k] * b[k * n + j]) as u128;
                }
                if acc % p as u128 != u128::from(i == j) {
                    return false;
                }
            }
        }
        true
    }
}

// ---------------------------------------------------------------------------
// Characteristic polynomial
// ---------------------------------------------------------------------------

/// Characteristic polynomial of a square matrix, coefficients low-to-high
/// (monic of degree `m`). Uses Faddeev–LeVerrier when `2..=m` are all units
/// in the ring, symbolic cofactor expansion (guarded to `m ≤ 16`) otherwise.
pub fn charpoly(a: &Matrix) -> Result<Vec<Elem>> {
    if a.rows != a.cols {
        return Err(Error::DimensionMismatch(
            "characteristic polynomial of a non-square matrix".into(),
        ));
    }
    let ring = &a.ring;
    let m = a.rows;
    if m == 0 {
        return Ok(vec![ring.one()]);
    }
    let small_units = (2..=m as i64).all(|k| ring.is_unit(&ring.from_i64(k)));
    if small_units {
        charpoly_leverrier(a)
    } else {
        charpoly_cofactor(a)
    }
}

fn trace(a: &Matrix) -> Elem {
    let mut t = a.ring.zero();
    for i in 0..a.rows {
        t = a.ring.add(&t, a.at(i, i));
    }
    t
}

fn charpoly_leverrier(a: &Matrix) -> Result<Vec<Elem>> {
    let ring = &a.ring;
    let m = a.rows;
    // c_m = 1; M_1 = A; c_{m-k} = -tr(A·(M_{k-1} + c I))/k iteratively.
    let mut coeffs = vec![ring.zero(); m + 1];
    coeffs[m] = ring.one();
    let mut mk = a.clone();
    let mut ck = ring.neg(&trace(&mk));
    coeffs[m - 1] = ck.clone();
    for k in 2..=m {
        let adj = mk.add(&Matrix::identity(ring, m).scale(&ck));
        mk = a.mul(&adj);
        let kinv = ring.inv(&ring.from_i64(k as i64))?;
        ck = ring.neg(&ring.mul(&kinv, &trace(&mk)));
        coeffs[m - k] = ck.clone();
    }
    Ok(coeffs)
}

fn charpoly_cofactor(a: &Matrix) -> Result<Vec<Elem>> {
    use crate::ring::poly as rp;
    let ring = &a.ring;
    let m = a.rows;
    if m > 16 {
        return Err(Error::DimensionGuard(m, 16));
    }
    // det(tI - A) by memoized Laplace expansion over R[t].
    fn go(
        a: &Matrix,
        ring: &Ring,
        cols: u32,
        memo: &mut HashMap<u32, rp::Poly>,
    ) -> rp::Poly {
        if cols == 0 {
            return vec![ring.one()];
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let row = a.rows - cols.count_ones() as usize;
        let mut acc: rp::Poly = Vec::new();
        let mut sign = false;
        for j in 0..a.cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            // Entry of tI - A at (row, j).
            let mut entry: rp::Poly = vec![ring.neg(a.at(row, j))];
            if row == j {
                entry.push(ring.one());
            }
            rp::normalize(ring, &mut entry);
            if !entry.is_empty() {
                let minor = go(a, ring, cols & !(1 << j), memo);
                let term = rp::mul(ring, &entry, &minor);
                acc = if sign {
                    rp::sub(ring, &acc, &term)
                } else {
                    rp::add(ring, &acc, &term)
                };
            }
            sign = !sign;
        }
        memo.insert(cols, acc.clone());
        acc
    }
    let full: u32 = (1u32 << m) - 1;
    let mut p = go(a, ring, full, &mut HashMap::new());
    // Pad to full degree (the polynomial is monic of degree m).
    while p.len() < m + 1 {
        p.push(ring.zero());
    }
    Ok(p)
}

/// All `n×n` minors of an `n×m` matrix (`n = rows`), as (column set, value).
pub fn maximal_minors(a: &Matrix) -> Result<Vec<(Vec<usize>, Elem)>> {
    let n = a.rows;
    if a.cols < n {
        return Err(Error::DimensionMismatch(
            "maximal minors need at least as many columns as rows".into(),
        ));
    }
    let mut out = Vec::new();
    let mut choice: Vec<usize> = (0..n).collect();
    loop {
        let sub = Matrix::from_fn(&a.ring, n, n, |i, j| a.at(i, choice[j]).clone());
        out.push((choice.clone(), det(&sub)?));
        // Next combination in lexicographic order.
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if choice[i] != i + a.cols - n {
                choice[i] += 1;
                for k in i + 1..n {
                    choice[k] = choice[k - 1] + 1;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::int;
    use num_traits::ToPrimitive;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn zm(n: i64) -> Ring {
        Ring::zmod(int(n)).unwrap()
    }

    fn gf(p: i64) -> Ring {
        Ring::prime_field(int(p)).unwrap()
    }

    #[test]
    fn rref_is_idempotent_and_ranks_correctly() {
        let r = gf(5);
        let a = Matrix::from_i64(&r, 3, 4, &[1, 2, 3, 4, 2, 4, 6, 8, 0, 1, 1, 0]);
        let e = rref(&a).unwrap();
        assert_eq!(e.rank(), 2);
        let e2 = rref(&e.mat).unwrap();
        assert_eq!(e.mat, e2.mat);
    }

    #[test]
    fn solve_field_round_trips() {
        let r = gf(7);
        let a = Matrix::from_i64(&r, 3, 3, &[2, 1, 0, 0, 3, 4, 5, 0, 6]);
        let x = vec![r.from_i64(3), r.from_i64(1), r.from_i64(5)];
        let b = a.apply(&x);
        let got = solve_field(&a, &b).unwrap().unwrap();
        assert_eq!(a.apply(&got), b);
    }

    #[test]
    fn field_reduction_frozen_examples() {
        let r = gf(5);
        let id = Matrix::identity(&r, 3);
        let e = rref(&id).unwrap();
        assert_eq!(e.mat, id);
        assert_eq!(e.pivots, vec![0, 1, 2]);

        let z = Matrix::zero(&r, 2, 2);
        let e = rref(&z).unwrap();
        assert_eq!(e.mat, z);
        assert_eq!(e.rank(), 0);

        // Second row is twice the first, so it reduces away.
        let a = Matrix::from_i64(&r, 2, 2, &[1, 2, 2, 4]);
        let e = rref(&a).unwrap();
        assert_eq!(e.mat, Matrix::from_i64(&r, 2, 2, &[1, 2, 0, 0]));
        assert_eq!(e.rank(), 1);
    }

    #[test]
    fn howell_form_frozen_examples() {
        let r = zm(4);
        let h = howell_form(&Matrix::from_i64(&r, 1, 1, &[2])).unwrap();
        assert_eq!(h.matrix(), Matrix::from_i64(&r, 1, 1, &[2]));

        // (1,1) + (0,2) = (1,3) lies in the span.
        let h = howell_form(&Matrix::from_i64(&r, 2, 2, &[1, 1, 0, 2])).unwrap();
        assert!(h.contains(&[int(1), int(3)]));

        let a = howell_form(&Matrix::from_i64(&r, 2, 2, &[2, 0, 0, 2])).unwrap();
        let b = howell_form(&Matrix::from_i64(&r, 2, 2, &[0, 2, 2, 0])).unwrap();
        assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn inverse_frozen_examples() {
        // A transvection inverts by negating its off-diagonal coefficient.
        let r = zm(10);
        let a = Matrix::from_i64(&r, 2, 2, &[1, 3, 0, 1]);
        let inv = inverse_or_certificate(&a).unwrap().into_inverse().unwrap();
        assert_eq!(inv, Matrix::from_i64(&r, 2, 2, &[1, 7, 0, 1]));

        let r = zm(4);
        let a = Matrix::from_i64(&r, 1, 1, &[2]);
        match inverse_or_certificate(&a).unwrap() {
            InverseOutcome::SingularAt(h) => assert_eq!(h.residue_char, int(2)),
            other => panic!("expected a singularity witness, got {other:?}"),
        }

        let r = zm(6);
        let a = Matrix::from_i64(&r, 2, 2, &[1, 1, 1, 2]);
        let inv = inverse_or_certificate(&a).unwrap().into_inverse().unwrap();
        assert_eq!(inv, Matrix::from_i64(&r, 2, 2, &[2, 5, 5, 1]));
    }

    /// Independent oracle: the full row span of a small matrix over Z/N by
    /// brute-force enumeration of coefficient vectors.
    fn brute_span(a: &Matrix) -> Vec<Vec<BigInt>> {
        let n = match &a.ring {
            Ring::ZMod { n } => n.to_i64().unwrap(),
            _ => unreachable!(),
        };
        let rows = a.rows;
        let mut span: Vec<Vec<BigInt>> = Vec::new();
        let total = (n as u64).pow(rows as u32);
        for mut idx in 0..total {
            let mut v = vec![BigInt::zero(); a.cols];
            for i in 0..rows {
                let c = int((idx % n as u64) as i64);
                idx /= n as u64;
                for j in 0..a.cols {
                    let aij = match a.at(i, j) {
                        Elem::Int(x) => x.clone(),
                        _ => unreachable!(),
                    };
                    v[j] = (&v[j] + &c * aij).mod_floor(&int(n));
                }
            }
            if !span.contains(&v) {
                span.push(v);
            }
        }
        span
    }

    #[test]
    fn howell_membership_agrees_with_brute_force_span() {
        let r = zm(4);
        let a = Matrix::from_i64(&r, 2, 2, &[2, 0, 0, 2]);
        let span = brute_span(&a);
        let h = howell_form(&a).unwrap();
        for x in 0..4i64 {
            for y in 0..4i64 {
                let v = vec![int(x), int(y)];
                assert_eq!(h.contains(&v), span.contains(&v), "({x},{y})");
            }
        }
        // Membership coefficients really express the member.
        let v = vec![int(2), int(2)];
        let cs = h.membership_coeffs(&v).unwrap();
        let mut acc = vec![BigInt::zero(); 2];
        for (i, c) in cs.iter().enumerate() {
            for j in 0..2 {
                let aij = match a.at(i, j) {
                    Elem::Int(x) => x.clone(),
                    _ => unreachable!(),
                };
                acc[j] = (&acc[j] + c * aij).mod_floor(&int(4));
            }
        }
        assert_eq!(acc, v);
    }

    #[test]
    fn howell_form_is_canonical_under_span_preserving_shuffles() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = [4i64, 6, 8, 9, 12, 30][rng.gen_range(0..6)];
            let r = zm(n);
            let rows = rng.gen_range(1..4usize);
            let cols = rng.gen_range(1..4usize);
            let a = Matrix::from_fn(&r, rows, cols, |_, _| r.from_i64(rng.gen_range(0..n)));
            // Span-preserving transformations: row swaps, unit scalings,
            // adding a multiple of another row, and appending a combination.
            let mut b_rows: Vec<Vec<Elem>> = (0..rows).map(|i| a.row(i)).collect();
            for _ in 0..6 {
                match rng.gen_range(0..3) {
                    0 => {
                        let i = rng.gen_range(0..b_rows.len());
                        let j = rng.gen_range(0..b_rows.len());
                        b_rows.swap(i, j);
                    }
                    1 => {
                        let i = rng.gen_range(0..b_rows.len());
                        let j = rng.gen_range(0..b_rows.len());
                        if i != j {
                            let c = r.from_i64(rng.gen_range(0..n));
                            for k in 0..cols {
                                let t = r.mul(&c, &b_rows[j][k]);
                                b_rows[i][k] = r.add(&b_rows[i][k], &t);
                            }
                        }
                    }
                    _ => {
                        let i = rng.gen_range(0..b_rows.len());
                        let c = r.from_i64(rng.gen_range(0..n));
                        let extra: Vec<Elem> =
                            (0..cols).map(|k| r.mul(&c, &b_rows[i][k])).collect();
                        b_rows.push(extra);
                    }
                }
            }
            let b = Matrix::from_fn(&r, b_rows.len(), cols, |i, j| b_rows[i][j].clone());
            let ha = howell_form(&a).unwrap();
            let hb = howell_form(&b).unwrap();
            assert_eq!(ha.rows, hb.rows, "same span must give the same form");
        }
    }

    #[test]
    fn determinant_routes_agree_on_random_small_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..80 {
            let n = [6i64, 12, 7, 9][rng.gen_range(0..4)];
            let r = if n == 7 { gf(7) } else { zm(n) };
            let size = rng.gen_range(1..5usize);
            let a = Matrix::from_fn(&r, size, size, |_, _| r.from_i64(rng.gen_range(0..n)));
            assert_eq!(det(&a).unwrap(), det_cofactor(&a).unwrap());
        }
    }

    #[test]
    fn inverse_over_zmod_is_exact_and_witnesses_singularity() {
        let r = zm(6);
        // det = 2·3 - 1·1 = 5, a unit mod 6.
        let a = Matrix::from_i64(&r, 2, 2, &[2, 1, 1, 3]);
        match inverse_or_certificate(&a).unwrap() {
            InverseOutcome::Inverse(inv) => {
                assert!(a.mul(&inv).is_identity());
                assert!(inv.mul(&a).is_identity());
            }
            other => panic!("expected inverse, got {other:?}"),
        }
        // det = 6 ≡ 0: singular at (2) (the first failing prime).
        let b = Matrix::from_i64(&r, 2, 2, &[2, 0, 0, 3]);
        match inverse_or_certificate(&b).unwrap() {
            InverseOutcome::SingularAt(h) => assert_eq!(h.residue_char, int(2)),
            other => panic!("expected singularity witness, got {other:?}"),
        }
        // A matrix invertible mod 2 but singular mod 3.
        let c = Matrix::from_i64(&r, 2, 2, &[1, 0, 0, 3]);
        match inverse_or_certificate(&c).unwrap() {
            InverseOutcome::SingularAt(h) => assert_eq!(h.residue_char, int(3)),
            other => panic!("expected singularity witness, got {other:?}"),
        }
    }

    #[test]
    fn inverse_over_local_integers_handles_fraction_entries() {
        let r = Ring::local_int(int(5)).unwrap();
        let half = Elem::Frac { num: int(1), den: int(2) };
        let a = Matrix::new(
            r.clone(),
            2,
            2,
            vec![r.one(), half.clone(), r.zero(), r.one()],
        )
        .unwrap();
        match inverse_or_certificate(&a).unwrap() {
            InverseOutcome::Inverse(inv) => assert!(a.mul(&inv).is_identity()),
            other => panic!("expected inverse, got {other:?}"),
        }
        // Multiplying by 5 kills invertibility at (5).
        let b = a.scale(&r.from_i64(5));
        match inverse_or_certificate(&b).unwrap() {
            InverseOutcome::SingularAt(h) => assert_eq!(h.residue_char, int(5)),
            other => panic!("expected singularity witness, got {other:?}"),
        }
    }

    #[test]
    fn inverse_over_quad_order_reports_non_unit_determinants() {
        let r = Ring::quad_order(int(-1)).unwrap();
        let i = Elem::Quad { a: int(0), b: int(1) };
        let a = Matrix::new(r.clone(), 2, 2, vec![r.one(), i.clone(), r.zero(), i.clone()]).unwrap();
        // det = i, a unit in Z[i].
        match inverse_or_certificate(&a).unwrap() {
            InverseOutcome::Inverse(inv) => assert!(a.mul(&inv).is_identity()),
            other => panic!("expected inverse, got {other:?}"),
        }
        let b = Matrix::new(
            r.clone(),
            2,
            2,
            vec![r.from_i64(2), r.zero(), r.zero(), r.one()],
        )
        .unwrap();
        match inverse_or_certificate(&b).unwrap() {
            InverseOutcome::NonUnitDet(d) => assert_eq!(d, r.from_i64(2)),
            other => panic!("expected determinant witness, got {other:?}"),
        }
    }

    #[test]
    fn product_inverse_maps_witnesses_to_ambient_ideals() {
        let r = Ring::product(vec![gf(2), zm(9)]).unwrap();
        // Identity in the first slot, 3 (a zero divisor mod 9) in the second.
        let mk = |a: i64, b: i64| Elem::Tup(vec![gf(2).from_i64(a), zm(9).from_i64(b)]);
        let a = Matrix::new(r.clone(), 1, 1, vec![mk(1, 3)]).unwrap();
        match inverse_or_certificate(&a).unwrap() {
            InverseOutcome::SingularAt(h) => {
                assert_eq!(h.path, vec![1]);
                assert_eq!(h.residue_char, int(3));
            }
            other => panic!("expected singularity witness, got {other:?}"),
        }
    }

    #[test]
    fn charpoly_of_a_diagonal_idempotent_is_t_times_t_minus_one() {
        // Over Z/6 the Faddeev–LeVerrier route is unavailable (2 is not a
        // unit), exercising the symbolic cofactor path.
        let r = zm(6);
        let e = Matrix::from_i64(&r, 2, 2, &[1, 0, 0, 0]);
        let cp = charpoly(&e).unwrap();
        // t² - t = t(t-1): coefficients [0, -1, 1].
        assert_eq!(cp, vec![r.zero(), r.from_i64(-1), r.one()]);
    }

    #[test]
    fn charpoly_routes_agree_over_fields() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let r = gf(13);
        for _ in 0..40 {
            let m = rng.gen_range(1..5usize);
            let a = Matrix::from_fn(&r, m, m, |_, _| r.from_i64(rng.gen_range(0..13)));
            assert_eq!(charpoly_leverrier(&a).unwrap(), charpoly_cofactor(&a).unwrap());
        }
    }

    #[test]
    fn maximal_minors_enumerate_column_choices_in_order() {
        let r = gf(5);
        let a = Matrix::from_i64(&r, 2, 3, &[1, 0, 2, 0, 1, 3]);
        let minors = maximal_minors(&a).unwrap();
        assert_eq!(minors.len(), 3);
        assert_eq!(minors[0].0, vec![0, 1]);
        assert_eq!(minors[0].1, r.one());
        assert_eq!(minors[2].0, vec![1, 2]);
        // det of columns 1,2 = 0·3 - 2·1 = -2 ≡ 3 (mod 5).
        assert_eq!(minors[2].1, r.from_i64(3));
    }

    #[test]
    fn dimension_guard_rejects_oversized_matrices() {
        let r = gf(2);
        let data = vec![r.zero(); (MAX_DIM + 1) * 1];
        assert!(matches!(
            Matrix::new(r.clone(), MAX_DIM + 1, 1, data),
            Err(Error::DimensionGuard(_, _))
        ));
    }

    /// The generic field elimination, restated independently as an oracle for
    /// the machine-word kernel that now handles small prime moduli.
    fn naive_rref(a: &Matrix) -> Rref {
        let ring = &a.ring;
        let mut m = a.clone();
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for j in 0..m.cols {
            let Some(piv) = (r..m.rows).find(|&i| !ring.is_zero(m.at(i, j))) else {
                continue;
            };
            if piv != r {
                for k in 0..m.cols {
                    let tmp = m.at(piv, k).clone();
                    *m.at_mut(piv, k) = m.at(r, k).clone();
                    *m.at_mut(r, k) = tmp;
                }
            }
            let inv = ring.inv(m.at(r, j)).unwrap();
            for k in 0..m.cols {
                *m.at_mut(r, k) = ring.mul(&inv, m.at(r, k));
            }
            for i in 0..m.rows {
                if i != r && !ring.is_zero(m.at(i, j)) {
                    let c = m.at(i, j).clone();
                    for k in 0..m.cols {
                        let t = ring.mul(&c, m.at(r, k));
                        *m.at_mut(i, k) = ring.sub(m.at(i, k), &t);
                    }
                }
            }
            pivots.push(j);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { mat: m, pivots }
    }

    #[test]
    fn machine_word_reduction_matches_the_generic_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(91);
        for p in [2i64, 5, 13, 65521] {
            let r = gf(p);
            for _ in 0..25 {
                let rows = rng.gen_range(1..=5);
                let cols = rng.gen_range(1..=6);
                let a = Matrix::from_fn(&r, rows, cols, |_, _| {
                    r.from_i64(rng.gen_range(0..p.min(1000)))
                });
                let want = naive_rref(&a);
                let got = rref(&a).unwrap();
                assert_eq!(got.mat, want.mat);
                assert_eq!(got.pivots, want.pivots);
            }
        }
    }

    #[test]
    fn machine_word_inverse_agrees_with_unit_pivot_elimination() {
        // Z/p for prime p takes the fast route inside inverse_or_certificate;
        // the local unit-pivot elimination is the independent reference.
        let mut rng = ChaCha8Rng::seed_from_u64(92);
        let r = zm(13);
        let mut singular_seen = 0;
        for _ in 0..40 {
            let a = Matrix::from_fn(&r, 3, 3, |_, _| r.from_i64(rng.gen_range(0..13)));
            match inverse_or_certificate(&a).unwrap() {
                InverseOutcome::Inverse(inv) => {
                    let reference = unit_pivot_invert(&a).unwrap().unwrap();
                    assert_eq!(inv, reference);
                    assert!(a.mul(&inv).is_identity());
                }
                InverseOutcome::SingularAt(h) => {
                    assert!(unit_pivot_invert(&a).unwrap().is_none());
                    assert_eq!(h.residue_char, int(13));
                    singular_seen += 1;
                }
                InverseOutcome::NonUnitDet(_) => panic!("Z/13 enumerates its ideal"),
            }
        }
        assert!(singular_seen > 0, "want at least one singular sample");

        // A prime too large for the machine-word route exercises the generic
        // code on the same inputs, as a guard against divergent conventions.
        let big = Ring::prime_field(int((1i64 << 31) + 11)).unwrap();
        let a = Matrix::from_i64(&big, 2, 2, &[1, 3, 2, 7]);
        let inv = inverse_or_certificate(&a).unwrap();
        match inv {
            InverseOutcome::Inverse(inv) => assert!(a.mul(&inv).is_identity()),
            _ => panic!("unimodular over a field"),
        }
    }
}
