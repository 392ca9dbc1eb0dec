//! Structure-constant algebras and their certificates: symbol algebras from
//! a designated root of unity, the sandwich-map Azumaya criterion, explicit
//! splitting over finite fields by idempotent descent, and Artin–Schreier
//! theory for Galois extensions of prime-characteristic rings.
//!
//! Everything is verified at construction time: a [`StructureConstantAlgebra`]
//! value is always associative and unital, and a [`GaloisExtensionData`] value
//! always carries verified algebra automorphisms forming the listed group.
//! The two headline verdicts are
//!
//! * [`is_azumaya`] — builds the dim²×dim² matrix of the sandwich map
//!   `A ⊗ A° → End(A)`, `a⊗b ↦ (x ↦ axb)`, and reports its invertibility;
//! * [`is_galois`] — builds the rank-|Γ|² matrix of the comparison map
//!   `S ⊗ S → ∏_γ S`, `s⊗t ↦ (s·γ(t))_γ`, and reports its invertibility.
//!
//! Over `F_p` and `Z/p` with `p < 2³¹` the verification loops run in a
//! machine-word mirror of the structure constants; the generic big-integer
//! path handles every other menu ring.

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::{self, InverseOutcome, Matrix};
use crate::ring::{int, is_prime, poly, small_prime_modulus, Elem, MaxIdealHandle, Ring};
use crate::sampling;

/// Hard cap on algebra dimension: keeps the O(dim⁵) construction checks and
/// the dim²×dim² criterion matrices desk-scale (32² is exactly the matrix
/// dimension guard).
pub const MAX_ALGEBRA_DIM: usize = 32;

// ---------------------------------------------------------------------------
// Structure-constant algebras
// ---------------------------------------------------------------------------

/// A finite free algebra presented by structure constants: `table[i][j]` is
/// the coordinate vector of `e_i·e_j` and `unit` the coordinate vector of 1.
///
/// Construction verifies associativity on all basis triples and the
/// two-sided unit law, so a value of this type is always an associative
/// unital algebra, free of rank `dim` over its base ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstantAlgebra {
    pub ring: Ring,
    pub dim: usize,
    pub table: Vec<Vec<Vec<Elem>>>,
    pub unit: Vec<Elem>,
}

impl StructureConstantAlgebra {
    /// Validate shapes and coordinates, then verify the unit law and
    /// associativity on all basis triples.
    pub fn new(ring: Ring, table: Vec<Vec<Vec<Elem>>>, unit: Vec<Elem>) -> Result<Self> {
        let dim = table.len();
        if dim == 0 {
            return Err(Error::InvalidAlgebra("the algebra must have rank ≥ 1".into()));
        }
        if dim > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionGuard(dim, MAX_ALGEBRA_DIM));
        }
        if table.iter().any(|row| row.len() != dim)
            || table.iter().flatten().any(|cell| cell.len() != dim)
            || unit.len() != dim
        {
            return Err(Error::InvalidAlgebra(format!(
                "structure constants must form a {dim}×{dim} table of length-{dim} \
                 coordinate vectors, with a length-{dim} unit"
            )));
        }
        for e in table.iter().flatten().flatten().chain(unit.iter()) {
            ring.validate(e)?;
        }
        let alg = StructureConstantAlgebra { ring, dim, table, unit };
        if let Some(kernel) = FpKernel::from_algebra(&alg) {
            if let Some(i) = kernel.unit_failure() {
                return Err(Error::InvalidAlgebra(format!(
                    "the designated unit does not act as the identity on basis element {i}"
                )));
            }
            if let Some((i, j, k)) = kernel.associativity_failure() {
                return Err(Error::InvalidAlgebra(format!(
                    "associativity fails at the basis triple ({i}, {j}, {k})"
                )));
            }
        } else {
            alg.verify_generic()?;
        }
        Ok(alg)
    }

    fn verify_generic(&self) -> Result<()> {
        for i in 0..self.dim {
            let basis = self.basis(i);
            if self.mul_basis_right(&self.unit, i) != basis
                || self.mul_basis_left(i, &self.unit) != basis
            {
                return Err(Error::InvalidAlgebra(format!(
                    "the designated unit does not act as the identity on basis element {i}"
                )));
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let lhs = self.mul_basis_right(&self.table[i][j], k);
                    let rhs = self.mul_basis_left(i, &self.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails at the basis triple ({i}, {j}, {k})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The coordinate vector of basis element `i`.
    pub fn basis(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![self.ring.zero(); self.dim];
        v[i] = self.ring.one();
        v
    }

    /// The coordinate vector of 1.
    pub fn one(&self) -> Vec<Elem> {
        self.unit.clone()
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, v: &[Elem], w: &[Elem]) -> Result<Vec<Elem>> {
        if v.len() != self.dim || w.len() != self.dim {
            return Err(Error::DimensionMismatch(
                "element coordinates must match the algebra rank".into(),
            ));
        }
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.dim];
        for i in 0..self.dim {
            if ring.is_zero(&v[i]) {
                continue;
            }
            for j in 0..self.dim {
                if ring.is_zero(&w[j]) {
                    continue;
                }
                let c = ring.mul(&v[i], &w[j]);
                for (m, t) in self.table[i][j].iter().enumerate() {
                    if !ring.is_zero(t) {
                        out[m] = ring.add(&out[m], &ring.mul(&c, t));
                    }
                }
            }
        }
        Ok(out)
    }

    /// `v^k` (with `v^0 = 1`).
    pub fn pow(&self, v: &[Elem], k: u64) -> Result<Vec<Elem>> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, v)?;
        }
        Ok(acc)
    }

    /// `v·e_k`.
    fn mul_basis_right(&self, v: &[Elem], k: usize) -> Vec<Elem> {
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.dim];
        for l in 0..self.dim {
            if ring.is_zero(&v[l]) {
                continue;
            }
            for (m, t) in self.table[l][k].iter().enumerate() {
                if !ring.is_zero(t) {
                    out[m] = ring.add(&out[m], &ring.mul(&v[l], t));
                }
            }
        }
        out
    }

    /// `e_i·v`.
    fn mul_basis_left(&self, i: usize, v: &[Elem]) -> Vec<Elem> {
        let ring = &self.ring;
        let mut out = vec![ring.zero(); self.dim];
        for l in 0..self.dim {
            if ring.is_zero(&v[l]) {
                continue;
            }
            for (m, t) in self.table[i][l].iter().enumerate() {
                if !ring.is_zero(t) {
                    out[m] = ring.add(&out[m], &ring.mul(&v[l], t));
                }
            }
        }
        out
    }

    /// The full matrix algebra `M_n(R)` on the basis `E_ij` (row-major:
    /// index `i·n + j`), with `E_ij·E_kl = δ_jk·E_il`.
    pub fn matrix_algebra(ring: &Ring, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidAlgebra("the algebra must have rank ≥ 1".into()));
        }
        let dim = n * n;
        if dim > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionGuard(dim, MAX_ALGEBRA_DIM));
        }
        let zero_vec = vec![ring.zero(); dim];
        let mut table = vec![vec![zero_vec.clone(); dim]; dim];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        if j == k {
                            table[i * n + j][k * n + l][i * n + l] = ring.one();
                        }
                    }
                }
            }
        }
        let mut unit = zero_vec;
        for i in 0..n {
            unit[i * n + i] = ring.one();
        }
        Self::new(ring.clone(), table, unit)
    }

    /// The dual numbers `R[ε]/(ε²)` on the basis `{1, ε}` — the standard
    /// non-Azumaya example (the sandwich map kills `1⊗ε − ε⊗1`).
    pub fn dual_numbers(ring: &Ring) -> Result<Self> {
        let z = ring.zero();
        let o = ring.one();
        let table = vec![
            vec![vec![o.clone(), z.clone()], vec![z.clone(), o.clone()]],
            vec![vec![z.clone(), o.clone()], vec![z.clone(), z.clone()]],
        ];
        Self::new(ring.clone(), table, vec![o, z])
    }

    /// Tensor product over the common base ring, on the basis `u_i⊗v_j`
    /// (index `i·dim_other + j`).
    pub fn tensor_product(&self, other: &Self) -> Result<Self> {
        if self.ring != other.ring {
            return Err(Error::MismatchedRing(
                "tensor factors must share the base ring".into(),
            ));
        }
        let ring = &self.ring;
        let (da, db) = (self.dim, other.dim);
        let dim = da * db;
        if dim > MAX_ALGEBRA_DIM {
            return Err(Error::DimensionGuard(dim, MAX_ALGEBRA_DIM));
        }
        let mut table = vec![vec![vec![ring.zero(); dim]; dim]; dim];
        for i in 0..da {
            for j in 0..db {
                for k in 0..da {
                    for l in 0..db {
                        let left = &self.table[i][k];
                        let right = &other.table[j][l];
                        let cell = &mut table[i * db + j][k * db + l];
                        for (m, c) in left.iter().enumerate() {
                            if ring.is_zero(c) {
                                continue;
                            }
                            for (r, d) in right.iter().enumerate() {
                                cell[m * db + r] = ring.mul(c, d);
                            }
                        }
                    }
                }
            }
        }
        let mut unit = vec![ring.zero(); dim];
        for (m, c) in self.unit.iter().enumerate() {
            for (r, d) in other.unit.iter().enumerate() {
                unit[m * db + r] = ring.mul(c, d);
            }
        }
        Self::new(ring.clone(), table, unit)
    }
}

// ---------------------------------------------------------------------------
// Machine-word mirror of the structure constants
// ---------------------------------------------------------------------------

/// The structure constants over `F_p`/`Z/p` (`p < 2³¹`) flattened to `u64`,
/// so the O(dim⁵) verification loops and the criterion matrices can run in
/// machine words. `t[(i·d + j)·d + m]` is coordinate `m` of `e_i·e_j`.
struct FpKernel {
    p: u64,
    d: usize,
    t: Vec<u64>,
    unit: Vec<u64>,
}

fn elem_u64(e: &Elem, p: u64) -> Option<u64> {
    match e {
        Elem::Int(x) => x.to_u64().map(|v| v % p),
        _ => None,
    }
}

/// A row-major matrix over the same modulus, for automorphism grids.
fn matrix_grid(m: &Matrix, p: u64) -> Option<Vec<u64>> {
    m.entries().iter().map(|e| elem_u64(e, p)).collect()
}

fn mat_vec_u64(m: &[u64], v: &[u64], d: usize, p: u64) -> Vec<u64> {
    (0..d)
        .map(|i| {
            let mut acc = 0u128;
            for (k, &x) in v.iter().enumerate() {
                acc += (m[i * d + k] * x) as u128;
            }
            (acc % p as u128) as u64
        })
        .collect()
}

fn mat_mul_u64(a: &[u64], b: &[u64], d: usize, p: u64) -> Vec<u64> {
    let mut out = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0u128;
            for k in 0..d {
                acc += (a[i * d + k] * b[k * d + j]) as u128;
            }
            out[i * d + j] = (acc % p as u128) as u64;
        }
    }
    out
}

impl FpKernel {
    fn from_algebra(alg: &StructureConstantAlgebra) -> Option<FpKernel> {
        let p = small_prime_modulus(&alg.ring)?;
        let d = alg.dim;
        let mut t = Vec::with_capacity(d * d * d);
        for row in &alg.table {
            for cell in row {
                for e in cell {
                    t.push(elem_u64(e, p)?);
                }
            }
        }
        let unit = alg.unit.iter().map(|e| elem_u64(e, p)).collect::<Option<_>>()?;
        Some(FpKernel { p, d, t, unit })
    }

    fn cell(&self, i: usize, j: usize) -> &[u64] {
        let d = self.d;
        &self.t[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// First basis index where the unit law fails, if any.
    fn unit_failure(&self) -> Option<usize> {
        let (d, p) = (self.d, self.p as u128);
        (0..d).find(|&i| {
            (0..d).any(|m| {
                let mut left = 0u128;
                let mut right = 0u128;
                for l in 0..d {
                    left += (self.unit[l] * self.t[(l * d + i) * d + m]) as u128;
                    right += (self.unit[l] * self.t[(i * d + l) * d + m]) as u128;
                }
                let want = u128::from(m == i);
                left % p != want || right % p != want
            })
        })
    }

    /// First basis triple where associativity fails, if any.
    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let (d, p) = (self.d, self.p as u128);
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    for m in 0..d {
                        let mut lhs = 0u128;
                        let mut rhs = 0u128;
                        for l in 0..d {
                            lhs += (self.t[(i * d + j) * d + l] * self.t[(l * d + k) * d + m])
                                as u128;
                            rhs += (self.t[(j * d + k) * d + l] * self.t[(i * d + l) * d + m])
                                as u128;
                        }
                        if lhs % p != rhs % p {
                            return Some((i, j, k));
                        }
                    }
                }
            }
        }
        None
    }

    /// Matrix of left multiplication by the coordinate vector `v`.
    fn left_mult(&self, v: &[u64]) -> Vec<u64> {
        let (d, p) = (self.d, self.p as u128);
        let mut out = vec![0u64; d * d];
        for m in 0..d {
            for l in 0..d {
                let mut acc = 0u128;
                for (k, &x) in v.iter().enumerate() {
                    acc += (x * self.t[(k * d + l) * d + m]) as u128;
                }
                out[m * d + l] = (acc % p) as u64;
            }
        }
        out
    }

    /// Whether the grid is a unital algebra endomorphism.
    fn algebra_map_ok(&self, g: &[u64]) -> bool {
        let (d, p) = (self.d, self.p);
        if mat_vec_u64(g, &self.unit, d, p) != self.unit {
            return false;
        }
        let cols: Vec<Vec<u64>> = (0..d)
            .map(|i| (0..d).map(|m| g[m * d + i]).collect())
            .collect();
        let lmats: Vec<Vec<u64>> = cols.iter().map(|v| self.left_mult(v)).collect();
        for i in 0..d {
            for j in 0..d {
                let lhs = mat_vec_u64(g, self.cell(i, j), d, p);
                let rhs = mat_vec_u64(&lmats[i], &cols[j], d, p);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The comparison-map matrix: row `(g, m)`, column `(i, j)`, entry =
    /// coordinate `m` of `e_i·γ_g(e_j)`.
    fn comparison_grid(&self, autos: &[Vec<u64>]) -> Vec<u64> {
        let (d, p) = (self.d, self.p as u128);
        let cols = d * d;
        let mut out = vec![0u64; autos.len() * d * cols];
        for (g, auto) in autos.iter().enumerate() {
            for j in 0..d {
                let h: Vec<u64> = (0..d).map(|m| auto[m * d + j]).collect();
                for i in 0..d {
                    for m in 0..d {
                        let mut acc = 0u128;
                        for (l, &x) in h.iter().enumerate() {
                            acc += (x * self.t[(i * d + l) * d + m]) as u128;
                        }
                        out[(g * d + m) * cols + (i * d + j)] = (acc % p) as u64;
                    }
                }
            }
        }
        out
    }

    /// The sandwich-map matrix: row `(m, k)`, column `(i, j)`, entry =
    /// coordinate `m` of `e_i·e_k·e_j`.
    fn sandwich_grid(&self) -> Vec<u64> {
        let (d, p) = (self.d, self.p as u128);
        let cols = d * d;
        let mut out = vec![0u64; cols * cols];
        for i in 0..d {
            for k in 0..d {
                let w = self.cell(i, k).to_vec();
                for j in 0..d {
                    for m in 0..d {
                        let mut acc = 0u128;
                        for (l, &x) in w.iter().enumerate() {
                            acc += (x * self.t[(l * d + j) * d + m]) as u128;
                        }
                        out[(m * d + k) * cols + (i * d + j)] = (acc % p) as u64;
                    }
                }
            }
        }
        out
    }
}

fn grid_to_matrix(ring: &Ring, rows: usize, cols: usize, g: &[u64]) -> Matrix {
    let data = g.iter().map(|&x| Elem::Int(int(x as i64))).collect();
    Matrix::from_raw(ring.clone(), rows, cols, data)
}

// ---------------------------------------------------------------------------
// Roots of unity and symbol algebras
// ---------------------------------------------------------------------------

/// A designated primitive `n`-th root of unity: `ρ^n = 1`, every `ρ^k − 1`
/// for `0 < k < n` is a unit (ring-level primitivity), and `n` itself is a
/// unit. These are exactly the hypotheses the symbol-algebra construction
/// needs, stated as checkable conditions.
#[derive(Debug, Clone)]
pub struct RootOfUnity {
    pub ring: Ring,
    pub rho: Elem,
    pub order: usize,
}

impl RootOfUnity {
    pub fn new(ring: &Ring, rho: &Elem, order: usize) -> Result<RootOfUnity> {
        ring.validate(rho)?;
        if order == 0 {
            return Err(Error::BadRoot("the order must be at least 1".into()));
        }
        if !ring.is_unit(&ring.from_i64(order as i64)) {
            return Err(Error::BadRoot(format!(
                "the order {order} is not a unit in the ring"
            )));
        }
        if ring.pow(rho, order as u64) != ring.one() {
            return Err(Error::BadRoot(format!("ρ^{order} ≠ 1")));
        }
        for k in 1..order {
            let diff = ring.sub(&ring.pow(rho, k as u64), &ring.one());
            if !ring.is_unit(&diff) {
                return Err(Error::BadRoot(format!(
                    "ρ^{k} − 1 is not a unit, so ρ is not primitive of order {order}"
                )));
            }
        }
        Ok(RootOfUnity {
            ring: ring.clone(),
            rho: rho.clone(),
            order,
        })
    }
}

/// The symbol algebra `(a, b)_{n,R}` = `R⟨x, y | x^n = a, y^n = b,
/// xy = ρ·yx⟩` on the basis `x^i·y^j` (index `i·n + j`).
///
/// From `xy = ρyx` one gets `y^j·x^k = ρ^{−jk}·x^k·y^j`, so the basis
/// products are `(x^i y^j)(x^k y^l) = ρ^{−jk}·a^⌊(i+k)/n⌋·b^⌊(j+l)/n⌋ ·
/// x^{(i+k) mod n} y^{(j+l) mod n}` — a single structure constant each.
pub fn symbol_algebra(a: &Elem, b: &Elem, rho: &RootOfUnity) -> Result<StructureConstantAlgebra> {
    let ring = &rho.ring;
    ring.validate(a)?;
    ring.validate(b)?;
    if !ring.is_unit(a) {
        return Err(Error::NotAUnit(format!("the slot a = {a} is not a unit")));
    }
    if !ring.is_unit(b) {
        return Err(Error::NotAUnit(format!("the slot b = {b} is not a unit")));
    }
    let n = rho.order;
    let dim = n * n;
    if dim > MAX_ALGEBRA_DIM {
        return Err(Error::DimensionGuard(dim, MAX_ALGEBRA_DIM));
    }
    let mut table = vec![vec![vec![ring.zero(); dim]; dim]; dim];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let twist = (n - (j * k) % n) % n;
                    let mut c = ring.pow(&rho.rho, twist as u64);
                    c = ring.mul(&c, &ring.pow(a, ((i + k) / n) as u64));
                    c = ring.mul(&c, &ring.pow(b, ((j + l) / n) as u64));
                    let target = ((i + k) % n) * n + (j + l) % n;
                    table[i * n + j][k * n + l][target] = c;
                }
            }
        }
    }
    let mut unit = vec![ring.zero(); dim];
    unit[0] = ring.one();
    StructureConstantAlgebra::new(ring.clone(), table, unit)
}

// ---------------------------------------------------------------------------
// The sandwich criterion
// ---------------------------------------------------------------------------

/// Why a criterion matrix failed to invert.
#[derive(Debug, Clone)]
pub enum SingularWitness {
    /// Singular at this maximal ideal (semilocal base).
    At(MaxIdealHandle),
    /// The determinant is this non-unit (bases without ideal enumeration).
    NonUnitDet(Elem),
}

impl SingularWitness {
    fn from_outcome(outcome: InverseOutcome) -> Option<SingularWitness> {
        match outcome {
            InverseOutcome::Inverse(_) => None,
            InverseOutcome::SingularAt(h) => Some(SingularWitness::At(h)),
            InverseOutcome::NonUnitDet(d) => Some(SingularWitness::NonUnitDet(d)),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SingularWitness::At(h) => format!("singular at the maximal ideal {}", h.label()),
            SingularWitness::NonUnitDet(d) => format!("non-unit determinant {d}"),
        }
    }
}

/// Verdict of [`is_azumaya`]: whether the sandwich map `A ⊗ A° → End(A)`
/// is bijective, with a witness when it is not.
#[derive(Debug, Clone)]
pub struct AzumayaCertificate {
    pub azumaya: bool,
    /// Side length of the sandwich matrix (`dim²`).
    pub sandwich_dim: usize,
    pub witness: Option<SingularWitness>,
}

/// Decide whether `A` is Azumaya over its base ring: build the matrix of the
/// sandwich map `a⊗b ↦ (x ↦ a·x·b)` on the basis (row `(m,k)`, column
/// `(i,j)`, entry = coordinate `m` of `e_i·e_k·e_j`) and return the
/// invertibility verdict.
pub fn is_azumaya(a: &StructureConstantAlgebra) -> Result<AzumayaCertificate> {
    let d = a.dim;
    let sdim = d * d;
    let m = if let Some(kernel) = FpKernel::from_algebra(a) {
        grid_to_matrix(&a.ring, sdim, sdim, &kernel.sandwich_grid())
    } else {
        let ring = a.ring.clone();
        Matrix::from_fn(&a.ring, sdim, sdim, |row, col| {
            let (m_, k_) = (row / d, row % d);
            let (i_, j_) = (col / d, col % d);
            let mut acc = ring.zero();
            for l in 0..d {
                let c = &a.table[i_][k_][l];
                if ring.is_zero(c) {
                    continue;
                }
                let t = &a.table[l][j_][m_];
                if !ring.is_zero(t) {
                    acc = ring.add(&acc, &ring.mul(c, t));
                }
            }
            acc
        })
    };
    let witness = SingularWitness::from_outcome(linalg::inverse_or_certificate(&m)?);
    Ok(AzumayaCertificate {
        azumaya: witness.is_none(),
        sandwich_dim: sdim,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Splitting over finite fields
// ---------------------------------------------------------------------------

/// An explicit isomorphism `A ≅ M_n(F)`: a rank-one idempotent `e` and the
/// matrices of left multiplication by each basis element on the left module
/// `A·e`.
#[derive(Debug, Clone)]
pub struct SplitCertificate {
    /// `A ≅ M_n`.
    pub n: usize,
    /// Coordinates of a rank-one idempotent (its corner `e·A·e` is `F·e`).
    pub idempotent: Vec<Elem>,
    /// A basis of the column space `A·e`, as coordinate vectors.
    pub module_basis: Vec<Vec<Elem>>,
    /// `images[i]` is the `n×n` matrix of left multiplication by `e_i`
    /// on `A·e`; extended linearly this is the isomorphism.
    pub images: Vec<Matrix>,
    /// Candidates consumed by the idempotent search.
    pub tried: u64,
    /// Seed that reproduces the search.
    pub seed: u64,
}

impl SplitCertificate {
    /// Re-verify every claim against the algebra: the idempotent and its
    /// corner, the module basis, and that the images define a bijective
    /// algebra map onto `M_n`.
    pub fn verify(&self, a: &StructureConstantAlgebra) -> Result<()> {
        verify_split(a, self).map_err(Error::BadInput)
    }
}

fn verify_split(a: &StructureConstantAlgebra, cert: &SplitCertificate) -> std::result::Result<(), String> {
    let ring = &a.ring;
    let d = a.dim;
    let n = cert.n;
    if n * n != d {
        return Err(format!("M_{n} has dimension {}, the algebra has {d}", n * n));
    }
    let e = &cert.idempotent;
    if e.len() != d || cert.module_basis.iter().any(|v| v.len() != d) {
        return Err("coordinate lengths differ from the algebra rank".into());
    }
    let ee = a.mul(e, e).map_err(|err| err.to_string())?;
    if &ee != e || e.iter().all(|c| ring.is_zero(c)) {
        return Err("the claimed idempotent is zero or not idempotent".into());
    }
    match corner_basis(a, e) {
        Ok(c) if c.len() == 1 => {}
        Ok(c) => return Err(format!("the corner e·A·e has dimension {}, not 1", c.len())),
        Err(err) => return Err(err.to_string()),
    }
    if cert.module_basis.len() != n {
        return Err(format!(
            "the module basis has {} vectors, expected {n}",
            cert.module_basis.len()
        ));
    }
    if cert.images.len() != d {
        return Err("one image matrix per basis element is required".into());
    }
    let b = Matrix::from_cols(ring, d, &cert.module_basis);
    for (i, img) in cert.images.iter().enumerate() {
        if img.rows != n || img.cols != n || img.ring != *ring {
            return Err("image matrices must be n×n over the base field".into());
        }
        // Column j of images[i] must express e_i·v_j in the module basis.
        for j in 0..n {
            let prod = a
                .mul(&a.basis(i), &cert.module_basis[j])
                .map_err(|err| err.to_string())?;
            let combo = b.apply(&img.columns()[j]);
            if combo != prod {
                return Err(format!(
                    "image matrix {i} column {j} does not reproduce e_{i}·v_{j}"
                ));
            }
        }
    }
    // φ(1) = I and φ is multiplicative.
    let mut unit_image = Matrix::zero(ring, n, n);
    for (i, c) in a.unit.iter().enumerate() {
        unit_image = unit_image.add(&cert.images[i].scale(c));
    }
    if !unit_image.is_identity() {
        return Err("the unit does not map to the identity matrix".into());
    }
    for i in 0..d {
        for j in 0..d {
            let lhs = cert.images[i].mul(&cert.images[j]);
            let mut rhs = Matrix::zero(ring, n, n);
            for (k, c) in a.table[i][j].iter().enumerate() {
                if !ring.is_zero(c) {
                    rhs = rhs.add(&cert.images[k].scale(c));
                }
            }
            if lhs != rhs {
                return Err(format!("the map is not multiplicative at ({i}, {j})"));
            }
        }
    }
    // Bijectivity: the flattened map is a square matrix over F.
    let flat = Matrix::from_fn(ring, d, d, |row, col| {
        cert.images[col].at(row / n, row % n).clone()
    });
    match linalg::inverse_or_certificate(&flat).map_err(|err| err.to_string())? {
        InverseOutcome::Inverse(_) => Ok(()),
        _ => Err("the map to M_n is not bijective".into()),
    }
}

/// A basis of the corner `e·A·e`, by row reduction of the spanning set
/// `{e·e_i·e}`.
fn corner_basis(a: &StructureConstantAlgebra, e: &[Elem]) -> Result<Vec<Vec<Elem>>> {
    let mut rows = Vec::with_capacity(a.dim);
    for i in 0..a.dim {
        let v = a.mul(e, &a.mul_basis_left(i, e))?;
        rows.push(v);
    }
    span_basis(&a.ring, a.dim, rows)
}

/// Nonzero rows of the reduced row echelon form of the given row vectors.
fn span_basis(ring: &Ring, width: usize, rows: Vec<Vec<Elem>>) -> Result<Vec<Vec<Elem>>> {
    let m = Matrix::from_raw(
        ring.clone(),
        rows.len(),
        width,
        rows.into_iter().flatten().collect(),
    );
    let r = linalg::rref(&m)?;
    Ok((0..r.rank())
        .map(|i| (0..width).map(|j| r.mat.at(i, j).clone()).collect())
        .collect())
}

/// Minimal polynomial (monic, coefficients low-to-high) of the corner
/// element `t`, taking the corner unit `e` as `t^0`.
fn minimal_polynomial(
    a: &StructureConstantAlgebra,
    e: &[Elem],
    t: &[Elem],
) -> Result<Vec<Elem>> {
    let ring = &a.ring;
    let mut powers: Vec<Vec<Elem>> = vec![e.to_vec()];
    loop {
        let last = powers.last().expect("at least t^0");
        let next = a.mul(last, t)?;
        let stack = Matrix::from_cols(ring, a.dim, &powers);
        if let Some(x) = linalg::solve_field(&stack, &next)? {
            // t^k = Σ x_i·t^i  ⇒  m(z) = z^k − Σ x_i·z^i.
            let mut coeffs: Vec<Elem> = x.iter().map(|c| ring.neg(c)).collect();
            coeffs.push(ring.one());
            return Ok(coeffs);
        }
        powers.push(next);
        if powers.len() > a.dim {
            return Err(Error::Internal(
                "no linear dependence among more powers than the rank".into(),
            ));
        }
    }
}

/// Evaluate a polynomial at the corner element `t`, with `t^0 = e`.
fn eval_at(
    a: &StructureConstantAlgebra,
    e: &[Elem],
    t: &[Elem],
    f: &[Elem],
) -> Result<Vec<Elem>> {
    let ring = &a.ring;
    let mut acc = vec![ring.zero(); a.dim];
    // Horner from the top coefficient.
    for c in f.iter().rev() {
        acc = a.mul(&acc, t)?;
        if !ring.is_zero(c) {
            for (out, b) in acc.iter_mut().zip(e.iter()) {
                *out = ring.add(out, &ring.mul(c, b));
            }
        }
    }
    Ok(acc)
}

/// Split a structure-constant algebra over a finite field: find a rank-one
/// idempotent by corner descent and return the explicit isomorphism to
/// `M_n(F)` it induces on the left module `A·e`.
///
/// Candidates for the descent are enumerated deterministically (corner basis
/// vectors, then their pairwise sums), then by seeded random combinations;
/// the search is capped and reports
/// [`SearchExhausted`](Error::SearchExhausted) with the consumed budget and
/// the seed.
pub fn split_over_finite_field(
    a: &StructureConstantAlgebra,
    seed: u64,
) -> Result<SplitCertificate> {
    let ring = &a.ring;
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    let d = a.dim;
    let n = (1..=d).find(|k| k * k == d).ok_or_else(|| {
        Error::BadInput(format!("dimension {d} is not a perfect square"))
    })?;
    let cap: u64 = 400;
    let mut tried: u64 = 0;
    let mut rng = sampling::seeded_rng(seed);

    let mut e = a.one();
    loop {
        let corner = corner_basis(a, &e)?;
        let c = corner.len();
        if c == 1 {
            break;
        }
        // Candidate stream for this corner: basis vectors, pairwise sums,
        // then seeded random combinations.
        let deterministic = c + c * (c - 1) / 2;
        let mut split_to: Option<Vec<Elem>> = None;
        for k in 0.. {
            tried += 1;
            if tried > cap {
                return Err(Error::SearchExhausted { tried: tried - 1, seed });
            }
            let t: Vec<Elem> = if k < c {
                corner[k].clone()
            } else if k < deterministic {
                let mut idx = k - c;
                let mut i = 0;
                while idx >= c - i - 1 {
                    idx -= c - i - 1;
                    i += 1;
                }
                let j = i + 1 + idx;
                corner[i]
                    .iter()
                    .zip(corner[j].iter())
                    .map(|(x, y)| ring.add(x, y))
                    .collect()
            } else {
                let mut v = vec![ring.zero(); d];
                for basis_vec in &corner {
                    let coeff = sampling::random_element(ring, &mut rng);
                    for (out, x) in v.iter_mut().zip(basis_vec.iter()) {
                        *out = ring.add(out, &ring.mul(&coeff, x));
                    }
                }
                v
            };
            let m = minimal_polynomial(a, &e, &t)?;
            let factors = poly::factor_poly(ring, &m, seed)?;
            if factors.factors.len() < 2 {
                let (f0, e0) = &factors.factors[0];
                if *e0 == 1 && poly::deg(f0) == Some(c) && c > 1 {
                    // The corner is the field F[t]: no idempotents exist.
                    return Err(Error::SearchExhausted { tried, seed });
                }
                continue;
            }
            // Coprime split m = f·g ⇒ the idempotent (v·g)(t) where
            // u·f + v·g = 1.
            let mut f = vec![ring.one()];
            for _ in 0..factors.factors[0].1 {
                f = poly::mul(ring, &f, &factors.factors[0].0);
            }
            let mut g = vec![ring.one()];
            for (fac, mult) in factors.factors.iter().skip(1) {
                for _ in 0..*mult {
                    g = poly::mul(ring, &g, fac);
                }
            }
            let (gcd, _, v) = poly::xgcd(ring, &f, &g)?;
            if poly::deg(&gcd) != Some(0) {
                return Err(Error::Internal("factor groups are not coprime".into()));
            }
            let vg = poly::mul(ring, &v, &g);
            let cand = eval_at(a, &e, &t, &vg)?;
            let sq = a.mul(&cand, &cand)?;
            if sq != cand || cand.iter().all(|x| ring.is_zero(x)) || cand == e {
                return Err(Error::Internal(
                    "polynomial splitting did not produce a proper idempotent".into(),
                ));
            }
            let other: Vec<Elem> = e
                .iter()
                .zip(cand.iter())
                .map(|(x, y)| ring.sub(x, y))
                .collect();
            let dim_cand = corner_basis(a, &cand)?.len();
            let dim_other = corner_basis(a, &other)?.len();
            split_to = Some(if dim_cand <= dim_other { cand } else { other });
            break;
        }
        e = split_to.expect("the candidate loop either breaks or returns");
    }

    // The left module A·e and the matrices of left multiplication on it.
    let mut column_span = Vec::with_capacity(d);
    for i in 0..d {
        column_span.push(a.mul_basis_left(i, &e));
    }
    let module_basis = span_basis(ring, d, column_span)?;
    if module_basis.len() != n {
        return Err(Error::SearchExhausted { tried, seed });
    }
    let b = Matrix::from_cols(ring, d, &module_basis);
    let mut images = Vec::with_capacity(d);
    for i in 0..d {
        let mut img = Matrix::zero(ring, n, n);
        for (j, v) in module_basis.iter().enumerate() {
            let prod = a.mul_basis_left(i, v);
            let coords = linalg::solve_field(&b, &prod)?.ok_or_else(|| {
                Error::Internal("a product left the module it belongs to".into())
            })?;
            for r in 0..n {
                *img.at_mut(r, j) = coords[r].clone();
            }
        }
        images.push(img);
    }
    let cert = SplitCertificate {
        n,
        idempotent: e,
        module_basis,
        images,
        tried,
        seed,
    };
    match verify_split(a, &cert) {
        Ok(()) => Ok(cert),
        // A verified-sound construction that fails only bijectivity means the
        // algebra is not M_n; everything else is a construction bug.
        Err(msg) if msg.contains("not bijective") => {
            Err(Error::SearchExhausted { tried, seed })
        }
        Err(msg) => Err(Error::Internal(format!("split verification failed: {msg}"))),
    }
}

// ---------------------------------------------------------------------------
// Galois extension data
// ---------------------------------------------------------------------------

/// A finite free algebra `S` over `R` together with every element of an
/// acting group, as verified `R`-algebra automorphism matrices on the basis.
///
/// The list is the full group (not just generators); a non-faithful action
/// may list the same matrix several times. Construction verifies that every
/// matrix is a unital algebra endomorphism, that it is invertible, that the
/// identity is listed, and that the list is closed under composition.
#[derive(Debug, Clone)]
pub struct GaloisExtensionData {
    pub algebra: StructureConstantAlgebra,
    pub automorphisms: Vec<Matrix>,
}

impl GaloisExtensionData {
    pub fn new(
        algebra: StructureConstantAlgebra,
        automorphisms: Vec<Matrix>,
    ) -> Result<GaloisExtensionData> {
        if automorphisms.is_empty() {
            return Err(Error::BadInput(
                "the group must contain at least the identity".into(),
            ));
        }
        let d = algebra.dim;
        for m in &automorphisms {
            if m.rows != d || m.cols != d {
                return Err(Error::DimensionMismatch(
                    "automorphism matrices must be square of the algebra rank".into(),
                ));
            }
            if m.ring != algebra.ring {
                return Err(Error::MismatchedRing(
                    "automorphisms must live over the algebra's base ring".into(),
                ));
            }
            for x in m.entries() {
                algebra.ring.validate(x)?;
            }
        }
        verify_automorphism_list(&algebra, &automorphisms)?;
        Ok(GaloisExtensionData {
            algebra,
            automorphisms,
        })
    }
}

fn verify_automorphism_list(
    algebra: &StructureConstantAlgebra,
    autos: &[Matrix],
) -> Result<()> {
    let d = algebra.dim;
    if let Some(kernel) = FpKernel::from_algebra(algebra) {
        let grids: Option<Vec<Vec<u64>>> =
            autos.iter().map(|m| matrix_grid(m, kernel.p)).collect();
        if let Some(grids) = grids {
            let identity: Vec<u64> = (0..d * d)
                .map(|x| u64::from(x / d == x % d))
                .collect();
            for (idx, g) in grids.iter().enumerate() {
                if !kernel.algebra_map_ok(g) {
                    return Err(Error::BadInput(format!(
                        "map {idx} is not a unital algebra endomorphism"
                    )));
                }
                let mut copy = g.clone();
                if linalg::fast::rank_u64(&mut copy, d, d, kernel.p) != d {
                    return Err(Error::BadInput(format!("map {idx} is not invertible")));
                }
            }
            if !grids.iter().any(|g| *g == identity) {
                return Err(Error::BadInput("the identity map is not listed".into()));
            }
            for (i, gi) in grids.iter().enumerate() {
                for (j, gj) in grids.iter().enumerate() {
                    let prod = mat_mul_u64(gi, gj, d, kernel.p);
                    if !grids.iter().any(|g| *g == prod) {
                        return Err(Error::BadInput(format!(
                            "the list is not closed under composition: map {i} ∘ map {j} is missing"
                        )));
                    }
                }
            }
            return Ok(());
        }
    }
    // Generic route.
    for (idx, m) in autos.iter().enumerate() {
        if m.apply(&algebra.unit) != algebra.unit {
            return Err(Error::BadInput(format!(
                "map {idx} is not a unital algebra endomorphism"
            )));
        }
        let images: Vec<Vec<Elem>> = m.columns();
        for i in 0..d {
            for j in 0..d {
                let lhs = m.apply(&algebra.table[i][j]);
                let rhs = algebra.mul(&images[i], &images[j])?;
                if lhs != rhs {
                    return Err(Error::BadInput(format!(
                        "map {idx} is not a unital algebra endomorphism"
                    )));
                }
            }
        }
        match linalg::inverse_or_certificate(m)? {
            InverseOutcome::Inverse(_) => {}
            _ => return Err(Error::BadInput(format!("map {idx} is not invertible"))),
        }
    }
    if !autos.iter().any(|m| m.is_identity()) {
        return Err(Error::BadInput("the identity map is not listed".into()));
    }
    for (i, mi) in autos.iter().enumerate() {
        for (j, mj) in autos.iter().enumerate() {
            let prod = mi.mul(mj);
            if !autos.iter().any(|m| *m == prod) {
                return Err(Error::BadInput(format!(
                    "the list is not closed under composition: map {i} ∘ map {j} is missing"
                )));
            }
        }
    }
    Ok(())
}

/// The trivial Γ-Galois extension `R^n` with the cyclic permutation action
/// (the shift `σ_s: e_j ↦ e_{(j+s) mod n}` for each `s`).
pub fn trivial_galois_extension(ring: &Ring, n: usize) -> Result<GaloisExtensionData> {
    if n == 0 {
        return Err(Error::BadInput(
            "the group must contain at least the identity".into(),
        ));
    }
    let mut table = vec![vec![vec![ring.zero(); n]; n]; n];
    for (i, row) in table.iter_mut().enumerate() {
        row[i][i] = ring.one();
    }
    let unit = vec![ring.one(); n];
    let algebra = StructureConstantAlgebra::new(ring.clone(), table, unit)?;
    let autos = (0..n)
        .map(|s| {
            Matrix::from_fn(ring, n, n, |i, j| {
                if (j + s) % n == i {
                    ring.one()
                } else {
                    ring.zero()
                }
            })
        })
        .collect();
    GaloisExtensionData::new(algebra, autos)
}

/// Verdict of [`is_galois`]: whether the comparison map `S ⊗_R S → ∏_γ S`
/// is bijective, with a witness when it is not.
#[derive(Debug, Clone)]
pub struct GaloisCertificate {
    pub galois: bool,
    /// Side length of the comparison matrix (`|Γ|²`).
    pub comparison_dim: usize,
    pub witness: Option<SingularWitness>,
}

/// Decide whether the extension is Γ-Galois: `S` must be free of rank `|Γ|`
/// (otherwise [`RankMismatch`](Error::RankMismatch)), and the matrix of the
/// comparison map `s⊗t ↦ (s·γ(t))_γ` (row `(γ, m)`, column `(i, j)`, entry
/// = coordinate `m` of `e_i·γ(e_j)`) must be invertible.
pub fn is_galois(ext: &GaloisExtensionData) -> Result<GaloisCertificate> {
    let algebra = &ext.algebra;
    let d = algebra.dim;
    let order = ext.automorphisms.len();
    if d != order {
        return Err(Error::RankMismatch(format!(
            "the algebra has rank {d} but the group has order {order}"
        )));
    }
    let cdim = d * d;
    if let Some(kernel) = FpKernel::from_algebra(algebra) {
        let grids: Option<Vec<Vec<u64>>> = ext
            .automorphisms
            .iter()
            .map(|m| matrix_grid(m, kernel.p))
            .collect();
        if let Some(grids) = grids {
            let mut grid = kernel.comparison_grid(&grids);
            let rank = linalg::fast::rank_u64(&mut grid, cdim, cdim, kernel.p);
            let witness = if rank == cdim {
                None
            } else {
                Some(SingularWitness::At(algebra.ring.max_ideals()?.remove(0)))
            };
            return Ok(GaloisCertificate {
                galois: witness.is_none(),
                comparison_dim: cdim,
                witness,
            });
        }
    }
    let ring = algebra.ring.clone();
    let m = Matrix::from_fn(&algebra.ring, cdim, cdim, |row, col| {
        let (g, m_) = (row / d, row % d);
        let (i, j) = (col / d, col % d);
        let auto = &ext.automorphisms[g];
        let mut acc = ring.zero();
        for l in 0..d {
            let h = auto.at(l, j);
            if ring.is_zero(h) {
                continue;
            }
            let t = &algebra.table[i][l][m_];
            if !ring.is_zero(t) {
                acc = ring.add(&acc, &ring.mul(h, t));
            }
        }
        acc
    });
    let witness = SingularWitness::from_outcome(linalg::inverse_or_certificate(&m)?);
    Ok(GaloisCertificate {
        galois: witness.is_none(),
        comparison_dim: cdim,
        witness,
    })
}

// ---------------------------------------------------------------------------
// Artin–Schreier theory
// ---------------------------------------------------------------------------

/// The characteristic, when it is a prime `p` (so `p·1 = 0` holds).
fn prime_characteristic(ring: &Ring) -> Option<num_bigint::BigInt> {
    let c = ring.characteristic();
    match is_prime(&c) {
        Ok(true) => Some(c),
        _ => None,
    }
}

/// The Artin–Schreier extension `S = R[x]/(x^p − x − a)` of a ring of prime
/// characteristic `p`, on the basis `1, x, …, x^{p−1}`, with the cyclic
/// group `{σ_s : x ↦ x + s}` acting. Every `σ_s` is verified to be an
/// algebra automorphism, `σ_s = σ_1^s`, and `σ_1^p = 1`.
pub fn artin_schreier(ring: &Ring, a: &Elem) -> Result<GaloisExtensionData> {
    let p_big = prime_characteristic(ring).ok_or_else(|| {
        Error::NotCharP(format!("{ring} does not have prime characteristic"))
    })?;
    ring.validate(a)?;
    let p = p_big.to_usize().unwrap_or(usize::MAX);
    if p > MAX_ALGEBRA_DIM {
        return Err(Error::DimensionGuard(p, MAX_ALGEBRA_DIM));
    }

    // Structure constants: x^i·x^j = x^{i+j}, reduced once by
    // x^{p+r} = x^r·(x + a) = x^{r+1} + a·x^r (r ≤ p−2, so no cascade).
    let mut table = vec![vec![vec![ring.zero(); p]; p]; p];
    for i in 0..p {
        for j in 0..p {
            if i + j < p {
                table[i][j][i + j] = ring.one();
            } else {
                let r = i + j - p;
                table[i][j][r] = a.clone();
                table[i][j][r + 1] = ring.add(&table[i][j][r + 1], &ring.one());
            }
        }
    }
    let mut unit = vec![ring.zero(); p];
    unit[0] = ring.one();
    let algebra = StructureConstantAlgebra::new(ring.clone(), table, unit)
        .map_err(|e| Error::Internal(format!("the extension table fails verification: {e}")))?;

    // σ_s: x^j ↦ (x + s)^j = Σ_k C(j,k)·s^{j−k}·x^k (degrees stay < p).
    let mut pascal = vec![vec![0i64; p]; p];
    for j in 0..p {
        pascal[j][0] = 1;
        for k in 1..=j {
            pascal[j][k] = pascal[j - 1][k - 1] + if k <= j - 1 { pascal[j - 1][k] } else { 0 };
        }
    }
    let autos: Vec<Matrix> = (0..p)
        .map(|s| {
            let s_el = ring.from_i64(s as i64);
            Matrix::from_fn(ring, p, p, |k, j| {
                if k > j {
                    ring.zero()
                } else {
                    ring.mul(
                        &ring.from_i64(pascal[j][k]),
                        &ring.pow(&s_el, (j - k) as u64),
                    )
                }
            })
        })
        .collect();
    // The cyclic relations: σ_s = σ_1^s and σ_1^p = 1.
    if p > 1 {
        let sigma = &autos[1];
        let mut acc = Matrix::identity(ring, p);
        for want in &autos {
            if acc != *want {
                return Err(Error::Internal(
                    "the shift maps do not satisfy the cyclic relations".into(),
                ));
            }
            acc = acc.mul(sigma);
        }
        if !acc.is_identity() {
            return Err(Error::Internal("σ^p is not the identity".into()));
        }
    }
    GaloisExtensionData::new(algebra, autos)
        .map_err(|e| Error::Internal(format!("the extension fails verification: {e}")))
}

/// Output of [`artin_schreier_descent`]: the parameter `a` with
/// `S ≅ R[x]/(x^p − x − a)` and the verified isomorphism data.
#[derive(Debug, Clone)]
pub struct DescentResult {
    /// The recovered parameter: `S ≅ R[x]/(x^p − x − a)`.
    pub a: Elem,
    /// Coordinates of the element `x̃` with `σ(x̃) − x̃ = 1` and
    /// `x̃^p − x̃ = a`.
    pub generator: Vec<Elem>,
    /// Index into the automorphism list of the group generator `σ` used.
    pub sigma_index: usize,
    /// Columns are `1, x̃, …, x̃^{p−1}`: the verified change of basis from
    /// the abstract presentation to `S`.
    pub basis_change: Matrix,
}

impl DescentResult {
    /// Re-verify every claim against the extension.
    pub fn verify(&self, ext: &GaloisExtensionData) -> Result<()> {
        let algebra = &ext.algebra;
        let ring = &algebra.ring;
        let d = algebra.dim;
        ring.validate(&self.a)?;
        if self.generator.len() != d {
            return Err(Error::BadInput(
                "generator coordinates must match the algebra rank".into(),
            ));
        }
        let sigma = ext.automorphisms.get(self.sigma_index).ok_or_else(|| {
            Error::BadInput("the generator index is out of range".into())
        })?;
        let moved = sigma.apply(&self.generator);
        let diff: Vec<Elem> = moved
            .iter()
            .zip(self.generator.iter())
            .map(|(x, y)| ring.sub(x, y))
            .collect();
        if diff != algebra.unit {
            return Err(Error::BadInput("σ(x̃) − x̃ ≠ 1".into()));
        }
        let p = d as u64;
        let frob = algebra.pow(&self.generator, p)?;
        let wanted: Vec<Elem> = frob
            .iter()
            .zip(self.generator.iter())
            .zip(algebra.unit.iter())
            .map(|((xp, x), u)| ring.sub(&ring.sub(xp, x), &ring.mul(&self.a, u)))
            .collect();
        if wanted.iter().any(|c| !ring.is_zero(c)) {
            return Err(Error::BadInput("x̃^p − x̃ ≠ a·1".into()));
        }
        let mut power = algebra.one();
        for j in 0..d {
            for i in 0..d {
                if self.basis_change.at(i, j) != &power[i] {
                    return Err(Error::BadInput(
                        "the basis-change columns are not the powers of x̃".into(),
                    ));
                }
            }
            if j + 1 < d {
                power = algebra.mul(&power, &self.generator)?;
            }
        }
        match linalg::inverse_or_certificate(&self.basis_change)? {
            InverseOutcome::Inverse(_) => Ok(()),
            _ => Err(Error::BadInput(
                "the powers of x̃ do not form a basis".into(),
            )),
        }
    }
}

/// Recover the Artin–Schreier presentation of a cyclic-`p` Galois extension
/// of a prime-characteristic ring: solve `(σ − 1)·x̃ = 1` in `S`, return
/// `a = x̃^p − x̃` (verified to land in `R`) and the basis of powers of `x̃`.
pub fn artin_schreier_descent(ext: &GaloisExtensionData) -> Result<DescentResult> {
    let algebra = &ext.algebra;
    let ring = &algebra.ring;
    let d = algebra.dim;
    let p_big = prime_characteristic(ring).ok_or_else(|| {
        Error::NotCharP(format!("{ring} does not have prime characteristic"))
    })?;

    let cert = is_galois(ext)?;
    if !cert.galois {
        let detail = cert
            .witness
            .map(|w| w.describe())
            .unwrap_or_else(|| "the comparison map is singular".into());
        return Err(Error::BadInput(format!(
            "descent needs a Galois extension; {detail}"
        )));
    }
    if p_big.to_usize() != Some(d) {
        return Err(Error::NotCyclicP(format!(
            "the group has order {d} but the characteristic is {p_big}"
        )));
    }
    let p = d;

    // Pick a non-identity element and check the list is exactly its powers.
    let sigma_index = ext
        .automorphisms
        .iter()
        .position(|m| !m.is_identity())
        .ok_or_else(|| Error::NotCyclicP("every listed map is the identity".into()))?;
    let sigma = &ext.automorphisms[sigma_index];
    let mut used = vec![false; p];
    let mut acc = Matrix::identity(ring, d);
    for _ in 0..p {
        let slot = ext
            .automorphisms
            .iter()
            .enumerate()
            .position(|(idx, m)| !used[idx] && *m == acc)
            .ok_or_else(|| {
                Error::NotCyclicP("the maps are not the powers of one generator".into())
            })?;
        used[slot] = true;
        acc = acc.mul(sigma);
    }
    if !acc.is_identity() {
        return Err(Error::NotCyclicP(
            "the generator's order does not equal the characteristic".into(),
        ));
    }

    // Solve (σ − 1)·x̃ = 1.
    let system = Matrix::from_fn(ring, d, d, |i, j| {
        let shift = sigma.at(i, j).clone();
        if i == j {
            ring.sub(&shift, &ring.one())
        } else {
            shift
        }
    });
    let x = linalg::solve_semilocal(&system, &algebra.unit)?.ok_or_else(|| {
        Error::NoSolution("(σ − 1)·x = 1 has no solution in the extension".into())
    })?;

    // a = x̃^p − x̃ must be an R-multiple of 1.
    let frob = algebra.pow(&x, p as u64)?;
    let a_vec: Vec<Elem> = frob
        .iter()
        .zip(x.iter())
        .map(|(xp, xi)| ring.sub(xp, xi))
        .collect();
    let unit_col = Matrix::from_cols(ring, d, &[algebra.unit.clone()]);
    let a = linalg::solve_semilocal(&unit_col, &a_vec)?
        .ok_or_else(|| Error::Internal("x̃^p − x̃ does not land in the base ring".into()))?
        .remove(0);

    // Change of basis: the powers of x̃.
    let mut cols = Vec::with_capacity(d);
    let mut power = algebra.one();
    for j in 0..d {
        cols.push(power.clone());
        if j + 1 < d {
            power = algebra.mul(&power, &x)?;
        }
    }
    let basis_change = Matrix::from_cols(ring, d, &cols);
    match linalg::inverse_or_certificate(&basis_change)? {
        InverseOutcome::Inverse(_) => {}
        _ => {
            return Err(Error::Internal(
                "the powers of x̃ do not form a basis".into(),
            ))
        }
    }
    let result = DescentResult {
        a,
        generator: x,
        sigma_index,
        basis_change,
    };
    result
        .verify(ext)
        .map_err(|e| Error::Internal(format!("descent output fails verification: {e}")))?;
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn f5() -> Ring {
        Ring::prime_field(int(5)).unwrap()
    }

    fn zmod(n: i64) -> Ring {
        Ring::zmod(int(n)).unwrap()
    }

    /// Every element of a finite menu ring, for exhaustive oracles.
    fn all_elements(ring: &Ring) -> Vec<Elem> {
        match ring {
            Ring::ZMod { n } | Ring::PrimeField { p: n } => {
                let n = n.to_i64().unwrap();
                (0..n).map(|v| ring.from_i64(v)).collect()
            }
            Ring::ExtField { p, f } => {
                let p = p.to_i64().unwrap();
                let mut coeffs: Vec<Vec<BigInt>> = vec![Vec::new()];
                for _ in 0..f.len() - 1 {
                    coeffs = coeffs
                        .into_iter()
                        .flat_map(|v| {
                            (0..p).map(move |c| {
                                let mut w = v.clone();
                                w.push(int(c));
                                w
                            })
                        })
                        .collect();
                }
                coeffs.into_iter().map(Elem::Pol).collect()
            }
            Ring::Product { factors } => {
                let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
                for factor in factors {
                    let elems = all_elements(factor);
                    tuples = tuples
                        .into_iter()
                        .flat_map(|v| {
                            elems.iter().map(move |e| {
                                let mut w = v.clone();
                                w.push(e.clone());
                                w
                            })
                        })
                        .collect();
                }
                tuples.into_iter().map(Elem::Tup).collect()
            }
            _ => unreachable!("only finite menu rings appear in these tests"),
        }
    }

    /// A three-dimensional table with a working unit but a broken product:
    /// (e₁·e₁)·e₁ = e₂·e₁ = e₁ while e₁·(e₁·e₁) = e₁·e₂ = 0.
    fn non_associative_table(ring: &Ring) -> (Vec<Vec<Vec<Elem>>>, Vec<Elem>) {
        let z = || ring.zero();
        let o = || ring.one();
        let e = |i: usize| {
            let mut v = vec![z(), z(), z()];
            v[i] = o();
            v
        };
        let zero = || vec![z(), z(), z()];
        let table = vec![
            vec![e(0), e(1), e(2)],
            vec![e(1), e(2), zero()],
            vec![e(2), e(1), zero()],
        ];
        (table, e(0))
    }

    #[test]
    fn quaternion_structure_constants_match_the_defining_relations() {
        let r = f5();
        let rho = RootOfUnity::new(&r, &r.from_i64(4), 2).unwrap();
        let minus_one = r.from_i64(4);
        let a = symbol_algebra(&minus_one, &minus_one, &rho).unwrap();
        assert_eq!(a.dim, 4);
        // Basis x^i·y^j at index 2i + j: x = e₂, y = e₁, xy = e₃.
        let coeff = |v: &[Elem], slot: usize, want: i64| {
            assert_eq!(v[slot], r.from_i64(want));
            for (m, c) in v.iter().enumerate() {
                if m != slot {
                    assert!(r.is_zero(c), "unexpected coordinate {m}");
                }
            }
        };
        coeff(&a.table[2][2], 0, 4); // x² = −1
        coeff(&a.table[1][1], 0, 4); // y² = −1
        coeff(&a.table[2][1], 3, 1); // x·y = xy
        coeff(&a.table[1][2], 3, 4); // y·x = −xy
    }

    #[test]
    fn matrix_algebras_pass_the_sandwich_criterion() {
        let m2 = StructureConstantAlgebra::matrix_algebra(&zmod(15), 2).unwrap();
        let cert = is_azumaya(&m2).unwrap();
        assert!(cert.azumaya);
        assert_eq!(cert.sandwich_dim, 16);
        assert!(cert.witness.is_none());

        let r = zmod(12);
        let rank_one =
            StructureConstantAlgebra::new(r.clone(), vec![vec![vec![r.one()]]], vec![r.one()])
                .unwrap();
        assert!(is_azumaya(&rank_one).unwrap().azumaya);
    }

    #[test]
    fn dual_numbers_fail_the_sandwich_criterion_with_a_witness() {
        // Machine-word route over a prime field.
        let over_field = StructureConstantAlgebra::dual_numbers(&f5()).unwrap();
        let cert = is_azumaya(&over_field).unwrap();
        assert!(!cert.azumaya);
        assert!(matches!(cert.witness, Some(SingularWitness::At(_))));

        // Semilocal route over Z/9 names the maximal ideal (3).
        let over_zmod = StructureConstantAlgebra::dual_numbers(&zmod(9)).unwrap();
        let cert = is_azumaya(&over_zmod).unwrap();
        assert!(!cert.azumaya);
        match cert.witness {
            Some(SingularWitness::At(h)) => assert_eq!(h.residue_char, int(3)),
            w => panic!("expected an ideal witness, got {w:?}"),
        }

        // A base without ideal enumeration reports the non-unit determinant.
        let order = Ring::quad_order(int(-5)).unwrap();
        let over_order = StructureConstantAlgebra::dual_numbers(&order).unwrap();
        let cert = is_azumaya(&over_order).unwrap();
        assert!(!cert.azumaya);
        match cert.witness {
            Some(SingularWitness::NonUnitDet(d)) => assert!(order.is_zero(&d)),
            w => panic!("expected a determinant witness, got {w:?}"),
        }
    }

    #[test]
    fn construction_rejects_broken_tables_on_both_arithmetic_routes() {
        // Machine-word verification (prime field) and generic (Z/6).
        for r in [f5(), zmod(6)] {
            let (table, unit) = non_associative_table(&r);
            match StructureConstantAlgebra::new(r.clone(), table, unit) {
                Err(Error::InvalidAlgebra(msg)) => {
                    assert!(msg.contains("associativity"), "{msg}")
                }
                other => panic!("expected an associativity failure, got {other:?}"),
            }

            // e₀·e₀ = 0 with unit e₀ breaks the unit law.
            let result = StructureConstantAlgebra::new(
                r.clone(),
                vec![vec![vec![r.zero()]]],
                vec![r.one()],
            );
            match result {
                Err(Error::InvalidAlgebra(msg)) => assert!(msg.contains("unit"), "{msg}"),
                other => panic!("expected a unit-law failure, got {other:?}"),
            }
        }

        let r = f5();
        assert!(matches!(
            StructureConstantAlgebra::new(r.clone(), vec![], vec![]),
            Err(Error::InvalidAlgebra(_))
        ));
        // A ragged table is rejected before any arithmetic.
        assert!(matches!(
            StructureConstantAlgebra::new(
                r.clone(),
                vec![vec![vec![r.one()], vec![r.one(), r.zero()]]],
                vec![r.one()],
            ),
            Err(Error::InvalidAlgebra(_))
        ));
        assert!(matches!(
            StructureConstantAlgebra::matrix_algebra(&r, 6),
            Err(Error::DimensionGuard(36, MAX_ALGEBRA_DIM))
        ));
    }

    #[test]
    fn root_of_unity_checks_primitivity_and_unit_order() {
        let r = f5();
        assert!(RootOfUnity::new(&r, &r.from_i64(2), 4).is_ok());
        // 4² = 1, so 4 has order 2, not 4: ρ² − 1 is not a unit.
        assert!(matches!(
            RootOfUnity::new(&r, &r.from_i64(4), 4),
            Err(Error::BadRoot(_))
        ));
        // 2⁵ = 2 ≠ 1.
        assert!(matches!(
            RootOfUnity::new(&r, &r.from_i64(2), 5),
            Err(Error::BadRoot(_))
        ));
        // 5² = 1 mod 6, but the order 2 is not a unit in Z/6.
        let r6 = zmod(6);
        assert!(matches!(
            RootOfUnity::new(&r6, &r6.from_i64(5), 2),
            Err(Error::BadRoot(_))
        ));
        let f7 = Ring::prime_field(int(7)).unwrap();
        assert!(RootOfUnity::new(&f7, &f7.from_i64(2), 3).is_ok());
        let f13 = Ring::prime_field(int(13)).unwrap();
        assert!(RootOfUnity::new(&f13, &f13.from_i64(3), 3).is_ok());
    }

    #[test]
    fn symbol_algebra_requires_unit_slots() {
        let r = f5();
        let rho = RootOfUnity::new(&r, &r.from_i64(4), 2).unwrap();
        assert!(matches!(
            symbol_algebra(&r.zero(), &r.one(), &rho),
            Err(Error::NotAUnit(_))
        ));
        assert!(matches!(
            symbol_algebra(&r.one(), &r.zero(), &rho),
            Err(Error::NotAUnit(_))
        ));
    }

    #[test]
    fn quaternion_splitting_matches_the_exhaustive_isotropy_oracle() {
        // (a,b) over a field of odd size splits exactly when z² = a·u² + b·v²
        // has a nontrivial solution; check the solver against brute force on
        // every unit pair over F₅.
        let r = f5();
        let rho = RootOfUnity::new(&r, &r.from_i64(4), 2).unwrap();
        for a_raw in 1..5 {
            for b_raw in 1..5 {
                let (a, b) = (r.from_i64(a_raw), r.from_i64(b_raw));
                let mut isotropic = false;
                for z in 0..5 {
                    for u in 0..5 {
                        for v in 0..5 {
                            if (z, u, v) == (0, 0, 0) {
                                continue;
                            }
                            if (z * z - a_raw * u * u - b_raw * v * v) % 5 == 0 {
                                isotropic = true;
                            }
                        }
                    }
                }
                let alg = symbol_algebra(&a, &b, &rho).unwrap();
                assert!(is_azumaya(&alg).unwrap().azumaya, "({a_raw},{b_raw})");
                let split = split_over_finite_field(&alg, 7);
                match split {
                    Ok(cert) => {
                        assert!(isotropic, "split a non-isotropic pair ({a_raw},{b_raw})");
                        assert_eq!(cert.n, 2);
                        cert.verify(&alg).unwrap();
                    }
                    Err(Error::SearchExhausted { .. }) => {
                        assert!(!isotropic, "missed a split for ({a_raw},{b_raw})")
                    }
                    Err(e) => panic!("unexpected error for ({a_raw},{b_raw}): {e}"),
                }
            }
        }
    }

    #[test]
    fn symbol_algebras_split_over_extension_fields() {
        // F₉ = F₃[t]/(t²+1); the pair (t+1, t+1) exercises the generic
        // (non-machine-word) arithmetic end to end.
        let r = Ring::ext_field(int(3), vec![int(1), int(0), int(1)]).unwrap();
        let minus_one = r.from_i64(-1);
        let rho = RootOfUnity::new(&r, &minus_one, 2).unwrap();
        let g = Elem::Pol(vec![int(1), int(1)]);
        let alg = symbol_algebra(&g, &g, &rho).unwrap();
        assert!(is_azumaya(&alg).unwrap().azumaya);
        let cert = split_over_finite_field(&alg, 11).unwrap();
        assert_eq!(cert.n, 2);
        cert.verify(&alg).unwrap();
    }

    #[test]
    fn commutative_quartic_algebras_are_recognized_as_unsplittable() {
        // F₄ ⊕ F₄ as an F₂-algebra: dimension 4 but nothing like M₂(F₂).
        let r = Ring::prime_field(int(2)).unwrap();
        let z = || r.zero();
        let o = || r.one();
        let block = |offset: usize, coords: [i64; 2]| {
            let mut v = vec![z(), z(), z(), z()];
            v[offset] = r.from_i64(coords[0]);
            v[offset + 1] = r.from_i64(coords[1]);
            v
        };
        let zero4 = || vec![z(), z(), z(), z()];
        // Within a block: 1·1 = 1, 1·ω = ω, ω·ω = 1 + ω; across blocks: 0.
        let table = vec![
            vec![block(0, [1, 0]), block(0, [0, 1]), zero4(), zero4()],
            vec![block(0, [0, 1]), block(0, [1, 1]), zero4(), zero4()],
            vec![zero4(), zero4(), block(2, [1, 0]), block(2, [0, 1])],
            vec![zero4(), zero4(), block(2, [0, 1]), block(2, [1, 1])],
        ];
        let mut unit = zero4();
        unit[0] = o();
        unit[2] = o();
        let alg = StructureConstantAlgebra::new(r, table, unit).unwrap();
        assert!(!is_azumaya(&alg).unwrap().azumaya);
        match split_over_finite_field(&alg, 3) {
            Err(Error::SearchExhausted { tried, seed }) => {
                assert!(tried >= 1);
                assert_eq!(seed, 3);
            }
            other => panic!("expected the search to certify exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn tensor_products_multiply_like_brauer_classes() {
        let r = f5();
        let rho = RootOfUnity::new(&r, &r.from_i64(4), 2).unwrap();
        let q1 = symbol_algebra(&r.from_i64(2), &r.from_i64(3), &rho).unwrap();
        let q2 = symbol_algebra(&r.from_i64(2), &r.from_i64(2), &rho).unwrap();
        let t = q1.tensor_product(&q2).unwrap();
        assert_eq!(t.dim, 16);
        assert!(is_azumaya(&t).unwrap().azumaya);
        let cert = split_over_finite_field(&t, 5).unwrap();
        assert_eq!(cert.n, 4);
        cert.verify(&t).unwrap();

        let other = StructureConstantAlgebra::dual_numbers(&Ring::prime_field(int(7)).unwrap())
            .unwrap();
        assert!(matches!(
            q1.tensor_product(&other),
            Err(Error::MismatchedRing(_))
        ));
    }

    #[test]
    fn degree_three_symbols_over_f13_split() {
        let r = Ring::prime_field(int(13)).unwrap();
        let rho = RootOfUnity::new(&r, &r.from_i64(3), 3).unwrap();
        let alg = symbol_algebra(&r.from_i64(2), &r.from_i64(3), &rho).unwrap();
        assert_eq!(alg.dim, 9);
        let cert = is_azumaya(&alg).unwrap();
        assert!(cert.azumaya);
        assert_eq!(cert.sandwich_dim, 81);
        let split = split_over_finite_field(&alg, 17).unwrap();
        assert_eq!(split.n, 3);
        split.verify(&alg).unwrap();
    }

    #[test]
    fn trivial_extensions_are_galois_over_any_semilocal_base() {
        let ext = trivial_galois_extension(&zmod(6), 3).unwrap();
        let cert = is_galois(&ext).unwrap();
        assert!(cert.galois);
        assert_eq!(cert.comparison_dim, 9);
        assert!(cert.witness.is_none());

        let f2 = Ring::prime_field(int(2)).unwrap();
        assert!(is_galois(&trivial_galois_extension(&f2, 4).unwrap())
            .unwrap()
            .galois);
    }

    #[test]
    fn non_faithful_actions_fail_the_comparison_criterion() {
        // Dual numbers with the trivial C₂ action: the data is admissible
        // (identity twice is a closed list) but the comparison map repeats
        // rows, so the extension is not Galois.
        let r = Ring::prime_field(int(3)).unwrap();
        let dual = StructureConstantAlgebra::dual_numbers(&r).unwrap();
        let id = Matrix::identity(&r, 2);
        let ext = GaloisExtensionData::new(dual, vec![id.clone(), id]).unwrap();
        let cert = is_galois(&ext).unwrap();
        assert!(!cert.galois);
        assert!(matches!(cert.witness, Some(SingularWitness::At(_))));
    }

    #[test]
    fn rank_must_match_the_group_order() {
        let r = Ring::prime_field(int(3)).unwrap();
        let dual = StructureConstantAlgebra::dual_numbers(&r).unwrap();
        let ext = GaloisExtensionData::new(dual, vec![Matrix::identity(&r, 2)]).unwrap();
        assert!(matches!(is_galois(&ext), Err(Error::RankMismatch(_))));
    }

    #[test]
    fn automorphism_lists_are_verified_before_acceptance() {
        let r = f5();
        let dual = StructureConstantAlgebra::dual_numbers(&r).unwrap();
        let id = Matrix::identity(&r, 2);

        // ε ↦ 1 is not multiplicative: σ(ε)² = 1 but σ(ε²) = 0.
        let bad = Matrix::from_raw(
            r.clone(),
            2,
            2,
            vec![r.one(), r.one(), r.zero(), r.zero()],
        );
        match GaloisExtensionData::new(dual.clone(), vec![id.clone(), bad]) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("endomorphism"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }

        // ε ↦ 0 is an endomorphism but not invertible.
        let squash = Matrix::from_raw(
            r.clone(),
            2,
            2,
            vec![r.one(), r.zero(), r.zero(), r.zero()],
        );
        match GaloisExtensionData::new(dual.clone(), vec![id.clone(), squash]) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("invertible"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }

        // A shift alone is not closed under composition (its square is absent).
        let shifted = trivial_galois_extension(&r, 3).unwrap();
        let sigma = shifted.automorphisms[1].clone();
        match GaloisExtensionData::new(shifted.algebra.clone(), vec![id3(&r), sigma]) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("closed"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }

        // The generic route performs the same checks (Z/6 has no
        // machine-word mirror).
        let r6 = zmod(6);
        let trivial = trivial_galois_extension(&r6, 2).unwrap();
        let swap_to_zero = Matrix::from_raw(
            r6.clone(),
            2,
            2,
            vec![r6.one(), r6.one(), r6.zero(), r6.zero()],
        );
        match GaloisExtensionData::new(trivial.algebra.clone(), vec![swap_to_zero]) {
            Err(Error::BadInput(_)) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    fn id3(r: &Ring) -> Matrix {
        Matrix::identity(r, 3)
    }

    #[test]
    fn artin_schreier_requires_prime_characteristic() {
        for ring in [
            Ring::local_int(int(3)).unwrap(),
            zmod(4),
            Ring::quad_order(int(-1)).unwrap(),
            Ring::product(vec![
                Ring::prime_field(int(2)).unwrap(),
                Ring::prime_field(int(3)).unwrap(),
            ])
            .unwrap(),
        ] {
            let a = ring.zero();
            assert!(
                matches!(artin_schreier(&ring, &a), Err(Error::NotCharP(_))),
                "{ring} should not have prime characteristic"
            );
        }
        let f37 = Ring::prime_field(int(37)).unwrap();
        assert!(matches!(
            artin_schreier(&f37, &f37.zero()),
            Err(Error::DimensionGuard(37, MAX_ALGEBRA_DIM))
        ));
    }

    #[test]
    fn artin_schreier_extensions_are_galois_and_descend_to_the_parameter() {
        // Over every small ring of prime characteristic: construct the
        // extension for every parameter a, confirm it is Galois, run the
        // descent, and check a against the recovered parameter with an
        // exhaustive coset oracle (they must differ by some c^p − c).
        let rings = vec![
            Ring::prime_field(int(2)).unwrap(),
            Ring::prime_field(int(3)).unwrap(),
            zmod(2),
            zmod(3),
            Ring::ext_field(int(2), vec![int(1), int(1), int(1)]).unwrap(),
            Ring::ext_field(int(3), vec![int(1), int(0), int(1)]).unwrap(),
            Ring::product(vec![
                Ring::prime_field(int(3)).unwrap(),
                Ring::prime_field(int(3)).unwrap(),
            ])
            .unwrap(),
            Ring::product(vec![zmod(2), zmod(2)]).unwrap(),
        ];
        for ring in rings {
            let p = prime_characteristic(&ring).unwrap().to_u64().unwrap();
            let elements = all_elements(&ring);
            for a in &elements {
                let ext = artin_schreier(&ring, a).unwrap();
                assert!(
                    is_galois(&ext).unwrap().galois,
                    "extension by {a} over {ring} is not Galois"
                );
                let descent = artin_schreier_descent(&ext).unwrap();
                descent.verify(&ext).unwrap();
                let difference = ring.sub(a, &descent.a);
                let in_image = elements
                    .iter()
                    .any(|c| ring.sub(&ring.pow(c, p), c) == difference);
                assert!(
                    in_image,
                    "over {ring}: recovered {} from {a}, not equivalent",
                    descent.a
                );
            }
        }
    }

    #[test]
    fn descent_rejects_wrong_group_shapes() {
        let f2 = Ring::prime_field(int(2)).unwrap();
        // Galois, but the group has order 4 while the characteristic is 2.
        let quadruple = trivial_galois_extension(&f2, 4).unwrap();
        assert!(matches!(
            artin_schreier_descent(&quadruple),
            Err(Error::NotCyclicP(_))
        ));

        // Not Galois at all: the trivial action on the dual numbers.
        let r = Ring::prime_field(int(3)).unwrap();
        let dual = StructureConstantAlgebra::dual_numbers(&r).unwrap();
        let id = Matrix::identity(&r, 2);
        let ext = GaloisExtensionData::new(dual, vec![id.clone(), id]).unwrap();
        match artin_schreier_descent(&ext) {
            Err(Error::BadInput(msg)) => assert!(msg.contains("Galois"), "{msg}"),
            other => panic!("expected rejection, got {other:?}"),
        }

        // Characteristic zero is rejected before any linear algebra.
        let local = trivial_galois_extension(&Ring::local_int(int(3)).unwrap(), 3).unwrap();
        assert!(matches!(
            artin_schreier_descent(&local),
            Err(Error::NotCharP(_))
        ));
    }

    #[test]
    fn split_extensions_descend_to_a_trivial_parameter() {
        // R × R with the swap is the Artin–Schreier extension for a = 0
        // (up to the coset): over F₂ the recovered parameter must be 0.
        let f2 = Ring::prime_field(int(2)).unwrap();
        let ext = trivial_galois_extension(&f2, 2).unwrap();
        let descent = artin_schreier_descent(&ext).unwrap();
        assert!(f2.is_zero(&descent.a));
        descent.verify(&ext).unwrap();
    }

    #[test]
    fn two_digit_characteristics_run_through_the_machine_word_kernel() {
        let r = Ring::prime_field(int(13)).unwrap();
        for a_raw in [0i64, 1, 5] {
            let a = r.from_i64(a_raw);
            let ext = artin_schreier(&r, &a).unwrap();
            assert_eq!(ext.algebra.dim, 13);
            let cert = is_galois(&ext).unwrap();
            assert!(cert.galois);
            assert_eq!(cert.comparison_dim, 169);
            // Over a prime field c ↦ c^p − c is identically zero, so the
            // descent must recover the parameter exactly.
            let descent = artin_schreier_descent(&ext).unwrap();
            assert_eq!(descent.a, a);
        }
    }
}
