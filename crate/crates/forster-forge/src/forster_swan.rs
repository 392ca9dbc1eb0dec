//! Constructive generator algorithms over semilocal rings.
//!
//! Five operations, all exact and all returning data that can be re-verified
//! after the fact:
//!
//! * [`extend_generator`] — given elements whose span is deficient at a set
//!   `S` of maximal ideals, produce one new element that raises the span
//!   dimension by exactly 1 at *every* ideal of `S` simultaneously. The new
//!   element is a CRT lift of per-fiber escape vectors (unit coordinate
//!   vectors tried first, then exhaustive fiber enumeration) and of `0` at
//!   the ideals not in `S`.
//! * [`minimal_generators`] — repeated extension from the empty list. The
//!   loop runs exactly `max_p dim M(p)` times, which is the minimal possible
//!   generator count: every generating set must span the largest fiber.
//! * [`lift_generators`] — given an ideal `I` and elements `b` generating
//!   `M/IM`, produce generators `a` of `M` with `a_i ≡ b_i (mod I·M)`; each
//!   correction is exhibited as an explicit combination `Σ_k g_k·v_{i,k}`
//!   over the given generators of `I`, so membership in `I·M` is checkable
//!   by multiplication alone. At ideals containing `I` the corrections
//!   vanish identically; at the others `I` acts invertibly on the fiber and
//!   a residue system pins the correction down.
//! * [`stable_range_reduce`] — one stable-range-1 step: shorten a
//!   unimodular row by folding the last entry into the first `m-1` with CRT
//!   coefficients (`0` where the prefix already survives, `1` on the first
//!   slot where it dies).
//! * [`ideal_two_generators`] — two-element generation of a nonzero ideal
//!   in a maximal quadratic order: `x` a minimal-norm element, `y` chosen by
//!   prime avoidance at the finitely many primes dividing `(x)·I⁻¹`, with
//!   the result certified by Hermite-normal-form equality.

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::modules::{crt_lift_vector, ModulePresentation};
use crate::ring::quad::{first_element_avoiding, minimal_norm_element, QuadIdeal};
use crate::ring::{Elem, MaxIdealHandle, Ring};

// ---------------------------------------------------------------------------
// Generator extension (the CRT step)
// ---------------------------------------------------------------------------

/// Rank of the stacked residue matrix `[relations; elems; extra]` at `p`.
fn stacked_residue_rank(
    m: &ModulePresentation,
    p: &MaxIdealHandle,
    elems: &[Vec<Elem>],
    extra: Option<&[Elem]>,
) -> Result<usize> {
    let k = &p.residue_field;
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    let rel = m.relations.residue(p)?;
    for i in 0..rel.rows {
        rows.push(rel.row(i));
    }
    for e in elems {
        rows.push(m.residue_vector(e, p)?);
    }
    if let Some(x) = extra {
        rows.push(x.to_vec());
    }
    let mat = Matrix::from_fn(k, rows.len(), m.ambient, |i, j| rows[i][j].clone());
    linalg::rank(&mat)
}

/// A residue vector at `p` whose class lies outside the span of `elems` in
/// the fiber `M(p)`. Unit coordinate vectors are tried first (one always
/// works, since they generate the fiber and the span is proper); the
/// exhaustive residue-field sweep behind them is a defensive fallback.
fn fiber_escape_vector(
    m: &ModulePresentation,
    p: &MaxIdealHandle,
    elems: &[Vec<Elem>],
) -> Result<Vec<Elem>> {
    let k = &p.residue_field;
    let base = stacked_residue_rank(m, p, elems, None)?;
    for j in 0..m.ambient {
        let mut v = vec![k.zero(); m.ambient];
        v[j] = k.one();
        if stacked_residue_rank(m, p, elems, Some(&v))? > base {
            return Ok(v);
        }
    }
    let scalars = k.elements()?;
    let mut odometer = vec![0usize; m.ambient];
    loop {
        let v: Vec<Elem> = odometer.iter().map(|&i| scalars[i].clone()).collect();
        if stacked_residue_rank(m, p, elems, Some(&v))? > base {
            return Ok(v);
        }
        let mut pos = 0;
        loop {
            if pos == m.ambient {
                return Err(Error::Internal(
                    "no fiber vector escapes a proper subspace".into(),
                ));
            }
            odometer[pos] += 1;
            if odometer[pos] < scalars.len() {
                break;
            }
            odometer[pos] = 0;
            pos += 1;
        }
    }
}

/// One generator-extension step: a module element whose class raises the
/// span dimension by exactly 1 at every ideal in `S` and leaves the span
/// untouched elsewhere (its residue there is 0).
///
/// Precondition (checked): at every `p ∈ S` the current span is a *proper*
/// subspace of the fiber. With `S` empty the conclusion is vacuous and the
/// zero element is returned.
pub fn extend_generator(
    m: &ModulePresentation,
    s: &[MaxIdealHandle],
    elems: &[Vec<Elem>],
) -> Result<Vec<Elem>> {
    let ring = &m.ring;
    for p in s {
        let span = m.span_dim_at(elems, p)?;
        let fiber = m.fiber_dim(p)?;
        if span >= fiber {
            return Err(Error::PreconditionViolated {
                ideal: p.label(),
                detail: format!(
                    "span dimension {span} already equals the fiber dimension {fiber}"
                ),
            });
        }
    }
    if s.is_empty() {
        return Ok(vec![ring.zero(); m.ambient]);
    }
    let mut targets: Vec<(MaxIdealHandle, Vec<Elem>)> = Vec::new();
    for p in ring.max_ideals()? {
        let v = if s.contains(&p) {
            fiber_escape_vector(m, &p, elems)?
        } else {
            vec![p.residue_field.zero(); m.ambient]
        };
        targets.push((p, v));
    }
    let new_elem = crt_lift_vector(ring, m.ambient, &targets)?;
    // Post-verification: +1 at every p ∈ S, unchanged elsewhere.
    let mut extended: Vec<Vec<Elem>> = elems.to_vec();
    extended.push(new_elem.clone());
    for (p, _) in &targets {
        let before = m.span_dim_at(elems, p)?;
        let after = m.span_dim_at(&extended, p)?;
        let want = if s.contains(p) { before + 1 } else { before };
        if after != want {
            return Err(Error::Internal(format!(
                "extension changed the span at {} from {before} to {after}, wanted {want}",
                p.label()
            )));
        }
    }
    Ok(new_elem)
}

// ---------------------------------------------------------------------------
// Minimal generators
// ---------------------------------------------------------------------------

/// Result of [`minimal_generators`]: the generators, the generator count
/// (equal to the largest fiber dimension), and an ideal attaining it — the
/// witness that no shorter generating set can exist.
#[derive(Debug, Clone)]
pub struct MinimalGenerators {
    pub generators: Vec<Vec<Elem>>,
    pub count: usize,
    pub attaining_ideal: MaxIdealHandle,
    /// Fiber dimensions at every maximal ideal, for the certificate.
    pub fiber_dims: Vec<(MaxIdealHandle, usize)>,
}

/// A generating set of minimal length: exactly `max_p dim M(p)` elements,
/// built by repeated [`extend_generator`] steps from the empty list.
pub fn minimal_generators(m: &ModulePresentation) -> Result<MinimalGenerators> {
    let ring = &m.ring;
    let ideals = ring.max_ideals()?;
    let mut fiber_dims = Vec::with_capacity(ideals.len());
    for p in &ideals {
        fiber_dims.push((p.clone(), m.fiber_dim(p)?));
    }
    let (count, attaining_ideal) = m.max_fiber_dim()?;
    let mut gens: Vec<Vec<Elem>> = Vec::new();
    for _ in 0..count {
        let mut s = Vec::new();
        for p in &ideals {
            if m.span_dim_at(&gens, p)? < m.fiber_dim(p)? {
                s.push(p.clone());
            }
        }
        if s.is_empty() {
            return Err(Error::Internal(
                "span saturated before reaching the fiber bound".into(),
            ));
        }
        gens.push(extend_generator(m, &s, &gens)?);
    }
    if let Some(w) = m.non_generating_witness(&gens)? {
        return Err(Error::Internal(format!(
            "minimal generator construction fails to generate at {}",
            w.label()
        )));
    }
    Ok(MinimalGenerators {
        generators: gens,
        count,
        attaining_ideal,
        fiber_dims,
    })
}

// ---------------------------------------------------------------------------
// Lifting generators through an ideal
// ---------------------------------------------------------------------------

/// `M/IM` as a presentation: the relations of `M` plus the rows `g_k·e_j`
/// for every generator `g_k` of `I` and every coordinate `j`.
pub fn quotient_by_ideal(m: &ModulePresentation, ideal_gens: &[Elem]) -> Result<ModulePresentation> {
    let ring = &m.ring;
    for g in ideal_gens {
        ring.validate(g)?;
    }
    let t = m.ambient;
    let extra = Matrix::from_fn(ring, ideal_gens.len() * t, t, |i, j| {
        let k = i / t;
        if i % t == j {
            ideal_gens[k].clone()
        } else {
            ring.zero()
        }
    });
    ModulePresentation::new(ring.clone(), t, m.relations.vstack(&extra))
}

/// Result of [`lift_generators`]. The corrections certify membership in
/// `I·M`: `generators[i] = b[i] + Σ_k ideal_gens[k] · corrections[i][k]`
/// with each `corrections[i][k]` a plain module element.
#[derive(Debug, Clone)]
pub struct LiftedGenerators {
    pub generators: Vec<Vec<Elem>>,
    pub corrections: Vec<Vec<Vec<Elem>>>,
}

impl LiftedGenerators {
    /// Recompute `b_i + Σ_k g_k·v_{i,k}` and compare with the stored
    /// generators; then confirm the generators generate `M` and the inputs
    /// generated `M/IM`. This is the full certificate check.
    pub fn verify(
        &self,
        m: &ModulePresentation,
        ideal_gens: &[Elem],
        b: &[Vec<Elem>],
    ) -> Result<()> {
        let ring = &m.ring;
        if self.generators.len() != b.len() || self.corrections.len() != b.len() {
            return Err(Error::DimensionMismatch(
                "certificate length differs from the input list".into(),
            ));
        }
        for i in 0..b.len() {
            if self.corrections[i].len() != ideal_gens.len() {
                return Err(Error::DimensionMismatch(
                    "one correction vector per ideal generator is required".into(),
                ));
            }
            let mut acc = b[i].clone();
            for (g, v) in ideal_gens.iter().zip(&self.corrections[i]) {
                for (a, x) in acc.iter_mut().zip(v) {
                    *a = ring.add(a, &ring.mul(g, x));
                }
            }
            if acc != self.generators[i] {
                return Err(Error::Internal(format!(
                    "correction {i} does not reproduce the lifted generator"
                )));
            }
        }
        if let Some(w) = m.non_generating_witness(&self.generators)? {
            return Err(Error::NotGenerating { ideal: w.label() });
        }
        let q = quotient_by_ideal(m, ideal_gens)?;
        if let Some(w) = q.non_generating_witness(b)? {
            return Err(Error::NotGeneratingModI { ideal: w.label() });
        }
        Ok(())
    }
}

/// Lift elements generating `M/IM` to generators of `M`, keeping each
/// element fixed modulo `I·M`.
///
/// At a maximal ideal containing `I` the inputs already generate the fiber
/// and the correction is zero. At the others `I` is locally the unit ideal,
/// so any fiber vector is the residue of an element of `I·M`; the correction
/// targets are chosen so the corrected elements hit a full basis of the
/// fiber, and are realized as `Σ_k g_k·v_{i,k}` with CRT-lifted `v_{i,k}`.
pub fn lift_generators(
    m: &ModulePresentation,
    ideal_gens: &[Elem],
    b: &[Vec<Elem>],
) -> Result<LiftedGenerators> {
    let ring = &m.ring;
    let q = quotient_by_ideal(m, ideal_gens)?;
    if let Some(w) = q.non_generating_witness(b)? {
        return Err(Error::NotGeneratingModI { ideal: w.label() });
    }
    let (needed, _) = m.max_fiber_dim()?;
    if b.len() < needed {
        return Err(Error::TooFewElements {
            needed,
            got: b.len(),
        });
    }
    let ideals = ring.max_ideals()?;
    // Per-ideal correction plan. `None`: corrections vanish at p (either
    // p ⊇ I, or the inputs already generate the fiber). `Some((k, ginv,
    // basis))`: use ideal generator k, whose residue inverse is ginv, to
    // steer element i onto basis vector i.
    struct Plan {
        gen_index: usize,
        gen_inv: Elem,
        basis: Vec<Vec<Elem>>,
    }
    let mut plans: Vec<(MaxIdealHandle, Option<Plan>)> = Vec::new();
    for p in &ideals {
        let k = &p.residue_field;
        let alive = {
            let mut found = None;
            for (gi, g) in ideal_gens.iter().enumerate() {
                let r = ring.residue(g, p)?;
                if !k.is_zero(&r) {
                    found = Some((gi, r));
                    break;
                }
            }
            found
        };
        let fiber = m.fiber_dim(p)?;
        let span = m.span_dim_at(b, p)?;
        let plan = match alive {
            None => None, // p contains I; inputs generate this fiber already
            Some(_) if span == fiber => None, // nothing to fix here
            Some((gi, gres)) => {
                // Greedy fiber basis from unit coordinate vectors.
                let mut basis: Vec<Vec<Elem>> = Vec::new();
                let mut rank = stacked_residue_rank(m, p, &[], None)?;
                for j in 0..m.ambient {
                    if basis.len() == fiber {
                        break;
                    }
                    let mut v = vec![k.zero(); m.ambient];
                    v[j] = k.one();
                    let mut rows: Vec<Vec<Elem>> = basis.clone();
                    rows.push(v.clone());
                    let rel = m.relations.residue(p)?;
                    let mut all_rows: Vec<Vec<Elem>> = Vec::new();
                    for i in 0..rel.rows {
                        all_rows.push(rel.row(i));
                    }
                    all_rows.extend(rows);
                    let mat = Matrix::from_fn(k, all_rows.len(), m.ambient, |i, jj| {
                        all_rows[i][jj].clone()
                    });
                    let new_rank = linalg::rank(&mat)?;
                    if new_rank > rank {
                        rank = new_rank;
                        basis.push(v);
                    }
                }
                if basis.len() != fiber {
                    return Err(Error::Internal(
                        "unit vectors failed to span a fiber".into(),
                    ));
                }
                Some(Plan {
                    gen_index: gi,
                    gen_inv: k.inv(&gres)?,
                    basis,
                })
            }
        };
        plans.push((p.clone(), plan));
    }
    // Assemble corrections element by element, ideal generator by ideal
    // generator, CRT-lifting the per-fiber targets.
    let mut generators = Vec::with_capacity(b.len());
    let mut corrections = Vec::with_capacity(b.len());
    for (i, bi) in b.iter().enumerate() {
        let mut per_gen: Vec<Vec<Elem>> = Vec::with_capacity(ideal_gens.len());
        for gi in 0..ideal_gens.len() {
            let mut targets: Vec<(MaxIdealHandle, Vec<Elem>)> = Vec::with_capacity(plans.len());
            for (p, plan) in &plans {
                let k = &p.residue_field;
                let zero = vec![k.zero(); m.ambient];
                let target = match plan {
                    Some(plan) if plan.gen_index == gi && i < plan.basis.len() => {
                        // v ≡ g⁻¹·(u_i − b_i) at p, so g·v corrects b_i to u_i.
                        let bres = m.residue_vector(bi, p)?;
                        plan.basis[i]
                            .iter()
                            .zip(&bres)
                            .map(|(u, bc)| k.mul(&plan.gen_inv, &k.sub(u, bc)))
                            .collect()
                    }
                    _ => zero,
                };
                targets.push((p.clone(), target));
            }
            per_gen.push(crt_lift_vector(ring, m.ambient, &targets)?);
        }
        let mut ai = bi.clone();
        for (g, v) in ideal_gens.iter().zip(&per_gen) {
            for (a, x) in ai.iter_mut().zip(v) {
                *a = ring.add(a, &ring.mul(g, x));
            }
        }
        generators.push(ai);
        corrections.push(per_gen);
    }
    let out = LiftedGenerators {
        generators,
        corrections,
    };
    if let Some(w) = m.non_generating_witness(&out.generators)? {
        return Err(Error::Internal(format!(
            "lifted elements fail to generate at {}",
            w.label()
        )));
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Stable range 1
// ---------------------------------------------------------------------------

/// A maximal ideal at which every entry of the row vanishes, or `None` if
/// the row is unimodular.
pub fn unimodular_witness(ring: &Ring, row: &[Elem]) -> Result<Option<MaxIdealHandle>> {
    for e in row {
        ring.validate(e)?;
    }
    for p in ring.max_ideals()? {
        let mut all_zero = true;
        for e in row {
            if !p.residue_field.is_zero(&ring.residue(e, &p)?) {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// One stable-range-1 reduction step.
#[derive(Debug, Clone)]
pub struct StableRangeStep {
    /// Coefficients `α_1..α_{m-1}`.
    pub coefficients: Vec<Elem>,
    /// `(row_1 + α_1·row_m, …, row_{m-1} + α_{m-1}·row_m)` — unimodular.
    pub shortened: Vec<Elem>,
}

/// Shorten a unimodular row of length `m ≥ 2` to a unimodular row of length
/// `m-1` by adding multiples of the last entry to the others.
///
/// The coefficients are CRT lifts of a per-ideal rule: where the prefix
/// already has a nonzero residue, all coefficients vanish; where it dies,
/// `α_1` is 1 (the last entry survives there by unimodularity, so it rescues
/// the first slot). In particular a row whose prefix is already unimodular
/// gets all-zero coefficients.
pub fn stable_range_reduce(ring: &Ring, row: &[Elem]) -> Result<StableRangeStep> {
    if row.len() < 2 {
        return Err(Error::DimensionMismatch(
            "stable-range reduction needs a row of length at least 2".into(),
        ));
    }
    if let Some(w) = unimodular_witness(ring, row)? {
        return Err(Error::NotUnimodular { ideal: w.label() });
    }
    let m = row.len();
    let ideals = ring.max_ideals()?;
    let mut per_coeff: Vec<Vec<(MaxIdealHandle, Elem)>> = vec![Vec::new(); m - 1];
    for p in &ideals {
        let k = &p.residue_field;
        let mut prefix_alive = false;
        for e in &row[..m - 1] {
            if !k.is_zero(&ring.residue(e, p)?) {
                prefix_alive = true;
                break;
            }
        }
        for (idx, targets) in per_coeff.iter_mut().enumerate() {
            let val = if !prefix_alive && idx == 0 {
                k.one()
            } else {
                k.zero()
            };
            targets.push((p.clone(), val));
        }
    }
    let coefficients: Vec<Elem> = per_coeff
        .iter()
        .map(|t| ring.crt_lift(t))
        .collect::<Result<_>>()?;
    let shortened: Vec<Elem> = (0..m - 1)
        .map(|i| ring.add(&row[i], &ring.mul(&coefficients[i], &row[m - 1])))
        .collect();
    if let Some(w) = unimodular_witness(ring, &shortened)? {
        return Err(Error::Internal(format!(
            "stable-range step produced a non-unimodular row (dies at {})",
            w.label()
        )));
    }
    Ok(StableRangeStep {
        coefficients,
        shortened,
    })
}

// ---------------------------------------------------------------------------
// Two-element generation of quadratic ideals
// ---------------------------------------------------------------------------

/// Result of [`ideal_two_generators`]: `(x, y) = I` with `x` of minimal
/// norm, certified by Hermite-normal-form equality (recomputed in
/// [`TwoGenerators::verify`]).
#[derive(Debug, Clone)]
pub struct TwoGenerators {
    pub x: Elem,
    pub y: Elem,
}

impl TwoGenerators {
    /// Recompute the ideal generated by `(x, y)` and compare with `ideal`.
    pub fn verify(&self, ideal: &QuadIdeal) -> Result<()> {
        let regen = QuadIdeal::from_generators(&ideal.ring, &[self.x.clone(), self.y.clone()])?;
        if regen != *ideal {
            return Err(Error::Internal(
                "the pair generates a different ideal".into(),
            ));
        }
        Ok(())
    }
}

/// Two-element generation `I = (x, y)` in a maximal quadratic order.
///
/// `x` is a nonzero minimal-norm element of `I` (bounded search). The
/// cofactor ideal `J = (x)·conj(I)/N(I)` satisfies `(x) = I·J`; `y` is the
/// first element of `I` (in scan order) avoiding `P·I` for every prime `P`
/// dividing `J`, which forces `(x, y)` and `I` to agree at every prime.
pub fn ideal_two_generators(ideal: &QuadIdeal) -> Result<TwoGenerators> {
    let ring = &ideal.ring;
    let x = minimal_norm_element(ideal)?;
    let principal = QuadIdeal::principal(ring, &x)?;
    let cofactor = principal
        .product(&ideal.conjugate()?)?
        .divide_by_integer(&ideal.norm())?;
    let mut avoid = Vec::new();
    for (prime, _) in cofactor.prime_factorization()? {
        avoid.push(prime.ideal.product(ideal)?);
    }
    let y = first_element_avoiding(ideal, &avoid)?;
    let out = TwoGenerators { x, y };
    out.verify(ideal)?;
    Ok(out)
}
