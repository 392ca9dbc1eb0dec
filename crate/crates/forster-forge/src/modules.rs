//! Finitely presented modules over semilocal menu rings.
//!
//! A module is presented as `R^t / (row span of a relation matrix)`.
//! Everything that matters for generator counting is read off fiberwise: at a
//! maximal ideal `p`, the fiber `M(p) = M / pM` is a vector space over the
//! residue field, its dimension is `t - rank(relations mod p)`, and a set of
//! elements generates `M` iff it generates every fiber (Nakayama over a
//! semilocal ring). Over `Z/N` the fiberwise verdict is cross-checked against
//! an integral Howell-form membership computation: the two must agree or the
//! library reports an internal invariant breach, so every "generates" answer
//! is certified two ways.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};
use crate::ring::{Elem, MaxIdealHandle, Ring};

/// `R^ambient / (row span of relations)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModulePresentation {
    pub ring: Ring,
    pub ambient: usize,
    /// Each row is one relator in `R^ambient`; may have zero rows.
    pub relations: Matrix,
}

impl ModulePresentation {
    pub fn new(ring: Ring, ambient: usize, relations: Matrix) -> Result<ModulePresentation> {
        if relations.cols != ambient {
            return Err(Error::DimensionMismatch(format!(
                "relations have {} columns but the ambient rank is {ambient}",
                relations.cols
            )));
        }
        if relations.ring != ring {
            return Err(Error::MismatchedRing(
                "relation matrix ring differs from the module ring".into(),
            ));
        }
        Ok(ModulePresentation {
            ring,
            ambient,
            relations,
        })
    }

    /// The free module `R^t`.
    pub fn free(ring: &Ring, t: usize) -> ModulePresentation {
        ModulePresentation {
            ring: ring.clone(),
            ambient: t,
            relations: Matrix::zero(ring, 0, t),
        }
    }

    /// Quotient `R^t / (row span of rel)` from integer row data.
    pub fn from_relation_rows(ring: &Ring, t: usize, rows: &[Vec<i64>]) -> Result<ModulePresentation> {
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        for r in rows {
            if r.len() != t {
                return Err(Error::DimensionMismatch(
                    "relation row length differs from ambient rank".into(),
                ));
            }
        }
        let m = Matrix::from_i64(ring, rows.len(), t, &flat);
        ModulePresentation::new(ring.clone(), t, m)
    }

    fn check_element(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.ambient {
            return Err(Error::DimensionMismatch(format!(
                "module element has {} coordinates, ambient rank is {}",
                v.len(),
                self.ambient
            )));
        }
        for e in v {
            self.ring.validate(e)?;
        }
        Ok(())
    }

    /// Rank of the relation matrix in the fiber at `m`.
    fn relation_rank_at(&self, m: &MaxIdealHandle) -> Result<usize> {
        linalg::rank(&self.relations.residue(m)?)
    }

    /// `dim_{k(p)} M(p)` — the fiber dimension at a maximal ideal.
    pub fn fiber_dim(&self, m: &MaxIdealHandle) -> Result<usize> {
        Ok(self.ambient - self.relation_rank_at(m)?)
    }

    /// Maximum fiber dimension together with an ideal attaining it. This is
    /// the minimal number of generators of `M` over a semilocal ring.
    pub fn max_fiber_dim(&self) -> Result<(usize, MaxIdealHandle)> {
        let ideals = self.ring.max_ideals()?;
        let mut best: Option<(usize, MaxIdealHandle)> = None;
        for h in ideals {
            let d = self.fiber_dim(&h)?;
            if best.as_ref().map_or(true, |(bd, _)| d > *bd) {
                best = Some((d, h));
            }
        }
        best.ok_or_else(|| Error::Internal("ring has no maximal ideals".into()))
    }

    /// Dimension of the image of `span(elems)` inside the fiber `M(p)`:
    /// `rank([relations; elems] mod p) - rank(relations mod p)`.
    pub fn span_dim_at(&self, elems: &[Vec<Elem>], m: &MaxIdealHandle) -> Result<usize> {
        for v in elems {
            self.check_element(v)?;
        }
        let rel_rank = self.relation_rank_at(m)?;
        let stacked = self.stack_with(elems);
        let total = linalg::rank(&stacked.residue(m)?)?;
        Ok(total - rel_rank)
    }

    /// Relations with the given elements appended as extra rows.
    fn stack_with(&self, elems: &[Vec<Elem>]) -> Matrix {
        let extra = Matrix::from_fn(&self.ring, elems.len(), self.ambient, |i, j| {
            elems[i][j].clone()
        });
        self.relations.vstack(&extra)
    }

    /// `None` if `elems` generate `M`; otherwise a maximal ideal whose fiber
    /// they fail to span. Over `Z/N` the fiberwise answer is cross-checked
    /// by Howell-form membership of the ambient unit vectors.
    pub fn non_generating_witness(&self, elems: &[Vec<Elem>]) -> Result<Option<MaxIdealHandle>> {
        for v in elems {
            self.check_element(v)?;
        }
        let mut witness = None;
        for h in self.ring.max_ideals()? {
            if self.span_dim_at(elems, &h)? < self.fiber_dim(&h)? {
                witness = Some(h);
                break;
            }
        }
        if let Ring::ZMod { n } = &self.ring {
            // Independent integral check: elems + relations span the ambient
            // module iff every unit vector reduces to zero against the
            // Howell form of their row span.
            let h = linalg::howell_form(&self.stack_with(elems))?;
            let mut spans_everything = true;
            for j in 0..self.ambient {
                let mut unit = vec![BigInt::from(0u32); self.ambient];
                unit[j] = BigInt::from(1u32).mod_floor(n);
                if !h.contains(&unit) {
                    spans_everything = false;
                    break;
                }
            }
            if spans_everything != witness.is_none() {
                return Err(Error::Internal(
                    "fiberwise generation disagrees with Howell membership".into(),
                ));
            }
        }
        Ok(witness)
    }

    /// Whether `elems` generate the module.
    pub fn generates(&self, elems: &[Vec<Elem>]) -> Result<bool> {
        Ok(self.non_generating_witness(elems)?.is_none())
    }

    /// Residue of a module element in the fiber at `m` (coordinatewise).
    pub fn residue_vector(&self, v: &[Elem], m: &MaxIdealHandle) -> Result<Vec<Elem>> {
        v.iter().map(|e| self.ring.residue(e, m)).collect()
    }
}

/// Coordinatewise CRT lift of fiber vectors: `targets` must name every
/// maximal ideal exactly once with a vector of the common length.
pub fn crt_lift_vector(
    ring: &Ring,
    len: usize,
    targets: &[(MaxIdealHandle, Vec<Elem>)],
) -> Result<Vec<Elem>> {
    for (_, v) in targets {
        if v.len() != len {
            return Err(Error::DimensionMismatch(
                "CRT target vectors must share one length".into(),
            ));
        }
    }
    let mut out = Vec::with_capacity(len);
    for c in 0..len {
        let coord_targets: Vec<(MaxIdealHandle, Elem)> = targets
            .iter()
            .map(|(h, v)| (h.clone(), v[c].clone()))
            .collect();
        out.push(ring.crt_lift(&coord_targets)?);
    }
    Ok(out)
}

/// An idempotent matrix `e² = e` over a menu ring, viewed as the projective
/// module `im(e) ≅ R^n / (column span of 1-e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveIdempotent {
    pub ring: Ring,
    pub e: Matrix,
}

impl ProjectiveIdempotent {
    pub fn new(e: Matrix) -> Result<ProjectiveIdempotent> {
        if e.rows != e.cols {
            return Err(Error::DimensionMismatch("idempotent must be square".into()));
        }
        if e.mul(&e) != e {
            return Err(Error::NotIdempotent);
        }
        Ok(ProjectiveIdempotent {
            ring: e.ring.clone(),
            e,
        })
    }

    pub fn size(&self) -> usize {
        self.e.rows
    }

    /// Complementary idempotent `1 - e`.
    pub fn complement(&self) -> ProjectiveIdempotent {
        let c = Matrix::identity(&self.ring, self.size()).sub(&self.e);
        ProjectiveIdempotent {
            ring: self.ring.clone(),
            e: c,
        }
    }

    /// Presentation of `im(e)`: ambient `R^n` (columns), relations = rows of
    /// `(1-e)ᵀ`, i.e. the columns of `1-e`, because `x = ex + (1-e)x` splits
    /// `R^n = im(e) ⊕ im(1-e)`.
    pub fn image_module(&self) -> ModulePresentation {
        let n = self.size();
        let comp = Matrix::identity(&self.ring, n).sub(&self.e);
        ModulePresentation {
            ring: self.ring.clone(),
            ambient: n,
            relations: comp.transpose(),
        }
    }

    /// Fiberwise rank of `e` at a maximal ideal (= fiber dimension of the
    /// image module, since idempotents split fibers).
    pub fn rank_at(&self, m: &MaxIdealHandle) -> Result<usize> {
        linalg::rank(&self.e.residue(m)?)
    }

    /// The constant fiberwise rank, or [`Error::NonConstantRank`] naming two
    /// ideals with different ranks.
    pub fn constant_rank(&self) -> Result<usize> {
        let ideals = self.ring.max_ideals()?;
        let mut first: Option<(usize, MaxIdealHandle)> = None;
        for h in ideals {
            let r = self.rank_at(&h)?;
            match &first {
                None => first = Some((r, h)),
                Some((r0, h0)) => {
                    if r != *r0 {
                        return Err(Error::NonConstantRank {
                            ideal_a: h0.label(),
                            rank_a: *r0,
                            ideal_b: h.label(),
                            rank_b: r,
                        });
                    }
                }
            }
        }
        first
            .map(|(r, _)| r)
            .ok_or_else(|| Error::Internal("ring has no maximal ideals".into()))
    }

    /// Check that a column vector lies in `im(e)` (i.e. `e·v = v`).
    pub fn contains_column(&self, v: &[Elem]) -> bool {
        v.len() == self.size() && self.e.apply(v) == v
    }
}
