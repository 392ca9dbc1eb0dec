//! Classification data for projective modules: frame triples, classifying
//! surjections, section criteria, and the universal-idempotent specialization.
//!
//! A rank-`n` projective module inside `R^m` is pinned down by three
//! interlocking pieces of data, each of which this module constructs and
//! cross-verifies:
//!
//! * a *frame* `(a, e, b)` — matrices with `a·b = 1_n` and `e = b·a`
//!   idempotent, exhibiting `im(e)` as a direct summand with an explicit
//!   basis (`b`'s columns) and retraction (`a`);
//! * a *classifying surjection* — a generating `k`-tuple of `im(e)` packaged
//!   as an epimorphism `R^k → im(e)`, reported in `n`-row coordinates through
//!   the frame;
//! * the *specialization certificate* — the verified equations (`e² = e`,
//!   constant rank, characteristic polynomial `t^(m-n)·(t-1)^n`) that make
//!   `e` a point of the generic rank-`n` locus in size `m`.
//!
//! The correspondences are mutually inverse, and every constructor
//! re-verifies the round trip before returning.

use crate::error::{Error, Result};
use crate::forster_swan;
use crate::linalg::{self, InverseOutcome, Matrix};
use crate::modules::ProjectiveIdempotent;
use crate::ring::{Elem, MaxIdealHandle};

/// A frame for a projective module: `a·b = 1_n` and `e = b·a`.
///
/// The columns of `b` are a basis of `im(e)` and `a` restricted to `im(e)`
/// is the inverse isomorphism onto `R^n`; together they certify that `im(e)`
/// is free of rank `n` with an explicit complement `im(1-e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameTriple {
    /// Retraction, `n × m`.
    pub a: Matrix,
    /// Section, `m × n`; its columns span `im(e)`.
    pub b: Matrix,
    /// The idempotent `b·a`.
    pub idempotent: ProjectiveIdempotent,
}

impl FrameTriple {
    /// Rank of the framed module.
    pub fn rank(&self) -> usize {
        self.a.rows
    }

    /// Size of the ambient free module.
    pub fn size(&self) -> usize {
        self.a.cols
    }

    /// Re-check every equation the triple claims: `a·b = 1`, `e = b·a`,
    /// `e² = e`, and the round trips `a·e = a`, `e·b = b`.
    pub fn verify(&self) -> Result<()> {
        if !self.a.mul(&self.b).is_identity() {
            return Err(Error::NotAFrame);
        }
        let e = &self.idempotent.e;
        if self.b.mul(&self.a) != *e {
            return Err(Error::BadInput("frame idempotent is not b·a".into()));
        }
        if e.mul(e) != *e {
            return Err(Error::NotIdempotent);
        }
        if self.a.mul(e) != self.a || e.mul(&self.b) != self.b {
            return Err(Error::BadInput("frame round trip a·e = a, e·b = b fails".into()));
        }
        Ok(())
    }
}

/// Build the frame `(a, b·a, b)` from a pair with `a·b = 1_n`.
///
/// Fails with [`Error::NotAFrame`] when `a·b` is not exactly the identity;
/// shape and ring mismatches are reported as such. The returned idempotent
/// `b·a` is verified idempotent on construction.
pub fn idempotent_from_frame(a: &Matrix, b: &Matrix) -> Result<FrameTriple> {
    if a.ring != b.ring {
        return Err(Error::MismatchedRing(
            "frame halves live over different rings".into(),
        ));
    }
    if a.rows != b.cols || a.cols != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "frame shapes {}x{} and {}x{} are not transpose-compatible",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    if !a.mul(b).is_identity() {
        return Err(Error::NotAFrame);
    }
    let idempotent = ProjectiveIdempotent::new(b.mul(a))?;
    let triple = FrameTriple {
        a: a.clone(),
        b: b.clone(),
        idempotent,
    };
    triple.verify()?;
    Ok(triple)
}

/// Construct a frame for a given constant-rank idempotent.
///
/// Over the supported rings a constant-rank projective module is free, so a
/// frame always exists: minimal generating sets of `im(e)` and `im(1-e)`
/// assemble into an invertible change of basis `H = [b | c]`, and the first
/// `rank` rows of `H⁻¹` give the retraction. Non-constant rank is reported
/// as [`Error::NonConstantRank`].
pub fn frame_for_idempotent(p: &ProjectiveIdempotent) -> Result<FrameTriple> {
    let ring = p.ring.clone();
    let m = p.size();
    let n = p.constant_rank()?;

    // Basis columns for the image and its complement: push minimal
    // generators of each cokernel presentation through the idempotent.
    let image_gens = forster_swan::minimal_generators(&p.image_module())?.generators;
    let complement = p.complement();
    let comp_gens = forster_swan::minimal_generators(&complement.image_module())?.generators;
    if image_gens.len() != n || comp_gens.len() != m - n {
        return Err(Error::Internal(
            "minimal generator counts disagree with the idempotent ranks".into(),
        ));
    }
    let b = Matrix::from_fn(&ring, m, n, |i, j| {
        let mut s = ring.zero();
        for k in 0..m {
            s = ring.add(&s, &ring.mul(p.e.at(i, k), &image_gens[j][k]));
        }
        s
    });
    let c = Matrix::from_fn(&ring, m, m - n, |i, j| {
        let mut s = ring.zero();
        for k in 0..m {
            s = ring.add(&s, &ring.mul(complement.e.at(i, k), &comp_gens[j][k]));
        }
        s
    });

    // H's columns generate im(e) ⊕ im(1-e) = R^m, so H is invertible.
    let h = b.hstack(&c);
    let hinv = match linalg::inverse_or_certificate(&h)? {
        InverseOutcome::Inverse(inv) => inv,
        _ => {
            return Err(Error::Internal(
                "basis-and-complement matrix of an idempotent was not invertible".into(),
            ))
        }
    };
    let a = Matrix::from_fn(&ring, n, m, |i, j| hinv.at(i, j).clone());

    let triple = FrameTriple {
        a,
        b,
        idempotent: p.clone(),
    };
    triple.verify().map_err(|e| {
        Error::Internal(format!("constructed frame fails its own verification: {e}"))
    })?;
    Ok(triple)
}

/// A generating tuple of `im(e)` packaged as an epimorphism, with the frame
/// that coordinatizes it.
///
/// `generators` holds the tuple as columns (size × count); `rows` is the
/// same map written in the frame's rank-many coordinates, `rows = a ·
/// generators`. Evaluating on unit vectors recovers the tuple:
/// [`recovered_generators`](Self::recovered_generators) returns `b · rows`,
/// which equals `generators` exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifyingSurjection {
    pub frame: FrameTriple,
    /// The generators, as the columns of a size × count matrix.
    pub generators: Matrix,
    /// The surjection in rank-many coordinates: `a · generators`.
    pub rows: Matrix,
}

impl ClassifyingSurjection {
    /// The inverse correspondence: evaluate the surjection on unit vectors,
    /// i.e. map the row data back into the ambient module through `b`.
    pub fn recovered_generators(&self) -> Matrix {
        self.frame.b.mul(&self.rows)
    }

    /// Re-check the certificate: the frame verifies, the generator columns
    /// lie in `im(e)` and generate it, `rows = a·generators`, and the round
    /// trip returns the generators.
    pub fn verify(&self) -> Result<()> {
        self.frame.verify()?;
        let e = &self.frame.idempotent;
        for (index, g) in self.generators.columns().iter().enumerate() {
            if !e.contains_column(g) {
                return Err(Error::NotInImage { index });
            }
        }
        if let Some(p) = e
            .image_module()
            .non_generating_witness(&self.generators.columns())?
        {
            return Err(Error::NotGenerating { ideal: p.label() });
        }
        if self.frame.a.mul(&self.generators) != self.rows {
            return Err(Error::BadInput("row data is not a·generators".into()));
        }
        if self.recovered_generators() != self.generators {
            return Err(Error::Internal(
                "surjection round trip failed to return its generators".into(),
            ));
        }
        Ok(())
    }
}

/// Package a generating tuple of `im(e)` as a classifying surjection.
///
/// Each column must lie in the image ([`Error::NotInImage`] with its index
/// otherwise) and the tuple must generate it ([`Error::NotGenerating`] names
/// a failing maximal ideal). The returned surjection's row data is verified
/// surjective as a section map, and the round trip back to the generators is
/// checked exactly.
pub fn classifying_surjection(
    p: &ProjectiveIdempotent,
    gens: &[Vec<Elem>],
) -> Result<ClassifyingSurjection> {
    let ring = p.ring.clone();
    let m = p.size();
    for (index, g) in gens.iter().enumerate() {
        if g.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "generator {index} has length {}, ambient size is {m}",
                g.len()
            )));
        }
        for x in g {
            ring.validate(x)?;
        }
        if !p.contains_column(g) {
            return Err(Error::NotInImage { index });
        }
    }
    if let Some(witness) = p.image_module().non_generating_witness(gens)? {
        return Err(Error::NotGenerating {
            ideal: witness.label(),
        });
    }

    let frame = frame_for_idempotent(p)?;
    let generators = Matrix::from_cols(&ring, m, gens);
    let rows = frame.a.mul(&generators);

    // The row data of a generating tuple is itself a surjection; check the
    // section criterion as an independent certificate.
    let section = is_section_surjection(&rows)?;
    if !section.surjective {
        return Err(Error::Internal(
            "row data of a generating tuple failed the section criterion".into(),
        ));
    }

    let out = ClassifyingSurjection {
        frame,
        generators,
        rows,
    };
    if out.recovered_generators() != out.generators {
        return Err(Error::Internal(
            "surjection round trip failed to return its generators".into(),
        ));
    }
    Ok(out)
}

/// Verdict of the section criterion, with a failing ideal when negative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCertificate {
    /// Whether the map hits all of `R^n`.
    pub surjective: bool,
    /// A maximal ideal where the residue rank drops (exactly when
    /// `surjective` is false).
    pub witness: Option<MaxIdealHandle>,
}

/// Decide whether an `n × m` matrix is surjective as a map `R^m → R^n`.
///
/// Two equivalent criteria are evaluated at every maximal ideal — full
/// residue rank, and non-vanishing of some maximal minor — and must agree;
/// disagreement would be an internal error. Rings without an enumerable
/// maximal spectrum are rejected with [`Error::UnsupportedRing`].
pub fn is_section_surjection(a: &Matrix) -> Result<SectionCertificate> {
    let ring = &a.ring;
    if !ring.is_semilocal_capable() {
        return Err(Error::UnsupportedRing(format!(
            "section criterion needs an enumerable maximal spectrum; {ring} has none"
        )));
    }
    let n = a.rows;
    let minors = linalg::maximal_minors(a)?;
    let mut witness = None;
    for p in ring.max_ideals()? {
        let rank_full = linalg::rref(&a.residue(&p)?)?.rank() == n;
        let mut minor_alive = false;
        for (_, d) in &minors {
            let r = ring.residue(d, &p)?;
            if !p.residue_field.is_zero(&r) {
                minor_alive = true;
                break;
            }
        }
        if rank_full != minor_alive {
            return Err(Error::Internal(format!(
                "rank and minor criteria disagree at {}",
                p.label()
            )));
        }
        if !rank_full && witness.is_none() {
            witness = Some(p);
        }
    }
    Ok(SectionCertificate {
        surjective: witness.is_none(),
        witness,
    })
}

/// Keep the first `m` columns of a surjection, re-certifying surjectivity.
///
/// Requires `n ≤ m ≤` column count. When the kept columns stop being
/// surjective — all maximal minors among them vanish at some maximal ideal —
/// the failure is reported as [`Error::OnMinorLocus`] naming that ideal.
pub fn truncate_surjection(a: &Matrix, m: usize) -> Result<Matrix> {
    if m < a.rows || m > a.cols {
        return Err(Error::DimensionMismatch(format!(
            "cannot keep {m} of {} columns of a {}-row surjection",
            a.cols, a.rows
        )));
    }
    let kept = a.take_cols(m);
    let section = is_section_surjection(&kept)?;
    match section.witness {
        None => Ok(kept),
        Some(p) => Err(Error::OnMinorLocus { ideal: p.label() }),
    }
}

/// The verified equations exhibiting a constant-rank idempotent as a point
/// of the generic rank-`n` locus in size `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationCertificate {
    /// Constant fiber rank `n`.
    pub rank: usize,
    /// Ambient size `m`.
    pub size: usize,
    /// Characteristic polynomial of the idempotent, low-to-high; verified
    /// equal to `t^(m-n)·(t-1)^n`.
    pub charpoly: Vec<Elem>,
}

/// Check the defining equations of the generic rank-`n` idempotent on `e`.
///
/// `e² = e` is an invariant of the input type; this adds the constant-rank
/// requirement ([`Error::NonConstantRank`]) and the characteristic
/// polynomial equation `χ_e = t^(m-n)·(t-1)^n` ([`Error::WrongCharPoly`]).
pub fn specialize_universal_idempotent(
    p: &ProjectiveIdempotent,
) -> Result<SpecializationCertificate> {
    let ring = p.ring.clone();
    let m = p.size();
    let n = p.constant_rank()?;
    let chi = linalg::charpoly(&p.e)?;

    // Expected polynomial t^(m-n)·(t-1)^n, built by repeated multiplication.
    let mut factor = vec![ring.one()];
    for _ in 0..n {
        let mut next = vec![ring.zero(); factor.len() + 1];
        for (i, c) in factor.iter().enumerate() {
            next[i + 1] = ring.add(&next[i + 1], c);
            next[i] = ring.sub(&next[i], c);
        }
        factor = next;
    }
    let mut expected = vec![ring.zero(); m - n];
    expected.extend(factor);

    if chi != expected {
        return Err(Error::WrongCharPoly);
    }
    Ok(SpecializationCertificate {
        rank: n,
        size: m,
        charpoly: chi,
    })
}
