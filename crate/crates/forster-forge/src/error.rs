//! Crate-wide error type.
//!
//! Every fallible operation returns [`Error`]. Variants are grouped by the
//! kind of failure they report:
//!
//! * construction errors (`InvalidRing`, `NotAField`, …) — the input data
//!   does not satisfy a documented invariant;
//! * precondition errors (`PreconditionViolated`, `NotSL`, `NotUnimodular`,
//!   …) — the data is well formed but the operation's contract is not met;
//!   these map to exit code 2 in the command-line tool;
//! * `Internal` — a self-check that should be unreachable failed; maps to
//!   exit code 3.
//!
//! Errors that point at a specific maximal ideal carry a human-readable
//! label produced by `MaxIdealHandle::label()` so they stay printable
//! without dragging the whole ring descriptor along.

use thiserror::Error;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A ring descriptor violates its invariants (modulus < 2, reducible
    /// defining polynomial, non-squarefree discriminant, empty product, …).
    #[error("invalid ring: {0}")]
    InvalidRing(String),

    /// The operation needs a factorization but the trial-division bound was
    /// exceeded before it completed.
    #[error("modulus too large: trial division beyond bound {bound} needed for {value}")]
    ModulusTooLarge { value: String, bound: u64 },

    /// The ring does not support the requested operation (e.g. enumerating
    /// maximal ideals of a quadratic order).
    #[error("unsupported ring for this operation: {0}")]
    UnsupportedRing(String),

    /// An element or matrix belongs to a different ring than expected.
    #[error("mismatched ring: {0}")]
    MismatchedRing(String),

    /// A set of residue targets does not cover every maximal ideal exactly once.
    #[error("incomplete residue targets: {0}")]
    IncompleteTargets(String),

    /// A field was required.
    #[error("not a field: {0}")]
    NotAField(String),

    /// An integer quotient ring `Z/N` was required.
    #[error("operation requires a Z/N ring, got {0}")]
    NotZMod(String),

    /// Matrix shape mismatch (dimensions incompatible with the operation).
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Matrices beyond the supported dense size.
    #[error("matrix dimension {0} exceeds the supported bound {1}")]
    DimensionGuard(usize, usize),

    /// `e*e = e` fails for a claimed idempotent.
    #[error("matrix is not idempotent")]
    NotIdempotent,

    /// A stated precondition fails at the named maximal ideal.
    #[error("precondition violated at maximal ideal {ideal}: {detail}")]
    PreconditionViolated { ideal: String, detail: String },

    /// The supplied elements do not generate the module modulo I.
    #[error("elements do not generate the module modulo the ideal (fails at {ideal})")]
    NotGeneratingModI { ideal: String },

    /// Fewer elements than the target generator count.
    #[error("too few elements: need at least {needed}, got {got}")]
    TooFewElements { needed: usize, got: usize },

    /// A column expected to be unimodular is not.
    #[error("column is not unimodular (fails at maximal ideal {ideal})")]
    NotUnimodular { ideal: String },

    /// Determinant is not 1.
    #[error("matrix is not in SL: determinant is {det}")]
    NotSL { det: String },

    /// `a * b = identity` fails for a claimed frame pair.
    #[error("not a frame: a*b is not the identity")]
    NotAFrame,

    /// A vector claimed to lie in the image of an idempotent does not.
    #[error("element {index} is not in the image of the idempotent")]
    NotInImage { index: usize },

    /// Elements fail to generate; carries a failing maximal ideal.
    #[error("elements do not generate (fail at maximal ideal {ideal})")]
    NotGenerating { ideal: String },

    /// Column truncation lands on the locus where the kept minors vanish.
    #[error("truncation lies on the minor vanishing locus (fails at maximal ideal {ideal})")]
    OnMinorLocus { ideal: String },

    /// An idempotent whose fiberwise rank varies.
    #[error("idempotent rank is not constant: rank {rank_a} at {ideal_a}, rank {rank_b} at {ideal_b}")]
    NonConstantRank {
        ideal_a: String,
        rank_a: usize,
        ideal_b: String,
        rank_b: usize,
    },

    /// Characteristic polynomial differs from t^(m-n) (t-1)^n.
    #[error("characteristic polynomial is not t^(m-n)(t-1)^n")]
    WrongCharPoly,

    /// A ring element required to be a unit is not.
    #[error("not a unit: {0}")]
    NotAUnit(String),

    /// A claimed n-th root of unity fails its defining equations.
    #[error("bad root of unity: {0}")]
    BadRoot(String),

    /// A bounded or randomized search ran out of candidates.
    #[error("search exhausted after {tried} candidates (seed {seed})")]
    SearchExhausted { tried: u64, seed: u64 },

    /// The ring does not have the required prime characteristic.
    #[error("ring does not have prime characteristic: {0}")]
    NotCharP(String),

    /// Algebra rank disagrees with the group order.
    #[error("rank mismatch: {0}")]
    RankMismatch(String),

    /// A linear system has no solution.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// The Galois group is not cyclic of order p.
    #[error("group is not cyclic of order p: {0}")]
    NotCyclicP(String),

    /// Norm bound exceeded in an ideal search.
    #[error("no element found within the norm bound {bound}")]
    NormTooLarge { bound: String },

    /// Structure-constant table fails associativity or unit laws.
    #[error("invalid algebra table: {0}")]
    InvalidAlgebra(String),

    /// Malformed input data (command-line / serialized form).
    #[error("bad input: {0}")]
    BadInput(String),

    /// A self-check that must hold by construction failed. Always a bug.
    #[error("internal invariant breach: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit status for the command-line tool: 2 for contract
    /// violations on caller-supplied data, 3 for internal breaches.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 3,
            _ => 2,
        }
    }
}
