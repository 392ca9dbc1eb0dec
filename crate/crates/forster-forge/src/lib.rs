//! forster-forge: exact computational algebra over semilocal rings.
//!
//! The library answers, with machine-checkable certificates, four families of
//! questions about finitely presented modules and algebras over a small menu
//! of exactly representable commutative rings:
//!
//! * **How many generators?** Minimal generating sets of presented modules
//!   over semilocal rings, generator-count bounds, one-at-a-time generator
//!   extension, and lifting of generators through an ideal with explicit
//!   correction certificates ([`forster_swan`]). Over quadratic orders:
//!   two-element generation of ideals with a minimal-norm first generator.
//! * **How do special linear groups factor?** Every `SL_m` matrix over a
//!   menu semilocal ring factors into elementary matrices at a *fixed*,
//!   ring-independent sequence of positions depending only on `m`
//!   ([`sl_factor`]).
//! * **Which projective modules are which?** Idempotent matrices, their
//!   image modules, frames, classifying surjections, section criteria, and
//!   rank/characteristic-polynomial classification ([`grassmann`],
//!   [`modules`]).
//! * **Which algebras are forms of matrix algebras?** Structure-constant
//!   algebras, symbol algebras at a root of unity, Azumaya verification via
//!   the sandwich map, explicit splitting over finite fields, quadratic
//!   Hilbert symbols with a closed form cross-checked by exhaustive search,
//!   and cyclic-p Galois theory in characteristic p with descent
//!   ([`azumaya`], [`hilbert`]).
//!
//! All arithmetic is exact (big integers, exact fractions, dense matrices);
//! nothing is floating point and no verdict rests on a probabilistic test.
//! Randomized search (irreducible-polynomial splitting, splitting-element
//! search) draws from seeded deterministic streams and records the seed, so
//! every run is reproducible.
//!
//! Entry points are deliberately small structs + free functions per module;
//! the `examples/` directory contains one runnable walkthrough per
//! capability, and the `forster-forge` binary exposes the same operations as
//! JSON-emitting subcommands.

pub mod azumaya;
pub mod error;
pub mod forster_swan;
pub mod grassmann;
pub mod hilbert;
pub mod json;
pub mod linalg;
pub mod modules;
pub mod ring;
pub mod sampling;
pub mod selftest;
pub mod sl_factor;

pub use error::{Error, Result};
pub use linalg::Matrix;
pub use ring::{Elem, MaxIdealHandle, Ring};
