//! Symbol algebras (a,b)_{n,R}: rank-n² algebras that are Azumaya — the
//! sandwich map into End(A) is bijective — whenever a and b are units and
//! the ring has a primitive n-th root of unity.
//!
//! Over a finite field every such algebra is split: an explicit rank-one
//! idempotent exhibits A ≅ Mₙ.

use forster_forge::azumaya::{
    is_azumaya, split_over_finite_field, symbol_algebra, RootOfUnity, StructureConstantAlgebra,
};
use forster_forge::ring::Ring;
use forster_forge::Result;

fn main() -> Result<()> {
    let f5 = Ring::prime_field(5.into())?;

    // The quaternion-style symbol (2, 3)₂ over 𝔽₅ with ρ = −1.
    let rho = RootOfUnity::new(&f5, &f5.from_i64(4), 2)?;
    let alg = symbol_algebra(&f5.from_i64(2), &f5.from_i64(3), &rho)?;
    let cert = is_azumaya(&alg)?;
    println!(
        "(2,3)₂ over 𝔽₅: rank {}, sandwich matrix {}×{} — Azumaya: {}",
        alg.dim, cert.sandwich_dim, cert.sandwich_dim, cert.azumaya
    );
    assert!(cert.azumaya);

    let split = split_over_finite_field(&alg, 7)?;
    split.verify(&alg)?;
    println!(
        "split after {} idempotent candidates: A ≅ M₂(𝔽₅), basis images:",
        split.tried
    );
    for (i, img) in split.images.iter().enumerate() {
        println!("  e{i} ↦ {:?}", img.entries());
    }

    // A degree-3 symbol over 𝔽₇ (ρ = 2 is a primitive cube root).
    let f7 = Ring::prime_field(7.into())?;
    let rho3 = RootOfUnity::new(&f7, &f7.from_i64(2), 3)?;
    let alg9 = symbol_algebra(&f7.from_i64(3), &f7.from_i64(5), &rho3)?;
    let cert9 = is_azumaya(&alg9)?;
    assert!(cert9.azumaya);
    let split9 = split_over_finite_field(&alg9, 7)?;
    split9.verify(&alg9)?;
    println!("(3,5)₃ over 𝔽₇: rank {}, split as M₃", alg9.dim);

    // The standard failure: dual numbers R[ε]/(ε²) are not separable, and
    // the verdict names a maximal ideal where the sandwich map degenerates.
    let dual = StructureConstantAlgebra::dual_numbers(&f5)?;
    let verdict = is_azumaya(&dual)?;
    assert!(!verdict.azumaya);
    println!(
        "dual numbers over 𝔽₅: Azumaya = {} (witness: {})",
        verdict.azumaya,
        verdict.witness.as_ref().expect("a failure witness").describe()
    );
    Ok(())
}
