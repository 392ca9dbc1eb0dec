//! Artin–Schreier extensions in characteristic p: adjoin a root of
//! xᵖ − x = a, obtain a free rank-p algebra with a cyclic automorphism
//! group of order p, verify it is Galois, and then run the construction
//! backwards — descent recovers the parameter a up to ℘(R) = {tᵖ − t}.

use forster_forge::azumaya::{artin_schreier, artin_schreier_descent, is_galois};
use forster_forge::ring::{Elem, Ring};
use forster_forge::Result;

fn main() -> Result<()> {
    // 𝔽₄ = 𝔽₂[w]/(w² + w + 1), a = w.
    let f4 = Ring::ext_field(2.into(), vec![1.into(), 1.into(), 1.into()])?;
    let a = Elem::Pol(vec![0.into(), 1.into()]);
    f4.validate(&a)?;

    let ext = artin_schreier(&f4, &a)?;
    println!(
        "𝔽₄[x]/(x² − x − w): rank {}, {} automorphisms",
        ext.algebra.dim,
        ext.automorphisms.len()
    );
    let cert = is_galois(&ext)?;
    assert!(cert.galois);
    println!(
        "Galois: {} (comparison matrix {}×{} is invertible)",
        cert.galois, cert.comparison_dim, cert.comparison_dim
    );

    let descent = artin_schreier_descent(&ext)?;
    descent.verify(&ext)?;
    println!("descent recovered a′ = {:?} (built with a = {:?})", descent.a, a);

    // a′ ≡ a (mod ℘): some t has a′ − a = t² − t.
    let diff = f4.sub(&descent.a, &a);
    let witness = f4
        .elements()?
        .into_iter()
        .find(|t| f4.sub(&f4.mul(t, t), t) == diff)
        .expect("the recovered parameter must sit in the same ℘-coset");
    println!("coset witness: t = {witness:?} with t² − t = a′ − a");

    // The same round trip over a product ring — the base need not be a
    // field, only semilocal of characteristic p.
    let z3 = Ring::zmod(3.into())?;
    let rr = Ring::product(vec![z3.clone(), z3])?;
    let b = rr.from_i64(2);
    let ext3 = artin_schreier(&rr, &b)?;
    assert!(is_galois(&ext3)?.galois);
    let back = artin_schreier_descent(&ext3)?;
    back.verify(&ext3)?;
    let diff3 = rr.sub(&back.a, &b);
    assert!(rr
        .elements()?
        .into_iter()
        .any(|t| rr.sub(&rr.pow(&t, 3), &t) == diff3));
    println!("ℤ/3 × ℤ/3: build → descend lands in the same ℘-coset");
    Ok(())
}
