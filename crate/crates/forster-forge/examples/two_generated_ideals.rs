//! Ideals of ℤ[√−5] need at most two generators, and the pair the
//! algorithm returns regenerates the ideal's Hermite basis exactly.
//!
//! The classic ideal (2, 1+√−5) shows the bound is sharp: it is not
//! principal, because the ring has no element of norm 2.

use forster_forge::forster_swan::ideal_two_generators;
use forster_forge::ring::quad::QuadIdeal;
use forster_forge::ring::{Elem, Ring};
use forster_forge::Result;

fn quad(a: i64, b: i64) -> Elem {
    Elem::Quad { a: a.into(), b: b.into() }
}

fn main() -> Result<()> {
    let ring = Ring::quad_order((-5).into())?;

    for gens in [
        vec![quad(6, 0), quad(2, 2), quad(-1, 3)],
        vec![quad(21, 0), quad(4, 1)],
        vec![quad(3, 3), quad(7, 1), quad(0, 9)],
    ] {
        let ideal = QuadIdeal::from_generators(&ring, &gens)?;
        let pair = ideal_two_generators(&ideal)?;
        pair.verify(&ideal)?;
        let back = QuadIdeal::from_generators(&ring, &[pair.x.clone(), pair.y.clone()])?;
        assert_eq!(back.basis, ideal.basis);
        println!(
            "norm {:>4}: basis {:?} = ({:?}, {:?})",
            ideal.norm(),
            ideal.basis,
            pair.x,
            pair.y
        );
    }

    // (2, 1+√−5): norm 2, hence any single generator would need norm 2 —
    // but a² + 5b² = 2 has no integer solution.
    let p = QuadIdeal::from_generators(&ring, &[quad(2, 0), quad(1, 1)])?;
    assert_eq!(p.norm(), 2.into());
    let none = (-2i64..=2)
        .flat_map(|a| (-1i64..=1).map(move |b| (a, b)))
        .all(|(a, b)| a * a + 5 * b * b != 2);
    assert!(none);
    println!("(2, 1+√−5) has norm 2 and the ring has no norm-2 element:");
    println!("  two generators are necessary — the ideal is not principal");
    Ok(())
}
