//! Finitely generated projective modules as idempotent images: a choice of
//! generators for im(e) yields a frame (a section/retraction pair) and a
//! classifying surjection, and the round trip returns the generators
//! unchanged.

use forster_forge::grassmann::classifying_surjection;
use forster_forge::modules::ProjectiveIdempotent;
use forster_forge::sampling::{random_invertible, seeded_rng};
use forster_forge::ring::Ring;
use forster_forge::{Matrix, Result};

fn main() -> Result<()> {
    let ring = Ring::zmod(10.into())?;
    let mut rng = seeded_rng(5);

    // A rank-2 idempotent in M₃(ℤ/10), conjugated away from diagonal form.
    let (g, g_inv) = random_invertible(&ring, 3, &mut rng);
    let diag = Matrix::from_fn(&ring, 3, 3, |i, j| {
        if i == j && i < 2 { ring.one() } else { ring.zero() }
    });
    let e = g.mul(&diag).mul(&g_inv);
    let p = ProjectiveIdempotent::new(e.clone())?;
    println!("idempotent e (rank {} at every maximal ideal):", p.constant_rank()?);
    for i in 0..3 {
        println!("  {:?}", (0..3).map(|j| format!("{:?}", e.at(i, j))).collect::<Vec<_>>());
    }

    // Generators of im(e): its columns, re-mixed by an invertible matrix.
    let (u, _) = random_invertible(&ring, 3, &mut rng);
    let gens = e.mul(&u).columns();

    let surj = classifying_surjection(&p, &gens)?;
    surj.verify()?;
    println!("frame: retraction a is {}×{}, section b is {}×{}",
        surj.frame.a.rows, surj.frame.a.cols, surj.frame.b.rows, surj.frame.b.cols);

    // b·a = e, a·b = identity, and the generators survive the round trip.
    assert_eq!(surj.frame.b.mul(&surj.frame.a), e);
    assert!(surj.frame.a.mul(&surj.frame.b).is_identity());
    assert_eq!(surj.recovered_generators(), surj.generators);
    println!("verified: a·b = 1, b·a = e, generators round-trip exactly");
    Ok(())
}
