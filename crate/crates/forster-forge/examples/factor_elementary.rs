//! Factoring determinant-one matrices into elementary transvections.
//!
//! The position schedule — which entry each factor acts on — depends only
//! on the matrix size, never on the ring or the matrix: two factorizations
//! over different moduli line up position for position, and only the
//! coefficients differ.

use forster_forge::sampling::{random_sl, seeded_rng};
use forster_forge::sl_factor::{factor_sl, position_sequence};
use forster_forge::ring::Ring;
use forster_forge::Result;

fn main() -> Result<()> {
    let mut rng = seeded_rng(11);

    let small = Ring::zmod(6.into())?;
    let large = Ring::zmod(30030.into())?;
    let a = random_sl(&small, 3, 12, &mut rng);
    let b = random_sl(&large, 3, 12, &mut rng);

    let wa = factor_sl(&a)?;
    let wb = factor_sl(&b)?;

    println!("3×3 over ℤ/6:      {} factors", wa.len());
    println!("3×3 over ℤ/30030:  {} factors", wb.len());
    println!("shared schedule:   {:?}", wa.positions);

    // Same positions for the same size; the schedule is a pure function
    // of the dimension.
    assert_eq!(wa.positions, wb.positions);
    assert_eq!(wa.positions, position_sequence(3).positions);

    // Exact multiply-back over each ring.
    assert_eq!(wa.product(&small)?, a);
    assert_eq!(wb.product(&large)?, b);
    println!("verified: both words multiply back exactly");

    // The identity factors with all-zero coefficients.
    let id = forster_forge::Matrix::identity(&small, 4);
    let wi = factor_sl(&id)?;
    let coeffs = wi.coefficients.as_ref().expect("factored words carry coefficients");
    assert!(coeffs.iter().all(|c| small.is_zero(c)));
    println!("identity word: {} zero coefficients", coeffs.len());
    Ok(())
}
