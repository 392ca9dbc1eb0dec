//! Hilbert symbols (a,b)_v over ℚ: closed-form evaluation at finite and
//! infinite places, cross-checked against exhaustive solvability of
//! a·x² + b·y² = z², with the product over all places equal to +1.

use forster_forge::hilbert::{
    hilbert_symbol, hilbert_symbol_by_search, product_formula, Place,
};
use forster_forge::Result;
use num_bigint::BigInt;

fn main() -> Result<()> {
    let places = [Place::Finite(2), Place::Finite(3), Place::Finite(5), Place::Infinity];

    println!("(a, b)        v=2   v=3   v=5   v=∞");
    for (a, b) in [(-1i64, -1i64), (2, 3), (3, 5), (-2, 15), (5, 5)] {
        let (a, b) = (BigInt::from(a), BigInt::from(b));
        let mut row = format!("({a:>3},{b:>3})   ");
        for v in &places {
            let s = hilbert_symbol(&a, &b, v)?;
            // The closed form must match brute-force solvability.
            assert_eq!(s, hilbert_symbol_by_search(&a, &b, v)?);
            row.push_str(&format!("  {s:>3} "));
        }
        println!("{row}");
    }
    println!("every entry agrees with the exhaustive solvability search");

    // The product formula: over all relevant places the symbols multiply
    // to +1 — here for (-7, 30).
    let (a, b) = (BigInt::from(-7), BigInt::from(30));
    let (product, factors) = product_formula(&a, &b)?;
    println!("product formula for ({a}, {b}):");
    for (place, s) in &factors {
        println!("  ({a}, {b})_{place} = {s:>2}");
    }
    assert_eq!(product, 1);
    println!("  product = +1");
    Ok(())
}
