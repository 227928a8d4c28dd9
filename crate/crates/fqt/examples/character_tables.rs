//! Dirichlet characters mod m: structure, orthogonality, and conductors.
//!
//! The unit group (F_q[t]/m)^× decomposes into cyclic factors; a character
//! is a choice of exponent against each generator, so the whole dual group
//! enumerates exactly. This example prints the decomposition for a modulus
//! with both a repeated factor and an irreducible one, verifies the two
//! orthogonality relations
//!
//!   Σ_{u} χ(u) = φ(m)·[χ = χ₀]      Σ_{χ} χ(u) = φ(m)·[u = 1],
//!
//! and then classifies every character by conductor, checking the count of
//! primitive characters against its divisor-sum formula.

use fqt::chars::CharGroup;
use fqt::{Arith, Budgets, FieldSpec, Poly};
use num_complex::Complex64;

fn main() -> fqt::Result<()> {
    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2)?;
    let arith = Arith::new(&spec, 8, &budgets)?;

    // m = t²·(t² + t + 1): a ramified square times an irreducible.
    let m = Poly::parse(&spec, "001")?.mul(&Poly::parse(&spec, "111")?);
    let group = CharGroup::new(&m, &budgets)?;
    println!("modulus m = {} = {}", m, m.pretty());
    println!("φ(m) = {}", group.phi());
    println!("unit group cyclic factors: {:?}", group.orders());
    println!();

    let ring = group.ring();
    let units = ring.units();
    let chars = group.enumerate();

    // First orthogonality: each row of the character table sums to zero
    // except the principal row, which sums to φ(m).
    println!("row sums Σ_u χ(u) (first orthogonality):");
    for (i, chi) in chars.iter().enumerate() {
        let total: Complex64 = units.iter().map(|u| group.value(chi, u)).sum();
        println!(
            "  χ_{i} (order {:>2}{}) → {:>6.3} + {:>6.3}i",
            chi.order(&group),
            if chi.is_principal() { ", principal" } else { "" },
            total.re,
            total.im
        );
        let expected = if chi.is_principal() { group.phi() as f64 } else { 0.0 };
        assert!((total.re - expected).abs() < 1e-9 && total.im.abs() < 1e-9);
    }
    println!();

    // Second orthogonality: each column sums to zero except at u = 1.
    let mut worst = 0.0f64;
    for u in units {
        let total: Complex64 = chars.iter().map(|chi| group.value(chi, u)).sum();
        let expected = if u.is_one() { group.phi() as f64 } else { 0.0 };
        worst = worst.max((total - Complex64::new(expected, 0.0)).norm());
    }
    println!("column sums Σ_χ χ(u) (second orthogonality): worst deviation {worst:.2e}");
    println!();

    // Conductors: the smallest modulus through which χ factors. Characters
    // with conductor exactly m are primitive; their number has a closed
    // form, which primitive_count_formula cross-checks.
    println!("conductor of every character:");
    for (i, chi) in chars.iter().enumerate() {
        let cond = group.conductor(&arith, chi)?;
        println!(
            "  χ_{i}: conductor {} {}",
            cond.pretty(),
            if group.is_primitive(&arith, chi)? { "(primitive)" } else { "" }
        );
    }
    let primitive = group.primitive_chars(&arith)?;
    let formula = group.primitive_count_formula(&arith)?;
    println!();
    println!("primitive characters: {} found, formula gives {}", primitive.len(), formula);
    assert_eq!(primitive.len() as i128, formula);
    Ok(())
}
