//! The exact rational constants behind the asymptotics.
//!
//! Over F_q[t] the zeta function is a rational function of q^{−s}: with
//! q^d monic polynomials of degree d,
//!
//!   ζ_q(s) = Σ_{f monic} |f|^{−s} = Σ_d q^d·q^{−ds} = 1/(1 − q^{1−s}),
//!
//! so every special value is an explicit fraction — no analytic continuation,
//! no floating point. The Titchmarsh main terms are built from
//! ζ_q(2)ζ_q(3)/ζ_q(6), which also unfolds as the Euler product
//! Π_P (1 + 1/(|P|(|P|−1))) over monic irreducibles. This example prints
//! the exact values, watches the truncated Dirichlet series and Euler
//! products converge to them, and evaluates the local factors C_a.

use fqt::titchmarsh::{
    c_a, singular_constant, singular_constant_truncated, zeta_q, zeta_q_truncated,
};
use fqt::{Arith, Budgets, FieldSpec, Poly};
use num_traits::ToPrimitive;

fn main() -> fqt::Result<()> {
    let budgets = Budgets::default();

    println!("special values ζ_q(s) = 1/(1 − q^{{1−s}}):");
    for q in [2u64, 3, 4, 5] {
        let values: Vec<String> = [2u32, 3, 6]
            .iter()
            .map(|&s| zeta_q(q, s).map(|z| format!("ζ({s}) = {}", z.value)))
            .collect::<fqt::Result<_>>()?;
        println!("  q = {q}: {}", values.join(", "));
    }
    println!();

    println!("singular constant ζ_q(2)ζ_q(3)/ζ_q(6), exactly:");
    for q in [2u64, 3] {
        let exact = singular_constant(q);
        println!("  q = {q}: {} ≈ {:.10}", exact, exact.to_f64().unwrap());
    }
    println!();

    // The same number two more ways: as a truncated Dirichlet series
    // (ζ via Σ_{deg f ≤ D}) and as a truncated Euler product over primes of
    // degree ≤ D. Both converge geometrically; the Euler product is exact
    // bookkeeping over the irreducible table.
    let spec = FieldSpec::prime(2)?;
    let arith = Arith::new(&spec, 12, &budgets)?;
    let target = singular_constant(2);
    println!("Euler product over deg P ≤ D at q = 2, converging to {target}:");
    for max_deg in [1usize, 2, 4, 8, 12] {
        let truncated = singular_constant_truncated(&arith, max_deg);
        let gap = (&target - &truncated).to_f64().unwrap().abs();
        println!(
            "  D = {max_deg:>2}: {:.12}  (gap {gap:.2e})",
            truncated.to_f64().unwrap()
        );
    }
    println!();

    let closed = zeta_q(2, 2)?.value;
    println!("ζ₂(2) partial sums Σ_{{deg f ≤ D}} |f|^{{−2}}, converging to {closed}:");
    for max_deg in [0usize, 2, 4, 8, 12] {
        let partial = zeta_q_truncated(&arith, 2, max_deg)?;
        println!(
            "  D = {max_deg:>2}: {} ≈ {:.12}",
            partial,
            partial.to_f64().unwrap()
        );
    }
    println!();

    // Local factors C_a = Π_{P | a} (1 − 1/|P|)(1 + 1/(|P|(|P|−1)))^{−1}:
    // rationals whose denominators remember the primes dividing a.
    println!("local factors C_a at q = 2:");
    for digits in ["1", "01", "11", "011", "111", "0101"] {
        let a = Poly::parse(&spec, digits)?;
        let value = c_a(&arith, &a)?;
        println!(
            "  a = {:<12} C_a = {:<10} ≈ {:.8}",
            a.pretty(),
            value.to_string(),
            value.to_f64().unwrap()
        );
    }
    Ok(())
}
