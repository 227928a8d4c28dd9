//! Equidistribution in progressions and the dispersion statistic.
//!
//! For an arithmetic function ψ, modulus m, and reduced class l, the error
//!
//!   E(M; m, l; ψ) = Σ_{f ≡ l (m), deg f = M} ψ(f)
//!                   − (1/φ(m)) Σ_{(f,m)=1, deg f = M} ψ(f)
//!
//! measures how far ψ strays from equidistribution among the φ(m) classes.
//! It is an exact rational with denominator φ(m); for ψ ≡ 1 it vanishes
//! identically once M ≥ deg m. The Bombieri–Vinogradov-style statistic sums
//! the worst |E| over all moduli up to a level Q,
//!
//!   D(N, Q; ψ) = Σ_{deg m ≤ Q} max_{deg m ≤ M ≤ N} max_{(l,m)=1} |E(M; m, l; ψ)|,
//!
//! and equidistribution at level Q means D stays negligible against q^N/N.
//! This example prints E tables for the prime indicator, shows ψ ≡ 1
//! vanishing exactly, then tracks the normalized dispersion as N grows at a
//! fixed level and lets the level policy pick Q from N.

use fqt::equidist::{bv_dispersion, bv_level_policy, error_term};
use fqt::{Arith, ArithFn, Budgets, FieldSpec, Poly, ResidueRing};

fn main() -> fqt::Result<()> {
    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2)?;
    let arith = Arith::new(&spec, 14, &budgets)?;

    // ψ ≡ 1 distributes exactly: every class of every modulus gets its
    // share q^{M − deg m} on the nose.
    let m = Poly::parse(&spec, "111")?; // t² + t + 1
    let ring = ResidueRing::new(&m)?;
    let one = error_term(&arith, &ArithFn::One, &m, &ring.units()[0], 6, &budgets)?;
    println!("E(6; {m}, 1; 1) = {one} (exactly zero)");
    println!();

    // The prime indicator is where equidistribution has content. Mod
    // t² + t + 1 there are φ = 3 reduced classes; the degree-M primes split
    // among them with errors of square-root size.
    println!("ψ = prime indicator, m = {m} (φ = {}):", ring.phi());
    println!("{:>3}  {:>24}  {:>10}", "M", "E per reduced class l", "max |E|");
    for big_m in 2..=12usize {
        let errors: Vec<String> = ring
            .units()
            .iter()
            .map(|l| {
                error_term(&arith, &ArithFn::PrimeIndicator, &m, l, big_m, &budgets)
                    .map(|e| e.to_string())
            })
            .collect::<fqt::Result<_>>()?;
        let worst = ring
            .units()
            .iter()
            .map(|l| {
                let e = error_term(&arith, &ArithFn::PrimeIndicator, &m, l, big_m, &budgets)?;
                Ok((*e.numer() as f64 / *e.denom() as f64).abs())
            })
            .collect::<fqt::Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0f64, f64::max);
        println!("{big_m:>3}  {:>24}  {worst:>10.3}", errors.join("  "));
    }
    println!();

    // Dispersion at a fixed level Q = 2, normalized by q^N/N: the decay is
    // the numerical shadow of square-root cancellation on average.
    println!("D(N, Q=2; prime)·N/q^N as N grows:");
    for n in [8usize, 10, 12, 14] {
        let report = bv_dispersion(&arith, &ArithFn::PrimeIndicator, n, 2, &budgets)?;
        println!(
            "  N = {n:>2}: total = {:>10} ≈ {:<12.6} normalized {:.6}",
            report.total_exact, report.total, report.normalized
        );
    }
    println!();

    // The level policy Q(N) = ⌊N/2 − B·log_q N⌋ mirrors the classical
    // "level of distribution 1/2" with a logarithmic safety margin.
    println!("level policy Q(N) = ⌊N/2 − log₂ N⌋ at q = 2:");
    for n in [8usize, 12, 16, 24, 32] {
        println!("  N = {n:>2} → Q = {}", bv_level_policy(n, 1.0, 2.0));
    }
    println!();

    // One full report at the policy level, per-modulus.
    let n = 12;
    let q_level = bv_level_policy(n, 1.0, 2.0);
    let report = bv_dispersion(&arith, &ArithFn::PrimeIndicator, n, q_level, &budgets)?;
    println!("per-modulus maxima at N = {n}, Q = {q_level}, ψ = prime:");
    println!("{:>8} {:>4} {:>4} {:>8} {:>10} {:>8}", "m", "φ", "M*", "l*", "max|E|", "num");
    for row in &report.rows {
        println!(
            "{:>8} {:>4} {:>4} {:>8} {:>10.4} {:>8}",
            row.modulus, row.phi, row.argmax_deg, row.argmax_l, row.value, row.max_numerator
        );
    }
    println!(
        "total {} ≈ {:.4}, normalized by q^N/N: {:.6}",
        report.total_exact, report.total, report.normalized
    );
    Ok(())
}
