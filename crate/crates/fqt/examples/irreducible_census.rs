//! Counting monic irreducibles: the necklace formula and the PNT for F_q[t].
//!
//! The number of monic irreducibles of degree d is exactly
//!
//!   π_q(d) = (1/d) Σ_{e | d} μ(e) q^{d/e},
//!
//! and the prime number theorem takes the sharp, error-free form
//! |π_q(N) − q^N/N| ≤ 2q^{N/2}/N — a Riemann-hypothesis-strength band that
//! F_q[t] satisfies unconditionally. This example enumerates the tables,
//! recomputes the necklace formula from scratch, and watches the band hold,
//! then does the same for primes in one arithmetic progression.

use fqt::multfn::{moebius_int, pnt_ap_band_ok, pnt_band_ok};
use fqt::{Arith, Budgets, FieldSpec, Poly};

/// The necklace count (1/d)·Σ_{e|d} μ(e)·q^{d/e}, straight from the formula.
fn necklace(q: u64, d: u64) -> u128 {
    let total: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| moebius_int(e) as i128 * (q as i128).pow((d / e) as u32))
        .sum();
    (total / d as i128) as u128
}

fn main() -> fqt::Result<()> {
    let budgets = Budgets::default();
    for q in [2u64, 3] {
        let spec = FieldSpec::prime(q)?;
        let arith = Arith::new(&spec, 12, &budgets)?;
        println!("q = {q}: monic irreducibles by degree");
        println!("{:>3} {:>10} {:>10} {:>12} {:>12}  band", "d", "π(d)", "necklace", "q^d/d", "2q^{d/2}/d");
        for d in 1..=12usize {
            let count = arith.prime_count(d);
            let formula = necklace(q, d as u64);
            assert_eq!(count, formula, "table disagrees with the necklace formula");
            let main = (q as f64).powi(d as i32) / d as f64;
            let band = 2.0 * (q as f64).powf(d as f64 / 2.0) / d as f64;
            let ok = pnt_band_ok(q, d, count);
            println!(
                "{d:>3} {count:>10} {formula:>10} {main:>12.1} {band:>12.1}  {}",
                if ok { "within" } else { "VIOLATED" }
            );
            assert!(ok);
        }
        println!();
    }

    // Primes in progressions: for gcd(l, m) = 1 the count π(N; m, l) sits in
    // the analogous band around q^N/(φ(m)·N), with constant 4 instead of 2.
    let spec = FieldSpec::prime(2)?;
    let arith = Arith::new(&spec, 12, &budgets)?;
    let m = Poly::parse(&spec, "111")?; // t² + t + 1, irreducible, φ = 3
    let l = Poly::parse(&spec, "01")?; // the class of t
    let phi = arith.phi(&m)?;
    println!("q = 2, primes ≡ {l} (mod {m}), φ({m}) = {phi}:");
    println!("{:>3} {:>8} {:>12}  band", "N", "π(N;m,l)", "q^N/(φN)");
    for n in 3..=12usize {
        let count = arith.prime_count_ap(n, &m, &l)?;
        let main = 2f64.powi(n as i32) / (phi as f64 * n as f64);
        let ok = pnt_ap_band_ok(2, n, phi, count);
        println!("{n:>3} {count:>8} {main:>12.1}  {}", if ok { "within" } else { "VIOLATED" });
        assert!(ok);
    }

    // The degree-N monic polynomials that are prime sit at density ~1/N,
    // the analogue of primes near x having density 1/log x.
    println!();
    let n = 12;
    let total = 2f64.powi(n);
    println!(
        "density check at N = {n}: π(N)/q^N = {:.4} vs 1/N = {:.4}",
        arith.prime_count(n as usize) as f64 / total,
        1.0 / n as f64
    );
    Ok(())
}
