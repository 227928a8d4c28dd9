//! The large sieve for F_q[t], in its three guises.
//!
//! Take complex coefficients (a_f) on the monic polynomials of degree N and
//! the exponential S(g/f) = Σ a_h e(gh/f). The additive form bounds
//!
//!   Σ_{deg f ≤ Q, f monic} Σ_{deg g < deg f, (g,f)=1} |S(g/f)|²
//!     ≤ (q^N + q^{2Q}) Σ |a_h|²,
//!
//! the multiplicative form replaces the inner sum by Gauss-sum-weighted
//! primitive character sums (same bracket), and the truncated form averages
//! |Σ_{h ≡ l (f)} a_h|² over classes at level D < deg f ≤ Q against the
//! bracket (q^{N−D} + q^Q)·Σ|a_h|². This example evaluates one seeded
//! random unit vector through all three, then sweeps many vectors and
//! reports the worst observed ratio — comfortably below the constant 1,
//! let alone the pinned ceiling used by the test suite.

use fqt::sieve::{sweep, CoeffVector, SieveConfig, SieveContext, SweepConfig};
use fqt::{derive_seed, tolerances, Arith, Budgets, FieldSpec};

fn main() -> fqt::Result<()> {
    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2)?;
    let arith = Arith::new(&spec, 8, &budgets)?;
    let ctx = SieveContext::new(&arith, 3, &budgets)?;

    let (n, q_max, d_trunc) = (8usize, 3usize, 1usize);
    let config = SieveConfig {
        n,
        q_max,
        d_trunc,
        include_trivial_modulus: true,
    };

    // One vector, in detail. The seed derivation is the same one the CLI
    // and the sweep use, so every number here is reproducible.
    let seed = derive_seed(42, (2u64 << 32) | n as u64, 0);
    let vector = CoeffVector::random_unit(&spec, n, seed, &budgets)?;
    let report = ctx.verify(&vector, &config)?;
    println!("q = 2, N = {n}, Q = {q_max}, D = {d_trunc}, one random unit vector (seed {seed:#x}):");
    println!("  mass Σ|a|²            = {:.6}", report.z);
    println!(
        "  additive  lhs {:>12.4} ≤ rhs {:>12.4}  ratio {:.4}",
        report.additive_lhs,
        report.additive_rhs,
        report.additive_ratio()
    );
    println!(
        "  mult      lhs {:>12.4} ≤ rhs {:>12.4}  ratio {:.4}",
        report.mult_lhs,
        report.mult_rhs,
        report.mult_ratio()
    );
    println!(
        "  truncated lhs {:>12.4} ≤ rhs {:>12.4}  ratio {:.4}",
        report.trunc_lhs,
        report.trunc_rhs,
        report.trunc_ratio()
    );
    println!();

    // Now a sweep: 200 vectors, worst ratio per form. Rerunning with the
    // same base seed reproduces these numbers bit for bit.
    let sweep_config = SweepConfig {
        n,
        q_max,
        d_trunc,
        vectors: 200,
        base_seed: 42,
        include_trivial_modulus: true,
    };
    let summary = sweep(&ctx, &sweep_config, &budgets)?;
    println!("sweep over {} vectors:", sweep_config.vectors);
    println!(
        "  worst additive  ratio {:.4} (trial {})",
        summary.max_additive_ratio, summary.argmax_additive
    );
    println!(
        "  worst mult      ratio {:.4} (trial {})",
        summary.max_mult_ratio, summary.argmax_mult
    );
    println!(
        "  worst truncated ratio {:.4} (trial {})",
        summary.max_trunc_ratio, summary.argmax_trunc
    );
    let worst = summary
        .max_additive_ratio
        .max(summary.max_mult_ratio)
        .max(summary.max_trunc_ratio);
    println!(
        "  all ≤ {:.1}? {} (ceiling the acceptance tests pin)",
        tolerances::SIEVE_RATIO_CEILING,
        worst <= tolerances::SIEVE_RATIO_CEILING
    );
    assert!(worst <= tolerances::SIEVE_RATIO_CEILING);
    Ok(())
}
