//! Arithmetic in F_q[t] for sieve, equidistribution, and divisor-sum experiments.
//!
//! The ring F_q[t] of polynomials over a finite field behaves like the ring of
//! integers: monic polynomials play the role of positive integers, monic
//! irreducibles play the role of primes, and the norm |f| = q^{deg f} plays the
//! role of absolute value. This crate implements that dictionary end to end:
//!
//! - [`fq`] — the coefficient field F_q (q = p^k), trace map, additive character E;
//! - [`poly`] — exact polynomial arithmetic, enumeration, textual format;
//! - [`gf2`] — bit-packed fast path for q = 2 (differentially tested against [`poly`]);
//! - [`multfn`] — irreducibles, factorization, τ_k, φ, μ, prime counting;
//! - [`residue`] — residue rings F_q[t]/(m), modular inverses, unit-group structure;
//! - [`chars`] — Dirichlet characters mod m, conductors, the additive character
//!   e(g/f), and Gauss sums;
//! - [`sieve`] — numerical evaluation of three large sieve inequalities;
//! - [`equidist`] — progression sums, equidistribution error terms E(M;m,l;ψ),
//!   dispersion sums, twisted (Siegel–Walfisz type) sums, and a Perron-formula check;
//! - [`titchmarsh`] — exact ζ_q values and singular constants, plus the shifted
//!   divisor sums Σ τ(P − a) and Σ τ(P₁P₂ − a);
//! - [`cli`] — the `fqt` command-line front end with CSV/JSON reports.
//!
//! # Quick start
//!
//! ```
//! use fqt::fq::FieldSpec;
//! use fqt::poly::Poly;
//!
//! let f2 = FieldSpec::prime(2).unwrap();
//! let f = Poly::parse(&f2, "1101").unwrap(); // 1 + t + t^3
//! assert_eq!(f.degree(), Some(3));
//! assert_eq!(f.norm(), 8); // |f| = q^{deg f}
//! ```
//!
//! # Runnable examples
//!
//! Each major capability has a walkthrough under `examples/`:
//!
//! ```text
//! cargo run --example field_tour            # F_q arithmetic, trace, character E
//! cargo run --example irreducible_census    # π(N) vs the necklace formula and PNT bands
//! cargo run --example character_tables      # unit groups, characters, conductors
//! cargo run --example gauss_sums            # |τ(χ)|² = |f| and the twisted identity
//! cargo run --example large_sieve_ratios    # the three sieve forms on random vectors
//! cargo run --example equidistribution      # E(M;m,l;ψ) and dispersion decay
//! cargo run --example perron_formula        # contour integral vs partial sums
//! cargo run --example titchmarsh_divisor    # Σ τ(P−a) and Σ τ(P₁P₂−a) vs main terms
//! cargo run --example exact_constants       # ζ_q values and singular constants
//! ```
//!
//! The `fqt` binary exposes the same experiments as subcommands; see `README.md`.

pub mod chars;
pub mod cli;
pub mod equidist;
pub mod fq;
pub mod gf2;
pub mod multfn;
pub mod poly;
pub mod residue;
pub mod sieve;
pub mod titchmarsh;

pub use fq::{FieldSpec, Fq};
pub use multfn::{Arith, ArithFn, Factorization, IrreducibleTable};
pub use poly::Poly;
pub use residue::ResidueRing;

/// Centralized numeric tolerances and calibrated ceilings.
///
/// Everything that compares floating-point values anywhere in the crate (and in
/// the acceptance suite) draws its threshold from here, so the trade-offs are
/// visible in one place. Exact-integer and exact-rational identities use no
/// tolerance at all.
pub mod tolerances {
    /// Absolute tolerance per summand for character/exponential sums.
    ///
    /// A sum of n unit-modulus doubles accumulates roundoff well below
    /// n·1e-9 at the scales this crate enumerates (n ≤ ~10^6).
    pub const CHAR_SUM_PER_TERM: f64 = 1e-9;

    /// Tolerance for the Gauss-sum modulus identity |τ(χ)|² = |f|.
    pub const GAUSS_SUM_ABS: f64 = 1e-6;

    /// Absolute tolerance for the character orthogonality relations
    /// (sums of at most max_phi unit-modulus terms; roundoff stays < 1e-11).
    pub const ORTHOGONALITY_ABS: f64 = 1e-9;

    /// Absolute tolerance for full-degree non-principal character sums
    /// Σ_{deg f = N} χ(f), which vanish identically in exact arithmetic.
    pub const SW_ZERO_ABS: f64 = 1e-9;

    /// Calibrated ceiling for large sieve ratios LHS/(bracket·Z).
    ///
    /// The inequalities are stated with ineffective implied constants; pilot
    /// runs over the acceptance grid (q ∈ {2,3}, N ≤ 8, Q ≤ 3, D ≤ 2, 100
    /// seeded vectors per point) observe ratios ≤ 4, so 8 is a 2× margin.
    pub const SIEVE_RATIO_CEILING: f64 = 8.0;

    /// Acceptance band for the one-prime divisor-sum ratio S₁/main at q = 2,
    /// N ∈ {16, 18, 20} (the error term is O(q^N log N / N) ≈ ±17% at N = 18).
    pub const HSU_RATIO_LO: f64 = 0.8;
    pub const HSU_RATIO_HI: f64 = 1.2;

    /// Acceptance band for the two-prime divisor-sum ratio S/main at q = 2 over
    /// N ∈ {12,…,20}; convergence is log-log slow, so only a broad band plus a
    /// drift-toward-1 trend is checkable at desk scale.
    pub const TWO_PRIME_RATIO_LO: f64 = 0.5;
    pub const TWO_PRIME_RATIO_HI: f64 = 1.6;

    /// Calibrated constant c in the Perron-formula budget |∫ − Σ| ≤ c·q^{σN}/T.
    ///
    /// Pilot runs on the grid a ∈ {1, τ}, q = 2, N₀ ∈ {2,3}, σ = 1.1,
    /// T ∈ {100, 400} observe c ≈ 1.1; 4.0 leaves the same headroom the other
    /// calibrated ceilings carry.
    pub const PERRON_C: f64 = 4.0;

    /// Calibrated ceiling for the normalized dispersion total·N/q^N at the
    /// level-policy modulus range (B = 1, base q) on the q = 2 grid
    /// N ∈ {8,…,14}: observed maxima stay ≤ 0.143 (ψ = 1_P∗1_P, N = 14),
    /// so 0.5 certifies "small relative to q^N/N" with 3.5× headroom.
    pub const DISPERSION_NORMALIZED_CEILING: f64 = 0.5;
}

/// Resource limits for the exhaustive-enumeration operations.
///
/// Guards fail *before* allocating, reporting the projected cost, so a typo'd
/// degree does not take the machine down with it.
#[derive(Clone, Copy, Debug, serde::Serialize, serde::Deserialize)]
pub struct Budgets {
    /// Largest enumeration the library will attempt (polynomial counts,
    /// sieve moduli spaces q^{2Q}, two-prime pair counts, …).
    pub max_enumeration: u128,
    /// Largest unit group φ(m) for which structure is computed.
    pub max_phi: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_enumeration: 1 << 26,
            max_phi: 100_000,
        }
    }
}

impl Budgets {
    /// Fail with a budget error if `needed` exceeds `limit`.
    pub fn check(what: &str, needed: u128, limit: u128) -> Result<()> {
        if needed > limit {
            Err(Error::Budget {
                what: what.to_string(),
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }

    pub fn check_enumeration(&self, what: &str, needed: u128) -> Result<()> {
        Self::check(what, needed, self.max_enumeration)
    }

    pub fn check_phi(&self, what: &str, needed: u64) -> Result<()> {
        Self::check(what, needed as u128, self.max_phi as u128)
    }
}

/// Crate-wide error type.
///
/// The CLI maps these onto its exit-code contract: domain/parse errors → 2,
/// budget errors → 3 (usage errors are caught earlier by argument parsing → 1).
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A mathematical precondition was violated (zero divisor, non-monic
    /// input where monic is required, out-of-range parameter, …).
    #[error("domain error: {0}")]
    Domain(String),

    /// A textual polynomial / field descriptor failed to parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// Modular inversion of a non-unit; carries the offending gcd.
    #[error("not invertible: gcd with modulus is {gcd}")]
    NotInvertible { gcd: poly::Poly },

    /// A resource guard tripped before any allocation happened.
    #[error("budget exceeded: {what} needs {needed}, limit is {limit}")]
    Budget {
        what: String,
        needed: u128,
        limit: u128,
    },

    /// Cache or report I/O failed.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Shorthand for a [`Error::Domain`] with a formatted message.
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
}

/// Deterministic per-trial RNG seed: the SplitMix64 finalizer applied to the
/// base seed combined with a parameter tag and a trial counter.
///
/// Every randomized experiment seeds ChaCha8 with
/// `derive_seed(base, tag, trial)`, where `tag` encodes the grid point (for
/// example `(q << 32) | n`), so outputs are bit-identical for a given base
/// seed, independent of sweep order or thread count.
pub fn derive_seed(base: u64, tag: u64, trial: u64) -> u64 {
    let mut z = base
        .wrapping_add(tag.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(trial.wrapping_mul(0xD1B5_4A32_D192_ED03));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
