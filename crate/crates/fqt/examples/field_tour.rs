//! A tour of the coefficient field F_q and the polynomial ring F_q[t].
//!
//! Builds F_8 = F_2[x]/(x³ + x + 1), walks through arithmetic, the Frobenius
//! orbit, and the absolute trace, then evaluates the canonical additive
//! character E = exp(2πi·Tr(·)/p) and checks its defining cancellation
//! Σ_{x ∈ F_q} E(x) = 0. The second half moves up to F_q[t]: parsing,
//! division with remainder, gcd, and the character e(g/f) that powers the
//! additive large sieve.

use fqt::chars::additive_char_e;
use fqt::{FieldSpec, Poly};
use num_complex::Complex64;

fn main() -> fqt::Result<()> {
    let spec = FieldSpec::extension(2, 3)?;
    println!("field: {}", spec.describe());
    println!("modulus coefficients over F_p: {:?}", spec.modulus_coeffs());
    println!();

    // Elements are indices 0..q; coords() shows them against the power basis.
    println!("elements as F_2-coordinate vectors (1, x, x²):");
    for x in spec.elements() {
        println!("  {:>2} ↦ {:?}", x.index(), spec.coords(x));
    }
    println!();

    // Arithmetic: x = index 2 is the residue of x itself.
    let x = spec.elem(2)?;
    let y = spec.elem(5)?;
    println!("take x = elem 2, y = elem 5:");
    println!("  x + y   = elem {}", spec.add(x, y).index());
    println!("  x · y   = elem {}", spec.mul(x, y).index());
    println!("  x⁻¹     = elem {}", spec.inv(x)?.index());
    println!("  x · x⁻¹ = elem {}", spec.mul(x, spec.inv(x)?).index());

    // The multiplicative group is cyclic of order q − 1 = 7; x generates it.
    let orbit: Vec<u64> = (0..7).map(|e| spec.pow(x, e).index()).collect();
    println!("  powers of x: {orbit:?}");
    println!();

    // Frobenius orbits {x, x^p, x^p², …} and the absolute trace, which is
    // constant on each orbit and lands in the prime field.
    println!("Frobenius orbits and traces:");
    for x in spec.elements() {
        let mut orbit = vec![x.index()];
        let mut y = spec.pow(x, spec.p());
        while y != x {
            orbit.push(y.index());
            y = spec.pow(y, spec.p());
        }
        println!("  orbit {orbit:?} → Tr = {}", spec.trace(x));
    }
    println!();

    // The additive character E(x) = exp(2πi·Tr(x)/p). Its values are p-th
    // roots of unity, and summing over the field gives exactly zero.
    let total: Complex64 = spec.elements().map(|x| spec.char_e(x)).sum();
    println!("Σ_x E(x) = {:.3e} + {:.3e}i (exact cancellation)", total.re, total.im);
    println!();

    // ---- Up one level: F_3[t] ----
    let spec = FieldSpec::prime(3)?;
    println!("ring: {}[t]", spec.describe());

    // Polynomials parse as base-q digit strings, lowest coefficient first:
    // "1201" is 1 + 2t + 0t² + t³.
    let f = Poly::parse(&spec, "1201")?;
    let g = Poly::parse(&spec, "21")?;
    println!("f = {f} = {}", f.pretty());
    println!("g = {g} = {}", g.pretty());
    println!("|f| = q^deg f = {}", f.norm());

    let (quot, rem) = f.divrem(&g)?;
    println!("f = ({})·g + ({})", quot.pretty(), rem.pretty());
    println!("gcd(f, g) = {}", f.gcd(&g).pretty());
    println!();

    // e(g/f) reads the t^{−1} Laurent coefficient of g/f — the coefficient
    // of t^{deg f − 1} in g mod f — through E. Summing e(h/f) over all h of
    // degree < deg f cancels unless f | h, the orthogonality that underpins
    // the additive large sieve.
    let mut total = Complex64::new(0.0, 0.0);
    for idx in 0..f.norm() as u64 {
        let h = Poly::from_index_below(&spec, f.degree().unwrap(), idx);
        total += additive_char_e(&h, &f)?;
    }
    println!("Σ_{{deg h < {}}} e(h/f) = {:.3e} + {:.3e}i", f.degree().unwrap(), total.re, total.im);
    Ok(())
}
