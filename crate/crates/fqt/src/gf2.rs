//! Bit-packed polynomials over F_2: a polynomial of degree ≤ 63 is a `u64`
//! with bit i holding the coefficient of t^i, so "1101" packs to 0b1011.
//!
//! This is the hot path for q = 2 — the divisor-sum experiments enumerate on
//! the order of q^N polynomials, and a carry-less multiply plus shift/xor
//! division is an order of magnitude faster than the generic representation.
//! The contract is purely that every operation here agrees with [`crate::poly`]
//! on all inputs; the differential tests at the bottom (and in the integration
//! suite) enforce exactly that.

use crate::fq::FieldSpec;
use crate::poly::Poly;
use crate::{Error, Result};
use std::sync::Arc;

/// Degree of a packed polynomial, or `None` for zero (same marker convention
/// as [`Poly::degree`]).
#[inline]
pub fn deg(f: u64) -> Option<u32> {
    if f == 0 {
        None
    } else {
        Some(63 - f.leading_zeros())
    }
}

/// Carry-less product. The degrees must sum to ≤ 63.
#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    debug_assert!(
        deg(a).unwrap() + deg(b).unwrap() <= 63,
        "packed product overflows 64 bits"
    );
    let mut out = 0u64;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            out ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    out
}

/// Division with remainder: (quotient, remainder), remainder of degree
/// < deg b. Panics on b = 0 (callers guarantee a nonzero divisor).
#[inline]
pub fn divrem(a: u64, b: u64) -> (u64, u64) {
    let db = deg(b).expect("packed division by zero");
    let mut r = a;
    let mut q = 0u64;
    while let Some(dr) = deg(r) {
        if dr < db {
            break;
        }
        let shift = dr - db;
        r ^= b << shift;
        q |= 1 << shift;
    }
    (q, r)
}

#[inline]
pub fn rem(a: u64, b: u64) -> u64 {
    divrem(a, b).1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

/// (a·b) mod m without overflowing: reduces b first, then folds the shifted
/// additions modulo m as it goes. Requires deg m ≤ 62.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    let dm = deg(m).expect("zero modulus");
    debug_assert!(dm <= 62);
    let mut a = rem(a, m);
    let mut b = rem(b, m);
    let mut out = 0u64;
    while a != 0 {
        if a & 1 == 1 {
            out ^= b;
        }
        a >>= 1;
        b <<= 1;
        if deg(b) == Some(dm) {
            b ^= m;
        }
    }
    out
}

/// base^e mod m by repeated squaring (packed).
pub fn pow_mod(base: u64, mut e: u128, m: u64) -> u64 {
    let mut base = rem(base, m);
    let mut acc = rem(1, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// The monic packed polynomial of degree `deg` with lower bits `idx`
/// (the packed twin of [`Poly::from_monic_index`]).
#[inline]
pub fn monic_of_degree(degree: u32, idx: u64) -> u64 {
    debug_assert!(idx < (1 << degree));
    idx | (1 << degree)
}

/// Pack a generic polynomial (must be over F_2, degree ≤ 63).
pub fn from_poly(f: &Poly) -> Result<u64> {
    if f.spec().q() != 2 {
        return Err(Error::domain("packed representation requires q = 2"));
    }
    if f.degree().map_or(false, |d| d > 63) {
        return Err(Error::domain("packed representation requires degree ≤ 63"));
    }
    let mut bits = 0u64;
    for (i, c) in f.coeffs().iter().enumerate() {
        bits |= c.index() << i;
    }
    Ok(bits)
}

/// Unpack into the generic representation.
pub fn to_poly(spec: &Arc<FieldSpec>, bits: u64) -> Poly {
    debug_assert_eq!(spec.q(), 2, "packed representation is F_2-only");
    let mut indices = Vec::with_capacity(64 - bits.leading_zeros() as usize);
    let mut rest = bits;
    while rest != 0 {
        indices.push(rest & 1);
        rest >>= 1;
    }
    Poly::from_indices(spec, &indices).expect("bits are valid F_2 digits")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn pack_round_trip() {
        let spec = f2();
        let f = Poly::parse(&spec, "1101").unwrap();
        let bits = from_poly(&f).unwrap();
        assert_eq!(bits, 0b1011, "1 + t + t³ packs low-bit-first");
        assert_eq!(to_poly(&spec, bits), f);
        assert_eq!(deg(bits), Some(3));
        assert_eq!(deg(0), None);
    }

    /// Packed and generic arithmetic agree on every pair of polynomials of
    /// degree ≤ 6 (4096 pairs of nonzero divisors, 16384 products).
    #[test]
    fn differential_against_generic_exhaustive() {
        let spec = f2();
        for a in 0u64..128 {
            let pa = to_poly(&spec, a);
            for b in 0u64..128 {
                let pb = to_poly(&spec, b);
                assert_eq!(
                    mul(a, b),
                    from_poly(&pa.mul(&pb)).unwrap(),
                    "mul mismatch at ({a:#b}, {b:#b})"
                );
                assert_eq!(from_poly(&pa.gcd(&pb)).unwrap(), gcd(a, b), "gcd mismatch");
                if b != 0 {
                    let (q, r) = divrem(a, b);
                    let (gq, gr) = pa.divrem(&pb).unwrap();
                    assert_eq!(q, from_poly(&gq).unwrap(), "quotient mismatch");
                    assert_eq!(r, from_poly(&gr).unwrap(), "remainder mismatch");
                }
            }
        }
    }

    #[test]
    fn mul_mod_and_pow_mod() {
        let m = 0b111u64; // t² + t + 1
        // t has order 3 in the field F_4 = F_2[t]/(t²+t+1).
        assert_eq!(pow_mod(0b10, 3, m), 1);
        assert_eq!(pow_mod(0b10, 1, m), 0b10);
        assert_eq!(pow_mod(0b10, 2, m), 0b11, "t² ≡ t + 1");
        for a in 0..64u64 {
            for b in 0..64u64 {
                assert_eq!(mul_mod(a, b, m), rem(mul(rem(a, m), rem(b, m)), m));
            }
        }
    }

    #[test]
    fn monic_enumeration_matches_generic() {
        let spec = f2();
        for degree in 0..6u32 {
            let generic: Vec<u64> = crate::poly::enumerate_monic(&spec, degree as usize)
                .map(|f| from_poly(&f).unwrap())
                .collect();
            let packed: Vec<u64> = (0..1u64 << degree)
                .map(|i| monic_of_degree(degree, i))
                .collect();
            assert_eq!(generic, packed, "same enumeration order at degree {degree}");
        }
    }
}
