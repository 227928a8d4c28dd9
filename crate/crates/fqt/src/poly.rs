//! Exact polynomial arithmetic in F_q[t]: degree, norm, division with
//! remainder, gcd/Bézout, monic enumeration, and the textual format used by
//! the CLI and the cache files.
//!
//! Monic polynomials are this crate's "positive integers": the norm
//! |f| = q^{deg f} is multiplicative, and division with remainder gives the
//! Euclidean structure everything else builds on.
//!
//! The zero polynomial's degree is `None` — a distinguished marker, never -1 —
//! so that no code path can silently compute a norm q^{-1}.

use crate::fq::{FieldSpec, Fq};
use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A polynomial over F_q, coefficients ascending, no trailing zeros.
#[derive(Clone)]
pub struct Poly {
    spec: Arc<FieldSpec>,
    coeffs: Vec<Fq>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        *self.spec == *other.spec && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.spec.q().hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.pretty())
    }
}

/// Canonical textual format: base-q digits, ascending powers, so "1101" over
/// F_2 is 1 + t + t³ and "01" is t. The zero polynomial prints as "0".
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for &c in &self.coeffs {
            write!(f, "{}", digit_char(c.index()))?;
        }
        Ok(())
    }
}

impl Poly {
    // ---- Constructors ----

    pub fn zero(spec: &Arc<FieldSpec>) -> Poly {
        Poly {
            spec: Arc::clone(spec),
            coeffs: Vec::new(),
        }
    }

    pub fn one(spec: &Arc<FieldSpec>) -> Poly {
        Poly::constant(spec, Fq::ONE)
    }

    pub fn constant(spec: &Arc<FieldSpec>, c: Fq) -> Poly {
        let coeffs = if c == Fq::ZERO { vec![] } else { vec![c] };
        Poly {
            spec: Arc::clone(spec),
            coeffs,
        }
    }

    /// The monomial c·t^deg.
    pub fn monomial(spec: &Arc<FieldSpec>, c: Fq, deg: usize) -> Poly {
        if c == Fq::ZERO {
            return Poly::zero(spec);
        }
        let mut coeffs = vec![Fq::ZERO; deg + 1];
        coeffs[deg] = c;
        Poly {
            spec: Arc::clone(spec),
            coeffs,
        }
    }

    /// The variable t.
    pub fn t(spec: &Arc<FieldSpec>) -> Poly {
        Poly::monomial(spec, Fq::ONE, 1)
    }

    /// From ascending coefficients given as element indices.
    pub fn from_indices(spec: &Arc<FieldSpec>, indices: &[u64]) -> Result<Poly> {
        let mut coeffs = Vec::with_capacity(indices.len());
        for &i in indices {
            coeffs.push(spec.elem(i)?);
        }
        Ok(Poly::from_coeffs(spec, coeffs))
    }

    /// From ascending coefficients; normalizes trailing zeros.
    pub fn from_coeffs(spec: &Arc<FieldSpec>, mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last() == Some(&Fq::ZERO) {
            coeffs.pop();
        }
        Poly {
            spec: Arc::clone(spec),
            coeffs,
        }
    }

    /// Parse the canonical digit string (inverse of `Display`).
    pub fn parse(spec: &Arc<FieldSpec>, s: &str) -> Result<Poly> {
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial string".into()));
        }
        if spec.q() > 36 {
            return Err(Error::Parse(format!(
                "textual format supports q ≤ 36, got q = {}",
                spec.q()
            )));
        }
        let mut coeffs = Vec::with_capacity(s.len());
        for ch in s.chars() {
            let d = char_digit(ch)
                .ok_or_else(|| Error::Parse(format!("invalid digit '{ch}' in \"{s}\"")))?;
            if d >= spec.q() {
                return Err(Error::Parse(format!(
                    "digit '{ch}' out of range for q = {} in \"{s}\"",
                    spec.q()
                )));
            }
            coeffs.push(spec.elem(d).expect("digit checked"));
        }
        Ok(Poly::from_coeffs(spec, coeffs))
    }

    // ---- Inspection ----

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Fq::ONE)
    }

    pub fn leading_coeff(&self) -> Option<Fq> {
        self.coeffs.last().copied()
    }

    /// Coefficient of t^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fq {
        self.coeffs.get(i).copied().unwrap_or(Fq::ZERO)
    }

    /// Ascending coefficients, trailing zeros trimmed.
    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    /// The norm |f| = q^{deg f}.
    ///
    /// Panics on the zero polynomial — zero has no norm, and callers are
    /// expected to have excluded it (that is what `degree() == None` is for).
    pub fn norm(&self) -> u128 {
        let deg = self
            .degree()
            .expect("norm of the zero polynomial is undefined");
        (self.spec.q() as u128).pow(deg as u32)
    }

    /// Human-readable form, e.g. "t^3 + t + 1" or "2t + 1" over F_3.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == Fq::ZERO {
                continue;
            }
            let coeff = digit_char(c.index());
            let term = match (i, c == Fq::ONE) {
                (0, _) => format!("{coeff}"),
                (1, true) => "t".to_string(),
                (1, false) => format!("{coeff}t"),
                (i, true) => format!("t^{i}"),
                (i, false) => format!("{coeff}t^{i}"),
            };
            terms.push(term);
        }
        terms.join(" + ")
    }

    // ---- Ring operations ----

    fn assert_same_spec(&self, other: &Poly) {
        assert!(
            *self.spec == *other.spec,
            "mixing polynomials over different fields: {} vs {}",
            self.spec.describe(),
            other.spec.describe()
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_spec(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.spec.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(&self.spec, out)
    }

    pub fn neg(&self) -> Poly {
        let out = self.coeffs.iter().map(|&c| self.spec.neg(c)).collect();
        Poly::from_coeffs(&self.spec, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_spec(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.spec);
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == Fq::ZERO {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = self.spec.add(out[i + j], self.spec.mul(a, b));
            }
        }
        Poly::from_coeffs(&self.spec, out)
    }

    pub fn mul_scalar(&self, c: Fq) -> Poly {
        let out = self.coeffs.iter().map(|&a| self.spec.mul(a, c)).collect();
        Poly::from_coeffs(&self.spec, out)
    }

    /// Division with remainder: returns (s, r) with self = s·b + r and
    /// deg r < deg b. Errors on a zero divisor.
    pub fn divrem(&self, b: &Poly) -> Result<(Poly, Poly)> {
        self.assert_same_spec(b);
        let db = b
            .degree()
            .ok_or_else(|| Error::domain("division by the zero polynomial"))?;
        let spec = &self.spec;
        let mut r = self.coeffs.clone();
        if r.len() <= db {
            return Ok((Poly::zero(spec), self.clone()));
        }
        let lead_inv = spec.inv(b.coeffs[db]).expect("nonzero leading coefficient");
        let mut quot = vec![Fq::ZERO; r.len() - db];
        while r.len() > db {
            let c = spec.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - 1 - db;
            if c != Fq::ZERO {
                quot[shift] = c;
                for (e, &bc) in b.coeffs.iter().enumerate() {
                    r[shift + e] = spec.sub(r[shift + e], spec.mul(c, bc));
                }
            }
            // The leading term is now zero by construction.
            r.pop();
            while r.last() == Some(&Fq::ZERO) {
                r.pop();
            }
        }
        Ok((
            Poly::from_coeffs(spec, quot),
            Poly::from_coeffs(spec, r),
        ))
    }

    /// Remainder of division by `b`.
    pub fn rem(&self, b: &Poly) -> Result<Poly> {
        Ok(self.divrem(b)?.1)
    }

    /// Scale so the leading coefficient is 1 (zero stays zero).
    pub fn make_monic(&self) -> Poly {
        match self.leading_coeff() {
            None | Some(Fq::ONE) => self.clone(),
            Some(lead) => self.mul_scalar(self.spec.inv(lead).expect("nonzero lead")),
        }
    }

    /// Monic gcd; gcd(f, 0) is the monic normalization of f.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_spec(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("b nonzero in gcd loop");
            a = b;
            b = r;
        }
        a.make_monic()
    }

    /// Extended gcd: returns (g, u, v) with u·self + v·other = g, g monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        self.assert_same_spec(other);
        let spec = &self.spec;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(spec), Poly::zero(spec));
        let (mut v0, mut v1) = (Poly::zero(spec), Poly::one(spec));
        while !r1.is_zero() {
            let (s, r) = r0.divrem(&r1).expect("r1 nonzero");
            let u = u0.sub(&s.mul(&u1));
            let v = v0.sub(&s.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        // Normalize to a monic gcd.
        match r0.leading_coeff() {
            None | Some(Fq::ONE) => (r0, u0, v0),
            Some(lead) => {
                let li = spec.inv(lead).expect("nonzero lead");
                (r0.mul_scalar(li), u0.mul_scalar(li), v0.mul_scalar(li))
            }
        }
    }

    /// Evaluate at a field point (Horner).
    pub fn eval(&self, x: Fq) -> Fq {
        let mut acc = Fq::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = self.spec.add(self.spec.mul(acc, x), c);
        }
        acc
    }

    /// self^e mod m by repeated squaring.
    pub fn pow_mod(&self, e: u128, m: &Poly) -> Result<Poly> {
        if m.is_zero() {
            return Err(Error::domain("pow_mod with zero modulus"));
        }
        let mut base = self.rem(m)?;
        let mut e = e;
        let mut acc = Poly::one(&self.spec).rem(m)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    // ---- Indexing within enumerations ----

    /// Position of a monic polynomial within the degree-d enumeration:
    /// the base-q integer formed by the d lower coefficients (constant term
    /// least significant). Inverse of [`Poly::from_monic_index`].
    pub fn monic_index(&self) -> u64 {
        debug_assert!(self.is_monic(), "monic_index of a non-monic polynomial");
        let deg = self.degree().unwrap();
        let mut idx = 0u64;
        for i in (0..deg).rev() {
            idx = idx * self.spec.q() + self.coeff(i).index();
        }
        idx
    }

    /// The monic polynomial of degree `deg` at position `idx` (see
    /// [`Poly::monic_index`]).
    pub fn from_monic_index(spec: &Arc<FieldSpec>, deg: usize, idx: u64) -> Poly {
        let q = spec.q();
        let mut coeffs = Vec::with_capacity(deg + 1);
        let mut rest = idx;
        for _ in 0..deg {
            coeffs.push(spec.elem(rest % q).expect("digit < q"));
            rest /= q;
        }
        debug_assert_eq!(rest, 0, "monic index out of range for degree {deg}");
        coeffs.push(Fq::ONE);
        Poly {
            spec: Arc::clone(spec),
            coeffs,
        }
    }

    /// Position of a polynomial of degree < `bound` within the residue
    /// enumeration: the base-q integer over all `bound` coefficient slots.
    pub fn index_below(&self, bound: usize) -> u64 {
        debug_assert!(
            self.degree().map_or(true, |d| d < bound),
            "index_below: degree out of range"
        );
        let mut idx = 0u64;
        for i in (0..bound).rev() {
            idx = idx * self.spec.q() + self.coeff(i).index();
        }
        idx
    }

    /// The polynomial of degree < `bound` at position `idx` (see
    /// [`Poly::index_below`]).
    pub fn from_index_below(spec: &Arc<FieldSpec>, bound: usize, idx: u64) -> Poly {
        let q = spec.q();
        let mut coeffs = Vec::with_capacity(bound);
        let mut rest = idx;
        for _ in 0..bound {
            coeffs.push(spec.elem(rest % q).expect("digit < q"));
            rest /= q;
        }
        debug_assert_eq!(rest, 0, "residue index out of range for bound {bound}");
        Poly::from_coeffs(spec, coeffs)
    }
}

/// All q^deg monic polynomials of the given degree, in ascending
/// [`Poly::monic_index`] order (lexicographic with the most significant
/// coefficient first, constant term varying fastest).
pub fn enumerate_monic(spec: &Arc<FieldSpec>, deg: usize) -> MonicIter {
    let count = (spec.q() as u128).pow(deg as u32);
    MonicIter {
        spec: Arc::clone(spec),
        deg,
        next: 0,
        count,
    }
}

pub struct MonicIter {
    spec: Arc<FieldSpec>,
    deg: usize,
    next: u128,
    count: u128,
}

impl Iterator for MonicIter {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.next >= self.count {
            return None;
        }
        let p = Poly::from_monic_index(&self.spec, self.deg, self.next as u64);
        self.next += 1;
        Some(p)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let rem = (self.count - self.next) as usize;
        (rem, Some(rem))
    }
}

/// Number of monic polynomials of degree `deg`: q^deg.
pub fn monic_count(q: u64, deg: usize) -> u128 {
    (q as u128).pow(deg as u32)
}

// ---- Digit alphabet for the textual format (q ≤ 36) ----

pub(crate) fn digit_char(d: u64) -> char {
    match d {
        0..=9 => (b'0' + d as u8) as char,
        10..=35 => (b'a' + (d - 10) as u8) as char,
        _ => panic!("digit {d} out of the textual alphabet"),
    }
}

pub(crate) fn char_digit(c: char) -> Option<u64> {
    match c {
        '0'..='9' => Some(c as u64 - '0' as u64),
        'a'..='z' => Some(c as u64 - 'a' as u64 + 10),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::prime(2).unwrap()
    }
    fn f3() -> Arc<FieldSpec> {
        FieldSpec::prime(3).unwrap()
    }

    fn p2(s: &str) -> Poly {
        Poly::parse(&f2(), s).unwrap()
    }

    #[test]
    fn textual_format_round_trip() {
        let f = p2("1101");
        assert_eq!(f.pretty(), "t^3 + t + 1");
        assert_eq!(f.to_string(), "1101");
        assert_eq!(f.degree(), Some(3));
        // "01" is t (ascending digits).
        assert_eq!(p2("01"), Poly::t(&f2()));
        // Trailing zero digits normalize away: "10" is the constant 1.
        assert_eq!(p2("10"), Poly::one(&f2()));
        assert_eq!(Poly::zero(&f2()).to_string(), "0");
        assert!(Poly::parse(&f2(), "12").is_err(), "digit 2 out of range for q=2");
        assert!(Poly::parse(&f2(), "").is_err());
        assert!(Poly::parse(&f2(), "1x1").is_err());
    }

    #[test]
    fn degree_and_norm() {
        assert_eq!(Poly::zero(&f2()).degree(), None, "zero degree is a marker, not -1");
        assert_eq!(Poly::one(&f2()).degree(), Some(0));
        assert_eq!(Poly::one(&f2()).norm(), 1);
        assert_eq!(p2("1101").norm(), 8);
        let f9 = FieldSpec::extension(3, 2).unwrap();
        assert_eq!(Poly::t(&f9).norm(), 9);
    }

    #[test]
    #[should_panic(expected = "norm of the zero polynomial")]
    fn zero_norm_panics() {
        let _ = Poly::zero(&f2()).norm();
    }

    #[test]
    fn divrem_example() {
        // t³+t+1 = t·t² + (t+1)
        let (s, r) = p2("1101").divrem(&p2("001")).unwrap();
        assert_eq!(s, p2("01"));
        assert_eq!(r, p2("11"));
        // Multiply back.
        assert_eq!(s.mul(&p2("001")).add(&r), p2("1101"));
        assert!(p2("11").divrem(&Poly::zero(&f2())).is_err());
    }

    #[test]
    fn gcd_examples() {
        // t²+t = t(t+1), t²+1 = (t+1)² over F_2 → gcd t+1.
        assert_eq!(p2("011").gcd(&p2("101")), p2("11"));
        // gcd(f, 0) is the monic normalization of f.
        let f3 = f3();
        let two_t = Poly::monomial(&f3, f3.elem(2).unwrap(), 1);
        assert_eq!(two_t.gcd(&Poly::zero(&f3)), Poly::t(&f3));
        // Coprime cubics.
        assert_eq!(p2("1101").gcd(&p2("1011")), Poly::one(&f2()));
    }

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [("011", "101"), ("1101", "001"), ("111", "11"), ("1", "01")] {
            let (a, b) = (p2(a), p2(b));
            let (g, u, v) = a.ext_gcd(&b);
            assert_eq!(u.mul(&a).add(&v.mul(&b)), g, "Bézout identity for ({a}, {b})");
            assert!(g.is_monic());
            assert_eq!(g, a.gcd(&b));
        }
    }

    #[test]
    fn eval_horner() {
        let f3 = f3();
        // t² + 1 over F_3: no roots (this is why it is irreducible).
        let f = Poly::parse(&f3, "101").unwrap();
        for x in 0..3 {
            assert_ne!(f.eval(f3.elem(x).unwrap()), Fq::ZERO);
        }
        // t² + t over F_2 vanishes everywhere.
        let g = p2("011");
        for x in 0..2 {
            assert_eq!(g.eval(f2().elem(x).unwrap()), Fq::ZERO);
        }
    }

    #[test]
    fn enumerate_monic_counts_and_order() {
        let polys: Vec<Poly> = enumerate_monic(&f2(), 1).collect();
        assert_eq!(polys, vec![p2("01"), p2("11")], "q=2 degree 1: t, t+1");
        assert_eq!(enumerate_monic(&f2(), 2).count(), 4);
        assert_eq!(enumerate_monic(&f3(), 2).count(), 9);
        assert_eq!(enumerate_monic(&f2(), 0).count(), 1, "degree 0: just 1");
        // No duplicates, and index round-trips.
        for deg in 0..=6 {
            let all: Vec<Poly> = enumerate_monic(&f2(), deg).collect();
            assert_eq!(all.len(), 1 << deg);
            for (i, f) in all.iter().enumerate() {
                assert_eq!(f.monic_index(), i as u64);
                assert_eq!(Poly::from_monic_index(&f2(), deg, i as u64), *f);
                assert!(f.is_monic());
                assert_eq!(f.degree(), Some(deg));
            }
        }
    }

    #[test]
    fn index_below_round_trip() {
        let f3 = f3();
        for idx in 0..27u64 {
            let f = Poly::from_index_below(&f3, 3, idx);
            assert_eq!(f.index_below(3), idx);
            assert!(f.degree().map_or(true, |d| d < 3));
        }
    }

    #[test]
    fn pow_mod_matches_naive() {
        let m = p2("111"); // t² + t + 1
        let t = Poly::t(&f2());
        let mut naive = Poly::one(&f2());
        for e in 0..=8u32 {
            assert_eq!(
                t.pow_mod(e as u128, &m).unwrap(),
                naive.rem(&m).unwrap(),
                "t^{e} mod t²+t+1"
            );
            naive = naive.mul(&t);
        }
    }

    // ---- Property tests ----

    fn arb_poly(q_choice: u64, max_deg: usize) -> impl Strategy<Value = Poly> {
        let spec = match q_choice {
            2 => f2(),
            3 => f3(),
            _ => FieldSpec::extension(2, 2).unwrap(),
        };
        proptest::collection::vec(0..spec.q(), 0..=max_deg).prop_map(move |idx| {
            Poly::from_indices(&spec, &idx).unwrap()
        })
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(q in prop::sample::select(vec![2u64, 3, 4]),
                                   ai in proptest::collection::vec(0u64..4, 1..8),
                                   bi in proptest::collection::vec(0u64..4, 1..8)) {
            let spec = match q { 2 => f2(), 3 => f3(), _ => FieldSpec::extension(2, 2).unwrap() };
            let a = Poly::from_indices(&spec, &ai.iter().map(|&x| x % q).collect::<Vec<_>>()).unwrap();
            let b = Poly::from_indices(&spec, &bi.iter().map(|&x| x % q).collect::<Vec<_>>()).unwrap();
            prop_assume!(!a.is_zero() && !b.is_zero());
            prop_assert_eq!(a.mul(&b).norm(), a.norm() * b.norm());
        }

        #[test]
        fn divrem_round_trips(q in prop::sample::select(vec![2u64, 3, 4]),
                              seed_a in 0u64..10_000, seed_b in 0u64..10_000,
                              da in 0usize..10, db in 0usize..8) {
            let spec = match q { 2 => f2(), 3 => f3(), _ => FieldSpec::extension(2, 2).unwrap() };
            let a = Poly::from_monic_index(&spec, da, seed_a % spec.q().pow(da as u32));
            let b = Poly::from_monic_index(&spec, db, seed_b % spec.q().pow(db as u32));
            let (s, r) = a.divrem(&b).unwrap();
            prop_assert_eq!(s.mul(&b).add(&r), a, "a = s·b + r");
            if let Some(dr) = r.degree() {
                prop_assert!(dr < b.degree().unwrap(), "deg r < deg b");
            }
        }

        #[test]
        fn parse_display_round_trips(f in arb_poly(2, 12)) {
            let s = f.to_string();
            let back = Poly::parse(f.spec(), &s).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
