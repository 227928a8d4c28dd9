//! The coefficient field F_q, q = p^k: exact arithmetic, the trace map down to
//! F_p, and the additive character E(x) = exp(2πi·Tr(x)/p).
//!
//! Elements are stored as indices 0..q. The base-p digits of an index are the
//! element's coordinates in the power basis 1, x, …, x^{k-1} of
//! F_p[x]/(m(x)), where m is a fixed modulus chosen once per (p, k): the
//! lexicographically least monic irreducible of degree k (least as a base-p
//! integer with the constant coefficient in the least significant digit).
//! All results here are modulus-independent, but the choice is conspicuous and
//! recorded so that runs are reproducible.

use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;
use std::sync::{Arc, OnceLock};

/// An element of F_q, as an index in 0..q (base-p digits = coordinates).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Fq(u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    /// The element's index in 0..q.
    pub fn index(self) -> u64 {
        self.0
    }
}

/// A description of F_q with its arithmetic.
///
/// Construct with [`FieldSpec::prime`] or [`FieldSpec::extension`]; the
/// constructors hand out an `Arc` because polynomials and residue rings share
/// the spec freely.
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Coefficients of the extension modulus m(x) over F_p, ascending, length
    /// k+1, monic. Empty when k = 1 (no extension needed).
    modulus: Vec<u64>,
    /// exp(2πi·j/p) for j in 0..p.
    roots_of_unity: Vec<Complex64>,
    /// Lazily built inverse table (index 0 unused).
    inv_table: OnceLock<Vec<u64>>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}
impl Eq for FieldSpec {}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldSpec(q={}={}^{})", self.q, self.p, self.k)
    }
}

impl FieldSpec {
    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<Arc<FieldSpec>> {
        FieldSpec::extension(p, 1)
    }

    /// The extension field F_{p^k} with the fixed conspicuous modulus.
    pub fn extension(p: u64, k: u32) -> Result<Arc<FieldSpec>> {
        if !is_prime_u64(p) {
            return Err(Error::domain(format!("characteristic {p} is not prime")));
        }
        if k == 0 {
            return Err(Error::domain("extension degree k must be >= 1"));
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= 1 << 16)
            .ok_or_else(|| Error::domain(format!("q = {p}^{k} exceeds the supported 2^16")))?;
        let modulus = if k == 1 {
            Vec::new()
        } else {
            least_irreducible_modulus(p, k)
        };
        let roots_of_unity = (0..p)
            .map(|j| Complex64::from_polar(1.0, TAU * j as f64 / p as f64))
            .collect();
        Ok(Arc::new(FieldSpec {
            p,
            k,
            q,
            modulus,
            roots_of_unity,
            inv_table: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Ascending coefficients of the extension modulus over F_p (empty for k = 1).
    pub fn modulus_coeffs(&self) -> &[u64] {
        &self.modulus
    }

    /// Human-readable description of the field, including the modulus choice,
    /// for report headers.
    pub fn describe(&self) -> String {
        if self.k == 1 {
            format!("F_{} (prime field)", self.q)
        } else {
            let m = poly_over_fp_string(&self.modulus);
            format!("F_{} = F_{}[x]/({})", self.q, self.p, m)
        }
    }

    /// The element with the given index; errors if out of range.
    pub fn elem(&self, index: u64) -> Result<Fq> {
        if index < self.q {
            Ok(Fq(index))
        } else {
            Err(Error::domain(format!(
                "element index {index} out of range for q = {}",
                self.q
            )))
        }
    }

    /// Coordinates in the F_p power basis (length k, least significant first).
    pub fn coords(&self, x: Fq) -> Vec<u64> {
        let mut v = Vec::with_capacity(self.k as usize);
        let mut rest = x.0;
        for _ in 0..self.k {
            v.push(rest % self.p);
            rest /= self.p;
        }
        v
    }

    /// Element from coordinates (each in [0, p); at most k of them).
    pub fn from_coords(&self, coords: &[u64]) -> Result<Fq> {
        if coords.len() > self.k as usize {
            return Err(Error::domain(format!(
                "{} coordinates for an extension of degree {}",
                coords.len(),
                self.k
            )));
        }
        let mut idx = 0u64;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.p {
                return Err(Error::domain(format!("coordinate {c} not in [0, {})", self.p)));
            }
            idx += c * self.p.pow(i as u32);
        }
        Ok(Fq(idx))
    }

    /// All q elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(Fq)
    }

    // ---- Arithmetic ----

    pub fn add(&self, x: Fq, y: Fq) -> Fq {
        if self.k == 1 {
            return Fq((x.0 + y.0) % self.p);
        }
        // Digit-wise addition mod p; no carries between coordinates.
        let (mut a, mut b, mut out, mut scale) = (x.0, y.0, 0u64, 1u64);
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        Fq(out)
    }

    pub fn neg(&self, x: Fq) -> Fq {
        if self.k == 1 {
            return Fq((self.p - x.0) % self.p);
        }
        let (mut a, mut out, mut scale) = (x.0, 0u64, 1u64);
        for _ in 0..self.k {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        Fq(out)
    }

    pub fn sub(&self, x: Fq, y: Fq) -> Fq {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Fq, y: Fq) -> Fq {
        if self.k == 1 {
            return Fq((x.0 * y.0) % self.p);
        }
        // Schoolbook product of the coordinate polynomials, reduced by the
        // extension modulus over F_p.
        let k = self.k as usize;
        let (xa, ya) = (self.coords(x), self.coords(y));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &xi) in xa.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in ya.iter().enumerate() {
                prod[i + j] = (prod[i + j] + xi * yj) % self.p;
            }
        }
        // Reduce: modulus is monic of degree k.
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (e, &mc) in self.modulus.iter().enumerate().take(k) {
                // prod -= c * m(x) * x^{d-k}
                let idx = d - k + e;
                prod[idx] = (prod[idx] + c * (self.p - mc) % (self.p * self.p)) % self.p;
            }
        }
        self.from_coords(&prod[..k]).expect("reduced product in range")
    }

    /// x^e by binary exponentiation.
    pub fn pow(&self, x: Fq, e: u64) -> Fq {
        let mut base = x;
        let mut e = e;
        let mut acc = Fq::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, x: Fq) -> Result<Fq> {
        if x == Fq::ZERO {
            return Err(Error::domain("inversion of zero in F_q"));
        }
        let table = self.inv_table.get_or_init(|| {
            // x^{q-2} per element; q ≤ 2^16 keeps this cheap and it is built once.
            (0..self.q).map(|i| self.pow(Fq(i), self.q - 2).0).collect()
        });
        Ok(Fq(table[x.0 as usize]))
    }

    pub fn div(&self, x: Fq, y: Fq) -> Result<Fq> {
        Ok(self.mul(x, self.inv(y)?))
    }

    // ---- Trace and the additive character ----

    /// Tr(x) = x + x^p + … + x^{p^{k-1}}, landing in the prime subfield,
    /// returned as an integer in [0, p).
    pub fn trace(&self, x: Fq) -> u64 {
        if self.k == 1 {
            return x.0;
        }
        let mut acc = x;
        let mut frob = x;
        for _ in 1..self.k {
            frob = self.pow(frob, self.p);
            acc = self.add(acc, frob);
        }
        debug_assert!(
            acc.0 < self.p,
            "trace of {acc:?} left the prime subfield (modulus bug)"
        );
        acc.0
    }

    /// The additive character E(x) = exp(2πi·Tr(x)/p); |E| = 1 and
    /// E(x+y) = E(x)E(y).
    pub fn char_e(&self, x: Fq) -> Complex64 {
        self.roots_of_unity[self.trace(x) as usize]
    }

    /// exp(2πi·j/p) for a prime-field digit j (used by the additive character
    /// on F_q(t)_∞, which reads off one coordinate of a residue).
    pub fn root_of_unity(&self, j: u64) -> Complex64 {
        self.roots_of_unity[(j % self.p) as usize]
    }
}

// ---- Small helpers over F_p (modulus discovery) ----

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Dense little F_p[x] arithmetic, just enough to find an irreducible modulus.
/// (The main polynomial type in this crate works over F_q; here we need F_p.)
fn fp_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let db = b.len() - 1;
    let lead_inv = mod_inv_prime(b[db], p);
    let mut r: Vec<u64> = a.to_vec();
    while r.len() > db {
        let c = (r[r.len() - 1] * lead_inv) % p;
        let shift = r.len() - 1 - db;
        if c != 0 {
            for (e, &bc) in b.iter().enumerate() {
                let idx = shift + e;
                r[idx] = (r[idx] + (p - (c * bc) % p)) % p;
            }
        }
        while r.len() > 1 && *r.last().unwrap() == 0 {
            r.pop();
        }
        if r.len() == 1 && r[0] == 0 {
            break;
        }
        if r.len() <= db {
            break;
        }
    }
    r
}

fn mod_inv_prime(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≠ 0 mod p.
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

fn fp_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Irreducibility of a monic polynomial over F_p by trial division against
/// every monic polynomial of degree ≤ deg/2. Exhaustive and tiny at the
/// extension degrees in use (k ≤ 16).
fn fp_irreducible(f: &[u64], p: u64) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        // Monic divisors of degree d, indexed by their lower coefficients.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut rest = idx;
            for _ in 0..d {
                g.push(rest % p);
                rest /= p;
            }
            g.push(1);
            if fp_is_zero(&fp_rem(f, &g, p)) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible_modulus(p: u64, k: u32) -> Vec<u64> {
    let count = p.pow(k);
    for idx in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut rest = idx;
        for _ in 0..k {
            f.push(rest % p);
            rest /= p;
        }
        f.push(1); // monic
        if fp_irreducible(&f, p) {
            return f;
        }
    }
    unreachable!("irreducibles of every degree exist over F_p")
}

fn poly_over_fp_string(coeffs: &[u64]) -> String {
    let mut terms: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let t = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        terms.push(t);
    }
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join(" + ")
    }
}
