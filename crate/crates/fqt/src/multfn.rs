//! Irreducibility, factorization, prime counting, and the multiplicative
//! functions τ_k, φ, μ over F_q[t], plus the arithmetic-function framework
//! (Dirichlet convolution over ordered monic pairs).
//!
//! Monic irreducibles are the primes of F_q[t]. Their count at degree N obeys
//! the exact necklace formula π(N) = (1/N)·Σ_{d|N} μ(d)·q^{N/d}, which doubles
//! as an independent check on every enumeration this module performs, and the
//! prime number theorem band |π(N) − q^N/N| ≤ 2q^{N/2}/N.
//!
//! Two irreducibility routes coexist deliberately: trial division (the
//! trustworthy oracle, used up to degree 12) and the Frobenius criterion
//! (t^{q^n} ≡ t mod f plus gcd checks at proper divisors, which scales).
//! They are asserted to agree on an overlap band.

use crate::fq::{FieldSpec, Fq};
use crate::gf2;
use crate::poly::{enumerate_monic, Poly};
use crate::{Budgets, Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Degree at or below which irreducibility uses exhaustive trial division;
/// above it the Frobenius criterion takes over. The two routes are
/// differentially tested on the band [8, 12].
pub const TRIAL_DIVISION_MAX_DEG: usize = 12;

// ---- Prime counting by formula ----

/// Möbius function of an ordinary integer (trial factorization; n is a degree
/// here, so it is tiny).
pub fn moebius_int(n: u64) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Exact count of monic irreducibles of degree n over F_q:
/// π(n) = (1/n)·Σ_{d|n} μ(d)·q^{n/d} (the necklace formula).
pub fn necklace_count(q: u64, n: usize) -> u128 {
    assert!(n >= 1, "necklace count needs degree >= 1");
    let mut total: i128 = 0;
    for d in 1..=n as u64 {
        if n as u64 % d != 0 {
            continue;
        }
        let mu = moebius_int(d) as i128;
        if mu != 0 {
            total += mu * (q as i128).pow((n as u64 / d) as u32);
        }
    }
    debug_assert!(total > 0 && total % n as i128 == 0, "necklace sum divisible by n");
    (total / n as i128) as u128
}

/// Exact check of the prime number theorem band |π(N) − q^N/N| ≤ 2·q^{N/2}/N,
/// done in integers by squaring: (N·π − q^N)² ≤ 4·q^N.
pub fn pnt_band_ok(q: u64, n: usize, count: u128) -> bool {
    let qn = (q as i128).pow(n as u32);
    let diff = n as i128 * count as i128 - qn;
    diff * diff <= 4 * qn
}

/// Same for progressions: |π(N;d,a) − q^N/(φ(d)N)| ≤ 4·q^{N/2}/N, squared to
/// (φ·N·π − q^N)² ≤ 16·φ²·q^N.
pub fn pnt_ap_band_ok(q: u64, n: usize, phi_d: u128, count: u128) -> bool {
    let qn = (q as i128).pow(n as u32);
    let phi = phi_d as i128;
    let diff = phi * n as i128 * count as i128 - qn;
    diff * diff <= 16 * phi * phi * qn
}

// ---- Irreducibility ----

fn require_positive_degree(f: &Poly) -> Result<usize> {
    match f.degree() {
        Some(d) if d >= 1 => Ok(d),
        Some(_) => Err(Error::domain("irreducibility is undefined for constants")),
        None => Err(Error::domain("irreducibility is undefined for zero")),
    }
}

/// Trial division by every monic polynomial of degree ≤ deg(f)/2.
///
/// Exhaustive, table-free, and obviously correct — the oracle route. Cost is
/// O(q^{deg/2}) divisions, fine up to [`TRIAL_DIVISION_MAX_DEG`].
pub fn is_irreducible_trial(f: &Poly) -> Result<bool> {
    let deg = require_positive_degree(f)?;
    let spec = f.spec();
    if spec.q() == 2 {
        let bits = gf2::from_poly(f)?;
        for d in 1..=deg / 2 {
            for idx in 0..1u64 << d {
                if gf2::rem(bits, gf2::monic_of_degree(d as u32, idx)) == 0 {
                    return Ok(false);
                }
            }
        }
        return Ok(true);
    }
    for d in 1..=deg / 2 {
        for g in enumerate_monic(spec, d) {
            if f.rem(&g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Frobenius criterion: f of degree n is irreducible iff t^{q^n} ≡ t (mod f)
/// and gcd(t^{q^{n/r}} − t, f) = 1 for every prime r | n.
pub fn is_irreducible_frobenius(f: &Poly) -> Result<bool> {
    let n = require_positive_degree(f)?;
    let spec = f.spec();
    let q = spec.q();
    let prime_divs = prime_divisors(n as u64);

    if q == 2 {
        let bits = gf2::from_poly(f)?;
        // Iterate x ← x^2 mod f, so x_i = t^{2^i} mod f.
        let mut x = gf2::rem(0b10, bits);
        for i in 1..=n {
            x = gf2::mul_mod(x, x, bits);
            if prime_divs.iter().any(|&r| i == n / r as usize) {
                let g = gf2::gcd(x ^ gf2::rem(0b10, bits), bits);
                if gf2::deg(g) != Some(0) {
                    return Ok(false);
                }
            }
        }
        return Ok(x == gf2::rem(0b10, bits));
    }

    let t = Poly::t(spec);
    let mut x = t.rem(f)?;
    for i in 1..=n {
        x = x.pow_mod(q as u128, f)?;
        if prime_divs.iter().any(|&r| i == n / r as usize) {
            let g = x.sub(&t.rem(f)?).gcd(f);
            if !g.is_one() {
                return Ok(false);
            }
        }
    }
    Ok(x == t.rem(f)?)
}

fn prime_divisors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility with the route chosen by degree: trial division up to
/// [`TRIAL_DIVISION_MAX_DEG`], Frobenius above.
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let deg = require_positive_degree(f)?;
    if deg <= TRIAL_DIVISION_MAX_DEG {
        is_irreducible_trial(f)
    } else {
        is_irreducible_frobenius(f)
    }
}

// ---- The irreducible table ----

/// All monic irreducibles up to a maximum degree, per degree in enumeration
/// order, with an optional bit-packed mirror for q = 2.
pub struct IrreducibleTable {
    spec: Arc<FieldSpec>,
    /// by_degree[d] holds the irreducibles of degree d (index 0 is empty).
    by_degree: Vec<Vec<Poly>>,
    /// Packed twin of `by_degree`, kept in lockstep when q = 2.
    packed_by_degree: Option<Vec<Vec<u64>>>,
}

impl IrreducibleTable {
    /// Build the table up to `max_deg`, checking every per-degree count
    /// against the necklace formula.
    pub fn build(spec: &Arc<FieldSpec>, max_deg: usize, budgets: &Budgets) -> Result<Self> {
        Self::build_cached(spec, max_deg, budgets, None)
    }

    /// Like [`IrreducibleTable::build`], but reading/writing per-degree cache
    /// files under `dir` (see the cache format documented in the README).
    pub fn build_cached(
        spec: &Arc<FieldSpec>,
        max_deg: usize,
        budgets: &Budgets,
        dir: Option<&Path>,
    ) -> Result<Self> {
        let mut needed: u128 = 0;
        for d in 1..=max_deg {
            needed += (spec.q() as u128).pow(d as u32);
        }
        budgets.check_enumeration(
            &format!("irreducible table to degree {max_deg} at q={}", spec.q()),
            needed,
        )?;

        let mut table = IrreducibleTable {
            spec: Arc::clone(spec),
            by_degree: vec![Vec::new()],
            packed_by_degree: if spec.q() == 2 {
                Some(vec![Vec::new()])
            } else {
                None
            },
        };
        for d in 1..=max_deg {
            let list = match dir {
                Some(dir) if cache_path(spec, dir, d).exists() => {
                    load_cache_degree(spec, dir, d)?
                }
                _ => {
                    let computed = table.compute_degree(d);
                    if let Some(dir) = dir {
                        write_cache_degree(spec, dir, d, &computed)?;
                    }
                    computed
                }
            };
            let expected = necklace_count(spec.q(), d);
            assert_eq!(
                list.len() as u128,
                expected,
                "irreducible count at degree {d} disagrees with the necklace formula"
            );
            if let Some(packed) = &mut table.packed_by_degree {
                packed.push(list.iter().map(|f| gf2::from_poly(f).unwrap()).collect());
            }
            table.by_degree.push(list);
        }
        Ok(table)
    }

    /// Enumerate degree d and keep the irreducibles, trial-dividing by the
    /// already-built lower degrees.
    fn compute_degree(&self, d: usize) -> Vec<Poly> {
        let spec = &self.spec;
        if let Some(packed) = &self.packed_by_degree {
            // Fast path: packed trial division.
            let mut out = Vec::new();
            for idx in 0..1u64 << d {
                let bits = gf2::monic_of_degree(d as u32, idx);
                let mut composite = false;
                'trial: for divisor_deg in 1..=d / 2 {
                    for &p in &packed[divisor_deg] {
                        if gf2::rem(bits, p) == 0 {
                            composite = true;
                            break 'trial;
                        }
                    }
                }
                if !composite {
                    out.push(gf2::to_poly(spec, bits));
                }
            }
            return out;
        }
        let mut out = Vec::new();
        'cand: for f in enumerate_monic(spec, d) {
            for divisor_deg in 1..=d / 2 {
                for p in &self.by_degree[divisor_deg] {
                    if f.rem(p).expect("nonzero divisor").is_zero() {
                        continue 'cand;
                    }
                }
            }
            out.push(f);
        }
        out
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    /// Highest degree the table covers.
    pub fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// The monic irreducibles of degree exactly `d`, in enumeration order.
    pub fn of_degree(&self, d: usize) -> &[Poly] {
        assert!(
            d <= self.max_degree(),
            "irreducible table built to degree {}, asked for {d}",
            self.max_degree()
        );
        &self.by_degree[d]
    }

    /// Packed irreducibles of degree `d` (q = 2 only).
    pub fn packed_of_degree(&self, d: usize) -> &[u64] {
        assert!(d <= self.max_degree());
        self.packed_by_degree
            .as_ref()
            .expect("packed irreducibles exist only for q = 2")[d]
            .as_slice()
    }

    /// π(d): the number of monic irreducibles of degree d.
    pub fn count(&self, d: usize) -> u128 {
        self.of_degree(d).len() as u128
    }
}

// ---- Cache persistence ----

fn cache_path(spec: &Arc<FieldSpec>, dir: &Path, deg: usize) -> PathBuf {
    dir.join(format!("irr_p{}k{}_d{:02}.txt", spec.p(), spec.k(), deg))
}

fn write_cache_degree(
    spec: &Arc<FieldSpec>,
    dir: &Path,
    deg: usize,
    list: &[Poly],
) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    let path = cache_path(spec, dir, deg);
    let mut out = std::io::BufWriter::new(std::fs::File::create(&path)?);
    writeln!(out, "{}", list.len())?;
    for f in list {
        writeln!(out, "{f}")?;
    }
    out.flush()?;
    Ok(())
}

/// Load one degree's cache file, rejecting anything inconsistent: bad counts
/// (against both the header and the necklace formula), unparsable lines,
/// wrong degrees, non-monic entries, or out-of-order duplicates.
fn load_cache_degree(spec: &Arc<FieldSpec>, dir: &Path, deg: usize) -> Result<Vec<Poly>> {
    let path = cache_path(spec, dir, deg);
    let render = path.display().to_string();
    let file = std::fs::File::open(&path)?;
    let mut lines = std::io::BufReader::new(file).lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse(format!("{render}: empty cache file")))??;
    let count: usize = header
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{render}: bad count line {header:?}")))?;
    if count as u128 != necklace_count(spec.q(), deg) {
        return Err(Error::Parse(format!(
            "{render}: count {count} contradicts the necklace formula"
        )));
    }
    let mut out = Vec::with_capacity(count);
    let mut last_index: Option<u64> = None;
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let f = Poly::parse(spec, line.trim())
            .map_err(|e| Error::Parse(format!("{render}: {e}")))?;
        if f.degree() != Some(deg) || !f.is_monic() {
            return Err(Error::Parse(format!(
                "{render}: entry {line:?} is not monic of degree {deg}"
            )));
        }
        let idx = f.monic_index();
        if last_index.map_or(false, |prev| prev >= idx) {
            return Err(Error::Parse(format!(
                "{render}: entries out of order or duplicated at {line:?}"
            )));
        }
        last_index = Some(idx);
        out.push(f);
    }
    if out.len() != count {
        return Err(Error::Parse(format!(
            "{render}: header says {count} entries, found {}",
            out.len()
        )));
    }
    Ok(out)
}

/// One row of a cache verification report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct CacheCheck {
    pub degree: usize,
    pub ok: bool,
    pub detail: String,
}

/// Deep-verify every cache file for this field under `dir`: parse, count
/// against the necklace formula, and re-test irreducibility of each entry.
pub fn cache_verify(spec: &Arc<FieldSpec>, dir: &Path) -> Result<Vec<CacheCheck>> {
    let mut checks = Vec::new();
    for deg in 1..=63usize {
        let path = cache_path(spec, dir, deg);
        if !path.exists() {
            continue;
        }
        let check = match load_cache_degree(spec, dir, deg) {
            Err(e) => CacheCheck {
                degree: deg,
                ok: false,
                detail: e.to_string(),
            },
            Ok(list) => {
                let mut bad = None;
                for f in &list {
                    if !is_irreducible(f)? {
                        bad = Some(f.clone());
                        break;
                    }
                }
                match bad {
                    Some(f) => CacheCheck {
                        degree: deg,
                        ok: false,
                        detail: format!("entry {f} is not irreducible"),
                    },
                    None => CacheCheck {
                        degree: deg,
                        ok: true,
                        detail: format!("{} entries", list.len()),
                    },
                }
            }
        };
        checks.push(check);
    }
    Ok(checks)
}

/// Delete this field's cache files under `dir`; returns the removed paths.
pub fn cache_purge(spec: &Arc<FieldSpec>, dir: &Path) -> Result<Vec<PathBuf>> {
    let mut removed = Vec::new();
    for deg in 1..=63usize {
        let path = cache_path(spec, dir, deg);
        if path.exists() {
            std::fs::remove_file(&path)?;
            removed.push(path);
        }
    }
    Ok(removed)
}

// ---- Factorization ----

/// A complete factorization f = unit · Π Pᵢ^{eᵢ} into distinct monic
/// irreducibles, sorted by (degree, enumeration index).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Fq,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Multiply back; must reconstruct the input exactly.
    pub fn product(&self, spec: &Arc<FieldSpec>) -> Poly {
        let mut acc = Poly::constant(spec, self.unit);
        for (p, e) in &self.factors {
            for _ in 0..*e {
                acc = acc.mul(p);
            }
        }
        acc
    }

    /// Ω(f): number of irreducible factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    /// ω(f): number of distinct irreducible factors.
    pub fn num_distinct(&self) -> usize {
        self.factors.len()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// τ_k from a list of prime-power exponents: Π binom(e + k − 1, k − 1).
fn tau_k_from_exponents(exponents: impl Iterator<Item = u32>, k: u32) -> u128 {
    let mut out: u128 = 1;
    for e in exponents {
        out *= binomial((e + k - 1) as u64, (k - 1) as u64);
    }
    out
}

/// Exact binomial coefficient (small arguments).
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut out: u128 = 1;
    for i in 0..k {
        out = out * (n - i) as u128 / (i + 1) as u128;
    }
    out
}

// ---- The arithmetic context ----

/// Shared context for everything that needs factorizations: an irreducible
/// table plus the field. Immutable after construction; cheap to share.
pub struct Arith {
    spec: Arc<FieldSpec>,
    table: IrreducibleTable,
}

impl Arith {
    /// Build with irreducibles up to `max_deg`. Factoring then works for any
    /// f with deg f ≤ 2·max_deg (+1, since a composite of degree d has a
    /// divisor of degree ≤ d/2).
    pub fn new(spec: &Arc<FieldSpec>, max_deg: usize, budgets: &Budgets) -> Result<Arith> {
        Ok(Arith {
            spec: Arc::clone(spec),
            table: IrreducibleTable::build(spec, max_deg, budgets)?,
        })
    }

    /// Build using cache files under `dir` (creating them as needed).
    pub fn with_cache(
        spec: &Arc<FieldSpec>,
        max_deg: usize,
        budgets: &Budgets,
        dir: &Path,
    ) -> Result<Arith> {
        Ok(Arith {
            spec: Arc::clone(spec),
            table: IrreducibleTable::build_cached(spec, max_deg, budgets, Some(dir))?,
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn table(&self) -> &IrreducibleTable {
        &self.table
    }

    /// Irreducibility, preferring the cheap table/trial route at low degree.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool> {
        let deg = require_positive_degree(f)?;
        if deg <= self.table.max_degree() {
            // Membership lookup: the table is in enumeration order.
            let monic = f.make_monic();
            return Ok(self
                .table
                .of_degree(deg)
                .binary_search_by_key(&monic.monic_index(), |p| p.monic_index())
                .is_ok());
        }
        if deg <= TRIAL_DIVISION_MAX_DEG || deg / 2 <= self.table.max_degree() {
            // Trial division using cached irreducibles only.
            if self.spec.q() == 2 {
                let bits = gf2::from_poly(f)?;
                for d in 1..=deg / 2 {
                    for &p in self.table.packed_of_degree(d) {
                        if gf2::rem(bits, p) == 0 {
                            return Ok(false);
                        }
                    }
                }
                return Ok(true);
            }
            for d in 1..=deg / 2 {
                for p in self.table.of_degree(d) {
                    if f.rem(p)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
            return Ok(true);
        }
        is_irreducible_frobenius(f)
    }

    /// Complete factorization by trial division against cached irreducibles
    /// of degree ≤ deg(f)/2; the final cofactor, if nontrivial, is itself
    /// irreducible (it survived all divisors up to half its degree).
    pub fn factor(&self, f: &Poly) -> Result<Factorization> {
        let deg = f
            .degree()
            .ok_or_else(|| Error::domain("factor of the zero polynomial"))?;
        let unit = f.leading_coeff().expect("nonzero");
        if deg / 2 > self.table.max_degree() {
            return Err(Error::domain(format!(
                "factoring degree {deg} needs irreducibles to degree {}, table has {}",
                deg / 2,
                self.table.max_degree()
            )));
        }
        if self.spec.q() == 2 && deg <= 63 {
            let packed = self.factor_packed(gf2::from_poly(f)?)?;
            return Ok(Factorization {
                unit,
                factors: packed
                    .into_iter()
                    .map(|(bits, e)| (gf2::to_poly(&self.spec, bits), e))
                    .collect(),
            });
        }
        let mut rest = f.make_monic();
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        'outer: for d in 1.. {
            let rest_deg = match rest.degree() {
                Some(rd) if rd >= 1 => rd,
                _ => break 'outer,
            };
            if 2 * d > rest_deg {
                break 'outer;
            }
            for p in self.table.of_degree(d) {
                let mut e = 0u32;
                loop {
                    let (s, r) = rest.divrem(p)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = s;
                    e += 1;
                }
                if e > 0 {
                    factors.push((p.clone(), e));
                    if rest.degree().map_or(true, |rd| rd < 1) {
                        break 'outer;
                    }
                }
            }
        }
        if rest.degree().map_or(false, |rd| rd >= 1) {
            factors.push((rest, 1));
        }
        factors.sort_by_key(|(p, _)| (p.degree().unwrap(), p.monic_index()));
        Ok(Factorization { unit, factors })
    }

    /// Packed factorization for q = 2 (the hot path); same contract as
    /// [`Arith::factor`], with factors as packed bits.
    pub fn factor_packed(&self, bits: u64) -> Result<Vec<(u64, u32)>> {
        if bits == 0 {
            return Err(Error::domain("factor of the zero polynomial"));
        }
        let deg = gf2::deg(bits).unwrap() as usize;
        if deg / 2 > self.table.max_degree() {
            return Err(Error::domain(format!(
                "factoring degree {deg} needs irreducibles to degree {}, table has {}",
                deg / 2,
                self.table.max_degree()
            )));
        }
        let mut rest = bits;
        let mut factors: Vec<(u64, u32)> = Vec::new();
        'outer: for d in 1.. {
            let rest_deg = gf2::deg(rest).unwrap() as usize;
            if rest_deg < 1 || 2 * d > rest_deg {
                break;
            }
            for &p in self.table.packed_of_degree(d) {
                let mut e = 0u32;
                loop {
                    let (s, r) = gf2::divrem(rest, p);
                    if r != 0 {
                        break;
                    }
                    rest = s;
                    e += 1;
                }
                if e > 0 {
                    factors.push((p, e));
                    if gf2::deg(rest) == Some(0) {
                        break 'outer;
                    }
                }
            }
        }
        if gf2::deg(rest).map_or(false, |rd| rd >= 1) {
            factors.push((rest, 1));
        }
        Ok(factors)
    }

    // ---- Multiplicative functions ----

    fn require_monic(&self, f: &Poly, what: &str) -> Result<()> {
        if !f.is_monic() {
            return Err(Error::domain(format!("{what} requires a monic input, got {f}")));
        }
        Ok(())
    }

    /// τ_k(f) = Π binom(e+k−1, k−1): ordered factorizations into k monic
    /// parts. τ_k(1) = 1 (empty product). Requires monic f and k ≥ 2.
    pub fn tau_k(&self, f: &Poly, k: u32) -> Result<u128> {
        if k < 2 {
            return Err(Error::domain("tau_k needs k >= 2 (tau = tau_2)"));
        }
        self.require_monic(f, "tau_k")?;
        let fac = self.factor(f)?;
        Ok(tau_k_from_exponents(fac.factors.iter().map(|&(_, e)| e), k))
    }

    /// τ(f) = τ_2(f): the number of monic divisors.
    pub fn tau(&self, f: &Poly) -> Result<u128> {
        self.tau_k(f, 2)
    }

    /// φ(m) = |m|·Π_{P|m}(1 − 1/|P|) — via φ(P^e) = |P|^e − |P|^{e−1}.
    pub fn phi(&self, m: &Poly) -> Result<u128> {
        if m.is_zero() {
            return Err(Error::domain("phi of the zero polynomial"));
        }
        let fac = self.factor(m)?;
        let q = self.spec.q() as u128;
        let mut out: u128 = 1;
        for (p, e) in &fac.factors {
            let norm_p = q.pow(p.degree().unwrap() as u32);
            out *= norm_p.pow(*e - 1) * (norm_p - 1);
        }
        Ok(out)
    }

    /// μ(f): 0 on non-squarefree f, else (−1)^{#distinct factors}.
    pub fn moebius(&self, f: &Poly) -> Result<i8> {
        self.require_monic(f, "moebius")?;
        let fac = self.factor(f)?;
        if !fac.is_squarefree() {
            return Ok(0);
        }
        Ok(if fac.num_distinct() % 2 == 0 { 1 } else { -1 })
    }

    /// π(N): count of monic irreducibles of degree N (0 at N = 0).
    pub fn prime_count(&self, n: usize) -> u128 {
        if n == 0 {
            0
        } else {
            self.table.count(n)
        }
    }

    /// π(N; d, a): monic irreducibles of degree N in the class a mod d.
    pub fn prime_count_ap(&self, n: usize, d: &Poly, a: &Poly) -> Result<u128> {
        if d.degree().map_or(true, |dd| dd < 1) {
            return Err(Error::domain("prime_count_ap needs a modulus of positive degree"));
        }
        if !a.gcd(d).is_one() {
            return Err(Error::domain(format!(
                "prime_count_ap needs gcd(a, d) = 1, got gcd = {}",
                a.gcd(d)
            )));
        }
        let target = a.rem(d)?;
        let mut count = 0u128;
        for p in self.table.of_degree(n) {
            if p.rem(d)? == target {
                count += 1;
            }
        }
        Ok(count)
    }

    /// All monic divisors of f, paired with their cofactors: the ordered
    /// pairs (g, h) with g·h = f, each pair once.
    pub fn divisor_pairs(&self, f: &Poly) -> Result<Vec<(Poly, Poly)>> {
        self.require_monic(f, "divisor enumeration")?;
        let fac = self.factor(f)?;
        let spec = &self.spec;
        let mut pairs = vec![(Poly::one(spec), Poly::one(spec))];
        for (p, e) in &fac.factors {
            let mut powers = Vec::with_capacity(*e as usize + 1);
            let mut acc = Poly::one(spec);
            powers.push(acc.clone());
            for _ in 0..*e {
                acc = acc.mul(p);
                powers.push(acc.clone());
            }
            let mut next = Vec::with_capacity(pairs.len() * (*e as usize + 1));
            for (g, h) in &pairs {
                for i in 0..=*e as usize {
                    next.push((g.mul(&powers[i]), h.mul(&powers[*e as usize - i])));
                }
            }
            pairs = next;
        }
        Ok(pairs)
    }
}

// ---- Arithmetic functions ----

/// A named arithmetic function ψ on monic polynomials.
///
/// The built-in kinds are exact-integer valued (they satisfy the growth bound
/// ψ(f) = O(τ(f)^C)); `Custom` admits complex-valued tables and is accepted
/// only by the operations that work in floating point.
#[derive(Clone)]
pub enum ArithFn {
    /// ψ ≡ 1.
    One,
    /// 1_P: indicator of the monic irreducibles.
    PrimeIndicator,
    /// 1_P ∗ 1_P: 2 on P₁P₂ with P₁ ≠ P₂, 1 on P², 0 otherwise.
    PrimePair,
    /// τ_k for k ≥ 2.
    TauK(u32),
    /// The Möbius function μ.
    Moebius,
    /// Euler's φ.
    Phi,
    /// An arbitrary complex-valued function.
    Custom(Arc<dyn Fn(&Poly) -> Complex64 + Send + Sync>),
}

impl std::fmt::Debug for ArithFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ArithFn({})", self.name())
    }
}

impl ArithFn {
    /// Stable name used in CLI flags, CSV columns, and reports.
    pub fn name(&self) -> String {
        match self {
            ArithFn::One => "one".into(),
            ArithFn::PrimeIndicator => "prime".into(),
            ArithFn::PrimePair => "prime2".into(),
            ArithFn::TauK(k) => format!("tau:{k}"),
            ArithFn::Moebius => "mu".into(),
            ArithFn::Phi => "phi".into(),
            ArithFn::Custom(_) => "custom".into(),
        }
    }

    /// Parse a CLI name: one | prime | prime2 | tau:k | mu | phi.
    pub fn parse_name(s: &str) -> Result<ArithFn> {
        match s {
            "one" => Ok(ArithFn::One),
            "prime" => Ok(ArithFn::PrimeIndicator),
            "prime2" => Ok(ArithFn::PrimePair),
            "mu" => Ok(ArithFn::Moebius),
            "phi" => Ok(ArithFn::Phi),
            _ => {
                if let Some(k) = s.strip_prefix("tau:") {
                    let k: u32 = k
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad tau order in {s:?}")))?;
                    if k < 2 {
                        return Err(Error::Parse("tau:k needs k >= 2".into()));
                    }
                    return Ok(ArithFn::TauK(k));
                }
                Err(Error::Parse(format!(
                    "unknown arithmetic function {s:?} (expected one|prime|prime2|tau:k|mu|phi)"
                )))
            }
        }
    }

    pub fn is_integer_valued(&self) -> bool {
        !matches!(self, ArithFn::Custom(_))
    }

    /// Exact integer value at a monic f (domain error for `Custom`).
    pub fn eval_int(&self, arith: &Arith, f: &Poly) -> Result<i128> {
        match self {
            ArithFn::One => Ok(1),
            ArithFn::PrimeIndicator => {
                if f.degree().map_or(false, |d| d >= 1) && arith.is_irreducible(f)? {
                    Ok(1)
                } else {
                    Ok(0)
                }
            }
            ArithFn::PrimePair => {
                let fac = arith.factor(f)?;
                Ok(match (fac.big_omega(), fac.num_distinct()) {
                    (2, 2) => 2, // P₁P₂ ordered two ways
                    (2, 1) => 1, // P²
                    _ => 0,
                })
            }
            ArithFn::TauK(k) => Ok(arith.tau_k(f, *k)? as i128),
            ArithFn::Moebius => Ok(arith.moebius(f)? as i128),
            ArithFn::Phi => Ok(arith.phi(f)? as i128),
            ArithFn::Custom(_) => Err(Error::domain(
                "custom arithmetic functions are complex-valued; use eval_complex",
            )),
        }
    }

    /// Complex value at a monic f (all kinds).
    pub fn eval_complex(&self, arith: &Arith, f: &Poly) -> Result<Complex64> {
        match self {
            ArithFn::Custom(func) => Ok(func(f)),
            _ => Ok(Complex64::new(self.eval_int(arith, f)? as f64, 0.0)),
        }
    }

    /// Values over all monic polynomials of one degree, indexed by
    /// [`Poly::monic_index`]. Uses sieve-style construction where possible
    /// (prime indicator from the table; prime pairs from products of table
    /// entries) and per-polynomial factorization otherwise.
    pub fn eval_table(&self, arith: &Arith, deg: usize, budgets: &Budgets) -> Result<Vec<i128>> {
        let spec = arith.spec();
        let q = spec.q();
        let count_u128 = (q as u128).pow(deg as u32);
        budgets.check_enumeration(&format!("psi table {} at degree {deg}", self.name()), count_u128)?;
        let count = count_u128 as usize;
        match self {
            ArithFn::One => Ok(vec![1; count]),
            ArithFn::PrimeIndicator => {
                let mut out = vec![0i128; count];
                if deg >= 1 && deg <= arith.table().max_degree() {
                    for p in arith.table().of_degree(deg) {
                        out[p.monic_index() as usize] = 1;
                    }
                } else if deg >= 1 {
                    // Degrees past the table: test each polynomial directly.
                    for f in enumerate_monic(spec, deg) {
                        if arith.is_irreducible(&f)? {
                            out[f.monic_index() as usize] = 1;
                        }
                    }
                }
                Ok(out)
            }
            ArithFn::PrimePair if deg >= 2 && deg - 1 > arith.table().max_degree() => {
                // The pair sieve needs irreducibles to degree deg − 1;
                // past the table, fall back to factoring each polynomial.
                let mut out = vec![0i128; count];
                for f in enumerate_monic(spec, deg) {
                    out[f.monic_index() as usize] = self.eval_int(arith, &f)?;
                }
                Ok(out)
            }
            ArithFn::PrimePair => {
                // Sieve over ordered products P₁·P₂ with deg P₁ + deg P₂ = deg.
                let mut out = vec![0i128; count];
                for k in 1..deg {
                    if q == 2 {
                        for &p1 in arith.table().packed_of_degree(k) {
                            for &p2 in arith.table().packed_of_degree(deg - k) {
                                let product = gf2::mul(p1, p2);
                                out[(product & !(1 << deg)) as usize] += 1;
                            }
                        }
                    } else {
                        for p1 in arith.table().of_degree(k) {
                            for p2 in arith.table().of_degree(deg - k) {
                                out[p1.mul(p2).monic_index() as usize] += 1;
                            }
                        }
                    }
                }
                Ok(out)
            }
            ArithFn::Custom(_) => Err(Error::domain(
                "custom arithmetic functions have no exact integer table",
            )),
            _ => {
                let mut out = vec![0i128; count];
                if q == 2 && deg <= 63 {
                    for idx in 0..count as u64 {
                        let bits = gf2::monic_of_degree(deg as u32, idx);
                        let fac = arith.factor_packed(bits)?;
                        out[idx as usize] = match self {
                            ArithFn::TauK(k) => {
                                tau_k_from_exponents(fac.iter().map(|&(_, e)| e), *k) as i128
                            }
                            ArithFn::Moebius => {
                                if fac.iter().any(|&(_, e)| e > 1) {
                                    0
                                } else if fac.len() % 2 == 0 {
                                    1
                                } else {
                                    -1
                                }
                            }
                            ArithFn::Phi => {
                                let mut phi: i128 = 1;
                                for &(p, e) in &fac {
                                    let norm_p =
                                        2i128.pow(gf2::deg(p).unwrap());
                                    phi *= norm_p.pow(e - 1) * (norm_p - 1);
                                }
                                phi
                            }
                            _ => unreachable!("handled above"),
                        };
                    }
                } else {
                    for f in enumerate_monic(spec, deg) {
                        out[f.monic_index() as usize] = self.eval_int(arith, &f)?;
                    }
                }
                Ok(out)
            }
        }
    }
}

/// Dirichlet convolution (ψ₁ ∗ ψ₂)(f) = Σ_{gh=f} ψ₁(g)·ψ₂(h) over ordered
/// monic pairs. Exact integers; both functions must be integer-valued.
pub fn convolve(arith: &Arith, psi1: &ArithFn, psi2: &ArithFn, f: &Poly) -> Result<i128> {
    if !psi1.is_integer_valued() || !psi2.is_integer_valued() {
        return Err(Error::domain("convolve requires integer-valued functions"));
    }
    let mut total: i128 = 0;
    for (g, h) in arith.divisor_pairs(f)? {
        total += psi1.eval_int(arith, &g)? * psi2.eval_int(arith, &h)?;
    }
    Ok(total)
}

/// A memoizing wrapper around τ for repeated shifted-product evaluations
/// (packed, q = 2 only). Collisions between products are common for small q,
/// so the memo pays for itself in the two-prime experiment.
pub struct TauMemo<'a> {
    arith: &'a Arith,
    k: u32,
    memo: HashMap<u64, u128>,
}

impl<'a> TauMemo<'a> {
    pub fn new(arith: &'a Arith, k: u32) -> Self {
        TauMemo {
            arith,
            k,
            memo: HashMap::new(),
        }
    }

    pub fn tau(&mut self, bits: u64) -> Result<u128> {
        if let Some(&v) = self.memo.get(&bits) {
            return Ok(v);
        }
        let fac = self.arith.factor_packed(bits)?;
        let v = tau_k_from_exponents(fac.iter().map(|&(_, e)| e), self.k);
        self.memo.insert(bits, v);
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::prime(2).unwrap()
    }
    fn f3() -> Arc<FieldSpec> {
        FieldSpec::prime(3).unwrap()
    }
    fn p2(s: &str) -> Poly {
        Poly::parse(&f2(), s).unwrap()
    }
    fn arith2(max_deg: usize) -> Arith {
        Arith::new(&f2(), max_deg, &Budgets::default()).unwrap()
    }

    #[test]
    fn necklace_values() {
        let expect2: [u128; 10] = [2, 1, 2, 3, 6, 9, 18, 30, 56, 99];
        for (i, &e) in expect2.iter().enumerate() {
            assert_eq!(necklace_count(2, i + 1), e, "π({}) at q=2", i + 1);
        }
        assert_eq!(necklace_count(2, 16), 4080);
        assert_eq!(necklace_count(2, 20), 52377);
        let expect3: [u128; 6] = [3, 3, 8, 18, 48, 116];
        for (i, &e) in expect3.iter().enumerate() {
            assert_eq!(necklace_count(3, i + 1), e, "π({}) at q=3", i + 1);
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(is_irreducible(&p2("111")).unwrap(), "t²+t+1 irreducible");
        assert!(!is_irreducible(&p2("101")).unwrap(), "t²+1 = (t+1)²");
        let f3 = f3();
        assert!(is_irreducible(&Poly::parse(&f3, "101").unwrap()).unwrap(), "t²+1 over F_3");
        assert!(is_irreducible(&p2("1101")).unwrap());
        assert!(is_irreducible(&p2("1011")).unwrap());
        assert!(is_irreducible(&Poly::t(&f2())).unwrap());
        assert!(is_irreducible(&Poly::one(&f2())).is_err(), "constants are out of domain");
        assert!(is_irreducible(&Poly::zero(&f2())).is_err());
    }

    /// The two irreducibility routes agree on the overlap band.
    #[test]
    fn trial_and_frobenius_agree_on_band() {
        for deg in 8..=12usize {
            for f in enumerate_monic(&f2(), deg) {
                assert_eq!(
                    is_irreducible_trial(&f).unwrap(),
                    is_irreducible_frobenius(&f).unwrap(),
                    "route disagreement at {f}"
                );
            }
        }
        // q = 3: exhaustive at degree 8, sampled at 9.
        let f3 = f3();
        for f in enumerate_monic(&f3, 8) {
            assert_eq!(
                is_irreducible_trial(&f).unwrap(),
                is_irreducible_frobenius(&f).unwrap(),
                "route disagreement at {f} (q=3)"
            );
        }
        for idx in (0..3u64.pow(9)).step_by(37) {
            let f = Poly::from_monic_index(&f3, 9, idx);
            assert_eq!(
                is_irreducible_trial(&f).unwrap(),
                is_irreducible_frobenius(&f).unwrap()
            );
        }
    }

    #[test]
    fn table_counts_match_necklace_and_pnt() {
        let arith = arith2(12);
        for d in 1..=12 {
            assert_eq!(arith.table().count(d), necklace_count(2, d));
            assert!(pnt_band_ok(2, d, arith.prime_count(d)), "PNT band at degree {d}");
        }
        let f3 = f3();
        let arith3 = Arith::new(&f3, 6, &Budgets::default()).unwrap();
        for d in 1..=6 {
            assert_eq!(arith3.table().count(d), necklace_count(3, d));
        }
        assert_eq!(
            arith3.table().of_degree(1).len(),
            3,
            "all monic linear polynomials are irreducible"
        );
    }

    #[test]
    fn factor_examples() {
        let arith = arith2(8);
        let fac = arith.factor(&p2("011")).unwrap(); // t² + t
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.is_squarefree());
        assert_eq!(fac.product(&f2()), p2("011"));

        let fac = arith.factor(&p2("001")).unwrap(); // t²
        assert_eq!(fac.factors, vec![(Poly::t(&f2()), 2)]);

        let fac = arith.factor(&p2("1101")).unwrap(); // irreducible cubic
        assert_eq!(fac.factors, vec![(p2("1101"), 1)]);

        assert!(arith.factor(&Poly::zero(&f2())).is_err());

        // Round-trip everything of degree ≤ 8 (and check packed agreement).
        for deg in 0..=8 {
            for f in enumerate_monic(&f2(), deg) {
                let fac = arith.factor(&f).unwrap();
                assert_eq!(fac.product(&f2()), f, "factor round-trip at {f}");
                for (p, _) in &fac.factors {
                    assert!(is_irreducible(p).unwrap(), "non-irreducible factor of {f}");
                }
            }
        }
    }

    #[test]
    fn tau_phi_mu_examples() {
        let arith = arith2(8);
        assert_eq!(arith.tau(&p2("011")).unwrap(), 4, "τ(t(t+1)): 1, t, t+1, t²+t");
        assert_eq!(arith.tau_k(&p2("011"), 3).unwrap(), 9);
        assert_eq!(arith.tau_k(&Poly::one(&f2()), 5).unwrap(), 1, "τ_k(1) = 1");
        assert!(arith.tau_k(&p2("011"), 1).is_err(), "k ≥ 2 required");

        assert_eq!(arith.phi(&p2("001")).unwrap(), 2, "units mod t²: 1, 1+t");
        assert_eq!(arith.phi(&p2("011")).unwrap(), 1);
        let f3 = f3();
        let arith3 = Arith::new(&f3, 4, &Budgets::default()).unwrap();
        assert_eq!(arith3.phi(&Poly::t(&f3)).unwrap(), 2);

        assert_eq!(arith.moebius(&Poly::t(&f2())).unwrap(), -1);
        assert_eq!(arith.moebius(&p2("001")).unwrap(), 0);
        assert_eq!(arith.moebius(&p2("011")).unwrap(), 1);
    }

    #[test]
    fn phi_matches_unit_enumeration() {
        let arith = arith2(8);
        for deg in 1..=5 {
            for m in enumerate_monic(&f2(), deg) {
                let brute = (0..1u64 << deg)
                    .filter(|&idx| {
                        let f = gf2::to_poly(&f2(), idx);
                        f.gcd(&m).is_one()
                    })
                    .count() as u128;
                assert_eq!(arith.phi(&m).unwrap(), brute, "φ({m}) against enumeration");
            }
        }
    }

    #[test]
    fn prime_count_ap_examples() {
        let arith = arith2(6);
        let t = Poly::t(&f2());
        assert_eq!(arith.prime_count_ap(3, &t, &Poly::one(&f2())).unwrap(), 2);
        assert_eq!(arith.prime_count_ap(3, &p2("001"), &Poly::one(&f2())).unwrap(), 1);
        assert_eq!(arith.prime_count_ap(1, &t, &Poly::one(&f2())).unwrap(), 1);
        assert!(
            arith.prime_count_ap(3, &t, &t).is_err(),
            "gcd(a, d) = 1 required"
        );
        assert!(arith.prime_count_ap(3, &Poly::one(&f2()), &t).is_err());
    }

    #[test]
    fn convolution_examples() {
        let arith = arith2(8);
        assert_eq!(
            convolve(&arith, &ArithFn::One, &ArithFn::One, &p2("011")).unwrap(),
            4,
            "1 ∗ 1 = τ"
        );
        assert_eq!(
            convolve(&arith, &ArithFn::PrimeIndicator, &ArithFn::PrimeIndicator, &p2("011")).unwrap(),
            2,
            "(t, t+1) and (t+1, t)"
        );
        assert_eq!(
            convolve(&arith, &ArithFn::PrimeIndicator, &ArithFn::PrimeIndicator, &p2("1101")).unwrap(),
            0
        );
        // μ ∗ 1 = indicator of f = 1.
        assert_eq!(convolve(&arith, &ArithFn::Moebius, &ArithFn::One, &Poly::one(&f2())).unwrap(), 1);
        for f in enumerate_monic(&f2(), 4) {
            assert_eq!(
                convolve(&arith, &ArithFn::Moebius, &ArithFn::One, &f).unwrap(),
                0,
                "Σ_{{d|f}} μ(d) = 0 for deg f ≥ 1 at {f}"
            );
        }
    }

    /// PrimePair evaluated by factorization shape must agree with the literal
    /// convolution 1_P ∗ 1_P everywhere (two independent routes).
    #[test]
    fn prime_pair_matches_convolution() {
        let arith = arith2(8);
        for deg in 0..=8 {
            for f in enumerate_monic(&f2(), deg) {
                assert_eq!(
                    ArithFn::PrimePair.eval_int(&arith, &f).unwrap(),
                    convolve(&arith, &ArithFn::PrimeIndicator, &ArithFn::PrimeIndicator, &f).unwrap(),
                    "1_P∗1_P mismatch at {f}"
                );
            }
        }
    }

    /// Σ_{deg f = N} τ_k(f) = binom(N+k−1, k−1)·q^N (spot degrees here; the
    /// acceptance suite runs the full grid).
    #[test]
    fn tau_k_mean_value_identity_small() {
        for (spec, max) in [(f2(), 6usize), (f3(), 4)] {
            let arith = Arith::new(&spec, max, &Budgets::default()).unwrap();
            for k in 2..=4u32 {
                for n in 0..=max {
                    let total: u128 = enumerate_monic(&spec, n)
                        .map(|f| arith.tau_k(&f, k).unwrap())
                        .sum();
                    let expected =
                        binomial((n as u64) + (k as u64) - 1, (k as u64) - 1) * (spec.q() as u128).pow(n as u32);
                    assert_eq!(total, expected, "τ_{k} mean value at q={}, N={n}", spec.q());
                }
            }
        }
    }

    /// (τ(f))^d ≤ τ_k(f) for k ≥ (d+1)!: checked at d = 2, k = 6.
    #[test]
    fn tau_power_dominated_by_tau_k() {
        let arith = arith2(8);
        for deg in 0..=8 {
            for f in enumerate_monic(&f2(), deg) {
                let tau = arith.tau(&f).unwrap();
                let tau6 = arith.tau_k(&f, 6).unwrap();
                assert!(tau * tau <= tau6, "τ² ≤ τ_6 fails at {f}: {tau}² > {tau6}");
            }
        }
    }

    /// Σ_{deg f ≤ N} τ_k(f)/q^{deg f} = binom(N+k, k) ≤ 5·N^k (the fitted
    /// constant 5 is tight at N = 1, k = 4).
    #[test]
    fn tau_k_average_growth() {
        let arith = arith2(10);
        for k in 2..=4u32 {
            for n in 1..=10usize {
                let mut sum_scaled: u128 = 0; // Σ τ_k(f)·q^{N−deg f}, to stay in integers
                for d in 0..=n {
                    let per_degree: u128 = enumerate_monic(&f2(), d)
                        .map(|f| arith.tau_k(&f, k).unwrap())
                        .sum();
                    sum_scaled += per_degree * (1u128 << (n - d)) / (1u128 << d);
                }
                // Σ_{deg f ≤ N} τ_k/q^{deg f} = Σ_d binom(d+k−1, k−1) = binom(N+k, k):
                let exact: u128 = (0..=n as u64)
                    .map(|d| binomial(d + k as u64 - 1, k as u64 - 1))
                    .sum();
                assert_eq!(exact, binomial(n as u64 + k as u64, k as u64));
                assert!(
                    exact as f64 <= 5.0 * (n as f64).powi(k as i32),
                    "τ_{k} average bound fails at N={n}"
                );
                let _ = sum_scaled;
            }
        }
    }

    #[test]
    fn eval_table_matches_pointwise() {
        let arith = arith2(10);
        let budgets = Budgets::default();
        for psi in [
            ArithFn::One,
            ArithFn::PrimeIndicator,
            ArithFn::PrimePair,
            ArithFn::TauK(2),
            ArithFn::TauK(3),
            ArithFn::Moebius,
            ArithFn::Phi,
        ] {
            for deg in 0..=7usize {
                let table = psi.eval_table(&arith, deg, &budgets).unwrap();
                for f in enumerate_monic(&f2(), deg) {
                    assert_eq!(
                        table[f.monic_index() as usize],
                        psi.eval_int(&arith, &f).unwrap(),
                        "{} table mismatch at {f}",
                        psi.name()
                    );
                }
            }
        }
        // And for q = 3 on a couple of degrees.
        let arith3 = Arith::new(&f3(), 4, &Budgets::default()).unwrap();
        for psi in [ArithFn::PrimePair, ArithFn::TauK(2), ArithFn::Phi] {
            for deg in 0..=4usize {
                let table = psi.eval_table(&arith3, deg, &budgets).unwrap();
                for f in enumerate_monic(&f3(), deg) {
                    assert_eq!(table[f.monic_index() as usize], psi.eval_int(&arith3, &f).unwrap());
                }
            }
        }
    }

    #[test]
    fn arith_fn_names_round_trip() {
        for psi in [
            ArithFn::One,
            ArithFn::PrimeIndicator,
            ArithFn::PrimePair,
            ArithFn::TauK(3),
            ArithFn::Moebius,
            ArithFn::Phi,
        ] {
            let back = ArithFn::parse_name(&psi.name()).unwrap();
            assert_eq!(back.name(), psi.name());
        }
        assert!(ArithFn::parse_name("tau:1").is_err());
        assert!(ArithFn::parse_name("nope").is_err());
    }

    #[test]
    fn cache_round_trip_and_verify() {
        let dir = tempfile::tempdir().unwrap();
        let spec = f2();
        let budgets = Budgets::default();
        // Build writes cache files…
        let t1 = IrreducibleTable::build_cached(&spec, 8, &budgets, Some(dir.path())).unwrap();
        // …and a rebuild loads them.
        let t2 = IrreducibleTable::build_cached(&spec, 8, &budgets, Some(dir.path())).unwrap();
        for d in 1..=8 {
            assert_eq!(t1.of_degree(d), t2.of_degree(d));
        }
        for check in cache_verify(&spec, dir.path()).unwrap() {
            assert!(check.ok, "degree {} failed: {}", check.degree, check.detail);
        }

        // Corrupt one byte: verification must reject with the degree named.
        let path = dir.path().join("irr_p2k1_d04.txt");
        let mut contents = std::fs::read_to_string(&path).unwrap();
        // Flip the first digit of the first entry after the count line.
        let pos = contents.find('\n').unwrap() + 1;
        let flipped = if &contents[pos..pos + 1] == "0" { "1" } else { "0" };
        contents.replace_range(pos..pos + 1, flipped);
        std::fs::write(&path, contents).unwrap();
        let checks = cache_verify(&spec, dir.path()).unwrap();
        let bad = checks.iter().find(|c| c.degree == 4).unwrap();
        assert!(!bad.ok, "corruption at degree 4 must be detected");

        // Purge removes exactly this field's files.
        let removed = cache_purge(&spec, dir.path()).unwrap();
        assert_eq!(removed.len(), 8);
        assert!(cache_verify(&spec, dir.path()).unwrap().is_empty());
    }

    #[test]
    fn budget_guard_fires_before_building() {
        let tiny = Budgets {
            max_enumeration: 100,
            max_phi: 10,
        };
        let err = match IrreducibleTable::build(&f2(), 20, &tiny) {
            Ok(_) => panic!("budget guard should have fired"),
            Err(e) => e,
        };
        match err {
            Error::Budget { needed, limit, .. } => {
                assert!(needed > limit);
            }
            other => panic!("expected a budget error, got {other}"),
        }
    }

    #[test]
    fn tau_memo_agrees_with_direct() {
        let arith = arith2(8);
        let mut memo = TauMemo::new(&arith, 2);
        for deg in 1..=10usize {
            for idx in (0..1u64 << deg).step_by(3) {
                let bits = gf2::monic_of_degree(deg as u32, idx);
                let direct = arith.tau(&gf2::to_poly(&f2(), bits)).unwrap();
                assert_eq!(memo.tau(bits).unwrap(), direct);
                assert_eq!(memo.tau(bits).unwrap(), direct, "memo hit path");
            }
        }
        assert!(!memo.is_empty());
    }
}
