//! The residue ring F_q[t]/(m): residue indexing, modular inverses, the unit
//! group (F_q[t]/m)× as an explicit direct sum of cyclic groups, and CRT
//! splitting along the prime-power factorization of m.
//!
//! Residues mod a monic m of degree d are the q^d polynomials of degree < d,
//! indexed 0..q^d by base-q digits (constant coefficient least significant).
//! The unit group is computed by a greedy basis construction that yields
//! invariant factors: generator orders form a divisibility chain, and every
//! unit gets an exponent vector over the generators.

use crate::fq::FieldSpec;
use crate::multfn::Arith;
use crate::poly::Poly;
use crate::{Budgets, Error, Result};
use std::sync::{Arc, OnceLock};

/// F_q[t]/(m) for monic m with deg m ≥ 1.
pub struct ResidueRing {
    spec: Arc<FieldSpec>,
    modulus: Poly,
    deg: usize,
    size: u64,
    units: OnceLock<Vec<Poly>>,
    group: OnceLock<UnitGroup>,
}

impl ResidueRing {
    pub fn new(modulus: &Poly) -> Result<ResidueRing> {
        let deg = match modulus.degree() {
            Some(d) if d >= 1 => d,
            _ => return Err(Error::domain("residue ring needs a modulus of degree >= 1")),
        };
        if !modulus.is_monic() {
            return Err(Error::domain(format!("residue ring needs a monic modulus, got {modulus}")));
        }
        let size_u128 = (modulus.spec().q() as u128).pow(deg as u32);
        if size_u128 > u64::MAX as u128 {
            return Err(Error::domain("residue ring too large to index"));
        }
        Ok(ResidueRing {
            spec: Arc::clone(modulus.spec()),
            modulus: modulus.clone(),
            deg,
            size: size_u128 as u64,
            units: OnceLock::new(),
            group: OnceLock::new(),
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of residues, q^{deg m}.
    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn reduce(&self, f: &Poly) -> Poly {
        f.rem(&self.modulus).expect("modulus is nonzero")
    }

    /// Index of f mod m in 0..q^{deg m}.
    pub fn index_of(&self, f: &Poly) -> u64 {
        self.reduce(f).index_below(self.deg)
    }

    /// The residue with a given index (degree < deg m).
    pub fn poly_of(&self, idx: u64) -> Poly {
        assert!(idx < self.size, "residue index out of range");
        Poly::from_index_below(&self.spec, self.deg, idx)
    }

    pub fn is_unit(&self, f: &Poly) -> bool {
        f.gcd(&self.modulus).is_one()
    }

    /// The inverse of f mod m, or [`Error::NotInvertible`] carrying the
    /// offending gcd.
    pub fn inverse(&self, f: &Poly) -> Result<Poly> {
        let (g, u, _) = f.ext_gcd(&self.modulus);
        if !g.is_one() {
            return Err(Error::NotInvertible { gcd: g });
        }
        Ok(self.reduce(&u))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        self.reduce(&a.mul(b))
    }

    /// a^e mod m.
    pub fn pow(&self, a: &Poly, e: u128) -> Poly {
        a.pow_mod(e, &self.modulus).expect("modulus has positive degree")
    }

    /// All units of the ring, in ascending residue-index order.
    pub fn units(&self) -> &[Poly] {
        self.units.get_or_init(|| {
            (0..self.size)
                .map(|idx| self.poly_of(idx))
                .filter(|f| self.is_unit(f))
                .collect()
        })
    }

    /// φ(m), by counting units.
    pub fn phi(&self) -> u64 {
        self.units().len() as u64
    }

    /// The unit group's cyclic decomposition (computed once, then cached).
    pub fn unit_group(&self, budgets: &Budgets) -> Result<&UnitGroup> {
        if let Some(g) = self.group.get() {
            return Ok(g);
        }
        budgets.check_phi("unit group construction", self.phi())?;
        let computed = UnitGroup::compute(self)?;
        Ok(self.group.get_or_init(|| computed))
    }

    /// Bucket `values[monic_index(g)]`, over all monic g of degree `deg`,
    /// into residue classes mod this ring's modulus.
    ///
    /// Prime fields walk the monic enumeration as an odometer: each digit
    /// increment adds one precomputed monomial residue to the running class
    /// index (carry wraps are self-correcting because q·x = 0 in
    /// characteristic p). Extension fields fall back to one division per
    /// polynomial.
    pub fn bucket_monic<T>(&self, deg: usize, values: &[T]) -> Vec<T>
    where
        T: Copy + Default + std::ops::AddAssign,
    {
        let q = self.spec.q();
        assert_eq!(values.len() as u128, (q as u128).pow(deg as u32));
        let mut acc = vec![T::default(); self.size as usize];

        if self.spec.k() != 1 {
            for (idx, v) in values.iter().enumerate() {
                let g = Poly::from_monic_index(&self.spec, deg, idx as u64);
                acc[self.index_of(&g) as usize] += *v;
            }
            return acc;
        }

        // Residue index of t^j mod m for j = 0..=deg.
        let mut mono_res = Vec::with_capacity(deg + 1);
        let t = Poly::t(&self.spec);
        let mut power = Poly::one(&self.spec);
        mono_res.push(self.index_of(&power));
        for _ in 0..deg {
            power = self.reduce(&power.mul(&t));
            mono_res.push(self.index_of(&power));
        }

        let mut digits = vec![0u64; deg.max(1)];
        let mut cur = mono_res[deg];
        acc[cur as usize] += values[0];
        for v in &values[1..] {
            let mut j = 0;
            loop {
                digits[j] += 1;
                cur = add_index_base_p(cur, mono_res[j], q);
                if digits[j] < q {
                    break;
                }
                digits[j] = 0;
                j += 1;
            }
            acc[cur as usize] += *v;
        }
        acc
    }
}

/// Digit-wise base-p addition of residue indices (coefficient addition of
/// polynomials over a prime field; p = 2 collapses to XOR).
fn add_index_base_p(mut a: u64, mut b: u64, p: u64) -> u64 {
    if p == 2 {
        return a ^ b;
    }
    let mut out = 0;
    let mut place = 1;
    while a > 0 || b > 0 {
        out += (a % p + b % p) % p * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// (F_q[t]/m)× ≅ ⟨g₁⟩ ⊕ … ⊕ ⟨g_r⟩ with ord(g₁) ≥ … and each order dividing
/// the previous one (invariant factors). `exp_of` maps every unit to its
/// exponent vector, the inverse of (e₁,…,e_r) ↦ Π gᵢ^{eᵢ}.
pub struct UnitGroup {
    generators: Vec<Poly>,
    orders: Vec<u64>,
    /// Exponent vector per residue index; `None` for non-units.
    exp_of: Vec<Option<Vec<u32>>>,
}

impl UnitGroup {
    /// Greedy basis construction. Repeatedly take the unit u whose image in
    /// G/S has maximal order e (the least j ≥ 1 with u^j ∈ S); since u^e
    /// lands in S, some v ∈ S has v^e = u^e, and b = u·v⁻¹ satisfies b^e = 1
    /// with ⟨S, b⟩ = S ⊕ ⟨b⟩. Ties break toward the smallest residue index,
    /// so the outcome is deterministic.
    fn compute(ring: &ResidueRing) -> Result<UnitGroup> {
        let one = Poly::one(&ring.spec);
        let phi = ring.phi();
        let mut exp_of: Vec<Option<Vec<u32>>> = vec![None; ring.size as usize];
        exp_of[ring.index_of(&one) as usize] = Some(Vec::new());
        let mut span_size: u64 = 1;
        let mut generators: Vec<Poly> = Vec::new();
        let mut orders: Vec<u64> = Vec::new();

        while span_size < phi {
            // Entry point of u into the current span S.
            let entry = |u: &Poly| -> u64 {
                let mut w = u.clone();
                let mut j = 1u64;
                while exp_of[ring.index_of(&w) as usize].is_none() {
                    w = ring.mul(&w, u);
                    j += 1;
                }
                j
            };
            let mut best: Option<(u64, Poly)> = None;
            for u in ring.units() {
                let e = entry(u);
                if best.as_ref().map_or(true, |(be, _)| e > *be) {
                    best = Some((e, u.clone()));
                }
            }
            let (e, u) = best.expect("there is a unit outside the span");
            assert!(e > 1, "span is proper, so some unit must leave it");

            // Adjust u by v ∈ S with v^e = u^e so the new generator has
            // exact order e and trivial intersection with S.
            let s = ring.pow(&u, e as u128);
            let mut b = None;
            for (idx, entry_vec) in exp_of.iter().enumerate() {
                if entry_vec.is_none() {
                    continue;
                }
                let v = ring.poly_of(idx as u64);
                if ring.pow(&v, e as u128) == s {
                    b = Some(ring.mul(&u, &ring.inverse(&v)?));
                    break;
                }
            }
            let b = b.expect("basis-extension adjustment exists for the maximal image order");
            debug_assert!(ring.pow(&b, e as u128).is_one());

            // Extend the span: every w·b^j for w ∈ S, 1 ≤ j < e is new.
            let members: Vec<usize> = (0..exp_of.len()).filter(|&i| exp_of[i].is_some()).collect();
            let gen_pos = generators.len();
            let mut power = one.clone();
            for j in 1..e {
                power = ring.mul(&power, &b);
                for &widx in &members {
                    let w = ring.poly_of(widx as u64);
                    let mut vec = exp_of[widx].clone().unwrap();
                    vec.resize(gen_pos, 0);
                    vec.push(j as u32);
                    let nidx = ring.index_of(&ring.mul(&w, &power)) as usize;
                    debug_assert!(exp_of[nidx].is_none(), "span extension must be direct");
                    exp_of[nidx] = Some(vec);
                }
            }
            generators.push(b);
            orders.push(e);
            span_size *= e;
        }

        // Normalize: every vector padded to the full generator count.
        let r = generators.len();
        for entry_vec in exp_of.iter_mut().flatten() {
            entry_vec.resize(r, 0);
        }
        // Invariant factors: each order divides the previous one.
        for w in orders.windows(2) {
            assert!(w[0] % w[1] == 0, "generator orders must form a divisibility chain");
        }
        Ok(UnitGroup {
            generators,
            orders,
            exp_of,
        })
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// Generator orders, non-increasing, each dividing the previous.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// φ(m) = Π orders.
    pub fn order(&self) -> u128 {
        self.orders.iter().map(|&o| o as u128).product()
    }

    /// Exponent vector of a unit by residue index; `None` for non-units.
    pub fn exp_of_index(&self, idx: u64) -> Option<&[u32]> {
        self.exp_of[idx as usize].as_deref()
    }
}

/// The pairwise-coprime prime-power parts of a modulus, with CRT transport
/// in both directions.
pub struct CrtSplit {
    modulus: Poly,
    parts: Vec<Poly>,
    /// Precomputed idempotent-style weights: cᵢ = Mᵢ·(Mᵢ⁻¹ mod mᵢ) where
    /// Mᵢ = m/mᵢ, so combine(r₁,…) = Σ rᵢ·cᵢ mod m.
    weights: Vec<Poly>,
}

impl CrtSplit {
    pub fn new(arith: &Arith, modulus: &Poly) -> Result<CrtSplit> {
        if modulus.degree().map_or(true, |d| d < 1) || !modulus.is_monic() {
            return Err(Error::domain("CRT split needs a monic modulus of degree >= 1"));
        }
        let fac = arith.factor(modulus)?;
        let mut parts = Vec::with_capacity(fac.factors.len());
        for (p, e) in &fac.factors {
            let mut pp = p.clone();
            for _ in 1..*e {
                pp = pp.mul(p);
            }
            parts.push(pp);
        }
        let mut weights = Vec::with_capacity(parts.len());
        for part in &parts {
            let (cofactor, r) = modulus.divrem(part)?;
            debug_assert!(r.is_zero());
            let ring_i = ResidueRing::new(part)?;
            let inv = ring_i.inverse(&cofactor)?;
            weights.push(cofactor.mul(&inv).rem(modulus)?);
        }
        Ok(CrtSplit {
            modulus: modulus.clone(),
            parts,
            weights,
        })
    }

    pub fn parts(&self) -> &[Poly] {
        &self.parts
    }

    /// f mod each prime-power part, in order.
    pub fn project(&self, f: &Poly) -> Vec<Poly> {
        self.parts.iter().map(|p| f.rem(p).expect("nonzero part")).collect()
    }

    /// The unique residue mod m matching the given residues mod each part.
    pub fn combine(&self, residues: &[Poly]) -> Result<Poly> {
        if residues.len() != self.parts.len() {
            return Err(Error::domain(format!(
                "CRT combine expects {} residues, got {}",
                self.parts.len(),
                residues.len()
            )));
        }
        let mut acc = Poly::zero(self.modulus.spec());
        for (r, w) in residues.iter().zip(&self.weights) {
            acc = acc.add(&r.mul(w));
        }
        acc.rem(&self.modulus)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::enumerate_monic;

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
    fn residue_indexing_round_trips() {
        for deg in 1..=4usize {
            for m in enumerate_monic(&f2(), deg) {
                let ring = ResidueRing::new(&m).unwrap();
                assert_eq!(ring.size(), 1 << deg);
                for idx in 0..ring.size() {
                    let r = ring.poly_of(idx);
                    assert_eq!(ring.index_of(&r), idx);
                    assert!(r.degree().map_or(true, |d| d < deg));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(ResidueRing::new(&Poly::one(&f2())).is_err());
        assert!(ResidueRing::new(&Poly::zero(&f2())).is_err());
        let f3 = f3();
        let non_monic = Poly::parse(&f3, "12").unwrap(); // 1 + 2t
        assert!(ResidueRing::new(&non_monic).is_err());
    }

    #[test]
    fn inverse_and_not_invertible() {
        let ring = ResidueRing::new(&p2("001")).unwrap(); // t²
        let one = Poly::one(&f2());
        for u in ring.units() {
            let inv = ring.inverse(u).unwrap();
            assert_eq!(ring.mul(u, &inv), one, "u·u⁻¹ = 1 for u = {u}");
        }
        let t = Poly::t(&f2());
        match ring.inverse(&t) {
            Err(Error::NotInvertible { gcd }) => assert_eq!(gcd, t),
            other => panic!("expected NotInvertible, got {other:?}"),
        }
    }

    #[test]
    fn phi_matches_arith() {
        let arith = Arith::new(&f2(), 4, &Budgets::default()).unwrap();
        for deg in 1..=4usize {
            for m in enumerate_monic(&f2(), deg) {
                let ring = ResidueRing::new(&m).unwrap();
                assert_eq!(ring.phi() as u128, arith.phi(&m).unwrap(), "φ({m})");
            }
        }
    }

    #[test]
    fn unit_group_mod_t_cubed_is_cyclic_of_order_four() {
        let ring = ResidueRing::new(&p2("0001")).unwrap(); // t³
        let g = ring.unit_group(&Budgets::default()).unwrap();
        assert_eq!(g.orders(), &[4]);
        assert_eq!(g.generators(), &[p2("11")], "1 + t generates");
        assert_eq!(g.order(), 4);
    }

    #[test]
    fn unit_group_prime_modulus_is_cyclic() {
        // Mod an irreducible P, the unit group is cyclic of order |P| − 1.
        for m in [p2("111"), p2("1101"), p2("11001")] {
            let ring = ResidueRing::new(&m).unwrap();
            let g = ring.unit_group(&Budgets::default()).unwrap();
            let phi = ring.phi();
            assert_eq!(g.orders(), &[phi], "cyclic mod {m}");
        }
        let f3 = f3();
        let ring = ResidueRing::new(&Poly::t(&f3)).unwrap();
        let g = ring.unit_group(&Budgets::default()).unwrap();
        assert_eq!(g.orders(), &[2]);
        assert_eq!(g.generators(), &[Poly::constant(&f3, f3.elem(2).unwrap())]);
    }

    /// Exhaustive structural validation of the decomposition.
    #[test]
    fn unit_group_structure_exhaustive() {
        let budgets = Budgets::default();
        let cases: Vec<Poly> = enumerate_monic(&f2(), 1)
            .chain(enumerate_monic(&f2(), 2))
            .chain(enumerate_monic(&f2(), 3))
            .chain(enumerate_monic(&f2(), 4))
            .chain(enumerate_monic(&f3(), 1))
            .chain(enumerate_monic(&f3(), 2))
            .chain(enumerate_monic(&f3(), 3))
            .collect();
        for m in cases {
            let ring = ResidueRing::new(&m).unwrap();
            let g = ring.unit_group(&budgets).unwrap();
            assert_eq!(g.order(), ring.phi() as u128, "Π orders = φ({m})");
            // Orders non-increasing and a divisibility chain.
            for w in g.orders().windows(2) {
                assert!(w[0] >= w[1] && w[0] % w[1] == 0, "chain fails mod {m}");
            }
            // Each generator has exactly the claimed order.
            for (b, &e) in g.generators().iter().zip(g.orders()) {
                assert!(ring.pow(b, e as u128).is_one());
                for p in primes_of(e) {
                    assert!(
                        !ring.pow(b, (e / p) as u128).is_one(),
                        "order of {b} mod {m} is smaller than {e}"
                    );
                }
            }
            // The exponent map reconstructs every unit, bijectively.
            let mut seen = 0u64;
            for idx in 0..ring.size() {
                let Some(vec) = g.exp_of_index(idx) else {
                    assert!(!ring.is_unit(&ring.poly_of(idx)));
                    continue;
                };
                seen += 1;
                let mut acc = Poly::one(ring.spec());
                for (b, &e) in g.generators().iter().zip(vec) {
                    acc = ring.mul(&acc, &ring.pow(b, e as u128));
                }
                assert_eq!(ring.index_of(&acc), idx, "exp map reconstructs unit mod {m}");
            }
            assert_eq!(seen, ring.phi());
        }
    }

    fn primes_of(n: u64) -> Vec<u64> {
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

    #[test]
    fn unit_group_budget_guard() {
        let ring = ResidueRing::new(&p2("000001")).unwrap(); // t⁵, φ = 16
        let tiny = Budgets {
            max_enumeration: 1 << 20,
            max_phi: 8,
        };
        assert!(matches!(
            ring.unit_group(&tiny),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn crt_round_trip() {
        let arith = Arith::new(&f2(), 4, &Budgets::default()).unwrap();
        // m = t(t+1)(t²+t+1), squarefree with three parts.
        let m = p2("01").mul(&p2("11")).mul(&p2("111"));
        let split = CrtSplit::new(&arith, &m).unwrap();
        assert_eq!(split.parts().len(), 3);
        let ring = ResidueRing::new(&m).unwrap();
        for idx in 0..ring.size() {
            let f = ring.poly_of(idx);
            let parts = split.project(&f);
            assert_eq!(split.combine(&parts).unwrap(), f, "CRT round-trip at {f}");
        }
        // Prime-power parts: m = t²(t+1) splits as t², t+1.
        let m = p2("001").mul(&p2("11"));
        let split = CrtSplit::new(&arith, &m).unwrap();
        assert_eq!(split.parts().len(), 2);
        let ring = ResidueRing::new(&m).unwrap();
        for idx in 0..ring.size() {
            let f = ring.poly_of(idx);
            assert_eq!(split.combine(&split.project(&f)).unwrap(), f);
        }
    }

    #[test]
    fn bucket_monic_matches_per_polynomial_division() {
        let specs = [
            FieldSpec::prime(2).unwrap(),
            FieldSpec::prime(3).unwrap(),
            FieldSpec::extension(2, 2).unwrap(), // exercises the slow path
        ];
        for spec in &specs {
            for mdeg in 1..=3usize {
                for m in enumerate_monic(spec, mdeg) {
                    let ring = ResidueRing::new(&m).unwrap();
                    for deg in 0..=5usize {
                        let count = (spec.q() as u128).pow(deg as u32) as usize;
                        // Distinct values so any mis-bucketing is visible.
                        let values: Vec<i128> = (0..count).map(|i| (i as i128 + 1).pow(2)).collect();
                        let fast = ring.bucket_monic(deg, &values);
                        let mut slow = vec![0i128; ring.size() as usize];
                        for (idx, v) in values.iter().enumerate() {
                            let g = Poly::from_monic_index(spec, deg, idx as u64);
                            slow[ring.index_of(&g) as usize] += v;
                        }
                        assert_eq!(fast, slow, "bucket mismatch mod {m} at degree {deg}");
                    }
                }
            }
        }
    }

    #[test]
    fn phi_multiplicative_over_crt_parts() {
        let arith = Arith::new(&f2(), 4, &Budgets::default()).unwrap();
        for m in enumerate_monic(&f2(), 4) {
            let split = CrtSplit::new(&arith, &m).unwrap();
            let product: u128 = split
                .parts()
                .iter()
                .map(|p| ResidueRing::new(p).unwrap().phi() as u128)
                .product();
            assert_eq!(product, arith.phi(&m).unwrap(), "φ multiplicative at {m}");
        }
    }
}
