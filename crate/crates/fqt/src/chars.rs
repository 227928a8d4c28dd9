//! Characters of F_q[t]: the additive character e(g/f) built from the
//! absolute trace, and the Dirichlet characters mod m with conductors,
//! primitivity, and Gauss sums.
//!
//! A Dirichlet character mod m is stored exactly, as its exponents against
//! the unit-group generators: χ(gⱼ) = ζ_{nⱼ}^{cⱼ}. Every value is then a
//! λ-th root of unity for λ = lcm(nⱼ), computed by exact integer phase
//! arithmetic and looked up in one precomputed root table — so principal,
//! kernel, and conductor tests are integer comparisons, immune to rounding.

use crate::multfn::Arith;
use crate::poly::Poly;
use crate::residue::ResidueRing;
use crate::{Budgets, Error, Result};
use num_complex::Complex64;

/// Largest φ(m) for which per-character value tables are materialized.
pub const MAX_TABLE_PHI: u64 = 10_000;

// ---- The additive character ----

/// e(g/f) for monic f: the value E(c₋₁) where c₋₁ is the t^{−1} coefficient
/// of the Laurent expansion of g/f, which for deg f ≥ 1 is the coefficient
/// of t^{deg f − 1} in g mod f. For f = 1 the value is 1.
///
/// E = exp(2πi·Tr(·)/p) is the canonical additive character of F_q.
pub fn additive_char_e(g: &Poly, f: &Poly) -> Result<Complex64> {
    let deg = match f.degree() {
        None => return Err(Error::domain("additive character needs a nonzero modulus")),
        Some(d) => d,
    };
    if !f.is_monic() {
        return Err(Error::domain(format!("additive character needs a monic modulus, got {f}")));
    }
    if deg == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let r = g.rem(f)?;
    Ok(f.spec().char_e(r.coeff(deg - 1)))
}

// ---- Dirichlet characters ----

/// A character mod m, as exponents cⱼ against the unit-group generators
/// (cⱼ ∈ 0..nⱼ). The all-zero vector is the principal character.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirichletChar {
    exps: Vec<u32>,
}

impl DirichletChar {
    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_principal(&self) -> bool {
        self.exps.iter().all(|&c| c == 0)
    }

    /// The complex conjugate χ̄ (negate each exponent mod its order).
    pub fn conjugate(&self, group: &CharGroup) -> DirichletChar {
        DirichletChar {
            exps: self
                .exps
                .iter()
                .zip(group.orders())
                .map(|(&c, &n)| if c == 0 { 0 } else { n as u32 - c })
                .collect(),
        }
    }

    /// Multiplicative order of χ: lcm of nⱼ/gcd(cⱼ, nⱼ).
    pub fn order(&self, group: &CharGroup) -> u64 {
        self.exps
            .iter()
            .zip(group.orders())
            .map(|(&c, &n)| n / gcd_u64(c as u64, n))
            .fold(1, lcm_u64)
    }
}

fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    a / gcd_u64(a, b) * b
}

/// The full character group mod m, with its shared exact-root machinery.
pub struct CharGroup {
    ring: ResidueRing,
    orders: Vec<u64>,
    lambda: u64,
    /// roots[j] = exp(2πi·j/λ).
    roots: Vec<Complex64>,
}

impl CharGroup {
    /// Build the character group mod a monic m of degree ≥ 1. Construction
    /// cost is the unit-group computation, guarded by `budgets.max_phi`.
    pub fn new(modulus: &Poly, budgets: &Budgets) -> Result<CharGroup> {
        let ring = ResidueRing::new(modulus)?;
        let orders: Vec<u64> = ring.unit_group(budgets)?.orders().to_vec();
        let lambda = orders.iter().copied().fold(1, lcm_u64);
        let roots = (0..lambda)
            .map(|j| {
                Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / lambda as f64)
            })
            .collect();
        Ok(CharGroup {
            ring,
            orders,
            lambda,
            roots,
        })
    }

    pub fn modulus(&self) -> &Poly {
        self.ring.modulus()
    }

    pub fn ring(&self) -> &ResidueRing {
        &self.ring
    }

    pub fn phi(&self) -> u64 {
        self.ring.phi()
    }

    /// Unit-group generator orders (the character exponent radices).
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// All φ(m) characters, principal first, in mixed-radix order.
    pub fn enumerate(&self) -> Vec<DirichletChar> {
        let mut out = Vec::with_capacity(self.phi() as usize);
        let mut exps = vec![0u32; self.orders.len()];
        loop {
            out.push(DirichletChar { exps: exps.clone() });
            // Mixed-radix increment, most significant last.
            let mut pos = 0;
            loop {
                if pos == exps.len() {
                    return out;
                }
                exps[pos] += 1;
                if (exps[pos] as u64) < self.orders[pos] {
                    break;
                }
                exps[pos] = 0;
                pos += 1;
            }
        }
    }

    /// Exact integer phase of χ(f) as a multiple of 2π/λ, or `None` when
    /// gcd(f, m) ≠ 1 (where χ vanishes).
    pub fn phase(&self, chi: &DirichletChar, f: &Poly) -> Option<u64> {
        let idx = self.ring.index_of(f);
        let exp_vec = self
            .ring
            .unit_group(&Budgets::default())
            .expect("group already built")
            .exp_of_index(idx)?;
        let mut phase: u64 = 0;
        for ((&c, &x), &n) in chi.exps.iter().zip(exp_vec).zip(&self.orders) {
            phase = (phase + c as u64 * x as u64 % self.lambda * (self.lambda / n)) % self.lambda;
        }
        Some(phase)
    }

    /// χ(f): a λ-th root of unity on units, 0 elsewhere.
    pub fn value(&self, chi: &DirichletChar, f: &Poly) -> Complex64 {
        match self.phase(chi, f) {
            None => Complex64::new(0.0, 0.0),
            Some(p) => self.roots[p as usize],
        }
    }

    /// χ over every residue index (0 on non-units). Materialized only for
    /// φ(m) ≤ [`MAX_TABLE_PHI`].
    pub fn value_table(&self, chi: &DirichletChar) -> Result<Vec<Complex64>> {
        if self.phi() > MAX_TABLE_PHI {
            return Err(Error::domain(format!(
                "character value tables are limited to phi <= {MAX_TABLE_PHI}, got {}",
                self.phi()
            )));
        }
        Ok((0..self.ring.size())
            .map(|idx| self.value(chi, &self.ring.poly_of(idx)))
            .collect())
    }

    /// The conductor: the smallest monic divisor d | m such that χ is
    /// trivial on every unit u ≡ 1 (mod d). Exact integer kernel test,
    /// divisors scanned in increasing (degree, index) order.
    pub fn conductor(&self, arith: &Arith, chi: &DirichletChar) -> Result<Poly> {
        let m = self.modulus().clone();
        let mut divisors: Vec<Poly> = arith.divisor_pairs(&m)?.into_iter().map(|(g, _)| g).collect();
        divisors.sort_by_key(|d| (d.degree().unwrap(), d.monic_index()));
        let one = Poly::one(self.ring.spec());
        'divisors: for d in divisors {
            for u in self.ring.units() {
                let congruent = if d.is_one() {
                    true
                } else {
                    u.sub(&one).rem(&d)?.is_zero()
                };
                if congruent && self.phase(chi, u) != Some(0) {
                    continue 'divisors;
                }
            }
            return Ok(d);
        }
        unreachable!("d = m always passes the kernel test");
    }

    pub fn is_primitive(&self, arith: &Arith, chi: &DirichletChar) -> Result<bool> {
        Ok(self.conductor(arith, chi)? == *self.modulus())
    }

    /// The primitive characters mod m, in enumeration order.
    pub fn primitive_chars(&self, arith: &Arith) -> Result<Vec<DirichletChar>> {
        let mut out = Vec::new();
        for chi in self.enumerate() {
            if self.is_primitive(arith, &chi)? {
                out.push(chi);
            }
        }
        Ok(out)
    }

    /// Count of primitive characters by the divisor formula
    /// Σ_{d|m} μ(m/d)·φ(d); cross-checks the conductor scan.
    pub fn primitive_count_formula(&self, arith: &Arith) -> Result<i128> {
        let m = self.modulus();
        let mut total: i128 = 0;
        for (d, cofactor) in arith.divisor_pairs(m)? {
            let mu = arith.moebius(&cofactor)?;
            if mu != 0 {
                let phi_d = if d.is_one() { 1 } else { arith.phi(&d)? };
                total += mu as i128 * phi_d as i128;
            }
        }
        Ok(total)
    }

    /// Gauss sum τ(χ) = Σ_{h mod m} χ(h)·e(h/m), summed over all residues
    /// (non-units contribute 0 through χ).
    pub fn gauss_sum(&self, chi: &DirichletChar) -> Result<Complex64> {
        let m = self.modulus().clone();
        let mut total = Complex64::new(0.0, 0.0);
        for idx in 0..self.ring.size() {
            let h = self.ring.poly_of(idx);
            let v = self.value(chi, &h);
            if v != Complex64::new(0.0, 0.0) {
                total += v * additive_char_e(&h, &m)?;
            }
        }
        Ok(total)
    }

    /// Both sides of the twisted-sum identity
    /// χ(g)·τ(χ̄) = Σ_{h mod m, (h,m)=1} χ̄(h)·e(gh/m)
    /// for primitive χ (both sides vanish when gcd(g, m) ≠ 1).
    pub fn twisted_sum_identity(
        &self,
        chi: &DirichletChar,
        g: &Poly,
    ) -> Result<(Complex64, Complex64)> {
        let m = self.modulus().clone();
        let chi_bar = chi.conjugate(self);
        let lhs = self.value(chi, g) * self.gauss_sum(&chi_bar)?;
        let mut rhs = Complex64::new(0.0, 0.0);
        for h in self.ring.units() {
            rhs += self.value(&chi_bar, h) * additive_char_e(&g.mul(h), &m)?;
        }
        Ok((lhs, rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fq::FieldSpec;
    use crate::poly::enumerate_monic;
    use crate::tolerances;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn f2() -> Arc<FieldSpec> {
        FieldSpec::prime(2).unwrap()
    }
    fn f3() -> Arc<FieldSpec> {
        FieldSpec::prime(3).unwrap()
    }
    fn p2(s: &str) -> Poly {
        Poly::parse(&f2(), s).unwrap()
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn additive_char_basics() {
        let t = Poly::t(&f2());
        let one = Poly::one(&f2());
        // e(1/t) = E(1) = −1 at q = 2; e(0/t) = 1; e(t/t) = e(0/t).
        assert!(close(additive_char_e(&one, &t).unwrap(), Complex64::new(-1.0, 0.0), 1e-12));
        assert!(close(additive_char_e(&Poly::zero(&f2()), &t).unwrap(), Complex64::new(1.0, 0.0), 1e-12));
        assert!(close(additive_char_e(&t, &t).unwrap(), Complex64::new(1.0, 0.0), 1e-12));
        // Modulus 1: everything maps to 1.
        assert!(close(additive_char_e(&t, &one).unwrap(), Complex64::new(1.0, 0.0), 1e-12));
        // Non-monic or zero modulus: domain error.
        let f3 = f3();
        let non_monic = Poly::parse(&f3, "12").unwrap();
        assert!(additive_char_e(&Poly::one(&f3), &non_monic).is_err());
        assert!(additive_char_e(&t, &Poly::zero(&f2())).is_err());
    }

    #[test]
    fn additive_char_is_additive_in_g() {
        for q in [2u64, 3] {
            let spec = FieldSpec::prime(q).unwrap();
            for deg in 1..=3usize {
                for f in enumerate_monic(&spec, deg) {
                    let size = (q as u64).pow(deg as u32 + 1);
                    for i in 0..size.min(64) {
                        for j in 0..size.min(64) {
                            let g1 = Poly::from_index_below(&spec, deg + 1, i);
                            let g2 = Poly::from_index_below(&spec, deg + 1, j);
                            let lhs = additive_char_e(&g1.add(&g2), &f).unwrap();
                            let rhs = additive_char_e(&g1, &f).unwrap()
                                * additive_char_e(&g2, &f).unwrap();
                            assert!(close(lhs, rhs, 1e-9), "e((g₁+g₂)/f) = e(g₁/f)e(g₂/f) at f={f}");
                        }
                    }
                }
            }
        }
    }

    /// Against the Laurent-expansion oracle: the t^{−1} coefficient of g/f
    /// read off the quotient of g·t^K by f.
    #[test]
    fn additive_char_matches_laurent_oracle() {
        const K: usize = 10;
        for q in [2u64, 3] {
            let spec = FieldSpec::prime(q).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(0x1au64 + q);
            for _ in 0..1000 {
                let deg = rng.gen_range(1..=8usize);
                let f = Poly::from_monic_index(&spec, deg, rng.gen_range(0..q.pow(deg as u32)));
                let gbound = deg + 4;
                let g = Poly::from_index_below(
                    &spec,
                    gbound,
                    rng.gen_range(0..q.pow(gbound as u32)),
                );
                let shifted = g.mul(&Poly::monomial(&spec, crate::fq::Fq::ONE, K));
                let (quot, _) = shifted.divrem(&f).unwrap();
                let c_minus_1 = quot.coeff(K - 1);
                let oracle = spec.char_e(c_minus_1);
                let direct = additive_char_e(&g, &f).unwrap();
                assert!(close(direct, oracle, 1e-12), "Laurent oracle at g={g}, f={f}");
            }
        }
    }

    /// Σ_{g mod f} e(g/f) = 0 for deg f ≥ 1.
    #[test]
    fn additive_char_orthogonality() {
        for (spec, maxdeg) in [(f2(), 4usize), (f3(), 2)] {
            for deg in 1..=maxdeg {
                for f in enumerate_monic(&spec, deg) {
                    let size = (spec.q()).pow(deg as u32);
                    let mut total = Complex64::new(0.0, 0.0);
                    for idx in 0..size {
                        let g = Poly::from_index_below(&spec, deg, idx);
                        total += additive_char_e(&g, &f).unwrap();
                    }
                    assert!(
                        total.norm() <= tolerances::CHAR_SUM_PER_TERM * size as f64,
                        "Σ e(g/f) ≠ 0 at f = {f}"
                    );
                }
            }
        }
    }

    #[test]
    fn char_group_counts_and_principal() {
        let budgets = Budgets::default();
        for (spec, maxdeg) in [(f2(), 4usize), (f3(), 2)] {
            for deg in 1..=maxdeg {
                for m in enumerate_monic(&spec, deg) {
                    let group = CharGroup::new(&m, &budgets).unwrap();
                    let chars = group.enumerate();
                    assert_eq!(chars.len() as u64, group.phi(), "φ characters mod {m}");
                    assert!(chars[0].is_principal());
                    // The principal character is 1 on units, 0 elsewhere.
                    for idx in 0..group.ring().size() {
                        let h = group.ring().poly_of(idx);
                        let v = group.value(&chars[0], &h);
                        let expect = if group.ring().is_unit(&h) { 1.0 } else { 0.0 };
                        assert!(close(v, Complex64::new(expect, 0.0), 1e-12));
                    }
                }
            }
        }
    }

    #[test]
    fn characters_are_multiplicative() {
        let budgets = Budgets::default();
        for m in [p2("001"), p2("0001"), p2("111"), p2("011")] {
            let group = CharGroup::new(&m, &budgets).unwrap();
            for chi in group.enumerate() {
                for a in group.ring().units() {
                    for b in group.ring().units() {
                        let lhs = group.value(&chi, &a.mul(b));
                        let rhs = group.value(&chi, a) * group.value(&chi, b);
                        assert!(close(lhs, rhs, 1e-9), "χ(ab) = χ(a)χ(b) mod {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn value_table_matches_pointwise() {
        let budgets = Budgets::default();
        let m = p2("0001"); // t³
        let group = CharGroup::new(&m, &budgets).unwrap();
        for chi in group.enumerate() {
            let table = group.value_table(&chi).unwrap();
            for idx in 0..group.ring().size() {
                assert!(close(
                    table[idx as usize],
                    group.value(&chi, &group.ring().poly_of(idx)),
                    0.0
                ));
            }
        }
    }

    /// Row and column orthogonality at the pinned tolerance.
    #[test]
    fn orthogonality_relations() {
        let budgets = Budgets::default();
        let moduli: Vec<Poly> = enumerate_monic(&f2(), 2)
            .chain(enumerate_monic(&f2(), 3))
            .chain(enumerate_monic(&f3(), 1))
            .chain(enumerate_monic(&f3(), 2))
            .collect();
        for m in moduli {
            let group = CharGroup::new(&m, &budgets).unwrap();
            let chars = group.enumerate();
            let phi = group.phi() as f64;
            let tol = tolerances::CHAR_SUM_PER_TERM * (phi + 1.0);
            // Rows: Σ_u χ(u)ψ̄(u) = φ·[χ = ψ].
            for chi in &chars {
                for psi in &chars {
                    let psi_bar = psi.conjugate(&group);
                    let mut total = Complex64::new(0.0, 0.0);
                    for u in group.ring().units() {
                        total += group.value(chi, u) * group.value(&psi_bar, u);
                    }
                    let expect = if chi == psi { phi } else { 0.0 };
                    assert!(
                        close(total, Complex64::new(expect, 0.0), tol),
                        "row orthogonality mod {m}"
                    );
                }
            }
            // Columns: Σ_χ χ(a)·conj(χ(b)) = φ·[a = b].
            for a in group.ring().units() {
                for b in group.ring().units() {
                    let mut total = Complex64::new(0.0, 0.0);
                    for chi in &chars {
                        total += group.value(chi, a) * group.value(chi, b).conj();
                    }
                    let expect = if a == b { phi } else { 0.0 };
                    assert!(
                        close(total, Complex64::new(expect, 0.0), tol),
                        "column orthogonality mod {m}"
                    );
                }
            }
        }
    }

    #[test]
    fn conductor_examples() {
        let budgets = Budgets::default();
        let arith = Arith::new(&f2(), 4, &budgets).unwrap();
        // Mod t²: principal has conductor 1, the other character is primitive.
        let group = CharGroup::new(&p2("001"), &budgets).unwrap();
        let chars = group.enumerate();
        assert_eq!(chars.len(), 2);
        assert!(group.conductor(&arith, &chars[0]).unwrap().is_one());
        assert_eq!(group.conductor(&arith, &chars[1]).unwrap(), p2("001"));
        assert!(group.is_primitive(&arith, &chars[1]).unwrap());

        // Mod an irreducible P, every non-principal character is primitive.
        let group = CharGroup::new(&p2("1101"), &budgets).unwrap();
        for chi in group.enumerate() {
            let cond = group.conductor(&arith, &chi).unwrap();
            if chi.is_principal() {
                assert!(cond.is_one());
            } else {
                assert_eq!(cond, p2("1101"));
            }
        }

        // Mod t·(t+1): characters split by CRT; the character that is
        // nontrivial only mod t+1 has conductor t+1.
        let group = CharGroup::new(&p2("011"), &budgets).unwrap();
        assert_eq!(group.phi(), 1, "φ(t²+t) = 1: only the principal character");
        let chi = &group.enumerate()[0];
        assert!(group.conductor(&arith, chi).unwrap().is_one());
    }

    /// Conductor scan and the μ∗φ divisor formula count the same primitives.
    #[test]
    fn primitive_count_matches_formula() {
        let budgets = Budgets::default();
        for (spec, maxdeg, table_deg) in [(f2(), 4usize, 4usize), (f3(), 2, 2)] {
            let arith = Arith::new(&spec, table_deg, &budgets).unwrap();
            for deg in 1..=maxdeg {
                for m in enumerate_monic(&spec, deg) {
                    let group = CharGroup::new(&m, &budgets).unwrap();
                    let scanned = group.primitive_chars(&arith).unwrap().len() as i128;
                    let formula = group.primitive_count_formula(&arith).unwrap();
                    assert_eq!(scanned, formula, "primitive count mod {m}");
                }
            }
        }
    }

    #[test]
    fn gauss_sum_known_value_and_modulus() {
        let budgets = Budgets::default();
        // q = 3, m = t: the quadratic character has τ(χ) = ζ₃ − ζ₃² = i√3.
        let f3 = f3();
        let group = CharGroup::new(&Poly::t(&f3), &budgets).unwrap();
        let chi = group
            .enumerate()
            .into_iter()
            .find(|c| !c.is_principal())
            .unwrap();
        let tau = group.gauss_sum(&chi).unwrap();
        assert!(close(tau, Complex64::new(0.0, 3.0f64.sqrt()), 1e-9), "τ = i√3, got {tau}");

        // |τ(χ)|² = |m| for primitive χ, over a spread of moduli.
        let arith2 = Arith::new(&f2(), 4, &budgets).unwrap();
        let arith3 = Arith::new(&f3, 3, &budgets).unwrap();
        let cases: Vec<(Poly, &Arith)> = enumerate_monic(&f2(), 2)
            .chain(enumerate_monic(&f2(), 3))
            .chain(enumerate_monic(&f2(), 4))
            .map(|m| (m, &arith2))
            .chain(
                enumerate_monic(&f3, 1)
                    .chain(enumerate_monic(&f3, 2))
                    .map(|m| (m, &arith3)),
            )
            .collect();
        for (m, arith) in cases {
            let group = CharGroup::new(&m, &budgets).unwrap();
            for chi in group.primitive_chars(arith).unwrap() {
                let tau = group.gauss_sum(&chi).unwrap();
                let norm = m.norm() as f64;
                assert!(
                    (tau.norm_sqr() - norm).abs() <= tolerances::GAUSS_SUM_ABS,
                    "|τ(χ)|² = |m| fails mod {m}: {} vs {norm}",
                    tau.norm_sqr()
                );
            }
        }
    }

    /// Gauss sums over all residues and over units only are literally the
    /// same sum (χ kills non-units); assert the two loops agree.
    #[test]
    fn gauss_sum_unit_restriction_agrees() {
        let budgets = Budgets::default();
        for m in [p2("001"), p2("011"), p2("111"), p2("0001")] {
            let group = CharGroup::new(&m, &budgets).unwrap();
            for chi in group.enumerate() {
                let all = group.gauss_sum(&chi).unwrap();
                let mut units_only = Complex64::new(0.0, 0.0);
                for h in group.ring().units() {
                    units_only += group.value(&chi, h) * additive_char_e(h, &m).unwrap();
                }
                assert!(close(all, units_only, 1e-12), "restriction mismatch mod {m}");
            }
        }
    }

    /// χ(g)·τ(χ̄) = Σ_{(h,m)=1} χ̄(h)·e(gh/m) for primitive χ and every g,
    /// including g with gcd(g, m) > 1 where both sides vanish.
    #[test]
    fn twisted_sum_identity_holds() {
        let budgets = Budgets::default();
        let arith = Arith::new(&f2(), 4, &budgets).unwrap();
        for m in [p2("001"), p2("0001"), p2("111"), p2("1101")] {
            let group = CharGroup::new(&m, &budgets).unwrap();
            let tol = tolerances::CHAR_SUM_PER_TERM * (group.phi() as f64 + 1.0);
            for chi in group.primitive_chars(&arith).unwrap() {
                for idx in 0..group.ring().size() {
                    let g = group.ring().poly_of(idx);
                    let (lhs, rhs) = group.twisted_sum_identity(&chi, &g).unwrap();
                    assert!(close(lhs, rhs, tol), "twisted identity at g={g} mod {m}");
                    if !group.ring().is_unit(&g) {
                        assert!(lhs.norm() <= tol, "lhs should vanish at non-unit g={g}");
                    }
                }
            }
        }
    }

    #[test]
    fn char_order_divides_phi() {
        let budgets = Budgets::default();
        for m in [p2("0001"), p2("111"), p2("01101")] {
            let group = CharGroup::new(&m, &budgets).unwrap();
            for chi in group.enumerate() {
                let ord = chi.order(&group);
                assert!(group.phi() % ord == 0, "ord(χ) | φ mod {m}");
                // χ^ord is principal: phase·ord ≡ 0 for every unit.
                for u in group.ring().units() {
                    let p = group.phase(&chi, u).unwrap();
                    assert_eq!(p * ord % (group.lambda), 0);
                }
            }
        }
    }

}
