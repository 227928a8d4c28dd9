//! The large sieve over F_q[t], in three forms, verified numerically against
//! their theoretical ceilings.
//!
//! For coefficients (a_g) on monic g of degree N with Z = Σ|a_g|²:
//!
//! * additive:        Σ_{deg f ≤ Q} Σ*_{h mod f} |Σ_g a_g·e(gh/f)|²   ≤ (q^N + q^{2Q})·Z
//! * multiplicative:  Σ_{deg f ≤ Q} (|f|/φ(f)) Σ*_{χ mod f} |Σ_g a_g·χ(g)|² ≤ (q^N + q^{2Q})·Z
//! * D-truncated:     Σ_{D < deg f ≤ Q} (1/φ(f)) Σ*_{χ mod f} |Σ_g a_g·χ(g)|² ≤ (q^{N−D} + q^Q)·Z
//!
//! where Σ* runs over reduced residues (resp. primitive characters). The
//! modulus f = 1 contributes |Σ_g a_g|² to the first two forms (one residue,
//! one vacuously primitive principal character); the toggle
//! `include_trivial_modulus` keeps or drops it and defaults to keeping it.
//!
//! The inner sums are computed through residue-class buckets
//! A_c = Σ_{g ≡ c (f)} a_g — one O(q^N) pass per modulus — so each modulus
//! costs O(q^N + φ(f)·q^{deg f}) instead of O(q^N·φ(f)).

use crate::chars::{additive_char_e, CharGroup};
use crate::fq::FieldSpec;
use crate::multfn::Arith;
use crate::poly::Poly;
use crate::{derive_seed, Budgets, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

// ---- Coefficient vectors ----

/// Complex coefficients a_g indexed by the monic polynomials of one degree.
#[derive(Clone)]
pub struct CoeffVector {
    spec: Arc<FieldSpec>,
    deg: usize,
    values: Vec<Complex64>,
}

impl CoeffVector {
    /// A random vector with components uniform on [−1,1)², then normalized
    /// to unit mass Z = Σ|a_g|² = 1. Seeded ChaCha8, fully reproducible.
    pub fn random_unit(
        spec: &Arc<FieldSpec>,
        deg: usize,
        seed: u64,
        budgets: &Budgets,
    ) -> Result<CoeffVector> {
        let count_u128 = (spec.q() as u128).pow(deg as u32);
        budgets.check_enumeration("coefficient vector", count_u128)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut values: Vec<Complex64> = (0..count_u128 as usize)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let mass: f64 = values.iter().map(|a| a.norm_sqr()).sum();
        let scale = mass.sqrt().recip();
        for a in &mut values {
            *a *= scale;
        }
        Ok(CoeffVector {
            spec: Arc::clone(spec),
            deg,
            values,
        })
    }

    pub fn from_values(spec: &Arc<FieldSpec>, deg: usize, values: Vec<Complex64>) -> CoeffVector {
        assert_eq!(values.len() as u128, (spec.q() as u128).pow(deg as u32));
        CoeffVector {
            spec: Arc::clone(spec),
            deg,
            values,
        }
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    /// Values by [`Poly::monic_index`].
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Z = Σ|a_g|².
    pub fn z_mass(&self) -> f64 {
        self.values.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn scale(&self, c: Complex64) -> CoeffVector {
        CoeffVector {
            spec: Arc::clone(&self.spec),
            deg: self.deg,
            values: self.values.iter().map(|a| a * c).collect(),
        }
    }

    pub fn total(&self) -> Complex64 {
        self.values.iter().sum()
    }
}

// ---- Per-modulus machinery ----

struct ModulusData {
    f: Poly,
    deg: usize,
    size: usize,
    phi: u64,
    unit_indices: Vec<u32>,
    /// e(c/f) by residue index c.
    e_val: Vec<Complex64>,
    /// index_of(c·h mod f) flattened with stride `size`.
    res_mul: Vec<u32>,
    /// index_of(c + h mod f), only for q > 2 (q = 2 adds by XOR).
    res_add: Option<Vec<u32>>,
    /// Primitive-character value tables by residue index.
    prim_tables: Vec<Vec<Complex64>>,
}

/// Everything reusable across coefficient vectors for moduli of degree ≤ Q:
/// residue tables, additive-character values, and primitive-character tables.
pub struct SieveContext {
    spec: Arc<FieldSpec>,
    max_modulus_deg: usize,
    moduli: Vec<ModulusData>,
}

impl SieveContext {
    pub fn new(arith: &Arith, max_modulus_deg: usize, budgets: &Budgets) -> Result<SieveContext> {
        let spec = arith.spec();
        let q = spec.q();
        // The residue tables are the dominant allocation: (q^d)² entries.
        let table_cells = (q as u128).pow(2 * max_modulus_deg as u32);
        budgets.check_enumeration("sieve residue tables", table_cells)?;

        let mut moduli = Vec::new();
        for d in 1..=max_modulus_deg {
            for f in crate::poly::enumerate_monic(spec, d) {
                moduli.push(Self::build_modulus(arith, &f, budgets)?);
            }
        }
        Ok(SieveContext {
            spec: Arc::clone(spec),
            max_modulus_deg,
            moduli,
        })
    }

    fn build_modulus(arith: &Arith, f: &Poly, budgets: &Budgets) -> Result<ModulusData> {
        let spec = arith.spec();
        let d = f.degree().unwrap();
        let size = (spec.q() as u128).pow(d as u32) as usize;
        let group = CharGroup::new(f, budgets)?;
        let ring = group.ring();

        let residues: Vec<Poly> = (0..size as u64).map(|i| ring.poly_of(i)).collect();
        let unit_indices: Vec<u32> = residues
            .iter()
            .enumerate()
            .filter(|(_, r)| ring.is_unit(r))
            .map(|(i, _)| i as u32)
            .collect();
        let mut e_val = Vec::with_capacity(size);
        for r in &residues {
            e_val.push(additive_char_e(r, f)?);
        }
        let mut res_mul = vec![0u32; size * size];
        for (i, a) in residues.iter().enumerate() {
            for (j, b) in residues.iter().enumerate() {
                res_mul[i * size + j] = ring.index_of(&a.mul(b)) as u32;
            }
        }
        let res_add = if spec.q() == 2 {
            None
        } else {
            let mut t = vec![0u32; size * size];
            for (i, a) in residues.iter().enumerate() {
                for (j, b) in residues.iter().enumerate() {
                    t[i * size + j] = ring.index_of(&a.add(b)) as u32;
                }
            }
            Some(t)
        };
        let mut prim_tables = Vec::new();
        for chi in group.primitive_chars(arith)? {
            prim_tables.push(group.value_table(&chi)?);
        }
        Ok(ModulusData {
            f: f.clone(),
            deg: d,
            size,
            phi: ring.phi(),
            unit_indices,
            e_val,
            res_mul,
            res_add,
            prim_tables,
        })
    }

    pub fn spec(&self) -> &Arc<FieldSpec> {
        &self.spec
    }

    pub fn max_modulus_deg(&self) -> usize {
        self.max_modulus_deg
    }

    /// Residue-class buckets A_c = Σ_{g ≡ c (f)} a_g over monic g of the
    /// vector's degree. For prime fields this walks the monic enumeration as
    /// an odometer, updating the running residue index per digit increment
    /// (q·x = 0 makes carry wraps self-correcting); extension fields fall
    /// back to one division per polynomial.
    fn buckets(&self, md: &ModulusData, vector: &CoeffVector) -> Vec<Complex64> {
        let n = vector.deg;
        let spec = &self.spec;
        let q = spec.q();
        let mut acc = vec![Complex64::new(0.0, 0.0); md.size];

        // Residue index of t^j mod f for j = 0..=n.
        let ring = crate::residue::ResidueRing::new(&md.f).expect("valid modulus");
        let mut mono_res = Vec::with_capacity(n + 1);
        let mut power = Poly::one(spec);
        mono_res.push(ring.index_of(&power) as u32);
        for _ in 0..n {
            power = ring.reduce(&power.mul(&Poly::t(spec)));
            mono_res.push(ring.index_of(&power) as u32);
        }

        if spec.k() == 1 {
            let mut digits = vec![0u64; n.max(1)];
            let mut cur = mono_res[n] as usize;
            acc[cur] += vector.values[0];
            for idx in 1..vector.values.len() {
                let mut j = 0;
                loop {
                    digits[j] += 1;
                    cur = match &md.res_add {
                        None => cur ^ mono_res[j] as usize,
                        Some(add) => add[cur * md.size + mono_res[j] as usize] as usize,
                    };
                    if digits[j] < q {
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
                acc[cur] += vector.values[idx];
            }
        } else {
            for (idx, a) in vector.values.iter().enumerate() {
                let g = Poly::from_monic_index(spec, n, idx as u64);
                acc[ring.index_of(&g) as usize] += a;
            }
        }
        acc
    }

    /// Per-modulus inner sums for one vector: Σ*_h |T(h)|² with
    /// T(h) = Σ_c A_c·e(ch/f), and Σ over primitive χ of |Σ_c A_c·χ(c)|².
    pub fn inners(&self, vector: &CoeffVector) -> Vec<ModulusInner> {
        self.moduli
            .iter()
            .map(|md| {
                let a = self.buckets(md, vector);
                let mut additive = 0.0;
                for &h in &md.unit_indices {
                    let mut t = Complex64::new(0.0, 0.0);
                    for (c, ac) in a.iter().enumerate() {
                        t += ac * md.e_val[md.res_mul[c * md.size + h as usize] as usize];
                    }
                    additive += t.norm_sqr();
                }
                let mut primitive = 0.0;
                for table in &md.prim_tables {
                    let mut s = Complex64::new(0.0, 0.0);
                    for &c in &md.unit_indices {
                        s += a[c as usize] * table[c as usize];
                    }
                    primitive += s.norm_sqr();
                }
                ModulusInner {
                    deg: md.deg,
                    phi: md.phi,
                    additive_inner: additive,
                    primitive_inner: primitive,
                }
            })
            .collect()
    }

    /// Evaluate all three sieve forms for one vector.
    pub fn verify(&self, vector: &CoeffVector, config: &SieveConfig) -> Result<SieveReport> {
        config.validate(self)?;
        let inners = self.inners(vector);
        Ok(assemble_report(
            &inners,
            vector,
            self.spec.q(),
            config,
        ))
    }
}

/// One modulus's contribution to the sieve sums.
#[derive(Debug, Clone)]
pub struct ModulusInner {
    pub deg: usize,
    pub phi: u64,
    pub additive_inner: f64,
    pub primitive_inner: f64,
}

/// Parameters of one sieve evaluation.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SieveConfig {
    /// Coefficient degree N.
    pub n: usize,
    /// Modulus ceiling Q: moduli run over deg f ≤ Q.
    pub q_max: usize,
    /// Truncation floor D for the third form: D < deg f ≤ Q.
    pub d_trunc: usize,
    /// Keep the f = 1 term of the first two forms (default: yes).
    pub include_trivial_modulus: bool,
}

impl SieveConfig {
    fn validate(&self, ctx: &SieveContext) -> Result<()> {
        if self.q_max > ctx.max_modulus_deg {
            return Err(crate::Error::domain(format!(
                "sieve context built for moduli of degree <= {}, asked for Q = {}",
                ctx.max_modulus_deg, self.q_max
            )));
        }
        if self.d_trunc > self.q_max {
            return Err(crate::Error::domain(format!(
                "truncation D = {} exceeds Q = {}",
                self.d_trunc, self.q_max
            )));
        }
        Ok(())
    }
}

/// Values of the three sieve forms and their theoretical ceilings.
#[derive(Debug, Clone, serde::Serialize)]
pub struct SieveReport {
    pub n: usize,
    pub q_max: usize,
    pub d_trunc: usize,
    pub include_trivial_modulus: bool,
    pub z: f64,
    pub additive_lhs: f64,
    pub additive_rhs: f64,
    pub mult_lhs: f64,
    pub mult_rhs: f64,
    pub trunc_lhs: f64,
    pub trunc_rhs: f64,
}

impl SieveReport {
    pub fn additive_ratio(&self) -> f64 {
        self.additive_lhs / self.additive_rhs
    }
    pub fn mult_ratio(&self) -> f64 {
        self.mult_lhs / self.mult_rhs
    }
    pub fn trunc_ratio(&self) -> f64 {
        self.trunc_lhs / self.trunc_rhs
    }
}

fn assemble_report(
    inners: &[ModulusInner],
    vector: &CoeffVector,
    q: u64,
    config: &SieveConfig,
) -> SieveReport {
    let z = vector.z_mass();
    let trivial_sq = vector.total().norm_sqr();
    let qf = q as f64;

    let mut additive_lhs = 0.0;
    let mut mult_lhs = 0.0;
    let mut trunc_lhs = 0.0;
    if config.include_trivial_modulus {
        additive_lhs += trivial_sq;
        mult_lhs += trivial_sq;
    }
    for inner in inners {
        if inner.deg <= config.q_max {
            additive_lhs += inner.additive_inner;
            let norm_f = qf.powi(inner.deg as i32);
            mult_lhs += norm_f / inner.phi as f64 * inner.primitive_inner;
            if inner.deg > config.d_trunc {
                trunc_lhs += inner.primitive_inner / inner.phi as f64;
            }
        }
    }
    let bracket = qf.powi(config.n as i32) + qf.powi(2 * config.q_max as i32);
    let trunc_bracket =
        qf.powi(config.n as i32 - config.d_trunc as i32) + qf.powi(config.q_max as i32);
    SieveReport {
        n: config.n,
        q_max: config.q_max,
        d_trunc: config.d_trunc,
        include_trivial_modulus: config.include_trivial_modulus,
        z,
        additive_lhs,
        additive_rhs: bracket * z,
        mult_lhs,
        mult_rhs: bracket * z,
        trunc_lhs,
        trunc_rhs: trunc_bracket * z,
    }
}

// ---- Randomized sweeps ----

/// A randomized sweep at one grid point: many unit vectors, worst ratios kept.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct SweepConfig {
    pub n: usize,
    pub q_max: usize,
    pub d_trunc: usize,
    pub vectors: u32,
    pub base_seed: u64,
    pub include_trivial_modulus: bool,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub max_additive_ratio: f64,
    pub max_mult_ratio: f64,
    pub max_trunc_ratio: f64,
    /// Trial index attaining each maximum (reproducible via derive_seed).
    pub argmax_additive: u32,
    pub argmax_mult: u32,
    pub argmax_trunc: u32,
}

/// Run `vectors` random unit vectors through all three forms. Trial t is
/// seeded with `derive_seed(base_seed, (q << 32) | n, t)`.
pub fn sweep(ctx: &SieveContext, config: &SweepConfig, budgets: &Budgets) -> Result<SweepSummary> {
    let sieve_config = SieveConfig {
        n: config.n,
        q_max: config.q_max,
        d_trunc: config.d_trunc,
        include_trivial_modulus: config.include_trivial_modulus,
    };
    sieve_config.validate(ctx)?;
    let q = ctx.spec.q();
    let tag = (q << 32) | config.n as u64;
    let mut summary = SweepSummary {
        config: *config,
        max_additive_ratio: 0.0,
        max_mult_ratio: 0.0,
        max_trunc_ratio: 0.0,
        argmax_additive: 0,
        argmax_mult: 0,
        argmax_trunc: 0,
    };
    for trial in 0..config.vectors {
        let seed = derive_seed(config.base_seed, tag, trial as u64);
        let vector = CoeffVector::random_unit(&ctx.spec, config.n, seed, budgets)?;
        let report = ctx.verify(&vector, &sieve_config)?;
        if report.additive_ratio() > summary.max_additive_ratio {
            summary.max_additive_ratio = report.additive_ratio();
            summary.argmax_additive = trial;
        }
        if report.mult_ratio() > summary.max_mult_ratio {
            summary.max_mult_ratio = report.mult_ratio();
            summary.argmax_mult = trial;
        }
        if report.trunc_ratio() > summary.max_trunc_ratio {
            summary.max_trunc_ratio = report.trunc_ratio();
            summary.argmax_trunc = trial;
        }
    }
    Ok(summary)
}
