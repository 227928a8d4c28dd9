//! Equidistribution of arithmetic functions in progressions: the error term
//!
//!   E(M; m, l; ψ) = Σ_{f ≡ l (m), deg f = M} ψ(f) − (1/φ(m))·Σ_{(f,m)=1, deg f = M} ψ(f),
//!
//! Bombieri–Vinogradov-style dispersion sums Σ_m max_{M,l} |E|, the level-of-
//! distribution policy Q = ⌊N/2 − B·log N⌋, Siegel–Walfisz twisted sums
//! Σ_{deg f = N} ψ(f)χ(f), and a quadrature check of the Perron formula.
//!
//! ψ values and E are exact: integer ψ sums, with the single division by φ(m)
//! carried as a rational. The zero identities (ψ ≡ 1 ⇒ E = 0 for M ≥ deg m;
//! telescoping over l) therefore hold exactly, not approximately. Only the
//! twisted sums and the Perron integral use floating point.
//!
//! The dispersion's inner max runs over deg m ≤ M ≤ N and reduced l coprime
//! to m: that is the range where the ψ ≡ 1 identities hold and the range the
//! underlying theory controls. (`error_term` itself accepts any M ≥ 0;
//! empty progression sums at M < deg m are kept and contribute
//! |0 − coprime/φ(m)|.)

use crate::chars::{CharGroup, DirichletChar};
use crate::multfn::{Arith, ArithFn};
use crate::poly::{enumerate_monic, Poly};
use crate::residue::ResidueRing;
use crate::tolerances;
use crate::{Budgets, Error, Result};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

// ---- Progression, coprime, and error sums ----

/// ψ summed over residue classes mod m at degree `deg`: index c holds
/// Σ_{f ≡ c (m), deg f = deg} ψ(f). For m = 1 the single class holds the
/// full degree sum.
pub fn class_sums(
    arith: &Arith,
    psi: &ArithFn,
    m: &Poly,
    deg: usize,
    budgets: &Budgets,
) -> Result<Vec<i128>> {
    let table = psi.eval_table(arith, deg, budgets)?;
    if m.degree() == Some(0) {
        return Ok(vec![table.iter().sum()]);
    }
    let ring = ResidueRing::new(m)?;
    Ok(ring.bucket_monic(deg, &table))
}

fn check_coprime(m: &Poly, l: &Poly) -> Result<()> {
    if !l.gcd(m).is_one() {
        return Err(Error::domain(format!(
            "progression class needs gcd(l, m) = 1, got gcd({l}, {m}) = {}",
            l.gcd(m)
        )));
    }
    Ok(())
}

/// Σ_{f ≡ l (mod m), deg f = M} ψ(f), exactly.
pub fn progression_sum(
    arith: &Arith,
    psi: &ArithFn,
    m: &Poly,
    l: &Poly,
    deg: usize,
    budgets: &Budgets,
) -> Result<i128> {
    check_coprime(m, l)?;
    let sums = class_sums(arith, psi, m, deg, budgets)?;
    if m.degree() == Some(0) {
        return Ok(sums[0]);
    }
    let ring = ResidueRing::new(m)?;
    Ok(sums[ring.index_of(l) as usize])
}

/// Σ_{(f,m)=1, deg f = M} ψ(f), exactly. m = 1 drops the constraint.
pub fn coprime_sum(
    arith: &Arith,
    psi: &ArithFn,
    m: &Poly,
    deg: usize,
    budgets: &Budgets,
) -> Result<i128> {
    let sums = class_sums(arith, psi, m, deg, budgets)?;
    if m.degree() == Some(0) {
        return Ok(sums[0]);
    }
    let ring = ResidueRing::new(m)?;
    Ok(ring
        .units()
        .iter()
        .map(|u| sums[ring.index_of(u) as usize])
        .sum())
}

/// E(M; m, l; ψ) as an exact rational (denominator φ(m)).
pub fn error_term(
    arith: &Arith,
    psi: &ArithFn,
    m: &Poly,
    l: &Poly,
    deg: usize,
    budgets: &Budgets,
) -> Result<Ratio<i128>> {
    check_coprime(m, l)?;
    let sums = class_sums(arith, psi, m, deg, budgets)?;
    if m.degree() == Some(0) {
        return Ok(Ratio::from_integer(0));
    }
    let ring = ResidueRing::new(m)?;
    let prog = sums[ring.index_of(l) as usize];
    let coprime: i128 = ring
        .units()
        .iter()
        .map(|u| sums[ring.index_of(u) as usize])
        .sum();
    let phi = ring.phi() as i128;
    Ok(Ratio::new(prog * phi - coprime, phi))
}

// ---- Dispersion ----

/// One modulus's worst error over deg m ≤ M ≤ N and reduced l.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DispersionRow {
    pub modulus: String,
    pub modulus_deg: usize,
    pub phi: u64,
    /// max |E| = max_numerator/φ(m), with the numerator exact.
    pub max_numerator: i128,
    pub argmax_deg: usize,
    pub argmax_l: String,
    pub value: f64,
}

/// Σ over monic m, 1 ≤ deg m ≤ Q, of max_{deg m ≤ M ≤ N} max_l |E(M;m,l;ψ)|.
#[derive(Debug, Clone, serde::Serialize)]
pub struct DispersionReport {
    pub psi: String,
    pub n: usize,
    pub q_max: usize,
    pub rows: Vec<DispersionRow>,
    /// Exact total as a reduced fraction "numerator/denominator".
    pub total_exact: String,
    pub total: f64,
    /// total / (q^N / N).
    pub normalized: f64,
}

/// Dispersion total over all moduli of degree 1..=Q. Exact: per-modulus maxima
/// are integer comparisons at fixed denominator φ(m); the total is summed in
/// arbitrary-precision rationals.
pub fn bv_dispersion(
    arith: &Arith,
    psi: &ArithFn,
    n: usize,
    q_max: usize,
    budgets: &Budgets,
) -> Result<DispersionReport> {
    let spec = arith.spec();
    let q = spec.q();
    budgets.check_enumeration(
        "dispersion modulus space q^{2Q}",
        (q as u128).pow(2 * q_max as u32),
    )?;
    budgets.check_enumeration("dispersion degree space q^N", (q as u128).pow(n as u32))?;

    struct ModulusState {
        ring: ResidueRing,
        unit_idx: Vec<u32>,
        max_num: i128,
        argmax_deg: usize,
        argmax_l: u32,
    }
    let mut states: Vec<ModulusState> = Vec::new();
    for d in 1..=q_max {
        for m in enumerate_monic(spec, d) {
            let ring = ResidueRing::new(&m)?;
            let unit_idx = ring
                .units()
                .iter()
                .map(|u| ring.index_of(u) as u32)
                .collect();
            states.push(ModulusState {
                ring,
                unit_idx,
                max_num: 0,
                argmax_deg: 0,
                argmax_l: 0,
            });
        }
    }

    for deg in 1..=n {
        let table = psi.eval_table(arith, deg, budgets)?;
        for st in &mut states {
            if st.ring.modulus().degree().unwrap() > deg {
                continue;
            }
            let sums = st.ring.bucket_monic(deg, &table);
            let coprime: i128 = st.unit_idx.iter().map(|&c| sums[c as usize]).sum();
            let phi = st.ring.phi() as i128;
            for &c in &st.unit_idx {
                let num = (sums[c as usize] * phi - coprime).abs();
                if num > st.max_num {
                    st.max_num = num;
                    st.argmax_deg = deg;
                    st.argmax_l = c;
                }
            }
        }
    }

    let mut total = BigRational::zero();
    let mut rows = Vec::with_capacity(states.len());
    for st in &states {
        let phi = st.ring.phi();
        total += BigRational::new(BigInt::from(st.max_num), BigInt::from(phi));
        rows.push(DispersionRow {
            modulus: st.ring.modulus().to_string(),
            modulus_deg: st.ring.modulus().degree().unwrap(),
            phi,
            max_numerator: st.max_num,
            argmax_deg: st.argmax_deg,
            argmax_l: st.ring.poly_of(st.argmax_l as u64).to_string(),
            value: st.max_num as f64 / phi as f64,
        });
    }
    let normalized = (&total * BigRational::new(BigInt::from(n), BigInt::from(q).pow(n as u32)))
        .to_f64()
        .unwrap_or(f64::NAN);
    Ok(DispersionReport {
        psi: psi.name(),
        n,
        q_max,
        rows,
        total_exact: total.to_string(),
        total: total.to_f64().unwrap_or(f64::NAN),
        normalized,
    })
}

/// Q = ⌊N/2 − B·log_base(N)⌋, clamped at 0. The base defaults to q in the
/// callers (with natural log selectable).
pub fn bv_level_policy(n: usize, b: f64, log_base: f64) -> usize {
    assert!(n >= 1, "level policy needs N >= 1");
    assert!(b >= 0.0, "level policy needs B >= 0");
    assert!(log_base > 1.0, "level policy needs a log base > 1");
    let value = n as f64 / 2.0 - b * (n as f64).ln() / log_base.ln();
    if value <= 0.0 {
        0
    } else {
        value.floor() as usize
    }
}

// ---- Siegel–Walfisz twisted sums ----

/// Σ_{deg f = N} ψ(f)·χ(f). Exact class sums of ψ, then one character pass.
pub fn sw_twisted_sum(
    arith: &Arith,
    psi: &ArithFn,
    group: &CharGroup,
    chi: &DirichletChar,
    deg: usize,
    budgets: &Budgets,
) -> Result<Complex64> {
    if psi.is_integer_valued() {
        let sums = class_sums(arith, psi, group.modulus(), deg, budgets)?;
        let ring = group.ring();
        let mut total = Complex64::new(0.0, 0.0);
        for (c, &s) in sums.iter().enumerate() {
            if s != 0 {
                total += s as f64 * group.value(chi, &ring.poly_of(c as u64));
            }
        }
        Ok(total)
    } else {
        let count = (arith.spec().q() as u128).pow(deg as u32);
        budgets.check_enumeration("twisted sum", count)?;
        let mut total = Complex64::new(0.0, 0.0);
        for f in enumerate_monic(arith.spec(), deg) {
            total += psi.eval_complex(arith, &f)? * group.value(chi, &f);
        }
        Ok(total)
    }
}

// ---- Perron's formula ----

/// Parameters of a Perron quadrature check for the partial sum
/// Σ_{deg f ≤ N₀} a(f) against (1/2πi)∫ D_M(s)·q^{Ns}/s ds at N = N₀ + ½.
#[derive(Debug, Clone, Copy, serde::Serialize)]
pub struct PerronConfig {
    /// N = n0 + ½ (the contour theorem needs non-integer N).
    pub n0: usize,
    /// Truncation of the Dirichlet series: D(s) is summed over deg f ≤ m_cut.
    pub m_cut: usize,
    /// Real part of the contour, σ > 1.
    pub sigma: f64,
    /// Half-height of the contour segment.
    pub t: f64,
    /// Trapezoid sample count; `None` picks max(10⁴, 100·T).
    pub samples: Option<u64>,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct PerronReport {
    pub psi: String,
    pub n0: usize,
    pub m_cut: usize,
    pub sigma: f64,
    pub t: f64,
    pub samples: u64,
    pub target_re: f64,
    pub target_im: f64,
    pub integral_re: f64,
    pub integral_im: f64,
    /// |integral − target|.
    pub abs_error: f64,
    /// The theoretical budget c·q^{σN}/T with the pinned constant.
    pub error_budget: f64,
    /// |I(samples) − I(samples/2)|: the step-halving residual at the
    /// requested resolution…
    pub residual_coarse: f64,
    /// …and |I(2·samples) − I(samples)|: one more halving, which the O(h²)
    /// trapezoid must shrink by at least half.
    pub residual_fine: f64,
}

/// Numerically check Perron's formula for the coefficients of ψ.
pub fn perron_check(
    arith: &Arith,
    psi: &ArithFn,
    config: &PerronConfig,
    budgets: &Budgets,
) -> Result<PerronReport> {
    if config.sigma <= 1.0 {
        return Err(Error::domain(format!(
            "Perron contour needs sigma > 1, got {}",
            config.sigma
        )));
    }
    if config.m_cut <= config.n0 {
        return Err(Error::domain(format!(
            "Perron truncation needs M > N₀ (M ≥ N), got M = {}, N₀ = {}",
            config.m_cut, config.n0
        )));
    }
    if !(config.t > 0.0) {
        return Err(Error::domain("Perron contour needs T > 0"));
    }
    let q = arith.spec().q();
    let n = config.n0 as f64 + 0.5;

    // Degree sums A_d = Σ_{deg f = d} a(f).
    let mut a_deg = Vec::with_capacity(config.m_cut + 1);
    for d in 0..=config.m_cut {
        if psi.is_integer_valued() {
            let s: i128 = psi.eval_table(arith, d, budgets)?.iter().sum();
            a_deg.push(Complex64::new(s as f64, 0.0));
        } else {
            budgets.check_enumeration("Perron degree sum", (q as u128).pow(d as u32))?;
            let mut s = Complex64::new(0.0, 0.0);
            for f in enumerate_monic(arith.spec(), d) {
                s += psi.eval_complex(arith, &f)?;
            }
            a_deg.push(s);
        }
    }
    let target: Complex64 = a_deg[..=config.n0].iter().sum();

    // The integrand Σ_d A_d·q^{(N−d)s}/s on s = σ + it, grouped by degree.
    let ln_q = (q as f64).ln();
    let terms: Vec<(Complex64, f64)> = a_deg
        .iter()
        .enumerate()
        .map(|(d, &ad)| {
            let amp = ad * ((n - d as f64) * config.sigma * ln_q).exp();
            let freq = (n - d as f64) * ln_q;
            (amp, freq)
        })
        .collect();
    let integrate = |steps: u64| -> Complex64 {
        let h = 2.0 * config.t / steps as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..=steps {
            let t = -config.t + i as f64 * h;
            let denom = Complex64::new(config.sigma, t);
            let mut f = Complex64::new(0.0, 0.0);
            for &(amp, freq) in &terms {
                f += amp * Complex64::from_polar(1.0, freq * t);
            }
            let w = if i == 0 || i == steps { 0.5 } else { 1.0 };
            acc += w * f / denom;
        }
        acc * h / (2.0 * std::f64::consts::PI)
    };

    let samples = config
        .samples
        .unwrap_or_else(|| (10_000.0_f64).max(100.0 * config.t).ceil() as u64)
        .max(16);
    let i_half = integrate(samples / 2);
    let i_full = integrate(samples);
    let i_double = integrate(2 * samples);
    let integral = i_full;

    Ok(PerronReport {
        psi: psi.name(),
        n0: config.n0,
        m_cut: config.m_cut,
        sigma: config.sigma,
        t: config.t,
        samples,
        target_re: target.re,
        target_im: target.im,
        integral_re: integral.re,
        integral_im: integral.im,
        abs_error: (integral - target).norm(),
        error_budget: tolerances::PERRON_C * (q as f64).powf(config.sigma * n) / config.t,
        residual_coarse: (i_full - i_half).norm(),
        residual_fine: (i_double - i_full).norm(),
    })
}
