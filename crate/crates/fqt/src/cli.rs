//! Command-line front end: configuration, cache administration, and report
//! serialization for every experiment in the library.
//!
//! Subcommands: `constants`, `irr-table`, `char-table`, `ls-verify`,
//! `bv-dispersion`, `sw-sum`, `perron-check`, `hsu`, `titchmarsh`.
//!
//! Conventions shared by all of them:
//!
//! - Polynomials on the command line are base-q digit strings, lowest
//!   coefficient first: `--a 1` is the constant 1, `--a 01` is t,
//!   `--a 011` is t + t² = t(1 + t). (See [`Poly::parse`].)
//! - `--q` takes any prime power ≤ 2^16; `--q 4` selects F_4 with its fixed
//!   modulus choice.
//! - CSV output has one header row and a stable column order; JSON output
//!   embeds the full [`RunConfig`] so a report is reproducible from the file
//!   alone. A fixed seed and config gives bit-identical CSV (the `seconds`
//!   column of `hsu`/`titchmarsh` rows is the one timing exception).
//! - Exit codes: 0 success, 1 usage error, 2 domain error (including cache
//!   verification failures), 3 budget error.
//! - The irreducible-table cache directory comes from `--cache-dir`, falling
//!   back to the `FQT_CACHE_DIR` environment variable; commands that can use
//!   the cache work without one (tables are then rebuilt in memory).

use crate::chars::CharGroup;
use crate::equidist::{self, PerronConfig};
use crate::fq::FieldSpec;
use crate::multfn::{self, Arith, ArithFn, IrreducibleTable};
use crate::poly::Poly;
use crate::sieve::{CoeffVector, SieveConfig, SieveContext};
use crate::titchmarsh;
use crate::{derive_seed, Budgets, Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

/// Everything needed to reproduce a run; embedded in every JSON report.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RunConfig {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    pub field: String,
    /// Extension modulus coefficients over F_p (empty for prime fields).
    pub field_modulus: Vec<u64>,
    pub cache_dir: Option<String>,
    pub max_enumeration: u128,
    pub max_phi: u64,
    pub format: String,
    pub seed: Option<u64>,
}

#[derive(Debug, Parser)]
#[command(
    name = "fqt",
    about = "Arithmetic of F_q[t]: large sieve, equidistribution, and Titchmarsh divisor experiments",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Field size q = p^k (prime power)
    #[arg(long)]
    q: u64,
    /// Cache directory for irreducible tables (default: $FQT_CACHE_DIR)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Guard: largest enumeration the run may attempt
    #[arg(long, default_value_t = Budgets::default().max_enumeration)]
    max_enumeration: u128,
    /// Guard: largest unit group φ(m) the run may materialize
    #[arg(long, default_value_t = Budgets::default().max_phi)]
    max_phi: u64,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format (default depends on the subcommand)
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Text => "text",
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum AdminOp {
    Build,
    Verify,
    Purge,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SieveForm {
    Additive,
    Mult,
    Truncated,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LogBase {
    /// log base q (degree scale)
    Q,
    /// natural log
    E,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact zeta values ζ_q(2), ζ_q(3), ζ_q(6) and the singular constant
    Constants(ConstantsArgs),
    /// Irreducible counts by degree; cache build/verify/purge via --admin
    IrrTable(IrrTableArgs),
    /// Character group data for one modulus (JSON)
    CharTable(CharTableArgs),
    /// Large sieve inequalities over seeded random coefficient vectors
    LsVerify(LsVerifyArgs),
    /// Dispersion sum Σ_m max |E(M;m,l;ψ)| over moduli of degree ≤ Q
    BvDispersion(BvDispersionArgs),
    /// Twisted sum Σ_{deg f = N} ψ(f)χ(f)
    SwSum(SwSumArgs),
    /// Quadrature check of Perron's formula for Σ_{deg f ≤ N₀} ψ(f)
    PerronCheck(PerronCheckArgs),
    /// One-prime divisor sum Σ_{deg P = N} τ(P − a)
    Hsu(HsuArgs),
    /// Two-prime divisor sum Σ_{deg(P₁P₂) = N} τ(P₁P₂ − a)
    Titchmarsh(TitchmarshArgs),
}

#[derive(Debug, Args)]
struct ConstantsArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct IrrTableArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Highest degree to tabulate
    #[arg(long = "max-deg")]
    max_deg: usize,
    /// Cache administration instead of counting (needs a cache directory)
    #[arg(long)]
    admin: Option<AdminOp>,
}

#[derive(Debug, Args)]
struct CharTableArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Modulus m as a base-q digit string
    #[arg(long)]
    m: String,
}

#[derive(Debug, Args)]
struct LsVerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Degree N of the coefficient vectors
    #[arg(long = "N")]
    n: usize,
    /// Highest modulus degree Q
    #[arg(long = "Q")]
    q_max: usize,
    /// Truncation depth D for the D-truncated form
    #[arg(long = "D", default_value_t = 0)]
    d_trunc: usize,
    /// Number of random vectors
    #[arg(long, default_value_t = 1)]
    trials: u32,
    /// Base seed; trial t uses a stream derived from (seed, q, N, t)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Which inequality the rows report
    #[arg(long, value_enum)]
    form: SieveForm,
    /// Drop the trivial modulus f = 1 from the left-hand sides
    #[arg(long = "no-trivial", default_value_t = false)]
    no_trivial: bool,
}

#[derive(Debug, Args)]
struct BvDispersionArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Degree cap N: the inner max runs over deg m ≤ M ≤ N
    #[arg(long = "N")]
    n: usize,
    /// Highest modulus degree Q (alternative: --policy)
    #[arg(long = "Q", conflicts_with = "policy")]
    q_max: Option<usize>,
    /// Pick Q = ⌊N/2 − B·log N⌋ with this B (see --log-base)
    #[arg(long)]
    policy: Option<f64>,
    /// Base of the log in the level policy
    #[arg(long = "log-base", value_enum, default_value_t = LogBase::Q)]
    log_base: LogBase,
    /// Arithmetic function: one | prime | prime2 | tau:k | mu | phi
    #[arg(long)]
    psi: String,
}

#[derive(Debug, Args)]
struct SwSumArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Modulus m as a base-q digit string
    #[arg(long)]
    m: String,
    /// Character index in enumeration order (0 = principal)
    #[arg(long)]
    chi: u64,
    /// Arithmetic function: one | prime | prime2 | tau:k | mu | phi
    #[arg(long, default_value = "one")]
    psi: String,
    /// Degree N of the sum
    #[arg(long = "N")]
    n: usize,
}

#[derive(Debug, Args)]
struct PerronCheckArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Partial sums run over deg f ≤ N₀; the contour uses N = N₀ + ½
    #[arg(long = "N0")]
    n0: usize,
    /// Dirichlet-series truncation M (must exceed N₀)
    #[arg(long = "M")]
    m_cut: usize,
    /// Contour real part σ > 1
    #[arg(long)]
    sigma: f64,
    /// Contour half-height T
    #[arg(long = "T")]
    t: f64,
    /// Trapezoid samples (default max(10⁴, 100·T))
    #[arg(long)]
    samples: Option<u64>,
    /// Arithmetic function: one | prime | prime2 | tau:k | mu | phi
    #[arg(long, default_value = "one")]
    psi: String,
}

#[derive(Debug, Args)]
struct HsuArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Degree N (alternative: --range)
    #[arg(long = "N", conflicts_with = "range")]
    n: Option<usize>,
    /// Inclusive degree range N1..N2, one CSV row per degree
    #[arg(long)]
    range: Option<String>,
    /// Shift a as a base-q digit string
    #[arg(long)]
    a: String,
}

#[derive(Debug, Args)]
struct TitchmarshArgs {
    #[command(flatten)]
    common: CommonArgs,
    /// Degree N (alternative: --range)
    #[arg(long = "N", conflicts_with = "range")]
    n: Option<usize>,
    /// Inclusive degree range N1..N2, one CSV row per degree
    #[arg(long)]
    range: Option<String>,
    /// Shift a as a base-q digit string
    #[arg(long)]
    a: String,
}

/// Parse argv and run; the entry point `main` delegates here.
pub fn run() -> i32 {
    let argv: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout();
    dispatch(&argv, &mut stdout)
}

/// Testable dispatch: parses `argv` (including the program name), runs the
/// command, and writes the report to `out` unless `--out` redirects it.
pub fn dispatch(argv: &[String], out: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok((report, code)) => {
            let target = common_args(&cli.command).out.clone();
            let write_result = match target {
                Some(path) => std::fs::write(&path, report.as_bytes())
                    .map_err(|e| format!("writing {}: {e}", path.display())),
                None => out
                    .write_all(report.as_bytes())
                    .and_then(|()| out.flush())
                    .map_err(|e| format!("writing report: {e}")),
            };
            if let Err(msg) = write_result {
                eprintln!("error: {msg}");
                return 2;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Budget { .. } => 3,
                _ => 2,
            }
        }
    }
}

fn common_args(command: &Command) -> &CommonArgs {
    match command {
        Command::Constants(a) => &a.common,
        Command::IrrTable(a) => &a.common,
        Command::CharTable(a) => &a.common,
        Command::LsVerify(a) => &a.common,
        Command::BvDispersion(a) => &a.common,
        Command::SwSum(a) => &a.common,
        Command::PerronCheck(a) => &a.common,
        Command::Hsu(a) => &a.common,
        Command::Titchmarsh(a) => &a.common,
    }
}

/// Resolved environment shared by all handlers.
struct Env {
    spec: Arc<FieldSpec>,
    budgets: Budgets,
    cache_dir: Option<PathBuf>,
    config: RunConfig,
}

fn parse_prime_power(q: u64) -> Result<(u64, u32)> {
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    let mut p = q;
    for d in 2..=q {
        if d * d > q {
            break;
        }
        if q % d == 0 {
            p = d;
            break;
        }
    }
    let mut k = 0u32;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        return Err(Error::domain(format!("q = {q} is not a prime power")));
    }
    Ok((p, k))
}

fn build_env(common: &CommonArgs, default_format: Format, seed: Option<u64>) -> Result<Env> {
    let (p, k) = parse_prime_power(common.q)?;
    let spec = FieldSpec::extension(p, k)?;
    if common.max_enumeration == 0 || common.max_phi == 0 {
        return Err(Error::domain("budgets must be positive"));
    }
    if let Some(n) = common.threads {
        if n == 0 {
            return Err(Error::domain("--threads must be positive"));
        }
        // First caller wins; later configurations keep the existing pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cache_dir = common
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("FQT_CACHE_DIR").map(PathBuf::from));
    let budgets = Budgets {
        max_enumeration: common.max_enumeration,
        max_phi: common.max_phi,
    };
    let format = common.format.unwrap_or(default_format);
    let config = RunConfig {
        p,
        k,
        q: spec.q(),
        field: spec.describe(),
        field_modulus: spec.modulus_coeffs().to_vec(),
        cache_dir: cache_dir.as_ref().map(|d| d.display().to_string()),
        max_enumeration: budgets.max_enumeration,
        max_phi: budgets.max_phi,
        format: format.name().to_string(),
        seed,
    };
    Ok(Env {
        spec,
        budgets,
        cache_dir,
        config,
    })
}

impl Env {
    fn format(&self) -> &str {
        &self.config.format
    }

    /// An [`Arith`] with tables to `max_deg`, via the cache when one is set.
    fn arith(&self, max_deg: usize) -> Result<Arith> {
        match &self.cache_dir {
            Some(dir) => Arith::with_cache(&self.spec, max_deg, &self.budgets, dir),
            None => Arith::new(&self.spec, max_deg, &self.budgets),
        }
    }

    fn require_cache_dir(&self) -> Result<&PathBuf> {
        self.cache_dir.as_ref().ok_or_else(|| {
            Error::domain("this operation needs a cache directory (--cache-dir or FQT_CACHE_DIR)")
        })
    }

    fn parse_poly(&self, s: &str, what: &str) -> Result<Poly> {
        Poly::parse(&self.spec, s)
            .map_err(|e| Error::domain(format!("{what} {s:?} is not a base-q digit string: {e}")))
    }
}

fn check_format(env: &Env, allowed: &[&str]) -> Result<()> {
    if allowed.contains(&env.format()) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "this subcommand supports --format {{{}}}, got {}",
            allowed.join(", "),
            env.format()
        )))
    }
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn json_report(env: &Env, command: &str, payload: serde_json::Value) -> Result<String> {
    let report = serde_json::json!({
        "command": command,
        "config": serde_json::to_value(&env.config)
            .map_err(|e| Error::domain(format!("serializing config: {e}")))?,
        "report": payload,
    });
    serde_json::to_string_pretty(&report)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| Error::domain(format!("serializing report: {e}")))
}

fn parse_range(range: &str) -> Result<(usize, usize)> {
    let (lo, hi) = range
        .split_once("..")
        .ok_or_else(|| Error::domain(format!("range {range:?} is not of the form N1..N2")))?;
    let lo: usize = lo
        .parse()
        .map_err(|_| Error::domain(format!("bad range start {lo:?}")))?;
    let hi: usize = hi
        .parse()
        .map_err(|_| Error::domain(format!("bad range end {hi:?}")))?;
    if lo > hi {
        return Err(Error::domain(format!("empty range {range:?}")));
    }
    Ok((lo, hi))
}

fn degree_list(n: Option<usize>, range: &Option<String>) -> Result<Vec<usize>> {
    match (n, range) {
        (Some(n), None) => Ok(vec![n]),
        (None, Some(r)) => {
            let (lo, hi) = parse_range(r)?;
            Ok((lo..=hi).collect())
        }
        _ => Err(Error::domain("give exactly one of --N and --range")),
    }
}

/// Runs the parsed command; returns the rendered report and the exit code
/// (nonzero only for cache verification findings, which still print rows).
fn execute(cli: &Cli) -> Result<(String, i32)> {
    match &cli.command {
        Command::Constants(args) => cmd_constants(args),
        Command::IrrTable(args) => cmd_irr_table(args),
        Command::CharTable(args) => cmd_char_table(args),
        Command::LsVerify(args) => cmd_ls_verify(args),
        Command::BvDispersion(args) => cmd_bv_dispersion(args),
        Command::SwSum(args) => cmd_sw_sum(args),
        Command::PerronCheck(args) => cmd_perron_check(args),
        Command::Hsu(args) => cmd_hsu(args),
        Command::Titchmarsh(args) => cmd_titchmarsh(args),
    }
}

fn cmd_constants(args: &ConstantsArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Text, None)?;
    check_format(&env, &["text", "json"])?;
    let q = env.spec.q();
    let z2 = titchmarsh::zeta_q(q, 2)?.value;
    let z3 = titchmarsh::zeta_q(q, 3)?.value;
    let z6 = titchmarsh::zeta_q(q, 6)?.value;
    let singular = titchmarsh::singular_constant(q);
    let report = if env.format() == "json" {
        use num_traits::ToPrimitive;
        json_report(
            &env,
            "constants",
            serde_json::json!({
                "zeta2": z2.to_string(),
                "zeta3": z3.to_string(),
                "zeta6": z6.to_string(),
                "singular": singular.to_string(),
                "singular_f64": singular.to_f64(),
            }),
        )?
    } else {
        format!(
            "field: {}\nzeta_q(2) = {z2}\nzeta_q(3) = {z3}\nzeta_q(6) = {z6}\nsingular = {singular}\n",
            env.spec.describe()
        )
    };
    Ok((report, 0))
}

fn cmd_irr_table(args: &IrrTableArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv"])?;
    match args.admin {
        None => {
            let arith = env.arith(args.max_deg)?;
            let mut out = String::from("deg,count\n");
            for d in 1..=args.max_deg {
                out.push_str(&format!("{d},{}\n", arith.table().count(d)));
            }
            Ok((out, 0))
        }
        Some(AdminOp::Build) => {
            let dir = env.require_cache_dir()?;
            let table =
                IrreducibleTable::build_cached(&env.spec, args.max_deg, &env.budgets, Some(dir))?;
            let mut out = String::from("deg,count\n");
            for d in 1..=args.max_deg {
                out.push_str(&format!("{d},{}\n", table.count(d)));
            }
            Ok((out, 0))
        }
        Some(AdminOp::Verify) => {
            let dir = env.require_cache_dir()?;
            let checks = multfn::cache_verify(&env.spec, dir)?;
            let mut out = String::from("deg,ok,detail\n");
            let mut failures = 0;
            for check in &checks {
                if !check.ok {
                    failures += 1;
                }
                out.push_str(&format!(
                    "{},{},{}\n",
                    check.degree,
                    check.ok,
                    csv_escape(&check.detail)
                ));
            }
            Ok((out, if failures > 0 { 2 } else { 0 }))
        }
        Some(AdminOp::Purge) => {
            let dir = env.require_cache_dir()?;
            let removed = multfn::cache_purge(&env.spec, dir)?;
            let mut out = String::from("removed\n");
            for path in &removed {
                out.push_str(&format!("{}\n", csv_escape(&path.display().to_string())));
            }
            Ok((out, 0))
        }
    }
}

fn cmd_char_table(args: &CharTableArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Json, None)?;
    check_format(&env, &["json"])?;
    let m = env.parse_poly(&args.m, "modulus")?;
    let deg_m = m
        .degree()
        .ok_or_else(|| Error::domain("modulus must be nonzero"))?;
    let arith = env.arith(deg_m.max(1))?;
    let group = CharGroup::new(&m, &env.budgets)?;
    let mut chars = Vec::new();
    for (index, chi) in group.enumerate().into_iter().enumerate() {
        let conductor = group.conductor(&arith, &chi)?;
        chars.push(serde_json::json!({
            "index": index,
            "exponents": chi.exps(),
            "order": chi.order(&group),
            "principal": chi.is_principal(),
            "conductor": conductor.to_string(),
            "primitive": conductor == m,
        }));
    }
    let payload = serde_json::json!({
        "modulus": m.to_string(),
        "phi": group.phi(),
        "generator_orders": group.orders(),
        "characters": chars,
    });
    Ok((json_report(&env, "char-table", payload)?, 0))
}

fn cmd_ls_verify(args: &LsVerifyArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, Some(args.seed))?;
    check_format(&env, &["csv", "json"])?;
    let arith = env.arith(args.q_max.max(1))?;
    let ctx = SieveContext::new(&arith, args.q_max, &env.budgets)?;
    let config = SieveConfig {
        n: args.n,
        q_max: args.q_max,
        d_trunc: args.d_trunc,
        include_trivial_modulus: !args.no_trivial,
    };
    let q = env.spec.q() as f64;
    let bracket = match args.form {
        SieveForm::Additive | SieveForm::Mult => {
            q.powi(args.n as i32) + q.powi(2 * args.q_max as i32)
        }
        SieveForm::Truncated => {
            q.powi(args.n as i32 - args.d_trunc as i32) + q.powi(args.q_max as i32)
        }
    };
    let mut rows = Vec::new();
    for trial in 0..args.trials {
        let tag = ((env.spec.q() as u64) << 32) | args.n as u64;
        let seed = derive_seed(args.seed, tag, trial as u64);
        let vector = CoeffVector::random_unit(&env.spec, args.n, seed, &env.budgets)?;
        let report = ctx.verify(&vector, &config)?;
        let (lhs, ratio) = match args.form {
            SieveForm::Additive => (report.additive_lhs, report.additive_ratio()),
            SieveForm::Mult => (report.mult_lhs, report.mult_ratio()),
            SieveForm::Truncated => (report.trunc_lhs, report.trunc_ratio()),
        };
        rows.push((trial, lhs, bracket, report.z, ratio));
    }
    if env.format() == "json" {
        let payload = serde_json::json!({
            "n": args.n,
            "q_max": args.q_max,
            "d_trunc": args.d_trunc,
            "form": format!("{:?}", args.form).to_lowercase(),
            "include_trivial_modulus": !args.no_trivial,
            "rows": rows
                .iter()
                .map(|&(trial, lhs, bracket, mass, ratio)| {
                    serde_json::json!({
                        "trial": trial,
                        "lhs": lhs,
                        "bracket": bracket,
                        "mass": mass,
                        "ratio": ratio,
                    })
                })
                .collect::<Vec<_>>(),
        });
        return Ok((json_report(&env, "ls-verify", payload)?, 0));
    }
    let mut out = String::from("trial,lhs,bracket,mass,ratio\n");
    for (trial, lhs, bracket, mass, ratio) in rows {
        out.push_str(&format!("{trial},{lhs},{bracket},{mass},{ratio}\n"));
    }
    Ok((out, 0))
}

fn cmd_bv_dispersion(args: &BvDispersionArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv", "json"])?;
    let psi = ArithFn::parse_name(&args.psi)?;
    let q_max = match (args.q_max, args.policy) {
        (Some(q_max), None) => q_max,
        (None, Some(b)) => {
            let base = match args.log_base {
                LogBase::Q => env.spec.q() as f64,
                LogBase::E => std::f64::consts::E,
            };
            equidist::bv_level_policy(args.n, b, base)
        }
        _ => return Err(Error::domain("give exactly one of --Q and --policy")),
    };
    let arith = env.arith(args.n)?;
    let report = equidist::bv_dispersion(&arith, &psi, args.n, q_max, &env.budgets)?;
    if env.format() == "json" {
        let payload = serde_json::to_value(&report)
            .map_err(|e| Error::domain(format!("serializing report: {e}")))?;
        return Ok((json_report(&env, "bv-dispersion", payload)?, 0));
    }
    let mut out = String::from("modulus,deg,phi,max_numerator,argmax_deg,argmax_l,value\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.modulus,
            row.modulus_deg,
            row.phi,
            row.max_numerator,
            row.argmax_deg,
            row.argmax_l,
            row.value
        ));
    }
    out.push_str(&format!("(total),,,,,,{}\n", report.total));
    out.push_str(&format!("(total_exact),,,,,,{}\n", csv_escape(&report.total_exact)));
    out.push_str(&format!("(normalized),,,,,,{}\n", report.normalized));
    Ok((out, 0))
}

fn cmd_sw_sum(args: &SwSumArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv", "json"])?;
    let psi = ArithFn::parse_name(&args.psi)?;
    let m = env.parse_poly(&args.m, "modulus")?;
    let group = CharGroup::new(&m, &env.budgets)?;
    if args.chi >= group.phi() {
        return Err(Error::domain(format!(
            "character index {} out of range: φ({m}) = {}",
            args.chi,
            group.phi()
        )));
    }
    let chi = group.enumerate().swap_remove(args.chi as usize);
    let arith = env.arith(args.n)?;
    let value = equidist::sw_twisted_sum(&arith, &psi, &group, &chi, args.n, &env.budgets)?;
    if env.format() == "json" {
        let payload = serde_json::json!({
            "modulus": m.to_string(),
            "chi": args.chi,
            "chi_order": chi.order(&group),
            "psi": psi.name(),
            "n": args.n,
            "re": value.re,
            "im": value.im,
            "abs": value.norm(),
        });
        return Ok((json_report(&env, "sw-sum", payload)?, 0));
    }
    let mut out = String::from("q,modulus,chi,psi,n,re,im\n");
    out.push_str(&format!(
        "{},{},{},{},{},{},{}\n",
        env.spec.q(),
        m,
        args.chi,
        psi.name(),
        args.n,
        value.re,
        value.im
    ));
    Ok((out, 0))
}

fn cmd_perron_check(args: &PerronCheckArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv", "json"])?;
    let psi = ArithFn::parse_name(&args.psi)?;
    let arith = env.arith(args.m_cut.max(1))?;
    let config = PerronConfig {
        n0: args.n0,
        m_cut: args.m_cut,
        sigma: args.sigma,
        t: args.t,
        samples: args.samples,
    };
    let report = equidist::perron_check(&arith, &psi, &config, &env.budgets)?;
    if env.format() == "json" {
        let payload = serde_json::to_value(&report)
            .map_err(|e| Error::domain(format!("serializing report: {e}")))?;
        return Ok((json_report(&env, "perron-check", payload)?, 0));
    }
    let mut out = String::from(
        "psi,n0,m_cut,sigma,t,samples,target_re,target_im,integral_re,integral_im,abs_error,error_budget,residual_coarse,residual_fine\n",
    );
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        report.psi,
        report.n0,
        report.m_cut,
        report.sigma,
        report.t,
        report.samples,
        report.target_re,
        report.target_im,
        report.integral_re,
        report.integral_im,
        report.abs_error,
        report.error_budget,
        report.residual_coarse,
        report.residual_fine
    ));
    Ok((out, 0))
}

fn cmd_hsu(args: &HsuArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv", "json"])?;
    let a = env.parse_poly(&args.a, "shift a")?;
    let degrees = degree_list(args.n, &args.range)?;
    let max_n = *degrees.iter().max().unwrap();
    let arith = env.arith(max_n)?;
    let mut reports = Vec::new();
    for &n in &degrees {
        reports.push(titchmarsh::hsu_sum(&arith, n, &a, &env.budgets)?);
    }
    if env.format() == "json" {
        let payload = serde_json::json!({
            "a": a.to_string(),
            "c_a": titchmarsh::c_a(&arith, &a)?.to_string(),
            "singular": titchmarsh::singular_constant(env.spec.q()).to_string(),
            "rows": serde_json::to_value(&reports)
                .map_err(|e| Error::domain(format!("serializing report: {e}")))?,
        });
        return Ok((json_report(&env, "hsu", payload)?, 0));
    }
    let mut out = String::from("N,S,main,ratio,seconds\n");
    for r in &reports {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.s1, r.main_term, r.ratio, r.seconds
        ));
    }
    Ok((out, 0))
}

fn cmd_titchmarsh(args: &TitchmarshArgs) -> Result<(String, i32)> {
    let env = build_env(&args.common, Format::Csv, None)?;
    check_format(&env, &["csv", "json"])?;
    let a = env.parse_poly(&args.a, "shift a")?;
    let degrees = degree_list(args.n, &args.range)?;
    let max_n = *degrees.iter().max().unwrap();
    let arith = env.arith((max_n - 1).max(1))?;
    let mut reports = Vec::new();
    for &n in &degrees {
        reports.push(titchmarsh::two_prime_sum(&arith, n, &a, &env.budgets)?);
    }
    if env.format() == "json" {
        let payload = serde_json::json!({
            "a": a.to_string(),
            "c_a": titchmarsh::c_a(&arith, &a)?.to_string(),
            "singular": titchmarsh::singular_constant(env.spec.q()).to_string(),
            "rows": serde_json::to_value(&reports)
                .map_err(|e| Error::domain(format!("serializing report: {e}")))?,
        });
        return Ok((json_report(&env, "titchmarsh", payload)?, 0));
    }
    let mut out = String::from("N,S,main,ratio,seconds\n");
    for r in &reports {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n, r.s, r.main_term, r.ratio, r.seconds
        ));
    }
    Ok((out, 0))
}
