//! Differential checks: two routes to the same number must agree.
//!
//! Each test pits an independent pair of computations against each other —
//! the CLI against the library API it wraps, a sieve-built table against a
//! per-polynomial convolution, class sums against progression prime counts,
//! CSV rows against the arithmetic they claim. Formatting drift, default
//! drift, and numeric drift all fail here before a downstream consumer can
//! be misled by one route silently disagreeing with another.

use fqt::equidist::{bv_dispersion, class_sums, perron_check, PerronConfig};
use fqt::multfn::convolve;
use fqt::poly::enumerate_monic;
use fqt::titchmarsh::{c_a, hsu_sum, singular_constant};
use fqt::{tolerances, Arith, ArithFn, Budgets, FieldSpec, Poly, ResidueRing};

/// Run the CLI in-process and capture (exit code, stdout).
fn run(args: &[&str]) -> (i32, String) {
    let argv: Vec<String> = std::iter::once("fqt".to_string())
        .chain(args.iter().map(|s| s.to_string()))
        .collect();
    let mut buf = Vec::new();
    let code = fqt::cli::dispatch(&argv, &mut buf);
    (code, String::from_utf8(buf).unwrap())
}

/// The bv-dispersion CSV must be byte-identical to what the library report
/// prescribes, and the --policy route must match the --Q route it resolves to.
#[test]
fn cli_bv_dispersion_csv_matches_library() {
    let (code, csv) = run(&[
        "bv-dispersion",
        "--q",
        "2",
        "--N",
        "8",
        "--Q",
        "3",
        "--psi",
        "prime",
    ]);
    assert_eq!(code, 0, "bv-dispersion exited nonzero:\n{csv}");

    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2).unwrap();
    let arith = Arith::new(&spec, 8, &budgets).unwrap();
    let report = bv_dispersion(&arith, &ArithFn::PrimeIndicator, 8, 3, &budgets).unwrap();

    let mut expected = String::from("modulus,deg,phi,max_numerator,argmax_deg,argmax_l,value\n");
    for row in &report.rows {
        expected.push_str(&format!(
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
    expected.push_str(&format!("(total),,,,,,{}\n", report.total));
    // A rational like "17/12" never needs CSV quoting, so the raw string is
    // exactly what the CLI emits.
    expected.push_str(&format!("(total_exact),,,,,,{}\n", report.total_exact));
    expected.push_str(&format!("(normalized),,,,,,{}\n", report.normalized));
    assert_eq!(csv, expected);

    // --policy 1 at N = 8 resolves to Q = ⌊8/2 − log₂ 8⌋ = 1; the two
    // spellings must produce identical bytes.
    let (code_p, via_policy) = run(&[
        "bv-dispersion",
        "--q",
        "2",
        "--N",
        "8",
        "--policy",
        "1",
        "--psi",
        "prime",
    ]);
    let (code_q, via_q) = run(&[
        "bv-dispersion",
        "--q",
        "2",
        "--N",
        "8",
        "--Q",
        "1",
        "--psi",
        "prime",
    ]);
    assert_eq!((code_p, code_q), (0, 0));
    assert_eq!(via_policy, via_q);
}

/// The hsu JSON report must carry exactly the numbers the library computes:
/// the exact divisor sum, the main term, their ratio, and the constants.
#[test]
fn cli_hsu_json_matches_library() {
    let (code, out) = run(&["hsu", "--q", "2", "--a", "01", "--N", "12", "--format", "json"]);
    assert_eq!(code, 0, "hsu exited nonzero:\n{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["command"], "hsu");
    assert_eq!(v["config"]["q"], 2);
    assert_eq!(v["config"]["format"], "json");

    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2).unwrap();
    let arith = Arith::new(&spec, 12, &budgets).unwrap();
    let a = Poly::parse(&spec, "01").unwrap();
    let want = hsu_sum(&arith, 12, &a, &budgets).unwrap();

    let report = &v["report"];
    assert_eq!(report["a"], a.to_string());
    assert_eq!(report["c_a"], c_a(&arith, &a).unwrap().to_string());
    assert_eq!(report["singular"], singular_constant(2).to_string());
    let row = &report["rows"][0];
    assert_eq!(row["n"], 12);
    assert_eq!(row["s1"].as_u64().unwrap() as u128, want.s1);
    assert_eq!(row["a"], want.a);
    // Both routes execute the same deterministic float computation, so the
    // JSON round-trip must reproduce the doubles bit for bit.
    assert_eq!(row["main_term"].as_f64().unwrap(), want.main_term);
    assert_eq!(row["ratio"].as_f64().unwrap(), want.ratio);
    assert_eq!(report["rows"].as_array().unwrap().len(), 1);
}

/// The perron-check CSV row must be the library's PerronReport verbatim,
/// field for field, when the sample count is pinned on both sides.
#[test]
fn cli_perron_csv_matches_library() {
    let (code, csv) = run(&[
        "perron-check",
        "--q",
        "2",
        "--N0",
        "2",
        "--M",
        "6",
        "--sigma",
        "1.1",
        "--T",
        "100",
        "--samples",
        "2000",
        "--psi",
        "tau:2",
    ]);
    assert_eq!(code, 0, "perron-check exited nonzero:\n{csv}");

    let budgets = Budgets::default();
    let spec = FieldSpec::prime(2).unwrap();
    let arith = Arith::new(&spec, 6, &budgets).unwrap();
    let config = PerronConfig {
        n0: 2,
        m_cut: 6,
        sigma: 1.1,
        t: 100.0,
        samples: Some(2000),
    };
    let report = perron_check(&arith, &ArithFn::TauK(2), &config, &budgets).unwrap();

    let expected = format!(
        "psi,n0,m_cut,sigma,t,samples,target_re,target_im,integral_re,integral_im,abs_error,error_budget,residual_coarse,residual_fine\n{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
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
    );
    assert_eq!(csv, expected);
}

/// Prime class sums mod m must partition the prime counting function: each
/// unit class carries exactly π(N; m, l), non-unit classes carry nothing
/// (a degree-N irreducible with N > deg m cannot share a factor with m),
/// and the classes sum to π(N).
#[test]
fn prime_classes_partition_prime_count() {
    let budgets = Budgets::default();
    for (q, max_deg_m, max_n) in [(2u64, 3usize, 8usize), (3, 2, 6)] {
        let spec = FieldSpec::prime(q).unwrap();
        let arith = Arith::new(&spec, max_n, &budgets).unwrap();
        for deg_m in 1..=max_deg_m {
            for m in enumerate_monic(arith.spec(), deg_m) {
                let ring = ResidueRing::new(&m).unwrap();
                for n in (deg_m + 1)..=max_n {
                    let sums =
                        class_sums(&arith, &ArithFn::PrimeIndicator, &m, n, &budgets).unwrap();
                    let mut total: i128 = 0;
                    for idx in 0..ring.size() {
                        let l = ring.poly_of(idx);
                        let got = sums[idx as usize];
                        total += got;
                        if ring.is_unit(&l) {
                            let want = arith.prime_count_ap(n, &m, &l).unwrap() as i128;
                            assert_eq!(
                                got, want,
                                "class sum vs progression count, q={q} m={m} l={l} N={n}"
                            );
                        } else {
                            assert_eq!(got, 0, "non-unit class sum, q={q} m={m} l={l} N={n}");
                        }
                    }
                    assert_eq!(
                        total,
                        arith.prime_count(n) as i128,
                        "classes must partition π(N), q={q} m={m} N={n}"
                    );
                }
            }
        }
    }
}

/// The sieve-built table of 1_P ∗ 1_P must agree pointwise with the generic
/// divisor-pair convolution, and its degree totals with the ordered-pair
/// count Σ_{i+j=N} π(i)·π(j).
#[test]
fn pair_table_matches_divisor_convolution() {
    let budgets = Budgets::default();
    let prime = ArithFn::PrimeIndicator;
    for q in [2u64, 3] {
        let spec = FieldSpec::prime(q).unwrap();
        let arith = Arith::new(&spec, 6, &budgets).unwrap();
        for deg in 2..=6usize {
            let table = ArithFn::PrimePair.eval_table(&arith, deg, &budgets).unwrap();
            let mut total: i128 = 0;
            for f in enumerate_monic(arith.spec(), deg) {
                let got = table[f.monic_index() as usize];
                let want = convolve(&arith, &prime, &prime, &f).unwrap();
                assert_eq!(got, want, "pair table vs convolution at q={q} f={f}");
                total += got;
            }
            let pairs: u128 = (1..deg)
                .map(|i| arith.prime_count(i) * arith.prime_count(deg - i))
                .sum();
            assert_eq!(total as u128, pairs, "ordered pair count at q={q} N={deg}");
        }
    }
}

/// Every ls-verify CSV row must be internally consistent — the bracket is
/// the advertised closed form, the ratio is lhs/(bracket·mass), the ratio
/// clears the pinned ceiling — and a rerun with the same seed must be
/// byte-identical.
#[test]
fn ls_verify_rows_recompute() {
    let parse_rows = |csv: &str| -> Vec<(u64, f64, f64, f64, f64)> {
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("trial,lhs,bracket,mass,ratio"));
        lines
            .map(|line| {
                let f: Vec<&str> = line.split(',').collect();
                assert_eq!(f.len(), 5, "bad row {line:?}");
                (
                    f[0].parse().unwrap(),
                    f[1].parse().unwrap(),
                    f[2].parse().unwrap(),
                    f[3].parse().unwrap(),
                    f[4].parse().unwrap(),
                )
            })
            .collect()
    };

    let additive = [
        "ls-verify", "--q", "2", "--N", "4", "--Q", "2", "--D", "1", "--trials", "3", "--seed",
        "7", "--form", "additive",
    ];
    let (code, csv) = run(&additive);
    assert_eq!(code, 0, "ls-verify exited nonzero:\n{csv}");
    let rows = parse_rows(&csv);
    assert_eq!(rows.len(), 3);
    for (i, &(trial, lhs, bracket, mass, ratio)) in rows.iter().enumerate() {
        assert_eq!(trial, i as u64);
        // q^N + q^{2Q} = 2⁴ + 2⁴ for the additive form.
        assert_eq!(bracket, 32.0);
        assert!(lhs >= 0.0 && mass > 0.0);
        // Rust prints floats shortest-round-trip, so the parsed values are
        // the computed values and the quotient must reproduce exactly.
        assert_eq!(ratio, lhs / (bracket * mass));
        assert!(ratio <= tolerances::SIEVE_RATIO_CEILING);
    }

    let (_, again) = run(&additive);
    assert_eq!(csv, again, "same seed must give identical bytes");

    let (code, csv) = run(&[
        "ls-verify", "--q", "2", "--N", "4", "--Q", "2", "--D", "1", "--trials", "2", "--seed",
        "7", "--form", "truncated",
    ]);
    assert_eq!(code, 0);
    for &(_, lhs, bracket, mass, ratio) in &parse_rows(&csv) {
        // q^{N−D} + q^Q = 2³ + 2² for the truncated form.
        assert_eq!(bracket, 12.0);
        assert_eq!(ratio, lhs / (bracket * mass));
        assert!(ratio <= tolerances::SIEVE_RATIO_CEILING);
    }
}
