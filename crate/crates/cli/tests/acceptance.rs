//! Acceptance suite: one test per criterion, each printing a pass line with
//! its measured runtime. Tolerances are pinned in the assertions.

use std::path::PathBuf;
use std::time::Instant;

use hhfrac::bounds::{
    closed_constant, slog_integral, young_split, ClosedKind, TheoremId, TheoremParams, Variant,
};
use hhfrac::expr::FuncSpec;
use hhfrac::fracint::{
    classical_hadamard_triple, hh_gap, j_plus, lemma1_rhs, signed_gap, FracParams,
};
use hhfrac::hypotheses::{check_lambda_power, GridSpec};
use hhfrac::quad::{integrate, QuadConfig};
use hhfrac::special::gamma;
use hhfrac_cli::config::load_config;
use hhfrac_cli::sweep::{run_sweep, ReportRow, MARGIN_SLACK};
use hhfrac_cli::verify::verify_theorem;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const LEMMA_BATTERY: [&str; 4] = ["x^2", "exp(x/2)", "exp(-x)", "x^3+1"];

fn spec(text: &str) -> FuncSpec {
    FuncSpec::new(text, 0.0, 1.0).unwrap()
}

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

fn pass(n: u32, name: &str, started: Instant) {
    println!(
        "criterion {} ({}): PASS in {:.2?}",
        n,
        name,
        started.elapsed()
    );
}

fn shipped_config_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/default_sweep.json")
}

#[test]
fn criterion_01_operator_correctness() {
    let t0 = Instant::now();
    for beta in 0..=3u32 {
        let text = if beta == 0 {
            "1".to_owned()
        } else {
            format!("x^{}", beta)
        };
        let f = spec(&text);
        for alpha in [0.25, 0.5, 1.0, 1.5, 2.5] {
            let p = FracParams::new(0.0, 1.0, alpha).unwrap();
            let got = j_plus(&f, &p, 1.0, &cfg()).unwrap().value;
            let exact =
                gamma(beta as f64 + 1.0).unwrap() / gamma(beta as f64 + alpha + 1.0).unwrap();
            assert!(
                (got - exact).abs() <= 1e-8 * exact,
                "beta {} alpha {}: {} vs {}",
                beta,
                alpha,
                got,
                exact
            );
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 5.0, "runtime budget exceeded");
    pass(1, "operator correctness", t0);
}

#[test]
fn criterion_02_gap_identity() {
    let t0 = Instant::now();
    for text in LEMMA_BATTERY {
        let f = spec(text);
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let p = FracParams::new(0.0, 1.0, alpha).unwrap();
            let lhs = signed_gap(&f, &p, &cfg()).unwrap().value;
            let rhs = lemma1_rhs(&f, &p, &cfg()).unwrap().value;
            assert!(
                (lhs - rhs).abs() <= 1e-8,
                "{} at alpha {}: residual {}",
                text,
                alpha,
                (lhs - rhs).abs()
            );
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 10.0, "runtime budget exceeded");
    pass(2, "gap identity", t0);
}

#[test]
fn criterion_03_classical_reduction() {
    let t0 = Instant::now();
    let p = FracParams::new(0.0, 1.0, 1.0).unwrap();
    for text in LEMMA_BATTERY {
        let f = spec(text);
        let fractional = hh_gap(&f, &p, &cfg()).unwrap().value;
        let mean = integrate(|t| f.eval(t).unwrap(), 0.0, 1.0, &cfg())
            .unwrap()
            .value;
        let classical = (0.5 * (f.eval(0.0).unwrap() + f.eval(1.0).unwrap()) - mean).abs();
        assert!(
            (fractional - classical).abs() <= 1e-10,
            "{}: {} vs {}",
            text,
            fractional,
            classical
        );
    }
    let square_gap = hh_gap(&spec("x^2"), &p, &cfg()).unwrap().value;
    assert!((square_gap - 1.0 / 6.0).abs() <= 1e-10);
    pass(3, "classical reduction", t0);
}

#[test]
fn criterion_04_reference_configuration() {
    let t0 = Instant::now();
    let f = spec("exp(x/2)");
    let p = FracParams::new(0.0, 1.0, 1.0).unwrap();
    let grid = GridSpec::default();
    let tp = TheoremParams::new(1.0, 0.5, Variant::Corrected).unwrap();

    let expected = [
        (TheoremId::T5, tp, 0.19073),
        (TheoremId::T6, tp.with_p(2.0).unwrap(), 0.18921),
        (TheoremId::T7, tp.with_q(2.0).unwrap(), 0.18252),
    ];
    for (theorem, tp, rhs_expected) in expected {
        let rec = verify_theorem(&f, &p, &tp, theorem, &grid, &cfg()).unwrap();
        assert!(
            (rec.lhs - 0.0269181).abs() <= 1e-6,
            "{} lhs: {}",
            theorem.label(),
            rec.lhs
        );
        assert!(
            (rec.rhs - rhs_expected).abs() <= 1e-4,
            "{} rhs: {} vs {}",
            theorem.label(),
            rec.rhs,
            rhs_expected
        );
        assert!(
            rec.margin > 0.0,
            "{} margin: {}",
            theorem.label(),
            rec.margin
        );
        assert!(rec.quad_converged);
    }
    pass(4, "reference configuration", t0);
}

#[test]
fn criterion_05_remark_consistency() {
    let t0 = Instant::now();
    use hhfrac::bounds::{remark1_rhs, thm5_rhs};
    let p = FracParams::new(0.0, 1.0, 1.0).unwrap();
    for text in LEMMA_BATTERY {
        let f = spec(text);
        for variant in [Variant::Printed, Variant::Corrected] {
            for i in 1..=9 {
                let mu = i as f64 / 10.0;
                for s in [0.25, 0.5, 1.0] {
                    let tp = TheoremParams {
                        s,
                        mu,
                        eta: 1.0 - mu,
                        p: None,
                        q: None,
                        variant,
                    };
                    let t5 = thm5_rhs(&f, &p, &tp, &cfg()).unwrap();
                    let r1 = remark1_rhs(&f, 0.0, 1.0, &tp).unwrap();
                    assert!(
                        (t5.value - r1).abs() <= 1e-10,
                        "{} {:?} mu {} s {}: {} vs {}",
                        text,
                        variant,
                        mu,
                        s,
                        t5.value,
                        r1
                    );
                }
            }
        }
    }
    pass(5, "remark consistency at alpha = 1", t0);
}

#[test]
fn criterion_06_closed_form_subintegrals() {
    let t0 = Instant::now();
    let quad_cfg = cfg();
    // Kinked integrands are split at t = 1/2 before integration.
    let split_integral = |g: &dyn Fn(f64) -> f64| {
        integrate(g, 0.0, 0.5, &quad_cfg).unwrap().value
            + integrate(g, 0.5, 1.0, &quad_cfg).unwrap().value
    };
    let mut alpha = 0.25;
    while alpha <= 3.0 + 1e-9 {
        let abs_diff = split_integral(&|t: f64| ((1.0 - t).powf(alpha) - t.powf(alpha)).abs());
        let expect = closed_constant(ClosedKind::AbsDiff, alpha).unwrap();
        assert!(
            (abs_diff - expect).abs() <= 1e-10,
            "abs_diff at alpha {}",
            alpha
        );

        for p in [1.5, 2.0, 4.0] {
            let holder = split_integral(&|t: f64| (1.0 - 2.0 * t).abs().powf(alpha * p));
            let expect = closed_constant(ClosedKind::Holder { p }, alpha).unwrap();
            assert!(
                (holder - expect).abs() <= 1e-10,
                "holder at alpha {} p {}",
                alpha,
                p
            );
        }

        for mu in [0.2, 0.5, 0.8] {
            let young = mu * split_integral(&|t: f64| (1.0 - 2.0 * t).abs().powf(alpha / mu));
            let expect = closed_constant(ClosedKind::Young { mu }, alpha).unwrap();
            assert!(
                (young - expect).abs() <= 1e-10,
                "young at alpha {} mu {}",
                alpha,
                mu
            );
        }
        alpha += 0.25;
    }
    pass(6, "closed-form sub-integrals", t0);
}

#[test]
fn criterion_07_printed_vs_corrected_adjudication() {
    let t0 = Instant::now();
    let (da, db, c): (f64, f64, f64) = (0.5, 0.8, 2.0);
    let oracle = integrate(
        |t| da.powf(c * t) * db.powf(c * (1.0 - t)),
        0.0,
        1.0,
        &cfg(),
    )
    .unwrap();
    assert!(oracle.converged);
    // The corrected form db^c Ψ(ψ) is what the integral evaluates to...
    assert!(
        (oracle.value - 0.4148906).abs() <= 1e-6,
        "oracle: {}",
        oracle.value
    );
    assert!((slog_integral(da, db, c).unwrap() - oracle.value).abs() <= 1e-12);
    // ...while the printed form db^c ψ = da^c misses it by a wide margin.
    let printed = 0.25;
    let discrepancy = (oracle.value - printed).abs();
    assert!(discrepancy > 0.16, "discrepancy: {}", discrepancy);
    println!(
        "  printed form gives {}, integral gives {:.7}; discrepancy {:.7}",
        printed, oracle.value, discrepancy
    );
    pass(7, "printed-vs-corrected adjudication", t0);
}

fn hypothesis_true(r: &ReportRow) -> bool {
    r.convex_fprime == Some(true)
        && r.slog_second == Some(true)
        && r.unit_range == Some(true)
        && r.psi_le_one == Some(true)
}

#[test]
fn criterion_08_soundness_sweep() {
    let t0 = Instant::now();
    let text = std::fs::read_to_string(shipped_config_path()).unwrap();
    let config = load_config(&text).unwrap();
    let rows = run_sweep(&config).unwrap();

    let corrected_true: Vec<&ReportRow> = rows
        .iter()
        .filter(|r| {
            r.status == "ok"
                && hypothesis_true(r)
                && (r.variant.as_deref() == Some("corrected") || r.variant.is_none())
        })
        .collect();
    assert!(
        corrected_true.len() >= 200,
        "need >= 200 hypothesis-true rows, got {}",
        corrected_true.len()
    );
    for theorem in ["t2", "t5", "t6", "t7"] {
        let rows_for: Vec<&&ReportRow> = corrected_true
            .iter()
            .filter(|r| r.theorem == theorem)
            .collect();
        assert!(
            !rows_for.is_empty(),
            "no hypothesis-true rows for {}",
            theorem
        );
        for r in rows_for {
            let margin = r.margin.expect("ok rows carry margins");
            assert!(
                margin >= -MARGIN_SLACK,
                "{} margin {} below noise floor: {:?}",
                theorem,
                margin,
                r
            );
        }
    }
    // Flag soundness over the whole sweep: a genuinely negative corrected
    // margin must be accompanied by a false hypothesis flag.
    for r in rows.iter().filter(|r| r.status == "ok") {
        if r.variant.as_deref() == Some("corrected") || r.variant.is_none() {
            if let Some(m) = r.margin {
                if m < -MARGIN_SLACK {
                    assert!(!hypothesis_true(r), "unexplained violation: {:?}", r);
                }
            }
        }
    }
    assert!(t0.elapsed().as_secs_f64() < 60.0, "runtime budget exceeded");
    pass(8, "soundness sweep", t0);
}

#[test]
fn criterion_09_scalar_property_suites() {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(90901);
    for _ in 0..10_000 {
        let lambda = rng.gen_range(f64::MIN_POSITIVE..=1.0f64);
        let u = rng.gen_range(f64::MIN_POSITIVE..=1.0f64);
        let v = rng.gen_range(f64::MIN_POSITIVE..=1.0f64);
        assert!(
            check_lambda_power(lambda, u, v).unwrap(),
            "({}, {}, {})",
            lambda,
            u,
            v
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(90902);
    for _ in 0..10_000 {
        let m = rng.gen_range(0.0..=2.0);
        let n = rng.gen_range(0.0..=2.0);
        let mu = rng.gen_range(1e-6..1.0);
        assert!(
            young_split(m, n, mu, 1.0 - mu).unwrap(),
            "({}, {}, {})",
            m,
            n,
            mu
        );
    }
    for text in ["x^2", "exp(x/2)", "exp(-x)", "x^3+1", "x^2+x+1", "2*0.9^x"] {
        let f = spec(text);
        let t = classical_hadamard_triple(&f, 0.0, 1.0, &cfg()).unwrap();
        assert!(
            t.mean - t.midpoint >= -1e-12 && t.endpoints - t.mean >= -1e-12,
            "chain slack violated for {}: {:?}",
            text,
            t
        );
    }
    pass(9, "scalar property suites", t0);
}

#[test]
fn criterion_10_sweep_determinism() {
    let t0 = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let config = shipped_config_path();
    let mut outputs = Vec::new();
    for run in 0..2 {
        let out_path = dir.path().join(format!("report{}.csv", run));
        let status = std::process::Command::new(env!("CARGO_BIN_EXE_hhfrac"))
            .args(["sweep", "--config"])
            .arg(&config)
            .arg("--out")
            .arg(&out_path)
            .status()
            .expect("failed to spawn hhfrac");
        assert!(status.success(), "sweep exited with {:?}", status.code());
        outputs.push(std::fs::read(&out_path).unwrap());
    }
    assert_eq!(outputs[0], outputs[1], "CSV outputs differ between runs");
    assert!(!outputs[0].is_empty());
    pass(10, "sweep determinism", t0);
}
