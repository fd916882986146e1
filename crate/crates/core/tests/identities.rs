//! Cross-route identities: the gap identity, operator closed forms,
//! linearity, and the classical Hadamard chain.

use hhfrac::expr::FuncSpec;
use hhfrac::fracint::{
    classical_hadamard_triple, hh_gap, j_minus, j_plus, lemma1_rhs, signed_gap, FracParams,
};
use hhfrac::quad::{integrate, QuadConfig};
use hhfrac::special::gamma;

const BATTERY: [&str; 4] = ["x^2", "exp(x/2)", "exp(-x)", "x^3+1"];
const ALPHAS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];

fn spec(text: &str) -> FuncSpec {
    FuncSpec::new(text, 0.0, 1.0).unwrap()
}

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

#[test]
fn gap_identity_holds_across_battery() {
    // The signed endpoint-average gap equals the weighted derivative
    // integral exactly; both sides are computed through entirely different
    // quadrature paths.
    for text in BATTERY {
        let f = spec(text);
        for alpha in ALPHAS {
            let p = FracParams::new(0.0, 1.0, alpha).unwrap();
            let lhs = signed_gap(&f, &p, &cfg()).unwrap();
            let rhs = lemma1_rhs(&f, &p, &cfg()).unwrap();
            assert!(lhs.converged && rhs.converged);
            assert!(
                (lhs.value - rhs.value).abs() <= 1e-8,
                "identity residual for {} at alpha {}: {}",
                text,
                alpha,
                (lhs.value - rhs.value).abs()
            );
        }
    }
}

#[test]
fn operators_are_linear() {
    // j_plus(c1 f1 + c2 f2) = c1 j_plus(f1) + c2 j_plus(f2)
    let combos = [
        ("x^2", "exp(x/2)", 2.0, -0.5),
        ("x^3+1", "exp(-x)", 0.7, 1.3),
    ];
    for (t1, t2, c1, c2) in combos {
        let f1 = spec(t1);
        let f2 = spec(t2);
        let combined =
            FuncSpec::new(&format!("{}*({}) + {}*({})", c1, t1, c2, t2), 0.0, 1.0).unwrap();
        for alpha in ALPHAS {
            let p = FracParams::new(0.0, 1.0, alpha).unwrap();
            let lhs = j_plus(&combined, &p, 1.0, &cfg()).unwrap().value;
            let rhs = c1 * j_plus(&f1, &p, 1.0, &cfg()).unwrap().value
                + c2 * j_plus(&f2, &p, 1.0, &cfg()).unwrap().value;
            let scale = lhs.abs().max(rhs.abs()).max(1e-30);
            assert!(
                (lhs - rhs).abs() <= 1e-10 * scale,
                "linearity violated for {} {} at alpha {}",
                t1,
                t2,
                alpha
            );
        }
    }
}

#[test]
fn monomial_closed_form() {
    // J_{0+}^alpha of t^beta at x = 1 equals Γ(β+1)/Γ(β+α+1).
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
}

#[test]
fn operators_mirror_under_reflection() {
    // J_{b-}^alpha f(a) equals J_{a+}^alpha of the reflected function
    // t -> f(a+b-t) at b; both sides go through opposite singular ends.
    let pairs = [
        ("x^2", "(1-x)^2"),
        ("exp(x/2)", "exp((1-x)/2)"),
        ("x^3+1", "(1-x)^3+1"),
    ];
    for (text, reflected_text) in pairs {
        let f = spec(text);
        let reflected = spec(reflected_text);
        for alpha in [0.25, 0.5, 1.0, 1.7] {
            let p = FracParams::new(0.0, 1.0, alpha).unwrap();
            let minus = j_minus(&f, &p, 0.0, &cfg()).unwrap().value;
            let plus = j_plus(&reflected, &p, 1.0, &cfg()).unwrap().value;
            assert!(
                (minus - plus).abs() <= 1e-10 * plus.abs().max(1.0),
                "reflection mismatch for {} at alpha {}: {} vs {}",
                text,
                alpha,
                minus,
                plus
            );
        }
    }
}

#[test]
fn alpha_one_reduces_to_classical_gap() {
    for text in BATTERY {
        let f = spec(text);
        let p = FracParams::new(0.0, 1.0, 1.0).unwrap();
        let fractional = hh_gap(&f, &p, &cfg()).unwrap().value;
        let fa = f.eval(0.0).unwrap();
        let fb = f.eval(1.0).unwrap();
        let mean = integrate(|t| f.eval(t).unwrap(), 0.0, 1.0, &cfg())
            .unwrap()
            .value;
        let classical = (0.5 * (fa + fb) - mean).abs();
        assert!(
            (fractional - classical).abs() <= 1e-10,
            "classical reduction failed for {}: {} vs {}",
            text,
            fractional,
            classical
        );
    }
    let p = FracParams::new(0.0, 1.0, 1.0).unwrap();
    let gap = hh_gap(&spec("x^2"), &p, &cfg()).unwrap().value;
    assert!((gap - 1.0 / 6.0).abs() <= 1e-10);
}

#[test]
fn hadamard_chain_for_convex_battery() {
    for text in ["x^2", "exp(x/2)", "exp(-x)", "x^3+1", "x^2+x+1", "2*0.9^x"] {
        let f = spec(text);
        let t = classical_hadamard_triple(&f, 0.0, 1.0, &cfg()).unwrap();
        assert!(t.converged);
        assert!(
            t.midpoint <= t.mean + 1e-12 && t.mean <= t.endpoints + 1e-12,
            "chain violated for {}: {:?}",
            text,
            t
        );
    }
}
