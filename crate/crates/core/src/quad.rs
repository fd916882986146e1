//! Adaptive one-dimensional quadrature with an embedded error estimate.
//!
//! Each panel is integrated with the nested 7/15-point Gauss-Kronrod pair;
//! all nodes are interior, so endpoints are never evaluated and weakly
//! singular endpoint behaviour is tolerated. The panel with the largest
//! discrepancy between the two rules is bisected until the summed estimate
//! meets the tolerance or the subdivision budget runs out.
//!
//! [`integrate_power_kernel`] removes an endpoint power singularity
//! (distance)^{α-1} exactly via the substitution w = (distance)^α before
//! handing the now-smooth integrand to the adaptive driver.

use std::collections::BinaryHeap;
use std::fmt;

/// Tolerances and budget for the adaptive driver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        QuadConfig {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_subdivisions: 2000,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) || self.max_subdivisions < 1 {
            return Err(QuadError::InvalidConfig {
                detail: format!(
                    "tolerances must be positive and max_subdivisions >= 1, got ({}, {}, {})",
                    self.abs_tol, self.rel_tol, self.max_subdivisions
                ),
            });
        }
        Ok(())
    }
}

/// A computed integral with its accumulated error estimate.
///
/// `converged` implies `error_estimate <= max(abs_tol, rel_tol * |value|)`.
/// Non-convergence is a reportable state rather than an error, so parameter
/// sweeps can record it per row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error_estimate: f64,
    pub subdivisions: usize,
    pub converged: bool,
}

impl QuadResult {
    pub(crate) fn exact(value: f64) -> Self {
        QuadResult {
            value,
            error_estimate: 0.0,
            subdivisions: 0,
            converged: true,
        }
    }

    pub(crate) fn scaled(self, factor: f64) -> Self {
        QuadResult {
            value: factor * self.value,
            error_estimate: factor.abs() * self.error_estimate,
            subdivisions: self.subdivisions,
            converged: self.converged,
        }
    }
}

/// Quadrature failure.
#[derive(Debug, Clone, PartialEq)]
pub enum QuadError {
    /// The integrand returned NaN or an infinity at `x`.
    NonFiniteEvaluation {
        x: f64,
    },
    /// Bounds must satisfy `lo <= hi` and be finite.
    InvalidInterval {
        lo: f64,
        hi: f64,
    },
    InvalidConfig {
        detail: String,
    },
    /// `integrate_power_kernel` needs `alpha > 0`.
    InvalidExponent {
        alpha: f64,
    },
}

impl fmt::Display for QuadError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuadError::NonFiniteEvaluation { x } => {
                write!(f, "integrand evaluated to a non-finite value at x = {}", x)
            }
            QuadError::InvalidInterval { lo, hi } => {
                write!(f, "invalid interval [{}, {}]", lo, hi)
            }
            QuadError::InvalidConfig { detail } => {
                write!(f, "invalid quadrature config: {}", detail)
            }
            QuadError::InvalidExponent { alpha } => {
                write!(f, "power kernel exponent must be positive, got {}", alpha)
            }
        }
    }
}

impl std::error::Error for QuadError {}

/// Which end of the interval carries the (distance)^{α-1} singularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularEnd {
    Lower,
    Upper,
}

// 7/15 Gauss-Kronrod nodes and weights on [-1, 1]; positive abscissae only,
// all strictly interior.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// One Gauss-Kronrod pass over a panel: Kronrod value and |K15 - G7|.
fn gk15<F: Fn(f64) -> f64>(g: &F, lo: f64, hi: f64) -> Result<(f64, f64), QuadError> {
    let center = 0.5 * (lo + hi);
    let half = 0.5 * (hi - lo);

    let eval = |x: f64| -> Result<f64, QuadError> {
        let v = g(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadError::NonFiniteEvaluation { x })
        }
    };

    let f_center = eval(center)?;
    let mut kronrod = WGK[7] * f_center;
    let mut gauss = WG[3] * f_center;
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        let fsum = f1 + f2;
        kronrod += WGK[j] * fsum;
        if j % 2 != 0 {
            gauss += WG[j / 2] * fsum;
        }
    }
    Ok((kronrod * half, ((kronrod - gauss) * half).abs()))
}

#[derive(Debug)]
struct Panel {
    lo: f64,
    hi: f64,
    value: f64,
    error: f64,
    seq: usize,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error && self.seq == other.seq
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Max-heap on error; earlier panels win ties so refinement order is
        // deterministic.
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Adaptive integral of `g` over `[lo, hi]`.
///
/// `g` must be finite on the open interval; endpoints are never evaluated.
/// A NaN or infinity from `g` aborts with the offending abscissa. If the
/// subdivision budget is exhausted the best estimate is returned with
/// `converged = false`.
pub fn integrate<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    cfg.validate()?;
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(QuadError::InvalidInterval { lo, hi });
    }
    if lo == hi {
        return Ok(QuadResult::exact(0.0));
    }

    let (value, error) = gk15(&g, lo, hi)?;
    let mut heap = BinaryHeap::new();
    heap.push(Panel {
        lo,
        hi,
        value,
        error,
        seq: 0,
    });
    let mut total_value = value;
    let mut total_error = error;
    let mut subdivisions = 0usize;
    let mut seq = 0usize;

    let tolerance = |value: f64| f64::max(cfg.abs_tol, cfg.rel_tol * value.abs());

    while total_error > tolerance(total_value) && subdivisions < cfg.max_subdivisions {
        let worst = heap.pop().expect("heap holds at least one panel");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            // Panel narrower than f64 spacing: cannot refine further.
            heap.push(worst);
            break;
        }
        let (v1, e1) = gk15(&g, worst.lo, mid)?;
        let (v2, e2) = gk15(&g, mid, worst.hi)?;
        total_value += v1 + v2 - worst.value;
        total_error += e1 + e2 - worst.error;
        seq += 1;
        heap.push(Panel {
            lo: worst.lo,
            hi: mid,
            value: v1,
            error: e1,
            seq,
        });
        seq += 1;
        heap.push(Panel {
            lo: mid,
            hi: worst.hi,
            value: v2,
            error: e2,
            seq,
        });
        subdivisions += 1;
    }

    Ok(QuadResult {
        value: total_value,
        error_estimate: total_error,
        subdivisions,
        converged: total_error <= tolerance(total_value),
    })
}

/// Integral of (distance to the singular end)^{α-1} · g(t) over `[lo, hi]`.
///
/// The substitution w = (distance)^α turns the kernel into the constant 1/α
/// on `[0, (hi-lo)^α]` with `g` sampled at the transformed abscissae, so the
/// integrand handed to [`integrate`] is smooth whenever `g` is. The same
/// path is used for α ≥ 1, where the kernel is not singular at all.
pub fn integrate_power_kernel<F: Fn(f64) -> f64>(
    g: F,
    lo: f64,
    hi: f64,
    alpha: f64,
    singular_end: SingularEnd,
    cfg: &QuadConfig,
) -> Result<QuadResult, QuadError> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(QuadError::InvalidExponent { alpha });
    }
    if !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(QuadError::InvalidInterval { lo, hi });
    }
    if lo == hi {
        return Ok(QuadResult::exact(0.0));
    }
    let width = hi - lo;
    let inv_alpha = 1.0 / alpha;
    let transformed = |w: f64| {
        let distance = w.powf(inv_alpha);
        let t = match singular_end {
            SingularEnd::Lower => lo + distance,
            SingularEnd::Upper => hi - distance,
        };
        inv_alpha * g(t)
    };
    integrate(transformed, 0.0, width.powf(alpha), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run<F: Fn(f64) -> f64>(g: F, lo: f64, hi: f64) -> QuadResult {
        integrate(g, lo, hi, &QuadConfig::default()).unwrap()
    }

    #[test]
    fn smooth_examples() {
        let r = run(|t| t * t, 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value - 1.0 / 3.0).abs() < 1e-13);

        let r = run(f64::exp, 0.0, 1.0);
        assert!((r.value - (std::f64::consts::E - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn kinked_abs_difference_of_roots() {
        // Closed form: 2/(α+1) (1 - 2^{-α}) at α = 1/2.
        let expect = 2.0 / 1.5 * (1.0 - 0.5f64.sqrt());
        let r = run(|t| ((1.0 - t).sqrt() - t.sqrt()).abs(), 0.0, 1.0);
        assert!(r.converged);
        assert!((r.value - expect).abs() < 1e-10, "value {}", r.value);
        assert!((r.value - 0.3905242917512699).abs() < 1e-10);
    }

    #[test]
    fn polynomials_to_degree_ten_are_exact() {
        // Antiderivative of t^k on [0,1] is 1/(k+1).
        for k in 0..=10u32 {
            let r = run(move |t| t.powi(k as i32), 0.0, 1.0);
            assert!(
                (r.value - 1.0 / (k as f64 + 1.0)).abs() <= 1e-13,
                "degree {}: {}",
                k,
                r.value
            );
        }
        // And a mixed-coefficient degree-10 polynomial, vs its antiderivative.
        let poly = |t: f64| 3.0 - 2.0 * t + 7.0 * t.powi(4) - 0.25 * t.powi(7) + 1.5 * t.powi(10);
        let exact = 3.0 - 1.0 + 7.0 / 5.0 - 0.25 / 8.0 + 1.5 / 11.0;
        let r = run(poly, 0.0, 1.0);
        assert!((r.value - exact).abs() <= 1e-13);
    }

    #[test]
    fn power_kernel_transform_matches_closed_forms() {
        // kernel t^{α-1} times t^k on [0,1] integrates to 1/(α+k).
        for &alpha in &[0.25, 0.5, 0.75, 1.0, 1.5] {
            for k in 0..=3u32 {
                let r = integrate_power_kernel(
                    move |t| t.powi(k as i32),
                    0.0,
                    1.0,
                    alpha,
                    SingularEnd::Lower,
                    &QuadConfig::default(),
                )
                .unwrap();
                let exact = 1.0 / (alpha + k as f64);
                assert!(
                    (r.value - exact).abs() <= 1e-10 * exact,
                    "alpha {} k {}: {} vs {}",
                    alpha,
                    k,
                    r.value,
                    exact
                );
            }
        }
    }

    #[test]
    fn power_kernel_upper_end() {
        // ∫₀¹ (1-t)^{-1/2} dt = 2
        let r = integrate_power_kernel(
            |_| 1.0,
            0.0,
            1.0,
            0.5,
            SingularEnd::Upper,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn power_kernel_alpha_one_is_plain_integral() {
        let r = integrate_power_kernel(
            |_| 1.0,
            0.0,
            1.0,
            1.0,
            SingularEnd::Lower,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
        let r = integrate_power_kernel(
            |t| t * t,
            0.0,
            1.0,
            1.0,
            SingularEnd::Upper,
            &QuadConfig::default(),
        )
        .unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn nan_aborts_with_abscissa() {
        let err = integrate(|t| (t - 0.3).ln(), 0.0, 1.0, &QuadConfig::default()).unwrap_err();
        match err {
            QuadError::NonFiniteEvaluation { x } => assert!(x < 0.3),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn budget_exhaustion_reports_nonconverged() {
        let cfg = QuadConfig {
            abs_tol: 1e-300,
            rel_tol: 1e-300,
            max_subdivisions: 4,
        };
        let r = integrate(|t| (50.0 * t).sin() / (t + 1e-3), 0.0, 1.0, &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.subdivisions, 4);
        assert!(r.error_estimate > 0.0);
    }

    #[test]
    fn converged_flag_matches_tolerance_contract() {
        let cfg = QuadConfig::default();
        for r in [
            run(|t| (10.0 * t).sin(), 0.0, 1.0),
            run(|t| (1.0 + t).recip(), 0.0, 3.0),
        ] {
            assert!(r.converged);
            assert!(r.error_estimate <= f64::max(cfg.abs_tol, cfg.rel_tol * r.value.abs()));
        }
    }

    #[test]
    fn refinement_is_monotone_on_fixed_set() {
        type TestFn = fn(f64) -> f64;
        let funcs: [(TestFn, f64, f64); 4] = [
            (|t| t.exp(), 0.0, 1.0),
            (|t| (5.0 * t).sin(), 0.0, 2.0),
            (|t| t.sqrt(), 0.0, 1.0),
            (|t| 1.0 / (1.0 + 25.0 * t * t), -1.0, 1.0),
        ];
        for (g, lo, hi) in funcs {
            let mut cfg = QuadConfig {
                abs_tol: 1e-6,
                rel_tol: 1e-6,
                max_subdivisions: 2000,
            };
            let mut prev = integrate(g, lo, hi, &cfg).unwrap().error_estimate;
            for _ in 0..6 {
                cfg.abs_tol *= 0.5;
                cfg.rel_tol *= 0.5;
                let next = integrate(g, lo, hi, &cfg).unwrap().error_estimate;
                assert!(
                    next <= prev,
                    "error estimate increased under tighter tolerance"
                );
                prev = next;
            }
        }
    }

    #[test]
    fn degenerate_and_invalid_intervals() {
        let r = run(|t| t, 2.0, 2.0);
        assert_eq!(r.value, 0.0);
        assert!(r.converged);
        assert!(matches!(
            integrate(|t| t, 1.0, 0.0, &QuadConfig::default()),
            Err(QuadError::InvalidInterval { .. })
        ));
        assert!(matches!(
            integrate_power_kernel(
                |t| t,
                0.0,
                1.0,
                0.0,
                SingularEnd::Lower,
                &QuadConfig::default()
            ),
            Err(QuadError::InvalidExponent { .. })
        ));
    }
}
