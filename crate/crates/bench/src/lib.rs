//! Shared fixtures for the kernel benchmarks.

use hhfrac::expr::FuncSpec;
use hhfrac::fracint::FracParams;
use hhfrac::quad::QuadConfig;

/// The reference-family function used across benchmarks.
pub fn reference_function() -> FuncSpec {
    FuncSpec::new("exp(x/2)", 0.0, 1.0).expect("valid fixture")
}

pub fn reference_params(alpha: f64) -> FracParams {
    FracParams::new(0.0, 1.0, alpha).expect("valid fixture")
}

pub fn quad_config() -> QuadConfig {
    QuadConfig::default()
}
