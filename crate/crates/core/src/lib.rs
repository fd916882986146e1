// Validation guards use `!(x > 0.0)` so that NaN fails them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
// Quadrature node tables and frozen oracle constants keep full published digits.
#![allow(clippy::excessive_precision)]

//! Numerical laboratory for Hermite-Hadamard type inequalities over
//! Riemann-Liouville fractional integrals.
//!
//! The crate evaluates the fractional operators for parsed user functions,
//! checks the gap identity that underlies the bounds, samples the
//! hypotheses the bounds impose on |f'| (convexity, s-logarithmic convexity,
//! unit range, the ψ ≤ 1 side condition), and computes every bound in both
//! its printed and corrected variants so the margins can be compared.
//!
//! Modules follow the pipeline:
//!
//! - [`expr`]: parse function text, evaluate with exact derivatives.
//! - [`special`]: Γ and the auxiliary ψ / Ψ functions.
//! - [`quad`]: adaptive quadrature with a singularity-removing transform.
//! - [`fracint`]: the fractional operators and the shared left-hand side.
//! - [`hypotheses`]: sampling checks of the theorem hypotheses.
//! - [`bounds`]: every right-hand side, printed and corrected.
//!
//! ```
//! use hhfrac::bounds::{thm5_rhs, TheoremParams, Variant};
//! use hhfrac::fracint::hh_gap;
//! use hhfrac::{FracParams, FuncSpec, QuadConfig};
//!
//! let f = FuncSpec::new("exp(x/2)", 0.0, 1.0)?;
//! let p = FracParams::new(0.0, 1.0, 1.0)?;
//! let cfg = QuadConfig::default();
//!
//! let gap = hh_gap(&f, &p, &cfg)?;
//! let tp = TheoremParams::new(1.0, 0.5, Variant::Corrected)?;
//! let bound = thm5_rhs(&f, &p, &tp, &cfg)?;
//! assert!(gap.value <= bound.value);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! All types are immutable after construction and every operation is pure,
//! so concurrent use needs no synchronization.

pub mod bounds;
pub mod expr;
pub mod fracint;
pub mod hypotheses;
pub mod quad;
pub mod special;

pub use bounds::{BoundRecord, BoundValue, TheoremId, TheoremParams, Variant};
pub use expr::{DualValue, ExprNode, FuncSpec};
pub use fracint::{FracParams, HadamardTriple};
pub use hypotheses::{GridSpec, HypothesisReport};
pub use quad::{QuadConfig, QuadResult};
