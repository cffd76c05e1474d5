//! High-precision evaluation and mechanical verification of Euler sums,
//! Euler R-sums (half-integer denominators), multiple zeta values and the
//! level-2 multiple R-values, together with the explicit identities relating
//! them.
//!
//! The crate is organized in layers:
//!
//! - [`hp`] - arbitrary-precision arithmetic and the classical constants
//!   (pi, log 2, zeta, eta, Dirichlet beta, depth-one R-values);
//! - [`sums`] - harmonic numbers and the accelerated series engine for all
//!   sum families;
//! - [`seq`] - sequence-parameterized digamma/cotangent functions, the
//!   sequence functionals and their closed forms, and Laurent-expansion
//!   probes;
//! - [`symbolic`] - exact polynomials over a fixed set of constant atoms,
//!   used to state closed forms symbolically;
//! - [`identities`] - the identity checkers (linear and quadratic R-sum
//!   reductions, duality and triple-reduction theorems, quasi-shuffle
//!   expansion) and the catalog of explicit closed-form identities;
//! - [`genfunc`] - the exact bivariate generating series of height-one
//!   R-values.

pub mod error;
pub mod genfunc;
pub mod hp;
pub mod identities;
pub mod seq;
pub mod sums;
pub mod symbolic;

pub use error::{Error, Result};
pub use hp::{Accel, BigReal, EvalConfig};
pub use sums::{HarmonicFactor, MrvIndex, SeriesResult, SumBase, SumSpec};
pub use symbolic::{ConstAtom, SymExpr};
