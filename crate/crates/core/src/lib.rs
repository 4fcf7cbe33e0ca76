//! Exact construction of the generalized Chebyshev oscillator (defect at the
//! first recurrence coefficient) and of its annihilation operator written as
//! an infinite-order differential operator
//!
//! ```text
//! A = sum_{s>=1} sum_{l<s} a_{ls} z^l d^s/dz^s,     A Psi_n = b_{n-1} Psi_{n-1}.
//! ```
//!
//! Everything a-dependent is computed symbolically over Laurent polynomials in
//! `a` with arbitrary-precision rational coefficients, so every identity the
//! crate checks is decided by exact equality. Floating point only appears in
//! [`oscillator`] for the quadrature checks against the orthogonality measure.
//!
//! Module map:
//! - [`exactnum`]: [`APoly`] / [`ZPoly`] rings, factorial memo.
//! - [`chebgen`]: generalized Chebyshev polynomials by recurrence and closed forms.
//! - [`oscillator`]: ladder operators on the Fock basis, measure, quadrature.
//! - [`annihilator`]: the coefficient matrix by three independent routes.
//! - [`combinat`]: binomials and the finite combinatorial identity verifier.
//! - [`export`]: JSON / CSV / LaTeX renderings used by the command line tool.

pub mod annihilator;
pub mod chebgen;
pub mod combinat;
mod error;
pub mod exactnum;
pub mod export;
pub mod oscillator;

pub use annihilator::{CoeffMatrix, PPoly};
pub use chebgen::RecurrenceSpec;
pub use combinat::{IdentityId, IdentityReport, Value};
pub use error::{Error, Result};
pub use exactnum::{APoly, ZPoly};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use oscillator::{LadderSpec, MeasureSpec};
