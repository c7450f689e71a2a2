//! Exact multivariate polynomial interpolation at scattered linear
//! functionals.
//!
//! The crate builds, from any finite family of linear functionals on
//! polynomials, a degree-graded basis of their span, and from it two
//! minimal-degree interpolation projectors: the radial-polynomial
//! interpolant, whose range is spanned by `x ↦ λ_j ‖x − ·‖^{2κ_j}`, and the
//! least interpolant, whose range is spanned by the lowest homogeneous parts
//! of the `λ_j`. All arithmetic is exact over the rationals.

pub mod cli;
pub mod error;
pub mod functional;
pub mod graded;
pub mod interp;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use functional::{Functional, MomentFunctional, Order, PointFunctional};
pub use graded::{build_graded_basis, FunctionalSpan, GradedBasis};
pub use interp::{least_basis, schaback_basis, InterpolantReport, LeastBasis, Method, Projector, SchabackBasis};
pub use linalg::Matrix;
pub use poly::{monomial_sequence, MonomialOrder, MultiIndex, Polynomial};
pub use rational::Rational;
