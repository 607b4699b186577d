//! Exact scalars over Q and Q(sqrt d), a small exact simplex kernel, and point separation.

pub mod field;
pub mod quad;
pub mod rational;
pub mod separation;
pub mod simplex;

pub use field::ExactField;
pub use quad::QuadScalar;
pub use rational::{Rational, Sign};
pub use separation::{separate_point, Separation, SeparationCertificate};
pub use simplex::{lp_feasible, LinearProgram, LpOutcome};
