//! Exact construction of the conformal characters of five rational
//! W-algebra models as vector valued theta series on a definite
//! quaternion algebra, together with independent Lie-theoretic
//! character formulas used as cross-checks.
//!
//! All series arithmetic is over exact rationals; cyclotomic numbers
//! are used for Gauss sums and representation matrices. Floating point
//! appears only in the numeric modularity check.

pub mod arith;
pub mod error;
pub mod lie;
pub(crate) mod linalg;
pub mod models;
pub mod quaternion;
pub mod rho;
pub mod theta;
pub mod weil;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
