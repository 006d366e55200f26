//! Verification and computation engine for level Eulerian posets of
//! 0,1-matrices.
//!
//! The crate is organised bottom-up:
//!
//! * [`ncalg`]: non-commutative polynomials and truncated series, the
//!   derivation `delta`, reversal and the ab/cd change of basis.
//! * [`matlin`]: exact integer, boolean and series matrices, `Bin`, powers,
//!   exponents and the anti-diagonal flip.
//! * [`levelposet`]: intervals, flag f-vectors, ab-/cd-indices, Eulerian
//!   checks and the truncated Psi series (two independent routes).
//! * [`families`]: the parametric matrices `M(r)` and `N(r)`, their closed
//!   form cd-series and the two-equation verification.
//! * [`walkshell`]: reduced powers in the algebra of walks and shellability
//!   certificates.

pub mod error;
pub mod families;
pub mod levelposet;
pub mod linsolve;
pub mod matlin;
pub mod ncalg;
pub mod walkshell;

pub use error::{Error, Result};
