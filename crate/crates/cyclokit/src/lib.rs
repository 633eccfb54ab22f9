//! Exact computation with cyclotomic polynomials.
//!
//! cyclokit computes the cyclotomic polynomial Phi_n and its inverse
//! companion Psi_n = (z^n - 1)/Phi_n by several independent algorithms and
//! cross-validates them bit-exactly; decides divisibility of arbitrary
//! integer polynomials by Phi_N through coefficient sums alone, with no
//! polynomial division; and machine-verifies a family of Ramanujan-sum and
//! symmetric-polynomial identities over large integer ranges.
//!
//! Start with the runnable programs under `examples/`, one per capability,
//! or the `cyclokit` binary for the command-line surface.

pub mod bench;
pub mod cli;
pub mod cyclotomic;
pub mod divisibility;
pub mod numtheory;
pub mod poly;
pub mod ramanujan;
pub mod report;
pub mod symmetric;
pub mod verify;

pub use numtheory::{factorize, Factorization, NumTheoryError};
pub use poly::{Poly, PolyError, SeriesPrefix};
pub use report::{IdentityKind, IdentityReport};
pub use symmetric::{RootVector, SymmetricError};
