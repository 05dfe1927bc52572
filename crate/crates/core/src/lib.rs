//! Exact computation with quivers and their representations.
//!
//! The crate is organised bottom-up:
//!
//! - [`coeff`]: prime fields, rationals, Laurent polynomials in `v`, quantum
//!   integers and binomials, Hall coefficients and interpolation in `q`.
//! - [`matrix`]: dense matrices and exact linear algebra over any [`Field`].
//! - [`quiver`]: quivers, paths, acyclicity and the double quiver.
//! - [`path_algebra`]: sparse elements of the path algebra `kQ`.
//! - [`rep`]: representations, morphism spaces, isomorphism testing,
//!   Krull-Schmidt decomposition and orbit enumeration over `F_p`.
//! - [`forms`]: Euler, Cartan and Tits forms, finite/tame/wild
//!   classification, positive roots, and the Gabriel and Kac checks.
//! - [`hall`]: the Ringel-Hall algebra over `F_p`, quantum Serre relations,
//!   the generic lift across primes and the graded dimension of `U^+`.
//! - [`lusztig`]: the moment map, nilpotency, `Λ_V` point counts and
//!   Nakajima stability.
//!
//! All arithmetic is exact. Every expensive enumeration is guarded by
//! [`Limits`] and fails with [`Error::BudgetExceeded`] instead of running away.

pub mod coeff;
mod error;
pub mod forms;
pub mod hall;
mod limits;
pub mod lusztig;
pub mod matrix;
pub mod path_algebra;
pub mod quiver;
pub mod rep;

pub use coeff::field::{Field, PrimeField, Rationals};
pub use error::{Error, ErrorKind, Result};
pub use limits::Limits;
