//! Certified enclosures for the joint spectral radius (JSR) of finite sets of
//! complex matrices, together with numerical checks of Berger-Wang-type
//! identities: the classical matrix formula, its operator variant on an
//! exactly solvable scalar-plus-compact-corner model, and algebraic variants
//! phrased through ideals and quotients of finite-dimensional associative
//! algebras.
//!
//! The crate is organised around a few small pieces:
//!
//! * [`matrix`] - dense complex matrices with the spectral norm, a
//!   Gelfand-formula spectral radius, and Kronecker products.
//! * [`jsr`] - matrix sets, norm/spectral-radius bounds for products, and a
//!   branch-and-bound engine producing certified `[lo, hi]` enclosures.
//! * [`algebra`] - finite-dimensional algebras given by structure constants:
//!   Jacobson radical, centre, ideals, quotients, and JSR of element sets via
//!   the regular representation.
//! * [`opmodel`] - operators of the form `lambda*I + K` with a finite corner
//!   `K`, where norms, spectral radii and their essential counterparts are
//!   exact finite computations.
//! * [`verify`] - seeded property suites that test the identities above on
//!   generated instances and produce machine-readable reports.
//! * [`cli`] - the `jsrlab` command-line front end (JSON in, JSON/CSV out).
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod jsr;
pub mod linalg;
pub mod matrix;
pub mod opmodel;
pub mod verify;

pub use error::{JsrError, Result};
pub use jsr::{Enclosure, EnclosureParams, MatrixSet};
pub use matrix::CMatrix;
