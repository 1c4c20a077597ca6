//! Exact computations behind symmetric-power L-invariant formulas.
//!
//! The crate is organised bottom-up:
//!
//! * [`exactlin`]: rational scalars, dense matrices and canonical subspaces.
//! * [`sl2rep`]: the sl(2) action on `Sym^m`, its dual and `End(Sym^n)`.
//! * [`plethysm`]: inverse Clebsch-Gordan tables and the `B_{n,k,i}` coefficients.
//! * [`monomial`]: Laurent monomials in named symbols with rational exponents.
//! * [`phin`]: filtered (phi, N)-modules of symmetric powers and their filtrations.
//! * [`weylhecke`]: GSp(2g) Weyl group, Iwahori-Hecke eigenvalues, slope bounds.
//! * [`linv`]: triangulation data and the L-invariant formulas.
//!
//! Everything is exact. There is no floating point anywhere.

pub mod error;
pub mod exactlin;
pub mod linv;
pub mod monomial;
pub mod phin;
pub mod plethysm;
pub mod sl2rep;
pub mod weylhecke;

pub use error::{Error, Result};
pub use exactlin::{Matrix, Scalar, Solution, Subspace};
pub use monomial::{EigenMonomial, Valuations};
