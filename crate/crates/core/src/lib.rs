//! Exact computations with regular (a,b)-modules: free modules of finite
//! rank over formal power series `C[[b]]` carrying an operator `a` with
//! `ab - ba = b^2`.
//!
//! Everything is exact over the Gaussian rationals; power series are held
//! modulo an explicit power of `b`, and any answer that would depend on
//! unknown coefficients is reported as [`Error::InsufficientPrecision`].

pub mod cli;
pub mod error;
pub mod invariants;
pub mod jets;
pub mod lattice;
pub mod linalg;
pub mod module;
pub mod roots;
pub mod scalar;
pub mod series;
pub mod smatrix;
pub mod structure;

pub use error::{Error, Result};
pub use lattice::Lattice;
pub use module::{AbModule, Construct, Spectrum};
pub use scalar::GaussianRational;
pub use series::{TruncSeries, Valuation};
pub use smatrix::{SeriesMatrix, SeriesVec};
