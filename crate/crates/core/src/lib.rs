//! Bound-state spectra, wave functions and scattering phase shifts of the
//! Hellmann potential V(r) = (−a + b e^{−λr})/r and of its PT-symmetric and
//! non-PT-symmetric non-Hermitian one-dimensional variants.
//!
//! The closed forms live in [`bound`] and [`scatter`]; [`oracle`] is an
//! independent Numerov/shooting solver used to check them, and [`cli`]
//! exposes everything as reproducible CSV/JSON tables.

// NaN must fail range checks, so `!(x > 0.0)` is intended throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bound;
pub mod cli;
pub mod error;
pub mod format;
pub mod model;
pub mod oracle;
pub mod scatter;
pub mod specfun;

pub use error::{Error, ErrorKind, Result};
pub use model::{ApproxScheme, PotentialParams, UnitConvention, Variant};
pub use specfun::{ComplexScalar, HyperTriple};
