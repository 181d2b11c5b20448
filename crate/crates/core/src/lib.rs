//! Pseudospectral laboratory for the intermediate long wave (ILW) and
//! Benjamin-Ono (BO) equations on the torus.

#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![cfg_attr(test, allow(clippy::excessive_precision))]

pub mod diagnostics;
pub mod error;
pub mod evolution;
pub mod experiments;
pub mod fft;
pub mod field;
pub mod gauge;
pub mod grid;
pub mod multipliers;
pub mod projectors;

pub use error::{LabError, Result};
pub use field::{inverse_transform, transform, ComplexField, SpectralField};
pub use grid::{make_grid, TorusGrid};
