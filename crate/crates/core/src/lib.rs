//! Two-class distribution and capital-accumulation toolkit.
//!
//! - [`model`]: single-period algebra (class savings, the Kaldor and Pasinetti
//!   profit-rate forms, the propensity constraint).
//! - [`contract`]: savings restricted to a fixed worker/capitalist ratio, with
//!   unsaved-capacity accounting.
//! - [`dynamics`]: discrete-time accumulation, proportional-savings runs and
//!   contract vs. unconstrained growth comparison.
//! - [`io`]: JSON scenario files and trajectory CSV.
//! - [`verify`]: the seeded identity/property suite used by the CLI.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod contract;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod model;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
