//! Few-photon linear-optics simulation of NOON-state projection measurements, with
//! the parametric down-conversion spectral overlaps that set their visibilities.

// `!(x > 0.0)` guards are meant to reject NaN too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fock;
pub mod optics;
pub mod projection;
mod roots;
pub mod scenarios;
pub mod spectral;

pub use error::{Error, Result};

/// Library version reported in scan metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
