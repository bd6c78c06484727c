//! Multimode down-conversion spectra: overlaps, delay scans, type-I fringes and
//! misalignment corrections.

mod contraction;
mod jsa;
mod misalignment;
mod overlaps;
pub mod quadrature;
mod type_one;

pub use jsa::{
    gaussian_jsa, grid_jsa, JointSpectralAmplitude, JsaForm, SpectralGrid, BOX_HALF_WIDTH,
    DEFAULT_NODES, EDGE_TOLERANCE, MAX_NODES,
};
pub use misalignment::{misaligned_visibility, v2_from_geometry, MisalignmentGeometry, Scheme};
pub use overlaps::{hom_visibility, kernel_g, overlaps, p4_delay, p4_delay_direct, OverlapSet};
pub use type_one::{
    type_one_b_integrals, type_one_fringe, type_one_fringe_from_integrals, type_one_visibility,
    TypeOneIntegrals,
};
