//! SU(1,n) symmetry, the Φ rescaling and the GNS construction on the disk.

pub mod gns;
pub mod matrix;
pub mod rescale;
pub mod su1n;

pub use gns::{
    coherent_vector, gns_embed, gns_inner, gns_project, gns_rep_closed_form, gns_rep_definitional, positivity_check, GnsVector,
};
pub use matrix::CMatrix;
pub use rescale::{phi_image, phi_rescale, RescaleStatus};
pub use su1n::*;
