//! The cone algebra with the ⋆̃ product, its seminorms and evaluations, and the quotient
//! to the disk algebra.

pub mod cone;
pub mod eval;
pub mod quotient;
pub mod triple;

pub use cone::{
    combined_envelope, cone_colsum, cone_rowsum, cone_rowsum_gamma_total, h_combined, occupancy,
    oracle_structure_constants, rowsum_total_bound, seminorm_r, structure_constant, structure_constants_by_sum,
    tilde_structure_constants, wick_monomial_product, ConeModel,
};
pub use eval::{
    basis_value, basis_value_pair, class_value_pair, eval_disk, eval_disk_pair, eval_pair, eval_upstairs, section,
    y_hat, ConePoint, DiskPoint,
};
pub use quotient::{
    disk_coefficient_extraction, disk_multiply, ideal_dimension, lift_element, reduce_class, reduce_element,
    vanishing_ideal_witness, witness_span_dimension, DiskModel,
};
pub use triple::{DiskIndex, IndexTriple};
