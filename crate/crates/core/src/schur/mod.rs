//! Schur module bases: Young symmetrizers applied to position tableaux, lowering
//! operators, and expansion of representatives by index swaps.

mod basis;
pub(crate) mod hwv;
mod lowering;
pub mod modules;
mod symmetrizer;
mod tableau;

pub use basis::{
    bases_from_file, bases_to_file, encode_fillings, module_basis_by_swaps,
    module_basis_from_hwv, module_dimension, FillingTriple, ModuleBasis, Provenance,
};
pub use hwv::{construct_hwv_polynomial, construct_hwv_polynomial_ordered};
pub use lowering::{is_highest_weight, lowering_operator};
pub use symmetrizer::{
    symmetrizer_image, symmetrizer_image_ordered, SignedSlotAssignmentSum, SymmetrizerOrder,
};
pub use tableau::{PositionTableau, SlotOrder};
