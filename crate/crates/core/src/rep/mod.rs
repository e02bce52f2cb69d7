//! Partitions, semistandard fillings, characters of symmetric groups, Kronecker
//! coefficients and the isotypic decomposition of `S^d(A ⊗ B ⊗ C)`.

mod characters;
mod isotypic;
mod partition;
mod ssyt;

pub use characters::{
    centralizer_order, conjugacy_classes, kronecker_mult, mn_character, weyl_dimension,
    ConjugacyClass,
};
pub use isotypic::{
    isotypic_decomposition, isotypic_decomposition_unbounded, symmetric_power_dim,
    IsotypicComponent, DEFAULT_MAX_DEGREE,
};
pub use partition::Partition;
pub use ssyt::{
    enumerate_ssyt, relabel_class_representatives, weight_class_representatives,
    SemistandardFilling,
};
