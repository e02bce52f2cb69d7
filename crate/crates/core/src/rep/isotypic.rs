use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use super::characters::{kronecker_mult, weyl_dimension};
use super::partition::Partition;
use crate::algebra::Dims;
use crate::error::{Error, Result};

/// Degrees above this need an explicit opt-in.
pub const DEFAULT_MAX_DEGREE: u32 = 9;

/// `(S_{π1}A ⊗ S_{π2}B ⊗ S_{π3}C)^{⊕ m}` inside `S^d(A ⊗ B ⊗ C)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsotypicComponent {
    pub triple: [Partition; 3],
    pub multiplicity: u64,
    pub component_dim: u64,
}

/// Isotypic decomposition of degree-`d` polynomials on `A ⊗ B ⊗ C`, in lex order of
/// the partition triples (largest partitions first). Errors past
/// [`DEFAULT_MAX_DEGREE`]; see [`isotypic_decomposition_unbounded`].
pub fn isotypic_decomposition(d: u32, dims: Dims) -> Result<Vec<IsotypicComponent>> {
    if d > DEFAULT_MAX_DEGREE {
        return Err(Error::Invalid(format!(
            "degree {d} exceeds the default cap {DEFAULT_MAX_DEGREE}"
        )));
    }
    Ok(isotypic_decomposition_unbounded(d, dims))
}

pub fn isotypic_decomposition_unbounded(d: u32, dims: Dims) -> Vec<IsotypicComponent> {
    let pa = Partition::all_bounded(d, dims.a);
    let pb = Partition::all_bounded(d, dims.b);
    let pc = Partition::all_bounded(d, dims.c);
    let triples: Vec<[Partition; 3]> = pa
        .iter()
        .cartesian_product(&pb)
        .cartesian_product(&pc)
        .map(|((a, b), c)| [a.clone(), b.clone(), c.clone()])
        .collect();
    triples
        .into_par_iter()
        .filter_map(|[a, b, c]| {
            let m = kronecker_mult(&a, &b, &c).expect("equal sizes");
            (m > 0).then(|| {
                let dim = m
                    * weyl_dimension(&a, dims.a)
                    * weyl_dimension(&b, dims.b)
                    * weyl_dimension(&c, dims.c);
                IsotypicComponent {
                    triple: [a, b, c],
                    multiplicity: m,
                    component_dim: dim,
                }
            })
        })
        .collect()
}

/// `binomial(n + d - 1, d)`, the dimension of `S^d` of an `n`-dimensional space.
pub fn symmetric_power_dim(n: usize, d: u32) -> u128 {
    let mut acc: u128 = 1;
    for t in 0..d as u128 {
        acc = acc * (n as u128 + t) / (t + 1);
    }
    acc
}
