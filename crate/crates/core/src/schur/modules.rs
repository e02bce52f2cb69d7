//! The named equation modules: `M5`, `M6` and `M9`.

use itertools::Itertools;

use super::basis::{module_basis_by_swaps, module_basis_from_hwv, FillingTriple, ModuleBasis};
use super::hwv::construct_hwv_polynomial_ordered;
use super::symmetrizer::SymmetrizerOrder;
use super::tableau::{PositionTableau, SlotOrder};
use crate::algebra::{Dims, Factor, SparsePolynomial};
use crate::determinantal::strassen_poly;
use crate::error::{Error, Result};
use crate::rep::{weight_class_representatives, weyl_dimension, Partition};

/// Slot orders of the three factors and the symmetrizer order used for every
/// symmetrizer construction of a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convention {
    pub slots: [SlotOrder; 3],
    pub symmetrizer: SymmetrizerOrder,
}

impl Convention {
    pub fn new(slots: [SlotOrder; 3], symmetrizer: SymmetrizerOrder) -> Self {
        Convention { slots, symmetrizer }
    }

    /// Positions `12/34/56` on `A` and `14/25/36` on `B`, row-major on `C`; columns
    /// skewed first.
    pub fn m6() -> Self {
        Convention::new(
            [SlotOrder::RowMajor, SlotOrder::ColumnMajor, SlotOrder::RowMajor],
            SymmetrizerOrder::ColumnsFirst,
        )
    }

    /// Positions `12/3/4/5` on `A`, `13/2/4/5` on `B` and `145/2/3` on `C` for the
    /// triple `(2,1,1,1), (2,1,1,1), (3,1,1)`; rows symmetrized first.
    ///
    /// With columns skewed first the weight `(2,1,1,1)` representative of `C` comes
    /// out with 1188 monomials for every slot choice instead of 540; both orders give
    /// bases of the same module.
    pub fn m5() -> Self {
        Convention::new(
            [
                SlotOrder::RowMajor,
                SlotOrder::Explicit(vec![1, 3, 2, 4, 5]),
                SlotOrder::ColumnMajor,
            ],
            SymmetrizerOrder::RowsFirst,
        )
    }
}

pub fn hwv_for_fillings(
    fills: &FillingTriple,
    conv: &Convention,
    dims: Dims,
) -> Result<SparsePolynomial> {
    let [a, b, c] = [0, 1, 2].map(|f| PositionTableau::new(fills[f].clone(), &conv.slots[f]));
    construct_hwv_polynomial_ordered(&a?, &b?, &c?, dims, conv.symmetrizer)
}

/// One symmetrizer polynomial per triple of dominant weights.
pub fn representatives(
    triple: &[Partition; 3],
    conv: &Convention,
    dims: Dims,
) -> Result<Vec<(FillingTriple, SparsePolynomial)>> {
    let ns = dims.as_array();
    let classes: Vec<_> = (0..3)
        .map(|f| weight_class_representatives(&triple[f], ns[f]))
        .collect();
    classes[0]
        .iter()
        .cartesian_product(&classes[1])
        .cartesian_product(&classes[2])
        .map(|((a, b), c)| {
            let fills = [a.clone(), b.clone(), c.clone()];
            let p = hwv_for_fillings(&fills, conv, dims)?;
            Ok((fills, p))
        })
        .collect()
}

fn is_zero_module(triple: &[Partition; 3], dims: Dims) -> bool {
    triple
        .iter()
        .zip(Factor::ALL)
        .any(|(p, f)| weyl_dimension(p, dims.get(f)) == 0)
}

/// Builds a module by symmetrizing class representatives and expanding them by swaps.
pub fn module_by_swaps(
    triple: &[Partition; 3],
    conv: &Convention,
    dims: Dims,
) -> Result<ModuleBasis> {
    if is_zero_module(triple, dims) {
        return Ok(ModuleBasis::empty(triple.clone(), dims));
    }
    let reps = representatives(triple, conv, dims)?;
    module_basis_by_swaps(&reps, dims)
}

pub fn m6_triple() -> [Partition; 3] {
    [
        Partition::of(&[2, 2, 2]),
        Partition::of(&[2, 2, 2]),
        Partition::of(&[3, 1, 1, 1]),
    ]
}

/// `S_{222}A ⊗ S_{222}B ⊗ S_{3111}C`.
pub fn m6_basis(dims: Dims) -> Result<ModuleBasis> {
    module_by_swaps(&m6_triple(), &Convention::m6(), dims)
}

/// The summand of `M5` with `S_{311}` on `factor` and `S_{2111}` on the other two.
pub fn m5_triple(factor: Factor) -> [Partition; 3] {
    let mut t = [
        Partition::of(&[2, 1, 1, 1]),
        Partition::of(&[2, 1, 1, 1]),
        Partition::of(&[2, 1, 1, 1]),
    ];
    t[factor.position()] = Partition::of(&[3, 1, 1]);
    t
}

/// Factor order that moves factor `C` of a construction into position `factor`.
fn order_placing_c_at(factor: Factor) -> [Factor; 3] {
    match factor {
        Factor::A => [Factor::C, Factor::A, Factor::B],
        Factor::B => [Factor::A, Factor::C, Factor::B],
        Factor::C => [Factor::A, Factor::B, Factor::C],
    }
}

/// Dims of the construction whose factor `C` ends up at position `factor`.
fn construction_dims(dims: Dims, factor: Factor) -> Dims {
    let order = order_placing_c_at(factor);
    let mut src = [0usize; 3];
    for (p, f) in order.iter().enumerate() {
        src[f.position()] = dims.as_array()[p];
    }
    Dims::from_array(src)
}

fn relocate_label(label: &str, order: [Factor; 3]) -> String {
    let parts: Vec<&str> = label.split('|').collect();
    order.iter().map(|f| parts[f.position()]).join("|")
}

/// Moves a basis built with its distinguished factor on `C` to position `factor`.
fn relocate(built: ModuleBasis, triple: [Partition; 3], dims: Dims, factor: Factor) -> ModuleBasis {
    if factor == Factor::C {
        return built;
    }
    let order = order_placing_c_at(factor);
    let polys = built
        .polys
        .iter()
        .map(|p| p.permute_factors(order).canonicalize())
        .collect();
    let provenance = built
        .provenance
        .into_iter()
        .map(|mut prov| {
            prov.fillings = relocate_label(&prov.fillings, order);
            prov.via = format!("{}:factors={}", prov.via, order.iter().join(""));
            prov
        })
        .collect();
    ModuleBasis {
        triple,
        dims,
        polys,
        provenance,
    }
}

/// One summand of `M5`. It is built with `S_{311}` on `C` and then moved into place
/// by permuting the tensor factors.
pub fn m5_summand(dims: Dims, factor: Factor) -> Result<ModuleBasis> {
    let triple = m5_triple(factor);
    if is_zero_module(&triple, dims) {
        return Ok(ModuleBasis::empty(triple, dims));
    }
    let built = module_by_swaps(
        &m5_triple(Factor::C),
        &Convention::m5(),
        construction_dims(dims, factor),
    )?;
    Ok(relocate(built, triple, dims, factor))
}

/// The symmetrizer representatives of one `M5` summand (one per triple of dominant
/// weights), labelled by their fillings. Each one generates the summand.
pub fn m5_representatives(dims: Dims, factor: Factor) -> Result<Vec<(String, SparsePolynomial)>> {
    if is_zero_module(&m5_triple(factor), dims) {
        return Ok(Vec::new());
    }
    let order = order_placing_c_at(factor);
    let reps = representatives(&m5_triple(Factor::C), &Convention::m5(), construction_dims(dims, factor))?;
    Ok(reps
        .into_iter()
        .filter(|(_, p)| !p.is_zero())
        .map(|(fills, p)| {
            let label = relocate_label(&super::basis::encode_fillings(&fills), order);
            (label, p.permute_factors(order).canonicalize())
        })
        .collect())
}

/// `M6` with `S_{3111}` on `factor`, at dims `3,3,4` arranged accordingly.
pub fn m6_oriented(factor: Factor) -> Result<ModuleBasis> {
    let mut d = [3usize; 3];
    d[factor.position()] = 4;
    let dims = Dims::from_array(d);
    let built = m6_basis(construction_dims(dims, factor))?;
    let mut triple = [Partition::of(&[2, 2, 2]), Partition::of(&[2, 2, 2]), Partition::of(&[2, 2, 2])];
    triple[factor.position()] = Partition::of(&[3, 1, 1, 1]);
    Ok(relocate(built, triple, dims, factor))
}

/// The three summands of `M5`, in the order `S_{311}` on `A`, `B`, `C`.
pub fn m5_bases(dims: Dims) -> Result<Vec<ModuleBasis>> {
    Factor::ALL.iter().map(|&f| m5_summand(dims, f)).collect()
}

/// `S_{333}A ⊗ S_{333}B ⊗ S_{333}C`, generated from the Strassen determinant by
/// lowering operators. Needs `a = b = 3`.
pub fn m9_basis(dims: Dims) -> Result<ModuleBasis> {
    if dims.a != 3 || dims.b != 3 || dims.c < 3 {
        return Err(Error::DimensionMismatch(format!(
            "M9 is built at dims 3,3,c with c >= 3, not {dims}"
        )));
    }
    module_basis_from_hwv(&strassen_poly(), dims)
}
