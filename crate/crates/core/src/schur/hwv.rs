use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use num_bigint::BigInt;
use rayon::prelude::*;

use super::symmetrizer::{symmetrizer_image_ordered, SignedSlotAssignmentSum, SymmetrizerOrder};
use super::tableau::PositionTableau;
use crate::algebra::{Dims, Factor, Monomial, SparsePolynomial, VariableIndex};
use crate::error::{Error, Result};

const CODE_BITS: u32 = 12;
const MAX_DEGREE: usize = (128 / CODE_BITS) as usize;

/// Multiply-xorshift hashing for packed monomial keys.
#[derive(Default)]
pub(crate) struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 ^ u64::from(b)).wrapping_mul(0x100_0000_01b3);
        }
    }

    fn write_u128(&mut self, x: u128) {
        let h = (x as u64) ^ ((x >> 64) as u64).rotate_left(29);
        let h = h.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        self.0 = h ^ (h >> 32);
    }
}

pub(crate) type KeyMap = HashMap<u128, i128, BuildHasherDefault<KeyHasher>>;

/// A homogeneous polynomial whose monomials are packed into a `u128`: the sorted
/// row-major offsets of its variables, 12 bits each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PackedPoly {
    pub dims: Dims,
    pub degree: usize,
    /// Sorted by key, no zero coefficients.
    pub terms: Vec<(u128, i128)>,
}

impl PackedPoly {
    pub fn codes(&self, key: u128) -> impl Iterator<Item = usize> + '_ {
        let mask = (1u128 << CODE_BITS) - 1;
        (0..self.degree).map(move |t| ((key >> (CODE_BITS * t as u32)) & mask) as usize)
    }

    pub fn to_polynomial(&self) -> SparsePolynomial {
        let (b, c) = (self.dims.b, self.dims.c);
        let mut terms: Vec<(Monomial, BigInt)> = self
            .terms
            .iter()
            .map(|&(key, coeff)| {
                let vars = self.codes(key).map(|code| {
                    VariableIndex::new(
                        (code / (b * c) + 1) as u8,
                        ((code / c) % b + 1) as u8,
                        (code % c + 1) as u8,
                    )
                });
                (Monomial::from_vars(vars), BigInt::from(coeff))
            })
            .collect();
        terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        SparsePolynomial::from_sorted(self.dims, terms)
    }
}

fn pack(codes: &[u16]) -> u128 {
    codes
        .iter()
        .enumerate()
        .fold(0u128, |acc, (t, &c)| acc | (u128::from(c) << (CODE_BITS * t as u32)))
}

fn check_inputs(fills: [&PositionTableau; 3], dims: Dims) -> Result<usize> {
    let d = fills[0].shape().size();
    for f in &fills[1..] {
        if f.shape().size() != d {
            return Err(Error::SizeMismatch(d, f.shape().size()));
        }
    }
    for (f, factor) in fills.iter().zip(Factor::ALL) {
        let n = dims.get(factor);
        if usize::from(f.content().max_entry()) > n {
            return Err(Error::DimensionMismatch(format!(
                "filling {} of factor {factor} needs more than {n} basis vectors",
                f.content()
            )));
        }
    }
    let d = d as usize;
    if d > MAX_DEGREE || dims.volume() > 1 << CODE_BITS {
        return Err(Error::Invalid(format!(
            "degree {d} at dims {dims} is beyond the packed expansion limits"
        )));
    }
    Ok(d)
}

/// Tensor product of the three symmetrizer images followed by projection to the
/// symmetric power, before canonicalization.
pub(crate) fn construct_packed(
    fills: [&PositionTableau; 3],
    dims: Dims,
    order: SymmetrizerOrder,
) -> Result<PackedPoly> {
    let d = check_inputs(fills, dims)?;
    let [ia, ib, ic] = fills.map(|f| symmetrizer_image_ordered(f, order));
    let bound = |s: &SignedSlotAssignmentSum| s.max_abs_coefficient() as f64 * s.len() as f64;
    if bound(&ia) * bound(&ib) * bound(&ic) >= 2f64.powi(120) {
        return Err(Error::Invalid("coefficient growth exceeds 128-bit accumulation".into()));
    }
    let (b, c) = (dims.b as u16, dims.c as u16);
    let map = ia
        .terms
        .par_iter()
        .fold(KeyMap::default, |mut map, (ca, va)| {
            let mut codes = [0u16; MAX_DEGREE];
            for (cb, vb) in &ib.terms {
                let base: Vec<u16> = (0..d)
                    .map(|s| (u16::from(va[s] - 1) * b + u16::from(vb[s] - 1)) * c)
                    .collect();
                let cab = i128::from(*ca) * i128::from(*cb);
                for (cc, vc) in &ic.terms {
                    for s in 0..d {
                        codes[s] = base[s] + u16::from(vc[s] - 1);
                    }
                    codes[..d].sort_unstable();
                    *map.entry(pack(&codes[..d])).or_insert(0) += cab * i128::from(*cc);
                }
            }
            map
        })
        .reduce(KeyMap::default, |mut x, mut y| {
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });
    let mut terms: Vec<(u128, i128)> = map.into_iter().filter(|&(_, v)| v != 0).collect();
    terms.sort_unstable();
    Ok(PackedPoly {
        dims,
        degree: d,
        terms,
    })
}

/// The highest weight vector of `S_{λ}A ⊗ S_{μ}B ⊗ S_{ν}C` inside `S^d(A ⊗ B ⊗ C)`
/// obtained from the three position tableaux, in canonical form.
///
/// Slot `s` of the three symmetrized factors becomes the variable
/// `x[iA(s), jB(s), kC(s)]`; the product over slots is the monomial. The result may
/// be zero when the chosen fillings do not meet the module. With non-highest
/// contents the result is the corresponding weight vector of the module.
pub fn construct_hwv_polynomial(
    fill_a: &PositionTableau,
    fill_b: &PositionTableau,
    fill_c: &PositionTableau,
    dims: Dims,
) -> Result<SparsePolynomial> {
    construct_hwv_polynomial_ordered(fill_a, fill_b, fill_c, dims, SymmetrizerOrder::ColumnsFirst)
}

pub fn construct_hwv_polynomial_ordered(
    fill_a: &PositionTableau,
    fill_b: &PositionTableau,
    fill_c: &PositionTableau,
    dims: Dims,
    order: SymmetrizerOrder,
) -> Result<SparsePolynomial> {
    let packed = construct_packed([fill_a, fill_b, fill_c], dims, order)?;
    Ok(packed.to_polynomial().canonicalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::SemistandardFilling;

    fn rm(s: &str) -> PositionTableau {
        PositionTableau::row_major(s.parse::<SemistandardFilling>().unwrap())
    }

    #[test]
    fn degree_one_is_a_coordinate() {
        let p = construct_hwv_polynomial(&rm("(1):[1]"), &rm("(1):[2]"), &rm("(1):[3]"), Dims::new(3, 3, 4))
            .unwrap();
        assert_eq!(p.to_string(), "+1 x[1,2,3]");
    }

    #[test]
    fn two_by_two_minor() {
        // S_{11}A ⊗ S_{11}B ⊗ S_{2}C: the 2x2 minor x111 x221 - x121 x211.
        let p = construct_hwv_polynomial(
            &rm("(1,1):[1;2]"),
            &rm("(1,1):[1;2]"),
            &rm("(2):[1,1]"),
            Dims::new(2, 2, 2),
        )
        .unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.to_string(), "+1 x[1,1,1] x[2,2,1] -1 x[1,2,1] x[2,1,1]");
    }

    #[test]
    fn symmetric_square_of_a_coordinate() {
        let p = construct_hwv_polynomial(&rm("(2):[1,1]"), &rm("(2):[1,1]"), &rm("(2):[1,1]"), Dims::new(2, 2, 2))
            .unwrap();
        assert_eq!(p.to_string(), "+1 x[1,1,1]^2");
    }

    #[test]
    fn mismatched_sizes_are_rejected() {
        let r = construct_hwv_polynomial(&rm("(2):[1,1]"), &rm("(1):[1]"), &rm("(2):[1,1]"), Dims::new(2, 2, 2));
        assert!(matches!(r, Err(Error::SizeMismatch(2, 1))));
    }
}
