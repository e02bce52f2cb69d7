use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::{Factor, Monomial, SparsePolynomial};
use crate::error::{Error, Result};

/// The Lie algebra action of the elementary matrix sending basis vector `from` to
/// `to` in one factor: every occurrence of index `from` is replaced by `to` in one
/// variable at a time, counted with multiplicity.
///
/// `from < to` lowers the weight; `from > to` raises it.
pub fn lowering_operator(
    p: &SparsePolynomial,
    factor: Factor,
    from: u8,
    to: u8,
) -> Result<SparsePolynomial> {
    let n = p.dims().get(factor);
    if from == to || from == 0 || to == 0 || usize::from(from.max(to)) > n {
        return Err(Error::Invalid(format!(
            "operator {from}->{to} is not an elementary operator on factor {factor} of dimension {n}"
        )));
    }
    let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
    for (m, c) in p.terms() {
        for &(v, e) in m.powers() {
            if v.get(factor) != from {
                continue;
            }
            let image = Monomial::from_powers(
                m.powers()
                    .iter()
                    .map(|&(w, f)| if w == v { (w, f - 1) } else { (w, f) })
                    .chain([(v.with(factor, to), 1)]),
            );
            *acc.entry(image).or_insert_with(BigInt::zero) += c * BigInt::from(e);
        }
    }
    SparsePolynomial::from_terms(p.dims(), acc)
}

/// True when every elementary raising operator (`from > to`) in every factor
/// annihilates `p`.
pub fn is_highest_weight(p: &SparsePolynomial) -> bool {
    first_nonzero_raise(p).is_none()
}

pub(crate) fn first_nonzero_raise(p: &SparsePolynomial) -> Option<(Factor, u8, u8)> {
    for factor in Factor::ALL {
        let n = p.dims().get(factor) as u8;
        for from in 2..=n {
            for to in 1..from {
                let r = lowering_operator(p, factor, from, to).expect("indices in range");
                if !r.is_zero() {
                    return Some((factor, from, to));
                }
            }
        }
    }
    None
}
