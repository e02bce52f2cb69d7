use std::collections::BTreeMap;

use itertools::Itertools;

use super::tableau::PositionTableau;

/// A signed integer combination of slot assignments: the image of a single
/// factor's pre-highest-weight vector under its Young symmetrizer.
///
/// Each assignment lists the basis index in every slot (entry 0 is slot 1).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SignedSlotAssignmentSum {
    pub terms: Vec<(i64, Vec<u8>)>,
}

impl SignedSlotAssignmentSum {
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn max_abs_coefficient(&self) -> i64 {
        self.terms.iter().map(|(c, _)| c.abs()).max().unwrap_or(0)
    }
}

fn sign_of(perm: &[usize]) -> i64 {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sums `g · v` over the permutations `g` of the slots in `block`, with signs when
/// `signed`. Equal assignments are merged and cancelled terms dropped.
fn act(
    terms: BTreeMap<Vec<u8>, i64>,
    block: &[usize],
    signed: bool,
) -> BTreeMap<Vec<u8>, i64> {
    if block.len() < 2 {
        return terms;
    }
    let perms: Vec<(Vec<usize>, i64)> = (0..block.len())
        .permutations(block.len())
        .map(|p| {
            let s = if signed { sign_of(&p) } else { 1 };
            (p, s)
        })
        .collect();
    let mut out: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    for (v, c) in terms {
        for (p, s) in &perms {
            let mut w = v.clone();
            for (t, &src) in p.iter().enumerate() {
                w[block[t]] = v[block[src]];
            }
            *out.entry(w).or_insert(0) += c * s;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Which half of the Young symmetrizer acts first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SymmetrizerOrder {
    /// Skew-symmetrize columns, then symmetrize rows.
    #[default]
    ColumnsFirst,
    /// Symmetrize rows, then skew-symmetrize columns.
    RowsFirst,
}

/// Skew-symmetrizes the slots of each column, then symmetrizes the slots of each
/// row, starting from the pre-highest-weight assignment of `pt`. Coefficients stay
/// integral (no division by group orders).
pub fn symmetrizer_image(pt: &PositionTableau) -> SignedSlotAssignmentSum {
    symmetrizer_image_ordered(pt, SymmetrizerOrder::ColumnsFirst)
}

pub fn symmetrizer_image_ordered(
    pt: &PositionTableau,
    order: SymmetrizerOrder,
) -> SignedSlotAssignmentSum {
    let mut terms: BTreeMap<Vec<u8>, i64> = BTreeMap::new();
    terms.insert(pt.slot_assignment(), 1);
    let skew = |mut terms| {
        for col in pt.column_slots() {
            terms = act(terms, &col, true);
        }
        terms
    };
    let sym = |mut terms| {
        for row in pt.row_slots() {
            terms = act(terms, &row, false);
        }
        terms
    };
    terms = match order {
        SymmetrizerOrder::ColumnsFirst => sym(skew(terms)),
        SymmetrizerOrder::RowsFirst => skew(sym(terms)),
    };
    SignedSlotAssignmentSum {
        terms: terms.into_iter().map(|(v, c)| (c, v)).collect(),
    }
}
