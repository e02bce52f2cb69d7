//! Determinantal equations: Ottaviani's matrix `ψ_T`, Strassen's degree nine
//! equation, and flattening ranks.

use std::fmt;

use rayon::prelude::*;

use crate::algebra::{Dims, Factor, Matrix, Rational, Scalar, SparsePolynomial, Tensor3};
use crate::error::{Error, Result};
use crate::schur::hwv::{KeyMap, PackedPoly};

/// Block of `ψ_T` at block position `(r, s)`: `Some((slice, sign))` or `None` for a
/// zero block. The layout is `[[0, T3, −T2], [−T3, 0, T1], [T2, −T1, 0]]`.
fn psi_block(r: usize, s: usize) -> Option<(usize, i64)> {
    const BLOCKS: [[Option<(usize, i64)>; 3]; 3] = [
        [None, Some((2, 1)), Some((1, -1))],
        [Some((2, -1)), None, Some((0, 1))],
        [Some((1, 1)), Some((0, -1)), None],
    ];
    BLOCKS[r][s]
}

/// The `3b × 3c` matrix `ψ_T` built from the three `A`-slices of `T`.
pub fn build_psi<S: Scalar>(t: &Tensor3<S>) -> Result<Matrix<S>> {
    let d = t.dims();
    if d.a != 3 {
        return Err(Error::DimensionMismatch(format!(
            "psi needs exactly three A-slices, got dims {d}"
        )));
    }
    Ok(Matrix::from_fn(3 * d.b, 3 * d.c, |row, col| {
        let (r, j) = (row / d.b, row % d.b);
        let (s, k) = (col / d.c, col % d.c);
        match psi_block(r, s) {
            None => S::zero(),
            Some((i, 1)) => t.get(i, j, k).clone(),
            Some((i, _)) => -t.get(i, j, k).clone(),
        }
    }))
}

fn require_333(t_dims: Dims) -> Result<()> {
    if t_dims != Dims::new(3, 3, 3) {
        return Err(Error::DimensionMismatch(format!(
            "Strassen's equation lives on 3,3,3 tensors, got {t_dims}"
        )));
    }
    Ok(())
}

/// `det ψ_T` for a `3 × 3 × 3` tensor.
pub fn strassen_det(t: &Tensor3) -> Result<Rational> {
    require_333(t.dims())?;
    Ok(build_psi(t)?.determinant())
}

/// `det(T1)^2 · det(T2 T1^{-1} T3 − T3 T1^{-1} T2)`, or `None` when `T1` is singular.
///
/// Here `T_i` is the map `B* → C`, the `c × b` transpose of the `A`-slice. With the
/// `b × c` slices themselves the same expression is `−det ψ_T`.
pub fn strassen_commutator(t: &Tensor3) -> Result<Option<Rational>> {
    require_333(t.dims())?;
    let [t1, t2, t3] = [0, 1, 2].map(|i| t.slice(Factor::A, i).transpose());
    let Some(inv) = t1.inverse() else {
        return Ok(None);
    };
    let comm = t2.mul(&inv).mul(&t3).sub(&t3.mul(&inv).mul(&t2));
    let d1 = t1.determinant();
    Ok(Some(&d1 * &d1 * comm.determinant()))
}

/// The degree nine polynomial `det ψ_T` in the 27 coordinates of a `3 × 3 × 3`
/// tensor, in canonical form.
///
/// Every entry of `ψ_T` is a single signed variable, so the determinant is a signed
/// sum over the permutations avoiding the zero blocks.
pub fn strassen_poly() -> SparsePolynomial {
    let dims = Dims::new(3, 3, 3);
    let n = 9;
    // entries[row] = (col, variable offset, sign)
    let entries: Vec<Vec<(usize, u16, i128)>> = (0..n)
        .map(|row| {
            let (r, j) = (row / 3, row % 3);
            (0..n)
                .filter_map(|col| {
                    let (s, k) = (col / 3, col % 3);
                    psi_block(r, s).map(|(i, sign)| (col, (i * 9 + j * 3 + k) as u16, sign as i128))
                })
                .collect()
        })
        .collect();

    fn descend(
        row: usize,
        used: u16,
        codes: &mut [u16; 9],
        sign: i128,
        entries: &[Vec<(usize, u16, i128)>],
        map: &mut KeyMap,
    ) {
        if row == entries.len() {
            let mut sorted = *codes;
            sorted.sort_unstable();
            let key = sorted
                .iter()
                .enumerate()
                .fold(0u128, |acc, (t, &c)| acc | (u128::from(c) << (12 * t)));
            *map.entry(key).or_insert(0) += sign;
            return;
        }
        for &(col, code, s) in &entries[row] {
            if used & (1 << col) != 0 {
                continue;
            }
            // parity of the permutation: count used columns to the right of `col`
            let inversions = (used >> (col + 1)).count_ones();
            let parity = if inversions % 2 == 0 { 1 } else { -1 };
            codes[row] = code;
            descend(row + 1, used | (1 << col), codes, sign * s * parity, entries, map);
        }
    }

    let map = entries[0]
        .par_iter()
        .map(|&(col, code, s)| {
            let mut map = KeyMap::default();
            let mut codes = [0u16; 9];
            codes[0] = code;
            descend(1, 1 << col, &mut codes, s, &entries, &mut map);
            map
        })
        .reduce(KeyMap::default, |mut x, y| {
            for (k, v) in y {
                *x.entry(k).or_insert(0) += v;
            }
            x
        });
    let mut terms: Vec<(u128, i128)> = map.into_iter().filter(|&(_, v)| v != 0).collect();
    terms.sort_unstable();
    PackedPoly {
        dims,
        degree: 9,
        terms,
    }
    .to_polynomial()
    .canonicalize()
}

/// Equivalence class of a maximal minor of the `9 × 12` matrix `ψ_T` at dims
/// `3,3,4`, by how many columns it takes from each of the three column blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinorClass {
    /// Three columns from every block.
    C333,
    /// Four, three and two columns in some order.
    C432,
    /// Four, four and one column in some order.
    C441,
    Other([usize; 3]),
}

impl fmt::Display for MinorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinorClass::C333 => write!(f, "(3,3,3)"),
            MinorClass::C432 => write!(f, "(4,3,2)"),
            MinorClass::C441 => write!(f, "(4,4,1)"),
            MinorClass::Other(p) => write!(f, "other({},{},{})", p[0], p[1], p[2]),
        }
    }
}

/// A choice of square-minor columns (1-based) of `ψ_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorIndex {
    pub columns: Vec<usize>,
    /// Columns per block.
    pub pattern: [usize; 3],
}

impl MinorIndex {
    pub fn new(columns: Vec<usize>, c: usize) -> Result<Self> {
        let mut pattern = [0usize; 3];
        for &col in &columns {
            if col == 0 || col > 3 * c {
                return Err(Error::Invalid(format!("column {col} outside 1..={}", 3 * c)));
            }
            pattern[(col - 1) / c] += 1;
        }
        Ok(MinorIndex { columns, pattern })
    }
}

pub fn minor_class(columns: &[usize], c: usize) -> Result<MinorClass> {
    if columns.len() != 9 {
        return Err(Error::Invalid(format!(
            "a maximal minor of psi takes 9 columns, got {}",
            columns.len()
        )));
    }
    let idx = MinorIndex::new(columns.to_vec(), c)?;
    let mut sorted = idx.pattern;
    sorted.sort_unstable_by(|x, y| y.cmp(x));
    Ok(match sorted {
        [3, 3, 3] => MinorClass::C333,
        [4, 3, 2] => MinorClass::C432,
        [4, 4, 1] => MinorClass::C441,
        _ => MinorClass::Other(idx.pattern),
    })
}

/// The flattening of `T` along one factor: for `A`, the `a × bc` matrix with row `i`
/// and column `(j, k)` in lex order; similarly for `B` (columns `(i, k)`) and `C`
/// (columns `(i, j)`).
pub fn flattening<S: Scalar>(t: &Tensor3<S>, mode: Factor) -> Matrix<S> {
    let d = t.dims();
    match mode {
        Factor::A => Matrix::from_fn(d.a, d.b * d.c, |i, col| t.get(i, col / d.c, col % d.c).clone()),
        Factor::B => Matrix::from_fn(d.b, d.a * d.c, |j, col| t.get(col / d.c, j, col % d.c).clone()),
        Factor::C => Matrix::from_fn(d.c, d.a * d.b, |k, col| t.get(col / d.b, col % d.b, k).clone()),
    }
}

/// Exact ranks of the three flattenings.
pub fn flattening_ranks(t: &Tensor3) -> [usize; 3] {
    Factor::ALL.map(|f| flattening(t, f).rank())
}

/// Numeric ranks of the three flattenings with a relative tolerance.
pub fn flattening_ranks_numeric(t: &Tensor3<f64>, tol: f64) -> [usize; 3] {
    Factor::ALL.map(|f| flattening(t, f).numeric_rank(tol))
}

/// Membership in `Sub_{a',b',c'}`: every flattening rank is within the target.
pub fn subspace_test(t: &Tensor3, target: Dims) -> bool {
    let r = flattening_ranks(t);
    r[0] <= target.a && r[1] <= target.b && r[2] <= target.c
}

/// Rank of `ψ_T` for `a = 3`.
pub fn psi_rank(t: &Tensor3) -> Result<usize> {
    Ok(build_psi(t)?.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rational, VariableIndex};
    use crate::random::{int_tensor, rng_for};

    #[test]
    fn commutator_form_equals_determinant() {
        let mut rng = rng_for(21, 0);
        let mut checked = 0;
        for _ in 0..10 {
            let t = int_tensor(&mut rng, Dims::new(3, 3, 3), 30);
            if let Some(c) = strassen_commutator(&t).unwrap() {
                assert_eq!(c, strassen_det(&t).unwrap());
                checked += 1;
            }
        }
        assert!(checked >= 8);
        let mut singular = Tensor3::zeros(Dims::new(3, 3, 3));
        singular.set(1, 0, 0, rational(1));
        assert_eq!(strassen_commutator(&singular).unwrap(), None);
    }

    #[test]
    fn psi_is_linear() {
        let mut rng = rng_for(5, 0);
        let (t, u) = (int_tensor(&mut rng, Dims::new(3, 2, 4), 50), int_tensor(&mut rng, Dims::new(3, 2, 4), 50));
        let s = rational(-7);
        let lhs = build_psi(&t.scale(&s).add(&u)).unwrap();
        let rhs = build_psi(&t).unwrap().scale(&s).add(&build_psi(&u).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn psi_of_a_point_has_rank_two() {
        let t = Tensor3::unit(Dims::new(3, 3, 3), VariableIndex::new(1, 1, 1));
        assert_eq!(psi_rank(&t).unwrap(), 2);
        assert_eq!(psi_rank(&Tensor3::zeros(Dims::new(3, 3, 3))).unwrap(), 0);
        assert!(build_psi(&Tensor3::<Rational>::zeros(Dims::new(2, 3, 3))).is_err());
    }

    #[test]
    fn psi_layout() {
        let t = Tensor3::from_fn(Dims::new(3, 2, 2), |i, j, k| rational((100 * (i + 1) + 10 * j + k) as i64));
        let m = build_psi(&t).unwrap();
        assert_eq!((m.rows(), m.cols()), (6, 6));
        // block (0,1) is T3, block (0,2) is -T2, block (1,0) is -T3, block (2,1) is -T1
        assert_eq!(m.get(0, 2), &rational(300));
        assert_eq!(m.get(1, 5), &rational(-211));
        assert_eq!(m.get(2, 1), &rational(-301));
        assert_eq!(m.get(5, 3), &rational(-111));
        assert_eq!(m.get(0, 0), &rational(0));
    }

    #[test]
    fn minor_classes() {
        assert_eq!(minor_class(&[1, 2, 3, 5, 6, 7, 9, 10, 11], 4).unwrap(), MinorClass::C333);
        assert_eq!(minor_class(&[1, 2, 3, 4, 5, 6, 7, 9, 10], 4).unwrap(), MinorClass::C432);
        assert_eq!(minor_class(&[1, 2, 3, 4, 5, 6, 7, 8, 9], 4).unwrap(), MinorClass::C441);
        assert!(minor_class(&[1, 2, 3], 4).is_err());
    }

    #[test]
    fn flattening_layout() {
        let t = Tensor3::from_fn(Dims::new(2, 3, 4), |i, j, k| rational((100 * i + 10 * j + k) as i64));
        let fa = flattening(&t, Factor::A);
        assert_eq!((fa.rows(), fa.cols()), (2, 12));
        assert_eq!(fa.get(1, 7), &rational(113));
        let fb = flattening(&t, Factor::B);
        assert_eq!(fb.get(2, 5), &rational(121));
        let fc = flattening(&t, Factor::C);
        assert_eq!((fc.rows(), fc.cols()), (4, 6));
        assert_eq!(fc.get(3, 4), &rational(113));
    }
}
