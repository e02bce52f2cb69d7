use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MultiDegree};
use super::poly::SparsePolynomial;

type SparseRow = Vec<(Monomial, BigInt)>;

/// Exact linear span of polynomials, kept as a fraction-free semi-echelon basis.
///
/// Polynomials with different multidegrees are automatically independent, so rows
/// are grouped by multidegree and reduction only runs inside a group. Once a
/// polynomial without a multidegree arrives, all rows share one group.
#[derive(Debug, Default, Clone)]
pub struct ExactSpan {
    groups: HashMap<Option<MultiDegree>, Vec<SparseRow>>,
    mixed: bool,
    dim: usize,
}

impl ExactSpan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Reduces `p` against the span; returns the nonzero remainder if `p` is new.
    fn remainder(&self, p: &SparsePolynomial) -> Option<SparseRow> {
        if p.is_zero() {
            return None;
        }
        let mut v: SparseRow = p.terms().to_vec();
        if let Some(rows) = self.groups.get(&self.key(p)) {
            for row in rows {
                let (pivot, pc) = &row[0];
                let Ok(pos) = v.binary_search_by(|(m, _)| m.cmp(pivot)) else {
                    continue;
                };
                let cv = v[pos].1.clone();
                let g = pc.gcd(&cv);
                let (fa, fb) = (pc / &g, &cv / &g);
                v = combine(&v, &fa, row, &fb);
                if v.is_empty() {
                    return None;
                }
                normalize(&mut v);
            }
        }
        Some(v)
    }

    fn key(&self, p: &SparsePolynomial) -> Option<MultiDegree> {
        if self.mixed {
            None
        } else {
            p.multidegree().cloned()
        }
    }

    pub fn contains(&self, p: &SparsePolynomial) -> bool {
        self.remainder(p).is_none()
    }

    /// Adds `p` to the span. Returns true when the dimension grew.
    pub fn insert(&mut self, p: &SparsePolynomial) -> bool {
        if !self.mixed && !p.is_zero() && p.multidegree().is_none() {
            // Rows of different groups have disjoint supports, so concatenating them
            // keeps a valid semi-echelon form.
            let rows: Vec<SparseRow> = self.groups.drain().flat_map(|(_, r)| r).collect();
            self.groups.insert(None, rows);
            self.mixed = true;
        }
        match self.remainder(p) {
            None => false,
            Some(v) => {
                self.groups
                    .entry(self.key(p))
                    .or_default()
                    .push(v);
                self.dim += 1;
                true
            }
        }
    }
}

/// `fa·v − fb·row`, merging two ascending sparse rows.
fn combine(v: &SparseRow, fa: &BigInt, row: &SparseRow, fb: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(v.len() + row.len());
    let (mut x, mut y) = (v.iter().peekable(), row.iter().peekable());
    loop {
        let ord = match (x.peek(), y.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (Some((m1, _)), Some((m2, _))) => m1.cmp(m2),
        };
        match ord {
            Ordering::Less => {
                let (m, c) = x.next().unwrap();
                out.push((m.clone(), c * fa));
            }
            Ordering::Greater => {
                let (m, c) = y.next().unwrap();
                out.push((m.clone(), -(c * fb)));
            }
            Ordering::Equal => {
                let (m, c1) = x.next().unwrap();
                let (_, c2) = y.next().unwrap();
                let c = c1 * fa - c2 * fb;
                if !c.is_zero() {
                    out.push((m.clone(), c));
                }
            }
        }
    }
    out
}

fn normalize(v: &mut SparseRow) {
    let g = v.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    if !g.is_one() && !g.is_zero() {
        for (_, c) in v.iter_mut() {
            *c /= &g;
        }
    }
    if v[0].1.is_negative() {
        for (_, c) in v.iter_mut() {
            *c = -&*c;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Dims, VariableIndex};

    fn p(terms: &[(i64, [u8; 3])]) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            Dims::new(2, 2, 2),
            terms.iter().map(|(c, [i, j, k])| {
                (Monomial::var(VariableIndex::new(*i, *j, *k)), BigInt::from(*c))
            }),
        )
        .unwrap()
    }

    #[test]
    fn detects_dependence() {
        let mut s = ExactSpan::new();
        assert!(s.insert(&p(&[(1, [1, 1, 1]), (2, [1, 1, 2])])));
        assert!(s.insert(&p(&[(1, [1, 1, 1]), (-1, [1, 1, 2])])));
        // Lies in the span of the first two.
        assert!(!s.insert(&p(&[(5, [1, 1, 1]), (1, [1, 1, 2])])));
        assert!(s.contains(&p(&[(3, [1, 1, 2])])));
        assert_eq!(s.dim(), 2);
        assert!(!s.insert(&SparsePolynomial::zero(Dims::new(2, 2, 2))));
    }

    #[test]
    fn different_multidegrees_are_independent() {
        let mut s = ExactSpan::new();
        assert!(s.insert(&p(&[(1, [1, 1, 1])])));
        assert!(s.insert(&p(&[(1, [2, 1, 1])])));
        assert_eq!(s.dim(), 2);
        // A mixed-degree sum of the two is still found in the span.
        assert!(!s.insert(&p(&[(1, [1, 1, 1]), (1, [2, 1, 1])])));
        assert!(s.insert(&p(&[(1, [1, 1, 1]), (1, [2, 2, 2])])));
        assert!(s.contains(&p(&[(1, [2, 2, 2])])));
        assert_eq!(s.dim(), 3);
    }
}
