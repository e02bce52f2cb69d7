use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use super::var::{Dims, Factor, VariableIndex};

/// A monomial stored as a sorted sparse map from variable to positive exponent.
///
/// Monomials are ordered by degree, then lexicographically on their variables
/// written out in canonical `(i, j, k)` order with repetition. So `x[1,1,1]` comes
/// before `x[1,1,2]`, and `x[1,1,1] x[2,2,1]` before `x[1,2,1] x[2,1,1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: SmallVec<[(VariableIndex, u32); 9]>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: VariableIndex) -> Self {
        let mut factors = SmallVec::new();
        factors.push((v, 1));
        Monomial { factors }
    }

    /// Builds a monomial from a list of variables with repetition.
    pub fn from_vars<I: IntoIterator<Item = VariableIndex>>(vars: I) -> Self {
        let mut vs: SmallVec<[VariableIndex; 9]> = vars.into_iter().collect();
        vs.sort_unstable();
        let mut factors: SmallVec<[(VariableIndex, u32); 9]> = SmallVec::new();
        for v in vs {
            match factors.last_mut() {
                Some((last, e)) if *last == v => *e += 1,
                _ => factors.push((v, 1)),
            }
        }
        Monomial { factors }
    }

    /// Builds a monomial from `(variable, exponent)` pairs; zero exponents are dropped
    /// and repeated variables merged.
    pub fn from_powers<I: IntoIterator<Item = (VariableIndex, u32)>>(powers: I) -> Self {
        let mut ps: SmallVec<[(VariableIndex, u32); 9]> =
            powers.into_iter().filter(|&(_, e)| e > 0).collect();
        ps.sort_unstable_by_key(|&(v, _)| v);
        let mut factors: SmallVec<[(VariableIndex, u32); 9]> = SmallVec::new();
        for (v, e) in ps {
            match factors.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => factors.push((v, e)),
            }
        }
        Monomial { factors }
    }

    pub fn powers(&self) -> &[(VariableIndex, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: VariableIndex) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|pos| self.factors[pos].1)
            .unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::from_powers(self.factors.iter().chain(other.factors.iter()).copied())
    }

    /// Maps each variable through `f`, merging any collisions.
    pub fn map_vars(&self, mut f: impl FnMut(VariableIndex) -> VariableIndex) -> Monomial {
        Monomial::from_powers(self.factors.iter().map(|&(v, e)| (f(v), e)))
    }

    /// Largest index used in a factor (0 for the constant monomial).
    pub fn max_index(&self, factor: Factor) -> u8 {
        self.factors
            .iter()
            .map(|(v, _)| v.get(factor))
            .max()
            .unwrap_or(0)
    }

    pub fn multidegree(&self, dims: Dims) -> MultiDegree {
        multidegree_of(self, dims)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let word = |m: &Monomial| {
            m.factors
                .iter()
                .flat_map(|&(v, e)| std::iter::repeat(v).take(e as usize))
                .collect::<SmallVec<[VariableIndex; 9]>>()
        };
        self.degree()
            .cmp(&other.degree())
            .then_with(|| word(self).cmp(&word(other)))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (n, (v, e)) in self.factors.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Per-factor exponent sums `[[l^A], [l^B], [l^C]]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MultiDegree {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
}

impl MultiDegree {
    pub fn zero(dims: Dims) -> Self {
        MultiDegree {
            a: vec![0; dims.a],
            b: vec![0; dims.b],
            c: vec![0; dims.c],
        }
    }

    pub fn factor(&self, factor: Factor) -> &[u32] {
        match factor {
            Factor::A => &self.a,
            Factor::B => &self.b,
            Factor::C => &self.c,
        }
    }

    pub fn factor_mut(&mut self, factor: Factor) -> &mut Vec<u32> {
        match factor {
            Factor::A => &mut self.a,
            Factor::B => &mut self.b,
            Factor::C => &mut self.c,
        }
    }

    pub fn total(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        let sum = |x: &[u32], y: &[u32]| x.iter().zip(y).map(|(p, q)| p + q).collect();
        MultiDegree {
            a: sum(&self.a, &other.a),
            b: sum(&self.b, &other.b),
            c: sum(&self.c, &other.c),
        }
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u32]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "[[{}],[{}],[{}]]",
            join(&self.a),
            join(&self.b),
            join(&self.c)
        )
    }
}

/// Multidegree of a monomial: `l^A_i` is the total exponent of variables with first
/// index `i`, and likewise for `B` and `C`.
pub fn multidegree_of(m: &Monomial, dims: Dims) -> MultiDegree {
    let mut md = MultiDegree::zero(dims);
    for &(v, e) in m.powers() {
        md.a[usize::from(v.i) - 1] += e;
        md.b[usize::from(v.j) - 1] += e;
        md.c[usize::from(v.k) - 1] += e;
    }
    md
}
