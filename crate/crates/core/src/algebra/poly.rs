use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::monomial::{multidegree_of, Monomial, MultiDegree};
use super::scalar::{Rational, Scalar};
use super::tensor::Tensor3;
use super::var::{Dims, Factor, VariableIndex};
use crate::error::{Error, Result};

/// A polynomial with integer coefficients in the coordinates `x[i,j,k]` of
/// `A ⊗ B ⊗ C`.
///
/// Terms are kept sorted in ascending monomial order with no zero coefficients.
/// The multidegree is recorded whenever every term shares one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    dims: Dims,
    terms: Vec<(Monomial, BigInt)>,
    degree: u32,
    multidegree: Option<MultiDegree>,
}

impl SparsePolynomial {
    pub fn zero(dims: Dims) -> Self {
        SparsePolynomial {
            dims,
            terms: Vec::new(),
            degree: 0,
            multidegree: None,
        }
    }

    pub fn var(dims: Dims, v: VariableIndex) -> Result<Self> {
        Self::from_terms(dims, [(Monomial::var(v), BigInt::one())])
    }

    /// Collects terms, merging repeated monomials and dropping zeros.
    pub fn from_terms<I>(dims: Dims, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m, c) in terms {
            if let Some(&(v, _)) = m.powers().iter().find(|(v, _)| !dims.contains_var(*v)) {
                return Err(Error::IndexOutOfRange { var: v, dims });
            }
            *acc.entry(m).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_map(dims, acc))
    }

    fn from_map(dims: Dims, map: HashMap<Monomial, BigInt>) -> Self {
        let mut terms: Vec<(Monomial, BigInt)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|x, y| x.0.cmp(&y.0));
        Self::from_sorted(dims, terms)
    }

    /// Terms must already be sorted, distinct, nonzero and in range.
    pub(crate) fn from_sorted(dims: Dims, terms: Vec<(Monomial, BigInt)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        let degree = terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        let multidegree = match terms.first() {
            None => None,
            Some((m0, _)) => {
                let md = multidegree_of(m0, dims);
                terms
                    .iter()
                    .all(|(m, _)| multidegree_of(m, dims) == md)
                    .then_some(md)
            }
        };
        SparsePolynomial {
            dims,
            terms,
            degree,
            multidegree,
        }
    }

    pub fn dims(&self) -> Dims {
        self.dims
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    /// Number of monomials with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn multidegree(&self) -> Option<&MultiDegree> {
        self.multidegree.as_ref()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms
            .binary_search_by(|(x, _)| x.cmp(m))
            .map(|pos| self.terms[pos].1.clone())
            .unwrap_or_default()
    }

    /// Gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }

    /// Divides out the content and fixes the sign so the coefficient of the smallest
    /// monomial is positive. The zero polynomial is returned unchanged.
    pub fn canonicalize(&self) -> SparsePolynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c / &g))
            .collect();
        SparsePolynomial {
            dims: self.dims,
            terms,
            degree: self.degree,
            multidegree: self.multidegree.clone(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.is_zero() || (self.content().is_one() && self.terms[0].1.is_positive())
    }

    pub fn scale(&self, s: &BigInt) -> SparsePolynomial {
        if s.is_zero() {
            return SparsePolynomial::zero(self.dims);
        }
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect();
        SparsePolynomial::from_sorted(self.dims, terms)
    }

    /// Re-declares the ambient dims; every variable must fit.
    pub fn with_dims(&self, dims: Dims) -> Result<SparsePolynomial> {
        for (m, _) in &self.terms {
            if let Some(&(v, _)) = m.powers().iter().find(|(v, _)| !dims.contains_var(*v)) {
                return Err(Error::IndexOutOfRange { var: v, dims });
            }
        }
        Ok(SparsePolynomial::from_sorted(dims, self.terms.clone()))
    }

    /// Evaluates at a tensor: `Σ coeff · Π T[v]^e`.
    pub fn evaluate<S: Scalar>(&self, t: &Tensor3<S>) -> Result<S> {
        self.check_fits(t.dims())?;
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = S::from_bigint(c);
            for &(v, e) in m.powers() {
                let x = t.at(v)?;
                for _ in 0..e {
                    term = term * x.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational tensor. Homogeneous polynomials are evaluated in
    /// integers after clearing denominators, which is much faster than rational
    /// arithmetic term by term.
    pub fn evaluate_exact(&self, t: &Tensor3<Rational>) -> Result<Rational> {
        self.check_fits(t.dims())?;
        let homogeneous = self.terms.iter().all(|(m, _)| m.degree() == self.degree);
        if !homogeneous {
            return self.evaluate(t);
        }
        let lcm = t
            .entries()
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let ints: Vec<BigInt> = t
            .entries()
            .iter()
            .map(|q| q.numer() * (&lcm / q.denom()))
            .collect();
        let dims = t.dims();
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.powers() {
                let x = &ints[dims.offset(v)];
                if x.is_zero() {
                    term = BigInt::zero();
                    break;
                }
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(Rational::new(acc, num_traits::pow(lcm, self.degree as usize)))
    }

    fn check_fits(&self, dims: Dims) -> Result<()> {
        for (m, _) in &self.terms {
            if let Some(&(v, _)) = m.powers().iter().find(|(v, _)| !dims.contains_var(*v)) {
                return Err(Error::IndexOutOfRange { var: v, dims });
            }
        }
        Ok(())
    }

    /// Replaces every factor index `t` of the chosen factor by `map[t - 1]`.
    ///
    /// The map must be defined on every index that occurs; images must lie within the
    /// ambient dims. Non-injective maps are allowed and merge variables.
    pub fn substitute_indices(&self, factor: Factor, map: &[u8]) -> Result<SparsePolynomial> {
        let bound = self.dims.get(factor);
        for (pos, &img) in map.iter().enumerate() {
            if img == 0 || usize::from(img) > bound {
                return Err(Error::Invalid(format!(
                    "index map sends {} to {img}, outside 1..={bound} of factor {factor}",
                    pos + 1
                )));
            }
        }
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut err = None;
            let mapped = m.map_vars(|v| {
                let t = v.get(factor);
                match map.get(usize::from(t) - 1) {
                    Some(&img) => v.with(factor, img),
                    None => {
                        err = Some(t);
                        v
                    }
                }
            });
            if let Some(index) = err {
                return Err(Error::MapNotTotal { factor, index });
            }
            *acc.entry(mapped).or_insert_with(BigInt::zero) += c;
        }
        Ok(Self::from_map(self.dims, acc))
    }

    /// Relabels variables so that factor `order[p]` of the input becomes factor `p`
    /// of the output (matching [`Tensor3::permute_factors`]).
    pub fn permute_factors(&self, order: [Factor; 3]) -> SparsePolynomial {
        let src = self.dims.as_array();
        let dims = Dims::from_array([
            src[order[0].position()],
            src[order[1].position()],
            src[order[2].position()],
        ]);
        let terms = self.terms.iter().map(|(m, c)| {
            let mapped = m.map_vars(|v| {
                VariableIndex::new(v.get(order[0]), v.get(order[1]), v.get(order[2]))
            });
            (mapped, c.clone())
        });
        let map: HashMap<_, _> = terms.collect();
        Self::from_map(dims, map)
    }

    fn combine(&self, other: &SparsePolynomial, sign: i32) -> SparsePolynomial {
        let dims = join_dims(self.dims, other.dims);
        let mut acc: BTreeMap<Monomial, BigInt> = self.terms.iter().cloned().collect();
        for (m, c) in &other.terms {
            let e = acc.entry(m.clone()).or_insert_with(BigInt::zero);
            if sign > 0 {
                *e += c;
            } else {
                *e -= c;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        SparsePolynomial::from_sorted(dims, terms)
    }
}

fn join_dims(x: Dims, y: Dims) -> Dims {
    Dims::new(x.a.max(y.a), x.b.max(y.b), x.c.max(y.c))
}

impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.combine(rhs, 1)
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.combine(rhs, -1)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn neg(self) -> SparsePolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;

    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        let dims = join_dims(self.dims, rhs.dims);
        let mut acc: HashMap<Monomial, BigInt> = HashMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_insert_with(BigInt::zero) += c1 * c2;
            }
        }
        SparsePolynomial::from_map(dims, acc)
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            if c.is_negative() {
                write!(f, "{c} {m}")?;
            } else {
                write!(f, "+{c} {m}")?;
            }
        }
        Ok(())
    }
}
