use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the three tensor factors `A`, `B`, `C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Factor {
    A,
    B,
    C,
}

impl Factor {
    pub const ALL: [Factor; 3] = [Factor::A, Factor::B, Factor::C];

    pub fn position(self) -> usize {
        match self {
            Factor::A => 0,
            Factor::B => 1,
            Factor::C => 2,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Factor::A => "A",
            Factor::B => "B",
            Factor::C => "C",
        };
        f.write_str(s)
    }
}

/// Ambient dimensions `(a, b, c)` of `A ⊗ B ⊗ C`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dims {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

impl Dims {
    pub const fn new(a: usize, b: usize, c: usize) -> Self {
        Dims { a, b, c }
    }

    pub fn get(&self, factor: Factor) -> usize {
        match factor {
            Factor::A => self.a,
            Factor::B => self.b,
            Factor::C => self.c,
        }
    }

    pub fn as_array(&self) -> [usize; 3] {
        [self.a, self.b, self.c]
    }

    pub fn from_array(d: [usize; 3]) -> Self {
        Dims::new(d[0], d[1], d[2])
    }

    /// Number of coordinates `a·b·c`.
    pub fn volume(&self) -> usize {
        self.a * self.b * self.c
    }

    /// True when every factor dimension is at least the corresponding one in `other`.
    pub fn contains(&self, other: &Dims) -> bool {
        self.a >= other.a && self.b >= other.b && self.c >= other.c
    }

    pub fn contains_var(&self, v: VariableIndex) -> bool {
        v.i >= 1
            && v.j >= 1
            && v.k >= 1
            && usize::from(v.i) <= self.a
            && usize::from(v.j) <= self.b
            && usize::from(v.k) <= self.c
    }

    /// Iterates all variables in the canonical (lex) order.
    pub fn variables(&self) -> impl Iterator<Item = VariableIndex> + '_ {
        (1..=self.a).flat_map(move |i| {
            (1..=self.b).flat_map(move |j| {
                (1..=self.c).map(move |k| VariableIndex::new(i as u8, j as u8, k as u8))
            })
        })
    }

    /// Row-major linear offset of a 1-based variable.
    pub fn offset(&self, v: VariableIndex) -> usize {
        ((usize::from(v.i) - 1) * self.b + usize::from(v.j) - 1) * self.c + usize::from(v.k) - 1
    }
}

impl fmt::Display for Dims {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.a, self.b, self.c)
    }
}

impl FromStr for Dims {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<usize> = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Invalid(format!("bad dims '{s}': {e}")))?;
        match parts.as_slice() {
            [a, b, c] if *a > 0 && *b > 0 && *c > 0 => Ok(Dims::new(*a, *b, *c)),
            _ => Err(Error::Invalid(format!(
                "dims must be three positive integers a,b,c, got '{s}'"
            ))),
        }
    }
}

/// A coordinate `x[i,j,k]`, 1-based in each factor. Ordered lexicographically on `(i, j, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VariableIndex {
    pub i: u8,
    pub j: u8,
    pub k: u8,
}

impl VariableIndex {
    pub const fn new(i: u8, j: u8, k: u8) -> Self {
        VariableIndex { i, j, k }
    }

    pub fn get(&self, factor: Factor) -> u8 {
        match factor {
            Factor::A => self.i,
            Factor::B => self.j,
            Factor::C => self.k,
        }
    }

    pub fn with(mut self, factor: Factor, index: u8) -> Self {
        match factor {
            Factor::A => self.i = index,
            Factor::B => self.j = index,
            Factor::C => self.k = index,
        }
        self
    }
}

impl fmt::Display for VariableIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x[{},{},{}]", self.i, self.j, self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn variable_order_is_lex() {
        let dims = Dims::new(2, 2, 3);
        let vars: Vec<_> = dims.variables().collect();
        let mut sorted = vars.clone();
        sorted.sort();
        assert_eq!(vars, sorted);
        assert_eq!(vars.len(), 12);
        for (n, v) in vars.iter().enumerate() {
            assert_eq!(dims.offset(*v), n);
        }
    }

    #[test]
    fn dims_parse() {
        assert_eq!("3,3,4".parse::<Dims>().unwrap(), Dims::new(3, 3, 4));
        assert!("3,3".parse::<Dims>().is_err());
        assert!("3,0,4".parse::<Dims>().is_err());
    }
}
