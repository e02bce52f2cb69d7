use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An integer partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Invalid(format!(
                "{parts:?} is not a partition (parts must be positive and weakly decreasing)"
            )));
        }
        Ok(Partition(parts))
    }

    /// Panicking constructor for literals known to be valid.
    pub fn of(parts: &[u32]) -> Self {
        Partition::new(parts.to_vec()).expect("valid partition literal")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition(
            (0..first)
                .map(|c| self.0.iter().filter(|&&p| p > c).count() as u32)
                .collect(),
        )
    }

    /// Cells `(row, col)` in row-major order, 0-based.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
    }

    /// Row-major position of a cell.
    pub fn cell_position(&self, row: usize, col: usize) -> usize {
        self.0[..row].iter().map(|&p| p as usize).sum::<usize>() + col
    }

    pub fn hook_length(&self, row: usize, col: usize) -> u32 {
        let arm = self.0[row] - col as u32 - 1;
        let leg = self.0[row + 1..]
            .iter()
            .filter(|&&p| p as usize > col)
            .count() as u32;
        arm + leg + 1
    }

    /// Column heights, left to right.
    pub fn column_lengths(&self) -> Vec<usize> {
        self.conjugate().0.iter().map(|&x| x as usize).collect()
    }

    /// Multiplicities `m_j` of each part size `j` (index 0 unused).
    pub fn multiplicities(&self) -> Vec<u32> {
        let max = self.0.first().copied().unwrap_or(0) as usize;
        let mut m = vec![0u32; max + 1];
        for &p in &self.0 {
            m[p as usize] += 1;
        }
        m
    }

    /// All partitions of `d` in reverse lexicographic order, starting with `(d)`.
    pub fn all(d: u32) -> Vec<Partition> {
        Self::all_bounded(d, usize::MAX)
    }

    /// Partitions of `d` with at most `max_len` parts, reverse lexicographic order.
    pub fn all_bounded(d: u32, max_len: usize) -> Vec<Partition> {
        fn rec(rem: u32, max_part: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if cur.len() == max_len {
                return;
            }
            for p in (1..=rem.min(max_part)).rev() {
                cur.push(p);
                rec(rem - p, p, max_len, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, max_len, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1,1` or `(3,1,1,1)`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        if body.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Invalid(format!("bad partition '{s}': {e}")))?;
        Partition::new(parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Partition::new(vec![3, 1, 1, 1]).is_ok());
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![2, 1, 0]).unwrap(), Partition::of(&[2, 1]));
        assert!(Partition::new(vec![2, 0, 1]).is_err());
    }

    #[test]
    fn counts_and_order() {
        let ps = Partition::all(5);
        assert_eq!(ps.len(), 7);
        assert_eq!(ps[0], Partition::of(&[5]));
        assert_eq!(ps[6], Partition::of(&[1, 1, 1, 1, 1]));
        assert_eq!(Partition::all(9).len(), 30);
        assert_eq!(Partition::all_bounded(6, 3).len(), 7);
    }

    #[test]
    fn conjugate_and_hooks() {
        let p = Partition::of(&[3, 1, 1, 1]);
        assert_eq!(p.conjugate(), Partition::of(&[4, 1, 1]));
        assert_eq!(p.hook_length(0, 0), 6);
        assert_eq!(p.hook_length(0, 2), 1);
        assert_eq!(p.column_lengths(), vec![4, 1, 1]);
        assert_eq!(p.cell_position(2, 0), 4);
    }

    #[test]
    fn text_forms() {
        let p: Partition = "(2,2,2)".parse().unwrap();
        assert_eq!(p.to_string(), "(2,2,2)");
        assert_eq!("3,1,1".parse::<Partition>().unwrap(), Partition::of(&[3, 1, 1]));
    }
}
