use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::partition::Partition;
use crate::error::{Error, Result};

/// A filling of a Young diagram with positive integers, weakly increasing along rows
/// and strictly increasing down columns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SemistandardFilling {
    shape: Partition,
    rows: Vec<Vec<u8>>,
}

impl SemistandardFilling {
    pub fn new(shape: Partition, rows: Vec<Vec<u8>>) -> Result<Self> {
        if rows.len() != shape.length()
            || rows
                .iter()
                .zip(shape.parts())
                .any(|(r, &p)| r.len() != p as usize)
        {
            return Err(Error::Invalid(format!(
                "filling rows {rows:?} do not match shape {shape}"
            )));
        }
        let f = SemistandardFilling { shape, rows };
        if !f.is_semistandard() {
            return Err(Error::Invalid(format!("filling {f} is not semistandard")));
        }
        Ok(f)
    }

    /// The filling whose row `r` holds the value `r + 1` (the highest weight filling).
    pub fn highest(shape: &Partition) -> Self {
        let rows = shape
            .parts()
            .iter()
            .enumerate()
            .map(|(r, &len)| vec![(r + 1) as u8; len as usize])
            .collect();
        SemistandardFilling {
            shape: shape.clone(),
            rows,
        }
    }

    fn is_semistandard(&self) -> bool {
        let rows_ok = self
            .rows
            .iter()
            .all(|r| r.iter().all(|&x| x >= 1) && r.windows(2).all(|w| w[0] <= w[1]));
        let cols_ok = self.rows.windows(2).all(|pair| {
            pair[1]
                .iter()
                .zip(&pair[0])
                .all(|(below, above)| below > above)
        });
        rows_ok && cols_ok
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    /// Entries in row-major cell order.
    pub fn entries(&self) -> Vec<u8> {
        self.rows.iter().flatten().copied().collect()
    }

    pub fn max_entry(&self) -> u8 {
        self.rows.iter().flatten().copied().max().unwrap_or(0)
    }

    /// Content counts: entry `t` of the result is the number of cells holding `t + 1`.
    pub fn weight(&self, n: usize) -> Vec<u32> {
        let mut w = vec![0u32; n];
        for &x in self.rows.iter().flatten() {
            w[usize::from(x) - 1] += 1;
        }
        w
    }

    /// Renames entries by `perm` (`perm[t - 1]` is the new name of `t`), then sorts
    /// each column. Returns `None` when the result is not semistandard.
    pub fn relabel(&self, perm: &[u8]) -> Option<SemistandardFilling> {
        let mut rows: Vec<Vec<u8>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| perm[usize::from(x) - 1]).collect())
            .collect();
        for (c, &h) in self.shape.column_lengths().iter().enumerate() {
            let mut col: Vec<u8> = (0..h).map(|r| rows[r][c]).collect();
            col.sort_unstable();
            for (r, v) in col.into_iter().enumerate() {
                rows[r][c] = v;
            }
        }
        let f = SemistandardFilling {
            shape: self.shape.clone(),
            rows,
        };
        f.is_semistandard().then_some(f)
    }
}

impl fmt::Display for SemistandardFilling {
    /// Row-major entry list, e.g. `(3,1,1,1):[1,1,1;2;3;4]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = self.rows.iter().map(|r| r.iter().join(",")).join(";");
        write!(f, "{}:[{}]", self.shape, body)
    }
}

impl FromStr for SemistandardFilling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (shape, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("bad filling '{s}'")))?;
        let shape: Partition = shape.parse()?;
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| Error::Invalid(format!("bad filling body in '{s}'")))?;
        let rows = body
            .split(';')
            .map(|r| {
                r.split(',')
                    .map(|x| x.trim().parse::<u8>())
                    .collect::<std::result::Result<Vec<_>, _>>()
            })
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::Invalid(format!("bad filling '{s}': {e}")))?;
        SemistandardFilling::new(shape, rows)
    }
}

/// All semistandard fillings of `shape` with entries in `1..=max_entry`, in
/// lexicographic order of their row-major entry lists.
pub fn enumerate_ssyt(shape: &Partition, max_entry: usize) -> Vec<SemistandardFilling> {
    let cells: Vec<(usize, usize)> = shape.cells().collect();
    let col_len = shape.column_lengths();
    let mut rows: Vec<Vec<u8>> = shape
        .parts()
        .iter()
        .map(|&p| vec![0u8; p as usize])
        .collect();
    let mut out = Vec::new();
    if shape.length() > max_entry {
        return out;
    }

    fn rec(
        pos: usize,
        cells: &[(usize, usize)],
        col_len: &[usize],
        max: usize,
        rows: &mut Vec<Vec<u8>>,
        shape: &Partition,
        out: &mut Vec<SemistandardFilling>,
    ) {
        if pos == cells.len() {
            out.push(SemistandardFilling {
                shape: shape.clone(),
                rows: rows.clone(),
            });
            return;
        }
        let (r, c) = cells[pos];
        let left = if c > 0 { rows[r][c - 1] as usize } else { 1 };
        let above = if r > 0 { rows[r - 1][c] as usize + 1 } else { 1 };
        let lo = left.max(above);
        // room for the strictly increasing cells still below in this column
        let hi = max - (col_len[c] - r - 1);
        for v in lo..=hi {
            rows[r][c] = v as u8;
            rec(pos + 1, cells, col_len, max, rows, shape, out);
        }
    }

    rec(0, &cells, &col_len, max_entry, &mut rows, shape, &mut out);
    out
}

/// Representatives of the classes of semistandard fillings under renaming entries
/// by a permutation of `1..=n` followed by sorting columns. Each class representative
/// is its first member in [`enumerate_ssyt`] order.
pub fn relabel_class_representatives(shape: &Partition, n: usize) -> Vec<SemistandardFilling> {
    let all = enumerate_ssyt(shape, n);
    let mut covered: HashSet<SemistandardFilling> = HashSet::new();
    let mut reps = Vec::new();
    let perms: Vec<Vec<u8>> = (1..=n as u8).permutations(n).collect();
    for f in all {
        if covered.contains(&f) {
            continue;
        }
        for p in &perms {
            if let Some(g) = f.relabel(p) {
                covered.insert(g);
            }
        }
        reps.push(f);
    }
    reps
}

/// One filling per dominant weight (weakly decreasing content counts) that occurs
/// for `shape` in `1..=n`: the first such filling in [`enumerate_ssyt`] order.
/// Every weight of the Schur module is a permutation of one of these.
pub fn weight_class_representatives(shape: &Partition, n: usize) -> Vec<SemistandardFilling> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    enumerate_ssyt(shape, n)
        .into_iter()
        .filter(|f| {
            let w = f.weight(n);
            w.windows(2).all(|p| p[0] >= p[1]) && seen.insert(w)
        })
        .collect()
}
