use std::fmt;

use crate::error::{Error, Result};
use crate::rep::{Partition, SemistandardFilling};

/// How the cells of a diagram are numbered as tensor slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SlotOrder {
    /// Slots `1..d` run along rows, top to bottom.
    RowMajor,
    /// Slots run down columns, left to right.
    ColumnMajor,
    /// Explicit slot (1-based) of each cell, cells in row-major order.
    Explicit(Vec<usize>),
}

impl SlotOrder {
    pub fn slots(&self, shape: &Partition) -> Result<Vec<usize>> {
        let d = shape.size() as usize;
        let slots = match self {
            SlotOrder::RowMajor => (1..=d).collect(),
            SlotOrder::ColumnMajor => {
                let mut slots = vec![0; d];
                let mut next = 1;
                for (c, &h) in shape.column_lengths().iter().enumerate() {
                    for r in 0..h {
                        slots[shape.cell_position(r, c)] = next;
                        next += 1;
                    }
                }
                slots
            }
            SlotOrder::Explicit(s) => s.clone(),
        };
        let mut seen = vec![false; d + 1];
        if slots.len() != d
            || slots
                .iter()
                .any(|&s| s == 0 || s > d || std::mem::replace(&mut seen[s], true))
        {
            return Err(Error::Invalid(format!(
                "slot assignment {slots:?} is not a bijection onto 1..={d}"
            )));
        }
        Ok(slots)
    }
}

impl fmt::Display for SlotOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SlotOrder::RowMajor => write!(f, "row-major"),
            SlotOrder::ColumnMajor => write!(f, "column-major"),
            SlotOrder::Explicit(s) => {
                let parts: Vec<String> = s.iter().map(usize::to_string).collect();
                write!(f, "{}", parts.join("."))
            }
        }
    }
}

/// A Young diagram whose cells carry both a tensor slot and a basis index.
///
/// The slots say which tensor factors the symmetrizer permutes together; the
/// content (a semistandard filling) is the pre-highest-weight vector placed in
/// those slots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositionTableau {
    content: SemistandardFilling,
    slot_of_cell: Vec<usize>,
}

impl PositionTableau {
    pub fn new(content: SemistandardFilling, order: &SlotOrder) -> Result<Self> {
        let slot_of_cell = order.slots(content.shape())?;
        Ok(PositionTableau {
            content,
            slot_of_cell,
        })
    }

    pub fn row_major(content: SemistandardFilling) -> Self {
        Self::new(content, &SlotOrder::RowMajor).expect("row-major slots are a bijection")
    }

    pub fn shape(&self) -> &Partition {
        self.content.shape()
    }

    pub fn content(&self) -> &SemistandardFilling {
        &self.content
    }

    /// Slot (1-based) of each cell, row-major cell order.
    pub fn slots(&self) -> &[usize] {
        &self.slot_of_cell
    }

    pub fn degree(&self) -> usize {
        self.slot_of_cell.len()
    }

    /// Basis index placed in each slot (index 0 is slot 1).
    pub fn slot_assignment(&self) -> Vec<u8> {
        let mut v = vec![0u8; self.degree()];
        for (cell, &x) in self.content.entries().iter().enumerate() {
            v[self.slot_of_cell[cell] - 1] = x;
        }
        v
    }

    /// Slots (0-based) of each row.
    pub fn row_slots(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        shape
            .parts()
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                (0..len as usize)
                    .map(|c| self.slot_of_cell[shape.cell_position(r, c)] - 1)
                    .collect()
            })
            .collect()
    }

    /// Slots (0-based) of each column.
    pub fn column_slots(&self) -> Vec<Vec<usize>> {
        let shape = self.shape();
        shape
            .column_lengths()
            .iter()
            .enumerate()
            .map(|(c, &h)| {
                (0..h)
                    .map(|r| self.slot_of_cell[shape.cell_position(r, c)] - 1)
                    .collect()
            })
            .collect()
    }
}
