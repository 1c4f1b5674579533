//! Generalized Cartan matrices.
//!
//! Entry `(i, j)` is the pairing `⟨α_i, α̌_j⟩` of the i-th simple root with the
//! j-th simple coroot. Only finite index sets are supported.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcmError {
    Empty,
    NotSquare { row: usize, len: usize, expected: usize },
    LabelCount { labels: usize, rows: usize },
    DuplicateLabel(String),
    DiagonalNotTwo { index: usize, value: i64 },
    PositiveOffDiagonal { row: usize, col: usize, value: i64 },
    AsymmetricZero { row: usize, col: usize },
}

impl GcmError {
    pub fn name(&self) -> &'static str {
        match self {
            GcmError::Empty => "Empty",
            GcmError::NotSquare { .. } => "NotSquare",
            GcmError::LabelCount { .. } => "LabelCount",
            GcmError::DuplicateLabel(_) => "DuplicateLabel",
            GcmError::DiagonalNotTwo { .. } => "DiagonalNotTwo",
            GcmError::PositiveOffDiagonal { .. } => "PositiveOffDiagonal",
            GcmError::AsymmetricZero { .. } => "AsymmetricZero",
        }
    }
}

impl fmt::Display for GcmError {
    // Index pairs are rendered 1-based, matching row/column numbering in input files.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GcmError::Empty => write!(f, "matrix has no rows"),
            GcmError::NotSquare { row, len, expected } => {
                write!(f, "row {} has {} entries, expected {}", row + 1, len, expected)
            }
            GcmError::LabelCount { labels, rows } => {
                write!(f, "{labels} labels for {rows} rows")
            }
            GcmError::DuplicateLabel(l) => write!(f, "duplicate label {l:?}"),
            GcmError::DiagonalNotTwo { index, value } => {
                write!(f, "diagonal entry ({0},{0}) is {1}, expected 2", index + 1, value)
            }
            GcmError::PositiveOffDiagonal { row, col, value } => {
                write!(f, "off-diagonal entry ({},{}) is positive ({})", row + 1, col + 1, value)
            }
            GcmError::AsymmetricZero { row, col } => write!(
                f,
                "entry ({},{}) and its transpose disagree on being zero",
                row + 1,
                col + 1
            ),
        }
    }
}

impl core::error::Error for GcmError {}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CartanMatrix {
    labels: Vec<String>,
    entries: Vec<i64>,
    rank: usize,
}

impl CartanMatrix {
    /// Validates the three axioms: diagonal 2, nonpositive off-diagonal,
    /// and a symmetric zero pattern.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        let rank = rows.len();
        if rank == 0 {
            return Err(GcmError::Empty);
        }
        if labels.len() != rank {
            return Err(GcmError::LabelCount { labels: labels.len(), rows: rank });
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(GcmError::DuplicateLabel(l.clone()));
            }
        }
        let mut entries = Vec::with_capacity(rank * rank);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != rank {
                return Err(GcmError::NotSquare { row: i, len: row.len(), expected: rank });
            }
            entries.extend_from_slice(row);
        }
        let at = |i: usize, j: usize| entries[i * rank + j];
        for i in 0..rank {
            if at(i, i) != 2 {
                return Err(GcmError::DiagonalNotTwo { index: i, value: at(i, i) });
            }
            for j in 0..rank {
                if i == j {
                    continue;
                }
                if at(i, j) > 0 {
                    return Err(GcmError::PositiveOffDiagonal { row: i, col: j, value: at(i, j) });
                }
                if (at(i, j) == 0) != (at(j, i) == 0) {
                    return Err(GcmError::AsymmetricZero { row: i, col: j });
                }
            }
        }
        Ok(CartanMatrix { labels, entries, rank })
    }

    /// Same as [`CartanMatrix::new`] with labels `1..=n`.
    pub fn unlabeled(rows: Vec<Vec<i64>>) -> Result<Self, GcmError> {
        let labels = (1..=rows.len()).map(|i| alloc::format!("{i}")).collect();
        Self::new(labels, rows)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.rank + j]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.rank).map(|r| r.to_vec()).collect()
    }

    /// The principal submatrix on `indices`, keeping their labels.
    pub fn restrict(&self, indices: &[usize]) -> CartanMatrix {
        let labels = indices.iter().map(|&i| self.labels[i].clone()).collect();
        let mut entries = Vec::with_capacity(indices.len() * indices.len());
        for &i in indices {
            for &j in indices {
                entries.push(self.entry(i, j));
            }
        }
        CartanMatrix { labels, entries, rank: indices.len() }
    }

    /// Coxeter matrix entry from the product of paired Cartan entries:
    /// 0, 1, 2, 3 give 2, 3, 4, 6; anything larger gives `None` (infinite order).
    pub fn coxeter_entry(&self, i: usize, j: usize) -> Option<u32> {
        if i == j {
            return Some(1);
        }
        coxeter_from_product(self.entry(i, j) * self.entry(j, i))
    }

    /// Connected components of the graph with an edge wherever the entry is nonzero.
    /// Each block is sorted, and blocks are ordered by their smallest index.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.rank];
        let mut blocks = Vec::new();
        for start in 0..self.rank {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut block = alloc::vec![start];
            let mut k = 0;
            while k < block.len() {
                let i = block[k];
                for j in 0..self.rank {
                    if !seen[j] && self.entry(i, j) != 0 {
                        seen[j] = true;
                        block.push(j);
                    }
                }
                k += 1;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        blocks
    }
}

pub(crate) fn coxeter_from_product(p: i64) -> Option<u32> {
    match p {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}
