//! Bipartitions of the qubits and the coefficient matrix C_{S(S̄)}.

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::state::{check_qubits, PureState};

/// Ordered bipartition: row block `S` as written, column block ascending.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    n: usize,
    row_block: Vec<usize>,
    col_block: Vec<usize>,
}

impl Partition {
    /// Row block given as 1-based qubit indices; the column block is the
    /// ascending complement.
    pub fn new(n: usize, row_block: Vec<usize>) -> Result<Self> {
        let label = || {
            row_block
                .iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        check_qubits(n)?;
        if row_block.is_empty() || row_block.len() >= n {
            return Err(Error::InvalidPartition {
                text: label(),
                reason: "each side needs at least one qubit".into(),
            });
        }
        let mut seen = vec![false; n + 1];
        for &q in &row_block {
            if q == 0 || q > n {
                return Err(Error::InvalidPartition {
                    text: label(),
                    reason: format!("index {q} out of range 1..={n}"),
                });
            }
            if seen[q] {
                return Err(Error::InvalidPartition {
                    text: label(),
                    reason: format!("duplicate index {q}"),
                });
            }
            seen[q] = true;
        }
        let col_block = (1..=n).filter(|&q| !seen[q]).collect();
        Ok(Self {
            n,
            row_block,
            col_block,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn row_block(&self) -> &[usize] {
        &self.row_block
    }

    pub fn col_block(&self) -> &[usize] {
        &self.col_block
    }

    /// Number of qubits on the row side; F is 2^i x 2^i.
    pub fn row_size(&self) -> usize {
        self.row_block.len()
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.n >= 10 { "," } else { "" };
        let join = |b: &[usize]| {
            b.iter()
                .map(|q| q.to_string())
                .collect::<Vec<_>>()
                .join(sep)
        };
        write!(f, "{}|{}", join(&self.row_block), join(&self.col_block))
    }
}

/// Parses `"12|34"` or `"1,2|3,4"`. Both sides must be listed; the column
/// side may be written in any order and is stored ascending.
pub fn parse_partition(text: &str, n: usize) -> Result<Partition> {
    let bad = |reason: String| Error::InvalidPartition {
        text: text.to_string(),
        reason,
    };
    let (lhs, rhs) = text
        .split_once('|')
        .ok_or_else(|| bad("expected '<row qubits>|<column qubits>'".into()))?;
    let side = |s: &str| -> Result<Vec<usize>> {
        let s = s.trim();
        if s.is_empty() {
            return Err(bad("empty side".into()));
        }
        let parts: Vec<&str> = if s.contains(',') {
            s.split(',').map(str::trim).collect()
        } else {
            s.split("").filter(|p| !p.is_empty()).collect()
        };
        parts
            .iter()
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| bad(format!("'{p}' is not a qubit index")))
            })
            .collect()
    };
    let rows = side(lhs)?;
    let cols = side(rhs)?;

    let mut seen = vec![false; n + 1];
    for &q in rows.iter().chain(&cols) {
        if q == 0 || q > n {
            return Err(bad(format!("index {q} out of range 1..={n}")));
        }
        if seen[q] {
            return Err(bad(format!("duplicate index {q}")));
        }
        seen[q] = true;
    }
    if let Some(q) = (1..=n).find(|&q| !seen[q]) {
        return Err(bad(format!("qubit {q} missing")));
    }
    Partition::new(n, rows).map_err(|e| match e {
        Error::InvalidPartition { reason, .. } => bad(reason),
        other => other,
    })
}

/// The state's amplitudes reshaped by a bipartition.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffMatrix {
    pub partition: Partition,
    pub entries: CMatrix,
}

/// Basis index `k` assembled from a row index and a column index.
///
/// The first qubit of the row block is the most significant bit of `row`;
/// likewise for the (ascending) column block and `col`.
pub(crate) fn interleave(p: &Partition, row: usize, col: usize) -> usize {
    let n = p.n;
    let mut k = 0usize;
    let i = p.row_block.len();
    for (pos, &q) in p.row_block.iter().enumerate() {
        let bit = (row >> (i - 1 - pos)) & 1;
        k |= bit << (n - q);
    }
    let j = p.col_block.len();
    for (pos, &q) in p.col_block.iter().enumerate() {
        let bit = (col >> (j - 1 - pos)) & 1;
        k |= bit << (n - q);
    }
    k
}

pub fn build_coeff_matrix(s: &PureState, p: &Partition) -> Result<CoeffMatrix> {
    if s.n() != p.n {
        return Err(Error::ArityMismatch {
            expected: p.n,
            got: s.n(),
        });
    }
    let rows = 1usize << p.row_block.len();
    let cols = 1usize << p.col_block.len();
    let mut data = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            data.push(s.amp(interleave(p, r, c)));
        }
    }
    Ok(CoeffMatrix {
        partition: p.clone(),
        entries: CMatrix::from_row_major(rows, cols, data),
    })
}
