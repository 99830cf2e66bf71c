//! Dense integer matrices and the exact linear algebra the crate rests on.
//!
//! Everything here is exact.  Determinants use fraction-free (Bareiss)
//! elimination over `i64` with checked arithmetic, rank is computed the
//! same way over the rationals or by bitmask elimination over GF(2), and
//! no float is ever involved.  Overflow is a reported error, never a
//! silent wrap; at the scale this crate targets (entries in {-1, 0, +1},
//! dimensions in the tens) it cannot actually occur, but the guarantee is
//! part of the contract.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Errors produced by exact matrix operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatrixError {
    /// The flat data vector does not match the requested shape.
    #[error("matrix data has {got} entries, expected {rows}x{cols} = {expected}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    /// A square matrix was required.
    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NonSquare { rows: usize, cols: usize },
    /// Checked `i64` arithmetic overflowed during elimination.
    #[error("integer overflow during exact elimination")]
    Overflow,
    /// An index was out of range for the matrix dimension it addresses.
    #[error("index {index} out of range for dimension {bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    /// An index-set vector was not strictly increasing.
    #[error("index set is not strictly increasing at position {position}")]
    NotIncreasing { position: usize },
    /// An entry was expected to lie in {-1, 0, +1} but does not.
    #[error("entry ({row},{col}) = {value} is not in {{-1, 0, +1}}")]
    NotSignedUnit { row: usize, col: usize, value: i64 },
    /// A pivot was requested on a zero entry.
    #[error("pivot entry ({row},{col}) is zero")]
    ZeroPivot { row: usize, col: usize },
    /// A claimed permutation vector is not a bijection on 0..n.
    #[error("vector is not a permutation of 0..{expected}")]
    NotPermutation { expected: usize },
    /// A scaling vector contains something other than +1 or -1.
    #[error("sign vector entry {index} = {value}, must be +1 or -1")]
    BadSign { index: usize, value: i64 },
    /// The plain-text matrix format could not be parsed.
    #[error("matrix text: {0}")]
    Parse(String),
}

/// A strictly increasing set of `usize` indices.
///
/// Used to address submatrices unambiguously: the order of rows and
/// columns in an extracted submatrix is always the natural one, so a
/// witness can be replayed byte-for-byte.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    /// Wraps a strictly increasing vector of indices.
    pub fn new(indices: Vec<usize>) -> Result<Self, MatrixError> {
        for position in 1..indices.len() {
            if indices[position - 1] >= indices[position] {
                return Err(MatrixError::NotIncreasing { position });
            }
        }
        Ok(IndexSet { indices })
    }

    /// The set 0, 1, ..., n-1.
    pub fn full(n: usize) -> Self {
        IndexSet {
            indices: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.indices
    }

    pub fn iter(&self) -> std::slice::Iter<'_, usize> {
        self.indices.iter()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.indices.binary_search(&index).is_ok()
    }

    /// Position of `index` within the set, if present.
    pub fn position_of(&self, index: usize) -> Option<usize> {
        self.indices.binary_search(&index).ok()
    }

    /// Largest member, if any.
    pub fn max(&self) -> Option<usize> {
        self.indices.last().copied()
    }
}

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = MatrixError;

    fn try_from(indices: Vec<usize>) -> Result<Self, MatrixError> {
        IndexSet::new(indices)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(set: IndexSet) -> Vec<usize> {
        set.indices
    }
}

/// A dense row-major matrix with `i64` entries.
///
/// Serialized (in JSON and on the command line) as the plain-text format
/// produced by [`IntMatrix::to_text`]: a header line `rows cols` followed
/// by one whitespace-separated line per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:2}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        IntMatrix::from_text(&text).map_err(D::Error::custom)
    }
}

impl IntMatrix {
    /// Builds a matrix from row-major data.
    pub fn new(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self, MatrixError> {
        let expected = rows.checked_mul(cols).ok_or(MatrixError::Overflow)?;
        if data.len() != expected {
            return Err(MatrixError::ShapeMismatch {
                rows,
                cols,
                expected,
                got: data.len(),
            });
        }
        Ok(IntMatrix { rows, cols, data })
    }

    /// The all-zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from nested rows; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, MatrixError> {
        let row_count = rows.len();
        let col_count = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(row_count * col_count);
        for row in rows {
            if row.len() != col_count {
                return Err(MatrixError::ShapeMismatch {
                    rows: row_count,
                    cols: col_count,
                    expected: row_count * col_count,
                    got: row_count * row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(IntMatrix {
            rows: row_count,
            cols: col_count,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i64 {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        debug_assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col] = value;
    }

    /// One row as a slice.
    pub fn row(&self, row: usize) -> &[i64] {
        debug_assert!(row < self.rows);
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    /// One column, collected.
    pub fn col(&self, col: usize) -> Vec<i64> {
        debug_assert!(col < self.cols);
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    /// True when every entry lies in {-1, 0, +1}.
    pub fn is_signed_unit(&self) -> bool {
        self.signed_unit_violation().is_none()
    }

    /// First entry (row-major) outside {-1, 0, +1}, if any.
    pub fn signed_unit_violation(&self) -> Option<(usize, usize, i64)> {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v.abs() > 1 {
                    return Some((r, c, v));
                }
            }
        }
        None
    }

    /// Number of nonzero entries.
    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    /// All nonzero positions in row-major order.
    pub fn nonzero_positions(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) != 0 {
                    out.push((r, c));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Copy with one entry replaced.
    pub fn with_entry(&self, row: usize, col: usize, value: i64) -> IntMatrix {
        let mut out = self.clone();
        out.set(row, col, value);
        out
    }

    /// Extracts the submatrix indexed by `rows` x `cols`, preserving the
    /// natural order of both index sets.
    pub fn submatrix(&self, rows: &IndexSet, cols: &IndexSet) -> Result<IntMatrix, MatrixError> {
        if let Some(&max) = rows.as_slice().last() {
            if max >= self.rows {
                return Err(MatrixError::IndexOutOfRange {
                    index: max,
                    bound: self.rows,
                });
            }
        }
        if let Some(&max) = cols.as_slice().last() {
            if max >= self.cols {
                return Err(MatrixError::IndexOutOfRange {
                    index: max,
                    bound: self.cols,
                });
            }
        }
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &r in rows.iter() {
            for &c in cols.iter() {
                data.push(self.get(r, c));
            }
        }
        IntMatrix::new(rows.len(), cols.len(), data)
    }

    /// Stacks `self` above `other` (column counts must agree).
    pub fn vstack(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.cols {
            return Err(MatrixError::ShapeMismatch {
                rows: self.rows + other.rows,
                cols: self.cols,
                expected: (self.rows + other.rows) * self.cols,
                got: self.data.len() + other.data.len(),
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        IntMatrix::new(self.rows + other.rows, self.cols, data)
    }

    /// Places `self` left of `other` (row counts must agree).
    pub fn hstack(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows {
            return Err(MatrixError::ShapeMismatch {
                rows: self.rows,
                cols: self.cols + other.cols,
                expected: self.rows * (self.cols + other.cols),
                got: self.data.len() + other.data.len(),
            });
        }
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c));
            }
            for c in 0..other.cols {
                out.set(r, self.cols + c, other.get(r, c));
            }
        }
        Ok(out)
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every intermediate value is a minor of the input, so for
    /// {-1, 0, +1} matrices the numbers stay small; all products and the
    /// exact divisions are checked and report [`MatrixError::Overflow`]
    /// rather than wrapping.
    pub fn det(&self) -> Result<i64, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(1);
        }
        let mut a = self.data.clone();
        let mut sign = 1i64;
        let mut prev = 1i64;
        for k in 0..n - 1 {
            // Find a nonzero pivot in column k at or below row k.
            let pivot_row = match (k..n).find(|&r| a[r * n + k] != 0) {
                Some(r) => r,
                None => return Ok(0),
            };
            if pivot_row != k {
                for c in 0..n {
                    a.swap(k * n + c, pivot_row * n + c);
                }
                sign = -sign;
            }
            let pivot = a[k * n + k];
            for r in k + 1..n {
                for c in k + 1..n {
                    let numer = pivot
                        .checked_mul(a[r * n + c])
                        .and_then(|x| {
                            a[r * n + k]
                                .checked_mul(a[k * n + c])
                                .and_then(|y| x.checked_sub(y))
                        })
                        .ok_or(MatrixError::Overflow)?;
                    // Bareiss guarantees exactness of this division.
                    a[r * n + c] = numer / prev;
                }
                a[r * n + k] = 0;
            }
            prev = pivot;
        }
        a[(n - 1) * n + (n - 1)]
            .checked_mul(sign)
            .ok_or(MatrixError::Overflow)
    }

    /// Rank over the rationals, by fraction-free elimination.
    pub fn rank(&self) -> Result<usize, MatrixError> {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0usize;
        let mut prev = 1i64;
        let mut pivot_col = 0usize;
        while rank < rows && pivot_col < cols {
            let pivot_row = match (rank..rows).find(|&r| a[r * cols + pivot_col] != 0) {
                Some(r) => r,
                None => {
                    pivot_col += 1;
                    continue;
                }
            };
            if pivot_row != rank {
                for c in 0..cols {
                    a.swap(rank * cols + c, pivot_row * cols + c);
                }
            }
            let pivot = a[rank * cols + pivot_col];
            for r in rank + 1..rows {
                for c in pivot_col + 1..cols {
                    let numer = pivot
                        .checked_mul(a[r * cols + c])
                        .and_then(|x| {
                            a[r * cols + pivot_col]
                                .checked_mul(a[rank * cols + c])
                                .and_then(|y| x.checked_sub(y))
                        })
                        .ok_or(MatrixError::Overflow)?;
                    a[r * cols + c] = numer / prev;
                }
                a[r * cols + pivot_col] = 0;
            }
            prev = pivot;
            rank += 1;
            pivot_col += 1;
        }
        Ok(rank)
    }

    /// Rank over GF(2) (entries reduced mod 2), by bitmask elimination.
    pub fn gf2_rank(&self) -> usize {
        let words = self.cols.div_ceil(64).max(1);
        let mut rows: Vec<Vec<u64>> = (0..self.rows)
            .map(|r| {
                let mut mask = vec![0u64; words];
                for c in 0..self.cols {
                    if self.get(r, c).rem_euclid(2) == 1 {
                        mask[c / 64] |= 1u64 << (c % 64);
                    }
                }
                mask
            })
            .collect();
        let mut rank = 0usize;
        for c in 0..self.cols {
            let (word, bit) = (c / 64, 1u64 << (c % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][word] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[word] & bit != 0 {
                    for w in 0..words {
                        row[w] ^= pivot_row[w];
                    }
                }
            }
            rank += 1;
            if rank == rows.len() {
                break;
            }
        }
        rank
    }

    /// Applies a simultaneous row/column permutation and signing:
    /// `out[i][j] = row_signs[i] * col_signs[j] * self[row_perm[i]][col_perm[j]]`.
    pub fn permute_scale(&self, map: &PermuteScale) -> Result<IntMatrix, MatrixError> {
        map.validate(self.rows, self.cols)?;
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(
                    i,
                    j,
                    map.row_signs[i]
                        * map.col_signs[j]
                        * self.get(map.row_perm[i], map.col_perm[j]),
                );
            }
        }
        Ok(out)
    }

    /// Pivots on a nonzero entry `(row, col)`, the operation that walks
    /// between equivalent matroid representations.
    ///
    /// With `e = self[row][col]` (which must be +1 or -1 for the result
    /// to stay within {-1, 0, +1}), the image has `e` at the pivot,
    /// `e * self[row][j]` along the pivot row, `-e * self[i][col]` along
    /// the pivot column, and `self[i][j] - e * self[i][col] * self[row][j]`
    /// elsewhere.  For a unit pivot the operation is an involution.
    pub fn pivot(&self, row: usize, col: usize) -> Result<IntMatrix, MatrixError> {
        if row >= self.rows {
            return Err(MatrixError::IndexOutOfRange {
                index: row,
                bound: self.rows,
            });
        }
        if col >= self.cols {
            return Err(MatrixError::IndexOutOfRange {
                index: col,
                bound: self.cols,
            });
        }
        let e = self.get(row, col);
        if e == 0 {
            return Err(MatrixError::ZeroPivot { row, col });
        }
        let mut out = IntMatrix::zero(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let value = if i == row && j == col {
                    e
                } else if i == row {
                    self.get(row, j)
                        .checked_mul(e)
                        .ok_or(MatrixError::Overflow)?
                } else if j == col {
                    self.get(i, col)
                        .checked_mul(-e)
                        .ok_or(MatrixError::Overflow)?
                } else {
                    self.get(i, col)
                        .checked_mul(self.get(row, j))
                        .and_then(|p| p.checked_mul(e))
                        .and_then(|p| self.get(i, j).checked_sub(p))
                        .ok_or(MatrixError::Overflow)?
                };
                out.set(i, j, value);
            }
        }
        Ok(out)
    }

    /// Applies one growth step (see [`Extension`]).
    pub fn extend(&self, ext: &Extension) -> Result<IntMatrix, MatrixError> {
        match *ext {
            Extension::Transpose => Ok(self.transpose()),
            Extension::ZeroRow { at } => self.insert_row(at, |_| 0),
            Extension::ZeroCol { at } => self.insert_col(at, |_| 0),
            Extension::UnitRow { at, unit_col, sign } => {
                check_sign(sign)?;
                if unit_col >= self.cols {
                    return Err(MatrixError::IndexOutOfRange {
                        index: unit_col,
                        bound: self.cols,
                    });
                }
                self.insert_row(at, |c| if c == unit_col { sign } else { 0 })
            }
            Extension::UnitCol { at, unit_row, sign } => {
                check_sign(sign)?;
                if unit_row >= self.rows {
                    return Err(MatrixError::IndexOutOfRange {
                        index: unit_row,
                        bound: self.rows,
                    });
                }
                self.insert_col(at, |r| if r == unit_row { sign } else { 0 })
            }
            Extension::DupRow { source, at, sign } => {
                check_sign(sign)?;
                if source >= self.rows {
                    return Err(MatrixError::IndexOutOfRange {
                        index: source,
                        bound: self.rows,
                    });
                }
                self.insert_row(at, |c| sign * self.get(source, c))
            }
            Extension::DupCol { source, at, sign } => {
                check_sign(sign)?;
                if source >= self.cols {
                    return Err(MatrixError::IndexOutOfRange {
                        index: source,
                        bound: self.cols,
                    });
                }
                self.insert_col(at, |r| sign * self.get(r, source))
            }
        }
    }

    fn insert_row(
        &self,
        at: usize,
        entry: impl Fn(usize) -> i64,
    ) -> Result<IntMatrix, MatrixError> {
        if at > self.rows {
            return Err(MatrixError::IndexOutOfRange {
                index: at,
                bound: self.rows + 1,
            });
        }
        let mut out = IntMatrix::zero(self.rows + 1, self.cols);
        for r in 0..self.rows + 1 {
            for c in 0..self.cols {
                let value = match r.cmp(&at) {
                    std::cmp::Ordering::Less => self.get(r, c),
                    std::cmp::Ordering::Equal => entry(c),
                    std::cmp::Ordering::Greater => self.get(r - 1, c),
                };
                out.set(r, c, value);
            }
        }
        Ok(out)
    }

    fn insert_col(
        &self,
        at: usize,
        entry: impl Fn(usize) -> i64,
    ) -> Result<IntMatrix, MatrixError> {
        if at > self.cols {
            return Err(MatrixError::IndexOutOfRange {
                index: at,
                bound: self.cols + 1,
            });
        }
        let mut out = IntMatrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols + 1 {
                let value = match c.cmp(&at) {
                    std::cmp::Ordering::Less => self.get(r, c),
                    std::cmp::Ordering::Equal => entry(r),
                    std::cmp::Ordering::Greater => self.get(r, c - 1),
                };
                out.set(r, c, value);
            }
        }
        Ok(out)
    }

    /// Renders the plain-text format: `rows cols` header, then one line
    /// of whitespace-separated entries per row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let line: Vec<String> = self.row(r).iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parses the plain-text format.  Blank lines and lines starting with
    /// `#` are ignored; entries may be split across lines arbitrarily.
    pub fn from_text(text: &str) -> Result<IntMatrix, MatrixError> {
        let mut tokens = text
            .lines()
            .filter(|line| !line.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace);
        let mut dim = |name: &str| -> Result<usize, MatrixError> {
            tokens
                .next()
                .ok_or_else(|| MatrixError::Parse(format!("missing {name}")))?
                .parse::<usize>()
                .map_err(|e| MatrixError::Parse(format!("bad {name}: {e}")))
        };
        let rows = dim("row count")?;
        let cols = dim("column count")?;
        let expected = rows
            .checked_mul(cols)
            .ok_or_else(|| MatrixError::Parse("dimensions overflow".into()))?;
        let mut data = Vec::with_capacity(expected);
        for token in tokens.by_ref() {
            if data.len() == expected {
                return Err(MatrixError::Parse(format!(
                    "trailing token {token:?} after {expected} entries"
                )));
            }
            let value = token
                .parse::<i64>()
                .map_err(|e| MatrixError::Parse(format!("bad entry {token:?}: {e}")))?;
            data.push(value);
        }
        if data.len() != expected {
            return Err(MatrixError::Parse(format!(
                "expected {expected} entries, found {}",
                data.len()
            )));
        }
        IntMatrix::new(rows, cols, data)
    }
}

fn check_sign(sign: i64) -> Result<(), MatrixError> {
    if sign == 1 || sign == -1 {
        Ok(())
    } else {
        Err(MatrixError::BadSign {
            index: 0,
            value: sign,
        })
    }
}

/// One growth step that preserves total and strong unimodularity:
/// transposing, inserting a zero row/column, a signed unit row/column,
/// or a signed duplicate of an existing row/column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    /// Swap the roles of rows and columns.
    Transpose,
    /// Insert an all-zero row so it becomes row `at`.
    ZeroRow { at: usize },
    /// Insert an all-zero column so it becomes column `at`.
    ZeroCol { at: usize },
    /// Insert a row that is zero except for `sign` in column `unit_col`.
    UnitRow {
        at: usize,
        unit_col: usize,
        sign: i64,
    },
    /// Insert a column that is zero except for `sign` in row `unit_row`.
    UnitCol {
        at: usize,
        unit_row: usize,
        sign: i64,
    },
    /// Insert `sign` times row `source` so it becomes row `at`.
    DupRow { source: usize, at: usize, sign: i64 },
    /// Insert `sign` times column `source` so it becomes column `at`.
    DupCol { source: usize, at: usize, sign: i64 },
}

/// A row/column permutation combined with row/column signings.
///
/// Applying it via [`IntMatrix::permute_scale`] computes
/// `out[i][j] = row_signs[i] * col_signs[j] * m[row_perm[i]][col_perm[j]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermuteScale {
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
    pub row_signs: Vec<i64>,
    pub col_signs: Vec<i64>,
}

impl PermuteScale {
    /// The identity map for an `rows` x `cols` matrix.
    pub fn identity(rows: usize, cols: usize) -> Self {
        PermuteScale {
            row_perm: (0..rows).collect(),
            col_perm: (0..cols).collect(),
            row_signs: vec![1; rows],
            col_signs: vec![1; cols],
        }
    }

    fn validate(&self, rows: usize, cols: usize) -> Result<(), MatrixError> {
        check_perm(&self.row_perm, rows)?;
        check_perm(&self.col_perm, cols)?;
        check_signs(&self.row_signs, rows)?;
        check_signs(&self.col_signs, cols)?;
        Ok(())
    }
}

fn check_perm(perm: &[usize], n: usize) -> Result<(), MatrixError> {
    if perm.len() != n {
        return Err(MatrixError::NotPermutation { expected: n });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(MatrixError::NotPermutation { expected: n });
        }
        seen[p] = true;
    }
    Ok(())
}

fn check_signs(signs: &[i64], n: usize) -> Result<(), MatrixError> {
    if signs.len() != n {
        return Err(MatrixError::BadSign {
            index: signs.len(),
            value: 0,
        });
    }
    for (index, &value) in signs.iter().enumerate() {
        if value != 1 && value != -1 {
            return Err(MatrixError::BadSign { index, value });
        }
    }
    Ok(())
}

/// Searches for a [`PermuteScale`] `m` with `b == a.permute_scale(m)`.
///
/// Backtracks over row assignments (pruned by sorted absolute-value row
/// signatures), then column assignments (pruned entrywise), and finally
/// solves for consistent signs by two-coloring the nonzero pattern.
/// Exhaustive, so intended for the small matrices this crate works with.
pub fn find_permute_scale(a: &IntMatrix, b: &IntMatrix) -> Option<PermuteScale> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return None;
    }
    let signature = |m: &IntMatrix, r: usize| {
        let mut sig: Vec<i64> = m.row(r).iter().map(|v| v.abs()).collect();
        sig.sort_unstable();
        sig
    };
    let a_sigs: Vec<_> = (0..a.rows()).map(|r| signature(a, r)).collect();
    let b_sigs: Vec<_> = (0..b.rows()).map(|r| signature(b, r)).collect();
    let mut row_perm = vec![usize::MAX; a.rows()];
    let mut row_used = vec![false; a.rows()];
    search_rows(a, b, &a_sigs, &b_sigs, 0, &mut row_perm, &mut row_used)
}

fn search_rows(
    a: &IntMatrix,
    b: &IntMatrix,
    a_sigs: &[Vec<i64>],
    b_sigs: &[Vec<i64>],
    at: usize,
    row_perm: &mut Vec<usize>,
    row_used: &mut Vec<bool>,
) -> Option<PermuteScale> {
    if at == b.rows() {
        let mut col_perm = vec![usize::MAX; a.cols()];
        let mut col_used = vec![false; a.cols()];
        return search_cols(a, b, row_perm, 0, &mut col_perm, &mut col_used);
    }
    for candidate in 0..a.rows() {
        if row_used[candidate] || a_sigs[candidate] != b_sigs[at] {
            continue;
        }
        row_perm[at] = candidate;
        row_used[candidate] = true;
        if let Some(found) = search_rows(a, b, a_sigs, b_sigs, at + 1, row_perm, row_used) {
            return Some(found);
        }
        row_used[candidate] = false;
        row_perm[at] = usize::MAX;
    }
    None
}

fn search_cols(
    a: &IntMatrix,
    b: &IntMatrix,
    row_perm: &[usize],
    at: usize,
    col_perm: &mut Vec<usize>,
    col_used: &mut Vec<bool>,
) -> Option<PermuteScale> {
    if at == b.cols() {
        return solve_signs(a, b, row_perm, col_perm);
    }
    'candidates: for candidate in 0..a.cols() {
        if col_used[candidate] {
            continue;
        }
        for i in 0..b.rows() {
            if a.get(row_perm[i], candidate).abs() != b.get(i, at).abs() {
                continue 'candidates;
            }
        }
        col_perm[at] = candidate;
        col_used[candidate] = true;
        if let Some(found) = search_cols(a, b, row_perm, at + 1, col_perm, col_used) {
            return Some(found);
        }
        col_used[candidate] = false;
        col_perm[at] = usize::MAX;
    }
    None
}

/// Given matching permutations, finds signs with
/// `row_signs[i] * col_signs[j] * a[rp[i]][cp[j]] == b[i][j]`, if any.
fn solve_signs(
    a: &IntMatrix,
    b: &IntMatrix,
    row_perm: &[usize],
    col_perm: &[usize],
) -> Option<PermuteScale> {
    let (rows, cols) = (b.rows(), b.cols());
    // Vertices 0..rows are rows, rows..rows+cols are columns.  An edge
    // for each nonzero constrains the product of the two endpoint signs.
    let mut signs: Vec<Option<i64>> = vec![None; rows + cols];
    for start in 0..rows + cols {
        if signs[start].is_some() {
            continue;
        }
        signs[start] = Some(1);
        let mut queue = vec![start];
        while let Some(v) = queue.pop() {
            let sv = signs[v].expect("queued vertices are assigned");
            for u in 0..rows + cols {
                let (r, c) = match (v < rows, u < rows) {
                    (true, false) => (v, u - rows),
                    (false, true) => (u, v - rows),
                    _ => continue,
                };
                let av = a.get(row_perm[r], col_perm[c]);
                if av == 0 {
                    continue;
                }
                // Required product of the two endpoint signs.
                let needed = b.get(r, c) / av;
                let su = needed * sv;
                match signs[u] {
                    None => {
                        signs[u] = Some(su);
                        queue.push(u);
                    }
                    Some(existing) if existing != su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let map = PermuteScale {
        row_perm: row_perm.to_vec(),
        col_perm: col_perm.to_vec(),
        row_signs: (0..rows).map(|i| signs[i].unwrap_or(1)).collect(),
        col_signs: (0..cols).map(|j| signs[rows + j].unwrap_or(1)).collect(),
    };
    match a.permute_scale(&map) {
        Ok(image) if image == *b => Some(map),
        _ => None,
    }
}

/// Iterator over all `k`-subsets of `0..n` in ascending lexicographic
/// order of their sorted index vectors.
pub(crate) struct KSubsets {
    n: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

pub(crate) fn k_subsets(n: usize, k: usize) -> KSubsets {
    KSubsets {
        n,
        k,
        current: (0..k).collect(),
        started: false,
        done: k > n,
    }
}

impl Iterator for KSubsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        // Standard successor: bump the rightmost index that can move.
        let k = self.k;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            if self.current[i] < self.n - (k - i) {
                self.current[i] += 1;
                for j in i + 1..k {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return Some(self.current.clone());
            }
        }
    }
}

/// Iterator over all `k`-subsets of `0..n` in *descending* lexicographic
/// order of their sorted index vectors, starting from `{n-k, .., n-1}`.
pub(crate) struct KSubsetsDesc {
    n: usize,
    k: usize,
    current: Vec<usize>,
    started: bool,
    done: bool,
}

pub(crate) fn k_subsets_desc(n: usize, k: usize) -> KSubsetsDesc {
    KSubsetsDesc {
        n,
        k,
        current: (n.saturating_sub(k)..n).collect(),
        started: false,
        done: k > n,
    }
}

impl Iterator for KSubsetsDesc {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(self.current.clone());
        }
        // Successor = the ascending-lex predecessor: decrement the
        // rightmost index that still has room, then max out its suffix.
        let k = self.k;
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            let floor = if i == 0 { 0 } else { self.current[i - 1] + 1 };
            if self.current[i] > floor {
                self.current[i] -= 1;
                for j in i + 1..k {
                    self.current[j] = self.n - (k - j);
                }
                return Some(self.current.clone());
            }
        }
    }
}
