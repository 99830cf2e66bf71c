//! Composition and decomposition of matrices along 1-, 2- and 3-sums.
//!
//! The sums build a bigger matrix out of two smaller ones:
//!
//! * **1-sum** — the block diagonal `[[A, 0], [0, B]]`.
//! * **2-sum** — from `[A | a]` and `[b; B]` (glue column `a`, glue row
//!   `b`), the matrix `[[A, a*b], [0, B]]` where `a*b` is the outer
//!   product.
//! * **3-sum** — two variants, see [`three_sum`], whose operands carry
//!   duplicated glue lines and marker entries and whose result glues
//!   through a rank-2 connector.
//!
//! Going the other way, [`find_separations`] enumerates the exact 1- and
//! 2-separations of the binary matroid represented by `[I | N]`, read
//! off the matrix as cross-block GF(2) ranks, and [`split`] turns a
//! separation back into sum operands so that composing them recovers the
//! matrix up to row/column permutation.  [`decompose`] recurses to a
//! [`SumNode`] tree whose leaves admit no further 1- or 2-separation.

use crate::exactmat::{IndexSet, IntMatrix, MatrixError};
use serde::{Deserialize, Serialize};

/// Cap on `rows + cols` for the exhaustive separation search.
pub const SEPARATION_GROUND_CAP: usize = 18;

/// Errors from sum composition and decomposition.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KsumError {
    /// An operand does not have the shape the sum requires.
    #[error("operand shape: {0}")]
    Shape(String),
    /// A glue line that must be nonzero is zero.
    #[error("glue {side} of the {operation} is all zero")]
    GlueZero {
        side: &'static str,
        operation: &'static str,
    },
    /// The 2x2 connector of the second 3-sum variant is singular.
    #[error("the 2x2 glue connector is singular")]
    SingularGlue,
    /// The glue product of the second 3-sum variant is not integral.
    #[error("glue product entry ({row},{col}) is not integral")]
    NonIntegralGlue { row: usize, col: usize },
    /// A separation does not apply to the given matrix.
    #[error("invalid separation: {0}")]
    InvalidSeparation(String),
    /// Separation order outside {1, 2}.
    #[error("separation order {0} is not supported (only 1 and 2)")]
    BadOrder(u8),
    /// The ground set is too large for the exhaustive search.
    #[error("ground set size {ground} exceeds cap {cap}; raise the cap to force the search")]
    CapExceeded { ground: usize, cap: usize },
    /// A recomposition found glue data inconsistent with its children.
    #[error("glue mismatch: {0}")]
    GlueMismatch(String),
    /// A tree node carries malformed bookkeeping (bad index orders).
    #[error("invalid tree: {0}")]
    InvalidTree(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The block-diagonal 1-sum `[[A, 0], [0, B]]`.
pub fn one_sum(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let mut out = IntMatrix::zero(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c));
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            out.set(a.rows() + r, a.cols() + c, b.get(r, c));
        }
    }
    out
}

/// The 2-sum of `left = [A | a]` and `right = [b; B]`: the glue column
/// `a` is the last column of `left`, the glue row `b` the first row of
/// `right`, and the result is `[[A, a*b], [0, B]]`.  Both glue lines
/// must be nonzero.
pub fn two_sum(left: &IntMatrix, right: &IntMatrix) -> Result<IntMatrix, KsumError> {
    if left.cols() == 0 || left.rows() == 0 {
        return Err(KsumError::Shape(
            "2-sum left operand needs at least one row and one column".into(),
        ));
    }
    if right.rows() == 0 {
        return Err(KsumError::Shape(
            "2-sum right operand needs at least one row".into(),
        ));
    }
    let glue_col = left.col(left.cols() - 1);
    if glue_col.iter().all(|&v| v == 0) {
        return Err(KsumError::GlueZero {
            side: "column",
            operation: "2-sum",
        });
    }
    let glue_row = right.row(0);
    if glue_row.iter().all(|&v| v == 0) {
        return Err(KsumError::GlueZero {
            side: "row",
            operation: "2-sum",
        });
    }
    let (a_rows, a_cols) = (left.rows(), left.cols() - 1);
    let (b_rows, b_cols) = (right.rows() - 1, right.cols());
    let mut out = IntMatrix::zero(a_rows + b_rows, a_cols + b_cols);
    for r in 0..a_rows {
        for c in 0..a_cols {
            out.set(r, c, left.get(r, c));
        }
        for c in 0..b_cols {
            out.set(r, a_cols + c, glue_col[r] * glue_row[c]);
        }
    }
    for r in 0..b_rows {
        for c in 0..b_cols {
            out.set(a_rows + r, a_cols + c, right.get(r + 1, c));
        }
    }
    Ok(out)
}

/// The two 3-sum operand layouts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThreeSumVariant {
    /// `left = [[A, a, a], [c, 0, 1]]`, `right = [[1, 0, b], [d, d, B]]`;
    /// the result is `[[A, a*b], [d*c, B]]`.
    Delta,
    /// `left = [[A, 0], [b, 1], [c, 1]]`, `right = [[1, 1, 0], [a, d, B]]`;
    /// the result is `[[A, 0], [D, B]]` where `D` glues through the
    /// shared nonsingular 2x2 connector.
    Alt,
}

/// Composes a 3-sum.  Operand shapes are validated entry by entry:
/// duplicated glue lines must really be equal and the marker entries
/// must be present.  See [`ThreeSumVariant`] for the layouts.
pub fn three_sum(
    left: &IntMatrix,
    right: &IntMatrix,
    variant: ThreeSumVariant,
) -> Result<IntMatrix, KsumError> {
    match variant {
        ThreeSumVariant::Delta => three_sum_delta(left, right),
        ThreeSumVariant::Alt => three_sum_alt(left, right),
    }
}

fn three_sum_delta(left: &IntMatrix, right: &IntMatrix) -> Result<IntMatrix, KsumError> {
    // left = [[A, a, a], [c, 0, 1]]: bottom row carries the markers.
    if left.rows() < 1 || left.cols() < 2 {
        return Err(KsumError::Shape(
            "delta 3-sum left operand needs at least 1 row and 2 columns".into(),
        ));
    }
    if right.rows() < 1 || right.cols() < 2 {
        return Err(KsumError::Shape(
            "delta 3-sum right operand needs at least 1 row and 2 columns".into(),
        ));
    }
    let (m1, n1) = (left.rows() - 1, left.cols() - 2);
    let (m2, n2) = (right.rows() - 1, right.cols() - 2);
    if left.get(m1, n1) != 0 || left.get(m1, n1 + 1) != 1 {
        return Err(KsumError::Shape(format!(
            "delta 3-sum left marker row must end in 0 1, found {} {}",
            left.get(m1, n1),
            left.get(m1, n1 + 1)
        )));
    }
    if right.get(0, 0) != 1 || right.get(0, 1) != 0 {
        return Err(KsumError::Shape(format!(
            "delta 3-sum right marker row must start with 1 0, found {} {}",
            right.get(0, 0),
            right.get(0, 1)
        )));
    }
    for r in 0..m1 {
        if left.get(r, n1) != left.get(r, n1 + 1) {
            return Err(KsumError::Shape(format!(
                "delta 3-sum left glue columns differ at row {r}"
            )));
        }
    }
    for r in 1..=m2 {
        if right.get(r, 0) != right.get(r, 1) {
            return Err(KsumError::Shape(format!(
                "delta 3-sum right glue columns differ at row {r}"
            )));
        }
    }
    // a over rows of A, b over columns of B, c over columns of A,
    // d over rows of B.
    let mut out = IntMatrix::zero(m1 + m2, n1 + n2);
    for r in 0..m1 {
        for c in 0..n1 {
            out.set(r, c, left.get(r, c));
        }
        for c in 0..n2 {
            out.set(r, n1 + c, left.get(r, n1) * right.get(0, 2 + c));
        }
    }
    for r in 0..m2 {
        for c in 0..n1 {
            out.set(m1 + r, c, right.get(1 + r, 0) * left.get(m1, c));
        }
        for c in 0..n2 {
            out.set(m1 + r, n1 + c, right.get(1 + r, 2 + c));
        }
    }
    Ok(out)
}

fn three_sum_alt(left: &IntMatrix, right: &IntMatrix) -> Result<IntMatrix, KsumError> {
    // left = [[A, 0], [b, 1], [c, 1]], right = [[1, 1, 0], [a, d, B]].
    if left.rows() < 2 || left.cols() < 3 {
        return Err(KsumError::Shape(
            "alt 3-sum left operand needs at least 2 rows and 3 columns".into(),
        ));
    }
    if right.rows() < 3 || right.cols() < 2 {
        return Err(KsumError::Shape(
            "alt 3-sum right operand needs at least 3 rows and 2 columns".into(),
        ));
    }
    let (m1, n1) = (left.rows() - 2, left.cols() - 1);
    let (m2, n2) = (right.rows() - 1, right.cols() - 2);
    for r in 0..m1 {
        if left.get(r, n1) != 0 {
            return Err(KsumError::Shape(format!(
                "alt 3-sum left marker column must be zero beside A, row {r} is {}",
                left.get(r, n1)
            )));
        }
    }
    if left.get(m1, n1) != 1 || left.get(m1 + 1, n1) != 1 {
        return Err(KsumError::Shape(
            "alt 3-sum left marker column must end in 1 1".into(),
        ));
    }
    if right.get(0, 0) != 1 || right.get(0, 1) != 1 {
        return Err(KsumError::Shape(
            "alt 3-sum right marker row must start with 1 1".into(),
        ));
    }
    for c in 2..right.cols() {
        if right.get(0, c) != 0 {
            return Err(KsumError::Shape(format!(
                "alt 3-sum right marker row must be zero over B, column {c} is {}",
                right.get(0, c)
            )));
        }
    }
    // The shared connector: the last 2x2 of [b; c] must equal the top
    // 2x2 of [a | d] and be nonsingular.
    let connector = [
        [left.get(m1, n1 - 2), left.get(m1, n1 - 1)],
        [left.get(m1 + 1, n1 - 2), left.get(m1 + 1, n1 - 1)],
    ];
    for (r, row) in connector.iter().enumerate() {
        for (c, &value) in row.iter().enumerate() {
            if right.get(1 + r, c) != value {
                return Err(KsumError::Shape(format!(
                    "alt 3-sum connector mismatch at ({r},{c}): left has {value}, right has {}",
                    right.get(1 + r, c)
                )));
            }
        }
    }
    let det = connector[0][0] * connector[1][1] - connector[0][1] * connector[1][0];
    if det == 0 {
        return Err(KsumError::SingularGlue);
    }
    // D = [a | d] * inverse(connector) * [b; c], evaluated exactly via
    // the adjugate: D = ([a | d] * adj * [b; c]) / det, which must
    // divide entrywise.
    let adj = [
        [connector[1][1], -connector[0][1]],
        [-connector[1][0], connector[0][0]],
    ];
    let mut out = IntMatrix::zero(m1 + m2, n1 + n2);
    for r in 0..m1 {
        for c in 0..n1 {
            out.set(r, c, left.get(r, c));
        }
    }
    for r in 0..m2 {
        // Row r of [a | d] times adj.
        let u = [
            right.get(1 + r, 0) * adj[0][0] + right.get(1 + r, 1) * adj[1][0],
            right.get(1 + r, 0) * adj[0][1] + right.get(1 + r, 1) * adj[1][1],
        ];
        for c in 0..n1 {
            let numer = u[0] * left.get(m1, c) + u[1] * left.get(m1 + 1, c);
            if numer % det != 0 {
                return Err(KsumError::NonIntegralGlue { row: r, col: c });
            }
            out.set(m1 + r, c, numer / det);
        }
        for c in 0..n2 {
            out.set(m1 + r, n1 + c, right.get(1 + r, 2 + c));
        }
    }
    Ok(out)
}

/// An exact 1- or 2-separation of the binary matroid represented by
/// `[I | N]`, written down matrix-side: the ground set splits into rows
/// and columns on each side, and the connectivity is carried by the two
/// cross blocks.  For order 1 both cross ranks are 0; for order 2 they
/// sum to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Separation {
    pub row_split: (IndexSet, IndexSet),
    pub col_split: (IndexSet, IndexSet),
    pub order: u8,
    /// GF(2) rank of `N[row_split.0, col_split.1]`.
    pub cross_rank_top_right: usize,
    /// GF(2) rank of `N[row_split.1, col_split.0]`.
    pub cross_rank_bottom_left: usize,
}

/// Enumerates every exact separation of the given order (1 or 2).
///
/// The first ground element (row 0, or column 0 of a rowless matrix) is
/// pinned to the first side, so each unordered separation appears
/// exactly once.  Results are sorted by ascending first-side row set,
/// then first-side column set.  Exhaustive over `2^(rows+cols-1)`
/// assignments, hence the [`SEPARATION_GROUND_CAP`].
pub fn find_separations(matrix: &IntMatrix, order: u8) -> Result<Vec<Separation>, KsumError> {
    find_separations_with(matrix, order, SEPARATION_GROUND_CAP)
}

/// [`find_separations`] with an explicit ground-size cap.
pub fn find_separations_with(
    matrix: &IntMatrix,
    order: u8,
    cap: usize,
) -> Result<Vec<Separation>, KsumError> {
    if !(1..=2).contains(&order) {
        return Err(KsumError::BadOrder(order));
    }
    let ground = matrix.rows() + matrix.cols();
    if ground > cap {
        return Err(KsumError::CapExceeded { ground, cap });
    }
    if ground < 2 {
        return Ok(Vec::new());
    }
    let mut found = Vec::new();
    // Element ids: 0..rows are rows, rows.. are columns.  Element 0 is
    // pinned to the first side; the mask ranges over the rest.
    let free = ground - 1;
    for mask in 0u32..(1u32 << free) {
        let mut rows_left = Vec::new();
        let mut rows_right = Vec::new();
        let mut cols_left = Vec::new();
        let mut cols_right = Vec::new();
        for element in 0..ground {
            let left = element == 0 || mask & (1 << (element - 1)) != 0;
            if element < matrix.rows() {
                if left {
                    rows_left.push(element);
                } else {
                    rows_right.push(element);
                }
            } else {
                let col = element - matrix.rows();
                if left {
                    cols_left.push(col);
                } else {
                    cols_right.push(col);
                }
            }
        }
        let side_left = rows_left.len() + cols_left.len();
        let side_right = rows_right.len() + cols_right.len();
        if side_left < order as usize || side_right < order as usize {
            continue;
        }
        let rows_left = IndexSet::new(rows_left).expect("built increasing");
        let rows_right = IndexSet::new(rows_right).expect("built increasing");
        let cols_left = IndexSet::new(cols_left).expect("built increasing");
        let cols_right = IndexSet::new(cols_right).expect("built increasing");
        let top_right = matrix.submatrix(&rows_left, &cols_right)?.gf2_rank();
        let bottom_left = matrix.submatrix(&rows_right, &cols_left)?.gf2_rank();
        // Connectivity of the split is the sum of the cross ranks; an
        // exact order-k separation has connectivity k-1.
        if top_right + bottom_left != (order - 1) as usize {
            continue;
        }
        found.push(Separation {
            row_split: (rows_left, rows_right),
            col_split: (cols_left, cols_right),
            order,
            cross_rank_top_right: top_right,
            cross_rank_bottom_left: bottom_left,
        });
    }
    found.sort_by(|a, b| {
        (a.row_split.0.as_slice(), a.col_split.0.as_slice())
            .cmp(&(b.row_split.0.as_slice(), b.col_split.0.as_slice()))
    });
    Ok(found)
}

fn validate_separation(matrix: &IntMatrix, sep: &Separation) -> Result<(), KsumError> {
    let check_partition = |left: &IndexSet, right: &IndexSet, bound: usize, what: &str| {
        let mut seen = vec![false; bound];
        for &i in left.iter().chain(right.iter()) {
            if i >= bound || seen[i] {
                return Err(KsumError::InvalidSeparation(format!(
                    "{what} split is not a partition of 0..{bound}"
                )));
            }
            seen[i] = true;
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(KsumError::InvalidSeparation(format!(
                "{what} split misses indices of 0..{bound}"
            )))
        }
    };
    check_partition(&sep.row_split.0, &sep.row_split.1, matrix.rows(), "row")?;
    check_partition(&sep.col_split.0, &sep.col_split.1, matrix.cols(), "column")?;
    let top_right = matrix
        .submatrix(&sep.row_split.0, &sep.col_split.1)?
        .gf2_rank();
    let bottom_left = matrix
        .submatrix(&sep.row_split.1, &sep.col_split.0)?
        .gf2_rank();
    if top_right != sep.cross_rank_top_right || bottom_left != sep.cross_rank_bottom_left {
        return Err(KsumError::InvalidSeparation(format!(
            "recorded cross ranks ({}, {}) do not match the matrix ({top_right}, {bottom_left})",
            sep.cross_rank_top_right, sep.cross_rank_bottom_left
        )));
    }
    let expected = match sep.order {
        1 => 0,
        2 => 1,
        other => return Err(KsumError::BadOrder(other)),
    };
    if top_right + bottom_left != expected {
        return Err(KsumError::InvalidSeparation(format!(
            "cross ranks sum to {}, an order-{} separation needs {expected}",
            top_right + bottom_left,
            sep.order
        )));
    }
    Ok(())
}

/// Splits `matrix` along a separation into sum operands.
///
/// For order 1 the operands are the two diagonal blocks and
/// [`one_sum`] recovers the matrix up to permutation.  For order 2 the
/// sides are oriented so the rank-1 cross block sits top-right; the
/// block factors exactly as `a * b` with `a` its first nonzero column
/// and `b` the per-column sign pattern, and the operands are
/// `[P | a]` and `[b; Q]`, so [`two_sum`] recovers the matrix up to
/// permutation.
pub fn split(matrix: &IntMatrix, sep: &Separation) -> Result<(IntMatrix, IntMatrix), KsumError> {
    validate_separation(matrix, sep)?;
    match sep.order {
        1 => {
            let left = matrix.submatrix(&sep.row_split.0, &sep.col_split.0)?;
            let right = matrix.submatrix(&sep.row_split.1, &sep.col_split.1)?;
            Ok((left, right))
        }
        2 => {
            // Orient so the rank-1 cross block is top-right.
            let (rows_top, cols_top, rows_bottom, cols_bottom) = if sep.cross_rank_top_right == 1 {
                (
                    &sep.row_split.0,
                    &sep.col_split.0,
                    &sep.row_split.1,
                    &sep.col_split.1,
                )
            } else {
                (
                    &sep.row_split.1,
                    &sep.col_split.1,
                    &sep.row_split.0,
                    &sep.col_split.0,
                )
            };
            let cross = matrix.submatrix(rows_top, cols_bottom)?;
            // First nonzero column of the rank-1 block is the glue
            // column; every other nonzero column is its plus or minus.
            let glue_col_at = (0..cross.cols())
                .find(|&c| cross.col(c).iter().any(|&v| v != 0))
                .expect("a rank-1 block has a nonzero column");
            let a = cross.col(glue_col_at);
            let mut b = vec![0i64; cross.cols()];
            for (c, slot) in b.iter_mut().enumerate() {
                let column = cross.col(c);
                if column.iter().all(|&v| v == 0) {
                    continue;
                }
                *slot = if column == a {
                    1
                } else {
                    // Signed-unit rank-1: the only other option is -a.
                    let negated: Vec<i64> = a.iter().map(|&v| -v).collect();
                    if column != negated {
                        return Err(KsumError::InvalidSeparation(
                            "cross block is not a signed rank-1 pattern".into(),
                        ));
                    }
                    -1
                };
            }
            let p = matrix.submatrix(rows_top, cols_top)?;
            let a_matrix = IntMatrix::new(a.len(), 1, a)?;
            let left = p.hstack(&a_matrix)?;
            let q = matrix.submatrix(rows_bottom, cols_bottom)?;
            let b_matrix = IntMatrix::new(1, b.len(), b)?;
            let right = b_matrix.vstack(&q)?;
            Ok((left, right))
        }
        other => Err(KsumError::BadOrder(other)),
    }
}

/// Glue data recorded at a [`SumNode::Sum2`] node: the glue column of
/// the left operand (at `col_index`, always its last column) and the
/// glue row of the right operand (at `row_index`, always its first row).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Glue {
    pub col: Vec<i64>,
    pub col_index: usize,
    pub row: Vec<i64>,
    pub row_index: usize,
}

/// A composition tree: leaves are matrices, internal nodes compose their
/// children by 1-sum or 2-sum.
///
/// Because a separation rarely splits a matrix into contiguous index
/// ranges, gluing the children back produces the matrix with its rows
/// and columns reordered.  Internal nodes therefore record that order:
/// `row_order[i]` is the row of this node's matrix that row `i` of the
/// glued arrangement came from (likewise `col_order`), so
/// [`recompose`] rebuilds every node's matrix exactly, and recorded
/// glue stays checkable at any depth.
///
/// Serialized as JSON objects tagged by `"kind"`: `"leaf"` nodes carry
/// `"matrix"`, sum nodes carry `"left"`, `"right"`, `"glue"` (which is
/// `null` for a 1-sum), `"row_order"`, and `"col_order"`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(try_from = "NodeRepr")]
pub enum SumNode {
    Leaf {
        matrix: IntMatrix,
    },
    Sum1 {
        left: Box<SumNode>,
        right: Box<SumNode>,
        row_order: Vec<usize>,
        col_order: Vec<usize>,
    },
    Sum2 {
        left: Box<SumNode>,
        right: Box<SumNode>,
        glue: Glue,
        row_order: Vec<usize>,
        col_order: Vec<usize>,
    },
}

impl SumNode {
    /// Number of leaves.
    pub fn leaf_count(&self) -> usize {
        match self {
            SumNode::Leaf { .. } => 1,
            SumNode::Sum1 { left, right, .. } | SumNode::Sum2 { left, right, .. } => {
                left.leaf_count() + right.leaf_count()
            }
        }
    }

    /// The leaf matrices, left to right.
    pub fn leaves(&self) -> Vec<&IntMatrix> {
        match self {
            SumNode::Leaf { matrix } => vec![matrix],
            SumNode::Sum1 { left, right, .. } | SumNode::Sum2 { left, right, .. } => {
                let mut out = left.leaves();
                out.extend(right.leaves());
                out
            }
        }
    }
}

impl Serialize for SumNode {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            SumNode::Leaf { matrix } => {
                let mut node = serializer.serialize_struct("SumNode", 2)?;
                node.serialize_field("kind", "leaf")?;
                node.serialize_field("matrix", matrix)?;
                node.end()
            }
            SumNode::Sum1 {
                left,
                right,
                row_order,
                col_order,
            } => {
                let mut node = serializer.serialize_struct("SumNode", 6)?;
                node.serialize_field("kind", "sum1")?;
                node.serialize_field("left", left)?;
                node.serialize_field("right", right)?;
                node.serialize_field("glue", &None::<Glue>)?;
                node.serialize_field("row_order", row_order)?;
                node.serialize_field("col_order", col_order)?;
                node.end()
            }
            SumNode::Sum2 {
                left,
                right,
                glue,
                row_order,
                col_order,
            } => {
                let mut node = serializer.serialize_struct("SumNode", 6)?;
                node.serialize_field("kind", "sum2")?;
                node.serialize_field("left", left)?;
                node.serialize_field("right", right)?;
                node.serialize_field("glue", &Some(glue.clone()))?;
                node.serialize_field("row_order", row_order)?;
                node.serialize_field("col_order", col_order)?;
                node.end()
            }
        }
    }
}

#[derive(Deserialize)]
struct NodeRepr {
    kind: String,
    #[serde(default)]
    matrix: Option<IntMatrix>,
    #[serde(default)]
    left: Option<Box<NodeRepr>>,
    #[serde(default)]
    right: Option<Box<NodeRepr>>,
    #[serde(default)]
    glue: Option<Glue>,
    #[serde(default)]
    row_order: Option<Vec<usize>>,
    #[serde(default)]
    col_order: Option<Vec<usize>>,
}

impl TryFrom<NodeRepr> for SumNode {
    type Error = String;

    fn try_from(repr: NodeRepr) -> Result<Self, String> {
        let child = |side: Option<Box<NodeRepr>>, name: &str, kind: &str| {
            side.ok_or_else(|| format!("{kind} node is missing {name:?}"))
                .and_then(|node| SumNode::try_from(*node).map(Box::new))
        };
        match repr.kind.as_str() {
            "leaf" => {
                let matrix = repr
                    .matrix
                    .ok_or_else(|| "leaf node is missing \"matrix\"".to_string())?;
                Ok(SumNode::Leaf { matrix })
            }
            "sum1" => Ok(SumNode::Sum1 {
                left: child(repr.left, "left", "sum1")?,
                right: child(repr.right, "right", "sum1")?,
                row_order: repr
                    .row_order
                    .ok_or_else(|| "sum1 node is missing \"row_order\"".to_string())?,
                col_order: repr
                    .col_order
                    .ok_or_else(|| "sum1 node is missing \"col_order\"".to_string())?,
            }),
            "sum2" => Ok(SumNode::Sum2 {
                left: child(repr.left, "left", "sum2")?,
                right: child(repr.right, "right", "sum2")?,
                glue: repr
                    .glue
                    .ok_or_else(|| "sum2 node is missing \"glue\"".to_string())?,
                row_order: repr
                    .row_order
                    .ok_or_else(|| "sum2 node is missing \"row_order\"".to_string())?,
                col_order: repr
                    .col_order
                    .ok_or_else(|| "sum2 node is missing \"col_order\"".to_string())?,
            }),
            other => Err(format!("unknown node kind {other:?}")),
        }
    }
}

/// A decomposition result: the tree, and whether every leaf was fully
/// checked (a leaf under the size cap admits no 1- or 2-separation; an
/// over-cap matrix is left as an unchecked leaf and `complete` is
/// false).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub tree: SumNode,
    pub complete: bool,
}

/// Recursively decomposes along 1-separations first, then exact
/// 2-separations, always taking the lexicographically least separation,
/// under the default ground cap.
pub fn decompose(matrix: &IntMatrix) -> Result<Decomposition, KsumError> {
    decompose_with(matrix, SEPARATION_GROUND_CAP)
}

/// [`decompose`] with an explicit ground-size cap.
pub fn decompose_with(matrix: &IntMatrix, cap: usize) -> Result<Decomposition, KsumError> {
    let mut complete = true;
    let tree = decompose_rec(matrix, cap, &mut complete)?;
    Ok(Decomposition { tree, complete })
}

fn decompose_rec(
    matrix: &IntMatrix,
    cap: usize,
    complete: &mut bool,
) -> Result<SumNode, KsumError> {
    if matrix.rows() + matrix.cols() > cap {
        *complete = false;
        return Ok(SumNode::Leaf {
            matrix: matrix.clone(),
        });
    }
    if let Some(sep) = find_separations_with(matrix, 1, cap)?.into_iter().next() {
        let (left, right) = split(matrix, &sep)?;
        let (row_order, col_order) = glued_order(&sep);
        return Ok(SumNode::Sum1 {
            left: Box::new(decompose_rec(&left, cap, complete)?),
            right: Box::new(decompose_rec(&right, cap, complete)?),
            row_order,
            col_order,
        });
    }
    if let Some(sep) = find_separations_with(matrix, 2, cap)?.into_iter().next() {
        let (left, right) = split(matrix, &sep)?;
        let glue = Glue {
            col: left.col(left.cols() - 1),
            col_index: left.cols() - 1,
            row: right.row(0).to_vec(),
            row_index: 0,
        };
        let (row_order, col_order) = glued_order(&sep);
        return Ok(SumNode::Sum2 {
            left: Box::new(decompose_rec(&left, cap, complete)?),
            right: Box::new(decompose_rec(&right, cap, complete)?),
            glue,
            row_order,
            col_order,
        });
    }
    Ok(SumNode::Leaf {
        matrix: matrix.clone(),
    })
}

/// Where each row/column of the glued child arrangement sits in the
/// separated matrix, matching the orientation [`split`] uses.
fn glued_order(sep: &Separation) -> (Vec<usize>, Vec<usize>) {
    let (rows_top, cols_top, rows_bottom, cols_bottom) =
        if sep.order == 2 && sep.cross_rank_top_right != 1 {
            (
                &sep.row_split.1,
                &sep.col_split.1,
                &sep.row_split.0,
                &sep.col_split.0,
            )
        } else {
            (
                &sep.row_split.0,
                &sep.col_split.0,
                &sep.row_split.1,
                &sep.col_split.1,
            )
        };
    let mut row_order: Vec<usize> = rows_top.iter().copied().collect();
    row_order.extend(rows_bottom.iter());
    let mut col_order: Vec<usize> = cols_top.iter().copied().collect();
    col_order.extend(cols_bottom.iter());
    (row_order, col_order)
}

fn check_order(order: &[usize], n: usize, what: &str) -> Result<(), KsumError> {
    if order.len() != n {
        return Err(KsumError::InvalidTree(format!(
            "{what} has {} entries for a glued side of {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &index in order {
        if index >= n || seen[index] {
            return Err(KsumError::InvalidTree(format!(
                "{what} is not a permutation: index {index}"
            )));
        }
        seen[index] = true;
    }
    Ok(())
}

/// Applies the recorded order: entry `(i, j)` of the glued arrangement
/// returns to `(row_order[i], col_order[j])`.
fn unglue(
    glued: &IntMatrix,
    row_order: &[usize],
    col_order: &[usize],
) -> Result<IntMatrix, KsumError> {
    check_order(row_order, glued.rows(), "row_order")?;
    check_order(col_order, glued.cols(), "col_order")?;
    let mut out = IntMatrix::zero(glued.rows(), glued.cols());
    for i in 0..glued.rows() {
        for j in 0..glued.cols() {
            out.set(row_order[i], col_order[j], glued.get(i, j));
        }
    }
    Ok(out)
}

/// Rebuilds the matrix of a [`SumNode`] tree, verifying at every 2-sum
/// node that the recorded glue matches the children.
///
/// On trees produced by [`decompose`] the result equals the decomposed
/// matrix exactly: each node glues its children and then restores its
/// recorded row/column order.
pub fn recompose(node: &SumNode) -> Result<IntMatrix, KsumError> {
    match node {
        SumNode::Leaf { matrix } => Ok(matrix.clone()),
        SumNode::Sum1 {
            left,
            right,
            row_order,
            col_order,
        } => unglue(
            &one_sum(&recompose(left)?, &recompose(right)?),
            row_order,
            col_order,
        ),
        SumNode::Sum2 {
            left,
            right,
            glue,
            row_order,
            col_order,
        } => {
            let left = recompose(left)?;
            let right = recompose(right)?;
            if left.cols() == 0 || glue.col_index != left.cols() - 1 {
                return Err(KsumError::GlueMismatch(format!(
                    "glue column index {} is not the last column of a {}-column left operand",
                    glue.col_index,
                    left.cols()
                )));
            }
            if glue.row_index != 0 {
                return Err(KsumError::GlueMismatch(format!(
                    "glue row index {} is not the first row of the right operand",
                    glue.row_index
                )));
            }
            if left.col(glue.col_index) != glue.col {
                return Err(KsumError::GlueMismatch(
                    "recorded glue column differs from the left operand".into(),
                ));
            }
            if right.rows() == 0 || right.row(0) != glue.row.as_slice() {
                return Err(KsumError::GlueMismatch(
                    "recorded glue row differs from the right operand".into(),
                ));
            }
            unglue(&two_sum(&left, &right)?, row_order, col_order)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{paper_matrix, PaperMatrix};
    use crate::unimodularity::{is_su, is_tu};

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn set(v: &[usize]) -> IndexSet {
        IndexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn one_sum_is_block_diagonal() {
        let a = m(&[&[1, -1]]);
        let b = m(&[&[1], &[0]]);
        assert_eq!(one_sum(&a, &b), m(&[&[1, -1, 0], &[0, 0, 1], &[0, 0, 0]]));
    }

    #[test]
    fn two_sum_of_n1_with_itself_is_frozen_and_su() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let sum = two_sum(&n1, &n1).unwrap();
        assert_eq!(
            sum,
            m(&[
                &[1, 0, 1, 0, 1],
                &[-1, 1, 0, 0, 0],
                &[0, 1, 1, 0, 1],
                &[0, 0, -1, 1, 0],
                &[0, 0, 0, 1, 1],
            ])
        );
        assert!(is_su(&sum).unwrap().holds);
    }

    #[test]
    fn two_sum_rejects_zero_glue() {
        let zero_col = m(&[&[1, 0], &[1, 0]]);
        let ok = m(&[&[1, 1], &[0, 1]]);
        assert!(matches!(
            two_sum(&zero_col, &ok),
            Err(KsumError::GlueZero { side: "column", .. })
        ));
        let zero_row = m(&[&[0, 0], &[1, 1]]);
        assert!(matches!(
            two_sum(&ok, &zero_row),
            Err(KsumError::GlueZero { side: "row", .. })
        ));
    }

    #[test]
    fn delta_three_sum_matches_hand_computed_factorization() {
        // Factor the 2-sum of N1 with itself, with entry (0,2) zeroed,
        // through a delta 3-sum of these two operands.
        let left = m(&[
            &[1, 0, 0, 1, 1],
            &[-1, 1, 0, 0, 0],
            &[0, 1, 1, 1, 1],
            &[0, 0, 1, 0, 1],
        ]);
        let right = m(&[&[1, 0, 0, 1], &[-1, -1, 1, 0], &[0, 0, 1, 1]]);
        assert!(is_tu(&left).unwrap().holds);
        assert!(is_tu(&right).unwrap().holds);
        let sum = three_sum(&left, &right, ThreeSumVariant::Delta).unwrap();
        let n1 = paper_matrix(PaperMatrix::N1);
        let expected = two_sum(&n1, &n1).unwrap().with_entry(0, 2, 0);
        assert_eq!(sum, expected);
        assert!(is_tu(&sum).unwrap().holds);
    }

    #[test]
    fn delta_three_sum_validates_markers_and_duplicates() {
        let good_left = m(&[&[1, 1, 1], &[1, 0, 1]]);
        let good_right = m(&[&[1, 0, 1], &[1, 1, 1]]);
        assert!(three_sum(&good_left, &good_right, ThreeSumVariant::Delta).is_ok());
        // Marker row must end in 0 1.
        let bad_marker = m(&[&[1, 1, 1], &[1, 1, 1]]);
        assert!(matches!(
            three_sum(&bad_marker, &good_right, ThreeSumVariant::Delta),
            Err(KsumError::Shape(_))
        ));
        // Glue columns must be duplicated.
        let bad_dup = m(&[&[1, 1, -1], &[1, 0, 1]]);
        assert!(matches!(
            three_sum(&bad_dup, &good_right, ThreeSumVariant::Delta),
            Err(KsumError::Shape(_))
        ));
        // Right marker must start with 1 0.
        let bad_right = m(&[&[1, 1, 1], &[1, 1, 1]]);
        assert!(matches!(
            three_sum(&good_left, &bad_right, ThreeSumVariant::Delta),
            Err(KsumError::Shape(_))
        ));
    }

    #[test]
    fn alt_three_sum_composes_through_the_connector() {
        // Connector is the identity, so D = [a | d] * [b; c].
        let left = m(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let right = m(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let sum = three_sum(&left, &right, ThreeSumVariant::Alt).unwrap();
        assert_eq!(sum, m(&[&[1, 1, 0], &[0, 1, 0], &[1, 0, 1], &[0, 1, 1]]));
    }

    #[test]
    fn alt_three_sum_divides_exactly_through_a_determinant_two_connector() {
        // Connector [[1,1],[-1,1]] has determinant 2; these glue vectors
        // keep every entry of D integral.
        let left = m(&[&[1, 0, 0], &[1, 1, 1], &[-1, 1, 1]]);
        let right = m(&[&[1, 1, 0], &[1, 1, 1], &[-1, 1, 0]]);
        let sum = three_sum(&left, &right, ThreeSumVariant::Alt).unwrap();
        // D = [a | d] * adj / det * [b; c] with a=d rows [1,1],[-1,1]:
        // works out to [b; c] itself here.
        assert_eq!(sum, m(&[&[1, 0, 0], &[1, 1, 1], &[-1, 1, 0]]));
    }

    #[test]
    fn alt_three_sum_rejects_bad_connectors() {
        // Singular connector.
        let left = m(&[&[1, 0, 0], &[1, 1, 1], &[1, 1, 1]]);
        let right = m(&[&[1, 1, 0], &[1, 1, 1], &[1, 1, 0]]);
        assert!(matches!(
            three_sum(&left, &right, ThreeSumVariant::Alt),
            Err(KsumError::SingularGlue)
        ));
        // Mismatched connector copies.
        let left = m(&[&[1, 0, 0], &[1, 1, 1], &[-1, 1, 1]]);
        let right = m(&[&[1, 1, 0], &[1, 1, 1], &[1, 1, 0]]);
        assert!(matches!(
            three_sum(&left, &right, ThreeSumVariant::Alt),
            Err(KsumError::Shape(_))
        ));
        // Non-integral glue product: third glue row [1, 0] against a
        // determinant-2 connector.
        let left = m(&[&[1, 0, 0, 0], &[1, 1, 1, 1], &[0, -1, 1, 1]]);
        let right = m(&[&[1, 1, 0], &[1, 1, 1], &[-1, 1, 1], &[1, 0, 1]]);
        assert!(matches!(
            three_sum(&left, &right, ThreeSumVariant::Alt),
            Err(KsumError::NonIntegralGlue { .. })
        ));
    }

    #[test]
    fn three_connected_references_have_no_small_separations() {
        for which in [PaperMatrix::B1, PaperMatrix::N1, PaperMatrix::N2] {
            let matrix = paper_matrix(which);
            assert!(
                find_separations(&matrix, 1).unwrap().is_empty(),
                "{which:?}"
            );
            assert!(
                find_separations(&matrix, 2).unwrap().is_empty(),
                "{which:?}"
            );
        }
    }

    #[test]
    fn the_two_sum_of_n1_has_exactly_one_two_separation() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let sum = two_sum(&n1, &n1).unwrap();
        assert!(find_separations(&sum, 1).unwrap().is_empty());
        let seps = find_separations(&sum, 2).unwrap();
        assert_eq!(seps.len(), 1);
        let sep = &seps[0];
        assert_eq!(sep.row_split, (set(&[0, 1, 2]), set(&[3, 4])));
        assert_eq!(sep.col_split, (set(&[0, 1]), set(&[2, 3, 4])));
        assert_eq!(sep.cross_rank_top_right, 1);
        assert_eq!(sep.cross_rank_bottom_left, 0);
    }

    #[test]
    fn split_recovers_the_two_sum_operands_exactly() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let sum = two_sum(&n1, &n1).unwrap();
        let sep = find_separations(&sum, 2).unwrap().remove(0);
        let (left, right) = split(&sum, &sep).unwrap();
        assert_eq!(left, n1);
        assert_eq!(right, n1);
        assert_eq!(two_sum(&left, &right).unwrap(), sum);
    }

    #[test]
    fn split_then_sum_recovers_the_matrix_up_to_the_split_permutation() {
        let block = one_sum(
            &paper_matrix(PaperMatrix::N2),
            &paper_matrix(PaperMatrix::N1),
        );
        let seps = find_separations(&block, 1).unwrap();
        assert!(!seps.is_empty());
        for sep in &seps {
            let (left, right) = split(&block, sep).unwrap();
            let glued = one_sum(&left, &right);
            let rows: Vec<usize> = sep
                .row_split
                .0
                .iter()
                .chain(sep.row_split.1.iter())
                .copied()
                .collect();
            let cols: Vec<usize> = sep
                .col_split
                .0
                .iter()
                .chain(sep.col_split.1.iter())
                .copied()
                .collect();
            for (i, &r) in rows.iter().enumerate() {
                for (j, &c) in cols.iter().enumerate() {
                    assert_eq!(glued.get(i, j), block.get(r, c), "sep {sep:?}");
                }
            }
        }
    }

    #[test]
    fn separations_respect_the_ground_cap() {
        let wide = IntMatrix::zero(4, 15);
        assert!(matches!(
            find_separations(&wide, 1),
            Err(KsumError::CapExceeded {
                ground: 19,
                cap: 18
            })
        ));
        let small = IntMatrix::zero(3, 3);
        assert!(matches!(
            find_separations_with(&small, 1, 5),
            Err(KsumError::CapExceeded { ground: 6, cap: 5 })
        ));
        assert!(!find_separations_with(&small, 1, 6).unwrap().is_empty());
        assert!(matches!(
            find_separations(&wide, 3),
            Err(KsumError::BadOrder(3))
        ));
    }

    #[test]
    fn decompose_block_diagonal_of_three_pieces() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let n2 = paper_matrix(PaperMatrix::N2);
        let sum2 = two_sum(&n1, &n1).unwrap();
        let matrix = one_sum(&n2, &sum2);
        let decomposition = decompose(&matrix).unwrap();
        assert!(decomposition.complete);
        assert_eq!(decomposition.tree.leaf_count(), 3);
        // All three leaves are 3-connected pieces: N2 and the two N1
        // operands recovered through the 2-separation.
        let leaves = decomposition.tree.leaves();
        assert_eq!(leaves[0], &n2);
        assert_eq!(leaves[1], &n1);
        assert_eq!(leaves[2], &n1);
        // Recomposition rebuilds the input exactly: each sum node remembers
        // where its glued rows and columns sit in the original matrix.
        let rebuilt = recompose(&decomposition.tree).unwrap();
        assert_eq!(rebuilt, matrix);
    }

    #[test]
    fn decompose_leaves_three_connected_matrices_alone() {
        let b1 = paper_matrix(PaperMatrix::B1);
        let decomposition = decompose(&b1).unwrap();
        assert!(decomposition.complete);
        assert_eq!(decomposition.tree, SumNode::Leaf { matrix: b1 });
    }

    #[test]
    fn decompose_reports_incomplete_beyond_the_cap() {
        let big = IntMatrix::zero(10, 10);
        let decomposition = decompose(&big).unwrap();
        assert!(!decomposition.complete);
        assert_eq!(decomposition.tree.leaf_count(), 1);
        // Under the cap a zero matrix shatters completely.
        let decomposition = decompose(&IntMatrix::zero(3, 3)).unwrap();
        assert!(decomposition.complete);
        assert!(decomposition.tree.leaf_count() > 1);
    }

    #[test]
    fn recompose_verifies_glue() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let tree = SumNode::Sum2 {
            left: Box::new(SumNode::Leaf { matrix: n1.clone() }),
            right: Box::new(SumNode::Leaf { matrix: n1.clone() }),
            glue: Glue {
                col: vec![1, 0, -1], // actual glue column is [1, 0, 1]
                col_index: 2,
                row: vec![1, 0, 1],
                row_index: 0,
            },
            row_order: vec![0, 1, 2, 3, 4],
            col_order: vec![0, 1, 2, 3, 4],
        };
        assert!(matches!(recompose(&tree), Err(KsumError::GlueMismatch(_))));
    }

    #[test]
    fn sum_node_json_round_trips_with_tagged_kinds() {
        let n1 = paper_matrix(PaperMatrix::N1);
        let sum = two_sum(&n1, &n1).unwrap();
        let decomposition = decompose(&sum).unwrap();
        let value = serde_json::to_value(&decomposition.tree).unwrap();
        assert_eq!(value["kind"], "sum2");
        assert_eq!(value["left"]["kind"], "leaf");
        assert_eq!(value["glue"]["col"], serde_json::json!([1, 0, 1]));
        assert_eq!(value["glue"]["col_index"], 2);
        assert_eq!(value["glue"]["row_index"], 0);
        assert_eq!(value["row_order"].as_array().unwrap().len(), sum.rows());
        assert_eq!(value["col_order"].as_array().unwrap().len(), sum.cols());
        let back: SumNode = serde_json::from_value(value).unwrap();
        assert_eq!(back, decomposition.tree);
        // A 1-sum node serializes glue as null.
        let tree = SumNode::Sum1 {
            left: Box::new(SumNode::Leaf { matrix: n1.clone() }),
            right: Box::new(SumNode::Leaf { matrix: n1 }),
            row_order: (0..6).collect(),
            col_order: (0..6).collect(),
        };
        let value = serde_json::to_value(&tree).unwrap();
        assert_eq!(value["kind"], "sum1");
        assert!(value["glue"].is_null());
        let back: SumNode = serde_json::from_value(value).unwrap();
        assert_eq!(back, tree);
    }

    #[test]
    fn sum_node_deserialization_rejects_malformed_nodes() {
        let missing: Result<SumNode, _> =
            serde_json::from_str(r#"{"kind":"sum2","left":{"kind":"leaf","matrix":"1 1\n1\n"}}"#);
        assert!(missing.is_err());
        let unknown: Result<SumNode, _> = serde_json::from_str(r#"{"kind":"sum4"}"#);
        assert!(unknown.is_err());
    }
}
