//! Structural analysis of strongly unimodular matrices.
//!
//! Three families of tools live here:
//!
//! * **Dense blocks.** [`find_dense_block`] locates a maximal submatrix
//!   that is, up to row/column sign scalings, an all-ones block of at
//!   least 2x2.  For a matrix representing a 3-connected regular
//!   matroid such a block is fatal to strong unimodularity, and
//!   [`witness_from_dense_block`] turns it into a concrete
//!   [`Witness`](crate::unimodularity::Witness): it removes the block's
//!   edges from the bipartite graph of the matrix, walks a shortest
//!   path from a block row back to a block column, borders the path's
//!   submatrix with one extra row and column, and zeroes a first-row
//!   entry so that the bordered square has determinant +/-2.
//!
//! * **Row partitions.** Strongly unimodular matrices admit an ordered
//!   partition of their rows in which every column has at most two
//!   nonzeros per part, and a column touched exactly once by a part is
//!   untouched by all later parts.  [`find_row_partition`] searches for
//!   the minimal such partition exhaustively; [`verify_row_partition`]
//!   checks a given one; [`verify_final_structure`] checks the block
//!   form obtained from a row partition and a column partition
//!   together: the leading block and the border blocks must have 0 or
//!   2 nonzeros per line, and every block with exactly two nonzeros in
//!   each row and column must be a single cycle (a staircase up to
//!   permutation).
//!
//! * **Bipartite graphs.** [`bipartite_graph`] and [`BipGraph::to_dot`]
//!   expose the row/column incidence structure these algorithms walk,
//!   for offline inspection.

use crate::exactmat::{IndexSet, IntMatrix, MatrixError};
use crate::matroid::{MatroidError, ReprMatroid};
use crate::unimodularity::Witness;
use serde::Serialize;
use std::collections::VecDeque;

/// Cap on the row count for the exhaustive partition search.
pub const PARTITION_ROW_CAP: usize = 10;

/// Errors from structural analysis.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("matrix does not represent a 3-connected matroid")]
    NotThreeConnected,
    #[error("dense block is invalid: {0}")]
    InvalidBlock(String),
    #[error("no path connects the block's rows to its columns outside the block")]
    NoEscapePath,
    #[error("no block row avoids the first path column")]
    NoBorderRow,
    #[error("no block column avoids the last path row")]
    NoBorderCol,
    #[error("no first-row zeroing produced a determinant of +/-2")]
    NoWitnessEntry,
    #[error("row count {rows} exceeds partition search cap {cap}")]
    PartitionCapExceeded { rows: usize, cap: usize },
    #[error("malformed partition: {0}")]
    MalformedPartition(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// The bipartite incidence graph of a matrix: one vertex per row, one
/// per column, an edge wherever an entry is nonzero.
///
/// Vertices are numbered globally: `0..row_count` are row vertices,
/// `row_count..row_count + col_count` are column vertices.  Edges are
/// stored as `(row, column)` index pairs in row-major order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BipGraph {
    pub row_count: usize,
    pub col_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.row_count + self.col_count
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_count()];
        for &(r, c) in &self.edges {
            adj[r].push(self.row_count + c);
            adj[self.row_count + c].push(r);
        }
        adj
    }

    /// Connected components as sorted global vertex lists, ordered by
    /// smallest member.  Isolated vertices form singleton components.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertex_count()];
        let mut components = Vec::new();
        for start in 0..self.vertex_count() {
            if seen[start] {
                continue;
            }
            let mut component = Vec::new();
            let mut queue = VecDeque::from([start]);
            seen[start] = true;
            while let Some(v) = queue.pop_front() {
                component.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// DOT rendering.  Row vertices are boxes named `r<i>`, column
    /// vertices ellipses named `c<j>`.  Edges inside `block` are drawn
    /// bold; edges on `path` (a global-vertex walk) are thickened.
    pub fn to_dot(&self, block: Option<&DenseBlock>, path: &[usize]) -> String {
        let mut path_edges = Vec::new();
        for pair in path.windows(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            path_edges.push((a, b - self.row_count));
        }
        let mut out = String::from("graph bipartite {\n");
        for r in 0..self.row_count {
            out.push_str(&format!("  r{r} [shape=box];\n"));
        }
        for c in 0..self.col_count {
            out.push_str(&format!("  c{c} [shape=ellipse];\n"));
        }
        for &(r, c) in &self.edges {
            let mut attrs = Vec::new();
            if let Some(block) = block {
                if block.rows.contains(r) && block.cols.contains(c) {
                    attrs.push("style=bold");
                }
            }
            if path_edges.contains(&(r, c)) {
                attrs.push("penwidth=2");
            }
            if attrs.is_empty() {
                out.push_str(&format!("  r{r} -- c{c};\n"));
            } else {
                out.push_str(&format!("  r{r} -- c{c} [{}];\n", attrs.join(", ")));
            }
        }
        out.push_str("}\n");
        out
    }
}

/// The bipartite incidence graph of `matrix`.
pub fn bipartite_graph(matrix: &IntMatrix) -> BipGraph {
    BipGraph {
        row_count: matrix.rows(),
        col_count: matrix.cols(),
        edges: matrix.nonzero_positions(),
    }
}

/// A maximal submatrix with no zero entries that row/column sign
/// scalings turn into an all-ones block.
///
/// `row_signs[i] * col_signs[j] * matrix[rows[i], cols[j]] == 1` for
/// every position of the block.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DenseBlock {
    pub rows: IndexSet,
    pub cols: IndexSet,
    pub row_signs: Vec<i64>,
    pub col_signs: Vec<i64>,
}

fn dense_candidate(matrix: &IntMatrix, rows: &[usize], cols: &[usize]) -> bool {
    for &r in rows {
        for &c in cols {
            if matrix.get(r, c) == 0 {
                return false;
            }
        }
    }
    let (r0, c0) = (rows[0], cols[0]);
    for &r in &rows[1..] {
        for &c in &cols[1..] {
            if matrix.get(r, c) * matrix.get(r0, c0) != matrix.get(r, c0) * matrix.get(r0, c) {
                return false;
            }
        }
    }
    true
}

/// Finds a maximal sign-scalable all-ones block of size at least 2x2,
/// or `None` when no 2x2 submatrix has four nonzeros and determinant
/// zero.
///
/// The search is deterministic: the lexicographically first qualifying
/// 2x2 seed (by row pair, then column pair) is grown greedily — rows
/// in ascending order, then columns, repeated to a fixpoint.
pub fn find_dense_block(matrix: &IntMatrix) -> Option<DenseBlock> {
    let (row_count, col_count) = (matrix.rows(), matrix.cols());
    let mut seed: Option<(Vec<usize>, Vec<usize>)> = None;
    'seed: for r1 in 0..row_count {
        for r2 in r1 + 1..row_count {
            for c1 in 0..col_count {
                for c2 in c1 + 1..col_count {
                    let (a, b, c, d) = (
                        matrix.get(r1, c1),
                        matrix.get(r1, c2),
                        matrix.get(r2, c1),
                        matrix.get(r2, c2),
                    );
                    if a != 0 && b != 0 && c != 0 && d != 0 && a * d - b * c == 0 {
                        seed = Some((vec![r1, r2], vec![c1, c2]));
                        break 'seed;
                    }
                }
            }
        }
    }
    let (mut rows, mut cols) = seed?;
    let mut changed = true;
    while changed {
        changed = false;
        for r in 0..row_count {
            if !rows.contains(&r) {
                let mut grown = rows.clone();
                grown.push(r);
                grown.sort_unstable();
                if dense_candidate(matrix, &grown, &cols) {
                    rows = grown;
                    changed = true;
                }
            }
        }
        for c in 0..col_count {
            if !cols.contains(&c) {
                let mut grown = cols.clone();
                grown.push(c);
                grown.sort_unstable();
                if dense_candidate(matrix, &rows, &grown) {
                    cols = grown;
                    changed = true;
                }
            }
        }
    }
    let row_signs: Vec<i64> = rows
        .iter()
        .map(|&r| matrix.get(r, cols[0]).signum())
        .collect();
    let anchor = matrix.get(rows[0], cols[0]).signum();
    let col_signs: Vec<i64> = cols
        .iter()
        .map(|&c| matrix.get(rows[0], c).signum() * anchor)
        .collect();
    Some(DenseBlock {
        rows: IndexSet::new(rows).expect("grown rows are sorted and distinct"),
        cols: IndexSet::new(cols).expect("grown cols are sorted and distinct"),
        row_signs,
        col_signs,
    })
}

/// Shortest path, in the bipartite graph of `matrix` with the block's
/// edges removed, from a block row to a block column.
///
/// Returns the path as global vertex ids (rows `0..rows`, columns
/// offset by `rows`), or `None` when no such path exists.  Block rows
/// are tried in ascending order and a strictly shorter path is
/// required to displace the incumbent, so the result is deterministic.
pub fn escape_path(matrix: &IntMatrix, block: &DenseBlock) -> Option<Vec<usize>> {
    let (row_count, col_count) = (matrix.rows(), matrix.cols());
    let mut adj = vec![Vec::new(); row_count + col_count];
    for r in 0..row_count {
        for c in 0..col_count {
            if matrix.get(r, c) != 0 && !(block.rows.contains(r) && block.cols.contains(c)) {
                adj[r].push(row_count + c);
                adj[row_count + c].push(r);
            }
        }
    }
    let mut best: Option<Vec<usize>> = None;
    for &source in block.rows.iter() {
        let mut prev = vec![usize::MAX; row_count + col_count];
        prev[source] = source;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        for &target in block.cols.iter() {
            let target = row_count + target;
            if prev[target] == usize::MAX {
                continue;
            }
            let mut path = vec![target];
            let mut v = target;
            while prev[v] != v {
                v = prev[v];
                path.push(v);
            }
            path.reverse();
            if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                best = Some(path);
            }
        }
    }
    best
}

fn validate_block(matrix: &IntMatrix, block: &DenseBlock) -> Result<(), StructureError> {
    if block.rows.len() < 2 || block.cols.len() < 2 {
        return Err(StructureError::InvalidBlock(
            "block needs at least two rows and two columns".into(),
        ));
    }
    if IndexSet::max(&block.rows).is_some_and(|r| r >= matrix.rows())
        || IndexSet::max(&block.cols).is_some_and(|c| c >= matrix.cols())
    {
        return Err(StructureError::InvalidBlock(
            "block indices out of range".into(),
        ));
    }
    let rows: Vec<usize> = block.rows.iter().copied().collect();
    let cols: Vec<usize> = block.cols.iter().copied().collect();
    if !dense_candidate(matrix, &rows, &cols) {
        return Err(StructureError::InvalidBlock(
            "block has a zero entry or is not sign-scalable to all ones".into(),
        ));
    }
    Ok(())
}

/// Builds a strong-unimodularity refutation from a dense block of a
/// matrix representing a 3-connected matroid (checked; the ground set
/// must be within the connectivity cap).
///
/// The construction removes the block's edges from the bipartite
/// graph, finds a shortest path from a block row `r2` to a block
/// column `s2` (necessarily of odd length), borders the path's rows
/// and columns with a block row `r1` missing the first path column and
/// a block column `s1` missing the last path row — the smallest
/// qualifying indices — and scans the nonzero entries of row `r2`
/// inside the resulting square in path order; the first zeroing whose
/// determinant has absolute value 2 becomes the witness.  The returned
/// witness replays under the certification rules.
pub fn witness_from_dense_block(
    matrix: &IntMatrix,
    block: &DenseBlock,
) -> Result<Witness, StructureError> {
    witness_from_dense_block_with(matrix, block, crate::matroid::CONNECTIVITY_GROUND_CAP)
}

/// [`witness_from_dense_block`] with the connectivity ground cap
/// overridden.
pub fn witness_from_dense_block_with(
    matrix: &IntMatrix,
    block: &DenseBlock,
    connectivity_cap: usize,
) -> Result<Witness, StructureError> {
    validate_block(matrix, block)?;
    let verdict = ReprMatroid::new(matrix).is_k_connected_with(3, connectivity_cap)?;
    if !verdict.connected {
        return Err(StructureError::NotThreeConnected);
    }
    let path = escape_path(matrix, block).ok_or(StructureError::NoEscapePath)?;
    let row_count = matrix.rows();
    assert!(
        path.len() >= 4 && path.len() % 2 == 0,
        "a row-to-column path in a bipartite graph has odd edge count"
    );
    let r2 = path[0];
    let s2 = path[path.len() - 1] - row_count;
    // Interior vertices alternate column, row, column, ...
    let path_cols: Vec<usize> = path[1..path.len() - 1]
        .iter()
        .step_by(2)
        .map(|&v| v - row_count)
        .collect();
    let path_rows: Vec<usize> = path[2..path.len() - 1].iter().step_by(2).copied().collect();
    assert_eq!(path_cols.len(), path_rows.len(), "path alternates sides");
    let first_col = path_cols[0];
    let last_row = *path_rows.last().unwrap_or(&r2);
    let r1 = *block
        .rows
        .iter()
        .find(|&&r| matrix.get(r, first_col) == 0)
        .ok_or(StructureError::NoBorderRow)?;
    let s1 = *block
        .cols
        .iter()
        .find(|&&s| matrix.get(last_row, s) == 0)
        .ok_or(StructureError::NoBorderCol)?;
    let mut bordered_rows = vec![r2];
    bordered_rows.extend(path_rows.iter().rev());
    bordered_rows.push(r1);
    let mut bordered_cols = path_cols.clone();
    bordered_cols.push(s2);
    bordered_cols.push(s1);
    let mut sorted_rows = bordered_rows.clone();
    sorted_rows.sort_unstable();
    let mut sorted_cols = bordered_cols.clone();
    sorted_cols.sort_unstable();
    let rows = IndexSet::new(sorted_rows).expect("bordered rows are distinct");
    let cols = IndexSet::new(sorted_cols).expect("bordered cols are distinct");
    for &c in &bordered_cols {
        if matrix.get(r2, c) == 0 {
            continue;
        }
        let zeroed = matrix.with_entry(r2, c, 0);
        let determinant = zeroed.submatrix(&rows, &cols)?.det()?;
        if determinant.abs() == 2 {
            return Ok(Witness {
                rows,
                cols,
                zeroed_entry: Some((r2, c)),
                determinant,
            });
        }
    }
    Err(StructureError::NoWitnessEntry)
}

/// An ordered partition of row (or column) indices into nonempty,
/// disjoint, covering parts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RowPartition {
    parts: Vec<IndexSet>,
}

impl RowPartition {
    /// Validates that `parts` are nonempty, disjoint, and cover
    /// exactly `0..count`.
    pub fn new(parts: Vec<Vec<usize>>, count: usize) -> Result<Self, StructureError> {
        let mut seen = vec![false; count];
        let mut checked = Vec::with_capacity(parts.len());
        for part in parts {
            if part.is_empty() {
                return Err(StructureError::MalformedPartition("empty part".into()));
            }
            for &index in &part {
                if index >= count {
                    return Err(StructureError::MalformedPartition(format!(
                        "index {index} out of range for {count}"
                    )));
                }
                if seen[index] {
                    return Err(StructureError::MalformedPartition(format!(
                        "index {index} appears in two parts"
                    )));
                }
                seen[index] = true;
            }
            let mut part = part;
            part.sort_unstable();
            checked.push(IndexSet::new(part).expect("sorted distinct indices"));
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(StructureError::MalformedPartition(format!(
                "index {missing} is not covered"
            )));
        }
        Ok(RowPartition { parts: checked })
    }

    pub fn parts(&self) -> &[IndexSet] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

fn part_admissible(matrix: &IntMatrix, part: &[usize], remaining: &[usize]) -> bool {
    for c in 0..matrix.cols() {
        let count = part.iter().filter(|&&r| matrix.get(r, c) != 0).count();
        if count > 2 {
            return false;
        }
        if count == 1 && remaining.iter().any(|&r| matrix.get(r, c) != 0) {
            return false;
        }
    }
    true
}

fn nonempty_subsets_lex(elements: &[usize]) -> Vec<Vec<usize>> {
    let mut subsets = Vec::with_capacity((1usize << elements.len()) - 1);
    for mask in 1u32..(1u32 << elements.len()) {
        let subset: Vec<usize> = elements
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        subsets.push(subset);
    }
    subsets.sort();
    subsets
}

fn partition_search(
    matrix: &IntMatrix,
    remaining: &[usize],
    parts_left: usize,
    acc: &mut Vec<Vec<usize>>,
) -> bool {
    if remaining.is_empty() {
        return parts_left == 0;
    }
    if parts_left == 0 {
        return false;
    }
    for part in nonempty_subsets_lex(remaining) {
        let rest: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|r| !part.contains(r))
            .collect();
        if (rest.is_empty()) != (parts_left == 1) {
            continue;
        }
        if part_admissible(matrix, &part, &rest) {
            acc.push(part);
            if partition_search(matrix, &rest, parts_left - 1, acc) {
                return true;
            }
            acc.pop();
        }
    }
    false
}

/// Searches for an ordered row partition in which every column has at
/// most two nonzeros per part and a column with exactly one nonzero in
/// a part has none in all later parts.
///
/// The search is exhaustive (hence the [`PARTITION_ROW_CAP`]),
/// minimizes the number of parts, and among minimal partitions returns
/// the lexicographically first.  `None` means no partition exists,
/// which refutes strong unimodularity; existence proves nothing.
pub fn find_row_partition(matrix: &IntMatrix) -> Result<Option<RowPartition>, StructureError> {
    find_row_partition_with(matrix, PARTITION_ROW_CAP)
}

/// [`find_row_partition`] with the row cap overridden.
pub fn find_row_partition_with(
    matrix: &IntMatrix,
    cap: usize,
) -> Result<Option<RowPartition>, StructureError> {
    let rows = matrix.rows();
    if rows > cap {
        return Err(StructureError::PartitionCapExceeded { rows, cap });
    }
    let all: Vec<usize> = (0..rows).collect();
    for part_count in 1..=rows.max(1) {
        let mut acc = Vec::new();
        if partition_search(matrix, &all, part_count, &mut acc) {
            return Ok(Some(
                RowPartition::new(acc, rows).expect("search yields a valid partition"),
            ));
        }
    }
    Ok(None)
}

/// How a (column, part) pair violates the partition laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// More than two nonzeros of the column fall in the part.
    MoreThanTwo,
    /// The part holds exactly one nonzero of the column but a later
    /// part holds another.
    SingletonContinues,
}

/// First violation found when checking a partition, if any.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PartitionViolation {
    pub part: usize,
    pub column: usize,
    pub kind: ViolationKind,
}

/// Outcome of [`verify_row_partition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub verified: bool,
    pub violation: Option<PartitionViolation>,
}

/// Checks the two partition laws, reporting the first violating
/// (part, column) pair in part-major, column-ascending order.
pub fn verify_row_partition(
    matrix: &IntMatrix,
    partition: &RowPartition,
) -> Result<PartitionReport, StructureError> {
    let revalidated = RowPartition::new(
        partition
            .parts
            .iter()
            .map(|p| p.as_slice().to_vec())
            .collect(),
        matrix.rows(),
    )?;
    for (i, part) in revalidated.parts().iter().enumerate() {
        for c in 0..matrix.cols() {
            let count = part.iter().filter(|&&r| matrix.get(r, c) != 0).count();
            if count > 2 {
                return Ok(PartitionReport {
                    verified: false,
                    violation: Some(PartitionViolation {
                        part: i,
                        column: c,
                        kind: ViolationKind::MoreThanTwo,
                    }),
                });
            }
            if count == 1
                && revalidated.parts()[i + 1..]
                    .iter()
                    .any(|later| later.iter().any(|&r| matrix.get(r, c) != 0))
            {
                return Ok(PartitionReport {
                    verified: false,
                    violation: Some(PartitionViolation {
                        part: i,
                        column: c,
                        kind: ViolationKind::SingletonContinues,
                    }),
                });
            }
        }
    }
    Ok(PartitionReport {
        verified: true,
        violation: None,
    })
}

/// Whether a violated count sits on a row or a column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    Row,
    Column,
}

/// A line of a block whose nonzero count is neither 0 nor 2.
/// `index` is the row/column index in the full matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CountViolation {
    pub block_row: usize,
    pub block_col: usize,
    pub kind: LineKind,
    pub index: usize,
    pub nonzeros: usize,
}

/// Verdict for one block under the cycle clause.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CycleStatus {
    /// Two nonzeros in every row and column, bipartite graph a single
    /// cycle.
    SingleCycle,
    /// Two nonzeros in every row and column but disconnected.
    NotSingleCycle,
    /// The clause does not apply (some line has other than exactly two
    /// nonzeros); deliberately not reported as a pass.
    Unchecked,
}

/// Cycle-clause verdict for the block at (block_row, block_col).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BlockCycleReport {
    pub block_row: usize,
    pub block_col: usize,
    pub status: CycleStatus,
}

/// Outcome of [`verify_final_structure`]: per-clause results for the
/// arrangement of a matrix by a row partition and a column partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalStructureReport {
    /// True when the leading and border clauses hold and no block
    /// fails the cycle clause (unchecked blocks do not count against).
    pub holds: bool,
    /// First 0-or-2 violation inside the leading block, if any.
    pub corner_violation: Option<CountViolation>,
    /// First 0-or-2 violation among first-block-row columns and
    /// first-block-column rows, if any.
    pub border_violation: Option<CountViolation>,
    /// Cycle-clause verdict for every block, row-major.
    pub cycle_blocks: Vec<BlockCycleReport>,
}

fn line_counts(block: &IntMatrix) -> (Vec<usize>, Vec<usize>) {
    let row_counts = (0..block.rows())
        .map(|r| block.row(r).iter().filter(|&&v| v != 0).count())
        .collect();
    let col_counts = (0..block.cols())
        .map(|c| block.col(c).iter().filter(|&&v| v != 0).count())
        .collect();
    (row_counts, col_counts)
}

fn block_is_single_cycle(block: &IntMatrix) -> bool {
    let graph = bipartite_graph(block);
    graph.components().len() == 1
}

/// Checks the block form induced by a row partition and a column
/// partition: the leading block must have 0 or 2 nonzeros in each row
/// and column; every column of a first-block-row block and every row
/// of a first-block-column block must have 0 or 2 nonzeros; and every
/// block with exactly two nonzeros in each row and column must have a
/// bipartite graph forming one single cycle.  Blocks the cycle clause
/// does not cover are reported [`CycleStatus::Unchecked`].
pub fn verify_final_structure(
    matrix: &IntMatrix,
    row_partition: &RowPartition,
    col_partition: &RowPartition,
) -> Result<FinalStructureReport, StructureError> {
    let rows_ok = RowPartition::new(
        row_partition
            .parts
            .iter()
            .map(|p| p.as_slice().to_vec())
            .collect(),
        matrix.rows(),
    )?;
    let cols_ok = RowPartition::new(
        col_partition
            .parts
            .iter()
            .map(|p| p.as_slice().to_vec())
            .collect(),
        matrix.cols(),
    )?;
    let block_at = |i: usize, j: usize| -> Result<IntMatrix, StructureError> {
        Ok(matrix.submatrix(&rows_ok.parts()[i], &cols_ok.parts()[j])?)
    };

    let mut corner_violation = None;
    let corner = block_at(0, 0)?;
    let (row_counts, col_counts) = line_counts(&corner);
    for (r, &count) in row_counts.iter().enumerate() {
        if count != 0 && count != 2 {
            corner_violation = Some(CountViolation {
                block_row: 0,
                block_col: 0,
                kind: LineKind::Row,
                index: rows_ok.parts()[0].as_slice()[r],
                nonzeros: count,
            });
            break;
        }
    }
    if corner_violation.is_none() {
        for (c, &count) in col_counts.iter().enumerate() {
            if count != 0 && count != 2 {
                corner_violation = Some(CountViolation {
                    block_row: 0,
                    block_col: 0,
                    kind: LineKind::Column,
                    index: cols_ok.parts()[0].as_slice()[c],
                    nonzeros: count,
                });
                break;
            }
        }
    }

    let mut border_violation = None;
    'border: for j in 0..cols_ok.len() {
        let block = block_at(0, j)?;
        let (_, col_counts) = line_counts(&block);
        for (c, &count) in col_counts.iter().enumerate() {
            if count != 0 && count != 2 {
                border_violation = Some(CountViolation {
                    block_row: 0,
                    block_col: j,
                    kind: LineKind::Column,
                    index: cols_ok.parts()[j].as_slice()[c],
                    nonzeros: count,
                });
                break 'border;
            }
        }
    }
    if border_violation.is_none() {
        'border_rows: for i in 0..rows_ok.len() {
            let block = block_at(i, 0)?;
            let (row_counts, _) = line_counts(&block);
            for (r, &count) in row_counts.iter().enumerate() {
                if count != 0 && count != 2 {
                    border_violation = Some(CountViolation {
                        block_row: i,
                        block_col: 0,
                        kind: LineKind::Row,
                        index: rows_ok.parts()[i].as_slice()[r],
                        nonzeros: count,
                    });
                    break 'border_rows;
                }
            }
        }
    }

    let mut cycle_blocks = Vec::new();
    for i in 0..rows_ok.len() {
        for j in 0..cols_ok.len() {
            let block = block_at(i, j)?;
            let (row_counts, col_counts) = line_counts(&block);
            let status = if row_counts.iter().all(|&c| c == 2) && col_counts.iter().all(|&c| c == 2)
            {
                if block_is_single_cycle(&block) {
                    CycleStatus::SingleCycle
                } else {
                    CycleStatus::NotSingleCycle
                }
            } else {
                CycleStatus::Unchecked
            };
            cycle_blocks.push(BlockCycleReport {
                block_row: i,
                block_col: j,
                status,
            });
        }
    }

    let holds = corner_violation.is_none()
        && border_violation.is_none()
        && cycle_blocks
            .iter()
            .all(|b| b.status != CycleStatus::NotSingleCycle);
    Ok(FinalStructureReport {
        holds,
        corner_violation,
        border_violation,
        cycle_blocks,
    })
}
