//! Reference matrices, directed graphs, network matrices, wheels, and
//! seeded corpus generation.
//!
//! The four named matrices returned by [`paper_matrix`] are the small
//! benchmarks the rest of the crate (and its test-suite) keeps coming
//! back to: two 5x5 matrices representing the exceptional 10-element
//! regular matroid — one circulant (`B1`), one with a full first row and
//! first column (`B2`) — and the 3x3 pair `N1` (strongly unimodular) and
//! `N2` (totally but not strongly unimodular) that witness how the
//! property depends on the spanning tree chosen for a graph.
//!
//! Network matrices tie the catalog to graphs: given a directed graph
//! and a spanning tree, the network matrix records how each non-tree arc
//! routes through the tree.  Network matrices are always totally
//! unimodular; whether they are *strongly* unimodular depends on the
//! tree, and [`wheel`] graphs provide the classic examples both ways.

use crate::exactmat::{k_subsets, IntMatrix, MatrixError};
use crate::unimodularity::{is_su, UnimodError};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

/// Errors from catalog constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("invalid tree selection: {0}")]
    InvalidTree(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Unimod(#[from] UnimodError),
}

/// The four named reference matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperMatrix {
    /// 5x5 circulant of `1 0 0 1 -1`; totally but not strongly
    /// unimodular, represents the exceptional 10-element regular matroid.
    B1,
    /// 5x5 with full first row and column; same matroid as `B1`, also
    /// totally but not strongly unimodular.
    B2,
    /// 3x3 strongly unimodular matrix arising from a star spanning tree
    /// of the 3-wheel.
    N1,
    /// 3x3 totally but not strongly unimodular matrix arising from a
    /// path spanning tree of the 3-wheel.
    N2,
}

/// Returns a fresh copy of a named reference matrix.
pub fn paper_matrix(which: PaperMatrix) -> IntMatrix {
    let rows: &[&[i64]] = match which {
        PaperMatrix::B1 => &[
            &[1, 0, 0, 1, -1],
            &[-1, 1, 0, 0, 1],
            &[1, -1, 1, 0, 0],
            &[0, 1, -1, 1, 0],
            &[0, 0, 1, -1, 1],
        ],
        PaperMatrix::B2 => &[
            &[1, 1, 1, 1, 1],
            &[1, 1, 1, 0, 0],
            &[1, 0, 1, 1, 0],
            &[1, 0, 0, 1, 1],
            &[1, 1, 0, 0, 1],
        ],
        PaperMatrix::N1 => &[&[1, 0, 1], &[-1, 1, 0], &[0, 1, 1]],
        PaperMatrix::N2 => &[&[1, 1, 0], &[0, 1, 1], &[1, 1, 1]],
    };
    IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("reference matrices are well-formed")
}

/// A directed graph on vertices `0..vertex_count` with arcs stored as
/// `(tail, head)` pairs addressed by their position (arc id).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digraph {
    vertex_count: usize,
    arcs: Vec<(usize, usize)>,
}

impl Digraph {
    /// Validates vertex bounds and rejects self-loops.  Parallel arcs
    /// (same or opposite orientation) are allowed.
    pub fn new(vertex_count: usize, arcs: Vec<(usize, usize)>) -> Result<Self, CatalogError> {
        for (id, &(tail, head)) in arcs.iter().enumerate() {
            if tail >= vertex_count || head >= vertex_count {
                return Err(CatalogError::InvalidDigraph(format!(
                    "arc {id} = ({tail},{head}) leaves 0..{vertex_count}"
                )));
            }
            if tail == head {
                return Err(CatalogError::InvalidDigraph(format!(
                    "arc {id} is a self-loop at {tail}"
                )));
            }
        }
        Ok(Digraph { vertex_count, arcs })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }
}

/// A spanning tree of a [`Digraph`], stored as strictly increasing arc
/// ids.  Validated at construction: exactly `vertex_count - 1` distinct
/// arcs whose underlying edges connect every vertex without a cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSelection {
    arc_ids: Vec<usize>,
}

impl TreeSelection {
    pub fn new(graph: &Digraph, mut arc_ids: Vec<usize>) -> Result<Self, CatalogError> {
        arc_ids.sort_unstable();
        arc_ids.dedup();
        let needed = graph.vertex_count().saturating_sub(1);
        if arc_ids.len() != needed {
            return Err(CatalogError::InvalidTree(format!(
                "{} distinct arcs selected, a spanning tree needs {needed}",
                arc_ids.len()
            )));
        }
        let mut parent: Vec<usize> = (0..graph.vertex_count()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &id in &arc_ids {
            let &(tail, head) = graph
                .arcs()
                .get(id)
                .ok_or_else(|| CatalogError::InvalidTree(format!("arc id {id} out of range")))?;
            let (a, b) = (find(&mut parent, tail), find(&mut parent, head));
            if a == b {
                return Err(CatalogError::InvalidTree(format!(
                    "selected arcs contain a cycle through arc {id}"
                )));
            }
            parent[a] = b;
        }
        Ok(TreeSelection { arc_ids })
    }

    pub fn arc_ids(&self) -> &[usize] {
        &self.arc_ids
    }
}

/// The network matrix of `graph` with respect to spanning tree `tree`.
///
/// Rows are indexed by the tree arcs in ascending arc id, columns by the
/// non-tree arcs in ascending arc id.  For a non-tree arc `(u, v)` the
/// column records the unique tree path from `u` to `v`: `+1` where a
/// tree arc is traversed in its own direction, `-1` against it, `0` off
/// the path.  Network matrices are always totally unimodular.
pub fn network_matrix(graph: &Digraph, tree: &TreeSelection) -> Result<IntMatrix, CatalogError> {
    let tree_ids = tree.arc_ids();
    let in_tree: std::collections::HashSet<usize> = tree_ids.iter().copied().collect();
    let nontree_ids: Vec<usize> = (0..graph.arcs().len())
        .filter(|id| !in_tree.contains(id))
        .collect();
    // Undirected adjacency over the tree: (neighbor, row index, direction).
    let mut adjacency: Vec<Vec<(usize, usize, i64)>> = vec![Vec::new(); graph.vertex_count()];
    for (row, &id) in tree_ids.iter().enumerate() {
        let (tail, head) = graph.arcs()[id];
        adjacency[tail].push((head, row, 1));
        adjacency[head].push((tail, row, -1));
    }
    let mut matrix = IntMatrix::zero(tree_ids.len(), nontree_ids.len());
    for (col, &id) in nontree_ids.iter().enumerate() {
        let (from, to) = graph.arcs()[id];
        // BFS over the tree records, per vertex, the step taken into it.
        let mut step: Vec<Option<(usize, usize, i64)>> = vec![None; graph.vertex_count()];
        let mut seen = vec![false; graph.vertex_count()];
        seen[from] = true;
        let mut queue = std::collections::VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                break;
            }
            for &(next, row, direction) in &adjacency[v] {
                if !seen[next] {
                    seen[next] = true;
                    step[next] = Some((v, row, direction));
                    queue.push_back(next);
                }
            }
        }
        if !seen[to] {
            return Err(CatalogError::InvalidTree(format!(
                "tree does not connect vertices {from} and {to}"
            )));
        }
        let mut vertex = to;
        while vertex != from {
            let (previous, row, direction) = step[vertex].expect("every visited vertex has a step");
            matrix.set(row, col, direction);
            vertex = previous;
        }
    }
    Ok(matrix)
}

/// The wheel with `rim` rim vertices (so `rim + 1` vertices in total).
///
/// Vertex 0 is the hub.  Arcs are the spokes `(0, i)` for `i = 1..=rim`
/// (ids `0..rim`), then the rim cycle `(1,2), (2,3), .., (rim, 1)` (ids
/// `rim..2*rim`).
///
/// # Panics
/// Panics if `rim < 3`; smaller wheels are degenerate.
pub fn wheel(rim: usize) -> Digraph {
    assert!(rim >= 3, "a wheel needs at least 3 rim vertices");
    let mut arcs = Vec::with_capacity(2 * rim);
    for i in 1..=rim {
        arcs.push((0, i));
    }
    for i in 1..=rim {
        arcs.push((i, if i == rim { 1 } else { i + 1 }));
    }
    Digraph::new(rim + 1, arcs).expect("wheel construction is valid")
}

/// The star spanning tree of [`wheel`]`(3)`: the three spokes.  Its
/// network matrix is equivalent (up to row/column permutation and
/// signing) to [`PaperMatrix::N1`] and is strongly unimodular.
pub fn w3_tree_star() -> TreeSelection {
    TreeSelection::new(&wheel(3), vec![0, 1, 2]).expect("spokes span the 3-wheel")
}

/// A path spanning tree of [`wheel`]`(3)`: one spoke plus two rim arcs.
/// Its network matrix is equivalent to [`PaperMatrix::N2`]: totally but
/// not strongly unimodular.
pub fn w3_tree_path() -> TreeSelection {
    TreeSelection::new(&wheel(3), vec![0, 3, 4]).expect("path spans the 3-wheel")
}

/// Enumerates every spanning tree of `graph`, in ascending lexicographic
/// order of their arc id vectors.  Exhaustive over arc subsets, so meant
/// for the small graphs this crate works with.
pub fn spanning_trees(graph: &Digraph) -> Vec<TreeSelection> {
    if graph.vertex_count() == 0 {
        return Vec::new();
    }
    k_subsets(graph.arcs().len(), graph.vertex_count() - 1)
        .filter_map(|ids| TreeSelection::new(graph, ids).ok())
        .collect()
}

/// Corpus generation profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Profile {
    /// Small strongly unimodular network matrices.
    SuSmall,
    /// Strongly unimodular matrices assembled by 1-/2-sums and
    /// unimodularity-preserving extensions of smaller SU pieces.
    SuComposed,
    /// Totally but not strongly unimodular matrices.
    NonSu,
    /// Network matrices with no guarantee beyond total unimodularity.
    TuRandom,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::SuSmall => "su_small",
            Profile::SuComposed => "su_composed",
            Profile::NonSu => "non_su",
            Profile::TuRandom => "tu_random",
        }
    }
}

/// One generated matrix together with the recipe that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub recipe: String,
    pub matrix: IntMatrix,
}

/// A deterministic generated corpus: same profile, seed, and count
/// always reproduce the same entries.  `generator` names the stream
/// algorithm so the corpus can be regenerated by other implementations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub profile: Profile,
    pub seed: u64,
    pub generator: String,
    pub entries: Vec<CorpusEntry>,
}

/// Generates `count` matrices under `profile`, deterministically from
/// `seed`.
///
/// Every matrix in an `su_*` corpus is certified strongly unimodular
/// before it is admitted, every `non_su` matrix is certified *not*
/// strongly unimodular, and `tu_random` matrices are network matrices
/// (totally unimodular by construction).
pub fn gen_corpus(profile: Profile, seed: u64, count: usize) -> Corpus {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut entries = Vec::with_capacity(count);
    while entries.len() < count {
        let candidate = match profile {
            Profile::SuSmall => sample_su_small(&mut rng),
            Profile::SuComposed => sample_su_composed(&mut rng),
            Profile::NonSu => sample_non_su(&mut rng),
            Profile::TuRandom => Some(sample_network(&mut rng, 3, 7, 4)),
        };
        if let Some(entry) = candidate {
            entries.push(entry);
        }
    }
    Corpus {
        profile,
        seed,
        generator: "chacha8".to_string(),
        entries,
    }
}

fn su_holds(matrix: &IntMatrix) -> bool {
    matches!(is_su(matrix), Ok(cert) if cert.holds)
}

/// A random connected digraph with a known spanning tree, rendered as
/// its network matrix plus the recipe text.
fn sample_network(
    rng: &mut rand_chacha::ChaCha8Rng,
    min_vertices: usize,
    max_vertices: usize,
    max_extra_arcs: usize,
) -> CorpusEntry {
    let vertices = rng.gen_range(min_vertices..=max_vertices);
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for vertex in 1..vertices {
        let other = rng.gen_range(0..vertex);
        if rng.gen_bool(0.5) {
            arcs.push((other, vertex));
        } else {
            arcs.push((vertex, other));
        }
    }
    let extras = rng.gen_range(1..=max_extra_arcs);
    let mut attempts = 0;
    while arcs.len() < vertices - 1 + extras && attempts < 64 {
        attempts += 1;
        let tail = rng.gen_range(0..vertices);
        let head = rng.gen_range(0..vertices);
        if tail != head && !arcs.contains(&(tail, head)) {
            arcs.push((tail, head));
        }
    }
    let graph = Digraph::new(vertices, arcs.clone()).expect("sampled digraph is valid");
    let tree =
        TreeSelection::new(&graph, (0..vertices - 1).collect()).expect("first arcs form a tree");
    let matrix = network_matrix(&graph, &tree).expect("tree spans the sampled graph");
    let recipe = format!(
        "network vertices={vertices} arcs={arcs:?} tree={:?}",
        tree.arc_ids()
    );
    CorpusEntry { recipe, matrix }
}

fn sample_su_small(rng: &mut rand_chacha::ChaCha8Rng) -> Option<CorpusEntry> {
    let entry = sample_network(rng, 3, 6, 3);
    su_holds(&entry.matrix).then_some(entry)
}

fn sample_su_composed(rng: &mut rand_chacha::ChaCha8Rng) -> Option<CorpusEntry> {
    let left = sample_su_small(rng)?;
    let combined = match rng.gen_range(0..3) {
        0 => {
            let right = sample_su_small(rng)?;
            let matrix = crate::ksum::one_sum(&left.matrix, &right.matrix);
            CorpusEntry {
                recipe: format!("one_sum[{} | {}]", left.recipe, right.recipe),
                matrix,
            }
        }
        1 => {
            let right = sample_su_small(rng)?;
            let matrix = crate::ksum::two_sum(&left.matrix, &right.matrix).ok()?;
            CorpusEntry {
                recipe: format!("two_sum[{} | {}]", left.recipe, right.recipe),
                matrix,
            }
        }
        _ => left,
    };
    let extended = random_extension(rng, combined)?;
    su_holds(&extended.matrix).then_some(extended)
}

fn random_extension(rng: &mut rand_chacha::ChaCha8Rng, entry: CorpusEntry) -> Option<CorpusEntry> {
    use crate::exactmat::Extension;
    let matrix = &entry.matrix;
    if matrix.rows() == 0 || matrix.cols() == 0 {
        return Some(entry);
    }
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    let (ext, label) = match rng.gen_range(0..6) {
        0 => (
            Extension::ZeroRow {
                at: rng.gen_range(0..=matrix.rows()),
            },
            "zero_row",
        ),
        1 => (
            Extension::ZeroCol {
                at: rng.gen_range(0..=matrix.cols()),
            },
            "zero_col",
        ),
        2 => (
            Extension::UnitRow {
                at: rng.gen_range(0..=matrix.rows()),
                unit_col: rng.gen_range(0..matrix.cols()),
                sign,
            },
            "unit_row",
        ),
        3 => (
            Extension::UnitCol {
                at: rng.gen_range(0..=matrix.cols()),
                unit_row: rng.gen_range(0..matrix.rows()),
                sign,
            },
            "unit_col",
        ),
        4 => (
            Extension::DupRow {
                source: rng.gen_range(0..matrix.rows()),
                at: rng.gen_range(0..=matrix.rows()),
                sign,
            },
            "dup_row",
        ),
        _ => (
            Extension::DupCol {
                source: rng.gen_range(0..matrix.cols()),
                at: rng.gen_range(0..=matrix.cols()),
                sign,
            },
            "dup_col",
        ),
    };
    let matrix = entry.matrix.extend(&ext).ok()?;
    Some(CorpusEntry {
        recipe: format!("{} + {label}", entry.recipe),
        matrix,
    })
}

fn sample_non_su(rng: &mut rand_chacha::ChaCha8Rng) -> Option<CorpusEntry> {
    let entry = match rng.gen_range(0..3) {
        0 => {
            // A reference matrix grown by unimodularity-preserving
            // extensions; extensions never repair an SU violation.
            let (which, label) = match rng.gen_range(0..3) {
                0 => (PaperMatrix::B1, "B1"),
                1 => (PaperMatrix::B2, "B2"),
                _ => (PaperMatrix::N2, "N2"),
            };
            let mut entry = CorpusEntry {
                recipe: format!("reference {label}"),
                matrix: paper_matrix(which),
            };
            for _ in 0..rng.gen_range(0..=2) {
                entry = random_extension(rng, entry)?;
            }
            entry
        }
        1 => {
            // A wheel with a random spanning tree; most trees give a
            // network matrix that is not strongly unimodular.
            let rim = rng.gen_range(3..=6);
            let graph = wheel(rim);
            let trees = spanning_trees(&graph);
            let tree = trees[rng.gen_range(0..trees.len())].clone();
            let matrix = network_matrix(&graph, &tree).expect("enumerated trees span");
            CorpusEntry {
                recipe: format!("wheel rim={rim} tree={:?}", tree.arc_ids()),
                matrix,
            }
        }
        _ => {
            // A network matrix with an all-ones 2x2 block forced in.
            let mut entry = sample_network(rng, 4, 6, 3);
            if entry.matrix.rows() < 2 || entry.matrix.cols() < 2 {
                return None;
            }
            let row = rng.gen_range(0..entry.matrix.rows() - 1);
            let col = rng.gen_range(0..entry.matrix.cols() - 1);
            for dr in 0..2 {
                for dc in 0..2 {
                    entry.matrix.set(row + dr, col + dc, 1);
                }
            }
            entry.recipe = format!("{} + ones_block@({row},{col})", entry.recipe);
            entry
        }
    };
    // Admit only matrices that are TU yet not SU: the certificate shows
    // this directly when the recorded violation required a zeroing.
    match is_su(&entry.matrix) {
        Ok(cert)
            if !cert.holds
                && cert
                    .witness
                    .as_ref()
                    .is_some_and(|w| w.zeroed_entry.is_some()) =>
        {
            Some(entry)
        }
        _ => None,
    }
}
