//! The binary matroid represented by `[I | N]`.
//!
//! A matrix `N` with `m` rows and `n` columns represents a binary
//! matroid on ground set `0..m+n`: element `i < m` stands for the `i`-th
//! unit column of the identity block, element `m + j` for column `j` of
//! `N` (reduced mod 2).  [`ReprMatroid`] exposes the rank oracle, the
//! connectivity function `lambda(X) = r(X) + r(E-X) - r(E)`, Tutte
//! connectivity with explicit separation witnesses, and circuit
//! enumeration.  [`is_r10`] recognizes — up to matroid isomorphism —
//! the exceptional 10-element regular matroid that 5x5 matrices such as
//! the reference matrices `B1` and `B2` represent.
//!
//! Everything is exhaustive over subsets of the ground set, so the
//! expensive operations carry explicit caps ([`CIRCUIT_GROUND_CAP`],
//! [`CONNECTIVITY_GROUND_CAP`]).

use crate::catalog::{paper_matrix, PaperMatrix};
use crate::exactmat::{k_subsets, IntMatrix, MatrixError};
use std::collections::HashSet;
use std::sync::LazyLock;

/// Cap on the ground size for circuit enumeration.
pub const CIRCUIT_GROUND_CAP: usize = 12;

/// Cap on the ground size for the connectivity search.
pub const CONNECTIVITY_GROUND_CAP: usize = 18;

/// Errors from matroid queries.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error("element {element} out of range for ground set of size {ground}")]
    ElementOutOfRange { element: usize, ground: usize },
    #[error("element {element} appears twice in the query set")]
    DuplicateElement { element: usize },
    #[error("ground set size {ground} exceeds cap {cap}")]
    CapExceeded { ground: usize, cap: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// A separation witnessing that a matroid is not `order+1`-connected:
/// `side` and its complement both have at least `order` elements and the
/// connectivity across the split is `lambda = order - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidSeparation {
    pub side: Vec<usize>,
    pub order: u8,
    pub lambda: usize,
}

/// Verdict of a connectivity check, with a witness when it fails.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KConnectivity {
    pub connected: bool,
    pub witness: Option<MatroidSeparation>,
}

/// The binary matroid represented by `[I | N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReprMatroid {
    matrix: IntMatrix,
}

impl ReprMatroid {
    pub fn new(matrix: &IntMatrix) -> Self {
        ReprMatroid {
            matrix: matrix.clone(),
        }
    }

    /// Size of the ground set: rows + columns of `N`.
    pub fn ground_size(&self) -> usize {
        self.matrix.rows() + self.matrix.cols()
    }

    /// Rank of the whole matroid (the identity block is always there).
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    fn check_elements(&self, elements: &[usize]) -> Result<(), MatroidError> {
        let ground = self.ground_size();
        let mut seen = vec![false; ground];
        for &element in elements {
            if element >= ground {
                return Err(MatroidError::ElementOutOfRange { element, ground });
            }
            if seen[element] {
                return Err(MatroidError::DuplicateElement { element });
            }
            seen[element] = true;
        }
        Ok(())
    }

    /// GF(2) rank of a set of elements.
    pub fn rank_of(&self, elements: &[usize]) -> Result<usize, MatroidError> {
        self.check_elements(elements)?;
        Ok(self.rank_of_unchecked(elements))
    }

    fn rank_of_unchecked(&self, elements: &[usize]) -> usize {
        let rows = self.matrix.rows();
        let mut picked = IntMatrix::zero(rows, elements.len());
        for (j, &element) in elements.iter().enumerate() {
            if element < rows {
                picked.set(element, j, 1);
            } else {
                for r in 0..rows {
                    picked.set(r, j, self.matrix.get(r, element - rows));
                }
            }
        }
        picked.gf2_rank()
    }

    /// The connectivity function `lambda(X) = r(X) + r(E - X) - r(E)`.
    pub fn lambda(&self, side: &[usize]) -> Result<usize, MatroidError> {
        self.check_elements(side)?;
        let members: HashSet<usize> = side.iter().copied().collect();
        let complement: Vec<usize> = (0..self.ground_size())
            .filter(|e| !members.contains(e))
            .collect();
        Ok(self.rank_of_unchecked(side) + self.rank_of_unchecked(&complement) - self.rank())
    }

    /// Tutte `k`-connectivity: true when no `j`-separation exists for
    /// any `j < k`.  On failure the witness names the first violating
    /// side in (size, lexicographic) order, its separation order
    /// `lambda + 1`, and the connectivity value across it.
    pub fn is_k_connected(&self, k: u8) -> Result<KConnectivity, MatroidError> {
        self.is_k_connected_with(k, CONNECTIVITY_GROUND_CAP)
    }

    /// [`Self::is_k_connected`] with the ground-set cap overridden.
    pub fn is_k_connected_with(&self, k: u8, cap: usize) -> Result<KConnectivity, MatroidError> {
        let ground = self.ground_size();
        if ground > cap {
            return Err(MatroidError::CapExceeded { ground, cap });
        }
        if k <= 1 || ground == 0 {
            return Ok(KConnectivity {
                connected: true,
                witness: None,
            });
        }
        // One side of a partition contains element 0, so fixing it
        // there enumerates each unordered split once.
        for size in 1..=ground.saturating_sub(1) {
            for rest in k_subsets(ground - 1, size - 1) {
                let mut side = vec![0usize];
                side.extend(rest.iter().map(|&e| e + 1));
                let lambda = self
                    .lambda(&side)
                    .expect("enumerated side is a valid element set");
                let min_side = side.len().min(ground - side.len());
                // `side` yields a j-separation for every j with
                // lambda + 1 <= j <= min_side; it violates
                // k-connectivity when some such j is below k.
                if lambda + 2 <= k as usize && min_side > lambda {
                    return Ok(KConnectivity {
                        connected: false,
                        witness: Some(MatroidSeparation {
                            side,
                            order: (lambda + 1) as u8,
                            lambda,
                        }),
                    });
                }
            }
        }
        Ok(KConnectivity {
            connected: true,
            witness: None,
        })
    }

    /// All circuits (minimal dependent sets), sorted by size then
    /// lexicographically.
    pub fn circuits(&self) -> Result<Vec<Vec<usize>>, MatroidError> {
        let ground = self.ground_size();
        if ground > CIRCUIT_GROUND_CAP {
            return Err(MatroidError::CapExceeded {
                ground,
                cap: CIRCUIT_GROUND_CAP,
            });
        }
        let mut circuits: Vec<Vec<usize>> = Vec::new();
        for size in 1..=ground {
            for subset in k_subsets(ground, size) {
                // Skip supersets of an already-found (smaller) circuit.
                if circuits
                    .iter()
                    .any(|c| c.iter().all(|e| subset.binary_search(e).is_ok()))
                {
                    continue;
                }
                if self.rank_of_unchecked(&subset) < subset.len() {
                    circuits.push(subset);
                }
            }
        }
        Ok(circuits)
    }
}

struct R10Data {
    circuit_set: HashSet<Vec<usize>>,
    /// Sorted circuit sizes, the isomorphism-invariant fingerprint.
    sizes: Vec<usize>,
    /// Per element: sorted sizes of the circuits through it.
    signatures: Vec<Vec<usize>>,
}

static R10: LazyLock<R10Data> = LazyLock::new(|| {
    let reference = ReprMatroid::new(&paper_matrix(PaperMatrix::B1));
    let circuits = reference
        .circuits()
        .expect("the 10-element reference is under the circuit cap");
    let mut sizes: Vec<usize> = circuits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let signatures = element_signatures(&circuits, reference.ground_size());
    R10Data {
        circuit_set: circuits.into_iter().collect(),
        sizes,
        signatures,
    }
});

fn element_signatures(circuits: &[Vec<usize>], ground: usize) -> Vec<Vec<usize>> {
    let mut signatures = vec![Vec::new(); ground];
    for circuit in circuits {
        for &element in circuit {
            signatures[element].push(circuit.len());
        }
    }
    for signature in &mut signatures {
        signature.sort_unstable();
    }
    signatures
}

/// Does the 5x5 matrix `N` represent — as a binary matroid, up to
/// isomorphism — the exceptional 10-element regular matroid?
///
/// Matrices of any other shape answer `false` immediately.  Otherwise
/// the circuits of `[I | N]` are compared against the reference by
/// size fingerprint, then an exhaustive circuit-preserving bijection
/// search (pruned by per-element circuit-size signatures) settles
/// isomorphism exactly.
pub fn is_r10(matrix: &IntMatrix) -> bool {
    if matrix.rows() != 5 || matrix.cols() != 5 {
        return false;
    }
    let candidate = ReprMatroid::new(matrix);
    let circuits = candidate
        .circuits()
        .expect("ground set of 10 is under the circuit cap");
    let mut sizes: Vec<usize> = circuits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    let reference = &*R10;
    if sizes != reference.sizes {
        return false;
    }
    let signatures = element_signatures(&circuits, 10);
    // Group candidate circuits by their largest element so each is
    // verified as soon as its last element gets mapped.
    let mut by_max: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); 10];
    for circuit in &circuits {
        by_max[*circuit.last().expect("circuits are nonempty")].push(circuit);
    }
    let mut mapping = [usize::MAX; 10];
    let mut used = [false; 10];
    map_elements(0, &mut mapping, &mut used, &signatures, &by_max, reference)
}

fn map_elements(
    element: usize,
    mapping: &mut [usize; 10],
    used: &mut [bool; 10],
    signatures: &[Vec<usize>],
    by_max: &[Vec<&Vec<usize>>],
    reference: &R10Data,
) -> bool {
    if element == 10 {
        return true;
    }
    'targets: for target in 0..10 {
        if used[target] || signatures[element] != reference.signatures[target] {
            continue;
        }
        mapping[element] = target;
        used[target] = true;
        // Circuits ending at this element are now fully mapped; their
        // images must be reference circuits.
        for circuit in &by_max[element] {
            let mut image: Vec<usize> = circuit.iter().map(|&e| mapping[e]).collect();
            image.sort_unstable();
            if !reference.circuit_set.contains(&image) {
                used[target] = false;
                continue 'targets;
            }
        }
        if map_elements(element + 1, mapping, used, signatures, by_max, reference) {
            return true;
        }
        used[target] = false;
    }
    mapping[element] = usize::MAX;
    false
}
