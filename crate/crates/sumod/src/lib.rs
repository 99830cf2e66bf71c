//! Exact-arithmetic toolkit for totally and strongly unimodular matrices.
//!
//! A matrix with entries in {-1, 0, +1} is *totally unimodular* (TU) when
//! every square submatrix has determinant -1, 0, or +1, and *strongly
//! unimodular* (SU) when it is TU and stays TU after any single nonzero
//! entry is replaced by zero.  This crate certifies both properties with
//! explicit witnesses, composes and decomposes matrices along 1-, 2- and
//! 3-sums, inspects the binary matroids they represent, and extracts the
//! structural objects (dense blocks, bordered-path witnesses, row
//! partitions) that explain why a matrix fails or passes the stronger
//! property.
//!
//! All arithmetic is exact: determinants are computed by fraction-free
//! elimination over `i64` with checked operations, ranks over the
//! rationals or GF(2), and nothing ever goes through floating point.
//! Exhaustive scans carry explicit size caps and report when a cap is
//! exceeded rather than silently degrading.
//!
//! Module map:
//!
//! * [`exactmat`] — dense integer matrices, index sets, determinant/rank,
//!   submatrix extraction, pivoting, permutation/scaling equivalence, the
//!   plain-text matrix format.
//! * [`unimodularity`] — TU and SU certificates with pinned witnesses,
//!   the Ghouila-Houri signing criterion, and the two-nonzeros fast rule.
//! * [`ksum`] — 1-, 2- and 3-sum composition, separation search, exact
//!   splitting, and recursive decomposition trees.
//! * [`matroid`] — the binary matroid represented by `[I | N]`: rank
//!   oracle, connectivity, circuits, and recognition of the exceptional
//!   10-element regular matroid.
//! * [`structure`] — bipartite-graph views, dense blocks, bordered-path
//!   witness extraction, and row partitions certifying strong
//!   unimodularity of {0, 1} matrices.
//! * [`catalog`] — reference matrices, directed graphs and their network
//!   matrices, wheel families, and seeded corpus generation.

// Much of the arithmetic scatters between parallel arrays indexed by
// the same position (orders, permutations, running column sums);
// `for i in 0..n` keeps that index algebra visible.
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod exactmat;
pub mod ksum;
pub mod matroid;
pub mod structure;
pub mod unimodularity;
