//! Acceptance suite: one line of output per criterion, `PASS` or `FAIL`,
//! and a nonzero exit when anything fails.
//!
//! Each criterion is independent and runs under `catch_unwind`, so a
//! panic in one is reported as its failure without silencing the rest.
//! Criteria with a stated time budget enforce it.

use std::fs;
use std::panic::catch_unwind;
use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use sumod::catalog::{
    gen_corpus, network_matrix, paper_matrix, spanning_trees, wheel, CorpusEntry, PaperMatrix,
    Profile, TreeSelection,
};
use sumod::exactmat::{find_permute_scale, Extension, IndexSet, IntMatrix};
use sumod::ksum::{decompose, find_separations, one_sum, recompose, two_sum, KsumError};
use sumod::matroid::{is_r10, ReprMatroid};
use sumod::structure::{
    escape_path, find_dense_block, find_row_partition, verify_row_partition,
    witness_from_dense_block,
};
use sumod::unimodularity::{ghouila_houri_tu, is_su, is_tu};

type Criterion = fn() -> Result<(), String>;

fn main() -> ExitCode {
    let criteria: [(u32, &str, Criterion); 11] = [
        (
            1,
            "B1/B2 lose strong unimodularity at the recorded entries",
            criterion_1,
        ),
        (2, "B1 and B2 are totally unimodular", criterion_2),
        (
            3,
            "3-wheel dichotomy: every spanning tree gives N1 or N2",
            criterion_3,
        ),
        (
            4,
            "SU closure under the seven growth steps, 1-sums, and 2-sums",
            criterion_4,
        ),
        (
            5,
            "SU is hereditary; non-SU failures localize to a minimal submatrix",
            criterion_5,
        ),
        (
            6,
            "TU with at most two nonzeros per column implies SU",
            criterion_6,
        ),
        (
            7,
            "decompose/recompose round trip with 3-connected SU leaves",
            criterion_7,
        ),
        (
            8,
            "dense blocks in 3-connected representations yield |det|=2 witnesses",
            criterion_8,
        ),
        (
            9,
            "every SU corpus matrix admits a verified row partition",
            criterion_9,
        ),
        (
            10,
            "subdeterminant scan agrees with the row-signing criterion",
            criterion_10,
        ),
        (
            11,
            "B1's matroid: 3-connected, the exceptional fingerprint, pivot closure",
            criterion_11,
        ),
    ];
    let mut failures = 0;
    for (number, title, body) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(body);
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Ok(())) => println!("criterion {number}: PASS — {title} ({elapsed:.2}s)"),
            Ok(Err(message)) => {
                failures += 1;
                println!("criterion {number}: FAIL — {title}: {message}");
            }
            Err(panic) => {
                failures += 1;
                let message = panic
                    .downcast_ref::<&str>()
                    .map(|s| s.to_string())
                    .or_else(|| panic.downcast_ref::<String>().cloned())
                    .unwrap_or_else(|| "panicked".to_string());
                println!("criterion {number}: FAIL — {title}: panic: {message}");
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criterion(s) failed");
        ExitCode::FAILURE
    }
}

fn ensure(condition: bool, message: impl Into<String>) -> Result<(), String> {
    if condition {
        Ok(())
    } else {
        Err(message.into())
    }
}

fn within(budget: Duration, start: Instant, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed();
    ensure(
        elapsed <= budget,
        format!("{what} took {elapsed:?}, budget {budget:?}"),
    )
}

fn su_holds(matrix: &IntMatrix) -> Result<bool, String> {
    Ok(is_su(matrix).map_err(|e| e.to_string())?.holds)
}

/// All nonempty subsets of `0..n`, as sorted index vectors.
fn nonempty_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn scratch(name: &str, matrix: &IntMatrix) -> Result<PathBuf, String> {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    fs::write(&path, matrix.to_text()).map_err(|e| e.to_string())?;
    Ok(path)
}

fn run_binary(args: &[&str]) -> Result<Output, String> {
    Command::new(env!("CARGO_BIN_EXE_sumod"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot spawn the binary: {e}"))
}

/// The catalog's two 5x5 counterexamples, reproduced through the command line:
/// `check su` must exit 1 and report the exact zeroed entry, submatrix,
/// and determinant of magnitude 2, in under a second per matrix.
fn criterion_1() -> Result<(), String> {
    struct Expected {
        which: PaperMatrix,
        file: &'static str,
        rows: [u64; 3],
        cols: [u64; 3],
        zeroed: [u64; 2],
    }
    // 0-based here; the prose coordinates "(4,3)" / "(4,1)" are 1-based.
    let cases = [
        Expected {
            which: PaperMatrix::B1,
            file: "acc_b1.txt",
            rows: [2, 3, 4],
            cols: [1, 2, 3],
            zeroed: [3, 2],
        },
        Expected {
            which: PaperMatrix::B2,
            file: "acc_b2.txt",
            rows: [2, 3, 4],
            cols: [0, 3, 4],
            zeroed: [3, 0],
        },
    ];
    for case in cases {
        let matrix = paper_matrix(case.which);
        let path = scratch(case.file, &matrix)?;
        let start = Instant::now();
        let output = run_binary(&["check", "su", path.to_str().unwrap()])?;
        within(Duration::from_secs(1), start, "one check run")?;
        ensure(
            output.status.code() == Some(1),
            format!("expected exit 1, got {:?}", output.status.code()),
        )?;
        let json: Value = serde_json::from_slice(&output.stdout)
            .map_err(|e| format!("stdout is not JSON: {e}"))?;
        ensure(json["schema"] == "sumod/1", "schema field missing")?;
        ensure(json["holds"] == false, "verdict must be a failure")?;
        let witness = &json["witness"];
        ensure(
            witness["rows"] == serde_json::json!(case.rows),
            format!("witness rows {} differ", witness["rows"]),
        )?;
        ensure(
            witness["cols"] == serde_json::json!(case.cols),
            format!("witness cols {} differ", witness["cols"]),
        )?;
        ensure(
            witness["zeroed_entry"] == serde_json::json!(case.zeroed),
            format!("zeroed entry {} differs", witness["zeroed_entry"]),
        )?;
        let determinant = witness["determinant"].as_i64().unwrap_or(0);
        ensure(
            determinant.abs() == 2,
            format!("|determinant| = {} is not 2", determinant.abs()),
        )?;
        // The library agrees with its front end.
        let certificate = is_su(&matrix).map_err(|e| e.to_string())?;
        ensure(!certificate.holds, "library verdict differs")?;
        let lib_witness = certificate.witness.ok_or("library witness missing")?;
        ensure(
            lib_witness.determinant == determinant,
            "library determinant differs",
        )?;
    }
    Ok(())
}

/// Both named 5x5 matrices pass the exhaustive total-unimodularity scan
/// in under five seconds each.
fn criterion_2() -> Result<(), String> {
    for which in [PaperMatrix::B1, PaperMatrix::B2] {
        let start = Instant::now();
        let certificate = is_tu(&paper_matrix(which)).map_err(|e| e.to_string())?;
        within(Duration::from_secs(5), start, "one TU scan")?;
        ensure(certificate.holds, format!("{which:?} must be TU"))?;
    }
    Ok(())
}

/// The 3-wheel dichotomy: N1 is strongly unimodular, N2 fails at entry
/// (3,2) (1-based), and every spanning tree of the 3-wheel produces a
/// network matrix equivalent to one of the two — with both classes
/// realized.  Budget: ten seconds.
fn criterion_3() -> Result<(), String> {
    let start = Instant::now();
    let n1 = paper_matrix(PaperMatrix::N1);
    let n2 = paper_matrix(PaperMatrix::N2);
    ensure(su_holds(&n1)?, "N1 must be SU")?;
    let certificate = is_su(&n2).map_err(|e| e.to_string())?;
    ensure(!certificate.holds, "N2 must not be SU")?;
    let witness = certificate.witness.ok_or("N2 witness missing")?;
    ensure(
        witness.zeroed_entry == Some((2, 1)),
        format!("N2 zeroed entry {:?} is not (2,1)", witness.zeroed_entry),
    )?;

    let graph = wheel(3);
    let trees = spanning_trees(&graph);
    ensure(
        trees.len() == 16,
        format!("the 3-wheel has 16 spanning trees, found {}", trees.len()),
    )?;
    let (mut like_n1, mut like_n2) = (0usize, 0usize);
    for tree in &trees {
        let matrix = network_matrix(&graph, tree).map_err(|e| e.to_string())?;
        let matches_n1 = find_permute_scale(&matrix, &n1).is_some();
        let matches_n2 = find_permute_scale(&matrix, &n2).is_some();
        ensure(
            matches_n1 != matches_n2,
            format!("tree {:?} matches neither or both of N1/N2", tree.arc_ids()),
        )?;
        if matches_n1 {
            like_n1 += 1;
            ensure(su_holds(&matrix)?, "N1-class trees must give SU matrices")?;
        } else {
            like_n2 += 1;
            ensure(!su_holds(&matrix)?, "N2-class trees must fail SU")?;
        }
    }
    ensure(
        like_n1 > 0 && like_n2 > 0,
        format!("both classes must occur; got {like_n1} vs {like_n2}"),
    )?;
    within(Duration::from_secs(10), start, "the 3-wheel sweep")
}

/// All seven growth steps applied to each entry, plus one generation of
/// pairwise sums, with deterministic parameter choices per step.
fn extension_schedule(matrix: &IntMatrix) -> [Extension; 7] {
    [
        Extension::Transpose,
        Extension::ZeroRow { at: 0 },
        Extension::ZeroCol { at: matrix.cols() },
        Extension::UnitRow {
            at: matrix.rows(),
            unit_col: 0,
            sign: 1,
        },
        Extension::UnitCol {
            at: 0,
            unit_row: matrix.rows() - 1,
            sign: -1,
        },
        Extension::DupRow {
            source: 0,
            at: 1,
            sign: -1,
        },
        Extension::DupCol {
            source: matrix.cols() - 1,
            at: 0,
            sign: 1,
        },
    ]
}

/// Strong unimodularity is closed under the seven growth steps and under
/// 1-sums and valid 2-sums, checked over a 200-matrix seeded SU corpus
/// (pairs are taken consecutively).  Budget: five minutes.
fn criterion_4() -> Result<(), String> {
    let start = Instant::now();
    let corpus = gen_corpus(Profile::SuSmall, 1004, 200);
    for (index, entry) in corpus.entries.iter().enumerate() {
        for extension in extension_schedule(&entry.matrix) {
            let grown = entry.matrix.extend(&extension).map_err(|e| e.to_string())?;
            ensure(
                su_holds(&grown)?,
                format!("entry {index}: extension {extension:?} broke SU"),
            )?;
        }
    }
    let mut two_sums = 0usize;
    for pair in corpus.entries.chunks_exact(2) {
        let (a, b) = (&pair[0].matrix, &pair[1].matrix);
        ensure(
            su_holds(&one_sum(a, b))?,
            "a 1-sum of SU corpus matrices failed SU",
        )?;
        match two_sum(a, b) {
            Ok(sum) => {
                two_sums += 1;
                ensure(su_holds(&sum)?, "a 2-sum of SU corpus matrices failed SU")?;
            }
            Err(KsumError::GlueZero { .. }) => {} // not a valid 2-sum pair
            Err(e) => return Err(format!("unexpected 2-sum error: {e}")),
        }
    }
    ensure(two_sums > 0, "no valid 2-sum pair was exercised")?;
    within(Duration::from_secs(300), start, "the closure sweep")
}

/// Greedy descent from a non-SU matrix to a minimal non-SU submatrix:
/// every step deletes one row or column and stays non-SU.
fn failure_chain(matrix: &IntMatrix) -> Result<Vec<(IndexSet, IndexSet)>, String> {
    let mut rows: Vec<usize> = (0..matrix.rows()).collect();
    let mut cols: Vec<usize> = (0..matrix.cols()).collect();
    let view = |rows: &[usize], cols: &[usize]| -> Result<IntMatrix, String> {
        let r = IndexSet::new(rows.to_vec()).map_err(|e| e.to_string())?;
        let c = IndexSet::new(cols.to_vec()).map_err(|e| e.to_string())?;
        matrix.submatrix(&r, &c).map_err(|e| e.to_string())
    };
    ensure(
        !su_holds(&view(&rows, &cols)?)?,
        "the chain must start at a non-SU matrix",
    )?;
    let mut chain = vec![(
        IndexSet::new(rows.clone()).unwrap(),
        IndexSet::new(cols.clone()).unwrap(),
    )];
    'descend: loop {
        for at in 0..rows.len() {
            let mut fewer = rows.clone();
            fewer.remove(at);
            if !fewer.is_empty() && !su_holds(&view(&fewer, &cols)?)? {
                rows = fewer;
                chain.push((
                    IndexSet::new(rows.clone()).unwrap(),
                    IndexSet::new(cols.clone()).unwrap(),
                ));
                continue 'descend;
            }
        }
        for at in 0..cols.len() {
            let mut fewer = cols.clone();
            fewer.remove(at);
            if !fewer.is_empty() && !su_holds(&view(&rows, &fewer)?)? {
                cols = fewer;
                chain.push((
                    IndexSet::new(rows.clone()).unwrap(),
                    IndexSet::new(cols.clone()).unwrap(),
                ));
                continue 'descend;
            }
        }
        return Ok(chain);
    }
}

/// Heredity: every submatrix of 50 seeded SU matrices is SU; and for the
/// two named non-SU matrices a chain of single-line deletions localizes
/// the failure to a minimal non-SU submatrix.  Budget: five minutes.
fn criterion_5() -> Result<(), String> {
    let start = Instant::now();
    let corpus = gen_corpus(Profile::SuSmall, 1005, 50);
    for (index, entry) in corpus.entries.iter().enumerate() {
        let matrix = &entry.matrix;
        for row_pick in nonempty_subsets(matrix.rows()) {
            let row_set = IndexSet::new(row_pick).unwrap();
            for col_pick in nonempty_subsets(matrix.cols()) {
                let col_set = IndexSet::new(col_pick).unwrap();
                let sub = matrix
                    .submatrix(&row_set, &col_set)
                    .map_err(|e| e.to_string())?;
                ensure(
                    su_holds(&sub)?,
                    format!(
                        "entry {index}: submatrix {:?} x {:?} fails SU",
                        row_set.as_slice(),
                        col_set.as_slice()
                    ),
                )?;
            }
        }
    }
    for which in [PaperMatrix::B1, PaperMatrix::B2] {
        let matrix = paper_matrix(which);
        let chain = failure_chain(&matrix)?;
        let (last_rows, last_cols) = chain.last().ok_or("empty chain")?;
        ensure(
            chain.len() > 1,
            format!("{which:?}: the failure must localize below the full matrix"),
        )?;
        // Minimality: every further single-line deletion restores SU,
        // so the chain really pinpointed a smallest failing submatrix.
        let minimal = matrix
            .submatrix(last_rows, last_cols)
            .map_err(|e| e.to_string())?;
        ensure(!su_holds(&minimal)?, "the chain must end non-SU")?;
        for at in 0..minimal.rows() {
            let mut fewer: Vec<usize> = (0..minimal.rows()).collect();
            fewer.remove(at);
            let sub = minimal
                .submatrix(
                    &IndexSet::new(fewer).unwrap(),
                    &IndexSet::full(minimal.cols()),
                )
                .map_err(|e| e.to_string())?;
            ensure(su_holds(&sub)?, "a row-deleted minimal block must be SU")?;
        }
        for at in 0..minimal.cols() {
            let mut fewer: Vec<usize> = (0..minimal.cols()).collect();
            fewer.remove(at);
            let sub = minimal
                .submatrix(
                    &IndexSet::full(minimal.rows()),
                    &IndexSet::new(fewer).unwrap(),
                )
                .map_err(|e| e.to_string())?;
            ensure(su_holds(&sub)?, "a column-deleted minimal block must be SU")?;
        }
    }
    within(Duration::from_secs(300), start, "the heredity sweep")
}

/// TU plus at-most-two nonzeros per column forces SU.  One hundred such
/// matrices are sampled; the verdict is cross-checked from first
/// principles (zero each nonzero, re-certify TU) so the dedicated
/// shortcut inside the SU decider is not trusted circularly.
fn criterion_6() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut accepted = 0usize;
    let mut attempts = 0usize;
    while accepted < 100 {
        attempts += 1;
        ensure(attempts < 100_000, "sampling stalled")?;
        let rows = rng.gen_range(3..=5);
        let cols = rng.gen_range(3..=5);
        let mut matrix = IntMatrix::zero(rows, cols);
        for c in 0..cols {
            let nonzeros = rng.gen_range(0..=2usize);
            let mut picked: Vec<usize> = Vec::new();
            while picked.len() < nonzeros {
                let r = rng.gen_range(0..rows);
                if !picked.contains(&r) {
                    picked.push(r);
                    matrix.set(r, c, if rng.gen_bool(0.5) { 1 } else { -1 });
                }
            }
        }
        if !is_tu(&matrix).map_err(|e| e.to_string())?.holds {
            continue;
        }
        accepted += 1;
        ensure(su_holds(&matrix)?, "a two-per-column TU matrix failed SU")?;
        for r in 0..rows {
            for c in 0..cols {
                if matrix.get(r, c) == 0 {
                    continue;
                }
                let zeroed = matrix.with_entry(r, c, 0);
                ensure(
                    is_tu(&zeroed).map_err(|e| e.to_string())?.holds,
                    format!("zeroing ({r},{c}) broke total unimodularity"),
                )?;
            }
        }
    }
    Ok(())
}

/// One hundred seeded 1-/2-sum composites decompose into complete trees
/// that recompose to the input exactly (the equivalence permutation is
/// produced and applied), with every leaf 3-connected, SU, and distinct
/// from the exceptional 10-element matroid.  Budget: ten minutes.
fn criterion_7() -> Result<(), String> {
    let start = Instant::now();
    let corpus = gen_corpus(Profile::SuComposed, 1007, 100);
    for (index, entry) in corpus.entries.iter().enumerate() {
        let matrix = &entry.matrix;
        let decomposition =
            decompose(matrix).map_err(|e| format!("entry {index}: decompose: {e}"))?;
        ensure(
            decomposition.complete,
            format!("entry {index}: decomposition left an unchecked leaf"),
        )?;
        let recomposed =
            recompose(&decomposition.tree).map_err(|e| format!("entry {index}: {e}"))?;
        let equivalence = find_permute_scale(&recomposed, matrix)
            .ok_or_else(|| format!("entry {index}: no equivalence found"))?;
        let mapped = recomposed
            .permute_scale(&equivalence)
            .map_err(|e| e.to_string())?;
        ensure(
            mapped == *matrix,
            format!("entry {index}: the produced permutation does not map back"),
        )?;
        ensure(
            recomposed == *matrix,
            format!("entry {index}: recomposition is not exact"),
        )?;
        ensure(su_holds(matrix)?, "composed corpus entries must be SU")?;
        for leaf in decomposition.tree.leaves() {
            let verdict = ReprMatroid::new(leaf)
                .is_k_connected(3)
                .map_err(|e| e.to_string())?;
            ensure(
                verdict.connected,
                format!("entry {index}: a leaf admits a small separation"),
            )?;
            ensure(
                su_holds(leaf)?,
                format!("entry {index}: a leaf of an SU composite fails SU"),
            )?;
            ensure(
                !is_r10(leaf),
                format!("entry {index}: an SU leaf matched the exceptional fingerprint"),
            )?;
        }
    }
    within(Duration::from_secs(600), start, "the round-trip sweep")
}

/// Dense blocks inside 3-connected representations always convert into
/// replayable witnesses of determinant magnitude 2 — on the named 5x5,
/// the 3x3 path case, and wheel constructions whose escape paths have
/// five and seven edges.
fn criterion_8() -> Result<(), String> {
    let mut family: Vec<(String, IntMatrix, Option<usize>)> = vec![
        ("N2".into(), paper_matrix(PaperMatrix::N2), Some(4)),
        ("B2".into(), paper_matrix(PaperMatrix::B2), None),
    ];
    let w4 = wheel(4);
    let tree = TreeSelection::new(&w4, vec![0, 1, 2, 6]).map_err(|e| e.to_string())?;
    family.push((
        "4-wheel path tree".into(),
        network_matrix(&w4, &tree).map_err(|e| e.to_string())?,
        None,
    ));
    let w5 = wheel(5);
    for (arcs, vertices) in [(vec![0, 1, 2, 7, 8], 6), (vec![0, 1, 2, 3, 8], 8)] {
        let tree = TreeSelection::new(&w5, arcs.clone()).map_err(|e| e.to_string())?;
        family.push((
            format!("5-wheel tree {arcs:?}"),
            network_matrix(&w5, &tree).map_err(|e| e.to_string())?,
            Some(vertices),
        ));
    }
    for (name, matrix, expected_path_vertices) in family {
        let block =
            find_dense_block(&matrix).ok_or_else(|| format!("{name}: expected a dense block"))?;
        if let Some(expected) = expected_path_vertices {
            let path = escape_path(&matrix, &block)
                .ok_or_else(|| format!("{name}: expected an escape path"))?;
            ensure(
                path.len() == expected,
                format!(
                    "{name}: path has {} vertices, expected {expected}",
                    path.len()
                ),
            )?;
        }
        let witness =
            witness_from_dense_block(&matrix, &block).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            witness.determinant.abs() == 2,
            format!("{name}: |det| = {}", witness.determinant.abs()),
        )?;
        ensure(
            witness.verify(&matrix).map_err(|e| e.to_string())?,
            format!("{name}: the witness does not replay"),
        )?;
        ensure(!su_holds(&matrix)?, format!("{name}: must fail SU"))?;
    }
    Ok(())
}

/// Every SU corpus matrix with at most ten rows admits a row partition,
/// and the verifier confirms it.
fn criterion_9() -> Result<(), String> {
    let mut entries: Vec<CorpusEntry> = gen_corpus(Profile::SuSmall, 1004, 200).entries;
    entries.extend(gen_corpus(Profile::SuComposed, 1007, 100).entries);
    let mut checked = 0usize;
    for (index, entry) in entries.iter().enumerate() {
        if entry.matrix.rows() > 10 {
            continue;
        }
        checked += 1;
        let partition = find_row_partition(&entry.matrix)
            .map_err(|e| e.to_string())?
            .ok_or_else(|| format!("entry {index}: no partition found for an SU matrix"))?;
        let report = verify_row_partition(&entry.matrix, &partition).map_err(|e| e.to_string())?;
        ensure(
            report.verified,
            format!(
                "entry {index}: partition failed verification: {:?}",
                report.violation
            ),
        )?;
    }
    ensure(
        checked >= 200,
        format!("only {checked} matrices were in scope"),
    )?;
    Ok(())
}

/// The exhaustive subdeterminant scan and the independent row-signing
/// characterization agree on 500 seeded random 5x5 signed-unit matrices.
fn criterion_10() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for trial in 0..500 {
        let mut matrix = IntMatrix::zero(5, 5);
        for r in 0..5 {
            for c in 0..5 {
                matrix.set(r, c, rng.gen_range(-1..=1));
            }
        }
        let scan = is_tu(&matrix).map_err(|e| e.to_string())?.holds;
        let signing = ghouila_houri_tu(&matrix).map_err(|e| e.to_string())?;
        ensure(
            scan == signing,
            format!("trial {trial}: scan says {scan}, signing says {signing}"),
        )?;
    }
    Ok(())
}

/// The matroid of B1: 3-connected with no order-1/2 separations on the
/// matrix side either; B1 and B2 both carry the exceptional 10-element
/// fingerprint; and the fingerprint survives all 15 pivots of B1.
/// Budget: two minutes.
fn criterion_11() -> Result<(), String> {
    let start = Instant::now();
    let b1 = paper_matrix(PaperMatrix::B1);
    let matroid = ReprMatroid::new(&b1);
    for k in [2u8, 3u8] {
        let verdict = matroid.is_k_connected(k).map_err(|e| e.to_string())?;
        ensure(verdict.connected, format!("B1 must be {k}-connected"))?;
    }
    for order in [1u8, 2u8] {
        let separations = find_separations(&b1, order).map_err(|e| e.to_string())?;
        ensure(
            separations.is_empty(),
            format!("B1 has an order-{order} separation"),
        )?;
    }
    ensure(is_r10(&b1), "B1 must carry the fingerprint")?;
    ensure(
        is_r10(&paper_matrix(PaperMatrix::B2)),
        "B2 must carry the fingerprint",
    )?;
    let mut pivots = 0usize;
    for r in 0..5 {
        for c in 0..5 {
            if b1.get(r, c) == 0 {
                continue;
            }
            pivots += 1;
            let pivoted = b1.pivot(r, c).map_err(|e| e.to_string())?;
            ensure(
                is_r10(&pivoted),
                format!("pivot at ({r},{c}) lost the fingerprint"),
            )?;
        }
    }
    ensure(
        pivots == 15,
        format!("expected 15 nonzero pivots, found {pivots}"),
    )?;
    within(Duration::from_secs(120), start, "the matroid sweep")
}
