//! Command-line front end for the `sumod` library.
//!
//! One verb per invocation.  Machine-readable output (JSON or matrix
//! text) goes to standard output; diagnostics and the optional
//! `--verbose` summaries go to standard error.  Every JSON payload
//! carries a `"schema": "sumod/1"` field and is emitted with sorted
//! keys, so outputs are byte-stable for equal inputs and flags.
//!
//! Exit codes: `0` = the property holds / the construction succeeded,
//! `1` = the property fails (stdout carries the certificate), `2` =
//! usage or input error, `3` = a cap was exceeded (raise `--max-size`).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use sumod::catalog::{gen_corpus, Profile};
use sumod::exactmat::{IntMatrix, MatrixError};
use sumod::ksum::{
    decompose_with, one_sum, three_sum, two_sum, KsumError, ThreeSumVariant, SEPARATION_GROUND_CAP,
};
use sumod::matroid::{MatroidError, ReprMatroid, CONNECTIVITY_GROUND_CAP};
use sumod::structure::{
    bipartite_graph, escape_path, find_dense_block, find_row_partition_with,
    verify_final_structure, verify_row_partition, witness_from_dense_block_with, RowPartition,
    StructureError, PARTITION_ROW_CAP,
};
use sumod::unimodularity::{
    is_su_with, is_tu_with, Certificate, UnimodError, DEFAULT_DIMENSION_CAP,
};

const SCHEMA: &str = "sumod/1";

const EXIT_FAILS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser)]
#[command(
    name = "sumod",
    version,
    about = "Exact certification, composition, and structural analysis of signed 0/1 matrices"
)]
struct Cli {
    /// Override the library's safety caps (subdeterminant-scan dimension,
    /// decomposition ground size, partition row count) with this value.
    #[arg(long, global = true, value_name = "N")]
    max_size: Option<usize>,

    /// Also print a human-readable summary (1-based indices) on stderr.
    #[arg(long, global = true)]
    verbose: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Certify a property of a matrix; emits a certificate JSON.
    Check {
        /// Property to certify.
        property: PropertyArg,
        /// Matrix file (text format: "rows cols" header, then entries).
        file: PathBuf,
    },
    /// Replay a certificate's witness against a matrix file.
    Witness {
        /// Matrix file the certificate speaks about.
        matrix: PathBuf,
        /// Certificate JSON file as produced by `check`.
        certificate: PathBuf,
    },
    /// Compose two matrix files; emits the composite in matrix text.
    Compose {
        /// Sum operation to apply.
        #[arg(long)]
        op: OpArg,
        /// Left operand file.
        left: PathBuf,
        /// Right operand file.
        right: PathBuf,
    },
    /// Decompose a matrix along 1-/2-separations; emits a tree JSON.
    Decompose {
        /// Matrix file.
        file: PathBuf,
    },
    /// Search for a row partition with the two-per-part column law.
    Partition {
        /// Matrix file.
        file: PathBuf,
    },
    /// Full structural report: dense block, extracted witness, row and
    /// column partitions, and the block-form verification.
    Structure {
        /// Matrix file.
        file: PathBuf,
    },
    /// Generate a seeded matrix corpus; emits a manifest JSON.
    Gen {
        /// Corpus profile.
        #[arg(long)]
        profile: ProfileArg,
        /// Generator seed.
        #[arg(long)]
        seed: u64,
        /// Number of matrices.
        #[arg(long)]
        count: usize,
    },
    /// Export the bipartite graph of a matrix as DOT text, styling
    /// dense-block edges and highlighting the escape path when present.
    ExportBg {
        /// Matrix file.
        file: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum PropertyArg {
    /// Total unimodularity: every square subdeterminant is -1, 0, or 1.
    Tu,
    /// Strong unimodularity: TU, and TU after zeroing any one nonzero.
    Su,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    /// Block-diagonal 1-sum.
    Sum1,
    /// 2-sum gluing the left's last column with the right's first row.
    Sum2,
    /// 3-sum, first variant (duplicated glue column/row with markers).
    #[value(name = "sum3-delta")]
    Sum3Delta,
    /// 3-sum, second variant (rank-2 glue through a 2x2 connector).
    #[value(name = "sum3-alt")]
    Sum3Alt,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    /// Small strongly unimodular network matrices.
    #[value(name = "su_small")]
    SuSmall,
    /// Strongly unimodular 1-/2-sum composites with growth steps.
    #[value(name = "su_composed")]
    SuComposed,
    /// Totally but not strongly unimodular constructions.
    #[value(name = "non_su")]
    NonSu,
    /// Network matrices, totally unimodular, no further guarantee.
    #[value(name = "tu_random")]
    TuRandom,
}

impl From<ProfileArg> for Profile {
    fn from(arg: ProfileArg) -> Profile {
        match arg {
            ProfileArg::SuSmall => Profile::SuSmall,
            ProfileArg::SuComposed => Profile::SuComposed,
            ProfileArg::NonSu => Profile::NonSu,
            ProfileArg::TuRandom => Profile::TuRandom,
        }
    }
}

/// A failure that terminates the process: an input/usage problem (exit
/// 2) or an exceeded cap (exit 3).
enum CliError {
    Input(String),
    Cap(String),
}

impl From<MatrixError> for CliError {
    fn from(e: MatrixError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<UnimodError> for CliError {
    fn from(e: UnimodError) -> Self {
        match e {
            UnimodError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<KsumError> for CliError {
    fn from(e: KsumError) -> Self {
        match e {
            KsumError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<MatroidError> for CliError {
    fn from(e: MatroidError) -> Self {
        match e {
            MatroidError::CapExceeded { .. } => CliError::Cap(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::PartitionCapExceeded { .. }
            | StructureError::Matroid(MatroidError::CapExceeded { .. }) => {
                CliError::Cap(e.to_string())
            }
            other => CliError::Input(other.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Input(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Cap(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_CAP)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    match &cli.command {
        Command::Check { property, file } => check(cli, *property, file),
        Command::Witness {
            matrix,
            certificate,
        } => witness(cli, matrix, certificate),
        Command::Compose { op, left, right } => compose(*op, left, right),
        Command::Decompose { file } => decompose_verb(cli, file),
        Command::Partition { file } => partition(cli, file),
        Command::Structure { file } => structure(cli, file),
        Command::Gen {
            profile,
            seed,
            count,
        } => gen(*profile, *seed, *count),
        Command::ExportBg { file } => export_bg(file),
    }
}

fn read_matrix(path: &Path) -> Result<IntMatrix, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    IntMatrix::from_text(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

/// Writes machine output, treating a closed pipe as a clean early exit
/// (the downstream consumer saw all it wanted).
fn write_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match out.write_all(text.as_bytes()).and_then(|()| out.flush()) {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(CliError::Input(format!("cannot write to stdout: {e}"))),
    }
}

/// Prints `value` as pretty JSON with a `"schema"` field injected at the
/// top level.  `serde_json` maps are ordered, so keys come out sorted.
fn emit(mut value: Value) -> Result<(), CliError> {
    let object = value
        .as_object_mut()
        .expect("machine output is always a JSON object");
    object.insert("schema".to_string(), Value::String(SCHEMA.to_string()));
    let rendered = serde_json::to_string_pretty(&value).expect("JSON serialization of plain data");
    write_stdout(&rendered)?;
    write_stdout("\n")
}

fn to_value<T: serde::Serialize>(data: &T) -> Value {
    serde_json::to_value(data).expect("library types serialize to JSON")
}

/// `{3, 4, 5}`-style rendering of indices shifted to 1-based.
fn one_based(indices: &[usize]) -> String {
    let shifted: Vec<String> = indices.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", shifted.join(","))
}

fn check(cli: &Cli, property: PropertyArg, file: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(file)?;
    let cap = cli.max_size.unwrap_or(DEFAULT_DIMENSION_CAP);
    let certificate: Certificate = match property {
        PropertyArg::Tu => is_tu_with(&matrix, cap)?,
        PropertyArg::Su => is_su_with(&matrix, cap)?,
    };
    if cli.verbose {
        let name = match property {
            PropertyArg::Tu => "total unimodularity",
            PropertyArg::Su => "strong unimodularity",
        };
        match &certificate.witness {
            None => eprintln!("{name} holds"),
            Some(w) => {
                let zeroed = match w.zeroed_entry {
                    Some((r, c)) => format!(", zeroed entry ({},{})", r + 1, c + 1),
                    None => String::new(),
                };
                eprintln!(
                    "{name} fails: rows {} x cols {}{zeroed}, determinant {}  (1-based)",
                    one_based(w.rows.as_slice()),
                    one_based(w.cols.as_slice()),
                    w.determinant
                );
            }
        }
    }
    let holds = certificate.holds;
    emit(to_value(&certificate))?;
    Ok(if holds { 0 } else { EXIT_FAILS })
}

fn witness(cli: &Cli, matrix_path: &Path, certificate_path: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(matrix_path)?;
    let text = fs::read_to_string(certificate_path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", certificate_path.display())))?;
    let certificate: Certificate = serde_json::from_str(&text).map_err(|e| {
        CliError::Input(format!("cannot parse {}: {e}", certificate_path.display()))
    })?;
    let witness = certificate
        .witness
        .ok_or_else(|| CliError::Input("certificate carries no witness to replay".to_string()))?;
    let replayed = witness.replay(&matrix)?;
    let matches = replayed == witness.determinant && replayed.abs() >= 2;
    if cli.verbose {
        eprintln!(
            "witness on rows {} x cols {} replays to determinant {replayed} \
             (recorded {}): {}",
            one_based(witness.rows.as_slice()),
            one_based(witness.cols.as_slice()),
            witness.determinant,
            if matches { "confirmed" } else { "REFUTED" }
        );
    }
    emit(json!({
        "property": to_value(&certificate.property),
        "recorded_determinant": witness.determinant,
        "replayed_determinant": replayed,
        "matches": matches,
    }))?;
    Ok(if matches { 0 } else { EXIT_FAILS })
}

fn compose(op: OpArg, left_path: &Path, right_path: &Path) -> Result<u8, CliError> {
    let left = read_matrix(left_path)?;
    let right = read_matrix(right_path)?;
    let composite = match op {
        OpArg::Sum1 => one_sum(&left, &right),
        OpArg::Sum2 => two_sum(&left, &right)?,
        OpArg::Sum3Delta => three_sum(&left, &right, ThreeSumVariant::Delta)?,
        OpArg::Sum3Alt => three_sum(&left, &right, ThreeSumVariant::Alt)?,
    };
    write_stdout(&composite.to_text())?;
    Ok(0)
}

fn decompose_verb(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(file)?;
    let cap = cli.max_size.unwrap_or(SEPARATION_GROUND_CAP);
    let decomposition = decompose_with(&matrix, cap)?;
    if cli.verbose {
        eprintln!(
            "decomposition into {} leaf block(s); complete: {}",
            decomposition.tree.leaf_count(),
            decomposition.complete
        );
    }
    let complete = decomposition.complete;
    emit(to_value(&decomposition))?;
    if complete {
        Ok(0)
    } else {
        eprintln!(
            "note: ground size exceeded the separation-search cap {cap} somewhere in the \
             recursion; the tree is partial (raise --max-size to finish)"
        );
        Ok(EXIT_CAP)
    }
}

fn partition_value(partition: &RowPartition) -> Value {
    to_value(&partition.parts())
}

fn partition(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(file)?;
    let cap = cli.max_size.unwrap_or(PARTITION_ROW_CAP);
    match find_row_partition_with(&matrix, cap)? {
        Some(found) => {
            let report = verify_row_partition(&matrix, &found)?;
            if cli.verbose {
                let parts: Vec<String> = found
                    .parts()
                    .iter()
                    .map(|p| one_based(p.as_slice()))
                    .collect();
                eprintln!(
                    "row partition {} verified: {}  (1-based)",
                    parts.join(" | "),
                    report.verified
                );
            }
            let verified = report.verified;
            emit(json!({
                "parts": partition_value(&found),
                "verified": report.verified,
                "violation": to_value(&report.violation),
            }))?;
            Ok(if verified { 0 } else { EXIT_FAILS })
        }
        None => {
            if cli.verbose {
                eprintln!("no row partition exists; the matrix is not strongly unimodular");
            }
            emit(json!({
                "parts": Value::Null,
                "verified": false,
                "violation": Value::Null,
            }))?;
            Ok(EXIT_FAILS)
        }
    }
}

fn structure(cli: &Cli, file: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(file)?;
    let connectivity_cap = cli.max_size.unwrap_or(CONNECTIVITY_GROUND_CAP);
    let partition_cap = cli.max_size.unwrap_or(PARTITION_ROW_CAP);
    let block = find_dense_block(&matrix);
    let connectivity = ReprMatroid::new(&matrix).is_k_connected_with(3, connectivity_cap)?;
    let witness = match (&block, connectivity.connected) {
        (Some(found), true) => Some(witness_from_dense_block_with(
            &matrix,
            found,
            connectivity_cap,
        )?),
        _ => None,
    };
    let row_partition = find_row_partition_with(&matrix, partition_cap)?;
    let col_partition = find_row_partition_with(&matrix.transpose(), partition_cap)?;
    let final_structure = match (&row_partition, &col_partition) {
        (Some(rows), Some(cols)) => Some(verify_final_structure(&matrix, rows, cols)?),
        _ => None,
    };
    if cli.verbose {
        match &block {
            None => eprintln!("no dense block (no 2x2 all-nonzero singular submatrix)"),
            Some(found) => eprintln!(
                "dense block rows {} x cols {}  (1-based)",
                one_based(found.rows.as_slice()),
                one_based(found.cols.as_slice())
            ),
        }
        if let Some(w) = &witness {
            let (r, c) = w.zeroed_entry.expect("structural witnesses zero an entry");
            eprintln!(
                "witness: zero entry ({},{}) inside rows {} x cols {}, determinant {}  (1-based)",
                r + 1,
                c + 1,
                one_based(w.rows.as_slice()),
                one_based(w.cols.as_slice()),
                w.determinant
            );
        }
    }
    let failed = witness.is_some();
    emit(json!({
        "dense_block": to_value(&block),
        "three_connected": connectivity.connected,
        "witness": to_value(&witness),
        "row_partition": row_partition.as_ref().map(partition_value),
        "col_partition": col_partition.as_ref().map(partition_value),
        "final_structure": to_value(&final_structure),
    }))?;
    Ok(if failed { EXIT_FAILS } else { 0 })
}

fn gen(profile: ProfileArg, seed: u64, count: usize) -> Result<u8, CliError> {
    let corpus = gen_corpus(profile.into(), seed, count);
    emit(to_value(&corpus))?;
    Ok(0)
}

fn export_bg(file: &Path) -> Result<u8, CliError> {
    let matrix = read_matrix(file)?;
    let block = find_dense_block(&matrix);
    let path = block
        .as_ref()
        .and_then(|found| escape_path(&matrix, found))
        .unwrap_or_default();
    write_stdout(&bipartite_graph(&matrix).to_dot(block.as_ref(), &path))?;
    Ok(0)
}
