use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),

    #[error("elements belong to different fields")]
    FieldMismatch,

    #[error("element index {index} out of range for GF({order})")]
    ElementOutOfRange { index: u32, order: u32 },

    #[error("run size {0} must be an even integer >= 4")]
    BadRuns(i64),

    #[error("number of factors {factors} must exceed N - 1 = {}", runs - 1)]
    BadRange { runs: i64, factors: i64 },

    #[error("empty range: {from} > {to}")]
    EmptyRange { from: i64, to: i64 },

    #[error("E(s^2) needs at least two factors, got {0}")]
    DegenerateM(usize),

    #[error("design entries must be +1 or -1 (row {row}, column {col})")]
    BadEntry { row: usize, col: usize },

    #[error("matrix shape: {0}")]
    Shape(String),

    #[error("invalid design: {0}")]
    InvalidDesign(String),

    #[error("block size {got} does not match (v - 1) / 2 = {expected}")]
    BadBlockSize { got: usize, expected: usize },

    #[error("block {index} is malformed: {reason}")]
    BadBlock { index: usize, reason: String },

    #[error("blocks {0} and {1} are identical")]
    RepeatedBlocks(usize, usize),

    #[error("shift set must have q/2 = {expected} members, got {got}")]
    BadSize { expected: usize, got: usize },

    #[error("shift modulus q = {0} must be an even integer in 2..=64")]
    BadShiftModulus(u32),

    #[error("q = {q} is not an even divisor of N - 2 = {group_order}")]
    BadDivisor { q: u32, group_order: u32 },

    #[error("q must differ from N - 2 = {0}")]
    QEqualsNMinus2(u32),

    #[error("half design needs (N - 2)/q odd, got {0}")]
    OddnessViolated(u32),

    #[error("bad half selector: {0}")]
    BadHalfSelector(String),

    #[error("parts {0} and {1} use shift sets from the same equivalence class")]
    SameClass(usize, usize),

    #[error("parts {0} and {1} share an initial block")]
    InitialBlockClash(usize, usize),

    #[error("constructed blocks are not a BIBD: {0}")]
    NotBibd(String),

    #[error("no construction with {blocks} blocks found for N = {runs}")]
    NoPlan { runs: u32, blocks: usize },

    #[error("only {available} distinct balanced columns exist, {requested} requested")]
    ExhaustedColumnSpace { available: u64, requested: usize },

    #[error("swap needs a +1 at row {0} and a -1 at row {1}")]
    BadSwap(usize, usize),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("hash mismatch for {path}: index has {expected}, file has {actual}")]
    HashMismatch {
        path: PathBuf,
        expected: String,
        actual: String,
    },

    #[error("catalog entry not found: {0}")]
    NotInCatalog(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
