use thiserror::Error;

use crate::nucleotide::Nucleotide;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Strand that failed to decode, with the reason.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrandFailure {
    /// Position of the strand in the input list.
    pub position: usize,
    /// Strand index, when it could be recovered.
    pub index: Option<u64>,
    pub reason: String,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid nucleotide character {0:?}")]
    InvalidNucleotide(char),
    #[error("invalid bit character {0:?}")]
    InvalidBit(char),
    #[error("invalid 2-bit pattern {0:?}")]
    InvalidPattern(String),
    #[error("sequence is empty")]
    EmptySequence,
    #[error("bit length {0} is odd; 2-bit codecs need an even length")]
    OddBitLength(usize),
    #[error("pattern histogram is empty")]
    EmptyHistogram,

    #[error("nucleotide {got} at position {pos} is not a valid emission after {prev}")]
    InvalidTransition { pos: usize, prev: Nucleotide, got: Nucleotide },
    #[error("doubled pattern at position {pos}: expected {expected} as second nucleotide, found {got}")]
    BadPairSecond { pos: usize, expected: Nucleotide, got: Nucleotide },
    #[error("sequence ends inside a two-nucleotide emission at position {pos}")]
    DanglingPair { pos: usize },
    #[error("trit sequence at trit {pos} matches no byte codeword")]
    NoTritMatch { pos: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("strand does not start with the forward primer")]
    ForwardPrimerMismatch,
    #[error("strand does not end with the reverse primer")]
    ReversePrimerMismatch,
    #[error("unknown encoding scheme id {0:04b}")]
    UnknownScheme(u8),
    #[error("no consistent payload/ECC split for {0} decoded bits")]
    NoPayloadSplit(usize),
    #[error("integrity checksum mismatch (strand index {index:?})")]
    ChecksumMismatch { index: Option<u64> },
    #[error("strand needs {needed} nt but the cap is {cap} nt")]
    CapacityExceeded { needed: usize, cap: usize },
    #[error("payload must hold at least one 2-bit pattern")]
    EmptyPayload,

    #[error("missing strand indices: {0:?}")]
    MissingStrands(Vec<u64>),
    #[error("{} strand(s) failed integrity checks: {}", .0.len(), describe_failures(.0))]
    CorruptStrands(Vec<StrandFailure>),
    #[error("manifest does not match the strands: {0}")]
    ManifestMismatch(String),
    #[error("corpus is empty")]
    EmptyCorpus,

    #[error("malformed FASTA at line {line}: {msg}")]
    Fasta { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

fn describe_failures(fs: &[StrandFailure]) -> String {
    fs.iter()
        .map(|f| match f.index {
            Some(i) => format!("index {i} ({})", f.reason),
            None => format!("record #{} ({})", f.position, f.reason),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

impl Error {
    /// Process exit code: 2 I/O, 3 configuration, 4 data integrity.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Config(_)
            | Error::ManifestMismatch(_)
            | Error::Json(_)
            | Error::EmptyCorpus
            | Error::CapacityExceeded { .. } => 3,
            _ => 4,
        }
    }
}
