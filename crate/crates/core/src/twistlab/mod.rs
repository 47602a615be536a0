//! Comparing two curves prime by prime: local twist verdicts, scans over
//! prime ranges, quadratic-character searches, moment statistics and the
//! line-oriented record format.

mod characters;
mod records;
mod scan;
mod sign;
mod stats;

pub use characters::{character_search, enumerate_characters, SearchOutcome, TwistCharacter};
pub use records::{parse_report, write_report, RECORDS_HEADER};
pub use scan::{scan_pair, Aggregates, Depth, ScanRecord, ScanReport, SkipReason};
pub use sign::{even_coeff_invariant, local_twist_sign, trace_sign_match, SignMatch};
pub use stats::{moment_stats, z20_statistic, MomentRow, MomentTable, ZeroFraction};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::curvecount::{CountError, CurveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwistError {
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("record line {line}: {message}")]
    Format { line: usize, message: String },
}
