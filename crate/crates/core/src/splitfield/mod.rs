//! Residue degrees of rational primes in a few fixed number fields, the
//! case table built from them, and direct checks of the trace and
//! L-polynomial shapes that the case table predicts.

mod cases;
mod config;
mod residue;

pub use cases::{
    case_classify, chebotarev_fraction, lemma62_check, split_profile, split_table, verify_trace_vanishing,
    x9_curve, CaseCounts, Lemma62Outcome, SplitCase, SplitEntry, SplitProfile, TraceCheck,
};
pub use config::{FieldConfig, NumberFieldSpec, Presentation, DEFAULT_FIELDS_TOML};
pub use residue::{cyclotomic_residue_degree, residue_degree, residue_degree_galois};

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::curvecount::{CountError, CurveError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SplitError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{p} divides the discriminant of the polynomial for {field}")]
    Ramified { field: String, p: u64 },
    #[error("{field} mod {p} has factors of mixed degrees {degrees:?}")]
    NotGaloisConsistent { field: String, p: u64, degrees: Vec<usize> },
    #[error("field configuration: {0}")]
    Config(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
