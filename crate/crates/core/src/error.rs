use thiserror::Error;

use crate::classify::ClassReport;
use crate::manifold_file::FileError;
use crate::model::ModelError;
use crate::scalar::ScalarError;
use crate::tensor::TensorError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    File(#[from] FileError),
    /// The model is outside the class an operation requires.
    #[error("model is not in class {required}{}", witness_suffix(.report))]
    Precondition { required: String, report: Box<ClassReport> },
    /// Two independent constructions of the same object disagree.
    #[error("cross-check failed for {what} at {witness:?}: difference {difference}")]
    CrossCheck { what: String, witness: Vec<usize>, difference: String },
}

fn witness_suffix(report: &ClassReport) -> String {
    match report.failed_identities.first() {
        Some(f) => format!(" ({} fails at {:?})", f.name, f.witness),
        None => String::new(),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
