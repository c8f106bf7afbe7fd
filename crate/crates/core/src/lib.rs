//! Exact computations on left-invariant almost contact B-metric structures
//! over Lie algebras: Levi-Civita and φB-connections, torsion and curvature,
//! and class membership, all with polynomial coefficients over the rationals.

pub mod classify;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod example;
pub mod manifold_file;
pub mod model;
pub mod phib;
pub mod report;
pub mod scalar;
pub mod tensor;

pub use classify::{classify, ClassReport, SubLabel};
pub use error::{Error, Result};
pub use manifold_file::{parse_manifold, ManifoldSpec};
pub use model::{AlgebraModel, Connection};
pub use report::{Check, Report, Verdict};
pub use scalar::{ParamSet, PolyScalar, Rational};
pub use tensor::{Slot, Tensor};
