//! JSON manifold description: brackets, metric and `(φ, ξ, η)` with 1-based
//! frame indices and exact values carried as strings.
//!
//! ```json
//! {
//!   "dimension": 3,
//!   "parameters": ["a"],
//!   "brackets": [{ "i": 1, "j": 3, "k": 1, "value": "a" }],
//!   "metric": [["1","0","0"], ["0","-1","0"], ["0","0","1"]],
//!   "phi": [["0","-1","0"], ["1","0","0"], ["0","0","0"]],
//!   "xi": ["0","0","1"],
//!   "eta": ["0","0","1"]
//! }
//! ```

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::Result;
use crate::model::AlgebraModel;
use crate::scalar::{parse_rational, ParamSet, PolyScalar, Rational};
use crate::tensor::{Slot, Tensor};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error("{field}: {msg}")]
    Field { field: String, msg: String },
}

fn field_err(field: impl Into<String>, msg: impl ToString) -> FileError {
    FileError::Field { field: field.into(), msg: msg.to_string() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldSpec {
    pub dimension: usize,
    #[serde(default)]
    pub parameters: Vec<String>,
    #[serde(default)]
    pub brackets: Vec<BracketEntry>,
    pub metric: Vec<Vec<String>>,
    pub phi: Vec<Vec<String>>,
    pub xi: Vec<String>,
    pub eta: Vec<String>,
}

fn rationals(field: &str, row: &[String]) -> Result<Vec<Rational>, FileError> {
    row.iter()
        .enumerate()
        .map(|(c, s)| parse_rational(s).map_err(|e| field_err(format!("{field}[{}]", c + 1), e)))
        .collect()
}

fn matrix(field: &str, rows: &[Vec<String>]) -> Result<Vec<Vec<Rational>>, FileError> {
    rows.iter().enumerate().map(|(r, row)| rationals(&format!("{field}[{}]", r + 1), row)).collect()
}

impl ManifoldSpec {
    pub fn from_json(text: &str) -> Result<Self, FileError> {
        serde_json::from_str(text).map_err(|e| FileError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Validates every field and builds the model. Bracket entries give the
    /// `e_k` component of `[e_i, e_j]`; the `[e_j, e_i]` partner is implied.
    pub fn to_model(&self) -> Result<AlgebraModel> {
        let d = self.dimension;
        if d < 3 || d.is_multiple_of(2) {
            return Err(field_err("dimension", format!("must be odd and at least 3, got {d}")).into());
        }
        let params = ParamSet::new(&self.parameters).map_err(|e| field_err("parameters", e))?;
        if params.len() != self.parameters.len() {
            return Err(field_err("parameters", "duplicate parameter name").into());
        }
        let metric = matrix("metric", &self.metric)?;
        if metric.len() != d {
            return Err(field_err("metric", format!("expected {d} rows, got {}", metric.len())).into());
        }
        let phi = matrix("phi", &self.phi)?;
        let xi = rationals("xi", &self.xi)?;
        let eta = rationals("eta", &self.eta)?;

        let mut brackets = Tensor::zeros(&params, d, &[Slot::Covariant, Slot::Covariant, Slot::Contravariant]);
        let mut seen = vec![false; d * d * d];
        for (n, b) in self.brackets.iter().enumerate() {
            let field = format!("brackets[{}]", n + 1);
            for (name, v) in [("i", b.i), ("j", b.j), ("k", b.k)] {
                if v == 0 || v > d {
                    return Err(field_err(format!("{field}.{name}"), format!("index {v} outside 1..={d}")).into());
                }
            }
            let (i, j, k) = (b.i - 1, b.j - 1, b.k - 1);
            let value = PolyScalar::parse(&b.value, &params).map_err(|e| field_err(format!("{field}.value"), e))?;
            if i == j {
                if !value.is_zero() {
                    return Err(field_err(field, "[e_i, e_i] must vanish").into());
                }
                continue;
            }
            let key = (i.min(j) * d + i.max(j)) * d + k;
            let signed = if i < j { value.clone() } else { -&value };
            if seen[key] {
                let previous = brackets.get(&[i.min(j), i.max(j), k]);
                if previous != &signed {
                    return Err(field_err(field, "conflicts with an earlier entry for the same bracket").into());
                }
                continue;
            }
            seen[key] = true;
            brackets.set(&[i, j, k], value.clone());
            brackets.set(&[j, i, k], -&value);
        }
        Ok(AlgebraModel::new(params, brackets, metric, phi, xi, eta)?)
    }

    /// The description of `m`; brackets are listed for `i < j` only.
    pub fn from_model(m: &AlgebraModel) -> Self {
        let d = m.dim();
        let text = |r: &Rational| r.to_string();
        let (phi, xi, eta) = m.structure_entries();
        let mut brackets = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                for k in 0..d {
                    let v = m.brackets().get(&[i, j, k]);
                    if !v.is_zero() {
                        brackets.push(BracketEntry { i: i + 1, j: j + 1, k: k + 1, value: v.to_string() });
                    }
                }
            }
        }
        ManifoldSpec {
            dimension: d,
            parameters: m.params().names().to_vec(),
            brackets,
            metric: m.metric_entries().iter().map(|row| row.iter().map(text).collect()).collect(),
            phi: phi.iter().map(|row| row.iter().map(text).collect()).collect(),
            xi: xi.iter().map(text).collect(),
            eta: eta.iter().map(text).collect(),
        }
    }
}

/// Reads and validates a manifold description.
pub fn parse_manifold(text: &str) -> Result<AlgebraModel> {
    ManifoldSpec::from_json(text)?.to_model()
}
