//! JSON model files (`"schema": "edms-model/1"`).
//!
//! ```json
//! {
//!   "schema": "edms-model/1",
//!   "states": ["off", "on"],
//!   "x_a": ["0", "1"], "x_b": ["0", "1"], "x_e": ["0"],
//!   "tables": [[0.25, 0.25, 0.25, 0.25], [0.45, 0.05, 0.05, 0.45]],
//!   "costs": [0.0, 1.0],
//!   "degraded": true
//! }
//! ```
//!
//! Each table is `p(x_a, x_b, x_e | s)` flattened row-major over `[x_a][x_b][x_e]`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::Real;

use super::model::FiniteEdms;

pub const MODEL_SCHEMA: &str = "edms-model/1";

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub schema: String,
    pub states: Vec<String>,
    pub x_a: Vec<String>,
    pub x_b: Vec<String>,
    pub x_e: Vec<String>,
    pub tables: Vec<Vec<f64>>,
    pub costs: Vec<f64>,
    #[serde(default)]
    pub degraded: bool,
}

impl ModelFile {
    pub fn into_model<T: Real>(self) -> Result<FiniteEdms<T>> {
        if self.schema != MODEL_SCHEMA {
            return Err(Error::InvalidModel(format!(
                "unsupported schema `{}`, expected `{MODEL_SCHEMA}`",
                self.schema
            )));
        }
        let conv = |v: &[f64]| -> Vec<T> { v.iter().map(|x| T::from_f64(*x).unwrap_or(T::nan())).collect() };
        let tables = self.tables.iter().map(|t| conv(t)).collect();
        let costs = conv(&self.costs);
        Ok(FiniteEdms::new(self.states, self.x_a, self.x_b, self.x_e, tables, costs)?.with_degraded(self.degraded))
    }

    pub fn from_model<T: Real>(model: &FiniteEdms<T>) -> Self {
        let (x_a, x_b, x_e) = model.alphabets();
        let f = |x: &T| x.to_f64().unwrap_or(f64::NAN);
        Self {
            schema: MODEL_SCHEMA.to_string(),
            states: model.state_labels().to_vec(),
            x_a: x_a.to_vec(),
            x_b: x_b.to_vec(),
            x_e: x_e.to_vec(),
            tables: (0..model.num_states())
                .map(|s| model.table(s).expect("state in range").iter().map(f).collect())
                .collect(),
            costs: model.costs().iter().map(f).collect(),
            degraded: model.declared_degraded(),
        }
    }
}

impl<T: Real> FiniteEdms<T> {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str::<ModelFile>(text)?.into_model()
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&std::fs::read_to_string(path)?)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ModelFile::from_model(self)).expect("model file serializes")
    }
}
