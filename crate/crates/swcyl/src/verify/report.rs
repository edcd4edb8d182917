use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// Outcome of one numerical check. `pass` holds exactly when `residual ≤ tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub context: Map<String, Value>,
}

impl PropertyReport {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        // NaN residuals never pass
        let pass = residual <= tolerance;
        Self { name: name.into(), residual, tolerance, pass, context: Map::new() }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.context.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        self.context.insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }

    /// Replace the tolerance and recompute `pass`.
    pub fn retolerate(&mut self, tolerance: f64) {
        self.tolerance = tolerance;
        self.pass = self.residual <= tolerance;
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
