//! JSON schemas for kernels, cylinder symbols and flat phase-space functions.
//! Complex numbers are `[re, im]` pairs; arrays are row-major.

use std::path::Path;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SwError};
use crate::flat_moyal::{PhaseGrid, PhaseGridFunction};
use crate::swkernel::{builtin, AngleSeries, CylinderGrid, KernelParams, SymbolFunction, WignerSymbol};

/// Which `a(θ)` to use.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum KernelSpec {
    Builtin { name: String },
    Params {
        #[serde(default = "default_param_name")]
        name: String,
        h: AngleSeries,
        phi: AngleSeries,
    },
    /// Values of `a` on `θ_k = 2πk/M`.
    Samples {
        #[serde(default = "default_sample_name")]
        name: String,
        values: Vec<C64>,
    },
}

fn default_param_name() -> String {
    "custom".into()
}

fn default_sample_name() -> String {
    "sampled".into()
}

impl KernelSpec {
    pub fn build(&self) -> Result<SymbolFunction> {
        match self {
            Self::Builtin { name } => builtin(name),
            Self::Params { name, h, phi } => SymbolFunction::from_params(name, KernelParams::new(h.clone(), phi.clone())?),
            Self::Samples { name, values } => SymbolFunction::from_samples(name, values.clone()),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WignerSymbolFile {
    grid: CylinderGrid,
    /// `values[ia · j_len + ij]`
    values: Vec<C64>,
}

pub fn wigner_symbol_to_json(f: &WignerSymbol) -> Result<String> {
    Ok(serde_json::to_string(&WignerSymbolFile { grid: *f.grid(), values: f.values().to_vec() })?)
}

pub fn wigner_symbol_from_json(text: &str) -> Result<WignerSymbol> {
    let file: WignerSymbolFile = serde_json::from_str(text).map_err(|e| SwError::Schema(e.to_string()))?;
    WignerSymbol::new(file.grid, file.values)
}

pub fn read_wigner_symbol(path: &Path) -> Result<WignerSymbol> {
    wigner_symbol_from_json(&std::fs::read_to_string(path)?)
}

pub fn write_wigner_symbol(path: &Path, f: &WignerSymbol) -> Result<()> {
    std::fs::write(path, wigner_symbol_to_json(f)?)?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PhaseFunctionFile {
    grid: PhaseGrid,
    /// `values[iq · G + ip]`
    values: Vec<C64>,
}

pub fn phase_function_to_json(f: &PhaseGridFunction) -> Result<String> {
    Ok(serde_json::to_string(&PhaseFunctionFile { grid: *f.grid(), values: f.values().to_vec() })?)
}

pub fn phase_function_from_json(text: &str) -> Result<PhaseGridFunction> {
    let file: PhaseFunctionFile = serde_json::from_str(text).map_err(|e| SwError::Schema(e.to_string()))?;
    PhaseGridFunction::new(PhaseGrid::new(file.grid.extent, file.grid.points)?, file.values)
}

pub fn read_kernel_samples(path: &Path) -> Result<Vec<C64>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Samples {
        Bare(Vec<C64>),
        Wrapped { values: Vec<C64> },
    }
    let text = std::fs::read_to_string(path)?;
    match serde_json::from_str(&text).map_err(|e| SwError::Schema(e.to_string()))? {
        Samples::Bare(v) | Samples::Wrapped { values: v } => Ok(v),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::JWeighting;

    #[test]
    fn wigner_symbol_round_trip() {
        let grid = CylinderGrid::new(4, 1.0, 0.5, JWeighting::Plain).unwrap();
        let f = WignerSymbol::from_fn(grid, C64::new);
        let text = wigner_symbol_to_json(&f).unwrap();
        assert!(text.contains("\"values\":[[0.0,-1.0]"));
        assert_eq!(wigner_symbol_from_json(&text).unwrap(), f);
        let short = text.replace("[0.0,-1.0],", "");
        assert!(matches!(wigner_symbol_from_json(&short), Err(SwError::Schema(_))));
    }

    #[test]
    fn kernel_specs_parse() {
        let spec: KernelSpec = serde_json::from_str(r#"{"kind":"builtin","name":"half-cos"}"#).unwrap();
        assert_eq!(spec.build().unwrap().name(), "half-cos");
        let spec: KernelSpec =
            serde_json::from_str(r#"{"kind":"params","h":{"cos":[0,0.3]},"phi":{"sin":[0,0.2]}}"#).unwrap();
        assert!(spec.build().unwrap().flags().hermitian);
    }
}
