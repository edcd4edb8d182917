//! The SW kernel family on the cylinder orbits: symbols `a(θ)`, kernel
//! operators `Ω(α,j)`, the coefficient functions `L_n(j)`, Wigner transform,
//! quantizer and star product.

pub mod params;
pub mod symbol;
pub mod kernel;
pub mod wigner;

pub use params::{AngleSeries, KernelParams};
pub use symbol::{builtin, AdmissibilityReport, BUILTIN_NAMES, HERMITIAN_TOL, TRACIAL_TOL, AntipodalFit, Injective, SymbolFlags, SymbolFunction, SymbolShape};
pub use kernel::{
    l_coeff, legacy_parity_kernel, omega_from_table, omega_matrix, omega_matrix_quadrature, required_band,
    wigner_basis_symbol, LTable, BAND_MARGIN,
};
pub use wigner::{quantize, star_product, wigner_transform, CylinderGrid, Quantizer, MAX_J_STEP, WignerSymbol};
