use num_complex::Complex64 as C64;

use crate::circle::{generalized_trace, ModeBand, TraceConvention};
use crate::error::Result;
use crate::euclid2::CylinderPoint;
use crate::swkernel::{omega_matrix, LTable, SymbolFunction, SymbolShape};

use super::report::PropertyReport;

pub const UNIT_TRACE_TOL: f64 = 1e-10;
/// Agreement between the windowed mode sum and the kernel diagonal.
pub const CONVENTION_TOL: f64 = 1e-6;
pub const WINDOW_MODES: usize = 512;

/// `C^∞` window: 1 on `|t| ≤ ½`, 0 for `|t| ≥ 1`.
fn plateau(t: f64) -> f64 {
    let f = |x: f64| if x <= 0.0 { 0.0 } else { (-1.0 / x).exp() };
    let x = 2.0 * (1.0 - t.abs());
    f(x) / (f(x) + f(1.0 - x))
}

/// `Σ_n w(2n/P) L_{2n}(j)`: the diagonal mode sum of `Ω(α, j)` with a smooth window.
pub fn windowed_mode_trace(a: &SymbolFunction, j: f64, p: usize) -> C64 {
    let table = LTable::compute(a, p, &[j], 0);
    let half = (p / 2) as i64;
    (-half..=half).map(|n| table.get(2 * n, 0) * plateau(2.0 * n as f64 / p as f64)).sum()
}

/// Both trace conventions for `Ω(u)`; the unit-trace assertion applies to constant `a ≡ 1`.
pub fn check_trace(a: &SymbolFunction, u: &CylinderPoint, band: ModeBand) -> Result<Vec<PropertyReport>> {
    let omega = omega_matrix(a, u, band)?;
    let diag = generalized_trace(&omega, TraceConvention::KernelDiagonal)?;
    let modes = windowed_mode_trace(a, u.j, WINDOW_MODES);
    let half_a0 = 0.5 * a.value(0.0);
    let mut out = vec![PropertyReport::new(format!("trace.{}.conventions", a.name()), (modes - diag).norm(), CONVENTION_TOL)
        .with("kernel", a.name())
        .with("u", u)
        .with("kernel_diagonal", [diag.re, diag.im])
        .with("windowed_mode_sum", [modes.re, modes.im])
        .with("half_a0", [half_a0.re, half_a0.im])
        .with("window_modes", WINDOW_MODES)];
    if matches!(a.shape(), SymbolShape::Constant(c) if (*c - 1.0).norm() < 1e-15) {
        out.push(
            PropertyReport::new(format!("trace.{}.unit", a.name()), (diag - 1.0).norm(), UNIT_TRACE_TOL)
                .with("kernel_diagonal", [diag.re, diag.im])
                .with("half_a0", [half_a0.re, half_a0.im]),
        );
    }
    Ok(out)
}
