use rayon::prelude::*;
use serde::Serialize;

use crate::quadrature::{JRule, JWeighting};
use crate::swkernel::{LTable, SymbolFunction};

use super::report::PropertyReport;

pub const TRACIALITY_TOL: f64 = 1e-2;

/// j-grid and mode range for the reduced traciality identity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TracialitySettings {
    pub j_max: f64,
    pub dj: f64,
    pub weighting: JWeighting,
    /// Modes `|p| ≤ p_max` enter the sum over `s`.
    pub p_max: usize,
    /// Measure constant `c` in `dμ = c dα dj`; `None` takes the kernel default.
    pub measure: Option<f64>,
}

impl Default for TracialitySettings {
    fn default() -> Self {
        Self { j_max: 40.0, dj: 0.05, weighting: JWeighting::Extrapolated, p_max: 96, measure: None }
    }
}

/// `|Σ_s L_{2s+r}(0) ⟨L_{2s+r}|L_r⟩ − L_r(0)|` for each `r`, where
/// `⟨L_p|L_q⟩ = 2πc ∫ L_p(j) L_q(j) dj` (bilinear, no conjugation).
pub fn traciality_residuals(a: &SymbolFunction, rs: &[i64], settings: &TracialitySettings) -> Vec<f64> {
    let rule = JRule::new(settings.j_max, settings.dj, settings.weighting);
    let c = settings.measure.unwrap_or_else(|| a.default_measure());
    let p_max = settings.p_max as i64;
    let table = LTable::compute(a, settings.p_max, &rule.j, 0);
    let at_zero = LTable::compute(a, settings.p_max, &[0.0], 0);
    rs.par_iter()
        .map(|&r| {
            let lr = table.row(r);
            let mut sum = num_complex::Complex64::new(0.0, 0.0);
            let mut p = -p_max + (r - -p_max).rem_euclid(2);
            while p <= p_max {
                let lp = table.row(p);
                let pairing: num_complex::Complex64 =
                    lp.iter().zip(&lr).zip(&rule.weights).map(|((x, y), w)| x * y * *w).sum();
                sum += at_zero.get(p, 0) * pairing * (std::f64::consts::TAU * c);
                p += 2;
            }
            (sum - at_zero.get(r, 0)).norm()
        })
        .collect()
}

pub fn check_traciality(a: &SymbolFunction, r: i64, settings: &TracialitySettings) -> PropertyReport {
    let res = traciality_residuals(a, &[r], settings)[0];
    traciality_report(a, r, res, settings)
}

pub(crate) fn traciality_report(a: &SymbolFunction, r: i64, residual: f64, s: &TracialitySettings) -> PropertyReport {
    PropertyReport::new(format!("traciality.{}.r{}", a.name(), r), residual, TRACIALITY_TOL)
        .with("kernel", a.name())
        .with("r", r)
        .with("bracket", "bilinear L2(dj), 2*pi*c*int L_p L_q dj")
        .with("measure", s.measure.unwrap_or_else(|| a.default_measure()))
        .with("j_max", s.j_max)
        .with("dj", s.dj)
        .with("weighting", s.weighting.to_string())
        .with("p_max", s.p_max)
}
