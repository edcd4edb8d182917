use num_complex::Complex64 as C64;

use crate::error::Result;
use crate::flat_moyal::{
    grossmann_royer, h_act_on_phase, h_inverse, h_rep_apply, moyal_direct, moyal_product, probe_nodes, weyl_map,
    wigner_inverse, HeisenbergElement, PhaseGrid, PhaseGridFunction,
};

use super::report::PropertyReport;

pub const FLAT_TOL: f64 = 1e-3;
pub const FLAT_COVARIANCE_TOL: f64 = 1e-4;
/// Probe set for the direct-quadrature comparison is `PROBES × PROBES`.
pub const PROBES: usize = 8;

/// Unit Gaussian `exp(−q² − p²)`.
pub fn unit_gaussian(q: f64, p: f64) -> C64 {
    C64::new((-q * q - p * p).exp(), 0.0)
}

/// Off-centre anisotropic Gaussian.
pub fn skewed_gaussian(q: f64, p: f64) -> C64 {
    C64::new((-(q - 0.5).powi(2) - (p + 0.3).powi(2) / 0.8).exp(), 0.0)
}

/// Heisenberg-plane checks of the flat Moyal machinery on `grid`.
pub fn flat_suite(grid: PhaseGrid) -> Result<Vec<PropertyReport>> {
    let q_extent = grid.extent;
    let desc = grid.describe();
    let mut out = Vec::new();

    let q = PhaseGridFunction::from_fn(grid, |q, _| C64::new(q, 0.0)).with_cutoff();
    let p = PhaseGridFunction::from_fn(grid, |_, p| C64::new(p, 0.0)).with_cutoff();
    let comm = moyal_product(&q, &p)?.sub(&moyal_product(&p, &q)?)?;
    let radius = q_extent / 4.0;
    out.push(
        PropertyReport::new("flat.commutator", comm.max_deviation_within(C64::new(0.0, 1.0), radius), FLAT_TOL)
            .with("grid", &desc)
            .with("radius", radius),
    );

    let f = PhaseGridFunction::from_fn(grid, unit_gaussian);
    let g = PhaseGridFunction::from_fn(grid, skewed_gaussian);
    let probes = probe_nodes(&grid, 2.0, PROBES);
    let mut direct_err: f64 = 0.0;
    for (a, b) in [(&f, &f), (&f, &g)] {
        let op = moyal_product(a, b)?;
        let direct = moyal_direct(a, b, &probes)?;
        for (&(i, k), d) in probes.iter().zip(&direct) {
            direct_err = direct_err.max((op.at(i, k) - d).norm());
        }
    }
    out.push(
        PropertyReport::new("flat.direct-quadrature", direct_err, FLAT_TOL)
            .with("grid", &desc)
            .with("probes", probes.len()),
    );

    let back = wigner_inverse(&weyl_map(&f)?);
    out.push(PropertyReport::new("flat.round-trip", back.max_distance_within(&f, q_extent)?, FLAT_TOL).with("grid", &desc));

    let one = PhaseGridFunction::from_fn(grid, |_, _| C64::new(1.0, 0.0)).with_cutoff();
    let unit_err = moyal_product(&f, &one)?.max_distance_within(&f, q_extent / 2.0)?;
    out.push(PropertyReport::new("flat.approximate-unit", unit_err, FLAT_TOL).with("grid", &desc));

    // lattice translations keep the representation exact on the grid
    let h = grid.step();
    let steps = ((q_extent / 16.0) / h).floor().max(1.0);
    let phi: Vec<C64> = grid.coords().iter().map(|&x| C64::new((-(x - 0.3).powi(2)).exp(), 0.2 * x)).collect();
    let xs = grid.coords();
    let mut cov_err: f64 = 0.0;
    for (a_steps, b, c) in [(steps, 0.4, 0.1), (-2.0 * steps, -0.9, 2.0)] {
        let g = HeisenbergElement::new(a_steps * h, b, c);
        let (q0, p0) = (2.5 * h, 0.6);
        let k = grossmann_royer(q0, p0, &grid)?;
        let lhs = h_rep_apply(&g, &k.apply(&h_rep_apply(&h_inverse(&g), &phi, &grid)?), &grid)?;
        let (q1, p1) = h_act_on_phase(&g, q0, p0);
        let rhs = grossmann_royer(q1, p1, &grid)?.apply(&phi);
        for i in 0..grid.points {
            if xs[i].abs() <= q_extent / 4.0 {
                cov_err = cov_err.max((lhs[i] - rhs[i]).norm());
            }
        }
    }
    out.push(PropertyReport::new("flat.grossmann-royer-covariance", cov_err, FLAT_COVARIANCE_TOL).with("grid", &desc));
    Ok(out)
}
