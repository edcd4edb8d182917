use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::bessel::bessel_j;
use crate::circle::{FourierOperator, ModeBand};
use crate::error::Result;
use crate::euclid2::CylinderPoint;
use crate::swkernel::{omega_matrix, LTable, Quantizer, SymbolFunction};

use super::report::PropertyReport;

pub const MODE_INDEPENDENCE_TOL: f64 = 1e-3;
pub const SHAPE_CORRELATION: f64 = 0.999;
/// `1 − SHAPE_CORRELATION`, written out so reports show a clean value.
pub const SHAPE_TOL: f64 = 1e-3;
pub const REPRODUCING_TOL: f64 = 1e-3;
/// Outer-mode weight above which a band overlap is flagged as unconverged.
pub const OVERLAP_TAIL_TOL: f64 = 1e-8;
/// First positive zero of `J_0`.
pub const J0_FIRST_ZERO: f64 = 2.404825557695773;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OverlapTrace {
    pub value: C64,
    /// Summed magnitude of the terms with `max(|m|,|n|) ≥ N/2`.
    pub tail: f64,
    pub converged: bool,
}

/// `tr[Ω(u)Ω(v)]` summed over the band. The overlap is a distribution in
/// `α − α'`, so pointwise values are band-dependent; see [`overlap_modes`].
pub fn overlap_trace(a: &SymbolFunction, u: &CylinderPoint, v: &CylinderPoint, band: ModeBand) -> Result<OverlapTrace> {
    let ou = omega_matrix(a, u, band)?;
    let ov = omega_matrix(a, v, band)?;
    let half = band.interior() as i64;
    let mut value = C64::new(0.0, 0.0);
    let mut tail = 0.0;
    for m in band.modes() {
        for n in band.modes() {
            let t = ou.get(m, n) * ov.get(n, m);
            value += t;
            if m.abs() >= half || n.abs() >= half {
                tail += t.norm();
            }
        }
    }
    Ok(OverlapTrace { value, tail, converged: tail <= OVERLAP_TAIL_TOL })
}

/// Coefficients `C_k(j, j')` of `tr[Ω(α,j)Ω(α',j')] = Σ_k e^{−ik(α−α')} C_k`
/// for `|k| ≤ N/2`, indexed by `k + N/2`.
pub fn overlap_modes(a: &SymbolFunction, j: f64, j2: f64, band: ModeBand) -> Vec<C64> {
    let n = band.n() as i64;
    let table = LTable::compute(a, 2 * band.n(), &[j, j2], 0);
    overlap_modes_from(&table, 0, 1, n)
}

fn overlap_modes_from(table: &LTable, i: usize, i2: usize, n: i64) -> Vec<C64> {
    let half = n / 2;
    (-half..=half)
        .map(|k| {
            let mut c = C64::new(0.0, 0.0);
            // m − n' = k with |m|, |n'| ≤ N
            for m in (-n + k.max(0))..=(n + k.min(0)) {
                let p = 2 * m - k;
                c += table.get(p, i) * table.get(p, i2);
            }
            c
        })
        .collect()
}

/// Shape analysis of the overlap modes along `j + j' = s`, `j − j' = d`.
#[derive(Debug, Clone, Serialize)]
pub struct OverlapProfile {
    pub sum: f64,
    pub separations: Vec<f64>,
    /// Largest `|C_k − C_0|` over `|k| ≤ N/2` and all separations.
    pub mode_spread: f64,
    /// Uncentred correlation of `(C_0 + C_1)/2` with `J_0(2d)`.
    pub correlation: f64,
    /// Least-squares constant `κ` in `(C_0 + C_1)/2 ≈ κ J_0(2d)`.
    pub fitted_constant: f64,
}

pub fn overlap_profile(a: &SymbolFunction, sum: f64, separations: &[f64], band: ModeBand) -> OverlapProfile {
    let n = band.n() as i64;
    let mut js = Vec::with_capacity(2 * separations.len());
    for &d in separations {
        js.push(0.5 * (sum + d));
        js.push(0.5 * (sum - d));
    }
    let table = LTable::compute(a, 2 * band.n(), &js, 0);
    let mut spread: f64 = 0.0;
    let mut avg = Vec::with_capacity(separations.len());
    for i in 0..separations.len() {
        let modes = overlap_modes_from(&table, 2 * i, 2 * i + 1, n);
        let c0 = modes[(n / 2) as usize];
        let c1 = modes[(n / 2 + 1) as usize];
        spread = modes.iter().fold(spread, |s, c| s.max((c - c0).norm()));
        avg.push(0.5 * (c0 + c1));
    }
    let shape: Vec<f64> = separations.iter().map(|&d| bessel_j(0, 2.0 * d)).collect();
    let dot: C64 = avg.iter().zip(&shape).map(|(x, y)| x * *y).sum();
    let nx = avg.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
    let ny = shape.iter().map(|y| y * y).sum::<f64>().sqrt();
    OverlapProfile {
        sum,
        separations: separations.to_vec(),
        mode_spread: spread,
        correlation: dot.norm() / (nx * ny),
        fitted_constant: dot.re / (ny * ny),
    }
}

/// Mode independence and `J_0` shape of the overlap on `d = j − j' ∈ [0, 4]`,
/// along the line `2(j + j')` = first zero of `J_0`, where the antipodal term vanishes.
pub fn check_overlap_structure(a: &SymbolFunction, band: ModeBand) -> Vec<PropertyReport> {
    let separations: Vec<f64> = (0..=80).map(|i| i as f64 * 0.05).collect();
    let prof = overlap_profile(a, 0.5 * J0_FIRST_ZERO, &separations, band);
    vec![
        PropertyReport::new(format!("overlap.{}.mode-independence", a.name()), prof.mode_spread, MODE_INDEPENDENCE_TOL)
            .with("kernel", a.name())
            .with("band", band.n())
            .with("j_plus_j2", prof.sum),
        PropertyReport::new(format!("overlap.{}.j0-shape", a.name()), (1.0 - prof.correlation).max(0.0), SHAPE_TOL)
            .with("kernel", a.name())
            .with("band", band.n())
            .with("correlation", prof.correlation)
            .with("fitted_constant", prof.fitted_constant)
            .with("separation_range", [0.0, 4.0]),
    ]
}

/// `|tr[Q(W_{n,m}) Ω(u)] − W_{n,m}(u)|`: the overlap acts as a reproducing kernel.
pub fn reproducing_residual(q: &Quantizer, n: i64, m: i64, u: &CylinderPoint) -> Result<f64> {
    let p = FourierOperator::transition(q.band(), n, m);
    let back = q.quantize(&q.wigner(&p)?)?;
    let table = LTable::compute(q.symbol(), 2 * q.band().n(), &[u.j], 0);
    let mut at_u = C64::new(0.0, 0.0);
    for r in q.band().modes() {
        for s in q.band().modes() {
            // tr[B Ω(u)] = Σ B_{rs} e^{i(s−r)α} L_{r+s}(j)
            at_u += back.get(r, s) * C64::from_polar(1.0, (s - r) as f64 * u.alpha) * table.get(r + s, 0);
        }
    }
    let exact = C64::from_polar(1.0, (m - n) as f64 * u.alpha) * table.get(n + m, 0);
    Ok((at_u - exact).norm())
}

pub fn check_reproducing(q: &Quantizer, n: i64, m: i64, u: &CylinderPoint) -> Result<PropertyReport> {
    let res = reproducing_residual(q, n, m, u)?;
    Ok(PropertyReport::new(format!("overlap.{}.reproducing", q.symbol().name()), res, REPRODUCING_TOL)
        .with("kernel", q.symbol().name())
        .with("n", n)
        .with("m", m)
        .with("u", u)
        .with("measure", q.measure())
        .with("grid", q.grid().describe()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::swkernel::builtin;

    #[test]
    fn parity_modes_follow_bessel_addition() {
        let a = builtin("parity").unwrap();
        let band = ModeBand::new(24).unwrap();
        let (j, j2) = (0.8, -0.4);
        let modes = overlap_modes(&a, j, j2, band);
        let even = 0.5 * (bessel_j(0, 2.0 * (j - j2)) + bessel_j(0, 2.0 * (j + j2)));
        let odd = 0.5 * (bessel_j(0, 2.0 * (j - j2)) - bessel_j(0, 2.0 * (j + j2)));
        for (i, c) in modes.iter().enumerate() {
            let k = i as i64 - 12;
            let want = if k % 2 == 0 { even } else { odd };
            assert!((c - want).norm() < 1e-10, "k={k} {c} {want}");
        }
        let u0 = overlap_modes(&a, 0.0, 0.0, band);
        assert!((u0[12] - 1.0).norm() < 1e-12);
    }

    #[test]
    fn parity_structure_and_hermitian_symmetry() {
        let a = builtin("parity").unwrap();
        let reps = check_overlap_structure(&a, ModeBand::new(24).unwrap());
        assert!(reps.iter().all(|r| r.pass), "{reps:?}");
        let band = ModeBand::new(20).unwrap();
        let u = CylinderPoint::new(0.3, 0.5);
        let v = CylinderPoint::new(1.1, -0.2);
        let uv = overlap_trace(&a, &u, &v, band).unwrap();
        let vu = overlap_trace(&a, &v, &u, band).unwrap();
        assert!((uv.value - vu.value.conj()).norm() < 1e-10);
        assert!(!uv.converged);
    }
}
