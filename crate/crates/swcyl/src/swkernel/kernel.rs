use rayon::prelude::*;
use std::f64::consts::PI;

use num_complex::Complex64 as C64;

use super::symbol::SymbolFunction;
use crate::bessel::bessel_j_upto;
use crate::circle::{FourierOperator, ModeBand, ReflectionKernel};
use crate::error::{Result, SwError};
use crate::euclid2::CylinderPoint;
use crate::quadrature::CircleRule;

/// Extra modes kept beyond `2|j|` so Bessel-type tails are negligible at the band edge.
pub const BAND_MARGIN: usize = 16;

pub fn required_band(j: f64) -> usize {
    (2.0 * j.abs()).ceil() as usize + BAND_MARGIN
}

fn check_band(band: ModeBand, j: f64) -> Result<()> {
    let needed = required_band(j);
    if band.n() < needed {
        return Err(SwError::BandTooSmall { band: band.n(), j, needed });
    }
    Ok(())
}

/// `L_p(j)` for `|p| ≤ p_max` on a list of `j` values.
///
/// `L_p(j) = (1/2π)∫ e^{2ij sin θ} a(θ) e^{−ipθ} dθ`
#[derive(Debug, Clone)]
pub struct LTable {
    p_max: usize,
    js: Vec<f64>,
    data: Vec<C64>,
    nodes: usize,
}

impl LTable {
    pub fn compute(a: &SymbolFunction, p_max: usize, js: &[f64], min_nodes: usize) -> Self {
        let j_max = js.iter().fold(0.0_f64, |m, j| m.max(j.abs()));
        let (rule, values) = a.l_rule(j_max, p_max, min_nodes);
        Self::with_rule(&rule, &values, p_max, js)
    }

    pub fn with_rule(rule: &CircleRule, values: &[C64], p_max: usize, js: &[f64]) -> Self {
        let m = rule.len();
        let np = 2 * p_max + 1;
        let base: Vec<C64> = values.iter().zip(&rule.weights).map(|(a, w)| a * *w).collect();
        let sines: Vec<f64> = rule.nodes.iter().map(|t| t.sin()).collect();
        // e^{−ipθ_k}, row-major in p
        let mut table_re = vec![0.0; np * m];
        let mut table_im = vec![0.0; np * m];
        for (pi, p) in (-(p_max as i64)..=p_max as i64).enumerate() {
            for (k, t) in rule.nodes.iter().enumerate() {
                let (s, c) = (-(p as f64) * t).sin_cos();
                table_re[pi * m + k] = c;
                table_im[pi * m + k] = s;
            }
        }
        let data: Vec<C64> = js
            .par_iter()
            .flat_map_iter(|&j| {
                let mut vr = vec![0.0; m];
                let mut vi = vec![0.0; m];
                for k in 0..m {
                    let v = base[k] * C64::from_polar(1.0, 2.0 * j * sines[k]);
                    vr[k] = v.re;
                    vi[k] = v.im;
                }
                (0..np)
                    .map(|pi| {
                        let er = &table_re[pi * m..(pi + 1) * m];
                        let ei = &table_im[pi * m..(pi + 1) * m];
                        let (mut re, mut im) = (0.0, 0.0);
                        for k in 0..m {
                            re += vr[k] * er[k] - vi[k] * ei[k];
                            im += vr[k] * ei[k] + vi[k] * er[k];
                        }
                        C64::new(re, im)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        Self { p_max, js: js.to_vec(), data, nodes: m }
    }

    pub fn p_max(&self) -> usize {
        self.p_max
    }

    pub fn js(&self) -> &[f64] {
        &self.js
    }

    /// Circle nodes used by the quadrature.
    pub fn nodes(&self) -> usize {
        self.nodes
    }

    /// `L_p(js[idx])`
    pub fn get(&self, p: i64, idx: usize) -> C64 {
        debug_assert!(p.unsigned_abs() as usize <= self.p_max);
        self.data[idx * (2 * self.p_max + 1) + (p + self.p_max as i64) as usize]
    }

    /// `L_p` along the whole `j` list.
    pub fn row(&self, p: i64) -> Vec<C64> {
        (0..self.js.len()).map(|i| self.get(p, i)).collect()
    }
}

/// `L_n(j)` by circle quadrature.
pub fn l_coeff(a: &SymbolFunction, n: i64, j: f64) -> C64 {
    LTable::compute(a, n.unsigned_abs() as usize, &[j], 0).get(n, 0)
}

fn reflection(a: &SymbolFunction, u: &CylinderPoint) -> ReflectionKernel {
    // kernel k(θ) = e^{2ij sin(θ−α)} a(θ−α) at θ = α and θ = α + π
    ReflectionKernel { axis: u.alpha, at_axis: a.value(0.0), at_antipode: a.value(PI) }
}

fn assemble(band: ModeBand, u: &CylinderPoint, l: impl Fn(i64) -> C64) -> FourierOperator {
    FourierOperator::from_fn(band, |m, n| C64::from_polar(1.0, -((m - n) as f64) * u.alpha) * l(m + n))
}

/// `⟨m|Ω(α,j)|n⟩ = e^{−i(m−n)α} L_{m+n}(j)` for
/// `[Ω(α,j)ψ](θ) = e^{2ij sin(θ−α)} a(θ−α) ψ(2α−θ)`.
pub fn omega_matrix(a: &SymbolFunction, u: &CylinderPoint, band: ModeBand) -> Result<FourierOperator> {
    check_band(band, u.j)?;
    let table = LTable::compute(a, 2 * band.n(), &[u.j], 0);
    Ok(omega_from_table(&table, 0, u, band).with_reflection(reflection(a, u)))
}

/// Kernel matrix at `table.js()[idx]` and angle `u.alpha`.
pub fn omega_from_table(table: &LTable, idx: usize, u: &CylinderPoint, band: ModeBand) -> FourierOperator {
    assemble(band, u, |p| table.get(p, idx))
}

/// Direct quadrature of `(1/2π)∫ e^{−imθ} [Ω(α,j) e^{in·}](θ) dθ` with the kernel written out literally.
pub fn omega_matrix_quadrature(a: &SymbolFunction, u: &CylinderPoint, band: ModeBand) -> Result<FourierOperator> {
    check_band(band, u.j)?;
    let (rule, _) = a.l_rule(u.j, 2 * band.n(), 0);
    // nodes centred on the reflection axis keep the cusps of a(θ−α) on refined nodes
    let thetas: Vec<f64> = rule.nodes.iter().map(|t| t + u.alpha).collect();
    let kern: Vec<C64> = thetas
        .iter()
        .zip(&rule.weights)
        .map(|(&th, &w)| C64::from_polar(w, 2.0 * u.j * (th - u.alpha).sin()) * a.value(th - u.alpha))
        .collect();
    let op = FourierOperator::from_fn(band, |m, n| {
        thetas
            .iter()
            .zip(&kern)
            .map(|(&th, k)| k * C64::from_polar(1.0, -(m as f64) * th + n as f64 * (2.0 * u.alpha - th)))
            .sum()
    });
    Ok(op.with_reflection(reflection(a, u)))
}

/// The `a ≡ 1` kernel from Bessel values: `⟨m|Ω|n⟩ = e^{−i(m−n)α} J_{m+n}(2j)`.
pub fn legacy_parity_kernel(u: &CylinderPoint, band: ModeBand) -> Result<FourierOperator> {
    check_band(band, u.j)?;
    let x = 2.0 * u.j;
    let vals = bessel_j_upto(2 * band.n(), x.abs());
    let bj = |p: i64| {
        let k = p.unsigned_abs() as usize;
        let flip = ((p < 0) != (x < 0.0)) && k % 2 == 1;
        C64::new(if flip { -vals[k] } else { vals[k] }, 0.0)
    };
    let one = C64::new(1.0, 0.0);
    Ok(assemble(band, u, bj).with_reflection(ReflectionKernel { axis: u.alpha, at_axis: one, at_antipode: one }))
}

/// `W_{n,m}(α,j) = tr[P_{n,m} Ω(α,j)] = e^{i(m−n)α} L_{m+n}(j)`, with `P_{n,m} = |m⟩⟨n|`.
pub fn wigner_basis_symbol(a: &SymbolFunction, n: i64, m: i64, u: &CylinderPoint) -> C64 {
    C64::from_polar(1.0, (m - n) as f64 * u.alpha) * l_coeff(a, n + m, u.j)
}
