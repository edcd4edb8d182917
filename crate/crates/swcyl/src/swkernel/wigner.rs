use std::f64::consts::TAU;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::kernel::LTable;
use super::symbol::SymbolFunction;
use crate::circle::{FourierOperator, ModeBand};
use crate::error::{Result, SwError};
use crate::quadrature::{JRule, JWeighting};

/// Largest j step accepted by the quantizer.
pub const MAX_J_STEP: f64 = 0.1;
/// Angular nodes per band mode required by the quantizer.
pub const ALPHA_NODES_PER_MODE: usize = 8;

/// Product grid `{α_k = 2πk/K} × {j ∈ [−J_max, J_max] step Δj}` with its j weighting.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderGrid {
    pub k: usize,
    pub j_max: f64,
    pub dj: f64,
    pub weighting: JWeighting,
}

impl CylinderGrid {
    pub fn new(k: usize, j_max: f64, dj: f64, weighting: JWeighting) -> Result<Self> {
        if k == 0 || !(j_max > 0.0) || !(dj > 0.0) || dj > j_max {
            return Err(SwError::GridTooCoarse(format!("invalid cylinder grid K={k}, J_max={j_max}, Δj={dj}")));
        }
        Ok(Self { k, j_max, dj, weighting })
    }

    pub fn alphas(&self) -> Vec<f64> {
        (0..self.k).map(|i| TAU * i as f64 / self.k as f64).collect()
    }

    pub fn j_rule(&self) -> JRule {
        JRule::new(self.j_max, self.dj, self.weighting)
    }

    pub fn j_len(&self) -> usize {
        2 * (self.j_max / self.dj).round() as usize + 1
    }

    pub fn len(&self) -> usize {
        self.k * self.j_len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn describe(&self) -> String {
        format!("K={} J_max={} dj={} weighting={}", self.k, self.j_max, self.dj, self.weighting)
    }
}

/// Complex samples on a [`CylinderGrid`], row-major with `α` as the slow index.
#[derive(Debug, Clone, PartialEq)]
pub struct WignerSymbol {
    grid: CylinderGrid,
    values: Vec<C64>,
}

impl WignerSymbol {
    pub fn new(grid: CylinderGrid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(SwError::Schema(format!(
                "{} values for a grid of {} nodes ({})",
                values.len(),
                grid.len(),
                grid.describe()
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn zeros(grid: CylinderGrid) -> Self {
        Self { grid, values: vec![C64::new(0.0, 0.0); grid.len()] }
    }

    pub fn from_fn(grid: CylinderGrid, f: impl Fn(f64, f64) -> C64) -> Self {
        let rule = grid.j_rule();
        let values = grid.alphas().iter().flat_map(|&al| rule.j.iter().map(move |&j| (al, j))).map(|(al, j)| f(al, j)).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &CylinderGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    /// Value at angle index `ia`, j index `ij`.
    pub fn at(&self, ia: usize, ij: usize) -> C64 {
        self.values[ia * self.grid.j_len() + ij]
    }

    fn check_grid(&self, other: &Self) -> Result<()> {
        if self.grid != other.grid {
            return Err(SwError::GridMismatch { left: self.grid.describe(), right: other.grid.describe() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect() })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_grid(other)?;
        Ok(Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() })
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_distance(&self, other: &Self) -> Result<f64> {
        self.check_grid(other)?;
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Everything needed to move between operators on a band and symbols on a grid
/// for one kernel: the `L` table on the grid's j nodes and the measure constant.
///
/// `dμ = c dα dj`; the quantizer is `A = ∫ f Ω dμ`.
#[derive(Debug, Clone)]
pub struct Quantizer {
    symbol: SymbolFunction,
    band: ModeBand,
    grid: CylinderGrid,
    rule: JRule,
    table: LTable,
    measure: f64,
}

impl Quantizer {
    pub fn new(symbol: &SymbolFunction, grid: CylinderGrid, band: ModeBand, measure: f64) -> Result<Self> {
        if grid.dj > MAX_J_STEP {
            return Err(SwError::GridTooCoarse(format!("Δj = {} exceeds {MAX_J_STEP}", grid.dj)));
        }
        if grid.k < ALPHA_NODES_PER_MODE * band.n() {
            return Err(SwError::GridTooCoarse(format!(
                "K = {} < {} for band N = {}",
                grid.k,
                ALPHA_NODES_PER_MODE * band.n(),
                band.n()
            )));
        }
        if !(measure > 0.0) {
            return Err(SwError::InvalidParams(format!("measure constant must be positive, got {measure}")));
        }
        let rule = grid.j_rule();
        let table = LTable::compute(symbol, 2 * band.n(), &rule.j, 0);
        Ok(Self { symbol: symbol.clone(), band, grid, rule, table, measure })
    }

    pub fn with_default_measure(symbol: &SymbolFunction, grid: CylinderGrid, band: ModeBand) -> Result<Self> {
        Self::new(symbol, grid, band, symbol.default_measure())
    }

    pub fn band(&self) -> ModeBand {
        self.band
    }

    pub fn grid(&self) -> &CylinderGrid {
        &self.grid
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn symbol(&self) -> &SymbolFunction {
        &self.symbol
    }

    pub fn table(&self) -> &LTable {
        &self.table
    }

    pub fn j_rule(&self) -> &JRule {
        &self.rule
    }

    fn nd(&self) -> usize {
        4 * self.band.n() + 1
    }

    /// `W_A(α,j) = Σ_d e^{−idα} M_d(j)` with `M_d(j) = Σ_{m−n=d} A_{nm} L_{m+n}(j)`.
    pub fn angular_modes(&self, a: &FourierOperator) -> Result<Vec<Vec<C64>>> {
        if a.band() != self.band {
            return Err(SwError::BandMismatch { left: a.band().n(), right: self.band.n() });
        }
        let nj = self.rule.len();
        let two_n = 2 * self.band.n() as i64;
        let mut modes = vec![vec![C64::new(0.0, 0.0); nj]; self.nd()];
        for m in self.band.modes() {
            for n in self.band.modes() {
                let coef = a.get(n, m);
                if coef == C64::new(0.0, 0.0) {
                    continue;
                }
                let slot = &mut modes[(m - n + two_n) as usize];
                for (i, s) in slot.iter_mut().enumerate() {
                    *s += coef * self.table.get(m + n, i);
                }
            }
        }
        Ok(modes)
    }

    fn symbol_from_modes(&self, modes: &[Vec<C64>]) -> WignerSymbol {
        let nj = self.rule.len();
        let two_n = 2 * self.band.n() as i64;
        let mut values = vec![C64::new(0.0, 0.0); self.grid.len()];
        for (ia, al) in self.grid.alphas().iter().enumerate() {
            let row = &mut values[ia * nj..(ia + 1) * nj];
            for (di, md) in modes.iter().enumerate() {
                let d = di as i64 - two_n;
                let ph = C64::from_polar(1.0, -(d as f64) * al);
                for (r, v) in row.iter_mut().zip(md) {
                    *r += ph * v;
                }
            }
        }
        WignerSymbol { grid: self.grid, values }
    }

    /// `W_A(u) = tr[A Ω(u)]` on every grid node.
    pub fn wigner(&self, a: &FourierOperator) -> Result<WignerSymbol> {
        Ok(self.symbol_from_modes(&self.angular_modes(a)?))
    }

    /// `F_d(j) = (1/K) Σ_k f(α_k, j) e^{−idα_k}`
    fn analyze(&self, f: &WignerSymbol) -> Vec<Vec<C64>> {
        let nj = self.rule.len();
        let two_n = 2 * self.band.n() as i64;
        let alphas = self.grid.alphas();
        let inv_k = 1.0 / self.grid.k as f64;
        (0..self.nd())
            .map(|di| {
                let d = di as i64 - two_n;
                let mut out = vec![C64::new(0.0, 0.0); nj];
                for (ia, al) in alphas.iter().enumerate() {
                    let ph = C64::from_polar(inv_k, -(d as f64) * al);
                    for (o, v) in out.iter_mut().zip(&f.values[ia * nj..(ia + 1) * nj]) {
                        *o += ph * v;
                    }
                }
                out
            })
            .collect()
    }

    fn check_symbol(&self, f: &WignerSymbol) -> Result<()> {
        if f.grid != self.grid {
            return Err(SwError::GridMismatch { left: f.grid.describe(), right: self.grid.describe() });
        }
        Ok(())
    }

    /// `A = ∫ f Ω dμ`: `⟨k|A|l⟩ = 2πc Σ_j w_j L_{k+l}(j) F_{k−l}(j)`.
    pub fn quantize(&self, f: &WignerSymbol) -> Result<FourierOperator> {
        self.check_symbol(f)?;
        if !self.symbol.flags().finite_trace {
            return Err(SwError::KernelRefused(format!("kernel '{}' has a(0) = 0", self.symbol.name())));
        }
        let fd = self.analyze(f);
        let two_n = 2 * self.band.n() as i64;
        let scale = TAU * self.measure;
        Ok(FourierOperator::from_fn(self.band, |k, l| {
            let row = &fd[(k - l + two_n) as usize];
            let mut acc = C64::new(0.0, 0.0);
            for (i, w) in self.rule.weights.iter().enumerate() {
                acc += *w * self.table.get(k + l, i) * row[i];
            }
            scale * acc
        }))
    }

    /// `f * g = W(Q(f) Q(g))`
    pub fn star(&self, f: &WignerSymbol, g: &WignerSymbol) -> Result<WignerSymbol> {
        self.check_symbol(f)?;
        self.check_symbol(g)?;
        if !self.symbol.flags().tracial {
            return Err(SwError::KernelRefused(format!(
                "kernel '{}' fails the admissibility identity; the round trip is not faithful",
                self.symbol.name()
            )));
        }
        let prod = self.quantize(f)?.compose(&self.quantize(g)?)?;
        self.wigner(&prod)
    }

    /// `∫ f dμ`
    pub fn integrate(&self, f: &WignerSymbol) -> Result<C64> {
        self.check_symbol(f)?;
        let nj = self.rule.len();
        let mut acc = C64::new(0.0, 0.0);
        for ia in 0..self.grid.k {
            for (v, w) in f.values[ia * nj..(ia + 1) * nj].iter().zip(&self.rule.weights) {
                acc += *w * v;
            }
        }
        Ok(acc * (TAU / self.grid.k as f64) * self.measure)
    }

    /// `∫ f dμ` read off the angular modes of an operator, without sampling in α.
    pub fn integrate_operator_symbol(&self, a: &FourierOperator) -> Result<C64> {
        let modes = self.angular_modes(a)?;
        let zero = &modes[2 * self.band.n()];
        let s: C64 = zero.iter().zip(&self.rule.weights).map(|(v, w)| *w * v).sum();
        Ok(s * TAU * self.measure)
    }
}

pub fn wigner_transform(a: &FourierOperator, symbol: &SymbolFunction, grid: CylinderGrid) -> Result<WignerSymbol> {
    Quantizer::with_default_measure(symbol, grid, a.band())?.wigner(a)
}

pub fn quantize(f: &WignerSymbol, symbol: &SymbolFunction, band: ModeBand, measure: f64) -> Result<FourierOperator> {
    Quantizer::new(symbol, f.grid, band, measure)?.quantize(f)
}

pub fn star_product(
    f: &WignerSymbol,
    g: &WignerSymbol,
    symbol: &SymbolFunction,
    band: ModeBand,
    measure: f64,
) -> Result<WignerSymbol> {
    if f.grid != g.grid {
        return Err(SwError::GridMismatch { left: f.grid.describe(), right: g.grid.describe() });
    }
    Quantizer::new(symbol, f.grid, band, measure)?.star(f, g)
}
