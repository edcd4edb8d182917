use std::f64::consts::{FRAC_PI_4, PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use super::params::{AngleSeries, KernelParams};
use crate::circle::{CircleFunction, ModeBand};
use crate::error::{Result, SwError};
use crate::quadrature::CircleRule;

/// Node count for flag checks and the stored sample view of `a`.
pub const SYMBOL_CHECK_NODES: usize = 1024;
pub const HERMITIAN_TOL: f64 = 1e-9;
pub const TRACIAL_TOL: f64 = 1e-9;
pub const FINITE_TRACE_TOL: f64 = 1e-9;
/// Antipodal-ratio residual below which two kernel points are declared to collide.
pub const COLLISION_TOL: f64 = 1e-9;
/// Residual band in which the collision verdict is left open.
pub const COLLISION_BOUNDARY: f64 = 1e-3;
/// Smallest circle rule used for symbols with the `√|cos θ|` cusp.
pub const MIN_CUSP_NODES: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Injective {
    Yes,
    No,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SymbolFlags {
    pub hermitian: bool,
    pub tracial: bool,
    pub finite_trace: bool,
    pub injective: Injective,
}

/// Best fit of `a(θ+π)/a(θ) = e^{2ic sin θ}`; a perfect fit gives `Ω(α,j) = Ω(α+π, c−j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AntipodalFit {
    pub c: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SymbolShape {
    Constant(C64),
    Parametrized(KernelParams),
    /// Values on `θ_k = 2πk/M`.
    Sampled(Vec<C64>),
}

/// The kernel-defining function `a(θ)` with its admissibility flags.
#[derive(Debug, Clone)]
pub struct SymbolFunction {
    name: String,
    shape: SymbolShape,
    view: CircleFunction,
    interp: Vec<C64>,
    flags: SymbolFlags,
    antipodal: Option<AntipodalFit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdmissibilityReport {
    pub hermitian_residual: f64,
    pub traciality_residual: f64,
    /// `½ a(0)`
    pub half_a0: C64,
    /// `(a(0) + a(π))/2`
    pub mean_a0_api: C64,
    pub finite_trace: bool,
}

fn offset_nodes() -> impl Iterator<Item = f64> {
    (0..SYMBOL_CHECK_NODES).map(|k| TAU * (k as f64 + 0.25) / SYMBOL_CHECK_NODES as f64)
}

impl SymbolFunction {
    pub fn constant(name: &str, value: C64) -> Self {
        Self::build(name, SymbolShape::Constant(value))
    }

    pub fn from_params(name: &str, params: KernelParams) -> Result<Self> {
        params.validate()?;
        Ok(Self::build(name, SymbolShape::Parametrized(params)))
    }

    pub fn from_samples(name: &str, samples: Vec<C64>) -> Result<Self> {
        if samples.len() < 16 || samples.len() % 2 == 1 {
            return Err(SwError::InvalidParams(format!(
                "sampled symbol needs an even node count >= 16, got {}",
                samples.len()
            )));
        }
        Ok(Self::build(name, SymbolShape::Sampled(samples)))
    }

    fn build(name: &str, shape: SymbolShape) -> Self {
        let interp = match &shape {
            SymbolShape::Sampled(s) => {
                let m = s.len() as i64;
                let half = (m - 1) / 2;
                (-half..=half)
                    .map(|n| {
                        s.iter()
                            .enumerate()
                            .map(|(k, v)| v * C64::from_polar(1.0, -TAU * ((n * k as i64).rem_euclid(m)) as f64 / m as f64))
                            .sum::<C64>()
                            / m as f64
                    })
                    .collect()
            }
            _ => Vec::new(),
        };
        let mut sym = Self {
            name: name.to_string(),
            shape,
            view: CircleFunction::from_real_fn(|_| 0.0, 4, ModeBand::new(1).expect("N=1")).expect("4 nodes"),
            interp,
            flags: SymbolFlags { hermitian: false, tracial: false, finite_trace: false, injective: Injective::Boundary },
            antipodal: None,
        };
        let m = match &sym.shape {
            SymbolShape::Sampled(s) => s.len(),
            _ => SYMBOL_CHECK_NODES,
        };
        let band = ModeBand::new(m / 4).expect("m >= 16");
        sym.view = match &sym.shape {
            SymbolShape::Sampled(s) => crate::circle::fourier_analyze(s, band).expect("m = 4N"),
            _ => CircleFunction::from_fn(|t| sym.value(t), m, band).expect("m = 4N"),
        };
        let rep = sym.check_admissible();
        sym.antipodal = sym.fit_antipodal();
        let injective = match sym.antipodal {
            Some(f) if f.residual <= COLLISION_TOL => Injective::No,
            Some(f) if f.residual <= COLLISION_BOUNDARY => Injective::Boundary,
            _ => Injective::Yes,
        };
        sym.flags = SymbolFlags {
            hermitian: rep.hermitian_residual <= HERMITIAN_TOL,
            tracial: rep.traciality_residual <= TRACIAL_TOL,
            finite_trace: rep.finite_trace,
            injective,
        };
        sym
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn shape(&self) -> &SymbolShape {
        &self.shape
    }

    pub fn params(&self) -> Option<&KernelParams> {
        match &self.shape {
            SymbolShape::Parametrized(p) => Some(p),
            _ => None,
        }
    }

    pub fn flags(&self) -> SymbolFlags {
        self.flags
    }

    /// Samples and Fourier coefficients of `a` on the check grid.
    pub fn circle(&self) -> &CircleFunction {
        &self.view
    }

    pub fn antipodal_fit(&self) -> Option<AntipodalFit> {
        self.antipodal
    }

    /// `a(θ)`
    pub fn value(&self, theta: f64) -> C64 {
        match &self.shape {
            SymbolShape::Constant(c) => *c,
            SymbolShape::Parametrized(p) => p.symbol_value(theta),
            SymbolShape::Sampled(s) => {
                let m = s.len();
                let x = theta.rem_euclid(TAU) / TAU * m as f64;
                let k = x.round();
                if (x - k).abs() < 1e-12 {
                    return s[k as usize % m];
                }
                let half = (self.interp.len() as i64 - 1) / 2;
                self.interp
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * C64::from_polar(1.0, (i as i64 - half) as f64 * theta))
                    .sum()
            }
        }
    }

    /// Whether `a` carries the `√|cos θ|` cusp that calls for the smoothed circle rule.
    pub fn has_cusp(&self) -> bool {
        matches!(self.shape, SymbolShape::Parametrized(_))
    }

    /// Circle rule and symbol values adequate for `L_p(j)` with `|j| ≤ j_max`, `|p| ≤ p_max`.
    pub fn l_rule(&self, j_max: f64, p_max: usize, min_nodes: usize) -> (CircleRule, Vec<C64>) {
        let freq = 2.0 * j_max.abs() + p_max as f64;
        let rule = match &self.shape {
            SymbolShape::Sampled(s) => CircleRule::uniform(s.len()),
            SymbolShape::Constant(_) => {
                let m = ((freq + 48.0) as usize * 2).max(min_nodes).max(256);
                CircleRule::uniform(m.next_multiple_of(8))
            }
            SymbolShape::Parametrized(_) => {
                let m = (2.0 * ((8.0 / 3.0) * freq + 96.0)) as usize;
                CircleRule::cusp_smoothed(m.max(min_nodes).max(MIN_CUSP_NODES).next_multiple_of(256))
            }
        };
        let values = match &self.shape {
            SymbolShape::Sampled(s) => s.clone(),
            _ => rule.nodes.iter().map(|&t| self.value(t)).collect(),
        };
        (rule, values)
    }

    pub fn check_admissible(&self) -> AdmissibilityReport {
        let (herm, trac) = match &self.shape {
            SymbolShape::Sampled(s) => {
                let m = s.len();
                let mut herm: f64 = 0.0;
                let mut trac: f64 = 0.0;
                for k in 0..m {
                    let t = TAU * k as f64 / m as f64;
                    herm = herm.max((s[(m - k) % m] - s[k].conj()).norm());
                    trac = trac.max((s[k].norm_sqr() + s[(k + m / 2) % m].norm_sqr() - 4.0 * t.cos().abs()).abs());
                }
                (herm, trac)
            }
            _ => {
                let mut herm: f64 = 0.0;
                let mut trac: f64 = 0.0;
                for t in offset_nodes() {
                    let a = self.value(t);
                    herm = herm.max((self.value(-t) - a.conj()).norm());
                    trac = trac.max((a.norm_sqr() + self.value(t + PI).norm_sqr() - 4.0 * t.cos().abs()).abs());
                }
                (herm, trac)
            }
        };
        let a0 = self.value(0.0);
        let api = self.value(PI);
        AdmissibilityReport {
            hermitian_residual: herm,
            traciality_residual: trac,
            half_a0: 0.5 * a0,
            mean_a0_api: 0.5 * (a0 + api),
            finite_trace: a0.norm() > FINITE_TRACE_TOL,
        }
    }

    /// Fit `a(θ+π) = e^{2ic sin θ} a(θ)`.
    ///
    /// The phase of the ratio is unwrapped outward from the node where both
    /// values are largest, `c` comes from least squares against `2 sin θ` on that
    /// stretch, and the residual is the worst mismatch over all nodes.
    fn fit_antipodal(&self) -> Option<AntipodalFit> {
        let m = SYMBOL_CHECK_NODES;
        let thetas: Vec<f64> = offset_nodes().collect();
        let a: Vec<C64> = thetas.iter().map(|&t| self.value(t)).collect();
        let b: Vec<C64> = thetas.iter().map(|&t| self.value(t + PI)).collect();
        let scale = a.iter().chain(&b).map(|z| z.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return None;
        }
        let floor = 1e-3 * scale;
        let valid: Vec<bool> = a.iter().zip(&b).map(|(x, y)| x.norm() > floor && y.norm() > floor).collect();
        let start = (0..m)
            .filter(|&k| valid[k])
            .max_by(|&i, &k| (a[i].norm() * b[i].norm()).total_cmp(&(a[k].norm() * b[k].norm())))?;
        let ratio = |k: usize| b[k] / a[k];
        let mut unwrapped = vec![(start, thetas[start], ratio(start).arg())];
        for dir in [1i64, -1] {
            let mut prev = ratio(start).arg();
            let mut off = 0.0;
            for step in 1..m as i64 {
                let raw = start as i64 + dir * step;
                let k = raw.rem_euclid(m as i64) as usize;
                if !valid[k] || step as usize >= m / 2 {
                    break;
                }
                let mut ph = ratio(k).arg() + off;
                while ph - prev > PI {
                    ph -= TAU;
                    off -= TAU;
                }
                while ph - prev < -PI {
                    ph += TAU;
                    off += TAU;
                }
                prev = ph;
                unwrapped.push((k, thetas[k] + (raw - k as i64) as f64 * TAU / m as f64, ph));
            }
        }
        // ψ(θ) ≈ 2c sin θ + const on a contiguous stretch
        let n = unwrapped.len() as f64;
        let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
        for &(_, t, ph) in &unwrapped {
            let x = 2.0 * t.sin();
            sx += x;
            sy += ph;
            sxx += x * x;
            sxy += x * ph;
        }
        let det = n * sxx - sx * sx;
        let c = if det.abs() > 1e-12 { (n * sxy - sx * sy) / det } else { 0.0 };
        let mut residual: f64 = 0.0;
        for k in 0..m {
            let want = C64::from_polar(1.0, 2.0 * c * thetas[k].sin()) * a[k];
            residual = residual.max((b[k] - want).norm() / scale);
        }
        Some(AntipodalFit { c, residual })
    }

    /// Default measure constant in `dμ = c dα dj`: kernels with an antipodal
    /// collision cover each operator twice and take `1/(4π)`, the rest `1/(2π)`.
    pub fn default_measure(&self) -> f64 {
        if self.flags.injective == Injective::No {
            1.0 / (4.0 * PI)
        } else {
            1.0 / (2.0 * PI)
        }
    }
}

pub const BUILTIN_NAMES: [&str; 5] = ["parity", "sqrt-cos", "twisted-h", "collision", "half-cos"];

/// Builtin kernels.
///
/// * `parity`: `a ≡ 1`
/// * `sqrt-cos`: `h = 0, φ = 0`
/// * `twisted-h`: `h = (π/8) cos θ, φ = 0`
/// * `collision`: `h = 0, φ = −sin θ`, so `φ(θ+π) − φ(θ) = 2 sin θ`
/// * `half-cos`: `h = −(π/4) sign(cos θ)`, i.e. `a = 2√max(cos θ, 0)`
pub fn builtin(name: &str) -> Result<SymbolFunction> {
    let params = |h: AngleSeries, phi: AngleSeries| KernelParams::new(h, phi);
    match name {
        "parity" => Ok(SymbolFunction::constant(name, C64::new(1.0, 0.0))),
        "sqrt-cos" => SymbolFunction::from_params(name, params(AngleSeries::zero(), AngleSeries::zero())?),
        "twisted-h" => SymbolFunction::from_params(
            name,
            params(AngleSeries::cosines(vec![0.0, PI / 8.0]), AngleSeries::zero())?,
        ),
        "collision" => SymbolFunction::from_params(
            name,
            params(AngleSeries::zero(), AngleSeries::sines(vec![0.0, -1.0]))?,
        ),
        "half-cos" => SymbolFunction::from_params(name, params(AngleSeries::step(-FRAC_PI_4), AngleSeries::zero())?),
        other => Err(SwError::InvalidParams(format!(
            "unknown builtin kernel '{other}' (known: {})",
            BUILTIN_NAMES.join(", ")
        ))),
    }
}
