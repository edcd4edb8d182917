use std::f64::consts::{FRAC_PI_4, PI};

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::circle::{CircleFunction, ModeBand};
use crate::error::{Result, SwError};

/// Nodes used to check parameter invariants.
pub const PARAM_CHECK_NODES: usize = 256;
pub const PARAM_SYMMETRY_TOL: f64 = 1e-10;

/// Real function on the circle: a trigonometric series plus an optional `sign(cos θ)` step.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct AngleSeries {
    /// `cos[k]` multiplies `cos kθ`.
    #[serde(default)]
    pub cos: Vec<f64>,
    /// `sin[k]` multiplies `sin kθ`; `sin[0]` is ignored.
    #[serde(default)]
    pub sin: Vec<f64>,
    #[serde(default)]
    pub sign_cos: f64,
}

impl AngleSeries {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn cosines(cos: Vec<f64>) -> Self {
        Self { cos, ..Self::default() }
    }

    pub fn sines(sin: Vec<f64>) -> Self {
        Self { sin, ..Self::default() }
    }

    pub fn step(amplitude: f64) -> Self {
        Self { sign_cos: amplitude, ..Self::default() }
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut v = 0.0;
        for (k, c) in self.cos.iter().enumerate() {
            v += c * (k as f64 * theta).cos();
        }
        for (k, s) in self.sin.iter().enumerate().skip(1) {
            v += s * (k as f64 * theta).sin();
        }
        if self.sign_cos != 0.0 {
            v += self.sign_cos * theta.cos().signum();
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.sign_cos == 0.0
            && self.cos.iter().all(|c| *c == 0.0)
            && self.sin.iter().skip(1).all(|s| *s == 0.0)
    }

    pub fn bound(&self) -> f64 {
        self.cos.iter().map(|c| c.abs()).sum::<f64>()
            + self.sin.iter().skip(1).map(|s| s.abs()).sum::<f64>()
            + self.sign_cos.abs()
    }

    pub fn to_circle(&self, nodes: usize, band: ModeBand) -> Result<CircleFunction> {
        CircleFunction::from_real_fn(|t| self.eval(t), nodes, band)
    }
}

/// `a(θ) = 2√|cos θ| cos(π/4 + h(θ)) e^{iφ(θ)}`
///
/// Invariants: `h(θ+π) = −h(θ)`, `h(−θ) = h(θ)`, `|h| ≤ π/4`, `φ(−θ) = −φ(θ)`, `|φ| ≤ π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub h: AngleSeries,
    pub phi: AngleSeries,
}

impl KernelParams {
    pub fn new(h: AngleSeries, phi: AngleSeries) -> Result<Self> {
        let p = Self { h, phi };
        p.validate()?;
        Ok(p)
    }

    /// Check nodes sit off the step discontinuities at `±π/2`.
    fn check_nodes() -> impl Iterator<Item = f64> {
        (0..PARAM_CHECK_NODES).map(|k| 2.0 * PI * (k as f64 + 0.25) / PARAM_CHECK_NODES as f64)
    }

    pub fn validate(&self) -> Result<()> {
        let mut worst_shift: f64 = 0.0;
        let mut worst_even: f64 = 0.0;
        let mut worst_odd: f64 = 0.0;
        let mut h_max: f64 = 0.0;
        let mut phi_max: f64 = 0.0;
        for t in Self::check_nodes() {
            let h = self.h.eval(t);
            worst_shift = worst_shift.max((self.h.eval(t + PI) + h).abs());
            worst_even = worst_even.max((self.h.eval(-t) - h).abs());
            worst_odd = worst_odd.max((self.phi.eval(-t) + self.phi.eval(t)).abs());
            h_max = h_max.max(h.abs());
            phi_max = phi_max.max(self.phi.eval(t).abs());
        }
        let tol = PARAM_SYMMETRY_TOL;
        if worst_shift > tol {
            return Err(SwError::InvalidParams(format!("h(θ+π) ≠ −h(θ): residual {worst_shift:.3e}")));
        }
        if worst_even > tol {
            return Err(SwError::InvalidParams(format!("h is not even: residual {worst_even:.3e}")));
        }
        if worst_odd > tol {
            return Err(SwError::InvalidParams(format!("φ is not odd: residual {worst_odd:.3e}")));
        }
        if h_max > FRAC_PI_4 + tol {
            return Err(SwError::InvalidParams(format!("|h| reaches {h_max:.6} > π/4")));
        }
        if phi_max > PI + tol {
            return Err(SwError::InvalidParams(format!("|φ| reaches {phi_max:.6} > π")));
        }
        Ok(())
    }

    pub fn symbol_value(&self, theta: f64) -> C64 {
        let amp = 2.0 * theta.cos().abs().sqrt() * (FRAC_PI_4 + self.h.eval(theta)).cos();
        C64::from_polar(amp, self.phi.eval(theta))
    }

    pub fn h_is_zero(&self) -> bool {
        self.h.is_zero()
    }

    /// Random admissible parameters: odd cosine modes for `h`, sine modes for `φ`.
    pub fn random(rng: &mut impl Rng) -> Self {
        let mut cos = vec![0.0; 6];
        for k in [1usize, 3, 5] {
            cos[k] = rng.gen_range(-1.0..1.0);
        }
        let hb: f64 = cos.iter().map(|c: &f64| c.abs()).sum();
        let hs = rng.gen_range(0.0..FRAC_PI_4) / hb.max(1e-12);
        cos.iter_mut().for_each(|c| *c *= hs);
        let mut sin = vec![0.0; 5];
        for s in sin.iter_mut().skip(1) {
            *s = rng.gen_range(-1.0..1.0);
        }
        let pb: f64 = sin.iter().map(|s: &f64| s.abs()).sum();
        let ps = rng.gen_range(0.0..0.95 * PI) / pb.max(1e-12);
        sin.iter_mut().for_each(|s| *s *= ps);
        Self { h: AngleSeries::cosines(cos), phi: AngleSeries::sines(sin) }
    }
}
