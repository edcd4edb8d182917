//! Truncated Fourier-mode representation of functions and operators on L²(S¹).
//!
//! Basis vectors are `|n⟩ = e^{inθ}/√(2π)`, `n ∈ −N..=N`, and matrices store
//! `A[m][n] = ⟨m|A|n⟩`.

use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SwError};

/// Mode tail below which a diagonal sequence counts as summable.
pub const TRACE_TAIL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModeBand {
    n: usize,
}

impl ModeBand {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(SwError::InvalidParams("mode band needs N >= 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Row/column index of mode `m`.
    pub fn index(&self, m: i64) -> usize {
        debug_assert!(m.unsigned_abs() as usize <= self.n);
        (m + self.n as i64) as usize
    }

    pub fn mode(&self, idx: usize) -> i64 {
        idx as i64 - self.n as i64
    }

    pub fn modes(&self) -> impl Iterator<Item = i64> {
        let n = self.n as i64;
        -n..=n
    }

    pub fn contains(&self, m: i64) -> bool {
        m.unsigned_abs() as usize <= self.n
    }

    /// Default interior sub-band `|m| ≤ N/2` on which truncated identities are asserted.
    pub fn interior(&self) -> usize {
        self.n / 2
    }
}

/// Uniform node `θ_k = 2πk/M`.
pub fn node(k: usize, m: usize) -> f64 {
    2.0 * PI * k as f64 / m as f64
}

/// Function on the circle held both as node samples and as band-limited Fourier coefficients.
#[derive(Debug, Clone)]
pub struct CircleFunction {
    samples: Vec<C64>,
    coeffs: Vec<C64>,
    band: ModeBand,
}

/// `c_n = (1/M) Σ_k samples[k] e^{−inθ_k}` for `|n| ≤ N`. Requires `M ≥ 4N`.
pub fn fourier_analyze(samples: &[C64], band: ModeBand) -> Result<CircleFunction> {
    let m = samples.len();
    let needed = 4 * band.n();
    if m < needed {
        return Err(SwError::Undersampled { nodes: m, band: band.n(), needed });
    }
    let coeffs = band
        .modes()
        .map(|n| {
            let mut acc = C64::new(0.0, 0.0);
            for (k, s) in samples.iter().enumerate() {
                // reduce the phase index exactly before converting to an angle
                let idx = (n.rem_euclid(m as i64) as usize * k) % m;
                acc += s * C64::from_polar(1.0, -node(idx, m));
            }
            acc / m as f64
        })
        .collect();
    Ok(CircleFunction { samples: samples.to_vec(), coeffs, band })
}

impl CircleFunction {
    pub fn from_fn(f: impl Fn(f64) -> C64, m: usize, band: ModeBand) -> Result<Self> {
        let samples: Vec<C64> = (0..m).map(|k| f(node(k, m))).collect();
        fourier_analyze(&samples, band)
    }

    pub fn from_real_fn(f: impl Fn(f64) -> f64, m: usize, band: ModeBand) -> Result<Self> {
        Self::from_fn(|t| C64::new(f(t), 0.0), m, band)
    }

    pub fn samples(&self) -> &[C64] {
        &self.samples
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    pub fn band(&self) -> ModeBand {
        self.band
    }

    pub fn nodes(&self) -> usize {
        self.samples.len()
    }

    pub fn coeff(&self, n: i64) -> C64 {
        if self.band.contains(n) {
            self.coeffs[self.band.index(n)]
        } else {
            C64::new(0.0, 0.0)
        }
    }

    /// Band-limited reconstruction `Σ c_n e^{inθ}`.
    pub fn eval(&self, theta: f64) -> C64 {
        self.band
            .modes()
            .map(|n| self.coeff(n) * C64::from_polar(1.0, n as f64 * theta))
            .sum()
    }

    /// Largest deviation between the samples and the band-limited reconstruction.
    pub fn consistency_residual(&self) -> f64 {
        let m = self.samples.len();
        self.samples
            .iter()
            .enumerate()
            .map(|(k, s)| (s - self.eval(node(k, m))).norm())
            .fold(0.0, f64::max)
    }

    /// `(Σ|c_n|², (1/M) Σ|samples|²)`
    pub fn parseval(&self) -> (f64, f64) {
        let modes: f64 = self.coeffs.iter().map(|c| c.norm_sqr()).sum();
        let nodes: f64 =
            self.samples.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.samples.len() as f64;
        (modes, nodes)
    }
}

/// Closed-form kernel data for operators of the shape `[Kψ](θ) = k(θ) ψ(2α − θ)`.
///
/// Their integral kernel is `k(θ) δ(θ' − 2α + θ)`, so the diagonal picks up the
/// two fixed points `θ = α` and `θ = α + π` of the reflection, each with weight ½.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReflectionKernel {
    pub axis: f64,
    pub at_axis: C64,
    pub at_antipode: C64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TraceConvention {
    ModeSum,
    KernelDiagonal,
}

#[derive(Debug, Clone)]
pub struct FourierOperator {
    band: ModeBand,
    entries: DMatrix<C64>,
    reflection: Option<ReflectionKernel>,
}

impl PartialEq for FourierOperator {
    fn eq(&self, other: &Self) -> bool {
        self.band == other.band && self.entries == other.entries
    }
}

impl FourierOperator {
    pub fn from_matrix(band: ModeBand, entries: DMatrix<C64>) -> Result<Self> {
        if entries.nrows() != band.dim() || entries.ncols() != band.dim() {
            return Err(SwError::BandMismatch { left: band.dim(), right: entries.nrows() });
        }
        Ok(Self { band, entries, reflection: None })
    }

    /// Build from `⟨m|A|n⟩ = f(m, n)`.
    pub fn from_fn(band: ModeBand, mut f: impl FnMut(i64, i64) -> C64) -> Self {
        let d = band.dim();
        let entries = DMatrix::from_fn(d, d, |r, c| f(band.mode(r), band.mode(c)));
        Self { band, entries, reflection: None }
    }

    pub fn zeros(band: ModeBand) -> Self {
        let d = band.dim();
        Self { band, entries: DMatrix::zeros(d, d), reflection: None }
    }

    pub fn identity(band: ModeBand) -> Self {
        let d = band.dim();
        Self { band, entries: DMatrix::identity(d, d), reflection: None }
    }

    /// Transition operator `P_{n,m} = |m⟩⟨n|`.
    pub fn transition(band: ModeBand, n: i64, m: i64) -> Self {
        let mut op = Self::zeros(band);
        op.entries[(band.index(m), band.index(n))] = C64::new(1.0, 0.0);
        op
    }

    /// `|n⟩ ↦ |n + k⟩`, truncated at the band edge.
    pub fn shift(band: ModeBand, k: i64) -> Self {
        Self::from_fn(band, |m, n| if m == n + k { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) })
    }

    pub fn with_reflection(mut self, kernel: ReflectionKernel) -> Self {
        self.reflection = Some(kernel);
        self
    }

    pub fn reflection(&self) -> Option<&ReflectionKernel> {
        self.reflection.as_ref()
    }

    pub fn band(&self) -> ModeBand {
        self.band
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.entries
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.entries
    }

    /// `⟨m|A|n⟩`
    pub fn get(&self, m: i64, n: i64) -> C64 {
        self.entries[(self.band.index(m), self.band.index(n))]
    }

    pub fn set(&mut self, m: i64, n: i64, v: C64) {
        let (r, c) = (self.band.index(m), self.band.index(n));
        self.entries[(r, c)] = v;
        self.reflection = None;
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    fn check_band(&self, other: &Self) -> Result<()> {
        if self.band != other.band {
            return Err(SwError::BandMismatch { left: self.band.n(), right: other.band.n() });
        }
        Ok(())
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_band(other)?;
        Ok(Self { band: self.band, entries: &self.entries * &other.entries, reflection: None })
    }

    pub fn adjoint(&self) -> Self {
        Self { band: self.band, entries: self.entries.adjoint(), reflection: None }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_band(other)?;
        Ok(Self { band: self.band, entries: &self.entries + &other.entries, reflection: None })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_band(other)?;
        Ok(Self { band: self.band, entries: &self.entries - &other.entries, reflection: None })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { band: self.band, entries: &self.entries * s, reflection: None }
    }

    pub fn max_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-norm restricted to rows and columns with `|m| ≤ sub`.
    pub fn max_norm_within(&self, sub: usize) -> f64 {
        let sub = sub.min(self.band.n()) as i64;
        let mut best = 0.0_f64;
        for m in -sub..=sub {
            for n in -sub..=sub {
                best = best.max(self.get(m, n).norm());
            }
        }
        best
    }

    /// Max-norm distance on the sub-band `|m| ≤ sub`.
    pub fn distance_within(&self, other: &Self, sub: usize) -> Result<f64> {
        Ok(self.sub(other)?.max_norm_within(sub))
    }

    /// Copy of the operator with every entry outside `|m|,|n| ≤ sub` set to zero.
    pub fn restrict(&self, sub: usize) -> Self {
        let sub = sub as i64;
        Self::from_fn(self.band, |m, n| {
            if m.abs() <= sub && n.abs() <= sub {
                self.get(m, n)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    /// Largest `|m|` or `|n|` of a nonzero entry; 0 for the zero operator.
    pub fn support(&self) -> usize {
        let mut s = 0;
        for m in self.band.modes() {
            for n in self.band.modes() {
                if self.get(m, n) != C64::new(0.0, 0.0) {
                    s = s.max(m.unsigned_abs() as usize).max(n.unsigned_abs() as usize);
                }
            }
        }
        s
    }
}

pub fn compose(a: &FourierOperator, b: &FourierOperator) -> Result<FourierOperator> {
    a.compose(b)
}

pub fn adjoint(a: &FourierOperator) -> FourierOperator {
    a.adjoint()
}

pub fn generalized_trace(a: &FourierOperator, convention: TraceConvention) -> Result<C64> {
    match convention {
        TraceConvention::ModeSum => {
            let band = a.band();
            let half = band.n() as i64 / 2;
            let tail = band
                .modes()
                .filter(|m| m.abs() >= half.max(1))
                .map(|m| a.get(m, m).norm())
                .fold(0.0, f64::max);
            if tail > TRACE_TAIL_TOL {
                return Err(SwError::NonConvergentTrace { tail });
            }
            Ok(a.matrix().diagonal().iter().sum())
        }
        TraceConvention::KernelDiagonal => {
            let k = a.reflection().ok_or_else(|| {
                SwError::KernelRefused("KernelDiagonal trace needs a closed-form reflection kernel".into())
            })?;
            Ok(0.5 * (k.at_axis + k.at_antipode))
        }
    }
}

/// Plain `Σ_n ⟨n|A|n⟩` with no convergence check, for finite-rank products.
pub fn band_trace(a: &FourierOperator) -> C64 {
    a.matrix().diagonal().iter().sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn analyze_constant_and_pure_mode() {
        let band = ModeBand::new(2).unwrap();
        let f = CircleFunction::from_real_fn(|_| 1.0, 16, band).unwrap();
        for n in band.modes() {
            let want = if n == 0 { 1.0 } else { 0.0 };
            assert!((f.coeff(n) - c(want, 0.0)).norm() < 1e-15);
        }
        let g = CircleFunction::from_fn(|t| C64::from_polar(1.0, t), 16, band).unwrap();
        for n in band.modes() {
            let want = if n == 1 { 1.0 } else { 0.0 };
            assert!((g.coeff(n) - c(want, 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn undersampling_is_rejected() {
        let band = ModeBand::new(8).unwrap();
        let err = CircleFunction::from_real_fn(|_| 1.0, 16, band).unwrap_err();
        assert!(matches!(err, SwError::Undersampled { .. }));
    }

    #[test]
    fn coeffs_match_samples_when_bandlimited() {
        let band = ModeBand::new(6).unwrap();
        let f = CircleFunction::from_fn(
            |t| c((2.0 * t).cos(), 0.3 * (5.0 * t).sin()) + c(0.1, 0.0),
            32,
            band,
        )
        .unwrap();
        assert!(f.consistency_residual() < 1e-12);
        let (a, b) = f.parseval();
        assert!((a - b).abs() < 1e-10);
    }

    #[test]
    fn shifts_invert_on_interior() {
        let band = ModeBand::new(5).unwrap();
        let up = FourierOperator::shift(band, 1);
        let down = FourierOperator::shift(band, -1);
        let id = FourierOperator::identity(band);
        let p = up.compose(&down).unwrap();
        assert!(p.distance_within(&id, 4).unwrap() < 1e-15);
        assert!(p.distance_within(&id, 5).unwrap() > 0.5);
    }

    #[test]
    fn adjoint_basics() {
        let band = ModeBand::new(3).unwrap();
        let id = FourierOperator::identity(band);
        assert_eq!(id.adjoint(), id);
        let ii = id.scale(c(0.0, 1.0));
        assert_eq!(ii.adjoint(), id.scale(c(0.0, -1.0)));
        let a = FourierOperator::from_fn(band, |m, n| c(m as f64, n as f64 * 0.5 + 1.0));
        assert_eq!(a.adjoint().adjoint(), a);
        assert_eq!(a.adjoint().get(1, 2), a.get(2, 1).conj());
    }

    #[test]
    fn mode_sum_traces() {
        let band = ModeBand::new(4).unwrap();
        let id = FourierOperator::identity(band);
        // identity never decays, so the checked trace refuses it
        assert!(generalized_trace(&id, TraceConvention::ModeSum).is_err());
        assert_eq!(band_trace(&id), c(9.0, 0.0));
        let p = FourierOperator::transition(band, 0, 0);
        assert_eq!(generalized_trace(&p, TraceConvention::ModeSum).unwrap(), c(1.0, 0.0));
        assert!(generalized_trace(&p, TraceConvention::KernelDiagonal).is_err());
    }

    #[test]
    fn transition_operator_orientation() {
        let band = ModeBand::new(2).unwrap();
        // P_{n,m} = |m⟩⟨n| sends |n⟩ to |m⟩
        let p = FourierOperator::transition(band, 0, 1);
        assert_eq!(p.get(1, 0), c(1.0, 0.0));
        assert_eq!(p.get(0, 1), c(0.0, 0.0));
    }
}
