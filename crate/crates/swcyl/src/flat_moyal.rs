//! Flat phase space `ℝ²` as a reference pipeline: Heisenberg group,
//! Grossmann–Royer operators, Weyl map and Moyal product on a uniform grid.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SwError};

pub const DEFAULT_EXTENT: f64 = 8.0;
pub const DEFAULT_POINTS: usize = 256;
pub const BOUNDARY_MASS_LIMIT: f64 = 1e-8;
/// Cutoff centre and width as fractions of the extent.
pub const CUTOFF_CENTRE: f64 = 0.625;
pub const CUTOFF_WIDTH: f64 = 0.0875;
const STENCIL: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HeisenbergElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl HeisenbergElement {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn identity() -> Self {
        Self::new(0.0, 0.0, 0.0)
    }
}

/// `(a,b,c)(a',b',c') = (a+a', b+b', c+c' + ½(a·b' − a'·b))`
pub fn h_multiply(left: &HeisenbergElement, right: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement::new(
        left.a + right.a,
        left.b + right.b,
        left.c + right.c + 0.5 * (left.a * right.b - right.a * left.b),
    )
}

pub fn h_inverse(g: &HeisenbergElement) -> HeisenbergElement {
    HeisenbergElement::new(-g.a, -g.b, -g.c)
}

/// `(x, y, z) ↦ (x + z·b, y − z·a, z)`
pub fn h_coadjoint(g: &HeisenbergElement, x: [f64; 3]) -> [f64; 3] {
    [x[0] + x[2] * g.b, x[1] - x[2] * g.a, x[2]]
}

/// Phase-space point moved by `g`: the coadjoint action at `z = 1` with `(x, y) = (−p, q)`.
pub fn h_act_on_phase(g: &HeisenbergElement, q: f64, p: f64) -> (f64, f64) {
    let [x, y, _] = h_coadjoint(g, [-p, q, 1.0]);
    (y, -x)
}

/// Uniform grid of `points` nodes on `[−extent, extent]`, shared by `q`, `p` and `x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseGrid {
    pub extent: f64,
    pub points: usize,
}

impl PhaseGrid {
    pub fn new(extent: f64, points: usize) -> Result<Self> {
        if !(extent > 0.0) || points < 2 * STENCIL {
            return Err(SwError::GridTooCoarse(format!("extent {extent}, {points} points")));
        }
        Ok(Self { extent, points })
    }

    pub fn step(&self) -> f64 {
        2.0 * self.extent / (self.points - 1) as f64
    }

    pub fn coord(&self, i: usize) -> f64 {
        -self.extent + i as f64 * self.step()
    }

    pub fn coords(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.coord(i)).collect()
    }

    pub fn describe(&self) -> String {
        format!("Q={} G={}", self.extent, self.points)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self != other {
            return Err(SwError::GridMismatch { left: self.describe(), right: other.describe() });
        }
        Ok(())
    }
}

impl Default for PhaseGrid {
    fn default() -> Self {
        Self { extent: DEFAULT_EXTENT, points: DEFAULT_POINTS }
    }
}

/// Smooth cutoff `½ erfc((|t| − 5Q/8)/(0.0875 Q))`.
pub fn cutoff(t: f64, extent: f64) -> f64 {
    0.5 * libm::erfc((t.abs() - CUTOFF_CENTRE * extent) / (CUTOFF_WIDTH * extent))
}

/// `f(q_i, p_k)` stored at `values[i·G + k]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseGridFunction {
    grid: PhaseGrid,
    values: Vec<C64>,
}

impl PhaseGridFunction {
    pub fn new(grid: PhaseGrid, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.points * grid.points {
            return Err(SwError::Schema(format!(
                "{} values for a {}x{} grid",
                values.len(),
                grid.points,
                grid.points
            )));
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: PhaseGrid, f: impl Fn(f64, f64) -> C64) -> Self {
        let xs = grid.coords();
        let values = xs.iter().flat_map(|&q| xs.iter().map(|&p| f(q, p)).collect::<Vec<_>>()).collect();
        Self { grid, values }
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn at(&self, iq: usize, ip: usize) -> C64 {
        self.values[iq * self.grid.points + ip]
    }

    /// Largest `|f|` on the outermost rows and columns.
    pub fn boundary_mass(&self) -> f64 {
        let g = self.grid.points;
        (0..g)
            .flat_map(|i| [(0, i), (g - 1, i), (i, 0), (i, g - 1)])
            .map(|(a, b)| self.at(a, b).norm())
            .fold(0.0, f64::max)
    }

    /// `f · χ(q) χ(p)`
    pub fn with_cutoff(&self) -> Self {
        let q = self.grid.extent;
        let chi: Vec<f64> = self.grid.coords().iter().map(|&t| cutoff(t, q)).collect();
        let g = self.grid.points;
        let values = self.values.iter().enumerate().map(|(i, v)| v * (chi[i / g] * chi[i % g])).collect();
        Self { grid: self.grid, values }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self { grid: self.grid, values: self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect() })
    }

    /// `max |f − c|` over `|q|, |p| ≤ radius`.
    pub fn max_deviation_within(&self, c: C64, radius: f64) -> f64 {
        let g = self.grid.points;
        let mut worst: f64 = 0.0;
        for iq in 0..g {
            for ip in 0..g {
                if self.grid.coord(iq).abs() <= radius && self.grid.coord(ip).abs() <= radius {
                    worst = worst.max((self.at(iq, ip) - c).norm());
                }
            }
        }
        worst
    }

    pub fn max_distance_within(&self, other: &Self, radius: f64) -> Result<f64> {
        Ok(self.sub(other)?.max_deviation_within(C64::new(0.0, 0.0), radius))
    }
}

/// Integral kernel `K(x_i, x_k)` of an operator on `L²(ℝ)` sampled on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct LineGridOperator {
    grid: PhaseGrid,
    kernel: DMatrix<C64>,
}

impl LineGridOperator {
    pub fn from_kernel(grid: PhaseGrid, kernel: DMatrix<C64>) -> Result<Self> {
        if kernel.nrows() != grid.points || kernel.ncols() != grid.points {
            return Err(SwError::Schema(format!("{}x{} kernel on {}", kernel.nrows(), kernel.ncols(), grid.describe())));
        }
        if kernel.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SwError::Schema("non-finite kernel entry".into()));
        }
        Ok(Self { grid, kernel })
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn kernel(&self) -> &DMatrix<C64> {
        &self.kernel
    }

    /// Matrix acting on grid samples: `h·K`.
    pub fn matrix(&self) -> DMatrix<C64> {
        &self.kernel * C64::new(self.grid.step(), 0.0)
    }

    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self { grid: self.grid, kernel: (&self.kernel * &other.kernel) * C64::new(self.grid.step(), 0.0) })
    }

    pub fn apply(&self, phi: &[C64]) -> Vec<C64> {
        let v = nalgebra::DVector::from_column_slice(phi);
        (self.matrix() * v).iter().copied().collect()
    }

    pub fn adjoint(&self) -> Self {
        Self { grid: self.grid, kernel: self.kernel.adjoint() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.grid.check_same(&other.grid)?;
        Ok(Self { grid: self.grid, kernel: &self.kernel - &other.kernel })
    }

    pub fn scale(&self, s: C64) -> Self {
        Self { grid: self.grid, kernel: &self.kernel * s }
    }

    /// `∫ K(x, x) dx`
    pub fn trace(&self) -> C64 {
        self.kernel.diagonal().sum() * self.grid.step()
    }

    /// Largest `|h·K(x_i, x_k)|` with both `|x_i|, |x_k| ≤ radius`.
    pub fn max_matrix_entry_within(&self, radius: f64) -> f64 {
        let h = self.grid.step();
        let inside: Vec<usize> = (0..self.grid.points).filter(|&i| self.grid.coord(i).abs() <= radius).collect();
        let mut worst: f64 = 0.0;
        for &i in &inside {
            for &k in &inside {
                worst = worst.max(self.kernel[(i, k)].norm() * h);
            }
        }
        worst
    }
}

fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-12 {
        1.0
    } else {
        (PI * x).sin() / (PI * x)
    }
}

/// `[K(q,p)φ](x) = 2 e^{2ip(x−q)} φ(2q − x)`, with the reflection `δ(x' − 2q + x)`
/// sampled as `sinc((2q − x − x')/h)/h`.
pub fn grossmann_royer(q: f64, p: f64, grid: &PhaseGrid) -> Result<LineGridOperator> {
    if q.abs() > grid.extent || p.abs() > grid.extent {
        return Err(SwError::OutOfExtent { q, p, extent: grid.extent });
    }
    let h = grid.step();
    let xs = grid.coords();
    let kernel = DMatrix::from_fn(grid.points, grid.points, |i, k| {
        C64::from_polar(2.0 / h, p * (xs[i] - xs[k])) * sinc((2.0 * q - xs[i] - xs[k]) / h)
    });
    Ok(LineGridOperator { grid: *grid, kernel })
}

/// `∫ K(x, x) dx` of the continuous sinc-interpolated diagonal `(2/h) sinc(2(q − x)/h)`,
/// integrated with `oversample` sub-nodes per grid step. The grid sum alone returns
/// 2 or 0 depending on whether `q` sits on a node, since that diagonal carries twice
/// the grid bandwidth.
pub fn grossmann_royer_trace(q: f64, grid: &PhaseGrid, oversample: usize) -> f64 {
    let h = grid.step();
    let n = (grid.points - 1) * oversample;
    let dx = h / oversample as f64;
    (0..=n)
        .map(|i| {
            let w = if i == 0 || i == n { 0.5 * dx } else { dx };
            let x = -grid.extent + i as f64 * dx;
            w * 2.0 / h * sinc(2.0 * (q - x) / h)
        })
        .sum()
}

/// 8-point Lagrange weights for the midpoint between nodes `i` and `i+1`.
fn midpoint_stencil(i: usize, g: usize) -> (usize, [f64; STENCIL]) {
    let start = i.saturating_sub(3).min(g - STENCIL);
    let offs: Vec<f64> = (0..STENCIL).map(|l| (start + l) as f64 - i as f64).collect();
    let mut w = [0.0; STENCIL];
    for l in 0..STENCIL {
        w[l] = (0..STENCIL).filter(|&m| m != l).map(|m| (0.5 - offs[m]) / (offs[l] - offs[m])).product();
    }
    (start, w)
}

/// Rows of `f` on the half grid `q_s = −Q + s·h/2`, `s = 0..2G−1`.
fn half_grid_rows(f: &PhaseGridFunction) -> DMatrix<C64> {
    let g = f.grid.points;
    let mut out = DMatrix::zeros(2 * g - 1, g);
    for i in 0..g {
        for k in 0..g {
            out[(2 * i, k)] = f.at(i, k);
        }
    }
    for i in 0..g - 1 {
        let (start, w) = midpoint_stencil(i, g);
        for k in 0..g {
            out[(2 * i + 1, k)] = (0..STENCIL).map(|l| f.at(start + l, k) * w[l]).sum();
        }
    }
    out
}

/// `W(f) = (1/2π)∬ f(q,p) K(q,p) dq dp`, kernel `(1/2π)∫ f((x+x')/2, p) e^{ip(x−x')} dp`
/// with the trapezoid rule in `p`.
pub fn weyl_map(f: &PhaseGridFunction) -> Result<LineGridOperator> {
    let mass = f.boundary_mass();
    if mass > BOUNDARY_MASS_LIMIT {
        return Err(SwError::BoundaryMass { mass, limit: BOUNDARY_MASS_LIMIT });
    }
    let grid = f.grid;
    let g = grid.points;
    let h = grid.step();
    let ps = grid.coords();
    let rows = half_grid_rows(f);
    let phases = DMatrix::from_fn(g, 2 * g - 1, |ip, dd| {
        let w = if ip == 0 || ip == g - 1 { 0.5 * h } else { h };
        C64::from_polar(w, ps[ip] * (dd as f64 - (g - 1) as f64) * h)
    });
    let sums = rows * phases;
    let kernel = DMatrix::from_fn(g, g, |i, k| sums[(i + k, i + g - 1 - k)] / TAU);
    Ok(LineGridOperator { grid, kernel })
}

/// `f(q,p) = tr[A K(q,p)] = 2∫ ρ_A(q + y, q − y) e^{−2ipy} dy`
pub fn wigner_inverse(op: &LineGridOperator) -> PhaseGridFunction {
    let grid = op.grid;
    let g = grid.points;
    let h = grid.step();
    let ps = grid.coords();
    let values: Vec<C64> = (0..g)
        .into_par_iter()
        .flat_map_iter(|l| {
            let kmax = l.min(g - 1 - l) as i64;
            let diag: Vec<C64> =
                (-kmax..=kmax).map(|k| op.kernel[((l as i64 + k) as usize, (l as i64 - k) as usize)]).collect();
            ps.iter()
                .map(|&p| {
                    let mut acc = C64::new(0.0, 0.0);
                    for (idx, v) in diag.iter().enumerate() {
                        let k = idx as i64 - kmax;
                        acc += v * C64::from_polar(1.0, -2.0 * p * k as f64 * h);
                    }
                    acc * (2.0 * h)
                })
                .collect::<Vec<_>>()
        })
        .collect();
    PhaseGridFunction { grid, values }
}

/// `f * g = W⁻¹(W(f) W(g))`
pub fn moyal_product(f: &PhaseGridFunction, g: &PhaseGridFunction) -> Result<PhaseGridFunction> {
    f.grid.check_same(&g.grid)?;
    Ok(wigner_inverse(&weyl_map(f)?.compose(&weyl_map(g)?)?))
}

/// Index box holding every value above `floor · max|f|`.
fn support_box(f: &PhaseGridFunction, floor: f64) -> (usize, usize, usize, usize) {
    let g = f.grid.points;
    let top = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let (mut q0, mut q1, mut p0, mut p1) = (g, 0, g, 0);
    for iq in 0..g {
        for ip in 0..g {
            if f.at(iq, ip).norm() > floor * top {
                q0 = q0.min(iq);
                q1 = q1.max(iq);
                p0 = p0.min(ip);
                p1 = p1.max(ip);
            }
        }
    }
    if q0 > q1 {
        (0, 0, 0, 0)
    } else {
        (q0, q1, p0, p1)
    }
}

/// `(f*g)(u) = (1/π²)∬ f(v) g(w) e^{2i[uJv + vJw + wJu]} dv dw` by direct grid
/// quadrature at the probe nodes `(i_q, i_p)`, with `aJb = a_q b_p − a_p b_q`.
pub fn moyal_direct(f: &PhaseGridFunction, g: &PhaseGridFunction, probes: &[(usize, usize)]) -> Result<Vec<C64>> {
    f.grid.check_same(&g.grid)?;
    if probes.is_empty() {
        return Ok(Vec::new());
    }
    let grid = f.grid;
    let h = grid.step();
    let xs = grid.coords();
    let (fq0, fq1, fp0, fp1) = support_box(f, 1e-16);
    let (gq0, gq1, gp0, gp1) = support_box(g, 1e-16);
    let uq0 = probes.iter().map(|p| p.0).min().unwrap_or(0) as i64;
    let uq1 = probes.iter().map(|p| p.0).max().unwrap_or(0) as i64;
    let up0 = probes.iter().map(|p| p.1).min().unwrap_or(0) as i64;
    let up1 = probes.iter().map(|p| p.1).max().unwrap_or(0) as i64;
    // differences z = u − v in units of h
    let dq0 = uq0 - fq1 as i64;
    let dq1 = uq1 - fq0 as i64;
    let dp0 = up0 - fp1 as i64;
    let dp1 = up1 - fp0 as i64;
    let ndq = (dq1 - dq0 + 1) as usize;
    let ndp = (dp1 - dp0 + 1) as usize;
    // vJw + wJu = wJ(u − v); G(z) = Σ_w g(w) e^{2i(w_q z_p − w_p z_q)} h²
    let inner: Vec<Vec<C64>> = (gq0..=gq1)
        .into_par_iter()
        .map(|wq| {
            (0..ndq)
                .map(|a| {
                    let zq = (dq0 + a as i64) as f64 * h;
                    (gp0..=gp1).map(|wp| g.at(wq, wp) * C64::from_polar(1.0, -2.0 * xs[wp] * zq)).sum()
                })
                .collect()
        })
        .collect();
    let big_g: Vec<C64> = (0..ndq * ndp)
        .into_par_iter()
        .map(|idx| {
            let (a, b) = (idx / ndp, idx % ndp);
            let zp = (dp0 + b as i64) as f64 * h;
            (gq0..=gq1).map(|wq| inner[wq - gq0][a] * C64::from_polar(1.0, 2.0 * xs[wq] * zp)).sum::<C64>() * (h * h)
        })
        .collect();
    Ok(probes
        .par_iter()
        .map(|&(iq, ip)| {
            let (uq, up) = (xs[iq], xs[ip]);
            let mut acc = C64::new(0.0, 0.0);
            for vq in fq0..=fq1 {
                for vp in fp0..=fp1 {
                    let fv = f.at(vq, vp);
                    if fv == C64::new(0.0, 0.0) {
                        continue;
                    }
                    let a = (iq as i64 - vq as i64 - dq0) as usize;
                    let b = (ip as i64 - vp as i64 - dp0) as usize;
                    let phase = 2.0 * (uq * xs[vp] - up * xs[vq]);
                    acc += fv * C64::from_polar(1.0, phase) * big_g[a * ndp + b];
                }
            }
            acc * (h * h / (PI * PI))
        })
        .collect())
}

/// `count × count` probe nodes spread evenly over `|q|, |p| ≤ radius`.
pub fn probe_nodes(grid: &PhaseGrid, radius: f64, count: usize) -> Vec<(usize, usize)> {
    let h = grid.step();
    let idx: Vec<usize> = (0..count)
        .map(|i| {
            let t = if count == 1 { 0.0 } else { -radius + 2.0 * radius * i as f64 / (count - 1) as f64 };
            ((t + grid.extent) / h).round() as usize
        })
        .collect();
    idx.iter().flat_map(|&a| idx.iter().map(move |&b| (a, b))).collect()
}

/// `[U(a,b,c)φ](ξ) = e^{−i(c + bξ + ½ab)} φ(a + ξ)`, linear interpolation off the grid
/// and zero outside it.
pub fn h_rep_apply(g: &HeisenbergElement, phi: &[C64], grid: &PhaseGrid) -> Result<Vec<C64>> {
    if phi.len() != grid.points {
        return Err(SwError::Schema(format!("{} samples on {}", phi.len(), grid.describe())));
    }
    if g.a.abs() > 0.5 * grid.extent {
        return Err(SwError::MarginViolation { shift: g.a });
    }
    let h = grid.step();
    let n = grid.points;
    Ok((0..n)
        .map(|i| {
            let xi = grid.coord(i);
            let raw = (g.a + xi + grid.extent) / h;
            // lattice translations stay exact
            let t = if (raw - raw.round()).abs() < 1e-9 { raw.round() } else { raw };
            let base = t.floor();
            let value = if base < 0.0 || base as usize >= n - 1 {
                if t == (n - 1) as f64 {
                    phi[n - 1]
                } else {
                    C64::new(0.0, 0.0)
                }
            } else {
                let k = base as usize;
                let frac = t - base;
                phi[k] * (1.0 - frac) + phi[k + 1] * frac
            };
            C64::from_polar(1.0, -(g.c + g.b * xi + 0.5 * g.a * g.b)) * value
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gauss(q: f64, p: f64) -> C64 {
        C64::new((-q * q - p * p).exp(), 0.0)
    }

    #[test]
    fn heisenberg_law() {
        let g = HeisenbergElement::new(0.3, -1.2, 0.5);
        assert_eq!(h_multiply(&HeisenbergElement::identity(), &g), g);
        let c = h_multiply(&HeisenbergElement::new(1.0, 0.0, 0.0), &HeisenbergElement::new(0.0, 1.0, 0.0)).c;
        assert!((c - 0.5).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut r = || HeisenbergElement::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        for _ in 0..1000 {
            let (x, y, z) = (r(), r(), r());
            let lhs = h_multiply(&h_multiply(&x, &y), &z);
            let rhs = h_multiply(&x, &h_multiply(&y, &z));
            assert!((lhs.a - rhs.a).abs() + (lhs.b - rhs.b).abs() + (lhs.c - rhs.c).abs() < 1e-12);
        }
        assert_eq!(h_coadjoint(&HeisenbergElement::new(0.0, 1.0, 0.0), [0.2, 0.3, 1.0]), [1.2, 0.3, 1.0]);
        assert_eq!(h_coadjoint(&g, [0.2, 0.3, 0.0]), [0.2, 0.3, 0.0]);
    }

    #[test]
    fn grossmann_royer_basics() {
        let grid = PhaseGrid::new(8.0, 128).unwrap();
        let k = grossmann_royer(0.0, 0.0, &grid).unwrap();
        let kk = k.compose(&k).unwrap();
        let four = LineGridOperator::from_kernel(grid, DMatrix::identity(128, 128) * C64::new(4.0 / grid.step(), 0.0))
            .unwrap();
        assert!(kk.sub(&four).unwrap().max_matrix_entry_within(4.0) < 1e-10);
        let off = grossmann_royer(0.7, -1.3, &grid).unwrap();
        assert!(off.sub(&off.adjoint()).unwrap().kernel().camax() < 1e-10);
        for q in [0.0, 0.7, 0.5 * grid.step()] {
            let tr = grossmann_royer_trace(q, &grid, 8);
            assert!((tr - 1.0).abs() < 2e-3, "{q} {tr}");
        }
        assert!(grossmann_royer(9.0, 0.0, &grid).is_err());
    }

    #[test]
    fn weyl_round_trip_and_hermiticity() {
        let grid = PhaseGrid::new(8.0, 128).unwrap();
        let f = PhaseGridFunction::from_fn(grid, gauss);
        let w = weyl_map(&f).unwrap();
        assert!(w.sub(&w.adjoint()).unwrap().kernel().camax() < 1e-8);
        let back = wigner_inverse(&w);
        assert!(back.max_distance_within(&f, 8.0).unwrap() < 1e-3);
        let zero = PhaseGridFunction::from_fn(grid, |_, _| C64::new(0.0, 0.0));
        assert_eq!(weyl_map(&zero).unwrap().kernel().camax(), 0.0);
        let q = PhaseGridFunction::from_fn(grid, |q, _| C64::new(q, 0.0));
        assert!(matches!(weyl_map(&q), Err(SwError::BoundaryMass { .. })));
    }

    #[test]
    fn rep_is_a_homomorphism_on_lattice_translations() {
        let grid = PhaseGrid::default();
        let h = grid.step();
        let phi: Vec<C64> = grid.coords().iter().map(|&x| C64::new((-x * x).exp(), 0.0)).collect();
        assert_eq!(h_rep_apply(&HeisenbergElement::identity(), &phi, &grid).unwrap(), phi);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let g1 = HeisenbergElement::new(rng.gen_range(-20..20) as f64 * h, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let g2 = HeisenbergElement::new(rng.gen_range(-20..20) as f64 * h, rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let lhs = h_rep_apply(&g1, &h_rep_apply(&g2, &phi, &grid).unwrap(), &grid).unwrap();
            let rhs = h_rep_apply(&h_multiply(&g1, &g2), &phi, &grid).unwrap();
            let err = lhs.iter().zip(&rhs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12, "{err}");
        }
        assert!(h_rep_apply(&HeisenbergElement::new(5.0, 0.0, 0.0), &phi, &grid).is_err());
    }
}
