//! Quadrature rules on the circle and on the cylinder's j-axis.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

/// Nodes and weights with `Σ w_k f(θ_k) ≈ (1/2π)∫₀^{2π} f(θ) dθ`.
#[derive(Debug, Clone)]
pub struct CircleRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl CircleRule {
    /// Trapezoid rule on `θ_k = 2πk/M`.
    pub fn uniform(m: usize) -> Self {
        let nodes = (0..m).map(|k| 2.0 * PI * k as f64 / m as f64).collect();
        Self { nodes, weights: vec![1.0 / m as f64; m] }
    }

    /// Trapezoid rule after the periodic substitution `θ'(s) = (8/3)cos⁴ s`.
    ///
    /// The map fixes `0, ±π/2, π` and has a fourth-order zero at `±π/2`, which
    /// flattens the `√|cos θ|` cusps there. `s ↦ −s` maps nodes to nodes, so
    /// integrands with `f(−θ) = conj f(θ)` stay exactly real.
    pub fn cusp_smoothed(m: usize) -> Self {
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for k in 0..m {
            let s = 2.0 * PI * k as f64 / m as f64 - PI;
            let theta = (8.0 / 3.0) * (3.0 * s / 8.0 + (2.0 * s).sin() / 4.0 + (4.0 * s).sin() / 32.0);
            let w = (8.0 / 3.0) * s.cos().powi(4) / m as f64;
            nodes.push(theta);
            weights.push(w);
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Largest local slope of the substitution, used to size `M` against oscillation.
    pub fn stretch(&self) -> f64 {
        let m = self.len() as f64;
        self.weights.iter().fold(0.0_f64, |a, w| a.max(w * m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JWeighting {
    /// Trapezoid on `[−J, J]`.
    Plain,
    /// Cosine taper over the last 20% of the range.
    Tapered,
    /// Tapered sums at cutoffs `J, 2J/3, J/2` combined to cancel `J^{−1/2}` and `J^{−1}` tails.
    Extrapolated,
}

impl std::str::FromStr for JWeighting {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" => Ok(Self::Plain),
            "tapered" => Ok(Self::Tapered),
            "extrapolated" => Ok(Self::Extrapolated),
            other => Err(format!("unknown j weighting '{other}'")),
        }
    }
}

impl std::fmt::Display for JWeighting {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Plain => "plain",
            Self::Tapered => "tapered",
            Self::Extrapolated => "extrapolated",
        })
    }
}

/// Fraction of the cutoff over which the taper falls from 1 to 0.
pub const TAPER_FRACTION: f64 = 0.2;

fn taper(j: f64, cutoff: f64) -> f64 {
    let t = j.abs() / cutoff;
    let start = 1.0 - TAPER_FRACTION;
    if t <= start {
        1.0
    } else if t <= 1.0 {
        0.5 * (1.0 + (PI * (t - start) / TAPER_FRACTION).cos())
    } else {
        0.0
    }
}

/// Uniform grid on `[−J_max, J_max]` with integration weights.
#[derive(Debug, Clone)]
pub struct JRule {
    pub j: Vec<f64>,
    pub weights: Vec<f64>,
    pub j_max: f64,
    pub step: f64,
    pub weighting: JWeighting,
}

impl JRule {
    pub fn new(j_max: f64, step: f64, weighting: JWeighting) -> Self {
        let half = (j_max / step).round() as i64;
        let j: Vec<f64> = (-half..=half).map(|k| k as f64 * step).collect();
        let weights = match weighting {
            JWeighting::Plain => j
                .iter()
                .enumerate()
                .map(|(k, _)| if k == 0 || k == j.len() - 1 { 0.5 * step } else { step })
                .collect(),
            JWeighting::Tapered => j.iter().map(|&x| taper(x, j_max) * step).collect(),
            JWeighting::Extrapolated => {
                let cutoffs = [j_max, 2.0 * j_max / 3.0, 0.5 * j_max];
                let beta = richardson_coefficients(&cutoffs, &[0.5, 1.0]);
                j.iter()
                    .map(|&x| {
                        cutoffs.iter().zip(beta.iter()).map(|(&c, &b)| b * taper(x, c)).sum::<f64>() * step
                    })
                    .collect()
            }
        };
        Self { j, weights, j_max, step, weighting }
    }

    pub fn len(&self) -> usize {
        self.j.len()
    }

    pub fn is_empty(&self) -> bool {
        self.j.is_empty()
    }

    pub fn integrate(&self, values: &[f64]) -> f64 {
        values.iter().zip(&self.weights).map(|(v, w)| v * w).sum()
    }
}

/// Weights `β` with `Σ β_k I(J_k) = I_∞` when `I(J) = I_∞ + Σ_p c_p J^{−p}`.
fn richardson_coefficients(cutoffs: &[f64; 3], powers: &[f64; 2]) -> [f64; 3] {
    let a = Matrix3::from_fn(|r, c| if c == 0 { 1.0 } else { cutoffs[r].powf(-powers[c - 1]) });
    let beta = a
        .transpose()
        .lu()
        .solve(&Vector3::new(1.0, 0.0, 0.0))
        .expect("distinct cutoffs give a nonsingular system");
    [beta[0], beta[1], beta[2]]
}

/// Adaptive Simpson integration of a real function on `[a, b]`.
pub fn adaptive_simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn step(
        f: &impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let diff = left + right - whole;
        if depth == 0 || diff.abs() <= 15.0 * tol {
            left + right + diff / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
                + step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 48)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_rules_integrate_modes() {
        for rule in [CircleRule::uniform(64), CircleRule::cusp_smoothed(256)] {
            let total: f64 = rule.weights.iter().sum();
            assert!((total - 1.0).abs() < 1e-13);
            let c2: f64 = rule.nodes.iter().zip(&rule.weights).map(|(t, w)| (2.0 * t).cos() * w).sum();
            assert!(c2.abs() < 1e-12);
        }
    }

    #[test]
    fn smoothed_rule_handles_the_cusp() {
        // (1/2π)∫ 2√|cos θ| dθ
        let exact = 4.0 / PI * adaptive_simpson(&|t: f64| t.cos().sqrt(), 0.0, PI / 2.0, 1e-13);
        let rule = CircleRule::cusp_smoothed(1024);
        let got: f64 =
            rule.nodes.iter().zip(&rule.weights).map(|(t, w)| 2.0 * t.cos().abs().sqrt() * w).sum();
        assert!((got - exact).abs() < 1e-10, "{got} vs {exact}");
    }

    #[test]
    fn smoothed_nodes_are_symmetric() {
        let rule = CircleRule::cusp_smoothed(64);
        for k in 1..64 {
            assert!((rule.nodes[k] + rule.nodes[64 - k]).abs() < 1e-13);
            assert!((rule.weights[k] - rule.weights[64 - k]).abs() < 1e-16);
        }
    }

    #[test]
    fn extrapolated_weights_keep_polynomial_content() {
        // every rule integrates a slowly varying function near the origin the same way
        let r = JRule::new(40.0, 0.05, JWeighting::Extrapolated);
        let g: Vec<f64> = r.j.iter().map(|x| (-x * x).exp()).collect();
        assert!((r.integrate(&g) - PI.sqrt()).abs() < 1e-12);
        let beta = richardson_coefficients(&[40.0, 80.0 / 3.0, 20.0], &[0.5, 1.0]);
        assert!((beta.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_cancels_inverse_root_tail() {
        // tapered integrals of a |j|^{-3/2} tail miss the limit by O(J^{-1/2})
        let f = |x: f64| 1.0 / (1.0 + x * x).powf(0.75);
        // B(1/2, 1/4)
        let limit = 5.244_115_108_584_239;
        let plain = JRule::new(40.0, 0.05, JWeighting::Tapered);
        let rich = JRule::new(40.0, 0.05, JWeighting::Extrapolated);
        let v: Vec<f64> = plain.j.iter().map(|&x| f(x)).collect();
        let e_plain = (plain.integrate(&v) - limit).abs();
        let e_rich = (rich.integrate(&v) - limit).abs();
        assert!(e_rich < 0.05 * e_plain, "{e_rich} vs {e_plain}");
    }
}
