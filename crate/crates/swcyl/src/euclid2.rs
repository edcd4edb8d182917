//! The extended Euclidean group Ē(2): group law, coadjoint action, orbit
//! classification, cylinder coordinates and the representation `U_r`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::bessel::bessel_j_upto;
use crate::circle::{FourierOperator, ModeBand};
use crate::error::{Result, SwError};

/// Reduce an angle to `[0, 2π)`.
pub fn normalize_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// Distance between two angles on the circle.
pub fn circular_distance(x: f64, y: f64) -> f64 {
    let d = normalize_angle(x - y);
    d.min(TAU - d)
}

fn rotate(v: [f64; 2], phi: f64) -> [f64; 2] {
    let (s, c) = phi.sin_cos();
    [c * v[0] - s * v[1], s * v[0] + c * v[1]]
}

/// `x × y = x₁y₂ − x₂y₁`
pub fn cross(x: [f64; 2], y: [f64; 2]) -> f64 {
    x[0] * y[1] - x[1] * y[0]
}

/// `g = e^{ηI} e^{a·P} e^{φJ}`
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub eta: f64,
    pub a: [f64; 2],
    pub phi: f64,
}

impl GroupElement {
    pub fn new(eta: f64, a: [f64; 2], phi: f64) -> Self {
        Self { eta, a, phi: normalize_angle(phi) }
    }

    pub fn identity() -> Self {
        Self::new(0.0, [0.0, 0.0], 0.0)
    }

    pub fn translation(a: [f64; 2]) -> Self {
        Self::new(0.0, a, 0.0)
    }

    pub fn rotation(phi: f64) -> Self {
        Self::new(0.0, [0.0, 0.0], phi)
    }

    /// Largest componentwise difference, angles compared on the circle.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.eta - other.eta)
            .abs()
            .max((self.a[0] - other.a[0]).abs())
            .max((self.a[1] - other.a[1]).abs())
            .max(circular_distance(self.phi, other.phi))
    }
}

/// `g'·g = (η' + η + ½ a'×a^{φ'}, a' + a^{φ'}, φ' + φ)`
pub fn multiply(gp: &GroupElement, g: &GroupElement) -> GroupElement {
    let ar = rotate(g.a, gp.phi);
    GroupElement::new(
        gp.eta + g.eta + 0.5 * cross(gp.a, ar),
        [gp.a[0] + ar[0], gp.a[1] + ar[1]],
        gp.phi + g.phi,
    )
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    let back = rotate(g.a, -g.phi);
    GroupElement::new(-g.eta, [-back[0], -back[1]], -g.phi)
}

/// Point `(β, p, j)` of the dual of the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoadjointPoint {
    pub beta: f64,
    pub p: [f64; 2],
    pub j: f64,
}

impl CoadjointPoint {
    pub fn new(beta: f64, p: [f64; 2], j: f64) -> Self {
        Self { beta, p, j }
    }

    /// Casimir `p² − 2βj`.
    pub fn casimir(&self) -> f64 {
        self.p[0] * self.p[0] + self.p[1] * self.p[1] - 2.0 * self.beta * self.j
    }
}

/// `β' = β, p' = p^φ + β a^{π/2}, j' = j + a×p^φ + ½β a²`
pub fn coadjoint(g: &GroupElement, x: &CoadjointPoint) -> CoadjointPoint {
    let pr = rotate(x.p, g.phi);
    let aperp = rotate(g.a, PI / 2.0);
    let a2 = g.a[0] * g.a[0] + g.a[1] * g.a[1];
    CoadjointPoint {
        beta: x.beta,
        p: [pr[0] + x.beta * aperp[0], pr[1] + x.beta * aperp[1]],
        j: x.j + cross(g.a, pr) + 0.5 * x.beta * a2,
    }
}

/// Tolerance below which `β` and `‖p‖` count as zero when classifying.
pub const ORBIT_ZERO_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum OrbitTag {
    Paraboloid,
    Cylinder { r: f64 },
    Point { j: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrbitClass {
    pub tag: OrbitTag,
    pub beta: f64,
    pub casimir: f64,
}

pub fn classify_orbit(x: &CoadjointPoint) -> OrbitClass {
    let r = x.p[0].hypot(x.p[1]);
    let tag = if x.beta.abs() > ORBIT_ZERO_TOL {
        OrbitTag::Paraboloid
    } else if r > ORBIT_ZERO_TOL {
        OrbitTag::Cylinder { r }
    } else {
        OrbitTag::Point { j: x.j }
    };
    OrbitClass { tag, beta: x.beta, casimir: x.casimir() }
}

/// Canonical coordinates `(α, j)` on a cylinder orbit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CylinderPoint {
    pub alpha: f64,
    pub j: f64,
}

impl CylinderPoint {
    pub fn new(alpha: f64, j: f64) -> Self {
        Self { alpha: normalize_angle(alpha), j }
    }

    pub fn origin() -> Self {
        Self::new(0.0, 0.0)
    }

    /// The coadjoint point on the orbit of radius `r`.
    pub fn to_coadjoint(&self, r: f64) -> CoadjointPoint {
        CoadjointPoint::new(0.0, [r * self.alpha.cos(), r * self.alpha.sin()], self.j)
    }

    pub fn distance(&self, other: &Self) -> f64 {
        circular_distance(self.alpha, other.alpha).max((self.j - other.j).abs())
    }
}

pub fn canonical_coords(x: &CoadjointPoint) -> Result<CylinderPoint> {
    match classify_orbit(x).tag {
        OrbitTag::Cylinder { .. } => Ok(CylinderPoint::new(x.p[1].atan2(x.p[0]), x.j)),
        other => Err(SwError::NotCylinder(format!("{other:?}"))),
    }
}

/// Coadjoint action written in cylinder coordinates: `α' = α + φ`, `j' = j + a×p'`.
pub fn act_on_cylinder(g: &GroupElement, u: &CylinderPoint, r: f64) -> CylinderPoint {
    let x = coadjoint(g, &u.to_coadjoint(r));
    CylinderPoint::new(u.alpha + g.phi, x.j)
}

/// Matrix of `[U_r(g)ψ](θ) = e^{−i a·t(θ)} ψ(θ − φ)`, `t(θ) = r(cos θ, sin θ)`.
///
/// Jacobi–Anger gives `⟨m|U|n⟩ = e^{−inφ} i^{m−n} J_{m−n}(−r|a|) e^{−i(m−n)Arg a}`.
/// The central parameter does not enter.
pub fn rep_matrix(g: &GroupElement, r: f64, band: ModeBand) -> Result<FourierOperator> {
    if r <= 0.0 || !r.is_finite() {
        return Err(SwError::BadRadius(r));
    }
    let norm = g.a[0].hypot(g.a[1]);
    let chi = g.a[1].atan2(g.a[0]);
    let z = -r * norm;
    let j = bessel_j_upto(2 * band.n(), z.abs());
    let bj = |k: i64| {
        let m = k.unsigned_abs() as usize;
        let mut v = j[m];
        // J_{-k}(x) = (-1)^k J_k(x) and J_k(-x) = (-1)^k J_k(x)
        if (k < 0) != (z < 0.0) && m % 2 == 1 {
            v = -v;
        }
        v
    };
    Ok(FourierOperator::from_fn(band, |m, n| {
        let k = m - n;
        let ik = C64::new(0.0, 1.0).powi(k.rem_euclid(4) as i32);
        C64::from_polar(1.0, -(n as f64) * g.phi - k as f64 * chi) * ik * bj(k)
    }))
}

/// Same matrix by `M`-node trapezoid quadrature of `(1/2π)∫ e^{−imθ} [U e_n](θ) dθ`.
pub fn rep_matrix_quadrature(
    g: &GroupElement,
    r: f64,
    band: ModeBand,
    nodes: usize,
) -> Result<FourierOperator> {
    if r <= 0.0 || !r.is_finite() {
        return Err(SwError::BadRadius(r));
    }
    let thetas: Vec<f64> = (0..nodes).map(|k| TAU * k as f64 / nodes as f64).collect();
    let phase: Vec<f64> =
        thetas.iter().map(|t| -(g.a[0] * r * t.cos() + g.a[1] * r * t.sin())).collect();
    Ok(FourierOperator::from_fn(band, |m, n| {
        let mut acc = C64::new(0.0, 0.0);
        for (t, ph) in thetas.iter().zip(&phase) {
            acc += C64::from_polar(1.0, ph - m as f64 * t + n as f64 * (t - g.phi));
        }
        acc / nodes as f64
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_element(rng: &mut ChaCha8Rng, amax: f64) -> GroupElement {
        GroupElement::new(
            rng.gen_range(-2.0..2.0),
            [rng.gen_range(-amax..amax), rng.gen_range(-amax..amax)],
            rng.gen_range(0.0..TAU),
        )
    }

    #[test]
    fn identity_and_translation_law() {
        let g = GroupElement::new(0.3, [1.0, 2.0], 1.0);
        assert!(multiply(&GroupElement::identity(), &g).distance(&g) < 1e-15);
        // e^{A}e^{B} = e^{A+B+½[A,B]} with [a·P, b·P] = (a×b) I
        let prod = multiply(&GroupElement::translation([1.0, 0.0]), &GroupElement::translation([0.0, 1.0]));
        assert!(prod.distance(&GroupElement::new(0.5, [1.0, 1.0], 0.0)) < 1e-15);
    }

    #[test]
    fn associativity_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let (a, b, c) = (random_element(&mut rng, 3.0), random_element(&mut rng, 3.0), random_element(&mut rng, 3.0));
            let left = multiply(&multiply(&a, &b), &c);
            let right = multiply(&a, &multiply(&b, &c));
            assert!(left.distance(&right) < 1e-12);
            assert!(multiply(&inverse(&a), &a).distance(&GroupElement::identity()) < 1e-12);
        }
        let t = inverse(&GroupElement::translation([1.0, 0.0]));
        assert!(t.distance(&GroupElement::translation([-1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn coadjoint_examples_and_action() {
        let x = CoadjointPoint::new(0.0, [1.0, 0.0], 0.0);
        let y = coadjoint(&GroupElement::translation([0.0, 1.0]), &x);
        assert_eq!(y.p, [1.0, 0.0]);
        assert_eq!(y.j, -1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..1000 {
            let (g1, g2) = (random_element(&mut rng, 2.0), random_element(&mut rng, 2.0));
            let x = CoadjointPoint::new(0.0, [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)], rng.gen_range(-3.0..3.0));
            let a = coadjoint(&g1, &coadjoint(&g2, &x));
            let b = coadjoint(&multiply(&g1, &g2), &x);
            let d = (a.p[0] - b.p[0]).abs().max((a.p[1] - b.p[1]).abs()).max((a.j - b.j).abs());
            assert!(d < 1e-12);
            assert!((a.casimir() - x.casimir()).abs() < 1e-10);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(classify_orbit(&CoadjointPoint::new(1.0, [0.0, 0.0], 0.0)).tag, OrbitTag::Paraboloid);
        assert_eq!(classify_orbit(&CoadjointPoint::new(0.0, [3.0, 4.0], 7.0)).tag, OrbitTag::Cylinder { r: 5.0 });
        assert_eq!(classify_orbit(&CoadjointPoint::new(0.0, [0.0, 0.0], 2.0)).tag, OrbitTag::Point { j: 2.0 });
        let u = canonical_coords(&CoadjointPoint::new(0.0, [0.0, 2.0], 5.0)).unwrap();
        assert!((u.alpha - PI / 2.0).abs() < 1e-15 && u.j == 5.0);
        assert!(canonical_coords(&CoadjointPoint::new(0.0, [0.0, 0.0], 1.0)).is_err());
    }

    #[test]
    fn rep_matrix_special_cases() {
        let band = ModeBand::new(6).unwrap();
        let id = rep_matrix(&GroupElement::identity(), 1.3, band).unwrap();
        assert!(id.distance_within(&FourierOperator::identity(band), 6).unwrap() < 1e-15);
        let rot = rep_matrix(&GroupElement::rotation(0.7), 1.0, band).unwrap();
        for m in band.modes() {
            for n in band.modes() {
                let want = if m == n { C64::from_polar(1.0, -0.7 * n as f64) } else { C64::new(0.0, 0.0) };
                assert!((rot.get(m, n) - want).norm() < 1e-15);
            }
        }
        assert!(rep_matrix(&GroupElement::identity(), 0.0, band).is_err());
    }

    #[test]
    fn rep_matrix_column_against_quadrature() {
        let band = ModeBand::new(8).unwrap();
        let u = rep_matrix(&GroupElement::translation([1.0, 0.0]), 1.0, band).unwrap();
        for m in band.modes() {
            let mut acc = C64::new(0.0, 0.0);
            let nodes = 256;
            for k in 0..nodes {
                let t = TAU * k as f64 / nodes as f64;
                acc += C64::from_polar(1.0, -(m as f64) * t - t.cos());
            }
            assert!((u.get(m, 0) - acc / nodes as f64).norm() < 1e-10);
        }
        let g = GroupElement::new(0.4, [-0.8, 1.1], 2.2);
        let a = rep_matrix(&g, 1.7, band).unwrap();
        let b = rep_matrix_quadrature(&g, 1.7, band, 256).unwrap();
        assert!(a.distance_within(&b, 8).unwrap() < 1e-12);
    }

    #[test]
    fn representation_is_a_homomorphism() {
        let band = ModeBand::new(32).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let (g1, g2) = (random_element(&mut rng, 1.4), random_element(&mut rng, 1.4));
            let r = rng.gen_range(0.2..2.0);
            let lhs = rep_matrix(&g1, r, band).unwrap().compose(&rep_matrix(&g2, r, band).unwrap()).unwrap();
            let rhs = rep_matrix(&multiply(&g1, &g2), r, band).unwrap();
            assert!(lhs.distance_within(&rhs, 16).unwrap() < 1e-8);
            let u = rep_matrix(&g1, r, band).unwrap();
            let uu = u.adjoint().compose(&u).unwrap();
            assert!(uu.distance_within(&FourierOperator::identity(band), 16).unwrap() < 1e-8);
            let mut shifted = g1;
            shifted.eta += 3.0;
            assert_eq!(rep_matrix(&shifted, r, band).unwrap(), u);
        }
    }
}
